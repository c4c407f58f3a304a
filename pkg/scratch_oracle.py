"""Scratch: independent symbolic oracle check for the algebra module."""
import itertools
import random
import sys

sys.path.insert(0, "src")

import sympy as sp

from golden_index.algebra import (
    AlgebraElement, ONE, E_GEN, THETA, algebra_mul, field_mul, reduced_norm,
    rep_matrix, algebra_pow, is_unit, is_associate, split_form, scalar,
    twisted_conjugate,
)
from golden_index.gaussian import GaussianInteger as Gi

SQ5 = sp.sqrt(5)
TH = (1 + SQ5) / 2
THB = (1 - SQ5) / 2
I = sp.I


def to_mat(a: AlgebraElement) -> sp.Matrix:
    """Left-regular 2x2 matrix image over Q(i, sqrt5)."""
    av, bv, cv, dv = [sp.Integer(z.re) + I * z.im for z in a.vec()]
    x0 = av + bv * TH
    x0c = av + bv * THB
    x1 = cv + dv * TH
    x1c = cv + dv * THB
    return sp.Matrix([[x0, x1], [I * x1c, x0c]])


def from_mat(m: sp.Matrix) -> AlgebraElement:
    """Invert to_mat by solving for the vec coordinates."""
    x0 = sp.expand(m[0, 0])
    x1 = sp.expand(m[0, 1])

    def split(expr):
        # expr = u + v*TH with Gaussian u, v
        p = sp.Poly(sp.expand(expr), SQ5)
        coeffs = {deg[0]: c for deg, c in zip(p.monoms(), p.coeffs())}
        c1 = coeffs.get(0, 0)
        cs = coeffs.get(1, 0)
        # u + v*(1+s5)/2 = (u + v/2) + (v/2) s5
        v = sp.simplify(2 * cs)
        u = sp.simplify(c1 - v / 2)
        return u, v

    a, b = split(x0)
    c, d = split(x1)

    def gi(x):
        x = sp.expand(x)
        re = sp.re(x)
        im = sp.im(x)
        assert re.is_integer and im.is_integer, f"non-integral {x}"
        return Gi(int(re), int(im))

    return AlgebraElement.from_vec(gi(a), gi(b), gi(c), gi(d))


def rand_elem(rng, lo=-5, hi=5):
    return AlgebraElement.from_vec(
        *[Gi(rng.randint(lo, hi), rng.randint(lo, hi)) for _ in range(4)]
    )


rng = random.Random(7)

# 1. matrix rep sanity: e^2 = i, z e = e s(z)
E = to_mat(E_GEN)
assert sp.simplify(E * E - I * sp.eye(2)) == sp.zeros(2, 2)
print("e^2 = i ok")

# 2. algebra_mul vs matrix oracle
for _ in range(40):
    A, B = rand_elem(rng), rand_elem(rng)
    lhs = to_mat(algebra_mul(A, B))
    rhs = sp.expand(to_mat(A) * to_mat(B))
    assert sp.simplify(lhs - rhs) == sp.zeros(2, 2), (A, B)
print("algebra_mul matches 2x2 matrix oracle")

# 3. reduced norm = det of matrix image
for _ in range(40):
    A = rand_elem(rng)
    n = reduced_norm(A)
    dn = sp.expand(to_mat(A).det())
    assert sp.simplify(dn - (sp.Integer(n.re) + I * n.im)) == 0
print("reduced_norm matches det oracle")

# 4. vec(B A) = M(A) vec(B)
for _ in range(40):
    A, B = rand_elem(rng), rand_elem(rng)
    prod = algebra_mul(B, A)
    mv = rep_matrix(A).apply(B.vec())
    assert tuple(mv) == prod.vec()
print("rep matrix identity ok")

# 5. det M(A) = N_rd^2
for _ in range(40):
    A = rand_elem(rng)
    assert rep_matrix(A).det() == reduced_norm(A) * reduced_norm(A)
print("det(M) = N_rd^2 ok")

# 6. paper example norms
ex1 = split_form(1, Gi(0, 1))              # 1 + i e
assert reduced_norm(ex1) == Gi(1, 1)
p1 = split_form(1, 2)                      # 1 + 2e
p2 = split_form(2, -1)                     # 2 - e
p3 = split_form(Gi(0, -1), Gi(0, 2))       # -i + 2i e
p4 = split_form(1, Gi(0, -2))              # 1 - 2i e
assert reduced_norm(p1) == Gi(1, -4)
assert reduced_norm(p2) == Gi(4, -1)
assert reduced_norm(p3) == Gi(-1, 4)
assert reduced_norm(p4) == Gi(1, 4)
print("example-2 norms ok")

# 7. (1+ie)^4 associate to 2
e4 = algebra_pow(ex1, 4)
print("(1+ie)^4 =", e4)
assert is_associate(e4, scalar(2))
assert not is_unit(p1)
assert is_unit(scalar(Gi(0, 1)))
assert is_unit(THETA)
print("unit/associate checks ok")

# 8. field_mul commutativity + lemma check
for _ in range(40):
    A, B = rand_elem(rng), rand_elem(rng)
    assert field_mul(A, B) == field_mul(B, A)
phis = [ex1, p1, p2, p3, p4]
for phi in phis:
    for _ in range(60):
        A = rand_elem(rng, -3, 3)
        assert field_mul(phi, A) == algebra_mul(A, phi)
print("field_mul + lemma-form agreement ok")

# 9. norm multiplicativity both products on split-form
for _ in range(40):
    A, B = rand_elem(rng), rand_elem(rng)
    assert reduced_norm(algebra_mul(A, B)) == reduced_norm(A) * reduced_norm(B)
print("norm multiplicative ok")

# 10. 17-partition product
from golden_index.algebra import field_product
q17 = field_product([p1, p2, p3, p4])
print("q17 =", q17, "N_rd =", reduced_norm(q17))
assert is_associate(q17, scalar(17))
q2 = field_product([p1, p2])
print("q2 =", q2, "N_rd =", reduced_norm(q2))
assert reduced_norm(q2) == Gi(0, -17)

# 11. example-3 generators
g1 = split_form(Gi(0, -2), Gi(-2, 1))
g2 = split_form(Gi(0, 2), Gi(-2, 1))
g3 = split_form(Gi(1, -2), -2)
g4 = split_form(2, Gi(-2, -1))
for g in (g1, g2, g3, g4):
    print("  ex3 N_rd:", reduced_norm(g), "norm^2:", reduced_norm(g).norm())
    assert reduced_norm(g).norm() == 73
q73 = field_product([g1, g2, g3, g4])
assert is_associate(q73, scalar(73))
print("example-3 product associate to 73 ok")

# 12. twisted conjugate identity
for _ in range(20):
    A = rand_elem(rng)
    n = reduced_norm(A)
    assert algebra_mul(A, twisted_conjugate(A)) == scalar(n)
    assert algebra_mul(twisted_conjugate(A), A) == scalar(n)
print("twisted conjugate ok")

print("ALL ORACLE CHECKS PASSED")
