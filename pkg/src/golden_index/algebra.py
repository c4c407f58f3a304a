"""Exact arithmetic in the golden algebra and its maximal order.

The algebra lives over the quadratic extension of Q(i) by the golden ratio
t = (1 + sqrt(5))/2, with Galois map s(t) = 1 - t.  Elements are written
x0 + x1*e where x0, x1 have the form u + v*t with Gaussian integer u, v,
and the generator e satisfies

    e^2 = i        and        z*e = e*s(z).

Two distinct multiplications coexist on the same coordinate set and both are
provided as named functions, never as an overloaded operator:

* ``algebra_mul`` -- the twisted (non-commutative) product above;
* ``field_mul``   -- the commutative product in which e is treated as a
  central square root of i.

They agree exactly when the right-hand factor is of the special form
alpha + beta*e with Gaussian alpha, beta, which is what makes principal
ideal partitions of the commutative ring usable for the non-commutative
order.  Everything here is exact; coordinates are Gaussian integers in the
basis {1, t, e, t*e}.
"""

from __future__ import annotations

from .gaussian import GaussianInteger, I_UNIT, ONE as GI_ONE, ZERO as GI_ZERO

Gi = GaussianInteger


def _gi(x) -> GaussianInteger:
    if isinstance(x, GaussianInteger):
        return x
    if isinstance(x, int):
        return GaussianInteger(x, 0)
    raise TypeError(f"expected int or GaussianInteger, got {type(x).__name__}")


class QuadElement:
    """u + v*t with Gaussian integer u, v, where t^2 = t + 1."""

    __slots__ = ("u", "v")

    def __init__(self, u=0, v=0):
        self.u = _gi(u)
        self.v = _gi(v)

    def __add__(self, other):
        return QuadElement(self.u + other.u, self.v + other.v)

    def __sub__(self, other):
        return QuadElement(self.u - other.u, self.v - other.v)

    def __neg__(self):
        return QuadElement(-self.u, -self.v)

    def __mul__(self, other):
        # (u1 + v1 t)(u2 + v2 t) with t^2 = t + 1
        u1, v1, u2, v2 = self.u, self.v, other.u, other.v
        return QuadElement(u1 * u2 + v1 * v2, u1 * v2 + v1 * u2 + v1 * v2)

    def scale(self, z: GaussianInteger) -> "QuadElement":
        return QuadElement(self.u * z, self.v * z)

    def galois(self) -> "QuadElement":
        """The nontrivial automorphism: u + v*t -> (u + v) - v*t."""
        return QuadElement(self.u + self.v, -self.v)

    def __eq__(self, other):
        return isinstance(other, QuadElement) and self.u == other.u and self.v == other.v

    def __hash__(self):
        return hash((self.u, self.v))

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def __repr__(self):
        return f"({self.u!r})+({self.v!r})t"


class AlgebraElement:
    """x0 + x1*e with QuadElement parts; vec coordinates (a, b, c, d)."""

    __slots__ = ("x0", "x1")

    def __init__(self, x0: QuadElement, x1: QuadElement):
        self.x0 = x0
        self.x1 = x1

    @classmethod
    def from_vec(cls, a, b, c, d) -> "AlgebraElement":
        return cls(QuadElement(_gi(a), _gi(b)), QuadElement(_gi(c), _gi(d)))

    @classmethod
    def from_real_vec(cls, r) -> "AlgebraElement":
        """Build from 8 interleaved integers (re a, im a, ..., re d, im d)."""
        r = [int(x) for x in r]
        if len(r) != 8:
            raise ValueError("real vector must have 8 entries")
        return cls.from_vec(
            Gi(r[0], r[1]), Gi(r[2], r[3]), Gi(r[4], r[5]), Gi(r[6], r[7])
        )

    def vec(self):
        """Coordinates (a, b, c, d) in the basis {1, t, e, t*e}."""
        return (self.x0.u, self.x0.v, self.x1.u, self.x1.v)

    def real_vec(self):
        """8 interleaved integers (re a, im a, re b, im b, ..., im d)."""
        out = []
        for z in self.vec():
            out.append(z.re)
            out.append(z.im)
        return tuple(out)

    def __add__(self, other):
        return AlgebraElement(self.x0 + other.x0, self.x1 + other.x1)

    def __sub__(self, other):
        return AlgebraElement(self.x0 - other.x0, self.x1 - other.x1)

    def __neg__(self):
        return AlgebraElement(-self.x0, -self.x1)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.x0 == other.x0
            and self.x1 == other.x1
        )

    def __hash__(self):
        return hash((self.x0, self.x1))

    def __bool__(self):
        return bool(self.x0) or bool(self.x1)

    def is_split_form(self) -> bool:
        """True iff of the form alpha + beta*e (no golden-ratio part)."""
        return not self.x0.v and not self.x1.v

    def __repr__(self):
        a, b, c, d = self.vec()
        return f"AlgebraElement({a!r}, {b!r}, {c!r}, {d!r})"


ONE = AlgebraElement.from_vec(1, 0, 0, 0)
THETA = AlgebraElement.from_vec(0, 1, 0, 0)
E_GEN = AlgebraElement.from_vec(0, 0, 1, 0)


def scalar(z) -> AlgebraElement:
    """Embed a Gaussian integer into the order."""
    return AlgebraElement.from_vec(_gi(z), GI_ZERO, GI_ZERO, GI_ZERO)


def split_form(alpha, beta) -> AlgebraElement:
    """Build alpha + beta*e from two Gaussian integers."""
    return AlgebraElement.from_vec(_gi(alpha), GI_ZERO, _gi(beta), GI_ZERO)


def algebra_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Twisted product: e^2 = i and z*e = e*s(z)."""
    x0, x1, y0, y1 = a.x0, a.x1, b.x0, b.x1
    z0 = x0 * y0 + (x1 * y1.galois()).scale(I_UNIT)
    z1 = x0 * y1 + x1 * y0.galois()
    return AlgebraElement(z0, z1)


def field_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Commutative product with e central, e^2 = i."""
    x0, x1, y0, y1 = a.x0, a.x1, b.x0, b.x1
    z0 = x0 * y0 + (x1 * y1).scale(I_UNIT)
    z1 = x0 * y1 + x1 * y0
    return AlgebraElement(z0, z1)


def algebra_pow(a: AlgebraElement, n: int) -> AlgebraElement:
    if n < 0:
        raise ValueError("negative powers not supported in the order")
    out = ONE
    for _ in range(n):
        out = algebra_mul(out, a)
    return out


def field_product(elems) -> AlgebraElement:
    out = ONE
    for e in elems:
        out = field_mul(out, e)
    return out


def reduced_norm(a: AlgebraElement) -> GaussianInteger:
    """Reduced norm: x0*s(x0) - i*x1*s(x1), always a Gaussian integer."""
    n0 = a.x0 * a.x0.galois()
    n1 = a.x1 * a.x1.galois()
    assert not n0.v and not n1.v, "relative norm must kill the t-part"
    return n0.u - I_UNIT * n1.u


def twisted_conjugate(a: AlgebraElement) -> AlgebraElement:
    """The element s(x0) - x1*e; its product with a on either side is N_rd(a)."""
    return AlgebraElement(a.x0.galois(), -a.x1)


class RepMatrix:
    """4x4 Gaussian-integer matrix of right multiplication on vec coordinates.

    For M = RepMatrix.of(a), the identity vec(b*a) = M @ vec(b) holds for
    every b in the order (twisted product), and det(M) equals the squared
    reduced norm of a.
    """

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(tuple(_gi(x) for x in row) for row in entries)
        if len(self.entries) != 4 or any(len(r) != 4 for r in self.entries):
            raise ValueError("RepMatrix must be 4x4")

    @classmethod
    def of(cls, a: AlgebraElement) -> "RepMatrix":
        va, vb, vc, vd = a.vec()
        i = I_UNIT
        return cls(
            [
                [va, vb, i * (vc + vd), -(i * vd)],
                [vb, va + vb, -(i * vd), i * vc],
                [vc, vd, va + vb, -vb],
                [vd, vc + vd, -vb, va],
            ]
        )

    def apply(self, vec4):
        """Matrix-vector product over Z[i]."""
        vec4 = [_gi(x) for x in vec4]
        return tuple(
            sum((row[j] * vec4[j] for j in range(4)), GI_ZERO)
            for row in self.entries
        )

    def det(self) -> GaussianInteger:
        m = self.entries

        def det3(r, cols):
            (i0, i1, i2) = r
            (j0, j1, j2) = cols
            return (
                m[i0][j0] * (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1])
                - m[i0][j1] * (m[i1][j0] * m[i2][j2] - m[i1][j2] * m[i2][j0])
                + m[i0][j2] * (m[i1][j0] * m[i2][j1] - m[i1][j1] * m[i2][j0])
            )

        total = GI_ZERO
        cols = (0, 1, 2, 3)
        for j in range(4):
            rest = tuple(c for c in cols if c != j)
            term = m[0][j] * det3((1, 2, 3), rest)
            total = total + term if j % 2 == 0 else total - term
        return total

    def col_of_inverse_times_det(self, j: int):
        """Column j of adjugate(M): solves M @ x = det * e_j."""
        idx = [0, 1, 2, 3]
        rows = [r for r in idx if r != j]

        def minor3(skip_col):
            cols = [c for c in idx if c != skip_col]
            m = self.entries
            (i0, i1, i2) = rows
            (j0, j1, j2) = cols
            return (
                m[i0][j0] * (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1])
                - m[i0][j1] * (m[i1][j0] * m[i2][j2] - m[i1][j2] * m[i2][j0])
                + m[i0][j2] * (m[i1][j0] * m[i2][j1] - m[i1][j1] * m[i2][j0])
            )

        col = []
        for i in range(4):
            c = minor3(i)
            if (i + j) % 2 == 1:
                c = -c
            col.append(c)
        return tuple(col)

    def real(self):
        """8x8 integer matrix acting on interleaved (re, im) coordinates."""
        out = [[0] * 8 for _ in range(8)]
        for i, row in enumerate(self.entries):
            for j, z in enumerate(row):
                out[2 * i][2 * j] = z.re
                out[2 * i][2 * j + 1] = -z.im
                out[2 * i + 1][2 * j] = z.im
                out[2 * i + 1][2 * j + 1] = z.re
        return out

    def __eq__(self, other):
        return isinstance(other, RepMatrix) and self.entries == other.entries

    def __repr__(self):
        rows = "; ".join(" ".join(repr(x) for x in row) for row in self.entries)
        return f"RepMatrix[{rows}]"


def rep_matrix(a: AlgebraElement) -> RepMatrix:
    """Right-multiplication matrix: vec(b*a) = rep_matrix(a) @ vec(b)."""
    return RepMatrix.of(a)


def field_rep_matrix(a: AlgebraElement) -> RepMatrix:
    """Multiplication matrix of the commutative product by a."""
    basis = (ONE, THETA, E_GEN, AlgebraElement.from_vec(0, 0, 0, 1))
    cols = [field_mul(a, b).vec() for b in basis]
    return RepMatrix([[cols[j][i] for j in range(4)] for i in range(4)])


def is_unit(a: AlgebraElement) -> bool:
    """True iff a has an exact two-sided inverse in the order.

    The norm test alone certifies only up to units of Z[i]; here the inverse
    is constructed by an exact linear solve on vec coordinates and both
    products are verified.
    """
    n = reduced_norm(a)
    if n.norm() != 1:
        return False
    m = rep_matrix(a)
    det = m.det()
    if det.norm() != 1:
        return False
    # Solve M @ vec(b) = vec(1): b*a = 1.
    col = m.col_of_inverse_times_det(0)
    try:
        bv = [c.exact_div(det) for c in col]
    except ValueError:
        return False
    b = AlgebraElement.from_vec(*bv)
    return algebra_mul(b, a) == ONE and algebra_mul(a, b) == ONE


def is_associate(a: AlgebraElement, b: AlgebraElement) -> bool:
    """True iff a = u * b (twisted product) for a unit u of the order."""
    nb = reduced_norm(b)
    if not nb:
        return a == b
    num = algebra_mul(a, twisted_conjugate(b))
    try:
        uv = [z.exact_div(nb) for z in num.vec()]
    except ValueError:
        return False
    u = AlgebraElement.from_vec(*uv)
    return is_unit(u) and algebra_mul(u, b) == a
