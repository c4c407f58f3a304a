"""CRT coset partitions of the order's coordinate lattice.

The coordinate lattice of the order is Z[i]^4, viewed as Z^8 through the
interleaved real embedding (re a, im a, re b, im b, re c, im c, re d, im d).
A family of pairwise coprime split-form generators phi_1..phi_K induces

* one sublattice per message,  vec(order * q_k)  with q_k the product of
  all generators except phi_k,
* a common shaping sublattice, vec(order * q)    with q the full product,

and the direct-sum structure of the quotient is exactly what lets each
message pick a coset independently.  Coset representatives are reduced to
minimum Euclidean energy, which equals codeword energy because the code's
linear map is unitary on these coordinates; ties break lexicographically on
the interleaved coordinates so codebooks are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import intmat
from .algebra import (
    AlgebraElement,
    ONE,
    field_mul,
    field_product,
    field_rep_matrix,
    reduced_norm,
    rep_matrix,
)
from .errors import NotCoprime, NotLemmaOneForm, NotSublattice, ZeroDivisor
from .gaussian import GaussianInteger
from .shells import shell8

_MAX_SAFE = np.int64(2) ** 62


@dataclass(frozen=True)
class CosetLeader:
    """Minimum-energy representative of a coset, as exact vec coordinates."""

    coords: tuple[GaussianInteger, GaussianInteger, GaussianInteger, GaussianInteger]

    @classmethod
    def from_row(cls, row) -> "CosetLeader":
        r = [int(x) for x in row]
        return cls(
            (
                GaussianInteger(r[0], r[1]),
                GaussianInteger(r[2], r[3]),
                GaussianInteger(r[4], r[5]),
                GaussianInteger(r[6], r[7]),
            )
        )

    def real_vec(self) -> tuple[int, ...]:
        out = []
        for z in self.coords:
            out.append(z.re)
            out.append(z.im)
        return tuple(out)

    def energy(self) -> int:
        return sum(x * x for x in self.real_vec())

    def to_element(self) -> AlgebraElement:
        return AlgebraElement.from_vec(*self.coords)


def _as_row(x) -> np.ndarray:
    """Accept a CosetLeader, AlgebraElement, 4 Gaussians, or 8 ints."""
    if isinstance(x, CosetLeader):
        return np.array(x.real_vec(), dtype=np.int64)
    if isinstance(x, AlgebraElement):
        return np.array(x.real_vec(), dtype=np.int64)
    seq = list(x)
    if len(seq) == 4 and all(isinstance(z, GaussianInteger) for z in seq):
        out = []
        for z in seq:
            out.extend((z.re, z.im))
        return np.array(out, dtype=np.int64)
    if len(seq) == 8:
        return np.array([int(v) for v in seq], dtype=np.int64)
    raise TypeError("expected vec coordinates (4 Gaussian integers or 8 ints)")


class ZiLattice:
    """Full-rank Z[i]-sublattice of Z[i]^4, with its Z^8 real embedding.

    ``gen`` columns generate the lattice over Z[i]; ``real_gen`` columns
    generate the same set over Z in interleaved coordinates.  The index in
    Z[i]^4 equals |det(gen)|^2 = |det(real_gen)|.
    """

    def __init__(self, gen_rows):
        self.gen = tuple(tuple(row) for row in gen_rows)
        real = [[0] * 8 for _ in range(8)]
        for i, row in enumerate(self.gen):
            for j, z in enumerate(row):
                real[2 * i][2 * j] = z.re
                real[2 * i][2 * j + 1] = -z.im
                real[2 * i + 1][2 * j] = z.im
                real[2 * i + 1][2 * j + 1] = z.re
        self.real_gen = np.array(real, dtype=np.int64)
        _, det = intmat.exact_inverse_times_det(real)
        if det == 0:
            raise ZeroDivisor("lattice generator matrix is singular")
        self.index = abs(det)
        self._real_det = det
        self._real_inv_float = np.linalg.inv(self.real_gen.astype(np.float64))

    @classmethod
    def from_element(cls, q: AlgebraElement) -> "ZiLattice":
        """Lattice of vec(order * q), generated by the columns of M(q)."""
        return cls(rep_matrix(q).entries)

    @classmethod
    def ambient(cls) -> "ZiLattice":
        one = GaussianInteger(1, 0)
        zero = GaussianInteger(0, 0)
        return cls([[one if i == j else zero for j in range(4)] for i in range(4)])

    def key(self) -> bytes:
        return self.real_gen.tobytes()

    def coords_rows(self, rows: np.ndarray):
        """(membership mask, integer coordinates) of rows in this basis.

        Proposes coordinates with a float solve and verifies them exactly in
        integer arithmetic, so the mask is exact.
        """
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        approx = rows.astype(np.float64) @ self._real_inv_float.T
        u = np.rint(approx).astype(np.int64)
        assert np.abs(u).max(initial=0) < 2**30, "coordinate magnitude unsafe"
        exact = u @ self.real_gen.T
        ok = np.all(exact == rows, axis=1)
        near = np.abs(approx - u).max(axis=1) < 1e-6
        stray = near & ~ok
        if np.any(stray):
            # float proposal agreed to 1e-6 but exact check failed; re-verify
            # the hard way to rule out conditioning artifacts
            for i in np.nonzero(stray)[0]:
                sol = intmat.solve_integer(
                    [list(r) for r in self.real_gen], [int(v) for v in rows[i]]
                )
                if sol is not None:
                    u[i] = sol
                    ok[i] = True
        return ok, u

    def contains_rows(self, rows: np.ndarray) -> np.ndarray:
        return self.coords_rows(rows)[0]

    def contains(self, x) -> bool:
        return bool(self.contains_rows(_as_row(x)[None, :])[0])


class _Quotient:
    """Coset bookkeeping and leader table for Z^8 / L."""

    def __init__(self, lattice: ZiLattice):
        self.lattice = lattice
        d, p, _pinv = intmat.snf_with_left_transform(
            [[int(v) for v in row] for row in lattice.real_gen]
        )
        self.diag = [abs(x) for x in d]
        if any(x == 0 for x in self.diag):
            raise ZeroDivisor("shaping lattice is rank deficient")
        self.index = 1
        for x in self.diag:
            self.index *= x
        self._live = [i for i in range(8) if self.diag[i] > 1]
        p_mod = np.array(
            [[p[i][j] % self.diag[i] for j in range(8)] for i in self._live],
            dtype=np.int64,
        )
        self._p_mod = p_mod
        self._mods = np.array([self.diag[i] for i in self._live], dtype=np.int64)
        weights = []
        w = 1
        for m in self._mods:
            weights.append(w)
            w *= int(m)
        self._weights = np.array(weights, dtype=np.int64)
        self._leaders: np.ndarray | None = None
        self._energies: np.ndarray | None = None

    def ids_rows(self, rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        if not self._live:
            return np.zeros(len(rows), dtype=np.int64)
        assert np.abs(rows).max(initial=0) * self._p_mod.max(initial=0) * 8 < _MAX_SAFE
        res = (rows @ self._p_mod.T) % self._mods
        return res @ self._weights

    @property
    def leaders(self) -> np.ndarray:
        if self._leaders is None:
            self._build_leaders()
        return self._leaders

    @property
    def leader_energies(self) -> np.ndarray:
        if self._energies is None:
            self._build_leaders()
        return self._energies

    def _build_leaders(self):
        n = self.index
        table = np.zeros((n, 8), dtype=np.int64)
        energy = np.zeros(n, dtype=np.int64)
        filled = np.zeros(n, dtype=bool)
        remaining = n
        # crude but safe stop: any coset has a representative no farther than
        # half the sum of basis vector lengths from 0
        col_norms = np.sqrt((self.lattice.real_gen.astype(np.float64) ** 2).sum(axis=0))
        e_cap = int(np.ceil((0.5 * col_norms.sum()) ** 2)) + 1
        e = 0
        while remaining and e <= e_cap:
            rows = shell8(e)
            if len(rows):
                order = np.lexsort(rows.T[::-1])
                rows = rows[order]
                ids = self.ids_rows(rows)
                uniq, first = np.unique(ids, return_index=True)
                fresh = ~filled[uniq]
                if np.any(fresh):
                    sel = uniq[fresh]
                    table[sel] = rows[first[fresh]]
                    energy[sel] = e
                    filled[sel] = True
                    remaining -= int(fresh.sum())
            e += 1
        if remaining:
            raise RuntimeError("coset leader search exceeded its energy cap")
        self._leaders = table
        self._energies = energy


_QUOTIENTS: dict[bytes, _Quotient] = {}


def _quotient_for(lattice: ZiLattice) -> _Quotient:
    q = _QUOTIENTS.get(lattice.key())
    if q is None:
        q = _Quotient(lattice)
        _QUOTIENTS[lattice.key()] = q
    return q


def _check_sublattice(sub: ZiLattice, shaping: ZiLattice):
    coords = intmat.integral_coords(
        [list(r) for r in sub.real_gen], [list(r) for r in shaping.real_gen]
    )
    if coords is None:
        raise NotSublattice("shaping lattice is not contained in the sublattice")
    return coords


def _sub_order_ids(sub: ZiLattice, rel_basis, rows: np.ndarray) -> np.ndarray:
    """Flat mixed-radix ids of rows (in sub) for the quotient sub/shaping."""
    d, p, _ = intmat.snf_with_left_transform(rel_basis)
    diag = [abs(x) for x in d]
    live = [i for i in range(8) if diag[i] > 1]
    ok, u = sub.coords_rows(rows)
    assert bool(np.all(ok)), "rows must lie in the sublattice"
    if not live:
        return np.zeros(len(rows), dtype=np.int64)
    p_mod = np.array([[p[i][j] % diag[i] for j in range(8)] for i in live], dtype=np.int64)
    mods = np.array([diag[i] for i in live], dtype=np.int64)
    weights = []
    w = 1
    for m in mods:
        weights.append(w)
        w *= int(m)
    res = (u @ p_mod.T) % mods
    return res @ np.array(weights, dtype=np.int64)


def enumerate_cosets(sub: ZiLattice, shaping: ZiLattice) -> list[CosetLeader]:
    """Minimum-energy leaders of sub/shaping, in canonical table order.

    The leaders of the quotient are exactly the global minimum-energy coset
    representatives that happen to lie in ``sub`` (every representative of a
    coset of a sub element stays in ``sub``), ordered by the mixed-radix
    coordinates of the relative Smith normal form.
    """
    rel = _check_sublattice(sub, shaping)
    quot = _quotient_for(shaping)
    leaders = quot.leaders
    mask = sub.contains_rows(leaders)
    rows = leaders[mask]
    expected = shaping.index // sub.index
    if len(rows) != expected:
        raise RuntimeError(
            f"leader filter found {len(rows)} cosets, expected {expected}"
        )
    ids = _sub_order_ids(sub, rel, rows)
    order = np.argsort(ids, kind="stable")
    assert len(np.unique(ids)) == len(ids), "sub-quotient ids must be distinct"
    return [CosetLeader.from_row(r) for r in rows[order]]


def mod_shaping(x, shaping: ZiLattice) -> CosetLeader:
    """Reduce vec coordinates to the minimum-energy representative mod shaping."""
    quot = _quotient_for(shaping)
    row = _as_row(x)
    idx = int(quot.ids_rows(row[None, :])[0])
    return CosetLeader.from_row(quot.leaders[idx])


class PartitionSpec:
    """Everything derived from a family of split-form partition generators.

    Immutable after construction; all queries are read-only.  Bulk data is
    kept as int64 arrays: ``global_leaders[flat_coset_id]`` is the reduced
    codebook row for that coset, and ``leader_tables[k][w]`` is the row the
    k-th message maps to under index w.
    """

    def __init__(self, phis, q, qks, sublattices, shaping, leader_tables, crt_idempotents):
        self.phis: tuple[AlgebraElement, ...] = tuple(phis)
        self.q: AlgebraElement = q
        self.qks: tuple[AlgebraElement, ...] = tuple(qks)
        self.sublattices: tuple[ZiLattice, ...] = tuple(sublattices)
        self.shaping: ZiLattice = shaping
        self.leader_tables: tuple[np.ndarray, ...] = tuple(leader_tables)
        self.sizes: tuple[int, ...] = tuple(len(t) for t in leader_tables)
        self._idempotents: tuple[AlgebraElement, ...] = tuple(crt_idempotents)
        self._quot = _quotient_for(shaping)
        self._leader_index: list[dict[bytes, int]] = [
            {t[w].tobytes(): w for w in range(len(t))} for t in self.leader_tables
        ]

    @property
    def num_messages(self) -> int:
        return len(self.phis)

    @property
    def codebook_size(self) -> int:
        return self._quot.index

    @property
    def global_leaders(self) -> np.ndarray:
        return self._quot.leaders

    def coset_ids_rows(self, rows: np.ndarray) -> np.ndarray:
        return self._quot.ids_rows(rows)

    def reduce_rows(self, rows: np.ndarray) -> np.ndarray:
        """Vectorized minimum-energy reduction mod the shaping lattice."""
        ids = self._quot.ids_rows(rows)
        return self._quot.leaders[ids]

    def reduce(self, x) -> CosetLeader:
        return CosetLeader.from_row(self.reduce_rows(_as_row(x)[None, :])[0])

    def leaders(self, k: int) -> list[CosetLeader]:
        return [CosetLeader.from_row(r) for r in self.leader_tables[k]]

    def leader_message_index(self, k: int, row) -> int:
        return self._leader_index[k][np.asarray(row, dtype=np.int64).tobytes()]

    def crt_split_row(self, row) -> list[np.ndarray]:
        """Per-message components x_k with (sum x_k) reducing back to row."""
        elem = AlgebraElement.from_real_vec([int(v) for v in _as_row(row)])
        out = []
        for eps in self._idempotents:
            comp = field_mul(eps, elem)
            out.append(self.reduce_rows(_as_row(comp)[None, :])[0])
        return out

    def crt_split(self, x: CosetLeader) -> list[CosetLeader]:
        return [CosetLeader.from_row(r) for r in self.crt_split_row(_as_row(x))]

    def crt_indices_row(self, row) -> tuple[int, ...]:
        """Message tuple of an arbitrary codebook row."""
        parts = self.crt_split_row(row)
        return tuple(
            self.leader_message_index(k, parts[k]) for k in range(self.num_messages)
        )

    def describe(self) -> dict:
        return {
            "K": self.num_messages,
            "sizes": self.sizes,
            "codebook_size": self.codebook_size,
            "generator_norms": [repr(reduced_norm(p)) for p in self.phis],
        }


def _validate_phis(phis):
    phis = list(phis)
    if not phis:
        raise NotLemmaOneForm("at least one partition generator is required")
    for k, phi in enumerate(phis):
        if not isinstance(phi, AlgebraElement):
            raise TypeError("partition generators must be AlgebraElement values")
        if not phi.is_split_form():
            raise NotLemmaOneForm(
                f"generator {k + 1} has a golden-ratio component; "
                "only alpha + beta*e generators induce two-sided ideals"
            )
        if not reduced_norm(phi):
            raise ZeroDivisor(f"generator {k + 1} has reduced norm 0")
    return phis


def _check_pairwise_coprime(phis):
    mats = [field_rep_matrix(p).real() for p in phis]
    for k in range(len(phis)):
        for l in range(k + 1, len(phis)):
            stacked = [mats[k][i] + mats[l][i] for i in range(8)]
            if intmat.column_lattice_index(stacked) != 1:
                raise NotCoprime(
                    f"generators {k + 1} and {l + 1} are not relatively prime"
                )


def _crt_idempotent(q_k: AlgebraElement, phi_k: AlgebraElement) -> AlgebraElement:
    """Element congruent to 1 mod phi_k and to 0 mod every other generator."""
    a = field_rep_matrix(q_k).real()
    b = field_rep_matrix(phi_k).real()
    stacked = [a[i] + b[i] for i in range(8)]
    e1 = [1, 0, 0, 0, 0, 0, 0, 0]
    sol = intmat.solve_integer(stacked, e1)
    if sol is None:
        raise NotCoprime("CRT solve failed; generators are not relatively prime")
    t = AlgebraElement.from_real_vec(sol[:8])
    return field_mul(q_k, t)


def build_partition(phis) -> PartitionSpec:
    """Build the full partition data for a family of split-form generators."""
    phis = _validate_phis(phis)
    _check_pairwise_coprime(phis)
    k_count = len(phis)
    q = field_product(phis)
    qks = [
        field_product([phis[j] for j in range(k_count) if j != k])
        for k in range(k_count)
    ]
    sublattices = [ZiLattice.from_element(qk) for qk in qks]
    shaping = ZiLattice.from_element(q)

    expected_sizes = [reduced_norm(p).norm() ** 2 for p in phis]
    total = 1
    for w in expected_sizes:
        total *= w
    if shaping.index != total:
        raise RuntimeError("shaping index disagrees with the product of norms")

    leader_tables = []
    for k in range(k_count):
        leaders = enumerate_cosets(sublattices[k], shaping)
        if len(leaders) != expected_sizes[k]:
            raise RuntimeError("per-message coset count disagrees with |N_rd|^4")
        leader_tables.append(
            np.array([l.real_vec() for l in leaders], dtype=np.int64)
        )

    idempotents = [_crt_idempotent(qks[k], phis[k]) for k in range(k_count)]
    # structural sanity: idempotents resolve the identity mod the shaping ideal
    total_eps = ONE
    acc = None
    for eps in idempotents:
        acc = eps if acc is None else acc + eps
    diff = acc - total_eps
    if not shaping.contains(_as_row(diff)):
        raise RuntimeError("CRT idempotents do not sum to 1 mod the shaping ideal")

    return PartitionSpec(
        phis, q, qks, sublattices, shaping, leader_tables, idempotents
    )
