"""Codeword mapping, side-information subcodes, and decoders.

A reduced coordinate row (a, b, c, d) maps to the 2x2 transmit matrix

    X = (1/sqrt(5)) [[ alpha*(a + b*t),        alpha*(c + d*t)      ],
                     [ i*s(alpha)*(c + d*t'),  s(alpha)*(a + b*t')  ]]

with t the golden ratio, t' its conjugate, and alpha = 1 + i*t'.  This map
is unitary on the interleaved real coordinates, so integer coordinate energy
equals Frobenius codeword energy exactly, and |det X|^2 is |N_rd|^2 / 5 of
the corresponding order element.

Decoding is exhaustive maximum-likelihood over the candidate set (the
reference decoder), with a sphere decoder that must return identical answers
and exists purely as an accelerator.  Both resolve distance ties toward the
lexicographically smallest coordinate row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import AlgebraElement, ONE, field_product, rep_matrix
from .errors import IndexOutOfRange
from .gaussian import GaussianInteger
from .lattice import CosetLeader, PartitionSpec, ZiLattice, _as_row

SQRT5 = math.sqrt(5.0)
THETA_F = (1.0 + SQRT5) / 2.0
THETA_BAR_F = (1.0 - SQRT5) / 2.0
ALPHA = 1.0 + 1j * THETA_BAR_F
ALPHA_BAR = 1.0 + 1j * THETA_F

# vec(X) entries in column-major order (X11, X21, X12, X22)
_BASIS = np.array(
    [
        [ALPHA, ALPHA * THETA_F, 0.0, 0.0],
        [0.0, 0.0, 1j * ALPHA_BAR, 1j * ALPHA_BAR * THETA_BAR_F],
        [0.0, 0.0, ALPHA, ALPHA * THETA_F],
        [ALPHA_BAR, ALPHA_BAR * THETA_BAR_F, 0.0, 0.0],
    ],
    dtype=np.complex128,
) / SQRT5

# near-tie window for float distance comparisons; ties resolve by coords
_TIE_RTOL = 1e-9


def coords_to_matrices(rows: np.ndarray) -> np.ndarray:
    """Map integer coordinate rows (n, 8) to raw transmit matrices (n, 2, 2)."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    zc = rows[:, 0::2].astype(np.float64) + 1j * rows[:, 1::2].astype(np.float64)
    v = zc @ _BASIS.T
    out = np.empty((len(rows), 2, 2), dtype=np.complex128)
    out[:, 0, 0] = v[:, 0]
    out[:, 1, 0] = v[:, 1]
    out[:, 0, 1] = v[:, 2]
    out[:, 1, 1] = v[:, 3]
    return out


@dataclass(frozen=True, eq=False)
class Codeword:
    """Exact coordinates plus the floating transmit matrix they map to."""

    coords: tuple[GaussianInteger, GaussianInteger, GaussianInteger, GaussianInteger]
    matrix: np.ndarray

    @classmethod
    def from_row(cls, row) -> "Codeword":
        leader = CosetLeader.from_row(row)
        return cls(leader.coords, coords_to_matrices(_as_row(leader))[0])

    def real_vec(self):
        out = []
        for z in self.coords:
            out.extend((z.re, z.im))
        return tuple(out)


@dataclass(frozen=True)
class SideInfoConfig:
    """Which messages a receiver already knows, and (optionally) their values.

    ``indices`` are 0-based message positions.  ``values`` may be None when
    the configuration only names the index set (the simulator fills in the
    transmitted values trial by trial).
    """

    indices: tuple[int, ...]
    values: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))
        if self.values is not None and len(self.values) != len(self.indices):
            raise ValueError("one value per known index is required")

    def label(self) -> str:
        if not self.indices:
            return "full"
        inner = ",".join(str(k + 1) for k in self.indices)
        return "s={" + inner + "}"


class CodeSet:
    """A finite set of codewords: the full codebook or an expurgated subcode.

    Rows are kept in message (odometer) order; a lexicographic view is kept
    alongside for deterministic tie-breaking in the decoders.
    """

    def __init__(self, spec: PartitionSpec, side, msg_tuples, coords, tx_scale,
                 offset_lattice: ZiLattice, offset_row: np.ndarray):
        self.spec = spec
        self.side = side
        self.msg_tuples = msg_tuples
        self.coords = coords
        self.tx_scale = float(tx_scale)
        self.offset_lattice = offset_lattice
        self.offset_row = offset_row
        self.lex_order = np.lexsort(coords.T[::-1])
        self._matrices = None
        self._features = None
        self._packed = None

    def __len__(self):
        return len(self.coords)

    @property
    def matrices(self) -> np.ndarray:
        if self._matrices is None:
            self._matrices = coords_to_matrices(self.coords)
        return self._matrices

    def energy_sum(self) -> int:
        return int((self.coords.astype(object) ** 2).sum())

    def features(self):
        """Per-candidate decode features, in lexicographic candidate order.

        Returns (cross 8xN, quad 4xN) real matrices: the cross features pair
        with conj(H^H Y) entries and the quad features with the Gram matrix
        of H, so squared distances expand into two small matmuls.
        """
        if self._features is None:
            x = self.matrices[self.lex_order]
            v = np.stack(
                [x[:, 0, 0], x[:, 1, 0], x[:, 0, 1], x[:, 1, 1]], axis=1
            )
            cross = np.empty((8, len(x)), dtype=np.float64)
            cross[0::2] = v.real.T
            cross[1::2] = v.imag.T
            s = np.conj(x[:, 0, 0]) * x[:, 1, 0] + np.conj(x[:, 0, 1]) * x[:, 1, 1]
            quad = np.stack(
                [
                    np.abs(x[:, 0, 0]) ** 2 + np.abs(x[:, 0, 1]) ** 2,
                    np.abs(x[:, 1, 0]) ** 2 + np.abs(x[:, 1, 1]) ** 2,
                    s.real,
                    s.imag,
                ],
                axis=0,
            )
            self._features = (cross, quad)
        return self._features

    def packed_keys(self):
        """(sorted packed coordinate keys, matching candidate indices)."""
        if self._packed is None:
            keys = pack_rows(self.coords)
            order = np.argsort(keys)
            self._packed = (keys[order], order)
        return self._packed

    def key_index(self) -> dict[tuple, int]:
        """Coordinate-row tuple -> candidate index, built on first use."""
        if not hasattr(self, "_key_index"):
            self._key_index = {
                tuple(int(v) for v in row): i for i, row in enumerate(self.coords)
            }
        return self._key_index

    def message_of(self, idx: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.msg_tuples[idx])

    def codeword(self, idx: int) -> Codeword:
        return Codeword.from_row(self.coords[idx])


def pack_rows(rows: np.ndarray) -> np.ndarray:
    """Pack integer rows with |entry| < 128 into one uint64 key per row."""
    rows = np.ascontiguousarray(np.asarray(rows, dtype=np.int64))
    assert np.abs(rows).max(initial=0) < 128, "coordinates exceed packing range"
    b = (rows + 128).astype(np.uint8)
    return b.view(np.uint64).ravel()


def _message_grid(sizes) -> np.ndarray:
    """All message tuples in odometer order, first index most significant."""
    grids = np.meshgrid(*[np.arange(w, dtype=np.int64) for w in sizes], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def encode_rows(spec: PartitionSpec, msg_tuples: np.ndarray) -> np.ndarray:
    """Vectorized encoder: per-message leaders are summed, then reduced."""
    msg_tuples = np.atleast_2d(np.asarray(msg_tuples, dtype=np.int64))
    total = np.zeros((len(msg_tuples), 8), dtype=np.int64)
    for k in range(spec.num_messages):
        w = msg_tuples[:, k]
        if w.min(initial=0) < 0 or w.max(initial=0) >= spec.sizes[k]:
            raise IndexOutOfRange(f"message {k + 1} index out of range")
        total += spec.leader_tables[k][w]
    return spec.reduce_rows(total)


def encode(spec: PartitionSpec, w) -> Codeword:
    """Map one message tuple to its codeword."""
    w = tuple(int(v) for v in w)
    if len(w) != spec.num_messages:
        raise IndexOutOfRange("message tuple has the wrong arity")
    return Codeword.from_row(encode_rows(spec, np.array([w]))[0])


_FULL_CACHE: dict[int, CodeSet] = {}


def transmit_scale(spec: PartitionSpec) -> float:
    """Scale making the mean per-entry codebook energy exactly 1."""
    total = int((spec.global_leaders.astype(object) ** 2).sum())
    es = Fraction(total, 4 * spec.codebook_size)
    return float(1 / math.sqrt(es))


def full_codebook(spec: PartitionSpec) -> CodeSet:
    cs = _FULL_CACHE.get(id(spec))
    if cs is None:
        msgs = _message_grid(spec.sizes)
        coords = encode_rows(spec, msgs)
        cs = CodeSet(
            spec,
            None,
            msgs,
            coords,
            transmit_scale(spec),
            ZiLattice.ambient(),
            np.zeros(8, dtype=np.int64),
        )
        _FULL_CACHE[id(spec)] = cs
    return cs


def subcode(spec: PartitionSpec, side: SideInfoConfig) -> CodeSet:
    """Expurgate the codebook down to tuples agreeing with the side info."""
    if side.values is None:
        raise ValueError("subcode needs fixed values for the known messages")
    known = dict(zip(side.indices, side.values))
    for k, v in known.items():
        if not 0 <= k < spec.num_messages:
            raise IndexOutOfRange(f"side-information index {k + 1} out of range")
        if not 0 <= v < spec.sizes[k]:
            raise IndexOutOfRange(f"known value for message {k + 1} out of range")
    free = [k for k in range(spec.num_messages) if k not in known]
    if free:
        grid = _message_grid([spec.sizes[k] for k in free])
    else:
        grid = np.zeros((1, 0), dtype=np.int64)
    msgs = np.empty((len(grid), spec.num_messages), dtype=np.int64)
    for k, v in known.items():
        msgs[:, k] = v
    for j, k in enumerate(free):
        msgs[:, k] = grid[:, j]
    coords = encode_rows(spec, msgs)
    eta = field_product([spec.phis[k] for k in side.indices]) if side.indices else ONE
    return CodeSet(
        spec,
        side,
        msgs,
        coords,
        transmit_scale(spec),
        ZiLattice.from_element(eta),
        coords[0].copy(),
    )


def _trial_features(y: np.ndarray, h: np.ndarray):
    """Per-trial decode features for batches of received/channel matrices."""
    y = np.asarray(y, dtype=np.complex128).reshape(-1, 2, 2)
    h = np.asarray(h, dtype=np.complex128).reshape(-1, 2, 2)
    w = np.conj(np.transpose(h, (0, 2, 1))) @ y
    wv = np.stack([w[:, 0, 0], w[:, 1, 0], w[:, 0, 1], w[:, 1, 1]], axis=1)
    cross = np.empty((len(y), 8), dtype=np.float64)
    cross[:, 0::2] = wv.real
    cross[:, 1::2] = wv.imag
    g = np.conj(np.transpose(h, (0, 2, 1))) @ h
    quad = np.stack(
        [
            g[:, 0, 0].real,
            g[:, 1, 1].real,
            2.0 * g[:, 0, 1].real,
            -2.0 * g[:, 0, 1].imag,
        ],
        axis=1,
    )
    return cross, quad


def ml_decode_batch(y: np.ndarray, h: np.ndarray, codeset: CodeSet) -> np.ndarray:
    """Exhaustive ML over the candidate set; returns candidate indices.

    Scores drop the constant ||Y||^2 term; near-ties within a relative window
    resolve to the lexicographically smallest coordinates.
    """
    cross_t, quad_t = _trial_features(y, h)
    cross_c, quad_c = codeset.features()
    g = codeset.tx_scale
    scores = quad_t @ quad_c
    scores *= g * g
    scores -= (2.0 * g) * (cross_t @ cross_c)
    best = scores.min(axis=1)
    tol = _TIE_RTOL * (1.0 + np.abs(best))
    first_near = (scores <= (best + tol)[:, None]).argmax(axis=1)
    return codeset.lex_order[first_near]


def ml_decode(y: np.ndarray, h: np.ndarray, codeset: CodeSet) -> tuple[int, ...]:
    """Decode one received matrix to the most likely message tuple."""
    if len(codeset) == 0:
        raise ValueError("candidate set is empty")
    idx = int(ml_decode_batch(y, h, codeset)[0])
    return codeset.message_of(idx)


def _realify_complex_matrix(c: np.ndarray) -> np.ndarray:
    n, m = c.shape
    out = np.empty((2 * n, 2 * m), dtype=np.float64)
    out[0::2, 0::2] = c.real
    out[0::2, 1::2] = -c.imag
    out[1::2, 0::2] = c.imag
    out[1::2, 1::2] = c.real
    return out


def _interleave_complex_vec(v: np.ndarray) -> np.ndarray:
    out = np.empty(2 * len(v), dtype=np.float64)
    out[0::2] = v.real
    out[1::2] = v.imag
    return out


def sphere_decode(
    y: np.ndarray,
    h: np.ndarray,
    codeset: CodeSet,
    node_budget: int = 50_000,
) -> tuple[int, ...]:
    """Depth-first lattice enumeration; identical answers to ``ml_decode``.

    Enumerates the translate lattice that carries the candidate set in
    zig-zag order per level, checks leaves against the candidate hash, and
    keeps shrinking the search radius.  Falls back to exhaustive ML on
    singular channels or budget exhaustion, so the reference contract holds
    unconditionally.
    """
    if len(codeset) == 0:
        raise ValueError("candidate set is empty")
    if len(codeset) == 1:
        return codeset.message_of(0)

    y = np.asarray(y, dtype=np.complex128).reshape(2, 2)
    h = np.asarray(h, dtype=np.complex128).reshape(2, 2)
    g = codeset.tx_scale
    # complex model: vec(Y) = g (I (x) H) BASIS coords + noise
    eff = np.zeros((4, 4), dtype=np.complex128)
    eff[0:2, 0:2] = h
    eff[2:4, 2:4] = h
    m_c = g * (eff @ _BASIS)
    m_r = _realify_complex_matrix(m_c)
    yv = _interleave_complex_vec(
        np.array([y[0, 0], y[1, 0], y[0, 1], y[1, 1]], dtype=np.complex128)
    )

    gen = codeset.offset_lattice.real_gen
    t_row = codeset.offset_row.astype(np.int64)
    a_full = m_r @ gen.astype(np.float64)
    # decode better-conditioned directions deepest in the tree
    perm = np.argsort(np.sum(a_full * a_full, axis=0))
    a = a_full[:, perm]
    gen_p = gen[:, perm]
    q, r = np.linalg.qr(a)
    diag = np.abs(np.diag(r))
    if diag.min() < 1e-9:
        idx = int(ml_decode_batch(y, h, codeset)[0])
        return codeset.message_of(idx)
    signs = np.sign(np.diag(r))
    q = q * signs
    r = signs[:, None] * r
    z = q.T @ (yv - m_r @ t_row.astype(np.float64))

    key_index = codeset.key_index()
    coords_list = codeset.coords
    identity_offset = (
        not t_row.any()
        and gen.shape == (8, 8)
        and bool(np.array_equal(gen, np.eye(8, dtype=np.int64)))
    )
    gen_rows = [[int(gen_p[i, j]) for j in range(8)] for i in range(8)]
    t_list = [int(v) for v in t_row]
    perm_list = [int(p) for p in perm]

    def leaf_lookup(u_vals) -> int | None:
        if identity_offset:
            row = [0] * 8
            for j in range(8):
                row[perm_list[j]] = u_vals[j]
            row = tuple(row)
        else:
            row = tuple(
                t_list[i] + sum(gen_rows[i][j] * u_vals[j] for j in range(8))
                for i in range(8)
            )
        return key_index.get(row)

    # seed with a guaranteed-valid candidate: reduce the Babai point
    rl = [[float(r[i, j]) for j in range(8)] for i in range(8)]
    zl = [float(v) for v in z]
    u_babai = [0] * 8
    for i in range(7, -1, -1):
        u_babai[i] = round(
            (zl[i] - sum(rl[i][j] * u_babai[j] for j in range(i + 1, 8))) / rl[i][i]
        )
    seed_vec = t_row + gen_p @ np.array(u_babai, dtype=np.int64)
    seed_row = codeset.spec.reduce_rows(seed_vec[None, :])[0]
    seed_idx = key_index.get(tuple(int(v) for v in seed_row))
    assert seed_idx is not None, "reduced Babai point must be a candidate"
    best_dist = float(np.sum((yv - m_r @ seed_row.astype(np.float64)) ** 2))
    ties: list[tuple[float, tuple, int]] = [
        (best_dist, tuple(int(v) for v in coords_list[seed_idx]), seed_idx)
    ]

    u = [0] * 8
    step = [0] * 8
    center = [0.0] * 8
    partial = [0.0] * 9
    nodes = 0
    level = 7
    tol = _TIE_RTOL * (1.0 + best_dist)

    c0 = zl[7] / rl[7][7]
    center[7] = c0
    u[7] = round(c0)
    step[7] = 1 if u[7] <= c0 else -1

    while True:
        nodes += 1
        if nodes > node_budget:
            idx = int(ml_decode_batch(y, h, codeset)[0])
            return codeset.message_of(idx)
        e = rl[level][level] * (u[level] - center[level])
        d = partial[level + 1] + e * e
        if d <= best_dist + tol:
            if level == 0:
                idx = leaf_lookup(u)
                if idx is not None:
                    ties.append(
                        (d, tuple(int(v) for v in coords_list[idx]), idx)
                    )
                    if d < best_dist:
                        best_dist = d
                        tol = _TIE_RTOL * (1.0 + best_dist)
                s = step[0]
                u[0] += s
                step[0] = -s - (1 if s > 0 else -1)
            else:
                partial[level] = d
                level -= 1
                c = (
                    zl[level]
                    - sum(rl[level][j] * u[j] for j in range(level + 1, 8))
                ) / rl[level][level]
                center[level] = c
                u[level] = round(c)
                step[level] = 1 if u[level] <= c else -1
        else:
            # out of the sphere: climb until we can move sideways
            level += 1
            if level > 7:
                break
            s = step[level]
            u[level] += s
            step[level] = -s - (1 if s > 0 else -1)

    cutoff = best_dist + _TIE_RTOL * (1.0 + best_dist)
    alive = [(coords, idx) for dist, coords, idx in ties if dist <= cutoff]
    alive.sort()
    return codeset.message_of(alive[0][1])


def export_codebook_csv(codeset: CodeSet, path: str):
    """CSV rows: message indices, 8 integer coordinates, 8 matrix floats."""
    import csv

    k = codeset.spec.num_messages
    header = (
        [f"w{j + 1}" for j in range(k)]
        + ["re_a", "im_a", "re_b", "im_b", "re_c", "im_c", "re_d", "im_d"]
        + [
            "re_x11", "im_x11", "re_x21", "im_x21",
            "re_x12", "im_x12", "re_x22", "im_x22",
        ]
    )
    mats = codeset.matrices
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(len(codeset)):
            x = mats[i]
            entries = [x[0, 0], x[1, 0], x[0, 1], x[1, 1]]
            writer.writerow(
                [int(v) for v in codeset.msg_tuples[i]]
                + [int(v) for v in codeset.coords[i]]
                + [f"{val:.12g}" for e in entries for val in (e.real, e.imag)]
            )
