"""Linear codes: Reed-Solomon, Reed-Muller, Hamming and seeded random codes,
plus subfield subcodes, trace codes and brute-force minimum distance."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .fmatrix import (Matrix, Vector, matmul_arrays, matrix_from_lines,
                      matrix_to_lines, nullspace, rank, row_basis, rref)
from .gf import FieldSpec, field_from_order, field_from_text, field_to_text
from .opcount import OpCounter, counted_dot
from .rng import Sampler

__all__ = [
    "LinearCode",
    "ENUMERATION_BUDGET",
    "hamming_code",
    "rs_code",
    "rs_points",
    "rm_code",
    "rm_monomials",
    "random_code",
    "subfield_subcode",
    "trace_code",
    "min_distance_exhaustive",
    "iter_codewords",
    "all_codewords",
    "syndrome_direct",
    "save_code",
    "load_code",
]

ENUMERATION_BUDGET = 1 << 24
# rank checks at construction are skipped above this many element operations
RANK_CHECK_BUDGET = 1 << 22
# G H^T is formed exactly up to this many element products, else sampled
EXACT_CHECK_BUDGET = 1 << 23
FREIVALDS_TRIALS = 24
# code files get their stated distance re-checked up to this many codewords
LOAD_CHECK_BUDGET = 1 << 16


def _orthogonal(G: Matrix, H: Matrix) -> bool:
    """G H^T == 0: exactly for small codes, else by Freivalds' check.

    The randomised check multiplies by FREIVALDS_TRIALS seeded random
    vectors r and tests G (H^T r) = 0; a nonzero product survives each trial
    with probability at most 1/q.
    """
    F = G.field
    if G.rows * H.rows * G.cols <= EXACT_CHECK_BUDGET:
        return not matmul_arrays(F, G.data, H.data.T).any()
    R = Sampler(0x5EED).many_below(F.order, H.rows * FREIVALDS_TRIALS)
    R = R.reshape(H.rows, FREIVALDS_TRIALS)
    return not matmul_arrays(F, G.data, matmul_arrays(F, H.data.T, R)).any()


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An [n, k] code given by a generator and a parity-check matrix.

    ``distance`` is the exact minimum distance when it is known (from the
    construction or from enumeration), else ``None``.
    """

    generator: Matrix
    parity_check: Matrix
    label: str = "C"
    distance: int | None = None

    def __post_init__(self):
        G, H = self.generator, self.parity_check
        if G.field != H.field:
            raise ValueError("generator and parity check over different fields")
        if G.cols != H.cols:
            raise ValueError("generator and parity check disagree on n")
        if G.rows + H.rows != G.cols:
            raise ValueError(
                f"k + (n-k) = {G.rows} + {H.rows} does not equal n = {G.cols}")
        if " " in self.label:
            raise ValueError("code labels cannot contain spaces")
        if not _orthogonal(G, H):
            raise ValueError("G H^T is not zero")
        for M in (G, H):
            if M.rows * M.rows * M.cols <= RANK_CHECK_BUDGET and rank(M) != M.rows:
                raise ValueError("generator/parity check is not full rank")

    @property
    def field(self) -> FieldSpec:
        return self.generator.field

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self.generator.rows

    def __repr__(self):
        d = "?" if self.distance is None else self.distance
        return f"LinearCode({self.label}, [{self.n},{self.k},{d}] over {self.field!r})"

    @classmethod
    def from_generator(cls, G: Matrix, label: str = "C",
                       distance: int | None = None) -> LinearCode:
        """Code spanned by the rows of ``G`` (which need not be independent)."""
        if rank(G) != G.rows:
            G = row_basis(G)
        return cls(G, nullspace(G), label, distance)

    @classmethod
    def from_parity_check(cls, H: Matrix, label: str = "C",
                          distance: int | None = None) -> LinearCode:
        if rank(H) != H.rows:
            H = row_basis(H)
        return cls(nullspace(H), H, label, distance)

    def dual(self) -> LinearCode:
        return LinearCode(self.parity_check, self.generator, f"dual({self.label})")

    def syndrome(self, x: Vector) -> Vector:
        if len(x) != self.n:
            raise ValueError(f"length {len(x)} vector, code length {self.n}")
        return self.parity_check @ x

    def contains(self, x: Vector) -> bool:
        if not self.field.extends(x.field):
            return False
        return self.syndrome(x).is_zero()

    def encode(self, message) -> Vector:
        msg = np.asarray(message.data if isinstance(message, Vector) else message,
                         dtype=np.int64)
        if msg.shape != (self.k,):
            raise ValueError(f"message must have length {self.k}")
        return Vector(self.field,
                      matmul_arrays(self.field, msg[None, :], self.generator.data)[0])

    @cached_property
    def _decoder_map(self):
        # information set J and inv(G[:, J]) so that m = c_J inv(G_J)
        F = self.field
        _, piv = rref(self.generator)
        GJ = self.generator.data[:, piv]
        aug = Matrix(F, np.concatenate([GJ, np.eye(self.k, dtype=np.int64)], axis=1))
        R, _ = rref(aug)
        return piv, R.data[:, self.k:]

    def message_of(self, c: Vector) -> Vector:
        """The message m with m G = c (assumes c is a codeword)."""
        piv, inv = self._decoder_map
        return Vector(self.field,
                      matmul_arrays(self.field, c.data[None, piv], inv)[0])

    def message_index(self, c: Vector) -> int:
        """Position of ``c`` in message enumeration order (little-endian digits)."""
        m = self.message_of(c).data
        q = self.field.order
        return int(sum(int(d) * q ** i for i, d in enumerate(m)))

    def random_codeword(self, sampler: Sampler) -> Vector:
        msg = sampler.many_below(self.field.order, self.k)
        return self.encode(msg)


# ---------------------------------------------------------------------------
# constructions


def hamming_code(r: int = 3) -> LinearCode:
    """Binary Hamming code [2^r-1, 2^r-1-r, 3] in systematic form [I | P].

    The rows of P are the r-bit vectors of weight >= 2 in increasing order
    (bit i of the integer is column i).  For r = 3, H = [P^T | I_3].
    """
    F = FieldSpec(2)
    cols = [v for v in range(1, 2 ** r) if bin(v).count("1") >= 2]
    P = np.array([[(v >> i) & 1 for i in range(r)] for v in cols], dtype=np.int64)
    k = len(cols)
    G = np.concatenate([np.eye(k, dtype=np.int64), P], axis=1)
    H = np.concatenate([P.T, np.eye(r, dtype=np.int64)], axis=1)
    n = k + r
    return LinearCode(Matrix(F, G), Matrix(F, H), f"Hamming({n},{k})", 3)


def rs_points(F: FieldSpec, n: int) -> np.ndarray:
    """Default evaluation points.

    ``n = |F|``: 0, 1, g, g^2, ...; otherwise g^0, ..., g^(n-1), with g the
    field's smallest primitive element.
    """
    q = F.order
    if n > q:
        raise ValueError(f"RS length {n} exceeds the {q} points of {F.name}")
    g = F.primitive_element
    powers = F.pow(g, np.arange(min(n, q - 1)))
    if n == q:
        return np.concatenate([[0], powers]).astype(np.int64)
    return powers


def rs_code(F: FieldSpec, n: int, k: int, points=None) -> LinearCode:
    """Reed-Solomon code: evaluations of polynomials of degree < k.

    Generator row i holds X^i at the points.  The parity check is the dual
    generalised RS code, rows v_j a_j^i for i < n-k with
    v_j = 1 / prod_{l != j}(a_j - a_l).
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    a = rs_points(F, n) if points is None else np.asarray(points, dtype=np.int64)
    if a.shape != (n,):
        raise ValueError("need exactly n evaluation points")
    if len(set(a.tolist())) != n or not F.contains(a):
        raise ValueError("evaluation points must be distinct field elements")
    G = F.pow(a[None, :], np.arange(k)[:, None])
    diff = F.sub(a[:, None], a[None, :])
    np.fill_diagonal(diff, 1)
    v = F.inv(F.prod(diff, axis=1))
    H = F.mul(v[None, :], F.pow(a[None, :], np.arange(n - k)[:, None]))
    return LinearCode(Matrix(F, G), Matrix(F, H.reshape(n - k, n)),
                      f"RS({n},{k})", n - k + 1)


def rm_monomials(q: int, r: int, m: int) -> list[tuple[int, ...]]:
    """Exponent vectors with entries < q and total degree <= r.

    Graded order: total degree ascending, then lexicographically descending
    (so x_1 precedes x_2 within a degree).
    """
    mons = [e for e in itertools.product(range(q), repeat=m) if sum(e) <= r]
    mons.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    return mons


def rm_code(q, r: int, m: int) -> LinearCode:
    """Reed-Muller code RM_q(r, m) evaluated on all of F_q^m.

    Point t has coordinates x_i = digit i of t in base q, which matches the
    integer encoding of F_{q^m} built as a degree-m extension of F_q.
    """
    F = q if isinstance(q, FieldSpec) else field_from_order(q)
    q = F.order
    if not 0 <= r <= m * (q - 1):
        raise ValueError(f"RM order r={r} outside [0, {m * (q - 1)}]")
    N = q ** m
    t = np.arange(N, dtype=np.int64)
    coords = (t[None, :] // (q ** np.arange(m, dtype=np.int64))[:, None]) % q
    rows = []
    for e in rm_monomials(q, r, m):
        val = np.ones(N, dtype=np.int64)
        for i, ei in enumerate(e):
            if ei:
                val = F.mul(val, F.pow(coords[i], ei))
        rows.append(val)
    G = Matrix(F, np.array(rows, dtype=np.int64))
    u, s = divmod(r, q - 1)
    d = (q - s) * q ** (m - u - 1) if u < m else 1
    return LinearCode(G, nullspace(G), f"RM_{q}({r},{m})", d)


def random_code(F: FieldSpec, n: int, k: int, seed: int) -> LinearCode:
    """Systematic code [I_k | A] with A drawn uniformly from a seeded stream."""
    if not 0 < k < n:
        raise ValueError(f"need 0 < k < n, got k={k}, n={n}")
    A = Sampler(seed).many_below(F.order, k * (n - k)).reshape(k, n - k)
    G = np.concatenate([np.eye(k, dtype=np.int64), A], axis=1)
    H = np.concatenate([F.neg(A.T), np.eye(n - k, dtype=np.int64)], axis=1)
    return LinearCode(Matrix(F, G), Matrix(F, H), f"Random({n},{k};seed={seed})")


def subfield_subcode(C: LinearCode, base: FieldSpec) -> LinearCode:
    """C intersected with base^n.

    Each parity constraint over F is split into its [F:base] coordinate
    constraints over ``base`` (valid because base scalars act on each
    coordinate separately), and the code is their common nullspace.
    """
    F = C.field
    if not F.extends(base):
        raise ValueError(f"{base!r} is not a subfield of {F!r}")
    if F == base:
        return C
    dig = F.digits(C.parity_check.data, base)  # (n-k, n, u)
    rows = np.moveaxis(dig, 2, 1).reshape(-1, C.n)
    H = Matrix(base, rows)
    if H.rows == 0:
        H = Matrix.zeros(base, 0, C.n)
    return LinearCode.from_parity_check(H, f"{C.label}|{base.name}")


def trace_code(C: LinearCode, base: FieldSpec) -> LinearCode:
    """Tr(C) over ``base``: spanned by Tr(b * g) over generator rows g and an
    F_base-basis b of the code's field."""
    F = C.field
    if not F.extends(base):
        raise ValueError(f"{base!r} is not a subfield of {F!r}")
    u = F.degree_over(base)
    basis = base.order ** np.arange(u, dtype=np.int64)
    G = C.generator.data
    spans = F.trace(F.mul(basis[:, None, None], G[None, :, :]), base)
    rows = Matrix(base, spans.reshape(-1, C.n))
    if rows.rows == 0:
        rows = Matrix.zeros(base, 0, C.n)
    return LinearCode.from_generator(rows, f"Tr({C.label})")


# ---------------------------------------------------------------------------
# enumeration


def iter_codewords(C: LinearCode, budget: int = ENUMERATION_BUDGET,
                   chunk_elems: int = 1 << 21):
    """Yield (first message index, codeword block) over all q^k messages.

    Message index j has little-endian base-q digits as its coordinates.
    """
    q, k, n = C.field.order, C.k, C.n
    total = q ** k
    if total > budget:
        raise ValueError(f"enumeration budget exceeded: {q}^{k} > {budget}")
    step = max(1, chunk_elems // max(n, 1))
    pw = q ** np.arange(k, dtype=np.int64)
    for start in range(0, total, step):
        idx = np.arange(start, min(total, start + step), dtype=np.int64)
        msgs = (idx[:, None] // pw[None, :]) % q
        yield start, matmul_arrays(C.field, msgs, C.generator.data)


def all_codewords(C: LinearCode, budget: int = 1 << 20) -> np.ndarray:
    return np.concatenate([blk for _, blk in iter_codewords(C, budget)], axis=0)


def min_distance_exhaustive(C: LinearCode, budget: int = ENUMERATION_BUDGET) -> int:
    """Exact minimum nonzero weight by enumerating every codeword."""
    if C.k == 0:
        raise ValueError("the zero code has no minimum distance")
    best = C.n
    for _, blk in iter_codewords(C, budget):
        w = np.count_nonzero(blk, axis=1)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
    return best


def syndrome_direct(C: LinearCode, x: Vector, counter: OpCounter | None = None) -> Vector:
    """H x^T one row at a time, charging (n-k)n mul and (n-k)(n-1) add."""
    if len(x) != C.n:
        raise ValueError(f"length {len(x)} vector, code length {C.n}")
    F = C.field
    H = C.parity_check.data
    out = [counted_dot(F, x.data, H[i], counter) for i in range(H.shape[0])]
    return Vector(F, np.array(out, dtype=np.int64))


# ---------------------------------------------------------------------------
# file format


def code_to_text(C: LinearCode) -> str:
    d = "-" if C.distance is None else str(C.distance)
    lines = [f"CODE {C.label} {C.field.name} {C.n} {C.k}",
             f"FIELD {field_to_text(C.field)}",
             f"DISTANCE {d}"]
    lines += matrix_to_lines(C.generator)
    lines += matrix_to_lines(C.parity_check)
    return "\n".join(lines) + "\n"


def code_from_text(text: str) -> LinearCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3:
        raise ValueError("code file truncated")
    head = lines[0].split()
    if len(head) != 5 or head[0] != "CODE":
        raise ValueError(f"bad code header {lines[0]!r}")
    label, fname, n, k = head[1], head[2], int(head[3]), int(head[4])
    if not lines[1].startswith("FIELD "):
        raise ValueError("missing FIELD line")
    F = field_from_text(lines[1][6:])
    if F.name != fname:
        raise ValueError(f"header says {fname}, FIELD line gives {F.name}")
    dtok = lines[2].split()
    if len(dtok) != 2 or dtok[0] != "DISTANCE":
        raise ValueError("missing DISTANCE line")
    d = None if dtok[1] == "-" else int(dtok[1])
    it = iter(lines[3:])
    G = matrix_from_lines(F, it)
    H = matrix_from_lines(F, it)
    if next(it, None) is not None:
        raise ValueError("trailing data after parity-check matrix")
    if G.shape != (k, n) or H.shape != (n - k, n):
        raise ValueError("matrix shapes disagree with the header")
    C = LinearCode(G, H, label, d)
    if d is not None and k > 0 and F.order ** k <= LOAD_CHECK_BUDGET:
        actual = min_distance_exhaustive(C)
        if actual != d:
            raise ValueError(f"stated distance {d}, enumeration gives {actual}")
    return C


def save_code(C: LinearCode, path) -> None:
    Path(path).write_text(code_to_text(C))


def load_code(path) -> LinearCode:
    return code_from_text(Path(path).read_text())
