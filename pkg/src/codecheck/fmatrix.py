"""Dense matrices and vectors over finite fields.

Entries are integer encodings of field elements (see :mod:`codecheck.gf`).
A matrix over a subfield can be multiplied with one over an extension; the
integers are reused as-is, since embedding is the identity on encodings.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .gf import FieldSpec

__all__ = [
    "Matrix",
    "Vector",
    "common_field",
    "mat_mul",
    "mat_vec",
    "matmul_arrays",
    "rref",
    "rref_rank_nullspace",
    "rank",
    "nullspace",
    "row_basis",
    "row_space_equal",
    "solve",
    "weight",
    "matrix_to_lines",
    "matrix_from_lines",
]


def _freeze(field: FieldSpec, data, ndim: int) -> np.ndarray:
    arr = np.array(data, dtype=np.int64)
    if ndim == 2 and arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 0)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= field.order):
        raise ValueError(f"entries outside {field.name}")
    arr.setflags(write=False)
    return arr


class Matrix:
    """Immutable dense matrix over ``field``."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        self.field = field
        self.data = _freeze(field, data, 2)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> Matrix:
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> Matrix:
        return Matrix(self.field, self.data.T)

    def row(self, i: int) -> Vector:
        return Vector(self.field, self.data[i])

    def __iter__(self):
        for i in range(self.rows):
            yield self.row(i)

    def __matmul__(self, other):
        if isinstance(other, Vector):
            return mat_vec(self, other)
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.array_equal(self.data, other.data)))

    __hash__ = None

    def over(self, field: FieldSpec) -> Matrix:
        """Same entries read in an extension (or back in a subfield)."""
        if not (field.extends(self.field) or self.field.extends(field)):
            raise ValueError(f"{field!r} and {self.field!r} are unrelated")
        return Matrix(field, self.data)

    def is_zero(self) -> bool:
        return not self.data.any()

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"


class Vector:
    """Immutable vector over ``field``."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        self.field = field
        self.data = _freeze(field, data, 1)

    def __len__(self):
        return self.data.shape[0]

    def __getitem__(self, i):
        return int(self.data[i])

    def __iter__(self):
        return iter(self.data.tolist())

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return (self.field == other.field
                and bool(np.array_equal(self.data, other.data)))

    def __hash__(self):
        return hash((self.field, self.data.tobytes()))

    def __add__(self, other: Vector) -> Vector:
        F = common_field(self.field, other.field)
        return Vector(F, F.add(self.data, other.data))

    def __sub__(self, other: Vector) -> Vector:
        F = common_field(self.field, other.field)
        return Vector(F, F.sub(self.data, other.data))

    def scale(self, c: int) -> Vector:
        return Vector(self.field, self.field.mul(self.data, c))

    def over(self, field: FieldSpec) -> Vector:
        if not (field.extends(self.field) or self.field.extends(field)):
            raise ValueError(f"{field!r} and {self.field!r} are unrelated")
        return Vector(field, self.data)

    def is_zero(self) -> bool:
        return not self.data.any()

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.data))

    def tolist(self) -> list[int]:
        return self.data.tolist()

    def __repr__(self):
        body = " ".join(f"{v:x}" for v in self.data[:16])
        more = " ..." if len(self) > 16 else ""
        return f"Vector({self.field!r}, [{body}{more}])"


def common_field(F: FieldSpec, G: FieldSpec) -> FieldSpec:
    """The larger of two fields in one tower."""
    if F.extends(G):
        return F
    if G.extends(F):
        return G
    raise ValueError(f"incompatible fields {F!r} and {G!r}")


def matmul_arrays(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product of integer-encoded arrays over ``F``; loops the inner index."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    r, k = A.shape
    k2, c = B.shape
    if k != k2:
        raise ValueError(f"dimension mismatch: {A.shape} x {B.shape}")
    out = np.zeros((r, c), dtype=np.int64)
    if k == 0 or r == 0 or c == 0:
        return out
    tables = F._tables if not F.is_prime else None
    if tables is not None and F.characteristic == 2:
        exp, log = tables
        # narrow dtypes roughly halve memory traffic in the inner loop
        dt = np.uint16 if len(exp) <= 1 << 16 else np.uint32
        e = exp.astype(dt)
        la = np.ascontiguousarray(log[A].astype(dt).T)
        lb = log[B].astype(dt)
        acc = np.zeros((r, c), dtype=dt)
        idx = np.empty_like(acc)
        term = np.empty_like(acc)
        for t in range(k):
            np.add(la[t][:, None], lb[t][None, :], out=idx)
            np.take(e, idx, out=term)
            acc ^= term
        return acc.astype(np.int64)
    if F.is_prime:
        p = F.characteristic
        # exact in int64 while k * (p-1)^2 stays small; chunk otherwise
        step = max(1, (2**62) // max(1, (p - 1) ** 2))
        for s in range(0, k, step):
            out = (out + A[:, s:s + step] @ B[s:s + step, :]) % p
        return out
    for t in range(k):
        out = F.add(out, F.mul(A[:, t, None], B[None, t, :]))
    return out


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    F = common_field(A.field, B.field)
    if A.cols != B.rows:
        raise ValueError(f"dimension mismatch: {A.shape} x {B.shape}")
    return Matrix(F, matmul_arrays(F, A.data, B.data))


def mat_vec(A: Matrix, x: Vector) -> Vector:
    """A x^T as a vector."""
    F = common_field(A.field, x.field)
    if A.cols != len(x):
        raise ValueError(f"dimension mismatch: {A.shape} x {len(x)}")
    return Vector(F, matmul_arrays(F, A.data, x.data[:, None])[:, 0])


def weight(v: Vector) -> int:
    return v.weight


# ---------------------------------------------------------------------------
# row reduction


def _rref_array(F: FieldSpec, M: np.ndarray):
    R = np.array(M, dtype=np.int64, copy=True)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        if R[r, c] != 1:
            R[r] = F.mul(R[r], F.inv(R[r, c]))
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            R[hit] = F.sub(R[hit], F.mul(col[hit, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns.

    Pivots are taken as the first nonzero entry scanning columns left to
    right and rows top-down, so the output is deterministic.
    """
    R, piv = _rref_array(A.field, A.data)
    return Matrix(A.field, R), piv


def _nullspace_from_rref(F, R, pivots, cols):
    free = [c for c in range(cols) if c not in set(pivots)]
    N = np.zeros((len(free), cols), dtype=np.int64)
    for j, f in enumerate(free):
        N[j, f] = 1
        if pivots:
            N[j, pivots] = F.neg(R[: len(pivots), f])
    return N


def rref_rank_nullspace(A: Matrix) -> tuple[Matrix, int, Matrix]:
    R, piv = _rref_array(A.field, A.data)
    N = _nullspace_from_rref(A.field, R, piv, A.cols)
    return Matrix(A.field, R), len(piv), Matrix(A.field, N.reshape(-1, A.cols))


def rank(A: Matrix) -> int:
    return len(_rref_array(A.field, A.data)[1])


def nullspace(A: Matrix) -> Matrix:
    """Basis (as rows) of {v : A v^T = 0}."""
    return rref_rank_nullspace(A)[2]


def row_basis(A: Matrix) -> Matrix:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    R, piv = _rref_array(A.field, A.data)
    return Matrix(A.field, R[: len(piv)].reshape(len(piv), A.cols))


def row_space_equal(A: Matrix, B: Matrix) -> bool:
    if A.field != B.field or A.cols != B.cols:
        return False
    return row_basis(A) == row_basis(B)


def solve(A: Matrix, b: Vector) -> Vector:
    """One solution x of A x^T = b^T; raises ValueError if inconsistent."""
    F = common_field(A.field, b.field)
    if len(b) != A.rows:
        raise ValueError("right-hand side has the wrong length")
    aug = np.concatenate([A.data, b.data[:, None]], axis=1)
    R, piv = _rref_array(F, aug)
    if piv and piv[-1] == A.cols:
        raise ValueError("system is inconsistent")
    x = np.zeros(A.cols, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, -1]
    return Vector(F, x)


# ---------------------------------------------------------------------------
# text form: "rows cols" then one line of hex entries per row


def matrix_to_lines(A: Matrix) -> list[str]:
    lines = [f"{A.rows} {A.cols}"]
    for row in A.data:
        lines.append(" ".join(f"{v:x}" for v in row))
    return lines


def matrix_from_lines(field: FieldSpec, lines: Iterable[str]) -> Matrix:
    """Parse one matrix block; consumes exactly rows+1 lines of ``lines``."""
    it = iter(lines)
    try:
        head = next(it).split()
    except StopIteration:
        raise ValueError("missing matrix header") from None
    if len(head) != 2:
        raise ValueError(f"bad matrix header {' '.join(head)!r}")
    rows, cols = (int(t) for t in head)
    data = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        try:
            toks = next(it).split()
        except StopIteration:
            raise ValueError(f"matrix truncated at row {i}") from None
        if len(toks) != cols:
            raise ValueError(f"row {i} has {len(toks)} entries, expected {cols}")
        data[i] = [int(t, 16) for t in toks]
    return Matrix(field, data)

