"""Test sets S = rows of (G_outer^T H) and their designed probability.

For a code C with parity check H (over F_q) and an outer [nbar, n-k, dbar]
code over F_{q^u} with generator G_outer, a vector x is orthogonal to every
row of S exactly when H x^T = 0, and otherwise fails orthogonality on
wt(G_outer^T H x^T) >= dbar of the nbar rows.  Sampling one row therefore
misses a non-codeword with probability at most 1 - dbar/nbar.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

from .codes import (ENUMERATION_BUDGET, LinearCode, min_distance_exhaustive,
                    rs_code)
from .fmatrix import Matrix, Vector, mat_mul, mat_vec, matmul_arrays, rref
from .fmatrix import matrix_from_lines, matrix_to_lines
from .gf import FieldSpec, field_extend, field_from_text, field_to_text

__all__ = [
    "TestSet",
    "build_code_testset",
    "build_mds_testset",
    "mds_outer_length",
    "non_orthogonal_fraction",
    "min_rejection_weight",
    "save_testset",
    "load_testset",
]

# load-time distance recomputation only below this many syndromes
LOAD_CHECK_BUDGET = 1 << 16


@dataclass(frozen=True, eq=False)
class TestSet:
    """Materialised test-set rows over F_{q^u} with an exact designed probability."""

    __test__ = False  # not a pytest class

    base: FieldSpec
    rows: Matrix
    designed_p: Fraction
    outer_label: str
    distance_source: str = "analytic"

    def __post_init__(self):
        if not self.rows.field.extends(self.base):
            raise ValueError(f"rows are not over an extension of {self.base!r}")
        if not 0 <= self.designed_p < 1:
            raise ValueError(f"designed probability {self.designed_p} not in [0, 1)")
        if " " in self.outer_label:
            raise ValueError("outer label cannot contain spaces")

    @property
    def ext(self) -> FieldSpec:
        return self.rows.field

    @property
    def u(self) -> int:
        return self.ext.degree_over(self.base)

    @property
    def n(self) -> int:
        return self.rows.cols

    @property
    def nbar(self) -> int:
        return self.rows.rows

    @cached_property
    def components(self) -> np.ndarray:
        """Rows split into base-field coordinates, shape (u, nbar, n)."""
        return np.ascontiguousarray(
            np.moveaxis(self.ext.digits(self.rows.data, self.base), -1, 0))

    @property
    def storage(self) -> int:
        """Stored base-field elements: nbar * u * n."""
        return self.nbar * self.u * self.n

    def __eq__(self, other):
        if not isinstance(other, TestSet):
            return NotImplemented
        return (self.base == other.base and self.rows == other.rows
                and self.designed_p == other.designed_p
                and self.outer_label == other.outer_label)

    __hash__ = None

    def __repr__(self):
        return (f"TestSet(n={self.n}, nbar={self.nbar}, u={self.u}, "
                f"p={self.designed_p}, outer={self.outer_label})")


def _outer_tag(outer: LinearCode, d: int) -> str:
    return f"{outer.label}[{outer.n},{outer.k},{d}]"


def build_code_testset(H: Matrix, outer: LinearCode, *,
                       assumed_distance: int | None = None) -> TestSet:
    """S = rows of outer.G^T H with designed probability 1 - dbar/nbar.

    The outer distance comes from ``outer.distance`` when known, else from
    exhaustive enumeration.  ``assumed_distance`` overrides both and is
    recorded as an assumption, not a certificate.
    """
    if outer.k != H.rows:
        raise ValueError(f"outer code dimension {outer.k} != rows of H {H.rows}")
    if not outer.field.extends(H.field):
        raise ValueError(f"{outer.field!r} does not extend {H.field!r}")
    if assumed_distance is not None:
        d, source = int(assumed_distance), "assumed"
    elif outer.distance is not None:
        d, source = outer.distance, "analytic"
    else:
        d, source = min_distance_exhaustive(outer, ENUMERATION_BUDGET), "certified"
    if not 1 <= d <= outer.n:
        raise ValueError(f"outer distance {d} out of range")
    rows = mat_mul(outer.generator.T, H.over(outer.field))
    p = 1 - Fraction(d, outer.n)
    return TestSet(H.field, rows, p, _outer_tag(outer, d), source)


def mds_outer_length(redundancy: int, p_target: Fraction) -> int:
    """m = ceil((n-k-1)/p)."""
    p = Fraction(p_target)
    return math.ceil(Fraction(redundancy - 1) / p)


def build_mds_testset(H: Matrix, p_target, u: int, *,
                      ext: FieldSpec | None = None) -> TestSet:
    """Test set from an RS[m, n-k, m-(n-k)+1] outer code over F_{q^u}.

    Designed probability is (n-k-1)/m with m = ceil((n-k-1)/p_target),
    which never exceeds ``p_target``.
    """
    p = Fraction(p_target)
    r = H.rows
    F = H.field
    if r < 2:
        raise ValueError("need n-k >= 2 for an MDS test set")
    if not 0 < p < 1:
        raise ValueError(f"p_target {p} not in (0, 1)")
    E = ext if ext is not None else field_extend(F, u)
    if E.degree_over(F) != u:
        raise ValueError(f"extension field has degree {E.degree_over(F)}, not {u}")
    lower = Fraction(r - 1, E.order - 1)
    if p < lower:
        raise ValueError(
            f"p below (n-k-1)/(q^u-1): {p} < {lower} (raise u or p)")
    m = mds_outer_length(r, p)
    outer = rs_code(E, m, r)
    S = build_code_testset(H, outer)
    assert S.designed_p == Fraction(r - 1, m) <= p
    return S


def non_orthogonal_fraction(S: TestSet, x: Vector) -> Fraction:
    """Exact share of rows y with (x, y) != 0, i.e. wt(S x^T) / nbar."""
    if len(x) != S.n:
        raise ValueError(f"length {len(x)} vector, test set length {S.n}")
    if not S.base.extends(x.field):
        raise ValueError(f"vector over {x.field!r}, test set base {S.base!r}")
    return Fraction(mat_vec(S.rows, x).weight, S.nbar)


def min_rejection_weight(S: TestSet, budget: int = LOAD_CHECK_BUDGET) -> int | None:
    """Smallest nonzero wt(S x^T) over x in F_q^n, by enumeration.

    Returns None if the syndrome space is too large to enumerate, or if no
    x is rejected at all.
    """
    q = S.base.order
    flat = S.components.transpose(1, 0, 2).reshape(S.u * S.nbar, S.n)
    _, piv = rref(Matrix(S.base, flat))
    dim = len(piv)
    if dim == 0 or q ** dim > budget:
        return None
    cols = S.rows.data[:, piv]  # images of the independent unit vectors
    idx = np.arange(1, q ** dim, dtype=np.int64)
    msgs = (idx[:, None] // (q ** np.arange(dim, dtype=np.int64))[None, :]) % q
    imgs = matmul_arrays(S.ext, msgs, cols.T)
    return int(np.count_nonzero(imgs, axis=1).min())


# ---------------------------------------------------------------------------
# file format
#   TESTSET GF(p^d) u n nbar p_num p_den outer=<label>
#   FIELD <text form of F_{q^u}>
#   <rows in matrix text form>

_HEADER = re.compile(
    r"^TESTSET (\S+) (\d+) (\d+) (\d+) (\d+) (\d+) outer=(\S+)$")
_OUTER_PARAMS = re.compile(r"\[(\d+),(\d+),(\d+)\]$")


def testset_to_text(S: TestSet) -> str:
    p = S.designed_p
    lines = [f"TESTSET {S.base.name} {S.u} {S.n} {S.nbar} "
             f"{p.numerator} {p.denominator} outer={S.outer_label}",
             f"FIELD {field_to_text(S.ext)}"]
    lines += matrix_to_lines(S.rows)
    return "\n".join(lines) + "\n"


def testset_from_text(text: str, expected_base: FieldSpec | None = None) -> TestSet:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3:
        raise ValueError("test-set file truncated")
    m = _HEADER.match(lines[0].strip())
    if not m:
        raise ValueError(f"bad test-set header {lines[0]!r}")
    bname = m.group(1)
    u, n, nbar, pn, pd = (int(m.group(i)) for i in range(2, 7))
    label = m.group(7)
    if not lines[1].startswith("FIELD "):
        raise ValueError("missing FIELD line")
    E = field_from_text(lines[1][6:])
    base = next((f for f in E.chain() if f.name == bname), None)
    if base is None:
        raise ValueError(f"{bname} is not in the tower of {E!r}")
    if E.degree_over(base) != u:
        raise ValueError(f"header u={u} but FIELD line has degree {E.degree_over(base)}")
    if expected_base is not None and base != expected_base:
        raise ValueError(f"test set is over {base!r}, expected {expected_base!r}")
    it = iter(lines[2:])
    rows = matrix_from_lines(E, it)
    if next(it, None) is not None:
        raise ValueError("trailing data after test-set rows")
    if rows.shape != (nbar, n):
        raise ValueError("row matrix shape disagrees with the header")
    p = Fraction(pn, pd)
    om = _OUTER_PARAMS.search(label)
    if om:
        onb, _, od = (int(g) for g in om.groups())
        if onb != nbar:
            raise ValueError(f"outer length {onb} != nbar {nbar}")
        if p != 1 - Fraction(od, nbar):
            raise ValueError(
                f"designed probability {p} contradicts outer distance "
                f"{od}/{nbar}")
    S = TestSet(base, rows, p, label, "file")
    w = min_rejection_weight(S)
    if w is not None and p < 1 - Fraction(w, nbar):
        raise ValueError(
            f"designed probability {p} contradicts the recomputed minimum "
            f"rejection weight {w}/{nbar}")
    return S


def save_testset(S: TestSet, path) -> None:
    Path(path).write_text(testset_to_text(S))


def load_testset(path, expected_base: FieldSpec | None = None) -> TestSet:
    return testset_from_text(Path(path).read_text(), expected_base)
