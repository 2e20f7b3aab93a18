"""List decoding of Reed-Muller codes through Reed-Solomon codes.

RM_q(r, m) of length N = q^m sits inside the subfield subcode of
RS_{q^m}(N, k) for k = N - q^(m-u-1)(q-s) + 1, where r = u(q-1) + s.
The decoder list-decodes the RS code, keeps the candidates with all
coordinates in F_q, and accepts those that pass the randomised test-set
check for the RM code.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Protocol

import numpy as np

from .codes import ENUMERATION_BUDGET, LinearCode, iter_codewords, rm_code, rs_code
from .fmatrix import Vector, matmul_arrays
from .gf import FieldSpec, field_extend, field_from_order
from .rng import derive_seed
from .testset import TestSet, build_mds_testset
from .verifier import VerifierConfig, VerifierReport, determine_codeword

__all__ = [
    "RmRsParams",
    "ListDecodeQuery",
    "RSListDecoder",
    "RmListResult",
    "rm_rs_params",
    "rm_rs_setup",
    "naive_rs_list_decode",
    "default_rm_testset",
    "rm_list_decode",
]


@dataclass(frozen=True)
class RmRsParams:
    q: int
    m: int
    r: int
    u: int
    s: int
    k: int
    D: int
    N: int


def rm_rs_params(q: int, r: int, m: int) -> RmRsParams:
    """Parameters of the RS code containing RM_q(r, m) as a subfield subcode."""
    if not 0 <= r <= m * (q - 1):
        raise ValueError(f"r={r} outside [0, {m * (q - 1)}]")
    u, s = divmod(r, q - 1)
    if u > m - 1:
        raise ValueError(f"r={r} gives u={u} > m-1; RM_{q}({r},{m}) is the full space")
    D = q ** (m - u - 1) * (q - s)
    N = q ** m
    return RmRsParams(q, m, r, u, s, N - D + 1, D, N)


def rm_rs_setup(q: int, r: int, m: int):
    """(params, RM code over F_q, RS code over F_{q^m}) with matching coordinates.

    F_{q^m} is built over F_q, and the RS code evaluates at all its elements
    in integer order, so RS coordinate t and RM point t agree.
    """
    params = rm_rs_params(q, r, m)
    Fq = field_from_order(q)
    Fqm = field_extend(Fq, m)
    rm = rm_code(Fq, r, m)
    rs = rs_code(Fqm, params.N, params.k, points=np.arange(params.N))
    return params, rm, rs


@dataclass(frozen=True)
class ListDecodeQuery:
    received: Vector
    radius: Fraction
    list_cap: int | None = None

    def __post_init__(self):
        rho = Fraction(self.radius)
        if not 0 <= rho < 1:
            raise ValueError(f"radius {rho} not in [0, 1)")
        object.__setattr__(self, "radius", rho)

    @property
    def max_errors(self) -> int:
        return math.floor(self.radius * len(self.received))


class RSListDecoder(Protocol):
    """Returns every codeword within ``query.max_errors`` of the received word.

    ``naive_rs_list_decode`` is the provided implementation; a fast decoder
    can be passed to :func:`rm_list_decode` through this interface.
    """

    def __call__(self, code: LinearCode, query: ListDecodeQuery) -> list[Vector]:
        ...


def _errors_search_size(Q: int, n: int, t: int) -> int:
    return sum(math.comb(n, w) * (Q - 1) ** w for w in range(t + 1))


def naive_rs_list_decode(code: LinearCode, query: ListDecodeQuery,
                         budget: int = ENUMERATION_BUDGET,
                         method: str = "auto") -> list[Vector]:
    """Exact list by brute force, in message-index order.

    Either every codeword is compared with the received word
    (``method="codewords"``), or every error pattern of weight <= t is
    subtracted and the result checked against the parity checks
    (``method="errors"``).  ``"auto"`` picks the smaller search.
    """
    F = code.field
    y = query.received
    if len(y) != code.n:
        raise ValueError(f"received length {len(y)}, code length {code.n}")
    if not F.extends(y.field):
        raise ValueError(f"received word over {y.field!r}, code over {F!r}")
    t = query.max_errors
    Q, n = F.order, code.n
    by_codewords = Q ** code.k
    by_errors = _errors_search_size(Q, n, t)
    if method == "auto":
        method = "codewords" if by_codewords <= by_errors else "errors"
    size = {"codewords": by_codewords, "errors": by_errors}.get(method)
    if size is None:
        raise ValueError(f"unknown search method {method!r}")
    if size > budget:
        raise ValueError(f"enumeration budget exceeded: {size} > {budget}")
    found: list[tuple[int, Vector]] = []
    if method == "codewords":
        for start, blk in iter_codewords(code, budget):
            dist = np.count_nonzero(blk != y.data[None, :], axis=1)
            for j in np.flatnonzero(dist <= t):
                found.append((start + int(j), Vector(F, blk[j])))
    else:
        H = code.parity_check.data
        for w in range(t + 1):
            for pos in itertools.combinations(range(n), w):
                if w == 0:
                    cand = y.data[None, :]
                else:
                    vals = np.array(list(itertools.product(range(1, Q), repeat=w)),
                                    dtype=np.int64)
                    cand = np.repeat(y.data[None, :], len(vals), axis=0)
                    cols = list(pos)
                    cand[:, cols] = F.sub(cand[:, cols], vals)
                syn = matmul_arrays(F, cand, H.T)
                for j in np.flatnonzero(~syn.any(axis=1)):
                    c = Vector(F, cand[j])
                    found.append((code.message_index(c), c))
    found.sort(key=lambda pair: pair[0])
    return [c for _, c in found]


def default_rm_testset(rm: LinearCode, p_target=Fraction(1, 2)) -> TestSet:
    """MDS test set for the RM parity checks, with the smallest u that
    admits ``p_target`` (the bound is raised to the admissible floor if needed)."""
    F = rm.field
    r = rm.n - rm.k
    p = Fraction(p_target)
    u = 1
    while Fraction(r - 1, F.order ** u - 1) > p:
        u += 1
    return build_mds_testset(rm.parity_check, p, u)


@dataclass
class RmListResult:
    words: list[Vector]
    candidates: list[Vector]
    rs_list_size: int
    truncated: bool = False
    reports: list[VerifierReport] = field(default_factory=list)


def rm_list_decode(q: int, r: int, m: int, received: Vector, radius,
                   cfg: VerifierConfig, *, testset: TestSet | None = None,
                   list_cap: int | None = None,
                   decoder: RSListDecoder | Callable = naive_rs_list_decode,
                   setup=None) -> RmListResult:
    """RS list decode, keep base-field candidates, verify each one.

    Duplicates among the base-field candidates are dropped before
    verification.  If the RS list exceeds ``list_cap`` it is cut to the
    first ``list_cap`` entries and ``truncated`` is set.  Candidate j is
    verified with seed ``derive_seed(cfg.seed, j)``.
    """
    params, rm, rs = setup if setup is not None else rm_rs_setup(q, r, m)
    Fq = rm.field
    if len(received) != params.N or received.field != Fq:
        raise ValueError(f"received word must be in {Fq.name}^{params.N}")
    S = testset if testset is not None else default_rm_testset(rm)
    if S.n != params.N or S.base != Fq:
        raise ValueError("test set does not match the RM code")
    query = ListDecodeQuery(received.over(rs.field), Fraction(radius), list_cap)
    L1 = decoder(rs, query)
    truncated = list_cap is not None and len(L1) > list_cap
    if truncated:
        L1 = L1[:list_cap]
    seen = set()
    cands: list[Vector] = []
    for c in L1:
        if not Fq.contains(c.data):
            continue
        cb = c.over(Fq)
        if cb not in seen:
            seen.add(cb)
            cands.append(cb)
    words, reports = [], []
    for j, c in enumerate(cands):
        sub = VerifierConfig(cfg.rounds, derive_seed(cfg.seed, j), cfg.count_ops)
        rep = determine_codeword(c, S, sub)
        reports.append(rep)
        if rep.accepted:
            words.append(c)
    return RmListResult(words, cands, len(L1), truncated, reports)
