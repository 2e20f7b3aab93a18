"""Randomised codeword check: sample R rows of a test set, reject on the
first row not orthogonal to the input.

A codeword is always accepted.  A non-codeword survives one round with
probability equal to the orthogonal share of the test set (at most the
designed probability p), hence R independent rounds with probability at
most p**R.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .fmatrix import Matrix, Vector, mat_vec
from .opcount import OpCounter, counted_dot
from .rng import Sampler, derive_seed
from .testset import TestSet

__all__ = [
    "OpCounter",
    "VerifierConfig",
    "VerifierReport",
    "determine_codeword",
    "naive_row_verifier",
    "row_testset",
    "rounds_for_target",
    "error_bound",
    "mc_error_rate",
    "mc_counts",
    "as_fraction",
]


@dataclass(frozen=True)
class VerifierConfig:
    """Round count and seed.  ``schedule`` replaces random sampling with a
    fixed sequence of row indices (used to enumerate rows in tests)."""

    rounds: int
    seed: int = 0
    count_ops: bool = True
    schedule: Sequence[int] | None = None

    def __post_init__(self):
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")
        if self.schedule is not None and len(self.schedule) < self.rounds:
            raise ValueError("schedule shorter than the round count")


@dataclass
class VerifierReport:
    verdict: str  # "accept" or "reject"
    rounds_run: int
    reject_round: int | None = None
    witness_row: int | None = None
    ops: OpCounter = field(default_factory=OpCounter)

    @property
    def accepted(self) -> bool:
        return self.verdict == "accept"

    def summary(self) -> str:
        """``verdict rounds_run reject_round witness_row mul add``."""
        def tok(v):
            return "-" if v is None else str(v)
        return (f"{self.verdict} {self.rounds_run} {tok(self.reject_round)} "
                f"{tok(self.witness_row)} {self.ops.base_mul} {self.ops.base_add}")

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "rounds_run": self.rounds_run,
                "reject_round": self.reject_round, "witness_row": self.witness_row,
                "mul": self.ops.base_mul, "add": self.ops.base_add}


def _check_input(x: Vector, S: TestSet):
    if len(x) != S.n:
        raise ValueError(f"length {len(x)} vector, test set length {S.n}")
    if not S.base.extends(x.field):
        raise ValueError(f"vector over {x.field!r}, expected {S.base!r}")


def _row_product(S: TestSet, x: np.ndarray, i: int, counter) -> bool:
    """True if row i is not orthogonal to x; u base-field inner products."""
    comps = S.components
    nonzero = False
    for t in range(comps.shape[0]):
        if counted_dot(S.base, x, comps[t, i], counter) != 0:
            nonzero = True
    return nonzero


def determine_codeword(x: Vector, S: TestSet, cfg: VerifierConfig) -> VerifierReport:
    """Run up to ``cfg.rounds`` rounds; stop at the first non-orthogonal row.

    Rows are drawn with replacement.  Each round costs u*n base-field
    multiplications and u*(n-1) additions.
    """
    _check_input(x, S)
    counter = OpCounter() if cfg.count_ops else None
    sampler = Sampler(cfg.seed) if cfg.schedule is None else None
    xs = x.data
    for rnd in range(1, cfg.rounds + 1):
        i = sampler.below(S.nbar) if sampler else int(cfg.schedule[rnd - 1])
        if _row_product(S, xs, i, counter):
            return VerifierReport("reject", rnd, rnd, i, counter or OpCounter())
    return VerifierReport("accept", cfg.rounds, ops=counter or OpCounter())


def row_testset(H: Matrix) -> TestSet:
    """The rows of H themselves (outer code = identity, dbar = 1)."""
    r = H.rows
    return TestSet(H.field, H, 1 - Fraction(1, r), f"Identity[{r},{r},1]")


def naive_row_verifier(x: Vector, H: Matrix, cfg: VerifierConfig) -> VerifierReport:
    """Same loop, sampling rows of the parity-check matrix directly."""
    return determine_codeword(x, row_testset(H), cfg)


# ---------------------------------------------------------------------------
# error bounds


def as_fraction(v) -> Fraction:
    """Exact rational; floats are read through their decimal repr."""
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


def error_bound(p, R: int) -> Fraction:
    """p**R exactly."""
    p = as_fraction(p)
    if not 0 < p < 1:
        raise ValueError(f"p = {p} not in (0, 1)")
    if R < 1:
        raise ValueError("R must be >= 1")
    return p ** R


def rounds_for_target(p, target_err) -> int:
    """Smallest R with p**R <= target_err."""
    p, target = as_fraction(p), as_fraction(target_err)
    if not 0 < p < 1:
        raise ValueError(f"p = {p} not in (0, 1)")
    if not 0 < target < 1:
        raise ValueError(f"target = {target} not in (0, 1)")
    R, bound = 1, p
    while bound > target:
        R += 1
        bound *= p
    return R


# ---------------------------------------------------------------------------
# Monte Carlo


def mc_counts(S: TestSet, inputs: Sequence[Vector], trials: int, R: int,
              seed: int) -> np.ndarray:
    """Accepted-trial counts per input.

    Trial j uses seed ``derive_seed(seed, j)`` and gives exactly the verdict
    of ``determine_codeword`` with that seed; the row products are computed
    once per input instead of once per trial.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    seeds = [derive_seed(seed, j) for j in range(trials)]
    out = np.zeros(len(inputs), dtype=np.int64)
    for a, x in enumerate(inputs):
        _check_input(x, S)
        hit = mat_vec(S.rows, x).data != 0
        accepted = 0
        for s in seeds:
            idx = Sampler(s).many_below(S.nbar, R)
            if not hit[idx].any():
                accepted += 1
        out[a] = accepted
    return out


def mc_error_rate(S: TestSet, inputs: Sequence[Vector], trials: int, R: int,
                  seed: int) -> np.ndarray:
    """Empirical accept rate per input over ``trials`` seeded runs."""
    return mc_counts(S, inputs, trials, R, seed) / trials
