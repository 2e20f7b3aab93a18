"""Base-field operation counting for the verification cost model."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import FieldSpec


@dataclass
class OpCounter:
    """Running tally of base-field multiplications and additions."""

    base_mul: int = 0
    base_add: int = 0

    def charge(self, mul: int, add: int) -> None:
        if mul < 0 or add < 0:
            raise ValueError("operation counts only grow")
        self.base_mul += mul
        self.base_add += add

    def __iadd__(self, other: OpCounter):
        self.charge(other.base_mul, other.base_add)
        return self


def counted_dot(F: FieldSpec, x: np.ndarray, y: np.ndarray,
                counter: OpCounter | None) -> int:
    """Inner product over ``F`` of two length-n vectors.

    Charges n multiplications (one per coordinate) and n-1 additions (the
    reduction), independent of the values.
    """
    n = x.shape[-1]
    prods = F.mul(x, y)
    if counter is not None:
        counter.charge(n, max(n - 1, 0))
    return int(F.sum(prods, axis=-1))
