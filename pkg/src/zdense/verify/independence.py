"""Multiplicative independence of complex numbers up to an exponent bound."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import mpmath

from ..relations import find_relation


@dataclass(frozen=True)
class IndependenceResult:
    independent: bool
    exponent_bound: int
    relation: Optional[tuple] = None  # n with prod v_i^n_i a root of unity
    torsion_order: int = 1  # order of that root of unity
    value: Optional[complex] = None

    @property
    def exact_relation(self) -> Optional[tuple]:
        """torsion_order * n, which gives exactly 1."""
        if self.relation is None:
            return None
        return tuple(self.torsion_order * x for x in self.relation)

    def to_json(self) -> dict:
        d = {"independent": self.independent, "exponent_bound": self.exponent_bound}
        if self.relation is not None:
            d.update(
                relation=list(self.relation),
                torsion_order=self.torsion_order,
                exact_relation=list(self.exact_relation),
                value=[self.value.real, self.value.imag],
            )
        return d


def _mantissa_bits(v) -> int:
    if isinstance(v, mpmath.mpf):
        return v._mpf_[3]
    if isinstance(v, mpmath.mpc):
        return max(_mantissa_bits(v.real), _mantissa_bits(v.imag))
    return 53


def _is_high_precision(v) -> bool:
    """mpmath values carrying more than ~30 significant digits."""
    return _mantissa_bits(v) > 100


def multiplicative_independence(values, exponent_bound: int = 20) -> IndependenceResult:
    """Search |n_i| <= bound (max-norm first, then lexicographic) for prod v_i^n_i = root of unity.

    Tolerance is 1e-20 when some input carries more than ~30 digits (mpmath values
    computed at high precision) and 1e-9 otherwise.
    """
    values = list(values)
    if any(complex(v) == 0 for v in values):
        raise ValueError("values must be nonzero")
    dps = 50 if values and any(_is_high_precision(v) for v in values) else 15
    rel = find_relation([values], exponent_bound, allow_torsion=True, dps=dps)
    if rel is None:
        return IndependenceResult(True, exponent_bound)
    n, order = rel
    with mpmath.workdps(dps):
        val = complex(mpmath.fprod(mpmath.mpmathify(v) ** e for v, e in zip(values, n)))
    return IndependenceResult(False, exponent_bound, tuple(n), order, val)
