"""Strong and weak duality decisions for a pair of total masses.

Strong duality asserts D(mass_w) = mass_v, where D replaces q^r by q^(-r).
Weak duality is the specialization surviving in more cases:

    mass_v * Q^d - mass_w = D(mass_w) * Q^d - D(mass_v).

Strong implies weak: substituting D(mass_w) = mass_v (hence D(mass_v) =
mass_w) makes both sides equal.  A report carries both verdicts and the
exact residuals, so a failure shows what the obstruction looks like.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import InfiniteMass
from .massengine import MassPair
from .qsym import ClassFunction


@dataclass(frozen=True)
class DualityReport:
    """Verdicts and residuals of the two duality tests at dimension dim."""

    strong: bool
    weak: bool
    dim: int
    strong_residual: ClassFunction
    weak_residual: ClassFunction

    def to_json(self) -> dict:
        return {
            "strong": self.strong,
            "weak": self.weak,
            "dim": self.dim,
            "strong_residual": self.strong_residual.to_json(),
            "weak_residual": self.weak_residual.to_json(),
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "DualityReport":
        return cls(
            strong=bool(obj["strong"]),
            weak=bool(obj["weak"]),
            dim=int(obj["dim"]),
            strong_residual=ClassFunction.from_json(obj["strong_residual"]),
            weak_residual=ClassFunction.from_json(obj["weak_residual"]),
        )


def duality_report(masses: MassPair, dim: int) -> DualityReport:
    """Decide both dualities for the mass pair at dimension dim.

    strong_residual = D(mass_w) - mass_v, weak_residual = the difference of
    the two sides of the weak identity; each verdict is residual == 0.
    Raises InfiniteMass when either mass is Infinite.
    """
    if not masses.is_finite:
        raise InfiniteMass("duality verdicts need finite masses")
    dim = int(dim)
    mv, mw = masses.mass_v, masses.mass_w
    dv, dw = mv.dual(), mw.dual()
    qd = ClassFunction.monomial(dim)
    strong_residual = dw - mv
    weak_residual = (mv * qd - mw) - (dw * qd - dv)
    strong = strong_residual.is_zero
    weak = weak_residual.is_zero
    assert not strong or weak, "strong duality must imply weak duality"
    return DualityReport(
        strong=strong,
        weak=weak,
        dim=dim,
        strong_residual=strong_residual,
        weak_residual=weak_residual,
    )
