"""Exact q-expansions of modular forms for the genus zero groups Gamma_0(N)^+.

Series come back as :class:`Series`: a valuation, a precision and a list of
:class:`fractions.Fraction` coefficients starting at ``q^valuation``.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import _core
from ._core import MathError, admitted_levels, k1, suite_names

__version__ = _core.__version__

__all__ = [
    "MathError",
    "QuadraticSeries",
    "Series",
    "admitted_levels",
    "delta",
    "eisenstein_plus",
    "f_basis",
    "hauptmodul",
    "k1",
    "k_min",
    "suite_names",
    "verify",
]


@dataclass
class Series:
    valuation: int
    precision: int
    coefficients: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def __getitem__(self, n):
        if n >= self.precision:
            raise IndexError(f"q^{n} is beyond O(q^{self.precision})")
        i = n - self.valuation
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else Fraction(0)

    @classmethod
    def _from_doc(cls, doc):
        coeffs = [Fraction(c) for c in doc["coefficients"]]
        extra = {k: v for k, v in doc.items() if k not in ("valuation", "precision", "coefficients")}
        return cls(doc["valuation"], doc["precision"], coeffs, extra)


@dataclass
class QuadraticSeries:
    """rational_part + sqrt(d) * sqrt_part."""

    d: int
    rational_part: Series
    sqrt_part: Series


def delta(level, precision=200):
    return Series._from_doc(json.loads(_core.delta(level, precision)))


def hauptmodul(level, precision=200):
    return Series._from_doc(json.loads(_core.hauptmodul(level, precision)))


def eisenstein_plus(level, weight, chi="1", precision=200):
    doc = json.loads(_core.eisenstein_plus(level, weight, chi, precision))
    if "sqrt" in doc:
        return QuadraticSeries(
            doc["sqrt"], Series._from_doc(doc["rational_part"]), Series._from_doc(doc["sqrt_part"])
        )
    return Series._from_doc(doc)


def f_basis(level, weight, chi="1", m=0, precision=200):
    s = Series._from_doc(json.loads(_core.f_basis(level, weight, chi, m, precision)))
    s.extra["faber"] = [Fraction(c) for c in s.extra["faber"]]
    return s


def k_min(level, chi, weight):
    return _core.k_min(level, chi, weight)


def verify(suite, level, chi="", weight=None, precision=200):
    """Reports of one theorem suite as a list of dicts."""
    return json.loads(_core.verify(suite, level, chi, weight, precision))
