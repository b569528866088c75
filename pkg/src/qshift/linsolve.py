"""Exact rational span decomposition.

Vectors are sparse dicts ``coordinate -> rational``.  The row reduction is
sympy's :class:`DomainMatrix` over QQ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .tensor import TensorElement
from .uea import UElement


@dataclass
class SpanSolution:
    coefficients: list | None  # one Fraction per candidate, or None if not in the span
    unique: bool

    @property
    def solvable(self) -> bool:
        return self.coefficients is not None


def _qq(c):
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def solve_in_span(target: dict, candidates: list[dict]) -> SpanSolution:
    """Find ``c`` with ``sum_k c_k candidates[k] == target`` (free variables set to 0)."""
    index: dict = {}
    for vec in [*candidates, target]:
        for k in vec:
            index.setdefault(k, len(index))
    coords = list(index)
    ncols = len(candidates)
    rows = [[QQ(0)] * (ncols + 1) for _ in coords]
    for j, vec in enumerate(candidates):
        for k, v in vec.items():
            rows[index[k]][j] = _qq(v)
    for k, v in target.items():
        rows[index[k]][ncols] = _qq(v)
    if not rows:
        return SpanSolution([Fraction(0)] * ncols, ncols == 0)
    M = DomainMatrix(rows, (len(rows), ncols + 1), QQ)
    R, pivots = M.rref()
    if ncols in pivots:
        return SpanSolution(None, False)
    dense = R.to_list()
    coeffs = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        coeffs[p] = _frac(dense[r][ncols])
    return SpanSolution(coeffs, len(pivots) == ncols)


def u_vector(f: UElement) -> dict:
    return dict(f.terms)


def tensor_vector(x: TensorElement, labels=None) -> dict:
    """Flatten a tensor element to ``(row, col, monomial) -> coefficient``."""
    if labels is not None:
        x = x.extend(labels)
    out = {}
    for (r, c), v in x.entries.items():
        if isinstance(v, UElement):
            for mono, coef in v.terms.items():
                out[r, c, mono] = coef
        else:
            out[r, c, ()] = v
    return out
