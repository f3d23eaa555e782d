"""Точный ранг рациональных матриц (DomainMatrix над QQ)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from sbo.core.polys import as_fraction_rows
from sbo.core.rational import to_qq


@dataclass(frozen=True)
class RationalMatrix:
    rows: Tuple[Tuple[Fraction, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[Fraction | int]], ncols: int | None = None) -> "RationalMatrix":
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        width = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        for row in rows:
            if len(row) != width:
                raise ValueError(f"Матрица не прямоугольная: строка длины {len(row)}, ожидалось {width}")
        return cls(rows=rows, ncols=width)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def rank(self) -> int:
        return rank(self)


def rank(m: RationalMatrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    entries = [[to_qq(x) for x in row] for row in m.rows]
    return DomainMatrix(entries, (m.nrows, m.ncols), QQ).rank()


def poly_span_rank(polys: Iterable) -> int:
    """Размерность линейной оболочки многочленов с рациональными коэффициентами."""

    _, rows = as_fraction_rows(polys)
    width = len(rows[0]) if rows else 0
    return rank(RationalMatrix.from_rows(rows, width))
