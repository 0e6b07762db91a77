from fractions import Fraction
from typing import Mapping, Sequence, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Rational = Union[int, Fraction]


def to_qq(value: Rational):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def rational_rank(rows: Sequence[Mapping[int, Rational]], ncols: int) -> int:
    """Exact rank over Q of a sparse matrix given as one {column: value} dict per row."""
    if not rows or ncols == 0:
        return 0
    dod = {}
    for i, row in enumerate(rows):
        entries = {j: to_qq(c) for j, c in row.items() if c}
        if entries:
            dod[i] = entries
    if not dod:
        return 0
    return DomainMatrix(dod, (len(rows), ncols), QQ).rank()
