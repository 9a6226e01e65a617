"""Exact rational scalars and dense vectors.

Values are plain Python ints whenever they are integral and
``fractions.Fraction`` otherwise.  The two interoperate exactly under
arithmetic and hashing, so containers may mix them freely.  No floats
appear anywhere in a decision path.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Num = Union[int, Fraction]
Vector = tuple  # tuple[Num, ...]


def canon(x: Num) -> Num:
    """Collapse integral Fractions to ints; leave everything else alone."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator
        return x
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"not an exact rational: {x!r}")
    return x


def rat(p: int, q: int = 1) -> Num:
    """Exact rational p/q in lowest terms with positive denominator."""
    if q == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return canon(Fraction(p, q))


def parse_rat(text) -> Num:
    """Parse "p/q", "p", or a bare int into an exact rational."""
    if isinstance(text, bool):
        raise ParseErrorFor(text)
    if isinstance(text, int):
        return text
    if isinstance(text, str):
        s = text.strip()
        if "/" in s:
            p, _, q = s.partition("/")
            try:
                return rat(int(p), int(q))
            except ValueError:
                raise ParseErrorFor(text) from None
        try:
            return int(s)
        except ValueError:
            raise ParseErrorFor(text) from None
    raise ParseErrorFor(text)


def ParseErrorFor(value) -> ValueError:
    return ValueError(f"not a rational literal: {value!r}")


def format_rat(x: Num) -> str:
    """Serialize as "p/q", or "p" when the value is integral."""
    x = canon(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def as_vector(entries: Iterable) -> Vector:
    return tuple(canon(e) for e in entries)


def dot(a: Sequence, b: Sequence) -> Num:
    """Exact inner product; lengths must match."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return canon(sum(x * y for x, y in zip(a, b)))


def vec_add(a: Sequence, b: Sequence) -> Vector:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return tuple(canon(x + y) for x, y in zip(a, b))


def vec_scale(c: Num, a: Sequence) -> Vector:
    return tuple(canon(c * x) for x in a)


def is_integral(x: Num) -> bool:
    return isinstance(x, int) or x.denominator == 1
