"""Exact rational arithmetic.

gmpy2.mpq when available (much faster), fractions.Fraction otherwise.
Both types share operator semantics, numerator/denominator, and hashing.
"""

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rat

RAT_ZERO = Rat(0)
RAT_ONE = Rat(1)


def rat(value, den=None):
    """Coerce int / str / rational to Rat."""
    if den is not None:
        return Rat(value, den)
    if isinstance(value, Rat):
        return value
    if isinstance(value, int):
        return Rat(value)
    if isinstance(value, str):
        return Rat(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or Rat")
    return Rat(value)


def rat_str(q) -> str:
    """Canonical rendering: 'p' for integers, 'p/q' otherwise."""
    if q.denominator == 1:
        return str(q.numerator)
    return "%s/%s" % (q.numerator, q.denominator)


def is_rat(value) -> bool:
    return isinstance(value, (Rat, int))
