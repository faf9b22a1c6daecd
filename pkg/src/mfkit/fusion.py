"""Fusion-rule combinatorics for the defect spectra.

The chiral sector of an su(2) x u(1) minimal model at level d-2 counts
boundary-preserving states on a defect labelled by an algebra object
F = (+) U_{n,0}.  This module computes those counts purely from the
truncated Clebsch-Gordan rules, independently of any residue or
linear-algebra machinery, so the two routes can be compared.
"""

from .homcat import DegreeSpectrum
from .rat import rat

__all__ = [
    "SimpleObject",
    "AlgebraObject",
    "su2_fusion",
    "interval_to_simple",
    "algebra_object",
    "chiral_spectrum",
    "compare_spectra",
]


class FusionError(ValueError):
    pass


class SimpleObject:
    """Label U_{l,m}: spin l at level d-2 and a u(1) charge m mod 2d.

    Only NS-sector labels (l + m even) are allowed.
    """

    def __init__(self, l, m, d):
        d = int(d)
        if d < 2:
            raise FusionError("need d >= 2")
        l, m = int(l), int(m) % (2 * d)
        if not 0 <= l <= d - 2:
            raise FusionError("spin %d out of range for d = %d" % (l, d))
        if (l + m) % 2 != 0:
            raise FusionError("label (%d, %d) is not in the NS sector" % (l, m))
        self.l = l
        self.m = m
        self.d = d

    def __eq__(self, other):
        if isinstance(other, SimpleObject):
            return (self.l, self.m, self.d) == (other.l, other.m, other.d)
        return NotImplemented

    def __hash__(self):
        return hash((self.l, self.m, self.d))

    def __repr__(self):
        return "U_{%d,%d}" % (self.l, self.m)


class AlgebraObject:
    """A sum of simple objects U_{n,0} containing the unit U_{0,0}."""

    def __init__(self, summands):
        summands = tuple(summands)
        if not summands:
            raise FusionError("an algebra object needs at least the unit")
        d = summands[0].d
        for s in summands:
            if s.d != d:
                raise FusionError("mixed levels in one algebra object")
            if s.m != 0:
                raise FusionError("algebra summands must have m = 0")
        if not any(s.l == 0 for s in summands):
            raise FusionError("the unit U_{0,0} is missing")
        self.summands = summands
        self.d = d

    def spins(self):
        return [s.l for s in self.summands]

    def __eq__(self, other):
        if isinstance(other, AlgebraObject):
            return sorted(self.spins()) == sorted(other.spins()) and self.d == other.d
        return NotImplemented

    def __repr__(self):
        return " + ".join(repr(s) for s in self.summands)


def su2_fusion(k, l1, l2):
    """Admissible spins in l1 x l2 at level k (truncated Clebsch-Gordan).

    l3 runs from |l1 - l2| to min(l1 + l2, 2k - l1 - l2) in steps of 2.
    """
    k, l1, l2 = int(k), int(l1), int(l2)
    if not (0 <= l1 <= k and 0 <= l2 <= k):
        raise FusionError("spins must lie in 0..%d" % k)
    lo = abs(l1 - l2)
    hi = min(l1 + l2, 2 * k - l1 - l2)
    return set(range(lo, hi + 1, 2))


def interval_to_simple(a, b, d) -> SimpleObject:
    """The simple object attached to the cyclic interval {a, ..., a+b}.

    An interval of b+1 consecutive labels maps to U_{b, b+2a}; intervals
    longer than d-1 labels carry no simple-object name and are rejected.
    """
    a, b, d = int(a), int(b), int(d)
    if b < 0:
        raise FusionError("empty interval")
    if b > d - 2:
        raise FusionError(
            "interval of length %d has no simple label for d = %d" % (b + 1, d))
    return SimpleObject(b, b + 2 * a, d)


def algebra_object(family, d) -> AlgebraObject:
    """The defect algebra for one ADE family at u^d.

    A uses the unit alone; D adds U_{d-2,0}; the three E cases exist
    only at d = 12, 18, 30 and add their fixed spin lists.
    """
    d = int(d)
    family = str(family).upper()
    if family == "A":
        spins = [0]
    elif family == "D":
        if d % 2 != 0:
            raise FusionError("the D defect needs even d")
        spins = [0, d - 2]
    elif family == "E6":
        if d != 12:
            raise FusionError("E6 lives at d = 12")
        spins = [0, 6]
    elif family == "E7":
        if d != 18:
            raise FusionError("E7 lives at d = 18")
        spins = [0, 8, 16]
    elif family == "E8":
        if d != 30:
            raise FusionError("E8 lives at d = 30")
        spins = [0, 10, 18, 28]
    else:
        raise FusionError("unknown family %r" % family)
    return AlgebraObject([SimpleObject(n, 0, d) for n in spins])


def chiral_spectrum(F: AlgebraObject, d=None) -> DegreeSpectrum:
    """Charges (l+m)/d of the F-preserving chiral primaries.

    A state is labelled by U_{l,l} x U_{m,-m}; the u(1) charge forces
    l = m, and the su(2) factor contributes one state per summand
    U_{n,0} of F with n in the fusion set of l x l at level d-2.
    """
    if d is not None and int(d) != F.d:
        raise FusionError("algebra lives at d = %d, not %d" % (F.d, d))
    d = F.d
    k = d - 2
    spins = F.spins()
    entries = {}
    for l in range(0, d - 1):
        allowed = su2_fusion(k, l, l)
        mult = sum(1 for n in spins if n in allowed)
        if mult:
            entries[rat(2 * l, d)] = mult
    return DegreeSpectrum(entries)


def compare_spectra(a: DegreeSpectrum, b: DegreeSpectrum) -> dict:
    """Equality report with the per-charge multiplicity differences."""
    diff = a.diff(b)
    return {
        "equal": not diff,
        "diff": diff,
        "total_a": a.total(),
        "total_b": b.total(),
    }
