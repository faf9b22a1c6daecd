"""The named factorisations: simple-singularity potentials, root-of-unity
permutation factorisations, the four equivalence witnesses, units,
the two-variable rotation trick, and the rank-2 monoid comparison.

Witness matrices are stored as source text and parsed by the polynomial
grammar, so the committed strings stay readable against their printed
originals.  Scale parameters remain symbolic tower generators; nothing
is ever evaluated in floating point.
"""

import warnings
from math import gcd

from .coeffring import CoefficientTower, TowerElement
from .polyring import (WeightedRing, Polynomial, parse_polynomial,
                       exact_quotient, transport)
from .polymat import mat_adjugate
from .mfcore import (Grading, MatrixFactorisation, direct_sum)
from .galois import cyclotomic
from .rat import Rat, rat


# -- type labels --------------------------------------------------------------


_E_DVALUES = {6: 12, 7: 18, 8: 30}


class ADEType:
    """A simple-singularity label: A_n (n >= 1), D_n (n >= 4), E_6/7/8."""

    __slots__ = ("family", "index")

    def __init__(self, family, index):
        index = int(index)
        if family == "A":
            if index < 1:
                raise ValueError("A-series needs index >= 1")
        elif family == "D":
            if index < 4:
                raise ValueError("D-series needs index >= 4")
        elif family == "E":
            if index not in _E_DVALUES:
                raise ValueError("E-series index must be 6, 7 or 8")
        else:
            raise ValueError("family must be one of A, D, E")
        self.family = family
        self.index = index

    @classmethod
    def from_label(cls, text) -> "ADEType":
        text = text.strip()
        if len(text) < 2 or text[0] not in "ADE":
            raise ValueError("labels look like A5, D4, E8; got %r" % text)
        return cls(text[0], int(text[1:]))

    @property
    def label(self) -> str:
        return "%s%d" % (self.family, self.index)

    @property
    def d_value(self) -> int:
        """The joint grading parameter d: potentials with equal d share
        a central charge of 3 - 6/d."""
        if self.family == "A":
            return self.index + 1
        if self.family == "D":
            return 2 * (self.index - 1)
        return _E_DVALUES[self.index]

    def central_charge(self) -> Rat:
        return rat(3) - rat(6, self.d_value)

    def __eq__(self, other):
        return (isinstance(other, ADEType)
                and self.family == other.family and self.index == other.index)

    def __hash__(self):
        return hash((self.family, self.index))

    def __repr__(self):
        return "ADEType(%r, %d)" % (self.family, self.index)

    def __str__(self):
        return self.label


def ade_potential(T: ADEType) -> Polynomial:
    """The singularity polynomial of T in variables x1, x2, weighted so
    the result is homogeneous of degree 2."""
    if T.family == "A":
        d = T.index + 1
        ring = WeightedRing(CoefficientTower.rationals(),
                            (("x1", rat(2, d)), ("x2", rat(1))))
        return ring.var("x1") ** d + ring.var("x2") ** 2
    if T.family == "D":
        dd = T.index - 1
        ring = WeightedRing(CoefficientTower.rationals(),
                            (("x1", rat(2, dd)), ("x2", 1 - rat(1, dd))))
        return ring.var("x1") ** dd + ring.var("x1") * ring.var("x2") ** 2
    n = T.index
    if n == 6:
        ring = WeightedRing(CoefficientTower.rationals(),
                            (("x1", rat(2, 3)), ("x2", rat(1, 2))))
        return ring.var("x1") ** 3 + ring.var("x2") ** 4
    if n == 7:
        ring = WeightedRing(CoefficientTower.rationals(),
                            (("x1", rat(2, 3)), ("x2", rat(4, 9))))
        return ring.var("x1") ** 3 + ring.var("x1") * ring.var("x2") ** 3
    ring = WeightedRing(CoefficientTower.rationals(),
                        (("x1", rat(2, 3)), ("x2", rat(2, 5))))
    return ring.var("x1") ** 3 + ring.var("x2") ** 5


# -- index sets ---------------------------------------------------------------


class IndexSet:
    """A subset of Z/d, stored with canonical representatives 0..d-1."""

    __slots__ = ("modulus", "elements")

    def __init__(self, modulus, elements):
        modulus = int(modulus)
        if modulus < 1:
            raise ValueError("modulus must be positive")
        self.modulus = modulus
        self.elements = frozenset(int(e) % modulus for e in elements)

    @classmethod
    def interval(cls, modulus, a, b) -> "IndexSet":
        """{a, a+1, ..., b} taken modulo the modulus; b may exceed it."""
        if b - a + 1 > modulus:
            raise ValueError("interval longer than the modulus")
        return cls(modulus, range(a, b + 1))

    def complement(self) -> "IndexSet":
        full = set(range(self.modulus))
        return IndexSet(self.modulus, full - self.elements)

    def signed_elements(self):
        """Representatives in (-d/2, d/2], sorted."""
        half = self.modulus // 2
        return tuple(sorted(e if e <= half else e - self.modulus
                            for e in self.elements))

    def as_interval(self):
        """(a, b) with the set equal to {a..b} mod d, or None.

        The returned b is a lift (b >= a); full sets count as intervals.
        """
        n = len(self.elements)
        if n == 0:
            return None
        if n == self.modulus:
            return (0, self.modulus - 1)
        starts = [e for e in self.elements
                  if (e - 1) % self.modulus not in self.elements]
        if len(starts) != 1:
            return None
        a = starts[0]
        if all((a + k) % self.modulus in self.elements for k in range(n)):
            return (a, a + n - 1)
        return None

    def shifted(self, k) -> "IndexSet":
        return IndexSet(self.modulus, [e + k for e in self.elements])

    def __contains__(self, l):
        return int(l) % self.modulus in self.elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __eq__(self, other):
        return (isinstance(other, IndexSet) and self.modulus == other.modulus
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.modulus, self.elements))

    def __str__(self):
        signed = self.signed_elements()
        if len(signed) > 2 and signed == tuple(range(signed[0], signed[-1] + 1)):
            body = "%d..%d" % (signed[0], signed[-1])
        else:
            body = ",".join(str(e) for e in signed)
        return "{%s} mod %d" % (body, self.modulus)

    def __repr__(self):
        return "IndexSet(%d, %s)" % (self.modulus, sorted(self.elements))


# -- permutation factorisations ----------------------------------------------


def permutation_mf(d, S) -> MatrixFactorisation:
    """The rank-1 factorisation of u'^d - u^d cut out by an index set:
    the twisted half collects the root factors u' - zeta^l u with l in S,
    the other half collects the rest."""
    if not isinstance(S, IndexSet):
        S = IndexSet(d, S)
    if S.modulus != d:
        raise ValueError("index set modulus %d does not match d=%d" % (S.modulus, d))
    if len(S) == 0 or len(S) == d:
        warnings.warn("degenerate index set: one block of P_S is a constant",
                      stacklevel=2)
    F = cyclotomic(d)
    ring = WeightedRing(F.tower, (("u", rat(2, d)), ("u'", rat(2, d))))
    u, up = ring.var("u"), ring.var("u'")

    def root_product(indices):
        acc = ring.one()
        for l in indices:
            acc = acc * (up - ring.constant(F.zeta(l)) * u)
        return acc

    d1 = root_product(S)
    d0 = root_product(S.complement())
    return MatrixFactorisation(
        ring, ("u",), ("u'",), u ** d, up ** d, [[d0]], [[d1]],
        name="P_%s" % S)


def permutation_quantum_dims(d, S):
    """Closed form of the quantum dimensions of permutation_mf(d, S)."""
    F = cyclotomic(d)
    left = F.root_sum(S)
    right = F.root_sum(-l for l in S)
    return left, right


# -- coefficient towers for the witnesses --------------------------------------


def witness_tower(which, b=None) -> CoefficientTower:
    """Exact coefficient ring of each witness; s and t stay symbolic."""
    if which == "D":
        if b is None or b < 2:
            raise ValueError("the D-series witness needs an integer b >= 2")
        return CoefficientTower(("s",), (2 * b,), ({(0,): rat(1)},))
    if which == "E6":
        return CoefficientTower(
            ("t", "s"), (2, 12),
            ({(0,): rat(1, 3)},
             {(1, 0): rat(-14976), (0, 0): rat(8640)}))
    if which == "E7":
        return CoefficientTower(
            ("t", "s"), (3, 18),
            ({(1,): rat(21), (0,): rat(-37)},
             {(2, 0): rat(26220), (1, 0): rat(67488), (0, 0): rat(-376912)}))
    if which == "E8":
        return CoefficientTower(
            ("t", "s"), (4, 30),
            ({(2,): rat(22), (1,): rat(24), (0,): rat(31, 5)},
             {(3, 0): rat(45308593275, 4), (2, 0): rat(-32199587625, 4),
              (1, 0): rat(-973905678975, 4), (0, 0): rat(-395277903075, 4)}))
    raise ValueError("unknown witness %r" % which)


def witness_parameter_relation(which):
    """Integer relation {power: coeff} satisfied by the t-parameter."""
    if which == "E6":
        return {2: rat(1), 0: rat(-1, 3)}
    if which == "E7":
        return {3: rat(1), 1: rat(-21), 0: rat(37)}
    if which == "E8":
        return {4: rat(5), 2: rat(-110), 1: rat(-120), 0: rat(-31)}
    raise ValueError("no t-parameter for %r" % which)


class WitnessParams:
    """Selects a witness: which in D/E6/E7/E8, d_or_b only for D."""

    __slots__ = ("which", "b")

    def __init__(self, which, d_or_b=None):
        if which not in ("D", "E6", "E7", "E8"):
            raise ValueError("which must be D, E6, E7 or E8")
        if which == "D":
            if d_or_b is None or int(d_or_b) < 2:
                raise ValueError("D-series witness needs b >= 2")
            self.b = int(d_or_b)
        else:
            if d_or_b is not None:
                raise ValueError("%s takes no size parameter" % which)
            self.b = None
        self.which = which

    def __repr__(self):
        if self.which == "D":
            return "WitnessParams('D', %d)" % self.b
        return "WitnessParams(%r)" % self.which


# -- witness entry tables ------------------------------------------------------

# Rank-2 entries; the complementary block is the adjugate.

_E6_D1 = (
    ("y^2 - v + 1/2*x*s^2*u^2 + 1/8*(2*t + 1)*s^6*u^6",
     "-x + y*s*u + 1/4*(t + 1)*s^4*u^4"),
    ("x^2 + x*y*s*u + 1/4*t*x*s^4*u^4 + 1/4*(2*t + 1)*y*s^5*u^5"
     " - 1/48*(9*t + 5)*s^8*u^8",
     "y^2 + v + 1/2*x*s^2*u^2 + 1/8*(2*t + 1)*s^6*u^6"),
)

_E7_D1 = (
    ("v - 1/2*(t^2 - 10*t + 19)*s^9*u^9 + (t - 2)*y*s^5*u^5 + y^2*s*u",
     "-x + (2*t - 5)*s^6*u^6 + y*s^2*u^2"),
    ("x^2 + y^3 + (2*t - 5)^2*s^12*u^12 + (2*t - 5)*x*s^6*u^6"
     " + 2*(2*t - 5)*y*s^8*u^8 + x*y*s^2*u^2 + y^2*s^4*u^4",
     "-v - 1/2*(t^2 - 10*t + 19)*s^9*u^9 + (t - 2)*y*s^5*u^5 + y^2*s*u"),
)

# Rank-4 twisted block; the complement is adjugate / (W - V).

_E8_D1 = (
    ("-v - 1/64*(1 + t)*(3 + t)*(5 + 7*t)*s^15*u^15 - 1/4*(1 + t)*x*s^5*u^5"
     " - 1/192*(19 + 47*t + 25*t^2 + 5*t^3)*y*s^9*u^9 - 1/2*y^2*s^3*u^3",
     "s*u",
     "x + 1/96*(-1 + t)*(23 + 36*t + 5*t^2)*s^10*u^10",
     "y"),
    ("1/11520*(-138089 - 562209*t - 600371*t^2 - 116355*t^3)*s^29*u^29"
     " + 1/160*(-73 - 280*t - 285*t^2 - 50*t^3)*x*s^19*u^19"
     " + 1/96*(-29 - 25*t + 25*t^2 + 5*t^3)*x^2*s^9*u^9"
     " + 1/960*(-2107 - 8545*t - 9085*t^2 - 1735*t^3)*y*s^23*u^23"
     " + 1/64*(-33 - 57*t - 11*t^2 + 5*t^3)*x*y*s^13*u^13"
     " + 1/384*(5 + 7*t)*(13 + 36*t + 7*t^2)*y^2*s^17*u^17"
     " - 1/4*(3 + 4*t)*x*y^2*s^7*u^7"
     " + 1/96*(-35 - 49*t + 7*t^2 + 5*t^3)*y^3*s^11*u^11"
     " - x*y^3*s*u - 1/2*(1 + t)*y^4*s^5*u^5",
     "-v + 1/64*(1 + t)*(3 + t)*(5 + 7*t)*s^15*u^15 + 1/4*(1 + t)*x*s^5*u^5"
     " + 1/192*(19 + 47*t + 25*t^2 + 5*t^3)*y*s^9*u^9 + 1/2*y^2*s^3*u^3",
     "y^4 + 1/1920*(3587 + 14687*t + 15785*t^2 + 3125*t^3)*s^24*u^24"
     " + 1/96*(1 - t)*(23 + 36*t + 5*t^2)*v*s^9*u^9"
     " + 1/96*(43 + 102*t + 67*t^2 + 12*t^3)*x*s^14*u^14"
     " - 1/384*(1 + t)*(81 + 126*t + 17*t^2)*y*s^18*u^18"
     " + 1/4*(2 + 3*t)*x*y*s^8*u^8"
     " + 1/96*(2 + t)*(7 + 6*t - 5*t^2)*y^2*s^12*u^12"
     " + x*y^2*s^2*u^2 + 1/4*(1 + 2*t)*y^3*s^6*u^6",
     "-x^2 + 1/96*(-1 + t)*(23 + 36*t + 5*t^2)*x*s^10*u^10"
     " + 1/48*(2 + 21*t + 32*t^2 + 9*t^3)*y*s^14*u^14"),
    ("x^2 + 1/96*(1 - t)*(23 + 36*t + 5*t^2)*x*s^10*u^10"
     " - 1/48*(2 + 21*t + 32*t^2 + 9*t^3)*y*s^14*u^14",
     "y",
     "-v + 1/192*(-37 - 39*t + 29*t^2 + 15*t^3)*s^15*u^15"
     " + 1/4*(1 + t)*x*s^5*u^5"
     " + 1/192*(-65 - 73*t + 37*t^2 + 5*t^3)*y*s^9*u^9 - 1/2*y^2*s^3*u^3",
     "1/96*(1 - t)*(23 + 36*t + 5*t^2)*s^11*u^11 + x*s*u"
     " + 1/2*(1 + t)*y*s^5*u^5"),
    ("y^4 + 1/1920*(3587 + 14687*t + 15785*t^2 + 3125*t^3)*s^24*u^24"
     " + 1/96*(-1 + t)*(23 + 36*t + 5*t^2)*v*s^9*u^9"
     " + 1/96*(43 + 102*t + 67*t^2 + 12*t^3)*x*s^14*u^14"
     " - 1/384*(1 + t)*(81 + 126*t + 17*t^2)*y*s^18*u^18"
     " + 1/4*(2 + 3*t)*x*y*s^8*u^8"
     " + 1/96*(2 + t)*(7 + 6*t - 5*t^2)*y^2*s^12*u^12"
     " + x*y^2*s^2*u^2 + 1/4*(1 + 2*t)*y^3*s^6*u^6",
     "-x + 1/96*(1 - t)*(23 + 36*t + 5*t^2)*s^10*u^10",
     "-1/1920*(569 + 2615*t + 2855*t^2 + 425*t^3)*s^19*u^19"
     " + 1/96*(17 + t - 37*t^2 - 5*t^3)*x*s^9*u^9"
     " + 1/64*(-17 - 17*t + 13*t^2 + 5*t^3)*y*s^13*u^13"
     " - 1/4*(1 + 2*t)*y^2*s^7*u^7 - y^3*s*u",
     "-v + 1/192*(37 + 39*t - 29*t^2 - 15*t^3)*s^15*u^15"
     " - 1/4*(1 + t)*x*s^5*u^5"
     " + 1/192*(65 + 73*t - 37*t^2 - 5*t^3)*y*s^9*u^9 + 1/2*y^2*s^3*u^3"),
)


def _witness_ring(which, b=None):
    tower = witness_tower(which, b)
    if which == "D":
        weights = (("u", rat(1, b)), ("v", rat(1)),
                   ("x", rat(2, b)), ("y", 1 - rat(1, b)))
    elif which == "E6":
        weights = (("u", rat(1, 6)), ("v", rat(1)),
                   ("x", rat(2, 3)), ("y", rat(1, 2)))
    elif which == "E7":
        weights = (("u", rat(1, 9)), ("v", rat(1)),
                   ("x", rat(2, 3)), ("y", rat(4, 9)))
    else:
        weights = (("u", rat(1, 15)), ("v", rat(1)),
                   ("x", rat(2, 3)), ("y", rat(2, 5)))
    return WeightedRing(tower, weights)


def witness(which, d_or_b=None) -> MatrixFactorisation:
    """The equivalence witness X with V on the one-variable side
    (u, and v for the square term) and the singularity on the other."""
    if isinstance(which, WitnessParams):
        params = which
    else:
        params = WitnessParams(which, d_or_b)
    which, b = params.which, params.b
    ring = _witness_ring(which, b)
    u, v, x, y = (ring.var(n) for n in ("u", "v", "x", "y"))
    if which == "D":
        s = ring.constant(ring.tower.gen("s"))
        su = s * u
        tail = ring.zero()
        for k in range(b):
            tail = tail + x ** (b - 1 - k) * su ** (2 * k)
        d1 = [[x - su ** 2, v + y * su],
              [v - y * su, tail + y ** 2]]
        d0 = mat_adjugate(d1)
        V = u ** (2 * b) + v ** 2
        W = x ** b + x * y ** 2
        grading = Grading((rat(0), rat(2, b) - 1), (rat(2, b) - 1, rat(0)))
        name = "X_D(b=%d)" % b
    else:
        rows = {"E6": _E6_D1, "E7": _E7_D1, "E8": _E8_D1}[which]
        d1 = [[parse_polynomial(ring, e) for e in row] for row in rows]
        if which == "E6":
            V = u ** 12 + v ** 2
            W = x ** 3 + y ** 4
            d0 = mat_adjugate(d1)
            grading = Grading((rat(0), rat(-1, 3)), (rat(0), rat(-1, 3)))
        elif which == "E7":
            V = u ** 18 + v ** 2
            W = x ** 3 + x * y ** 3
            d0 = mat_adjugate(d1)
            grading = Grading((rat(0), rat(-1, 3)), (rat(0), rat(-1, 3)))
        else:
            V = u ** 30 + v ** 2
            W = x ** 3 + y ** 5
            q = W - V
            adj = mat_adjugate(d1)
            d0 = [[exact_quotient(e, q) for e in row] for row in adj]
            offs = (rat(0), rat(-14, 15), rat(-1, 3), rat(-3, 5))
            grading = Grading(offs, offs)
        name = "X_%s" % which
    return MatrixFactorisation(
        ring, ("u", "v"), ("x", "y"), V, W, d0, d1,
        grading=grading, name=name)


def witness_quantum_dims(which, b=None):
    """Printed closed forms: (left dim, s * right dim), both tower
    elements; the right one is cleared of its single s-denominator."""
    tower = witness_tower(which, b)
    t = None if which == "D" else tower.gen("t")
    s = tower.gen("s")
    if which == "D":
        return -2 * s, tower.from_rat(rat(-1))
    if which == "E6":
        return s, 3 - 3 * t
    if which == "E7":
        return -2 * s, 2 * t ** 2 + 5 * t - 30
    if which == "E8":
        return 2 * s, (4 * t ** 3 - 3 * t ** 2 - 86 * t - 27) * rat(5, 16)
    raise ValueError("unknown witness %r" % which)


# -- units and the two-variable rotation ---------------------------------------


def _fold_tensor(d0X, d1X, a, b, zero):
    """Tensor an accumulated block pair with the rank-1 pair (a, b)."""
    n = len(d0X)
    size = 2 * n
    nd0 = [[zero] * size for _ in range(size)]
    nd1 = [[zero] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            nd0[i][j] = d0X[i][j]
            nd0[n + i][n + j] = d1X[i][j]
            nd1[i][j] = d1X[i][j]
            nd1[n + i][n + j] = d0X[i][j]
    for i in range(n):
        nd0[i][n + i] = -a
        nd0[n + i][i] = b
        nd1[i][n + i] = a
        nd1[n + i][i] = -b
    return nd0, nd1


def unit_mf(V: Polynomial) -> MatrixFactorisation:
    """The identity defect on V: the factorisation of V' - V built from
    one difference quotient per variable."""
    ring0 = V.ring
    names = ring0.names
    if not names:
        raise ValueError("the potential has no variables")
    if len(names) > 4:
        raise ValueError("units are only built for up to four variables")
    primed = tuple(n + "'" for n in names)
    for p in primed:
        if p in ring0._index:
            raise ValueError("ring already uses the name %s" % p)
    ring = WeightedRing(ring0.tower,
                        tuple(zip(names, ring0.weights))
                        + tuple(zip(primed, ring0.weights)))
    base = transport(V, ring)
    levels = [base]
    for i in range(len(names)):
        mapping = {names[j]: ring.var(primed[j]) for j in range(i + 1)}
        levels.append(base.substitute(mapping))
    d0 = d1 = None
    for i, name in enumerate(names):
        a = ring.var(primed[i]) - ring.var(name)
        q = exact_quotient(levels[i + 1] - levels[i], a)
        if d0 is None:
            d0, d1 = [[q]], [[a]]
        else:
            d0, d1 = _fold_tensor(d0, d1, a, q, ring.zero())
    return MatrixFactorisation(
        ring, names, primed, base, levels[-1], d0, d1,
        name="I(%s)" % V)


def knoerrer_mf() -> MatrixFactorisation:
    """Rank-1 factorisation of a^2 + b^2 over Q(i), from no variables at
    all: the two-variable periodicity step in its diagonal form."""
    tower = CoefficientTower(("i",), (2,), ({(0,): rat(-1)},))
    ring = WeightedRing(tower, (("a", rat(1)), ("b", rat(1))))
    i = ring.constant(tower.gen("i"))
    a, b = ring.var("a"), ring.var("b")
    return MatrixFactorisation(
        ring, (), ("a", "b"), ring.zero(), a ** 2 + b ** 2,
        [[a - i * b]], [[a + i * b]], name="K")


# -- the rank-2 monoid comparison ----------------------------------------------


_APRIME_D1 = (
    ("3/4*t*u^4 - 3/4*u'*u^3 + 1/4*u'^2*u^2 + 3/4*u'^3*u + (-3/4*t - 1/4)*u'^4",
     "6*u - 6*u'"),
    ("(-13/32*t - 3/16)*u^7 + (7/32*t + 1/8)*u'*u^6 + (-13/32*t - 31/96)*u'^2*u^5"
     " + (3/32*t + 19/96)*u'^3*u^4 + (1/8*t + 1/48)*u'^4*u^3"
     " + (1/16*t - 1/12)*u'^5*u^2 + (1/8*t + 11/96)*u'^6*u"
     " + (3/16*t + 13/96)*u'^7",
     "(3/4*t - 1/4)*u^4 + 2*u'*u^3 - 3*u'^2*u^2 + 5/2*u'^3*u"
     " + (-3/4*t - 5/4)*u'^4"),
)

_APRIME_D0 = (
    ("(76/3 - 44*t)*u^8 + (136/3 - 80*t)*u'*u^7 + (44 - 76*t)*u'^2*u^6"
     " + (152/3 - 88*t)*u'^3*u^5 + (208/3 - 120*t)*u'^4*u^4"
     " + (152/3 - 88*t)*u'^5*u^3 + (20*t - 12)*u'^6*u^2"
     " + (88*t - 152/3)*u'^7*u + (52*t - 92/3)*u'^8",
     "(224 - 384*t)*u^5 + (832 - 1440*t)*u'*u^4 + (1440 - 2496*t)*u'^2*u^3"
     " + (1440 - 2496*t)*u'^3*u^2 + (832 - 1440*t)*u'^4*u"
     " + (224 - 384*t)*u'^5"),
    ("(5/3 - 19/6*t)*u^11 + (49/6 - 43/3*t)*u'*u^10 + (287/18 - 28*t)*u'^2*u^9"
     " + (361/18 - 35*t)*u'^3*u^8 + (208/9 - 241/6*t)*u'^4*u^7"
     " + (475/18 - 46*t)*u'^5*u^6 + (64/3 - 223/6*t)*u'^6*u^5"
     " + (23/6 - 7*t)*u'^7*u^4 + (65/3*t - 227/18)*u'^8*u^3"
     " + (74/3*t - 259/18)*u'^9*u^2 + (65/6*t - 58/9)*u'^10*u"
     " + (5/3*t - 19/18)*u'^11",
     "(16 - 28*t)*u^8 + (104 - 180*t)*u'*u^7 + (908/3 - 524*t)*u'^2*u^6"
     " + (524 - 908*t)*u'^3*u^5 + (1780/3 - 1028*t)*u'^4*u^4"
     " + (448 - 776*t)*u'^5*u^3 + (652/3 - 376*t)*u'^6*u^2"
     " + (60 - 104*t)*u'^7*u + (20/3 - 12*t)*u'^8"),
)

_APRIME_PHI = "1/4*(u + u')*(3*t*u^2 - 3*u*u' + u'^2 + 3*t*u'^2)"
_APRIME_PSI = ("1/24*((1 - 3*t)*u^3 - (7 + 3*t)*u^2*u' + (5 - 3*t)*u*u'^2"
               " - (5 + 3*t)*u'^3)")


def monoid_parameter_tower() -> CoefficientTower:
    return CoefficientTower(("t",), (2,), ({(0,): rat(1, 3)},))


def _interval_factors_mod12(ring, t):
    """Quadratic root-pair factors of u'^12 - u^12, written in t with
    t^2 = 1/3: the pair zeta^l, zeta^-l for l = 1..5 plus the two real
    roots.  At t = -1/sqrt(3) the labels match the principal roots."""
    u, up = ring.var("u"), ring.var("u'")
    return {
        0: up - u,
        1: up ** 2 + 3 * t * u * up + u ** 2,
        2: up ** 2 - u * up + u ** 2,
        3: up ** 2 + u ** 2,
        4: up ** 2 + u * up + u ** 2,
        5: up ** 2 - 3 * t * u * up + u ** 2,
        6: up + u,
    }


def e6_monoid():
    """The rank-2 summand of the self-fusion of the E6 witness, its
    comparison map, and the permutation sum it lands in.

    Returns (aprime, morphism, target); the morphism is a strict
    isomorphism onto direct_sum(P_0, P_{-3..3}), everything written
    over Q[t] with t^2 = 1/3.  The odd block is normalised so the
    summands carry the standard factor products with their usual signs.
    """
    tower = monoid_parameter_tower()
    ring = WeightedRing(tower, (("u", rat(1, 6)), ("u'", rat(1, 6))))
    t = ring.constant(tower.gen("t"))
    u, up = ring.var("u"), ring.var("u'")
    V, W = u ** 12, up ** 12

    d1 = [[parse_polynomial(ring, e) for e in row] for row in _APRIME_D1]
    d0 = [[parse_polynomial(ring, e) for e in row] for row in _APRIME_D0]
    aprime = MatrixFactorisation(
        ring, ("u",), ("u'",), V, W, d0, d1,
        grading=Grading((rat(1, 3), rat(-1, 6)), (rat(0), rat(-1, 2))),
        name="A'")

    factors = _interval_factors_mod12(ring, t)
    p33_d1 = factors[0] * factors[1] * factors[2] * factors[3]
    p33_d0 = factors[6] * factors[4] * factors[5]
    p33 = MatrixFactorisation(
        ring, ("u",), ("u'",), V, W, [[p33_d0]], [[p33_d1]],
        grading=Grading((rat(-1, 6),), (rat(0),)), name="P_{-3..3}(t)")
    p0_d1 = factors[0]
    p0 = MatrixFactorisation(
        ring, ("u",), ("u'",), V, W,
        [[exact_quotient(W - V, p0_d1)]], [[p0_d1]],
        grading=Grading((rat(1, 3),), (rat(-1, 2),)), name="P_0(t)")
    target = direct_sum(p0, p33)

    f00 = [[ring.one(), ring.zero()],
           [parse_polynomial(ring, _APRIME_PSI), ring.one()]]
    f11 = [[-parse_polynomial(ring, _APRIME_PHI), ring.constant(rat(-6))],
           [ring.constant(rat(1, 32)) * (12 * t + 7), ring.zero()]]
    from .homcat import MorphismMatrix

    morphism = MorphismMatrix(aprime, target, f00, f11)
    return aprime, morphism, target


def monoid_index_sets(which, b=None):
    """Index sets of the permutation summands in the self-fusion of a
    witness, unit summand first."""
    if which == "D":
        if b is None or b < 2:
            raise ValueError("the D-series decomposition needs b >= 2")
        d = 2 * b
        full = set(range(d))
        return [IndexSet(d, {0}), IndexSet(d, full - {b})]
    if which == "E6":
        return [IndexSet(12, {0}), IndexSet.interval(12, -3, 3)]
    if which == "E7":
        return [IndexSet(18, {0}), IndexSet.interval(18, -4, 4),
                IndexSet.interval(18, -8, 8)]
    if which == "E8":
        return [IndexSet(30, {0}), IndexSet.interval(30, -5, 5),
                IndexSet.interval(30, -9, 9), IndexSet.interval(30, -14, 14)]
    raise ValueError("unknown witness %r" % which)


# -- the equivalence classes ---------------------------------------------------


def equivalence_classes(d_max):
    """Partition of the simple-singularity potentials by central charge,
    indexed by d = 2..d_max.  D_3 is the d=4 alias of A_3 and is only
    mentioned, never constructed."""
    out = []
    for d in range(2, d_max + 1):
        members = [ADEType("A", d - 1)]
        note = None
        if d % 2 == 0:
            n = d // 2 + 1
            if n >= 4:
                members.append(ADEType("D", n))
            elif d == 4:
                note = "D3 coincides with A3 and is not listed separately"
        if d == 12:
            members.append(ADEType("E", 6))
        elif d == 18:
            members.append(ADEType("E", 7))
        elif d == 30:
            members.append(ADEType("E", 8))
        out.append({"d": d,
                    "central_charge": rat(3) - rat(6, d),
                    "members": tuple(members),
                    "note": note})
    return out
