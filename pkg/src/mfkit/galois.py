"""Cyclotomic fields Q(zeta_N) and the coefficient-permuting field maps.

The N-th root of unity is adjoined as a tower generator z with minimal
polynomial Phi_N, so all arithmetic stays exact.  The map sigma_nu sends
z^a to z^(nu*a) for nu coprime to N; applied entrywise it carries
factorisations of rational potentials to factorisations of the same
potentials.
"""

from math import gcd

from .coeffring import CoefficientTower, TowerElement
from .polyring import Polynomial
from .rat import Rat, rat


def _poly_divide(num, den):
    """Exact division of dense rational coefficient lists (low to high)."""
    num = list(num)
    dden = len(den) - 1
    lead = den[-1]
    out = [rat(0)] * (len(num) - dden)
    for i in range(len(num) - 1, dden - 1, -1):
        c = num[i] / lead
        out[i - dden] = c
        if c:
            for j, dc in enumerate(den):
                num[i - dden + j] -= c * dc
    if any(c != 0 for c in num[:dden]):
        raise ValueError("polynomial division left a remainder")
    return out


def cyclotomic_polynomial(N):
    """Coefficients of Phi_N, low to high, via x^N - 1 = prod of Phi_m."""
    if N < 1:
        raise ValueError("N must be positive")
    phis = {}
    for n in range(1, N + 1):
        if N % n:
            continue
        poly = [rat(-1)] + [rat(0)] * (n - 1) + [rat(1)]  # x^n - 1
        for m in range(1, n):
            if n % m == 0:
                poly = _poly_divide(poly, phis[m])
        phis[n] = poly
    return phis[N]


class CyclotomicField:
    """Q(zeta_N) presented as a one-generator tower modulo Phi_N."""

    def __init__(self, N):
        self.N = N
        coeffs = cyclotomic_polynomial(N)
        self.degree = len(coeffs) - 1
        tail = {}
        for k in range(self.degree):
            if coeffs[k]:
                tail[(k,)] = -coeffs[k]
        self.tower = CoefficientTower(("z",), (self.degree,), (tail,))
        self._zeta = self.tower.gen("z")

    def zeta(self, k=1) -> TowerElement:
        k %= self.N
        return self._zeta ** k

    def root_sum(self, exponents) -> TowerElement:
        total = self.tower.zero()
        for k in exponents:
            total = total + self.zeta(k)
        return total

    def units(self):
        return tuple(nu for nu in range(1, self.N + 1) if gcd(nu, self.N) == 1)

    def __repr__(self):
        return "CyclotomicField(%d)" % self.N


_FIELD_CACHE = {}


def cyclotomic(N) -> CyclotomicField:
    if N not in _FIELD_CACHE:
        _FIELD_CACHE[N] = CyclotomicField(N)
    return _FIELD_CACHE[N]


class GaloisElement:
    """sigma_nu on Q(zeta_N), acting by zeta -> zeta^nu."""

    __slots__ = ("field", "nu")

    def __init__(self, field: CyclotomicField, nu):
        nu %= field.N
        if gcd(nu, field.N) != 1:
            raise ValueError("nu must be coprime to %d" % field.N)
        self.field = field
        self.nu = nu

    def __mul__(self, other):
        if self.field is not other.field and self.field.N != other.field.N:
            raise ValueError("mixed moduli")
        return GaloisElement(self.field, self.nu * other.nu)

    def __eq__(self, other):
        return (isinstance(other, GaloisElement)
                and self.field.N == other.field.N and self.nu == other.nu)

    def __repr__(self):
        return "sigma_%d (mod %d)" % (self.nu, self.field.N)


def _apply_to_tower_element(g: GaloisElement, x: TowerElement) -> TowerElement:
    tower = g.field.tower
    if x.tower != tower:
        raise ValueError("element does not live in Q(zeta_%d)" % g.field.N)
    out = tower.zero()
    for exps, c in x.coeffs.items():
        a = exps[0]
        out = out + tower.from_rat(c) * g.field.zeta(g.nu * a)
    return out


def galois_apply(g: GaloisElement, x):
    """Apply sigma_nu coefficient-wise; accepts field elements,
    polynomials, and matrix factorisations."""
    if isinstance(x, TowerElement):
        return _apply_to_tower_element(g, x)
    if isinstance(x, Polynomial):
        return x.map_coefficients(lambda c: _apply_to_tower_element(g, c), x.ring)
    # matrix factorisation: duck-typed to avoid an import cycle
    if hasattr(x, "d0") and hasattr(x, "d1"):
        from .mfcore import MatrixFactorisation

        d0 = [[galois_apply(g, e) for e in row] for row in x.d0]
        d1 = [[galois_apply(g, e) for e in row] for row in x.d1]
        return MatrixFactorisation(
            x.ring, x.source_vars, x.target_vars,
            galois_apply(g, x.source_potential),
            galois_apply(g, x.target_potential),
            d0, d1, grading=x.grading)
    raise TypeError("cannot apply a Galois element to %r" % type(x))


def permute_index_set(g: GaloisElement, S):
    """nu * S modulo the set's own modulus."""
    from .catalog import IndexSet

    d = S.modulus
    if gcd(g.nu, d) != 1:
        raise ValueError("nu must be coprime to the modulus %d" % d)
    return IndexSet(d, [(g.nu * l) % d for l in S.elements])


def evaluate_relation(relation, value: TowerElement) -> TowerElement:
    """relation: dict {power: Rat} standing for sum c_k * x^k."""
    tower = value.tower
    total = tower.zero()
    for k in sorted(relation, reverse=True):
        c = rat(relation[k])
        if c:
            total = total + tower.from_rat(c) * value ** k
    return total


def verify_root_expression(expr: TowerElement, relation) -> dict:
    """Check that expr satisfies the univariate relation exactly."""
    value = evaluate_relation(relation, expr)
    return {"residual": value, "ok": value.is_zero()}


def galois_orbit(expr: TowerElement, relation, field: CyclotomicField):
    """Distinct images of expr under the full Galois group, each
    verified to satisfy the relation."""
    seen = []
    for nu in field.units():
        image = galois_apply(GaloisElement(field, nu), expr)
        if not verify_root_expression(image, relation)["ok"]:
            raise ArithmeticError(
                "sigma_%d image fails the defining relation" % nu)
        if image not in seen:
            seen.append(image)
    return seen


def cft_root(which) -> TowerElement:
    """The distinguished cyclotomic root of each witness parameter
    relation: the value the conformal-field-theory comparison singles
    out."""
    if which == "E6":
        F = cyclotomic(12)
        return -(F.zeta(1) + F.zeta(-1)) * rat(1, 3)
    if which == "E7":
        F = cyclotomic(18)
        return (F.zeta(1) + F.zeta(-1)) * 3 - (F.zeta(2) + F.zeta(-2)) * 2
    if which == "E8":
        F = cyclotomic(30)
        acc = F.tower.from_rat(rat(7))
        acc = acc + (F.zeta(1) + F.zeta(-1)) * 4
        acc = acc + (F.zeta(2) + F.zeta(-2)) * 8
        acc = acc - (F.zeta(3) + F.zeta(-3)) * 16
        return -acc * rat(1, 5)
    raise ValueError("no distinguished root for %r" % which)


def cft_field(which) -> CyclotomicField:
    return cyclotomic({"E6": 12, "E7": 18, "E8": 30}[which])
