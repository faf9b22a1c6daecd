"""Coefficient towers Q[g1, g2, ...]/(monic relations).

A tower adjoins generators one at a time; the defining relation of each
generator is monic in that generator and may only mention earlier ones.
The tower is treated as a commutative ring, not assumed to be a field:
inversion is attempted by solving a linear system and fails loudly on
non-units.  Elements are kept reduced in the monomial basis
g1^e1 * g2^e2 * ... with e_i < deg(relation_i).
"""

from __future__ import annotations

from .rat import Rat, rat, rat_str


class TowerError(ValueError):
    pass


class NotAUnitError(ArithmeticError):
    pass


class CoefficientTower:
    """Immutable tower spec plus element factory."""

    def __init__(self, names, degrees, tails):
        # tails[i]: dict {exps over gens 0..i : Rat} with exps[i] < degrees[i],
        # meaning gen_i ** degrees[i] == sum(tail terms).
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.tails = tuple(dict(t) for t in tails)
        self.ngens = len(self.names)
        self._one = None
        self._zero = None
        if len(set(self.names)) != self.ngens:
            raise TowerError("duplicate generator names")
        for i, deg in enumerate(self.degrees):
            if deg < 1:
                raise TowerError("relation for %s must have degree >= 1" % self.names[i])
            for exps, c in self.tails[i].items():
                if len(exps) != i + 1:
                    raise TowerError("relation for %s mentions a later generator" % self.names[i])
                if exps[i] >= deg:
                    raise TowerError("relation for %s is not monic-reduced" % self.names[i])

    @classmethod
    def rationals(cls) -> "CoefficientTower":
        return cls((), (), ())

    @classmethod
    def from_relations(cls, pairs) -> "CoefficientTower":
        """pairs: ordered (name, relation dict {exps: Rat}) with exps over
        generators 0..i; the relation polynomial must be monic in generator i."""
        names, degrees, tails = [], [], []
        for i, (name, rel) in enumerate(pairs):
            deg = 0
            for exps in rel:
                if len(exps) != i + 1:
                    raise TowerError("relation for %s has wrong arity" % name)
                deg = max(deg, exps[i])
            lead_key = (0,) * i + (deg,)
            lead = rel.get(lead_key)
            if deg < 1 or lead is None:
                raise TowerError("relation for %s needs a pure leading power" % name)
            if lead != 1:
                raise TowerError("relation for %s is not monic" % name)
            for exps, c in rel.items():
                if exps[i] == deg and exps != lead_key and c != 0:
                    raise TowerError("relation for %s has mixed leading terms" % name)
            tail = {}
            for exps, c in rel.items():
                if exps == lead_key or c == 0:
                    continue
                tail[exps] = -c
            names.append(name)
            degrees.append(deg)
            tails.append(tail)
        return cls(names, degrees, tails)

    # -- element factories ------------------------------------------------

    def zero(self) -> "TowerElement":
        if self._zero is None:
            self._zero = TowerElement(self, {})
        return self._zero

    def one(self) -> "TowerElement":
        if self._one is None:
            self._one = self.from_rat(rat(1))
        return self._one

    def from_rat(self, q) -> "TowerElement":
        q = rat(q)
        if q == 0:
            return self.zero()
        return TowerElement(self, {(0,) * self.ngens: q})

    def gen(self, name) -> "TowerElement":
        i = self.names.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.ngens))
        return self.reduce({exps: rat(1)})

    def from_dict(self, raw) -> "TowerElement":
        return self.reduce({tuple(k): rat(v) for k, v in raw.items()})

    def reduce(self, raw: dict) -> "TowerElement":
        """Rewrite arbitrary nonnegative exponents into the reduced basis."""
        out = {}
        stack = [(tuple(e), rat(c)) for e, c in raw.items() if c != 0]
        while stack:
            exps, coeff = stack.pop()
            idx = -1
            for i in range(self.ngens - 1, -1, -1):
                if exps[i] >= self.degrees[i]:
                    idx = i
                    break
            if idx < 0:
                acc = out.get(exps)
                acc = coeff if acc is None else acc + coeff
                if acc == 0:
                    out.pop(exps, None)
                else:
                    out[exps] = acc
                continue
            rest = list(exps)
            rest[idx] -= self.degrees[idx]
            for texps, tc in self.tails[idx].items():
                new = list(rest)
                for j, te in enumerate(texps):
                    new[j] += te
                stack.append((tuple(new), coeff * tc))
        return TowerElement(self, out)

    def dimension(self) -> int:
        d = 1
        for deg in self.degrees:
            d *= deg
        return d

    def basis_exponents(self):
        combos = [()]
        for deg in self.degrees:
            combos = [e + (k,) for e in combos for k in range(deg)]
        return combos

    def __eq__(self, other):
        return (
            isinstance(other, CoefficientTower)
            and self.names == other.names
            and self.degrees == other.degrees
            and self.tails == other.tails
        )

    def __hash__(self):
        return hash((self.names, self.degrees,
                     tuple(tuple(sorted(t.items())) for t in self.tails)))

    def __repr__(self):
        if not self.names:
            return "CoefficientTower(Q)"
        return "CoefficientTower(Q[%s])" % ", ".join(self.names)


class TowerElement:
    """Reduced tower element: dict {exponent tuple: Rat}, no zero values."""

    __slots__ = ("tower", "coeffs", "_hash")

    def __init__(self, tower, coeffs):
        self.tower = tower
        self.coeffs = coeffs
        self._hash = None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        if not self.coeffs:
            return True
        zero = (0,) * self.tower.ngens
        return len(self.coeffs) == 1 and zero in self.coeffs

    def rat_value(self):
        if not self.coeffs:
            return rat(0)
        zero = (0,) * self.tower.ngens
        if not self.is_rational():
            raise TowerError("element is not rational: %s" % self)
        return self.coeffs[zero]

    def _check(self, other):
        if self.tower != other.tower:
            raise TowerError("elements from different towers")

    def __add__(self, other):
        if isinstance(other, (int, Rat)):
            other = self.tower.from_rat(other)
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            acc = out.get(e)
            acc = c if acc is None else acc + c
            if acc == 0:
                out.pop(e, None)
            else:
                out[e] = acc
        return TowerElement(self.tower, out)

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.tower, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Rat)):
            other = self.tower.from_rat(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rat)):
            q = rat(other)
            if q == 0:
                return self.tower.zero()
            return TowerElement(self.tower, {e: c * q for e, c in self.coeffs.items()})
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return self.tower.zero()
        raw = {}
        degrees = self.tower.degrees
        inrange = True
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc = raw.get(e)
                acc = c1 * c2 if acc is None else acc + c1 * c2
                raw[e] = acc
                if inrange:
                    for i, ei in enumerate(e):
                        if ei >= degrees[i]:
                            inrange = False
                            break
        if inrange:
            return TowerElement(self.tower, {e: c for e, c in raw.items() if c != 0})
        return self.tower.reduce(raw)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        result = self.tower.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def invert(self) -> "TowerElement":
        """Solve (self * x) = 1 in the monomial basis; NotAUnitError if singular."""
        if self.is_rational():
            q = self.rat_value()
            if q == 0:
                raise NotAUnitError("zero is not a unit")
            return self.tower.from_rat(rat(1) / q)
        basis = self.tower.basis_exponents()
        index = {e: i for i, e in enumerate(basis)}
        n = len(basis)
        cols = []
        for e in basis:
            col = [rat(0)] * n
            prod = self * TowerElement(self.tower, {e: rat(1)})
            for pe, pc in prod.coeffs.items():
                col[index[pe]] = pc
            cols.append(col)
        # dense Gaussian elimination on [A | e_1]
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        rhs = [rat(0)] * n
        rhs[index[(0,) * self.tower.ngens]] = rat(1)
        for col in range(n):
            piv = None
            for r in range(col, n):
                if mat[r][col] != 0:
                    piv = r
                    break
            if piv is None:
                raise NotAUnitError("element is not a unit: %s" % self)
            mat[col], mat[piv] = mat[piv], mat[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
            inv = rat(1) / mat[col][col]
            mat[col] = [v * inv for v in mat[col]]
            rhs[col] = rhs[col] * inv
            for r in range(n):
                if r != col and mat[r][col] != 0:
                    f = mat[r][col]
                    mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
                    rhs[r] = rhs[r] - f * rhs[col]
        out = {e: rhs[i] for e, i in index.items() if rhs[i] != 0}
        return TowerElement(self.tower, out)

    def __eq__(self, other):
        if isinstance(other, (int, Rat)):
            other = self.tower.from_rat(other)
        if not isinstance(other, TowerElement):
            return NotImplemented
        return self.tower == other.tower and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.coeffs.items())))
        return self._hash

    def sort_key(self):
        return tuple(sorted(self.coeffs.items()))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for exps in sorted(self.coeffs, reverse=True):
            c = self.coeffs[exps]
            factors = []
            for name, e in zip(self.tower.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            if not factors:
                parts.append(rat_str(c))
                continue
            mono = "*".join(factors)
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (rat_str(c), mono))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return "TowerElement(%s)" % self
