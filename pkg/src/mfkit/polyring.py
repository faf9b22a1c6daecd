"""Sparse multivariate polynomials over a coefficient tower.

Every variable carries a positive rational weight; quasi-homogeneity,
weighted degrees, and the weighted grevlex term order are all computed
against those weights.  Includes the text grammar used by documents and
golden data: rationals a/b, symbols, + - * ^, parentheses, no implicit
multiplication.
"""

from __future__ import annotations

from .coeffring import CoefficientTower, TowerElement
from .rat import Rat, rat, rat_str


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = "line %d, column %d: %s" % (line, col, message)
        super().__init__(message)


class WeightedRing:
    """Variables with positive rational weights over a coefficient tower."""

    def __init__(self, tower: CoefficientTower, variables):
        # variables: iterable of (name, weight)
        self.tower = tower
        names, weights = [], []
        for name, w in variables:
            w = rat(w)
            if w <= 0:
                raise ValueError("weight of %s must be positive" % name)
            names.append(name)
            weights.append(w)
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.nvars = len(self.names)
        if len(set(self.names)) != self.nvars:
            raise ValueError("duplicate variable names")
        clash = set(self.names) & set(tower.names)
        if clash:
            raise ValueError("variable shadows tower generator: %s" % sorted(clash))
        self._index = {n: i for i, n in enumerate(self.names)}
        self._zero = Polynomial(self, {})

    def index(self, name) -> int:
        if name not in self._index:
            raise KeyError("unknown variable %r" % name)
        return self._index[name]

    def weight(self, name):
        return self.weights[self.index(name)]

    def zero(self) -> "Polynomial":
        return self._zero

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, scalar) -> "Polynomial":
        c = scalar if isinstance(scalar, TowerElement) else self.tower.from_rat(scalar)
        if c.tower != self.tower:
            raise ValueError("scalar from a different tower")
        if c.is_zero():
            return self._zero
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name) -> "Polynomial":
        i = self.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: self.tower.one()})

    def monomial(self, exps, coeff=None) -> "Polynomial":
        c = coeff if coeff is not None else self.tower.one()
        if not isinstance(c, TowerElement):
            c = self.tower.from_rat(c)
        if c.is_zero():
            return self._zero
        return Polynomial(self, {tuple(exps): c})

    def exps_degree(self, exps):
        d = rat(0)
        for e, w in zip(exps, self.weights):
            if e:
                d += e * w
        return d

    def term_key(self, exps):
        """Weighted grevlex sort key: larger key = larger monomial."""
        return (self.exps_degree(exps), tuple(-e for e in reversed(exps)))

    def subring(self, names) -> "WeightedRing":
        return WeightedRing(self.tower, [(n, self.weight(n)) for n in names])

    def merge(self, other) -> "WeightedRing":
        """Union of variables; towers must agree (or one be trivial Q)."""
        if self.tower == other.tower:
            tower = self.tower
        elif self.tower.ngens == 0:
            tower = other.tower
        elif other.tower.ngens == 0:
            tower = self.tower
        else:
            raise ValueError("cannot merge rings with different nontrivial towers")
        if set(self.names) & set(other.names):
            raise ValueError("merged rings must have disjoint variables")
        return WeightedRing(tower, list(zip(self.names, self.weights))
                            + list(zip(other.names, other.weights)))

    def __eq__(self, other):
        return (
            isinstance(other, WeightedRing)
            and self.tower == other.tower
            and self.names == other.names
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.tower, self.names, self.weights))

    def __repr__(self):
        vars_ = ", ".join("%s:%s" % (n, rat_str(w)) for n, w in zip(self.names, self.weights))
        return "WeightedRing(%r, [%s])" % (self.tower, vars_)


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        zero = (0,) * self.ring.nvars
        return len(self.terms) == 1 and zero in self.terms

    def constant_value(self) -> TowerElement:
        if not self.terms:
            return self.ring.tower.zero()
        zero = (0,) * self.ring.nvars
        if not self.is_constant():
            raise ValueError("polynomial is not constant: %s" % self)
        return self.terms[zero]

    def weighted_degree(self):
        """Max term degree; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(self.ring.exps_degree(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.exps_degree(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self):
        """Degree if homogeneous and nonzero, else raises."""
        degs = {self.ring.exps_degree(e) for e in self.terms}
        if len(degs) != 1:
            raise ValueError("polynomial is zero or inhomogeneous: %s" % self)
        return degs.pop()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Rat, TowerElement)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = out.get(e)
            acc = c if acc is None else acc + c
            if acc.is_zero():
                out.pop(e, None)
            else:
                out[e] = acc
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rat, TowerElement)):
            c = other if isinstance(other, TowerElement) else self.ring.tower.from_rat(other)
            if c.is_zero():
                return self.ring.zero()
            out = {}
            for e, v in self.terms.items():
                nv = v * c
                if not nv.is_zero():
                    out[e] = nv
            return Polynomial(self.ring, out)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return self.ring.zero()
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc = out.get(e)
                acc = c if acc is None else acc + c
                if acc.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = acc
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Rat, TowerElement)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted((e, c.sort_key()) for e, c in self.terms.items())))
        return self._hash

    # -- calculus and structure ----------------------------------------------

    def partial_derivative(self, name) -> "Polynomial":
        i = self.ring.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            nc = c * e[i]
            if not nc.is_zero():
                acc = out.get(ne)
                out[ne] = nc if acc is None else acc + nc
        return Polynomial(self.ring, {e: c for e, c in out.items() if not c.is_zero()})

    def coefficient_of(self, exps) -> TowerElement:
        return self.terms.get(tuple(exps), self.ring.tower.zero())

    def substitute(self, mapping, check_degrees=True) -> "Polynomial":
        """Replace variables by polynomials of the same ring.

        mapping: {name: Polynomial | TowerElement | Rat | int}.  With
        check_degrees, each value must be homogeneous of the variable's
        weight (a graded substitution); pass False for ungraded use.
        """
        values = {}
        for name, val in mapping.items():
            i = self.ring.index(name)
            if not isinstance(val, Polynomial):
                val = self.ring.constant(val)
            if val.ring != self.ring:
                raise ValueError("substitution value from a different ring")
            if check_degrees and not val.is_zero():
                if not val.is_homogeneous() or val.homogeneous_degree() != self.ring.weights[i]:
                    raise ValueError(
                        "substitution for %s is not homogeneous of weight %s"
                        % (name, rat_str(self.ring.weights[i])))
            values[i] = val
        result = self.ring.zero()
        pow_cache = {}
        for e, c in self.terms.items():
            part = self.ring.constant(c)
            rest = list(e)
            for i, val in values.items():
                if e[i]:
                    key = (i, e[i])
                    if key not in pow_cache:
                        pow_cache[key] = val ** e[i]
                    part = part * pow_cache[key]
                    rest[i] = 0
            if any(rest):
                part = part * Polynomial(self.ring, {tuple(rest): self.ring.tower.one()})
            result = result + part
        return result

    def map_coefficients(self, fn, new_ring=None) -> "Polynomial":
        """Apply fn to every coefficient (fn returns TowerElement of new ring's tower)."""
        ring = new_ring if new_ring is not None else self.ring
        out = {}
        for e, c in self.terms.items():
            nc = fn(c)
            if not nc.is_zero():
                out[e] = nc
        return Polynomial(ring, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: self.ring.term_key(item[0]),
                      reverse=True)

    def __str__(self):
        return poly_to_string(self)

    def __repr__(self):
        return "Polynomial(%s)" % self


def central_charge(potential: Polynomial, variables=None):
    """3 * sum of (1 - weight), over the named variables or the whole ring."""
    ring = potential.ring
    total = rat(0)
    if variables is None:
        for w in ring.weights:
            total += 1 - w
    else:
        for name in variables:
            total += 1 - ring.weight(name)
    return 3 * total


def is_potential(candidate: Polynomial):
    """Quasi-homogeneity of weighted degree 2 plus finite Milnor ring."""
    from .jacobian import milnor_basis, InfiniteQuotientError

    report = {
        "homogeneous_of_degree_2": False,
        "jacobian_finite": False,
        "milnor_number": None,
        "central_charge": central_charge(candidate),
    }
    if not candidate.is_zero() and candidate.is_homogeneous() \
            and candidate.homogeneous_degree() == 2:
        report["homogeneous_of_degree_2"] = True
    try:
        data = milnor_basis(candidate, candidate.ring.names)
        report["jacobian_finite"] = True
        report["milnor_number"] = data.milnor_number
    except InfiniteQuotientError:
        pass
    report["ok"] = report["homogeneous_of_degree_2"] and report["jacobian_finite"]
    return report


# -- rendering ---------------------------------------------------------------


def _coeff_to_factors(c: TowerElement):
    """Render a tower element as (prefix_sign, text, needs_parens)."""
    items = sorted(c.coeffs.items(), reverse=True)
    if len(items) > 1:
        return "(%s)" % c, False
    exps, q = items[0]
    factors = []
    if q != 1 or not any(exps):
        factors.append(rat_str(q))
    for name, e in zip(c.tower.names, exps):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append("%s^%d" % (name, e))
    return "*".join(factors), True


def poly_to_string(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    ring = p.ring
    parts = []
    for exps, coeff in p.sorted_terms():
        monomial = []
        for name, e in zip(ring.names, exps):
            if e == 1:
                monomial.append(name)
            elif e > 1:
                monomial.append("%s^%d" % (name, e))
        if coeff.is_rational():
            q = coeff.rat_value()
            text = None
            if not monomial:
                text = rat_str(q)
            elif q == 1:
                text = "*".join(monomial)
            elif q == -1:
                text = "-" + "*".join(monomial)
            else:
                text = "*".join([rat_str(q)] + monomial)
            parts.append(text)
            continue
        ctext, simple = _coeff_to_factors(coeff)
        if monomial:
            parts.append("*".join([ctext] + monomial))
        else:
            parts.append(ctext)
    out = parts[0]
    for piece in parts[1:]:
        if piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out


# -- parsing ------------------------------------------------------------------


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self.tokens = []
        self._run()

    def _error(self, msg, line, col):
        raise ParseError(msg, line, col)

    def _run(self):
        text = self.text
        n = len(text)
        while self.pos < n:
            ch = text[self.pos]
            if ch == "\n":
                self.pos += 1
                self.line += 1
                self.col = 1
                continue
            if ch in " \t\r":
                self.pos += 1
                self.col += 1
                continue
            start_line, start_col = self.line, self.col
            if ch.isdigit():
                j = self.pos
                while j < n and text[j].isdigit():
                    j += 1
                num = int(text[self.pos:j])
                value = rat(num)
                if j < n and text[j] == "/":
                    k = j + 1
                    while k < n and text[k].isdigit():
                        k += 1
                    if k == j + 1:
                        self._error("expected digits after '/'", start_line, start_col)
                    den = int(text[j + 1:k])
                    if den == 0:
                        self._error("zero denominator", start_line, start_col)
                    value = rat(num, den)
                    j = k
                self.tokens.append(("rat", value, start_line, start_col))
                self.col += j - self.pos
                self.pos = j
                continue
            if ch.isalpha() or ch == "_":
                j = self.pos
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                while j < n and text[j] == "'":
                    j += 1
                self.tokens.append(("sym", text[self.pos:j], start_line, start_col))
                self.col += j - self.pos
                self.pos = j
                continue
            if ch in "+-*^()":
                self.tokens.append((ch, ch, start_line, start_col))
                self.pos += 1
                self.col += 1
                continue
            self._error("unexpected character %r" % ch, start_line, start_col)
        self.tokens.append(("end", None, self.line, self.col))


class _Parser:
    """expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
    factor := atom ['^' int] ; atom := rational | symbol | '(' expr ')' | ('+'|'-') factor."""

    def __init__(self, ring, text):
        self.ring = ring
        self.toks = _Tokenizer(text).tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def advance(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], tok[3])

    def parse(self) -> Polynomial:
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self.error("unexpected %r (implicit multiplication is not allowed)" % str(tok[1]))
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while True:
            kind = self.peek()[0]
            if kind == "+":
                self.advance()
                p = p + self.term()
            elif kind == "-":
                self.advance()
                p = p - self.term()
            else:
                return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[0] == "*":
            self.advance()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        kind, value, line, col = self.peek()
        if kind in ("+", "-"):
            self.advance()
            inner = self.factor()
            return inner if kind == "+" else -inner
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.advance()
            if tok[0] != "rat" or tok[1].denominator != 1 or tok[1] < 0:
                self.error("exponent must be a nonnegative integer", tok)
            return base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.advance()
        kind, value = tok[0], tok[1]
        if kind == "rat":
            return self.ring.constant(value)
        if kind == "sym":
            if value in self.ring._index:
                return self.ring.var(value)
            if value in self.ring.tower.names:
                return self.ring.constant(self.ring.tower.gen(value))
            self.error("unknown symbol %r" % value, tok)
        if kind == "(":
            p = self.expr()
            closing = self.advance()
            if closing[0] != ")":
                self.error("expected ')'", closing)
            return p
        self.error("expected a rational, symbol, or '('", tok)


def parse_polynomial(ring: WeightedRing, text: str) -> Polynomial:
    return _Parser(ring, text).parse()


def transport(p: Polynomial, new_ring: WeightedRing) -> Polynomial:
    """Re-express p in new_ring, matching variables by name.

    Every variable actually used by p must exist in new_ring with the
    same weight.  Coefficients move along if the towers agree; a trivial
    tower embeds into any other.
    """
    ring = p.ring
    if ring == new_ring:
        return p
    same_tower = ring.tower == new_ring.tower
    if not same_tower and ring.tower.ngens != 0:
        raise ValueError("cannot transport coefficients between different towers")
    positions = []
    for i, name in enumerate(ring.names):
        if name in new_ring._index:
            j = new_ring.index(name)
            if new_ring.weights[j] != ring.weights[i]:
                raise ValueError("variable %s changes weight under transport" % name)
            positions.append(j)
        else:
            positions.append(None)
    out = {}
    for e, c in p.terms.items():
        ne = [0] * new_ring.nvars
        for i, v in enumerate(e):
            if v == 0:
                continue
            if positions[i] is None:
                raise ValueError("variable %s missing from the target ring" % ring.names[i])
            ne[positions[i]] = v
        nc = c if same_tower else new_ring.tower.from_rat(c.rat_value())
        out[tuple(ne)] = nc
    return Polynomial(new_ring, out)


def exact_quotient(p: Polynomial, q: Polynomial) -> Polynomial:
    """Divide p by q, insisting on zero remainder.

    q must have an invertible leading coefficient (any tower unit works).
    Raises ValueError when q does not divide p.
    """
    ring = p.ring
    if q.is_zero():
        raise ValueError("division by the zero polynomial")
    qe = max(q.terms, key=ring.term_key)
    qcinv = q.terms[qe].invert()
    work = dict(p.terms)
    quotient = {}
    while work:
        exps = max(work, key=ring.term_key)
        coeff = work.pop(exps)
        if coeff.is_zero():
            continue
        if any(a < b for a, b in zip(exps, qe)):
            raise ValueError("polynomial is not divisible: stuck at %s" % (exps,))
        shift = tuple(a - b for a, b in zip(exps, qe))
        factor = coeff * qcinv
        quotient[shift] = factor
        for be, bc in q.terms.items():
            ne = tuple(a + c for a, c in zip(be, shift))
            if ne == exps:
                continue
            delta = bc * factor
            acc = work.get(ne)
            acc = -delta if acc is None else acc - delta
            if acc.is_zero():
                work.pop(ne, None)
            else:
                work[ne] = acc
    return Polynomial(ring, quotient)


def monomials_of_degree(ring: WeightedRing, degree):
    """All exponent tuples of exact weighted degree (finite: weights positive)."""
    degree = rat(degree)
    if degree < 0:
        return []
    out = []

    def rec(i, remaining, prefix):
        if i == ring.nvars:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        w = ring.weights[i]
        e = 0
        while True:
            left = remaining - e * w
            if left < 0:
                break
            rec(i + 1, left, prefix + [e])
            e += 1

    rec(0, degree, [])
    return out
