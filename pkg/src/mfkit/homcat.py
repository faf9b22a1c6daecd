"""Morphism spaces between graded factorisations.

Degree-q even maps modulo homotopy are counted by exact linear algebra
over the coefficient field.  Witness factorisations carry a scale
generator s that only ever multiplies the one-variable side; descale()
absorbs it into that variable, which shrinks the coefficient ring to
Q[t]/(p).  A build-time check certifies that p is irreducible, so the
shrunken ring really is a field and ranks are well defined.
"""

from .coeffring import CoefficientTower, TowerElement, NotAUnitError
from .polyring import (WeightedRing, Polynomial, monomials_of_degree)
from .polymat import mat_mul, mat_det, mat_shape, mat_equal
from .mfcore import MatrixFactorisation, grading_of
from .rat import Rat, rat


class FieldCheckError(ArithmeticError):
    pass


class DescaleError(ValueError):
    pass


# -- irreducibility certificates ----------------------------------------------


def _int_coeffs(coeffs):
    """Clear denominators of a rational coefficient list (low to high)."""
    lcm = 1
    for c in coeffs:
        d = c.denominator
        g = _gcd(lcm, d)
        lcm = lcm // g * d
    return [int(c * lcm) for c in coeffs]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _has_rational_root(ic):
    """Rational root test on integer coefficients, low to high."""
    a0, an = ic[0], ic[-1]
    if a0 == 0:
        return True
    for p in _divisors(abs(a0)):
        for q in _divisors(abs(an)):
            for num in (p, -p):
                acc = 0
                # evaluate sum ic[k] (num/q)^k times q^deg
                deg = len(ic) - 1
                for k, c in enumerate(ic):
                    acc += c * num ** k * q ** (deg - k)
                if acc == 0:
                    return True
    return False


def _divisors(n):
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            if k != n // k:
                out.append(n // k)
        k += 1
    return sorted(out)


def _poly_mod_divides(num, den, p):
    """Whether den divides num over F_p; both dense lists low to high."""
    num = [c % p for c in num]
    dd = len(den) - 1
    inv = pow(den[-1], p - 2, p)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] * inv % p
        if c:
            for j, dc in enumerate(den):
                num[i - dd + j] = (num[i - dd + j] - c * dc) % p
    return all(c % p == 0 for c in num[:dd])


def _irreducible_mod_p(ic, p):
    """Brute-force irreducibility over F_p for small degree."""
    if ic[-1] % p == 0:
        return False
    n = len(ic) - 1
    for ddeg in range(1, n // 2 + 1):
        # all monic divisor candidates of degree ddeg
        for code in range(p ** ddeg):
            cand = []
            c = code
            for _ in range(ddeg):
                cand.append(c % p)
                c //= p
            cand.append(1)
            if _poly_mod_divides(ic, cand, p):
                return False
    return True


def certify_field(tower: CoefficientTower):
    """Raise FieldCheckError unless the (single-generator) tower is a
    field, i.e. its defining relation is irreducible over Q."""
    if tower.ngens == 0:
        return
    if tower.ngens != 1:
        raise FieldCheckError("field certificate only covers one generator")
    deg = tower.degrees[0]
    coeffs = [rat(0)] * deg + [rat(1)]
    for (e,), q in tower.tails[0].items():
        coeffs[e] -= q
    ic = _int_coeffs(coeffs)
    if deg == 1:
        return
    if _has_rational_root(ic):
        raise FieldCheckError(
            "relation %s has a rational root; the quotient is not a field"
            % ic)
    if deg <= 3:
        return
    if deg > 4:
        raise FieldCheckError("no certificate routine for degree %d" % deg)
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if _irreducible_mod_p(ic, p):
            return
    raise FieldCheckError(
        "could not certify irreducibility of %s with a small prime" % ic)


# -- descaling ----------------------------------------------------------------


def descale(X: MatrixFactorisation, scale_gen="s", scale_var="u"):
    """Absorb the scale generator into its variable: u stands for s*u
    afterwards, coefficients live in the shrunken tower.

    Entries built from s*u keep polynomial coefficients; the one-variable
    potential picks up the inverse of the relation constant.  No-op when
    the tower has no scale generator.
    """
    tower = X.ring.tower
    if scale_gen not in tower.names:
        return X
    gi = list(tower.names).index(scale_gen)
    if gi != tower.ngens - 1:
        raise DescaleError("the scale generator must be the last one adjoined")
    N = tower.degrees[gi]
    if tower.ngens == 1:
        new_tower = CoefficientTower.rationals()
        c = None
        for (e,), q in tower.tails[0].items():
            if e != 0:
                raise DescaleError("scale relation mixes s back in")
            c = new_tower.from_rat(q)
        if c is None:
            c = new_tower.zero()
    else:
        new_tower = CoefficientTower(tower.names[:-1], tower.degrees[:-1],
                                     tower.tails[:-1])
        raw = {}
        for exps, q in tower.tails[gi].items():
            if exps[gi] != 0:
                raise DescaleError("scale relation mixes s back in")
            raw[exps[:-1]] = q
        c = new_tower.from_dict(raw)
    certify_field(new_tower)
    cinv = c.invert()
    cpow = {0: new_tower.one()}

    def cpower(j):
        if j not in cpow:
            cpow[j] = c ** j if j > 0 else cinv ** (-j)
        return cpow[j]

    new_ring = WeightedRing(new_tower,
                            tuple(zip(X.ring.names, X.ring.weights)))
    vi = X.ring.index(scale_var)

    def move(poly):
        out = {}
        for exps, coeff in poly.terms.items():
            k = exps[vi]
            for texp, q in coeff.coeffs.items():
                e = texp[gi] - k
                j, r = divmod(e, N)
                if r:
                    raise DescaleError(
                        "term %s has scale degree %d not matched by %s^%d"
                        % (exps, texp[gi], scale_var, k))
                base = TowerElement(new_tower, {texp[:-1]: q}) * cpower(j)
                acc = out.get(exps)
                acc = base if acc is None else acc + base
                if acc.is_zero():
                    out.pop(exps, None)
                else:
                    out[exps] = acc
        return Polynomial(new_ring, out)

    d0 = [[move(e) for e in row] for row in X.d0]
    d1 = [[move(e) for e in row] for row in X.d1]
    return MatrixFactorisation(
        new_ring, X.source_vars, X.target_vars,
        move(X.source_potential), move(X.target_potential),
        d0, d1, grading=X.grading, name=X.name)


# -- field contexts: dense vectors over the tower basis ------------------------


class FieldContext:
    """Tower elements flattened to coefficient tuples, with a cached
    multiplication table; rank computations spend their time here."""

    def __init__(self, tower: CoefficientTower):
        certify_field(tower)
        self.tower = tower
        self.basis = list(tower.basis_exponents())
        self.index = {e: i for i, e in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.zero = (rat(0),) * self.dim
        one = [rat(0)] * self.dim
        one[self.index[(0,) * tower.ngens]] = rat(1)
        self.one = tuple(one)
        self.table = []
        for ei in self.basis:
            row = []
            for ej in self.basis:
                prod = (TowerElement(tower, {ei: rat(1)})
                        * TowerElement(tower, {ej: rat(1)}))
                row.append(self.from_tower(prod))
            self.table.append(row)

    def from_tower(self, elem: TowerElement):
        vec = [rat(0)] * self.dim
        for e, q in elem.coeffs.items():
            vec[self.index[e]] = q
        return tuple(vec)

    def to_tower(self, vec) -> TowerElement:
        return TowerElement(self.tower,
                            {self.basis[i]: v for i, v in enumerate(vec) if v})

    def mul(self, a, b):
        if self.dim == 1:
            return (a[0] * b[0],)
        out = [rat(0)] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                f = ai * bj
                for k, tk in enumerate(self.table[i][j]):
                    if tk:
                        out[k] += f * tk
        return tuple(out)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def is_zero(self, a):
        return all(not x for x in a)

    def inv(self, a):
        return self.from_tower(self.to_tower(a).invert())


def sparse_rank(ctx: FieldContext, rows):
    """Rank of a sparse matrix given as dicts {column: vector}."""
    live = {}
    col_rows = {}
    for rid, r in enumerate(rows):
        r = {c: v for c, v in r.items() if not ctx.is_zero(v)}
        if r:
            live[rid] = r
            for c in r:
                col_rows.setdefault(c, set()).add(rid)
    rank = 0
    while live:
        rid = min(live, key=lambda i: len(live[i]))
        row = live.pop(rid)
        for c in row:
            col_rows[c].discard(rid)
        col = min(row, key=lambda c: (len(col_rows.get(c, ())), c))
        rank += 1
        pinv = ctx.inv(row[col])
        nrow = {c: ctx.mul(v, pinv) for c, v in row.items() if c != col}
        targets = list(col_rows.pop(col, ()))
        for other in targets:
            r = live[other]
            f = r.pop(col)
            for c, v in nrow.items():
                cur = r.get(c)
                delta = ctx.mul(f, v)
                if cur is None:
                    r[c] = ctx.neg(delta)
                    col_rows.setdefault(c, set()).add(other)
                else:
                    nv = ctx.sub(cur, delta)
                    if ctx.is_zero(nv):
                        del r[c]
                        col_rows[c].discard(other)
                    else:
                        r[c] = nv
            if not r:
                del live[other]
    return rank


# -- morphism matrices ---------------------------------------------------------


class MorphismError(ValueError):
    pass


class MorphismMatrix:
    """An even map of factorisations: f00 on the plain halves, f11 on
    the twisted halves, both matrices over the common ring."""

    def __init__(self, source: MatrixFactorisation, target: MatrixFactorisation,
                 f00, f11):
        if source.ring != target.ring:
            raise MorphismError("source and target live over different rings")
        if (source.source_potential != target.source_potential
                or source.target_potential != target.target_potential):
            raise MorphismError("source and target factorise different potentials")
        for name, m, rows, cols in (("f00", f00, target.rank, source.rank),
                                    ("f11", f11, target.rank, source.rank)):
            r, c = mat_shape(m)
            if (r, c) != (rows, cols):
                raise MorphismError("%s must be %dx%d" % (name, rows, cols))
        self.source = source
        self.target = target
        self.f00 = f00
        self.f11 = f11

    def degree(self):
        """The common charge of all nonzero entries; None for the zero
        map; MorphismError when entries disagree or are inhomogeneous."""
        gs = grading_of(self.source)
        gt = grading_of(self.target)
        q = None
        for mat, a_src, a_tgt in ((self.f00, gs.alpha0, gt.alpha0),
                                  (self.f11, gs.alpha1, gt.alpha1)):
            for i, row in enumerate(mat):
                for j, entry in enumerate(row):
                    if entry.is_zero():
                        continue
                    if not entry.is_homogeneous():
                        raise MorphismError(
                            "entry (%d,%d) is not homogeneous" % (i, j))
                    cand = entry.homogeneous_degree() - a_src[j] + a_tgt[i]
                    if q is None:
                        q = cand
                    elif q != cand:
                        raise MorphismError(
                            "entries of mixed degree: %s vs %s" % (q, cand))
        return q

    def is_closed(self) -> bool:
        lhs0 = mat_mul(self.f00, self.source.d1)
        rhs0 = mat_mul(self.target.d1, self.f11)
        if not mat_equal(lhs0, rhs0):
            return False
        lhs1 = mat_mul(self.f11, self.source.d0)
        rhs1 = mat_mul(self.target.d0, self.f00)
        return mat_equal(lhs1, rhs1)


def _is_unit_constant(p: Polynomial) -> bool:
    if p.is_zero() or not p.is_constant():
        return False
    try:
        p.constant_value().invert()
        return True
    except NotAUnitError:
        return False


def is_strict_isomorphism(f: MorphismMatrix) -> dict:
    """Closed, degree 0, and both blocks invertible over the ring
    (determinants are tower units)."""
    report = {"closed": False, "degree": None,
              "det_f00_unit": False, "det_f11_unit": False}
    try:
        report["degree"] = f.degree()
        degree_ok = report["degree"] in (None, 0) or report["degree"] == 0
    except MorphismError:
        degree_ok = False
    report["closed"] = f.is_closed()
    report["det_f00_unit"] = _is_unit_constant(mat_det(f.f00))
    report["det_f11_unit"] = _is_unit_constant(mat_det(f.f11))
    report["ok"] = (report["closed"] and degree_ok
                    and report["det_f00_unit"] and report["det_f11_unit"])
    return report


# -- hom spaces ----------------------------------------------------------------


class DegreeSpectrum:
    """Multiset of charges with multiplicities; zero entries dropped."""

    def __init__(self, entries):
        self.entries = {}
        for q, m in dict(entries).items():
            m = int(m)
            if m < 0:
                raise ValueError("negative multiplicity at %s" % q)
            if m:
                self.entries[rat(q)] = m

    def total(self) -> int:
        return sum(self.entries.values())

    def items(self):
        return sorted(self.entries.items())

    def charges(self):
        return [q for q, _ in self.items()]

    def __getitem__(self, q):
        return self.entries.get(rat(q), 0)

    def __eq__(self, other):
        if isinstance(other, DegreeSpectrum):
            return self.entries == other.entries
        return NotImplemented

    def diff(self, other: "DegreeSpectrum"):
        """{charge: (self multiplicity, other multiplicity)} where they differ."""
        out = {}
        for q in set(self.entries) | set(other.entries):
            a, b = self.entries.get(q, 0), other.entries.get(q, 0)
            if a != b:
                out[q] = (a, b)
        return out

    def lines(self):
        from .rat import rat_str

        return ["%s %d" % (rat_str(q), m) for q, m in self.items()]

    def __str__(self):
        return "; ".join(self.lines()) if self.entries else "(empty)"

    def __repr__(self):
        return "DegreeSpectrum({%s})" % ", ".join(
            "%s: %d" % (q, m) for q, m in self.items())


def charge_step(ring: WeightedRing) -> Rat:
    """Smallest positive charge: one over the lcm of weight denominators."""
    lcm = 1
    for w in ring.weights:
        d = w.denominator
        lcm = lcm // _gcd(lcm, d) * d
    return rat(1, lcm)


class HomSetup:
    """A descaled pair with cached term lists, ready for repeated
    degree-by-degree counting."""

    def __init__(self, X: MatrixFactorisation, Y: MatrixFactorisation = None):
        X = descale(X)
        Y = X if Y is None else descale(Y)
        if X.ring != Y.ring:
            raise MorphismError("factorisations live over different rings")
        if (X.source_potential != Y.source_potential
                or X.target_potential != Y.target_potential):
            raise MorphismError("hom needs matching potentials on both sides")
        self.X, self.Y = X, Y
        self.ring = X.ring
        self.ctx = FieldContext(self.ring.tower)
        self.gX = grading_of(X)
        self.gY = grading_of(Y)
        self.dX0 = self._terms(X.d0)
        self.dX1 = self._terms(X.d1)
        self.dY0 = self._terms(Y.d0)
        self.dY1 = self._terms(Y.d1)
        self.rX, self.rY = X.rank, Y.rank

    def _terms(self, mat):
        ctx = self.ctx
        return [[[(e, ctx.from_tower(c)) for e, c in entry.terms.items()]
                 for entry in row] for row in mat]

    def _unknowns(self, q, parity):
        """Index the monomial coordinates of all maps of charge q and
        the given parity; returns ({(blk,i,j,exps): int}, count)."""
        if parity == 0:
            blocks = (("f00", self.gX.alpha0, self.gY.alpha0),
                      ("f11", self.gX.alpha1, self.gY.alpha1))
        else:
            blocks = (("g10", self.gX.alpha0, self.gY.alpha1),
                      ("g01", self.gX.alpha1, self.gY.alpha0))
        index = {}
        n = 0
        for blk, a_src, a_tgt in blocks:
            for i in range(self.rY):
                for j in range(self.rX):
                    deg = q + a_src[j] - a_tgt[i]
                    for e in monomials_of_degree(self.ring, deg):
                        index[(blk, i, j, e)] = n
                        n += 1
        return index, n

    def closed_dimension(self, q):
        index, n = self._unknowns(q, 0)
        if n == 0:
            return 0, index, n
        ctx = self.ctx
        rows = {}

        def put(eqkey, uidx, vec, negate):
            row = rows.get(eqkey)
            if row is None:
                row = rows[eqkey] = {}
            cur = row.get(uidx)
            v = ctx.neg(vec) if negate else vec
            nv = v if cur is None else ctx.add(cur, v)
            if ctx.is_zero(nv):
                row.pop(uidx, None)
            else:
                row[uidx] = nv

        for (blk, i, j, e), uidx in index.items():
            if blk == "f00":
                # C1[i][b] += f00[i][j] * dX1[j][b]
                for b in range(self.rX):
                    for te, tc in self.dX1[j][b]:
                        key = ("C1", i, b, _expadd(e, te))
                        put(key, uidx, tc, False)
                # C2[a][j] -= dY0[a][i] * f00[i][j]
                for a in range(self.rY):
                    for te, tc in self.dY0[a][i]:
                        key = ("C2", a, j, _expadd(e, te))
                        put(key, uidx, tc, True)
            else:
                # C1[a][j] -= dY1[a][i] * f11[i][j]
                for a in range(self.rY):
                    for te, tc in self.dY1[a][i]:
                        key = ("C1", a, j, _expadd(e, te))
                        put(key, uidx, tc, True)
                # C2[i][b] += f11[i][j] * dX0[j][b]
                for b in range(self.rX):
                    for te, tc in self.dX0[j][b]:
                        key = ("C2", i, b, _expadd(e, te))
                        put(key, uidx, tc, False)
        rank = sparse_rank(ctx, rows.values())
        return n - rank, index, n

    def boundary_rank(self, q, even_index):
        odd_index, m = self._unknowns(q - 1, 1)
        if m == 0:
            return 0
        ctx = self.ctx
        images = []
        for (blk, i, j, e), _ in sorted(odd_index.items(), key=lambda kv: kv[1]):
            row = {}

            def put(ukey, vec):
                uidx = even_index[ukey]
                cur = row.get(uidx)
                nv = vec if cur is None else ctx.add(cur, vec)
                if ctx.is_zero(nv):
                    row.pop(uidx, None)
                else:
                    row[uidx] = nv

            if blk == "g10":
                # (Dg)00[a][j] += dY1[a][i] * g10[i][j]
                for a in range(self.rY):
                    for te, tc in self.dY1[a][i]:
                        put(("f00", a, j, _expadd(e, te)), tc)
                # (Dg)11[i][b] += g10[i][j] * dX1[j][b]
                for b in range(self.rX):
                    for te, tc in self.dX1[j][b]:
                        put(("f11", i, b, _expadd(e, te)), tc)
            else:
                # (Dg)00[i][b] += g01[i][j] * dX0[j][b]
                for b in range(self.rX):
                    for te, tc in self.dX0[j][b]:
                        put(("f00", i, b, _expadd(e, te)), tc)
                # (Dg)11[a][j] += dY0[a][i] * g01[i][j]
                for a in range(self.rY):
                    for te, tc in self.dY0[a][i]:
                        put(("f11", a, j, _expadd(e, te)), tc)
            if row:
                images.append(row)
        return sparse_rank(ctx, images)

    def dimension(self, q):
        q = rat(q)
        closed, even_index, n = self.closed_dimension(q)
        if closed == 0:
            return 0
        brank = self.boundary_rank(q, even_index)
        value = closed - brank
        if value < 0:
            raise ArithmeticError("negative hom dimension; assembly bug")
        return value

    def spectrum(self, q_max=2) -> DegreeSpectrum:
        q_max = rat(q_max)
        step = charge_step(self.ring)
        entries = {}
        j = 0
        while True:
            q = step * j
            if q > q_max:
                break
            m = self.dimension(q)
            if m:
                entries[q] = m
            j += 1
        return DegreeSpectrum(entries)


def _expadd(e1, e2):
    return tuple(a + b for a, b in zip(e1, e2))


def hom_dim(X: MatrixFactorisation, Y: MatrixFactorisation, q) -> int:
    """Dimension over the coefficient field of degree-q even morphisms
    X -> Y modulo homotopy."""
    return HomSetup(X, Y).dimension(q)


def hom_spectrum(X: MatrixFactorisation, Y: MatrixFactorisation = None,
                 q_max=2) -> DegreeSpectrum:
    """All nonzero hom dimensions for charges 0, g, 2g, ... up to q_max,
    where g is the smallest charge the weights allow."""
    return HomSetup(X, Y).spectrum(q_max)
