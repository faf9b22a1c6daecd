"""Jacobian ideals, Groebner bases, Milnor rings, Grothendieck residues.

Basis computations run over Q in the weighted grevlex order (weighted
degree first, grevlex tie-break).  Tower-valued numerators reduce
coefficient-wise against the rational basis.  The residue functional is
normalised so that the hessian determinant has residue equal to the
Milnor number; on a quasi-homogeneous potential this pins every value
exactly.
"""

from __future__ import annotations

from .polymat import mat_det
from .polyring import Polynomial, WeightedRing
from .rat import rat


class InfiniteQuotientError(ValueError):
    pass


def leading_term(p: Polynomial):
    if p.is_zero():
        raise ValueError("zero polynomial has no leading term")
    exps = max(p.terms, key=p.ring.term_key)
    return exps, p.terms[exps]


def _divides(e1, e2) -> bool:
    return all(a <= b for a, b in zip(e1, e2))


def normal_form(p: Polynomial, basis) -> Polynomial:
    """Fully reduce p against basis (list of monic rational-leading polys)."""
    ring = p.ring
    lead = []
    for b in basis:
        if b.is_zero():
            continue
        le, lc = leading_term(b)
        if not lc.is_rational() or lc.rat_value() == 0:
            raise ValueError("divisor leading coefficient is not a rational unit")
        lead.append((le, rat(1) / lc.rat_value(), b))
    remainder = {}
    work = dict(p.terms)
    while work:
        exps = max(work, key=ring.term_key)
        coeff = work.pop(exps)
        if coeff.is_zero():
            continue
        hit = None
        for le, lcinv, b in lead:
            if _divides(le, exps):
                hit = (le, lcinv, b)
                break
        if hit is None:
            remainder[exps] = coeff
            continue
        le, lcinv, b = hit
        shift = tuple(a - c for a, c in zip(exps, le))
        factor = coeff * lcinv
        for be, bc in b.terms.items():
            ne = tuple(a + c for a, c in zip(be, shift))
            delta = bc * factor
            acc = work.get(ne)
            if ne == exps and acc is None:
                # the leading term of b cancels the term we popped
                continue
            acc = -delta if acc is None else acc - delta
            if acc.is_zero():
                work.pop(ne, None)
            else:
                work[ne] = acc
    return Polynomial(ring, remainder)


def _spair(f, g):
    ef, _ = leading_term(f)
    eg, _ = leading_term(g)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = tuple(l - a for l, a in zip(lcm, ef))
    mg = tuple(l - a for l, a in zip(lcm, eg))
    ring = f.ring
    return (f * ring.monomial(mf)) - (g * ring.monomial(mg)), lcm


def groebner(generators) -> list:
    """Buchberger with the normal selection strategy; reduced monic output.

    Generators must have rational coefficients (the tower enters only
    through numerators handled by normal_form later).
    """
    ring = None
    basis = []
    for g in generators:
        if g.is_zero():
            continue
        ring = g.ring
        for c in g.terms.values():
            if not c.is_rational():
                raise ValueError("groebner requires rational coefficients")
        _, lc = leading_term(g)
        basis.append(g * (rat(1) / lc.rat_value()))
    if not basis:
        return []

    pairs = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            pairs.append((i, j))

    def lcm_of(i, j):
        ei, _ = leading_term(basis[i])
        ej, _ = leading_term(basis[j])
        return tuple(max(a, b) for a, b in zip(ei, ej))

    while pairs:
        pairs.sort(key=lambda ij: ring.term_key(lcm_of(*ij)))
        i, j = pairs.pop(0)
        ei, _ = leading_term(basis[i])
        ej, _ = leading_term(basis[j])
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue  # coprime leading monomials reduce to zero
        s, _ = _spair(basis[i], basis[j])
        r = normal_form(s, basis)
        if r.is_zero():
            continue
        _, lc = leading_term(r)
        r = r * (rat(1) / lc.rat_value())
        basis.append(r)
        for k in range(len(basis) - 1):
            pairs.append((k, len(basis) - 1))

    # interreduce to the unique reduced basis
    reduced = []
    for i, b in enumerate(basis):
        others = [basis[j] for j in range(len(basis)) if j != i]
        r = normal_form(b, others)
        if not r.is_zero():
            _, lc = leading_term(r)
            reduced.append(r * (rat(1) / lc.rat_value()))
    # drop duplicates, keep deterministic order by leading monomial
    seen = {}
    for b in reduced:
        e, _ = leading_term(b)
        seen[e] = b
    return [seen[e] for e in sorted(seen, key=ring.term_key)]


class MilnorData:
    """Groebner basis of a Jacobian ideal plus the finite monomial basis."""

    def __init__(self, ring, basis, monomials, socle, hessian_socle_coeff):
        self.ring = ring
        self.groebner_basis = basis
        self.monomials = monomials           # exponent tuples, sorted ascending
        self.milnor_number = len(monomials)
        self.socle = socle                   # exponent tuple of the top monomial
        self.hessian_socle_coeff = hessian_socle_coeff

    def basis_polynomials(self):
        return [self.ring.monomial(e) for e in self.monomials]


def _standard_monomials(ring: WeightedRing, leading_exps):
    bounds = []
    for i in range(ring.nvars):
        bound = None
        for e in leading_exps:
            if e[i] > 0 and all(e[j] == 0 for j in range(ring.nvars) if j != i):
                bound = e[i] if bound is None else min(bound, e[i])
        if bound is None:
            raise InfiniteQuotientError(
                "Jacobian quotient is infinite: no pure power of %s in the leading ideal"
                % ring.names[i])
        bounds.append(bound)
    out = []

    def rec(i, prefix):
        if i == ring.nvars:
            exps = tuple(prefix)
            if not any(_divides(le, exps) for le in leading_exps):
                out.append(exps)
            return
        for e in range(bounds[i]):
            rec(i + 1, prefix + [e])

    rec(0, [])
    out.sort(key=ring.term_key)
    return out


_MILNOR_CACHE: dict = {}


def milnor_basis(potential: Polynomial, variables) -> MilnorData:
    """Monomial basis of k[vars]/(partials of potential); error if infinite.

    `variables` fixes the residue orientation: partial derivatives are
    taken in this order and the result lives in the subring on exactly
    these variables.
    """
    variables = tuple(variables)
    ring = potential.ring
    key = (ring, variables, potential)
    hit = _MILNOR_CACHE.get(key)
    if hit is not None:
        return hit
    if not variables:
        # residue over no variables is the identity functional
        sub = ring.subring(())
        data = MilnorData(sub, [], [()], (), rat(1))
        _MILNOR_CACHE[key] = data
        return data
    for name in variables:
        ring.index(name)
    keep = [ring.index(n) for n in variables]
    other = [i for i in range(ring.nvars) if i not in keep]
    for e in potential.terms:
        if any(e[i] for i in other):
            raise ValueError("potential involves variables outside the residue set")
    for c in potential.terms.values():
        if not c.is_rational():
            raise ValueError("potential must have rational coefficients")
    sub = ring.subring(variables)

    def project(p):
        return Polynomial(sub, {tuple(e[i] for i in keep): c for e, c in p.terms.items()})

    w = project(potential)
    partials = [w.partial_derivative(n) for n in variables]
    if any(p.is_zero() for p in partials):
        raise InfiniteQuotientError("a partial derivative vanishes identically")
    gb = groebner(partials)
    leading = [leading_term(b)[0] for b in gb]
    monomials = _standard_monomials(sub, leading)
    top = max(sub.exps_degree(e) for e in monomials)
    socles = [e for e in monomials if sub.exps_degree(e) == top]
    if len(socles) != 1:
        raise ValueError("socle is not unique; residue normalisation undefined")
    socle = socles[0]
    hessian = mat_det([[w.partial_derivative(a).partial_derivative(b) for b in variables]
                       for a in variables])
    nf = normal_form(hessian, gb)
    h0 = nf.terms.get(socle)
    if h0 is None or not h0.is_rational() or h0.rat_value() == 0:
        raise ValueError("hessian does not hit the socle; not an isolated singularity?")
    data = MilnorData(sub, gb, monomials, socle, h0.rat_value())
    _MILNOR_CACHE[key] = data
    return data


def residue(numerator: Polynomial, potential: Polynomial, variables) -> Polynomial:
    """Grothendieck residue against the Jacobian ideal of `potential`.

    Integrates out `variables`; returns a polynomial in the remaining
    ones (constant when the pairing is scalar).  Normalisation:
    residue(hessian) == milnor number.
    """
    variables = tuple(variables)
    ring = numerator.ring
    data = milnor_basis(potential, variables)
    keep = [ring.index(n) for n in variables]
    keep_set = set(keep)
    scale = rat(data.milnor_number) / data.hessian_socle_coeff

    groups: dict = {}
    for e, c in numerator.terms.items():
        sub_e = tuple(e[i] for i in keep)
        rest_e = tuple(0 if i in keep_set else v for i, v in enumerate(e))
        groups.setdefault(rest_e, {})[sub_e] = c
    out = {}
    for rest_e, sub_terms in groups.items():
        nf = normal_form(Polynomial(data.ring, sub_terms), data.groebner_basis)
        c = nf.terms.get(data.socle)
        if c is None:
            continue
        value = c * scale
        if not value.is_zero():
            out[rest_e] = value
    return Polynomial(ring, out)
