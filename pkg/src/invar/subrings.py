"""Finitely generated subalgebras (and modules over them) of polynomial
rings: per-degree slice bases, membership with certificates, degree-by-degree
intersection of two subalgebras, expression of elements in a free module
basis, generator reduction, and the exact free-module intersection of two
submodules whose generators are scalar multiples of basis elements.

Everything is Groebner-free: a subalgebra slice at degree d is the GF(2) row
span of all power products of the generators of that degree (dynamic
programming over exponent tuples), intersections are per-degree subspace
intersections, and membership is a linear solve with the product monomials
as the certificate coordinates.
"""

from __future__ import annotations

import numpy as np

from .gf2 import BitVectorSpace, EchelonAccumulator, solve_in_rowspan
from .invariants import SliceContext, _exponent_tuples
from .poly import Polynomial, PolyRing


class Subalgebra:
    """A finitely generated graded subalgebra of a polynomial ring, or more
    generally the module generated by `module_generators` over it (the plain
    subalgebra is the module generated by 1)."""

    def __init__(self, ring, generators, module_generators=None, ctx=None,
                 name=None):
        self.ring = ring
        self.ctx = ctx if ctx is not None else SliceContext(ring)
        self.generators = list(generators)
        for g in self.generators:
            if not g.is_homogeneous() or not g.terms:
                raise ValueError("generators must be nonzero homogeneous")
        if module_generators is None:
            module_generators = [ring.one()]
        self.module_generators = list(module_generators)
        self.name = name
        self._degrees = [g.degree() for g in self.generators]
        self._mod_degrees = [m.degree() for m in self.module_generators]
        self._vecs = {}  # exponent tuple -> (degree, algebra slice vector)
        _, one_vec = self.ctx.vector(ring.one())
        self._vecs[(0,) * len(self.generators)] = (0, one_vec)
        self._mod_vecs = {}
        self._spaces = {}

    def _vector(self, exponents):
        if exponents not in self._vecs:
            i = next(k for k, e in enumerate(exponents) if e)
            prev = list(exponents)
            prev[i] -= 1
            d_prev, v_prev = self._vector(tuple(prev))
            v = self.ctx.multiply(v_prev, d_prev, self.generators[i])
            self._vecs[exponents] = (d_prev + self._degrees[i], v)
        return self._vecs[exponents]

    def labelled_slice(self, d):
        """[( (module_index, exponent_tuple), packed vector )] spanning the
        degree-d slice."""
        out = []
        for j, m in enumerate(self.module_generators):
            rem = d - self._mod_degrees[j]
            if rem < 0:
                continue
            for e in _exponent_tuples(self._degrees, rem):
                key = (j, e)
                if key not in self._mod_vecs:
                    dd, v = self._vector(e)
                    self._mod_vecs[key] = self.ctx.multiply(v, dd, m)
                out.append((key, self._mod_vecs[key]))
        return out

    def slice(self, d) -> BitVectorSpace:
        if d not in self._spaces:
            acc = EchelonAccumulator(self.ctx.dim(d))
            for _, v in self.labelled_slice(d):
                acc.insert(v)
            self._spaces[d] = acc.to_space()
        return self._spaces[d]

    def dims(self, bound):
        return [self.slice(d).dim for d in range(bound + 1)]

    def membership(self, p: Polynomial):
        """(True, certificate) when the homogeneous p lies in the slice of
        its degree; certificate is the list of (module_index, exponent_tuple)
        contributors.  Zero is a member with the empty certificate."""
        if not p.terms:
            return True, []
        if not p.is_homogeneous():
            raise ValueError("membership expects a homogeneous polynomial")
        d = p.degree()
        labelled = self.labelled_slice(d)
        if not labelled:
            return False, None
        rows = np.vstack([v for _, v in labelled])
        _, target = self.ctx.vector(p)
        coeffs = solve_in_rowspan(rows, self.ctx.dim(d), target)
        if coeffs is None:
            return False, None
        cert = [labelled[i][0] for i in np.nonzero(coeffs)[0]]
        return True, cert

    def certificate_expansion(self, cert):
        """Re-expand a membership certificate to the polynomial it proves."""
        total = self.ring.zero()
        for (j, exps) in cert:
            term = self.module_generators[j]
            for g, e in zip(self.generators, exps):
                term = term * g ** e
            total = total + term
        return total


def intersect_subalgebras(A: Subalgebra, B: Subalgebra, bound,
                          candidate: Subalgebra = None):
    """Degree-by-degree intersection of two subalgebras of the same ambient
    ring through the bound, optionally compared against a candidate.

    Returns a report dict with per-degree intersection dimensions, and, when
    a candidate is given, the equality verdict and first mismatching degree.
    """
    if A.ring != B.ring:
        raise ValueError("ambient ring mismatch")
    dims = []
    candidate_ok = None if candidate is None else True
    first_mismatch = None
    for d in range(bound + 1):
        meet = A.slice(d).intersect(B.slice(d))
        dims.append(meet.dim)
        if candidate is not None and meet != candidate.slice(d):
            candidate_ok = False
            if first_mismatch is None:
                first_mismatch = d
    return {
        "bound": bound,
        "dims": dims,
        "candidate_ok": candidate_ok,
        "first_mismatch": first_mismatch,
    }


class ModulePresentation:
    """A free module over a polynomial subring R of an ambient polynomial
    ring, with a named homogeneous basis.  Expressions are written in a
    symbolic coefficient ring whose variables stand for the R-generators."""

    def __init__(self, ring, base_generators, basis, ctx=None):
        """base_generators, basis: lists of (name, Polynomial) pairs."""
        self.ring = ring
        self.ctx = ctx if ctx is not None else SliceContext(ring)
        self.base_names = [n for n, _ in base_generators]
        self.base_polys = [p for _, p in base_generators]
        self.base_degrees = [p.degree() for p in self.base_polys]
        self.coeff_ring = PolyRing(self.base_names, self.base_degrees)
        self.basis_names = [n for n, _ in basis]
        self.basis_polys = [p for _, p in basis]
        self.basis_degrees = [p.degree() for p in self.basis_polys]
        self._span = {e: (0, self.ctx.vector(ring.one())[1])
                      for e in [(0,) * len(self.base_polys)]}

    def _base_vector(self, exponents):
        if exponents not in self._span:
            i = next(k for k, e in enumerate(exponents) if e)
            prev = list(exponents)
            prev[i] -= 1
            d_prev, v_prev = self._base_vector(tuple(prev))
            v = self.ctx.multiply(v_prev, d_prev, self.base_polys[i])
            self._span[exponents] = (d_prev + self.base_degrees[i], v)
        return self._span[exponents]

    def express_in_basis(self, p: Polynomial):
        """Unique expression of p as {basis_name: coefficient in the symbolic
        coefficient ring}; raises ValueError when p is outside the module or
        the degree-d basis products are dependent (freeness failure)."""
        if not p.terms:
            return {}
        if not p.is_homogeneous():
            raise ValueError("express_in_basis expects homogeneous input")
        d = p.degree()
        labels, rows = [], []
        for i, b in enumerate(self.basis_polys):
            rem = d - self.basis_degrees[i]
            if rem < 0:
                continue
            for e in _exponent_tuples(self.base_degrees, rem):
                dd, v = self._base_vector(e)
                labels.append((i, e))
                rows.append(self.ctx.multiply(v, dd, b))
        if not rows:
            raise ValueError("element lies outside the module (empty slice)")
        mat = np.vstack(rows)
        acc = EchelonAccumulator(self.ctx.dim(d))
        for r in rows:
            if not acc.insert(r):
                raise ValueError(
                    "module basis products are dependent at degree %d "
                    "(not free)" % d
                )
        _, target = self.ctx.vector(p)
        coeffs = solve_in_rowspan(mat, self.ctx.dim(d), target)
        if coeffs is None:
            raise ValueError("element lies outside the module")
        expr = {}
        for idx in np.nonzero(coeffs)[0]:
            i, e = labels[idx]
            name = self.basis_names[i]
            mono = self.coeff_ring.monomial(e)
            expr[name] = expr.get(name, self.coeff_ring.zero()) + mono
        return expr

    def expand(self, expr):
        """Inverse of express_in_basis: {basis_name: coefficient} -> ambient
        polynomial."""
        total = self.ring.zero()
        for name, coeff in expr.items():
            b = self.basis_polys[self.basis_names.index(name)]
            for mono in coeff.terms:
                term = b
                for g, e in zip(self.base_polys, mono):
                    term = term * g ** e
                total = total + term
        return total

    def format_expression(self, expr):
        parts = []
        for name in self.basis_names:
            if name not in expr:
                continue
            c = expr[name]
            cs = self.coeff_ring.format(c)
            parts.append("[%s]" % name if cs == "1"
                         else "%s*[%s]" % (cs, name))
        return " + ".join(parts) if parts else "0"


def _monomial_of(coeff):
    """The exponent tuple of a single-monomial coefficient, else None."""
    if len(coeff.terms) != 1:
        return None
    return next(iter(coeff.terms))


def _divides(e1, e2):
    return all(a <= b for a, b in zip(e1, e2))


def reduce_generators(gens, tower: ModulePresentation):
    """Express each generator in the free basis and drop the parts that are
    R-multiples of basis terms already retained from earlier generators.

    Returns (reduced_polynomials, details) where details records, per input,
    its full basis expression, its residual after reduction, and whether it
    was retained.  Coverage bookkeeping only uses single-term residuals with
    monomial coefficients (the shape arising in practice); anything else is
    retained whole.
    """
    covered = {}  # basis name -> list of monomial exponent tuples retained
    reduced = []
    details = []
    for g in gens:
        expr = tower.express_in_basis(g)
        residual = {}
        for name, coeff in expr.items():
            keep = tower.coeff_ring.zero()
            for mono in coeff.terms:
                if not any(_divides(m, mono) for m in covered.get(name, [])):
                    keep = keep + tower.coeff_ring.monomial(mono)
            if keep.terms:
                residual[name] = keep
        retained = bool(residual)
        if retained:
            reduced.append(tower.expand(residual))
            for name, coeff in residual.items():
                m = _monomial_of(coeff)
                if m is not None and len(residual) == 1:
                    covered.setdefault(name, []).append(m)
        details.append({
            "input": g,
            "expression": expr,
            "residual": residual,
            "retained": retained,
        })
    return reduced, details


def _minimal_monomials(monos):
    out = []
    for m in sorted(monos):
        if not any(_divides(o, m) for o in out):
            out.append(m)
    return out


def module_intersection_ideals(tower: ModulePresentation, U_gens, prefix_names):
    """Exact intersection of two submodules of a free R-module: V is spanned
    by the basis prefix, U by generators each of which is an R-multiple of a
    single basis element (validated).  The intersection is the direct sum,
    over the prefix, of the ideal generated by the U-coefficients landing on
    that basis element.

    Returns a report with per-basis-element ideal generators (as monomials
    of the coefficient ring, minimalized by divisibility) and the resulting
    ambient ring generators.
    """
    by_basis = {}
    expressions = []
    for g in U_gens:
        expr = tower.express_in_basis(g)
        expressions.append(expr)
        if len(expr) != 1:
            raise ValueError(
                "generator %s mixes basis elements: %s"
                % (tower.ring.format(g), tower.format_expression(expr))
            )
        (name, coeff), = expr.items()
        m = _monomial_of(coeff)
        if m is None:
            raise ValueError(
                "generator %s has a non-monomial coefficient %s"
                % (tower.ring.format(g), tower.coeff_ring.format(coeff))
            )
        by_basis.setdefault(name, []).append(m)
    ideals = {}
    ring_gens = []
    for name in prefix_names:
        monos = _minimal_monomials(by_basis.get(name, []))
        ideals[name] = [tower.coeff_ring.monomial(m) for m in monos]
        b = tower.basis_polys[tower.basis_names.index(name)]
        for m in monos:
            term = b
            for g, e in zip(tower.base_polys, m):
                term = term * g ** e
            ring_gens.append(term)
    return {
        "expressions": expressions,
        "ideals": ideals,
        "generators": ring_gens,
    }


def solve_generator_image(relation, images, unknown, degree, ctx):
    """Solve a relation for the image of one generator.

    The relation (canonical-grammar string) must be GF(2)-linear in the
    unknown generator name; every other name must be bound in `images`.
    Tries every monomial of the given degree as a basis for the unknown and
    solves the induced linear system.  Returns the unique homogeneous
    solution, raising when none exists or the solution is not unique.
    """
    from .series import _eval_expression

    ring = ctx.ring
    base = dict(images)
    base[unknown] = ring.zero()
    offset = _eval_expression(relation, base, ring)
    basis = ctx.basis(degree)
    rows = []
    for mono in basis:
        base[unknown] = ring.monomial(mono)
        val = _eval_expression(relation, base, ring) + offset
        if not val.terms:
            raise ValueError("relation is degenerate in the unknown")
        rows.append(val)
    d_out = rows[0].degree()
    mat = np.vstack([ctx.vector(r)[1] for r in rows])
    if not offset.terms:
        raise ValueError("zero offset: any multiple of the kernel solves")
    target = ctx.vector(offset)[1]
    coeffs = solve_in_rowspan(mat, ctx.dim(d_out), target)
    if coeffs is None:
        raise ValueError("relation has no homogeneous solution")
    from .gf2 import rank
    if rank(mat.copy(), ctx.dim(d_out)) < len(basis):
        raise ValueError("solution is not unique")
    sol = ring.zero()
    for i in np.nonzero(coeffs)[0]:
        sol = sol + ring.monomial(basis[i])
    return sol


def integral_equation_check(element: Polynomial, coefficients):
    """Substitute `element` for X in sum_k coefficients[k] * X^k and verify
    exact vanishing.  coefficients: {power: Polynomial or 1}.  Returns
    (vanishes, remainder)."""
    ring = element.ring
    total = ring.zero()
    for k, c in coefficients.items():
        if c == 1:
            c = ring.one()
        total = total + c * element ** k
    return (not total.terms), total
