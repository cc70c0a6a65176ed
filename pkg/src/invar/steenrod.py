"""Steenrod squares on GF(2) polynomial rings with degree-1 generators, and
verification that squaring operations (plus products) generate the secondary
invariants of a Hironaka decomposition from a small seed set.

The total square is the ring endomorphism x -> x + x^2 on each variable.  On
a monomial prod x_i^(e_i) it expands to sums prod x_i^(e_i + k_i) whose
coefficients are binomial(e_i, k_i) mod 2, nonzero exactly when the bits of
k_i are a subset of the bits of e_i (Lucas).  Sq^k of a homogeneous p of
degree d is the degree d+k component of the total square.
"""

from __future__ import annotations

import itertools

import numpy as np

from .gf2 import EchelonAccumulator
from .invariants import GroupAction, _ModuleSpan
from .poly import Polynomial


def _odd_binomial_shifts(e):
    """All k with binomial(e, k) odd: submasks of e (including 0 and e)."""
    shifts = []
    k = e
    while True:
        shifts.append(k)
        if k == 0:
            return shifts
        k = (k - 1) & e


def total_square(p: Polynomial) -> Polynomial:
    """The total Steenrod square of p, for rings whose variables all have
    degree 1 (so variables are closed under squaring up to degree shift)."""
    ring = p.ring
    if any(d != 1 for d in ring.degrees):
        raise ValueError("total square needs a ring with degree-1 variables")
    out = set()
    for mono in p.terms:
        choices = [_odd_binomial_shifts(e) for e in mono]
        for ks in itertools.product(*choices):
            m = tuple(e + k for e, k in zip(mono, ks))
            out ^= {m}
    return Polynomial(ring, frozenset(out))


def sq(k: int, p: Polynomial) -> Polynomial:
    """Sq^k of a homogeneous polynomial."""
    if not p.terms:
        return p
    d = p.degree()
    if not p.is_homogeneous():
        raise ValueError("sq expects a homogeneous polynomial")
    return total_square(p).homogeneous_component(d + k)


def sq_word(ops, p: Polynomial) -> Polynomial:
    """Apply a composite Sq^{k1} Sq^{k2} ... (rightmost first)."""
    for k in reversed(list(ops)):
        p = sq(k, p)
    return p


def verify_secondary_chain(action: GroupAction, primaries, steps, products,
                           bound=None):
    """Check that Steenrod squares of seed secondaries, plus listed products,
    supply every secondary invariant of the decomposition.

    steps: list of dicts, in increasing degree order, each either
      {"name": ..., "degree": d}                      -- fresh secondary, the
        canonical echelon residue of the invariant slice at degree d; or
      {"name": ..., "degree": d, "ops": (k1, k2...), "source": name} --
        candidate Sq^{k1}...Sq^{kn}(source), required to close the shortfall
        at degree d.
    products: list of (name_a, name_b, degree) candidate products for the
      final shortfall degree; each is checked independently and the ones that
      close the shortfall are reported (at least one must).

    Returns a report dict; report["ok"] is True when every operation step
    closes its shortfall and some product closes the last one.
    """
    ctx = action.ctx
    span = _ModuleSpan(ctx, list(primaries))
    named = {}
    step_reports = []
    ok = True

    def span_accumulator(d):
        acc = EchelonAccumulator(ctx.dim(d))
        for v in span.slice_vectors(d):
            acc.insert(v)
        return acc

    for step in steps:
        d = step["degree"]
        space = action.fixed_space(d)
        acc = span_accumulator(d)
        shortfall = space.dim - acc.dim
        rep = {"name": step["name"], "degree": d, "shortfall": shortfall}
        if "ops" in step:
            cand = sq_word(step["ops"], named[step["source"]])
            rep["op"] = "Sq^" + " Sq^".join(str(k) for k in step["ops"])
            rep["source"] = step["source"]
            vec = ctx.vector(cand)[1] if cand.terms else None
            invariant = action.is_invariant(cand)
            new = vec is not None and np.any(acc.residue(vec))
            rep["invariant"] = invariant
            rep["closes"] = bool(invariant and new and shortfall == 1)
            # literal reading: the candidate coincides with the canonical
            # echelon residue of the invariant slice; modulo reading: it
            # merely falls outside the span of everything found so far.
            if rep["closes"]:
                canonical = next(
                    acc.residue(row) for row in space.basis
                    if np.any(acc.residue(row))
                )
                rep["reading"] = (
                    "literal"
                    if np.array_equal(acc.residue(vec), canonical)
                    else "modulo"
                )
                named[step["name"]] = cand
                span.add_secondary(d, vec)
            else:
                ok = False
        else:
            if shortfall != 1:
                rep["closes"] = False
                ok = False
            else:
                canonical = next(
                    acc.residue(row).copy() for row in space.basis
                    if np.any(acc.residue(row))
                )
                named[step["name"]] = ctx.poly(canonical, d)
                span.add_secondary(d, canonical)
                rep["closes"] = True
        step_reports.append(rep)

    product_reports = []
    any_product = False
    for (na, nb, d) in products:
        space = action.fixed_space(d)
        acc = span_accumulator(d)
        rep = {"product": "%s*%s" % (na, nb), "degree": d,
               "shortfall": space.dim - acc.dim}
        if na in named and nb in named:
            cand = named[na] * named[nb]
            vec = ctx.vector(cand)[1] if cand.terms else None
            closes = (
                vec is not None
                and action.is_invariant(cand)
                and bool(np.any(acc.residue(vec)))
                and space.dim - acc.dim == 1
            )
            rep["closes"] = closes
            any_product = any_product or closes
        else:
            rep["closes"] = False
        product_reports.append(rep)
    ok = ok and any_product

    return {
        "steps": step_reports,
        "products": product_reports,
        "ok": ok,
    }
