"""Poincaré-series calculus for graded rings and detection sequences.

Series are exact rational functions: an integer-coefficient numerator
polynomial in t over a denominator that is a product of factors (1 - t^d).
Equality is decided by integer cross-multiplication, never numerically.
"""

from __future__ import annotations

from collections import Counter


def _poly_mul(a, b):
    out = {}
    for da, ca in a.items():
        for db, cb in b.items():
            d = da + db
            out[d] = out.get(d, 0) + ca * cb
    return {d: c for d, c in out.items() if c}


def _poly_add(a, b, sign=1):
    out = dict(a)
    for d, c in b.items():
        out[d] = out.get(d, 0) + sign * c
    return {d: c for d, c in out.items() if c}


def _denom_poly(degs):
    out = {0: 1}
    for d in degs:
        out = _poly_mul(out, {0: 1, d: -1})
    return out


class PoincareSeries:
    """numer(t) / prod over denom of (1 - t^d), with integer numerator."""

    def __init__(self, numer, denom=()):
        if isinstance(numer, int):
            numer = {0: numer}
        elif isinstance(numer, (list, tuple)):
            numer = {d: c for d, c in enumerate(numer) if c}
        self.numer = {d: c for d, c in numer.items() if c}
        self.denom = tuple(sorted(denom))

    @classmethod
    def free(cls, primary_degrees, secondary_degrees=(0,)):
        """Series of a free module on the secondaries over a polynomial ring."""
        numer = Counter(secondary_degrees)
        return cls(dict(numer), tuple(primary_degrees))

    @classmethod
    def monomial(cls, d, c=1):
        return cls({d: c})

    def __add__(self, other):
        # common denominator = multiset union; keep it simple and exact
        self_extra = list((Counter(self.denom) - Counter(other.denom)).elements())
        other_extra = list((Counter(other.denom) - Counter(self.denom)).elements())
        numer = _poly_add(
            _poly_mul(self.numer, _denom_poly(other_extra)),
            _poly_mul(other.numer, _denom_poly(self_extra)),
        )
        denom = tuple(sorted((Counter(self.denom) | Counter(other.denom)).elements()))
        return PoincareSeries(numer, denom)

    def __sub__(self, other):
        return self + PoincareSeries(
            {d: -c for d, c in other.numer.items()}, other.denom
        )

    def __mul__(self, other):
        if isinstance(other, int):
            other = PoincareSeries({0: other})
        return PoincareSeries(
            _poly_mul(self.numer, other.numer), self.denom + other.denom
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PoincareSeries):
            return NotImplemented
        self_extra = list((Counter(self.denom) - Counter(other.denom)).elements())
        other_extra = list((Counter(other.denom) - Counter(self.denom)).elements())
        return _poly_mul(self.numer, _denom_poly(other_extra)) == _poly_mul(
            other.numer, _denom_poly(self_extra)
        )

    def __hash__(self):
        raise TypeError("PoincareSeries is not hashable")

    def expand(self, bound):
        """Coefficients of the formal power series, degrees 0..bound."""
        coeffs = [0] * (bound + 1)
        for d, c in self.numer.items():
            if 0 <= d <= bound:
                coeffs[d] += c
        for d in self.denom:
            for i in range(d, bound + 1):
                coeffs[i] += coeffs[i - d]
        return coeffs

    def __repr__(self):
        terms = []
        for d in sorted(self.numer):
            c = self.numer[d]
            base = "t^%d" % d if d else "1"
            terms.append(base if c == 1 else "%d*%s" % (c, base))
        num = " + ".join(terms).replace("+ -", "- ") or "0"
        if not self.denom:
            return num
        den = "".join("(1-t^%d)" % d for d in self.denom)
        return "[%s] / %s" % (num, den)


def series_eq(s1, s2):
    return s1 == s2


def expand(s, bound):
    return s.expand(bound)


# ---------------------------------------------------------------------------
# ring descriptors


class RingDescriptor:
    """A graded ring given in free-module form, presented form, or as a
    handle to a computed decomposition.

    Free form: primary degrees plus secondary (module generator) degrees.
    Presented form: generators and relation strings; its series must be
    annotated, never derived (quotient-ring normal forms are out of scope).
    """

    def __init__(self, kind, name="", primaries=(), secondaries=(0,),
                 generators=(), relations=(), series=None, handle=None):
        self.kind = kind
        self.name = name
        self.primaries = tuple(primaries)
        self.secondaries = tuple(secondaries)
        self.generators = tuple(generators)  # (name, degree) pairs
        self.relations = tuple(relations)
        self.annotated_series = series
        self.handle = handle

    @classmethod
    def free(cls, primaries, secondaries=(0,), name=""):
        return cls("free", name=name, primaries=primaries, secondaries=secondaries)

    @classmethod
    def presented(cls, generators, relations, series=None, name=""):
        return cls("presented", name=name, generators=generators,
                   relations=relations, series=series)

    @classmethod
    def from_decomposition(cls, dec, name=""):
        return cls("handle", name=name, handle=dec)

    def series(self):
        if self.kind == "free":
            return PoincareSeries.free(self.primaries, self.secondaries)
        if self.kind == "handle":
            return PoincareSeries.free(
                self.handle.primary_degrees, self.handle.secondary_degrees
            )
        if self.annotated_series is not None:
            return self.annotated_series
        raise ValueError(
            "presented ring %r carries no series annotation" % (self.name,)
        )


def presented_ring(generators, relations, series=None, name=""):
    return RingDescriptor.presented(generators, relations, series, name)


def series_of(descriptor):
    return descriptor.series()


# ---------------------------------------------------------------------------
# detection sequences


class DetectionSequence:
    """0 -> radical -> middle -> (+) detectors -> quotient -> 0.

    Exactness at series level means
    P(middle) = P(radical) + sum of detector series - P(quotient).
    """

    def __init__(self, name, detectors, quotient, radical=None, middle=None):
        self.name = name
        self.detectors = list(detectors)
        self.quotient = quotient
        self.radical = radical
        self.middle = middle

    def implied_middle_series(self):
        s = PoincareSeries({})
        if self.radical is not None:
            s = s + self.radical.series()
        for d in self.detectors:
            s = s + d.series()
        return s - self.quotient.series()


def verify_detection(seq, bound=60):
    """Check the exactness identity, or define P(middle) and check that its
    expansion is a plausible dimension series (non-negative)."""
    implied = seq.implied_middle_series()
    coeffs = implied.expand(bound)
    report = {
        "name": seq.name,
        "bound": bound,
        "series": implied,
        "expansion": coeffs,
        "nonnegative": all(c >= 0 for c in coeffs),
        "middle_known": seq.middle is not None,
        "exact": None,
        "first_mismatch": None,
        "ok": False,
    }
    if seq.middle is not None:
        known = seq.middle.series()
        report["exact"] = known == implied
        if not report["exact"]:
            kc = known.expand(bound)
            for d in range(bound + 1):
                if kc[d] != coeffs[d]:
                    report["first_mismatch"] = d
                    break
        report["ok"] = report["exact"] and report["nonnegative"]
    else:
        report["ok"] = report["nonnegative"]
    return report


# ---------------------------------------------------------------------------
# ring-map verification on presented rings


def verify_ring_map(source, images, ring):
    """Substitute generator images into every relation of a presented ring.

    images maps generator names to polynomials (or canonical-grammar strings)
    in the target ring; relations are strings in the same grammar over
    generator names.  Returns a per-relation report; a relation passes when
    it expands to zero in the target.
    """
    from .poly import Polynomial

    imgs = {}
    for name, val in images.items():
        imgs[name] = ring.parse(val) if isinstance(val, str) else val
    missing = [n for n, _ in source.generators if n not in imgs]
    if missing:
        raise ValueError("no image given for generators: %s" % ", ".join(missing))

    results = []
    for rel in source.relations:
        value = _eval_expression(rel, imgs, ring)
        results.append({"relation": rel, "image": value, "ok": not value.terms})
    return {
        "name": source.name,
        "relations": results,
        "ok": all(r["ok"] for r in results),
    }


def _eval_expression(expr, values, ring):
    """Evaluate a canonical-grammar expression with names bound to polynomials."""
    total = ring.zero()
    expr = expr.strip()
    if expr == "0":
        return total
    for term in expr.split("+"):
        prod = ring.one()
        for factor in term.split("*"):
            factor = factor.strip()
            if "^" in factor:
                base, exp = factor.split("^")
                exp = int(exp)
            else:
                base, exp = factor, 1
            base = base.strip()
            if base not in values:
                raise ValueError("unknown name %r in expression" % base)
            prod = prod * (values[base] ** exp)
        total = total + prod
    return total
