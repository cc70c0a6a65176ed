"""Sparse multivariate polynomials over GF(2).

A monomial is an exponent tuple, one entry per ring variable.  A polynomial
is a frozenset of monomials: the coefficient of a present monomial is 1,
addition is symmetric difference, and p + p = 0 for every p.

Rings carry variable names and (optionally weighted) variable degrees.  The
canonical text grammar is shared by every module and the CLI: terms joined
by "+", each term a "*"-joined list of "name^exp" factors with "^exp"
omitted when the exponent is 1, terms sorted in descending graded-lex
order, and "0" for the zero polynomial.
"""

from __future__ import annotations

import re
from functools import lru_cache

# Bits per exponent in the packed integer key of a monomial.  Exponents are
# bounded by the degree budget (45), so 10 bits leaves ample headroom.
_KEY_BITS = 10
_KEY_MAX = (1 << _KEY_BITS) - 1


class PolyRing:
    """A polynomial ring over GF(2) with named, graded variables."""

    def __init__(self, names, degrees=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.nvars = len(names)
        self.degrees = tuple(degrees) if degrees is not None else (1,) * len(names)
        if len(self.degrees) != self.nvars:
            raise ValueError("degrees/names length mismatch")
        if any(d <= 0 for d in self.degrees):
            raise ValueError("variable degrees must be positive")
        self._index = {n: i for i, n in enumerate(names)}

    def __repr__(self):
        return "PolyRing(%s)" % ", ".join(
            "%s:%d" % (n, d) for n, d in zip(self.names, self.degrees)
        )

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.degrees == other.degrees
        )

    def __hash__(self):
        return hash((self.names, self.degrees))

    # -- construction ------------------------------------------------------

    def zero(self):
        return Polynomial(self, frozenset())

    def one(self):
        return Polynomial(self, frozenset({(0,) * self.nvars}))

    def var(self, name, exp=1):
        i = self._index[name]
        mono = tuple(exp if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, frozenset({mono}))

    def monomial(self, exps):
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError("bad exponent tuple %r" % (exps,))
        return Polynomial(self, frozenset({exps}))

    def from_terms(self, terms):
        """Polynomial from an iterable of exponent tuples (mod-2 collapse)."""
        acc = set()
        for t in terms:
            t = tuple(t)
            if t in acc:
                acc.discard(t)
            else:
                acc.add(t)
        return Polynomial(self, frozenset(acc))

    # -- degrees and ordering ----------------------------------------------

    def mono_degree(self, mono):
        return sum(e * d for e, d in zip(mono, self.degrees))

    def mono_key(self, mono):
        """Pack an exponent tuple into one int; ascending key == ascending lex."""
        key = 0
        for e in mono:
            if e > _KEY_MAX:
                raise ValueError("exponent %d exceeds key capacity" % e)
            key = (key << _KEY_BITS) | e
        return key

    def mono_sort_key(self, mono):
        """Graded-lex sort key (degree first, then lex on exponents)."""
        return (self.mono_degree(mono), mono)

    def monomial_basis(self, d):
        """All monomials of degree d, in ascending graded-lex order.

        For n variables of degree 1 the count is C(d+n-1, n-1).
        """
        if d < 0:
            raise ValueError("degree must be non-negative")
        out = []

        def rec(i, rem, prefix):
            if i == self.nvars - 1:
                w = self.degrees[i]
                if rem % w == 0:
                    out.append(prefix + (rem // w,))
                return
            w = self.degrees[i]
            for e in range(rem // w + 1):
                rec(i + 1, rem - e * w, prefix + (e,))

        rec(0, d, ())
        out.sort()
        return out

    # -- text grammar --------------------------------------------------------

    def format(self, p):
        if not p.terms:
            return "0"
        terms = sorted(p.terms, key=self.mono_sort_key, reverse=True)
        parts = []
        for mono in terms:
            factors = []
            for name, e in zip(self.names, mono):
                if e == 0:
                    continue
                factors.append(name if e == 1 else "%s^%d" % (name, e))
            parts.append("*".join(factors) if factors else "1")
        return "+".join(parts)

    def parse(self, text):
        """Parse a polynomial in the canonical grammar (whitespace tolerated)."""
        text = text.replace(" ", "")
        if text == "" or text == "0":
            return self.zero()
        acc = set()
        for term in text.split("+"):
            if term == "":
                raise ValueError("empty term in %r" % text)
            exps = [0] * self.nvars
            if term != "1":
                for factor in term.split("*"):
                    m = re.fullmatch(r"([^\^]+)(?:\^(\d+))?", factor)
                    if not m or m.group(1) not in self._index:
                        raise ValueError("bad factor %r" % factor)
                    exps[self._index[m.group(1)]] += int(m.group(2) or 1)
            mono = tuple(exps)
            if mono in acc:
                acc.discard(mono)
            else:
                acc.add(mono)
        return Polynomial(self, frozenset(acc))


class Polynomial:
    """An element of a PolyRing: a frozenset of exponent tuples."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def __add__(self, other):
        self._check(other)
        return Polynomial(self.ring, self.terms ^ other.terms)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other):
        self._check(other)
        acc = {}
        for a in self.terms:
            for b in other.terms:
                m = tuple(x + y for x, y in zip(a, b))
                acc[m] = not acc.get(m, False)
        return Polynomial(self.ring, frozenset(m for m, on in acc.items() if on))

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _check(self, other):
        if not isinstance(other, Polynomial) or other.ring != self.ring:
            raise ValueError("mixed-ring polynomial arithmetic")

    def degree(self):
        """Top degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.mono_degree(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {self.ring.mono_degree(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_component(self, d):
        return Polynomial(
            self.ring,
            frozenset(m for m in self.terms if self.ring.mono_degree(m) == d),
        )

    def __repr__(self):
        return self.ring.format(self)


@lru_cache(maxsize=None)
def stars_and_bars(d, n):
    """Number of degree-d monomials in n degree-1 variables: C(d+n-1, n-1)."""
    import math

    return math.comb(d + n - 1, n - 1)
