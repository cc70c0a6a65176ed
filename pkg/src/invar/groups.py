"""Finite group machinery: matrix groups over GF(2), permutation groups,
and generic table groups.

Matrix groups stay small (|GL_4(2)| = 20160) and live in pure Python with
rows encoded as bitmasks.  Permutation groups go up to the ~2e6-element desk
budget (A_10 has order 1,814,400), so closures are kept as numpy uint8
arrays and every whole-group scan (centralizer, normalizer, conjugacy
search) is vectorized.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from functools import lru_cache

import numpy as np

from .poly import Polynomial, PolyRing

DEFAULT_CLOSURE_BUDGET = 4_000_000


class ClosureBudgetExceeded(Exception):
    pass


# ---------------------------------------------------------------------------
# matrices over GF(2)


class MatF2:
    """An invertible n x n matrix over GF(2); row i is a bitmask over columns."""

    __slots__ = ("n", "rows")

    def __init__(self, n, rows, check=True):
        self.n = n
        self.rows = tuple(rows)
        if check and self.inverse_rows() is None:
            raise ValueError("matrix is singular")

    @classmethod
    def from_lists(cls, lists):
        n = len(lists)
        rows = []
        for row in lists:
            if len(row) != n:
                raise ValueError("matrix is not square")
            rows.append(sum((1 << j) for j, v in enumerate(row) if v & 1))
        return cls(n, rows)

    @classmethod
    def identity(cls, n):
        return cls(n, [1 << i for i in range(n)], check=False)

    def to_lists(self):
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def __mul__(self, other):
        rows = []
        for r in self.rows:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc ^= other.rows[j]
                r >>= 1
                j += 1
            rows.append(acc)
        return MatF2(self.n, rows, check=False)

    def transpose(self):
        rows = [
            sum(((self.rows[j] >> i) & 1) << j for j in range(self.n))
            for i in range(self.n)
        ]
        return MatF2(self.n, rows, check=False)

    def inverse_rows(self):
        """Rows of the inverse, or None if singular."""
        n = self.n
        left = list(self.rows)
        right = [1 << i for i in range(n)]
        r = 0
        for c in range(n):
            p = next((i for i in range(r, n) if (left[i] >> c) & 1), None)
            if p is None:
                return None
            left[r], left[p] = left[p], left[r]
            right[r], right[p] = right[p], right[r]
            for i in range(n):
                if i != r and (left[i] >> c) & 1:
                    left[i] ^= left[r]
                    right[i] ^= right[r]
            r += 1
        return right

    def inverse(self):
        rows = self.inverse_rows()
        if rows is None:
            raise ValueError("matrix is singular")
        return MatF2(self.n, rows, check=False)

    def __eq__(self, other):
        return isinstance(other, MatF2) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def is_identity(self):
        return all(self.rows[i] == (1 << i) for i in range(self.n))

    def order(self):
        k = 1
        g = self
        while not g.is_identity():
            g = g * self
            k += 1
        return k

    def __repr__(self):
        return "MatF2(%r)" % (self.to_lists(),)


def act_on_poly(g: MatF2, p: Polynomial) -> Polynomial:
    """Ring automorphism induced by g: x_i -> sum of x_j over set bits g[j][i].

    Reading images off the columns makes g -> act(g) a homomorphism:
    act(g)(act(h)(p)) = act(gh)(p).
    """
    ring = p.ring
    if g.n != ring.nvars:
        raise ValueError("matrix dimension %d != variable count %d" % (g.n, ring.nvars))
    images = []
    for i in range(g.n):
        terms = [
            tuple(1 if k == j else 0 for k in range(g.n))
            for j in range(g.n)
            if (g.rows[j] >> i) & 1
        ]
        images.append(Polynomial(ring, frozenset(terms)))
    cache = {}

    def img_power(i, a):
        if (i, a) not in cache:
            cache[(i, a)] = images[i] ** a
        return cache[(i, a)]

    result = ring.zero()
    for mono in p.terms:
        term = ring.one()
        for i, a in enumerate(mono):
            if a:
                term = term * img_power(i, a)
        result = result + term
    return result


def substitution_matrix(ring: PolyRing, subs) -> MatF2:
    """Matrix whose act_on_poly realizes the given variable substitution.

    subs maps variable names to linear polynomials (unmentioned variables are
    fixed); e.g. {"z": "z+t"} for the map z -> z+t.
    """
    n = ring.nvars
    cols = []
    for i, name in enumerate(ring.names):
        image = subs.get(name)
        if image is None:
            cols.append(1 << i)
            continue
        if isinstance(image, str):
            image = ring.parse(image)
        col = 0
        for mono in image.terms:
            if sum(mono) != 1:
                raise ValueError("substitution image %r is not linear" % image)
            col |= 1 << mono.index(1)
        cols.append(col)
    rows = [sum(((cols[i] >> j) & 1) << i for i in range(n)) for j in range(n)]
    return MatF2(n, rows)


class MatrixGroup:
    """A finite subgroup of GL_n(2), given by generators."""

    def __init__(self, n, generators, budget=100_000):
        self.n = n
        self.generators = [g for g in generators if not g.is_identity()]
        for g in self.generators:
            if g.n != n:
                raise ValueError("generator dimension mismatch")
        self.budget = budget
        self._elements = None

    @classmethod
    def from_lists(cls, lists_of_rows):
        gens = [MatF2.from_lists(m) for m in lists_of_rows]
        return cls(gens[0].n, gens)

    def elements(self):
        """Closure as a deterministically ordered list (BFS from identity)."""
        if self._elements is None:
            self._elements = closure(
                MatF2.identity(self.n), self.generators, budget=self.budget
            )
        return self._elements

    @property
    def order(self):
        return len(self.elements())

    def __contains__(self, g):
        return g in set(self.elements())

    def element_of_max_odd_order(self):
        best = None
        best_ord = 0
        for g in self.elements():
            k = g.order()
            if k % 2 == 1 and k > best_ord:
                best, best_ord = g, k
        return best

    def generating_pair_with_odd_first(self):
        """A generating set [h, g, ...] with h of maximal odd order.

        Used by the invariant engine: the fixed space of an odd-order element
        is the image of the norm projector, which is far cheaper than a full
        kernel at large slice dimensions.
        """
        h = self.element_of_max_odd_order()
        if h is None or h.is_identity():
            return None
        target = set(self.elements())
        for g in self.elements():
            sub = closure(MatF2.identity(self.n), [h, g], budget=len(target) + 1)
            if len(sub) == len(target):
                return [h, g]
        # fall back to h plus the original generators
        return [h] + list(self.generators)


def closure(identity, generators, budget=DEFAULT_CLOSURE_BUDGET, mul=None):
    """Breadth-first closure of a generator list; deterministic order."""
    if mul is None:
        mul = lambda a, b: a * b
    seen = {identity}
    order_list = [identity]
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in generators:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    order_list.append(y)
                    new.append(y)
                    if len(seen) > budget:
                        raise ClosureBudgetExceeded(
                            "closure exceeds budget of %d elements" % budget
                        )
        frontier = new
    return order_list


def closure_order_capped(identity, generators, cap, mul=None):
    """Closure size, or None as soon as it exceeds cap."""
    try:
        return len(closure(identity, generators, budget=cap, mul=mul))
    except ClosureBudgetExceeded:
        return None


# ---------------------------------------------------------------------------
# permutation groups


def perm_from_cycles(degree, cycles):
    """Permutation (as a tuple of images, 0-based) from 1-based cycles."""
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def perm_cycle_type(p):
    """Sorted tuple of cycle lengths > 1."""
    n = len(p)
    seen = [False] * n
    lens = []
    for i in range(n):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            ln += 1
        if ln > 1:
            lens.append(ln)
    return tuple(sorted(lens))


def perm_is_even(p):
    return sum(l - 1 for l in perm_cycle_type(p)) % 2 == 0


def _keys(arr, degree):
    """Pack permutation rows (N x degree uint8) into int64 keys."""
    base = degree + 1
    weights = (base ** np.arange(degree)).astype(np.int64)
    return arr.astype(np.int64) @ weights


class PermGroup:
    """A permutation group on points 1..degree, with a numpy-backed closure."""

    def __init__(self, degree, generators, budget=DEFAULT_CLOSURE_BUDGET, _elements=None):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        for g in self.generators:
            if sorted(g) != list(range(degree)):
                raise ValueError("generator is not a permutation of 0..%d" % (degree - 1))
        self.budget = budget
        self._elems = _elements  # numpy (N, degree) uint8, sorted by key
        self._keys = None
        self._inv = None

    @classmethod
    def from_cycles(cls, degree, cycle_lists, budget=DEFAULT_CLOSURE_BUDGET):
        return cls(degree, [perm_from_cycles(degree, c) for c in cycle_lists], budget)

    @classmethod
    def symmetric(cls, n):
        gens = [perm_from_cycles(n, [[1, 2]]), perm_from_cycles(n, [list(range(1, n + 1))])]
        return cls(n, gens)

    @classmethod
    def alternating(cls, n):
        gens = [perm_from_cycles(n, [[1, 2, 3]])]
        if n > 3:
            long = [list(range(1, n + 1))] if n % 2 else [list(range(2, n + 1))]
            gens.append(perm_from_cycles(n, long))
        return cls(n, gens)

    # -- closure -------------------------------------------------------------

    def elements(self):
        """Closure as a numpy array sorted by packed key."""
        if self._elems is None:
            ident = np.arange(self.degree, dtype=np.uint8)
            gens = np.array(self.generators, dtype=np.uint8)
            known = ident.reshape(1, -1)
            known_keys = _keys(known, self.degree)
            frontier = known
            while len(frontier):
                batches = [frontier[:, g] for g in gens]
                cand = np.vstack(batches)
                ckeys = _keys(cand, self.degree)
                ckeys, idx = np.unique(ckeys, return_index=True)
                cand = cand[idx]
                fresh = ~np.isin(ckeys, known_keys)
                cand, ckeys = cand[fresh], ckeys[fresh]
                if len(cand) == 0:
                    break
                known = np.vstack([known, cand])
                known_keys = np.concatenate([known_keys, ckeys])
                if len(known) > self.budget:
                    raise ClosureBudgetExceeded(
                        "closure exceeds budget of %d elements" % self.budget
                    )
                order = np.argsort(known_keys)
                known, known_keys = known[order], known_keys[order]
                frontier = cand
            self._elems = known
            self._keys = known_keys
        return self._elems

    def keys(self):
        self.elements()
        if self._keys is None:
            self._keys = _keys(self._elems, self.degree)
        return self._keys

    def inverses(self):
        if self._inv is None:
            self._inv = np.argsort(self.elements(), axis=1).astype(np.uint8)
        return self._inv

    @property
    def order(self):
        return len(self.elements())

    def contains_perm(self, p):
        key = _keys(np.array([p], dtype=np.uint8), self.degree)[0]
        keys = self.keys()
        i = np.searchsorted(keys, key)
        return i < len(keys) and keys[i] == key

    def is_subgroup(self, other):
        """True if other <= self."""
        return bool(np.all(np.isin(other.keys(), self.keys())))

    # -- vectorized whole-group scans -----------------------------------------

    def _conjugate_all(self, h):
        """g h g^-1 for every g in the closure, as an (N, degree) array."""
        G = self.elements()
        Ginv = self.inverses()
        h = np.asarray(h, dtype=np.uint8)
        S = h[Ginv]  # S[g] = h o g^-1
        return np.take_along_axis(G, S, axis=1)

    def _mask_conjugating_into(self, gens, target_keys):
        """Mask over the closure of g with g H g^-1 <= span(target)."""
        mask = np.ones(self.order, dtype=bool)
        for h in gens:
            conj = self._conjugate_all(h)
            ck = _keys(conj, self.degree)
            mask &= np.isin(ck, target_keys)
        return mask

    def normalizer(self, subgroup):
        """N_G(H) as a PermGroup; requires H <= G."""
        if not self.is_subgroup(subgroup):
            raise ValueError("H is not a subgroup of G")
        mask = self._mask_conjugating_into(subgroup.generators, subgroup.keys())
        elems = self.elements()[mask]
        gens = [tuple(e) for e in elems[: min(len(elems), 4)]]
        return PermGroup(self.degree, gens, _elements=elems)

    def centralizer_mask(self, h):
        G = self.elements()
        h = np.asarray(h, dtype=np.uint8)
        return np.all(G[:, h] == h[G], axis=1)

    def are_conjugate(self, H1, H2):
        """Conjugacy of subgroups H1, H2 <= G; returns (bool, witness or None).

        Signature pre-filter (cycle-type multiset and order), then a
        vectorized search over the closure for a conjugating element.
        """
        if subgroup_signature(H1) != subgroup_signature(H2):
            return False, None
        if H1.order != H2.order:
            return False, None
        mask = self._mask_conjugating_into(H1.generators, H2.keys())
        if not np.any(mask):
            return False, None
        # conjugation into a subgroup of equal (finite) order is onto
        g = tuple(self.elements()[np.nonzero(mask)[0][0]])
        return True, g

    def involutions(self):
        """All order-2 elements, as an (M, degree) array."""
        G = self.elements()
        sq = np.take_along_axis(G, G, axis=1)
        ident = np.arange(self.degree, dtype=np.uint8)
        mask = np.all(sq == ident, axis=1) & ~np.all(G == ident, axis=1)
        return G[mask]


def subgroup_closure(degree, gens):
    """Small-subgroup closure in pure Python; returns a sorted tuple of perms."""
    ident = tuple(range(degree))
    elems = closure(ident, [tuple(g) for g in gens], budget=10_000,
                    mul=lambda a, b: tuple(a[b[i]] for i in range(degree)))
    return tuple(sorted(elems))


def subgroup_signature(H):
    """Conjugacy-invariant signature: multiset of element cycle types."""
    elems = subgroup_closure(H.degree, H.generators)
    return tuple(sorted(Counter(perm_cycle_type(p) for p in elems).items()))


class SubgroupRef:
    """A small subgroup of an ambient PermGroup, with cached closure."""

    def __init__(self, ambient: PermGroup, gens):
        self.ambient = ambient
        self.degree = ambient.degree
        self.gens = [tuple(g) for g in gens]
        self.elems = subgroup_closure(self.degree, self.gens)
        self.elem_set = set(self.elems)
        self.key_array = np.sort(
            _keys(np.array(self.elems, dtype=np.uint8), self.degree)
        )

    @property
    def order(self):
        return len(self.elems)

    def as_perm_group(self):
        return PermGroup(self.degree, self.gens or [tuple(range(self.degree))])

    def signature(self):
        return tuple(sorted(Counter(perm_cycle_type(p) for p in self.elems).items()))

    def cycle_types(self):
        return {perm_cycle_type(p) for p in self.elems if perm_cycle_type(p)}

    def is_elementary_abelian_2(self):
        for p in self.elems:
            t = perm_cycle_type(p)
            if any(l != 2 for l in t):
                return False
        for a in self.gens:
            for b in self.gens:
                if tuple(a[b[i]] for i in range(self.degree)) != tuple(
                    b[a[i]] for i in range(self.degree)
                ):
                    return False
        return True

    def label(self):
        return structural_label(self)

    def __repr__(self):
        return "SubgroupRef(order=%d, %s)" % (self.order, self.label())


def structural_label(H: SubgroupRef):
    """V_j^i x E_r decomposition label of an elementary abelian 2-subgroup.

    Regular orbits whose setwise-supported subgroup acts regularly become V_j
    factors; size-2 orbits with no supported elements form the even part E_r.
    """
    n = H.degree
    # orbits
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in H.elems:
        for i in range(n):
            a, b = find(i), find(p[i])
            if a != b:
                parent[a] = b
    orbits = {}
    for i in range(n):
        orbits.setdefault(find(i), []).append(i)
    factors = Counter()
    leftover = []
    for orb in orbits.values():
        if len(orb) == 1:
            continue
        oset = set(orb)
        supported = [
            p for p in H.elems if all((p[i] != i) <= (i in oset) for i in range(n))
            and any(p[i] != i for i in orb)
        ]
        if len(supported) + 1 == len(orb):
            j = len(orb).bit_length() - 1
            if (1 << j) == len(orb):
                factors["V_%d" % j] += 1
                continue
        leftover.append(orb)
    label_parts = []
    for name in sorted(factors, key=lambda s: -int(s.split("_")[1])):
        cnt = factors[name]
        label_parts.append(name if cnt == 1 else "%s^%d" % (name, cnt))
    if leftover:
        if all(len(o) == 2 for o in leftover):
            label_parts.append("E_%d" % len(leftover))
        else:
            rank = len(H.elems).bit_length() - 1
            sizes = "+".join(str(len(o)) for o in sorted(leftover, key=len, reverse=True))
            label_parts.append("2^%d(orbits %s)" % (rank, sizes))
    return " x ".join(label_parts) if label_parts else "1"


def _orbit_min_keys(normalizer_elems, normalizer_invs, cands, degree):
    """Canonical (min-key) representative of each N-orbit on candidate perms."""
    ckeys = _keys(cands, degree)
    order = np.argsort(ckeys)
    cands, ckeys = cands[order], ckeys[order]
    assigned = np.zeros(len(cands), dtype=bool)
    reps = []
    for i in range(len(cands)):
        if assigned[i]:
            continue
        t = cands[i]
        S = t[normalizer_invs]
        orbit = np.take_along_axis(normalizer_elems, S, axis=1)
        okeys = np.unique(_keys(orbit, degree))
        hit = np.searchsorted(ckeys, okeys)
        hit = hit[(hit < len(ckeys)) & (ckeys[np.minimum(hit, len(ckeys) - 1)] == okeys)]
        assigned[hit] = True
        reps.append(tuple(t))
    return reps


def elementary_abelian_2_classes(G: PermGroup, involution_filter=None,
                                 extension_ok=None):
    """Conjugacy classes of elementary abelian 2-subgroups of G.

    Grows commuting involution sets rank by rank, branching over orbits of
    the current normalizer and de-duplicating classes by signature plus an
    explicit conjugacy search.  Returns a list of (SubgroupRef, maximal)
    pairs, where maximal means no admissible involution extends the group.

    involution_filter restricts the involutions considered; extension_ok may
    veto a candidate extension subgroup (both used by the cycle-type filter).
    """
    invs = G.involutions()
    if involution_filter is not None:
        keep = np.array([involution_filter(tuple(p)) for p in invs], dtype=bool)
        invs = invs[keep]
    inv_keys = _keys(invs, G.degree)
    order = np.argsort(inv_keys)
    invs, inv_keys = invs[order], inv_keys[order]

    ident = tuple(range(G.degree))
    results = []
    current = [SubgroupRef(G, [])]  # rank 0: trivial group
    while current:
        nxt = []
        for H in current:
            # admissible extensions: involutions commuting with H, outside H
            mask = np.ones(len(invs), dtype=bool)
            for h in H.gens:
                h = np.asarray(h, dtype=np.uint8)
                mask &= np.all(invs[:, h] == h[invs], axis=1)
            mask &= ~np.isin(inv_keys, H.key_array)
            cands = invs[mask]
            if len(cands) == 0:
                results.append((H, True))
                continue
            norm_mask = G._mask_conjugating_into(H.gens or [ident], H.key_array)
            N_elems = G.elements()[norm_mask]
            N_invs = np.argsort(N_elems, axis=1).astype(np.uint8)
            reps = _orbit_min_keys(N_elems, N_invs, cands, G.degree)
            grew = False
            for t in reps:
                K = SubgroupRef(G, H.gens + [t])
                if extension_ok is not None and not extension_ok(K):
                    continue
                grew = True
                sig = K.signature()
                if any(
                    sig == K2.signature()
                    and G.are_conjugate(K.as_perm_group(), K2.as_perm_group())[0]
                    for K2 in nxt
                ):
                    continue
                nxt.append(K)
            if not grew:
                results.append((H, True))
        current = nxt
    return [(H, mx) for H, mx in results if H.order > 1]


def maximal_ea2_subgroups(G: PermGroup):
    """Maximal elementary abelian 2-subgroups of G up to conjugacy, labeled."""
    classes = elementary_abelian_2_classes(G)
    return [(H, H.label()) for H, mx in classes if mx]


def filter_by_cycle_type(G: PermGroup, cycle_type):
    """Subgroup classes all of whose nonidentity elements have the given
    cycle type, maximal with respect to that condition."""
    cycle_type = tuple(sorted(cycle_type))

    def inv_ok(p):
        return perm_cycle_type(p) == cycle_type

    def ext_ok(K):
        return K.cycle_types() == {cycle_type}

    classes = elementary_abelian_2_classes(G, involution_filter=inv_ok,
                                           extension_ok=ext_ok)
    return [(H, H.label()) for H, mx in classes if mx]


# ---------------------------------------------------------------------------
# table groups and the Sylow-2 model of the Lyons group


class TableGroup:
    """A finite group given by an element list and a composition rule."""

    def __init__(self, elements, op, identity, name="table-group", rng_seed=7,
                 assoc_samples=200):
        self.elements = list(elements)
        self.op = op
        self.identity = identity
        self.name = name
        self.elem_set = set(self.elements)
        if identity not in self.elem_set:
            raise ValueError("identity not among elements")
        rng = random.Random(rng_seed)
        for _ in range(assoc_samples):
            a, b, c = (rng.choice(self.elements) for _ in range(3))
            if op(op(a, b), c) != op(a, op(b, c)):
                raise ValueError("composition rule is not associative")
        self.inverse = {}
        for a in self.elements:
            if op(a, identity) != a or op(identity, a) != a:
                raise ValueError("identity law fails for %r" % (a,))
        for a in self.elements:
            for b in self.elements:
                if op(a, b) == identity:
                    self.inverse[a] = b
                    break
            else:
                raise ValueError("no inverse for %r" % (a,))

    @property
    def order(self):
        return len(self.elements)

    def subgroup(self, gens):
        return closure(self.identity, list(gens), budget=self.order + 1, mul=self.op)

    def center(self):
        return [
            a for a in self.elements
            if all(self.op(a, b) == self.op(b, a) for b in self.elements)
        ]

    def element_order(self, a):
        k = 1
        x = a
        while x != self.identity:
            x = self.op(x, a)
            k += 1
        return k

    def involutions(self):
        return [a for a in self.elements if self.element_order(a) == 2]

    def is_normal(self, sub_elems):
        sub = set(sub_elems)
        return all(
            self.op(self.op(g, h), self.inverse[g]) in sub
            for g in self.elements
            for h in sub
        )

    def conjugate_subgroup(self, sub_elems, g):
        return frozenset(
            self.op(self.op(g, h), self.inverse[g]) for h in sub_elems
        )

    def subgroups_conjugate(self, A, B):
        A, B = frozenset(A), frozenset(B)
        for g in self.elements:
            if self.conjugate_subgroup(A, g) == B:
                return True, g
        return False, None

    def elementary_abelian_subgroups(self, size):
        """All elementary abelian subgroups of the given order (as frozensets)."""
        invs = self.involutions()
        found = set()

        def grow(elems, start):
            if len(elems) == size:
                found.add(frozenset(elems))
                return
            for i in range(start, len(invs)):
                t = invs[i]
                if t in elems:
                    continue
                if all(self.op(t, h) == self.op(h, t) for h in elems):
                    new = set(elems)
                    for h in list(elems):
                        new.add(self.op(h, t))
                    if len(new) == 2 * len(elems):
                        grow(new, i + 1)

        grow({self.identity}, 0)
        return sorted(found, key=lambda s: sorted(s))


# GF(4) = {0, 1, w, w+1} encoded as 0, 1, 2, 3 with w^2 = w+1.
_F4_MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]
_F4_FROB = [0, 1, 3, 2]  # x -> x^2


def _ut_mul(u, v):
    a, b, c = u
    a2, b2, c2 = v
    return (a ^ a2, b ^ b2 ^ _F4_MUL[a][c2], c ^ c2)


def _aut_g(u):
    return (_F4_FROB[u[0]], _F4_FROB[u[1]], _F4_FROB[u[2]])


def _aut_A(u):
    a, b, c = u
    return (c, b ^ _F4_MUL[a][c], a)


def _syl_mul(x, y):
    u, eg, eA = x[:3], x[3], x[4]
    v, fg, fA = y[:3], y[3], y[4]
    w = v
    if eg:
        w = _aut_g(w)
    if eA:
        w = _aut_A(w)
    p = _ut_mul(u, w)
    return (p[0], p[1], p[2], eg ^ fg, eA ^ fA)


@lru_cache(maxsize=1)
def sylow2_ly_model():
    """The order-256 Sylow 2-subgroup model UT_3(4):<g, A>.

    Elements are (alpha, beta, gamma, eps_g, eps_A) with the GF(4) entries
    of a unitriangular matrix packed as 2-bit values, g the Frobenius
    automorphism and A the flip automorphism m -> P m^-t P.
    """
    elements = [
        (a, b, c, eg, eA)
        for a in range(4)
        for b in range(4)
        for c in range(4)
        for eg in range(2)
        for eA in range(2)
    ]
    return TableGroup(elements, _syl_mul, (0, 0, 0, 0, 0), name="Syl2Ly")


# named elements of the Sylow model
SYL_T = (0, 2, 0, 0, 0)  # center generator with a zeta_3 entry
SYL_Z = (0, 1, 0, 0, 0)  # central involution
SYL_G = (0, 0, 0, 1, 0)
SYL_A = (0, 0, 0, 0, 1)


def sylow_subgroup_ut(gly=False):
    """Element list of UT_3(4) inside the model (eps_g = eps_A = 0)."""
    return [(a, b, c, 0, 0) for a in range(4) for b in range(4) for c in range(4)]


def sylow_ut_extension(extra):
    """UT_3(4):<x> for an automorphism coset element x, as a TableGroup."""
    full = sylow2_ly_model()
    elems = full.subgroup([(1, 0, 0, 0, 0), (2, 0, 0, 0, 0),
                           (0, 0, 1, 0, 0), (0, 0, 2, 0, 0), extra])
    return TableGroup(elems, _syl_mul, (0, 0, 0, 0, 0), name="UT3(4) ext")
