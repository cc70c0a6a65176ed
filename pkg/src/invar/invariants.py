"""Graded invariant theory over GF(2): per-degree fixed spaces, Dickson
invariants, primary-invariant (HSOP) validation, the secondary-invariant
shortfall loop, freeness verification, and invariants of graded modules.

Per-degree computations are vectorized: the action of a group element on the
degree-d slice is materialized as a bit-packed matrix built incrementally
from degree d-1 (each monomial is variable * smaller monomial), and fixed
spaces come from kernels of (rho_d(g) - I).  The fixed space of the first
generator is computed at full slice size; the remaining generators are then
restricted to that (much smaller) basis, which keeps the top degrees of the
45-degree runs affordable.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from numba import njit

from . import gf2
from .gf2 import BitVectorSpace, EchelonAccumulator, left_kernel, mat_mul_rows
from .groups import (
    MatF2,
    MatrixGroup,
    act_on_poly,
    closure_order_capped,
    substitution_matrix,
)
from .poly import Polynomial, PolyRing
from .series import PoincareSeries


# ---------------------------------------------------------------------------
# graded slices of a polynomial ring


class SliceContext:
    """Cached per-degree monomial bases of a polynomial ring, with packed
    vector conversion and multiplication index maps."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self._basis = {}
        self._keys = {}

    def basis(self, d):
        if d not in self._basis:
            monos = self.ring.monomial_basis(d)
            self._basis[d] = monos
            self._keys[d] = np.array(
                [self.ring.mono_key(m) for m in monos], dtype=np.int64
            )
        return self._basis[d]

    def keys(self, d):
        self.basis(d)
        return self._keys[d]

    def dim(self, d):
        return len(self.basis(d))

    def index_of(self, mono):
        d = self.ring.mono_degree(mono)
        keys = self.keys(d)
        i = int(np.searchsorted(keys, self.ring.mono_key(mono)))
        if i >= len(keys) or keys[i] != self.ring.mono_key(mono):
            raise KeyError("monomial not in basis")
        return d, i

    def vector(self, p: Polynomial):
        """Pack a homogeneous polynomial as a bit vector over its slice."""
        if not p.terms:
            raise ValueError("cannot infer the degree of the zero polynomial")
        d = p.degree()
        if not p.is_homogeneous():
            raise ValueError("polynomial is not homogeneous")
        keys = self.keys(d)
        tk = np.array([self.ring.mono_key(m) for m in p.terms], dtype=np.int64)
        pos = np.searchsorted(keys, tk)
        vec = gf2.zeros(1, len(keys))[0]
        for c in pos:
            vec[c >> 6] |= np.uint64(1) << np.uint64(int(c) & 63)
        return d, vec

    def poly(self, vec, d):
        monos = self.basis(d)
        bits = np.nonzero(gf2.unpack_vector(vec, len(monos)))[0]
        return Polynomial(self.ring, frozenset(monos[i] for i in bits))

    def multiply(self, vec, d_src, p: Polynomial):
        """vec (a packed degree-d_src slice vector) times a homogeneous p."""
        d_dst = d_src + p.degree()
        n_src, n_dst = self.dim(d_src), self.dim(d_dst)
        src_bits = np.nonzero(gf2.unpack_vector(vec, n_src))[0]
        if len(src_bits) == 0:
            return gf2.zeros(1, n_dst)[0]
        src_keys = self.keys(d_src)[src_bits]
        dst_keys = self.keys(d_dst)
        counts = np.zeros(n_dst, dtype=np.int64)
        for term in p.terms:
            pos = np.searchsorted(dst_keys, src_keys + self.ring.mono_key(term))
            counts += np.bincount(pos, minlength=n_dst)
        return gf2.pack_vector((counts & 1).astype(np.uint8))


@njit(cache=True)
def _scatter_rows(prev, src_idx, col_map, out, out_rows):
    """out[out_rows[t]] ^= scatter of prev[src_idx[t]] through col_map."""
    for t in range(out_rows.shape[0]):
        r = out_rows[t]
        s = src_idx[t]
        for c in range(col_map.shape[0]):
            if (prev[s, c >> 6] >> np.uint64(c & 63)) & np.uint64(1):
                cc = col_map[c]
                out[r, cc >> 6] ^= np.uint64(1) << np.uint64(cc & 63)


def _identity_packed(n):
    rows = gf2.zeros(n, n)
    idx = np.arange(n)
    rows[idx, idx >> 6] |= np.uint64(1) << (idx & 63).astype(np.uint64)
    return rows


class _SubstitutionTower:
    """Incrementally built slice matrices rho_d(g) for one group element.

    Row m of rho_d is the slice vector of g acting on the m-th degree-d
    basis monomial; it is assembled from degree d-1 via the factorization
    monomial = x_i * smaller with i the least variable present.
    """

    def __init__(self, ctx: SliceContext, g: MatF2):
        self.ctx = ctx
        self.g = g
        ring = ctx.ring
        if any(w != 1 for w in ring.degrees):
            raise ValueError("slice towers require degree-1 variables")
        # column i of g lists the variables in the image of x_i
        self.var_images = [
            [j for j in range(g.n) if (g.rows[j] >> i) & 1] for i in range(g.n)
        ]
        self.degree = 0
        self.rows = _identity_packed(1)

    def advance(self):
        """Build rho_{d+1} from rho_d, replacing the stored level."""
        ctx = self.ctx
        ring = ctx.ring
        d = self.degree + 1
        basis = ctx.basis(d)
        n_new, n_prev = len(basis), ctx.dim(d - 1)
        prev_keys = ctx.keys(d - 1)
        out = gf2.zeros(n_new, n_new)
        # group target rows by the least variable of the monomial
        by_var = [[] for _ in range(ring.nvars)]
        for r, mono in enumerate(basis):
            i = next(k for k, a in enumerate(mono) if a)
            by_var[i].append(r)
        var_keys = [
            ring.mono_key(tuple(1 if k == i else 0 for k in range(ring.nvars)))
            for i in range(ring.nvars)
        ]
        new_keys = ctx.keys(d)
        for i in range(ring.nvars):
            if not by_var[i]:
                continue
            out_rows = np.array(by_var[i], dtype=np.int64)
            src_idx = np.searchsorted(prev_keys, new_keys[out_rows] - var_keys[i])
            for j in self.var_images[i]:
                col_map = np.searchsorted(new_keys, prev_keys + var_keys[j])
                _scatter_rows(self.rows, src_idx, col_map, out, out_rows)
        self.rows = out
        self.degree = d


class GroupAction:
    """A matrix group acting on a polynomial ring by linear substitutions."""

    def __init__(self, ring: PolyRing, group, optimize_generators=True):
        self.ring = ring
        if isinstance(group, MatrixGroup):
            self.group = group
        else:
            self.group = MatrixGroup(ring.nvars, list(group))
        self.ctx = SliceContext(ring)
        self._spaces = {}
        self._slice_gens = None
        self._optimize = optimize_generators

    @property
    def group_order(self):
        return self.group.order

    def slice_generators(self):
        """Generator list used for slice kernels, smallest fixed space first.

        An element of odd order m has fixed-space dimension about N/m on an
        N-dimensional slice, so eliminating it first leaves only a small
        basis for the remaining generators.
        """
        if self._slice_gens is None:
            gens = list(self.group.generators)
            if self._optimize and gens:
                pair = self.group.generating_pair_with_odd_first()
                if pair is not None:
                    gens = pair
            self._slice_gens = gens
        return self._slice_gens

    def _ensure_spaces(self, bound):
        if all(d in self._spaces for d in range(bound + 1)):
            return
        gens = self.slice_generators()
        towers = [_SubstitutionTower(self.ctx, g) for g in gens]
        for d in range(bound + 1):
            if d > 0:
                for t in towers:
                    t.advance()
            if d in self._spaces:
                continue
            self._spaces[d] = self._fixed_space([t.rows for t in towers], d)

    def _fixed_space(self, mats, d):
        n = self.ctx.dim(d)
        if not mats:
            return BitVectorSpace.full_space(n)
        basis = None
        for M in mats:
            if basis is None:
                kernel = left_kernel(M ^ _identity_packed(n))
                basis = kernel.basis
            else:
                if basis.shape[0] == 0:
                    break
                residue = mat_mul_rows(basis, M) ^ basis
                coeffs = left_kernel(residue)  # over current basis rows
                basis = mat_mul_rows(coeffs.basis, basis)
        return BitVectorSpace.from_rows(n, basis)

    def fixed_space(self, d) -> BitVectorSpace:
        self._ensure_spaces(d)
        return self._spaces[d]

    def invariant_dims(self, bound):
        self._ensure_spaces(bound)
        return [self._spaces[d].dim for d in range(bound + 1)]

    def invariant_basis(self, d):
        space = self.fixed_space(d)
        polys = [self.ctx.poly(row, d) for row in space.basis]
        return space, polys

    def is_invariant(self, p: Polynomial):
        return all(
            act_on_poly(g, p).terms == p.terms for g in self.group.generators
        )


# ---------------------------------------------------------------------------
# Dickson invariants


def dickson(n, ring=None):
    """Dickson invariants of GL_n(2): degrees 2^n - 2^i for i = n-1 .. 0.

    Returned as a dict degree -> Polynomial.  They are read off as the
    coefficients of prod over all 2^n linear forms lam of (X + lam), which
    equals X^{2^n} + sum d_{2^n - 2^i} X^{2^i}.
    """
    if ring is None:
        ring = default_dickson_ring(n)
    if ring.nvars != n:
        raise ValueError("ring has %d variables, expected %d" % (ring.nvars, n))
    # product over linear forms, tracked as a polynomial in X with
    # coefficients in the ring: dict X-exponent -> Polynomial
    prod = {1: ring.one()}  # the factor (X + 0) = X
    for mask in range(1, 1 << n):
        lam = Polynomial(
            ring,
            frozenset(
                tuple(1 if k == j else 0 for k in range(n))
                for j in range(n)
                if (mask >> j) & 1
            ),
        )
        new = {}
        for e, c in prod.items():
            new[e + 1] = new.get(e + 1, ring.zero()) + c
            new[e] = new.get(e, ring.zero()) + c * lam
        prod = new
    out = {}
    for i in range(n):
        c = prod.get(1 << i, ring.zero())
        if c.terms:
            out[(1 << n) - (1 << i)] = c
    return out


_DICKSON_VARS = {1: ["x"], 2: ["w", "t"], 3: ["z", "t", "w"], 4: ["w1", "x1", "y1", "z1"]}


def default_dickson_ring(n):
    return PolyRing(_DICKSON_VARS[n])


def embed(p: Polynomial, target: PolyRing) -> Polynomial:
    """Rename-free embedding: map each variable to the same-named variable."""
    pos = [target._index[name] for name in p.ring.names]
    terms = []
    for mono in p.terms:
        new = [0] * target.nvars
        for i, a in enumerate(mono):
            new[pos[i]] = a
        terms.append(tuple(new))
    return Polynomial(target, frozenset(terms))


def relative_dickson_top(n, ring=None):
    """Check the expansion of the top-degree Dickson class of n variables
    over the Dickson classes of the last n-1 variables:

        d_{2^{n-1}} = u^{2^{n-1}} + sum_i u^{2^i} d'_{2^{n-1}-2^i}
                      + (d'_{2^{n-1}-2^{n-2}})^2

    with u the first variable.  Returns (holds, lhs, rhs).
    """
    if n < 2 or n > 4:
        raise ValueError("n must be 2, 3, or 4")
    if ring is None:
        ring = default_dickson_ring(n)
    top = dickson(n, ring)[1 << (n - 1)]
    sub_ring = PolyRing(list(ring.names[1:]))
    sub = {deg: embed(p, ring) for deg, p in dickson(n - 1, sub_ring).items()}
    u = ring.var(ring.names[0])
    rhs = u ** (1 << (n - 1))
    for i in range(n - 1):
        deg = (1 << (n - 1)) - (1 << i)
        if deg:
            rhs = rhs + (u ** (1 << i)) * sub[deg]
        else:  # n = 2: d'_1 pairs with u^{2^0}
            rhs = rhs + u * sub[1]
    low = sub[(1 << (n - 1)) - (1 << (n - 2))] if n > 1 else None
    rhs = rhs + low * low
    return top.terms == rhs.terms, top, rhs


# ---------------------------------------------------------------------------
# products of fixed polynomials as slice vectors (subalgebra DP)


def _exponent_tuples(degrees, total):
    """All exponent tuples e with sum e_i * degrees_i = total."""
    if not degrees:
        return [()] if total == 0 else []
    out = []
    head = degrees[0]
    for e in range(total // head + 1):
        for rest in _exponent_tuples(degrees[1:], total - e * head):
            out.append((e,) + rest)
    return out


class ProductSpan:
    """Slice vectors of all power products of a fixed polynomial list,
    computed by dynamic programming on exponent tuples."""

    def __init__(self, ctx: SliceContext, polys):
        self.ctx = ctx
        self.polys = list(polys)
        self.degrees = [p.degree() for p in self.polys]
        zero_exp = (0,) * len(self.polys)
        _, one_vec = ctx.vector(ctx.ring.one())
        self._vecs = {zero_exp: (0, one_vec)}

    def vector(self, exponents):
        exponents = tuple(exponents)
        if exponents not in self._vecs:
            i = next(k for k, e in enumerate(exponents) if e)
            prev = list(exponents)
            prev[i] -= 1
            d_prev, v_prev = self.vector(tuple(prev))
            v = self.ctx.multiply(v_prev, d_prev, self.polys[i])
            self._vecs[exponents] = (d_prev + self.degrees[i], v)
        return self._vecs[exponents]

    def slice_vectors(self, d):
        return [self.vector(e)[1] for e in _exponent_tuples(self.degrees, d)]

    def slice_space(self, d):
        acc = EchelonAccumulator(self.ctx.dim(d))
        for v in self.slice_vectors(d):
            acc.insert(v)
        return acc.to_space()


def subalgebra_dims(polys, bound, ctx=None):
    """Graded dimensions of the subalgebra generated by the given polynomials."""
    if ctx is None:
        ctx = SliceContext(polys[0].ring)
    span = ProductSpan(ctx, polys)
    return [span.slice_space(d).dim for d in range(bound + 1)]


def validate_hsop(polys, action: GroupAction, bound):
    """Check proposed primary invariants: invariance plus algebraic
    independence through the bound (subalgebra dims = free-series dims).

    Returns (ok, first_failure_degree_or_None).
    """
    for p in polys:
        if not action.is_invariant(p):
            raise ValueError("proposed primary %r is not invariant" % p)
    expected = PoincareSeries.free([p.degree() for p in polys]).expand(bound)
    actual = subalgebra_dims(polys, bound, action.ctx)
    for d in range(bound + 1):
        if actual[d] != expected[d]:
            return False, d
    return True, None


# ---------------------------------------------------------------------------
# Hironaka decomposition via the shortfall loop


class HironakaDecomposition:
    """Primary invariants plus module generators (secondaries) over them."""

    def __init__(self, ring, primaries, secondaries, group_order=None):
        self.ring = ring
        self.primaries = list(primaries)
        self.secondaries = list(secondaries)
        self.group_order = group_order

    @property
    def primary_degrees(self):
        return [p.degree() for p in self.primaries]

    @property
    def secondary_degrees(self):
        return [0 if not s.terms or s.degree() is None else s.degree()
                for s in self.secondaries]

    def series(self):
        return PoincareSeries.free(self.primary_degrees, self.secondary_degrees)

    def expected_count(self):
        return math.prod(self.primary_degrees) // self.group_order

    def digest(self):
        import hashlib

        text = "\n".join(
            [repr(p) for p in self.primaries] + [repr(s) for s in self.secondaries]
        )
        return hashlib.sha256(text.encode()).hexdigest()


class _ModuleSpan:
    """Slice vectors of the module generated by `secondaries` over the
    subring generated by `primaries` (DP over primary exponent tuples)."""

    def __init__(self, ctx, primaries):
        self.ctx = ctx
        self.primaries = list(primaries)
        self.prim_degs = [p.degree() for p in self.primaries]
        self.sec = []  # (degree, base vector)
        self._vecs = {}

    def add_secondary(self, d, vec):
        j = len(self.sec)
        self.sec.append((d, vec))
        self._vecs[(j, (0,) * len(self.primaries))] = (d, vec)
        return j

    def vector(self, j, exponents):
        key = (j, tuple(exponents))
        if key not in self._vecs:
            i = next(k for k, e in enumerate(exponents) if e)
            prev = list(exponents)
            prev[i] -= 1
            d_prev, v_prev = self.vector(j, tuple(prev))
            v = self.ctx.multiply(v_prev, d_prev, self.primaries[i])
            self._vecs[key] = (d_prev + self.prim_degs[i], v)
        return self._vecs[key]

    def slice_vectors(self, d, upto=None):
        count = len(self.sec) if upto is None else upto
        out = []
        for j in range(count):
            sd = self.sec[j][0]
            for e in _exponent_tuples(self.prim_degs, d - sd):
                out.append(self.vector(j, e)[1])
        return out


def secondary_invariants(action: GroupAction, primaries, bound=45,
                         collect_tables=()):
    """Discover secondary invariants by the shortfall method.

    Walks degrees upward comparing the dimension of the module generated by
    the primaries and the secondaries found so far against the full invariant
    dimension; at each shortfall it adjoins the canonical echelon residues of
    the invariant basis outside the current span.  Stops when the count
    reaches (product of primary degrees)/|G|.

    collect_tables: degrees D for which the intermediate module-dimension
    table (after the first len == k secondaries, for each k) is recorded.
    Returns (HironakaDecomposition, report dict).
    """
    order = action.group_order
    prim_degs = [p.degree() for p in primaries]
    if math.prod(prim_degs) % order:
        raise ValueError("product of primary degrees is not divisible by |G|")
    target = math.prod(prim_degs) // order
    span = _ModuleSpan(action.ctx, primaries)
    secondaries = []
    shortfall_degrees = []
    inv_dims = []
    module_dims = []
    for d in range(bound + 1):
        space = action.fixed_space(d)
        inv_dims.append(space.dim)
        acc = EchelonAccumulator(action.ctx.dim(d))
        for v in span.slice_vectors(d):
            acc.insert(v)
        module_dims.append(acc.dim)
        if acc.dim > space.dim:
            raise AssertionError(
                "module span exceeds invariants at degree %d (non-invariant "
                "primary or secondary)" % d
            )
        if acc.dim < space.dim:
            shortfall_degrees.append(d)
            for row in space.basis:
                res = acc.residue(row)
                if np.any(res):
                    vec = res.copy()
                    acc.insert(vec)
                    poly = action.ctx.poly(vec, d)
                    secondaries.append(poly)
                    span.add_secondary(d, vec)
            module_dims[-1] = acc.dim
        if len(secondaries) == target:
            dec = HironakaDecomposition(
                action.ring, primaries, secondaries, group_order=order
            )
            report = {
                "secondary_degrees": [s.degree() if s.terms else 0 for s in secondaries],
                "shortfall_degrees": shortfall_degrees,
                "invariant_dims": inv_dims,
                "module_dims": module_dims,
                "count": len(secondaries),
                "target": target,
                "complete": True,
                "tables": {},
            }
            if collect_tables:
                report["tables"] = intermediate_tables(
                    action, primaries, secondaries, max(collect_tables)
                )
            return dec, report
    raise ValueError(
        "secondary count %d/%d not reached within degree %d"
        % (len(secondaries), target, bound)
    )


def intermediate_tables(action, primaries, secondaries, bound):
    """Module dimension tables for each prefix of the secondary list:
    tables[k][d] = dim of (R*s_0 + ... + R*s_{k-1}) in degree d."""
    span = _ModuleSpan(action.ctx, primaries)
    for s in secondaries:
        d, vec = action.ctx.vector(s)
        span.add_secondary(d, vec)
    tables = {}
    for k in range(1, len(secondaries) + 1):
        dims = []
        for d in range(bound + 1):
            acc = EchelonAccumulator(action.ctx.dim(d))
            for v in span.slice_vectors(d, upto=k):
                acc.insert(v)
            dims.append(acc.dim)
        tables[k] = dims
    return tables


def freeness_check(dec: HironakaDecomposition, action: GroupAction, bound):
    """Bounded Cohen-Macaulay check: the decomposition's free-module series
    must match the invariant dimensions degree by degree.

    Returns (ok, first_mismatch_degree_or_None).
    """
    expected = dec.series().expand(bound)
    actual = action.invariant_dims(bound)
    for d in range(bound + 1):
        if expected[d] != actual[d]:
            return False, d
    return True, None


# ---------------------------------------------------------------------------
# bundled searches: the degree-24 series is the arbiter in both


def gl_n_2(n):
    """GL_n(2) as a MatrixGroup (transvection + cyclic permutation)."""
    t = MatF2.identity(n).to_lists()
    t[0][1] = 1
    c = [[1 if j == (i + 1) % n else 0 for j in range(n)] for i in range(n)]
    return MatrixGroup.from_lists([t, c])


def l3_2_on_2_4():
    """The 4-dimensional indecomposable action of L_3(2): the subgroup of
    GL_4(2) generated by the transposes of

        A = [1110,1010,1100,1101],  B = [0010,0100,1110,1101].

    The transpose (column) convention keeps the span of the last three
    variables invariant, so the 3-variable Dickson algebra lifts into the
    invariant ring.
    """
    A = [[1, 1, 1, 0], [1, 0, 1, 0], [1, 1, 0, 0], [1, 1, 0, 1]]
    B = [[0, 0, 1, 0], [0, 1, 0, 0], [1, 1, 1, 0], [1, 1, 0, 1]]
    gens = [MatF2.from_lists(A).transpose(), MatF2.from_lists(B).transpose()]
    return MatrixGroup(4, gens)


def d8_on_3(ring=None):
    """The order-8 group generated by z -> z+t, z -> z+w, t -> t+w."""
    if ring is None:
        ring = default_dickson_ring(3)
    gens = [
        substitution_matrix(ring, {"z": "z+t"}),
        substitution_matrix(ring, {"z": "z+w"}),
        substitution_matrix(ring, {"t": "t+w"}),
    ]
    return MatrixGroup(3, gens)


A7_SERIES = PoincareSeries.free([8, 12, 14, 15], [0, 18, 20, 21, 24, 25, 27, 45])


@lru_cache(maxsize=1)
def a7_search():
    """Find the subgroup of GL_4(2) of order 2520 extending the 4-dimensional
    L_3(2) whose invariant dimensions match the known degree-45 series.

    GL_4(2) is partitioned into double cosets of the L_3(2); one extending
    element per double coset suffices.  A candidate must close to order
    exactly 2520 and match the series coefficients through degree 24 (order
    alone does not pin the conjugacy class).
    """
    L = l3_2_on_2_4()
    lgens = L.generators
    gl = gl_n_2(4)
    all_elems = gl.elements()
    expected = A7_SERIES.expand(24)
    assigned = set()
    ring = PolyRing(["w1", "x1", "y1", "z1"])
    for rep in all_elems:
        if rep in assigned:
            continue
        # double coset L * rep * L
        coset = {rep}
        frontier = [rep]
        while frontier:
            new = []
            for x in frontier:
                for g in lgens:
                    for y in (g * x, x * g):
                        if y not in coset:
                            coset.add(y)
                            new.append(y)
            frontier = new
        assigned |= coset
        order = closure_order_capped(MatF2.identity(4), lgens + [rep], cap=2520)
        if order != 2520:
            continue
        group = MatrixGroup(4, lgens + [rep])
        action = GroupAction(ring, group)
        if action.invariant_dims(24) == expected:
            return group
    raise ValueError("no order-2520 overgroup matches the degree-45 series")


@lru_cache(maxsize=1)
def s4_search():
    """Find the order-24 overgroup of the dihedral group inside GL_3(2) whose
    invariant ring is the free polynomial ring on degrees 2, 3, 4."""
    ring = default_dickson_ring(3)
    d8 = d8_on_3(ring)
    expected = PoincareSeries.free([2, 3, 4]).expand(24)
    for g in gl_n_2(3).elements():
        if g.order() != 3:
            continue
        order = closure_order_capped(MatF2.identity(3), d8.generators + [g], cap=24)
        if order != 24:
            continue
        group = MatrixGroup(3, d8.generators + [g])
        action = GroupAction(ring, group)
        if action.invariant_dims(24) == expected:
            return group
    raise ValueError("no order-24 overgroup has the expected invariant ring")


# ---------------------------------------------------------------------------
# graded modules over a polynomial ring, with a group action


class GradedModule:
    """A free graded module over a polynomial ring, with a finite group
    acting compatibly on ring variables (by linear substitution) and on the
    module basis (by constant matrices)."""

    def __init__(self, ring, gen_names, gen_degrees, ring_mats, gen_images):
        self.ring = ring
        self.gen_names = list(gen_names)
        self.gen_degrees = list(gen_degrees)
        self.ring_mats = list(ring_mats)
        # gen_images[k][name] = list of names in the image of `name` under
        # group generator k (unlisted names are fixed)
        self.gen_images = [
            {n: list(img.get(n, [n])) for n in gen_names} for img in gen_images
        ]
        self.ctx = SliceContext(ring)

    def slice_basis(self, d):
        out = []
        for gi, (gname, gdeg) in enumerate(zip(self.gen_names, self.gen_degrees)):
            if d - gdeg < 0:
                continue
            for mono in self.ctx.basis(d - gdeg):
                out.append((gi, mono))
        return out

    def element_vector(self, coeffs, d):
        """Pack {gen_name: Polynomial} into a degree-d slice vector."""
        basis = self.slice_basis(d)
        index = {be: i for i, be in enumerate(basis)}
        vec = gf2.zeros(1, len(basis))[0]
        for gname, poly in coeffs.items():
            gi = self.gen_names.index(gname)
            for mono in poly.terms:
                c = index[(gi, mono)]
                vec[c >> 6] ^= np.uint64(1) << np.uint64(c & 63)
        return vec

    def vector_element(self, vec, d):
        basis = self.slice_basis(d)
        bits = np.nonzero(gf2.unpack_vector(vec, len(basis)))[0]
        coeffs = {}
        for b in bits:
            gi, mono = basis[b]
            name = self.gen_names[gi]
            coeffs[name] = coeffs.get(name, self.ring.zero()) + Polynomial(
                self.ring, frozenset([mono])
            )
        return coeffs

    def fixed_space(self, d):
        basis = self.slice_basis(d)
        index = {be: i for i, be in enumerate(basis)}
        n = len(basis)
        if n == 0:
            return BitVectorSpace.zero_space(0), basis
        space = BitVectorSpace.full_space(n)
        for mat, images in zip(self.ring_mats, self.gen_images):
            rows = gf2.zeros(n, n)
            for r, (gi, mono) in enumerate(basis):
                mono_img = act_on_poly(mat, Polynomial(self.ring, frozenset([mono])))
                for tgt_name in images[self.gen_names[gi]]:
                    ti = self.gen_names.index(tgt_name)
                    for m2 in mono_img.terms:
                        c = index[(ti, m2)]
                        rows[r, c >> 6] ^= np.uint64(1) << np.uint64(c & 63)
            space = space.intersect(left_kernel(rows ^ _identity_packed(n)))
        return space, basis

    def format_element(self, coeffs):
        parts = []
        for name in self.gen_names:
            if name in coeffs and coeffs[name].terms:
                c = coeffs[name]
                if c.terms == self.ring.one().terms:
                    parts.append(name)
                else:
                    parts.append("(%s)*%s" % (repr(c), name))
        return " + ".join(parts) if parts else "0"


def module_invariants(module: GradedModule, coeff_invariants, bound):
    """Minimal generators of the fixed submodule over the invariant
    coefficient ring, by the shortfall method.

    coeff_invariants: polynomials generating the ring-invariant subring of
    the coefficients.  Returns (generators, per_degree_dims) where each
    generator is a (degree, {gen_name: Polynomial}) pair.
    """
    found = []  # (degree, coeffs dict)
    dims = []
    for d in range(bound + 1):
        space, basis = module.fixed_space(d)
        dims.append(space.dim)
        if len(basis) == 0:
            continue
        acc = EchelonAccumulator(len(basis))
        for fd, coeffs in found:
            for e in _exponent_tuples([p.degree() for p in coeff_invariants],
                                      d - fd):
                scaled = dict(coeffs)
                for i, ei in enumerate(e):
                    for _ in range(ei):
                        scaled = {
                            g: c * coeff_invariants[i] for g, c in scaled.items()
                        }
                acc.insert(module.element_vector(scaled, d))
        if acc.dim < space.dim:
            for row in space.basis:
                res = acc.residue(row)
                if np.any(res):
                    acc.insert(res.copy())
                    found.append((d, module.vector_element(res, d)))
    return found, dims
