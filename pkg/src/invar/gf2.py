"""Bit-packed exact linear algebra over GF(2).

Vectors of length n are stored as numpy uint64 arrays of ceil(n/64) words;
bit c of a vector lives in word c >> 6 at position c & 63.  Matrices are
2-D uint64 arrays, one packed row per row vector.  Reduced row echelon form
is the canonical representative of a subspace, so equality of spaces is
equality of their echelon matrices.

The elimination kernels are numba-compiled: graded slices of a four-variable
polynomial ring reach dimension 17,296 at degree 45 and pure-Python row
reduction does not survive that.
"""

from __future__ import annotations

import numpy as np
from numba import njit


def words_for(ncols):
    return max(1, (ncols + 63) >> 6)


def zeros(nrows, ncols):
    return np.zeros((nrows, words_for(ncols)), dtype=np.uint64)


def get_bit(row, c):
    return int(row[c >> 6] >> np.uint64(c & 63)) & 1


def set_bit(row, c):
    row[c >> 6] |= np.uint64(1) << np.uint64(c & 63)


def pack_bool(mat_bool):
    """Pack a 2-D bool/uint8 array into packed uint64 rows."""
    mat_bool = np.ascontiguousarray(mat_bool, dtype=np.uint8)
    nrows, ncols = mat_bool.shape
    pad = (-ncols) % 64
    if pad:
        mat_bool = np.concatenate(
            [mat_bool, np.zeros((nrows, pad), dtype=np.uint8)], axis=1
        )
    packed = np.packbits(mat_bool, axis=1, bitorder="little")
    return packed.view(np.uint64)


def unpack_rows(packed, ncols):
    """Unpack packed uint64 rows into a 2-D uint8 0/1 array of width ncols."""
    as_bytes = packed.view(np.uint8)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
    return bits[:, :ncols]


def pack_vector(bits):
    return pack_bool(np.asarray(bits, dtype=np.uint8).reshape(1, -1))[0]


def unpack_vector(vec, ncols):
    return unpack_rows(vec.reshape(1, -1), ncols)[0]


@njit(cache=True)
def _rref(mat, ncols):
    """In-place reduced row echelon form; returns the pivot column array."""
    nrows = mat.shape[0]
    nwords = mat.shape[1]
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    rank = 0
    for c in range(ncols):
        w = c >> 6
        b = np.uint64(c & 63)
        pivot = -1
        for i in range(rank, nrows):
            if (mat[i, w] >> b) & np.uint64(1):
                pivot = i
                break
        if pivot < 0:
            continue
        if pivot != rank:
            for k in range(w, nwords):
                tmp = mat[rank, k]
                mat[rank, k] = mat[pivot, k]
                mat[pivot, k] = tmp
        for i in range(nrows):
            if i != rank and ((mat[i, w] >> b) & np.uint64(1)):
                for k in range(w, nwords):
                    mat[i, k] ^= mat[rank, k]
        pivots[rank] = c
        rank += 1
        if rank == nrows:
            break
    return pivots[:rank]


@njit(cache=True)
def _reduce_vector(vec, basis, pivots):
    """Reduce vec (in place) against echelon rows with the given pivots."""
    for r in range(basis.shape[0]):
        c = pivots[r]
        w = c >> 6
        b = np.uint64(c & 63)
        if (vec[w] >> b) & np.uint64(1):
            for k in range(w, basis.shape[1]):
                vec[k] ^= basis[r, k]


@njit(cache=True)
def _mat_vec_rows(basis, mat, out):
    """out[i] = basis[i] @ mat, i.e. XOR of the rows of mat selected by bits."""
    nrows = basis.shape[0]
    n = mat.shape[0]
    for i in range(nrows):
        for c in range(n):
            if (basis[i, c >> 6] >> np.uint64(c & 63)) & np.uint64(1):
                for k in range(mat.shape[1]):
                    out[i, k] ^= mat[c, k]


def rref(mat, ncols):
    """Reduced row echelon form of a copy of mat; returns (basis, pivots)."""
    work = np.array(mat, dtype=np.uint64, copy=True)
    pivots = _rref(work, ncols)
    return work[: len(pivots)].copy(), pivots


def rank(mat, ncols):
    work = np.array(mat, dtype=np.uint64, copy=True)
    return len(_rref(work, ncols))


def left_kernel(mat, nrows_is=None):
    """Vectors v with v @ mat = 0, for mat given as packed rows.

    Returns a BitVectorSpace in ambient dimension mat.shape[0].  Implemented
    by row-reducing [mat | I] and collecting the identity-part of rows whose
    mat-part vanished.
    """
    n = mat.shape[0]
    ncols = mat.shape[1] * 64
    wl = mat.shape[1]
    wr = words_for(n)
    aug = np.zeros((n, wl + wr), dtype=np.uint64)
    aug[:, :wl] = mat
    for i in range(n):
        aug[i, wl + (i >> 6)] |= np.uint64(1) << np.uint64(i & 63)
    _rref(aug, ncols)
    left_zero = ~np.any(aug[:, :wl], axis=1)
    rows = aug[left_zero, wl:]
    return BitVectorSpace.from_rows(n, rows)


def mat_mul_rows(basis, mat):
    """Row-vector times matrix for each packed row of basis (v -> v @ mat)."""
    out = np.zeros((basis.shape[0], mat.shape[1]), dtype=np.uint64)
    _mat_vec_rows(np.ascontiguousarray(basis), np.ascontiguousarray(mat), out)
    return out


class BitVectorSpace:
    """A subspace of GF(2)^n in canonical reduced echelon form."""

    def __init__(self, ambient, basis, pivots):
        self.ambient = ambient
        self.basis = basis  # (dim, words) uint64, reduced echelon
        self.pivots = pivots  # int64 array, strictly increasing

    @classmethod
    def from_rows(cls, ambient, rows):
        rows = np.asarray(rows, dtype=np.uint64)
        if rows.ndim == 1:
            rows = rows.reshape(1, -1)
        if rows.size == 0:
            return cls(ambient, zeros(0, ambient), np.empty(0, dtype=np.int64))
        basis, pivots = rref(rows, ambient)
        return cls(ambient, basis, pivots)

    @classmethod
    def zero_space(cls, ambient):
        return cls(ambient, zeros(0, ambient), np.empty(0, dtype=np.int64))

    @classmethod
    def full_space(cls, ambient):
        basis = zeros(ambient, ambient)
        for i in range(ambient):
            set_bit(basis[i], i)
        return cls(ambient, basis, np.arange(ambient, dtype=np.int64))

    @property
    def dim(self):
        return self.basis.shape[0]

    def _check(self, other):
        if self.ambient != other.ambient:
            raise ValueError(
                "ambient dimension mismatch: %d vs %d" % (self.ambient, other.ambient)
            )

    def reduce(self, vec):
        """Canonical residue of vec modulo this subspace."""
        out = np.array(vec, dtype=np.uint64, copy=True)
        if self.dim:
            _reduce_vector(out, self.basis, self.pivots)
        return out

    def contains(self, vec):
        return not np.any(self.reduce(vec))

    def contains_space(self, other):
        self._check(other)
        return all(self.contains(other.basis[i]) for i in range(other.dim))

    def add(self, other):
        """Sum of subspaces."""
        self._check(other)
        if self.dim == 0:
            return other
        if other.dim == 0:
            return self
        return BitVectorSpace.from_rows(
            self.ambient, np.vstack([self.basis, other.basis])
        )

    def intersect(self, other):
        """Intersection via the Zassenhaus double-block elimination."""
        self._check(other)
        n = self.ambient
        w = words_for(n)
        rows = np.zeros((self.dim + other.dim, 2 * w), dtype=np.uint64)
        rows[: self.dim, :w] = self.basis
        rows[: self.dim, w:] = self.basis
        rows[self.dim :, :w] = other.basis
        _rref(rows, ((n + 63) >> 6) << 6)  # eliminate the left block fully
        left_zero = ~np.any(rows[:, :w], axis=1)
        inter = rows[left_zero, w:]
        inter = inter[np.any(inter, axis=1)]
        return BitVectorSpace.from_rows(n, inter) if len(inter) else BitVectorSpace.zero_space(n)

    def __eq__(self, other):
        return (
            isinstance(other, BitVectorSpace)
            and self.ambient == other.ambient
            and self.dim == other.dim
            and np.array_equal(self.pivots, other.pivots)
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.ambient, self.dim, self.basis.tobytes()))

    def __repr__(self):
        return "BitVectorSpace(dim=%d, ambient=%d)" % (self.dim, self.ambient)


class EchelonAccumulator:
    """Incrementally built echelon basis, for spans grown one vector at a time.

    Rows are kept reduced against each other (RREF invariant), so the final
    space equals BitVectorSpace.from_rows of everything inserted.
    """

    def __init__(self, ambient):
        self.ambient = ambient
        self.words = words_for(ambient)
        self.rows = []  # list of (pivot, packed row), unsorted
        self._pivot_map = {}

    @property
    def dim(self):
        return len(self.rows)

    def residue(self, vec):
        out = np.array(vec, dtype=np.uint64, copy=True)
        for pivot, row in self.rows:
            if get_bit(out, pivot):
                out ^= row
        return out

    def insert(self, vec):
        """Insert vec into the span; returns True if the dimension grew."""
        res = self.residue(vec)
        if not np.any(res):
            return False
        nz = np.nonzero(res)[0]
        w = int(nz[0])
        word = int(res[w])
        pivot = (w << 6) + (word & -word).bit_length() - 1
        for p, row in self.rows:
            if get_bit(row, pivot):
                row ^= res
        self.rows.append((pivot, res))
        self._pivot_map[pivot] = res
        return True

    def contains(self, vec):
        return not np.any(self.residue(vec))

    def to_space(self):
        if not self.rows:
            return BitVectorSpace.zero_space(self.ambient)
        order = sorted(range(len(self.rows)), key=lambda i: self.rows[i][0])
        basis = np.vstack([self.rows[i][1] for i in order])
        pivots = np.array([self.rows[i][0] for i in order], dtype=np.int64)
        return BitVectorSpace(self.ambient, basis, pivots)


def solve_in_rowspan(rows, ncols, target):
    """Coefficients x with x @ rows = target, or None.

    rows is a packed matrix whose rows need not be independent; the returned
    coefficient vector is a plain uint8 array of length rows.shape[0].
    """
    nrows = rows.shape[0]
    wl = rows.shape[1]
    wr = words_for(max(nrows, 1))
    aug = np.zeros((nrows, wl + wr), dtype=np.uint64)
    aug[:, :wl] = rows
    for i in range(nrows):
        aug[i, wl + (i >> 6)] |= np.uint64(1) << np.uint64(i & 63)
    work = aug.copy()
    pivots = _rref(work, ncols)
    t = np.zeros(wl + wr, dtype=np.uint64)
    t[:wl] = target
    _reduce_vector(t, work[: len(pivots)], pivots)
    if np.any(t[:wl]):
        return None
    return unpack_vector(t[wl:], nrows)
