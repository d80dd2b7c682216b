"""Exact dense linear algebra over a prime field.

Everything downstream (graded pieces, syzygies, Koszul duals) reduces to
row reduction, kernels and span complements of dense matrices with entries
in F_p.  Matrices are numpy int64 arrays with all entries reduced into
[0, p); elimination is fully deterministic (first nonzero pivot, scanned
left to right), so repeated runs produce bit-identical output.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass

import numpy as np

DEFAULT_CHARACTERISTIC = 32003

# int64 accumulation must stay exact: cols * (p-1)^2 < 2^63 even for matrix
# products over a few million columns.
_MAX_CHARACTERISTIC = 2**20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_p, given by its characteristic."""

    characteristic: int = DEFAULT_CHARACTERISTIC

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
            raise ValueError(f"characteristic must be a prime integer, got {p!r}")
        if p >= _MAX_CHARACTERISTIC:
            raise ValueError(f"characteristic must be < 2^31, got {p}")

    def reduce(self, a: int) -> int:
        return a % self.characteristic

    def inverse(self, a: int) -> int:
        a %= self.characteristic
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, self.characteristic - 2, self.characteristic)


@dataclass(frozen=True, eq=False)
class PrimeFieldMatrix:
    """Immutable dense matrix over F_p; entries stored reduced in [0, p)."""

    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"matrix entries must be 2-dimensional, got ndim={arr.ndim}")
        arr = np.mod(arr, self.field.characteristic)
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "PrimeFieldMatrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "PrimeFieldMatrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, cols: int | None = None) -> "PrimeFieldMatrix":
        """Build from an iterable of row vectors; `cols` is required when empty."""
        rows = list(rows)
        if not rows:
            if cols is None:
                raise ValueError("column count required for an empty row list")
            return cls.zeros(field, 0, cols)
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        return cls(field, arr)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def row(self, i: int) -> np.ndarray:
        return self.entries[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PrimeFieldMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __repr__(self) -> str:
        return f"PrimeFieldMatrix(p={self.field.characteristic}, shape={self.shape})"


@dataclass(frozen=True, eq=False)
class RrefResult:
    reduced: PrimeFieldMatrix
    pivot_columns: tuple[int, ...]
    rank: int


def _rref_array(arr: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of an int64 array in place-copy; returns pivots."""
    a = arr.copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: PrimeFieldMatrix) -> RrefResult:
    """Reduced row-echelon form with deterministic pivoting.

    Returns the reduced matrix (same shape, row space preserved), the pivot
    column indices, and the rank.
    """
    reduced, pivots = _rref_array(m.entries, m.field.characteristic)
    return RrefResult(PrimeFieldMatrix(m.field, reduced), tuple(pivots), len(pivots))


def rank(m: PrimeFieldMatrix) -> int:
    return rref(m).rank


def reduced_row_basis(m: PrimeFieldMatrix) -> PrimeFieldMatrix:
    """Canonical basis of the row space: nonzero rows of the rref."""
    res = rref(m)
    return PrimeFieldMatrix(m.field, res.reduced.entries[: res.rank])


def kernel_basis(m: PrimeFieldMatrix) -> PrimeFieldMatrix:
    """Basis of the right kernel, one vector per row.

    The output has cols(m) columns and cols(m) - rank(m) rows; rows are the
    standard free-column basis read off the rref, ordered by free column.
    """
    p = m.field.characteristic
    res = rref(m)
    pivots = res.pivot_columns
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = np.zeros((len(free), m.cols), dtype=np.int64)
    red = res.reduced.entries
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(red[i, fc])) % p
    return PrimeFieldMatrix(m.field, basis)


def complement_pivots(span_rows: PrimeFieldMatrix, candidates: PrimeFieldMatrix) -> list[int]:
    """Indices of candidate rows that enlarge the span, greedily in row order.

    The returned rows together with `span_rows` are independent and span the
    same space as `span_rows` plus all candidates.  Deterministic: a
    candidate is selected iff it is independent of the span and the
    candidates already selected before it.
    """
    if span_rows.cols != candidates.cols:
        raise ValueError(
            f"column mismatch: span has {span_rows.cols}, candidates have {candidates.cols}"
        )
    if span_rows.field != candidates.field:
        raise ValueError("span and candidates live over different fields")
    p = candidates.field.characteristic
    seed = rref(span_rows)
    # Echelon basis kept sorted by pivot column; forward reduction only.
    echelon: list[tuple[int, np.ndarray]] = [
        (pc, seed.reduced.entries[i].copy()) for i, pc in enumerate(seed.pivot_columns)
    ]
    selected: list[int] = []
    for idx in range(candidates.rows):
        v = candidates.entries[idx].copy()
        for pc, row in echelon:
            c = int(v[pc])
            if c:
                v = (v - c * row) % p
        nz = np.nonzero(v)[0]
        if nz.size:
            pc = int(nz[0])
            v = (v * pow(int(v[pc]), p - 2, p)) % p
            insort(echelon, (pc, v), key=lambda t: t[0])
            selected.append(idx)
    return selected


def multiply(a: PrimeFieldMatrix, b: PrimeFieldMatrix) -> PrimeFieldMatrix:
    if a.field != b.field:
        raise ValueError("operands live over different fields")
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch: {a.shape} @ {b.shape}")
    return PrimeFieldMatrix(a.field, (a.entries @ b.entries) % a.field.characteristic)


def row_stack(matrices: list[PrimeFieldMatrix]) -> PrimeFieldMatrix:
    if not matrices:
        raise ValueError("nothing to stack")
    field = matrices[0].field
    cols = matrices[0].cols
    for m in matrices[1:]:
        if m.field != field or m.cols != cols:
            raise ValueError("incompatible matrices")
    return PrimeFieldMatrix(field, np.vstack([m.entries for m in matrices]))
