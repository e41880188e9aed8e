"""Exact rational matrices, sparse rank-4 tensors, and linear solving.

Everything downstream works over the rationals with no rounding: structure
constants, twist maps and bilinear forms are matrices/tensors of
``fractions.Fraction``.  All containers are immutable after construction and
all functions are pure.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

Rat = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


class InputError(ValueError):
    """Malformed or dimensionally inconsistent input."""


def rat(x) -> Fraction:
    """Parse a rational from an int, Fraction, or a "p/q" string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad rational {x!r}: {e}") from None
    raise InputError(f"bad rational {x!r} (type {type(x).__name__})")


def rat_str(x: Fraction) -> str:
    """Canonical "p/q" form, "p" when the denominator is 1."""
    return str(x)


class Mat:
    """Immutable dense matrix of Fractions.  ``M[i][j]``, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Fraction]]):
        rows = tuple(tuple(rat(v) for v in row) for row in entries)
        if not rows or not rows[0]:
            raise InputError("matrix must have positive dimensions")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise InputError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self.entries = rows

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(r: int, c: int) -> "Mat":
        return Mat([[ZERO] * c for _ in range(r)])

    @staticmethod
    def diag(values: Sequence) -> "Mat":
        vals = [rat(v) for v in values]
        n = len(vals)
        return Mat([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def block_diag(a: "Mat", b: "Mat") -> "Mat":
        n, m = a.rows, b.rows
        out = [[ZERO] * (a.cols + b.cols) for _ in range(n + m)]
        for i in range(n):
            for j in range(a.cols):
                out[i][j] = a.entries[i][j]
        for i in range(m):
            for j in range(b.cols):
                out[n + i][a.cols + j] = b.entries[i][j]
        return Mat(out)

    def __getitem__(self, i: int) -> Sequence[Fraction]:
        return self.entries[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat([[a + b for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat([[a - b for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in row] for row in self.entries])

    def scale(self, s) -> "Mat":
        s = rat(s)
        return Mat([[s * a for a in row] for row in self.entries])

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise InputError(f"matmul shape mismatch {self.shape} @ {other.shape}")
        ot = other.transpose().entries
        return Mat([[sum((a * b for a, b in zip(row, col) if a and b), ZERO)
                     for col in ot] for row in self.entries])

    def apply(self, vec: Sequence[Fraction]) -> tuple:
        if len(vec) != self.cols:
            raise InputError(f"apply shape mismatch {self.shape} to len {len(vec)}")
        return tuple(sum((a * v for a, v in zip(row, vec) if a and v), ZERO)
                     for row in self.entries)

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "Mat":
        return Mat([[self.entries[i][j] for i in range(self.rows)]
                    for j in range(self.cols)])

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Mat.identity(self.rows)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def col_support(self) -> list:
        """For each column j, the list of (i, M[i][j]) with nonzero entries."""
        return [[(i, self.entries[i][j]) for i in range(self.rows)
                 if self.entries[i][j]] for j in range(self.cols)]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rat_str(v) for v in row) for row in self.entries)
        return f"Mat[{body}]"


def _same_shape(a: Mat, b: Mat) -> None:
    if a.shape != b.shape:
        raise InputError(f"shape mismatch {a.shape} vs {b.shape}")


Mat._same_shape = lambda self, other: _same_shape(self, other)  # type: ignore[attr-defined]


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple:
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = ONE / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


class LinearSolution:
    """Outcome of an exact linear solve: particular solution + kernel basis."""

    __slots__ = ("consistent", "particular", "kernel")

    def __init__(self, consistent: bool, particular, kernel):
        self.consistent = consistent
        self.particular = particular
        self.kernel = kernel


def kernel_basis(system: Mat) -> tuple:
    """Canonical basis (reduced echelon rows) of the nullspace of ``system``."""
    reduced, pivots = rref(system.entries)
    n = system.cols
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(v)
    if not basis:
        return ()
    canon, _ = rref(basis)
    return tuple(tuple(row) for row in canon if any(v != 0 for v in row))


def solve_linear(system: Mat, rhs: Sequence) -> LinearSolution:
    """Solve ``system @ x = rhs`` exactly.

    Returns one particular solution (or None if inconsistent) together with a
    canonical basis of the kernel of ``system``.
    """
    b = [rat(v) for v in rhs]
    if len(b) != system.rows:
        raise InputError(f"rhs length {len(b)} vs {system.rows} rows")
    aug = [list(row) + [b[i]] for i, row in enumerate(system.entries)]
    reduced, pivots = rref(aug)
    n = system.cols
    if n in pivots:
        return LinearSolution(False, None, kernel_basis(system))
    x = [ZERO] * n
    for r, p in enumerate(pivots):
        x[p] = reduced[r][n]
    return LinearSolution(True, tuple(x), kernel_basis(system))


def mat_inverse(m: Mat) -> Optional[Mat]:
    """Exact inverse, or None when singular."""
    if m.rows != m.cols:
        raise InputError(f"inverse of non-square {m.shape}")
    n = m.rows
    aug = [list(m.entries[i]) + [ONE if i == j else ZERO for j in range(n)]
           for i in range(n)]
    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return Mat([row[n:] for row in reduced])


def mat_rank(m: Mat) -> int:
    _, pivots = rref(m.entries)
    return len(pivots)


# ---------------------------------------------------------------------------
# Sparse rank-4 tensors (structure constants c_{ijk}^l and friends).
# Stored as {(i, j, k): {l: value}} with no explicit zeros.

SparseVec = dict  # {int: Fraction}


class Tensor4:
    """Immutable sparse tensor indexed (i, j, k, l), grouped by (i, j, k)."""

    __slots__ = ("dims", "_rows")

    def __init__(self, dims: Sequence[int], rows: Mapping):
        self.dims = tuple(dims)
        if len(self.dims) != 4 or any(d <= 0 for d in self.dims):
            raise InputError(f"bad tensor dims {dims}")
        clean = {}
        for (i, j, k), vec in rows.items():
            if not (0 <= i < self.dims[0] and 0 <= j < self.dims[1]
                    and 0 <= k < self.dims[2]):
                raise InputError(f"tensor index {(i, j, k)} out of range {self.dims}")
            v = {l: rat(x) for l, x in vec.items() if x}
            for l in v:
                if not 0 <= l < self.dims[3]:
                    raise InputError(f"tensor index l={l} out of range {self.dims}")
            if v:
                clean[(i, j, k)] = v
        self._rows = clean

    @staticmethod
    def zero(dims: Sequence[int]) -> "Tensor4":
        return Tensor4(dims, {})

    @staticmethod
    def from_entries(dims: Sequence[int], entries: Iterable) -> "Tensor4":
        """Build from an iterable of (i, j, k, l, value); duplicates add up."""
        rows: dict = {}
        for (i, j, k, l, v) in entries:
            vec = rows.setdefault((i, j, k), {})
            nv = vec.get(l, ZERO) + rat(v)
            if nv:
                vec[l] = nv
            else:
                vec.pop(l, None)
        return Tensor4(dims, rows)

    def get(self, i: int, j: int, k: int, l: int) -> Fraction:
        return self._rows.get((i, j, k), {}).get(l, ZERO)

    def row(self, i: int, j: int, k: int) -> Mapping:
        """The sparse vector {l: c_{ijk}^l}; empty mapping when zero."""
        return self._rows.get((i, j, k), {})

    def rows(self) -> Iterator:
        return iter(self._rows.items())

    def items(self) -> Iterator:
        for key, vec in self._rows.items():
            for l, v in vec.items():
                yield (*key, l, v)

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other) -> bool:
        return (isinstance(other, Tensor4) and self.dims == other.dims
                and self._rows == other._rows)

    def __hash__(self) -> int:
        return hash((self.dims, tuple(sorted(
            (k, tuple(sorted(v.items()))) for k, v in self._rows.items()))))

    def scale(self, s) -> "Tensor4":
        s = rat(s)
        if s == 0:
            return Tensor4.zero(self.dims)
        return Tensor4(self.dims, {k: {l: s * v for l, v in vec.items()}
                                   for k, vec in self._rows.items()})


# Sparse vector helpers used by the identity checkers.

def vec_add_into(acc: dict, vec: Mapping, scale: Fraction = ONE) -> None:
    if not scale:
        return
    for l, v in vec.items():
        nv = acc.get(l, ZERO) + scale * v
        if nv:
            acc[l] = nv
        else:
            acc.pop(l, None)


def unit_vec(n: int, i: int) -> dict:
    return {i: ONE}


def dense(vec: Mapping, n: int) -> tuple:
    return tuple(vec.get(i, ZERO) for i in range(n))


def sparse_of(vec: Sequence[Fraction]) -> dict:
    return {i: v for i, v in enumerate(vec) if v}
