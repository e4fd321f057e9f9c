"""
core/exact_lattice.py

Exact integer linear algebra: Hermite and Smith normal forms, integer kernels,
lattice membership and a few helpers built on them.

Matrices are 2-D numpy arrays with dtype=object so every entry is a Python int
and nothing ever overflows. Vectors are rows: a vector x acts as x @ m.
The eliminations themselves run on sparse row dictionaries, which keeps the
large but very sparse Manin relation matrices cheap to reduce. Smith forms,
invariant factors and determinants of the reduced blocks come from sympy
DomainMatrix over ZZ.
"""

import logging
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors, smith_normal_decomp

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# 2-D numpy array, dtype=object, Python int entries
IntMatrix = np.ndarray

SparseRow = Dict[int, int]


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Extended Euclid over ZZ.

    Returns:
        Tuple (g, s, t) with s*a + t*b == g and g == gcd(a, b) >= 0
    """
    s, t, g = (int(x) for x in ZZ.gcdex(ZZ(a), ZZ(b)))
    if g < 0:
        g, s, t = -g, -s, -t
    return g, s, t


def as_int_matrix(m, ncols: Optional[int] = None) -> IntMatrix:
    """
    Convert nested sequences or a numpy array into an exact integer matrix.

    Args:
        m: 2-D array or list of rows
        ncols: Column count, needed when m has no rows

    Returns:
        A fresh object-dtype array of Python ints

    Raises:
        ValueError: If the rows are ragged or the input is not 2-D
    """
    if isinstance(m, np.ndarray):
        if m.ndim != 2:
            raise ValueError(f"Expected a 2-D matrix, got shape {m.shape}")
        out = np.zeros(m.shape, dtype=object)
        for (i, j), v in np.ndenumerate(m):
            out[i, j] = int(v)
        return out

    rows = [list(r) for r in m]
    width = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    out = np.zeros((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"Ragged matrix: row {i} has {len(row)} entries, expected {width}")
        for j, v in enumerate(row):
            out[i, j] = int(v)
    return out


def identity(n: int) -> IntMatrix:
    """Identity matrix of size n."""
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def matrix_power(m: IntMatrix, e: int) -> IntMatrix:
    """Nonnegative power of a square matrix by repeated squaring."""
    m = as_int_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix_power needs a square matrix, got {m.shape}")
    if e < 0:
        raise ValueError("Negative exponents are not supported")
    result = identity(m.shape[0])
    base = m
    while e:
        if e & 1:
            result = result.dot(base)
        base = base.dot(base)
        e >>= 1
    return result


def to_sparse(m: IntMatrix) -> List[SparseRow]:
    """Rows of m as {column: value} dictionaries without zeros."""
    return [{j: int(v) for j, v in enumerate(row) if v} for row in np.asarray(m, dtype=object).tolist()]


def from_sparse(rows: Sequence[SparseRow], ncols: int) -> IntMatrix:
    """Dense matrix from sparse rows."""
    out = np.zeros((len(rows), ncols), dtype=object)
    for i, row in enumerate(rows):
        for j, v in row.items():
            out[i, j] = v
    return out


def to_domain_matrix(m) -> DomainMatrix:
    """Exact matrix as a sympy DomainMatrix over ZZ."""
    m = as_int_matrix(m)
    rows = [[ZZ(v) for v in row] for row in m.tolist()]
    return DomainMatrix(rows, m.shape, ZZ)


def from_domain_matrix(d: DomainMatrix) -> IntMatrix:
    """DomainMatrix over ZZ back to an object array of Python ints."""
    nrows, ncols = d.shape
    out = np.zeros((nrows, ncols), dtype=object)
    for i, row in enumerate(d.to_list()):
        for j, v in enumerate(row):
            out[i, j] = int(v)
    return out


def _transpose_sparse(rows: Sequence[SparseRow], ncols: int) -> List[SparseRow]:
    cols: List[SparseRow] = [dict() for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, v in row.items():
            cols[j][i] = v
    return cols


def _axpy(target: SparseRow, source: SparseRow, q: int) -> None:
    # target -= q * source
    for c, v in source.items():
        nv = target.get(c, 0) - q * v
        if nv:
            target[c] = nv
        elif c in target:
            del target[c]


def echelonize(
    rows: List[SparseRow],
    ncols: int,
    transform: Optional[List[SparseRow]] = None,
) -> List[Tuple[int, int]]:
    """
    Bring sparse rows into row-style Hermite normal form, in place.

    Columns are processed left to right. Inside a column the pivot is the row
    with the smallest absolute entry, ties going to the shortest row, which
    keeps fill-in low on sparse relation matrices. Transform rows, when given,
    receive the same row operations.

    Args:
        rows: Sparse rows, mutated
        ncols: Number of columns
        transform: Optional sparse rows tracking the operations, mutated

    Returns:
        List of (pivot_column, row_id) in increasing column order. All rows
        not listed are zero afterwards.
    """
    col_index: Dict[int, set] = defaultdict(set)
    for r, row in enumerate(rows):
        for c in row:
            col_index[c].add(r)
    active = set(range(len(rows)))
    pivots: List[Tuple[int, int]] = []

    def subtract(target: int, source: int, q: int) -> None:
        trow = rows[target]
        for c, v in rows[source].items():
            nv = trow.get(c, 0) - q * v
            if nv:
                if c not in trow:
                    col_index[c].add(target)
                trow[c] = nv
            elif c in trow:
                del trow[c]
                col_index[c].discard(target)
        if transform is not None:
            _axpy(transform[target], transform[source], q)

    for c in range(ncols):
        if c not in col_index:
            continue
        pivot = None
        while True:
            cand = [r for r in col_index[c] if r in active]
            if not cand:
                break
            pivot = min(cand, key=lambda r: (abs(rows[r][c]), len(rows[r]), r))
            if len(cand) == 1:
                break
            pv = rows[pivot][c]
            for r in cand:
                if r != pivot:
                    subtract(r, pivot, rows[r][c] // pv)
        if pivot is None or c not in rows[pivot]:
            continue
        if rows[pivot][c] < 0:
            for k in rows[pivot]:
                rows[pivot][k] = -rows[pivot][k]
            if transform is not None:
                for k in transform[pivot]:
                    transform[pivot][k] = -transform[pivot][k]
        active.discard(pivot)
        pivots.append((c, pivot))

    # reduce entries above each pivot into [0, pivot)
    for c, p in pivots:
        pv = rows[p][c]
        for r in list(col_index[c]):
            if r == p:
                continue
            q = rows[r][c] // pv
            if q:
                subtract(r, p, q)

    logger.debug(f"echelonize: {len(rows)}x{ncols}, rank {len(pivots)}")
    return pivots


def hnf(m) -> Tuple[IntMatrix, IntMatrix]:
    """
    Row-style Hermite normal form.

    Args:
        m: Integer matrix

    Returns:
        Tuple (h, u) with u unimodular and h == u @ m; h is in echelon form
        with positive pivots, entries above each pivot reduced modulo it, and
        zero rows at the bottom.
    """
    m = as_int_matrix(m)
    nrows, ncols = m.shape
    rows = to_sparse(m)
    transform = [{i: 1} for i in range(nrows)]
    pivots = echelonize(rows, ncols, transform)

    pivot_rows = [p for _, p in pivots]
    used = set(pivot_rows)
    order = pivot_rows + [r for r in range(nrows) if r not in used]
    h = from_sparse([rows[r] for r in order], ncols)
    u = from_sparse([transform[r] for r in order], nrows)
    return h, u


def hermite_rows(m) -> IntMatrix:
    """Nonzero rows of the Hermite normal form of m (no transform tracking)."""
    m = as_int_matrix(m)
    rows = to_sparse(m)
    pivots = echelonize(rows, m.shape[1])
    return from_sparse([rows[p] for _, p in pivots], m.shape[1])


def rank(m) -> int:
    """Rank of an integer matrix."""
    m = as_int_matrix(m)
    return len(echelonize(to_sparse(m), m.shape[1]))


def _echelon_rank(h: IntMatrix) -> int:
    # zero rows of an HNF sit at the bottom
    return sum(1 for row in h.tolist() if any(row))


def snf(m) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith normal form.

    The sparse Hermite pass first cuts m down to its r nonzero rows; sympy's
    smith_normal_decomp then runs on that r x cols block only.

    Args:
        m: Integer matrix

    Returns:
        Tuple (s, u, v) with u, v unimodular, s == u @ m @ v diagonal,
        diagonal entries nonnegative and d1 | d2 | ...
    """
    m = as_int_matrix(m)
    nrows, ncols = m.shape
    h, u = hnf(m)
    r = _echelon_rank(h)
    if r == 0:
        return np.zeros((nrows, ncols), dtype=object), identity(nrows), identity(ncols)

    block, left, right = smith_normal_decomp(to_domain_matrix(h[:r, :]))
    s = np.zeros((nrows, ncols), dtype=object)
    s[:r, :] = from_domain_matrix(block)
    lift = identity(nrows)
    lift[:r, :r] = from_domain_matrix(left)
    logger.debug(f"snf: {nrows}x{ncols}, rank {r}")
    return s, lift.dot(u), from_domain_matrix(right)


def elementary_divisors(m) -> List[int]:
    """
    Diagonal of the Smith normal form, without transforms.

    Alternating sparse Hermite forms reduce m to a diagonal; the unit
    entries are final and sympy's invariant_factors settles the rest.

    Returns:
        min(rows, cols) nonnegative ints, each dividing the next, zeros last
    """
    m = as_int_matrix(m)
    nrows, ncols = m.shape
    rows = to_sparse(m)
    width = ncols
    while True:
        pivots = echelonize(rows, width)
        rows = [rows[p] for _, p in pivots]
        if all(len(row) == 1 and i in row for i, row in enumerate(rows)):
            break
        rows, width = _transpose_sparse(rows, width), len(rows)

    diag = [abs(row[i]) for i, row in enumerate(rows)]
    units = [d for d in diag if d == 1]
    rest = [d for d in diag if d != 1]
    if rest:
        factors = invariant_factors(to_domain_matrix(np.diag(np.array(rest, dtype=object))))
        rest = [int(d) for d in factors]
    return units + rest + [0] * (min(nrows, ncols) - len(diag))


def kernel_basis(m) -> IntMatrix:
    """
    Basis of the left integer kernel {x : x @ m == 0}.

    The rows of the HNF transform that belong to zero rows of the HNF already
    span a saturated lattice; they are returned in Hermite normal form.

    Returns:
        Matrix whose rows are a Z-basis of the kernel (shape (k, rows of m))
    """
    m = as_int_matrix(m)
    h, u = hnf(m)
    r = _echelon_rank(h)
    return hermite_rows(u[r:, :]) if r < m.shape[0] else np.zeros((0, m.shape[0]), dtype=object)


class LatticeSolver:
    """Expresses vectors in the row lattice of a fixed basis; one HNF, many solves."""

    def __init__(self, basis):
        self.basis = as_int_matrix(basis)
        self.ncols = self.basis.shape[1]
        h, u = hnf(self.basis)
        self.rank = _echelon_rank(h)
        self._h = to_sparse(h[: self.rank, :])
        self._u = u[: self.rank, :]
        self._pivots = [min(row) for row in self._h]

    def solve(self, target: Sequence[int]) -> Optional[List[int]]:
        """
        Args:
            target: Vector with as many entries as the basis has columns

        Returns:
            Coefficients c with c @ basis == target, or None if target is not
            in the lattice

        Raises:
            ValueError: On dimension mismatch
        """
        if len(target) != self.ncols:
            raise ValueError(f"Target has {len(target)} entries, lattice lives in Z^{self.ncols}")
        residual = {j: int(v) for j, v in enumerate(target) if v}
        coeffs = [0] * self.rank
        for r, (c, row) in enumerate(zip(self._pivots, self._h)):
            value = residual.get(c, 0)
            if value == 0:
                continue
            if value % row[c]:
                return None
            q = value // row[c]
            coeffs[r] = q
            _axpy(residual, row, q)
        if residual:
            return None
        if self.rank == 0:
            return [0] * self.basis.shape[0]
        return [int(x) for x in np.array(coeffs, dtype=object).dot(self._u)]


def solve_in_lattice(basis, target: Sequence[int]) -> Optional[List[int]]:
    """One-shot form of LatticeSolver.solve."""
    return LatticeSolver(basis).solve(target)


def transition_matrix(rows, basis) -> IntMatrix:
    """
    Matrix T with T @ basis == rows.

    Raises:
        ValueError: If some row is outside the lattice spanned by basis
    """
    rows = as_int_matrix(rows)
    solver = LatticeSolver(basis)
    out = np.zeros((rows.shape[0], solver.basis.shape[0]), dtype=object)
    for i, row in enumerate(rows.tolist()):
        coeffs = solver.solve(row)
        if coeffs is None:
            raise ValueError(f"Row {i} is not in the lattice spanned by the basis")
        out[i, :] = coeffs
    return out


def det(m) -> int:
    """Determinant over ZZ (sympy DomainMatrix, fraction-free)."""
    m = as_int_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("Determinant needs a square matrix")
    if m.shape[0] == 0:
        return 1
    return int(to_domain_matrix(m).det())


def is_unimodular(m) -> bool:
    """True iff m is square with determinant +1 or -1."""
    m = as_int_matrix(m)
    return m.shape[0] == m.shape[1] and abs(det(m)) == 1


def lattice_equal(a, b) -> bool:
    """True iff the row lattices of a and b coincide (same canonical HNF)."""
    a, b = as_int_matrix(a), as_int_matrix(b)
    if a.shape[1] != b.shape[1]:
        return False
    return np.array_equal(hermite_rows(a), hermite_rows(b))
