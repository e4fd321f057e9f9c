"""
core/manin.py

Manin symbols for the Fermat group Phi(n): the sigma/tau relations over the
6n^2 right cosets, reduction onto a free basis of rank n^2 + 1, the 3n cusps
and the boundary map to cusp divisors.

Symbols are written x[i,j] = [A^i B^j] (coset (i, j, 0)) and
y[i,j] = [A^i B^j tau] (coset (i, j, 2)).
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, NamedTuple, Sequence, Tuple, Union

import numpy as np

from . import exact_lattice
from . import psl2
from .psl2 import CosetLabel

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

CUSP_BASES = ("zero", "one", "infinity")

# matrices taking i*infinity to each base cusp of X(2)
_BASE_MAPS = {
    "infinity": psl2.IDENTITY,
    "zero": psl2.ProjMatrix(0, -1, 1, 0),
    "one": psl2.ProjMatrix(1, 0, 1, 1),
}
_TRANSLATION = psl2.ProjMatrix(1, 1, 0, 1)

X_COSET, Y_COSET = 0, 2

SymbolVector = Mapping[CosetLabel, int]
ReducedCoords = Sequence[int]


class CuspClass(NamedTuple):
    """A cusp of X_Phi(n): the base cusp of X(2) below it and an index mod n."""

    base: str
    index: int

    def __str__(self) -> str:
        return f"({self.base},{self.index})"


CuspDivisor = Dict[CuspClass, int]


def _check_level(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"Level n must be a positive integer, got {n!r}")


def enumerate_cosets(n: int) -> List[CosetLabel]:
    """All 6n^2 coset labels, k outer, then i, then j."""
    _check_level(n)
    return [CosetLabel(i, j, k) for k in range(6) for i in range(n) for j in range(n)]


def coset_index(label: CosetLabel, n: int) -> int:
    """Position of a label in enumerate_cosets(n)."""
    return label.k * n * n + (label.i % n) * n + (label.j % n)


def sigma_tau_images(label: CosetLabel, n: int) -> Tuple[CosetLabel, CosetLabel]:
    """Labels of (A^i B^j alpha_k) sigma and (A^i B^j alpha_k) tau."""
    rep = psl2.coset_representative(label, n)
    return psl2.coset_label(rep * psl2.SIGMA, n), psl2.coset_label(rep * psl2.TAU, n)


@lru_cache(maxsize=None)
def _image_tables(n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    sigma_table, tau_table = [], []
    for label in enumerate_cosets(n):
        s, t = sigma_tau_images(label, n)
        sigma_table.append(coset_index(s, n))
        tau_table.append(coset_index(t, n))
    return tuple(sigma_table), tuple(tau_table)


def relation_rows(n: int) -> List[Dict[int, int]]:
    """
    Sparse rows [c] + [c sigma] for every coset c, then [c] + [c tau] + [c tau^2].
    The relations [c] - [cJ] are vacuous in PSL2(Z) and omitted.
    """
    _check_level(n)
    sigma_table, tau_table = _image_tables(n)
    rows: List[Dict[int, int]] = []
    for c in range(6 * n * n):
        row: Dict[int, int] = defaultdict(int)
        row[c] += 1
        row[sigma_table[c]] += 1
        rows.append(dict(row))
    for c in range(6 * n * n):
        row = defaultdict(int)
        t1 = tau_table[c]
        row[c] += 1
        row[t1] += 1
        row[tau_table[t1]] += 1
        rows.append(dict(row))
    return rows


def relation_matrix(n: int) -> exact_lattice.IntMatrix:
    """Dense 12n^2 x 6n^2 relation matrix (sigma rows, then tau rows)."""
    return exact_lattice.from_sparse(relation_rows(n), 6 * n * n)


def free_basis(n: int) -> List[CosetLabel]:
    """
    Canonical free basis: y[i,j] for 1 <= i <= n-1, then x[n-1,j], then y[0,n-1].
    """
    _check_level(n)
    basis = [CosetLabel(i, j, Y_COSET) for i in range(1, n) for j in range(n)]
    basis += [CosetLabel(n - 1, j, X_COSET) for j in range(n)]
    basis.append(CosetLabel(0, n - 1, Y_COSET))
    return basis


def label_name(label: CosetLabel) -> str:
    if label.k == X_COSET:
        return f"x[{label.i},{label.j}]"
    if label.k == Y_COSET:
        return f"y[{label.i},{label.j}]"
    return f"[{label.i},{label.j},{label.k}]"


def basis_labels(n: int) -> List[str]:
    return [label_name(label) for label in free_basis(n)]


def _elimination_order(n: int) -> List[CosetLabel]:
    # non-basis columns first; sigma/tau partners of the basis are cleared first
    basis = free_basis(n)
    in_basis = set(basis)
    order = [CosetLabel(i, j, k) for k in (3, 4, 5, 1) for i in range(n) for j in range(n)]
    order += [CosetLabel(i, j, X_COSET) for i in range(n) for j in range(n)
              if CosetLabel(i, j, X_COSET) not in in_basis]
    order += [CosetLabel(i, j, Y_COSET) for i in range(n) for j in range(n)
              if CosetLabel(i, j, Y_COSET) not in in_basis]
    return order + basis


@dataclass(frozen=True, eq=False)
class Presentation:
    """
    Free presentation of the Manin symbols of Phi(n).

    reduction has one row per coset (enumerate_cosets order) holding its
    coordinates in the free basis.
    """

    n: int
    basis: Tuple[CosetLabel, ...]
    reduction: exact_lattice.IntMatrix

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coords(self, label: CosetLabel) -> List[int]:
        return list(self.reduction[coset_index(label, self.n)])


@lru_cache(maxsize=None)
def presentation(n: int) -> Presentation:
    """
    Reduce every coset onto the canonical free basis.

    The relation rows are put in Hermite form with the non-basis columns first;
    the quotient is free on the basis exactly when every non-basis column gets
    a unit pivot, and then each pivot row reads c + (basis combination) = 0.

    Raises:
        ValueError: If n is not a positive integer
        RuntimeError: If the quotient is not free on the canonical basis
    """
    _check_level(n)
    try:
        ncols = 6 * n * n
        basis = free_basis(n)
        order = _elimination_order(n)
        position = {coset_index(label, n): p for p, label in enumerate(order)}
        nonbasis = ncols - len(basis)

        rows = [{position[c]: v for c, v in row.items()} for row in relation_rows(n)]
        pivots = exact_lattice.echelonize(rows, ncols)

        pivot_columns = [c for c, _ in pivots]
        if pivot_columns != list(range(nonbasis)) or any(rows[r][c] != 1 for c, r in pivots):
            raise RuntimeError(
                f"Relations for n={n} do not present a free module on the canonical basis "
                f"(rank {len(pivots)}, expected {nonbasis})"
            )

        reduction = np.zeros((ncols, len(basis)), dtype=object)
        for c, r in pivots:
            target = coset_index(order[c], n)
            for col, v in rows[r].items():
                if col >= nonbasis:
                    reduction[target, col - nonbasis] = -v
        for b, label in enumerate(basis):
            reduction[coset_index(label, n), b] = 1
        reduction.setflags(write=False)

        logger.info(f"Presentation for n={n}: {ncols} cosets, free rank {len(basis)}")
        return Presentation(n=n, basis=tuple(basis), reduction=reduction)
    except Exception as e:
        logger.error(f"Failed to build presentation for n={n}: {e}")
        raise


def reduce_symbol(v: SymbolVector, n: int) -> List[int]:
    """Coordinates of a combination of coset symbols in the free basis."""
    pres = presentation(n)
    out = [0] * pres.rank
    for label, coeff in v.items():
        if coeff:
            row = pres.reduction[coset_index(label, n)]
            for b in range(pres.rank):
                out[b] += coeff * row[b]
    return out


def cusp_set(n: int) -> List[CuspClass]:
    """The 3n cusps of X_Phi(n), n above each cusp of X(2)."""
    _check_level(n)
    return [CuspClass(base, k) for base in CUSP_BASES for k in range(n)]


def cusp_class(i: int, j: int, base: str, n: int) -> CuspClass:
    """Class of A^i B^j applied to the base point 0, 1 or i*infinity."""
    if base == "zero":
        return CuspClass("zero", i % n)
    if base == "infinity":
        return CuspClass("infinity", j % n)
    if base == "one":
        return CuspClass("one", (i + j) % n)
    raise ValueError(f"Unknown cusp base {base!r}")


def _base_of(p: int, q: int) -> str:
    if q % 2 == 0:
        return "infinity"
    if p % 2 == 0:
        return "zero"
    return "one"


def general_cusp_classify(cusp: psl2.Cusp, n: int) -> CuspClass:
    """
    Phi(n)-class of an arbitrary point p/q of P1(Q).

    A matrix g in Gamma(2) with g(base) = p/q is found among M T^m N^-1, where
    M sends i*infinity to p/q, T is the unit translation and N sends
    i*infinity to the base point. The class is then read off from the
    abelianization of g.

    Args:
        cusp: Pair (p, q), (1, 0) for i*infinity
        n: Level

    Returns:
        The CuspClass of the point
    """
    p, q = psl2.normalize_cusp(*cusp)
    base = _base_of(p, q)
    _, s, t = exact_lattice.extended_gcd(p, q)
    to_point = psl2.ProjMatrix(p, -t, q, s)
    from_base = _BASE_MAPS[base].inverse()
    for m in (0, 1):
        g = to_point * psl2.power(_TRANSLATION, m) * from_base
        if psl2.gamma2_membership(g):
            a_exp, b_exp = psl2.abelianization(g)
            return cusp_class(a_exp, b_exp, base, n)
    raise RuntimeError(f"No Gamma(2) element takes {base} to {p}/{q}")


def coset_boundary(label: CosetLabel, n: int) -> CuspDivisor:
    """pi(g i*infinity) - pi(g 0) for the coset representative g."""
    rep = psl2.coset_representative(label, n)
    divisor: CuspDivisor = defaultdict(int)
    divisor[general_cusp_classify(psl2.act(rep, psl2.INFINITY), n)] += 1
    divisor[general_cusp_classify(psl2.act(rep, psl2.ZERO), n)] -= 1
    return {c: v for c, v in divisor.items() if v}


def boundary(v: Union[SymbolVector, ReducedCoords], n: int) -> CuspDivisor:
    """
    Boundary of a symbol combination, given either as {CosetLabel: coeff} or
    as coordinates in the free basis.
    """
    if isinstance(v, Mapping):
        terms = list(v.items())
    else:
        basis = free_basis(n)
        if len(v) != len(basis):
            raise ValueError(f"Expected {len(basis)} coordinates for n={n}, got {len(v)}")
        terms = list(zip(basis, v))

    divisor: CuspDivisor = defaultdict(int)
    for label, coeff in terms:
        if coeff:
            for cusp, mult in coset_boundary(label, n).items():
                divisor[cusp] += coeff * mult
    return {c: int(m) for c, m in divisor.items() if m}


@lru_cache(maxsize=None)
def boundary_matrix(n: int) -> exact_lattice.IntMatrix:
    """(n^2+1) x 3n matrix; row b is the boundary of basis element b in cusp_set order."""
    cusps = {c: col for col, c in enumerate(cusp_set(n))}
    basis = free_basis(n)
    out = np.zeros((len(basis), len(cusps)), dtype=object)
    for r, label in enumerate(basis):
        for cusp, mult in coset_boundary(label, n).items():
            out[r, cusps[cusp]] = mult
    out.setflags(write=False)
    return out
