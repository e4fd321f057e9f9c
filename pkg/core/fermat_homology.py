"""
core/fermat_homology.py

Homology of the Fermat curve x^n + y^n = z^n in terms of Manin symbols for
Phi(n): the dictionary between geometric symbols and cosets, the action of
eps0, eps1, phi and the monodromy eps0*eps1, and three bases of H_1
(the gamma cycles, the s basis and the Lim basis).

Action matrices use the columns-are-images convention: column b holds the
coordinates of the image of basis element b.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np
import sympy

from . import exact_lattice
from . import manin
from . import psl2
from .group_ring import GeometricSymbol, GroupRingElement
from .psl2 import CosetLabel

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

CONVENTION = "columns-are-images"

# left multiplication realising each automorphism on cosets
GENERATOR_MATRICES: Dict[str, psl2.ProjMatrix] = {
    "e0": psl2.A,
    "e1": psl2.B.inverse(),
    "e0e1": psl2.B.inverse() * psl2.A,
    "phi": psl2.TAU,
}
GENERATORS = tuple(GENERATOR_MATRICES)


def _readonly(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


def _check_generator(gen: str) -> psl2.ProjMatrix:
    if gen not in GENERATOR_MATRICES:
        raise ValueError(f"Unknown generator {gen!r}; expected one of {', '.join(GENERATORS)}")
    return GENERATOR_MATRICES[gen]


def geometric_to_coords(g: GeometricSymbol, n: int) -> List[int]:
    """
    Coordinates of a geometric symbol in the free basis of Manin symbols.

    eps0^p eps1^q gamma goes to x[p,-q] and eps0^p eps1^q gammabar to y[p,-q].

    Raises:
        ValueError: If g lives in the group ring of another order
    """
    if g.n != n:
        raise ValueError(f"Symbol is over Z[mu_{g.n} x mu_{g.n}], expected order {n}")
    symbol: Dict[CosetLabel, int] = defaultdict(int)
    for (p, q), c in g.gamma_part.items():
        symbol[CosetLabel(p % n, -q % n, manin.X_COSET)] += c
    for (p, q), c in g.gammabar_part.items():
        symbol[CosetLabel(p % n, -q % n, manin.Y_COSET)] += c
    return manin.reduce_symbol(symbol, n)


def relative_generators(n: int) -> List[GeometricSymbol]:
    """
    Generators eps0^i eps1^j gammabar (1 <= i <= n-1), eps0^(n-1) eps1^j gamma
    and eps1 gammabar, listed in the order of the free basis they map onto.
    """
    gens = []
    for label in manin.free_basis(n):
        monomial = GroupRingElement.monomial(n, label.i, -label.j)
        base = GeometricSymbol.gamma(n) if label.k == manin.X_COSET else GeometricSymbol.gammabar(n)
        gens.append(monomial * base)
    return gens


def defining_relation(n: int) -> GeometricSymbol:
    """eps0 gamma + eps0 eps1 gammabar - gamma - gammabar."""
    e0, e1, one = GroupRingElement.eps0(n), GroupRingElement.eps1(n), GroupRingElement.one(n)
    return GeometricSymbol(e0 - one, e0 * e1 - one)


def relative_relation(n: int) -> GeometricSymbol:
    """(1 - eps0) gamma - (eps0 eps1 - 1) gammabar."""
    e0, e1, one = GroupRingElement.eps0(n), GroupRingElement.eps1(n), GroupRingElement.one(n)
    return GeometricSymbol(one - e0, -(e0 * e1 - one))


@lru_cache(maxsize=None)
def action_on_symbols(gen: str, n: int) -> exact_lattice.IntMatrix:
    """
    Matrix of an automorphism on the Manin symbols ((n^2+1) square).

    e0 acts as [g] -> [A g], e1 as [g] -> [B^-1 g], e0e1 as [g] -> [B^-1 A g]
    and phi as [g] -> [tau g].

    Raises:
        ValueError: On an unknown generator
    """
    g = _check_generator(gen)
    pres = manin.presentation(n)
    out = np.zeros((pres.rank, pres.rank), dtype=object)
    for b, label in enumerate(pres.basis):
        out[:, b] = pres.coords(psl2.left_translate(label, g, n))
    return _readonly(out)


def apply_symbol_action(gen: str, coords, n: int) -> List[int]:
    """Image of a coordinate vector under action_on_symbols(gen, n)."""
    m = action_on_symbols(gen, n)
    return [int(v) for v in m.dot(np.array(list(coords), dtype=object))]


def apply_phi(g: GeometricSymbol, n: int) -> List[int]:
    """Coordinates of phi(g)."""
    return apply_symbol_action("phi", geometric_to_coords(g, n), n)


def _check_cycle_range(n: int, i: int, j: int, j_max: int) -> None:
    if not (1 <= i <= n - 2 and 0 <= j <= j_max):
        raise ValueError(f"Cycle index ({i},{j}) out of range for n={n}")


def gamma_cycle(n: int, i: int, j: int) -> List[int]:
    """
    gamma[i,j] = y[i,0] - y[i+1,n-1] + y[i+1,j] - y[i,j+1] in the free basis.

    Raises:
        ValueError: Unless 1 <= i <= n-2 and 0 <= j <= n-1
    """
    _check_cycle_range(n, i, j, n - 1)
    symbol: Dict[CosetLabel, int] = defaultdict(int)
    y = manin.Y_COSET
    symbol[CosetLabel(i % n, 0, y)] += 1
    symbol[CosetLabel((i + 1) % n, n - 1, y)] -= 1
    symbol[CosetLabel((i + 1) % n, j % n, y)] += 1
    symbol[CosetLabel(i % n, (j + 1) % n, y)] -= 1
    return manin.reduce_symbol(symbol, n)


def cycle_indices(n: int) -> List[Tuple[int, int]]:
    """Index pairs (i, j), 1 <= i <= n-2 outer, 0 <= j <= n-2 inner."""
    return [(i, j) for i in range(1, n - 1) for j in range(n - 1)]


def s_element(n: int, i: int = 0, j: int = 0) -> GroupRingElement:
    """eps0^i eps1^j (1 - eps0)(1 - eps1)."""
    one = GroupRingElement.one(n)
    return GroupRingElement.monomial(n, i, j) * (one - GroupRingElement.eps0(n)) * (one - GroupRingElement.eps1(n))


def s_cycle(n: int, i: int, j: int) -> List[int]:
    """Coordinates of s[i,j] = eps0^i eps1^j (1 - eps0)(1 - eps1) gamma."""
    return geometric_to_coords(s_element(n, i, j) * GeometricSymbol.gamma(n), n)


def gamma_difference(n: int, i: int, j: int) -> List[int]:
    """gamma[i,j+1] - gamma[i,j]."""
    _check_cycle_range(n, i, j, n - 2)
    return [a - b for a, b in zip(gamma_cycle(n, i, j + 1), gamma_cycle(n, i, j))]


def _rows(vectors: List[List[int]], ncols: int) -> exact_lattice.IntMatrix:
    return exact_lattice.as_int_matrix(vectors, ncols=ncols)


@dataclass(frozen=True, eq=False)
class HomologyData:
    """
    Bases of H_1 of the Fermat curve inside the Manin symbol coordinates.

    Rows of kernel, s_basis and gamma_basis are coordinate vectors. The
    transition matrices T satisfy T @ target = source, e.g.
    s_to_kernel @ kernel == s_basis.
    """

    n: int
    kernel: exact_lattice.IntMatrix
    s_basis: exact_lattice.IntMatrix
    gamma_basis: exact_lattice.IntMatrix
    s_to_kernel: exact_lattice.IntMatrix
    gamma_to_kernel: exact_lattice.IntMatrix
    s_to_gamma: exact_lattice.IntMatrix

    @property
    def rank(self) -> int:
        return self.s_basis.shape[0]

    @property
    def s_labels(self) -> List[str]:
        return [f"s[{i},{j}]" for i, j in cycle_indices(self.n)]

    @property
    def gamma_labels(self) -> List[str]:
        return [f"gamma[{i},{j}]" for i, j in cycle_indices(self.n)]


def _unimodular_transition(rows: exact_lattice.IntMatrix, basis: exact_lattice.IntMatrix, what: str):
    try:
        t = exact_lattice.transition_matrix(rows, basis)
    except ValueError as e:
        raise RuntimeError(f"{what}: {e}") from e
    if not exact_lattice.is_unimodular(t):
        raise RuntimeError(f"{what}: change of basis is not unimodular")
    return _readonly(t)


@lru_cache(maxsize=None)
def homology(n: int) -> HomologyData:
    """
    Assemble ker(boundary), the s basis and the gamma basis for level n.

    Raises:
        RuntimeError: If the bases do not span ker(boundary) unimodularly
    """
    try:
        width = n * n + 1
        kernel = _readonly(exact_lattice.kernel_basis(manin.boundary_matrix(n)))
        indices = cycle_indices(n)
        if not indices:
            logger.warning(f"Fermat curve of degree {n} has genus 0; homology is empty")
            empty = np.zeros((0, 0), dtype=object)
            rows = np.zeros((0, width), dtype=object)
            return HomologyData(n, kernel, rows, rows, empty, empty, empty)

        s_basis = _readonly(_rows([s_cycle(n, i, j) for i, j in indices], width))
        gamma_basis = _readonly(_rows([gamma_cycle(n, i, j) for i, j in indices], width))
        if kernel.shape[0] != len(indices):
            raise RuntimeError(f"Kernel rank {kernel.shape[0]} differs from {len(indices)}")

        data = HomologyData(
            n=n,
            kernel=kernel,
            s_basis=s_basis,
            gamma_basis=gamma_basis,
            s_to_kernel=_unimodular_transition(s_basis, kernel, "s basis"),
            gamma_to_kernel=_unimodular_transition(gamma_basis, kernel, "gamma basis"),
            s_to_gamma=_unimodular_transition(s_basis, gamma_basis, "s to gamma"),
        )
        logger.info(f"Homology for n={n}: rank {data.rank}")
        return data
    except Exception as e:
        logger.error(f"Failed to assemble homology for n={n}: {e}")
        raise


@lru_cache(maxsize=None)
def action_on_homology(gen: str, n: int) -> exact_lattice.IntMatrix:
    """
    Matrix of e0, e1, e0e1 or phi on H_1 in the s basis.

    Raises:
        ValueError: On an unknown generator
        RuntimeError: If an image falls outside the s basis lattice
    """
    _check_generator(gen)
    data = homology(n)
    k = data.rank
    out = np.zeros((k, k), dtype=object)
    if k == 0:
        return _readonly(out)

    symbols = action_on_symbols(gen, n)
    solver = exact_lattice.LatticeSolver(data.s_basis)
    for r in range(k):
        image = symbols.dot(data.s_basis[r])
        coeffs = solver.solve(list(image))
        if coeffs is None:
            raise RuntimeError(f"Image of s basis element {r} under {gen} is not in H_1 for n={n}")
        out[:, r] = coeffs
    return _readonly(out)


def monodromy(n: int) -> exact_lattice.IntMatrix:
    """Monodromy of the Fermat surface fibration on a fiber: eps0*eps1 on H_1."""
    return action_on_homology("e0e1", n)


def annihilator_check(n: int) -> Dict[str, bool]:
    """
    Whether sum_i eps0^i, sum_i eps1^i and sum_i (eps0 eps1)^i act as zero on H_1.
    """
    report = {}
    for name, gen in (("sum eps0^i", "e0"), ("sum eps1^i", "e1"), ("sum (eps0 eps1)^i", "e0e1")):
        m = action_on_homology(gen, n)
        total = np.zeros(m.shape, dtype=object)
        for i in range(n):
            total = total + exact_lattice.matrix_power(m, i)
        report[name] = not any(total.flatten())
    return report


def _fold(poly: GroupRingElement) -> Dict[Tuple[int, int], int]:
    # eps^(n-1) = -(1 + eps + ... + eps^(n-2)) on H_1, applied to eps0 then eps1
    n = poly.n
    folded: Dict[Tuple[int, int], int] = defaultdict(int)
    for (a, b), c in poly.items():
        if a == n - 1:
            for a2 in range(n - 1):
                folded[(a2, b)] -= c
        else:
            folded[(a, b)] += c
    out: Dict[Tuple[int, int], int] = defaultdict(int)
    for (a, b), c in folded.items():
        if b == n - 1:
            for b2 in range(n - 1):
                out[(a, b2)] -= c
        else:
            out[(a, b)] += c
    return {key: c for key, c in out.items() if c}


@lru_cache(maxsize=None)
def closed_form_action(n: int) -> Tuple[exact_lattice.IntMatrix, exact_lattice.IntMatrix]:
    """
    Matrices of e0 and e1 on the s basis derived in the group ring alone.

    After folding eps0^(n-1) and eps1^(n-1), the monomials eps1^b s with no
    eps0 factor are the only ones outside the basis; the relations
    eps0^c (1 + eps0 eps1 + ... + (eps0 eps1)^(n-1)) s = 0 for c < n-1 pin
    them down.

    Raises:
        ValueError: If n < 3
        RuntimeError: If the system is singular or has a non-integral solution
    """
    if n < 3:
        raise ValueError(f"Closed form needs n >= 3, got {n}")
    indices = cycle_indices(n)
    position = {pair: r for r, pair in enumerate(indices)}
    k = len(indices)

    norm = GroupRingElement.norm(n, 1, 1)
    lhs = sympy.zeros(n - 1, n - 1)
    rhs = sympy.zeros(n - 1, k)
    for c in range(n - 1):
        for (a, b), coeff in _fold(GroupRingElement.monomial(n, c, 0) * norm).items():
            if a == 0:
                lhs[c, b] += coeff
            else:
                rhs[c, position[(a, b)]] -= coeff

    if lhs.det() == 0:
        raise RuntimeError(f"Group ring system for n={n} is singular")
    solution = lhs.LUsolve(rhs)
    if any(not entry.is_integer for entry in solution):
        raise RuntimeError(f"Group ring system for n={n} has a non-integral solution")
    free_part = [[int(solution[b, r]) for r in range(k)] for b in range(n - 1)]

    def coords(a: int, b: int) -> List[int]:
        vec = [0] * k
        for (a2, b2), c in _fold(GroupRingElement.monomial(n, a, b)).items():
            if a2 == 0:
                vec = [v + c * w for v, w in zip(vec, free_part[b2])]
            else:
                vec[position[(a2, b2)]] += c
        return vec

    e0 = np.zeros((k, k), dtype=object)
    e1 = np.zeros((k, k), dtype=object)
    for r, (i, j) in enumerate(indices):
        e0[:, r] = coords(i + 1, j)
        e1[:, r] = coords(i, j + 1)
    logger.debug(f"Closed form action for n={n} solved with determinant {lhs.det()}")
    return _readonly(e0), _readonly(e1)


def lim_generator(n: int) -> GroupRingElement:
    """
    eps0^h eps1^h (1 - eps0)(1 - eps1) with h = (n-1)/2 for odd n,
    (1 - eps0^(n-1))(1 - eps1^(n-1)) for even n.
    """
    one = GroupRingElement.one(n)
    if n % 2:
        h = (n - 1) // 2
        return s_element(n, h, h)
    return (one - GroupRingElement.monomial(n, n - 1, 0)) * (one - GroupRingElement.monomial(n, 0, n - 1))


def lim_basis(n: int) -> exact_lattice.IntMatrix:
    """Rows eps0^i eps1^j g gamma for 0 <= i <= n-2, 0 <= j <= n-3."""
    if n < 3:
        raise ValueError(f"Lim basis needs n >= 3, got {n}")
    g = lim_generator(n) * GeometricSymbol.gamma(n)
    rows = [
        geometric_to_coords(GroupRingElement.monomial(n, i, j) * g, n)
        for i in range(n - 1)
        for j in range(n - 2)
    ]
    return _readonly(_rows(rows, n * n + 1))


def characteristic_polynomial(m) -> List[int]:
    """Coefficients of det(lambda I - m), highest degree first."""
    m = exact_lattice.as_int_matrix(m)
    if m.shape[0] == 0:
        return [1]
    lam = sympy.Symbol("lambda")
    return [int(c) for c in sympy.Matrix(m.tolist()).charpoly(lam).all_coeffs()]
