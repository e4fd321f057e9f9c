"""
core/verification.py

Runs the invariant suite over levels n = 1..n_max and collects the outcome of
every check into a stats report.
"""

import logging
import time
from collections import defaultdict
from typing import Callable, Dict, List, Tuple

import numpy as np

from . import exact_lattice
from . import fermat_homology
from . import manin
from . import psl2
from .psl2 import CosetLabel

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

DEFAULT_N_MAX = 5

CheckResult = Tuple[bool, str]


def _coset_boundary_matrix(n: int) -> exact_lattice.IntMatrix:
    cusps = {c: col for col, c in enumerate(manin.cusp_set(n))}
    cosets = manin.enumerate_cosets(n)
    out = np.zeros((len(cosets), len(cusps)), dtype=object)
    for r, label in enumerate(cosets):
        for cusp, mult in manin.coset_boundary(label, n).items():
            out[r, cusps[cusp]] = mult
    return out


def check_relation_supports(n: int) -> CheckResult:
    rows = manin.relation_matrix(n).tolist()
    half = len(rows) // 2
    for r, row in enumerate(rows):
        support = sorted(v for v in row if v)
        expected = [1, 1] if r < half else [1, 1, 1]
        if support != expected:
            return False, f"relation row {r} has entries {support}"
    return True, f"{len(rows)} rows, no sigma- or tau-fixed coset"


def check_relation_rank(n: int) -> CheckResult:
    divisors = exact_lattice.elementary_divisors(manin.relation_matrix(n))
    zeros = divisors.count(0)
    torsion = [d for d in divisors if d > 1]
    ok = zeros == n * n + 1 and not torsion
    return ok, f"free rank {zeros}, torsion {torsion or 'none'}"


def check_relation_boundary(n: int) -> CheckResult:
    product = manin.relation_matrix(n).dot(_coset_boundary_matrix(n))
    bad = [r for r, row in enumerate(product.tolist()) if any(row)]
    return not bad, f"relation rows with nonzero boundary: {bad[:5] or 'none'}"


def check_reduction_soundness(n: int) -> CheckResult:
    pres = manin.presentation(n)
    solver = exact_lattice.LatticeSolver(manin.relation_matrix(n))
    basis_columns = [manin.coset_index(label, n) for label in pres.basis]
    for c, label in enumerate(manin.enumerate_cosets(n)):
        diff = [0] * (6 * n * n)
        diff[c] += 1
        for b, col in enumerate(basis_columns):
            diff[col] -= pres.reduction[c, b]
        if solver.solve(diff) is None:
            return False, f"reduction of {manin.label_name(label)} is not a consequence of the relations"
    return True, f"{6 * n * n} cosets reduce soundly"


def check_derived_relation(n: int) -> CheckResult:
    for i in range(n):
        for j in range(n):
            lhs = manin.reduce_symbol({CosetLabel(i, j, 0): 1, CosetLabel(i, j, 2): 1}, n)
            rhs = manin.reduce_symbol(
                {CosetLabel((i + 1) % n, j, 0): 1, CosetLabel((i + 1) % n, (j - 1) % n, 2): 1}, n
            )
            if lhs != rhs:
                return False, f"x+y relation fails at ({i},{j})"
    return True, "x[i,j] + y[i,j] = x[i+1,j] + y[i+1,j-1]"


def check_cusps(n: int) -> CheckResult:
    cusps = manin.cusp_set(n)
    if len(set(cusps)) != 3 * n:
        return False, f"{len(set(cusps))} cusps"
    for i in range(n):
        for j in range(n):
            g = psl2.power(psl2.A, i) * psl2.power(psl2.B, j)
            for base, point in (("zero", psl2.ZERO), ("one", psl2.ONE), ("infinity", psl2.INFINITY)):
                found = manin.general_cusp_classify(psl2.act(g, point), n)
                if found != manin.cusp_class(i, j, base, n):
                    return False, f"A^{i}B^{j}.{base} classified as {found}"
    return True, f"{3 * n} cusps"


def check_boundary_rank(n: int) -> CheckResult:
    d = manin.boundary_matrix(n)
    image_rank = exact_lattice.rank(d)
    kernel_rank = exact_lattice.kernel_basis(d).shape[0]
    ok = image_rank == 3 * n - 1 and kernel_rank == (n - 1) * (n - 2)
    return ok, f"image rank {image_rank}, kernel rank {kernel_rank}"


def check_geometric_dictionary(n: int) -> CheckResult:
    images = [fermat_homology.geometric_to_coords(g, n) for g in fermat_homology.relative_generators(n)]
    if not np.array_equal(exact_lattice.as_int_matrix(images), exact_lattice.identity(n * n + 1)):
        return False, "generators do not map onto the free basis"
    for name, rel in (("defining", fermat_homology.defining_relation(n)),
                      ("relative", fermat_homology.relative_relation(n))):
        if any(fermat_homology.geometric_to_coords(rel, n)):
            return False, f"{name} relation does not vanish"
    return True, "generators map onto the free basis; relations vanish"


def check_symbol_group_laws(n: int) -> CheckResult:
    act = {gen: fermat_homology.action_on_symbols(gen, n) for gen in fermat_homology.GENERATORS}
    e0, e1, e0e1, phi = act["e0"], act["e1"], act["e0e1"], act["phi"]
    ident = exact_lattice.identity(n * n + 1)
    power = exact_lattice.matrix_power
    failures = []
    if not np.array_equal(e0.dot(e1), e1.dot(e0)):
        failures.append("e0 e1 != e1 e0")
    if not np.array_equal(e0.dot(e1), e0e1):
        failures.append("e0 e1 != e0e1")
    if not (np.array_equal(power(e0, n), ident) and np.array_equal(power(e1, n), ident)):
        failures.append("e0^n or e1^n != 1")
    if not np.array_equal(power(phi, 3), ident):
        failures.append("phi^3 != 1")
    if not np.array_equal(phi.dot(e0), e1.dot(phi)):
        failures.append("phi e0 != e1 phi")
    if not np.array_equal(phi.dot(e1), power(e0e1, n - 1).dot(phi)):
        failures.append("phi e1 != (e0e1)^-1 phi")
    return not failures, "; ".join(failures) or "commute, orders and intertwining hold"


def check_gamma_cycles(n: int) -> CheckResult:
    for i in range(1, n - 1):
        if any(fermat_homology.gamma_cycle(n, i, n - 1)):
            return False, f"gamma[{i},{n - 1}] is not zero"
        for j in range(n):
            if manin.boundary(fermat_homology.gamma_cycle(n, i, j), n):
                return False, f"gamma[{i},{j}] has nonzero boundary"
    data = fermat_homology.homology(n)
    differences = [fermat_homology.gamma_difference(n, i, j) for i, j in fermat_homology.cycle_indices(n)]
    if not exact_lattice.lattice_equal(exact_lattice.as_int_matrix(differences), data.kernel):
        return False, "gamma differences do not span the kernel"
    return True, f"gamma, s and difference bases span a rank {data.rank} kernel"


def check_annihilators(n: int) -> CheckResult:
    report = fermat_homology.annihilator_check(n)
    failed = [name for name, ok in report.items() if not ok]
    return not failed, f"not zero: {failed}" if failed else "all norm elements act as zero"


def check_homology_action(n: int) -> CheckResult:
    act = {gen: fermat_homology.action_on_homology(gen, n) for gen in ("e0", "e1", "e0e1")}
    k = act["e0"].shape[0]
    ident = exact_lattice.identity(k)
    failures = []
    if not np.array_equal(act["e0"].dot(act["e1"]), act["e0e1"]):
        failures.append("e0 e1 != e0e1")
    if not np.array_equal(act["e1"].dot(act["e0"]), act["e0e1"]):
        failures.append("e1 e0 != e0e1")
    for gen, m in act.items():
        if not np.array_equal(exact_lattice.matrix_power(m, n), ident):
            failures.append(f"{gen}^n != 1")
        if not exact_lattice.is_unimodular(m):
            failures.append(f"det {gen} != +-1")
    phi = fermat_homology.action_on_homology("phi", n)
    if not np.array_equal(exact_lattice.matrix_power(phi, 3), ident):
        failures.append("phi^3 != 1")
    return not failures, "; ".join(failures) or f"{k}x{k} action consistent"


def check_closed_form(n: int) -> CheckResult:
    e0, e1 = fermat_homology.closed_form_action(n)
    ok = np.array_equal(e0, fermat_homology.action_on_homology("e0", n)) and np.array_equal(
        e1, fermat_homology.action_on_homology("e1", n)
    )
    return ok, "closed form matches" if ok else "closed form differs from the kernel solve"


def check_lim_basis(n: int) -> CheckResult:
    data = fermat_homology.homology(n)
    t = exact_lattice.transition_matrix(fermat_homology.lim_basis(n), data.s_basis)
    ok = exact_lattice.is_unimodular(t)
    return ok, f"transition determinant {exact_lattice.det(t)}"


# (name, smallest n, largest n, function)
CHECKS: List[Tuple[str, int, int, Callable[[int], CheckResult]]] = [
    ("relation_supports", 1, 12, check_relation_supports),
    ("relation_rank", 1, 12, check_relation_rank),
    ("relation_boundary", 1, 12, check_relation_boundary),
    ("reduction_soundness", 1, 8, check_reduction_soundness),
    ("derived_relation", 1, 12, check_derived_relation),
    ("cusps", 1, 12, check_cusps),
    ("boundary_rank", 1, 12, check_boundary_rank),
    ("geometric_dictionary", 1, 10, check_geometric_dictionary),
    ("symbol_group_laws", 1, 10, check_symbol_group_laws),
    ("gamma_cycles", 3, 8, check_gamma_cycles),
    ("annihilators", 3, 10, check_annihilators),
    ("homology_action", 3, 10, check_homology_action),
    ("closed_form", 3, 8, check_closed_form),
    ("lim_basis", 3, 8, check_lim_basis),
]


def run_verification(n_max: int = DEFAULT_N_MAX) -> Dict:
    """
    Run every check for n = 1..n_max.

    Args:
        n_max: Largest level to verify

    Returns:
        dict with 'results' (list of {n, check, passed, detail}), 'passed',
        'failed' and 'errors' (exceptions raised by checks)

    Raises:
        ValueError: If n_max < 1
    """
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")

    stats = {
        'results': [],
        'passed': 0,
        'failed': 0,
        'timings': defaultdict(float),
        'errors': [],
    }
    logger.info(f"Starting verification for n = 1..{n_max}")

    for n in range(1, n_max + 1):
        for name, min_n, max_n, check in CHECKS:
            if not min_n <= n <= max_n:
                continue
            start = time.perf_counter()
            try:
                passed, detail = check(n)
            except Exception as e:
                logger.error(f"Check {name} raised for n={n}: {str(e)}")
                stats['errors'].append(f"{name} (n={n}): {str(e)}")
                passed, detail = False, f"raised {type(e).__name__}: {e}"
            elapsed = time.perf_counter() - start
            stats['timings'][name] += elapsed
            logger.debug(f"{name} n={n}: {'pass' if passed else 'FAIL'} in {elapsed:.3f}s")

            stats['results'].append({'n': n, 'check': name, 'passed': passed, 'detail': detail})
            stats['passed' if passed else 'failed'] += 1

    logger.info(f"Verification complete: {stats['passed']} passed, {stats['failed']} failed")
    return stats


def print_verification_report(stats: Dict) -> None:
    """Log a readable summary of run_verification() output."""
    if not stats:
        logger.error("No verification results to print")
        return

    logger.info("Verification Results:")
    logger.info("=" * 50)
    for row in stats['results']:
        status = "pass" if row['passed'] else "FAIL"
        logger.info(f"  n={row['n']:<3} {row['check']:<22} {status}  {row['detail']}")

    logger.info("Time per check:")
    for name, seconds in stats['timings'].items():
        logger.info(f"  {name}: {seconds:.2f}s")

    if stats['errors']:
        logger.warning("Errors Encountered:")
        for error in stats['errors']:
            logger.warning(f"  {error}")
    logger.info(f"Total: {stats['passed']} passed, {stats['failed']} failed")
