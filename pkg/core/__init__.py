# core/__init__.py

"""
Core functionality for fermatsym.
"""

from .exact_lattice import hnf, snf, kernel_basis, solve_in_lattice, elementary_divisors, LatticeSolver
from .psl2 import ProjMatrix, CosetLabel, coset_label, gamma2_word, abelianization, phi_membership
from .manin import presentation, relation_matrix, boundary, boundary_matrix, cusp_set, general_cusp_classify
from .group_ring import GroupRingElement, GeometricSymbol
from .fermat_homology import homology, action_on_symbols, action_on_homology, monodromy, closed_form_action, lim_basis
from .verification import run_verification, print_verification_report
