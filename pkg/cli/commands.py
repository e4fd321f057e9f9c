"""
cli/commands.py

Command line front end. Each cmd_* function builds an OutputDocument; main()
parses arguments, writes the document to stdout and returns the exit code:
0 on success, 1 on bad input, 2 when an internal check fails.
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from core import exact_lattice, fermat_homology, manin, verification
from core.psl2 import CosetLabel

from .output import FORMATS, OutputDocument, decimal_rows, write_document

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2
ROW_VECTORS = "row-vectors"


class UsageError(Exception):
    """Raised by the argument parser instead of exiting."""


class VerificationFailed(Exception):
    """Raised when the invariant suite reports a failing check."""

    def __init__(self, doc: OutputDocument, message: str):
        super().__init__(message)
        self.doc = doc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def parse_symbol(text: str) -> CosetLabel:
    """
    Parse "i,j,k" into a coset label.

    Raises:
        ValueError: If the text is not three integers with 0 <= k <= 5
    """
    parts = [p.strip() for p in text.split(",")]
    try:
        i, j, k = (int(p) for p in parts)
    except ValueError:
        raise ValueError(f"Malformed symbol {text!r}; expected 'i,j,k'")
    if not 0 <= k <= 5:
        raise ValueError(f"Coset index k={k} out of range 0..5")
    return CosetLabel(i, j, k)


def _reduced_label(label: CosetLabel, n: int) -> CosetLabel:
    return CosetLabel(label.i % n, label.j % n, label.k)


def parse_pair(text: str) -> tuple:
    try:
        i, j = (int(p.strip()) for p in text.split(","))
    except ValueError:
        raise ValueError(f"Malformed index pair {text!r}; expected 'i,j'")
    return i, j


def cmd_basis(n: int, space: str = "ms") -> OutputDocument:
    """Free basis of the Manin symbols (ms) or the s basis of H_1 (h1)."""
    if space == "ms":
        basis = manin.free_basis(n)
        return OutputDocument(
            n=n,
            subject="basis",
            convention=ROW_VECTORS,
            row_labels=manin.basis_labels(n),
            column_labels=["i", "j", "k"],
            payload=decimal_rows(basis),
            notes=[f"free rank {len(basis)}"],
        )
    if space == "h1":
        data = fermat_homology.homology(n)
        return OutputDocument(
            n=n,
            subject="basis",
            convention=ROW_VECTORS,
            row_labels=data.s_labels,
            column_labels=manin.basis_labels(n) if data.rank else [],
            payload=decimal_rows(data.s_basis),
            notes=[f"rank {data.rank}", "rows are s[i,j] = eps0^i eps1^j (1-eps0)(1-eps1) gamma"],
        )
    raise ValueError(f"Unknown space {space!r}; expected ms or h1")


def cmd_reduce(n: int, symbol: str) -> OutputDocument:
    """Coordinates of a coset symbol in the free basis."""
    label = _reduced_label(parse_symbol(symbol), n)
    coords = manin.presentation(n).coords(label)
    return OutputDocument(
        n=n,
        subject="reduce",
        convention=ROW_VECTORS,
        row_labels=[manin.label_name(label)],
        column_labels=manin.basis_labels(n),
        payload=decimal_rows([coords]),
    )


def cmd_boundary(n: int, symbol: Optional[str] = None, cycle: Optional[str] = None) -> OutputDocument:
    """Boundary of a coset symbol, or of gamma[i,j] when cycle is given."""
    if (symbol is None) == (cycle is None):
        raise ValueError("Give exactly one of --symbol or --cycle")
    if cycle is not None:
        i, j = parse_pair(cycle)
        divisor = manin.boundary(fermat_homology.gamma_cycle(n, i, j), n)
        label = f"gamma[{i},{j}]"
    else:
        parsed = _reduced_label(parse_symbol(symbol), n)
        divisor = manin.boundary({parsed: 1}, n)
        label = manin.label_name(parsed)
    cusps = manin.cusp_set(n)
    return OutputDocument(
        n=n,
        subject="boundary",
        convention=ROW_VECTORS,
        row_labels=[label],
        column_labels=[str(c) for c in cusps],
        payload=decimal_rows([[divisor.get(c, 0) for c in cusps]]),
    )


def cmd_homology(n: int) -> OutputDocument:
    """gamma basis of H_1 with the s-to-gamma transition in the notes."""
    data = fermat_homology.homology(n)
    notes = [f"rank {data.rank}"]
    for label, row in zip(data.s_labels, data.s_to_gamma.tolist()):
        notes.append(f"{label} = " + " ".join(str(v) for v in row) + " in the gamma basis")
    return OutputDocument(
        n=n,
        subject="homology",
        convention=ROW_VECTORS,
        row_labels=data.gamma_labels,
        column_labels=manin.basis_labels(n) if data.rank else [],
        payload=decimal_rows(data.gamma_basis),
        notes=notes,
    )


def cmd_action(n: int, gen: str) -> OutputDocument:
    """Matrix of e0, e1 or e0e1 on H_1 in the s basis; phi on the Manin symbols."""
    if gen == "phi":
        labels = manin.basis_labels(n)
        matrix = fermat_homology.action_on_symbols("phi", n)
        notes = ["phi acts on the Manin symbols; it is not an element of Z[mu_n x mu_n]"]
    else:
        labels = fermat_homology.homology(n).s_labels
        matrix = fermat_homology.action_on_homology(gen, n)
        notes = [f"{gen} in the s basis"]
    return OutputDocument(
        n=n,
        subject="action",
        convention=fermat_homology.CONVENTION,
        row_labels=labels,
        column_labels=labels,
        payload=decimal_rows(matrix),
        notes=notes,
    )


def cmd_monodromy(n: int) -> OutputDocument:
    """Monodromy eps0*eps1 on H_1 and its characteristic polynomial."""
    data = fermat_homology.homology(n)
    matrix = fermat_homology.monodromy(n)
    coeffs = fermat_homology.characteristic_polynomial(matrix)
    return OutputDocument(
        n=n,
        subject="monodromy",
        convention=fermat_homology.CONVENTION,
        row_labels=data.s_labels,
        column_labels=data.s_labels,
        payload=decimal_rows(matrix),
        notes=[
            "characteristic polynomial coefficients (highest degree first): " + " ".join(str(c) for c in coeffs),
            f"determinant {exact_lattice.det(matrix)}",
        ],
    )


def cmd_verify(n_max: int) -> OutputDocument:
    """
    Run the invariant suite for n = 1..n_max.

    Raises:
        VerificationFailed: If any check fails; carries the report document
    """
    stats = verification.run_verification(n_max)
    verification.print_verification_report(stats)
    results = stats['results']
    doc = OutputDocument(
        n=n_max,
        subject="verify",
        convention=ROW_VECTORS,
        row_labels=[f"n={r['n']}:{r['check']}" for r in results],
        column_labels=["passed"],
        payload=[["1" if r['passed'] else "0"] for r in results],
        notes=[f"{stats['passed']} passed, {stats['failed']} failed"]
        + [f"n={r['n']}:{r['check']}: {r['detail']}" for r in results if not r['passed']],
    )
    if stats['failed']:
        raise VerificationFailed(doc, f"{stats['failed']} verification checks failed")
    return doc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fermatsym", description="Modular symbols and homology of Fermat curves.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=FORMATS, default="json", help="Output format")
        return p

    p = add("basis", "List a basis of the Manin symbols or of H_1")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--space", choices=("ms", "h1"), default="ms")

    p = add("reduce", "Reduce a coset symbol onto the free basis")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--symbol", required=True, help="Coset label i,j,k")

    p = add("boundary", "Boundary of a coset symbol or a gamma cycle")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--symbol", help="Coset label i,j,k")
    p.add_argument("--cycle", help="Cycle index i,j of gamma[i,j]")

    p = add("homology", "gamma basis of H_1")
    p.add_argument("--n", type=_positive, required=True)

    p = add("action", "Matrix of an automorphism")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--gen", choices=fermat_homology.GENERATORS, required=True)

    p = add("monodromy", "Monodromy of the Fermat surface fibration")
    p.add_argument("--n", type=_positive, required=True)

    p = add("verify", "Run the invariant suite")
    p.add_argument("--n-max", type=_positive, default=verification.DEFAULT_N_MAX)
    return parser


def _dispatch(args: argparse.Namespace) -> OutputDocument:
    if args.command == "basis":
        return cmd_basis(args.n, args.space)
    if args.command == "reduce":
        return cmd_reduce(args.n, args.symbol)
    if args.command == "boundary":
        return cmd_boundary(args.n, args.symbol, args.cycle)
    if args.command == "homology":
        return cmd_homology(args.n)
    if args.command == "action":
        return cmd_action(args.n, args.gen)
    if args.command == "monodromy":
        return cmd_monodromy(args.n)
    return cmd_verify(args.n_max)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except UsageError as e:
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        doc = _dispatch(args)
    except VerificationFailed as e:
        write_document(e.doc, args.format, sys.stdout)
        logger.error(str(e))
        return EXIT_VERIFY
    except ValueError as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_USAGE
    except RuntimeError as e:
        logger.error(f"Internal failure: {e}")
        return EXIT_VERIFY

    write_document(doc, args.format, sys.stdout)
    return EXIT_OK
