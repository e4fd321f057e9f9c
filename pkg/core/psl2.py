"""
core/psl2.py

The group PSL2(Z), its free subgroup Gamma(2) = <A, B>, word decomposition in
A and B, and the right cosets Phi(n) A^i B^j alpha_k of the Fermat group Phi(n).
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, List, NamedTuple, Tuple

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

Word = List[Tuple[str, int]]
Cusp = Tuple[int, int]

INFINITY: Cusp = (1, 0)
ZERO: Cusp = (0, 1)
ONE: Cusp = (1, 1)


@dataclass(frozen=True)
class ProjMatrix:
    """
    Element of PSL2(Z): an integer matrix [[a, b], [c, d]] with ad - bc = 1,
    stored with the first nonzero entry of (a, b, c, d) positive so that M and
    -M compare equal.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"Determinant of {self.entries()} is not 1")
        first = next(v for v in self.entries() if v != 0)
        if first < 0:
            for name in ("a", "b", "c", "d"):
                object.__setattr__(self, name, -getattr(self, name))

    def entries(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "ProjMatrix") -> "ProjMatrix":
        return ProjMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "ProjMatrix":
        return ProjMatrix(self.d, -self.b, -self.c, self.a)

    def mod2(self) -> Tuple[int, int, int, int]:
        return (self.a % 2, self.b % 2, self.c % 2, self.d % 2)

    def __repr__(self) -> str:
        return f"ProjMatrix([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


class CosetLabel(NamedTuple):
    """Names the right coset Phi(n) A^i B^j alpha_k."""

    i: int
    j: int
    k: int


IDENTITY = ProjMatrix(1, 0, 0, 1)
A = ProjMatrix(1, 2, 0, 1)
B = ProjMatrix(1, 0, 2, 1)
SIGMA = ProjMatrix(0, 1, -1, 0)
TAU = ProjMatrix(0, -1, 1, -1)
J = ProjMatrix(-1, 0, 0, -1)

# right coset representatives of Gamma(2) in PSL2(Z)
ALPHAS: Tuple[ProjMatrix, ...] = (
    IDENTITY,
    ProjMatrix(1, 1, -1, 0),
    TAU,
    SIGMA,
    ProjMatrix(1, 1, 0, 1),
    ProjMatrix(1, 0, 1, 1),
)

GENERATORS: Dict[str, ProjMatrix] = {"A": A, "B": B}

_MOD2_INDEX: Dict[Tuple[int, int, int, int], int] = {alpha.mod2(): k for k, alpha in enumerate(ALPHAS)}
if len(_MOD2_INDEX) != len(ALPHAS):
    raise RuntimeError("Coset representatives do not have distinct images in SL2(Z/2)")
_ALPHA_INVERSES = tuple(alpha.inverse() for alpha in ALPHAS)


def constants() -> Dict[str, ProjMatrix]:
    """Named matrices A, B, sigma, tau, J and alpha0..alpha5 (sign-normalized)."""
    named = {"A": A, "B": B, "sigma": SIGMA, "tau": TAU, "J": J}
    named.update({f"alpha{k}": alpha for k, alpha in enumerate(ALPHAS)})
    return named


def mul(*factors: ProjMatrix) -> ProjMatrix:
    """Product of any number of matrices; the empty product is the identity."""
    result = IDENTITY
    for f in factors:
        result = result * f
    return result


def inv(m: ProjMatrix) -> ProjMatrix:
    return m.inverse()


def power(m: ProjMatrix, e: int) -> ProjMatrix:
    """m**e for any integer e."""
    base = m if e >= 0 else m.inverse()
    e = abs(e)
    result = IDENTITY
    while e:
        if e & 1:
            result = result * base
        base = base * base
        e >>= 1
    return result


def gamma2_membership(m: ProjMatrix) -> bool:
    """True iff m reduces to the identity mod 2."""
    return m.mod2() == (1, 0, 0, 1)


def reduce_word(letters: Iterable[Tuple[str, int]]) -> Word:
    """Free reduction: merge adjacent powers of the same generator, drop zeros."""
    out: Word = []
    for gen, e in letters:
        if gen not in GENERATORS:
            raise ValueError(f"Unknown generator {gen!r}")
        if out and out[-1][0] == gen:
            e += out.pop()[1]
        if e != 0:
            out.append((gen, e))
    return out


def evaluate_word(word: Iterable[Tuple[str, int]]) -> ProjMatrix:
    return mul(*(power(GENERATORS[gen], e) for gen, e in word))


def gamma2_word(m: ProjMatrix) -> Word:
    """
    Write m in Gamma(2) as a reduced word in A and B.

    Left multiplication by powers of A (resp. B) shrinks a (resp. c) modulo
    2c (resp. 2a) until the first column is (1, 0); what remains is a power of A.

    Args:
        m: Element of Gamma(2)

    Returns:
        List of (generator, nonzero exponent) with adjacent generators distinct

    Raises:
        ValueError: If m is not in Gamma(2)
    """
    if not gamma2_membership(m):
        raise ValueError(f"{m!r} is not in Gamma(2)")

    a, b, c, d = m.entries()
    steps: Word = []
    while c != 0:
        if abs(a) > abs(c):
            r = a % (2 * abs(c))
            if r > abs(c):
                r -= 2 * abs(c)
            k = (r - a) // (2 * c)
            a, b = a + 2 * k * c, b + 2 * k * d
            steps.append(("A", -k))
        else:
            r = c % (2 * abs(a))
            if r > abs(a):
                r -= 2 * abs(a)
            k = (r - c) // (2 * a)
            c, d = c + 2 * k * a, d + 2 * k * b
            steps.append(("B", -k))
    if a < 0:
        b = -b
    steps.append(("A", b // 2))
    return reduce_word(steps)


def abelianization(m: ProjMatrix) -> Tuple[int, int]:
    """
    Image of m in Gamma(2)^ab = Z^2: (sum of A-exponents, sum of B-exponents).

    Raises:
        ValueError: If m is not in Gamma(2)
    """
    p = q = 0
    for gen, e in gamma2_word(m):
        if gen == "A":
            p += e
        else:
            q += e
    return p, q


def phi_membership(m: ProjMatrix, n: int) -> bool:
    """True iff m lies in Phi(n) = <A^n, B^n, [Gamma(2), Gamma(2)]>."""
    if not gamma2_membership(m):
        return False
    p, q = abelianization(m)
    return p % n == 0 and q % n == 0


def coset_label(m: ProjMatrix, n: int) -> CosetLabel:
    """
    Label (i, j, k) of the right coset Phi(n) m = Phi(n) A^i B^j alpha_k.

    k comes from the image of m in SL2(Z/2); (i, j) is the abelianization of
    m alpha_k^-1 reduced mod n.
    """
    k = _MOD2_INDEX[m.mod2()]
    p, q = abelianization(m * _ALPHA_INVERSES[k])
    return CosetLabel(p % n, q % n, k)


def coset_representative(label: CosetLabel, n: int) -> ProjMatrix:
    """The matrix A^i B^j alpha_k for a label."""
    i, j, k = label
    if not (0 <= k < len(ALPHAS)):
        raise ValueError(f"Coset index k={k} out of range 0..5")
    return power(A, i % n) * power(B, j % n) * ALPHAS[k]


def left_translate(label: CosetLabel, g: ProjMatrix, n: int) -> CosetLabel:
    """
    Label of g A^i B^j alpha_k. Well defined on cosets when g normalizes Phi(n),
    which holds for A, B, tau and sigma.
    """
    return coset_label(g * coset_representative(label, n), n)


def normalize_cusp(p: int, q: int) -> Cusp:
    """Reduced pair for p/q in P1(Q): coprime, q > 0, infinity as (1, 0)."""
    if p == 0 and q == 0:
        raise ValueError("0/0 is not a point of P1(Q)")
    g = gcd(p, q)
    p, q = p // g, q // g
    if q == 0:
        return INFINITY
    if q < 0:
        p, q = -p, -q
    return (p, q)


def act(m: ProjMatrix, cusp: Cusp) -> Cusp:
    """Fractional linear action of m on a cusp p/q."""
    p, q = cusp
    return normalize_cusp(m.a * p + m.b * q, m.c * p + m.d * q)
