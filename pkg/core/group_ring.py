"""
core/group_ring.py

The group ring Z[mu_n x mu_n] and the geometric symbols a*gamma + b*gammabar
that generate the relative homology of the Fermat curve.

An element is stored as {(p, q): c} meaning sum c * eps0^p eps1^q, with
exponents reduced mod n and no zero coefficients.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, Mapping, Tuple, Union

Exponent = Tuple[int, int]


class GroupRingElement:
    """Element of Z[mu_n x mu_n] with generators eps0 and eps1."""

    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping[Exponent, int] = None):
        if n < 1:
            raise ValueError(f"Group ring order must be positive, got {n}")
        self.n = n
        self._coeffs: Dict[Exponent, int] = {}
        for (p, q), c in (coeffs or {}).items():
            key = (p % n, q % n)
            total = self._coeffs.get(key, 0) + c
            if total:
                self._coeffs[key] = total
            else:
                self._coeffs.pop(key, None)

    @classmethod
    def monomial(cls, n: int, p: int = 0, q: int = 0, coeff: int = 1) -> "GroupRingElement":
        return cls(n, {(p, q): coeff})

    @classmethod
    def one(cls, n: int) -> "GroupRingElement":
        return cls.monomial(n)

    @classmethod
    def eps0(cls, n: int) -> "GroupRingElement":
        return cls.monomial(n, 1, 0)

    @classmethod
    def eps1(cls, n: int) -> "GroupRingElement":
        return cls.monomial(n, 0, 1)

    @classmethod
    def norm(cls, n: int, p: int, q: int) -> "GroupRingElement":
        """1 + g + ... + g^(n-1) for g = eps0^p eps1^q."""
        return cls(n, {(k * p, k * q): 1 for k in range(n)}) if (p, q) != (0, 0) else cls.monomial(n, coeff=n)

    def items(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(sorted(self._coeffs.items()))

    def coefficient(self, p: int, q: int) -> int:
        return self._coeffs.get((p % self.n, q % self.n), 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other: "GroupRingElement") -> None:
        if other.n != self.n:
            raise ValueError(f"Cannot combine group ring elements of orders {self.n} and {other.n}")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        merged = dict(self._coeffs)
        for key, c in other._coeffs.items():
            merged[key] = merged.get(key, 0) + c
        return GroupRingElement(self.n, merged)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.n, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other: Union["GroupRingElement", int]) -> "GroupRingElement":
        if isinstance(other, int):
            return GroupRingElement(self.n, {k: c * other for k, c in self._coeffs.items()})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check(other)
        product: Dict[Exponent, int] = {}
        for (p1, q1), c1 in self._coeffs.items():
            for (p2, q2), c2 in other._coeffs.items():
                key = ((p1 + p2) % self.n, (q1 + q2) % self.n)
                product[key] = product.get(key, 0) + c1 * c2
        return GroupRingElement(self.n, product)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "GroupRingElement":
        if e < 0:
            raise ValueError("Only monomials are invertible; use a negative exponent in monomial()")
        result = GroupRingElement.one(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElement) and self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"{c}*e0^{p}*e1^{q}" for (p, q), c in self.items())


@dataclass(frozen=True)
class GeometricSymbol:
    """a*gamma + b*gammabar with a, b in Z[mu_n x mu_n]."""

    gamma_part: GroupRingElement
    gammabar_part: GroupRingElement = field(default=None)

    def __post_init__(self):
        if self.gammabar_part is None:
            object.__setattr__(self, "gammabar_part", GroupRingElement(self.gamma_part.n))
        if self.gamma_part.n != self.gammabar_part.n:
            raise ValueError("gamma and gammabar parts must live in the same group ring")

    @property
    def n(self) -> int:
        return self.gamma_part.n

    @classmethod
    def gamma(cls, n: int) -> "GeometricSymbol":
        return cls(GroupRingElement.one(n), GroupRingElement(n))

    @classmethod
    def gammabar(cls, n: int) -> "GeometricSymbol":
        return cls(GroupRingElement(n), GroupRingElement.one(n))

    def __add__(self, other: "GeometricSymbol") -> "GeometricSymbol":
        return GeometricSymbol(self.gamma_part + other.gamma_part, self.gammabar_part + other.gammabar_part)

    def __sub__(self, other: "GeometricSymbol") -> "GeometricSymbol":
        return GeometricSymbol(self.gamma_part - other.gamma_part, self.gammabar_part - other.gammabar_part)

    def __neg__(self) -> "GeometricSymbol":
        return GeometricSymbol(-self.gamma_part, -self.gammabar_part)

    def __rmul__(self, scalar: Union[GroupRingElement, int]) -> "GeometricSymbol":
        return GeometricSymbol(scalar * self.gamma_part, scalar * self.gammabar_part)
