"""Dense integer polynomials in one variable and their gamma-basis coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence, Union

from .errors import PreconditionError

Coeffs = tuple[int, ...]


class IntPolynomial:
    """Immutable polynomial with integer coefficients, lowest degree first.

    Trailing zeros are trimmed, so the zero polynomial has ``coeffs == ()``
    and degree ``-1`` (standing in for minus infinity).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: Coeffs = tuple(c)

    @classmethod
    def monomial(cls, k: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * k + [coeff])

    @classmethod
    def one_plus_t_pow(cls, k: int) -> "IntPolynomial":
        return cls(comb(k, i) for i in range(k + 1))

    @classmethod
    def geometric(cls, k: int) -> "IntPolynomial":
        """1 + t + ... + t^(k-1)."""
        return cls([1] * k)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        o = _lift(other)
        m = max(len(self.coeffs), len(o.coeffs))
        return IntPolynomial(self[i] + o[i] for i in range(m))

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        return self + (-_lift(other))

    def __rsub__(self, other: int) -> "IntPolynomial":
        return _lift(other) - self

    def __mul__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int = 1) -> "IntPolynomial":
        """Multiply by t^k."""
        if not self.coeffs:
            return self
        return IntPolynomial([0] * k + list(self.coeffs))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def _lift(x: Union[IntPolynomial, int]) -> IntPolynomial:
    return x if isinstance(x, IntPolynomial) else IntPolynomial([x])


def poly_sum(polys: Iterable[IntPolynomial]) -> IntPolynomial:
    acc = IntPolynomial()
    for p in polys:
        acc = acc + p
    return acc


def is_palindromic(p: IntPolynomial, d: int) -> bool:
    if p.degree > d:
        return False
    return all(p[i] == p[d - i] for i in range(d + 1))


# ---------------------------------------------------------------- gamma basis


@dataclass(frozen=True)
class GammaDecomposition:
    d: int
    gamma: Coeffs

    def as_polynomial(self) -> IntPolynomial:
        """The gamma polynomial sum_i gamma_i t^i."""
        return IntPolynomial(self.gamma)

    def expand(self) -> IntPolynomial:
        return poly_sum(
            IntPolynomial.one_plus_t_pow(self.d - 2 * i).shift(i) * g for i, g in enumerate(self.gamma)
        )

    def nonnegative(self) -> bool:
        return all(g >= 0 for g in self.gamma)

    def to_json(self) -> dict:
        return {"d": self.d, "gamma": list(self.gamma)}


def gamma_decompose(p: IntPolynomial, d: int) -> GammaDecomposition:
    """Coordinates of a degree-``d`` palindromic polynomial in the basis t^i (1+t)^(d-2i).

    Peels from the constant end: after removing gamma_0 .. gamma_(i-1), the
    lowest surviving coefficient is t^i and equals gamma_i.
    """
    if d < 0:
        raise PreconditionError("symmetry degree must be nonnegative")
    if p.degree > d:
        raise PreconditionError(f"degree {p.degree} exceeds symmetry degree {d}")
    for i in range(d + 1):
        if p[i] != p[d - i]:
            raise PreconditionError(f"not palindromic about degree {d}: coefficient {i} != coefficient {d - i}")
    rest = list(p[i] for i in range(d + 1))
    gamma = []
    for i in range(d // 2 + 1):
        g = rest[i]
        gamma.append(g)
        if g:
            for k in range(d - 2 * i + 1):
                rest[i + k] -= g * comb(d - 2 * i, k)
    if any(rest):
        raise ArithmeticError(f"gamma peeling left residual {rest}")
    return GammaDecomposition(d, tuple(gamma))


def poly_from_json(data: Sequence[int]) -> IntPolynomial:
    return IntPolynomial(data)
