"""Exact integer polynomials and truncated power series in one variable ``q``."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def format_poly(coeffs: Sequence[int], var: str = "q") -> str:
    """Render coefficients as ``1 + 2q - q^3``."""
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


@dataclass(frozen=True)
class QPolynomial:
    """Polynomial with integer coefficients; ``coeffs[k]`` multiplies ``q**k``."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> QPolynomial:
        if degree < 0:
            raise ValueError("negative degree")
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: QPolynomial) -> QPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(self[k] + other[k] for k in range(n))

    def __neg__(self) -> QPolynomial:
        return QPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: QPolynomial) -> QPolynomial:
        return self + (-other)

    def __mul__(self, other: QPolynomial | int) -> QPolynomial:
        if isinstance(other, int):
            return QPolynomial(other * c for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> QPolynomial:
        """Multiply by ``q**k`` (``k >= 0``)."""
        if k < 0:
            raise ValueError("negative shift")
        if not self.coeffs:
            return self
        return QPolynomial((0,) * k + self.coeffs)

    def __call__(self, q: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def to_series(self, order: int) -> QSeries:
        return QSeries(self.coeffs[: order + 1], order)

    def __str__(self) -> str:
        return format_poly(self.coeffs)


@dataclass(frozen=True)
class QSeries:
    """Power series known through ``q**trunc``; higher coefficients are unknown.

    Structural equality (``==``) compares truncation order too. Use
    :meth:`agrees_with` for the mathematically meaningful comparison.
    """

    coeffs: tuple[int, ...]
    trunc: int

    def __post_init__(self) -> None:
        if self.trunc < 0:
            raise ValueError("truncation order must be nonnegative")
        c = [int(x) for x in self.coeffs[: self.trunc + 1]]
        c += [0] * (self.trunc + 1 - len(c))
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def zero(cls, order: int) -> QSeries:
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> QSeries:
        return cls((1,), order)

    @classmethod
    def inverse_one_minus_q_power(cls, r: int, order: int) -> QSeries:
        """Expansion of ``(1 - q)**(-r)``."""
        return cls([comb(n + r - 1, n) if r else int(n == 0) for n in range(order + 1)], order)

    @classmethod
    def from_dict(cls, terms: dict[int, int], order: int) -> QSeries:
        c = [0] * (order + 1)
        for k, v in terms.items():
            if 0 <= k <= order:
                c[k] += v
        return cls(c, order)

    def __getitem__(self, k: int) -> int:
        if k > self.trunc:
            raise IndexError(f"coefficient of q^{k} unknown beyond order {self.trunc}")
        return self.coeffs[k] if k >= 0 else 0

    def truncate(self, order: int) -> QSeries:
        if order > self.trunc:
            raise ValueError(f"cannot extend a series known to order {self.trunc}")
        return QSeries(self.coeffs, order)

    def __add__(self, other: QSeries) -> QSeries:
        n = min(self.trunc, other.trunc)
        return QSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n)

    def __neg__(self) -> QSeries:
        return QSeries([-c for c in self.coeffs], self.trunc)

    def __sub__(self, other: QSeries) -> QSeries:
        return self + (-other)

    def __mul__(self, other: QSeries | QPolynomial | int) -> QSeries:
        if isinstance(other, int):
            return QSeries([other * c for c in self.coeffs], self.trunc)
        if isinstance(other, QPolynomial):
            other = other.to_series(self.trunc)
        n = min(self.trunc, other.trunc)
        out = [0] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return QSeries(out, n)

    __rmul__ = __mul__

    def shift(self, k: int) -> QSeries:
        """Multiply by ``q**k``; the truncation order grows by ``k``."""
        if k < 0:
            raise ValueError("negative shift")
        return QSeries((0,) * k + self.coeffs, self.trunc + k)

    def first_mismatch(self, other: QSeries | QPolynomial, order: int | None = None) -> int | None:
        """Lowest degree where the two differ, up to the common known order."""
        if isinstance(other, QPolynomial):
            other = other.to_series(self.trunc)
        n = min(self.trunc, other.trunc)
        if order is not None:
            n = min(n, order)
        for k in range(n + 1):
            if self.coeffs[k] != other.coeffs[k]:
                return k
        return None

    def agrees_with(self, other: QSeries | QPolynomial, order: int | None = None) -> bool:
        return self.first_mismatch(other, order) is None

    def is_polynomial_below(self, degree: int) -> bool:
        return all(c == 0 for c in self.coeffs[degree + 1 :])

    def to_polynomial(self) -> QPolynomial:
        """Drop the truncation tag (caller vouches the tail is zero)."""
        return QPolynomial(self.coeffs)

    def __str__(self) -> str:
        return f"{format_poly(self.coeffs)} + O(q^{self.trunc + 1})"
