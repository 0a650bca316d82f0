"""Exact integer Laurent polynomials in one formal variable A."""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPolynomial:
    """Integer-coefficient Laurent polynomial, stored as {exponent: coefficient}.

    Zero coefficients are never stored, so equality is exact map equality.
    Instances are immutable and hashable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for exp, c in items:
            if c:
                acc[exp] = acc.get(exp, 0) + c
                if not acc[exp]:
                    del acc[exp]
        self._coeffs = dict(sorted(acc.items()))

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coefficient})

    def items(self) -> list[tuple[int, int]]:
        return list(self._coeffs.items())

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(tuple(self._coeffs.items()))

    def __add__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        acc = dict(self._coeffs)
        for exp, c in other._coeffs.items():
            acc[exp] = acc.get(exp, 0) + c
            if not acc[exp]:
                del acc[exp]
        return LaurentPolynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        acc: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
                if not acc[e]:
                    del acc[e]
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            # Only unit monomials (+-A^e) are invertible over Z[A, A^-1].
            if len(self._coeffs) == 1:
                (exp, c), = self._coeffs.items()
                if c in (1, -1):
                    return LaurentPolynomial({exp * n: c if n % 2 else 1})
            raise ValueError("negative powers only defined for unit monomials")
        out = LaurentPolynomial.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shifted(self, delta: int) -> "LaurentPolynomial":
        """Multiply by A**delta."""
        return LaurentPolynomial({e + delta: c for e, c in self._coeffs.items()})

    def divide_exact(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact division; raises ValueError when the remainder is nonzero."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = dict(self._coeffs)
        out: dict[int, int] = {}
        d_top = divisor.max_exponent()
        d_lead = divisor.coefficient(d_top)
        while rem:
            top = max(rem)
            q, r = divmod(rem[top], d_lead)
            if r:
                raise ValueError("inexact polynomial division")
            shift = top - d_top
            out[shift] = out.get(shift, 0) + q
            for e, c in divisor.items():
                k = e + shift
                v = rem.get(k, 0) - c * q
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPolynomial(out)

    def min_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponents")
        return min(self._coeffs)

    def max_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponents")
        return max(self._coeffs)

    def to_pairs(self) -> list[list[int]]:
        """Serialize as a sorted list of [exponent, coefficient] pairs."""
        return [[e, c] for e, c in self._coeffs.items()]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> "LaurentPolynomial":
        return cls({int(e): int(c) for e, c in pairs})

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self._coeffs!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self._coeffs.items():
            if e == 0:
                term = str(c)
            else:
                mag = "" if abs(c) == 1 else str(abs(c)) + "*"
                sgn = "-" if c < 0 else ""
                var = "A" if e == 1 else f"A^{e}"
                term = f"{sgn}{mag}{var}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += " + " + term if not term.startswith("-") else " - " + term[1:]
        return out


#: Kauffman loop value: the polynomial contributed by one disjoint circle.
LOOP = LaurentPolynomial({2: -1, -2: -1})
