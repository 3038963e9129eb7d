"""Laurent series over a finite field, with conservative precision.

A series stores its coefficients from the leading exponent up to (not
including) ``truncation``, the first unknown exponent.  ``truncation``
None means the series is exactly the stored polynomial.  All operations
only ever claim coefficients they actually know; windows shrink, they
never grow silently.

Formal differentiation follows char-p behaviour: terms with exponent
divisible by p vanish, so d/dt can raise the valuation arbitrarily or
kill a series entirely.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .gf import FieldElement, GaloisField


class SeriesError(ValueError):
    pass


class PrecisionError(SeriesError):
    """The requested information lies outside the known window."""


@dataclass(frozen=True)
class LaurentSeries:
    field: GaloisField
    valuation: int
    coeffs: tuple[FieldElement, ...]
    truncation: int | None = None

    # -- construction --------------------------------------------------

    @staticmethod
    def make(field, valuation, coeffs, truncation=None) -> "LaurentSeries":
        """Normalized constructor: strips leading zeros, clips to the
        truncation window, canonicalizes empty windows."""
        cs = [c if isinstance(c, FieldElement) else field.element(c)
              for c in coeffs]
        if truncation is not None and valuation + len(cs) > truncation:
            cs = cs[: truncation - valuation]
        while cs and cs[0].is_zero():
            cs.pop(0)
            valuation += 1
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            return LaurentSeries(field, truncation or 0, (), truncation)
        return LaurentSeries(field, valuation, tuple(cs), truncation)

    @staticmethod
    def monomial(field, exponent, scalar=1) -> "LaurentSeries":
        return LaurentSeries.make(field, exponent, [scalar])

    @staticmethod
    def zero(field, truncation=None) -> "LaurentSeries":
        return LaurentSeries.make(field, 0, [], truncation)

    @staticmethod
    def from_terms(field, terms, truncation=None) -> "LaurentSeries":
        """``terms``: mapping exponent -> coefficient."""
        if not terms:
            return LaurentSeries.zero(field, truncation)
        lo = min(terms)
        hi = max(terms)
        cs = [terms.get(k, 0) for k in range(lo, hi + 1)]
        return LaurentSeries.make(field, lo, cs, truncation)

    # -- inspection -----------------------------------------------------

    def known_nonzero(self) -> bool:
        return bool(self.coeffs)

    def is_known_zero(self) -> bool:
        return not self.coeffs

    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.truncation is None

    @property
    def known_terms(self) -> int:
        if self.truncation is None:
            return len(self.coeffs)
        return self.truncation - self.valuation

    def coefficient(self, exponent: int) -> FieldElement:
        if self.truncation is not None and exponent >= self.truncation:
            raise PrecisionError(
                f"coefficient at t^{exponent} is beyond the window"
            )
        i = exponent - self.valuation
        if not self.coeffs or i < 0 or i >= len(self.coeffs):
            return self.field.zero()
        return self.coeffs[i]

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for i, c in enumerate(self.coeffs):
                if c.is_zero():
                    continue
                parts.append(f"({list(c.coeffs)})t^{self.valuation + i}")
            body = " + ".join(parts)
        tail = "" if self.truncation is None else f" + O(t^{self.truncation})"
        return f"<{body}{tail} over {self.field!r}>"

    # -- ring operations -------------------------------------------------

    def _check(self, other):
        if self.field != other.field:
            raise SeriesError("series over different fields")

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        trunc = _min_trunc(self.truncation, other.truncation)
        acc: dict[int, FieldElement] = {}
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                k = s.valuation + i
                if trunc is not None and k >= trunc:
                    continue
                acc[k] = acc.get(k, self.field.zero()) + c
        return LaurentSeries.from_terms(self.field, acc, trunc)

    def __neg__(self):
        return LaurentSeries(
            self.field, self.valuation,
            tuple(-c for c in self.coeffs), self.truncation,
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        bounds = []
        if self.truncation is not None:
            bounds.append(self.truncation + _lower_bound(other))
        if other.truncation is not None:
            bounds.append(other.truncation + _lower_bound(self))
        trunc = min(bounds) if bounds else None
        acc: dict[int, FieldElement] = {}
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                k = self.valuation + i + other.valuation + j
                if trunc is not None and k >= trunc:
                    continue
                acc[k] = acc.get(k, self.field.zero()) + a * b
        return LaurentSeries.from_terms(self.field, acc, trunc)

    def scaled(self, scalar) -> "LaurentSeries":
        if isinstance(scalar, int):
            scalar = self.field.element(scalar)
        return LaurentSeries.make(
            self.field, self.valuation,
            [scalar * c for c in self.coeffs], self.truncation,
        )

    def shifted(self, k: int) -> "LaurentSeries":
        """Multiplication by t^k."""
        return LaurentSeries(
            self.field, self.valuation + k, self.coeffs,
            None if self.truncation is None else self.truncation + k,
        )

    def __pow__(self, n: int) -> "LaurentSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentSeries.monomial(self.field, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self, terms: int | None = None) -> "LaurentSeries":
        if not self.known_nonzero():
            raise SeriesError("inverse needs a known-nonzero leading term")
        v = self.valuation
        if self.truncation is None:
            if len(self.coeffs) == 1:
                return LaurentSeries.monomial(
                    self.field, -v, self.coeffs[0].inverse()
                )
            if terms is None:
                raise PrecisionError(
                    "inverse of a non-monomial exact series needs a window"
                )
            n = terms
        else:
            n = self.truncation - v
            if terms is not None:
                n = min(n, terms)
        c0inv = self.coeffs[0].inverse()
        u = [self.coefficient(v + i) * c0inv for i in range(n)]
        w = [self.field.zero()] * n
        w[0] = self.field.one()
        for k in range(1, n):
            s = self.field.zero()
            for i in range(1, k + 1):
                s = s + u[i] * w[k - i]
            w[k] = -s
        return LaurentSeries.make(
            self.field, -v, [c0inv * c for c in w], -v + n
        )

    # -- calculus ----------------------------------------------------------

    def derivative(self) -> "LaurentSeries":
        cs = []
        for i, c in enumerate(self.coeffs):
            k = self.valuation + i
            cs.append(c * k)
        return LaurentSeries.make(
            self.field, self.valuation - 1, cs,
            None if self.truncation is None else self.truncation - 1,
        )

    def sqrt_unit(self, terms: int | None = None) -> "LaurentSeries":
        """Square root of a series with constant term 1 (p odd)."""
        if self.field.p == 2:
            raise SeriesError("square roots by this recurrence need p odd")
        return self.nth_root_unit(2, terms)

    def nth_root_unit(self, m: int, terms: int | None = None):
        """m-th root of a series with valuation 0 and constant term 1;
        needs gcd(m, p) = 1 so the coefficient recurrence is solvable."""
        if gcd(m, self.field.p) != 1:
            raise SeriesError("root index divisible by the characteristic")
        if self.valuation != 0 or not self.known_nonzero() \
                or self.coeffs[0] != self.field.one():
            raise SeriesError("root recurrence needs constant term 1")
        if self.truncation is None:
            if terms is None:
                raise PrecisionError(
                    "root of an exact series needs an explicit window"
                )
            n = terms
        else:
            n = self.truncation
            if terms is not None:
                n = min(n, terms)
        minv = self.field.element(m).inverse()
        w = [self.field.one()] + [self.field.zero()] * (n - 1)
        for k in range(1, n):
            partial = LaurentSeries.make(self.field, 0, w[:k], k + 1)
            pk = (partial ** m).coefficient(k)
            w[k] = (self.coefficient(k) - pk) * minv
        return LaurentSeries.make(self.field, 0, w, n)


def _min_trunc(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _lower_bound(s: LaurentSeries) -> int:
    """Exponent below which s is certainly zero."""
    if s.known_nonzero():
        return s.valuation
    if s.truncation is not None:
        return s.truncation
    return 0  # exact zero; bound is irrelevant, product is zero
