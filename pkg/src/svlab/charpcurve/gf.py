"""Exact arithmetic in GF(p^d), elements as polynomial residues.

The prime field is the d = 1 case and is what the series layer uses;
extensions exist so coefficients living in a small extension can be
handled with the same code path.  Moduli are found by deterministic
search with a Rabin irreducibility test, so a field built twice is the
same field.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..lattice import is_prime


class FieldError(ValueError):
    pass


def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_divmod(res, mod, p)[1]


def _poly_divmod(a, b, p):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    binv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for shift in range(len(a) - len(b), -1, -1):
        c = (a[shift + len(b) - 1] * binv) % p
        if c == 0:
            continue
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
    return _poly_trim(q), _poly_trim(a)


def _poly_gcd(a, b, p):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple((c * inv) % p for c in a)
    return a


def _poly_powmod(base, exp, mod, p):
    result = (1,)
    base = _poly_divmod(base, mod, p)[1]
    while exp:
        if exp & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        exp >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(poly, p):
    d = len(poly) - 1
    x = (0, 1)
    # Rabin: x^(p^d) = x mod poly, and no collapse at proper prime steps
    if _poly_powmod(x, p ** d, poly, p) != _poly_divmod(x, poly, p)[1]:
        return False
    for q in _prime_factors(d):
        h = _poly_powmod(x, p ** (d // q), poly, p)
        diff = list(h) + [0, 0]
        diff[1] = (diff[1] - 1) % p
        if _poly_gcd(_poly_trim(diff), poly, p) != (1,):
            return False
    return True


class GaloisField:
    """GF(p^d).  Instances with equal (p, d) behave identically."""

    def __init__(self, p: int, d: int = 1):
        if not is_prime(p):
            raise FieldError("order must be a prime power, p prime")
        if d < 1:
            raise FieldError("extension degree must be positive")
        self.p = p
        self.d = d
        self.modulus = self._find_modulus(p, d)

    @staticmethod
    def _find_modulus(p: int, d: int) -> tuple[int, ...]:
        if d == 1:
            return (0, 1)
        # smallest monic irreducible in lexicographic coefficient order
        for code in range(p ** d):
            coeffs = []
            c = code
            for _ in range(d):
                coeffs.append(c % p)
                c //= p
            poly = tuple(coeffs) + (1,)
            if _is_irreducible(poly, p):
                return poly
        raise FieldError("no irreducible modulus found")  # unreachable

    def __eq__(self, other):
        return (
            isinstance(other, GaloisField)
            and (self.p, self.d) == (other.p, other.d)
        )

    def __hash__(self):
        return hash((self.p, self.d))

    def __repr__(self):
        return f"GaloisField({self.p}, {self.d})"

    @property
    def order(self) -> int:
        return self.p ** self.d

    def element(self, coeffs) -> "FieldElement":
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        cs = [c % self.p for c in coeffs]
        if len(cs) >= len(self.modulus):
            cs = list(_poly_divmod(cs, self.modulus, self.p)[1])
        return FieldElement(self, _poly_trim(cs))

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def elements(self):
        """All p^d elements, in deterministic order."""
        for code in range(self.order):
            coeffs = []
            c = code
            for _ in range(self.d):
                coeffs.append(c % self.p)
                c //= self.p
            yield self.element(coeffs)


@dataclass(frozen=True)
class FieldElement:
    field: GaloisField
    coeffs: tuple[int, ...]

    def _check(self, other: "FieldElement") -> None:
        if self.field != other.field:
            raise FieldError("elements of different fields")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return FieldElement(
            self.field,
            _poly_trim([(x + y) % self.field.p for x, y in zip(a, b)]),
        )

    def __neg__(self):
        return FieldElement(
            self.field, tuple((-c) % self.field.p for c in self.coeffs)
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        self._check(other)
        return FieldElement(
            self.field,
            _poly_mulmod(self.coeffs, other.coeffs,
                         self.field.modulus, self.field.p),
        )

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        return self * other.inverse()

    def __pow__(self, exp: int):
        if exp < 0:
            return self.inverse() ** (-exp)
        return FieldElement(
            self.field,
            _poly_powmod(self.coeffs, exp, self.field.modulus, self.field.p),
        )

    def frobenius(self) -> "FieldElement":
        return self ** self.field.p
