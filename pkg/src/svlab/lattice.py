"""Exact intersection theory on blown-up geometrically ruled surfaces.

The ambient lattice is the numerical class group of a P^1-bundle over a
curve of genus g, blown up in a chain of (possibly infinitely near)
points.  Basis: E (a section with E^2 = -e), F (a fiber), and the strict
transforms e_1..e_k of the exceptional curves.  Proximity relations
between the blown-up points feed the Gram matrix through the standard
proximity-matrix convention, so e_i.e_j = 1 exactly when point j is
proximate to point i.

Everything is exact: coefficients are ``fractions.Fraction``, the Gram
matrix is integral, and no floating point appears anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class LatticeError(ValueError):
    """Invalid input to a lattice operation."""


class ModelMismatch(LatticeError):
    """Operands live on different models."""


class UnsupportedRegime(LatticeError):
    """The requested rule set is not available on this model."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class BlowupPoint:
    """One blown-up point; ``proximate_to`` lists the earlier exceptionals
    whose strict transforms pass through it."""

    proximate_to: tuple[int, ...] = ()


@dataclass(frozen=True)
class RuledModel:
    """Numerical model of a blown-up ruled surface.

    ``invariant_e`` is the negative of the section's self-intersection,
    ``chi_structure`` is chi(O) and defaults to 1 - genus (blowing up
    points does not change it).  ``characteristic`` is 0 or a prime.
    """

    characteristic: int
    genus: int
    invariant_e: int
    exceptionals: tuple[BlowupPoint, ...] = ()
    chi_structure: int | None = None

    def __post_init__(self) -> None:
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise LatticeError("characteristic must be 0 or a prime")
        if self.genus < 0:
            raise LatticeError("genus must be nonnegative")
        for idx, pt in enumerate(self.exceptionals):
            for j in pt.proximate_to:
                if not 0 <= j < idx:
                    raise LatticeError(
                        "proximity must point at an earlier exceptional"
                    )
            if len(set(pt.proximate_to)) != len(pt.proximate_to):
                raise LatticeError("duplicate proximity target")
        if self.chi_structure is None:
            object.__setattr__(self, "chi_structure", 1 - self.genus)

    # -- basic shape -------------------------------------------------

    @property
    def rank(self) -> int:
        return 2 + len(self.exceptionals)

    @property
    def is_pure(self) -> bool:
        return not self.exceptionals

    def gram_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Gram matrix on the basis {E, F, e_1..e_k}."""
        k = len(self.exceptionals)
        n = 2 + k
        g = [[0] * n for _ in range(n)]
        g[0][0] = -self.invariant_e
        g[0][1] = g[1][0] = 1
        # Strict exceptional block is -(M M^T) where M is unit upper
        # triangular with M[i][j] = -1 when point j is proximate to i.
        m = [[0] * k for _ in range(k)]
        for i in range(k):
            m[i][i] = 1
        for j, pt in enumerate(self.exceptionals):
            for i in pt.proximate_to:
                m[i][j] = -1
        for i in range(k):
            for j in range(i, k):
                v = -sum(m[i][l] * m[j][l] for l in range(k))
                g[2 + i][2 + j] = g[2 + j][2 + i] = v
        return tuple(tuple(row) for row in g)

    def signature(self) -> tuple[int, int]:
        """Inertia (positives, negatives) of the Gram matrix, computed by
        exact congruent diagonalization.  Always (1, rank - 1)."""
        a = [[Fraction(v) for v in row] for row in self.gram_matrix()]
        n = len(a)
        pos = neg = 0
        for k in range(n):
            if a[k][k] == 0:
                j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
                if j is not None:
                    for row in a:
                        row[k], row[j] = row[j], row[k]
                    a[k], a[j] = a[j], a[k]
                else:
                    j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                    if j is None:
                        raise LatticeError("degenerate intersection form")
                    for l in range(n):
                        a[k][l] += a[j][l]
                    for l in range(n):
                        a[l][k] += a[l][j]
            piv = a[k][k]
            if piv > 0:
                pos += 1
            else:
                neg += 1
            for i in range(k + 1, n):
                f = a[i][k] / piv
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
            for i in range(k + 1, n):
                a[i][k] = Fraction(0)
                a[k][i] = Fraction(0)
        return pos, neg

    # -- class constructors -------------------------------------------

    def divisor(self, *coeffs: Rational) -> "DivisorClass":
        cs = list(coeffs)
        if len(cs) > self.rank:
            raise LatticeError("too many coefficients for this model")
        cs += [0] * (self.rank - len(cs))
        return DivisorClass(self, tuple(Fraction(c) for c in cs))

    def zero_class(self) -> "DivisorClass":
        return self.divisor()

    def section_class(self) -> "DivisorClass":
        return self.divisor(1)

    def fiber_class(self) -> "DivisorClass":
        return self.divisor(0, 1)

    def exceptional_class(self, i: int) -> "DivisorClass":
        if not 0 <= i < len(self.exceptionals):
            raise LatticeError("no such exceptional")
        cs = [0] * self.rank
        cs[2 + i] = 1
        return self.divisor(*cs)

    def canonical_class(self) -> "DivisorClass":
        """K = -2E + (2g-2-e)F + sum of exceptionals, with the coefficient
        of e_i growing along proximity chains (c_i = 1 + sum over the
        points i is proximate to)."""
        k = len(self.exceptionals)
        cs: list[Rational] = [0] * k
        for i, pt in enumerate(self.exceptionals):
            cs[i] = 1 + sum(cs[j] for j in pt.proximate_to)
        return self.divisor(
            -2, 2 * self.genus - 2 - self.invariant_e, *cs
        )

    def blow_up(self, proximate_to: Iterable[int] = ()) -> "RuledModel":
        return RuledModel(
            self.characteristic,
            self.genus,
            self.invariant_e,
            self.exceptionals + (BlowupPoint(tuple(proximate_to)),),
            self.chi_structure,
        )


@dataclass(frozen=True)
class DivisorClass:
    """A rational class in the model's basis.  ``a`` and ``b`` are the E
    and F coefficients; exceptional coefficients follow."""

    model: RuledModel
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.model.rank:
            raise LatticeError("coefficient count does not match the model")

    @property
    def a(self) -> Fraction:
        return self.coeffs[0]

    @property
    def b(self) -> Fraction:
        return self.coeffs[1]

    def exceptional_coeff(self, i: int) -> Fraction:
        return self.coeffs[2 + i]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def dot(self, other: "DivisorClass") -> Fraction:
        if other.model != self.model:
            raise ModelMismatch("classes live on different models")
        g = self.model.gram_matrix()
        n = self.model.rank
        total = Fraction(0)
        for i in range(n):
            ci = self.coeffs[i]
            if ci == 0:
                continue
            total += ci * sum(g[i][j] * other.coeffs[j] for j in range(n))
        return total

    def self_intersection(self) -> Fraction:
        return self.dot(self)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if other.model != self.model:
            raise ModelMismatch("classes live on different models")
        return DivisorClass(
            self.model,
            tuple(x + y for x, y in zip(self.coeffs, other.coeffs)),
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.model, tuple(-c for c in self.coeffs))

    def scaled(self, factor: Rational) -> "DivisorClass":
        f = Fraction(factor)
        return DivisorClass(self.model, tuple(f * c for c in self.coeffs))

    __mul__ = scaled
    __rmul__ = scaled


def intersect(d1: DivisorClass, d2: DivisorClass) -> Fraction:
    return d1.dot(d2)


def adjunction_pa(model: RuledModel, c: DivisorClass) -> Fraction:
    """Arithmetic genus 1 + C.(C+K)/2 of an integral class."""
    if c.model != model:
        raise ModelMismatch("class does not live on this model")
    if not c.is_integral():
        raise LatticeError("adjunction needs an integral class")
    k = model.canonical_class()
    return 1 + c.dot(c + k) / 2


def riemann_roch_chi(model: RuledModel, d: DivisorClass) -> Fraction:
    """chi(D) = D.(D-K)/2 + chi(O).  Integral D always yields an integer
    (the canonical class is characteristic for the form; asserted)."""
    if d.model != model:
        raise ModelMismatch("class does not live on this model")
    k = model.canonical_class()
    chi = d.dot(d - k) / 2 + model.chi_structure
    if d.is_integral() and chi.denominator != 1:
        raise AssertionError("chi of an integral class must be an integer")
    return chi


def candidate_curve_constraints(model: RuledModel, cls: DivisorClass) -> bool:
    """Necessary constraints for xE + yF to be the class of an irreducible
    curve on the pure model.

    For e < 0 (characteristic p required): besides E and F themselves,
    x = 1 forces y >= 0; 2 <= x <= p-1 forces y >= xe/2; x >= p forces
    y >= xe/2 + 1 - g.  For e >= 0: besides E and F, x > 0 and y >= xe.
    """
    if not model.is_pure:
        raise LatticeError("curve-class constraints apply to pure models")
    if cls.model != model:
        raise ModelMismatch("class does not live on this model")
    if not cls.is_integral():
        raise LatticeError("curve classes are integral")
    if cls == model.section_class() or cls == model.fiber_class():
        return True
    e = model.invariant_e
    x, y = cls.a, cls.b
    if e >= 0:
        return x > 0 and y >= x * e
    p = model.characteristic
    if p == 0:
        raise UnsupportedRegime(
            "e < 0 curve-class constraints need positive characteristic"
        )
    if x == 1:
        return y >= 0
    if 2 <= x <= p - 1:
        return y >= Fraction(x * e, 2)
    if x >= p:
        return y >= Fraction(x * e, 2) + 1 - model.genus
    return False


CERTIFIED = "certified"
VIOLATED = "violated"
UNKNOWN = "unknown"

RULE_NECESSARY = "positivity.necessary"
RULE_NONNEG_CONE = "positivity.nonnegative-invariant-cone"
RULE_DECOMPOSITION = "positivity.section-fiber-decomposition"
RULE_CURVE_CONE = "positivity.curve-cone-bounds"


@dataclass(frozen=True)
class PositivityVerdict:
    status: str
    rule_used: str
    witness: DivisorClass | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.status == CERTIFIED


def certify_positivity(
    model: RuledModel, d: DivisorClass, strict: bool = False
) -> PositivityVerdict:
    """Three-valued nef (strict: ample) certification of aE + bF on a pure
    model.

    Rules, in order: the necessary inequalities a >= 0 and 2b >= ae
    (strict versions for ample); for e >= 0 the cone description
    b >= ae is complete in both directions; for e < 0, a decomposition
    into nonnegative multiples of the nef classes E and F certifies, and
    otherwise closed-form minimization of D.L over the candidate-curve
    branches certifies.  Anything else is unknown, never guessed.
    """
    if not model.is_pure:
        raise LatticeError("positivity rules apply to pure models")
    if d.model != model:
        raise ModelMismatch("class does not live on this model")

    a, b = d.a, d.b
    e = model.invariant_e
    g = model.genus
    p = model.characteristic

    def ok(v: Fraction | int) -> bool:
        return v > 0 if strict else v >= 0

    if not ok(a):
        return PositivityVerdict(
            VIOLATED, RULE_NECESSARY, model.fiber_class(),
            f"fiber degree a = {a} fails",
        )
    if not ok(2 * b - a * e):
        return PositivityVerdict(
            VIOLATED, RULE_NECESSARY, None,
            f"self-intersection slope 2b - ae = {2 * b - a * e} fails",
        )

    if e >= 0:
        if ok(b - a * e):
            return PositivityVerdict(CERTIFIED, RULE_NONNEG_CONE)
        return PositivityVerdict(
            VIOLATED, RULE_NONNEG_CONE, model.section_class(),
            f"D.E = b - ae = {b - a * e} fails",
        )

    if ok(a) and ok(b):
        return PositivityVerdict(CERTIFIED, RULE_DECOMPOSITION)

    if p == 0:
        return PositivityVerdict(
            UNKNOWN, RULE_CURVE_CONE, None,
            "curve-cone bounds need positive characteristic",
        )

    slope = b - Fraction(a * e, 2)
    if slope <= 0 and a > 0:
        # the x >= p branch decreases without bound along x
        return PositivityVerdict(
            UNKNOWN, RULE_CURVE_CONE, None, "tail branch unbounded below"
        )
    minima = [b - a * e]
    if p >= 3:
        minima.append(2 * slope)
        minima.append((p - 1) * slope)
    minima.append(p * slope + a * (1 - g))
    if strict:
        minima.append(a * (2 * b - a * e))
    if all(ok(v) for v in minima):
        return PositivityVerdict(CERTIFIED, RULE_CURVE_CONE)
    return PositivityVerdict(
        UNKNOWN, RULE_CURVE_CONE, None,
        "branch minimum " + str(min(minima)) + " not conclusive",
    )


def pullback_blowup(target: RuledModel, d: DivisorClass) -> DivisorClass:
    """Total-transform pullback of d to a model that extends d.model by
    further blow-ups.  A new coordinate picks up the coefficients of the
    exceptionals its point is proximate to."""
    base = d.model
    if (
        target.characteristic != base.characteristic
        or target.genus != base.genus
        or target.invariant_e != base.invariant_e
        or target.chi_structure != base.chi_structure
        or target.exceptionals[: len(base.exceptionals)] != base.exceptionals
    ):
        raise ModelMismatch("target does not extend the class's model")
    coeffs = list(d.coeffs)
    for pt in target.exceptionals[len(base.exceptionals):]:
        coeffs.append(sum((coeffs[2 + j] for j in pt.proximate_to),
                          Fraction(0)))
    return DivisorClass(target, tuple(coeffs))


def pushforward_contraction(
    model: RuledModel, d: DivisorClass, i: int
) -> DivisorClass:
    """Push d forward along the contraction of the i-th exceptional.

    Only a (-1)-class can be contracted: the exceptional must have no
    points proximate to it (so e_i^2 = -1 and K.e_i = -1)."""
    new_model = contract_exceptional(model, i)
    if d.model != model:
        raise ModelMismatch("class does not live on this model")
    coeffs = list(d.coeffs)
    del coeffs[2 + i]
    return DivisorClass(new_model, tuple(coeffs))


def contract_exceptional(model: RuledModel, i: int) -> RuledModel:
    if not 0 <= i < len(model.exceptionals):
        raise LatticeError("no such exceptional")
    cls = model.exceptional_class(i)
    if cls.self_intersection() != -1:
        raise LatticeError(
            "contraction needs a (-1)-class; later points are proximate"
        )
    if model.canonical_class().dot(cls) != -1:
        raise LatticeError("contraction needs K.l = -1")
    records = []
    for j, pt in enumerate(model.exceptionals):
        if j == i:
            continue
        records.append(BlowupPoint(
            tuple(t - 1 if t > i else t for t in pt.proximate_to)
        ))
    return RuledModel(
        model.characteristic,
        model.genus,
        model.invariant_e,
        tuple(records),
        model.chi_structure,
    )
