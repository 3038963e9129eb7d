"""Decision engine for non-vanishing of nef divisors on surface pairs.

A ``Scenario`` packages a numerical model, the declared geometric
invariants that numbers alone cannot supply (Kodaira dimension,
irregularity, relative minimality), a KLT boundary and the nef divisor
of interest.  ``decide`` classifies the scenario and hunts for a
certificate that sections exist, for the divisor itself or for its
double.  Every guaranteed verdict carries the arithmetic that proves it;
anything the catalogue of certificates does not cover comes back
``unknown`` rather than guessed.

The certified routes, by case label:

  A     the divisor vanishes; chi(O) = 1 does the work
  B_*   chi > 0 plus vanishing above forces sections
  C     fiber-degree threshold, boundary stripping, the chi product
        certificate on relatively minimal models, contraction of fiber
        trees at low fiber degree, and a doubling bound otherwise
  CR/D  open territory, always unknown
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from .fibered import FiberedModel, minimality_audit, reduce_model
from .lattice import (
    VIOLATED,
    DivisorClass,
    RuledModel,
    candidate_curve_constraints,
    certify_positivity,
    contract_exceptional,
    pushforward_contraction,
    riemann_roch_chi,
)

RULED = float("-inf")

CASE_A = "A"
CASE_B_I = "B_I"
CASE_B_II = "B_II"
CASE_C = "C"
CASE_C_M = "C_M"
CASE_CR = "CR"
CASE_D_I = "D_I"
CASE_D_II = "D_II"

GUARANTEED_M1 = "m=1"
GUARANTEED_M2 = "m<=2"
UNDECIDED = "unknown"

RULE_STRUCTURE_CHI = "nonvanish.structure-sheaf-euler"
RULE_EULER_POSITIVE = "nonvanish.euler-characteristic"
RULE_FIBER_THRESHOLD = "nonvanish.fiber-degree-threshold"
RULE_CHI_PRODUCT = "nonvanish.chi-product"
RULE_CONTRACTION = "nonvanish.contraction-trace"
RULE_DOUBLING = "nonvanish.euler-doubling-bound"
RULE_CANONICAL_SIGN = "nonvanish.nonpositive-canonical-degree"
RULE_NU_ONE = "nonvanish.numerical-dimension-one"


class ScenarioError(ValueError):
    pass


class InvalidScenario(ScenarioError):
    """The declared invariants fit no catalogued case."""


class InconsistentScenario(ScenarioError):
    """The declared invariants contradict each other numerically."""


class PreconditionError(ScenarioError):
    """An operation was invoked outside its certified domain."""


class ContractionRefused(ScenarioError):
    """Contracting this curve would change sections of the divisor."""


@dataclass(frozen=True)
class Verdict:
    case_label: str
    result: str
    certificate: dict = field(default_factory=dict)
    reason: str = ""

    def guaranteed(self) -> bool:
        return self.result in (GUARANTEED_M1, GUARANTEED_M2)


@dataclass(frozen=True)
class Scenario:
    """Immutable problem instance.

    ``kodaira`` is float('-inf') (use the RULED constant) or 0, 1, 2.
    Boundary entries are (curve class, coefficient) with coefficients in
    (0,1); fibered models carry their divisor data inside the trees and
    take divisor=None, boundary=().  ``declared_curves`` feeds the
    relative ample re-certification after contractions.
    ``kappa_minus_k_nonneg`` is a declared hypothesis, not a computed
    fact; None means undeclared.
    """

    model: RuledModel | FiberedModel
    kodaira: float | int
    chi_o: int
    q: int
    relatively_minimal: bool
    divisor: DivisorClass | None = None
    boundary: tuple = ()
    declared_curves: tuple = ()
    kappa_minus_k_nonneg: bool | None = None

    def __post_init__(self):
        if self.kodaira not in (RULED, 0, 1, 2):
            raise InvalidScenario(
                "kodaira dimension must be -infinity, 0, 1 or 2"
            )
        if self.q < 0:
            raise InvalidScenario("irregularity cannot be negative")
        norm = []
        for cls, coeff in self.boundary:
            c = Fraction(coeff)
            if not 0 < c < 1:
                raise InvalidScenario(
                    f"boundary coefficient {c} outside (0,1)"
                )
            norm.append((cls, c))
        object.__setattr__(self, "boundary", tuple(norm))
        object.__setattr__(
            self, "declared_curves", tuple(self.declared_curves)
        )
        if isinstance(self.model, FiberedModel):
            self._check_fibered()
        elif isinstance(self.model, RuledModel):
            self._check_lattice()
        else:
            raise InvalidScenario("model must be a lattice or fiber data")

    def _check_fibered(self):
        if self.divisor is not None or self.boundary:
            raise InvalidScenario(
                "fiber-tree scenarios carry divisor degrees in the trees"
                " and have empty boundary"
            )
        if self.kodaira != RULED:
            raise InvalidScenario("fiber-tree scenarios describe ruled"
                                  " surfaces")
        if self.q != self.model.base_genus:
            raise InconsistentScenario(
                "irregularity of a ruled surface is its base genus"
            )
        if self.chi_o != self.model.chi_structure:
            raise InconsistentScenario(
                "chi(O) of a ruled surface is 1 - base genus"
            )
        if self.relatively_minimal != self.model.is_relatively_minimal():
            raise InconsistentScenario(
                "minimality flag contradicts the fiber trees"
            )

    def _check_lattice(self):
        if self.divisor is None:
            raise InvalidScenario("lattice scenarios need a divisor class")
        if self.divisor.model != self.model:
            raise InvalidScenario("divisor lives on a different model")
        if not self.divisor.is_integral():
            raise InvalidScenario("the divisor of interest is integral")
        for cls, _ in self.boundary:
            if cls.model != self.model:
                raise InvalidScenario(
                    "boundary class lives on a different model"
                )
            if not cls.is_integral() or cls.is_zero():
                raise InvalidScenario(
                    "boundary components are nonzero integral classes"
                )
        for cls in self.declared_curves:
            if cls.model != self.model or not cls.is_integral():
                raise InvalidScenario("declared curve does not fit the"
                                      " model")
        if self.chi_o != self.model.chi_structure:
            raise InconsistentScenario(
                "declared chi(O) contradicts the lattice model"
            )
        if self.kodaira == RULED:
            if self.q != self.model.genus:
                raise InconsistentScenario(
                    "irregularity of a ruled surface is its base genus"
                )
            if self.relatively_minimal != self.model.is_pure:
                raise InconsistentScenario(
                    "minimality flag contradicts the exceptional locus"
                )

    # -- derived classes ----------------------------------------------

    @property
    def is_lattice(self) -> bool:
        return isinstance(self.model, RuledModel)

    @property
    def characteristic(self) -> int:
        return self.model.characteristic

    def boundary_class(self) -> DivisorClass:
        total = self.model.zero_class()
        for cls, c in self.boundary:
            total = total + cls.scaled(c)
        return total

    def h_class(self) -> DivisorClass:
        """H = D - (K + B), the ample polarization of the scenario."""
        return (
            self.divisor
            - self.model.canonical_class()
            - self.boundary_class()
        )

    def fiber_degree(self) -> Fraction:
        if self.is_lattice:
            return self.divisor.dot(self.model.fiber_class())
        return Fraction(self.model.fiber_degree())

    def h_fiber_degree(self) -> Fraction:
        """H.F; for fiber trees this is D.F + 2 since K.F = -2 and the
        boundary is empty."""
        if self.is_lattice:
            return self.h_class().dot(self.model.fiber_class())
        return self.fiber_degree() + 2


def nu(d: DivisorClass) -> int:
    """Numerical dimension of a nef class: 0, 1 or 2."""
    if d.is_zero():
        return 0
    sq = d.self_intersection()
    if sq == 0:
        return 1
    if sq > 0:
        return 2
    raise PreconditionError(
        "negative self-intersection; the class is not nef"
    )


def classify(s: Scenario) -> str:
    if s.is_lattice and s.divisor.is_zero():
        return CASE_A
    if s.kodaira != RULED and s.chi_o >= 0:
        return CASE_B_I
    if s.kodaira == RULED:
        if s.q <= 1:
            return CASE_B_II
        return _classify_irregular_ruled(s)
    if s.kodaira == 1 and s.chi_o < 0:
        if s.characteristic not in (2, 3):
            raise InvalidScenario(
                "a genus-one fibration with negative chi(O) needs"
                " characteristic 2 or 3"
            )
        return CASE_D_I
    if s.kodaira == 2 and s.chi_o < 0:
        return CASE_D_II
    raise InvalidScenario("invariants fit no catalogued case")


def _classify_irregular_ruled(s: Scenario) -> str:
    if (
        s.relatively_minimal
        and s.is_lattice
        and s.model.invariant_e < 0
        and len(_negative_boundary(s)) == 1
    ):
        return CASE_C_M
    if (
        not s.relatively_minimal
        and s.is_lattice
        and s.kappa_minus_k_nonneg is False
        and s.divisor.self_intersection() > 0
    ):
        return CASE_CR
    return CASE_C


def _negative_boundary(s: Scenario):
    return [
        (cls, c) for cls, c in s.boundary if cls.self_intersection() < 0
    ]


def _require_case(s: Scenario, *labels: str) -> str:
    label = classify(s)
    if label not in labels:
        raise PreconditionError(
            f"operation applies to case {'/'.join(labels)}, scenario is"
            f" {label}"
        )
    return label


def _ample_status(model: RuledModel, cls: DivisorClass):
    """Strict positivity certificate where the rules can decide; None on
    blown-up lattices, where no rule applies."""
    if not model.is_pure:
        return None
    return certify_positivity(model, cls, strict=True)


def case_a_chi(s: Scenario) -> Fraction:
    """chi(D) for a vanishing divisor class: chi(O), pinned to 1."""
    _require_case(s, CASE_A)
    if s.q > 0:
        raise InconsistentScenario(
            "a vanishing nef divisor with ample polarization forces"
            " irregularity 0"
        )
    if s.chi_o != 1:
        raise InconsistentScenario(
            "irregularity 0 with negative Kodaira dimension forces"
            " chi(O) = 1"
        )
    status = _ample_status(s.model, s.h_class())
    if status is not None and status.status == VIOLATED:
        raise PreconditionError(
            f"the polarization fails ampleness: {status.note}"
        )
    return Fraction(1)


def case_b_chi(s: Scenario) -> Fraction:
    """chi(D) = D.(H+B)/2 + chi(O) on the low-irregularity cases."""
    _require_case(s, CASE_B_I, CASE_B_II)
    if not s.is_lattice:
        raise PreconditionError(
            "the euler-characteristic route needs intersection data"
        )
    if s.chi_o < 0:
        raise InconsistentScenario("these cases carry chi(O) >= 0")
    nef = _nef_status(s.model, s.divisor)
    if nef is not None and nef.status == VIOLATED:
        raise PreconditionError(f"the divisor is not nef: {nef.note}")
    amp = _ample_status(s.model, s.h_class())
    if amp is not None and amp.status == VIOLATED:
        raise PreconditionError(
            f"the polarization fails ampleness: {amp.note}"
        )
    chi = (
        Fraction(1, 2)
        * s.divisor.dot(s.h_class() + s.boundary_class())
        + s.chi_o
    )
    if chi <= 0:
        raise InconsistentScenario(
            f"chi = {chi} cannot be nonpositive with these invariants"
        )
    return chi


def _nef_status(model: RuledModel, cls: DivisorClass):
    if not model.is_pure:
        return None
    return certify_positivity(model, cls, strict=False)


def h2_vanishes(s: Scenario) -> bool:
    """Vanishing above the divisor, certified by (K-D).H < 0 against the
    ample polarization."""
    if not s.is_lattice:
        raise PreconditionError("needs intersection data")
    h = s.h_class()
    status = _ample_status(s.model, h)
    if status is not None and status.status == VIOLATED:
        raise PreconditionError(
            f"the polarization fails ampleness: {status.note}"
        )
    value = (s.model.canonical_class() - s.divisor).dot(h)
    if value >= 0:
        raise InconsistentScenario(
            f"(K-D).H = {value} must be negative when H is ample"
        )
    return True


def chi_positive_implies_h0(s: Scenario) -> Verdict | None:
    """Sections exist once chi > 0 and nothing survives above."""
    h2_vanishes(s)
    chi = riemann_roch_chi(s.model, s.divisor)
    if chi > 0:
        return Verdict(
            classify(s),
            GUARANTEED_M1,
            {
                "rule": RULE_EULER_POSITIVE,
                "chi": chi,
                "h2": "(K-D).H < 0",
            },
        )
    return None


def fiber_threshold(s: Scenario) -> Verdict | None:
    """Sections exist once the polarization meets a fiber in degree
    above one."""
    label = _require_case(s, CASE_C, CASE_C_M, CASE_CR)
    hf = s.h_fiber_degree()
    if hf > 1:
        return Verdict(
            label,
            GUARANTEED_M1,
            {"rule": RULE_FIBER_THRESHOLD, "h_dot_f": hf},
        )
    return None


def relatively_minimal_decide(s: Scenario) -> Verdict | None:
    """Certificate hunt on relatively minimal irregular ruled models.

    For e >= 0 the section-multiple part of the boundary is stripped
    and the fiber threshold re-checked; for e < 0 at most one boundary
    component can sit in the negative part of the cone, and that
    component routes into the chi product certificate.
    """
    label = _require_case(s, CASE_C, CASE_C_M)
    if not s.relatively_minimal:
        raise PreconditionError("needs a relatively minimal scenario")
    if not s.is_lattice:
        raise PreconditionError("needs intersection data")
    model = s.model
    dvr = s.divisor
    if model.invariant_e >= 0:
        a = sum(
            (c for cls, c in s.boundary if cls == model.section_class()),
            Fraction(0),
        )
        value = dvr.dot(model.fiber_class()) + 2 - a
        if value > 1:
            return Verdict(
                label,
                GUARANTEED_M1,
                {
                    "rule": RULE_FIBER_THRESHOLD,
                    "h_dot_f": value,
                    "stripped": "section multiples of the boundary",
                },
            )
        return None
    negative = _negative_boundary(s)
    if len(negative) >= 2:
        raise InconsistentScenario(
            "two distinct negative curve classes cannot coexist on a"
            " rank-2 lattice: the fiber class would decompose through"
            " them"
        )
    if not negative:
        value = dvr.dot(model.fiber_class()) + 2
        return Verdict(
            label,
            GUARANTEED_M1,
            {
                "rule": RULE_FIBER_THRESHOLD,
                "h_dot_f": value,
                "stripped": "entire boundary (no negative component)",
            },
        )
    (g_cls, c) = negative[0]
    return chi_product_certificate(
        dvr.a,
        dvr.b,
        model.genus,
        model.invariant_e,
        c,
        g_cls.a,
        g_cls.b,
        model.characteristic,
    )


def chi_product_certificate(
    a: Rational,
    b: Rational,
    g: int,
    e: int,
    c: Rational,
    x: Rational,
    y: Rational,
    characteristic: int,
) -> Verdict:
    """chi(D) = (a+1)(b - ae/2 + 1 - g) > 0 for D = aE + bF on a
    relatively minimal model of negative invariant whose boundary is a
    single multiple of the negative curve G = xE + yF.

    The two inequalities spelling out ampleness of D - K - cG are
    checked, the slack chain b - ae/2 > (2-c)(g-1) > g-1 is derived,
    and the product is returned as the certificate.
    """
    a, b, c, x, y = (Fraction(v) for v in (a, b, c, x, y))
    if e >= 0:
        raise PreconditionError("the product certificate needs e < 0")
    if g < 2:
        raise PreconditionError("needs base genus at least 2")
    if not 0 < c < 1:
        raise PreconditionError("boundary coefficient must sit in (0,1)")
    if a < 0 or 2 * b < a * e:
        raise PreconditionError("the divisor is not nef")
    model = RuledModel(characteristic, g, e)
    if not candidate_curve_constraints(model, model.divisor(x, y)):
        raise PreconditionError(
            f"{x}E + {y}F cannot be a curve on this model"
        )
    ample_e = a + 2 - c * x
    ample_f = b + 2 - 2 * g + e - c * y
    if not (ample_e > 0 and ample_f > Fraction(ample_e * e, 2)):
        raise PreconditionError(
            "the polarization fails its ampleness inequalities"
        )
    slope = b - Fraction(a * e, 2)
    mid = (2 - c) * (g - 1)
    if not (slope > mid > g - 1):
        raise PreconditionError(
            f"slack chain fails: {slope} > {mid} > {g - 1} does not hold"
        )
    chi = (a + 1) * (slope + 1 - g)
    if chi <= 0:
        raise InconsistentScenario("the product must be positive here")
    assert chi == riemann_roch_chi(model, model.divisor(a, b))
    return Verdict(
        CASE_C_M,
        GUARANTEED_M1,
        {
            "rule": RULE_CHI_PRODUCT,
            "chi": chi,
            "ample_inequalities": (ample_e, ample_f),
            "slack_chain": (slope, mid, Fraction(g - 1)),
            "negative_component": (x, y),
            "coefficient": c,
        },
    )


@dataclass(frozen=True)
class ContractionOutcome:
    model: RuledModel
    boundary: tuple
    divisor: DivisorClass
    d: Fraction
    nakai: str


def contract_step(
    model: RuledModel,
    boundary: tuple,
    divisor: DivisorClass,
    l_class: DivisorClass,
    declared_curves: tuple = (),
) -> ContractionOutcome:
    """Push the triple forward along the contraction of a (-1)-class the
    divisor does not meet.

    Returns the contracted model, boundary, divisor and the positive
    degree d = -(K+B).l the boundary drops by.  Refuses classes meeting
    the divisor: their sections differ downstairs.
    """
    if l_class.self_intersection() != -1:
        raise PreconditionError("only (-1)-classes contract")
    if model.canonical_class().dot(l_class) != -1:
        raise PreconditionError("contraction needs K.l = -1")
    if divisor.dot(l_class) != 0:
        raise ContractionRefused(
            f"the divisor meets the contracted curve in degree"
            f" {divisor.dot(l_class)}; sections would not carry over"
        )
    b_total = model.zero_class()
    for cls, c in boundary:
        b_total = b_total + cls.scaled(c)
    d = -(model.canonical_class() + b_total).dot(l_class)
    if d <= 0:
        raise InconsistentScenario(
            f"d = -(K+B).l = {d} must be positive under an ample"
            " polarization"
        )
    index = None
    for i in range(len(model.exceptionals)):
        if l_class == model.exceptional_class(i):
            index = i
            break
    if index is None:
        raise ContractionRefused(
            "this presentation contracts basis exceptional classes only"
        )
    new_model = contract_exceptional(model, index)
    new_boundary = []
    for cls, c in boundary:
        pushed = pushforward_contraction(model, cls, index)
        if pushed.is_zero():
            continue
        new_boundary.append((pushed, c))
    new_divisor = pushforward_contraction(model, divisor, index)
    k_new = new_model.canonical_class()
    b_new = new_model.zero_class()
    for cls, c in new_boundary:
        if not 0 < c < 1:
            raise InconsistentScenario("boundary coefficient left (0,1)")
        b_new = b_new + cls.scaled(c)
    h_new = new_divisor - k_new - b_new
    if h_new.self_intersection() <= 0:
        raise InconsistentScenario(
            "the contracted polarization lost positive self-intersection"
        )
    for cls in declared_curves:
        pushed = pushforward_contraction(model, cls, index)
        if not pushed.is_zero() and h_new.dot(pushed) <= 0:
            raise InconsistentScenario(
                "the contracted polarization fails against a declared"
                " curve"
            )
    note = (
        "certified relative to declared curves"
        if declared_curves
        else "self-intersection positive; no curves declared"
    )
    return ContractionOutcome(
        new_model, tuple(new_boundary), new_divisor, d, note
    )


def low_fiber_degree_decide(model: FiberedModel) -> Verdict:
    """Sections exist at fiber degree 0 or 1: contract every
    divisor-trivial (-1)-component, observe the result is relatively
    minimal, and apply the fiber threshold there.

    The minimality observation is forced: a surviving (-1)-component
    would carry divisor degree 1 and every other component canonical
    degree >= 0, which caps the fiber's canonical degree above -2.  The
    audit spelling that out ships with the certificate.
    """
    degree = model.fiber_degree()
    if degree > 1:
        raise PreconditionError(
            "the contraction route applies at fiber degree 0 or 1"
        )
    reduced, trace = reduce_model(model)
    if not reduced.is_relatively_minimal():
        audits = [
            minimality_audit(t.components)
            for t in reduced.fibers
            if not t.is_reduced_to_section_fiber()
        ]
        raise InconsistentScenario(
            "contraction stalled on a configuration no fiber admits: "
            + "; ".join(a.detail for a in audits)
        )
    return Verdict(
        CASE_C,
        GUARANTEED_M1,
        {
            "rule": RULE_CONTRACTION,
            "trace": trace,
            "h_dot_f": degree + 2,
            "audit": (
                "a persisting (-1)-component would force the"
                " multiplicity-weighted canonical degree above the -2"
                " every fiber carries"
            ),
        },
    )


def doubling_bound(
    a: Rational, d_squared: Rational, d_dot_hb: Rational
) -> Fraction:
    """Lower bound for chi(2D) at fiber degree a:
    ((2a+1)/2a) * ((1 - 1/a) D^2 + D.(H+B))."""
    a = Fraction(a)
    if a < 2:
        raise PreconditionError("the bound holds from fiber degree 2 on")
    return Fraction(2 * a + 1, 2 * a) * (
        (1 - 1 / a) * Fraction(d_squared) + Fraction(d_dot_hb)
    )


def euler_bound_decide(s: Scenario) -> Verdict:
    """Doubling bound at fiber degree >= 2, with single-section upgrades
    when the canonical degree is declared nonpositive or the divisor
    has numerical dimension one."""
    label = _require_case(s, CASE_C, CASE_C_M, CASE_CR)
    if not s.is_lattice:
        raise PreconditionError("needs intersection data")
    a = s.fiber_degree()
    if a < 2:
        raise PreconditionError(
            "lower fiber degrees use the contraction route"
        )
    dvr = s.divisor
    d_sq = dvr.self_intersection()
    dhb = dvr.dot(s.h_class() + s.boundary_class())
    bound = doubling_bound(a, d_sq, dhb)
    if bound <= 0:
        raise InconsistentScenario(
            f"the doubling bound {bound} must be positive for nef data"
        )
    if s.kappa_minus_k_nonneg:
        dk = dvr.dot(s.model.canonical_class())
        if dk > 0:
            raise InconsistentScenario(
                "the declared canonical hypothesis forces D.K <= 0,"
                f" got {dk}"
            )
        value = (
            Fraction(a * a - 1, 2 * a * a) * dhb
            - Fraction(a + 1, 2 * a * a) * dk
        )
        if value <= 0:
            raise InconsistentScenario(
                f"chi lower bound {value} must be positive here"
            )
        return Verdict(
            label,
            GUARANTEED_M1,
            {
                "rule": RULE_CANONICAL_SIGN,
                "chi_lower_bound": value,
                "doubling_bound": bound,
            },
        )
    if nu(dvr) == 1:
        if dhb <= 0:
            raise InconsistentScenario(
                "D.(H+B) must be positive when D is nonzero and H ample"
            )
        return Verdict(
            label,
            GUARANTEED_M1,
            {
                "rule": RULE_NU_ONE,
                "d_dot_h_plus_b": dhb,
                "doubling_bound": bound,
            },
        )
    return Verdict(
        label,
        GUARANTEED_M2,
        {
            "rule": RULE_DOUBLING,
            "bound": bound,
            "fiber_degree": a,
        },
    )


def decide(s: Scenario) -> Verdict:
    """Classify, then walk the certificate catalogue in order."""
    label = classify(s)
    if label == CASE_A:
        chi = case_a_chi(s)
        return Verdict(
            CASE_A,
            GUARANTEED_M1,
            {"rule": RULE_STRUCTURE_CHI, "chi": chi},
        )
    if label in (CASE_B_I, CASE_B_II):
        if not s.is_lattice:
            return Verdict(
                label,
                UNDECIDED,
                {},
                "no intersection data for the euler-characteristic route",
            )
        chi = case_b_chi(s)
        verdict = chi_positive_implies_h0(s)
        if verdict is None:
            raise InconsistentScenario(
                "positive chi failed to certify; the scenario data is"
                " contradictory"
            )
        assert verdict.certificate["chi"] == chi
        return verdict
    if label in (CASE_C, CASE_C_M):
        verdict = fiber_threshold(s)
        if verdict is not None:
            return verdict
        if not s.is_lattice and s.model.fiber_degree() <= 1:
            return low_fiber_degree_decide(s.model)
        if s.relatively_minimal:
            verdict = relatively_minimal_decide(s)
            if verdict is not None:
                return verdict
        if s.is_lattice and s.fiber_degree() >= 2:
            return euler_bound_decide(s)
        return Verdict(
            label,
            UNDECIDED,
            {},
            "low fiber degree without fiber-tree data; no certificate"
            " applies",
        )
    if label == CASE_CR:
        return Verdict(
            CASE_CR,
            UNDECIDED,
            {},
            "not relatively minimal with a big divisor: outside the"
            " certified catalogue",
        )
    return Verdict(
        label,
        UNDECIDED,
        {},
        "no certificate catalogued for this case; larger multiples may"
        " be needed",
    )
