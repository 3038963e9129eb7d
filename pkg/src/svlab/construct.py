"""Packages that defeat vanishing statements, built and checked exactly.

Each builder takes an invariant certificate for a base curve (genus g,
line-bundle degree n > 0) and assembles divisor data on the ruled
surface over it: a boundary with fractional coefficients, a divisor D,
and a polarization H, together with a checklist of named arithmetic
facts.  Three flavours are covered:

``kv``       fractional boundary on a single multisection; D nef and
             integral, H ample, yet h1(D) >= 1 by a degree audit.
``kollar``   boundary with two disjoint branches plus an ample twist
             pulled back from the base; D = K + B + twist exactly.
``semipos``  the shifted class D' = D - (2g-2)F meets the multisection
             negatively, so D' cannot be nef.

Everything here is class arithmetic over Q; no sheaf is ever computed.
The one genuinely cohomological claim (the h1 lower bound) is reduced
to a bookkeeping chain of line-bundle degrees whose final term is 0.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .charpcurve.families import ASSERTED, TangoCertificate
from .kltcalc import (
    ClusterArrangement,
    ClusterNode,
    WeightedBranch,
    snc_klt_shortcut,
)
from .lattice import (
    CERTIFIED,
    DivisorClass,
    RuledModel,
    adjunction_pa,
    candidate_curve_constraints,
    certify_positivity,
    riemann_roch_chi,
)

KIND_KV = "kv"
KIND_KOLLAR = "kollar"
KIND_SEMIPOS = "semipos"

KINDS = (KIND_KV, KIND_KOLLAR, KIND_SEMIPOS)

ROUTE_FILTRATION = "symmetric-power-filtration"
ROUTE_DUALIZING = "relative-dualizing"


class PackageError(ValueError):
    """The requested package cannot be built from this certificate."""


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str


@dataclass(frozen=True)
class CounterexamplePackage:
    """Divisor data on the ruled surface over a certified base curve.

    ``section_curve`` is the degree-p multisection disjoint from the
    canonical section (E.C' = 0, C'.F = p).  ``boundary`` carries the
    fractional coefficients; ``member_class`` is the extra boundary
    branch used by the p >= 5 semipositivity data.  ``h_class`` is the
    polarization D - K - B.
    """

    kind: str
    certificate: TangoCertificate
    model: RuledModel
    section_curve: DivisorClass
    boundary: tuple[tuple[DivisorClass, Fraction], ...]
    divisor: DivisorClass
    h_class: DivisorClass
    base_twist_degree: Fraction | None = None
    member_class: DivisorClass | None = None
    member_coefficient: Fraction | None = None
    shifted_divisor: DivisorClass | None = None
    checklist: tuple[CheckResult, ...] = ()

    def is_valid(self) -> bool:
        return all(c.passed for c in self.checklist)

    def degree_n(self) -> int:
        return self.certificate.l_degree


@dataclass(frozen=True)
class DegreeAudit:
    """Bookkeeping chain behind the h1 lower bound.

    The filtration degrees are those of the graded pieces the direct
    image decomposes through; the dual subsheaf of degree
    ``subsheaf_degree`` is twisted by ``twist_degree`` to land at the
    trivial bundle, whose sections give the bound.
    """

    route: str
    filtration_degrees: tuple[int, ...]
    subsheaf_degree: int
    twist_degree: int
    final_degree: int
    lower_bound: int


@dataclass(frozen=True)
class PackageVerification:
    package: CounterexamplePackage
    results: tuple[CheckResult, ...] = field(default=())
    valid: bool = False


def _fmt(cls: DivisorClass) -> str:
    names = ["E", "F"] + [f"e{i}" for i in range(len(cls.coeffs) - 2)]
    parts = []
    for c, name in zip(cls.coeffs, names):
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        body = name if mag == 1 else f"({mag})" + name
        parts.append(f"{sign} {body}" if parts else f"{sign}{body}")
    return " ".join(parts) if parts else "0"


def _admit(cert: TangoCertificate, allow_asserted: bool) -> None:
    if cert.n_f0 <= 0:
        raise PackageError(
            "the invariant must be positive to twist anything pathological"
        )
    if not cert.equality:
        raise PackageError(
            "certificate does not pin the invariant at the genus bound"
        )
    if cert.provenance == ASSERTED and not allow_asserted:
        raise PackageError(
            "certificate is catalogue-asserted, not computed;"
            " pass allow_asserted to accept it"
        )


def build_surface(cert: TangoCertificate) -> RuledModel:
    """Ruled surface over the certified curve with invariant e = -n.

    The multisection class pE - pnF must clear the candidate-curve
    constraints, which on the x >= p branch amounts to 2(g-1) >= pn;
    the genus bound in the certificate guarantees exactly that.
    """
    g, n, p = cert.genus, cert.l_degree, cert.family.p
    model = RuledModel(p, g, -n)
    if not candidate_curve_constraints(model, disjoint_multisection(model)):
        raise PackageError(
            "multisection class fails the curve constraints;"
            " the certificate bound must be broken"
        )
    return model


def disjoint_multisection(model: RuledModel) -> DivisorClass:
    """The class pE - pnF: degree p over the base, disjoint from E."""
    p = model.characteristic
    n = -model.invariant_e
    return model.divisor(p, -p * n)


def build_kv(
    cert: TangoCertificate, allow_asserted: bool = False
) -> CounterexamplePackage:
    """Fractional boundary on the multisection with D nef, H ample.

    For p >= 3 the boundary coefficient is 1/2 and
    D = ((p-3)/2)E + (2g-2+(3-p)n/2)F; for p = 2 the coefficient is 2/3
    and D = (2g-2)F, the canonical pullback from the base.
    """
    _admit(cert, allow_asserted)
    model = build_surface(cert)
    g, n, p = cert.genus, cert.l_degree, cert.family.p
    c_prime = disjoint_multisection(model)
    if p >= 3:
        coeff = Fraction(1, 2)
        divisor = model.divisor(
            Fraction(p - 3, 2), 2 * g - 2 + Fraction((3 - p) * n, 2)
        )
        h_class = model.divisor(Fraction(1, 2), Fraction(n, 2))
    else:
        coeff = Fraction(2, 3)
        divisor = model.divisor(0, 2 * g - 2)
        h_class = model.divisor(Fraction(2, 3), Fraction(n, 3))
    boundary = ((c_prime, coeff),)
    _require_identity(model, divisor, boundary, h_class)
    pkg = CounterexamplePackage(
        kind=KIND_KV,
        certificate=cert,
        model=model,
        section_curve=c_prime,
        boundary=boundary,
        divisor=divisor,
        h_class=h_class,
    )
    return _with_checklist(pkg)


def build_kollar(
    cert: TangoCertificate, allow_asserted: bool = False
) -> CounterexamplePackage:
    """Two disjoint boundary branches plus a base twist.

    D = K + B + (twist pulled back from the base) exactly; the branches
    are the canonical section and the multisection, disjoint because
    E.C' = 0.  For p = 2 the twist is a third of the certified bundle,
    so its degree bookkeeping needs 3 | n.
    """
    _admit(cert, allow_asserted)
    model = build_surface(cert)
    g, n, p = cert.genus, cert.l_degree, cert.family.p
    c_prime = disjoint_multisection(model)
    section = model.section_class()
    if p >= 3:
        coeff = Fraction(1, 2)
        twist_degree = Fraction(n, 2)
        divisor = model.divisor(
            Fraction(p - 3, 2), 2 * g - 2 + Fraction((3 - p) * n, 2)
        )
    else:
        _require_star(cert)
        coeff = Fraction(2, 3)
        twist_degree = Fraction(n, 3)
        divisor = model.divisor(0, 2 * g - 2)
    boundary = ((section, coeff), (c_prime, coeff))
    h_class = model.divisor(0, twist_degree)
    _require_identity(model, divisor, boundary, h_class)
    pkg = CounterexamplePackage(
        kind=KIND_KOLLAR,
        certificate=cert,
        model=model,
        section_curve=c_prime,
        boundary=boundary,
        divisor=divisor,
        h_class=h_class,
        base_twist_degree=twist_degree,
    )
    return _with_checklist(pkg)


def build_semipos(
    cert: TangoCertificate, allow_asserted: bool = False
) -> CounterexamplePackage:
    """Data whose shifted class D' = D - (2g-2)F meets C' negatively.

    For p >= 5 this reuses the kv data and joins a general member of
    |2H| to the boundary (recorded at the class level only); for p = 3
    and p = 2 the boundary coefficient rises to 5/6 and D gains an E
    term.  The p = 2 data subtracts a third of the certified bundle
    from the base canonical, hence needs 3 | n to stay integral.
    """
    _admit(cert, allow_asserted)
    model = build_surface(cert)
    g, n, p = cert.genus, cert.l_degree, cert.family.p
    c_prime = disjoint_multisection(model)
    member = None
    member_coeff = None
    if p >= 5:
        coeff = Fraction(1, 2)
        divisor = model.divisor(
            Fraction(p - 3, 2), 2 * g - 2 + Fraction((3 - p) * n, 2)
        )
        h_class = model.divisor(Fraction(1, 2), Fraction(n, 2))
        member = model.divisor(1, n)  # 2H, integral
        member_coeff = Fraction(1, 2)
    elif p == 3:
        coeff = Fraction(5, 6)
        divisor = model.divisor(1, 2 * g - 2 - n)
        h_class = model.divisor(Fraction(1, 2), Fraction(n, 2))
    else:
        _require_star(cert)
        coeff = Fraction(5, 6)
        divisor = model.divisor(1, 2 * g - 2 - n // 3)
        h_class = model.divisor(Fraction(4, 3), Fraction(n, 3))
    boundary = ((c_prime, coeff),)
    _require_identity(model, divisor, boundary, h_class)
    if not divisor.is_integral():
        raise PackageError("the shifted data left D fractional")
    shifted = divisor - model.divisor(0, 2 * g - 2)
    pkg = CounterexamplePackage(
        kind=KIND_SEMIPOS,
        certificate=cert,
        model=model,
        section_curve=c_prime,
        boundary=boundary,
        divisor=divisor,
        h_class=h_class,
        member_class=member,
        member_coefficient=member_coeff,
        shifted_divisor=shifted,
    )
    return _with_checklist(pkg)


_BUILDERS = {
    KIND_KV: build_kv,
    KIND_KOLLAR: build_kollar,
    KIND_SEMIPOS: build_semipos,
}


def build_package(
    kind: str, cert: TangoCertificate, allow_asserted: bool = False
) -> CounterexamplePackage:
    if kind not in _BUILDERS:
        raise PackageError(f"unknown package kind {kind!r}")
    return _BUILDERS[kind](cert, allow_asserted)


def _require_star(cert: TangoCertificate) -> None:
    if not cert.star_condition:
        raise PackageError(
            "p = 2 needs 3 | n so that a third of the certified bundle"
            " is an honest divisor on the base"
        )


def _require_identity(model, divisor, boundary, h_class) -> None:
    total = model.zero_class()
    for cls, coeff in boundary:
        total = total + cls * coeff
    if divisor - model.canonical_class() - total != h_class:
        raise PackageError("class identity D - K - B = H broke; the"
                           " package data was transcribed wrong")


def h1_lower_bound_audit(pkg: CounterexamplePackage) -> DegreeAudit:
    """Degree chain forcing h1(X, D) >= 1 for a kv package.

    For p >= 3 the direct image filters through symmetric powers with
    graded degrees {0, n, ..., mn}, m = (p-3)/2; dualizing gives a
    subsheaf of degree -(p-1)n/2, and twisting back by (p-1)n/2 lands
    on the trivial bundle, whose h0 = 1 survives into h1(X, D).  For
    p = 2 the same term arrives directly from the relative dualizing
    sheaf, degree 0 on the nose.
    """
    if pkg.kind != KIND_KV:
        raise PackageError("the degree audit reads kv package data")
    p = pkg.model.characteristic
    n = pkg.degree_n()
    if p == 2:
        return DegreeAudit(
            route=ROUTE_DUALIZING,
            filtration_degrees=(0,),
            subsheaf_degree=0,
            twist_degree=0,
            final_degree=0,
            lower_bound=1,
        )
    m = (p - 3) // 2
    sub = -(p - 1) * n // 2
    return DegreeAudit(
        route=ROUTE_FILTRATION,
        filtration_degrees=tuple(i * n for i in range(m + 1)),
        subsheaf_degree=sub,
        twist_degree=-sub,
        final_degree=0,
        lower_bound=1,
    )


def verify_package(pkg: CounterexamplePackage) -> PackageVerification:
    """Re-run every checklist item from the stored classes.

    Nothing is trusted from build time; the returned results are
    recomputed, with the euler-characteristic cross-check appended for
    kinds whose build checklist does not carry it.
    """
    results = _checklist(pkg, with_euler=True)
    return PackageVerification(
        package=pkg,
        results=results,
        valid=all(r.passed for r in results),
    )


def _with_checklist(pkg: CounterexamplePackage) -> CounterexamplePackage:
    return CounterexamplePackage(
        **{
            **{f: getattr(pkg, f) for f in (
                "kind", "certificate", "model", "section_curve",
                "boundary", "divisor", "h_class", "base_twist_degree",
                "member_class", "member_coefficient", "shifted_divisor",
            )},
            "checklist": _checklist(pkg, with_euler=pkg.kind == KIND_KV),
        }
    )


def _checklist(
    pkg: CounterexamplePackage, with_euler: bool
) -> tuple[CheckResult, ...]:
    model = pkg.model
    g = model.genus
    n = pkg.degree_n()
    p = model.characteristic
    k = model.canonical_class()
    results: list[CheckResult] = []

    total = model.zero_class()
    for cls, coeff in pkg.boundary:
        total = total + cls * coeff
    residue = pkg.divisor - k - total
    results.append(CheckResult(
        "class-identity",
        residue == pkg.h_class,
        f"D - K - B = {_fmt(residue)}, H = {_fmt(pkg.h_class)}",
    ))
    if pkg.kind == KIND_KOLLAR:
        twist = model.divisor(0, pkg.base_twist_degree)
        results.append(CheckResult(
            "base-twist-matches",
            pkg.h_class == twist,
            f"D - K - B is the pulled-back twist {_fmt(twist)}",
        ))

    results.append(CheckResult(
        "divisor-integral",
        pkg.divisor.is_integral(),
        f"D = {_fmt(pkg.divisor)}",
    ))

    if pkg.kind == KIND_KV:
        nef = certify_positivity(model, pkg.divisor)
        results.append(CheckResult(
            "divisor-nef",
            nef.status == CERTIFIED,
            f"{nef.status} via {nef.rule_used}",
        ))

    if pkg.kind == KIND_KOLLAR:
        results.append(CheckResult(
            "base-twist-ample",
            pkg.base_twist_degree > 0,
            f"twist degree {pkg.base_twist_degree} > 0 on the base",
        ))
    else:
        ample = certify_positivity(model, pkg.h_class, strict=True)
        results.append(CheckResult(
            "polarization-ample",
            ample.status == CERTIFIED,
            f"{ample.status} via {ample.rule_used}",
        ))

    results.append(_klt_item(pkg))
    if pkg.member_class is not None:
        results.append(CheckResult(
            "boundary-member",
            True,
            f"general member of |{_fmt(2 * pkg.h_class)}| joined with"
            f" coefficient {pkg.member_coefficient}; transversality"
            " assumed, not derived",
        ))

    c_prime = pkg.section_curve
    e_dot = model.section_class().dot(c_prime)
    sq = c_prime.self_intersection()
    results.append(CheckResult(
        "section-curve",
        (candidate_curve_constraints(model, c_prime)
         and sq == -p * p * n and e_dot == 0),
        f"C'^2 = {sq} = -p^2 n, E.C' = {e_dot}, constraints hold",
    ))
    if 2 * (g - 1) == p * n:
        pa = adjunction_pa(model, c_prime)
        results.append(CheckResult(
            "arithmetic-genus",
            pa == g,
            f"p_a(C') = {pa} matches the base genus {g}",
        ))

    if pkg.kind == KIND_KV:
        h2_pairing = (k - pkg.divisor).dot(pkg.h_class)
        results.append(CheckResult(
            "h2-vanishing",
            h2_pairing < 0,
            f"(K - D).H = {h2_pairing} < 0 kills top cohomology",
        ))
        audit = h1_lower_bound_audit(pkg)
        results.append(CheckResult(
            "degree-audit",
            audit.final_degree == 0 and audit.lower_bound == 1,
            f"{audit.route}: degrees {audit.filtration_degrees},"
            f" subsheaf {audit.subsheaf_degree}, twist"
            f" {audit.twist_degree}, final {audit.final_degree},"
            f" h1 >= {audit.lower_bound}",
        ))

    if pkg.kind == KIND_SEMIPOS:
        expected_shift = pkg.divisor - model.divisor(0, 2 * g - 2)
        fiber_deg = pkg.shifted_divisor.dot(model.fiber_class())
        results.append(CheckResult(
            "shifted-degrees",
            pkg.shifted_divisor == expected_shift and fiber_deg >= 0,
            f"D' = D - ({2 * g - 2})F = {_fmt(pkg.shifted_divisor)},"
            f" fiber degree {fiber_deg} >= 0",
        ))
        value = pkg.shifted_divisor.dot(c_prime)
        if p >= 5:
            expected = Fraction((3 - p) * p * n, 2)
        elif p == 3:
            expected = Fraction(-3 * n)
        else:
            expected = Fraction(-2 * n, 3)
        results.append(CheckResult(
            "shifted-not-nef",
            value < 0 and value == expected,
            f"D'.C' = {value} < 0 against a certified curve class;"
            " the pushforward cannot be semipositive (surjectivity"
            " onto the fiberwise quotient taken as given)",
        ))

    if with_euler:
        chi = riemann_roch_chi(model, pkg.divisor)
        results.append(CheckResult(
            "euler-positive",
            chi > 0,
            f"chi(D) = {chi} > 0, so sections exist below h2 = 0",
        ))

    return tuple(results)


def _klt_item(pkg: CounterexamplePackage) -> CheckResult:
    branches = [
        WeightedBranch(f"b{idx}", coeff)
        for idx, (_, coeff) in enumerate(pkg.boundary)
    ]
    clusters: tuple[ClusterNode, ...] = ()
    note = "smooth branches"
    if pkg.kind == KIND_KOLLAR:
        meets = pkg.boundary[0][0].dot(pkg.boundary[1][0])
        if meets != 0:
            return CheckResult(
                "boundary-klt", False,
                f"branches are not disjoint: E.C' = {meets}",
            )
        note = "disjoint smooth branches, E.C' = 0"
    if pkg.member_class is not None:
        branches.append(WeightedBranch("member", pkg.member_coefficient))
        # one representative transverse meeting; they are all alike
        clusters = (ClusterNode(("b0", "member")),)
        note = "member meets the multisection transversally (assumed)"
    arr = ClusterArrangement(tuple(branches), clusters)
    verdict = snc_klt_shortcut(arr)
    coeffs = ", ".join(str(b.coefficient) for b in branches)
    return CheckResult(
        "boundary-klt",
        bool(verdict),
        f"{note}; coefficients {coeffs} all below 1",
    )
