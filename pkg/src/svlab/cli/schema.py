"""Strict document schema: versioned key-value trees with exact rationals.

Documents are JSON with a fixed vocabulary.  Validation is closed:
every object lists its admissible keys and anything else is rejected,
so a typo never silently changes meaning.  Rationals travel as
"num/den" strings (or bare integers strings); decimal literals are
refused outright.
"""

import json
import re
from fractions import Fraction

from ..charpcurve.families import (
    ArtinSchreier,
    Hyperelliptic,
    TangoCertificate,
    TangoPlane,
    certify_tango,
)
from ..construct import KINDS, CounterexamplePackage
from ..kltcalc import (
    EXCEPTIONAL,
    ORIGINAL,
    ClusterArrangement,
    ClusterNode,
    WeightedBranch,
)
from ..lattice import DivisorClass, RuledModel
from ..nonvanish import RULED, Scenario
from .sweep import SweepRequest

FORMAT_VERSION = "svlab/1"

REQUESTS = ("classify", "klt", "tango", "construct", "verify-package",
            "sweep")

_RATIONAL = re.compile(r"^-?\d+(?:/[1-9]\d*)?$")


class SchemaError(ValueError):
    """The document does not match the published schema."""


def parse_rational(value, where: str) -> Fraction:
    if not isinstance(value, str) or not _RATIONAL.match(value):
        raise SchemaError(
            f"{where}: expected an exact rational like \"3\" or \"-9/2\","
            f" got {value!r}"
        )
    return Fraction(value)


def fmt_rational(q) -> str:
    return str(Fraction(q))


def _object(data, where: str, required: dict, optional: dict = {}):
    if not isinstance(data, dict):
        raise SchemaError(f"{where}: expected an object")
    unknown = set(data) - set(required) - set(optional)
    if unknown:
        raise SchemaError(
            f"{where}: unknown keys {sorted(unknown)}; this schema is strict"
        )
    out = {}
    for key, convert in required.items():
        if key not in data:
            raise SchemaError(f"{where}: missing key {key!r}")
        out[key] = convert(data[key], f"{where}.{key}")
    for key, (convert, default) in optional.items():
        if key in data:
            out[key] = convert(data[key], f"{where}.{key}")
        else:
            out[key] = default
    return out


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: expected an integer")
    return value


def _bool(value, where):
    if not isinstance(value, bool):
        raise SchemaError(f"{where}: expected true or false")
    return value


def _string(value, where):
    if not isinstance(value, str):
        raise SchemaError(f"{where}: expected a string")
    return value


def _nullable(convert):
    def inner(value, where):
        return None if value is None else convert(value, where)
    return inner


def _list_of(convert):
    def inner(value, where):
        if not isinstance(value, list):
            raise SchemaError(f"{where}: expected an array")
        return [convert(v, f"{where}[{i}]") for i, v in enumerate(value)]
    return inner


def _coeffs(value, where):
    return _list_of(parse_rational)(value, where)


def _kodaira(value, where):
    if value == "-inf":
        return RULED
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f'{where}: expected "-inf" or an integer')
    return value


def load_document(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as ex:
        raise SchemaError(f"not valid JSON: {ex}") from None
    if not isinstance(data, dict):
        raise SchemaError("top level: expected an object")
    fmt = data.get("format")
    if fmt != FORMAT_VERSION:
        raise SchemaError(
            f"format: expected {FORMAT_VERSION!r}, got {fmt!r}"
        )
    request = data.get("request")
    if request not in REQUESTS:
        raise SchemaError(
            f"request: expected one of {', '.join(REQUESTS)}, got {request!r}"
        )
    return data


def require_request(data: dict, expected: str) -> None:
    if data["request"] != expected:
        raise SchemaError(
            f"document is a {data['request']} request, not {expected}"
        )


def _model_fields(value, where):
    return _object(value, where, {
        "p": _int,
        "genus": _int,
        "e": _int,
    }, {
        "chi": (_nullable(_int), None),
        "exceptionals": (_list_of(_list_of(_int)), []),
    })


def _build_model(fields) -> RuledModel:
    model = RuledModel(
        fields["p"], fields["genus"], fields["e"], (), fields["chi"]
    )
    for prox in fields["exceptionals"]:
        model = model.blow_up(proximate_to=tuple(prox))
    return model


def _class_on(model: RuledModel, coeffs, where) -> DivisorClass:
    if len(coeffs) != model.rank:
        raise SchemaError(
            f"{where}: expected {model.rank} coefficients,"
            f" got {len(coeffs)}"
        )
    return model.divisor(*coeffs)


def _boundary_entry(value, where):
    return _object(value, where, {
        "class": _coeffs,
        "coefficient": parse_rational,
    })


def scenario_from_document(data: dict) -> Scenario:
    top = _object(data, "document", {
        "format": _string,
        "request": _string,
        "scenario": lambda v, w: v,
    })
    fields = _object(top["scenario"], "scenario", {
        "model": _model_fields,
        "kodaira": _kodaira,
        "chi_o": _int,
        "q": _int,
        "relatively_minimal": _bool,
        "divisor": _coeffs,
    }, {
        "boundary": (_list_of(_boundary_entry), []),
        "declared_curves": (_list_of(_coeffs), []),
        "kappa_minus_k_nonneg": (_nullable(_bool), None),
    })
    model = _build_model(fields["model"])
    divisor = _class_on(model, fields["divisor"], "scenario.divisor")
    boundary = tuple(
        (_class_on(model, entry["class"], "scenario.boundary"),
         entry["coefficient"])
        for entry in fields["boundary"]
    )
    declared = tuple(
        _class_on(model, coeffs, "scenario.declared_curves")
        for coeffs in fields["declared_curves"]
    )
    return Scenario(
        model=model,
        kodaira=fields["kodaira"],
        chi_o=fields["chi_o"],
        q=fields["q"],
        relatively_minimal=fields["relatively_minimal"],
        divisor=divisor,
        boundary=boundary,
        declared_curves=declared,
        kappa_minus_k_nonneg=fields["kappa_minus_k_nonneg"],
    )


def _branch(value, where):
    fields = _object(value, where, {
        "id": _string,
        "coefficient": parse_rational,
    }, {
        "kind": (_string, ORIGINAL),
    })
    if fields["kind"] not in (ORIGINAL, EXCEPTIONAL):
        raise SchemaError(
            f"{where}.kind: expected {ORIGINAL!r} or {EXCEPTIONAL!r}"
        )
    return WeightedBranch(fields["id"], fields["coefficient"],
                          fields["kind"])


def _cluster(value, where):
    fields = _object(value, where, {
        "branches": _list_of(_string),
    }, {
        "children": (_list_of(_cluster), []),
    })
    return ClusterNode(tuple(fields["branches"]),
                       tuple(fields["children"]))


def arrangement_from_document(data: dict) -> ClusterArrangement:
    top = _object(data, "document", {
        "format": _string,
        "request": _string,
        "arrangement": lambda v, w: v,
    })
    fields = _object(top["arrangement"], "arrangement", {
        "branches": _list_of(_branch),
    }, {
        "clusters": (_list_of(_cluster), []),
    })
    return ClusterArrangement(tuple(fields["branches"]),
                              tuple(fields["clusters"]))


_FAMILY_KINDS = ("hyperelliptic", "artinschreier", "tangoplane")


def family_from_fields(kind: str, p: int, h):
    if kind == "hyperelliptic":
        if h is None:
            raise SchemaError("hyperelliptic needs h")
        return Hyperelliptic(p, h)
    if kind == "artinschreier":
        if h is None:
            raise SchemaError("artinschreier needs h")
        return ArtinSchreier(p, h)
    if kind == "tangoplane":
        if h is not None:
            raise SchemaError("tangoplane takes no h")
        return TangoPlane(p)
    raise SchemaError(
        f"family kind: expected one of {', '.join(_FAMILY_KINDS)},"
        f" got {kind!r}"
    )


def _family(value, where):
    fields = _object(value, where, {
        "kind": _string,
        "p": _int,
    }, {
        "h": (_nullable(_int), None),
    })
    return family_from_fields(fields["kind"], fields["p"], fields["h"])


def family_from_document(data: dict):
    top = _object(data, "document", {
        "format": _string,
        "request": _string,
        "family": _family,
    })
    return top["family"]


def construct_from_document(data: dict):
    top = _object(data, "document", {
        "format": _string,
        "request": _string,
        "kind": _string,
        "family": _family,
    }, {
        "allow_asserted": (_bool, False),
    })
    if top["kind"] not in KINDS:
        raise SchemaError(
            f"kind: expected one of {', '.join(KINDS)}, got {top['kind']!r}"
        )
    return top["kind"], top["family"], top["allow_asserted"]


def _range(value, where):
    pair = _list_of(_int)(value, where)
    if len(pair) != 2:
        raise SchemaError(f"{where}: expected [low, high]")
    return (pair[0], pair[1])


def sweep_from_document(data: dict) -> SweepRequest:
    top = _object(data, "document", {
        "format": _string,
        "request": _string,
        "model": lambda v, w: _object(v, w, {
            "p": _int, "genus": _int, "e": _int,
        }),
        "box": lambda v, w: _object(v, w, {
            "a": _range, "b": _range,
        }),
        "boundary_coefficient": parse_rational,
    })
    model = top["model"]
    if model["e"] >= 0:
        raise SchemaError("model.e: the sweep runs on e < 0 models")
    coeff = top["boundary_coefficient"]
    if not 0 < coeff < 1:
        raise SchemaError(
            "boundary_coefficient: expected a value strictly between 0 and 1"
        )
    return SweepRequest(
        characteristic=model["p"],
        genus=model["genus"],
        invariant_e=model["e"],
        a_range=top["box"]["a"],
        b_range=top["box"]["b"],
        coefficient=coeff,
    )


def family_document(family) -> dict:
    if isinstance(family, Hyperelliptic):
        return {"kind": "hyperelliptic", "p": family.p, "h": family.h}
    if isinstance(family, ArtinSchreier):
        return {"kind": "artinschreier", "p": family.p, "h": family.h}
    return {"kind": "tangoplane", "p": family.p}


def _certificate_document(cert: TangoCertificate) -> dict:
    return {
        "family": family_document(cert.family),
        "witness": cert.witness,
        "genus": cert.genus,
        "v_inf": cert.v_inf,
        "n": cert.n_f0,
        "bound": cert.bound,
        "equality": cert.equality,
        "l_degree": cert.l_degree,
        "star_condition": cert.star_condition,
        "provenance": cert.provenance,
    }


def _certificate(value, where) -> TangoCertificate:
    fields = _object(value, where, {
        "family": _family,
        "witness": _string,
        "genus": _int,
        "v_inf": _nullable(_int),
        "n": _int,
        "bound": _int,
        "equality": _bool,
        "l_degree": _int,
        "star_condition": _nullable(_bool),
        "provenance": _string,
    })
    if fields["provenance"] not in ("computed", "asserted"):
        raise SchemaError(
            f"{where}.provenance: expected computed or asserted"
        )
    try:
        cert = TangoCertificate(
            family=fields["family"],
            witness=fields["witness"],
            genus=fields["genus"],
            v_inf=fields["v_inf"],
            n_f0=fields["n"],
            bound=fields["bound"],
            equality=fields["equality"],
            l_degree=fields["l_degree"],
            star_condition=fields["star_condition"],
            provenance=fields["provenance"],
        )
    except ValueError as ex:
        raise SchemaError(f"{where}: {ex}") from None
    # Certificates are cheap to recompute, so a stored one is never
    # trusted: any drift from the family's own numbers is a bad input,
    # not a failed check.
    if cert != certify_tango(cert.family):
        raise SchemaError(
            f"{where}: fields do not match a recomputation for the"
            " stated family"
        )
    return cert


def _class_doc(cls: DivisorClass) -> list:
    return [fmt_rational(c) for c in cls.coeffs]


def package_to_document(pkg: CounterexamplePackage) -> dict:
    model = pkg.model
    package = {
        "kind": pkg.kind,
        "certificate": _certificate_document(pkg.certificate),
        "model": {
            "p": model.characteristic,
            "genus": model.genus,
            "e": model.invariant_e,
        },
        "section_curve": _class_doc(pkg.section_curve),
        "boundary": [
            {"class": _class_doc(cls), "coefficient": fmt_rational(q)}
            for cls, q in pkg.boundary
        ],
        "divisor": _class_doc(pkg.divisor),
        "h_class": _class_doc(pkg.h_class),
        "base_twist_degree": (
            None if pkg.base_twist_degree is None
            else fmt_rational(pkg.base_twist_degree)
        ),
        "member_class": (
            None if pkg.member_class is None
            else _class_doc(pkg.member_class)
        ),
        "member_coefficient": (
            None if pkg.member_coefficient is None
            else fmt_rational(pkg.member_coefficient)
        ),
        "shifted_divisor": (
            None if pkg.shifted_divisor is None
            else _class_doc(pkg.shifted_divisor)
        ),
    }
    return {
        "format": FORMAT_VERSION,
        "request": "verify-package",
        "package": package,
    }


def package_from_document(data: dict) -> CounterexamplePackage:
    top = _object(data, "document", {
        "format": _string,
        "request": _string,
        "package": lambda v, w: v,
    })
    fields = _object(top["package"], "package", {
        "kind": _string,
        "certificate": _certificate,
        "model": lambda v, w: _object(v, w, {
            "p": _int, "genus": _int, "e": _int,
        }),
        "section_curve": _coeffs,
        "boundary": _list_of(_boundary_entry),
        "divisor": _coeffs,
        "h_class": _coeffs,
        "base_twist_degree": _nullable(parse_rational),
        "member_class": _nullable(_coeffs),
        "member_coefficient": _nullable(parse_rational),
        "shifted_divisor": _nullable(_coeffs),
    })
    if fields["kind"] not in KINDS:
        raise SchemaError(
            f"package.kind: expected one of {', '.join(KINDS)}"
        )
    m = fields["model"]
    model = RuledModel(m["p"], m["genus"], m["e"])

    def cls(coeffs, where):
        return _class_on(model, coeffs, where)

    return CounterexamplePackage(
        kind=fields["kind"],
        certificate=fields["certificate"],
        model=model,
        section_curve=cls(fields["section_curve"],
                          "package.section_curve"),
        boundary=tuple(
            (cls(entry["class"], "package.boundary"),
             entry["coefficient"])
            for entry in fields["boundary"]
        ),
        divisor=cls(fields["divisor"], "package.divisor"),
        h_class=cls(fields["h_class"], "package.h_class"),
        base_twist_degree=fields["base_twist_degree"],
        member_class=(
            None if fields["member_class"] is None
            else cls(fields["member_class"], "package.member_class")
        ),
        member_coefficient=fields["member_coefficient"],
        shifted_divisor=(
            None if fields["shifted_divisor"] is None
            else cls(fields["shifted_divisor"], "package.shifted_divisor")
        ),
    )


def dumps_canonical(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
