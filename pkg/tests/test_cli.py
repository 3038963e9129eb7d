"""End-to-end coverage for the command line: documents in, reports out.

Everything runs through main(argv) in-process except one subprocess
smoke test for the module entry point.  Machine-format lines are parsed
back into dicts so assertions hit fields, not byte offsets; the
round-trip and determinism tests compare raw bytes on purpose.
"""

import json
import re
import subprocess
import sys

import pytest

from svlab.cli.main import main

_TOKEN = re.compile(r'([\w-]+)=("(?:[^"\\]|\\.)*"|\S+)')


def parse_line(line):
    head = line.split(" ", 1)[0]
    fields = {}
    for key, raw in _TOKEN.findall(line):
        fields[key] = json.loads(raw) if raw.startswith('"') else raw
    return head, fields


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_doc(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def checks(out, name):
    found = []
    for line in out.splitlines():
        head, fields = parse_line(line)
        if head == "check" and fields.get("name") == name:
            found.append(fields)
    return found


KV_SCENARIO = {
    "format": "svlab/1",
    "request": "classify",
    "scenario": {
        "model": {"p": 3, "genus": 4, "e": -2},
        "kodaira": "-inf",
        "chi_o": -3,
        "q": 4,
        "relatively_minimal": True,
        "divisor": ["0", "6"],
        "boundary": [{"class": ["3", "-6"], "coefficient": "1/2"}],
    },
}

TRIPLE_DOC = {
    "format": "svlab/1",
    "request": "klt",
    "arrangement": {
        "branches": [
            {"id": "b1", "coefficient": "2/5"},
            {"id": "b2", "coefficient": "4/5"},
            {"id": "b3", "coefficient": "3/4"},
        ],
        "clusters": [{"branches": ["b1", "b2", "b3"]}],
    },
}

TANGENT_DOC = {
    "format": "svlab/1",
    "request": "klt",
    "arrangement": {
        "branches": [
            {"id": "b2", "coefficient": "4/5"},
            {"id": "b3", "coefficient": "3/4"},
        ],
        "clusters": [{
            "branches": ["b2", "b3"],
            "children": [{"branches": ["b2", "b3"]}],
        }],
    },
}

SWEEP_DOC = {
    "format": "svlab/1",
    "request": "sweep",
    "model": {"p": 3, "genus": 4, "e": -2},
    "box": {"a": [0, 5], "b": [-10, 20]},
    "boundary_coefficient": "1/2",
}


class TestSchemaRejection:
    def test_unknown_top_level_key(self, tmp_path, capsys):
        doc = dict(KV_SCENARIO, surprise=1)
        code, out, err = run(
            capsys, "classify",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 2
        assert "unknown keys" in err
        assert out == ""

    def test_unknown_nested_key(self, tmp_path, capsys):
        doc = json.loads(json.dumps(KV_SCENARIO))
        doc["scenario"]["model"]["q"] = 4
        code, _, err = run(
            capsys, "classify",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 2
        assert "unknown keys" in err

    def test_decimal_rational_rejected(self, tmp_path, capsys):
        doc = json.loads(json.dumps(KV_SCENARIO))
        doc["scenario"]["boundary"][0]["coefficient"] = "0.5"
        code, _, err = run(
            capsys, "classify",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 2
        assert "exact rational" in err

    def test_numeric_coefficient_rejected(self, tmp_path, capsys):
        doc = json.loads(json.dumps(KV_SCENARIO))
        doc["scenario"]["divisor"] = [0, 6]
        code, _, err = run(
            capsys, "classify",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 2

    def test_wrong_format_tag(self, tmp_path, capsys):
        doc = dict(SWEEP_DOC, format="svlab/2")
        code, _, err = run(
            capsys, "sweep", "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 2
        assert "svlab/1" in err

    def test_wrong_request_for_command(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "sweep",
            "--in", write_doc(tmp_path, "d.json", KV_SCENARIO),
        )
        assert code == 2
        assert "classify" in err

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{", encoding="utf-8")
        code, _, err = run(capsys, "classify", "--in", str(path))
        assert code == 2

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "classify", "--in", str(tmp_path / "absent.json"),
        )
        assert code == 2

    def test_missing_in_flag(self, capsys):
        code, _, err = run(capsys, "classify")
        assert code == 2
        assert "--in" in err


class TestClassify:
    def test_boundary_scenario(self, tmp_path, capsys):
        code, out, _ = run(
            capsys, "classify", "--format", "machine",
            "--in", write_doc(tmp_path, "d.json", KV_SCENARIO),
        )
        assert code == 0
        (cls,) = checks(out, "classification")
        assert cls["case"] == "C_M"
        assert cls["kodaira"] == "-inf"
        (dec,) = checks(out, "decision")
        assert dec["result"] == "m=1"
        assert dec["rule"] == "nonvanish.chi-product"
        assert dec["chi"] == "3"

    def test_structure_sheaf_scenario(self, tmp_path, capsys):
        doc = {
            "format": "svlab/1",
            "request": "classify",
            "scenario": {
                "model": {"p": 3, "genus": 0, "e": 1},
                "kodaira": "-inf",
                "chi_o": 1,
                "q": 0,
                "relatively_minimal": True,
                "divisor": ["0", "0"],
            },
        }
        code, out, _ = run(
            capsys, "classify", "--format", "machine",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 0
        (cls,) = checks(out, "classification")
        assert cls["case"] == "A"
        (dec,) = checks(out, "decision")
        assert dec["result"] == "m=1"
        assert dec["rule"] == "nonvanish.structure-sheaf-euler"
        assert dec["chi"] == "1"

    def test_unknown_verdict_still_exits_zero(self, tmp_path, capsys):
        doc = {
            "format": "svlab/1",
            "request": "classify",
            "scenario": {
                "model": {"p": 3, "genus": 4, "e": -2, "chi": -1},
                "kodaira": 1,
                "chi_o": -1,
                "q": 3,
                "relatively_minimal": True,
                "divisor": ["0", "1"],
            },
        }
        code, out, _ = run(
            capsys, "classify", "--format", "machine",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 0
        (cls,) = checks(out, "classification")
        assert cls["case"] == "D_I"
        (dec,) = checks(out, "decision")
        assert dec["result"] == "unknown"
        assert "reason" in dec

    def test_inconsistent_scenario_is_an_input_error(
        self, tmp_path, capsys,
    ):
        doc = json.loads(json.dumps(KV_SCENARIO))
        doc["scenario"]["q"] = 7
        code, _, err = run(
            capsys, "classify",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 2
        assert "irregularity" in err


class TestKlt:
    def test_triple_point(self, tmp_path, capsys):
        code, out, _ = run(
            capsys, "klt", "--format", "machine",
            "--in", write_doc(tmp_path, "d.json", TRIPLE_DOC),
        )
        assert code == 0
        (verdict,) = checks(out, "klt-verdict")
        assert verdict["verdict"] == "klt"
        assert verdict["max_exceptional"] == "19/20"
        (rec,) = checks(out, "blowup")
        assert rec["node"] == "n0"
        assert rec["coefficient"] == "19/20"

    def test_tangent_pair_not_klt_exits_zero(self, tmp_path, capsys):
        code, out, _ = run(
            capsys, "klt", "--format", "machine",
            "--in", write_doc(tmp_path, "d.json", TANGENT_DOC),
        )
        assert code == 0
        records = checks(out, "blowup")
        assert [r["node"] for r in records] == ["n0", "n0.0"]
        assert records[1]["coefficient"] == "11/10"
        (verdict,) = checks(out, "klt-verdict")
        assert verdict["verdict"] == "not-klt"
        assert verdict["min_discrepancy"] == "-11/10"

    def test_empty_arrangement(self, tmp_path, capsys):
        doc = {
            "format": "svlab/1",
            "request": "klt",
            "arrangement": {"branches": []},
        }
        code, out, _ = run(
            capsys, "klt", "--format", "machine",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 0
        (verdict,) = checks(out, "klt-verdict")
        assert verdict["verdict"] == "klt"
        assert "max_exceptional" not in verdict

    def test_unknown_branch_in_cluster(self, tmp_path, capsys):
        doc = json.loads(json.dumps(TRIPLE_DOC))
        doc["arrangement"]["clusters"][0]["branches"] = ["b1", "ghost"]
        code, _, err = run(
            capsys, "klt",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 2


class TestTango:
    def test_hyperelliptic_via_flags(self, capsys):
        code, out, _ = run(
            capsys, "tango", "--format", "machine",
            "--family", "hyperelliptic", "--p", "3", "--h", "3",
        )
        assert code == 0
        (inv,) = checks(out, "invariant")
        assert inv["n"] == "2"
        assert inv["v_inf"] == "6"
        (bound,) = checks(out, "genus-bound")
        assert bound == {
            "name": "genus-bound", "status": "PASS",
            "genus": "4", "bound": "2", "equality": "true",
        }
        assert checks(out, "star-condition") == []

    def test_artin_schreier_star(self, capsys):
        code, out, _ = run(
            capsys, "tango", "--format", "machine",
            "--family", "artinschreier", "--p", "2", "--h", "5",
        )
        assert code == 0
        (star,) = checks(out, "star-condition")
        assert star["value"] == "true"
        (wit,) = checks(out, "witness")
        assert wit["value"] == "y"
        assert wit["provenance"] == "computed"

    def test_tangoplane_catalogue(self, capsys):
        code, out, _ = run(
            capsys, "tango", "--format", "machine",
            "--family", "tangoplane", "--p", "5",
        )
        assert code == 0
        (inv,) = checks(out, "invariant")
        assert inv["n"] == "3"
        assert "v_inf" not in inv
        (wit,) = checks(out, "witness")
        assert wit["provenance"] == "asserted"

    def test_even_h_rejected(self, capsys):
        code, _, err = run(
            capsys, "tango",
            "--family", "hyperelliptic", "--p", "3", "--h", "4",
        )
        assert code == 2

    def test_tangoplane_refuses_h(self, capsys):
        code, _, err = run(
            capsys, "tango",
            "--family", "tangoplane", "--p", "5", "--h", "3",
        )
        assert code == 2

    def test_flags_and_document_conflict(self, tmp_path, capsys):
        doc = {
            "format": "svlab/1",
            "request": "tango",
            "family": {"kind": "hyperelliptic", "p": 3, "h": 3},
        }
        code, _, err = run(
            capsys, "tango",
            "--in", write_doc(tmp_path, "d.json", doc),
            "--family", "hyperelliptic", "--p", "3", "--h", "3",
        )
        assert code == 2
        assert "not both" in err

    def test_document_form(self, tmp_path, capsys):
        doc = {
            "format": "svlab/1",
            "request": "tango",
            "family": {"kind": "artinschreier", "p": 3, "h": 3},
        }
        code, out, _ = run(
            capsys, "tango", "--format", "machine",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 0
        (inv,) = checks(out, "invariant")
        assert inv["n"] == "4"

    def test_no_source_at_all(self, capsys):
        code, _, err = run(capsys, "tango")
        assert code == 2


GRID = (
    ("kv", "hyperelliptic", "3", "3"),
    ("kv", "hyperelliptic", "5", "3"),
    ("kv", "artinschreier", "2", "5"),
    ("kv", "artinschreier", "3", "3"),
    ("kollar", "hyperelliptic", "3", "3"),
    ("kollar", "artinschreier", "2", "5"),
    ("semipos", "hyperelliptic", "5", "3"),
    ("semipos", "hyperelliptic", "3", "3"),
    ("semipos", "artinschreier", "2", "5"),
)


class TestConstruct:
    @pytest.mark.parametrize("kind,family,p,h", GRID)
    def test_grid_builds_valid(self, capsys, kind, family, p, h):
        code, out, _ = run(
            capsys, "construct", "--format", "machine",
            "--kind", kind, "--family", family, "--p", p, "--h", h,
        )
        assert code == 0
        (valid,) = checks(out, "package-valid")
        assert valid["status"] == "PASS"
        assert checks(out, "class-identity")[0]["status"] == "PASS"

    def test_kollar_star_gate(self, capsys):
        code, _, err = run(
            capsys, "construct", "--kind", "kollar",
            "--family", "artinschreier", "--p", "2", "--h", "4",
        )
        assert code == 2
        assert "3 | n" in err

    def test_semipos_star_gate(self, capsys):
        code, _, err = run(
            capsys, "construct", "--kind", "semipos",
            "--family", "artinschreier", "--p", "2", "--h", "4",
        )
        assert code == 2

    def test_kv_survives_the_star_gate(self, capsys):
        code, out, _ = run(
            capsys, "construct", "--format", "machine", "--kind", "kv",
            "--family", "artinschreier", "--p", "2", "--h", "4",
        )
        assert code == 0
        (valid,) = checks(out, "package-valid")
        assert valid["status"] == "PASS"

    def test_asserted_certificate_needs_the_flag(self, capsys):
        code, _, err = run(
            capsys, "construct", "--kind", "kv",
            "--family", "tangoplane", "--p", "5",
        )
        assert code == 2
        assert "allow_asserted" in err

    def test_asserted_certificate_with_the_flag(self, capsys):
        code, out, _ = run(
            capsys, "construct", "--format", "machine",
            "--kind", "kv", "--family", "tangoplane", "--p", "5",
            "--allow-asserted",
        )
        assert code == 0
        (head,) = checks(out, "package")
        assert head["family"] == "tangoplane"
        assert head["n"] == "3"

    def test_kind_is_required_with_flags(self, capsys):
        code, _, err = run(
            capsys, "construct",
            "--family", "hyperelliptic", "--p", "3", "--h", "3",
        )
        assert code == 2
        assert "--kind" in err

    def test_document_form(self, tmp_path, capsys):
        doc = {
            "format": "svlab/1",
            "request": "construct",
            "kind": "kollar",
            "family": {"kind": "artinschreier", "p": 3, "h": 3},
        }
        code, out, _ = run(
            capsys, "construct", "--format", "machine",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 0
        (head,) = checks(out, "package")
        assert head["kind"] == "kollar"
        (twist,) = checks(out, "base-twist-matches")
        assert twist["status"] == "PASS"

    def test_document_kind_conflict(self, tmp_path, capsys):
        doc = {
            "format": "svlab/1",
            "request": "construct",
            "kind": "kollar",
            "family": {"kind": "hyperelliptic", "p": 3, "h": 3},
        }
        code, _, err = run(
            capsys, "construct", "--kind", "kv",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 2
        assert "contradicts" in err


class TestRoundTrip:
    def emit(self, tmp_path, capsys, kind, family, p, h):
        emitted = tmp_path / f"{kind}-{family}-{p}-{h or 0}.json"
        argv = [
            "construct", "--format", "machine",
            "--kind", kind, "--family", family, "--p", p,
            "--emit", str(emitted),
        ]
        if h is not None:
            argv += ["--h", h]
        code, out, _ = run(capsys, *argv)
        assert code == 0
        return emitted, out

    @pytest.mark.parametrize("kind,family,p,h", GRID)
    def test_verify_reproduces_construct(
        self, tmp_path, capsys, kind, family, p, h,
    ):
        emitted, construct_out = self.emit(
            tmp_path, capsys, kind, family, p, h,
        )
        code, verify_out, _ = run(
            capsys, "verify", "--format", "machine", "--in", str(emitted),
        )
        assert code == 0
        tail = lambda s: s.split("\n", 1)[1]
        assert tail(verify_out) == tail(construct_out)
        assert verify_out.startswith("report command=verify")

    def test_emitted_document_is_canonical(self, tmp_path, capsys):
        emitted, _ = self.emit(
            tmp_path, capsys, "kv", "hyperelliptic", "3", "3",
        )
        raw = emitted.read_text(encoding="utf-8")
        doc = json.loads(raw)
        assert doc["request"] == "verify-package"
        assert raw == json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def test_tampered_divisor_fails_verification(self, tmp_path, capsys):
        emitted, _ = self.emit(
            tmp_path, capsys, "kv", "hyperelliptic", "3", "3",
        )
        doc = json.loads(emitted.read_text(encoding="utf-8"))
        doc["package"]["divisor"] = ["1", "-5"]
        bad = tmp_path / "tampered.json"
        bad.write_text(json.dumps(doc), encoding="utf-8")
        code, out, _ = run(
            capsys, "verify", "--format", "machine", "--in", str(bad),
        )
        assert code == 1
        (identity,) = checks(out, "class-identity")
        assert identity["status"] == "FAIL"
        (valid,) = checks(out, "package-valid")
        assert valid["status"] == "FAIL"

    def test_tampered_certificate_is_an_input_error(
        self, tmp_path, capsys,
    ):
        emitted, _ = self.emit(
            tmp_path, capsys, "kv", "hyperelliptic", "3", "3",
        )
        doc = json.loads(emitted.read_text(encoding="utf-8"))
        doc["package"]["certificate"]["genus"] = 5
        bad = tmp_path / "tampered.json"
        bad.write_text(json.dumps(doc), encoding="utf-8")
        code, _, err = run(capsys, "verify", "--in", str(bad))
        assert code == 2

    def test_asserted_package_round_trips(self, tmp_path, capsys):
        emitted = tmp_path / "tp.json"
        code, _, _ = run(
            capsys, "construct", "--kind", "kv",
            "--family", "tangoplane", "--p", "5",
            "--allow-asserted", "--emit", str(emitted),
        )
        assert code == 0
        code, out, _ = run(
            capsys, "verify", "--format", "machine", "--in", str(emitted),
        )
        assert code == 0
        (valid,) = checks(out, "package-valid")
        assert valid["status"] == "PASS"


class TestSweep:
    def test_frozen_box(self, tmp_path, capsys):
        code, out, _ = run(
            capsys, "sweep", "--format", "machine",
            "--in", write_doc(tmp_path, "d.json", SWEEP_DOC),
        )
        assert code == 0
        (summary,) = checks(out, "summary")
        assert summary["entries"] == "186"
        assert summary["certified"] == "90"
        assert summary["skipped"] == "96"
        assert summary["disagreements"] == "0"
        assert summary["min_chi"] == "3"
        statuses = [f["status"] for f in checks(out, "entry")]
        assert statuses.count("PASS") == 90
        assert statuses.count("SKIP") == 96
        assert "FAIL" not in statuses

    def test_certified_iff_b_above_five(self, tmp_path, capsys):
        code, out, _ = run(
            capsys, "sweep", "--format", "machine",
            "--in", write_doc(tmp_path, "d.json", SWEEP_DOC),
        )
        assert code == 0
        for entry in checks(out, "entry"):
            certified = entry["status"] == "PASS"
            assert certified == (int(entry["b"]) > 5)

    def test_empty_box(self, tmp_path, capsys):
        doc = json.loads(json.dumps(SWEEP_DOC))
        doc["box"]["a"] = [1, 0]
        code, out, _ = run(
            capsys, "sweep", "--format", "machine",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 0
        assert checks(out, "entry") == []
        (summary,) = checks(out, "summary")
        assert summary["entries"] == "0"
        assert "min_chi" not in summary

    def test_jobs_do_not_change_the_report(self, tmp_path, capsys):
        path = write_doc(tmp_path, "d.json", SWEEP_DOC)
        _, serial, _ = run(
            capsys, "sweep", "--format", "machine", "--in", path,
        )
        code, parallel, _ = run(
            capsys, "sweep", "--format", "machine", "--in", path,
            "--jobs", "2",
        )
        assert code == 0
        assert parallel == serial

    def test_nonnegative_e_rejected(self, tmp_path, capsys):
        doc = json.loads(json.dumps(SWEEP_DOC))
        doc["model"]["e"] = 0
        code, _, err = run(
            capsys, "sweep",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 2

    def test_coefficient_must_be_fractional(self, tmp_path, capsys):
        doc = json.loads(json.dumps(SWEEP_DOC))
        doc["boundary_coefficient"] = "1"
        code, _, err = run(
            capsys, "sweep",
            "--in", write_doc(tmp_path, "d.json", doc),
        )
        assert code == 2


class TestRendering:
    def test_machine_header_and_footer(self, tmp_path, capsys):
        code, out, _ = run(
            capsys, "klt", "--format", "machine",
            "--in", write_doc(tmp_path, "d.json", TRIPLE_DOC),
        )
        lines = out.splitlines()
        assert lines[0] == "report command=klt format=svlab/1"
        assert lines[-1] == "exit code=0"
        assert code == 0

    def test_text_format(self, tmp_path, capsys):
        code, out, _ = run(
            capsys, "klt",
            "--in", write_doc(tmp_path, "d.json", TRIPLE_DOC),
        )
        lines = out.splitlines()
        assert lines[0] == "svlab klt"
        assert "klt-verdict: PASS" in lines
        assert "    verdict: klt" in lines
        assert lines[-1] == "exit 0"

    def test_out_flag_writes_the_file(self, tmp_path, capsys):
        target = tmp_path / "report.txt"
        code, out, _ = run(
            capsys, "klt", "--format", "machine",
            "--in", write_doc(tmp_path, "d.json", TRIPLE_DOC),
            "--out", str(target),
        )
        assert code == 0
        assert out == ""
        content = target.read_text(encoding="utf-8")
        assert content.splitlines()[0] == "report command=klt format=svlab/1"

    def test_quoting_of_spaced_values(self, capsys):
        code, out, _ = run(
            capsys, "construct", "--format", "machine",
            "--kind", "kv", "--family", "hyperelliptic",
            "--p", "3", "--h", "3",
        )
        assert code == 0
        (identity,) = checks(out, "class-identity")
        assert identity["witness"] == "D - K - B = (1/2)E + F, H = (1/2)E + F"
        for line in out.splitlines():
            head, fields = parse_line(line)
            rebuilt = " ".join(
                f"{k}={v}" if " " not in str(v) else k
                for k, v in fields.items()
            )
            assert head in ("report", "check", "exit")

    def test_determinism(self, tmp_path, capsys):
        path = write_doc(tmp_path, "d.json", KV_SCENARIO)
        _, first, _ = run(capsys, "classify", "--format", "machine",
                          "--in", path)
        _, second, _ = run(capsys, "classify", "--format", "machine",
                           "--in", path)
        assert first == second


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "svlab", "tango",
             "--family", "tangoplane", "--p", "3"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "n: 1" in proc.stdout
        assert "provenance: asserted" in proc.stdout

    def test_module_invocation_error(self):
        proc = subprocess.run(
            [sys.executable, "-m", "svlab", "tango",
             "--family", "hyperelliptic", "--p", "2", "--h", "3"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 2
        assert proc.stdout == ""
        assert proc.stderr.startswith("error:")
