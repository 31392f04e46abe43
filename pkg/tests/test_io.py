import csv
import io
import json

import jsonschema
import pytest
from hypothesis import given, settings

from synsub import io as sio
from synsub.checkers import check_ic, check_sst
from synsub.congruence import sst_closure, synonym_classes
from synsub.errors import DuplicateStringConflict, LengthExceedsHorizon, ParseError, ReportIOError
from synsub.expressivity import certify_saturation, expressivity_curve
from synsub.harness import TransformRandom, generate
from synsub.model import mk_explicit

from test_model import explicit_langs


def _write(tmp_path, doc, name="lang.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else sio.dumps(doc))
    return p


@settings(max_examples=100, deadline=None)
@given(explicit_langs())
def test_explicit_roundtrip(lang):
    doc = sio.language_to_dict(lang)
    back = sio.language_from_dict(json.loads(sio.dumps(doc)))
    assert back.table() == {w: str(m) for w, m in lang.table().items()}
    assert sio.language_to_dict(back) == doc


def test_transform_roundtrip(tmp_path, tr1):
    path = tmp_path / "tr1.json"
    sio.save_language(tr1, path)
    back = sio.load_language(path)
    assert back.table() == tr1.table()
    assert sio.language_digest(back) == sio.language_digest(tr1)


def test_oracle_languages_cannot_be_saved(mod3, tmp_path):
    with pytest.raises(TypeError):
        sio.save_language(mod3, tmp_path / "x.json")


def test_duplicate_with_two_meanings_names_the_line(tmp_path):
    text = (
        '{"version": "1", "alphabet": ["a", "b"], "kind": "explicit", "horizon": 2,\n'
        ' "strings": [\n'
        '  {"s": "ab", "m": "m1"},\n'
        '  {"s": "ab", "m": "m2"}\n'
        ']}\n'
    )
    path = _write(tmp_path, text)
    with pytest.raises(DuplicateStringConflict) as info:
        sio.load_language(path)
    assert f"{path}:4:" in str(info.value)


@pytest.mark.parametrize("doc, fragment", [
    ({"version": "1", "alphabet": ["a"], "kind": "grammar", "horizon": 2}, "unknown kind"),
    ({"version": "9", "alphabet": ["a"], "kind": "explicit", "horizon": 2, "strings": []}, "version"),
    ({"version": "1", "alphabet": ["a"], "kind": "explicit", "horizon": 0, "strings": []}, "horizon"),
    ({"version": "1", "alphabet": ["a"], "kind": "explicit", "horizon": 2, "strings": [{"s": "a"}]}, "strings[0]"),
    ({"version": "1", "alphabet": ["a"], "kind": "transform", "horizon": 2}, "transform"),
    ({"version": "1", "alphabet": ["a"], "kind": "transform", "horizon": 2,
      "transform": {"states": 2, "actions": {"a": [0, 5]}}}, "state"),
    ([1, 2], "object"),
])
def test_malformed_files(tmp_path, doc, fragment):
    path = _write(tmp_path, doc)
    with pytest.raises(ParseError) as info:
        sio.load_language(path)
    assert fragment in str(info.value)
    assert str(path) in str(info.value)


def test_invalid_json_and_missing_file(tmp_path):
    with pytest.raises(ParseError) as info:
        sio.load_language(_write(tmp_path, '{"version": "1",\n oops}'))
    assert ":2:" in str(info.value)
    with pytest.raises(ParseError):
        sio.load_language(tmp_path / "missing.json")


def test_over_long_entry_is_reported_with_location(tmp_path):
    doc = {"version": "1", "alphabet": ["a"], "kind": "explicit", "horizon": 1,
           "strings": [{"s": "a", "m": "x"}, {"s": "aa", "m": "y"}]}
    path = _write(tmp_path, doc)
    with pytest.raises(LengthExceedsHorizon) as info:
        sio.load_language(path)
    assert str(path) in str(info.value)


def test_write_errors(tmp_path):
    with pytest.raises(ReportIOError):
        sio._write("x", "")
    with pytest.raises(ReportIOError):
        sio._write("x", tmp_path / "no" / "such" / "dir.json")
    assert isinstance(ReportIOError("x"), OSError)


def test_curve_csv(mod3, tmp_path):
    curve = expressivity_curve(mod3, 6)
    rows = list(csv.reader(io.StringIO(sio.curve_csv(curve))))
    assert rows[0] == ["n", "distinct_meanings", "new_meanings"]
    assert rows[1:] == [[str(n), str(d), str(m)] for n, d, m in curve.rows()]
    assert len(rows) == 7
    path = tmp_path / "c.csv"
    sio.curve_to_csv(curve, path)
    assert path.read_text() == sio.curve_csv(curve)


def test_reports_validate(e1, mod3, unary):
    results = {
        "check": sio.check_to_dict(check_sst(e1)),
        "preconditions": [sio.check_to_dict(check_ic(e1))],
        "curve": sio.curve_to_dict(expressivity_curve(mod3)),
        "saturation": sio.saturation_to_dict(certify_saturation(unary)),
        "classes": sio.classes_to_dict(synonym_classes(mod3, 2)),
    }
    report = sio.build_report("check", {"x": 1}, "builtin:e1", "sha256:00", results)
    sio.validate_report(report)
    bad = json.loads(json.dumps(report))
    bad["results"]["surprise"] = 1
    with pytest.raises(jsonschema.ValidationError):
        sio.validate_report(bad)


def test_closure_reports_validate():
    for entries in ({"a": "m1", "b": "m1", "ab": "m2"}, {"a": "m1", "b": "m1", "ab": "m2", "aa": "m3"}):
        out = sst_closure(mk_explicit("ab", entries, 2))
        report = sio.build_report("close", {}, None, None, {"closure": sio.closure_to_dict(out)})
        sio.validate_report(report)


def test_digest_ignores_formatting(tmp_path):
    lang = generate(TransformRandom(2, 2, 3, 1))
    a = sio.language_to_dict(lang)
    p = _write(tmp_path, json.dumps(a, indent=7))
    assert sio.language_digest(sio.load_language(p)) == sio.language_digest(lang)
