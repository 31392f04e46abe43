"""Language files, JSON reports and CSV curves.

Language file (JSON)::

    {"version": "1", "alphabet": ["a", "b"], "kind": "explicit", "horizon": 3,
     "strings": [{"s": "ab", "m": "m1"}, ...]}

    {"version": "1", "alphabet": ["a", "b"], "kind": "transform", "horizon": 4,
     "transform": {"states": 2, "actions": {"a": [0, 0], "b": [1, 0]}}}

Meanings are stored as string labels.  Oracle languages are code-only and
cannot be saved.
"""
from __future__ import annotations

import csv
import hashlib
import io as _io
import json
import re
from typing import Optional

import jsonschema

from .checkers import CheckReport, IcViolation, SstViolation
from .congruence import ClosureOutcome, SynonymyClasses
from .errors import DuplicateStringConflict, LanguageError, ParseError, ReportIOError
from .expressivity import ExpressivityCurve, SaturationCertificate, SaturationRefusal
from .model import ExplicitLanguage, Language, TransformLanguage, meaning_label, mk_explicit, mk_transform_semantics

FORMAT_VERSION = "1"
REPORT_FORMAT = "synsub-report"


# --- languages -------------------------------------------------------------

def language_to_dict(lang: Language) -> dict:
    head = {"version": FORMAT_VERSION, "alphabet": list(lang.alphabet.symbols)}
    if isinstance(lang, ExplicitLanguage):
        return {
            **head,
            "kind": "explicit",
            "horizon": lang.horizon,
            "strings": [{"s": w, "m": meaning_label(m)} for w, m in lang.entries.items()],
        }
    if isinstance(lang, TransformLanguage):
        return {
            **head,
            "kind": "transform",
            "horizon": lang.horizon,
            "transform": {
                "states": lang.states,
                "actions": {s: list(lang.actions[s]) for s in lang.alphabet},
            },
        }
    raise TypeError(f"{type(lang).__name__} cannot be serialized")


def _line_of(text: Optional[str], s: str, occurrence: int = 0) -> Optional[int]:
    if text is None:
        return None
    pattern = re.compile(r'"s"\s*:\s*' + re.escape(json.dumps(s)))
    for i, m in enumerate(pattern.finditer(text)):
        if i == occurrence:
            return text.count("\n", 0, m.start()) + 1
    return None


def language_from_dict(doc, path=None, text=None) -> Language:
    def fail(msg, line=None):
        raise ParseError(msg, path, line)

    if not isinstance(doc, dict):
        fail("language file must hold a JSON object")
    if doc.get("version") != FORMAT_VERSION:
        fail(f"unsupported version {doc.get('version')!r}")
    kind = doc.get("kind")
    if kind not in ("explicit", "transform"):
        fail(f"unknown kind {kind!r} (expected 'explicit' or 'transform')")
    alphabet = doc.get("alphabet")
    if not isinstance(alphabet, list) or not all(isinstance(a, str) for a in alphabet):
        fail("'alphabet' must be a list of single-character strings")
    horizon = doc.get("horizon")
    if not isinstance(horizon, int) or isinstance(horizon, bool) or horizon < 1:
        fail("'horizon' must be a positive integer")
    try:
        if kind == "explicit":
            rows = doc.get("strings")
            if not isinstance(rows, list):
                fail("'strings' must be a list")
            entries = []
            seen = {}
            for i, row in enumerate(rows):
                if not isinstance(row, dict) or not isinstance(row.get("s"), str) or not isinstance(row.get("m"), str):
                    fail(f"strings[{i}] must be an object with string fields 's' and 'm'")
                s, m = row["s"], row["m"]
                if s in seen:
                    line = _line_of(text, s, 1)
                    if seen[s] != m:
                        raise DuplicateStringConflict(
                            _where(path, line) + f"{s!r} listed with meanings {seen[s]!r} and {m!r}"
                        )
                    fail(f"duplicate string {s!r}", line)
                seen[s] = m
                entries.append((s, m))
            try:
                return mk_explicit(alphabet, entries, horizon)
            except LanguageError as exc:
                bad = next((s for s, _ in entries if str(exc).find(repr(s)) >= 0), None)
                line = _line_of(text, bad) if bad is not None else None
                raise type(exc)(_where(path, line) + str(exc)) from None
        spec = doc.get("transform")
        if not isinstance(spec, dict) or not isinstance(spec.get("actions"), dict):
            fail("'transform' must be an object with 'states' and 'actions'")
        return mk_transform_semantics(alphabet, spec.get("states"), spec["actions"], horizon)
    except ValueError as exc:
        fail(str(exc))


def _where(path, line) -> str:
    if path is None:
        return ""
    return f"{path}:{line}: " if line is not None else f"{path}: "


def load_language(path) -> Language:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read: {exc.strerror}", path) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path, exc.lineno) from None
    return language_from_dict(doc, path, text)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _write(text: str, path) -> None:
    if not path:
        raise ReportIOError("no output path given")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ReportIOError(f"{path}: {exc.strerror}") from None


def save_language(lang: Language, path) -> None:
    _write(dumps(language_to_dict(lang)), path)


def language_digest(lang: Language) -> str:
    canonical = json.dumps(language_to_dict(lang), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canonical.encode()).hexdigest()


# --- result objects --------------------------------------------------------

def witness_to_dict(w) -> Optional[dict]:
    if w is None:
        return None
    if isinstance(w, SstViolation):
        return {
            "type": "sst",
            "u": w.u,
            "v": w.v,
            "alpha": w.alpha,
            "beta": w.beta,
            "context": w.context,
            "result": w.result,
            "kind": w.kind,
            "context_meaning": meaning_label(w.context_meaning),
            "result_meaning": None if w.result_meaning is None else meaning_label(w.result_meaning),
        }
    if isinstance(w, IcViolation):
        return {"type": "ic", "w": w.w, "variant": w.variant, "position": w.position}
    raise TypeError(f"not a witness: {w!r}")


def check_to_dict(rep: CheckReport) -> dict:
    return {
        "property": rep.property,
        "holds": rep.holds,
        "horizon": rep.horizon,
        "examined": rep.examined,
        "witness": witness_to_dict(rep.witness),
    }


def curve_to_dict(curve: ExpressivityCurve) -> dict:
    return {
        "horizon": curve.horizon,
        "distinct_meanings": list(curve.distinct_meanings),
        "new_meanings": list(curve.new_meanings),
        "strictly_growing": curve.strictly_growing,
        "first_plateau": curve.first_plateau,
    }


def saturation_to_dict(result) -> dict:
    if isinstance(result, SaturationCertificate):
        return {
            "certified": True,
            "plateau": result.plateau,
            "inventory": [meaning_label(m) for m in result.inventory],
            "horizon": result.horizon,
            "assumptions": result.assumptions,
        }
    if isinstance(result, SaturationRefusal):
        return {
            "certified": False,
            "reason": result.reason,
            "message": result.message,
            "plateau": result.plateau,
            "string": result.string,
            "meaning": None if result.meaning is None else meaning_label(result.meaning),
            "horizon": result.horizon,
            "assumptions": result.assumptions,
        }
    raise TypeError(f"not a saturation result: {result!r}")


def step_to_dict(step) -> dict:
    return {
        "context": step.context,
        "alpha": step.alpha,
        "u": step.u,
        "v": step.v,
        "beta": step.beta,
        "result": step.result,
        "meaning": meaning_label(step.meaning),
        "shared": meaning_label(step.shared),
    }


def closure_to_dict(outcome: ClosureOutcome) -> dict:
    doc = {
        "status": outcome.status,
        "horizon": outcome.horizon,
        "added": [{"s": w, "m": meaning_label(m)} for w, m in outcome.added],
        "conflict": None,
    }
    if outcome.conflict is not None:
        c = outcome.conflict
        doc["conflict"] = {
            "string": c.string,
            "meanings": [meaning_label(m) for m in c.meanings],
            "chains": [[step_to_dict(s) for s in chain] for chain in c.chains],
            "all_strings": list(outcome.conflict_strings),
        }
    return doc


def classes_to_dict(classes: SynonymyClasses) -> dict:
    return {
        "horizon": classes.horizon,
        "classes": [
            {"meaning": meaning_label(c.meaning), "representative": c.representative, "members": list(c.members)}
            for c in classes.classes
        ],
    }


# --- reports ---------------------------------------------------------------

def build_report(command: str, args: dict, source: Optional[str], digest: Optional[str], results: dict) -> dict:
    return {
        "format": REPORT_FORMAT,
        "version": FORMAT_VERSION,
        "command": {"name": command, "args": args},
        "input": {"source": source, "digest": digest},
        "results": results,
    }


def save_report(report: dict, path) -> None:
    validate_report(report)
    _write(dumps(report), path)


def curve_csv(curve: ExpressivityCurve) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "distinct_meanings", "new_meanings"])
    writer.writerows(curve.rows())
    return buf.getvalue()


def curve_to_csv(curve: ExpressivityCurve, path) -> None:
    _write(curve_csv(curve), path)


_nullable_str = {"type": ["string", "null"]}
_witness = {
    "oneOf": [
        {"type": "null"},
        {
            "type": "object",
            "required": ["type", "u", "v", "alpha", "beta", "context", "result", "kind", "context_meaning"],
            "properties": {
                "type": {"const": "sst"},
                "kind": {"enum": ["ill-formed", "meaning-changed"]},
                "result_meaning": _nullable_str,
            },
        },
        {
            "type": "object",
            "required": ["type", "w", "variant", "position"],
            "properties": {
                "type": {"const": "ic"},
                "variant": {"enum": ["exists", "all-positions", "right-extension"]},
                "position": {"type": ["integer", "null"]},
            },
        },
    ]
}
_check = {
    "type": "object",
    "required": ["property", "holds", "horizon", "examined", "witness"],
    "properties": {"holds": {"type": "boolean"}, "horizon": {"type": "integer"}, "witness": _witness},
}
_curve = {
    "type": "object",
    "required": ["horizon", "distinct_meanings", "new_meanings", "strictly_growing", "first_plateau"],
    "properties": {
        "distinct_meanings": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "new_meanings": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "strictly_growing": {"type": "boolean"},
        "first_plateau": {"type": ["integer", "null"]},
    },
}
_saturation = {
    "type": "object",
    "required": ["certified", "horizon"],
    "properties": {
        "certified": {"type": "boolean"},
        "reason": {"enum": ["no-plateau", "new-meaning"]},
        "inventory": {"type": "array", "items": {"type": "string"}},
    },
}
_language = {
    "type": "object",
    "required": ["version", "alphabet", "kind", "horizon"],
    "properties": {"kind": {"enum": ["explicit", "transform"]}},
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["format", "version", "command", "input", "results"],
    "additionalProperties": False,
    "properties": {
        "format": {"const": REPORT_FORMAT},
        "version": {"const": FORMAT_VERSION},
        "command": {
            "type": "object",
            "required": ["name", "args"],
            "properties": {"name": {"type": "string"}, "args": {"type": "object"}},
        },
        "input": {
            "type": "object",
            "required": ["source", "digest"],
            "properties": {"source": _nullable_str, "digest": _nullable_str},
        },
        "results": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "check": _check,
                "preconditions": {"type": "array", "items": _check},
                "curve": _curve,
                "plateau": {"type": ["integer", "null"]},
                "saturation": _saturation,
                "normalize": {
                    "type": "object",
                    "required": ["string", "normal_form"],
                },
                "reduce": {
                    "type": "object",
                    "required": ["string", "target_generation", "reduced"],
                },
                "classes": {"type": "object", "required": ["horizon", "classes"]},
                "closure": {
                    "type": "object",
                    "required": ["status", "horizon", "added", "conflict"],
                    "properties": {"status": {"enum": ["completed", "conflict"]}},
                },
                "suite": {"type": "object", "required": ["samples", "checks", "counts", "failures"]},
                "findings": {"type": "array", "items": {"type": "object", "required": ["language", "plateau", "string"]}},
                "language": _language,
                "output": _nullable_str,
                "error": {"type": "string"},
            },
        },
    },
}


def validate_report(report: dict) -> None:
    """Raise :class:`jsonschema.ValidationError` if ``report`` is malformed."""
    jsonschema.validate(report, REPORT_SCHEMA)
