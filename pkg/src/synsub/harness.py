"""Seeded random languages, property suites, theorem stress search, shrinking.

Everything here is a pure function of its arguments: the same spec, seed
and budget give byte-identical results.
"""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field, replace
from typing import Callable, Iterable, Optional, Union

from .checkers import (
    ALL_POSITIONS,
    EXISTS,
    IC_VARIANTS,
    RIGHT_EXTENSION,
    check_ic,
    check_sst,
    validate_witness,
)
from .congruence import closure_relation, normalize, sst_closure, synonym_classes, verify_conflict
from .errors import GenerationExhausted, PredicatePassesOnInput
from .expressivity import SaturationRefusal, certify_saturation, check_curve_laws, expressivity_curve
from .model import (
    Alphabet,
    ExplicitLanguage,
    Language,
    TransformLanguage,
    meaning_label,
    mk_explicit,
    mk_transform_semantics,
    to_explicit,
)
from .naive import naive_ic, naive_sst

SYMBOLS = "abcdefghijklmnopqrstuvwxyz"
CLOSURE_RETRIES = 50
# naive cross-checks are cubic; skip languages with more candidate strings
NAIVE_LIMIT = 400


def _positive(**values):
    for name, v in values.items():
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")


@dataclass(frozen=True)
class ExplicitRandom:
    alphabet_size: int
    horizon: int
    density: float
    meaning_count: int
    rng_seed: int = 0
    kind = "explicit"

    def __post_init__(self):
        _positive(alphabet_size=self.alphabet_size, horizon=self.horizon, meaning_count=self.meaning_count)
        if not 0 < self.density <= 1:
            raise ValueError(f"density must lie in (0, 1], got {self.density!r}")


@dataclass(frozen=True)
class TransformRandom:
    alphabet_size: int
    state_count: int
    horizon: int
    rng_seed: int = 0
    kind = "transform"

    def __post_init__(self):
        _positive(alphabet_size=self.alphabet_size, state_count=self.state_count, horizon=self.horizon)


@dataclass(frozen=True)
class ClosureSeeded:
    alphabet_size: int
    horizon: int
    seed_entry_count: int
    meaning_count: int
    rng_seed: int = 0
    kind = "closure-seeded"

    def __post_init__(self):
        _positive(
            alphabet_size=self.alphabet_size,
            horizon=self.horizon,
            seed_entry_count=self.seed_entry_count,
            meaning_count=self.meaning_count,
        )


GenSpec = Union[ExplicitRandom, TransformRandom, ClosureSeeded]
_SPEC_KINDS = {cls.kind: cls for cls in (ExplicitRandom, TransformRandom, ClosureSeeded)}


def spec_to_dict(spec: GenSpec) -> dict:
    return {"kind": spec.kind, **asdict(spec)}


def spec_from_dict(d: dict) -> GenSpec:
    d = dict(d)
    cls = _SPEC_KINDS[d.pop("kind")]
    return cls(**d)


def derive_seed(base: int, index: int) -> int:
    """Independent per-sample seed; stable across runs and platforms."""
    return random.Random(f"{base}:{index}").getrandbits(63)


def _alphabet(size: int) -> Alphabet:
    if size > len(SYMBOLS):
        raise ValueError(f"at most {len(SYMBOLS)} symbols supported")
    return Alphabet(SYMBOLS[:size])


def generate(spec: GenSpec) -> Language:
    rng = random.Random(spec.rng_seed)
    A = _alphabet(spec.alphabet_size)
    if isinstance(spec, ExplicitRandom):
        entries = []
        for w in A.strings(spec.horizon):
            if rng.random() < spec.density:
                entries.append((w, f"m{rng.randrange(spec.meaning_count)}"))
        return mk_explicit(A, entries, spec.horizon)
    if isinstance(spec, TransformRandom):
        q = spec.state_count
        actions = {s: tuple(rng.randrange(q) for _ in range(q)) for s in A}
        return mk_transform_semantics(A, q, actions, spec.horizon)
    if isinstance(spec, ClosureSeeded):
        pool = list(A.strings(spec.horizon))
        if spec.seed_entry_count > len(pool):
            raise ValueError(f"only {len(pool)} strings fit below horizon {spec.horizon}")
        for _ in range(CLOSURE_RETRIES):
            chosen = rng.sample(pool, spec.seed_entry_count)
            seed = mk_explicit(A, [(w, f"m{rng.randrange(spec.meaning_count)}") for w in chosen], spec.horizon)
            outcome = sst_closure(seed)
            if outcome.completed:
                return outcome.language
        raise GenerationExhausted(f"no conflict-free closure in {CLOSURE_RETRIES} draws for {spec}")
    raise TypeError(f"not a generation spec: {spec!r}")


# --- families --------------------------------------------------------------

def explicit_family(count, seed, max_alphabet=3, max_horizon=5, density=0.5, max_meanings=3):
    rng = random.Random(seed)
    return [
        ExplicitRandom(
            rng.randint(1, max_alphabet),
            rng.randint(1, max_horizon),
            density,
            rng.randint(1, max_meanings),
            derive_seed(seed, i),
        )
        for i in range(count)
    ]


def transform_family(count, seed, max_states=4, max_alphabet=3, horizon=8):
    rng = random.Random(seed)
    return [
        TransformRandom(rng.randint(1, max_alphabet), rng.randint(1, max_states), horizon, derive_seed(seed, i))
        for i in range(count)
    ]


def closure_family(count, seed, max_alphabet=2, max_horizon=4, max_entries=5, max_meanings=4):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        k = rng.randint(1, max_alphabet)
        H = rng.randint(2, max_horizon)
        room = _alphabet(k).count_upto(H)
        out.append(
            ClosureSeeded(k, H, rng.randint(1, min(max_entries, room)), rng.randint(1, max_meanings), derive_seed(seed, i))
        )
    return out


# --- minimisation ----------------------------------------------------------

def minimize(lang: Language, passes: Callable[[ExplicitLanguage], bool]) -> ExplicitLanguage:
    """Shrink a language on which ``passes`` is false to a 1-minimal one.

    Entries are removed in canonical order and the horizon lowered while the
    predicate keeps failing; repeats until no single removal or horizon
    decrement preserves the failure.
    """
    lang = to_explicit(lang)
    if passes(lang):
        raise PredicatePassesOnInput("predicate passes on the input language")
    A = lang.alphabet
    changed = True
    while changed:
        changed = False
        while lang.horizon > 1:
            H = lang.horizon - 1
            cand = mk_explicit(A, {w: m for w, m in lang.entries.items() if len(w) <= H}, H)
            if passes(cand):
                break
            lang, changed = cand, True
        for w in list(lang.entries):
            cand = mk_explicit(A, {x: m for x, m in lang.entries.items() if x != w}, lang.horizon)
            if not passes(cand):
                lang, changed = cand, True
    return lang


# --- theorem stress --------------------------------------------------------

@dataclass(frozen=True)
class StressFinding:
    """A language satisfying bounded SST and exists-IC whose expressive power
    keeps growing after a plateau."""

    language: dict
    plateau: int
    string: str
    meaning: str
    properties: dict
    spec: Optional[dict] = None
    minimized: Optional[dict] = None

    def to_dict(self) -> dict:
        return asdict(self)


def _finding_facts(lang: Language, ic_variant: str = EXISTS):
    """``(plateau, string, meaning)`` if ``lang`` is a stress finding, else None."""
    if not check_sst(lang).holds or not check_ic(lang, variant=ic_variant).holds:
        return None
    result = certify_saturation(lang, lang.horizon, ic_variant)
    if isinstance(result, SaturationRefusal) and result.reason == "new-meaning":
        return result.plateau, result.string, meaning_label(result.meaning)
    return None


def make_finding(lang: Language, spec: Optional[GenSpec] = None, ic_variant: str = EXISTS) -> StressFinding:
    from .io import language_to_dict

    facts = _finding_facts(lang, ic_variant)
    if facts is None:
        raise ValueError("language is not a stress finding")
    plateau, string, meaning = facts
    small = minimize(lang, lambda L: _finding_facts(L, ic_variant) is None)
    return StressFinding(
        language_to_dict(to_explicit(lang)),
        plateau,
        string,
        meaning,
        {
            "sst": "bounded",
            "ic_variant": ic_variant,
            "all_positions": check_ic(lang, variant=ALL_POSITIONS).holds,
            "horizon": lang.horizon,
        },
        spec_to_dict(spec) if spec is not None else None,
        language_to_dict(small),
    )


def replay_finding(finding: StressFinding | dict) -> bool:
    """Re-verify a finding from its serialized form alone."""
    from .io import language_from_dict

    if isinstance(finding, StressFinding):
        finding = finding.to_dict()
    variant = finding["properties"]["ic_variant"]
    lang = language_from_dict(finding["language"])
    if _finding_facts(lang, variant) != (finding["plateau"], finding["string"], finding["meaning"]):
        return False
    if finding.get("minimized") is not None:
        if _finding_facts(language_from_dict(finding["minimized"]), variant) is None:
            return False
    return True


def search_counterexample(template: GenSpec, budget: int) -> list:
    """Sample ``budget`` languages from ``template`` and keep those where the
    plateau argument breaks.

    Only languages passing bounded SST and exists-IC but failing
    all-positions-IC are examined; an empty result is a valid outcome.
    """
    if not isinstance(budget, int) or budget < 1:
        raise ValueError(f"budget must be a positive integer, got {budget!r}")
    findings = []
    for i in range(budget):
        spec = replace(template, rng_seed=derive_seed(template.rng_seed, i))
        try:
            lang = generate(spec)
        except GenerationExhausted:
            continue
        if not check_sst(lang).holds or not check_ic(lang, variant=EXISTS).holds:
            continue
        if check_ic(lang, variant=ALL_POSITIONS).holds:
            continue
        if _finding_facts(lang) is not None:
            findings.append(make_finding(lang, spec))
    return findings


# --- property suite --------------------------------------------------------

PASS, FAIL, SKIP = "pass", "fail", "skip"


def _check_oracle_equiv(lang, spec):
    if lang.alphabet.count_upto(lang.horizon) > NAIVE_LIMIT:
        return SKIP, "too large for the naive checker"
    pairs = [(check_sst(lang), naive_sst(lang))]
    pairs += [(check_ic(lang, variant=v), naive_ic(lang, variant=v)) for v in IC_VARIANTS]
    for fast, slow in pairs:
        if fast.holds != slow.holds or fast.witness != slow.witness:
            return FAIL, f"{fast.property}: kernel {fast.witness} vs naive {slow.witness}"
        if fast.witness is not None and not validate_witness(lang, fast.witness):
            return FAIL, f"{fast.property}: witness does not re-verify"
    return PASS, ""


def _check_construction(lang, spec):
    if not isinstance(lang, TransformLanguage):
        return SKIP, "not a transformation language"
    for H in range(1, lang.horizon + 1):
        for rep in (check_sst(lang, H), check_ic(lang, H, EXISTS), check_ic(lang, H, ALL_POSITIONS)):
            if not rep.holds:
                return FAIL, f"{rep.property} fails at horizon {H}: {rep.witness}"
    return PASS, ""


def _check_ic_implications(lang, spec):
    strong = check_ic(lang, variant=ALL_POSITIONS).holds
    if strong and not (check_ic(lang, variant=EXISTS).holds and check_ic(lang, variant=RIGHT_EXTENSION).holds):
        return FAIL, "all-positions holds but a weaker IC variant fails"
    return PASS, ""


def _check_saturation(lang, spec):
    if not check_sst(lang).holds or not check_ic(lang, variant=ALL_POSITIONS).holds:
        return SKIP, "preconditions (SST, all-positions IC) not met"
    if expressivity_curve(lang).first_plateau is None:
        return SKIP, "no plateau within horizon"
    result = certify_saturation(lang, lang.horizon, ALL_POSITIONS)
    if isinstance(result, SaturationRefusal):
        return FAIL, f"plateau at {result.plateau} but {result.string!r} is new"
    return PASS, ""


def _check_growth(lang, spec):
    problems = check_curve_laws(lang)
    return (FAIL, "; ".join(problems)) if problems else (PASS, "")


def _check_normalization(lang, spec, per_language=20):
    members = lang.enumerate_strings(lang.horizon)
    if not members:
        return SKIP, "no members"
    rng = random.Random(getattr(spec, "rng_seed", 0))
    sample = [rng.choice(members) for _ in range(per_language)]
    for w in sample:
        problem = normalization_problem(lang, w)
        if problem:
            return FAIL, problem
    normals = {w: normalize(lang, w) for w in sample}
    for x in sample:
        for y in sample:
            if (normals[x] == normals[y]) != (lang.interpret(x) == lang.interpret(y)):
                return FAIL, f"normal forms of {x!r}, {y!r} disagree with synonymy"
    return PASS, ""


def normalization_problem(lang: Language, w: str) -> str:
    """Empty string if the normalization laws hold at ``w``."""
    n = normalize(lang, w)
    if normalize(lang, n) != n:
        return f"normalize not idempotent at {w!r}"
    if lang.interpret(n) != lang.interpret(w):
        return f"normalize changes the meaning of {w!r}"
    if len(n) > len(w):
        return f"normalize lengthens {w!r}"
    if synonym_classes(lang).class_of(w).representative != n:
        return f"normal form of {w!r} is not its class representative"
    return ""


def _check_closure(lang, spec):
    if not isinstance(lang, ExplicitLanguage):
        return SKIP, "closure needs an explicit language"
    outcome = sst_closure(lang)
    base = closure_relation(lang)
    for s in range(3):
        if closure_relation(lang, shuffle_seed=s) != base:
            return FAIL, f"closure depends on application order (shuffle {s})"
    if lang.entries:
        last = list(lang.entries)[-1]
        smaller = mk_explicit(lang.alphabet, {w: m for w, m in lang.entries.items() if w != last}, lang.horizon)
        sub = closure_relation(smaller)
        if any(not ms <= base.get(w, frozenset()) for w, ms in sub.items()):
            return FAIL, "closure not monotone in the seed"
    if not outcome.completed:
        return (PASS, "") if verify_conflict(lang, outcome) else (FAIL, "conflict certificate does not replay")
    closed = outcome.language
    if not check_sst(closed).holds:
        return FAIL, "completed closure fails SST"
    for w, _ in outcome.added[:30]:
        pruned = mk_explicit(closed.alphabet, {x: m for x, m in closed.entries.items() if x != w}, closed.horizon)
        if check_sst(pruned).holds:
            return FAIL, f"added entry {w!r} is unnecessary"
    return PASS, ""


CHECKS = {
    "oracle-equiv": _check_oracle_equiv,
    "construction": _check_construction,
    "ic-implications": _check_ic_implications,
    "saturation": _check_saturation,
    "growth": _check_growth,
    "normalization": _check_normalization,
    "closure": _check_closure,
}


@dataclass(frozen=True)
class SuiteReport:
    samples: int
    checks: tuple
    counts: dict
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "checks": list(self.checks),
            "counts": self.counts,
            "failures": self.failures,
        }


def run_property_suite(family: Iterable[GenSpec], checks: Iterable[str] = tuple(CHECKS)) -> SuiteReport:
    """Run the selected checks over every generated language.

    Failures are data: each records the sample index, its spec (from which
    the language regenerates) and a message.  A saturation failure also
    carries a minimized finding.
    """
    checks = tuple(checks)
    for name in checks:
        if name not in CHECKS:
            raise ValueError(f"unknown check {name!r}; expected some of {sorted(CHECKS)}")
    counts = {name: {PASS: 0, FAIL: 0, SKIP: 0} for name in checks}
    failures = []
    family = list(family)
    for index, spec in enumerate(family):
        try:
            lang = generate(spec)
        except GenerationExhausted:
            for name in checks:
                counts[name][SKIP] += 1
            continue
        for name in checks:
            status, message = CHECKS[name](lang, spec)
            counts[name][status] += 1
            if status == FAIL:
                entry = {"index": index, "spec": spec_to_dict(spec), "check": name, "message": message}
                if name == "saturation":
                    entry["finding"] = make_finding(lang, spec, ALL_POSITIONS).to_dict()
                failures.append(entry)
    return SuiteReport(len(family), checks, counts, failures)
