"""Acceptance criteria, one test each.

The terminal summary prints one ``[PASS]``/``[FAIL]`` line per criterion.
"""
import json
import random
import subprocess
import sys
import time

import pytest

from synsub import harness
from synsub import io as sio
from synsub.checkers import ALL_POSITIONS, EXISTS, RIGHT_EXTENSION, check_ic, check_sst, validate_witness
from synsub.congruence import closure_relation, normalize, sst_closure, verify_conflict
from synsub.expressivity import SaturationCertificate, certify_saturation, expressivity_curve
from synsub.model import mk_explicit, mod3, unary
from synsub.naive import naive_ic, naive_sst

pytestmark = pytest.mark.acceptance

POPULATION_SEED = 20240601
TRANSFORMS = harness.transform_family(500, POPULATION_SEED, max_states=4, max_alphabet=3, horizon=8)


@pytest.mark.criterion(1, "optimized checkers agree with the naive oracle on 1000 explicit languages in < 60 s")
def test_checker_oracle_equivalence():
    family = harness.explicit_family(1000, POPULATION_SEED, max_alphabet=3, max_horizon=5, density=0.5)
    start = time.perf_counter()
    mismatches = []
    for spec in family:
        lang = harness.generate(spec)
        pairs = [(check_sst(lang), naive_sst(lang))]
        pairs += [(check_ic(lang, variant=v), naive_ic(lang, variant=v)) for v in (EXISTS, ALL_POSITIONS, RIGHT_EXTENSION)]
        for fast, slow in pairs:
            same = fast.holds == slow.holds and fast.witness == slow.witness
            valid = fast.witness is None or validate_witness(lang, fast.witness)
            if not (same and valid):
                mismatches.append((spec, fast.property, fast.witness, slow.witness))
    elapsed = time.perf_counter() - start
    print(f"criterion 1: {len(family)} languages, {len(mismatches)} mismatches, {elapsed:.1f} s")
    assert mismatches == []
    assert elapsed < 60


@pytest.mark.criterion(2, "500 transformation languages pass SST, IC(exists) and IC(all positions)")
def test_correct_by_construction():
    rep = harness.run_property_suite(TRANSFORMS, ["construction"])
    print(f"criterion 2: {rep.counts['construction']}")
    assert rep.counts["construction"]["pass"] == 500
    assert rep.failures == []


@pytest.mark.criterion(3, "plateau implies saturation on the same 500 languages")
def test_plateau_implies_saturation():
    rep = harness.run_property_suite(TRANSFORMS, ["saturation"])
    print(f"criterion 3: {rep.counts['saturation']}")
    for failure in rep.failures:
        # a minimized, replayable finding travels with every failure
        print(json.dumps(failure["finding"], sort_keys=True))
        assert harness.replay_finding(failure["finding"])
    assert rep.counts["saturation"]["pass"] > 0
    assert rep.failures == []


@pytest.mark.criterion(4, "MOD3 golden values")
def test_mod3_golden():
    lang = mod3()
    assert len(lang.enumerate_strings(6)) == 126
    curve = expressivity_curve(lang, 6)
    assert list(curve.distinct_meanings) == [2, 3, 3, 3, 3, 3]
    assert curve.first_plateau == 2
    cert = certify_saturation(lang, 6)
    assert isinstance(cert, SaturationCertificate)
    assert len(cert.inventory) == 3
    assert normalize(lang, "baab") == "aa"


@pytest.mark.criterion(5, "unary counter golden values and refusal message")
def test_unary_golden():
    lang = unary()
    curve = expressivity_curve(lang, 8)
    assert list(curve.distinct_meanings) == list(range(1, 9))
    assert curve.strictly_growing and curve.first_plateau is None
    result = certify_saturation(lang, 8)
    assert result.message == "no finite-expressivity certificate at horizon 8"
    for H in range(1, 9):
        assert expressivity_curve(lang, H).distinct_meanings[-1] >= H


@pytest.mark.criterion(6, "normalization laws on 10,000 strings")
def test_normalization_laws():
    rng = random.Random(POPULATION_SEED)
    langs = [harness.generate(spec) for spec in TRANSFORMS]
    problems = []
    for i in range(10_000):
        lang = langs[i % len(langs)]
        members = lang.enumerate_strings(lang.horizon)
        w = members[rng.randrange(len(members))]
        problem = harness.normalization_problem(lang, w)
        if problem:
            problems.append(problem)
    print(f"criterion 6: 10000 samples, {len(problems)} violations")
    assert problems == []


@pytest.mark.criterion(7, "closure examples, order independence, completed closures pass SST")
def test_closure_engine():
    failures = []
    # (a) completed example, with the expected added list as stated
    seed_a = mk_explicit("ab", {"a": "m1", "b": "m1", "ab": "m2"}, 2)
    out_a = sst_closure(seed_a)
    expected_a = {("aa", "m2"), ("bb", "m2")}
    if not out_a.completed or set(out_a.added) != expected_a:
        failures.append(f"(a) expected Completed with added {sorted(expected_a)}, got {out_a.status} {list(out_a.added)}")
    # (b) conflict example
    seed_b = mk_explicit("ab", {"a": "m1", "b": "m1", "ab": "m2", "aa": "m3"}, 2)
    out_b = sst_closure(seed_b)
    if out_b.completed or out_b.conflict.string != "aa" or set(out_b.conflict.meanings) != {"m2", "m3"}:
        failures.append(f"(b) expected Conflict on 'aa' with {{m2, m3}}, got {out_b}")
    elif not verify_conflict(seed_b, out_b):
        failures.append("(b) conflict chains do not replay")
    # (c) 100 randomized application orders
    seeds = [seed_a, seed_b] + [harness.generate(s) for s in harness.explicit_family(10, POPULATION_SEED, 2, 3)]
    for seed in seeds:
        base = closure_relation(seed)
        for order in range(100):
            if closure_relation(seed, shuffle_seed=order) != base:
                failures.append(f"(c) order {order} changes the closure of {seed.entries}")
                break
    # (d) every completed closure passes check_sst
    closures = [sst_closure(s) for s in seeds]
    sparse = harness.explicit_family(200, POPULATION_SEED, max_alphabet=2, max_horizon=4, density=0.2, max_meanings=4)
    closures += [sst_closure(harness.generate(spec)) for spec in sparse]
    print(f"criterion 7: {sum(o.completed for o in closures)} of {len(closures)} closures completed")
    for out in closures:
        if out.completed and not check_sst(out.language).holds:
            failures.append(f"(d) completed closure fails SST: {out.language.entries}")
    for f in failures:
        print("criterion 7:", f)
    assert failures == []


def _pipeline(workdir, kind, seed):
    def cli(*argv):
        proc = subprocess.run([sys.executable, "-m", "synsub", *argv], cwd=workdir, capture_output=True, text=True)
        assert proc.returncode in (0, 1), proc.stderr
        return proc.returncode

    cli("--report", "gen.json", "gen-lang", "--kind", kind, "--seed", str(seed), "--out", "lang.json")
    cli("--report", "check.json", "check", "--lang", "lang.json")
    cli("--report", "curve.json", "curve", "--lang", "lang.json", "--format", "csv", "--out", "curve.csv")
    cli("--report", "certify.json", "certify", "--lang", "lang.json")
    return {name: (workdir / name).read_bytes() for name in
            ("lang.json", "gen.json", "check.json", "curve.csv", "curve.json", "certify.json")}


@pytest.mark.criterion(8, "CLI gen-lang -> check -> curve -> certify is schema-valid and byte-identical across runs")
def test_cli_round_trip(tmp_path):
    for kind in ("transform", "explicit", "closure-seeded"):
        runs = []
        for i in range(2):
            d = tmp_path / f"{kind}-{i}"
            d.mkdir()
            runs.append(_pipeline(d, kind, 42))
        assert runs[0] == runs[1]
        for name, data in runs[0].items():
            if name.endswith(".json") and name != "lang.json":
                sio.validate_report(json.loads(data))
        assert sio.load_language(tmp_path / f"{kind}-0" / "lang.json") is not None
