import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synsub.checkers import ALL_POSITIONS, EXISTS, check_ic, check_sst
from synsub.errors import NotWellFormed, PreconditionNotMet
from synsub.expressivity import (
    SaturationCertificate,
    SaturationRefusal,
    certify_saturation,
    check_curve_laws,
    expressivity_curve,
    generation,
    growth_bound,
    reduce_to_generation,
)
from synsub.harness import TransformRandom, generate
from synsub.model import mk_explicit

from test_model import explicit_langs


def test_mod3_curve_and_certificate(mod3):
    curve = expressivity_curve(mod3, 6)
    assert curve.distinct_meanings == (2, 3, 3, 3, 3, 3)
    assert curve.new_meanings == (2, 1, 0, 0, 0, 0)
    assert curve.first_plateau == 2
    assert not curve.strictly_growing
    cert = certify_saturation(mod3, 6)
    assert isinstance(cert, SaturationCertificate)
    assert cert.plateau == 2 and cert.inventory == (1, 0, 2)
    assert cert.assumptions["all_positions"]


def test_unary_refuses(unary):
    curve = expressivity_curve(unary, 8)
    assert curve.distinct_meanings == tuple(range(1, 9))
    assert curve.strictly_growing and curve.first_plateau is None
    res = certify_saturation(unary, 8)
    assert isinstance(res, SaturationRefusal) and res.reason == "no-plateau"
    assert res.message == "no finite-expressivity certificate at horizon 8"


def test_tr1_and_t1(tr1, t1):
    assert expressivity_curve(tr1).distinct_meanings == (2, 4, 4, 4)
    assert expressivity_curve(tr1).first_plateau == 2
    assert certify_saturation(t1).plateau == 1


def test_generation_lists_meanings_in_order(mod3):
    g = generation(mod3, 2)
    assert g.strings == ("a", "b", "aa", "ab", "ba", "bb")
    assert g.meanings == (1, 0, 2)


def test_certify_requires_preconditions(e1):
    with pytest.raises(PreconditionNotMet) as info:
        certify_saturation(e1)
    assert info.value.report.property == "sst"
    with pytest.raises(ValueError):
        certify_saturation(mk_explicit("a", {"a": 0}, 1), ic_variant="sometimes")


def test_exists_ic_plateau_without_saturation():
    # SST and exists-IC hold, gen(2) and gen(3) agree, yet "abab" is new
    lang = mk_explicit("ab", {"a": "x", "b": "y", "ab": "z", "abab": "w"}, 4)
    assert check_sst(lang).holds and check_ic(lang, variant=EXISTS).holds
    res = certify_saturation(lang)
    assert isinstance(res, SaturationRefusal) and res.reason == "new-meaning"
    assert (res.plateau, res.string, res.meaning) == (2, "abab", "w")
    assert not res.assumptions["all_positions"]
    with pytest.raises(PreconditionNotMet):
        certify_saturation(lang, ic_variant=ALL_POSITIONS)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3), st.integers(1, 4), st.integers(0, 2**32))
def test_plateau_implies_saturation_for_transforms(k, q, seed):
    lang = generate(TransformRandom(k, q, 7, seed))
    res = certify_saturation(lang)
    curve = expressivity_curve(lang)
    if curve.first_plateau is None:
        assert res.reason == "no-plateau"
    else:
        assert isinstance(res, SaturationCertificate)
        assert set(res.inventory) == set(generation(lang, 7).meanings)


@settings(max_examples=150, deadline=None)
@given(explicit_langs(max_k=3, max_h=4))
def test_curve_laws(lang):
    assert check_curve_laws(lang) == []
    curve = expressivity_curve(lang)
    assert list(curve.distinct_meanings) == sorted(curve.distinct_meanings)
    for n in range(1, lang.horizon + 1):
        assert curve.distinct_meanings[n - 1] == len(generation(lang, n).meaning_set)


@settings(max_examples=150, deadline=None)
@given(explicit_langs(max_k=2, max_h=4))
def test_all_positions_plateau_gives_certificate(lang):
    if not (check_sst(lang).holds and check_ic(lang, variant=ALL_POSITIONS).holds):
        return
    res = certify_saturation(lang, ic_variant=ALL_POSITIONS)
    if expressivity_curve(lang).first_plateau is not None:
        assert isinstance(res, SaturationCertificate)


def test_growth_bound():
    assert [growth_bound(2, n) for n in range(1, 5)] == [2, 6, 14, 30]
    assert growth_bound(1, 8) == 8


def test_reduce_examples(mod3, unary, tr1):
    assert reduce_to_generation(mod3, "baab", 2) == "aa"
    assert reduce_to_generation(unary, "aaa", 2) == "aaa"
    assert reduce_to_generation(tr1, "bab", 2) == "ab"
    with pytest.raises(NotWellFormed):
        reduce_to_generation(mk_explicit("a", {"a": 0}, 2), "aa", 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2), st.integers(1, 3), st.integers(0, 2**32), st.data())
def test_reduce_preserves_meaning(k, q, seed, data):
    lang = generate(TransformRandom(k, q, 6, seed))
    w = data.draw(st.sampled_from(lang.enumerate_strings(6)))
    n = data.draw(st.integers(1, 6))
    r = reduce_to_generation(lang, w, n)
    assert lang.interpret(r) == lang.interpret(w)
    assert len(r) <= len(w)
