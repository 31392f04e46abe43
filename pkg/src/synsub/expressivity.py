"""Generations, expressive-power curves, plateaus and saturation certificates.

``gen(n)`` is the set of members of length ``<= n``; its expressive power is
the number of distinct meanings it carries.  A *plateau* is the least ``n``
with ``h(gen(n)) = h(gen(n+1))`` as sets.  Under SST and a suitable form of IC
a plateau means the language expresses nothing new at any length, which is
what :func:`certify_saturation` checks up to the horizon.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .checkers import ALL_POSITIONS, EXISTS, IC_VARIANTS, check_ic, check_sst
from .errors import NotWellFormed, PreconditionNotMet
from .model import Language, MeaningId


@dataclass(frozen=True)
class Generation:
    n: int
    strings: tuple
    meanings: tuple  # distinct, in order of first appearance

    @property
    def meaning_set(self) -> frozenset:
        return frozenset(self.meanings)


@dataclass(frozen=True)
class ExpressivityCurve:
    horizon: int
    distinct_meanings: tuple
    new_meanings: tuple
    strictly_growing: bool
    first_plateau: Optional[int]

    def rows(self):
        """``(n, distinct, new)`` triples for n = 1..horizon."""
        return [(n + 1, d, m) for n, (d, m) in enumerate(zip(self.distinct_meanings, self.new_meanings))]


@dataclass(frozen=True)
class SaturationCertificate:
    plateau: int
    inventory: tuple
    horizon: int
    assumptions: dict


@dataclass(frozen=True)
class SaturationRefusal:
    """No certificate.  ``reason`` is ``"no-plateau"`` (strict growth up to
    the horizon) or ``"new-meaning"``, in which case ``string`` carries a
    meaning outside ``h(gen(plateau))``."""

    reason: str
    horizon: int
    message: str
    plateau: Optional[int] = None
    string: Optional[str] = None
    meaning: Optional[MeaningId] = None
    assumptions: Optional[dict] = None


def generation(lang: Language, n: int) -> Generation:
    strings = lang.enumerate_strings(n)
    codes = lang.codes(n)
    seen = []
    marked = set()
    for c in codes[codes >= 0].tolist():
        if c not in marked:
            marked.add(c)
            seen.append(c)
    meanings = tuple(lang.dense.meanings[c] for c in seen)
    return Generation(n, tuple(strings), meanings)


def _first_lengths(lang: Language, H: int) -> np.ndarray:
    """Shortest length at which each meaning code occurs (0 if never)."""
    d = lang.dense
    first = np.zeros(len(d.meanings), dtype=np.int64)
    A = lang.alphabet
    for L in range(H, 0, -1):
        layer = d.codes[A.count_upto(L - 1): A.count_upto(L)]
        first[np.unique(layer[layer >= 0])] = L
    return first


def expressivity_curve(lang: Language, H: Optional[int] = None) -> ExpressivityCurve:
    H = lang.horizon if H is None else H
    lang.check_bound(H)
    first = _first_lengths(lang, H)
    counts = np.bincount(first, minlength=H + 1)
    new = [int(x) for x in counts[1: H + 1]]
    distinct = [int(x) for x in np.cumsum(new)]
    plateau = next((n for n in range(1, H) if new[n] == 0), None)
    return ExpressivityCurve(H, tuple(distinct), tuple(new), all(x >= 1 for x in new), plateau)


def certify_saturation(
    lang: Language, H: Optional[int] = None, ic_variant: str = EXISTS
) -> Union[SaturationCertificate, SaturationRefusal]:
    """Certify that nothing beyond ``h(gen(n*))`` is expressible up to ``H``.

    Raises :class:`PreconditionNotMet` when bounded SST or the chosen IC
    variant fails at ``H``.  A string past the plateau that carries a new
    meaning is returned as a refusal, not raised: it is a finding about the
    plateau argument, not a usage error.
    """
    H = lang.horizon if H is None else H
    lang.check_bound(H)
    if ic_variant not in IC_VARIANTS:
        raise ValueError(f"unknown IC variant {ic_variant!r}")
    sst = check_sst(lang, H)
    if not sst.holds:
        raise PreconditionNotMet(f"bounded SST fails at horizon {H}", sst)
    ic = check_ic(lang, H, ic_variant)
    if not ic.holds:
        raise PreconditionNotMet(f"IC ({ic_variant}) fails at horizon {H}", ic)
    assumptions = {
        "sst": "bounded",
        "ic_variant": ic_variant,
        "all_positions": check_ic(lang, H, ALL_POSITIONS).holds,
    }
    curve = expressivity_curve(lang, H)
    n_star = curve.first_plateau
    if n_star is None:
        return SaturationRefusal(
            "no-plateau",
            H,
            f"no finite-expressivity certificate at horizon {H}",
            assumptions=assumptions,
        )
    inventory = generation(lang, n_star).meanings
    known = set(inventory)
    A = lang.alphabet
    codes = lang.codes(H)
    d = lang.dense
    start = A.count_upto(n_star)
    for i in np.flatnonzero(codes[start:] >= 0).tolist():
        m = d.meanings[codes[start + i]]
        if m not in known:
            w = A.unrank(start + i)
            return SaturationRefusal(
                "new-meaning",
                H,
                f"{w!r} carries a meaning outside h(gen({n_star})) despite the plateau",
                plateau=n_star,
                string=w,
                meaning=m,
                assumptions=assumptions,
            )
    return SaturationCertificate(n_star, inventory, H, assumptions)


def reduce_to_generation(lang: Language, w: str, n: int) -> str:
    """Shorten ``w`` by replacing split parts with shorter synonyms from gen(n).

    A step picks a split ``w = uv`` into two members and replaces ``u`` (or
    ``v``) by a strictly shorter synonym of length ``<= n``.  All strings
    reachable this way are explored breadth first (splits left to right,
    replacements in canonical order); the shortest, canonically least one is
    returned.  Every step shortens the string, so the search is finite.
    """
    if not lang.is_wellformed(w):
        raise NotWellFormed(f"{w!r} is not well formed")
    lang.check_bound(n)
    sst = check_sst(lang)
    if not sst.holds:
        raise PreconditionNotMet(f"bounded SST fails at horizon {lang.horizon}", sst)
    by_meaning: dict = {}
    for s in lang.enumerate_strings(n):
        by_meaning.setdefault(lang.interpret(s), []).append(s)

    key = lang.alphabet.key
    best = w
    seen = {w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        if key(x) < key(best):
            best = x
        for j in range(1, len(x)):
            left, right = x[:j], x[j:]
            if not (lang.is_wellformed(left) and lang.is_wellformed(right)):
                continue
            for part, rebuild in ((left, lambda s: s + right), (right, lambda s: left + s)):
                for syn in by_meaning.get(lang.interpret(part), ()):
                    if len(syn) >= len(part):
                        break
                    y = rebuild(syn)
                    if y not in seen and lang.is_wellformed(y):
                        seen.add(y)
                        queue.append(y)
    return best


def growth_bound(alphabet_size: int, n: int) -> int:
    """Number of nonempty strings of length <= n: sum of k**i for i = 1..n."""
    return sum(alphabet_size ** i for i in range(1, n + 1))


def check_curve_laws(lang: Language, H: Optional[int] = None) -> list:
    """Return descriptions of every curve law violated (empty when all hold).

    Laws: meaning sets nest; counts obey the cumulative counting bound; if
    every generation adds a meaning then ``distinct(H) >= H``.
    """
    curve = expressivity_curve(lang, H)
    problems = []
    k = len(lang.alphabet)
    prev = frozenset()
    for n in range(1, curve.horizon + 1):
        cur = generation(lang, n).meaning_set
        if not prev <= cur:
            problems.append(f"h(gen({n - 1})) not contained in h(gen({n}))")
        if len(cur) != curve.distinct_meanings[n - 1]:
            problems.append(f"distinct_meanings({n}) disagrees with generation({n})")
        if curve.distinct_meanings[n - 1] > growth_bound(k, n):
            problems.append(f"distinct_meanings({n}) exceeds the counting bound")
        prev = cur
    if curve.strictly_growing and curve.distinct_meanings[-1] < curve.horizon:
        problems.append("strict growth yet fewer than H meanings")
    return problems

