"""Synonymy classes, shortest-synonym normal forms and SST closure."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .errors import LanguageError, NotWellFormed
from .model import ExplicitLanguage, Language, MeaningId, meaning_label, mk_explicit

COMPLETED = "completed"
CONFLICT = "conflict"


@dataclass(frozen=True)
class SynonymClass:
    meaning: MeaningId
    representative: str
    members: tuple


@dataclass(frozen=True)
class SynonymyClasses:
    horizon: int
    classes: tuple

    def __post_init__(self):
        index = {}
        for i, cls in enumerate(self.classes):
            for w in cls.members:
                index[w] = i
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.classes)

    def class_of(self, w: str) -> SynonymClass:
        return self.classes[self._index[w]]


def synonym_classes(lang: Language, H: Optional[int] = None) -> SynonymyClasses:
    """Partition the members of length <= H by meaning.

    Classes come in order of their representatives, each the shortest and
    then canonically least member.
    """
    H = lang.horizon if H is None else H
    lang.check_bound(H)
    cached = lang._cache.get(("classes", H))
    if cached is not None:
        return cached
    d = lang.dense
    buckets: dict = {}
    for w in lang.enumerate_strings(H):
        buckets.setdefault(int(d.codes[lang.alphabet.rank(w)]), []).append(w)
    classes = tuple(
        SynonymClass(d.meanings[code], ws[0], tuple(ws))
        for code, ws in sorted(buckets.items(), key=lambda kv: lang.alphabet.key(kv[1][0]))
    )
    result = SynonymyClasses(H, classes)
    lang._cache[("classes", H)] = result
    return result


def normalize(lang: Language, w: str) -> str:
    """Shortest, then canonically least, synonym of ``w`` within the horizon."""
    if not lang.is_wellformed(w):
        raise NotWellFormed(f"{w!r} is not well formed")
    return synonym_classes(lang).class_of(w).representative


# --- closure ---------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    """One rule application: ``u`` and ``v`` share ``shared``; the context
    ``alpha u beta`` means ``meaning``; so ``alpha v beta`` is forced to it."""

    context: str
    u: str
    v: str
    alpha: str
    beta: str
    result: str
    meaning: MeaningId
    shared: MeaningId


@dataclass(frozen=True)
class ConflictCertificate:
    string: str
    meanings: tuple  # two distinct forced meanings
    chains: tuple  # one tuple of Steps per meaning; () means "in the seed"


@dataclass(frozen=True)
class ClosureOutcome:
    status: str
    horizon: int
    added: tuple  # (string, meaning) facts not in the seed, canonical order
    language: Optional[ExplicitLanguage] = None
    conflict: Optional[ConflictCertificate] = None
    conflict_strings: tuple = ()

    @property
    def completed(self) -> bool:
        return self.status == COMPLETED


class _Relation:
    """``string -> {meaning: (order, step or None)}`` over strings <= H.

    ``occ`` indexes every substring of every string in the relation by its
    occurrences ``(context, start)``, so rule applications that use a given
    fact as the replaced or the replacing part are found without a scan.
    """

    def __init__(self, seed: dict, H: int):
        self.H = H
        self.facts: dict = {}
        self.by_meaning: dict = {}
        self.occ: dict = {}
        self.counter = 0
        for w, m in seed.items():
            if len(w) <= H:
                self.add(w, m, None)

    def has(self, w, m):
        return m in self.facts.get(w, ())

    def add(self, w, m, step):
        if w not in self.facts:
            self.facts[w] = {}
            for i in range(len(w)):
                for j in range(i + 1, len(w) + 1):
                    self.occ.setdefault(w[i:j], []).append((w, i))
        self.facts[w][m] = (self.counter, step)
        self.counter += 1
        self.by_meaning.setdefault(m, set()).add(w)

    def firings(self, s, x):
        """Rule applications with ``(s, x)`` as one of the three premises.

        Yields ``(context, start, u, v, mu, shared)``; the forced fact is
        ``context[:start] + v + context[start+len(u):]`` with meaning ``mu``.
        """
        H, facts, by_meaning, occ = self.H, self.facts, self.by_meaning, self.occ
        # s as the context
        for i in range(len(s)):
            for j in range(i + 1, len(s) + 1):
                u = s[i:j]
                room = H - len(s) + len(u)
                for y in facts.get(u, ()):
                    for v in by_meaning[y]:
                        if v != u and len(v) <= room:
                            yield s, i, u, v, x, y
        # s as the replaced part u, sharing x
        for c, i in occ.get(s, ()):
            room = H - len(c) + len(s)
            for v in by_meaning[x]:
                if v != s and len(v) <= room:
                    for mu in facts[c]:
                        yield c, i, s, v, mu, x
        # s as the replacement v, sharing x
        for u in by_meaning[x]:
            if u == s:
                continue
            for c, i in occ.get(u, ()):
                if len(c) - len(u) + len(s) <= H:
                    for mu in facts[c]:
                        yield c, i, u, s, mu, x


def _step(c, i, u, v, mu, shared) -> Step:
    alpha, beta = c[:i], c[i + len(u):]
    return Step(c, u, v, alpha, beta, alpha + v + beta, mu, shared)


def _saturate(rel: _Relation, key, rng: Optional[random.Random] = None) -> None:
    """Apply the substitution rule until nothing new is forced.

    With no ``rng`` the work proceeds in synchronous rounds: round ``r`` fires
    every rule with a premise first derived in round ``r-1`` and all premises
    known before round ``r``.  Each fact's recorded step is the canonically
    least such firing, so derivations are as shallow as possible.  With an
    ``rng`` a worklist of facts is drained in random order and new facts
    apply at once; the fixpoint is the same either way because the rule is
    monotone.
    """
    if rng is not None:
        work = [(w, m) for w in rel.facts for m in rel.facts[w]]
        while work:
            k = rng.randrange(len(work))
            work[k], work[-1] = work[-1], work[k]
            s, x = work.pop()
            for c, i, u, v, mu, shared in list(rel.firings(s, x)):
                res = c[:i] + v + c[i + len(u):]
                if not rel.has(res, mu):
                    rel.add(res, mu, _step(c, i, u, v, mu, shared))
                    work.append((res, mu))
        return
    delta = sorted(((w, m) for w in rel.facts for m in rel.facts[w]), key=lambda f: key(f[0]))
    while delta:
        pending: dict = {}
        for s, x in delta:
            for c, i, u, v, mu, shared in rel.firings(s, x):
                res = c[:i] + v + c[i + len(u):]
                if rel.has(res, mu):
                    continue
                rank = (key(c), i, len(u), key(v), rel.facts[c][mu][0], rel.facts[u][shared][0])
                best = pending.get((res, mu))
                if best is None or rank < best[0]:
                    pending[(res, mu)] = (rank, (c, i, u, v, mu, shared))
        delta = sorted(pending, key=lambda f: (key(f[0]), pending[f][0]))
        for res, mu in delta:
            rel.add(res, mu, _step(*pending[(res, mu)][1]))


def _chain(rel: _Relation, w: str, m: MeaningId) -> tuple:
    needed = {}
    stack = [(w, m)]
    while stack:
        s, mm = stack.pop()
        order, step = rel.facts[s][mm]
        if step is None or (s, mm) in needed:
            continue
        needed[(s, mm)] = (order, step)
        stack.extend([(step.context, step.meaning), (step.u, step.shared), (step.v, step.shared)])
    return tuple(step for _, step in sorted(needed.values(), key=lambda t: t[0]))


def closure_relation(seed: ExplicitLanguage, H: Optional[int] = None, shuffle_seed=None) -> dict:
    """Final forced relation ``{string: frozenset(meanings)}``.

    ``shuffle_seed`` randomises rule-application order; the answer must not
    depend on it.
    """
    H = seed.horizon if H is None else H
    seed.check_bound(H)
    rel = _Relation(seed.entries, H)
    rng = None if shuffle_seed is None else random.Random(shuffle_seed)
    _saturate(rel, seed.alphabet.key, rng)
    return {w: frozenset(ms) for w, ms in rel.facts.items()}


def sst_closure(seed: ExplicitLanguage, H: Optional[int] = None) -> ClosureOutcome:
    """Least extension of ``seed`` closed under synonym substitution up to H.

    Rule: if ``u`` and ``v`` share a meaning and ``alpha u beta`` means ``m``
    with ``|alpha v beta| <= H``, then ``alpha v beta`` means ``m``.  Forced
    strings always inherit a context's meaning.  When some string ends up
    with two meanings the outcome is a conflict, certified by the canonically
    least such string and a replayable derivation for each of its first two
    meanings.  Seed entries longer than H are carried over untouched.
    """
    if not isinstance(seed, ExplicitLanguage):
        raise TypeError("sst_closure needs an explicit seed language")
    H = seed.horizon if H is None else H
    seed.check_bound(H)
    key = seed.alphabet.key
    rel = _Relation(seed.entries, H)
    _saturate(rel, key)

    added = []
    for w in sorted(rel.facts, key=key):
        for m, _ in sorted(rel.facts[w].items(), key=lambda kv: kv[1][0]):
            if seed.entries.get(w, _MISSING) != m:
                added.append((w, m))
    conflicts = tuple(w for w in sorted(rel.facts, key=key) if len(rel.facts[w]) > 1)
    if conflicts:
        w = conflicts[0]
        first_two = sorted(rel.facts[w].items(), key=lambda kv: kv[1][0])[:2]
        cert = ConflictCertificate(
            w,
            tuple(m for m, _ in first_two),
            tuple(_chain(rel, w, m) for m, _ in first_two),
        )
        return ClosureOutcome(CONFLICT, H, tuple(added), conflict=cert, conflict_strings=conflicts)
    table = dict(seed.entries)
    for w, m in added:
        table[w] = m
    lang = mk_explicit(seed.alphabet, table, seed.horizon)
    return ClosureOutcome(COMPLETED, H, tuple(added), language=lang)


_MISSING = object()


def replay_chain(seed: ExplicitLanguage, chain, H: Optional[int] = None) -> dict:
    """Re-apply ``chain`` to ``seed``; returns the facts it yields.

    Raises :class:`LanguageError` if a step's premises are not available at
    the moment it is applied or its strings do not fit together.
    """
    H = seed.horizon if H is None else H
    facts = {w: {m} for w, m in seed.entries.items() if len(w) <= H}
    for step in chain:
        ok = (
            step.meaning in facts.get(step.context, ())
            and step.shared in facts.get(step.u, ())
            and step.shared in facts.get(step.v, ())
            and step.context == step.alpha + step.u + step.beta
            and step.result == step.alpha + step.v + step.beta
            and len(step.result) <= H
        )
        if not ok:
            raise LanguageError(f"step deriving {step.result!r} does not apply")
        facts.setdefault(step.result, set()).add(step.meaning)
    return facts


def verify_conflict(seed: ExplicitLanguage, outcome: ClosureOutcome) -> bool:
    """Both derivation chains replay from the seed and force distinct meanings."""
    cert = outcome.conflict
    if cert is None or len(set(cert.meanings)) != 2:
        return False
    try:
        for m, chain in zip(cert.meanings, cert.chains):
            if m not in replay_chain(seed, chain, outcome.horizon).get(cert.string, ()):
                return False
    except LanguageError:
        return False
    return True


def describe_step(step: Step) -> str:
    return (
        f"{step.context} [{step.alpha}({step.u}->{step.v}){step.beta}] => "
        f"{step.result}:{meaning_label(step.meaning)}"
    )
