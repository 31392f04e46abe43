"""Brute-force reference checkers.

These loop over synonym pairs and factorizations literally, using only
``is_wellformed``/``interpret`` on the backend.  They share no code with the
kernel path and exist to cross-check it; they are slow.
"""
from __future__ import annotations

from .checkers import (
    ALL_POSITIONS,
    EXISTS,
    ILL_FORMED,
    MEANING_CHANGED,
    RIGHT_EXTENSION,
    CheckReport,
    IcViolation,
    SstViolation,
)


def naive_sst(lang, horizon=None):
    H = lang.horizon if horizon is None else horizon
    A = lang.alphabet
    members = [w for w in A.strings(H) if lang.is_wellformed(w)]
    meaning = {w: lang.interpret(w) for w in members}
    violations = []
    examined = 0
    for c in members:
        for i in range(len(c)):
            for j in range(i + 1, len(c) + 1):
                u = c[i:j]
                if u not in meaning:
                    continue
                alpha, beta = c[:i], c[j:]
                for v in members:
                    if v == u or meaning[v] != meaning[u]:
                        continue
                    r = alpha + v + beta
                    if len(r) > H:
                        continue
                    examined += 1
                    if r not in meaning:
                        violations.append(SstViolation(u, v, alpha, beta, c, r, ILL_FORMED, meaning[c]))
                    elif meaning[r] != meaning[c]:
                        violations.append(
                            SstViolation(u, v, alpha, beta, c, r, MEANING_CHANGED, meaning[c], meaning[r])
                        )
    if not violations:
        return CheckReport("sst", True, H, None, examined)
    k = A.key
    best = min(
        violations,
        key=lambda x: (len(x.context) + len(x.result), k(x.context), k(x.result), k(x.u), k(x.v), len(x.alpha)),
    )
    return CheckReport("sst", False, H, best, examined)


def naive_ic(lang, horizon=None, variant=EXISTS):
    H = lang.horizon if horizon is None else horizon
    examined = 0
    for w in lang.alphabet.strings(H, min_len=2):
        if not lang.is_wellformed(w):
            continue
        examined += 1
        ok = [lang.is_wellformed(w[:j]) and lang.is_wellformed(w[j:]) for j in range(1, len(w))]
        bad = None
        if variant == EXISTS and not any(ok):
            bad = IcViolation(w, EXISTS)
        elif variant == ALL_POSITIONS and not all(ok):
            bad = IcViolation(w, ALL_POSITIONS, ok.index(False) + 1)
        elif variant == RIGHT_EXTENSION and not ok[-1]:
            bad = IcViolation(w, RIGHT_EXTENSION, len(w) - 1)
        if bad is not None:
            return CheckReport(f"ic-{variant}", False, H, bad, examined)
    return CheckReport(f"ic-{variant}", True, H, None, examined)
