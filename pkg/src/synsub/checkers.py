"""Decide SST and IC (three variants) up to a horizon, with minimal witnesses.

Bounded SST at horizon ``H``: for all members ``u, v`` with ``h(u) = h(v)``
and every member context ``alpha u beta`` such that both ``alpha u beta``
and ``alpha v beta`` have length ``<= H``, the result ``alpha v beta`` is a
member with the context's meaning.  Substitutions whose result would exceed
``H`` are not judged.

The least SST witness minimises ``(|context| + |result|, context, result,
|u|, u, v, |alpha|)`` with strings compared canonically.  IC witnesses are
the canonically least failing string.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from . import kernels
from .errors import LanguageError
from .model import Language, MeaningId

ILL_FORMED = "ill-formed"
MEANING_CHANGED = "meaning-changed"

EXISTS = "exists"
ALL_POSITIONS = "all-positions"
RIGHT_EXTENSION = "right-extension"
IC_VARIANTS = (EXISTS, ALL_POSITIONS, RIGHT_EXTENSION)

_KERNEL_VARIANT = {
    EXISTS: kernels.IC_EXISTS,
    ALL_POSITIONS: kernels.IC_ALL_POSITIONS,
    RIGHT_EXTENSION: kernels.IC_RIGHT_EXTENSION,
}


@dataclass(frozen=True)
class SstViolation:
    u: str
    v: str
    alpha: str
    beta: str
    context: str
    result: str
    kind: str
    context_meaning: MeaningId
    result_meaning: Optional[MeaningId] = None


@dataclass(frozen=True)
class IcViolation:
    """``position`` is the failing split point (prefix length) for the
    all-positions and right-extension variants; ``None`` for exists."""

    w: str
    variant: str
    position: Optional[int] = None


Witness = Union[SstViolation, IcViolation]


@dataclass(frozen=True)
class CheckReport:
    property: str
    holds: bool
    horizon: int
    witness: Optional[Witness] = None
    examined: int = 0
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a report holds exactly when it carries no witness")


def _horizon(lang: Language, horizon: Optional[int]) -> int:
    if horizon is None:
        return lang.horizon
    lang.check_bound(horizon)
    return horizon


def check_sst(lang: Language, horizon: Optional[int] = None) -> CheckReport:
    """Bounded SST at ``horizon`` (default: the language horizon)."""
    H = _horizon(lang, horizon)
    cache_key = ("sst", H, kernels.BACKEND)
    cached = lang._cache.get(cache_key)
    if cached is not None:
        return cached
    A = lang.alphabet
    examined, best = kernels.sst_scan(lang.codes(H), len(A), H)
    witness = None
    if best is not None:
        c_idx, r_idx, u_idx, v_idx, la = best
        context, result = A.unrank(c_idx), A.unrank(r_idx)
        u, v = A.unrank(u_idx), A.unrank(v_idx)
        alpha, beta = context[:la], context[la + len(u):]
        cm = lang.interpret(context)
        if lang.is_wellformed(result):
            witness = SstViolation(u, v, alpha, beta, context, result, MEANING_CHANGED, cm, lang.interpret(result))
        else:
            witness = SstViolation(u, v, alpha, beta, context, result, ILL_FORMED, cm)
    report = CheckReport("sst", witness is None, H, witness, examined)
    lang._cache[cache_key] = report
    return report


def check_ic(lang: Language, horizon: Optional[int] = None, variant: str = EXISTS) -> CheckReport:
    """Inductive constructibility up to ``horizon``.

    ``exists``: every member of length >= 2 is a concatenation of two
    members.  ``all-positions``: it splits into two members at every
    position.  ``right-extension``: it is a member followed by a one-symbol
    member.
    """
    if variant not in _KERNEL_VARIANT:
        raise ValueError(f"unknown IC variant {variant!r}; expected one of {IC_VARIANTS}")
    H = _horizon(lang, horizon)
    cache_key = ("ic", variant, H, kernels.BACKEND)
    cached = lang._cache.get(cache_key)
    if cached is not None:
        return cached
    examined, w_idx, pos = kernels.ic_scan(lang.codes(H), len(lang.alphabet), H, _KERNEL_VARIANT[variant])
    witness = None
    if w_idx >= 0:
        witness = IcViolation(lang.alphabet.unrank(w_idx), variant, None if variant == EXISTS else pos)
    report = CheckReport(f"ic-{variant}", witness is None, H, witness, examined)
    lang._cache[cache_key] = report
    return report


def _splits_ok(lang: Language, w: str, j: int) -> bool:
    return lang.is_wellformed(w[:j]) and lang.is_wellformed(w[j:])


def validate_witness(lang: Language, witness: Witness) -> bool:
    """Re-verify every fact a witness claims directly against the backend."""
    try:
        if isinstance(witness, SstViolation):
            return _validate_sst(lang, witness)
        if isinstance(witness, IcViolation):
            return _validate_ic(lang, witness)
    except (LanguageError, IndexError, TypeError):
        return False
    return False


def _validate_sst(lang: Language, x: SstViolation) -> bool:
    if x.u == x.v or not x.u or not x.v:
        return False
    if x.context != x.alpha + x.u + x.beta or x.result != x.alpha + x.v + x.beta:
        return False
    if not (lang.is_wellformed(x.u) and lang.is_wellformed(x.v)):
        return False
    if lang.interpret(x.u) != lang.interpret(x.v):
        return False
    if not lang.is_wellformed(x.context) or lang.interpret(x.context) != x.context_meaning:
        return False
    if x.kind == ILL_FORMED:
        return not lang.is_wellformed(x.result) and x.result_meaning is None
    if x.kind == MEANING_CHANGED:
        if not lang.is_wellformed(x.result):
            return False
        rm = lang.interpret(x.result)
        return rm == x.result_meaning and rm != x.context_meaning
    return False


def _validate_ic(lang: Language, x: IcViolation) -> bool:
    w = x.w
    if len(w) < 2 or not lang.is_wellformed(w):
        return False
    if x.variant == EXISTS:
        return x.position is None and not any(_splits_ok(lang, w, j) for j in range(1, len(w)))
    if x.variant == ALL_POSITIONS:
        return x.position is not None and 1 <= x.position < len(w) and not _splits_ok(lang, w, x.position)
    if x.variant == RIGHT_EXTENSION:
        return x.position == len(w) - 1 and not _splits_ok(lang, w, len(w) - 1)
    return False
