"""Interpreted languages ``(X, S, h, M)`` presented up to a length horizon.

Three backends share one interface:

* :class:`ExplicitLanguage` -- a finite table ``string -> meaning``;
* :class:`OracleLanguage` -- a membership predicate plus an interpretation
  callback, both evaluated lazily;
* :class:`TransformLanguage` -- every nonempty string is well formed and
  means the state transformation it induces, read left to right.

Strings are plain ``str`` values whose characters are alphabet symbols.  The
empty string is never a member.  Meanings are opaque hashables compared only
for equality; whenever an order is needed they are listed by first
appearance in canonical string order.
"""
from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DuplicateStringConflict,
    LengthExceedsHorizon,
    NotWellFormed,
    OracleInconsistent,
    SymbolOutsideAlphabet,
)

MeaningId = Hashable

# dense tables index every string up to the horizon; refuse absurd sizes
MAX_DENSE = 20_000_000


class Alphabet:
    """Ordered finite set of single-character symbols.

    The declared order fixes the canonical (length-then-lexicographic)
    enumeration used everywhere downstream.
    """

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        if not symbols:
            raise ValueError("alphabet must be nonempty")
        for s in symbols:
            if not isinstance(s, str) or len(s) != 1:
                raise ValueError(f"alphabet symbols must be single characters, got {s!r}")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols!r}")
        self.symbols = symbols
        self._index = {s: i for i, s in enumerate(symbols)}

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, sym) -> bool:
        return sym in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"Alphabet({''.join(self.symbols)!r})"

    def index(self, sym: str) -> int:
        try:
            return self._index[sym]
        except KeyError:
            raise SymbolOutsideAlphabet(f"symbol {sym!r} not in {self!r}") from None

    def check(self, w: str) -> None:
        for ch in w:
            if ch not in self._index:
                raise SymbolOutsideAlphabet(f"symbol {ch!r} of {w!r} not in {self!r}")

    def key(self, w: str) -> tuple:
        """Sort key realising the canonical order."""
        return (len(w), tuple(self._index[ch] for ch in w))

    def sorted(self, words: Iterable[str]) -> list[str]:
        return sorted(words, key=self.key)

    def count_upto(self, n: int) -> int:
        """Number of nonempty strings of length at most ``n``."""
        k = len(self.symbols)
        return n if k == 1 else (k ** (n + 1) - k) // (k - 1)

    def rank(self, w: str) -> int:
        """Position of ``w`` (nonempty) in the canonical enumeration, from 0."""
        k = len(self.symbols)
        val = 0
        for ch in w:
            val = val * k + self.index(ch)
        return self.count_upto(len(w) - 1) + val

    def unrank(self, idx: int) -> str:
        n = 1
        while self.count_upto(n) <= idx:
            n += 1
        val = idx - self.count_upto(n - 1)
        k = len(self.symbols)
        out = []
        for _ in range(n):
            val, d = divmod(val, k)
            out.append(self.symbols[d])
        return "".join(reversed(out))

    def strings(self, n: int, min_len: int = 1) -> Iterator[str]:
        """All strings with ``min_len <= len <= n`` in canonical order."""
        for length in range(min_len, n + 1):
            for tup in itertools.product(self.symbols, repeat=length):
                yield "".join(tup)


def meaning_label(m: MeaningId) -> str:
    """Stable textual label for a meaning, used in reports and files."""
    if isinstance(m, str):
        return m
    if isinstance(m, tuple):
        return "<" + ",".join(str(x) for x in m) + ">"
    return str(m)


@dataclass(frozen=True)
class DenseTable:
    """All strings up to the horizon, indexed canonically.

    ``codes[i]`` is the meaning code of the ``i``-th canonical string or
    ``-1`` when it is not well formed.  Codes number meanings by first
    appearance, so ``meanings[c]`` recovers the meaning for code ``c``.
    """

    codes: np.ndarray
    meanings: tuple
    members: tuple  # well-formed strings, canonical order
    member_lengths: tuple


class Language:
    """Common interface of the three backends."""

    kind = "abstract"

    def __init__(self, alphabet: Alphabet, horizon: int):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        if not isinstance(horizon, int) or horizon < 1:
            raise ValueError(f"horizon must be a positive integer, got {horizon!r}")
        self.alphabet = alphabet
        self.horizon = horizon
        self._cache: dict = {}

    # backend hooks
    def _member(self, w: str) -> bool:
        raise NotImplementedError

    def _interp(self, w: str) -> MeaningId:
        raise NotImplementedError

    def _build_dense(self) -> tuple[np.ndarray, list]:
        n = self.alphabet.count_upto(self.horizon)
        _guard_dense(n)
        codes = np.full(n, -1, dtype=np.int64)
        meanings: list = []
        seen: dict = {}
        for i, w in enumerate(self.alphabet.strings(self.horizon)):
            if self._member(w):
                m = self._interp_checked(w)
                c = seen.get(m)
                if c is None:
                    c = seen[m] = len(meanings)
                    meanings.append(m)
                codes[i] = c
        return codes, meanings

    def _interp_checked(self, w: str) -> MeaningId:
        return self._interp(w)

    def _check(self, w: str) -> None:
        if len(w) > self.horizon:
            raise LengthExceedsHorizon(f"|{w}| = {len(w)} exceeds horizon {self.horizon}")
        self.alphabet.check(w)

    def check_bound(self, n: int) -> None:
        if n > self.horizon:
            raise LengthExceedsHorizon(f"length bound {n} exceeds horizon {self.horizon}")
        if n < 1:
            raise ValueError(f"length bound must be at least 1, got {n}")

    # public interface
    def is_wellformed(self, w: str) -> bool:
        self._check(w)
        return len(w) > 0 and self._member(w)

    def interpret(self, w: str) -> MeaningId:
        if not self.is_wellformed(w):
            raise NotWellFormed(f"{w!r} is not well formed")
        return self._interp_checked(w)

    def enumerate_strings(self, n: int) -> list[str]:
        self.check_bound(n)
        d = self.dense
        end = bisect.bisect_right(d.member_lengths, n)
        return list(d.members[:end])

    @cached_property
    def dense(self) -> DenseTable:
        codes, meanings = self._build_dense()
        codes.setflags(write=False)
        members = []
        lengths = []
        # unrank only the members; avoids materialising every string
        for i in np.flatnonzero(codes >= 0).tolist():
            w = self.alphabet.unrank(i)
            members.append(w)
            lengths.append(len(w))
        return DenseTable(codes, tuple(meanings), tuple(members), tuple(lengths))

    def codes(self, n: int) -> np.ndarray:
        """Meaning codes of every string of length <= n (canonical order)."""
        self.check_bound(n)
        return self.dense.codes[: self.alphabet.count_upto(n)]

    def table(self, n: int | None = None) -> dict[str, MeaningId]:
        """``{w: h(w)}`` for members of length <= n, canonically ordered."""
        n = self.horizon if n is None else n
        d = self.dense
        out = {}
        for w in self.enumerate_strings(n):
            out[w] = d.meanings[d.codes[self.alphabet.rank(w)]]
        return out

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {''.join(self.alphabet)!r} horizon={self.horizon}>"


def _guard_dense(n: int) -> None:
    if n > MAX_DENSE:
        raise ValueError(f"{n} strings below the horizon; too many to tabulate")


class ExplicitLanguage(Language):
    kind = "explicit"

    def __init__(self, alphabet: Alphabet, entries: dict[str, MeaningId], horizon: int):
        super().__init__(alphabet, horizon)
        self.entries = entries

    def _member(self, w):
        return w in self.entries

    def _interp(self, w):
        return self.entries[w]

    def _build_dense(self):
        n = self.alphabet.count_upto(self.horizon)
        _guard_dense(n)
        codes = np.full(n, -1, dtype=np.int64)
        meanings: list = []
        seen: dict = {}
        for w in self.alphabet.sorted(self.entries):
            m = self.entries[w]
            c = seen.get(m)
            if c is None:
                c = seen[m] = len(meanings)
                meanings.append(m)
            codes[self.alphabet.rank(w)] = c
        return codes, meanings

    def __eq__(self, other):
        return (
            isinstance(other, ExplicitLanguage)
            and self.alphabet == other.alphabet
            and self.horizon == other.horizon
            and self.entries == other.entries
        )

    __hash__ = None


class OracleLanguage(Language):
    kind = "oracle"

    def __init__(self, alphabet, member, interp, horizon, name=None):
        super().__init__(alphabet, horizon)
        self.member = member
        self.interp = interp
        self.name = name

    def _member(self, w):
        return bool(self.member(w))

    def _interp(self, w):
        try:
            m = self.interp(w)
        except (KeyError, LookupError):
            m = None
        return m

    def _interp_checked(self, w):
        m = self._interp(w)
        if m is None:
            raise OracleInconsistent(f"interpretation undefined on member string {w!r}")
        return m


class TransformLanguage(Language):
    """Meanings are functions on ``{0..states-1}`` stored as tuples.

    ``h(w)[q]`` is the state reached from ``q`` after applying the symbols of
    ``w`` from left to right, so ``h(uv) = h(v) . h(u)``.
    """

    kind = "transform"

    def __init__(self, alphabet, states: int, actions: dict[str, tuple[int, ...]], horizon):
        super().__init__(alphabet, horizon)
        self.states = states
        self.actions = actions

    def _member(self, w):
        return True

    def _interp(self, w):
        f = tuple(range(self.states))
        for ch in w:
            act = self.actions[ch]
            f = tuple(act[q] for q in f)
        return f

    def _build_dense(self):
        k = len(self.alphabet)
        n = self.alphabet.count_upto(self.horizon)
        _guard_dense(n)
        acts = np.array([self.actions[s] for s in self.alphabet], dtype=np.int64)
        layers = []
        prev = acts  # length-1 layer, one row per string
        layers.append(prev)
        for _ in range(2, self.horizon + 1):
            # string p+s maps q -> acts[s][prev_p[q]]
            nxt = acts[:, prev]  # (k, n_prev, states)
            prev = nxt.transpose(1, 0, 2).reshape(-1, self.states)
            layers.append(prev)
        funcs = np.concatenate(layers, axis=0)
        _, first, inverse = np.unique(funcs, axis=0, return_index=True, return_inverse=True)
        inverse = np.asarray(inverse).reshape(-1)
        order = np.argsort(first, kind="stable")
        remap = np.empty_like(order)
        remap[order] = np.arange(len(order))
        codes = remap[inverse].astype(np.int64)
        meanings = [tuple(int(x) for x in funcs[first[j]]) for j in order]
        assert len(codes) == n and k >= 1
        return codes, meanings


def mk_explicit(
    alphabet: Alphabet | Iterable[str],
    entries: Iterable[tuple[str, MeaningId]] | dict,
    horizon: int,
) -> ExplicitLanguage:
    """Build a language from a finite table of ``(string, meaning)`` entries.

    Listing the same string twice is allowed only with the same meaning.
    """
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(alphabet)
    if isinstance(entries, dict):
        entries = entries.items()
    if not isinstance(horizon, int) or horizon < 1:
        raise ValueError(f"horizon must be a positive integer, got {horizon!r}")
    table: dict = {}
    for w, m in entries:
        if not isinstance(w, str) or not w:
            raise ValueError(f"entry strings must be nonempty str, got {w!r}")
        alphabet.check(w)
        if len(w) > horizon:
            raise LengthExceedsHorizon(f"entry {w!r} longer than horizon {horizon}")
        if w in table and table[w] != m:
            raise DuplicateStringConflict(f"{w!r} listed with meanings {table[w]!r} and {m!r}")
        table[w] = m
    ordered = {w: table[w] for w in alphabet.sorted(table)}
    return ExplicitLanguage(alphabet, ordered, horizon)


def mk_oracle(
    alphabet: Alphabet | Iterable[str],
    member: Callable[[str], bool],
    interp: Callable[[str], MeaningId],
    horizon: int,
    name: str | None = None,
) -> OracleLanguage:
    """Wrap callbacks as a language.

    ``interp`` signals "undefined" by returning ``None`` or raising
    ``LookupError``; doing so on a member string raises
    :class:`OracleInconsistent` when that string is queried.  Callbacks must
    be pure.
    """
    return OracleLanguage(alphabet, member, interp, horizon, name=name)


def mk_transform_semantics(
    alphabet: Alphabet | Iterable[str],
    state_count: int,
    action: dict[str, Sequence[int]],
    horizon: int,
) -> TransformLanguage:
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(alphabet)
    if not isinstance(state_count, int) or state_count < 1:
        raise ValueError(f"state_count must be a positive integer, got {state_count!r}")
    acts = {}
    for s in alphabet:
        if s not in action:
            raise ValueError(f"no action given for symbol {s!r}")
        f = tuple(int(q) for q in action[s])
        if len(f) != state_count or any(not 0 <= q < state_count for q in f):
            raise ValueError(f"action of {s!r} is not a total function on {state_count} states")
        acts[s] = f
    extra = set(action) - set(alphabet.symbols)
    if extra:
        raise SymbolOutsideAlphabet(f"actions given for unknown symbols {sorted(extra)}")
    return TransformLanguage(alphabet, state_count, acts, horizon)


def to_explicit(lang: Language, n: int | None = None) -> ExplicitLanguage:
    """Tabulate any language into an explicit one with string meaning labels."""
    if isinstance(lang, ExplicitLanguage) and n is None:
        return lang
    n = lang.horizon if n is None else n
    entries = [(w, meaning_label(m)) for w, m in lang.table(n).items()]
    return mk_explicit(lang.alphabet, entries, n)


# --- named languages -------------------------------------------------------

def mod3(horizon: int = 6) -> OracleLanguage:
    """All strings over {a, b}; meaning = number of a's modulo 3."""
    return mk_oracle("ab", lambda w: len(w) > 0, lambda w: w.count("a") % 3, horizon, name="mod3")


def unary(horizon: int = 8) -> OracleLanguage:
    """All strings over {a}; meaning = length."""
    return mk_oracle("a", lambda w: len(w) > 0, len, horizon, name="unary")


def tr1(horizon: int = 4) -> TransformLanguage:
    """Two states; ``a`` resets to 0, ``b`` swaps."""
    return mk_transform_semantics("ab", 2, {"a": (0, 0), "b": (1, 0)}, horizon)


def t1() -> ExplicitLanguage:
    return mk_explicit("a", [("a", "m0"), ("aa", "m0"), ("aaa", "m0")], 3)


def e1() -> ExplicitLanguage:
    return mk_explicit("abcd", [("ab", "m1"), ("cb", "m1"), ("abd", "m2")], 3)


BUILTINS: dict[str, Callable[[], Language]] = {
    "mod3": mod3,
    "unary": unary,
    "tr1": tr1,
    "t1": t1,
    "e1": e1,
}
