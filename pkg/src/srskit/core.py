"""Alphabets, symbol strings, rewrite rules, and system classification.

A string-rewriting system (SRS) is a finite ordered list of rules l -> r
over a finite alphabet; rewriting replaces an occurrence of l inside a
string by r. Symbols are whitespace-separated tokens, so generated names
like `a1` or `cent2` need no escaping; ids are dense 0..n-1 in alphabet
order and strings are stored as `bytes` of ids (alphabets are capped at
255 symbols).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from . import _kernel
from .errors import ParseError

MAX_ALPHABET = 255
EPS_TOKEN = "eps"

# Maximum rewrite steps spent per critical-pair join when termination is
# not certified (see check_convergent).
_CP_JOIN_BUDGET = 4000


@dataclass(frozen=True)
class Symbol:
    id: int
    name: str


class SymbolString:
    """An immutable finite sequence of symbol ids; the empty one is λ."""

    __slots__ = ("ids",)

    def __init__(self, ids: bytes | bytearray | Iterable[int] = b""):
        if not isinstance(ids, bytes):
            ids = bytes(ids)
        object.__setattr__(self, "ids", ids)

    def __setattr__(self, name, value):
        raise AttributeError("SymbolString is immutable")

    def __len__(self) -> int:
        return len(self.ids)

    def __iter__(self) -> Iterator[int]:
        return iter(self.ids)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return SymbolString(self.ids[item])
        return self.ids[item]

    def __add__(self, other: "SymbolString") -> "SymbolString":
        return SymbolString(self.ids + other.ids)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolString) and self.ids == other.ids

    def __hash__(self) -> int:
        return hash(self.ids)

    def __bool__(self) -> bool:
        return bool(self.ids)

    def __repr__(self) -> str:
        return f"SymbolString({list(self.ids)!r})"


EPSILON = SymbolString()


class Alphabet:
    """Symbols with dense ids; names are unique non-empty tokens."""

    __slots__ = ("symbols", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(names) > MAX_ALPHABET:
            raise ValueError(f"alphabet too large ({len(names)} > {MAX_ALPHABET})")
        index: dict[str, int] = {}
        symbols = []
        for i, name in enumerate(names):
            if not name or any(c.isspace() for c in name) or "#" in name or name == "->":
                raise ValueError(f"bad symbol name {name!r}")
            if name == EPS_TOKEN:
                raise ValueError(f"{EPS_TOKEN!r} is reserved for the empty string")
            if name in index:
                raise ValueError(f"duplicate symbol {name!r}")
            index[name] = i
            symbols.append(Symbol(i, name))
        object.__setattr__(self, "symbols", tuple(symbols))
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("Alphabet is immutable")

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.names() == other.names()

    def __hash__(self) -> int:
        return hash(self.names())

    def __repr__(self) -> str:
        return f"Alphabet({list(self.names())!r})"

    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.symbols)

    def id_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown symbol {name!r}") from None

    def name_of(self, sym_id: int) -> str:
        return self.symbols[sym_id].name

    def parse(self, text: str) -> SymbolString:
        """Whitespace-separated tokens; the single token `eps` is λ."""
        tokens = text.split()
        if tokens == [EPS_TOKEN]:
            return EPSILON
        return SymbolString(bytes(self.id_of(t) for t in tokens))

    def render(self, s: SymbolString) -> str:
        if not s:
            return EPS_TOKEN
        return " ".join(self.name_of(i) for i in s)


@dataclass(frozen=True)
class Rule:
    lhs: SymbolString
    rhs: SymbolString
    index: int = field(default=0, compare=False)
    tag: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.lhs) == 0:
            raise ValueError("rule lhs must be non-empty")
        if self.lhs == self.rhs:
            raise ValueError("rule lhs must differ from rhs")


class Srs:
    """A string-rewriting system: an alphabet plus an ordered rule list."""

    __slots__ = ("alphabet", "rules", "lhss", "rhss")

    def __init__(self, alphabet: Alphabet, rules: Iterable[Rule | tuple]):
        normalized = []
        for i, r in enumerate(rules):
            if not isinstance(r, Rule):
                lhs, rhs = r
                r = Rule(lhs, rhs, index=i)
            elif r.index != i:
                r = Rule(r.lhs, r.rhs, index=i, tag=r.tag)
            for sym in r.lhs.ids + r.rhs.ids:
                if sym >= len(alphabet):
                    raise ValueError(f"rule {i} uses symbol id {sym} outside the alphabet")
            normalized.append(r)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "rules", tuple(normalized))
        object.__setattr__(self, "lhss", tuple(r.lhs.ids for r in normalized))
        object.__setattr__(self, "rhss", tuple(r.rhs.ids for r in normalized))

    def __setattr__(self, name, value):
        raise AttributeError("Srs is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Srs)
            and self.alphabet == other.alphabet
            and self.lhss == other.lhss
            and self.rhss == other.rhss
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.lhss, self.rhss))

    def __repr__(self) -> str:
        rules = ", ".join(
            f"{self.render(r.lhs)} -> {self.render(r.rhs)}" for r in self.rules
        )
        return f"Srs({list(self.alphabet.names())!r}, [{rules}])"

    def string(self, text: str) -> SymbolString:
        return self.alphabet.parse(text)

    def render(self, s: SymbolString) -> str:
        return self.alphabet.render(s)

    def max_lhs_len(self) -> int:
        return max((len(l) for l in self.lhss), default=0)

    def to_text(self) -> str:
        """File-format text; parse_srs(to_text()) reproduces the system."""
        lines = ["alphabet: " + " ".join(self.alphabet.names())]
        for r in self.rules:
            lines.append(f"{self.render(r.lhs)} -> {self.render(r.rhs)}")
        return "\n".join(lines) + "\n"


def _split_rule_line(line: str, lineno: int, chars: bool) -> tuple[list[str], list[str]]:
    if chars:
        if "->" not in line:
            raise ParseError("expected '->'", lineno)
        left, _, right = line.partition("->")
        lhs = [c for c in left if not c.isspace()]
        right = right.strip()
        rhs = [EPS_TOKEN] if right == EPS_TOKEN else [c for c in right if not c.isspace()]
        return lhs, rhs
    tokens = line.split()
    arrows = [i for i, t in enumerate(tokens) if t == "->"]
    if len(arrows) != 1:
        raise ParseError("expected exactly one '->'", lineno)
    return tokens[: arrows[0]], tokens[arrows[0] + 1:]


def parse_srs(text: str, *, chars: bool = False) -> Srs:
    """Parse the SRS file format.

    Format: an optional leading `alphabet: <tok> ...` line, then rule
    lines `<tok>+ -> (<tok>+ | eps)`. `#` starts a comment, blank lines
    are ignored. Without an alphabet line, symbols are interned in first
    appearance order; with one, undeclared symbols are errors. With
    chars=True every non-space character of a rule side is one symbol.
    """
    declared: list[str] | None = None
    raw_rules: list[tuple[int, list[str], list[str]]] = []
    seen_rule = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            if declared is not None:
                raise ParseError("duplicate alphabet line", lineno)
            if seen_rule:
                raise ParseError("alphabet line must precede all rules", lineno)
            declared = line[len("alphabet:"):].split()
            continue
        seen_rule = True
        lhs, rhs = _split_rule_line(line, lineno, chars)
        if not lhs:
            raise ParseError("empty lhs", lineno)
        if EPS_TOKEN in lhs:
            raise ParseError(f"{EPS_TOKEN!r} not allowed in lhs", lineno)
        if not rhs:
            raise ParseError(f"empty rhs; write {EPS_TOKEN!r} for the empty string", lineno)
        if rhs == [EPS_TOKEN]:
            rhs = []
        elif EPS_TOKEN in rhs:
            raise ParseError(f"{EPS_TOKEN!r} must be the whole rhs", lineno)
        if lhs == rhs:
            raise ParseError("rule lhs equals rhs", lineno)
        raw_rules.append((lineno, lhs, rhs))

    if declared is not None:
        try:
            alphabet = Alphabet(declared)
        except ValueError as e:
            raise ParseError(str(e)) from None
        known = set(alphabet.names())
        for lineno, lhs, rhs in raw_rules:
            for tok in lhs + rhs:
                if tok not in known:
                    raise ParseError(f"undeclared symbol {tok!r}", lineno)
    else:
        order: dict[str, None] = {}
        for _, lhs, rhs in raw_rules:
            for tok in lhs + rhs:
                order.setdefault(tok)
        alphabet = Alphabet(order.keys())

    def to_string(tokens: list[str]) -> SymbolString:
        return SymbolString(bytes(alphabet.id_of(t) for t in tokens))

    rules = [Rule(to_string(lhs), to_string(rhs), index=i)
             for i, (_, lhs, rhs) in enumerate(raw_rules)]
    return Srs(alphabet, rules)


@dataclass(frozen=True)
class RuleClassification:
    monadic: bool
    dwindling: bool
    length_reducing: bool


@dataclass(frozen=True)
class ClassReport:
    monadic: bool
    dwindling: bool
    length_reducing: bool
    inter_reduced: bool
    orthogonal: bool
    terminating_by_length: bool
    per_rule: tuple[RuleClassification, ...]


def _classify_rule(lhs: bytes, rhs: bytes) -> RuleClassification:
    return RuleClassification(
        monadic=len(rhs) <= 1,
        dwindling=len(rhs) < len(lhs) and lhs.startswith(rhs),
        length_reducing=len(lhs) > len(rhs),
    )


@lru_cache(maxsize=None)
def classify(srs: Srs) -> ClassReport:
    """Structural flags; every system-level flag is the conjunction of the
    per-rule findings recorded alongside it."""
    per_rule = tuple(_classify_rule(l, r) for l, r in zip(srs.lhss, srs.rhss))
    length_reducing = all(c.length_reducing for c in per_rule)
    inter_reduced = not any(
        srs.lhss[j] in srs.lhss[i]
        for i in range(len(srs.lhss))
        for j in range(len(srs.lhss))
        if i != j
    )
    return ClassReport(
        monadic=all(c.monadic for c in per_rule),
        dwindling=all(c.dwindling for c in per_rule),
        length_reducing=length_reducing,
        inter_reduced=inter_reduced,
        orthogonal=not critical_pairs(srs),
        terminating_by_length=length_reducing,
        per_rule=per_rule,
    )


@dataclass(frozen=True)
class CriticalPair:
    """Two one-step reducts of `peak` from overlapping lhs occurrences.

    Applying rule `left_rule` at `left_pos` in `peak` gives `left_result`;
    `right_rule` at `right_pos` gives `right_result`. Kind is "overlap"
    (proper suffix of one lhs equals a proper prefix of the other) or
    "containment" (one lhs inside the other).
    """

    peak: SymbolString
    left_result: SymbolString
    right_result: SymbolString
    kind: str
    left_rule: int
    right_rule: int
    left_pos: int
    right_pos: int


def _apply_at(srs: Srs, w: bytes, pos: int, rule: int) -> bytes:
    l, r = srs.lhss[rule], srs.rhss[rule]
    assert w[pos: pos + len(l)] == l
    return w[:pos] + r + w[pos + len(l):]


@lru_cache(maxsize=None)
def critical_pairs(srs: Srs) -> tuple[CriticalPair, ...]:
    """All overlap and containment peaks, including rule self-overlaps.

    Empty iff the system is orthogonal.
    """
    pairs: list[CriticalPair] = []
    n = len(srs.lhss)
    for i in range(n):
        li = srs.lhss[i]
        for j in range(n):
            lj = srs.lhss[j]
            # Proper suffix of li equals proper prefix of lj.
            for k in range(1, min(len(li), len(lj))):
                if li[len(li) - k:] == lj[:k]:
                    peak = li + lj[k:]
                    pairs.append(CriticalPair(
                        peak=SymbolString(peak),
                        left_result=SymbolString(_apply_at(srs, peak, 0, i)),
                        right_result=SymbolString(_apply_at(srs, peak, len(li) - k, j)),
                        kind="overlap",
                        left_rule=i, right_rule=j,
                        left_pos=0, right_pos=len(li) - k,
                    ))
            # lj occurs inside li (identical lhss only counted once).
            if i == j or (li == lj and i > j):
                continue
            start = 0
            while True:
                p = li.find(lj, start)
                if p == -1:
                    break
                pairs.append(CriticalPair(
                    peak=SymbolString(li),
                    left_result=SymbolString(_apply_at(srs, li, 0, i)),
                    right_result=SymbolString(_apply_at(srs, li, p, j)),
                    kind="containment",
                    left_rule=i, right_rule=j,
                    left_pos=0, right_pos=p,
                ))
                start = p + 1
    return tuple(pairs)


@dataclass(frozen=True)
class ConvergenceReport:
    """Tri-state: None means unknown, never a claim of failure.

    Termination is certified only through the length-reducing sufficient
    condition, so non-length-reducing systems get terminating=None.
    """

    terminating: bool | None
    locally_confluent: bool | None
    convergent: bool | None
    unjoinable_pair: CriticalPair | None


@lru_cache(maxsize=None)
def check_convergent(srs: Srs) -> ConvergenceReport:
    report = classify(srs)
    terminating = True if report.length_reducing else None
    budget = -1 if report.length_reducing else _CP_JOIN_BUDGET
    locally_confluent: bool | None = True
    witness = None
    for cp in critical_pairs(srs):
        nf_l = _kernel.normalize_bytes(srs.lhss, srs.rhss, cp.left_result.ids, budget)
        nf_r = _kernel.normalize_bytes(srs.lhss, srs.rhss, cp.right_result.ids, budget)
        if nf_l is None or nf_r is None:
            locally_confluent = None
            continue
        if nf_l != nf_r:
            # Two distinct normal forms of the same peak: not confluent,
            # independent of the termination status.
            locally_confluent = False
            witness = cp
            break
    if locally_confluent is False:
        convergent: bool | None = False
    elif locally_confluent is None or terminating is None:
        convergent = None
    else:
        convergent = True
    return ConvergenceReport(terminating, locally_confluent, convergent, witness)
