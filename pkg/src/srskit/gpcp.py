"""Correspondence problems with designated start and end dominoes, a
bounded brute-force solver, and the encoding of such instances into
dwindling convergent string-rewriting systems.

The encoding maps an instance over {a, b} to a system over an extended
alphabet where three letter codings of different lengths (triple, double,
single) let two marked sides consume a candidate match at different
speeds: one side checks the x-components of dominoes, the other the
y-components. A common-term witness for the two markers exists exactly
when the instance has a match, and witnesses translate mechanically into
index sequences and back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Alphabet, Rule, Srs, SymbolString
from .engine import normalize
from .errors import GpcpError, ParseError

Word = tuple[str, ...]

BINARY_TOKENS = ("a", "b")


@dataclass(frozen=True)
class GpcpInstance:
    """Start domino, intermediate dominoes, end domino; every component is
    a non-empty word over the source alphabet."""

    start: tuple[Word, Word]
    tiles: tuple[tuple[Word, Word], ...]
    end: tuple[Word, Word]

    def __post_init__(self):
        for x, y in (self.start, *self.tiles, self.end):
            if not x or not y:
                raise GpcpError("domino components must be non-empty")

    @property
    def n(self) -> int:
        return len(self.tiles)

    def alphabet(self) -> tuple[str, ...]:
        seen = set()
        for x, y in (self.start, *self.tiles, self.end):
            seen.update(x)
            seen.update(y)
        return tuple(sorted(seen))

    def domino(self, i: int) -> tuple[Word, Word]:
        """Dominoes numbered 0 (start), 1..n (tiles), n+1 (end)."""
        if i == 0:
            return self.start
        if i == self.n + 1:
            return self.end
        return self.tiles[i - 1]

    def is_binary(self) -> bool:
        return set(self.alphabet()) <= set(BINARY_TOKENS)


@dataclass(frozen=True)
class GpcpSolution:
    """Intermediate index sequence (1-based, possibly empty) and the full
    matched string."""

    indices: tuple[int, ...]
    w: Word


def instance_from_words(start: tuple[str, str], tiles: Sequence[tuple[str, str]],
                        end: tuple[str, str]) -> GpcpInstance:
    """Build an instance from plain strings, one character per symbol."""
    def split(pair):
        return tuple(pair[0]), tuple(pair[1])
    return GpcpInstance(split(start), tuple(split(t) for t in tiles), split(end))


def parse_gpcp(text: str) -> GpcpInstance:
    """Parse the instance file format: `start: <toks> | <toks>`, zero or
    more `tile: <toks> | <toks>`, `end: <toks> | <toks>`; `#` comments."""
    start = end = None
    tiles: list[tuple[Word, Word]] = []

    def components(rest: str, lineno: int) -> tuple[Word, Word]:
        if rest.count("|") != 1:
            raise ParseError("expected exactly one '|'", lineno)
        left, _, right = rest.partition("|")
        x, y = tuple(left.split()), tuple(right.split())
        if not x or not y:
            raise ParseError("empty domino component", lineno)
        return x, y

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected 'start:', 'tile:' or 'end:'", lineno)
        key = key.strip()
        if key == "start":
            if start is not None:
                raise ParseError("duplicate start line", lineno)
            start = components(rest, lineno)
        elif key == "tile":
            tiles.append(components(rest, lineno))
        elif key == "end":
            if end is not None:
                raise ParseError("duplicate end line", lineno)
            end = components(rest, lineno)
        else:
            raise ParseError(f"unknown line kind {key!r}", lineno)
    if start is None:
        raise ParseError("missing start line")
    if end is None:
        raise ParseError("missing end line")
    return GpcpInstance(start, tuple(tiles), end)


def format_gpcp(inst: GpcpInstance) -> str:
    def line(kind, pair):
        return f"{kind}: {' '.join(pair[0])} | {' '.join(pair[1])}"
    lines = [line("start", inst.start)]
    lines += [line("tile", t) for t in inst.tiles]
    lines.append(line("end", inst.end))
    return "\n".join(lines) + "\n"


def binarization_table(inst: GpcpInstance) -> dict[str, Word]:
    """k-th source symbol (sorted order) -> the code word a·b^k."""
    return {
        sym: ("a",) + ("b",) * k
        for k, sym in enumerate(inst.alphabet())
    }


def binarize(inst: GpcpInstance) -> GpcpInstance:
    """Replace symbols by the prefix code a·b^k in every component.

    The coding is an injective homomorphism, so solutions correspond
    one to one (identical index sequences). Instances already over
    {a, b} are returned unchanged.
    """
    if inst.is_binary():
        return inst
    table = binarization_table(inst)

    def code(word: Word) -> Word:
        return tuple(tok for sym in word for tok in table[sym])

    return GpcpInstance(
        (code(inst.start[0]), code(inst.start[1])),
        tuple((code(x), code(y)) for x, y in inst.tiles),
        (code(inst.end[0]), code(inst.end[1])),
    )


def solution_matches(inst: GpcpInstance, sol: GpcpSolution) -> bool:
    """Direct check: both concatenations exist, are equal, and equal sol.w."""
    if any(not 1 <= i <= inst.n for i in sol.indices):
        return False
    xs = list(inst.start[0])
    ys = list(inst.start[1])
    for i in sol.indices:
        x, y = inst.tiles[i - 1]
        xs += x
        ys += y
    xs += inst.end[0]
    ys += inst.end[1]
    return tuple(xs) == tuple(ys) == sol.w


def gpcp_brute_force(inst: GpcpInstance, k_max: int) -> GpcpSolution | None:
    """Breadth-first over intermediate index sequences of length 0..k_max
    in lexicographic order, pruning partial concatenations that are not
    prefix-compatible. Returns the first full match, or None (which says
    nothing beyond the bound: the problem is undecidable in general).
    """
    if k_max < 0:
        raise GpcpError("k_max must be >= 0")
    ex, ey = inst.end

    def closes(xs: Word, ys: Word) -> Word | None:
        full_x = xs + ex
        full_y = ys + ey
        return full_x if full_x == full_y else None

    level: list[tuple[tuple[int, ...], Word, Word]] = [((), inst.start[0], inst.start[1])]
    for _ in range(k_max + 1):
        nxt = []
        for seq, xs, ys in level:
            w = closes(xs, ys)
            if w is not None:
                return GpcpSolution(seq, w)
            for i in range(1, inst.n + 1):
                tx, ty = inst.tiles[i - 1]
                xs2, ys2 = xs + tx, ys + ty
                shorter = min(len(xs2), len(ys2))
                if xs2[:shorter] == ys2[:shorter]:
                    nxt.append((seq + (i,), xs2, ys2))
        level = nxt
    return None


@dataclass(frozen=True)
class CtEncoding:
    """The encoded system plus the bookkeeping needed to translate
    witnesses: the two marker strings, the three letter codings, the
    domino count, the binary instance, and the binarization table when
    the source instance needed one."""

    srs: Srs
    alpha: SymbolString
    beta: SymbolString
    n: int
    h1: dict[str, SymbolString]
    h2: dict[str, SymbolString]
    h3: dict[str, SymbolString]
    instance: GpcpInstance
    binarization: dict[str, Word] | None = None

    def image(self, h: dict[str, SymbolString], word: Iterable[str]) -> SymbolString:
        out = SymbolString()
        for tok in word:
            out = out + h[tok]
        return out


def encode(inst: GpcpInstance, *, binarization: dict[str, Word] | None = None) -> CtEncoding:
    """Encode a binary instance as a dwindling convergent system.

    Alphabet: a, b, c0..c{n+1}, cent1, cent2, B, a1, a2, a3, b1, b2, b3.
    Rule classes (tags): D holds the 4 marker-coding rules and the 8
    coding-propagation rules; I erases a completed start domino at each
    marker, II (two rules per tile) and III (end domino) erase matched
    domino images against their index symbols.
    """
    if not inst.is_binary():
        raise GpcpError("encode needs an instance over {a, b}; call binarize first")
    n = inst.n
    names = list(BINARY_TOKENS)
    names += [f"c{i}" for i in range(n + 2)]
    names += ["cent1", "cent2", "B"]
    names += ["a1", "a2", "a3", "b1", "b2", "b3"]
    alphabet = Alphabet(names)

    def s(*tokens: str) -> SymbolString:
        return SymbolString(bytes(alphabet.id_of(t) for t in tokens))

    h1 = {"a": s("a1", "a2", "a3"), "b": s("b1", "b2", "b3")}
    h2 = {"a": s("a1", "a2"), "b": s("b1", "b2")}
    h3 = {"a": s("a1",), "b": s("b1",)}

    def img(h: dict[str, SymbolString], word: Word) -> SymbolString:
        out = SymbolString()
        for tok in word:
            out = out + h[tok]
        return out

    cent1, cent2, big_b = s("cent1"), s("cent2"), s("B")

    def c(i: int) -> SymbolString:
        return s(f"c{i}")

    rules: list[Rule] = []

    def add(lhs: SymbolString, rhs: SymbolString, tag: str):
        rules.append(Rule(lhs, rhs, index=len(rules), tag=tag))

    for letter in BINARY_TOKENS:
        add(cent1 + h1[letter], cent1 + h3[letter], "D")
    for letter in BINARY_TOKENS:
        add(cent2 + h1[letter], cent2 + h2[letter], "D")
    for h in (h2, h3):
        for first in BINARY_TOKENS:
            for second in BINARY_TOKENS:
                add(h[first] + h1[second], h[first] + h[second], "D")

    x0, y0 = inst.start
    add(cent1 + img(h3, x0) + big_b + c(0), SymbolString(), "I")
    add(cent2 + img(h2, y0) + c(0), SymbolString(), "I")
    for i in range(1, n + 1):
        xi, yi = inst.tiles[i - 1]
        add(img(h3, xi) + big_b + c(i), SymbolString(), "II")
        add(img(h2, yi) + c(i) + big_b, SymbolString(), "II")
    xe, ye = inst.end
    add(img(h3, xe) + c(n + 1), SymbolString(), "III")
    add(img(h2, ye) + c(n + 1) + big_b, SymbolString(), "III")

    return CtEncoding(
        srs=Srs(alphabet, rules),
        alpha=cent1,
        beta=cent2,
        n=n,
        h1=h1,
        h2=h2,
        h3=h3,
        instance=inst,
        binarization=binarization,
    )


def encode_auto(inst: GpcpInstance) -> CtEncoding:
    """binarize (when needed) then encode, recording the coding table."""
    if inst.is_binary():
        return encode(inst)
    return encode(binarize(inst), binarization=binarization_table(inst))


def format_encoding(enc: CtEncoding) -> str:
    """System file text with header comments recording the two markers."""
    header = [
        f"# alpha: {enc.srs.render(enc.alpha)}",
        f"# beta: {enc.srs.render(enc.beta)}",
    ]
    if enc.binarization:
        for sym, word in enc.binarization.items():
            header.append(f"# code: {sym} -> {' '.join(word)}")
    return "\n".join(header) + "\n" + enc.srs.to_text()


@dataclass(frozen=True)
class CtWitness:
    """A witness string W together with its parsed view: the match part
    (source word whose triple-coding image is W's prefix) and the control
    tail of index and separator symbols."""

    w: SymbolString
    match: Word
    tail: SymbolString


def verify_witness(enc: CtEncoding, w: SymbolString) -> bool:
    """True iff the two marker-prefixed sides of W reach the same normal
    form. Witnesses produced from solutions reduce to the empty string on
    both sides; exotic equal non-empty normal forms are still accepted
    here, since equality of normal forms is the defining property."""
    return normalize(enc.srs, enc.alpha + w) == normalize(enc.srs, enc.beta + w)


def witness_from_solution(enc: CtEncoding, sol: GpcpSolution) -> CtWitness:
    """W = h1(w) · c_{n+1} · B · (c_j · B for j in reversed indices) · c_0.

    Rewriting consumes the match from its right end, so the control tail
    lists intermediate indices in reverse match order; the inverse
    translation undoes the reversal.
    """
    if not solution_matches(enc.instance, sol):
        raise GpcpError("solution does not verify against the encoded instance")
    alphabet = enc.srs.alphabet
    tail_ids = [alphabet.id_of(f"c{enc.n + 1}"), alphabet.id_of("B")]
    for j in reversed(sol.indices):
        tail_ids.append(alphabet.id_of(f"c{j}"))
        tail_ids.append(alphabet.id_of("B"))
    tail_ids.append(alphabet.id_of("c0"))
    tail = SymbolString(bytes(tail_ids))
    w = enc.image(enc.h1, sol.w) + tail
    if normalize(enc.srs, enc.alpha + w) or normalize(enc.srs, enc.beta + w):
        raise GpcpError("internal error: constructed witness does not erase")
    return CtWitness(w=w, match=sol.w, tail=tail)


def _split_h1_prefix(enc: CtEncoding, w: SymbolString) -> tuple[Word, SymbolString]:
    """Longest prefix that is an image of the triple coding, plus the rest."""
    blocks = {enc.h1[tok].ids: tok for tok in BINARY_TOKENS}
    ids = w.ids
    pos = 0
    match: list[str] = []
    while pos + 3 <= len(ids) and ids[pos: pos + 3] in blocks:
        match.append(blocks[ids[pos: pos + 3]])
        pos += 3
    return tuple(match), SymbolString(ids[pos:])


def is_tail_form(enc: CtEncoding, gamma: SymbolString) -> bool:
    """Whether gamma is (c_i B)* c0 with every i an intermediate index."""
    alphabet = enc.srs.alphabet
    b_id = alphabet.id_of("B")
    c0_id = alphabet.id_of("c0")
    inter = {alphabet.id_of(f"c{i}") for i in range(1, enc.n + 1)}
    ids = gamma.ids
    pos = 0
    while pos + 1 < len(ids) and ids[pos] in inter and ids[pos + 1] == b_id:
        pos += 2
    return pos == len(ids) - 1 and ids[pos] == c0_id


def solution_from_witness(enc: CtEncoding, witness: CtWitness | SymbolString) -> GpcpSolution:
    """Translate a verified witness back into an index sequence and match.

    Splits W into its maximal triple-coding prefix and the control tail,
    which must read c_{n+1} B (c_j B)* c0; the recovered intermediate
    indices are the tail's in reverse. The result is checked by direct
    string equality before being returned.
    """
    w = witness.w if isinstance(witness, CtWitness) else witness
    if not verify_witness(enc, w):
        raise GpcpError("witness does not verify: the two sides differ")
    match, tail = _split_h1_prefix(enc, w)
    alphabet = enc.srs.alphabet
    ids = tail.ids
    b_id = alphabet.id_of("B")
    end_id = alphabet.id_of(f"c{enc.n + 1}")
    if len(ids) < 3 or ids[0] != end_id or ids[1] != b_id:
        raise GpcpError("witness tail does not start with the end index and separator")
    if not is_tail_form(enc, SymbolString(ids[2:])):
        raise GpcpError("witness tail is not of the required control form")
    inter_ids = {alphabet.id_of(f"c{i}"): i for i in range(1, enc.n + 1)}
    tail_indices = [inter_ids[ids[p]] for p in range(2, len(ids) - 1, 2)]
    sol = GpcpSolution(tuple(reversed(tail_indices)), match)
    if not solution_matches(enc.instance, sol):
        raise GpcpError("decoded solution does not verify against the instance")
    return sol
