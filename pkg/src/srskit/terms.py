"""Minimal first-order term rewriting: unary/binary signatures, syntactic
matching (non-linear left-hand sides allowed), substitutions, grounding,
and the correspondence between unary-spine systems and string rewriting.

Strings over unary symbols read innermost first: the string "gh" stands
for the term h(g(x)), so converting a term tower to a string reverses the
head order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Union

from .core import Alphabet, Rule, Srs, SymbolString
from .errors import BudgetExhaustedError, ParseError

MAX_ARITY = 2
_DEFAULT_VAR_RE = re.compile(r"^[xyz][0-9]*$")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    head: str
    args: tuple["Term", ...] = ()


Term = Union[Var, App]


def term_vars(t: Term) -> tuple[str, ...]:
    """Variable names in first-occurrence order."""
    out: dict[str, None] = {}

    def walk(t: Term):
        if isinstance(t, Var):
            out.setdefault(t.name)
        else:
            for a in t.args:
                walk(a)

    walk(t)
    return tuple(out)


def is_ground(t: Term) -> bool:
    return not term_vars(t)


def render_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if t.head == "sub":
        left = render_term(t.args[0])
        right = render_term(t.args[1])
        if isinstance(t.args[1], App) and t.args[1].head == "sub":
            right = f"({right})"
        return f"{left} - {right}"
    if not t.args:
        return t.head
    return f"{t.head}({', '.join(render_term(a) for a in t.args)})"


_TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|[0-9]+|[(),-])")


def _tokenize(text: str, lineno: int | None = None) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"bad character {text[pos:].strip()[0]!r}", lineno)
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _TermParser:
    """Prefix terms with parentheses; infix `-` is sugar for binary `sub`."""

    def __init__(self, tokens: list[str], is_var: Callable[[str], bool],
                 lineno: int | None = None):
        self.tokens = tokens
        self.pos = 0
        self.is_var = is_var
        self.lineno = lineno

    def error(self, msg: str):
        raise ParseError(msg, self.lineno)

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of term")
        self.pos += 1
        return tok

    def expect(self, tok: str):
        got = self.take()
        if got != tok:
            self.error(f"expected {tok!r}, got {got!r}")

    def parse(self) -> Term:
        t = self.expr()
        if self.peek() is not None:
            self.error(f"trailing tokens from {self.peek()!r}")
        return t

    def expr(self) -> Term:
        t = self.atom()
        while self.peek() == "-":
            self.take()
            t = App("sub", (t, self.atom()))
        return t

    def atom(self) -> Term:
        tok = self.take()
        if tok == "(":
            t = self.expr()
            self.expect(")")
            return t
        if tok in {")", ",", "-"}:
            self.error(f"unexpected {tok!r}")
        if self.peek() == "(":
            self.take()
            args = [self.expr()]
            while self.peek() == ",":
                self.take()
                args.append(self.expr())
            self.expect(")")
            if self.is_var(tok):
                self.error(f"variable {tok!r} cannot take arguments")
            return App(tok, tuple(args))
        return Var(tok) if self.is_var(tok) else App(tok)


def _collect_signature(terms: Iterable[Term], lineno: int | None = None) -> dict[str, int]:
    sig: dict[str, int] = {}

    def walk(t: Term):
        if isinstance(t, Var):
            return
        arity = len(t.args)
        if arity > MAX_ARITY:
            raise ParseError(f"{t.head!r} has arity {arity}; at most {MAX_ARITY} supported", lineno)
        known = sig.setdefault(t.head, arity)
        if known != arity:
            raise ParseError(f"{t.head!r} used with arities {known} and {arity}", lineno)
        for a in t.args:
            walk(a)

    for t in terms:
        walk(t)
    return sig


class TrsLite:
    """An ordered list of term rules with a consistent signature."""

    __slots__ = ("rules", "signature", "variables")

    def __init__(self, rules: Iterable[tuple[Term, Term]],
                 variables: Iterable[str] = ()):
        rules = tuple(rules)
        for lhs, rhs in rules:
            if isinstance(lhs, Var):
                raise ParseError("rule lhs must not be a variable")
            extra = set(term_vars(rhs)) - set(term_vars(lhs))
            if extra:
                raise ParseError(f"rhs variables {sorted(extra)} missing from lhs")
        signature = _collect_signature(t for pair in rules for t in pair)
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "variables", frozenset(variables) | {
            v for lhs, rhs in rules for v in term_vars(lhs)
        })

    def __setattr__(self, name, value):
        raise AttributeError("TrsLite is immutable")

    def __eq__(self, other):
        return isinstance(other, TrsLite) and self.rules == other.rules

    def __hash__(self):
        return hash(self.rules)

    def __repr__(self):
        body = "; ".join(f"{render_term(l)} -> {render_term(r)}" for l, r in self.rules)
        return f"TrsLite({body})"

    def is_var_name(self, name: str) -> bool:
        if name in self.signature:
            return False
        return name in self.variables or bool(_DEFAULT_VAR_RE.match(name))


def parse_term(text: str, trs: TrsLite | None = None, *,
               variables: Iterable[str] = ()) -> Term:
    """Parse one term. A name is a variable when declared (via `variables`
    or the system), or by default when it matches x, y or z with an
    optional numeric suffix; names in the system signature never are."""
    declared = set(variables)

    def is_var(name: str) -> bool:
        if name in declared:
            return True
        if trs is not None:
            return trs.is_var_name(name)
        return bool(_DEFAULT_VAR_RE.match(name))

    term = _TermParser(_tokenize(text), is_var).parse()
    sig = _collect_signature([term])
    if trs is not None:
        for head, arity in sig.items():
            if head in trs.signature and trs.signature[head] != arity:
                raise ParseError(
                    f"{head!r} has arity {trs.signature[head]} in the system, used with {arity}"
                )
    return term


def parse_trs(text: str) -> TrsLite:
    """One rule per line: `lhs -> rhs` in prefix syntax; `#` comments.
    An optional `vars: <name> ...` line declares extra variable names."""
    declared: set[str] = set()
    pending: list[tuple[int, list[str], list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            declared.update(line[len("vars:"):].split())
            continue
        if "->" not in line:
            raise ParseError("expected '->'", lineno)
        left, _, right = line.partition("->")
        pending.append((lineno, _tokenize(left, lineno), _tokenize(right, lineno)))

    def is_var(name: str) -> bool:
        return name in declared or bool(_DEFAULT_VAR_RE.match(name))

    rules = []
    for lineno, ltoks, rtoks in pending:
        lhs = _TermParser(ltoks, is_var, lineno).parse()
        rhs = _TermParser(rtoks, is_var, lineno).parse()
        if isinstance(lhs, Var):
            raise ParseError("rule lhs must not be a variable", lineno)
        extra = set(term_vars(rhs)) - set(term_vars(lhs))
        if extra:
            raise ParseError(f"rhs variables {sorted(extra)} missing from lhs", lineno)
        rules.append((lhs, rhs))
        _collect_signature([lhs, rhs], lineno)
    return TrsLite(rules, variables=declared)


@dataclass(frozen=True)
class Substitution:
    """A finite variable-to-term map, in insertion order."""

    mapping: tuple[tuple[str, Term], ...]

    @classmethod
    def of(cls, mapping: dict[str, Term] | Iterable[tuple[str, Term]]) -> "Substitution":
        items = tuple(mapping.items()) if isinstance(mapping, dict) else tuple(mapping)
        names = [n for n, _ in items]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable in substitution")
        return cls(items)

    def as_dict(self) -> dict[str, Term]:
        return dict(self.mapping)

    def domain(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.mapping)

    def vran(self) -> tuple[str, ...]:
        """Variables occurring in the image terms, first occurrence order."""
        out: dict[str, None] = {}
        for _, t in self.mapping:
            for v in term_vars(t):
                out.setdefault(v)
        return tuple(out)

    @property
    def is_ground(self) -> bool:
        return not self.vran()


def apply_subst(theta: Substitution, t: Term) -> Term:
    """Simultaneous replacement; variables outside the domain are kept."""
    table = theta.as_dict()

    def walk(t: Term) -> Term:
        if isinstance(t, Var):
            return table.get(t.name, t)
        if not t.args:
            return t
        return App(t.head, tuple(walk(a) for a in t.args))

    return walk(t)


def _match(pattern: Term, subject: Term, binds: dict[str, Term]) -> bool:
    if isinstance(pattern, Var):
        bound = binds.get(pattern.name)
        if bound is None:
            binds[pattern.name] = subject
            return True
        return bound == subject  # non-linear lhs: repeated vars must agree
    if isinstance(subject, Var):
        return False
    if pattern.head != subject.head or len(pattern.args) != len(subject.args):
        return False
    return all(_match(p, s, binds) for p, s in zip(pattern.args, subject.args))


def _rewrite_root(trs: TrsLite, t: Term) -> Term | None:
    for lhs, rhs in trs.rules:
        binds: dict[str, Term] = {}
        if _match(lhs, t, binds):
            return apply_subst(Substitution.of(binds), rhs)
    return None


def normalize_term(trs: TrsLite, t: Term, budget: int = 10_000) -> Term:
    """Leftmost-innermost exhaustive rewriting with syntactic matching."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    steps = 0

    def nf(t: Term) -> Term:
        nonlocal steps
        while True:
            if isinstance(t, Var):
                return t
            if t.args:
                t = App(t.head, tuple(nf(a) for a in t.args))
            reduced = _rewrite_root(trs, t)
            if reduced is None:
                return t
            steps += 1
            if steps > budget:
                raise BudgetExhaustedError(f"no normal form within {budget} steps")
            t = reduced

    return nf(t)


def groundify(theta: Substitution, *, avoid: Iterable[str] = (),
              fresh: Iterator[str] | None = None) -> tuple[Substitution, Substitution]:
    """Ground a substitution by naming its variables with fresh constants.

    theta1 maps every variable of the domain and of the image terms to a
    distinct fresh constant (k0, k1, ... by default, skipping `avoid` and
    every name already present); theta2 applies theta first and theta1
    after. Both results are ground, and a term is fixed by theta exactly
    when theta1 and theta2 agree on it.
    """
    if not theta.mapping:
        raise ValueError("groundify needs a non-empty substitution")
    used = set(avoid)
    used.update(theta.domain())
    used.update(theta.vran())
    for _, t in theta.mapping:
        used.update(_collect_signature([t]))
    if fresh is None:
        def generate() -> Iterator[str]:
            i = 0
            while True:
                name = f"k{i}"
                if name not in used:
                    yield name
                i += 1
        fresh = generate()

    targets: dict[str, None] = {}
    for name in theta.domain():
        targets.setdefault(name)
    for name in theta.vran():
        targets.setdefault(name)
    theta1 = Substitution.of([(name, App(next(fresh))) for name in targets])
    theta2 = Substitution.of([
        (name, apply_subst(theta1, image)) for name, image in theta.mapping
    ])
    return theta1, theta2


def ct_check_terms(trs: TrsLite, theta1: Substitution, theta2: Substitution,
                   t: Term, budget: int = 10_000) -> bool:
    """Whether the two ground substitutions send t to the same normal form."""
    if not theta1.is_ground or not theta2.is_ground:
        raise ValueError("both substitutions must be ground")
    lhs = normalize_term(trs, apply_subst(theta1, t), budget)
    rhs = normalize_term(trs, apply_subst(theta2, t), budget)
    return lhs == rhs


def _spine(t: Term, lineno_hint: str) -> tuple[list[str], str]:
    """Unary tower heads (outermost first) and the spine variable."""
    heads = []
    while isinstance(t, App):
        if len(t.args) != 1:
            raise ParseError(f"{lineno_hint}: {t.head!r} is not unary")
        heads.append(t.head)
        t = t.args[0]
    return heads, t.name


def unary_trs_to_srs(trs: TrsLite) -> Srs:
    """Translate a unary-spine system to strings (innermost head leftmost).

    Every rule must be a tower f1(..fk(x)) -> g1(..gm(x)) over one shared
    variable; any constant or binary symbol is rejected.
    """
    for head, arity in trs.signature.items():
        if arity != 1:
            raise ParseError(f"{head!r} has arity {arity}; only unary symbols translate")
    order: dict[str, None] = {}
    string_rules = []
    for idx, (lhs, rhs) in enumerate(trs.rules):
        l_heads, l_var = _spine(lhs, f"rule {idx}")
        r_heads, r_var = _spine(rhs, f"rule {idx}")
        if l_var != r_var:
            raise ParseError(f"rule {idx}: lhs and rhs must share one spine variable")
        for h in reversed(l_heads):
            order.setdefault(h)
        for h in reversed(r_heads):
            order.setdefault(h)
        string_rules.append((list(reversed(l_heads)), list(reversed(r_heads))))
    alphabet = Alphabet(order.keys())
    rules = [
        Rule(
            SymbolString(bytes(alphabet.id_of(h) for h in l)),
            SymbolString(bytes(alphabet.id_of(h) for h in r)),
            index=i,
        )
        for i, (l, r) in enumerate(string_rules)
    ]
    return Srs(alphabet, rules)


def srs_to_unary_trs(srs: Srs, variable: str = "x") -> TrsLite:
    """Inverse translation: each symbol becomes a unary function."""
    def tower(s: SymbolString) -> Term:
        t: Term = Var(variable)
        for sym in s.ids:  # leftmost symbol is innermost
            t = App(srs.alphabet.name_of(sym), (t,))
        return t

    return TrsLite([(tower(r.lhs), tower(r.rhs)) for r in srs.rules])
