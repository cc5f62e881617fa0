"""Single-step and exhaustive rewriting, joinability, and the automaton
recognizing the irreducible strings.

The set of irreducible strings of a finite SRS is regular: it is the
complement of "some lhs occurs as a substring", so a determinized
dictionary-matching automaton over the lhs set with a single absorbing
dead state recognizes it exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from . import _kernel
from .core import Srs, SymbolString, check_convergent, classify
from .errors import BudgetExhaustedError, NotConvergentError, NotTerminatingError

DEFAULT_TRACE_CAP = 10_000


@dataclass(frozen=True)
class RewriteStep:
    """One rewrite: input = x·lhs·y and output = x·rhs·y with |x| = position."""

    input: SymbolString
    rule: int
    position: int
    output: SymbolString


def rewrite_step(srs: Srs, w: SymbolString) -> RewriteStep | None:
    """The leftmost single step (ties: longest lhs, then lowest rule index),
    or None when w is irreducible."""
    hit = _kernel.find_redex(srs.lhss, w.ids)
    if hit is None:
        return None
    pos, rule = hit
    out = w.ids[:pos] + srs.rhss[rule] + w.ids[pos + len(srs.lhss[rule]):]
    return RewriteStep(w, rule, pos, SymbolString(out))


def _require_budget(srs: Srs, budget: int | None) -> int:
    if budget is None:
        if not classify(srs).length_reducing:
            raise NotTerminatingError(
                "termination not certified (system is not length-reducing); "
                "pass an explicit step budget"
            )
        return -1
    if budget < 0:
        raise ValueError("budget must be >= 0")
    return budget


def normalize(srs: Srs, w: SymbolString, budget: int | None = None) -> SymbolString:
    """An irreducible string reachable from w (leftmost strategy).

    Without a budget the system must be certified terminating via the
    length-reducing check; with one, BudgetExhaustedError signals that the
    budget ran out first (possible non-termination).
    """
    out = _kernel.normalize_bytes(srs.lhss, srs.rhss, w.ids, _require_budget(srs, budget))
    if out is None:
        raise BudgetExhaustedError(f"no normal form within {budget} steps")
    return SymbolString(out)


def rewrite_trace(
    srs: Srs, w: SymbolString, budget: int | None = None, cap: int = DEFAULT_TRACE_CAP
) -> tuple[SymbolString, tuple[RewriteStep, ...]]:
    """normalize() plus the full step sequence, capped at `cap` steps."""
    limit = _require_budget(srs, budget)
    if limit < 0 or limit > cap:
        limit = cap
    steps: list[RewriteStep] = []
    current = w
    while True:
        step = rewrite_step(srs, current)
        if step is None:
            return current, tuple(steps)
        if len(steps) >= limit:
            raise BudgetExhaustedError(f"trace exceeded {limit} steps")
        steps.append(step)
        current = step.output


def joinable(srs: Srs, u: SymbolString, v: SymbolString) -> bool:
    """Whether u and v have a common reduct. Exact for convergent systems,
    where it coincides with convertibility; refuses anything else."""
    if check_convergent(srs).convergent is not True:
        raise NotConvergentError(
            "joinability via normal forms needs a certified convergent system; "
            "use the bounded search in srskit.decision instead"
        )
    return normalize(srs, u) == normalize(srs, v)


class IrrAutomaton:
    """Complete DFA accepting exactly the strings with no lhs substring.

    State 0 is the start state; `dead` (when present) is the unique
    non-accepting absorbing state.
    """

    __slots__ = ("alphabet", "transitions", "accepting", "dead")

    def __init__(self, alphabet, transitions, accepting, dead):
        self.alphabet = alphabet
        self.transitions = transitions
        self.accepting = accepting
        self.dead = dead

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def step(self, state: int, sym: int) -> int:
        return self.transitions[state][sym]

    def accepts(self, w: SymbolString) -> bool:
        state = 0
        for sym in w.ids:
            state = self.transitions[state][sym]
            if state == self.dead:
                return False
        return state in self.accepting

    def to_table(self) -> str:
        """One line per state: id, accepting flag, successor per symbol."""
        lines = [
            "# alphabet: " + " ".join(self.alphabet.names()),
            "# start: 0",
        ]
        for sid, row in enumerate(self.transitions):
            flag = "1" if sid in self.accepting else "0"
            lines.append(" ".join([str(sid), flag] + [str(t) for t in row]))
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        lines = [
            "digraph irr {",
            "  rankdir=LR;",
            '  start [shape=point, label=""];',
        ]
        for sid in range(self.n_states):
            shape = "doublecircle" if sid in self.accepting else "circle"
            lines.append(f"  s{sid} [shape={shape}, label=\"{sid}\"];")
        lines.append("  start -> s0;")
        for sid, row in enumerate(self.transitions):
            by_target: dict[int, list[str]] = {}
            for sym, target in enumerate(row):
                by_target.setdefault(target, []).append(self.alphabet.name_of(sym))
            for target, names in sorted(by_target.items()):
                label = ",".join(names)
                lines.append(f"  s{sid} -> s{target} [label=\"{label}\"];")
        lines.append("}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def irr_automaton(srs: Srs) -> IrrAutomaton:
    """Build the DFA by determinizing a dictionary automaton over the lhss."""
    k = len(srs.alphabet)
    patterns = [l for l in srs.lhss if l]
    if not patterns:
        return IrrAutomaton(srs.alphabet, ((0,) * k,), frozenset({0}), None)

    # Trie with terminal marks.
    children: list[dict[int, int]] = [{}]
    terminal = [False]
    for pat in patterns:
        node = 0
        for sym in pat:
            nxt = children[node].get(sym)
            if nxt is None:
                nxt = len(children)
                children[node][sym] = nxt
                children.append({})
                terminal.append(False)
            node = nxt
        terminal[node] = True

    # Failure links (BFS); a node is terminal if any suffix of its path is.
    fail = [0] * len(children)
    queue = deque()
    for sym, child in children[0].items():
        queue.append(child)
    while queue:
        node = queue.popleft()
        for sym, child in children[node].items():
            f = fail[node]
            while f and sym not in children[f]:
                f = fail[f]
            fail[child] = children[f].get(sym, 0) if children[f].get(sym, 0) != child else 0
            terminal[child] = terminal[child] or terminal[fail[child]]
            queue.append(child)

    # Resolved goto function, then collapse terminal nodes into one dead state.
    goto: list[list[int]] = [[0] * k for _ in children]
    order = deque([0])
    seen = {0}
    while order:
        node = order.popleft()
        for sym in range(k):
            if sym in children[node]:
                goto[node][sym] = children[node][sym]
            elif node:
                goto[node][sym] = goto[fail[node]][sym]
            else:
                goto[node][sym] = 0
        for child in children[node].values():
            if child not in seen:
                seen.add(child)
                order.append(child)

    live = [n for n in range(len(children)) if not terminal[n]]
    remap = {n: i for i, n in enumerate(live)}
    dead = len(live)
    transitions = []
    for n in live:
        row = []
        for sym in range(k):
            t = goto[n][sym]
            row.append(dead if terminal[t] else remap[t])
        transitions.append(tuple(row))
    transitions.append(tuple(dead for _ in range(k)))
    return IrrAutomaton(
        srs.alphabet, tuple(transitions), frozenset(range(len(live))), dead
    )


def is_irreducible(srs: Srs, w: SymbolString) -> bool:
    """Automaton membership; agrees with rewrite_step returning None."""
    return irr_automaton(srs).accepts(w)
