"""Bounded semi-decision procedures for three dual-unification problems
on string-rewriting systems.

Fixed point: given alpha, is there W with alpha·W convertible to W?
Common term: given alpha, beta, is there W with alpha·W convertible to
beta·W? Common equation: given alpha1, alpha2, beta1, beta2, are there
W1, W2 with alpha1·W1 ~ alpha2·W2 and beta1·W1 ~ beta2·W2 such that W1
and W2 are not themselves convertible (non-triviality)?

All searches are bounded and return the length-lexicographically least
witness not exceeding the bound, or an honest `exhausted` that never
claims non-existence: the common-term problem is undecidable even for
dwindling convergent systems, so no bound can be complete.

For certified convergent systems candidates are explored as states
(nf(alpha·W), nf(beta·W)) with first-visit deduplication, which preserves
minimality: if two prefixes reach the same state pair, every completion
of the later one is matched by the same completion of the earlier.
Dwindling systems additionally allow an admissible remaining-push lower
bound per state (see _DescentOracle), which keeps searches over
constructed encodings tractable. Systems that cannot be certified
convergent are searched candidate by candidate with a bounded
bidirectional convertibility check; pass `equiv_budget` to enable that.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from . import _kernel
from .core import EPSILON, Alphabet, Srs, SymbolString, check_convergent, classify
from .errors import NotConvergentError

_INF = float("inf")


@dataclass(frozen=True)
class CtQuery:
    srs: Srs
    alpha: SymbolString
    beta: SymbolString

    def __post_init__(self):
        _check_over_alphabet(self.srs, self.alpha, self.beta)


@dataclass(frozen=True)
class CeQuery:
    srs: Srs
    alpha1: SymbolString
    alpha2: SymbolString
    beta1: SymbolString
    beta2: SymbolString

    def __post_init__(self):
        _check_over_alphabet(self.srs, self.alpha1, self.alpha2, self.beta1, self.beta2)


def _check_over_alphabet(srs: Srs, *strings: SymbolString):
    k = len(srs.alphabet)
    for s in strings:
        if any(sym >= k for sym in s.ids):
            raise ValueError("string uses symbols outside the system alphabet")


@dataclass(frozen=True)
class SearchOutcome:
    """status is "found" or "exhausted"; `witness` holds one string for the
    fixed-point and common-term searches and two for the common-equation
    search. `examined` counts candidate evaluations actually performed
    (deduplicated state searches skip candidates that provably repeat an
    earlier state, so this can be far below the raw candidate count)."""

    status: str
    witness: tuple[SymbolString, ...] | None
    bound: int
    examined: int

    @property
    def found(self) -> bool:
        return self.status == "found"


def enumerate_candidates(alphabet: Alphabet, max_len: int) -> Iterator[SymbolString]:
    """All strings of length 0..max_len in length-lex order by symbol id."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    yield EPSILON
    k = len(alphabet)
    for length in range(1, max_len + 1):
        for tup in product(range(k), repeat=length):
            yield SymbolString(bytes(tup))


class _DescentOracle:
    """Admissible lower bounds on the pushes still needed, for dwindling
    systems only.

    For a dwindling system, appending a symbol to an irreducible string
    either extends it or truncates it (the one possible redex is a suffix
    and its rhs a prefix of the lhs), so every state evolves like a stack.
    A stack position p can only ever be popped if some lhs prefix longer
    than its rule's rhs ends exactly at p; popping it costs at least the
    remaining lhs symbols, which must all be pushed. Chaining those facts
    gives costs[m] = a lower bound on pushes needed to cut u down to its
    prefix of length m, and from there bounds against a fixed target or
    for making two stacks equal.
    """

    def __init__(self, lhss, rhss):
        self.patterns = tuple(
            (l[:j], len(l) - j)
            for l, r in zip(lhss, rhss)
            for j in range(len(r) + 1, len(l) + 1)
        )
        self._memo: dict[bytes, tuple] = {}

    def costs(self, u: bytes):
        c = self._memo.get(u)
        if c is not None:
            return c
        n = len(u)
        costs = [_INF] * (n + 1)
        costs[n] = 0
        for m in range(n, 0, -1):
            base = costs[m]
            if base is _INF:
                continue
            pre = u[:m]
            for pat, completion in self.patterns:
                if len(pat) <= m and pre.endswith(pat):
                    t = m - len(pat)
                    if base + completion < costs[t]:
                        costs[t] = base + completion
        costs = tuple(costs)
        self._memo[u] = costs
        return costs

    def lb_equal(self, u: bytes, v: bytes):
        """Lower bound on pushes before the two stacks can become equal."""
        cu, cv = self.costs(u), self.costs(v)
        cpl = _common_prefix_len(u, v)
        best = _INF
        for mu, base_u in enumerate(cu):
            if base_u is _INF:
                continue
            for mv, base_v in enumerate(cv):
                if base_v is _INF or min(mu, mv) > cpl:
                    continue
                m = max(mu, mv)
                f = max(base_u + m - mu, base_v + m - mv)
                if f < best:
                    best = f
        return best

    def lb_target(self, u: bytes, target: bytes):
        """Lower bound on pushes before the stack can equal `target`."""
        cu = self.costs(u)
        cpl = _common_prefix_len(u, target)
        limit = min(len(u), len(target), cpl)
        best = _INF
        for m in range(limit + 1):
            if cu[m] is not _INF:
                f = cu[m] + len(target) - m
                if f < best:
                    best = f
        return best


def _common_prefix_len(u: bytes, v: bytes) -> int:
    n = 0
    for x, y in zip(u, v):
        if x != y:
            break
        n += 1
    return n


def _nf(srs: Srs, ids: bytes) -> bytes:
    out = _kernel.normalize_bytes(srs.lhss, srs.rhss, ids, -1)
    assert out is not None
    return out


def _convergent_search_setup(srs: Srs):
    lhss, rhss = srs.lhss, srs.rhss
    if classify(srs).dwindling:
        oracle = _DescentOracle(lhss, rhss)

        def push(w: bytes, sym: int) -> bytes:
            return _kernel.suffix_push(lhss, rhss, w, sym)

        return push, oracle

    def push(w: bytes, sym: int) -> bytes:
        out = _kernel.normalize_bytes(lhss, rhss, w + bytes((sym,)), -1)
        assert out is not None
        return out

    return push, None


def _search_pair_equal(srs: Srs, alpha: bytes, beta: bytes, max_len: int):
    """Least W (length-lex) with nf(alpha·W) = nf(beta·W), |W| <= max_len."""
    push, oracle = _convergent_search_setup(srs)
    u0, v0 = _nf(srs, alpha), _nf(srs, beta)
    examined = 1
    if u0 == v0:
        return b"", examined
    k = len(srs.alphabet)
    seen = {(u0, v0)}
    frontier = [(u0, v0, b"")]
    if oracle is not None and oracle.lb_equal(u0, v0) > max_len:
        frontier = []
    for depth in range(1, max_len + 1):
        remaining = max_len - depth
        nxt = []
        for u, v, w in frontier:
            for sym in range(k):
                u2 = push(u, sym)
                v2 = push(v, sym)
                key = (u2, v2)
                if key in seen:
                    continue
                seen.add(key)
                examined += 1
                if u2 == v2:
                    return w + bytes((sym,)), examined
                if oracle is not None and oracle.lb_equal(u2, v2) > remaining:
                    continue
                nxt.append((u2, v2, w + bytes((sym,))))
        frontier = nxt
    return None, examined


def _search_pair_target(srs, alpha1, beta1, target_a, target_b, avoid, max_len):
    """Least W1 with nf(alpha1·W1) = target_a, nf(beta1·W1) = target_b and
    nf(W1) != avoid. States are triples so the non-triviality component is
    part of the deduplication key."""
    push, oracle = _convergent_search_setup(srs)

    def lb(u: bytes, v: bytes):
        if oracle is None:
            return 0
        return max(oracle.lb_target(u, target_a), oracle.lb_target(v, target_b))

    u0, v0, t0 = _nf(srs, alpha1), _nf(srs, beta1), b""
    examined = 1
    if u0 == target_a and v0 == target_b and t0 != avoid:
        return b"", examined
    k = len(srs.alphabet)
    seen = {(u0, v0, t0)}
    frontier = [(u0, v0, t0, b"")]
    if lb(u0, v0) > max_len:
        frontier = []
    for depth in range(1, max_len + 1):
        remaining = max_len - depth
        nxt = []
        for u, v, t, w in frontier:
            for sym in range(k):
                u2 = push(u, sym)
                v2 = push(v, sym)
                t2 = push(t, sym)
                key = (u2, v2, t2)
                if key in seen:
                    continue
                seen.add(key)
                examined += 1
                if u2 == target_a and v2 == target_b and t2 != avoid:
                    return w + bytes((sym,)), examined
                if lb(u2, v2) > remaining:
                    continue
                nxt.append((u2, v2, t2, w + bytes((sym,))))
        frontier = nxt
    return None, examined


def _neighbors(srs: Srs, w: bytes) -> Iterator[bytes]:
    """One-step convertibility neighbors of w, forward then backward, in
    (position, rule) order."""
    for pos in range(len(w)):
        for i, l in enumerate(srs.lhss):
            if w[pos: pos + len(l)] == l and pos + len(l) <= len(w):
                yield w[:pos] + srs.rhss[i] + w[pos + len(l):]
    for pos in range(len(w) + 1):
        for i, r in enumerate(srs.rhss):
            if not r:
                yield w[:pos] + srs.lhss[i] + w[pos:]
            elif w[pos: pos + len(r)] == r and pos + len(r) <= len(w):
                yield w[:pos] + srs.lhss[i] + w[pos + len(r):]


def bounded_convertible(srs: Srs, u: SymbolString, v: SymbolString, budget: int) -> bool:
    """Breadth-first search over the symmetric rewrite relation from u,
    expanding at most `budget` strings. True is sound; False only means
    no derivation was found within the budget."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    x, y = u.ids, v.ids
    if x == y:
        return True
    seen = {x}
    queue = [x]
    expanded = 0
    while queue and expanded < budget:
        w = queue.pop(0)
        expanded += 1
        for n in _neighbors(srs, w):
            if n == y:
                return True
            if n not in seen:
                seen.add(n)
                queue.append(n)
    return False


def _require_mode(srs: Srs, equiv_budget: int | None) -> bool:
    """True for the convergent normal-form mode, False for the budgeted one."""
    if check_convergent(srs).convergent is True:
        return True
    if equiv_budget is None:
        raise NotConvergentError(
            "system not certified convergent; pass equiv_budget to search "
            "with bounded convertibility checks"
        )
    return False


def ct_search(query: CtQuery, max_len: int, *, equiv_budget: int | None = None) -> SearchOutcome:
    """Least W with alpha·W convertible to beta·W, up to length max_len."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    srs = query.srs
    if _require_mode(srs, equiv_budget):
        w, examined = _search_pair_equal(srs, query.alpha.ids, query.beta.ids, max_len)
        if w is not None:
            witness = SymbolString(w)
            if _nf(srs, query.alpha.ids + w) != _nf(srs, query.beta.ids + w):
                raise RuntimeError("internal error: witness failed re-verification")
            return SearchOutcome("found", (witness,), max_len, examined)
        return SearchOutcome("exhausted", None, max_len, examined)

    examined = 0
    for cand in enumerate_candidates(srs.alphabet, max_len):
        examined += 1
        if bounded_convertible(srs, query.alpha + cand, query.beta + cand, equiv_budget):
            return SearchOutcome("found", (cand,), max_len, examined)
    return SearchOutcome("exhausted", None, max_len, examined)


def fp_search(srs: Srs, alpha: SymbolString, max_len: int, *,
              equiv_budget: int | None = None) -> SearchOutcome:
    """Least W with alpha·W convertible to W.

    This is the common-term search with beta fixed to the empty string
    (substituting nothing on the second side); the delegation makes that
    reduction executable, so outcomes are identical object for object.
    """
    return ct_search(CtQuery(srs, alpha, EPSILON), max_len, equiv_budget=equiv_budget)


def ce_search(query: CeQuery, max_len: int, *, equiv_budget: int | None = None) -> SearchOutcome:
    """Least (W1, W2) such that alpha1·W1 ~ alpha2·W2, beta1·W1 ~ beta2·W2,
    and W1 is not convertible to W2 (candidate equations that are already
    identities are excluded).

    Pairs are ordered with W2 as the outer length-lex coordinate and W1 as
    the inner one, so searches degenerate gracefully to the common-term
    case when the second side substitutes nothing. In the budgeted mode
    non-triviality is best effort: a convertibility proof for (W1, W2)
    missed by the budget cannot be excluded.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    srs = query.srs
    examined = 0
    if _require_mode(srs, equiv_budget):
        for w2 in enumerate_candidates(srs.alphabet, max_len):
            target_a = _nf(srs, query.alpha2.ids + w2.ids)
            target_b = _nf(srs, query.beta2.ids + w2.ids)
            avoid = _nf(srs, w2.ids)
            w1, inner = _search_pair_target(
                srs, query.alpha1.ids, query.beta1.ids, target_a, target_b, avoid, max_len
            )
            examined += inner
            if w1 is not None:
                witness = (SymbolString(w1), w2)
                ok = (
                    _nf(srs, query.alpha1.ids + w1) == _nf(srs, query.alpha2.ids + w2.ids)
                    and _nf(srs, query.beta1.ids + w1) == _nf(srs, query.beta2.ids + w2.ids)
                    and _nf(srs, w1) != _nf(srs, w2.ids)
                )
                if not ok:
                    raise RuntimeError("internal error: witness failed re-verification")
                return SearchOutcome("found", witness, max_len, examined)
        return SearchOutcome("exhausted", None, max_len, examined)

    for w2 in enumerate_candidates(srs.alphabet, max_len):
        for w1 in enumerate_candidates(srs.alphabet, max_len):
            examined += 1
            if (
                bounded_convertible(srs, query.alpha1 + w1, query.alpha2 + w2, equiv_budget)
                and bounded_convertible(srs, query.beta1 + w1, query.beta2 + w2, equiv_budget)
                and not bounded_convertible(srs, w1, w2, equiv_budget)
            ):
                return SearchOutcome("found", (w1, w2), max_len, examined)
    return SearchOutcome("exhausted", None, max_len, examined)


def render_outcome(outcome: SearchOutcome, alphabet: Alphabet) -> str:
    """Line-oriented report: status, witness tokens (or eps), bound, examined."""
    lines = [f"status: {outcome.status}"]
    if outcome.witness is not None:
        if len(outcome.witness) == 1:
            lines.append(f"witness: {alphabet.render(outcome.witness[0])}")
        else:
            for i, w in enumerate(outcome.witness, start=1):
                lines.append(f"witness{i}: {alphabet.render(w)}")
    lines.append(f"bound: {outcome.bound}")
    lines.append(f"examined: {outcome.examined}")
    return "\n".join(lines) + "\n"
