"""Pure-Python rewrite kernels.

Strings are `bytes` of symbol ids, rules are parallel tuples of lhs/rhs
bytes. Semantics here are the reference; the compiled backend must match
them exactly (see tests/test_kernel.py).
"""

BACKEND_NAME = "pure"


def find_redex(lhss, w, start=0):
    """Leftmost redex at or after `start`: (position, rule index) or None.

    Ties at one position go to the longest lhs, then the lowest rule index.
    """
    best = None
    for i, l in enumerate(lhss):
        p = w.find(l, start)
        if p == -1:
            continue
        key = (p, -len(l), i)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return best[0], best[2]


def normalize_bytes(lhss, rhss, w, max_steps=-1):
    """Rewrite leftmost-first until irreducible.

    Returns the normal form, or None once `max_steps` rewrites have been
    used and the string is still reducible (max_steps < 0 means no limit).
    """
    if not lhss:
        return w
    max_lhs = max(len(l) for l in lhss)
    steps = 0
    lo = 0
    while True:
        hit = find_redex(lhss, w, lo)
        if hit is None:
            return w
        if 0 <= max_steps <= steps:
            return None
        pos, i = hit
        w = w[:pos] + rhss[i] + w[pos + len(lhss[i]):]
        steps += 1
        # No redex can start before pos - max_lhs + 1 after an edit at pos.
        lo = pos - max_lhs + 1
        if lo < 0:
            lo = 0


def suffix_push(lhss, rhss, w, sym):
    """Append one symbol to an irreducible string and re-normalize.

    Valid only for dwindling systems, where the appended symbol can
    complete at most one redex, necessarily a suffix, and the one-step
    result is again irreducible.
    """
    ws = w + bytes((sym,))
    n = len(ws)
    best = -1
    best_len = 0
    for i, l in enumerate(lhss):
        if best_len < len(l) <= n and ws.endswith(l):
            best = i
            best_len = len(l)
    if best < 0:
        return ws
    return ws[: n - best_len] + rhss[best]
