"""Small ready-made systems used by the documentation and the test suite."""

from .core import Srs, parse_srs
from .gpcp import GpcpInstance, instance_from_words
from .terms import TrsLite, parse_trs

SUCC_PRED_SRS_TEXT = """\
alphabet: s p
s p -> eps
p s -> eps
"""

SUCC_PRED_TRS_TEXT = """\
p(s(x)) -> x
s(p(x)) -> x
"""

# Subtraction over successor/predecessor numerals; convergent.
LINEAR_ARITH_TRS_TEXT = """\
x - 0 -> x
x - x -> 0
s(x) - y -> s(x - y)
p(x) - y -> p(x - y)
x - p(y) -> s(x - y)
x - s(y) -> p(x - y)
p(s(x)) -> x
s(p(x)) -> x
"""


def succ_pred_srs() -> Srs:
    """Two-rule cancellation system {sp -> eps, ps -> eps}."""
    return parse_srs(SUCC_PRED_SRS_TEXT)


def succ_pred_trs() -> TrsLite:
    """The unary-term form of the cancellation system."""
    return parse_trs(SUCC_PRED_TRS_TEXT)


def linear_arith_trs() -> TrsLite:
    """Subtraction fragment over s/p towers with constant 0."""
    return parse_trs(LINEAR_ARITH_TRS_TEXT)


def start_end_instance() -> GpcpInstance:
    """Smallest solvable instance: no tiles, match "aaa" with no indices."""
    return instance_from_words(("a", "aa"), [], ("aa", "a"))


def one_tile_instance() -> GpcpInstance:
    """One intermediate tile; match "baaa" with index sequence (1,)."""
    return instance_from_words(("b", "ba"), [("aa", "a")], ("a", "a"))
