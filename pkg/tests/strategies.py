"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from rotkit.tree import LEAF, Node, internal_count

trees = st.recursive(st.just(LEAF), lambda sub: st.builds(Node, sub, sub), max_leaves=24)
nonempty_trees = trees.filter(lambda t: internal_count(t) >= 1)


@st.composite
def skew_strings(draw, min_n=1, max_n=14):
    n = draw(st.integers(min_n, max_n))
    if n == 1:
        return "0"
    head = "".join(draw(st.lists(st.sampled_from("01"), min_size=n - 1, max_size=n - 1)))
    return head + ("1" if head[-1] == "0" else "0")


@st.composite
def skew_string_pairs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    return draw(skew_strings(n, n)), draw(skew_strings(n, n))
