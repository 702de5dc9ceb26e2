"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from misere.positions import ZERO, build


def positions(max_depth: int = 3, max_options: int = 2):
    """Random positions built bottom-up from 0."""
    return st.recursive(
        st.just(ZERO),
        lambda children: st.tuples(
            st.lists(children, max_size=max_options),
            st.lists(children, max_size=max_options),
        ).map(lambda lr: build(lr[0], lr[1])),
        max_leaves=max_depth * 3,
    )


def all_small_positions(max_leaves: int = 8):
    """Positions where Left can move exactly when Right can, at every node."""
    return st.recursive(
        st.just(ZERO),
        lambda children: st.tuples(
            st.lists(children, min_size=1, max_size=2),
            st.lists(children, min_size=1, max_size=2),
        ).map(lambda lr: build(lr[0], lr[1])),
        max_leaves=max_leaves,
    )
