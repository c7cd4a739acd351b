"""Shared hypothesis strategies for domain values."""

from __future__ import annotations

from hypothesis import strategies as st

from defpos._kernel import closure, full_mask
from defpos.boolfun import AbsFun, Domain, ModelSet


@st.composite
def model_sets(draw, min_width=1, max_width=6):
    width = draw(st.integers(min_width, max_width))
    table = draw(st.integers(0, full_mask(width)))
    return ModelSet(width, table)


def _positive(width: int, table: int) -> int:
    return table | (1 << ((1 << width) - 1)) if table else 0


@st.composite
def tagged_values(draw, tag: Domain, min_width=1, max_width=5):
    width = draw(st.integers(min_width, max_width))
    table = _positive(width, draw(st.integers(0, full_mask(width))))
    if tag is Domain.DEF:
        table = closure(table)
    return AbsFun(width, ModelSet(width, table), tag)


@st.composite
def value_pairs(draw, tag: Domain, min_width=1, max_width=5):
    """Two same-width values of the given tag."""
    width = draw(st.integers(min_width, max_width))
    tables = [
        _positive(width, draw(st.integers(0, full_mask(width)))) for _ in range(2)
    ]
    if tag is Domain.DEF:
        tables = [closure(t) for t in tables]
    return tuple(AbsFun(width, ModelSet(width, t), tag) for t in tables)
