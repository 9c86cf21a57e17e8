from __future__ import annotations

from hypothesis import strategies as st

from exminor.matroid import LinearMatroid


@st.composite
def linear_matroids(draw, max_rows: int = 4, min_cols: int = 1, max_cols: int = 8, fields=(2, 3, 5)):
    p = draw(st.sampled_from(fields))
    nrows = draw(st.integers(1, max_rows))
    ncols = draw(st.integers(min_cols, max_cols))
    rows = [[draw(st.integers(0, p - 1)) for _ in range(ncols)] for _ in range(nrows)]
    return LinearMatroid(p, rows, [str(i) for i in range(1, ncols + 1)])


@st.composite
def matroid_and_subset(draw, **kw):
    m = draw(linear_matroids(**kw))
    mask = draw(st.integers(0, m.full))
    return m, mask


@st.composite
def matroid_and_split(draw, **kw):
    """A matroid with disjoint contract and delete masks."""
    m = draw(linear_matroids(**kw))
    c = d = 0
    for i in range(m.n):
        choice = draw(st.sampled_from("kcd"))
        if choice == "c":
            c |= 1 << i
        elif choice == "d":
            d |= 1 << i
    return m, c, d
