from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exminor import catalog
from exminor.connectivity import is_three_connected
from exminor.constructions import (
    CUT_GUARD,
    GlueSpec,
    GuardExceeded,
    appended_row,
    coextensions,
    delta_y,
    extend_by_cut,
    extensions,
    generalized_parallel_connection,
    graphic,
    grow_fan,
    grown_minor_witness,
    is_modular_cut,
    is_modular_flat,
    k4,
    linear_row_extensions,
    modular_cuts,
    representation,
    three_connected_only,
    wheel,
    whirl,
    y_delta,
)
from exminor.fans import is_fan
from exminor.isomorphism import is_isomorphic
from exminor.matroid import LinearMatroid, MatroidError, basis_exchange_holds, check_rank_axioms

from .oracles import brute_modular_cuts, column_rank, spanning_trees

K4_EDGES = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)]


def _wheel_edges(n: int, prefix: str = ""):
    edges, labels = [], []
    for i in range(1, n + 1):
        edges += [(0, i), (i, i % n + 1)]
        labels += [f"{prefix}s{i}", f"{prefix}r{i}"]
    return edges, labels


def test_wheel3_is_k4():
    assert is_isomorphic(wheel(3), graphic(K4_EDGES))
    assert k4().same_as(wheel(3))


def test_wheel3_basis_count():
    assert len(wheel(3).basis_masks()) == spanning_trees(4, K4_EDGES) == 16


@pytest.mark.parametrize("n", [3, 4, 5])
def test_wheel_labelling(n):
    w = wheel(n)
    for i in range(1, n + 1):
        j = i % n + 1
        assert w.mask([f"s{i}", f"r{i}", f"s{j}"]) in w.triangle_masks()
        assert w.mask([f"r{i}", f"s{j}", f"r{j}"]) in w.triad_masks()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_whirl_is_relaxed_wheel(n):
    w = whirl(n)
    assert is_three_connected(w)
    rim = w.mask([f"r{i}" for i in range(1, n + 1)])
    assert rim in w.basis_masks()
    if n >= 3:
        assert set(w.basis_masks()) == set(wheel(n).basis_masks()) | {rim}


def test_wheel_rejects_small_n():
    with pytest.raises(MatroidError):
        wheel(2)


def test_gpc_matches_graph_clique_sum():
    # M = W4 graph, N = W3 graph; glue N's triangle (s1, r3, s3) = (01, 31, 03)
    # onto M's triangle (ms1, mr4, ms4) = (01, 41, 04), i.e. N's vertex 3 becomes 4
    m_edges, m_labels = _wheel_edges(4, "m")
    n_edges, n_labels = _wheel_edges(3)
    m = graphic(m_edges, m_labels)
    n = graphic(n_edges, n_labels)
    glue = GlueSpec(("ms1", "mr4", "ms4"), ("s1", "r3", "s3"))
    p = generalized_parallel_connection(n, m, glue)
    vmap = {0: 0, 1: 1, 3: 4, 2: 9}
    extra = [((vmap[a], vmap[b]), lab) for (a, b), lab in zip(n_edges, n_labels) if lab not in glue.t_n]
    expected = graphic(m_edges + [e for e, _ in extra], m_labels + [lab for _, lab in extra])
    assert p.labels == expected.labels
    assert p.same_as(expected)


@pytest.mark.parametrize("host,tri", [("F7", ["1", "2", "4"]), ("M8", ["3", "6", "8"]), ("AG23e", ["1", "2", "4"])])
def test_gpc_rank_and_restrictions(host, tri):
    m = catalog.get(host)
    n = wheel(4)
    glue = GlueSpec(tuple(tri), ("s1", "r4", "s4"))
    p = generalized_parallel_connection(n, m, glue)
    assert p.rank() == n.rank() + m.rank() - 2
    assert p.restrict(m.labels).same_as(m)
    back = {"s1": tri[0], "r4": tri[1], "s4": tri[2]}
    n_side = n.relabel(back)
    assert p.restrict(n_side.labels).reorder(n_side.labels).same_as(n_side)
    assert basis_exchange_holds(p)


def test_gpc_flats_are_glued_flats():
    m = catalog.get("F7")
    n = wheel(3)
    p = generalized_parallel_connection(n, m, GlueSpec(("1", "2", "4"), ("s1", "r3", "s3")))
    n_side = n.relabel({"s1": "1", "r3": "2", "s3": "4"})
    for mask in range(1 << p.n):
        labs = p.ordered(mask)
        in_n = [x for x in labs if x in n_side.index]
        in_m = [x for x in labs if x in m.index]
        glued = n_side.is_flat_mask(n_side.mask(in_n)) and m.is_flat_mask(m.mask(in_m))
        assert p.is_flat_mask(mask) == glued


def test_gpc_deletion_and_contraction_identities():
    m = catalog.get("F7")
    n = wheel(4)
    glue = GlueSpec(("1", "2", "4"), ("s1", "r4", "s4"))
    p = generalized_parallel_connection(n, m, glue)
    for e in ("s2", "r2"):
        assert p.delete([e]).same_as(generalized_parallel_connection(n.delete([e]), m, glue))
    # r2 is outside the closure of T in W4
    assert p.contract(["r2"]).same_as(generalized_parallel_connection(n.contract(["r2"]), m, glue))
    for e in ("3", "7"):
        mm = m.delete([e])
        assert p.delete([e]).reorder(
            generalized_parallel_connection(n, mm, glue).labels
        ).same_as(generalized_parallel_connection(n, mm, glue))
        mc = m.contract([e])
        assert p.contract([e]).reorder(
            generalized_parallel_connection(n, mc, glue).labels
        ).same_as(generalized_parallel_connection(n, mc, glue))


def test_gpc_with_k4_then_delete_triangle_is_delta_y():
    m = catalog.get("M9")
    tri = ("3", "5", "9")
    p = generalized_parallel_connection(wheel(3), m, GlueSpec(tri, ("s1", "r3", "s3")))
    assert is_isomorphic(p.delete(list(tri)), delta_y(m, tri))


def test_gpc_requires_modular_triangle():
    # a triangle of F7 is modular; in U2,4 (rank 2) a 3-set is not a flat of rank 2 below the top
    assert is_modular_flat(catalog.get("F7"), ["1", "2", "4"])
    with pytest.raises(MatroidError):
        generalized_parallel_connection(catalog.get("F7"), catalog.get("F7"), GlueSpec(("1", "2", "3"), ("1", "2", "4")))


def test_delta_y_on_ag23e_gives_delta3():
    m = catalog.get("AG23e")
    for t in m.triangles():
        assert is_isomorphic(delta_y(m, sorted(t)), catalog.get("Delta3"))


def test_nabla_delta_m9():
    m9 = catalog.get("M9")
    assert y_delta(delta_y(m9, ["3", "5", "9"]), ["3", "5", "9"]).same_as(m9)


def test_delta3_self_dual():
    d = catalog.get("Delta3")
    assert is_isomorphic(d, d.dual())


@pytest.mark.parametrize("name", ["F7", "F7-", "M8", "M9", "M7", "P7", "AG23e", "W4", "O7", "Delta3"])
def test_delta_then_nabla_is_identity(name):
    m = catalog.get(name)
    for t in m.triangle_masks():
        if m.rank_mask(m.full & ~t) != m.rank():
            continue
        tri = m.ordered(t)
        d = delta_y(m, tri)
        assert d.mask(tri) in d.triad_masks()
        assert y_delta(d, tri).same_as(m)


def test_delta_y_rejects_non_triangle():
    with pytest.raises(MatroidError):
        delta_y(catalog.get("F7"), ["1", "2", "3"])


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("host,fan", [("M8", ["3", "6", "8"]), ("M7", ["1", "2", "4"]), ("W4", ["s1", "r1", "s2", "r2", "s3"])])
def test_grow_fan_items(host, fan, n):
    m = catalog.get(host)
    g = grow_fan(m, fan[:3], n, fan=fan)
    assert g.matroid.n == m.n + 2 * n - 4
    assert is_fan(g.matroid, g.fan)
    assert grown_minor_witness(m, g, fan[1]) is not None
    assert is_three_connected(g.matroid)


def test_grow_fan_m7_has_p6():
    from exminor.minors import has_minor

    g = grow_fan(catalog.get("M7"), ["1", "2", "4"], 3).matroid
    assert is_three_connected(g) and has_minor(g, catalog.get("P6")) is not None


def test_grow_fan_fresh_labels():
    g = grow_fan(catalog.get("M8"), ["3", "6", "8"], 4)
    assert g.fresh == ("f1", "f2", "f3", "f4", "f5")
    assert g.fan == ("3", "f1", "f2", "f3", "f4", "f5", "8")


def test_grow_fan_rejects():
    with pytest.raises(MatroidError):
        grow_fan(catalog.get("M8"), ["3", "6", "8"], 2)
    with pytest.raises(MatroidError):
        grow_fan(catalog.get("M8"), ["1", "2", "3"], 3)


def test_top_flat_cut_adds_spanned_element():
    m = catalog.get("F7")
    e = extend_by_cut(m, [m.full])
    assert e.rank() == m.rank()
    assert e.rank_mask(e.full) == e.rank_mask(m.full)
    empty = extend_by_cut(m, [])
    assert empty.coloops_mask() == 1 << 7


def test_f7_cut_count_matches_brute_force():
    m = catalog.get("F7")
    rows = [list(r) for r in m.rows]

    def rank(s):
        return column_rank(rows, sorted(s), 2)

    brute = brute_modular_cuts(list(range(7)), rank)
    ours = modular_cuts(m)
    as_sets = {frozenset(frozenset(i for i in range(7) if f >> i & 1) for f in c.flats) for c in ours}
    assert len(ours) == len(brute) == 17
    assert as_sets == set(brute)
    assert all(is_modular_cut(m, c.flats) for c in ours)


def test_f7_extensions_satisfy_rank_axioms():
    for x in extensions(catalog.get("F7")):
        assert x.n == 8 and check_rank_axioms(x) == []


def test_coextensions_are_dual_extensions():
    m = catalog.get("F7")
    co = coextensions(m)
    ext = extensions(m.dual())
    assert len(co) == len(ext)
    for a, b in zip(co, ext):
        assert a.same_as(b.dual())


def test_f7_three_connected_extensions():
    ext = three_connected_only(extensions(catalog.get("F7")))
    assert len(ext) == 8
    # every 3-connected extension is simple, so the new point sits off the Fano lines
    assert all(x.is_simple() for x in ext)


def test_cut_guard():
    with pytest.raises(GuardExceeded):
        modular_cuts(catalog.get("F7*"), guard=10)
    assert CUT_GUARD == 1 << 22


def test_a_prime_column_gives_p8():
    a = [[1, 1, 0, -1], [1, 0, 1, 1], [0, 1, 1, 1], [1, 1, -1, 0]]
    m = LinearMatroid.standard(3, ["1", "2", "3", "e"], a, ["4", "5", "6", "7"])
    assert is_isomorphic(m, catalog.get("P8"))


def test_zero_row_gives_coloop_and_is_filtered():
    b = catalog.get("AG23e")
    m = appended_row(b, [0] * b.n, "f")
    assert m.coloops_mask() == m.mask(["f"])
    assert three_connected_only([m]) == []


def test_row_extension_counts():
    ext = linear_row_extensions(catalog.get("AG23e"), "row", "f")
    assert ext.raw == 3 ** 8
    # rows modulo the 3-dimensional row space, up to sign: (3^8 / 27 - 1) / 2 + 1
    assert len(ext.vectors) == (3 ** 5 - 1) // 2 + 1
    for v, m in zip(ext.vectors[:10], ext.matroids[:10]):
        assert m.contract(["f"]).same_as(catalog.get("AG23e"))


def test_column_extension_counts():
    ext = linear_row_extensions(catalog.get("F7"), "column", "e")
    assert ext.raw == 8 and len(ext.vectors) == 8


def test_ag23_row_coextensions_keep_deletable_element():
    ext = linear_row_extensions(catalog.get("AG23"), "row", "f")
    assert ext.raw == 3 ** 9
    checked = 0
    for m in ext.matroids[::7]:
        if not three_connected_only([m]):
            continue
        checked += 1
        assert any(is_three_connected(m.delete([g])) for g in m.labels if g != "f")
    assert checked > 0


def test_representations():
    assert representation(catalog.get("F7"), 3) is None
    assert representation(catalog.get("U25"), 3) is None
    rep = representation(catalog.get("U25"), 4)
    assert rep is not None and rep.same_as(catalog.get("U25"))
    assert representation(catalog.get("P8-"), 4) is not None
    assert representation(catalog.get("P8="), 4) is None


@given(st.integers(2, 4), st.integers(0, 3), st.data())
def test_representation_of_linear_matroid(rank, extra, data):
    cols = rank + extra
    rows = [[data.draw(st.integers(0, 2)) for _ in range(cols)] for _ in range(rank)]
    m = LinearMatroid(3, rows)
    rep = representation(m, 3)
    assert rep is not None and rep.same_as(m)
