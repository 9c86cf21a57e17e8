from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given

from exminor import catalog
from exminor.isomorphism import is_isomorphic
from exminor.matroid import (
    BasisMatroid,
    LinearMatroid,
    MatroidError,
    TableMatroid,
    UniformMatroid,
    basis_exchange_holds,
    check_rank_axioms,
    popcount,
)

from .oracles import column_rank, flats
from .strategies import linear_matroids, matroid_and_split, matroid_and_subset

M9_ROWS = [
    [1, 0, 0, 0, 1, 0, -1, 0, 1],
    [0, 1, 0, 0, 1, 0, 1, 1, 1],
    [0, 0, 1, 0, 1, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 1, 1, -1, 0],
]

SMALL = [n for n in catalog.names() if "{" not in n and catalog.get(n).n <= 10]


def test_delta3_matrix_rank_and_size():
    m = catalog.get("Delta3")
    assert (m.rank(), m.n) == (4, 8)


def test_identity_is_free():
    m = LinearMatroid(2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert m.same_as(UniformMatroid(3, 3))


def test_m9_triangles():
    m = catalog.get("M9")
    assert m.triangles() == {frozenset(t) for t in ("129", "359", "346")}
    assert m.rank(["3", "5", "9"]) == 2


def test_ranks_of_trivial_sets():
    m8 = catalog.get("M8")
    assert m8.rank([]) == 0
    assert m8.rank() == 3


def test_m9_closure_from_reference_rank():
    # closure of {3,5} by direct column-rank computation over GF(3)
    cols = {str(i + 1): i for i in range(9)}
    base = column_rank(M9_ROWS, [cols["3"], cols["5"]], 3)
    expected = {x for x in cols if column_rank(M9_ROWS, [cols["3"], cols["5"], cols[x]], 3) == base}
    assert expected == {"3", "5", "9"}
    assert catalog.get("M9").closure(["3", "5"]) == frozenset(expected)


def test_closure_of_ground_set():
    m = catalog.get("F7")
    assert m.closure(m.labels) == m.ground
    assert m.full_closure(m.labels) == m.ground


def test_full_closure_of_wheel_triangle():
    w3 = catalog.get("W3")
    for t in w3.triangles():
        assert w3.full_closure(t) == w3.ground


def test_u24_triangles_and_triads():
    u = catalog.get("U24")
    every = {frozenset(c) for c in combinations(u.labels, 3)}
    assert u.triangles() == every
    # U2,4 is self-dual, so its triads are also every 3-subset
    assert u.triads() == every


def test_ag23e_is_simple():
    assert catalog.get("AG23e").is_simple()


def test_simplify_drops_loops():
    m = LinearMatroid(2, [[1, 0]], ["a", "z"])
    s = m.simplify()
    assert s.labels == ("a",) and s.same_as(UniformMatroid(1, 1, labels=["a"]))


def test_parallel_classes_keep_least_label():
    m = LinearMatroid(3, [[1, 2, 0, 1], [0, 0, 1, 1]], ["b", "a", "c", "d"])
    assert m.simplify().labels == ("a", "c", "d")


def test_m9_contract_7_four_point_lines():
    lines = {f for f in catalog.get("M9").contract(["7"]).flats(2) if len(f) == 4}
    assert frozenset("3589") in lines and frozenset("1249") in lines


def test_top_flat_is_ground():
    m = catalog.get("P7")
    assert m.flats(m.rank()) == {m.ground}


def test_fano_hyperplanes_by_brute_force():
    f7 = catalog.get("F7")
    rows = [list(r) for r in f7.rows]
    ground = list(range(7))

    def rank(s):
        return column_rank(rows, sorted(s), 2)

    hyper = [f for f in flats(ground, rank) if rank(f) == 2]
    assert len(hyper) == 7 == len(f7.hyperplanes())


def test_relaxing_non_circuit_hyperplane_fails():
    with pytest.raises(MatroidError):
        catalog.get("F7").relax(["1", "2"])


def test_relaxation_of_ag32_has_fstar_minor():
    from exminor.minors import has_minor

    assert has_minor(catalog.get("AG32'"), catalog.get("F7*")) is not None


def test_p8_single_relaxations_are_not_pairwise_isomorphic():
    # the two disjoint circuit-hyperplanes {1,4,5,8} and {2,3,6,7} behave
    # differently from the other eight, so single relaxations give two classes
    p8 = catalog.get("P8")
    relaxed = [p8.relax(p8.ordered(c)) for c in p8.circuit_hyperplane_masks()]
    assert len(relaxed) == 10
    classes = []
    for r in relaxed:
        for c in classes:
            if is_isomorphic(r, c[0]):
                c.append(r)
                break
        else:
            classes.append([r])
    assert sorted(len(c) for c in classes) == [2, 8]


def test_p8eq_is_double_relaxation():
    p8 = catalog.get("P8")
    twice = p8.relax(["1", "4", "5", "8"]).relax(["2", "3", "6", "7"])
    assert twice.same_as(catalog.get("P8="))


def test_dual_of_f7_minus_is_shipped_dual():
    assert catalog.get("F7-").dual().same_as(catalog.get("F7-*"))


def test_s5612_self_dual():
    s = catalog.get("S5612")
    assert is_isomorphic(s, s.dual())


def test_m8_delete_8_and_m7_delete_1():
    assert is_isomorphic(catalog.get("M8").delete(["8"]), catalog.get("F7-"))
    assert is_isomorphic(catalog.get("M7").delete(["1"]), catalog.get("P6"))


def test_contract_nothing():
    m = catalog.get("M8")
    assert m.contract([]).same_as(m)


def test_bad_inputs():
    with pytest.raises(MatroidError):
        BasisMatroid(["a", "b"], [1, 3])
    with pytest.raises(MatroidError):
        UniformMatroid(3, 2)
    with pytest.raises(MatroidError):
        LinearMatroid(2, [[1, 0]], ["a", "a"])
    with pytest.raises(MatroidError):
        TableMatroid(["a"], [0, 1, 1])


@pytest.mark.parametrize("name", SMALL)
def test_rank_axioms_catalog(name):
    assert check_rank_axioms(catalog.get(name)) == []


@pytest.mark.parametrize("name", [n for n in catalog.names() if "{" not in n and catalog.get(n).n <= 12])
def test_dual_rank_formula(name):
    m = catalog.get(name)
    d = m.dual()
    r = m.rank()
    for mask in range(1 << m.n):
        assert d.rank_mask(mask) == popcount(mask) - r + m.rank_mask(m.full & ~mask)


@pytest.mark.parametrize("name", SMALL)
def test_cosimple_is_simple_dual(name):
    m = catalog.get(name)
    assert m.is_cosimple() == m.dual().is_simple()


def test_relaxations_satisfy_basis_exchange():
    p8 = catalog.get("P8")
    for c in p8.circuit_hyperplane_masks():
        assert basis_exchange_holds(p8.relax(p8.ordered(c)))
    assert basis_exchange_holds(catalog.get("P8="))


@given(linear_matroids())
def test_dual_is_involution(m):
    assert m.dual().dual().same_as(m)


@given(linear_matroids())
def test_rank_axioms_random(m):
    assert check_rank_axioms(m) == []


@given(matroid_and_split())
def test_minor_order_irrelevant(args):
    m, c, d = args
    a = m.minor_mask(c, d)
    b = m.minor_mask(c, 0).minor_mask(0, m.minor_mask(c, 0).mask(m.ordered(d)))
    e = m.minor_mask(0, d).minor_mask(m.minor_mask(0, d).mask(m.ordered(c)), 0)
    assert a.same_as(b) and a.same_as(e)


@given(matroid_and_subset())
def test_closure_properties(args):
    m, x = args
    cx = m.cl_mask(x)
    assert cx & x == x
    assert m.cl_mask(cx) == cx
    assert m.rank_mask(cx) == m.rank_mask(x)
    for i in range(m.n):
        assert m.cl_mask(x & ~(1 << i)) & ~cx == 0
    f = m.fcl_mask(x)
    assert f & cx == cx
    assert m.fcl_mask(f) == f


@given(matroid_and_subset())
def test_coclosure_is_dual_closure(args):
    m, x = args
    assert m.cocl_mask(x) == m.dual().cl_mask(x)


@given(linear_matroids(max_cols=7))
def test_bases_are_full_rank_column_sets(m):
    rows = [list(r) for r in m.rows]
    r = m.rank()
    expected = set()
    for combo in combinations(range(m.n), r):
        if column_rank(rows, list(combo), m.field.q) == r:
            expected.add(sum(1 << i for i in combo))
    assert set(m.basis_masks()) == expected
