"""Wheels and whirls, gluing across triangles, Delta-Y exchange, fan growing,
and enumeration of single-element extensions and coextensions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .fields import SmallField, get_field
from .matroid import (
    TABLE_LIMIT,
    LinearMatroid,
    Matroid,
    MatroidError,
    TableMatroid,
    bits,
    popcount,
)

CUT_GUARD = 1 << 22


class GuardExceeded(MatroidError):
    """A bounded search ran out of budget before finishing."""


def _fresh(taken: Iterable[str], prefix: str, count: int) -> list[str]:
    taken = set(taken)
    while any(f"{prefix}{i}" in taken for i in range(1, count + 1)):
        prefix += "_"
    return [f"{prefix}{i}" for i in range(1, count + 1)]


# --- graphic matroids, wheels, whirls ---------------------------------------

def graphic(edges: Sequence[tuple], labels: Sequence | None = None, name: str | None = None) -> LinearMatroid:
    """Cycle matroid of a multigraph, represented over GF(2) by its incidence matrix."""
    verts = sorted({v for e in edges for v in e}, key=str)
    row = {v: i for i, v in enumerate(verts)}
    mat = [[0] * len(edges) for _ in verts]
    for j, (u, v) in enumerate(edges):
        if u != v:
            mat[row[u]][j] = 1
            mat[row[v]][j] = 1
    if not mat:
        mat = [[0] * len(edges)]
    return LinearMatroid(2, mat, labels if labels is not None else range(1, len(edges) + 1), name)


def wheel_labels(n: int) -> list[str]:
    """s1, r1, s2, r2, ..., sn, rn."""
    out = []
    for i in range(1, n + 1):
        out += [f"s{i}", f"r{i}"]
    return out


def _wheel(n: int) -> LinearMatroid:
    # hub 0, rim vertices 1..n; s_i = (0, i), r_i = (i, i+1)
    edges = []
    for i in range(1, n + 1):
        edges.append((0, i))
        edges.append((i, i % n + 1))
    return graphic(edges, wheel_labels(n), name=f"W{n}")


def wheel(n: int) -> LinearMatroid:
    if n < 3:
        raise MatroidError("wheels need n >= 3")
    return _wheel(n)


def whirl(n: int) -> Matroid:
    """The wheel with its rim circuit-hyperplane relaxed."""
    if n < 2:
        raise MatroidError("whirls need n >= 2")
    m = _wheel(n).relax([f"r{i}" for i in range(1, n + 1)])
    m.name = f"W^{n}"
    return m


def k4() -> LinearMatroid:
    m = wheel(3)
    m.name = "M(K4)"
    return m


# --- modular flats and generalized parallel connection ------------------------

def is_modular_flat(m: Matroid, items) -> bool:
    f = m.mask(items)
    if not m.is_flat_mask(f):
        return False
    rf = m.rank_mask(f)
    return all(
        rf + m.rank_mask(g) == m.rank_mask(f | g) + m.rank_mask(f & g) for g in m.flat_masks()
    )


@dataclass(frozen=True)
class GlueSpec:
    """Triangle ``t_m`` of M, triangle ``t_n`` of N; ``t_n[i]`` is identified with ``t_m[i]``."""

    t_m: tuple[str, str, str]
    t_n: tuple[str, str, str]

    def __post_init__(self):
        if len(self.t_m) != 3 or len(set(self.t_m)) != 3 or len(self.t_n) != 3 or len(set(self.t_n)) != 3:
            raise MatroidError("a glue needs two triangles and a bijection between them")


def _superset_min(g: np.ndarray, n: int) -> None:
    idx = np.arange(len(g))
    for i in range(n):
        b = 1 << i
        lo = (idx & b) == 0
        g[lo] = np.minimum(g[lo], g[idx[lo] | b])


def _heights(flats: np.ndarray) -> np.ndarray:
    """Length of the longest chain of family members below each member."""
    size = np.array([popcount(int(f)) for f in flats])
    order = np.argsort(size, kind="stable")
    flats = flats[order]
    h = np.zeros(len(flats), dtype=np.int64)
    for k in range(len(flats)):
        f = flats[k]
        below = ((flats[:k] & ~f) == 0) & (flats[:k] != f)
        if below.any():
            h[k] = h[:k][below].max() + 1
    out = np.empty_like(h)
    out[order] = h
    return out


def generalized_parallel_connection(
    n_side: Matroid, m_side: Matroid, glue: GlueSpec | Sequence | None = None, name: str | None = None
) -> TableMatroid:
    """P_T(N, M) across a triangle T.

    The result lives on E(M) followed by E(N) - T (with N's triangle renamed
    onto M's).  Its flats are the sets F_N u F_M with F_N a flat of N, F_M a
    flat of M and F_N n T = F_M n T; ranks come from longest chains in that
    family.
    """
    if glue is None or not isinstance(glue, GlueSpec):
        t = tuple(str(x) for x in (glue if glue is not None else ()))
        glue = GlueSpec(t, t)
    t_m = m_side.mask(glue.t_m)
    t_n = n_side.mask(glue.t_n)
    if t_m not in m_side.triangle_masks():
        raise MatroidError(f"{list(glue.t_m)} is not a triangle of M")
    if t_n not in n_side.triangle_masks():
        raise MatroidError(f"{list(glue.t_n)} is not a triangle of N")
    if not is_modular_flat(n_side, glue.t_n):
        raise MatroidError(f"{list(glue.t_n)} is not a modular flat of N")
    rename = dict(zip(glue.t_n, glue.t_m))
    n_labels = [rename.get(x, x) for x in n_side.labels]
    extra = [x for x in n_labels if x not in rename.values()]
    if set(extra) & set(m_side.labels):
        raise MatroidError("ground sets overlap outside the glued triangle")
    labels = list(m_side.labels) + extra
    total = len(labels)
    if total > TABLE_LIMIT:
        raise MatroidError(f"generalized parallel connection on {total} elements is too large")
    pos = {x: i for i, x in enumerate(labels)}
    n_map = [pos[x] for x in n_labels]

    def lift_n(mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= 1 << n_map[i]
        return out

    t_big = t_m  # M occupies the low positions unchanged
    by_trace: dict[int, list[int]] = {}
    for f in m_side.flat_masks():
        by_trace.setdefault(f & t_big, []).append(f)
    family = []
    for f in n_side.flat_masks():
        g = lift_n(f)
        for h in by_trace.get(g & t_big, ()):
            family.append(g | h)
    flats = np.array(sorted(set(family)), dtype=np.int64)
    heights = _heights(flats)
    big = np.iinfo(np.int16).max
    g = np.full(1 << total, big, dtype=np.int16)
    g[flats] = heights
    _superset_min(g, total)
    if int(g.max()) == big:
        raise AssertionError("flat family has no top element")
    out = TableMatroid(labels, g.astype(np.uint8), name=name)
    expected = n_side.rank() + m_side.rank() - 2
    if out.rank() != expected:
        raise AssertionError(f"glued rank {out.rank()} differs from r(N) + r(M) - 2 = {expected}")
    return out


parallel_connection = generalized_parallel_connection


# --- Delta-Y ---------------------------------------------------------------

def delta_y(m: Matroid, triangle: Sequence, name: str | None = None) -> Matroid:
    """Delta-Y exchange on a coindependent triangle.

    Glue M(K4) along T and delete T; the three K4 edges meeting the fourth
    vertex take over the labels of T (the one opposite T's i-th edge gets the
    i-th label).  The result keeps M's ground-set order.
    """
    t = [str(x) for x in triangle]
    tm = m.mask(t)
    if tm not in m.triangle_masks():
        raise MatroidError(f"{t} is not a triangle")
    if m.rank_mask(m.full & ~tm) != m.rank():
        raise MatroidError(f"{t} is not coindependent")
    e = _fresh(m.labels, "k", 3)
    ep = _fresh(list(m.labels) + e, "y", 3)
    # vertices 1..4; e_i avoids vertex i on the triangle 123, ep_i joins i to 4
    edges = [(2, 3), (1, 3), (1, 2), (1, 4), (2, 4), (3, 4)]
    kn = graphic(edges, e + ep)
    p = generalized_parallel_connection(kn, m, GlueSpec(tuple(t), tuple(e)))
    out = p.delete(t).relabel(dict(zip(ep, t))).reorder(m.labels)
    out.name = name
    return out


def y_delta(m: Matroid, triad: Sequence, name: str | None = None) -> Matroid:
    t = [str(x) for x in triad]
    if m.mask(t) not in m.triad_masks():
        raise MatroidError(f"{t} is not a triad")
    out = delta_y(m.dual(), t).dual()
    out.name = name
    return out


# --- fan growing -------------------------------------------------------------

@dataclass(frozen=True)
class GrownFan:
    matroid: Matroid
    fresh: tuple[str, ...]  # images of r1, s2, r2, ..., s_{n-1}, r_{n-1}
    fan: tuple[str, ...]  # x1, fresh..., x3


def grow_fan(m: Matroid, triangle: Sequence, n: int, fan: Sequence | None = None, check: bool = True) -> GrownFan:
    """Glue W_n along T = (x1, x2, x3) with s1 -> x1, r_n -> x2, s_n -> x3, then delete x2.

    ``fan`` may extend the triangle to a longer fan (x1, x2, x3, ..., xk);
    the reported fan is then (x1, fresh..., x3, ..., xk).
    """
    from .connectivity import is_three_connected
    from .fans import is_fan

    if n < 3:
        raise MatroidError("fan growing needs n >= 3")
    x1, x2, x3 = (str(x) for x in triangle)
    seq = [str(x) for x in (fan if fan is not None else (x1, x2, x3))]
    if seq[:3] != [x1, x2, x3]:
        raise MatroidError("the fan must start with the glued triangle")
    if m.mask(seq[:3]) not in m.triangle_masks():
        raise MatroidError(f"{seq[:3]} is not a triangle")
    if not is_fan(m, seq):
        raise MatroidError(f"{seq} is not a fan")
    if check and not is_three_connected(m):
        raise MatroidError("fan growing needs a 3-connected matroid")
    w = _wheel(n)
    inner = [x for x in w.labels if x not in ("s1", f"r{n}", f"s{n}")]
    fresh = _fresh(m.labels, "f", len(inner))
    ren = dict(zip(inner, fresh))
    ren.update({"s1": "w_x1", f"r{n}": "w_x2", f"s{n}": "w_x3"})
    w = w.relabel(ren)
    p = generalized_parallel_connection(w, m, GlueSpec((x1, x2, x3), ("w_x1", "w_x2", "w_x3")))
    out = p.delete([x2])
    out.name = f"Phi{n}({m.name})" if m.name else None
    return GrownFan(out, tuple(fresh), tuple([x1] + fresh + seq[2:]))


def grown_minor_witness(m: Matroid, grown: GrownFan, x2: str):
    """Contract/delete fresh elements and rename one fresh element to x2 so as to get M back exactly.

    Returns (contract, delete, renamed) or None.
    """
    mm = grown.matroid
    fresh = list(grown.fresh)
    target = m
    for y in fresh:
        rest = [z for z in fresh if z != y]
        for choice in product((0, 1), repeat=len(rest)):
            c = [z for z, s in zip(rest, choice) if s]
            d = [z for z, s in zip(rest, choice) if not s]
            minor = mm.minor(c, d)
            if minor.rank() != target.rank():
                continue
            if minor.relabel({y: x2}).same_as(target):
                return tuple(c), tuple(d), y
    return None


# --- modular cuts -------------------------------------------------------------

@dataclass(frozen=True)
class ModularCut:
    flats: tuple[int, ...]  # masks, sorted

    def labels(self, m: Matroid) -> list[list[str]]:
        return [m.ordered(f) for f in self.flats]


def is_modular_cut(m: Matroid, flats: Iterable[int]) -> bool:
    cut = set(flats)
    all_flats = m.flat_masks()
    for f in cut:
        if not m.is_flat_mask(f):
            return False
        for g in all_flats:
            if g & f == f and g not in cut:
                return False
    cl = list(cut)
    for a in cl:
        for b in cl:
            if m.rank_mask(a) + m.rank_mask(b) == m.rank_mask(a | b) + m.rank_mask(a & b) and (a & b) not in cut:
                return False
    return True


def modular_cuts(m: Matroid, guard: int = CUT_GUARD) -> list[ModularCut]:
    """All modular cuts (including the empty one) by propagation over flats in decreasing rank."""
    flats = sorted(m.flat_masks(), key=lambda f: (-m.rank_mask(f), f))
    pos = {f: i for i, f in enumerate(flats)}
    rank = [m.rank_mask(f) for f in flats]
    covers: list[list[int]] = [[] for _ in flats]
    for i, f in enumerate(flats):
        for j, g in enumerate(flats):
            if rank[j] == rank[i] + 1 and g & f == f:
                covers[i].append(j)
    # pairs[k]: modular pairs (i, j) of incomparable flats meeting in flats[k]
    pairs: list[list[tuple[int, int]]] = [[] for _ in flats]
    for i in range(len(flats)):
        for j in range(i + 1, len(flats)):
            a, b = flats[i], flats[j]
            x = a & b
            if x == a or x == b:
                continue
            if rank[i] + rank[j] == m.rank_mask(a | b) + m.rank_mask(x):
                pairs[pos[x]].append((i, j))
    state = [0] * len(flats)  # 1 in, -1 out
    out: list[ModularCut] = []
    visited = 0

    def rec(k: int):
        nonlocal visited
        visited += 1
        if visited > guard:
            raise GuardExceeded(f"modular-cut search exceeded {guard} states")
        if k == len(flats):
            out.append(ModularCut(tuple(sorted(flats[i] for i in range(len(flats)) if state[i] == 1))))
            return
        must_out = any(state[j] == -1 for j in covers[k])
        must_in = any(state[i] == 1 and state[j] == 1 for i, j in pairs[k])
        if must_out and must_in:
            return
        options = (-1,) if must_out else (1,) if must_in else (-1, 1)
        for v in options:
            state[k] = v
            rec(k + 1)
        state[k] = 0

    rec(0)
    out.sort(key=lambda c: (len(c.flats), c.flats))
    return out


def extend_by_cut(m: Matroid, cut: ModularCut | Iterable[int], label: str = "e", name: str | None = None) -> TableMatroid:
    """Single-element extension: r(X + e) = r(X) if cl(X) is in the cut, else r(X) + 1."""
    flats = cut.flats if isinstance(cut, ModularCut) else tuple(cut)
    if str(label) in m.index:
        raise MatroidError(f"label {label!r} already used")
    n = m.n
    if n + 1 > TABLE_LIMIT:
        raise MatroidError("extension too large for a rank table")
    t = m.table.astype(np.int16)
    big = np.iinfo(np.int16).max
    g = np.full(1 << n, big, dtype=np.int16)
    for f in flats:
        g[f] = t[f]
    _superset_min(g, n)
    spanned = g == t
    top = t + np.where(spanned, 0, 1).astype(np.int16)
    return TableMatroid(list(m.labels) + [str(label)], np.concatenate([t, top]).astype(np.uint8), name=name)


def extensions(m: Matroid, label: str = "e", guard: int = CUT_GUARD) -> list[TableMatroid]:
    return [extend_by_cut(m, c, label) for c in modular_cuts(m, guard)]


def coextensions(m: Matroid, label: str = "e", guard: int = CUT_GUARD) -> list[Matroid]:
    return [x.dual() for x in extensions(m.dual(), label, guard)]


def three_connected_only(ms: Iterable[Matroid]) -> list[Matroid]:
    from .connectivity import is_three_connected

    return [x for x in ms if x.is_simple() and x.is_cosimple() and is_three_connected(x)]


# --- linear extensions --------------------------------------------------------

def _normalized_vectors(f: SmallField, length: int, include_zero: bool = True) -> list[tuple[int, ...]]:
    """One representative per nonzero scalar class (leading nonzero entry 1)."""
    out = [tuple([0] * length)] if include_zero else []
    for v in product(range(f.q), repeat=length):
        nz = next((x for x in v if x), None)
        if nz == 1:
            out.append(v)
    return out


def _reduce_mod_rows(f: SmallField, v: Sequence[int], rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Canonical representative of v + rowspace, normalised up to scaling."""
    # reduced row echelon form of rows
    basis: list[list[int]] = []
    pivots: list[int] = []
    for r in rows:
        r = list(r)
        for p, b in zip(pivots, basis):
            if r[p]:
                c = f.neg(r[p])
                r = [f.add(x, f.mul(c, y)) for x, y in zip(r, b)]
        p = next((i for i, x in enumerate(r) if x), None)
        if p is None:
            continue
        s = f.inv(r[p])
        r = [f.mul(s, x) for x in r]
        for k, b in enumerate(basis):
            if b[p]:
                c = f.neg(b[p])
                basis[k] = [f.add(x, f.mul(c, y)) for x, y in zip(b, r)]
        basis.append(r)
        pivots.append(p)
    v = list(v)
    for p, b in zip(pivots, basis):
        if v[p]:
            c = f.neg(v[p])
            v = [f.add(x, f.mul(c, y)) for x, y in zip(v, b)]
    nz = next((x for x in v if x), None)
    if nz:
        s = f.inv(nz)
        v = [f.mul(s, x) for x in v]
    return tuple(v)


def appended_column(rep: LinearMatroid, col: Sequence, label: str = "e") -> LinearMatroid:
    f = rep.field
    rows = [list(r) + [f.parse(c) if isinstance(c, str) else int(c) % f.q if f.prime else int(c)] for r, c in zip(rep.rows, col)]
    return LinearMatroid(f, rows, list(rep.labels) + [str(label)])


def appended_row(rep: LinearMatroid, row: Sequence, label: str = "e") -> LinearMatroid:
    """[[1, v], [0, B]]: the new element is the first column of the top row."""
    f = rep.field
    v = [f.parse(c) if isinstance(c, str) else int(c) % f.q if f.prime else int(c) for c in row]
    rows = [list(v) + [1]] + [list(r) + [0] for r in rep.rows]
    return LinearMatroid(f, rows, list(rep.labels) + [str(label)])


@dataclass(frozen=True)
class LinearExtensions:
    raw: int  # vectors tried
    vectors: tuple[tuple[int, ...], ...]  # one per distinct result
    matroids: tuple[LinearMatroid, ...]


def linear_row_extensions(rep: LinearMatroid, side: str = "row", label: str = "e") -> LinearExtensions:
    """Append one row (coextension) or one column (extension) in every possible way.

    Columns are taken up to scaling.  Rows are taken modulo the row space of
    the matrix and up to scaling, which gives the same matroid; ``raw`` still
    counts every vector over the field.
    """
    f = rep.field
    if side == "column":
        vecs = _normalized_vectors(f, len(rep.rows))
        mats = tuple(appended_column(rep, v, label) for v in vecs)
        return LinearExtensions(f.q ** len(rep.rows), tuple(vecs), mats)
    if side != "row":
        raise ValueError("side must be 'row' or 'column'")
    seen: dict[tuple[int, ...], None] = {}
    raw = 0
    for v in product(range(f.q), repeat=rep.n):
        raw += 1
        seen.setdefault(_reduce_mod_rows(f, v, rep.rows), None)
    vecs = sorted(seen)
    return LinearExtensions(raw, tuple(vecs), tuple(appended_row(rep, v, label) for v in vecs))


# --- representability -------------------------------------------------------

def representation(m: Matroid, field: SmallField | int | str) -> LinearMatroid | None:
    """A representation of M over a small field, or None if there is none.

    Uses a standard form [I | A] for the lexicographically first basis.
    A's zero pattern is fixed by the fundamental circuits.  Entries on a
    spanning forest of its support graph are scaled to 1, and the remaining
    entries are found by backtracking with rank checks after each column.
    """
    f = field if isinstance(field, SmallField) else get_field(field)
    r = m.rank()
    if r == 0:
        return LinearMatroid(f, [[0] * m.n], m.labels, name=m.name)
    basis = next(b for b in sorted(m.basis_masks(), key=lambda b: bits(b)))
    bidx = bits(basis)
    others = [i for i in range(m.n) if not basis >> i & 1]
    # support: A[i][j] != 0 iff basis element i is in the fundamental circuit of column j
    support = []
    for j in others:
        col = []
        for i in bidx:
            col.append(m.rank_mask((basis & ~(1 << i)) | (1 << j)) == r)
        support.append(col)
    # spanning forest of the bipartite support graph (rows 0..r-1, columns r..)
    parent = list(range(r + len(others)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    fixed = set()
    for jj in range(len(others)):
        for i in range(r):
            if support[jj][i]:
                a, b = find(i), find(r + jj)
                if a != b:
                    parent[a] = b
                    fixed.add((i, jj))
    order = bidx + others
    nonzero = list(range(1, f.q))
    cols: list[list[int]] = []

    def consistent(k: int) -> bool:
        # compare ranks of all subsets that include the newest column
        labs = [m.labels[x] for x in bidx + others[: k + 1]]
        lm = LinearMatroid(f, _matrix(r, cols), labs)
        host = m.restrict(labs).reorder(labs)
        t1, t2 = lm.table, host.table
        half = 1 << (len(labs) - 1)
        return bool(np.array_equal(t1[half:], t2[half:]))

    def rec(k: int):
        if k == len(others):
            return True
        free = [i for i in range(r) if support[k][i] and (i, k) not in fixed]
        base = [1 if support[k][i] else 0 for i in range(r)]
        for vals in product(nonzero, repeat=len(free)):
            col = list(base)
            for i, v in zip(free, vals):
                col[i] = v
            cols.append(col)
            if consistent(k) and rec(k + 1):
                return True
            cols.pop()
        return False

    if not rec(0):
        return None
    rows = _matrix(r, cols)
    where = [order.index(i) for i in range(m.n)]
    out = LinearMatroid(f, [[row[w] for w in where] for row in rows], m.labels, name=m.name)
    if not out.same_as(m):
        raise AssertionError("representation check failed")
    return out


def _matrix(r: int, cols: list[list[int]]) -> list[list[int]]:
    return [[1 if j == i else 0 for j in range(r)] + [c[i] for c in cols] for i in range(r)]


def is_representable(m: Matroid, field) -> bool:
    return representation(m, field) is not None
