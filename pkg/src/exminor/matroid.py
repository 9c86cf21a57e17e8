"""Matroid values over labelled ground sets with a memoised rank oracle.

Subsets are bitmasks over ground-set indices.  For ground sets up to
``TABLE_LIMIT`` elements the whole rank function is materialised once as a
numpy table (one byte per subset); every structural algorithm in the package
works off that table.  Larger ground sets (up to 31 elements) fall back to
per-query evaluation with a memo dict.

Minors keep the labels of the elements that survive.
"""

from __future__ import annotations

import threading
from itertools import combinations
from typing import Callable, Iterable

import numpy as np

from .fields import SmallField, get_field, matrix_rank

MAX_ELEMENTS = 31
TABLE_LIMIT = 22


class MatroidError(ValueError):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


def label_key(label: str):
    """Sort key putting numeric labels in numeric order ahead of the rest."""
    return (0, int(label), "") if label.isdigit() else (1, 0, label)


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.uint8)
    for b in range(n):
        v = pc.reshape(-1, 2, 1 << b)
        v[:, 1, :] += 1
    return pc


def _subset_max(t: np.ndarray, n: int) -> None:
    # t[X] <- max over subsets Y of X of t[Y], in place
    for b in range(n):
        v = t.reshape(-1, 2, 1 << b)
        np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])


def _superset_or(t: np.ndarray, n: int) -> None:
    # t[X] <- any superset Y of X has t[Y], in place
    for b in range(n):
        v = t.reshape(-1, 2, 1 << b)
        np.logical_or(v[:, 0, :], v[:, 1, :], out=v[:, 0, :])


def table_from_independent(indep: np.ndarray, n: int) -> np.ndarray:
    """Rank table from a boolean independence indicator (must be hereditary)."""
    t = _popcounts(n) * indep.astype(np.uint8)
    _subset_max(t, n)
    return t


def expansion(positions: list[int]) -> np.ndarray:
    """Array mapping a mask over ``positions`` to the corresponding parent mask."""
    exp = np.zeros(1, dtype=np.int64)
    for p in positions:
        exp = np.concatenate([exp, exp | (1 << p)])
    return exp


class Matroid:
    """Abstract rank-oracle matroid.  Subclasses implement ``_rank``."""

    kind = "oracle"

    def __init__(self, labels: Iterable, name: str | None = None):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise MatroidError(f"duplicate labels in {labels}")
        if len(labels) > MAX_ELEMENTS:
            raise MatroidError(f"ground set of {len(labels)} elements exceeds {MAX_ELEMENTS}")
        self.labels = labels
        self.n = len(labels)
        self.index = {lab: i for i, lab in enumerate(labels)}
        self.full = (1 << self.n) - 1
        self.name = name
        self._table: np.ndarray | None = None
        self._list: list[int] | None = None
        self._memo: dict[int, int] = {}
        self._lock = threading.Lock()
        self._cache: dict = {}
        self.meta: dict = {}

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_lock"] = None
        state["_list"] = None
        state["_cache"] = {}
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        nm = f"{self.name}: " if self.name else ""
        return f"<{type(self).__name__} {nm}rank {self.rank()} on {self.n} elements>"

    # --- subsets -------------------------------------------------------
    def mask(self, items: Iterable | int | str | None) -> int:
        if items is None:
            return 0
        if isinstance(items, (str, int)):
            items = [items]
        m = 0
        for x in items:
            try:
                m |= 1 << self.index[str(x)]
            except KeyError:
                raise MatroidError(f"{x!r} is not an element of the ground set") from None
        return m

    def subset(self, mask: int) -> frozenset[str]:
        return frozenset(self.labels[i] for i in bits(mask))

    def ordered(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    @property
    def ground(self) -> frozenset[str]:
        return frozenset(self.labels)

    # --- rank ------------------------------------------------------------
    def _rank(self, mask: int) -> int:
        raise NotImplementedError

    def _build_table(self) -> np.ndarray:
        t = np.zeros(1 << self.n, dtype=np.uint8)
        for m in range(1 << self.n):
            t[m] = self._rank(m)
        return t

    @property
    def table(self) -> np.ndarray:
        """Rank of every subset, indexed by mask."""
        if self._table is None:
            if self.n > TABLE_LIMIT:
                raise MatroidError(f"rank table unavailable for {self.n} elements")
            with self._lock:
                if self._table is None:
                    t = self._build_table()
                    t.setflags(write=False)
                    self._table = t
        return self._table

    @property
    def rk(self) -> list[int]:
        """Rank table as a plain list (fast scalar indexing)."""
        if self._list is None:
            self._list = self.table.tolist()
        return self._list

    def rank_mask(self, mask: int) -> int:
        if self._table is not None:
            return int(self._table[mask])
        if self.n <= TABLE_LIMIT:
            return int(self.table[mask])
        r = self._memo.get(mask)
        if r is None:
            r = self._rank(mask)
            self._memo[mask] = r
        return r

    def rank(self, items=None) -> int:
        if items is None:
            return self.rank_mask(self.full)
        return self.rank_mask(self.mask(items))

    def corank_mask(self, mask: int) -> int:
        return popcount(mask) - self.rank_mask(self.full) + self.rank_mask(self.full ^ mask)

    def is_independent_mask(self, mask: int) -> bool:
        return self.rank_mask(mask) == popcount(mask)

    def is_independent(self, items) -> bool:
        return self.is_independent_mask(self.mask(items))

    # --- derived matroids ------------------------------------------------
    def dual(self) -> "Matroid":
        name = _dual_name(self.name)
        if self.n <= TABLE_LIMIT:
            t = self.table.astype(np.int16)
            pc = _popcounts(self.n).astype(np.int16)
            rE = int(t[self.full])
            dt = pc - rE + t[::-1]  # index full ^ X == full - X
            return TableMatroid(self.labels, dt.astype(np.uint8), name=name)
        return OracleMatroid(self.labels, self.corank_mask, name=name)

    def minor_mask(self, contract: int = 0, delete: int = 0) -> "Matroid":
        if contract & delete:
            raise MatroidError("contract and delete sets overlap")
        if (contract | delete) & ~self.full:
            raise MatroidError("minor sets are not inside the ground set")
        keep = self.full & ~(contract | delete)
        positions = bits(keep)
        labels = [self.labels[i] for i in positions]
        rc = self.rank_mask(contract)
        if len(positions) <= TABLE_LIMIT and self.n <= TABLE_LIMIT:
            exp = expansion(positions)
            t = self.table[exp | contract].astype(np.int16) - rc
            return TableMatroid(labels, t.astype(np.uint8))
        parent = self

        def fn(m: int) -> int:
            x = 0
            for j, p in enumerate(positions):
                if m >> j & 1:
                    x |= 1 << p
            return parent.rank_mask(x | contract) - rc

        return OracleMatroid(labels, fn)

    def minor(self, contract=(), delete=()) -> "Matroid":
        return self.minor_mask(self.mask(contract), self.mask(delete))

    def delete(self, items) -> "Matroid":
        return self.minor_mask(0, self.mask(items))

    def contract(self, items) -> "Matroid":
        return self.minor_mask(self.mask(items), 0)

    def restrict(self, items) -> "Matroid":
        return self.minor_mask(0, self.full & ~self.mask(items))

    def relabel(self, mapping: dict) -> "Matroid":
        mapping = {str(k): str(v) for k, v in mapping.items()}
        labels = [mapping.get(x, x) for x in self.labels]
        return TableMatroid(labels, self.table, name=self.name)

    def reorder(self, labels: Iterable) -> "Matroid":
        """Same matroid with the ground set listed in a different order."""
        labels = [str(x) for x in labels]
        if sorted(labels) != sorted(self.labels):
            raise MatroidError("reorder needs a permutation of the ground set")
        positions = [self.index[x] for x in labels]
        return TableMatroid(labels, self.table[expansion(positions)], name=self.name)

    def same_as(self, other: "Matroid") -> bool:
        """Labelled equality: same ground set and same rank on every subset."""
        if set(self.labels) != set(other.labels):
            return False
        if self.n <= TABLE_LIMIT:
            o = other.reorder(self.labels)
            return bool(np.array_equal(self.table, o.table))
        return all(
            self.rank_mask(m) == other.rank_mask(other.mask(self.subset(m))) for m in range(1 << self.n)
        )

    # --- closure ---------------------------------------------------------
    def cl_mask(self, mask: int) -> int:
        rk = self.rank_mask
        r = rk(mask)
        out = mask
        for i in range(self.n):
            b = 1 << i
            if not mask & b and rk(mask | b) == r:
                out |= b
        return out

    def cocl_mask(self, mask: int) -> int:
        out = mask
        rX = self.corank_mask(mask)
        for i in range(self.n):
            b = 1 << i
            if not mask & b and self.corank_mask(mask | b) == rX:
                out |= b
        return out

    def fcl_mask(self, mask: int) -> int:
        while True:
            nxt = self.cocl_mask(self.cl_mask(mask))
            if nxt == mask:
                return mask
            mask = nxt

    def closure(self, items) -> frozenset[str]:
        return self.subset(self.cl_mask(self.mask(items)))

    def coclosure(self, items) -> frozenset[str]:
        return self.subset(self.cocl_mask(self.mask(items)))

    def full_closure(self, items) -> frozenset[str]:
        """Least set containing ``items`` closed in both M and its dual."""
        return self.subset(self.fcl_mask(self.mask(items)))

    # --- circuits, flats, bases -------------------------------------------
    def circuit_masks(self, max_size: int | None = None) -> list[int]:
        """Minimal dependent sets of size at most ``max_size``, by size then mask."""
        k = self.n if max_size is None else min(max_size, self.n)
        key = ("circuits", k)
        if key in self._cache:
            return self._cache[key]
        rk = self.rank_mask
        out = []
        for size in range(1, k + 1):
            for combo in combinations(range(self.n), size):
                m = 0
                for i in combo:
                    m |= 1 << i
                if rk(m) == size - 1 and all(rk(m & ~(1 << i)) == size - 1 for i in combo):
                    out.append(m)
        self._cache[key] = out
        return out

    def circuits(self, max_size: int | None = None) -> set[frozenset[str]]:
        return {self.subset(m) for m in self.circuit_masks(max_size)}

    def circuits_up_to(self, k: int) -> set[frozenset[str]]:
        if k > self.n:
            raise MatroidError(f"k={k} exceeds ground set size {self.n}")
        return self.circuits(k)

    def triangle_masks(self) -> list[int]:
        return [m for m in self.circuit_masks(3) if popcount(m) == 3]

    def triad_masks(self) -> list[int]:
        if "triads" not in self._cache:
            self._cache["triads"] = self.dual().triangle_masks()
        return self._cache["triads"]

    def triangles(self) -> set[frozenset[str]]:
        return {self.subset(m) for m in self.triangle_masks()}

    def triads(self) -> set[frozenset[str]]:
        return {self.subset(m) for m in self.triad_masks()}

    def is_circuit_mask(self, mask: int) -> bool:
        k = popcount(mask)
        if k == 0 or self.rank_mask(mask) != k - 1:
            return False
        return all(self.rank_mask(mask & ~(1 << i)) == k - 1 for i in bits(mask))

    def is_flat_mask(self, mask: int) -> bool:
        return self.cl_mask(mask) == mask

    def is_hyperplane_mask(self, mask: int) -> bool:
        return self.is_flat_mask(mask) and self.rank_mask(mask) == self.rank() - 1

    def flat_masks(self, k: int | None = None) -> list[int]:
        """All flats (of rank ``k`` if given), sorted by rank then mask."""
        if "flats" not in self._cache:
            if self.n <= TABLE_LIMIT:
                flats = self._all_flats_fast()
            else:
                flats = sorted({self.cl_mask(m) for m in range(1 << self.n)})
            flats.sort(key=lambda m: (self.rank_mask(m), m))
            self._cache["flats"] = flats
        flats = self._cache["flats"]
        if k is None:
            return list(flats)
        if not 0 <= k <= self.rank():
            raise MatroidError(f"no flats of rank {k}")
        return [m for m in flats if self.rank_mask(m) == k]

    def _all_flats_fast(self) -> list[int]:
        # X is a flat iff r(X + e) > r(X) for every e outside X
        t = self.table.astype(np.int16)
        idx = np.arange(1 << self.n, dtype=np.int64)
        ok = np.ones(1 << self.n, dtype=bool)
        for i in range(self.n):
            b = 1 << i
            outside = (idx & b) == 0
            ok &= ~outside | (t[idx | b] > t)
        return [int(m) for m in np.nonzero(ok)[0]]

    def flats(self, k: int | None = None) -> set[frozenset[str]]:
        return {self.subset(m) for m in self.flat_masks(k)}

    def hyperplanes(self) -> set[frozenset[str]]:
        return self.flats(self.rank() - 1)

    def basis_masks(self) -> list[int]:
        r = self.rank()
        if self.n <= TABLE_LIMIT:
            t = self.table
            pc = _popcounts(self.n)
            return [int(m) for m in np.nonzero((t == r) & (pc == r))[0]]
        out = []
        for combo in combinations(range(self.n), r):
            m = sum(1 << i for i in combo)
            if self.rank_mask(m) == r:
                out.append(m)
        return out

    def bases(self) -> set[frozenset[str]]:
        return {self.subset(m) for m in self.basis_masks()}

    # --- simple / cosimple ------------------------------------------------
    def loops_mask(self) -> int:
        return sum(1 << i for i in range(self.n) if self.rank_mask(1 << i) == 0)

    def coloops_mask(self) -> int:
        return sum(1 << i for i in range(self.n) if self.corank_mask(1 << i) == 0)

    def parallel_classes(self) -> list[int]:
        """Parallel classes of non-loops, each as a mask, ordered by least element."""
        loops = self.loops_mask()
        seen = loops
        classes = []
        for i in range(self.n):
            b = 1 << i
            if seen & b:
                continue
            cls = b
            for j in range(i + 1, self.n):
                c = 1 << j
                if not seen & c and self.rank_mask(b | c) == 1:
                    cls |= c
            seen |= cls
            classes.append(cls)
        return classes

    def is_simple(self) -> bool:
        return self.loops_mask() == 0 and all(popcount(c) == 1 for c in self.parallel_classes())

    def is_cosimple(self) -> bool:
        return self.dual().is_simple()

    def simplify(self) -> "Matroid":
        """Delete loops and all but the least label of each parallel class."""
        keep = 0
        for cls in self.parallel_classes():
            keep |= 1 << self.index[min((self.labels[i] for i in bits(cls)), key=label_key)]
        return self.minor_mask(0, self.full & ~keep)

    def cosimplify(self) -> "Matroid":
        return self.dual().simplify().dual()

    # --- relaxation ------------------------------------------------------
    def relax(self, items) -> "BasisMatroid":
        """Relax a circuit-hyperplane into a basis."""
        m = self.mask(items)
        if not (self.is_circuit_mask(m) and self.is_hyperplane_mask(m)):
            raise MatroidError(f"{sorted(self.subset(m))} is not a circuit-hyperplane")
        name = f"{self.name}-relaxed" if self.name else None
        return BasisMatroid(self.labels, self.basis_masks() + [m], name=name)

    def circuit_hyperplane_masks(self) -> list[int]:
        r = self.rank()
        return [m for m in self.flat_masks(r - 1) if popcount(m) == r and self.is_circuit_mask(m)]


relax_circuit_hyperplane = Matroid.relax


def _dual_name(name: str | None) -> str | None:
    if not name:
        return None
    return name[:-1] if name.endswith("*") else name + "*"


class TableMatroid(Matroid):
    """Matroid given by an explicit rank table."""

    kind = "table"

    def __init__(self, labels, table: np.ndarray, name: str | None = None):
        super().__init__(labels, name)
        t = np.asarray(table, dtype=np.uint8)
        if t.shape != (1 << self.n,):
            raise MatroidError("rank table has the wrong length")
        if not t.flags.writeable:
            self._table = t
        else:
            t = t.copy()
            t.setflags(write=False)
            self._table = t

    def _rank(self, mask: int) -> int:
        return int(self._table[mask])


class OracleMatroid(Matroid):
    """Matroid backed by an arbitrary rank function on masks."""

    def __init__(self, labels, fn: Callable[[int], int], name: str | None = None):
        super().__init__(labels, name)
        self._fn = fn

    def _rank(self, mask: int) -> int:
        return self._fn(mask)


class BasisMatroid(Matroid):
    """Matroid given by its list of bases (as masks)."""

    kind = "bases"

    def __init__(self, labels, bases: Iterable[int], name: str | None = None):
        super().__init__(labels, name)
        bl = sorted(set(int(b) for b in bases))
        if not bl:
            raise MatroidError("a matroid needs at least one basis")
        sizes = {popcount(b) for b in bl}
        if len(sizes) != 1:
            raise MatroidError("bases are not equicardinal")
        if any(b & ~self.full for b in bl):
            raise MatroidError("basis outside the ground set")
        self._bases = bl

    @classmethod
    def from_label_sets(cls, labels, bases: Iterable[Iterable], name=None) -> "BasisMatroid":
        index = {str(x): i for i, x in enumerate(labels)}
        masks = []
        for b in bases:
            m = 0
            for x in b:
                m |= 1 << index[str(x)]
            masks.append(m)
        return cls(labels, masks, name)

    def basis_masks(self) -> list[int]:
        return list(self._bases)

    def _rank(self, mask: int) -> int:
        return max(popcount(b & mask) for b in self._bases)

    def _build_table(self) -> np.ndarray:
        ind = np.zeros(1 << self.n, dtype=bool)
        ind[np.array(self._bases, dtype=np.int64)] = True
        _superset_or(ind, self.n)
        return table_from_independent(ind, self.n)


class UniformMatroid(Matroid):
    kind = "uniform"

    def __init__(self, r: int, n: int, labels=None, name: str | None = None):
        if not 0 <= r <= n:
            raise MatroidError(f"U({r},{n}) needs 0 <= r <= n")
        super().__init__(labels if labels is not None else range(1, n + 1), name or f"U{r},{n}")
        self.r = r

    def _rank(self, mask: int) -> int:
        return min(popcount(mask), self.r)

    def _build_table(self) -> np.ndarray:
        return np.minimum(_popcounts(self.n), self.r).astype(np.uint8)


class LinearMatroid(Matroid):
    """Column matroid of a matrix over one of the small fields."""

    kind = "linear"

    def __init__(self, field: SmallField | str | int, rows, labels=None, name: str | None = None):
        field = field if isinstance(field, SmallField) else get_field(field)
        rows = [[_entry(field, x) for x in row] for row in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise MatroidError("ragged matrix")
        for row in rows:
            for x in row:
                if not 0 <= x < field.q:
                    raise MatroidError(f"entry {x} is not an element of {field.name}")
        super().__init__(labels if labels is not None else range(1, ncols + 1), name)
        if ncols != self.n:
            raise MatroidError(f"{ncols} columns but {self.n} labels")
        self.field = field
        self.rows = [tuple(r) for r in rows]
        self.columns = [tuple(r[j] for r in self.rows) for j in range(ncols)]

    @classmethod
    def standard(cls, field, identity_labels, a_rows, a_labels, name=None) -> "LinearMatroid":
        """The matroid [I | A] with identity columns labelled by the rows of A."""
        f = field if isinstance(field, SmallField) else get_field(field)
        k = len(identity_labels)
        rows = []
        for i, arow in enumerate(a_rows):
            rows.append([1 if j == i else 0 for j in range(k)] + [_entry(f, x) for x in arow])
        return cls(f, rows, list(identity_labels) + list(a_labels), name)

    def _rank(self, mask: int) -> int:
        cols = [self.columns[i] for i in bits(mask)]
        if not cols:
            return 0
        rows = [list(c) for c in zip(*cols)]
        return matrix_rank(self.field, rows)

    def _build_table(self) -> np.ndarray:
        # Walk the independent sets in increasing element order, carrying an
        # echelon basis of their span.
        f = self.field
        mul_t, add_t, neg_t, inv_t = f.mul_table, f.add_table, f.neg_table, f.inv_table
        n = self.n
        ind = np.zeros(1 << n, dtype=bool)
        cols = self.columns

        def reduce(vec, basis):
            v = list(vec)
            for p, b in basis:
                c = v[p]
                if c:
                    nc = neg_t[c]
                    v = [add_t[x][mul_t[nc][y]] for x, y in zip(v, b)]
            return v

        stack = [(0, -1, [])]
        while stack:
            mask, last, basis = stack.pop()
            ind[mask] = True
            for j in range(last + 1, n):
                v = reduce(cols[j], basis)
                p = next((i for i, x in enumerate(v) if x), None)
                if p is None:
                    continue
                s = inv_t[v[p]]
                v = [mul_t[s][x] for x in v]
                stack.append((mask | 1 << j, j, basis + [(p, v)]))
        return table_from_independent(ind, n)


def _entry(field: SmallField, x) -> int:
    if isinstance(x, str):
        return field.parse(x)
    if field.prime:
        return int(x) % field.q
    return int(x)


def from_linear(field, rows, labels=None, name=None) -> LinearMatroid:
    return LinearMatroid(field, rows, labels, name)


def check_rank_axioms(m: Matroid) -> list[str]:
    """Exhaustive rank-axiom scan; returns the list of violations found."""
    t = m.table.astype(np.int16)
    n = m.n
    problems = []
    if t[0] != 0:
        problems.append("r(empty) != 0")
    idx = np.arange(1 << n, dtype=np.int64)
    for i in range(n):
        b = 1 << i
        sel = idx[(idx & b) == 0]
        d = t[sel | b] - t[sel]
        if d.min() < 0 or d.max() > 1:
            problems.append(f"unit increase fails at element {m.labels[i]}")
    # local submodularity: r(X+a)+r(X+b) >= r(X+a+b)+r(X) implies full submodularity
    for i in range(n):
        for j in range(i + 1, n):
            a, b = 1 << i, 1 << j
            sel = idx[(idx & (a | b)) == 0]
            if np.any(t[sel | a] + t[sel | b] < t[sel | a | b] + t[sel]):
                problems.append(f"submodularity fails at {m.labels[i]},{m.labels[j]}")
    return problems


def basis_exchange_holds(m: Matroid) -> bool:
    bases = m.basis_masks()
    bset = set(bases)
    for b1 in bases:
        for b2 in bases:
            for x in bits(b1 & ~b2):
                if not any((b1 & ~(1 << x)) | (1 << y) in bset for y in bits(b2 & ~b1)):
                    return False
    return True
