"""Rank-preserving maps between matroids.

Everything here is built on one backtracking search, :class:`Embedder`, which
looks for injective maps from the ground set of a pattern ``N`` into a host
``M`` contracted by a fixed independent set ``C`` such that every subset keeps
its rank.  With ``C`` empty and equal sizes this is isomorphism testing; with
the pattern equal to the host it enumerates automorphisms; with a proper
contraction and a larger host it is the inner loop of minor containment
(the unused host elements are the deleted ones).

A map is accepted element by element.  When pattern element ``e_i`` is placed
on host element ``y`` we compare ``r(X + e_i)`` with ``r(phi(X) + y)`` for
every independent ``X`` among the already-placed elements with
``|X| <= r(N)``.  Together these comparisons pin down the independent sets,
hence the whole rank function.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .matroid import Matroid, MatroidError, bits, popcount


@dataclass(frozen=True)
class IsoMap:
    """Bijection between two ground sets, stored as sorted label pairs."""

    pairs: tuple[tuple[str, str], ...]

    @classmethod
    def from_dict(cls, d: dict) -> "IsoMap":
        return cls(tuple((str(k), str(v)) for k, v in d.items()))

    def as_dict(self) -> dict[str, str]:
        return dict(self.pairs)

    def to_json(self) -> list[list[str]]:
        return [list(p) for p in self.pairs]

    def __getitem__(self, key) -> str:
        return self.as_dict()[str(key)]

    def inverse(self) -> "IsoMap":
        return IsoMap(tuple((v, k) for k, v in self.pairs))

    def compose(self, other: "IsoMap") -> "IsoMap":
        """``other`` after ``self``."""
        o = other.as_dict()
        return IsoMap(tuple((k, o[v]) for k, v in self.pairs))


def parse_cycles(text: str, ground: Sequence[str]) -> dict[str, str]:
    """Permutation from cycle notation such as ``(1)(2,4)(3,7)``."""
    perm = {str(x): str(x) for x in ground}
    for chunk in text.replace(" ", "").split(")"):
        chunk = chunk.lstrip("(")
        if not chunk:
            continue
        cyc = chunk.split(",")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if a not in perm:
                raise MatroidError(f"{a!r} not in ground set")
            perm[a] = b
    if sorted(perm.values()) != sorted(perm):
        raise MatroidError(f"{text!r} is not a permutation")
    return perm


def verify_map(m: Matroid, n: Matroid, phi: dict) -> bool:
    """True iff ``phi`` is a bijection E(M) -> E(N) with r_M(X) = r_N(phi(X)) for all X."""
    phi = {str(k): str(v) for k, v in phi.items()}
    if set(phi) != set(m.labels) or set(phi.values()) != set(n.labels) or len(phi) != m.n:
        return False
    return m.relabel(phi).same_as(n)


def element_colors(m: Matroid) -> list[tuple]:
    """Isomorphism-invariant colour per element.

    Combines the sizes of the hyperplanes and cohyperplanes through the
    element with the number of small circuits and cocircuits containing it.
    """
    key = "colors"
    if key in m._cache:
        return m._cache[key]
    d = m.dual()
    r, rd = m.rank(), d.rank()
    hyp = m.flat_masks(r - 1) if r > 0 else []
    cohyp = d.flat_masks(rd - 1) if rd > 0 else []
    circ = m.circuit_masks(4)
    cocirc = d.circuit_masks(4)
    colors = []
    for i in range(m.n):
        b = 1 << i
        colors.append((
            tuple(sorted(popcount(h) for h in hyp if h & b)),
            tuple(sorted(popcount(h) for h in cohyp if h & b)),
            tuple(sum(1 for c in circ if c & b and popcount(c) == k) for k in range(1, 5)),
            tuple(sum(1 for c in cocirc if c & b and popcount(c) == k) for k in range(1, 5)),
        ))
    m._cache[key] = colors
    return colors


def matroid_invariant(m: Matroid) -> tuple:
    key = "invariant"
    if key not in m._cache:
        m._cache[key] = (m.n, m.rank(), len(m.basis_masks()), tuple(sorted(element_colors(m))))
    return m._cache[key]


class Embedder:
    """Backtracking search for rank-preserving injections of a pattern.

    ``symmetry`` may be a list of automorphisms of the pattern (as tuples of
    pattern indices); the search then only reports one embedding per orbit
    of the pattern's automorphism group, using stabiliser-chain ordering
    constraints.  ``colors`` restricts each pattern element to host elements
    carrying the same colour.
    """

    def __init__(self, pattern: Matroid, symmetry: list[tuple[int, ...]] | None = None):
        self.pattern = pattern
        m = pattern.n
        self.m = m
        self.r = pattern.rank()
        self.order = self._element_order()
        pos = {e: i for i, e in enumerate(self.order)}
        rk = pattern.rk if m else [0]
        # checks[i]: (prefix subset in step space, expected rank of X + e_i)
        self.checks: list[list[tuple[int, int]]] = []
        for i in range(m):
            new_bit = 1 << self.order[i]
            rows = []
            for size in range(0, min(i, self.r) + 1):
                for combo in combinations(range(i), size):
                    s = 0
                    pm = 0
                    for j in combo:
                        s |= 1 << j
                        pm |= 1 << self.order[j]
                    if rk[pm] != size:
                        continue
                    rows.append((s, rk[pm | new_bit], size))
            # dependent extensions prune hardest; test them first
            rows.sort(key=lambda t: (t[1] != t[2], t[2]))
            self.checks.append([(s, e) for s, e, _ in rows])
        self.lower: list[list[int]] = [[] for _ in range(m)]
        if symmetry:
            group = [tuple(g) for g in symmetry]
            for i in range(m):
                e = self.order[i]
                orbit = {g[e] for g in group}
                for f in orbit:
                    if f != e:
                        self.lower[pos[f]].append(i)
                group = [g for g in group if g[e] == e]

    def _element_order(self) -> list[int]:
        p = self.pattern
        m = p.n
        if m == 0:
            return []
        circ = p.circuit_masks(p.rank() + 1)
        order: list[int] = []
        placed = 0
        remaining = list(range(m))
        while remaining:
            best = None
            for e in remaining:
                b = 1 << e
                closed = sum(1 for c in circ if c & b and not c & ~(placed | b))
                touching = sum(popcount(c & placed) for c in circ if c & b)
                score = (closed, touching, -e)
                if best is None or score > best[0]:
                    best = (score, e)
            e = best[1]
            order.append(e)
            placed |= 1 << e
            remaining.remove(e)
        return order

    def search(
        self,
        host: Matroid,
        contract: int = 0,
        candidates: Sequence[Sequence[int]] | None = None,
    ) -> Iterator[tuple[int, ...]]:
        """Yield embeddings as tuples ``img`` with ``img[pattern index] = host index``."""
        m = self.m
        rk = host.rk
        k = host.rank_mask(contract)
        pool = [i for i in range(host.n) if not contract >> i & 1]
        if candidates is None:
            cand = [pool] * m
        else:
            cand = [[y for y in candidates[self.order[i]] if not contract >> y & 1] for i in range(m)]
        checks = [[(s, e + k) for s, e in row] for row in self.checks]
        lower = self.lower
        sub = [contract]
        img = [0] * m
        used = 0
        order = self.order

        def rec(i: int):
            nonlocal used
            if i == m:
                out = [0] * m
                for j in range(m):
                    out[order[j]] = img[j]
                yield tuple(out)
                return
            lo = max((img[j] for j in lower[i]), default=-1)
            row = checks[i]
            for y in cand[i]:
                if y <= lo or used >> y & 1:
                    continue
                yb = 1 << y
                ok = True
                for s, e in row:
                    if rk[sub[s] | yb] != e:
                        ok = False
                        break
                if not ok:
                    continue
                img[i] = y
                used |= yb
                size = len(sub)
                sub.extend([x | yb for x in sub])
                yield from rec(i + 1)
                del sub[size:]
                used ^= yb

        yield from rec(0)


def _embedder(pattern: Matroid, symmetric: bool = False) -> Embedder:
    key = ("embedder", symmetric)
    if key not in pattern._cache:
        sym = [tuple(g) for g in automorphism_indices(pattern)] if symmetric else None
        pattern._cache[key] = Embedder(pattern, sym)
    return pattern._cache[key]


def _color_candidates(a: Matroid, b: Matroid) -> list[list[int]] | None:
    ca, cb = element_colors(a), element_colors(b)
    if sorted(ca) != sorted(cb):
        return None
    by_color: dict = {}
    for y, c in enumerate(cb):
        by_color.setdefault(c, []).append(y)
    return [by_color[c] for c in ca]


def isomorphism(m: Matroid, n: Matroid) -> IsoMap | None:
    """An isomorphism from M to N, or None.  Deterministic."""
    if m.n != n.n or m.rank() != n.rank():
        return None
    if matroid_invariant(m) != matroid_invariant(n):
        return None
    cand = _color_candidates(m, n)
    if cand is None:
        return None
    for img in _embedder(m).search(n, 0, cand):
        return IsoMap(tuple((m.labels[i], n.labels[img[i]]) for i in range(m.n)))
    return None


def is_isomorphic(m: Matroid, n: Matroid) -> bool:
    return isomorphism(m, n) is not None


def automorphism_indices(m: Matroid, max_elements: int = 12) -> list[tuple[int, ...]]:
    if m.n > max_elements:
        raise MatroidError(f"automorphism enumeration capped at {max_elements} elements")
    key = "automorphisms"
    if key not in m._cache:
        cand = _color_candidates(m, m)
        m._cache[key] = sorted(_embedder(m).search(m, 0, cand))
    return m._cache[key]


def automorphisms(m: Matroid, max_elements: int = 12) -> list[IsoMap]:
    """All automorphisms, identity first."""
    out = []
    for img in automorphism_indices(m, max_elements):
        out.append(IsoMap(tuple((m.labels[i], m.labels[img[i]]) for i in range(m.n))))
    return out


def orbits(ground: Sequence[str], group: Sequence[dict | IsoMap]) -> list[frozenset[str]]:
    """Orbits of the group generated by ``group`` on ``ground``."""
    parent = {str(x): str(x) for x in ground}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in group:
        d = g.as_dict() if isinstance(g, IsoMap) else {str(k): str(v) for k, v in g.items()}
        for a, b in d.items():
            if a in parent and b in parent:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    classes: dict[str, set] = {}
    for x in parent:
        classes.setdefault(find(x), set()).add(x)
    return sorted((frozenset(c) for c in classes.values()), key=lambda c: sorted(c))


def is_transitive_on(group: Sequence[dict | IsoMap], subset: Sequence[str]) -> bool:
    """True iff ``subset`` is a single orbit of the group generated by ``group``.

    Generators must map ``subset`` into itself.
    """
    subset = [str(x) for x in subset]
    s = set(subset)
    for g in group:
        d = g.as_dict() if isinstance(g, IsoMap) else {str(k): str(v) for k, v in g.items()}
        if any(d.get(x, x) not in s for x in subset):
            return False
    return len(orbits(subset, group)) == 1


def stabilizer(group: Sequence[IsoMap], fixed: Sequence[str]) -> list[IsoMap]:
    fixed = [str(x) for x in fixed]
    return [g for g in group if all(g[x] == x for x in fixed)]
