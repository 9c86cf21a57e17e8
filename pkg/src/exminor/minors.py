"""Minor containment and excluded-minor class membership."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .isomorphism import IsoMap, _embedder
from .matroid import Matroid, bits, popcount


@dataclass(frozen=True)
class MinorWitness:
    """N is isomorphic to M/contract\\delete via ``iso`` (pattern label -> host label)."""

    contract: tuple[str, ...]
    delete: tuple[str, ...]
    iso: IsoMap

    def to_json(self) -> dict:
        return {
            "contract": list(self.contract),
            "delete": list(self.delete),
            "map": [list(p) for p in self.iso.pairs],
        }

    def check(self, host: Matroid, pattern: Matroid) -> bool:
        from .isomorphism import verify_map

        minor = host.minor(self.contract, self.delete)
        return verify_map(pattern, minor, self.iso.as_dict())


def _screen(host: Matroid, pattern: Matroid) -> bool:
    if pattern.n > host.n:
        return False
    if pattern.rank() > host.rank():
        return False
    if pattern.n - pattern.rank() > host.n - host.rank():
        return False
    return True


def _simple_pattern(pattern: Matroid) -> bool:
    if "simple" not in pattern._cache:
        pattern._cache["simple"] = pattern.is_simple()
    return pattern._cache["simple"]


def minor_embeddings(host: Matroid, pattern: Matroid, contract: int, symmetric: bool = True):
    """Embeddings of the pattern into host/contract (host indices per pattern index)."""
    return _embedder(pattern, symmetric).search(host, contract)


def has_minor(host: Matroid, pattern: Matroid) -> MinorWitness | None:
    """Exhaustive minor search.

    Every minor can be written M/C\\D with C independent of size
    r(M) - r(N); for each such C (in lexicographic order of ground-set
    positions) an embedding search looks for a restriction of M/C isomorphic
    to N.  The first hit is returned, so the witness is the one with the
    lexicographically least contraction set.
    """
    if not _screen(host, pattern):
        return None
    k = host.rank() - pattern.rank()
    symmetric = pattern.n <= 10
    emb = _embedder(pattern, symmetric=symmetric)
    simple = _simple_pattern(pattern)
    rk = host.rk
    for combo in combinations(range(host.n), k):
        c = 0
        for i in combo:
            c |= 1 << i
        if rk[c] != k:
            continue
        if simple and not _enough_points(host, c, pattern.n):
            continue
        found = list(emb.search(host, c))
        if not found:
            continue
        img = _least_embedding(host, pattern, c, found, symmetric)
        used = 0
        for y in img:
            used |= 1 << y
        dmask = host.full & ~(c | used)
        iso = IsoMap(tuple((pattern.labels[i], host.labels[img[i]]) for i in range(pattern.n)))
        return MinorWitness(tuple(host.ordered(c)), tuple(host.ordered(dmask)), iso)
    return None


def _least_embedding(host: Matroid, pattern: Matroid, c: int, found: list[tuple[int, ...]], symmetric: bool) -> tuple[int, ...]:
    """Embedding with the least deletion set, then the least map onto that image."""

    def d_key(img):
        used = c
        for y in img:
            used |= 1 << y
        return tuple(bits(host.full & ~used))

    best_d = min(d_key(img) for img in found)
    same = [img for img in found if d_key(img) == best_d]
    if not symmetric:
        return min(same)
    from .isomorphism import automorphism_indices

    img = same[0]
    return min(tuple(img[g[i]] for i in range(pattern.n)) for g in automorphism_indices(pattern))


def _enough_points(host: Matroid, c: int, need: int) -> bool:
    # a simple pattern uses at most one element per parallel class of host/C
    rk = host.rk
    base = rk[c]
    reps: list[int] = []
    for y in range(host.n):
        if c >> y & 1:
            continue
        yb = 1 << y
        if rk[c | yb] == base:
            continue
        for z in reps:
            if rk[c | yb | z] == base + 1:
                break
        else:
            reps.append(yb)
            if len(reps) >= need:
                return True
    return False


def all_minor_witnesses(host: Matroid, pattern: Matroid) -> list[MinorWitness]:
    """Every labelled occurrence (no symmetry reduction); for small instances only."""
    if not _screen(host, pattern):
        return []
    k = host.rank() - pattern.rank()
    emb = _embedder(pattern, symmetric=False)
    out = []
    for combo in combinations(range(host.n), k):
        c = sum(1 << i for i in combo)
        if host.rk[c] != k:
            continue
        for img in emb.search(host, c):
            used = sum(1 << y for y in img)
            iso = IsoMap(tuple((pattern.labels[i], host.labels[img[i]]) for i in range(pattern.n)))
            out.append(MinorWitness(tuple(host.ordered(c)), tuple(host.ordered(host.full & ~(c | used))), iso))
    return out


def _relabelled_basis_sets(pattern: Matroid) -> set[frozenset[int]]:
    key = "basis-orbit"
    if key not in pattern._cache:
        bases = pattern.basis_masks()
        out = set()
        for perm in permutations(range(pattern.n)):
            out.add(frozenset(sum(1 << perm[i] for i in bits(b)) for b in bases))
        pattern._cache[key] = out
    return pattern._cache[key]


def has_minor_naive(host: Matroid, pattern: Matroid) -> bool:
    """Brute-force reference: every disjoint (C, D), every relabelling of N.

    Shares nothing with :func:`has_minor` beyond the rank table.  Only
    practical for patterns with at most 7 elements.
    """
    m = pattern.n
    if m > host.n:
        return False
    targets = _relabelled_basis_sets(pattern)
    n = host.n
    for removed in combinations(range(n), n - m):
        keep = [i for i in range(n) if i not in removed]
        for split in product((0, 1), repeat=len(removed)):
            c = sum(1 << i for i, s in zip(removed, split) if s)
            d = sum(1 << i for i, s in zip(removed, split) if not s)
            minor = host.minor_mask(c, d)
            if frozenset(minor.basis_masks()) in targets:
                return True
    return False


@dataclass
class ClassMembership:
    member: bool
    witnesses: dict[str, MinorWitness | None] = field(default_factory=dict)


def in_ex_class(m: Matroid, patterns: Iterable[Matroid] | dict[str, Matroid]) -> ClassMembership:
    """Whether M has no minor isomorphic to any pattern, with per-pattern witnesses."""
    if not isinstance(patterns, dict):
        patterns = {(p.name or f"pattern{i}"): p for i, p in enumerate(patterns)}
    wit = {name: has_minor(m, p) for name, p in patterns.items()}
    return ClassMembership(all(w is None for w in wit.values()), wit)

