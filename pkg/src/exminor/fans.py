"""Fans: sequences whose consecutive triples alternate between triangles and triads."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .matroid import Matroid, MatroidError


@dataclass(frozen=True)
class Fan:
    elements: tuple[str, ...]
    patterns: tuple[str, ...]  # per window: "triangle", "triad" or "both"

    def __len__(self) -> int:
        return len(self.elements)

    def reversed(self) -> "Fan":
        return Fan(self.elements[::-1], self.patterns[::-1])

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "windows": list(self.patterns)}


def _window_kinds(m: Matroid):
    tri = set(m.triangle_masks())
    triad = set(m.triad_masks())
    return tri, triad


def _kind(mask: int, tri: set, triad: set) -> str | None:
    a, b = mask in tri, mask in triad
    if a and b:
        return "both"
    if a:
        return "triangle"
    if b:
        return "triad"
    return None


def _compatible(prev: str, nxt: str) -> bool:
    # a triangle must be followed by a triad and a triad by a triangle
    if prev in ("triangle", "both") and nxt not in ("triad", "both"):
        return False
    if prev in ("triad", "both") and nxt not in ("triangle", "both"):
        return False
    return True


def fan_windows(m: Matroid, seq: Sequence) -> list[str] | None:
    """Window kinds if ``seq`` is a fan of M, else None."""
    seq = [str(x) for x in seq]
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return None
    tri, triad = _window_kinds(m)
    kinds = []
    for i in range(len(seq) - 2):
        k = _kind(m.mask(seq[i:i + 3]), tri, triad)
        if k is None or (kinds and not _compatible(kinds[-1], k)):
            return None
        kinds.append(k)
    return kinds


def is_fan(m: Matroid, seq: Sequence) -> bool:
    return fan_windows(m, seq) is not None


def as_fan(m: Matroid, seq) -> Fan:
    if isinstance(seq, Fan):
        seq = seq.elements
    kinds = fan_windows(m, seq)
    if kinds is None:
        raise MatroidError(f"{list(seq)} is not a fan")
    return Fan(tuple(str(x) for x in seq), tuple(kinds))


def all_fans(m: Matroid) -> list[tuple[int, ...]]:
    """Every fan of M as a tuple of indices (both orientations included)."""
    key = "fans"
    if key in m._cache:
        return m._cache[key]
    tri, triad = _window_kinds(m)
    out = []
    stack = []
    for w in sorted(tri | triad):
        idx = [i for i in range(m.n) if w >> i & 1]
        for p in permutations(idx):
            stack.append((p, _kind(w, tri, triad)))
    while stack:
        seq, last = stack.pop()
        out.append(seq)
        used = 0
        for i in seq:
            used |= 1 << i
        a, b = seq[-2], seq[-1]
        for x in range(m.n):
            if used >> x & 1:
                continue
            k = _kind((1 << a) | (1 << b) | (1 << x), tri, triad)
            if k is not None and _compatible(last, k):
                stack.append((seq + (x,), k))
    out.sort(key=lambda s: (len(s), s))
    m._cache[key] = out
    return out


def is_maximal_fan(m: Matroid, fan) -> bool:
    """No fan with more elements contains the elements of ``fan``."""
    f = as_fan(m, fan)
    s = m.mask(f.elements)
    k = len(f)
    for seq in all_fans(m):
        if len(seq) > k:
            t = 0
            for i in seq:
                t |= 1 << i
            if s & ~t == 0:
                return False
    return True


def find_fans(m: Matroid) -> list[Fan]:
    """All maximal fans, one orientation each (the lexicographically smaller index tuple)."""
    fans = all_fans(m)
    sets = []
    for seq in fans:
        t = 0
        for i in seq:
            t |= 1 << i
        sets.append(t)
    out = []
    seen = set()
    for seq, t in zip(fans, sets):
        if any(len(o) > len(seq) and t & ~u == 0 for o, u in zip(fans, sets)):
            continue
        canon = min(seq, seq[::-1])
        if canon in seen:
            continue
        seen.add(canon)
        out.append(as_fan(m, [m.labels[i] for i in canon]))
    return out


def classify_fan(m: Matroid, fan) -> dict[str, str]:
    """Rim/spoke label per fan element.

    An interior element is a rim element when it lies in exactly one triangle
    contained in the fan's element set; an end element is a rim element when
    it lies in no such triangle.  Everything else is a spoke element.
    """
    f = as_fan(m, fan)
    s = m.mask(f.elements)
    inside = [t for t in m.triangle_masks() if t & ~s == 0]
    out = {}
    k = len(f)
    for i, x in enumerate(f.elements):
        b = m.mask(x)
        count = sum(1 for t in inside if t & b)
        rim = count == 1 if 0 < i < k - 1 else count == 0
        out[x] = "rim" if rim else "spoke"
    return out
