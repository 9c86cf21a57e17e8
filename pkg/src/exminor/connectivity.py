"""Connectivity function, separations and Tutte 3-connectivity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matroid import Matroid, MatroidError, _popcounts, popcount

SCAN_LIMIT = 20


@dataclass(frozen=True)
class Separation:
    side: frozenset[str]
    other: frozenset[str]
    order: int  # lambda(side)

    def is_k_separation(self, k: int) -> bool:
        return self.order <= k - 1 and min(len(self.side), len(self.other)) >= k

    def to_json(self) -> dict:
        return {"side": sorted(self.side), "other": sorted(self.other), "lambda": self.order}


def lam_mask(m: Matroid, a: int) -> int:
    return m.rank_mask(a) + m.rank_mask(m.full & ~a) - m.rank()


def lam(m: Matroid, items) -> int:
    """Connectivity function r(A) + r(E - A) - r(M)."""
    return lam_mask(m, m.mask(items))


def separation(m: Matroid, items) -> Separation:
    a = m.mask(items)
    return Separation(m.subset(a), m.subset(m.full & ~a), lam_mask(m, a))


def lambda_table(m: Matroid) -> np.ndarray:
    if m.n > SCAN_LIMIT:
        raise MatroidError(f"exhaustive separation scan capped at {SCAN_LIMIT} elements")
    t = m.table.astype(np.int16)
    return t + t[::-1] - int(t[-1])


def _violations(m: Matroid, k: int) -> np.ndarray:
    """Masks A containing element 0 that give a j-separation for some j < k."""
    lt = lambda_table(m)
    pc = _popcounts(m.n).astype(np.int16)
    other = m.n - pc
    bad = np.zeros(len(lt), dtype=bool)
    for j in range(1, k):
        bad |= (lt <= j - 1) & (pc >= j) & (other >= j)
    idx = np.arange(len(lt))
    bad &= (idx & 1) == 1
    return np.nonzero(bad)[0]


def is_connected(m: Matroid) -> bool:
    return m.n == 0 or len(_violations(m, 2)) == 0


def is_three_connected(m: Matroid) -> bool:
    """Tutte 3-connectivity: no 1- or 2-separation."""
    if m.n == 0:
        return True
    key = "3conn"
    if key not in m._cache:
        m._cache[key] = len(_violations(m, 3)) == 0
    return m._cache[key]


is_3_connected = is_three_connected


def is_three_connected_naive(m: Matroid) -> bool:
    """Definitional scan over all bipartitions, one rank query at a time."""
    n = m.n
    r = m.rank()
    for a in range(1, 1 << n):
        if not a & 1:
            continue
        b = m.full & ~a
        sa, sb = popcount(a), popcount(b)
        if sb == 0:
            continue
        lam_a = m.rank_mask(a) + m.rank_mask(b) - r
        if lam_a == 0:
            return False
        if lam_a <= 1 and sa >= 2 and sb >= 2:
            return False
    return True


def find_separations(m: Matroid, k: int) -> list[Separation]:
    """All exact k-separations (lambda <= k-1, both sides >= k), one per bipartition.

    The reported side is the one containing the first ground-set element.
    """
    lt = lambda_table(m)
    pc = _popcounts(m.n).astype(np.int16)
    sel = (lt <= k - 1) & (pc >= k) & ((m.n - pc) >= k) & ((np.arange(len(lt)) & 1) == 1)
    out = []
    for a in np.nonzero(sel)[0]:
        a = int(a)
        out.append(Separation(m.subset(a), m.subset(m.full & ~a), int(lt[a])))
    return out


def _require_scc(m: Matroid) -> None:
    if not m.is_simple():
        raise MatroidError("matroid is not simple")
    if not m.is_cosimple():
        raise MatroidError("matroid is not cosimple")
    if not is_connected(m):
        raise MatroidError("matroid is not connected")


def normalize_two_separation(m: Matroid, items) -> Separation:
    """Replace the side A of a 2-separation by its full closure.

    For a simple, cosimple, connected matroid the result is again a
    2-separation; that is asserted rather than assumed.
    """
    _require_scc(m)
    a = m.mask(items)
    if not separation(m, m.subset(a)).is_k_separation(2):
        raise MatroidError("input is not a 2-separation")
    f = m.fcl_mask(a)
    out = Separation(m.subset(f), m.subset(m.full & ~f), lam_mask(m, f))
    if not out.is_k_separation(2):
        raise AssertionError(f"full closure of {sorted(m.subset(a))} does not give a 2-separation")
    return out


def cover_fan_by_separation(m: Matroid, fan, items) -> Separation:
    """A 2-separation whose first side contains every element of ``fan``.

    Works in the dual when the fan starts with a triad, takes the side
    meeting the first triangle in at least two elements (only one side can,
    since the triangle has three elements) and replaces it by its full closure.
    """
    from .fans import as_fan

    _require_scc(m)
    f = as_fan(m, fan)
    work = m if f.patterns[0] != "triad" else m.dual()
    a = work.mask(items)
    if not separation(work, work.subset(a)).is_k_separation(2):
        raise MatroidError("input is not a 2-separation")
    first = work.mask(f.elements[:3])
    if popcount(a & first) < 2:
        a = work.full & ~a
    fcl = work.fcl_mask(a)
    out = Separation(m.subset(fcl), m.subset(m.full & ~fcl), lam_mask(m, fcl))
    if not out.is_k_separation(2) or not set(f.elements) <= out.side:
        raise AssertionError("fan is not covered by the normalised separation")
    return out
