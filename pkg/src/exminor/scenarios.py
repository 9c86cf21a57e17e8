"""Finite case-checks, grouped into scenarios of named claims.

Each claim is a function returning ``(ok, witness)`` where the witness is
JSON-serialisable.  A claim that raises :class:`GuardExceeded` is reported
as skipped; any other exception is a failure carrying the error text.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable

from . import catalog as C
from .connectivity import find_separations, is_three_connected
from .constructions import (
    GuardExceeded,
    delta_y,
    extensions,
    coextensions,
    grow_fan,
    grown_minor_witness,
    linear_row_extensions,
    representation,
    y_delta,
)
from .fans import all_fans, is_fan
from .isomorphism import (
    automorphisms,
    is_isomorphic,
    is_transitive_on,
    isomorphism,
    orbits,
    parse_cycles,
    stabilizer,
    verify_map,
)
from .matroid import LinearMatroid, Matroid, label_key, popcount
from .minors import has_minor

ClaimFn = Callable[[], "tuple[bool, object]"]


@dataclass
class Scenario:
    id: str
    paper_ref: str
    claims: list[tuple[str, ClaimFn]] = field(default_factory=list)

    def claim(self, cid: str):
        def deco(fn: ClaimFn) -> ClaimFn:
            self.claims.append((cid, fn))
            return fn

        return deco


@dataclass
class ClaimReport:
    id: str
    status: str  # pass, fail, skipped
    witness: object
    millis: int = 0

    def to_json(self, timings: bool = False) -> dict:
        out = {"id": self.id, "status": self.status, "witness": self.witness}
        if timings:
            out["millis"] = self.millis
        return out


def run_claim(cid: str, fn: ClaimFn) -> ClaimReport:
    start = time.perf_counter()
    try:
        ok, witness = fn()
        status = "pass" if ok else "fail"
        if not ok and witness is None:
            witness = {"counterexample": cid, "reason": "check evaluated false"}
    except GuardExceeded as exc:
        status, witness = "skipped", {"reason": str(exc)}
    except Exception as exc:  # a crashing check is a failed check
        status, witness = "fail", {"error": f"{type(exc).__name__}: {exc}"}
    return ClaimReport(cid, status, _jsonable(witness), int((time.perf_counter() - start) * 1000))


def _jsonable(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    return x


# --- shared helpers -----------------------------------------------------------

def _minor_claim(host: Matroid, pattern_name: str, want: bool):
    w = has_minor(host, C.get(pattern_name))
    return (w is not None) == want, {"pattern": pattern_name, "witness": w}


def _free_of(host: Matroid, names: list[str]) -> tuple[bool, dict]:
    found = {}
    for n in names:
        w = has_minor(host, C.get(n))
        if w is not None:
            found[n] = w
    return not found, {"checked": sorted(names), "found": found}


def _three_conn(m: Matroid) -> tuple[bool, object]:
    if is_three_connected(m):
        return True, None
    for k in (1, 2):
        seps = find_separations(m, k)
        if seps:
            return False, {"separation": seps[0]}
    return False, {"reason": "not simple or not cosimple"}


def _matrix(rows: list[list[int]], labels) -> LinearMatroid:
    return LinearMatroid(3, rows, labels)


def _sets(xs) -> list[list[str]]:
    return sorted(sorted(x, key=_key) for x in xs)


_key = label_key


# --- scenario definitions -------------------------------------------------------

SCENARIOS: dict[str, Callable[[], Scenario]] = {}


def scenario(sid: str, ref: str):
    def deco(build: Callable[[Scenario], None]):
        def make() -> Scenario:
            s = Scenario(sid, ref)
            build(s)
            return s

        SCENARIOS[sid] = make
        return build

    return deco


@scenario("catalog-sanity", "catalog entries and their quick facts")
def _catalog_sanity(s: Scenario) -> None:
    fixed = [n for n in C.names() if "{" not in n]
    for name in fixed:
        @s.claim(f"loads:{name}")
        def _(name=name):
            m = C.get(name)
            return True, {"rank": m.rank(), "size": m.n, "triangles": len(m.triangle_masks())}

    @s.claim("S5612:rank-6-on-12")
    def _():
        m = C.get("S5612")
        return (m.rank(), m.n) == (6, 12), {"rank": m.rank(), "size": m.n}

    @s.claim("S5612:self-dual")
    def _():
        m = C.get("S5612")
        return m.dual().same_as(m) or is_isomorphic(m, m.dual()), {"labelled_equal": m.dual().same_as(m)}

    @s.claim("S5612:3-connected")
    def _():
        return _three_conn(C.get("S5612"))

    @s.claim("S5612:has-P8-minor")
    def _():
        return _minor_claim(C.get("S5612"), "P8", True)

    @s.claim("Delta3:self-dual")
    def _():
        m = C.get("Delta3")
        return is_isomorphic(m, m.dual()), isomorphism(m, m.dual())

    @s.claim("AG23e:simple-rank-3-on-8")
    def _():
        m = C.get("AG23e")
        return m.is_simple() and m.rank() == 3 and m.n == 8, None

    @s.claim("AG23e:automorphisms-transitive")
    def _():
        m = C.get("AG23e")
        g = automorphisms(m)
        return len(orbits(m.labels, g)) == 1, {"group_order": len(g)}

    @s.claim("AG23e:unique-partner")
    def _():
        m = C.get("AG23e")
        partner = _partners(m)
        return all(len(v) == 1 for v in partner.values()), {k: v for k, v in sorted(partner.items())}

    @s.claim("F7-*:dual-of-F7-")
    def _():
        return C.get("F7-").dual().same_as(C.get("F7-*")), None

    @s.claim("M8:rank-3-on-8")
    def _():
        m = C.get("M8")
        return (m.rank(), m.n) == (3, 8), None

    @s.claim("M9:triangles")
    def _():
        t = _sets(C.get("M9").triangles())
        return t == [["1", "2", "9"], ["3", "4", "6"], ["3", "5", "9"]], t

    @s.claim("M9:closure-35")
    def _():
        c = sorted(C.get("M9").closure(["3", "5"]), key=_key)
        return c == ["3", "5", "9"], c

    for c, want in (("7", [["1", "2", "4", "9"], ["3", "5", "8", "9"]]), ("8", [["2", "3", "4", "6"], ["3", "5", "7", "9"]])):
        @s.claim(f"M9/{c}:four-point-lines")
        def _(c=c, want=want):
            m = C.get("M9").contract([c])
            lines = _sets(f for f in m.flats(2) if len(f) == 4)
            return lines == want, lines

    for d, want in ((["1", "3"], [["2", "4", "6"], ["5", "7", "9"]]), (["2", "3"], [["1", "7", "8"], ["4", "5", "9"]])):
        @s.claim(f"M9\\{''.join(d)}:disjoint-triads")
        def _(d=d, want=want):
            triads = _sets(C.get("M9").delete(d).triads())
            return all(t in triads for t in want), triads

    @s.claim("M8\\8:is-F7-")
    def _():
        return is_isomorphic(C.get("M8").delete(["8"]), C.get("F7-")), isomorphism(C.get("M8").delete(["8"]), C.get("F7-"))

    @s.claim("M9\\9:is-Delta3")
    def _():
        m = C.get("M9").delete(["9"])
        return is_isomorphic(m, C.get("Delta3")), isomorphism(m, C.get("Delta3"))

    @s.claim("M7\\1:is-P6")
    def _():
        m = C.get("M7").delete(["1"])
        return is_isomorphic(m, C.get("P6")), isomorphism(m, C.get("P6"))

    @s.claim("P7:one-element-on-three-lines")
    def _():
        m = C.get("P7")
        lines = [f for f in m.flat_masks(2) if popcount(f) >= 3]
        counts = {x: sum(1 for f in lines if f >> m.index[x] & 1) for x in m.labels}
        return sum(1 for v in counts.values() if v >= 3) == 1, counts

    @s.claim("O7:has-four-point-line")
    def _():
        m = C.get("O7")
        return any(popcount(f) == 4 for f in m.flat_masks(2)), None

    @s.claim("AG32':has-F7*-minor")
    def _():
        return _minor_claim(C.get("AG32'"), "F7*", True)

    @s.claim("P8=:double-relaxation-of-P8")
    def _():
        p8 = C.get("P8")
        ch = p8.circuit_hyperplane_masks()
        pairs = [(a, b) for a, b in combinations(ch, 2) if not a & b]
        from .matroid import BasisMatroid

        ok = len(pairs) == 1 and BasisMatroid(p8.labels, p8.basis_masks() + list(pairs[0])).same_as(C.get("P8="))
        return ok, {"disjoint_pairs": [[p8.ordered(a), p8.ordered(b)] for a, b in pairs]}

    @s.claim("P8:single-relaxations-not-all-isomorphic")
    def _():
        p8 = C.get("P8")
        classes: list[list] = []
        for c in p8.circuit_hyperplane_masks():
            r = p8.relax(p8.ordered(c))
            for cls in classes:
                if is_isomorphic(r, cls[0][1]):
                    cls.append((c, r))
                    break
            else:
                classes.append([(c, r)])
        sizes = sorted(len(c) for c in classes)
        return sizes == [2, 8], {"class_sizes": sizes, "classes": [[p8.ordered(c) for c, _ in cls] for cls in classes]}


def _partners(m: Matroid) -> dict[str, list[str]]:
    tri = m.triangle_masks()
    out = {}
    for x in m.labels:
        out[x] = [
            y for y in m.labels if y != x and not any(t & m.mask([x, y]) == m.mask([x, y]) for t in tri)
        ]
    return out


def _splitter_claims(s: Scenario, excluded: list[str], extension_check: bool) -> None:
    f7 = C.get("F7")
    cache: dict = {}

    def exts():
        if "ext" not in cache:
            cache["ext"] = [m for m in extensions(f7) if _tc(m)]
        return cache["ext"]

    def coexts():
        if "coext" not in cache:
            cache["coext"] = [m for m in coextensions(f7) if _tc(m)]
        return cache["coext"]

    for kind, get in (("extensions", exts), ("coextensions", coexts)):
        @s.claim(f"{kind}:none-in-class")
        def _(get=get):
            bad = []
            counts = []
            for m in get():
                hits = [n for n in excluded if has_minor(m, C.get(n)) is not None]
                counts.append(len(hits))
                if not hits:
                    bad.append(_bases(m))
            return not bad, {"three_connected": len(counts), "counterexamples": bad}

    if extension_check:
        @s.claim("extensions:contract-e-has-U25")
        def _():
            bad = [_bases(m) for m in exts() if has_minor(m.contract(["e"]), C.get("U2,5")) is None]
            return not bad, {"three_connected": len(exts()), "counterexamples": bad}


def _tc(m: Matroid) -> bool:
    return m.is_simple() and m.is_cosimple() and is_three_connected(m)


def _bases(m: Matroid) -> dict:
    return {"labels": list(m.labels), "bases": [m.ordered(b) for b in m.basis_masks()]}


@scenario("splitter-regular", "F7 is a splitter for ex({U2,4, F7*})")
def _splitter_regular(s: Scenario) -> None:
    _splitter_claims(s, ["U2,4", "F7*"], extension_check=False)


@scenario("splitter-gf3", "F7 is a splitter for ex({U2,5, U3,5, F7*})")
def _splitter_gf3(s: Scenario) -> None:
    _splitter_claims(s, ["U2,5", "U3,5", "F7*"], extension_check=True)


AUT1 = "(1)(2,4)(3,7)(5,6)(8)"
AUT2 = "(1)(2,3,5)(4,6,7)(8)"


@scenario("ag23e-aut", "automorphisms of AG(2,3)\\e fixing 1 and 8")
def _ag23e_aut(s: Scenario) -> None:
    m = C.get("AG23e")
    for cyc in (AUT1, AUT2):
        @s.claim(f"automorphism:{cyc}")
        def _(cyc=cyc):
            return verify_map(m, m, parse_cycles(cyc, m.labels)), {"map": parse_cycles(cyc, m.labels)}

    @s.claim("generated-group:transitive-on-2..7")
    def _():
        gens = [parse_cycles(c, m.labels) for c in (AUT1, AUT2)]
        return is_transitive_on(gens, ["2", "3", "4", "5", "6", "7"]), None

    @s.claim("partner-of-1-is-8")
    def _():
        return _partners(m)["1"] == ["8"], _partners(m)["1"]

    @s.claim("stabilizer-transitive-for-every-pair")
    def _():
        group = automorphisms(m)
        out = {}
        ok = True
        for p, (q,) in sorted(_partners(m).items(), key=lambda kv: _key(kv[0])):
            stab = stabilizer(group, [p, q])
            rest = [x for x in m.labels if x not in (p, q)]
            good = is_transitive_on(stab, rest)
            ok &= good
            out[p] = {"partner": q, "stabilizer_order": len(stab), "transitive": good}
        return ok, out

    @s.claim("whirl-bases-equivalent")
    def _():
        group = automorphisms(m)
        tri = m.triangle_masks()

        def spans_line(a, b):
            return any(t & (a | b) == (a | b) for t in tri)

        special = []
        for b in m.basis_masks():
            pts = [1 << i for i in range(m.n) if b >> i & 1]
            if all(spans_line(x, y) for x, y in combinations(pts, 2)):
                special.append(b)
        images = set()
        base = special[0]
        for g in group:
            d = g.as_dict()
            images.add(m.mask([d[x] for x in m.ordered(base)]))
        return set(special) <= images, {"bases": len(special), "orbit_of_first": len(images & set(special))}


# -- the coextension case analysis for AG(2,3)\e ---------------------------------

_A_PRIME = [[1, 1, 0, -1], [1, 0, 1, 1], [0, 1, 1, 1]]


def _m_prime(alpha, beta, gamma, delta) -> LinearMatroid:
    rows = _A_PRIME + [[alpha, beta, gamma, delta]]
    full = []
    for i, r in enumerate(rows):
        full.append([1 if j == i else 0 for j in range(4)] + list(r))
    return _matrix(full, ["1", "2", "3", "e", "4", "5", "6", "7"])


_CASE_ROWS = [[1, 0, 1, 1, 1], [1, 1, 0, -1, 1], [0, 1, 1, -1, -1]]


def _case_matroid(frow) -> LinearMatroid:
    rows = [frow] + _CASE_ROWS
    full = []
    for i, r in enumerate(rows):
        full.append([1 if j == i else 0 for j in range(4)] + list(r))
    return _matrix(full, ["f", "1", "2", "3", "4", "5", "6", "7", "8"])


def _pairs(text: str) -> dict[str, str]:
    out = {}
    for tok in text.split(","):
        a, b = tok.split("->")
        out[a.strip()] = b.strip()
    return out


@scenario("ag23e-cases", "coextensions of AG(2,3)\\e have a Delta3 minor")
def _ag23e_cases(s: Scenario) -> None:
    @s.claim("claim:gamma-equals-delta-gives-triangle-167")
    def _():
        out = {}
        ok = True
        for beta in (1, -1):
            for g in (1, -1):
                m = _m_prime(1, beta, g, g)
                good = m.mask(["1", "6", "7"]) in m.triangle_masks()
                ok &= good
                out[f"beta={beta},gamma=delta={g}"] = good
        return ok, out

    @s.claim("claim:beta=1,gamma=1:M'\\7-is-F7-*")
    def _():
        ok = True
        for delta in (0, -1):
            ok &= is_isomorphic(_m_prime(1, 1, 1, delta).delete(["7"]), C.get("F7-*"))
        return ok, None

    @s.claim("claim:beta=1,gamma=-1,delta=0:is-P8")
    def _():
        m = _m_prime(1, 1, -1, 0)
        return is_isomorphic(m, C.get("P8")), isomorphism(m, C.get("P8"))

    @s.claim("claim:beta=1,gamma=-1,delta=1:M'/1-not-P7")
    def _():
        m = _m_prime(1, 1, -1, 1).contract(["1"])
        tri = _sets(m.triangles())
        need = [["2", "4", "e"], ["3", "5", "e"], ["6", "7", "e"], ["4", "5", "6"], ["2", "5", "7"]]
        have = all(sorted(t, key=_key) in tri for t in need)
        return have and not is_isomorphic(m, C.get("P7")), {"triangles": tri}

    @s.claim("claim:beta=-1,delta=0:triangle-457")
    def _():
        ok = all(
            (m := _m_prime(1, -1, g, 0)).mask(["4", "5", "7"]) in m.triangle_masks() for g in (1, -1)
        )
        return ok, None

    maps = {
        "claim:beta=-1,gamma=-1:P8-map": ((1, -1, -1, 1), "1->1,2->2,3->5,4->7,5->8,6->3,7->6,e->4"),
        "claim:beta=-1,gamma=1:P8-map": ((1, -1, 1, -1), "1->1,2->5,3->3,4->8,5->6,6->2,7->7,e->4"),
    }
    for cid, (vals, text) in maps.items():
        @s.claim(cid)
        def _(vals=vals, text=text):
            phi = _pairs(text)
            return verify_map(_m_prime(*vals), C.get("P8"), phi), {"map": phi}

    printed = [
        # (claim id, f row, deleted, contracted, target, map)
        ("caseI:alpha=1:F7-*-map", [[1, 0, 1, b, 0] for b in (0, 1, -1)], ["5", "7"], [], "F7-*",
         "1->5,2->7,3->6,4->4,6->2,8->3,f->1"),
        ("caseII:(1,1):Delta3-map", [[1, 0, 1, 0, 1]], ["5"], [], "Delta3",
         "1->1,2->2,3->4,4->3,6->8,7->7,8->6,f->5"),
        ("caseII:(1,-1):P8-map", [[1, 0, 1, 0, -1]], ["5"], [], "P8",
         "1->2,2->3,3->4,4->6,6->1,7->5,8->8,f->7"),
        ("caseII:(-1,1):F7--map", [[1, 0, -1, 0, 1]], ["5"], ["1"], "F7-",
         "2->2,3->3,4->1,6->7,7->6,8->5,f->4"),
        ("caseII:(-1,-1):Delta3-map", [[1, 0, -1, 0, -1]], ["5"], [], "Delta3",
         "1->2,2->7,3->5,4->4,6->3,7->6,8->8,f->1"),
        ("caseIII:alpha=1:F7-*-map", [[1, 1, b, 0, 0] for b in (0, 1, -1)], ["6", "8"], [], "F7-*",
         "1->5,2->6,3->7,4->1,5->4,7->3,f->2"),
        ("caseIII:alpha=-1:Delta3-map", [[1, -1, b, 0, 0] for b in (0, 1, -1)], ["6"], [], "Delta3",
         "1->8,2->3,3->2,4->7,5->1,7->4,8->6,f->5"),
    ]
    for cid, frows, dele, con, target, text in printed:
        @s.claim(cid)
        def _(frows=frows, dele=dele, con=con, target=target, text=text):
            phi = _pairs(text)
            results = [verify_map(_case_matroid(r).minor(con, dele), C.get(target), phi) for r in frows]
            return all(results), {"map": phi, "rows_checked": frows}

    @s.claim("caseI:alpha=-1:M\\7-is-Delta3")
    def _():
        ms = [_case_matroid([1, 0, -1, b, 0]).delete(["7"]) for b in (0, 1, -1)]
        return all(is_isomorphic(m, C.get("Delta3")) for m in ms), None

    @s.claim("case-matrices:M/f-is-AG23e")
    def _():
        m = _case_matroid([1, 0, 0, 0, 0]).contract(["f"])
        return m.same_as(C.get("AG23e")), None

    @s.claim("exhaustive:row-coextensions-have-Delta3")
    def _():
        ext = linear_row_extensions(C.get("AG23e"), "row", label="f")
        sru = C.ex_set_names("sru")
        survivors = []
        bad = []
        for v, m in zip(ext.vectors, ext.matroids):
            if not _tc(m):
                continue
            if any(has_minor(m, C.get(n)) is not None for n in sru):
                continue
            survivors.append(list(v))
            if has_minor(m, C.get("Delta3")) is None:
                bad.append(list(v))
        return not bad, {
            "raw_rows": ext.raw,
            "distinct_rows": len(ext.vectors),
            "surviving": len(survivors),
            "without_Delta3": bad,
        }


@scenario("ag23-coext", "3-connected coextensions of AG(2,3) keep 3-connectivity under some deletion")
def _ag23_coext(s: Scenario) -> None:
    @s.claim("exhaustive:deletable-element")
    def _():
        ext = linear_row_extensions(C.get("AG23"), "row", label="f")
        checked = 0
        in_sru = 0
        bad = []
        sru = C.ex_set_names("sru")
        for v, m in zip(ext.vectors, ext.matroids):
            if not _tc(m):
                continue
            checked += 1
            if not any(has_minor(m, C.get(n)) is not None for n in sru):
                in_sru += 1
            if not any(is_three_connected(m.delete([g])) for g in m.labels if g != "f"):
                bad.append(list(v))
        return not bad, {
            "raw_rows": ext.raw,
            "distinct_rows": len(ext.vectors),
            "three_connected": checked,
            "also_free_of_S": in_sru,
            "counterexamples": bad,
        }

    @s.claim("AG23:no-triads")
    def _():
        m = C.get("AG23")
        return not m.triad_masks(), [m.ordered(t) for t in m.triad_masks()]


# -- infinite families ----------------------------------------------------------

FAMILIES = {
    "M8": (["3", "6", "8"], "F7-"),
    "M9": (["3", "5", "9"], "Delta3"),
    "M7": (["1", "2", "4"], "P6"),
}


def _family_forbidden(name: str) -> list[str]:
    if name == "M8":
        pool = C.ex_set_names("gf4") + C.ex_set_names("sru") + C.ex_set_names("nearregular")
        return sorted(set(pool) - {"F7-"}, key=str.lower)
    if name == "M9":
        return [n for n in C.ex_set_names("nearregular") if n != "Delta3"]
    return [n for n in C.ex_set_names("gf4") if n != "P6"]


def _family_claims(s: Scenario, name: str, ns: tuple[int, ...]) -> None:
    tri, required = FAMILIES[name]
    base = C.get(name)
    forbidden = _family_forbidden(name)
    for n in ns:
        cache: dict = {}

        def grown(n=n, cache=cache):
            if "m" not in cache:
                cache["m"] = grow_fan(base, tri, n).matroid
            return cache["m"]

        @s.claim(f"n={n}:3-connected")
        def _(grown=grown):
            m = grown()
            ok, sep = _three_conn(m)
            return ok, {"size": m.n, "rank": m.rank(), "separation": sep}

        @s.claim(f"n={n}:has-{required}-minor")
        def _(grown=grown):
            return _minor_claim(grown(), required, True)

        for p in forbidden:
            @s.claim(f"n={n}:no-{p}-minor")
            def _(grown=grown, p=p):
                return _minor_claim(grown(), p, False)


@scenario("family-m8", "Phi(M8) on {3,6,8}: F7- minor but no other excluded minor of O, S, N")
def _family_m8(s: Scenario) -> None:
    _family_claims(s, "M8", (3, 4, 5))
    m8 = C.get("M8")

    @s.claim("M8:3-connected-and-fan-368")
    def _():
        return is_three_connected(m8) and is_fan(m8, ["3", "6", "8"]), None

    @s.claim("Delta(M8):triangles-257-and-124")
    def _():
        d = delta_y(m8, ["3", "6", "8"])
        t = _sets(d.triangles())
        return ["2", "5", "7"] in t and ["1", "2", "4"] in t and d.rank() == 4, t

    @s.claim("M8:has-four-point-line")
    def _():
        return any(popcount(f) == 4 for f in m8.flat_masks(2)), None

    @s.claim("M8\\2:disjoint-triangles")
    def _():
        m = m8.delete(["2"])
        tri = m.triangle_masks()
        pairs = [(m.ordered(a), m.ordered(b)) for a, b in combinations(tri, 2) if not a & b]
        return bool(pairs), pairs[:1]

    @s.claim("Delta(M8)\\2:Y-Delta-gives-M8\\2")
    def _():
        d = delta_y(m8, ["3", "6", "8"]).delete(["2"])
        if d.mask(["3", "6", "8"]) not in d.triad_masks():
            return False, {"error": "{3,6,8} is not a triad"}
        back = y_delta(d, ["3", "6", "8"])
        return is_isomorphic(back, m8.delete(["2"])), None

    @s.claim("M8:free-of-U25")
    def _():
        return _minor_claim(m8, "U2,5", False)


@scenario("family-m9", "Phi(M9) on {3,5,9}: Delta3 minor but no other member of N")
def _family_m9(s: Scenario) -> None:
    _family_claims(s, "M9", (3, 4))
    m9 = C.get("M9")

    @s.claim("nabla-delta-M9-is-M9")
    def _():
        return y_delta(delta_y(m9, ["3", "5", "9"]), ["3", "5", "9"]).same_as(m9), None

    for c in ("7", "8"):
        @s.claim(f"M9/{c}:free-of-N")
        def _(c=c):
            return _free_of(m9.contract([c]), C.ex_set_names("nearregular"))

    @s.claim("M9:free-of-N-minus-Delta3")
    def _():
        return _free_of(m9, [n for n in C.ex_set_names("nearregular") if n != "Delta3"])


@scenario("family-m7", "Phi(M7) on {1,2,4}: P6 minor but no other member of O")
def _family_m7(s: Scenario) -> None:
    _family_claims(s, "M7", (3, 4, 5))
    m7 = C.get("M7")

    @s.claim("M7:every-element-on-a-triangle")
    def _():
        tri = m7.triangle_masks()
        return all(any(t >> i & 1 for t in tri) for i in range(m7.n)), None

    @s.claim("M7:P6-only-by-deleting-1")
    def _():
        hits = [x for x in m7.labels if is_isomorphic(m7.delete([x]), C.get("P6"))]
        return hits == ["1"], hits

    @s.claim("Delta(M7):free-of-O-minus-P6")
    def _():
        return _free_of(delta_y(m7, ["1", "2", "4"]), _family_forbidden("M7"))


# -- fan growing properties ---------------------------------------------------------

GROW_INSTANCES = [
    ("M8", ["3", "6", "8"]),
    ("M9", ["3", "5", "9"]),
    ("M7", ["1", "2", "4"]),
    ("F7", ["1", "2", "4"]),
    ("F7-", ["1", "2", "4"]),
    ("P7", ["1", "2", "4"]),
    ("AG23e", ["1", "2", "4"]),
    ("K4", ["s1", "r1", "s2", "r2", "s3", "r3"]),
    ("W4", ["s1", "r1", "s2", "r2", "s3"]),
    ("Delta3", None),
]


def _instance(name: str, fan):
    m = C.get(name)
    if fan is None:
        t = m.triangle_masks()[0]
        fan = m.ordered(t)
    return m, [str(x) for x in fan]


@scenario("growfan-props", "fan growing keeps the fan, the minor and 3-connectivity")
def _growfan_props(s: Scenario) -> None:
    for name, fan in GROW_INSTANCES:
        for n in (3, 4, 5):
            @s.claim(f"{name}:n={n}")
            def _(name=name, fan=fan, n=n):
                m, seq = _instance(name, fan)
                g = grow_fan(m, seq[:3], n, fan=seq)
                item1 = is_fan(g.matroid, g.fan)
                wit = grown_minor_witness(m, g, seq[1])
                item2 = wit is not None
                item3 = is_three_connected(g.matroid)
                size_ok = g.matroid.n == m.n + 2 * n - 4
                return item1 and item2 and item3 and size_ok, {
                    "fan": list(g.fan),
                    "fan_ok": item1,
                    "minor": None if wit is None else {"contract": wit[0], "delete": wit[1], "renamed": wit[2]},
                    "three_connected": item3,
                    "size": g.matroid.n,
                }


def _no_four_fan(m: Matroid) -> bool:
    return not any(len(f) >= 4 for f in all_fans(m))


NOFAN_PATTERNS = ["U2,4", "U2,5", "U3,5", "U2,6", "U4,6", "F7", "F7*", "F7-", "F7-*", "P6", "P7", "O7",
                  "P8", "P8=", "AG23e", "AG23e*", "Delta3", "K4"]


@scenario("nofanfan-props", "an N-minor of a grown fan comes from Delta(M)")
def _nofanfan_props(s: Scenario) -> None:
    for name, fan in GROW_INSTANCES:
        @s.claim(f"{name}")
        def _(name=name, fan=fan):
            m, seq = _instance(name, fan)
            tri = seq[:3]
            d = None
            rows = {}
            ok = True
            for pname in NOFAN_PATTERNS:
                p = C.get(pname)
                if not is_three_connected(p) or not _no_four_fan(p):
                    rows[pname] = "pattern has a 4-element fan"
                    continue
                if has_minor(m, p) is not None:
                    rows[pname] = "host already has the minor"
                    continue
                for n in (3, 4, 5):
                    g = grow_fan(m, tri, n).matroid
                    if has_minor(g, p) is None:
                        rows[f"{pname}:n={n}"] = "no minor"
                        continue
                    if d is None:
                        d = delta_y(m, tri)
                    good = has_minor(d, p) is not None
                    ok &= good
                    rows[f"{pname}:n={n}"] = "delta has it" if good else "COUNTEREXAMPLE"
            return ok, rows


# -- membership spot checks -------------------------------------------------------

@scenario("membership-spotchecks", "finite membership facts behind the non-superfluous cases")
def _membership(s: Scenario) -> None:
    @s.claim("PG32:has-F7-and-F7*")
    def _():
        pg = C.get("PG32")
        a, b = has_minor(pg, C.get("F7")), has_minor(pg, C.get("F7*"))
        return a is not None and b is not None, {"F7": a, "F7*": b}

    @s.claim("PG32:in-ex(S-{F7,F7*})")
    def _():
        return _free_of(C.get("PG32"), [n for n in C.ex_set_names("sru") if n not in ("F7", "F7*")])

    for k in (5, 6, 7, 8):
        for cls, drop in (("sru", "U2,5"), ("nearregular", "U2,5"), ("gf3", "U2,5")):
            @s.claim(f"U2,{k}:in-ex({cls}-U2,5)-not-ex({cls})")
            def _(k=k, cls=cls, drop=drop):
                u = C.get(f"U2,{k}")
                free, wit = _free_of(u, [n for n in C.ex_set_names(cls) if n != drop])
                return free and has_minor(u, C.get(drop)) is not None, wit

    for k in (6, 7, 8):
        @s.claim(f"U2,{k}:in-ex(O-U2,6)-not-ex(O)")
        def _(k=k):
            u = C.get(f"U2,{k}")
            free, wit = _free_of(u, [n for n in C.ex_set_names("gf4") if n != "U2,6"])
            return free and has_minor(u, C.get("U2,6")) is not None, wit

    for name in ("AG23", "AG23*", "AG23e", "AG23e*"):
        @s.claim(f"{name}:in-ex(N-{{F7,AG23e,AG23e*}})-not-ex(N)")
        def _(name=name):
            m = C.get(name)
            rest = [n for n in C.ex_set_names("nearregular") if n not in ("F7", "AG23e", "AG23e*")]
            free, wit = _free_of(m, rest)
            inside, _w = _free_of(m, C.ex_set_names("nearregular"))
            return free and not inside, wit

    @s.claim("F7:in-ex({U24,F7*})-not-ex({U24,F7,F7*})")
    def _():
        f7 = C.get("F7")
        free, wit = _free_of(f7, ["U2,4", "F7*"])
        return free and has_minor(f7, f7) is not None, wit

    for cls, q in (("gf4", 4), ("gf3", 3)):
        for name in C.ex_set_names(cls):
            @s.claim(f"{cls}:{name}:excluded-minor")
            def _(name=name, q=q):
                m = C.get(name)
                if representation(m, q) is not None:
                    return False, {"representable": True}
                bad = []
                for x in m.labels:
                    for kind, minor in (("delete", m.delete([x])), ("contract", m.contract([x]))):
                        if representation(minor, q) is None:
                            bad.append([kind, x])
                return not bad, {"non_representable_minors": bad}

    @s.claim("P8-:gf4-representable")
    def _():
        return representation(C.get("P8-"), 4) is not None, None


# --- running ---------------------------------------------------------------------

def scenario_ids() -> list[str]:
    return sorted(SCENARIOS)


def get_scenario(sid: str) -> Scenario:
    if sid not in SCENARIOS:
        raise KeyError(f"unknown scenario {sid!r}; known: {', '.join(scenario_ids())}")
    return SCENARIOS[sid]()


def run_scenario(sid: str) -> dict:
    s = get_scenario(sid)
    reports = [run_claim(cid, fn) for cid, fn in s.claims]
    reports.sort(key=lambda r: r.id)
    return {"scenario": s.id, "paper_ref": s.paper_ref, "claims": reports}


def scenario_json(result: dict, timings: bool = False) -> dict:
    return {
        "scenario": result["scenario"],
        "paper_ref": result["paper_ref"],
        "claims": [r.to_json(timings) for r in result["claims"]],
    }


def _run_json(sid: str, timings: bool) -> dict:
    return scenario_json(run_scenario(sid), timings)


def run_all(ids: list[str] | None = None, jobs: int = 1, timings: bool = False) -> dict:
    """Run scenarios (all when ``ids`` is None) and return the full report.

    Scenarios run in worker processes when ``jobs > 1``; the report lists
    them in id order, so its content does not depend on ``jobs``.
    """
    ids = scenario_ids() if ids is None else sorted(set(ids))
    for sid in ids:
        get_scenario(sid)  # fail early on unknown ids
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_json, ids, [timings] * len(ids)))
    else:
        results = [_run_json(sid, timings) for sid in ids]
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in results:
        for c in r["claims"]:
            counts[c["status"]] += 1
    counts["claims"] = sum(len(r["claims"]) for r in results)
    return {"scenarios": results, "summary": counts}


def report_text(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write_report(report: dict, path: str | Path) -> None:
    Path(path).write_text(report_text(report), encoding="utf-8")


def exit_code(report: dict, strict: bool = False) -> int:
    s = report["summary"]
    if s["fail"] or (strict and s["skipped"]):
        return 1
    return 0
