"""Named matroids: shipped data files plus parametric builders.

Names are case-insensitive.  ``U24`` and ``U2,4`` are uniform matroids,
``W4`` a wheel, ``Whirl4`` (or ``W^4``) a whirl.  A trailing ``*``
gives the dual of any entry unless a file of that name exists.  The
directory in ``MATROID_CATALOG_DIR`` replaces the shipped data directory.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from . import textformat
from .constructions import wheel, whirl
from .matroid import BasisMatroid, Matroid, MatroidError, UniformMatroid

DATA_DIR = Path(__file__).with_name("data")


class UnknownMatroid(MatroidError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0])


def data_dir() -> Path:
    env = os.environ.get("MATROID_CATALOG_DIR")
    return Path(env) if env else DATA_DIR


@dataclass(frozen=True)
class Facts:
    rank: int | None = None
    size: int | None = None
    triangles: int | None = None
    selfdual: bool | None = None

    @classmethod
    def parse(cls, text: str) -> "Facts":
        vals: dict = {}
        for tok in text.split():
            key, _, value = tok.partition("=")
            if key in ("rank", "size", "triangles"):
                vals[key] = int(value)
            elif key == "selfdual":
                vals[key] = value.lower() in ("yes", "true", "1")
            else:
                raise MatroidError(f"unknown fact {key!r}")
        return cls(**vals)

    def problems(self, m: Matroid) -> list[str]:
        from .isomorphism import is_isomorphic

        out = []
        if self.rank is not None and m.rank() != self.rank:
            out.append(f"rank {m.rank()} != {self.rank}")
        if self.size is not None and m.n != self.size:
            out.append(f"size {m.n} != {self.size}")
        if self.triangles is not None and len(m.triangle_masks()) != self.triangles:
            out.append(f"{len(m.triangle_masks())} triangles != {self.triangles}")
        if self.selfdual is not None and is_isomorphic(m, m.dual()) != self.selfdual:
            out.append(f"self-dual is not {self.selfdual}")
        return out


@lru_cache(maxsize=None)
def _file_index(directory: str) -> dict[str, tuple[Path, str]]:
    """Lower-cased record name -> (file, record name as written)."""
    out = {}
    for p in sorted(Path(directory).glob("*.mat")):
        for rec in textformat._records(p.read_text(encoding="utf-8")):
            if "name" in rec.headers:
                out[rec.headers["name"].lower()] = (p, rec.headers["name"])
    return out


def _load_file(name: str) -> Matroid | None:
    index = _file_index(str(data_dir()))
    if name.lower() not in index:
        return None
    path = index[name.lower()][0]
    for m in textformat.load(path):
        if m.name.lower() == name.lower():
            facts = Facts.parse(m.meta.get("facts", ""))
            bad = facts.problems(m)
            if bad:
                raise AssertionError(f"catalog entry {m.name} fails its facts: {'; '.join(bad)}")
            return m
    return None


def _relaxed(base: str, sets: list[list[str]], name: str) -> BasisMatroid:
    m = get(base)
    masks = [m.mask(s) for s in sets]
    for s in masks:
        if s not in m.circuit_hyperplane_masks():
            raise AssertionError(f"{m.ordered(s)} is not a circuit-hyperplane of {base}")
    return BasisMatroid(m.labels, m.basis_masks() + masks, name=name)


_BUILDERS = {
    "p8-": lambda: _relaxed("P8", [["1", "4", "5", "8"]], "P8-"),
    "ag32'": lambda: _relaxed("AG32", [["1", "2", "3", "8"]], "AG32'"),
    "k4": lambda: _renamed(wheel(3), "K4"),
    "m(k4)": lambda: _renamed(wheel(3), "M(K4)"),
}


def _renamed(m: Matroid, name: str) -> Matroid:
    m.name = name
    return m


_UNIFORM = re.compile(r"^u(\d+),(\d+)$|^u(\d)(\d+)$")
_WHEEL = re.compile(r"^w(\d+)$")
_WHIRL = re.compile(r"^(?:whirl|w\^)(\d+)$")


@lru_cache(maxsize=256)
def _get(key: str, directory: str) -> Matroid:
    m = _load_file(key)
    if m is not None:
        return m
    if key in _BUILDERS:
        return _BUILDERS[key]()
    u = _UNIFORM.match(key)
    if u:
        r, n = (u.group(1), u.group(2)) if u.group(1) else (u.group(3), u.group(4))
        return UniformMatroid(int(r), int(n), name=f"U{r},{n}")
    w = _WHEEL.match(key)
    if w:
        return wheel(int(w.group(1)))
    w = _WHIRL.match(key)
    if w:
        return whirl(int(w.group(1)))
    if key.endswith("*"):
        base = _get(key[:-1], directory)
        d = base.dual()
        d.name = base.name + "*"
        return d
    raise UnknownMatroid(f"unknown matroid {key!r}")


def get(name: str) -> Matroid:
    """The catalog matroid called ``name``."""
    return _get(name.strip().lower(), str(data_dir()))


def names() -> list[str]:
    """Every fixed catalog name, then the parametric families as patterns.

    Names come from the record headers, so listing never builds a matroid.
    """
    fixed = {name for _, name in _file_index(str(data_dir())).values()}
    fixed |= {"P8-", "AG32'", "K4"}
    for base in ("F7", "AG23e", "Delta3", "P8", "S5612"):
        fixed.add(base + "*")
    return sorted(fixed, key=str.lower) + ["U{r},{n}", "W{n}", "Whirl{n}"]


EX_SETS = {
    "gf2": ["U2,4"],
    "regular": ["U2,4", "F7", "F7*"],
    "gf3": ["U2,5", "U3,5", "F7", "F7*"],
    "gf4": ["U2,6", "U4,6", "F7-", "F7-*", "P6", "P8", "P8="],
    "sru": ["U2,5", "U3,5", "F7", "F7*", "F7-", "F7-*", "P8"],
    "nearregular": ["U2,5", "U3,5", "F7", "F7*", "F7-", "F7-*", "AG23e", "AG23e*", "Delta3", "P8"],
}
_EX_ALIASES = {"o": "gf4", "s": "sru", "n": "nearregular", "near-regular": "nearregular"}


def ex_set_names(name: str) -> list[str]:
    key = name.strip().lower()
    key = _EX_ALIASES.get(key, key)
    if key not in EX_SETS:
        raise UnknownMatroid(f"unknown excluded-minor set {name!r}")
    return list(EX_SETS[key])


def ex_set(name: str) -> dict[str, Matroid]:
    """Excluded minors of one of the classes, keyed by catalog name."""
    return {n: get(n) for n in ex_set_names(name)}


def clear_cache() -> None:
    _get.cache_clear()
    _file_index.cache_clear()
