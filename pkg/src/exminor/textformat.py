"""Reading and writing the plain-text matroid format.

A record is a block of ``key: value`` header lines followed by body lines::

    # Fano plane
    name: F7
    kind: linear
    field: GF2
    labels: 1 2 3 4 5 6 7
    1 0 0 1 1 0 1
    0 1 0 1 0 1 1
    0 0 1 0 1 1 1

``kind: linear`` bodies are matrix rows (one entry per label, whitespace
separated, written in the field's notation).  ``kind: bases`` bodies list
one basis per line as labels.  ``#`` starts a comment anywhere on a line.
Other header keys (``note:``, ``facts:``) are kept as free-form metadata.
See docs/format.md for the full grammar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .fields import get_field
from .matroid import BasisMatroid, LinearMatroid, Matroid, MatroidError


class FormatError(MatroidError):
    pass


@dataclass
class Record:
    headers: dict[str, str] = field(default_factory=dict)
    body: list[list[str]] = field(default_factory=list)
    line: int = 1


def _records(text: str) -> list[Record]:
    out: list[Record] = []
    cur: Record | None = None
    in_body = False
    for num, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line and not in_body or line.startswith("name:"):
            key, _, value = line.partition(":")
            key = key.strip().lower()
            if key == "name" or cur is None:
                cur = Record(line=num)
                out.append(cur)
                in_body = False
            if key in cur.headers:
                raise FormatError(f"line {num}: duplicate header {key!r}")
            cur.headers[key] = value.strip()
            continue
        if cur is None:
            raise FormatError(f"line {num}: body line before any header")
        in_body = True
        cur.body.append(line.split())
    return out


def _build(rec: Record) -> Matroid:
    h = rec.headers
    for key in ("name", "kind", "labels"):
        if key not in h:
            raise FormatError(f"record at line {rec.line}: missing {key!r}")
    labels = h["labels"].split()
    kind = h["kind"].lower()
    name = h["name"]
    if kind == "linear":
        if "field" not in h:
            raise FormatError(f"{name}: linear records need a field")
        f = get_field(h["field"])
        try:
            rows = [[f.parse(tok) for tok in row] for row in rec.body]
        except ValueError as exc:
            raise FormatError(f"{name}: {exc}") from None
        if any(len(r) != len(labels) for r in rows):
            raise FormatError(f"{name}: every row needs {len(labels)} entries")
        if not rows:
            rows = [[0] * len(labels)]
        return LinearMatroid(f, rows, labels, name=name)
    if kind == "bases":
        known = set(labels)
        for row in rec.body:
            if not set(row) <= known:
                raise FormatError(f"{name}: basis {row} uses unknown labels")
        return BasisMatroid.from_label_sets(labels, rec.body, name=name)
    raise FormatError(f"{name}: unknown kind {kind!r}")


def loads(text: str) -> list[Matroid]:
    out = []
    for rec in _records(text):
        m = _build(rec)
        m.meta = {k: v for k, v in rec.headers.items() if k not in ("name", "kind", "labels", "field")}
        out.append(m)
    return out


def load(path: str | Path) -> list[Matroid]:
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(m: Matroid, note: str | None = None) -> str:
    lines = []
    if note:
        lines.append(f"# {note}")
    lines.append(f"name: {m.name or 'unnamed'}")
    if isinstance(m, LinearMatroid):
        f = m.field
        lines += ["kind: linear", f"field: {f.name}", "labels: " + " ".join(m.labels)]
        for row in m.rows:
            lines.append(" ".join(_fmt(f, x) for x in row))
    else:
        lines += ["kind: bases", "labels: " + " ".join(m.labels)]
        for b in m.basis_masks():
            lines.append(" ".join(m.ordered(b)))
    return "\n".join(lines) + "\n"


def _fmt(f, x: int) -> str:
    if f.prime and f.q == 3 and x == 2:
        return "-1"
    return f.format(x)
