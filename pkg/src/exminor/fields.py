"""Table-backed arithmetic in GF(2), GF(3), GF(4), GF(5) and GF(8).

Elements are stored as small integers.  For prime fields the integer is the
residue; for GF(4) and GF(8) the integer's bits are the coefficients of a
polynomial in the generator, reduced modulo x^2+x+1 and x^3+x+1
respectively.  So in GF(8) the generator ``a`` is 2, ``a+1`` is 3 and
``a2`` (a squared) is 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

SUPPORTED_ORDERS = (2, 3, 4, 5, 8)

# Minimal polynomials as bit patterns (x^2+x+1 and x^3+x+1).
_MODULUS = {4: 0b111, 8: 0b1011}
_DEGREE = {4: 2, 8: 3}
_GEN_NAME = {4: "w", 8: "a"}


class FieldMismatchError(ValueError):
    pass


def _poly_mul(a: int, b: int, modulus: int, degree: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> degree & 1:
            a ^= modulus
    return out


class SmallField:
    """One of the five small fields, with full addition/multiplication tables."""

    def __init__(self, q: int):
        if q not in SUPPORTED_ORDERS:
            raise ValueError(f"unsupported field order {q}; expected one of {SUPPORTED_ORDERS}")
        self.q = q
        self.name = f"GF{q}"
        self.prime = q in (2, 3, 5)
        self.characteristic = q if self.prime else 2
        elems = range(q)
        if self.prime:
            self.add_table = tuple(tuple((a + b) % q for b in elems) for a in elems)
            self.mul_table = tuple(tuple((a * b) % q for b in elems) for a in elems)
        else:
            mod, deg = _MODULUS[q], _DEGREE[q]
            self.add_table = tuple(tuple(a ^ b for b in elems) for a in elems)
            self.mul_table = tuple(tuple(_poly_mul(a, b, mod, deg) for b in elems) for a in elems)
        self.neg_table = tuple(next(b for b in elems if self.add_table[a][b] == 0) for a in elems)
        self.inv_table = (None,) + tuple(
            next(b for b in elems if self.mul_table[a][b] == 1) for a in range(1, q)
        )
        self.generator = None if self.prime else 2

    def __repr__(self) -> str:
        return f"SmallField({self.q})"

    def __reduce__(self):
        return (get_field, (self.q,))

    # integer-level arithmetic, used by the linear algebra hot loops
    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        return self.inv_table[a]

    def power(self, a: int, k: int) -> int:
        out = 1
        for _ in range(k):
            out = self.mul_table[out][a]
        return out

    def order_of(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul_table[x][a]
            k += 1
        return k

    def element(self, value) -> "FieldElement":
        if isinstance(value, str):
            value = self.parse(value)
        if not 0 <= value < self.q:
            raise ValueError(f"{value} is not an element index of {self.name}")
        return FieldElement(self.q, value)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self.q, v) for v in range(self.q)]

    # text form
    def format(self, a: int) -> str:
        if self.prime or a < 2:
            return str(a)
        if self.q == 4:
            return ("w", "w2")[a - 2]
        g = _GEN_NAME[self.q]
        terms = []
        for power in range(_DEGREE[self.q] - 1, -1, -1):
            if a >> power & 1:
                terms.append("1" if power == 0 else g if power == 1 else f"{g}{power}")
        return "+".join(terms)

    def parse(self, token: str) -> int:
        token = token.strip().replace(" ", "")
        if self.prime:
            try:
                return int(token) % self.q
            except ValueError:
                raise ValueError(f"bad {self.name} element {token!r}") from None
        g = _GEN_NAME[self.q]
        value = 0
        for term in token.split("+"):
            if term == "0":
                bit = 0
            elif term == "1":
                bit = 1
            elif term == g:
                bit = 2
            elif term.startswith(g) and term[len(g):].isdigit():
                power = int(term[len(g):])
                bit = _poly_power_bits(self.q, power)
            else:
                raise ValueError(f"bad {self.name} element {token!r}")
            value ^= bit
        return value


def _poly_power_bits(q: int, power: int) -> int:
    f = get_field(q)
    return f.power(2, power)


def get_field(q: int | str) -> SmallField:
    """Shared field instance by order (2) or name ('GF2')."""
    if isinstance(q, str):
        name = q.strip().upper()
        if not name.startswith("GF") or not name[2:].isdigit():
            raise ValueError(f"unknown field {q!r}")
        q = int(name[2:])
    return _field(q)


@lru_cache(maxsize=None)
def _field(q: int) -> SmallField:
    return SmallField(q)


@dataclass(frozen=True)
class FieldElement:
    q: int
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.q:
            raise ValueError(f"value index {self.value} out of range for GF{self.q}")

    @property
    def field(self) -> SmallField:
        return get_field(self.q)

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.q != self.q:
            raise FieldMismatchError(f"GF{self.q} element combined with GF{other.q} element")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.q, self.field.add_table[self.value][other.value])

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.q, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.q, self.field.mul_table[self.value][other.value])

    def __truediv__(self, other):
        return self * other.inverse()

    def __neg__(self):
        return FieldElement(self.q, self.field.neg_table[self.value])

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElement(self.q, self.field.power(self.value, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.q, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return self.field.format(self.value)

    def __repr__(self) -> str:
        return f"GF{self.q}({self.field.format(self.value)})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def matrix_rank(field: SmallField, rows: list[list[int]]) -> int:
    """Rank of a matrix of element indices (rows are copied, not modified)."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    mul_t, add_t, neg_t, inv_t = field.mul_table, field.add_table, field.neg_table, field.inv_table
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        prow = m[rank]
        pinv = inv_t[prow[c]]
        prow = [mul_t[pinv][x] for x in prow]
        m[rank] = prow
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = neg_t[m[i][c]]
                row = m[i]
                m[i] = [add_t[row[j]][mul_t[f][prow[j]]] for j in range(ncols)]
        rank += 1
        if rank == len(m):
            break
    return rank
