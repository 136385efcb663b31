"""Linear codes over small prime-power fields, with exact minimum distance.

Minimum distance is the minimum weight of a nonzero codeword and is found
by full enumeration of all q^k codewords, capped by an explicit budget; the
library never reports an approximate distance as exact. Binary codes take a
packed-integer Gray-code path, everything else a generic odometer walk.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .codes import Code, CodeParams
from .errors import BudgetExceededError, ContractViolationError, UnknownSeedFamilyError
from .fields import GF, FieldSpec

DEFAULT_ENUM_CAP = 1 << 24
DEFAULT_WORDS_CAP = 1 << 20


def _rank(field: FieldSpec, rows: list[list[int]]) -> int:
    rows = [row[:] for row in rows]
    n_cols = len(rows[0]) if rows else 0
    rank = 0
    col = 0
    while rank < len(rows) and col < n_cols:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [field.sub(x, field.mul(factor, y)) for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class GeneratorMatrix:
    """Full-rank k x n matrix over a finite field, rows generate the code."""

    field: FieldSpec
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows:
            raise ContractViolationError("generator matrix needs at least one row")
        n = len(self.rows[0])
        for row in self.rows:
            if len(row) != n:
                raise ContractViolationError("ragged generator matrix")
            if any(not 0 <= x < self.field.q for x in row):
                raise ContractViolationError("entry outside the field")
        if _rank(self.field, [list(r) for r in self.rows]) != len(self.rows):
            raise ContractViolationError("generator matrix must have full rank")

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])


class LinearCode:
    """Linear [n, k] code; length, dimension and distance are exact values."""

    def __init__(self, gen: GeneratorMatrix):
        self.gen = gen

    @property
    def field(self) -> FieldSpec:
        return self.gen.field

    @property
    def q(self) -> int:
        return self.gen.field.q

    @property
    def n(self) -> int:
        return self.gen.n

    @property
    def k(self) -> int:
        return self.gen.k

    @property
    def m(self) -> int:
        return self.q ** self.k

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}]_{self.q})"

    def __eq__(self, other):
        return isinstance(other, LinearCode) and self.gen == other.gen

    def __hash__(self):
        return hash(self.gen)

    @cached_property
    def d(self) -> int:
        return min_weight(self)

    def codewords(self, cap: int = DEFAULT_WORDS_CAP):
        """Yield all q^k codewords as bytes, message order."""
        if self.m > cap:
            raise BudgetExceededError(
                f"q^k = {self.m} exceeds word enumeration cap", nodes=self.m, cap=cap
            )
        field = self.field
        for message in itertools.product(range(self.q), repeat=self.k):
            word = [0] * self.n
            for coeff, row in zip(message, self.gen.rows):
                if coeff:
                    for idx, entry in enumerate(row):
                        if entry:
                            word[idx] = field.add(word[idx], field.mul(coeff, entry))
            yield bytes(word)

    def params(self) -> CodeParams:
        return CodeParams(q=self.q, n=self.n, m=self.m, d=self.d)


def min_weight(code: LinearCode, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Exact minimum nonzero-codeword weight by full enumeration."""
    if code.m > cap:
        raise BudgetExceededError(
            f"q^k = {code.m} exceeds enumeration cap", nodes=code.m, cap=cap
        )
    if code.q == 2:
        return _min_weight_binary(code.gen)
    best = code.n + 1
    first = True
    for word in code.codewords(cap=cap):
        if first:
            first = False  # zero message
            continue
        w = sum(1 for s in word if s)
        if w < best:
            best = w
    return best


def _min_weight_binary(gen: GeneratorMatrix) -> int:
    rows = [_row_to_int(row) for row in gen.rows]
    best = gen.n + 1
    word = 0
    gray_prev = 0
    for counter in range(1, 1 << gen.k):
        gray = counter ^ (counter >> 1)
        word ^= rows[(gray ^ gray_prev).bit_length() - 1]
        gray_prev = gray
        w = word.bit_count()
        if w < best:
            best = w
    return best


def _row_to_int(row) -> int:
    value = 0
    for bit in row:
        value = (value << 1) | bit
    return value


def to_code(code: LinearCode, cap: int = DEFAULT_WORDS_CAP) -> Code:
    """Explicit word-set view; parameters match (n, q^k, d) exactly."""
    return Code.from_words(code.q, code.codewords(cap=cap))


# --- seed families -------------------------------------------------------


def _repetition(n: int, q: int) -> LinearCode:
    if n < 1:
        raise ContractViolationError("repetition length must be >= 1")
    return LinearCode(GeneratorMatrix(GF(q), ((1,) * n,)))


def _parity(n: int, q: int) -> LinearCode:
    """[n, n-1, 2] code whose words have coordinate sum zero."""
    if n < 2:
        raise ContractViolationError("parity-check length must be >= 2")
    field = GF(q)
    rows = []
    for r in range(n - 1):
        row = [0] * n
        row[r] = 1
        row[n - 1] = field.neg(1)
        rows.append(tuple(row))
    return LinearCode(GeneratorMatrix(field, tuple(rows)))


_HAMMING_7_4_TAILS = ((0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1))


def _hamming_7_4() -> LinearCode:
    rows = []
    for r in range(4):
        row = [0] * 4
        row[r] = 1
        rows.append(tuple(row) + _HAMMING_7_4_TAILS[r])
    return LinearCode(GeneratorMatrix(GF(2), tuple(rows)))


def _extended_hamming_8_4() -> LinearCode:
    base = _hamming_7_4()
    rows = []
    for row in base.gen.rows:
        rows.append(row + (sum(row) % 2,))
    return LinearCode(GeneratorMatrix(GF(2), tuple(rows)))


def product_code(a: LinearCode, b: LinearCode) -> LinearCode:
    """Tensor-product code: parameters multiply, [n1*n2, k1*k2, d1*d2]."""
    if a.q != b.q:
        raise ContractViolationError("product factors must share the field")
    field = a.field
    rows = []
    for ra in a.gen.rows:
        for rb in b.gen.rows:
            rows.append(tuple(field.mul(x, y) for x in ra for y in rb))
    return LinearCode(GeneratorMatrix(field, tuple(rows)))


def seed_family(name: str, *, n: Optional[int] = None, q: int = 2,
                factors: Optional[tuple[LinearCode, LinearCode]] = None) -> LinearCode:
    """Built-in linear codes with documented exact parameters.

    Names: repetition (needs n), parity (needs n), hamming_7_4,
    extended_hamming_8_4, product (needs factors).
    """
    if name == "repetition":
        if n is None:
            raise ContractViolationError("repetition needs n")
        return _repetition(n, q)
    if name == "parity":
        if n is None:
            raise ContractViolationError("parity needs n")
        return _parity(n, q)
    if name == "hamming_7_4":
        return _hamming_7_4()
    if name == "extended_hamming_8_4":
        return _extended_hamming_8_4()
    if name == "product":
        if not factors:
            raise ContractViolationError("product needs two factor codes")
        return product_code(*factors)
    raise UnknownSeedFamilyError(f"unknown seed family {name!r}")


# --- generator matrix text format: header "q n k", then k rows ----------


def write_generator_text(code: LinearCode) -> str:
    lines = [f"{code.q} {code.n} {code.k}"]
    for row in code.gen.rows:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def read_generator_text(text: str) -> LinearCode:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ContractViolationError("empty generator file")
    try:
        q, n, k = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ContractViolationError(f"bad generator header {lines[0]!r}") from exc
    if len(lines) - 1 != k:
        raise ContractViolationError(f"expected {k} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        row = tuple(int(tok) for tok in ln.split())
        if len(row) != n:
            raise ContractViolationError("row length disagrees with header")
        rows.append(row)
    return LinearCode(GeneratorMatrix(GF(q), tuple(rows)))
