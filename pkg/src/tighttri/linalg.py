"""Exact dense linear algebra over Q and prime fields.

Rationals use ``fractions.Fraction`` (arbitrary precision, always in lowest
terms); GF(p) entries are ints in ``[0, p)``; GF(2) rows are bit-packed into
Python ints and eliminated with word-parallel XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: characteristic 0 for the rationals, else a prime p."""

    char: int = 0

    def __post_init__(self):
        if self.char:
            if self.char >= 1 << 31:
                raise ValueError("prime fields are supported for p < 2**31")
            if not _is_prime(self.char):
                raise ValueError(f"{self.char} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls(p)

    def __str__(self) -> str:
        return "Q" if self.char == 0 else f"GF({self.char})"


QQ = FieldSpec(0)
GF2 = FieldSpec(2)


class _RowBasisGF2:
    """Reduced basis of a GF(2) row space over bit-packed rows.

    Rows are kept fully reduced against each other, so membership tests and
    incremental extension are single passes.
    """

    __slots__ = ("ncols", "rows", "pivots")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: List[int] = []
        self.pivots: List[int] = []

    def copy(self) -> "_RowBasisGF2":
        c = _RowBasisGF2(self.ncols)
        c.rows = list(self.rows)
        c.pivots = list(self.pivots)
        return c

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, row: int) -> int:
        for p, b in zip(self.pivots, self.rows):
            if (row >> p) & 1:
                row ^= b
        return row

    def add(self, row: int) -> bool:
        r = self.reduce(row)
        if r == 0:
            return False
        piv = (r & -r).bit_length() - 1
        for i, b in enumerate(self.rows):
            if (b >> piv) & 1:
                self.rows[i] = b ^ r
        idx = 0
        while idx < len(self.pivots) and self.pivots[idx] < piv:
            idx += 1
        self.pivots.insert(idx, piv)
        self.rows.insert(idx, r)
        return True


class _RowBasisGeneric:
    """Reduced basis over Q or GF(p), rows stored as lists of scalars."""

    __slots__ = ("ncols", "char", "rows", "pivots")

    def __init__(self, ncols: int, char: int):
        self.ncols = ncols
        self.char = char
        self.rows: List[list] = []
        self.pivots: List[int] = []

    def copy(self) -> "_RowBasisGeneric":
        c = _RowBasisGeneric(self.ncols, self.char)
        c.rows = [list(r) for r in self.rows]
        c.pivots = list(self.pivots)
        return c

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, row: list) -> list:
        row = list(row)
        p_ = self.char
        for piv, b in zip(self.pivots, self.rows):
            c = row[piv]
            if c:
                if p_:
                    for j in range(piv, self.ncols):
                        if b[j]:
                            row[j] = (row[j] - c * b[j]) % p_
                else:
                    for j in range(piv, self.ncols):
                        if b[j]:
                            row[j] = row[j] - c * b[j]
        return row

    def add(self, row: list) -> bool:
        r = self.reduce(row)
        piv = next((j for j, c in enumerate(r) if c), None)
        if piv is None:
            return False
        lead = r[piv]
        if self.char:
            inv = pow(lead, -1, self.char)
            r = [(c * inv) % self.char for c in r]
        else:
            r = [Fraction(c, 1) / lead for c in r]
        for i, b in enumerate(self.rows):
            c = b[piv]
            if c:
                if self.char:
                    self.rows[i] = [(bc - c * rc) % self.char for bc, rc in zip(b, r)]
                else:
                    self.rows[i] = [bc - c * rc for bc, rc in zip(b, r)]
        idx = 0
        while idx < len(self.pivots) and self.pivots[idx] < piv:
            idx += 1
        self.pivots.insert(idx, piv)
        self.rows.insert(idx, r)
        return True


def row_basis(field: FieldSpec, ncols: int):
    """Fresh empty reduced row basis for the given field."""
    if field.char == 2:
        return _RowBasisGF2(ncols)
    return _RowBasisGeneric(ncols, field.char)


class FMatrix:
    """Dense matrix over a :class:`FieldSpec`.

    For GF(2) the rows are ints with bit j = column j; otherwise each row is
    a list of exact scalars.  Instances are immutable in practice: no method
    mutates ``self``.
    """

    __slots__ = ("field", "nrows", "ncols", "rows", "_rank")

    def __init__(self, field: FieldSpec, nrows: int, ncols: int, rows):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows
        self._rank: Optional[int] = None

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable], ncols: Optional[int] = None) -> "FMatrix":
        """Build from an iterable of entry rows (ints or Fractions)."""
        data = [list(r) for r in rows]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        if field.char == 2:
            packed = []
            for r in data:
                m = 0
                for j, c in enumerate(r):
                    if int(c) % 2:
                        m |= 1 << j
                packed.append(m)
            return cls(field, len(data), ncols, packed)
        if field.char:
            p = field.char
            return cls(field, len(data), ncols, [[int(c) % p for c in r] for r in data])
        return cls(field, len(data), ncols, [[Fraction(c) for c in r] for r in data])

    @classmethod
    def from_bitrows(cls, masks: Iterable[int], ncols: int) -> "FMatrix":
        """GF(2) constructor from pre-packed row masks."""
        rows = list(masks)
        return cls(GF2, len(rows), ncols, rows)

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "FMatrix":
        if field.char == 2:
            return cls(field, nrows, ncols, [0] * nrows)
        zero = 0 if field.char else Fraction(0)
        return cls(field, nrows, ncols, [[zero] * ncols for _ in range(nrows)])

    def entry(self, i: int, j: int):
        if self.field.char == 2:
            return (self.rows[i] >> j) & 1
        return self.rows[i][j]

    def to_lists(self) -> list:
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def rank(self) -> int:
        if self._rank is None:
            self._rank = self.rowspace_basis().dim
        return self._rank

    def rowspace_basis(self):
        basis = row_basis(self.field, self.ncols)
        for r in self.rows:
            basis.add(r if self.field.char == 2 else list(r))
        return basis

    def stack(self, other: "FMatrix") -> "FMatrix":
        if self.ncols != other.ncols or self.field != other.field:
            raise ValueError("stack requires matching fields and column counts")
        return FMatrix(self.field, self.nrows + other.nrows, self.ncols,
                       list(self.rows) + list(other.rows))

    def transpose(self) -> "FMatrix":
        if self.field.char == 2:
            cols = []
            for j in range(self.ncols):
                m = 0
                for i, r in enumerate(self.rows):
                    if (r >> j) & 1:
                        m |= 1 << i
                cols.append(m)
            return FMatrix(self.field, self.ncols, self.nrows, cols)
        return FMatrix(self.field, self.ncols, self.nrows,
                       [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def matmul(self, other: "FMatrix") -> "FMatrix":
        if self.ncols != other.nrows or self.field != other.field:
            raise ValueError("incompatible shapes for matmul")
        if self.field.char == 2:
            out = []
            for r in self.rows:
                acc = 0
                rr = r
                while rr:
                    j = (rr & -rr).bit_length() - 1
                    acc ^= other.rows[j]
                    rr &= rr - 1
                out.append(acc)
            return FMatrix(self.field, self.nrows, other.ncols, out)
        p = self.field.char
        out_rows = []
        for r in self.rows:
            acc = [0 if p else Fraction(0)] * other.ncols
            for j, c in enumerate(r):
                if c:
                    orow = other.rows[j]
                    for t in range(other.ncols):
                        if orow[t]:
                            acc[t] = acc[t] + c * orow[t]
            if p:
                acc = [c % p for c in acc]
            out_rows.append(acc)
        return FMatrix(self.field, self.nrows, other.ncols, out_rows)

    def is_zero(self) -> bool:
        if self.field.char == 2:
            return all(r == 0 for r in self.rows)
        return all(not c for r in self.rows for c in r)

    def right_nullspace(self) -> "FMatrix":
        """Basis (as rows) of {x : M x = 0}."""
        basis = self.rowspace_basis()
        pivset = set(basis.pivots)
        free = [j for j in range(self.ncols) if j not in pivset]
        if self.field.char == 2:
            vectors = []
            for f in free:
                x = 1 << f
                for p, brow in zip(basis.pivots, basis.rows):
                    if (brow >> f) & 1:
                        x |= 1 << p
                vectors.append(x)
            return FMatrix(self.field, len(vectors), self.ncols, vectors)
        p_ = self.field.char
        vectors = []
        for f in free:
            x = [0 if p_ else Fraction(0)] * self.ncols
            x[f] = 1 if p_ else Fraction(1)
            for piv, brow in zip(basis.pivots, basis.rows):
                c = brow[f]
                if c:
                    x[piv] = (-c) % p_ if p_ else -c
            vectors.append(x)
        return FMatrix(self.field, len(vectors), self.ncols, vectors)

    def left_nullspace(self) -> "FMatrix":
        """Basis (as rows) of {c : c M = 0}."""
        return self.transpose().right_nullspace()

    def embed_columns(self, new_ncols: int, col_map: list) -> "FMatrix":
        """Scatter columns into a wider matrix: old column j becomes col_map[j]."""
        if len(col_map) != self.ncols:
            raise ValueError("column map length mismatch")
        if self.field.char == 2:
            out = []
            for r in self.rows:
                m = 0
                rr = r
                while rr:
                    j = (rr & -rr).bit_length() - 1
                    m |= 1 << col_map[j]
                    rr &= rr - 1
                out.append(m)
            return FMatrix(self.field, self.nrows, new_ncols, out)
        p = self.field.char
        zero = 0 if p else Fraction(0)
        out_rows = []
        for r in self.rows:
            x = [zero] * new_ncols
            for j, c in enumerate(r):
                if c:
                    x[col_map[j]] = c
            out_rows.append(x)
        return FMatrix(self.field, self.nrows, new_ncols, out_rows)

    def rowspace_intersection(self, other: "FMatrix") -> "FMatrix":
        """Basis of rowspace(self) âˆ© rowspace(other) via the split-block trick.

        Reduce rows (a | a) for a in self and (b | 0) for b in other; basis
        rows whose left block vanished carry intersection vectors in the
        right block.
        """
        if self.ncols != other.ncols or self.field != other.field:
            raise ValueError("intersection requires matching fields and column counts")
        c = self.ncols
        basis = row_basis(self.field, 2 * c)
        if self.field.char == 2:
            for a in self.rows:
                basis.add(a | (a << c))
            for b in other.rows:
                basis.add(b)
            low = (1 << c) - 1
            vecs = [r >> c for r in basis.rows if not (r & low)]
            return FMatrix(self.field, len(vecs), c, vecs)
        zero = 0 if self.field.char else Fraction(0)
        for a in self.rows:
            basis.add(list(a) + list(a))
        for b in other.rows:
            basis.add(list(b) + [zero] * c)
        vecs = [r[c:] for r in basis.rows if not any(r[:c])]
        return FMatrix(self.field, len(vecs), c, vecs)


def rank(m: FMatrix) -> int:
    return m.rank()


def dim_sum(a: FMatrix, b: FMatrix) -> int:
    """Dimension of rowspace(a) + rowspace(b)."""
    if a.ncols != b.ncols or a.field != b.field:
        raise ValueError("dim_sum requires matching fields and column counts")
    basis = a.rowspace_basis()
    for r in b.rows:
        basis.add(r if b.field.char == 2 else list(r))
    return basis.dim
