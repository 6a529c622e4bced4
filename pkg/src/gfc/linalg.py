"""Exact linear algebra over Q.

Matrices are stored sparsely as {(i, j): Fraction}.  Two independent
elimination routes are provided for the rank: fraction-free (Bareiss)
elimination over Z after clearing denominators row by row, and plain
Gaussian elimination over Fractions.  Kernels and solves go through a
sparse reduced row echelon form; pivots are always the first admissible
entry in row-major order, so every output is deterministic.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

SparseVec = dict[int, Fraction]


class DimensionMismatch(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def format_rational(x) -> str:
    x = _frac(x)
    return f"{x.numerator}/{x.denominator}"


class RatMatrix:
    """Immutable sparse rational matrix; only nonzero entries are stored."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative shape")
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            v = _frac(v)
            if v:
                clean[int(i), int(j)] = v
        self.rows = rows
        self.cols = cols
        self._entries = clean

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged rows")
        ent = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(len(rows), cols, ent)

    @classmethod
    def from_row_dicts(cls, rows: Sequence[dict], cols: int):
        ent = {(i, j): v for i, r in enumerate(rows) for j, v in r.items()}
        return cls(len(rows), cols, ent)

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._entries)

    def __getitem__(self, ij) -> Fraction:
        return self._entries.get(ij, Fraction(0))

    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def row_dicts(self) -> list[SparseVec]:
        out = [dict() for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def to_rows(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    def column(self, j: int) -> list[Fraction]:
        return [self[i, j] for i in range(self.rows)]

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        by_row = other.row_dicts()
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self._entries.items():
            for j, b in by_row[k].items():
                acc[i, j] = acc.get((i, j), 0) + a * b
        return RatMatrix(self.rows, other.cols, acc)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape}")
        out = [Fraction(0)] * self.rows
        for (i, j), a in self._entries.items():
            if v[j]:
                out[i] += a * v[j]
        return out

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        acc = dict(self._entries)
        for ij, v in other._entries.items():
            acc[ij] = acc.get(ij, 0) - v
        return RatMatrix(self.rows, self.cols, acc)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols}, nnz={len(self._entries)})"

    # matrix text format: "rows cols" then "i j p/q" per nonzero, sorted
    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        for (i, j) in sorted(self._entries):
            lines.append(f"{i} {j} {format_rational(self._entries[i, j])}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RatMatrix":
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        rows, cols = int(lines[0][0]), int(lines[0][1])
        ent = {(int(i), int(j)): Fraction(v) for i, j, v in lines[1:]}
        return cls(rows, cols, ent)


def _as_matrix(m) -> RatMatrix:
    return m if isinstance(m, RatMatrix) else RatMatrix.from_rows(m)


# ----------------------------------------------------------------------
# rank: fraction-free route


def _integer_rows(m: RatMatrix) -> list[list[int]]:
    """Dense integer rows, each row scaled by the lcm of its denominators."""
    out = []
    for row in m.row_dicts():
        if not row:
            continue
        den = 1
        for v in row.values():
            den = lcm(den, v.denominator)
        dense = [0] * m.cols
        for j, v in row.items():
            dense[j] = v.numerator * (den // v.denominator)
        out.append(dense)
    return out


def _integer_entries(m: RatMatrix) -> dict[tuple[int, int], int]:
    """Sparse integer entries, each row scaled by the lcm of its denominators."""
    out = {}
    for i, row in enumerate(m.row_dicts()):
        den = 1
        for v in row.values():
            den = lcm(den, v.denominator)
        for j, v in row.items():
            out[i, j] = v.numerator * (den // v.denominator)
    return out


def rank_bareiss(m) -> int:
    """Rank by fraction-free Bareiss elimination over Z."""
    m = _as_matrix(m)
    a = _integer_rows(m)
    nrows, ncols = len(a), m.cols
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            ri = a[i]
            q = ri[c]
            # every division below is exact (Sylvester identity)
            a[i] = [(p * ri[j] - q * pr[j]) // prev for j in range(ncols)]
        prev = p
        r += 1
    return r


def rank_rational(m) -> int:
    """Rank by straightforward Gaussian elimination over Fractions."""
    m = _as_matrix(m)
    rows = [r for r in m.to_rows() if any(r)]
    nrows = len(rows)
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, nrows):
            q = rows[i][c]
            if q:
                f = q / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == nrows:
            break
    return r


def rank_mod_p(m, p: int) -> int:
    """Rank modulo p of the denominator-cleared rows; never exceeds the rank over Q.

    Elimination runs on an int64 numpy array, so p must stay below 2^31 for
    products of residues to fit.
    """
    m = _as_matrix(m)
    if not p < 2**31:
        raise ValueError("modulus must be below 2^31")
    if m.rows == 0 or m.cols == 0:
        return 0
    a = np.zeros((m.rows, m.cols), dtype=np.int64)
    for (i, j), x in _integer_entries(m).items():
        a[i, j] = x % p
    r = 0
    for c in range(m.cols):
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r, c:] = (a[r, c:] * pow(int(a[r, c]), -1, p)) % p
        hit = np.flatnonzero(a[r + 1:, c])
        if hit.size:
            rows = r + 1 + hit
            a[rows, c:] = (a[rows, c:] - np.outer(a[rows, c], a[r, c:]) % p) % p
        r += 1
        if r == m.rows:
            break
    return r


_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)


def rank(m, prepass: bool = True, seed: int | None = None) -> int:
    """Exact rank over Q.

    With ``prepass`` a modular rank is computed first; when it already meets
    min(rows, cols) it is the exact answer, otherwise Bareiss decides.
    """
    m = _as_matrix(m)
    if m.is_zero():
        return 0
    if prepass:
        p = random.Random(seed).choice(_PRIMES)
        rp = rank_mod_p(m, p)
        if rp == min(m.rows, m.cols):
            return rp
    return rank_bareiss(m)


# ----------------------------------------------------------------------
# sparse reduced row echelon form


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis of a row space.

    Every stored row has leading coefficient 1 and is zero in the pivot
    columns of all other rows.
    """

    def __init__(self):
        self.rows: dict[int, SparseVec] = {}  # pivot column -> row

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: SparseVec) -> SparseVec:
        v = {j: _frac(x) for j, x in v.items() if x}
        for p in sorted(set(v) & self.rows.keys()):
            c = v.get(p)
            if not c:
                continue
            for j, x in self.rows[p].items():
                y = v.get(j, 0) - c * x
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)
        return v

    def add(self, v: SparseVec) -> bool:
        """Insert v; returns False when v is already in the span."""
        v = self.reduce(v)
        if not v:
            return False
        p = min(v)
        lead = v[p]
        if lead != 1:
            v = {j: x / lead for j, x in v.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for j, x in v.items():
                    y = row.get(j, 0) - c * x
                    if y:
                        row[j] = y
                    else:
                        row.pop(j, None)
        self.rows[p] = v
        return True

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[SparseVec]:
        return [dict(sorted(self.rows[p].items())) for p in self.pivots()]

    def contains(self, v: SparseVec) -> bool:
        return not self.reduce(v)


def rref_rows(rows: Iterable[SparseVec]) -> tuple[list[SparseVec], list[int]]:
    eb = EchelonBasis()
    for r in rows:
        eb.add(r)
    return eb.basis(), eb.pivots()


def rref(m) -> tuple[RatMatrix, list[int]]:
    m = _as_matrix(m)
    rows, piv = rref_rows(m.row_dicts())
    return RatMatrix.from_row_dicts(rows, m.cols), piv


def kernel_rows(rows: Iterable[SparseVec], ncols: int) -> list[SparseVec]:
    """Canonical (reduced echelon) basis of the right kernel, sparse form."""
    red, piv = rref_rows(rows)
    pivset = set(piv)
    # column j -> [(pivot, coeff)] to build the kernel vectors quickly
    by_col: dict[int, list[tuple[int, Fraction]]] = {}
    for p, row in zip(piv, red):
        for j, x in row.items():
            if j != p:
                by_col.setdefault(j, []).append((p, x))
    kern = EchelonBasis()
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: Fraction(1)}
        for p, x in by_col.get(f, ()):
            v[p] = -x
        kern.add(v)
    return kern.basis()


def kernel_basis(m) -> list[list[Fraction]]:
    """Echelonized basis of the right kernel; length cols - rank."""
    m = _as_matrix(m)
    return [[v.get(j, Fraction(0)) for j in range(m.cols)]
            for v in kernel_rows(m.row_dicts(), m.cols)]


def solve(m, v: Sequence) -> list[Fraction] | None:
    """A solution c of m c = v (free variables zero), or None."""
    m = _as_matrix(m)
    if len(v) != m.rows:
        raise DimensionMismatch(f"rhs of length {len(v)} for {m.shape}")
    aug = m.row_dicts()
    rhs_col = m.cols
    for i, x in enumerate(v):
        if x:
            aug[i][rhs_col] = _frac(x)
    red, piv = rref_rows(aug)
    if rhs_col in piv:
        return None
    sol = [Fraction(0)] * m.cols
    for p, row in zip(piv, red):
        sol[p] = row.get(rhs_col, Fraction(0))
    return sol


def in_column_span(m, v: Sequence) -> tuple[bool, list[Fraction] | None]:
    """Whether v lies in the column span of m, with certificate coefficients."""
    sol = solve(m, v)
    return (sol is not None), sol


def hstack(*mats: RatMatrix) -> RatMatrix:
    rows = mats[0].rows
    ent = {}
    off = 0
    for m in mats:
        if m.rows != rows:
            raise DimensionMismatch("row counts differ")
        for (i, j), x in m.entries.items():
            ent[i, j + off] = x
        off += m.cols
    return RatMatrix(rows, off, ent)


def primitive_integer_vector(v: Sequence) -> list[int]:
    """Scale a rational vector to coprime integers with positive leading entry."""
    v = [_frac(x) for x in v]
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return [x // g for x in ints]
