"""Sp(2, R)-invariant cochains on products of exterior powers of S^k H (n = 1).

A cochain on Lambda^{m_1} S^1 H x Lambda^{m_3} S^3 H x ... is stored by its
values on wedge monomials.  Every basis monomial of S^k H gets a global id

    gid(k, i) = k (k + 1) / 2 + i        (i = index in the S^k H basis)

so that sorting gids sorts by (k, monomial order).  A wedge monomial is a
strictly increasing tuple of gids, and a cochain phi is the dict
``{J: phi(e_J1, ..., e_Jd)}``.

The induced sl(2) action on cochains is (X.phi)(v_1..v_d) = -sum_j
phi(v_1, .., X v_j, .., v_d); moving X v_j back into sorted position
introduces the usual sign of the sorting permutation.  Invariants are
computed as the joint kernel of e and f on the h-weight zero part and
returned in reduced row echelon form (pivot = first nonzero coordinate in
wedge-monomial order, pivot value 1).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, isqrt
from typing import Iterable, Mapping

from .linalg import RatMatrix, kernel_rows, rank
from .poisson import Monomial, enumerate_monomials, sl2_operator

Wedge = tuple[int, ...]
Cochain = dict  # Wedge -> Fraction


def gid(k: int, i: int) -> int:
    return k * (k + 1) // 2 + i


def slot_of(g: int) -> tuple[int, int]:
    """Inverse of gid: (k, i)."""
    k = (isqrt(8 * g + 1) - 1) // 2
    return k, g - k * (k + 1) // 2


def gid_weight(g: int) -> int:
    """h-weight of the basis monomial x^a y^b behind a gid, namely a - b."""
    k, i = slot_of(g)
    return k - 2 * i


def gid_monomial(g: int) -> Monomial:
    k, i = slot_of(g)
    return enumerate_monomials(1, k)[i]


def sort_sign(seq) -> tuple[int, tuple] | None:
    """(sign, sorted tuple) of a sequence of distinct ints; None if repeated."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return None
    sign = 1
    # insertion sort; each swap flips the sign
    for a in range(1, len(seq)):
        b = a
        while b > 0 and seq[b - 1] > seq[b]:
            seq[b - 1], seq[b] = seq[b], seq[b - 1]
            sign = -sign
            b -= 1
    return sign, tuple(seq)


def replace_at(t: Wedge, pos: int, new: int) -> tuple[int, Wedge] | None:
    """Replace t[pos] by new and re-sort; returns (sign, wedge) or None."""
    if new in t and t[pos] != new:
        return None
    rest = t[:pos] + t[pos + 1:]
    lo = sum(1 for x in rest if x < new)
    # new sits at index pos before sorting, at lo afterwards
    sign = -1 if (pos - lo) % 2 else 1
    return sign, rest[:lo] + (new,) + rest[lo:]


def insert_sign(rest: Wedge, new: int) -> tuple[int, Wedge] | None:
    """Move ``new`` from the front of (new, *rest) into sorted position."""
    if new in rest:
        return None
    lo = sum(1 for x in rest if x < new)
    return (-1 if lo % 2 else 1), rest[:lo] + (new,) + rest[lo:]


@dataclass(frozen=True, order=True)
class IrrepProfile:
    """Multiset {S^k : m_k} of exterior-power slots.

    ``slots`` is a sorted tuple of (k, m_k) with m_k > 0.
    """

    slots: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        norm = tuple(sorted((int(k), int(m)) for k, m in self.slots if m))
        if len({k for k, _ in norm}) != len(norm):
            raise ValueError(f"repeated slot in {self.slots}")
        for k, m in norm:
            if k < 0 or m < 0:
                raise ValueError(f"bad slot {(k, m)}")
        object.__setattr__(self, "slots", norm)

    @classmethod
    def of(cls, mapping: Mapping[int, int] | None = None, **kw) -> "IrrepProfile":
        return cls(tuple((mapping or {}).items()))

    @classmethod
    def parse(cls, label: str) -> "IrrepProfile":
        """Parse labels like ``"3^2 4^2 6"`` or ``"(3^2 4 5^2)"``."""
        label = label.strip().strip("()")
        mult: dict[int, int] = {}
        for tok in label.split():
            k, _, m = tok.partition("^")
            mult[int(k)] = mult.get(int(k), 0) + (int(m) if m else 1)
        return cls(tuple(mult.items()))

    def multiplicity(self, k: int) -> int:
        return dict(self.slots).get(k, 0)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.slots)

    @property
    def weight(self) -> int:
        return sum(m * (k - 2) for k, m in self.slots)

    @property
    def poly_degree(self) -> int:
        """Total polynomial degree sum k m_k."""
        return sum(k * m for k, m in self.slots)

    @property
    def sequence(self) -> tuple[int, ...]:
        """Slot degrees with repetition, e.g. (3, 3, 4, 7)."""
        return tuple(k for k, m in self.slots for _ in range(m))

    def is_valid(self) -> bool:
        return all(m <= k + 1 for k, m in self.slots)

    def __str__(self):
        return " ".join(f"{k}^{m}" if m > 1 else str(k) for k, m in self.slots)

    def label(self) -> str:
        return f"({self})"


def wedge_basis(profile: IrrepProfile) -> list[Wedge]:
    """All wedge monomials of a profile in (k ascending, subset) lex order."""
    groups = [list(combinations([gid(k, i) for i in range(k + 1)], m))
              for k, m in profile.slots]
    return [tuple(x for part in parts for x in part) for parts in product(*groups)]


def wedge_count(profile: IrrepProfile) -> int:
    out = 1
    for k, m in profile.slots:
        out *= comb(k + 1, m)
    return out


def _wedges_of_weight(profile: IrrepProfile, weight: int) -> list[Wedge]:
    """Wedge monomials with total h-weight ``weight``, in wedge order."""
    per_slot = []
    for k, m in profile.slots:
        opts: dict[int, list] = {}
        for c in combinations(range(k + 1), m):
            w = sum(k - 2 * i for i in c)
            opts.setdefault(w, []).append(tuple(gid(k, i) for i in c))
        per_slot.append(sorted(opts.items()))
    out: list[Wedge] = []

    def rec(pos, remaining, acc):
        if pos == len(per_slot):
            if remaining == 0:
                out.append(acc)
            return
        # remaining slots can reach at most this much |weight|
        reach = sum(max(abs(w) for w, _ in per_slot[q]) for q in range(pos + 1, len(per_slot)))
        for w, parts in per_slot[pos]:
            if abs(remaining - w) > reach:
                continue
            for p in parts:
                rec(pos + 1, remaining - w, acc + p)

    rec(0, weight, ())
    out.sort()
    return out


@lru_cache(maxsize=None)
def _operator_on_gids(name: str, k: int) -> dict[int, tuple[tuple[int, int], ...]]:
    cols = sl2_operator(name, k)
    return {gid(k, j): tuple((gid(k, i), c) for i, c in sorted(col.items()))
            for j, col in cols.items()}


def action_equations(profile: IrrepProfile, name: str, unknowns: dict[Wedge, int]):
    """Rows of phi -> (X.phi) restricted to the wedges that can be nonzero.

    X = e raises h-weight by 2, so the equation rows are wedges of weight -2
    (weight +2 for f) and only weight-0 coordinates of phi enter.
    """
    shift = {"e": -2, "f": 2}[name]
    ops = {k: _operator_on_gids(name, k) for k, _ in profile.slots}
    rows = []
    for I in _wedges_of_weight(profile, shift):
        row: dict[int, Fraction] = {}
        for pos, g in enumerate(I):
            k, _ = slot_of(g)
            for target, c in ops[k][g]:
                res = replace_at(I, pos, target)
                if res is None:
                    continue
                sign, J = res
                col = unknowns.get(J)
                if col is None:
                    continue
                row[col] = row.get(col, 0) + sign * c
        row = {j: Fraction(v) for j, v in row.items() if v}
        if row:
            rows.append(row)
    return rows


@dataclass(frozen=True)
class InvariantBasis:
    """Reduced echelon basis of the invariant cochains of one profile."""

    profile: IrrepProfile
    vectors: tuple  # tuple of dict Wedge -> Fraction, sorted by wedge

    def __len__(self):
        return len(self.vectors)

    @property
    def pivots(self) -> tuple[Wedge, ...]:
        return tuple(min(v) for v in self.vectors)

    def wedges(self) -> list[Wedge]:
        return wedge_basis(self.profile)

    def coordinates(self, cochain: Mapping[Wedge, Fraction], check: bool = True) -> list[Fraction]:
        """Coordinates of an invariant cochain (its values at the pivots)."""
        coords = [Fraction(cochain.get(p, 0)) for p in self.pivots]
        if check:
            recon = combine(self.vectors, coords)
            mine = {J: v for J, v in cochain.items() if v and _in_profile(J, self.profile)}
            if recon != mine:
                raise ValueError(f"cochain is not an invariant of profile {self.profile}")
        return coords


def _in_profile(J: Wedge, profile: IrrepProfile) -> bool:
    counts: dict[int, int] = {}
    for g in J:
        k, _ = slot_of(g)
        counts[k] = counts.get(k, 0) + 1
    return tuple(sorted(counts.items())) == profile.slots


def combine(vectors: Iterable[Mapping], coeffs: Iterable) -> dict:
    out: dict = {}
    for v, c in zip(vectors, coeffs):
        if not c:
            continue
        for J, x in v.items():
            y = out.get(J, 0) + c * x
            if y:
                out[J] = y
            else:
                out.pop(J, None)
    return out


@lru_cache(maxsize=None)
def invariant_basis(profile: IrrepProfile) -> InvariantBasis:
    if not profile.is_valid():
        return InvariantBasis(profile, ())
    if profile.poly_degree % 2:
        # every weight-0 wedge needs sum k m_k even
        return InvariantBasis(profile, ())
    zero = _wedges_of_weight(profile, 0)
    if not zero:
        return InvariantBasis(profile, ())
    unknowns = {J: c for c, J in enumerate(zero)}
    rows = action_equations(profile, "e", unknowns) + action_equations(profile, "f", unknowns)
    kern = kernel_rows(rows, len(zero))
    vecs = tuple(dict(sorted((zero[j], x) for j, x in v.items())) for v in kern)
    return InvariantBasis(profile, vecs)


def invariant_dim(profile: IrrepProfile) -> int:
    """Number of invariants, without building the basis.

    A weight-zero vector killed by e spans a trivial summand, so the count is
    the nullity of e on the weight-zero wedges.  Since e maps weight 0 onto
    weight 2 in every finite-dimensional representation, the modular rank
    prepass usually certifies the rank at once.
    """
    if not profile.is_valid() or profile.poly_degree % 2:
        return 0
    zero = _wedges_of_weight(profile, 0)
    if not zero:
        return 0
    rows = action_equations(profile, "e", {J: c for c, J in enumerate(zero)})
    if not rows:
        return len(zero)
    return len(zero) - rank(RatMatrix.from_row_dicts(rows, len(zero)), seed=0)


# ----------------------------------------------------------------------
# character route


def _poly_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {e: c for e, c in out.items() if c}


def exterior_character(k: int, m: int) -> dict[int, int]:
    """Character of Lambda^m S^k H as a Laurent polynomial in q."""
    weights = [k - 2 * i for i in range(k + 1)]
    # elementary symmetric polynomial e_m in q^{w}
    e = [dict() for _ in range(m + 1)]
    e[0] = {0: 1}
    for w in weights:
        for r in range(m, 0, -1):
            for exp, c in e[r - 1].items():
                e[r][exp + w] = e[r].get(exp + w, 0) + c
    return {x: c for x, c in e[m].items() if c}


def character_dim_oracle(profile: IrrepProfile) -> int:
    """Multiplicity of the trivial representation via characters.

    For an sl(2)-character sum c_j q^j the trivial multiplicity is c_0 - c_2.
    """
    ch = {0: 1}
    for k, m in profile.slots:
        if m > k + 1:
            return 0
        ch = _poly_mul(ch, exterior_character(k, m))
    return ch.get(0, 0) - ch.get(2, 0)


# ----------------------------------------------------------------------
# tensor <-> cochain


def symplectic_pairing(k: int, a: int, c: int) -> Fraction:
    """<x^a y^(k-a), x^c y^(k-c)> induced on S^k H by omega(x, y) = 1."""
    if a + c != k:
        return Fraction(0)
    b = k - a
    return Fraction((-1) ** b, comb(k, a))


def tensor_to_cochain(tensor: Mapping[tuple[Monomial, ...], Fraction]) -> Cochain:
    """Dualize an element of Lambda S^k H via the symplectic pairing.

    ``tensor`` maps tuples of monomials (read as v_1 ^ ... ^ v_d) to
    coefficients; the result is the cochain v -> <v_1 ^ ... ^ v_d, v>.
    """
    out: dict = {}
    for mons, coeff in tensor.items():
        scale = Fraction(coeff)
        gids = []
        for m in mons:
            m = Monomial(m)
            k, a = m.degree, m[0]
            partner = (k - a, a)  # x^b y^a
            scale *= symplectic_pairing(k, a, k - a)
            idx = enumerate_monomials(1, k).index(Monomial(partner))
            gids.append(gid(k, idx))
        res = sort_sign(gids)
        if res is None or not scale:
            continue
        sign, J = res
        out[J] = out.get(J, 0) + sign * scale
    return {J: v for J, v in sorted(out.items()) if v}


def wedge_product(a: Mapping[Wedge, Fraction], b: Mapping[Wedge, Fraction]) -> Cochain:
    """(a ^ b)(v_1..v_{p+q}) = sum over shuffles, sign included."""
    out: dict = {}
    for I, x in a.items():
        sI = set(I)
        for K, y in b.items():
            if sI.intersection(K):
                continue
            sign, J = sort_sign(I + K)
            out[J] = out.get(J, 0) + sign * x * y
    return {J: v for J, v in sorted(out.items()) if v}
