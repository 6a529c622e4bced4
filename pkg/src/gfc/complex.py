"""Weight-graded relative Chevalley-Eilenberg complexes of ham_2 and ham_2^0.

Cochains of the relative complex C*(g, sp(2)) are sp(2)-invariant
alternating forms on g / sp(2) = S^1 H + S^3 H + S^4 H + ... (HAM) or
S^3 H + S^4 H + ... (HAM0).  The coboundary is

    (d phi)(X_0..X_q) = sum_{i<j} (-1)^{i+j} phi(pi[X_i, X_j], X_0..^i..^j..X_q)

where pi discards the S^2 H = sp(2) component (and constants).  For HAM0
the bracket of two slots of degree >= 3 never hits S^2 H, so pi is the
identity there.

Matrices are written in the reduced echelon invariant bases of each
profile: the coordinate of an invariant cochain on a basis vector is its
value at that vector's pivot wedge, so the coboundary only needs to be
evaluated on pivot wedges.
"""
from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Mapping

from . import linalg
from .invariants import (IrrepProfile, InvariantBasis, Wedge, combine, insert_sign,
                         invariant_basis, invariant_dim, slot_of, gid, wedge_count)
from .linalg import RatMatrix, format_rational
from .poisson import bracket_table

DEFAULT_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    """A slice needs a wedge-monomial space larger than the configured cap."""


class AlgebraVariant(enum.Enum):
    HAM = "ham"
    HAM0 = "ham0"

    @classmethod
    def parse(cls, s) -> "AlgebraVariant":
        if isinstance(s, cls):
            return s
        return cls(str(s).lower())

    def has_slot(self, k: int) -> bool:
        if k == 1:
            return self is AlgebraVariant.HAM
        return k >= 3

    @property
    def min_slot(self) -> int:
        return 1 if self is AlgebraVariant.HAM else 3


def enumerate_profiles(variant, weight: int, degree: int | None = None) -> list[IrrepProfile]:
    """Valid profiles (m_k <= k + 1) of the given weight (and degree).

    Ordered lexicographically by the sequence of slot degrees, which is the
    order the generators are listed in the tables of the literature.
    """
    variant = AlgebraVariant.parse(variant)
    out = []
    m1_range = range(3) if variant is AlgebraVariant.HAM else range(1)
    for m1 in m1_range:
        rest_w = weight + m1
        if rest_w < 0:
            continue

        def rec(k, w_left, acc):
            if w_left == 0:
                slots = ((1, m1),) + tuple(acc) if m1 else tuple(acc)
                out.append(IrrepProfile(slots))
                return
            if k - 2 > w_left:
                return
            # choose m_k for the current k, then move to k + 1
            for m in range(0, k + 2):
                if m * (k - 2) > w_left:
                    break
                rec(k + 1, w_left - m * (k - 2), acc + [(k, m)] if m else acc)

        if rest_w == 0:
            out.append(IrrepProfile(((1, m1),)) if m1 else IrrepProfile(()))
        else:
            rec(3, rest_w, [])
    if degree is not None:
        out = [p for p in out if p.degree == degree]
    return sorted(set(out), key=lambda p: (p.degree, p.sequence))


def _workers() -> int:
    env = os.environ.get("GFC_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _bases(profiles: list[IrrepProfile]) -> list[InvariantBasis]:
    workers = min(_workers(), len(profiles))
    if workers > 1 and len(profiles) > 4:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(invariant_basis, profiles))
    return [invariant_basis(p) for p in profiles]


@dataclass(frozen=True)
class Cochain:
    """Coordinates of a cochain over the invariant basis of one slice degree."""

    variant: AlgebraVariant
    weight: int
    degree: int
    coords: tuple[Fraction, ...]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def support(self) -> dict[int, Fraction]:
        return {i: c for i, c in enumerate(self.coords) if c}

    def normalized(self) -> "Cochain":
        lead = next((c for c in self.coords if c), None)
        if lead is None:
            return self
        return Cochain(self.variant, self.weight, self.degree,
                       tuple(Fraction(c) / lead for c in self.coords))


@dataclass
class DegreePart:
    degree: int
    bases: list[InvariantBasis]

    @property
    def dim(self) -> int:
        return sum(len(b) for b in self.bases)

    @cached_property
    def offsets(self) -> list[int]:
        out, acc = [], 0
        for b in self.bases:
            out.append(acc)
            acc += len(b)
        return out

    @cached_property
    def labels(self) -> list[tuple[IrrepProfile, int]]:
        """(profile, index within profile) for every basis vector."""
        return [(b.profile, i) for b in self.bases for i in range(len(b))]

    @cached_property
    def vectors(self) -> list[dict]:
        return [v for b in self.bases for v in b.vectors]

    @cached_property
    def pivots(self) -> list[Wedge]:
        return [p for b in self.bases for p in b.pivots]

    @cached_property
    def value_map(self) -> dict[Wedge, list[tuple[int, Fraction]]]:
        """wedge -> [(basis index, value)] over all basis vectors."""
        out: dict[Wedge, list] = {}
        for c, v in enumerate(self.vectors):
            for J, x in v.items():
                out.setdefault(J, []).append((c, x))
        return out

    def full(self, coords) -> dict:
        """Expand coordinates into the wedge-monomial representation."""
        return combine(self.vectors, coords)

    def coordinates(self, cochain: Mapping[Wedge, Fraction]) -> list[Fraction]:
        """Coordinates of an invariant cochain; raises if it is not one."""
        coords = [Fraction(cochain.get(p, 0)) for p in self.pivots]
        recon = self.full(coords)
        given = {J: Fraction(v) for J, v in cochain.items() if v}
        if recon != given:
            raise ValueError(f"cochain is not in the invariant span of degree {self.degree}")
        return coords


def bracket_gids(g1: int, g2: int, variant: AlgebraVariant) -> dict[int, int]:
    """Projected Poisson bracket of two basis monomials, keyed by gid."""
    k1, i1 = slot_of(g1)
    k2, i2 = slot_of(g2)
    k = k1 + k2 - 2
    if not variant.has_slot(k):
        return {}
    return {gid(k, i): c for i, c in bracket_table(1, k1, k2)(i1, i2).items()}


def evaluate_coboundary(value_of, J: Wedge, variant: AlgebraVariant) -> dict:
    """(d phi)(e_J) for every phi at once.

    ``value_of(wedge)`` returns an iterable of (key, value) pairs giving
    phi_key(e_wedge); the result maps key -> (d phi_key)(e_J).
    """
    acc: dict = {}
    n = len(J)
    for i in range(n):
        for j in range(i + 1, n):
            br = bracket_gids(J[i], J[j], variant)
            if not br:
                continue
            sgn_ij = -1 if (i + j) % 2 else 1
            rest = J[:i] + J[i + 1:j] + J[j + 1:]
            for m, c in br.items():
                res = insert_sign(rest, m)
                if res is None:
                    continue
                s, K = res
                coef = sgn_ij * s * c
                for key, x in value_of(K):
                    acc[key] = acc.get(key, 0) + coef * x
    return {k: v for k, v in acc.items() if v}


class WeightSlice:
    """Finite cochain complex C*(g, sp(2))_w for one algebra variant."""

    def __init__(self, variant, weight: int, max_degree: int | None = None,
                 budget: int = DEFAULT_BUDGET):
        self.variant = AlgebraVariant.parse(variant)
        self.weight = weight
        profiles = enumerate_profiles(self.variant, weight)
        if max_degree is not None:
            profiles = [p for p in profiles if p.degree <= max_degree]
        for p in profiles:
            if wedge_count(p) > budget:
                raise BudgetExceeded(
                    f"profile {p.label()} spans {wedge_count(p)} wedge monomials "
                    f"(budget {budget})")
        top = max((p.degree for p in profiles), default=0)
        self.max_degree = top if max_degree is None else max_degree
        bases = _bases(profiles)
        by_deg: dict[int, list] = {d: [] for d in range(self.max_degree + 1)}
        for b in bases:
            if len(b):
                by_deg[b.profile.degree].append(b)
        self.parts = {d: DegreePart(d, by_deg[d]) for d in by_deg}
        self._cob: dict[int, RatMatrix] = {}

    def __repr__(self):
        return f"WeightSlice({self.variant.value}, w={self.weight}, dims={self.dims()})"

    def part(self, d: int) -> DegreePart:
        return self.parts.get(d) or DegreePart(d, [])

    def dim(self, d: int) -> int:
        return self.part(d).dim

    def dims(self) -> dict[int, int]:
        return {d: p.dim for d, p in self.parts.items() if p.dim}

    def profile_dims(self, d: int) -> list[tuple[IrrepProfile, int]]:
        return [(b.profile, len(b)) for b in self.part(d).bases]

    def coboundary(self, d: int) -> RatMatrix:
        """Matrix of d: C^d -> C^{d+1}; rows index the target basis."""
        if d in self._cob:
            return self._cob[d]
        src, tgt = self.part(d), self.part(d + 1)
        if d + 1 > self.max_degree:
            tgt = DegreePart(d + 1, [])
        vm = src.value_map
        ent = {}
        for r, J in enumerate(tgt.pivots):
            row = evaluate_coboundary(lambda K: vm.get(K, ()), J, self.variant)
            for c, x in row.items():
                ent[r, c] = x
        m = RatMatrix(tgt.dim, src.dim, ent)
        self._cob[d] = m
        return m

    def apply_coboundary_full(self, cochain: Mapping[Wedge, Fraction], targets) -> dict:
        """(d phi) on the given wedges for a cochain in wedge representation."""
        out = {}
        for J in targets:
            v = evaluate_coboundary(lambda K: ((0, cochain[K]),) if K in cochain else (),
                                    J, self.variant)
            if v:
                out[J] = v[0]
        return out

    @lru_cache(maxsize=None)
    def rank(self, d: int) -> int:
        if d < 0 or self.dim(d) == 0:
            return 0
        return linalg.rank(self.coboundary(d))

    def cohomology_dims(self) -> dict[int, int]:
        out = {}
        for d in range(self.max_degree + 1):
            h = self.dim(d) - self.rank(d) - self.rank(d - 1)
            if h:
                out[d] = h
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in self.dims().items())

    def cochain(self, d: int, coords) -> Cochain:
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.dim(d):
            raise ValueError(f"expected {self.dim(d)} coordinates, got {len(coords)}")
        return Cochain(self.variant, self.weight, d, coords)

    def to_json(self, with_coboundaries: bool = True) -> dict:
        degrees = []
        for d in range(self.max_degree + 1):
            part = self.part(d)
            degrees.append({
                "degree": d,
                "profiles": [{"slots": [list(s) for s in b.profile.slots],
                              "label": b.profile.label(), "dim": len(b)}
                             for b in part.bases],
                "dim": part.dim,
            })
        cobs = []
        if with_coboundaries:
            for d in range(self.max_degree):
                m = self.coboundary(d)
                cobs.append({
                    "from_degree": d, "rows": m.rows, "cols": m.cols,
                    "entries": [[i, j, format_rational(m[i, j])] for (i, j) in sorted(m.entries)],
                })
        return {"variant": self.variant.value, "weight": self.weight,
                "degrees": degrees, "coboundaries": cobs}


@lru_cache(maxsize=64)
def build_slice(variant, weight: int, max_degree: int | None = None,
                budget: int = DEFAULT_BUDGET) -> WeightSlice:
    return WeightSlice(AlgebraVariant.parse(variant), weight, max_degree, budget)


def coboundary_matrix(slice_: WeightSlice, degree: int) -> RatMatrix:
    return slice_.coboundary(degree)


def cohomology_dims(slice_: WeightSlice) -> dict[int, int]:
    return slice_.cohomology_dims()


def euler_characteristic(slice_: WeightSlice) -> int:
    return slice_.euler_characteristic()


def slice_dimensions(variant, weight: int) -> dict[int, int]:
    """Per-degree cochain dimensions from invariant counts only (no matrices)."""
    out: dict[int, int] = {}
    for p in enumerate_profiles(variant, weight):
        n = invariant_dim(p)
        if n:
            out[p.degree] = out.get(p.degree, 0) + n
    return dict(sorted(out.items()))
