"""Monomial bases of S^k H, the Poisson bracket, and the sl(2) action.

H = R^{2n} with coordinates x_1..x_n, y_1..y_n.  A homogeneous polynomial
of degree k is an element of S^k H; monomials are ordered graded
lexicographically with x_1 > ... > x_n > y_1 > ... > y_n, so for n = 1
the basis of S^3 H reads x^3, x^2 y, x y^2, y^3.

The sl(2) = S^2 H generators (n = 1) are normalized as

    e = -{x^2/2, .},   f = {y^2/2, .},   h = [e, f] = -{xy, .}

which gives h x^a y^b = (a - b) x^a y^b.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb


class Monomial(tuple):
    """Exponent vector (a_1..a_n, b_1..b_n) of x^a y^b."""

    __slots__ = ()

    def __new__(cls, exponents):
        exps = tuple(int(e) for e in exponents)
        if len(exps) % 2 or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps}")
        return super().__new__(cls, exps)

    @property
    def n(self) -> int:
        return len(self) // 2

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def sl2_weight(self) -> int:
        """h-eigenvalue a - b (n = 1); for general n the sum over pairs."""
        n = self.n
        return sum(self[:n]) - sum(self[n:])

    def __str__(self):
        n = self.n
        names = ([f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)]
                 if n > 1 else ["x", "y"])
        parts = []
        for name, e in zip(names, self):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def __repr__(self):
        return f"Monomial({tuple(self)})"


@lru_cache(maxsize=None)
def enumerate_monomials(n: int, k: int) -> tuple[Monomial, ...]:
    """All degree-k monomials in 2n variables, graded lex order."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    nv = 2 * n
    out = []
    for combo in combinations_with_replacement(range(nv), k):
        exps = [0] * nv
        for v in combo:
            exps[v] += 1
        out.append(Monomial(exps))
    # combinations_with_replacement over variable indices already yields
    # descending lex order of exponent vectors
    assert len(out) == comb(k + nv - 1, nv - 1)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, k: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(enumerate_monomials(n, k))}


def _bracket_terms(f: Monomial, g: Monomial):
    n = f.n
    out: dict[tuple[int, ...], int] = {}
    for i in range(n):
        xi, yi = i, n + i
        # df/dx_i * dg/dy_i - df/dy_i * dg/dx_i
        for (u, v, sign) in ((xi, yi, 1), (yi, xi, -1)):
            cf, cg = f[u], g[v]
            if cf == 0 or cg == 0:
                continue
            exps = [a + b for a, b in zip(f, g)]
            exps[u] -= 1
            exps[v] -= 1
            key = tuple(exps)
            out[key] = out.get(key, 0) + sign * cf * cg
    return {k: c for k, c in out.items() if c}


def poisson_bracket(f: Monomial, g: Monomial, n: int | None = None) -> dict[int, int]:
    """{f, g} as a sparse integer vector over the basis of S^{k+l-2} H."""
    f, g = Monomial(f), Monomial(g)
    if f.n != g.n or (n is not None and f.n != n):
        raise ValueError("monomials live in different symplectic spaces")
    k, l = f.degree, g.degree
    if k + l < 2:
        raise ValueError(f"degree underflow: bracket of degrees {k} and {l}")
    index = monomial_index(f.n, k + l - 2)
    return {index[Monomial(e)]: c for e, c in sorted(_bracket_terms(f, g).items())}


@dataclass(frozen=True)
class BracketTable:
    """Integer structure constants S^k H x S^l H -> S^{k+l-2} H."""

    n: int
    k: int
    l: int
    entries: dict  # (i, j) -> {index: int}

    def __call__(self, i: int, j: int) -> dict[int, int]:
        return self.entries.get((i, j), {})


@lru_cache(maxsize=None)
def bracket_table(n: int, k: int, l: int) -> BracketTable:
    if k + l < 2:
        raise ValueError("degree underflow")
    left = enumerate_monomials(n, k)
    right = enumerate_monomials(n, l)
    entries = {}
    for i, f in enumerate(left):
        for j, g in enumerate(right):
            vec = poisson_bracket(f, g)
            if vec:
                entries[i, j] = vec
    return BracketTable(n, k, l, entries)


@dataclass(frozen=True)
class Sl2Action:
    """Integer matrices of e, f, h on the monomial basis of S^k H (n = 1).

    Matrices are tuples of rows; column j is the image of the j-th monomial.
    """

    k: int
    e: tuple[tuple[int, ...], ...]
    f: tuple[tuple[int, ...], ...]
    h: tuple[tuple[int, ...], ...]


_QUADRATICS = {
    # generator -> (quadratic monomial exponents, scalar multiplying {q, .})
    # e = -{x^2/2, .} = -1/2 {x^2, .}; the 1/2 cancels against the factor 2
    # coming from d(x^2) so the entries stay integral.
    "e": ((2, 0), -1),
    "f": ((0, 2), 1),
    "h": ((1, 1), -1),
}


def sl2_operator(name: str, k: int) -> dict[int, dict[int, int]]:
    """Sparse column map j -> {i: coeff} for e, f or h acting on S^k H."""
    q, scale = _QUADRATICS[name]
    cols = {}
    for j, m in enumerate(enumerate_monomials(1, k)):
        vec = poisson_bracket(Monomial(q), m)
        if name in ("e", "f"):
            # {x^2, .} and {y^2, .} carry a factor 2 relative to x^2/2, y^2/2
            vec = {i: c // 2 for i, c in vec.items()}
        cols[j] = {i: scale * c for i, c in vec.items() if c}
    return cols


@lru_cache(maxsize=None)
def sl2_action(k: int) -> Sl2Action:
    if k < 0:
        raise ValueError("k must be non-negative")
    dim = k + 1

    def dense(name):
        rows = [[0] * dim for _ in range(dim)]
        for j, col in sl2_operator(name, k).items():
            for i, c in col.items():
                rows[i][j] = c
        return tuple(tuple(r) for r in rows)

    return Sl2Action(k, dense("e"), dense("f"), dense("h"))
