"""Euler characteristic generating functions.

The product side expands

    prod_{k >= 0} p_k(n),   p_0(n) = prod_{|a+b| = 2, a != b} (1 - x^{a-b}),
                            p_k(n) = prod_{|a+b| = 2+k} (1 - t^k x^{a-b}),

as a Laurent polynomial in x_1..x_n with t truncated at t^W, takes the
constant term in x and divides by n! 2^n.  Appending
p_{-1}(n) = prod_{|a+b| = 1} (1 - t^{-1} x^{a-b}) gives the series of the
full algebra.  The complex side sums Euler characteristics of the cochain
complexes weight by weight and is independent of the product formula.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain
from math import factorial
from typing import Mapping

import numpy as np

from .complex import AlgebraVariant, slice_dimensions


class SeriesBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class LaurentSeries:
    """sum_k c_k t^k known exactly for k <= truncation."""

    coefficients: Mapping[int, Fraction]
    truncation: int
    variable: str = "t"

    def __post_init__(self):
        clean = {int(k): Fraction(v) for k, v in self.coefficients.items()
                 if v and k <= self.truncation}
        object.__setattr__(self, "coefficients", dict(sorted(clean.items())))

    def __getitem__(self, k: int) -> Fraction:
        if k > self.truncation:
            raise KeyError(f"t^{k} is beyond the truncation order {self.truncation}")
        return self.coefficients.get(k, Fraction(0))

    def truncate(self, W: int) -> "LaurentSeries":
        return LaurentSeries(self.coefficients, min(W, self.truncation), self.variable)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        # the product is only known up to min over each factor's valuation shift
        lo_a = min(self.coefficients, default=0)
        lo_b = min(other.coefficients, default=0)
        W = min(self.truncation + lo_b, other.truncation + lo_a)
        out: dict[int, Fraction] = {}
        for i, x in self.coefficients.items():
            for j, y in other.coefficients.items():
                if i + j <= W:
                    out[i + j] = out.get(i + j, 0) + x * y
        return LaurentSeries(out, W, self.variable)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.truncation == other.truncation and self.coefficients == other.coefficients

    def agrees_with(self, other: "LaurentSeries", upto: int | None = None) -> bool:
        W = min(self.truncation, other.truncation)
        if upto is not None:
            W = min(W, upto)
        keys = {k for k in (*self.coefficients, *other.coefficients) if k <= W}
        return all(self[k] == other[k] for k in keys)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coefficients.values())

    def to_text(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for k, c in self.coefficients.items():
            mag = abs(c)
            if k == 0:
                body = _fmt(mag)
            else:
                mono = self.variable if k == 1 else f"{self.variable}^{k}"
                body = mono if mag == 1 else f"{_fmt(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> dict:
        return {"variable": self.variable, "truncation": self.truncation,
                "coefficients": [{"exp": k, "value": _fmt(v)}
                                 for k, v in self.coefficients.items()]}

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int], truncation: int) -> "LaurentSeries":
        return cls(coeffs, truncation)


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _pairs(n: int, total: int):
    """All (a, b) in N^n x N^n with |a + b| = total, yielding a - b."""
    def comps(parts, s):
        if parts == 1:
            yield (s,)
            return
        for first in range(s + 1):
            for rest in comps(parts - 1, s - first):
                yield (first,) + rest
    for c in comps(2 * n, total):
        a, b = c[:n], c[n:]
        yield a, b


@dataclass(frozen=True)
class PerchikFactor:
    """p_k(n) as a list of (t-exponent, x-exponent vector) binomial factors."""

    n: int
    k: int
    terms: tuple[tuple[int, tuple[int, ...]], ...] = field(default=())

    @classmethod
    def build(cls, n: int, k: int) -> "PerchikFactor":
        terms = []
        for a, b in _pairs(n, 2 + k):
            if k == 0 and a == b:
                continue
            v = tuple(x - y for x, y in zip(a, b))
            terms.append((k, v))
        return cls(n, k, tuple(sorted(terms)))

    def __len__(self):
        return len(self.terms)


def _p_minus_one(n: int) -> PerchikFactor:
    terms = tuple(sorted((-1, tuple(x - y for x, y in zip(a, b)))
                         for a, b in _pairs(n, 1) if a != b))
    return PerchikFactor(n, -1, terms)


def _factor_lists(n: int, W: int, extra: tuple):
    # extra factors (p_{-1}) lower the t-degree; each step down needs one more
    # t-unit of headroom in the positive part
    headroom = sum(1 for te, _ in extra if te < 0)
    T = W + headroom
    # generated lazily so budget checks run before the expensive enumeration
    t_factors = ((te, v) for k in range(1, T + 1) for te, v in PerchikFactor.build(n, k).terms)
    final = list(PerchikFactor.build(n, 0).terms) + list(extra)
    # |x_i| the final factors can still absorb
    reach = [sum(abs(v[i]) for _, v in final) for i in range(n)]
    return T, t_factors, final, reach


# a t-factor of weight k moves |x_i| by at most k + 2 <= 3k, so a term at
# t^e can only return to x^0 if |x_i| <= 3 (T - e) + reach_i
_X_PER_T = 3


def _constant_term_sparse(n: int, W: int, extra: tuple = (), term_cap: int = 5_000_000):
    """Reference expansion over exact integers with dict-keyed terms."""
    T, t_factors, final, reach = _factor_lists(n, W, extra)
    poly: dict[tuple[int, tuple[int, ...]], int] = {(0, (0,) * n): 1}
    for te, v in t_factors:
        new = dict(poly)
        for (e, x), c in poly.items():
            e2 = e + te
            if e2 > T:
                continue
            key = (e2, tuple(a + b for a, b in zip(x, v)))
            val = new.get(key, 0) - c
            if val:
                new[key] = val
            else:
                new.pop(key, None)
        poly = {}
        for (e, x), c in new.items():
            budget = _X_PER_T * (T - e)
            if all(abs(x[i]) <= budget + reach[i] for i in range(n)):
                poly[e, x] = c
        if len(poly) > term_cap:
            raise SeriesBudgetExceeded(f"{len(poly)} terms exceed cap {term_cap}")
    for te, v in final:
        new = dict(poly)
        for (e, x), c in poly.items():
            key = (e + te, tuple(a + b for a, b in zip(x, v)))
            val = new.get(key, 0) - c
            if val:
                new[key] = val
            else:
                new.pop(key, None)
        poly = new
    zero = (0,) * n
    return {e: c for (e, x), c in poly.items() if x == zero and e <= W}


_PRIMES = np.array([2**61 - 1, 2305843009213693921], dtype=np.int64)


def _constant_term_dense(n: int, W: int, extra: tuple = (), cell_cap: int = 50_000_000):
    """Dense expansion on a (t, x_1..x_n) grid, computed modulo two primes.

    Only additions and subtractions occur, so reduction modulo p is exact
    ring arithmetic; CRT recovers the integers (they are tiny compared with
    the product of the primes).  The x-window is the a-priori bound beyond
    which no term can reach x^0 again, so nothing relevant is discarded.
    """
    T, t_factors, final, reach = _factor_lists(n, W, extra)
    lo_t = -sum(1 for te, _ in final if te < 0)
    radius = [_X_PER_T * T + r for r in reach]
    shape = (2, T - lo_t + 1) + tuple(2 * r + 1 for r in radius)
    cells = int(np.prod(shape))
    if cells > cell_cap:
        raise SeriesBudgetExceeded(f"grid of {cells} cells exceeds cap {cell_cap}")
    arr = np.zeros(shape, dtype=np.int64)
    arr[(slice(None), -lo_t) + tuple(radius)] = 1
    p = _PRIMES.reshape((2,) + (1,) * (len(shape) - 1))

    def shift(te, v):
        dst, src = [slice(None)], [slice(None)]
        nt = shape[1]
        if te >= 0:
            dst.append(slice(te, nt)); src.append(slice(0, nt - te))
        else:
            dst.append(slice(0, nt + te)); src.append(slice(-te, nt))
        for i, s in enumerate(v):
            L = shape[2 + i]
            if s >= 0:
                dst.append(slice(s, L)); src.append(slice(0, L - s))
            else:
                dst.append(slice(0, L + s)); src.append(slice(-s, L))
        arr[tuple(dst)] -= arr[tuple(src)]
        np.remainder(arr, p, out=arr)

    for te, v in chain(t_factors, final):
        shift(te, v)
    m1, m2 = (int(x) for x in _PRIMES)
    inv = pow(m1, -1, m2)
    out = {}
    centre = tuple(radius)
    for e in range(lo_t, W + 1):
        r1 = int(arr[(0, e - lo_t) + centre])
        r2 = int(arr[(1, e - lo_t) + centre])
        x = (r1 + m1 * (((r2 - r1) * inv) % m2)) % (m1 * m2)
        if x > m1 * m2 // 2:
            x -= m1 * m2
        if x:
            out[e] = x
    return out


def _constant_term_product(n: int, W: int, extra: tuple = ()):
    return _constant_term_dense(n, W, extra)


def perchik_series(n: int, W: int) -> LaurentSeries:
    """Euler series of H*(ham^0_{2n}, Sp(2n))_w for w <= W."""
    if n < 1 or W < 0:
        raise ValueError("need n >= 1 and W >= 0")
    ct = _constant_term_product(n, W)
    norm = factorial(n) * 2 ** n
    return LaurentSeries({e: Fraction(c, norm) for e, c in ct.items()}, W)


def perchik_full_series(n: int, W: int) -> LaurentSeries:
    """Euler series of H*(ham_{2n}, Sp(2n))_w, including the p_{-1} factor."""
    if n < 1 or W < -2 * n:
        raise ValueError("need n >= 1 and W >= -2n")
    ct = _constant_term_product(n, W, extra=_p_minus_one(n).terms)
    norm = factorial(n) * 2 ** n
    return LaurentSeries({e: Fraction(c, norm) for e, c in ct.items()}, W)


def complex_euler_series(variant, W: int) -> LaurentSeries:
    """sum_w chi(C*(variant)_w) t^w from cochain dimensions (n = 1)."""
    variant = AlgebraVariant.parse(variant)
    lo = -2 if variant is AlgebraVariant.HAM else 0
    coeffs = {}
    for w in range(lo, W + 1):
        dims = slice_dimensions(variant, w)
        coeffs[w] = sum((-1) ** d * m for d, m in dims.items())
    return LaurentSeries(coeffs, W)


# comparison targets quoted in the literature
C_T_PREFIX = LaurentSeries({0: 1, 2: 1, 4: 2, 6: 3, 8: 6}, 8)
A_PHI_PREFIX = LaurentSeries({0: 1, 2: 1, 4: 2, 6: 3, 8: 6, 10: 9, 12: 16}, 12)


def _plain(x: Fraction):
    return int(x) if x.denominator == 1 else _fmt(x)


def stabilization_report(max_n: int, W: int) -> dict:
    """Per-coefficient values across n = 1..max_n and agreement flags."""
    series = {n: perchik_series(n, W) for n in range(1, max_n + 1)}
    rows = []
    for k in range(W + 1):
        vals = [_plain(series[n][k]) for n in range(1, max_n + 1)]
        stable = max_n >= 2 and vals[-1] == vals[-2]
        row = {"exp": k, "values": vals, "stable": stable}
        if k <= C_T_PREFIX.truncation:
            row["c_t"] = int(C_T_PREFIX[k])
        if k <= A_PHI_PREFIX.truncation:
            row["A_phi"] = int(A_PHI_PREFIX[k])
        rows.append(row)
    return {"n": list(series), "truncation": W, "rows": rows,
            "series": {n: s.to_text() for n, s in series.items()}}
