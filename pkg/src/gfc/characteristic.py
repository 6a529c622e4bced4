"""Distinguished cocycles and the wedge-with-omega chain map (n = 1).

Tautological 1-forms.  A Hamiltonian H corresponds to the vector field
X_H = H_x d/dy - H_y d/dx, so with coordinates (x_1, x_2) = (x, y) the
components are f_1 = -H_y and f_2 = H_x, and

    delta^i_{j_1..j_k}(X_H) = (-1)^k d^k f_i / dx_{j_1}..dx_{j_k} (0),

a linear functional on S^{k+1} H.

omega = delta^1 ^ delta^2 lives on Lambda^2 S^1 H.  The curvature is taken
in the gl-equivariant form Omega^i_j = sum_k delta^k ^ delta^i_{jk}, and
p_1 is represented by tr(Omega ^ Omega).  All classes are normalized so that
their first nonzero coordinate is 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping

from . import linalg
from .complex import DEFAULT_BUDGET, AlgebraVariant, Cochain, WeightSlice, build_slice
from .invariants import IrrepProfile, Wedge, gid, wedge_product
from .linalg import EchelonBasis, RatMatrix, format_rational
from .poisson import enumerate_monomials

HAM = AlgebraVariant.HAM
HAM0 = AlgebraVariant.HAM0

# support of the leaf class eta stated in the literature
ETA_SUPPORT = tuple(IrrepProfile.parse(s) for s in ("3^3 4 7", "3^2 4^2 6", "3^2 4 5^2"))


class InconsistentCohomology(RuntimeError):
    """Computed cohomology contradicts the dimension the construction relies on."""


@dataclass(frozen=True)
class TautologicalForm:
    """delta^upper_{lower}; indices are 1-based, 1 = x and 2 = y."""

    upper: int
    lower: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(sorted(self.lower)))
        if self.upper not in (1, 2) or any(j not in (1, 2) for j in self.lower):
            raise ValueError("indices must be 1 or 2 for n = 1")

    @property
    def slot(self) -> int:
        """Degree of the Hamiltonians the form sees."""
        return len(self.lower) + 1

    def evaluate(self, exps) -> Fraction:
        a, b = exps
        k = len(self.lower)
        nx = self.lower.count(1)
        ny = k - nx
        if self.upper == 1:
            # f_1 = -H_y = -b x^a y^(b-1)
            if b == 0 or (nx, ny) != (a, b - 1):
                return Fraction(0)
            val = -b * factorial(a) * factorial(b - 1)
        else:
            # f_2 = H_x = a x^(a-1) y^b
            if a == 0 or (nx, ny) != (a - 1, b):
                return Fraction(0)
            val = a * factorial(a - 1) * factorial(b)
        return Fraction((-1) ** k * val)

    def as_cochain(self) -> dict[Wedge, Fraction]:
        k = self.slot
        out = {}
        for i, m in enumerate(enumerate_monomials(1, k)):
            v = self.evaluate(m)
            if v:
                out[(gid(k, i),)] = v
        return out


def delta(upper: int, *lower: int) -> dict[Wedge, Fraction]:
    return TautologicalForm(upper, lower).as_cochain()


def _add(a: Mapping, b: Mapping, scale=1) -> dict:
    out = dict(a)
    for J, x in b.items():
        y = out.get(J, 0) + scale * x
        if y:
            out[J] = y
        else:
            out.pop(J, None)
    return out


def omega_cochain() -> dict[Wedge, Fraction]:
    return wedge_product(delta(1), delta(2))


def curvature() -> dict[tuple[int, int], dict]:
    """Omega^i_j = sum_k delta^k ^ delta^i_{jk}."""
    out = {}
    for i in (1, 2):
        for j in (1, 2):
            acc: dict = {}
            for k in (1, 2):
                acc = _add(acc, wedge_product(delta(k), delta(i, j, k)))
            out[i, j] = acc
    return out


def p1_cochain() -> dict[Wedge, Fraction]:
    """tr(Omega ^ Omega) in wedge-monomial form."""
    om = curvature()
    acc: dict = {}
    for i in (1, 2):
        for j in (1, 2):
            acc = _add(acc, wedge_product(om[i, j], om[j, i]))
    return acc


@dataclass
class NamedClass:
    name: str
    cochain: Cochain
    note: str = ""

    @property
    def degree(self):
        return self.cochain.degree

    @property
    def weight(self):
        return self.cochain.weight


def _normalized(sl: WeightSlice, d: int, coords) -> Cochain:
    return sl.cochain(d, coords).normalized()


def is_closed(sl: WeightSlice, c: Cochain) -> bool:
    return all(x == 0 for x in sl.coboundary(c.degree).apply(list(c.coords)))


def is_exact(sl: WeightSlice, c: Cochain) -> bool:
    if c.degree == 0:
        return c.is_zero()
    ok, _ = linalg.in_column_span(sl.coboundary(c.degree - 1), list(c.coords))
    return ok


def build_omega() -> NamedClass:
    sl = build_slice(HAM, -2)
    coords = sl.part(2).coordinates(omega_cochain())
    return NamedClass("omega", _normalized(sl, 2, coords),
                      "delta^1 ^ delta^2; omega(x, y) = 1")


def build_p1() -> NamedClass:
    sl = build_slice(HAM, 0)
    coords = sl.part(4).coordinates(p1_cochain())
    raw = sl.cochain(4, coords)
    lead = next(c for c in raw.coords if c)
    return NamedClass("p1", raw.normalized(),
                      f"tr(Omega^2) = {format_rational(lead)} x (normalized cochain)")


def build_gamma1() -> NamedClass:
    sl = build_slice(HAM0, 2)
    if sl.dim(2) != 1:
        raise InconsistentCohomology(f"C^2(ham0)_2 has dim {sl.dim(2)}")
    return NamedClass("gamma1", sl.cochain(2, [1]), "generator of (Lambda^2 S^3 H*)^Sp")


# ----------------------------------------------------------------------
# wedge with omega


@dataclass
class WedgeOmegaMap:
    source: WeightSlice
    target: WeightSlice
    matrices: dict[int, RatMatrix]  # d -> matrix C^d(source) -> C^{d+2}(target)

    def __call__(self, c: Cochain) -> Cochain:
        m = self.matrices[c.degree]
        return self.target.cochain(c.degree + 2, m.apply(list(c.coords)))

    def chain_map_defect(self, d: int) -> RatMatrix:
        """d_target . L_d - L_{d+1} . d_source (should vanish)."""
        left = self.target.coboundary(d + 2) @ self.matrices[d]
        right = self.matrices[d + 1] @ self.source.coboundary(d)
        return left - right

    def is_chain_map(self) -> bool:
        return all(self.chain_map_defect(d).is_zero() for d in sorted(self.matrices)
                   if d + 1 in self.matrices)

    def is_injective(self) -> bool:
        return all(linalg.rank(m) == m.cols for m in self.matrices.values())


def wedge_omega_map(source: WeightSlice, target: WeightSlice | None = None) -> WedgeOmegaMap:
    if source.variant is not HAM0:
        raise ValueError("wedge with omega starts from the ham0 complex")
    if target is None:
        target = build_slice(HAM, source.weight - 2)
    om = omega_cochain()
    mats = {}
    for d in range(source.max_degree + 1):
        src = source.part(d)
        tgt = target.part(d + 2)
        cols = []
        for v in src.vectors:
            cols.append(tgt.coordinates(wedge_product(v, om)))
        ent = {(i, j): x for j, col in enumerate(cols) for i, x in enumerate(col) if x}
        mats[d] = RatMatrix(tgt.dim, src.dim, ent)
    return WedgeOmegaMap(source, target, mats)


# ----------------------------------------------------------------------
# cohomology representatives


def cohomology_representatives(sl: WeightSlice, d: int) -> list[list[Fraction]]:
    """Cocycles spanning H^d, chosen from the echelon basis of ker d_d."""
    eb = EchelonBasis()
    if d > 0:
        for col in sl.coboundary(d - 1).transpose().row_dicts():
            eb.add(col)
    reps = []
    z = linalg.kernel_rows(sl.coboundary(d).row_dicts(), sl.dim(d)) if sl.dim(d) else []
    for v in z:
        if eb.add(v):
            reps.append([v.get(i, Fraction(0)) for i in range(sl.dim(d))])
    return reps


def independent_mod_image(sl: WeightSlice, d: int, vectors) -> bool:
    eb = EchelonBasis()
    if d > 0:
        for col in sl.coboundary(d - 1).transpose().row_dicts():
            eb.add(col)
    return all(eb.add({i: x for i, x in enumerate(v) if x}) for v in vectors)


def reduce_to_support(sl: WeightSlice, d: int, z, allowed) -> list[Fraction] | None:
    """Cohomologous representative of z supported on ``allowed`` profiles.

    Returns the canonical such cocycle (reduced modulo coboundaries that are
    themselves supported on ``allowed``) or None when no representative of
    that shape exists.
    """
    labels = sl.part(d).labels
    outside = [i for i, (p, _) in enumerate(labels) if p not in set(allowed)]
    A = sl.coboundary(d - 1)
    rows_out = RatMatrix.from_rows([[A[i, j] for j in range(A.cols)] for i in outside], A.cols) \
        if outside else RatMatrix(0, A.cols)
    rhs = [-z[i] for i in outside]
    c = linalg.solve(rows_out, rhs) if outside else [Fraction(0)] * A.cols
    if c is None:
        return None
    rep = [a + b for a, b in zip(z, A.apply(c))]
    assert all(rep[i] == 0 for i in outside)
    # canonical form: reduce modulo boundaries supported inside
    ker = linalg.kernel_rows(rows_out.row_dicts(), A.cols) if outside else \
        [{j: Fraction(1)} for j in range(A.cols)]
    eb = EchelonBasis()
    for v in ker:
        eb.add({i: x for i, x in enumerate(A.apply([v.get(j, 0) for j in range(A.cols)])) if x})
    red = eb.reduce({i: x for i, x in enumerate(rep) if x})
    out = [red.get(i, Fraction(0)) for i in range(len(rep))]
    lead = next((x for x in out if x), None)
    if lead is None:
        return None
    return [x / lead for x in out]


@dataclass
class EtaResult:
    eta: NamedClass
    gkf: NamedClass
    support_profiles: list[IrrepProfile]
    support_reduction_ok: bool
    checks: dict[str, bool] = field(default_factory=dict)
    obstruction: str | None = None


def extract_eta() -> EtaResult:
    src = build_slice(HAM0, 10)
    tgt = build_slice(HAM, 8)
    h = src.cohomology_dims().get(5, 0)
    if h != 1:
        raise InconsistentCohomology(f"H^5(ham0)_10 has dimension {h}, expected 1")
    (z,) = cohomology_representatives(src, 5)
    rep = reduce_to_support(src, 5, z, ETA_SUPPORT)
    obstruction = None
    if rep is None:
        obstruction = "no cocycle in the class is supported on " + \
            ", ".join(p.label() for p in ETA_SUPPORT)
        lead = next(x for x in z if x)
        rep = [x / lead for x in z]
    eta = src.cochain(5, rep)
    labels = src.part(5).labels
    support = sorted({labels[i][0] for i, x in enumerate(rep) if x},
                     key=lambda p: p.sequence)
    lam = wedge_omega_map(src, tgt)
    gkf = lam(eta)
    checks = {
        "eta_closed": is_closed(src, eta),
        "eta_non_exact": not is_exact(src, eta),
        "closed": is_closed(tgt, gkf),
        "non_exact": not is_exact(tgt, gkf),
        "chain_map": lam.is_chain_map(),
        "injective": lam.is_injective(),
        "iso": verify_iso_in_cohomology(10)["iso"],
        "support": obstruction is None and set(support) <= set(ETA_SUPPORT),
    }
    return EtaResult(
        NamedClass("eta", eta, "leaf class in H^5(ham0, sp(2))_10, leading coordinate 1"),
        NamedClass("GKF", gkf, "eta ^ omega in H^7(ham, sp(2))_8"),
        support, obstruction is None, checks, obstruction)


_ISO_DEGREE = {0: 0, 2: 2, 10: 5}


def verify_iso_in_cohomology(w_source: int) -> dict:
    """Check that wedge with omega induces H^d(ham0)_w -> H^{d+2}(ham)_{w-2} iso."""
    if w_source not in _ISO_DEGREE:
        raise ValueError(f"no isomorphism statement for weight {w_source}")
    d = _ISO_DEGREE[w_source]
    src = build_slice(HAM0, w_source)
    tgt = build_slice(HAM, w_source - 2)
    lam = wedge_omega_map(src, tgt)
    reps = cohomology_representatives(src, d)
    images = [lam.matrices[d].apply(r) for r in reps]
    closed = all(not any(tgt.coboundary(d + 2).apply(v)) for v in images)
    indep = independent_mod_image(tgt, d + 2, images)
    h_src = len(reps)
    h_tgt = tgt.cohomology_dims().get(d + 2, 0)
    return {
        "weight": w_source, "degree": d,
        "h_source": h_src, "h_target": h_tgt,
        "images_closed": closed, "images_independent": indep,
        "iso": closed and indep and h_src == h_tgt and h_src > 0,
        "image_coords": [[format_rational(x) for x in v] for v in images],
    }


def gamma1_wedge_omega_vs_p1() -> dict:
    """gamma_1 ^ omega against p_1 in H^4(ham)_0."""
    lam = wedge_omega_map(build_slice(HAM0, 2), build_slice(HAM, 0))
    g = lam(build_gamma1().cochain)
    p = build_p1().cochain
    tgt = lam.target
    diff_ok = None
    ratio = None
    for a, b in zip(g.coords, p.coords):
        if b:
            ratio = a / b
            break
    if ratio:
        diff = [a - ratio * b for a, b in zip(g.coords, p.coords)]
        diff_ok = linalg.in_column_span(tgt.coboundary(3), diff)[0]
    return {"ratio": ratio, "proportional_mod_coboundaries": bool(ratio) and bool(diff_ok),
            "p1_closed": is_closed(tgt, p), "p1_non_exact": not is_exact(tgt, p)}


def metoki_experiment(budget: int = DEFAULT_BUDGET) -> dict:
    """Opt-in: does H^7(ham0)_16 map onto a nonzero class in H^9(ham)_14?

    The weight-14 class of the full algebra is expected to factor through
    omega like the GKF class.  Building both slices takes many minutes, so
    nothing runs this by default and no outcome is asserted.
    """
    src = build_slice(HAM0, 16, budget=budget)
    tgt = build_slice(HAM, 14, budget=budget)
    h_src = src.cohomology_dims()
    h_tgt = tgt.cohomology_dims()
    reps = cohomology_representatives(src, 7)
    lam = wedge_omega_map(src, tgt)
    images = [lam.matrices[7].apply(r) for r in reps]
    closed = all(not any(tgt.coboundary(9).apply(v)) for v in images)
    nonzero = bool(images) and independent_mod_image(tgt, 9, images)
    return {
        "source": {"weight": 16, "dims": src.dims(), "cohomology": h_src},
        "target": {"weight": 14, "dims": tgt.dims(), "cohomology": h_tgt},
        "images_closed": closed,
        "images_nonzero_in_cohomology": nonzero,
        "factors_through_omega": closed and nonzero and h_tgt.get(9, 0) == len(reps),
    }


def factorization_report() -> dict:
    res = extract_eta()
    g = gamma1_wedge_omega_vs_p1()
    checks = dict(res.checks)
    checks["gamma1_omega_spans_p1"] = g["proportional_mod_coboundaries"] and g["p1_non_exact"]
    src_labels = build_slice(HAM0, 10).part(5).labels
    return {
        "eta": {
            "degree": res.eta.degree, "weight": res.eta.weight,
            "support_profiles": [str(p) for p in res.support_profiles],
            "coefficients": [{"profile": str(src_labels[i][0]), "index": src_labels[i][1],
                              "value": format_rational(x)}
                             for i, x in enumerate(res.eta.cochain.coords) if x],
        },
        "gkf": {
            "degree": res.gkf.degree, "weight": res.gkf.weight,
            "coefficients": [format_rational(x) for x in res.gkf.cochain.coords],
        },
        "gamma1_omega_over_p1": format_rational(g["ratio"]) if g["ratio"] else None,
        "obstruction": res.obstruction,
        "checks": checks,
    }
