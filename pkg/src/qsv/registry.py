"""The executable identity catalogue.

Every registered check evaluates two series-valued expressions to a target
q-order and compares them coefficient-exactly.  Checks are parameter-closed
(every free index is bound) and independent; reports are deterministic
regardless of evaluation order or worker count.

Naming: ids carry a kind prefix (thm:/cor:/prop:/lemma:/eq:/suite:) and the
bound parameters, e.g. "thm:generalPolarFiniteOddSpin:p=3,j=2,r=1".  The
anchor string says what the identity asserts in plain language.

Default orders follow the size of the objects: 200 for one-variable
identities, 60 for two-variable decompositions, 40 for the (p=5) families,
whose theta moduli (110, 120) make higher orders slow without adding
information.
"""

from __future__ import annotations

import fnmatch
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .series import (
    GR_ONE,
    GaussianRational,
    InsufficientTruncation,
    QZSeries,
    _as_fraction,
    unit_i_power,
)
from .theta import (
    GridCheckResult,
    J1,
    SeriesCache,
    ThetaArg,
    big_theta,
    binom2,
    eta,
    mono,
    neg_qmono,
    product_rearrangements,
    qmono,
    qpoch_cubed,
    theta,
    theta_identity_suite,
)
from .appell import (
    appell,
    appell_j_product,
    changing_z_psi,
    mock_theta,
    msplit_m2,
    classical_third_order_suite,
)
from .hecke import (
    character_cleared,
    character_value_cleared,
    character_clearing_check,
    compact_integer_level_check,
    cross_spin_check,
    integer_level_symmetries,
    quasi_periodicity_check,
    signed_range,
    string_cleared,
    string_coeff,
    weyl_kac_theta_ratio_check,
    _theta_pair,
)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------

_inv_cache = SeriesCache()


def _inv_theta(x: ThetaArg, base, trunc, base_unit: int = 0) -> QZSeries:
    def build(t):
        th = theta(x, base, t + 2, base_unit=base_unit)
        _, a, _ = th.leading_monomial()
        if a > 0:
            th = theta(x, base, t + 2 + 2 * a, base_unit=base_unit)
        return th.invert_unit().truncate(t)

    key = ("inv", x.unit, x.qpow, x.zpow, _as_fraction(base), base_unit % 4)
    return _inv_cache.get(key, _as_fraction(trunc), build)


def quot(t, num=(), den=()) -> QZSeries:
    """Product of thetas over a product of thetas.

    Each factor is ("J", a) for (q^a;q^a)_inf, ("j", a, b) for j(q^a;q^b),
    ("jb", a, b) for j(-q^a;q^b), optionally with an integer multiplicity
    appended."""
    acc = QZSeries.one(_as_fraction(t) + 8)

    def resolve(fac, inverse):
        nonlocal acc
        mult = 1
        if len(fac) >= 2 and fac[0] == "J":
            arg, base = qmono(fac[1]), 3 * fac[1]
            mult = fac[2] if len(fac) > 2 else 1
        elif fac[0] == "j":
            arg, base = qmono(fac[1]), fac[2]
            mult = fac[3] if len(fac) > 3 else 1
        elif fac[0] == "jb":
            arg, base = neg_qmono(fac[1]), fac[2]
            mult = fac[3] if len(fac) > 3 else 1
        else:
            raise ValueError(f"bad factor tuple {fac}")
        for _ in range(mult):
            if inverse:
                acc = acc * _inv_theta(arg, base, t)
            else:
                acc = acc * theta(arg, base, t)

    for fac in num:
        resolve(fac, False)
    for fac in den:
        resolve(fac, True)
    return acc


def mock_sub(name: str, sign_k: int, power: int, t) -> QZSeries:
    """mock theta at i^sign_k * q^power in place of q."""
    src = mock_theta(name, "eulerian", _as_fraction(t) / power)
    return src.substitute_q(sign_k, power)


def d_pair(e1, c2, e2, base, t) -> QZSeries:
    """j(-q^e1; q^base) - q^c2 * j(-q^e2; q^base)."""
    return theta(neg_qmono(e1), base, t) - \
        theta(neg_qmono(e2), base, t).times_monomial(GR_ONE, c2, 0)


def qpow(series: QZSeries, c, exp) -> QZSeries:
    return series.times_monomial(c if isinstance(c, GaussianRational)
                                 else GaussianRational(c), _as_fraction(exp), 0)


def polar_sum_it(p: int, j: int, s: int, m: int, trunc) -> QZSeries:
    """The raw pre-Appell double sum over the quasi-period:

    sum_{t in Z} q^(pjt^2 + p(2s+1)t) z^(-jt)
      sum_{i=1}^{t} q^(-pji(i-1) - p(2s+1)i) (q^(m(ji+s-j+1)) - q^(-m(ji+s)))

    with the inverted-range convention for t <= 0.
    """
    trunc = _as_fraction(trunc)
    terms: dict = {}

    def add(unit: int, eq: Fraction, ez: Fraction):
        if eq >= trunc:
            return
        c = unit_i_power(unit)
        key = (eq, ez)
        prev = terms.get(key)
        tot = prev + c if prev is not None else c
        if tot:
            terms[key] = tot
        elif prev is not None:
            del terms[key]

    def t_min_order(t: int) -> Optional[Fraction]:
        base = Fraction(p * j * t * t + p * (2 * s + 1) * t)
        _, irange = signed_range(1, t)
        best = None
        for i in irange:
            e_i = base - p * j * i * (i - 1) - p * (2 * s + 1) * i
            for extra in (m * (j * i + s - j + 1), -m * (j * i + s)):
                val = e_i + extra
                if best is None or val < best:
                    best = val
        return best

    def process(t: int):
        base = Fraction(p * j * t * t + p * (2 * s + 1) * t)
        sgn, irange = signed_range(1, t)
        su = 0 if sgn == 1 else 2
        for i in irange:
            e_i = base - p * j * i * (i - 1) - p * (2 * s + 1) * i
            add(su, e_i + m * (j * i + s - j + 1), Fraction(-j * t))
            add(su + 2, e_i - m * (j * i + s), Fraction(-j * t))

    for direction in (1, -1):
        t = direction
        stall = 0
        while stall < 4:
            lo = t_min_order(t)
            if lo is None or lo >= trunc:
                stall += 1
            else:
                stall = 0
                process(t)
            t += direction
            if abs(t) > 10000:
                raise RuntimeError("quasi-period sum did not close")
    return QZSeries(terms, trunc)


# ---------------------------------------------------------------------------
# check objects
# ---------------------------------------------------------------------------

@dataclass
class IdentityCheck:
    id: str
    anchor: str
    kind: str  # "statement" | "proof-chain" | "property"
    default_order: int
    build: Optional[Callable[[Fraction], tuple[QZSeries, QZSeries]]] = None
    family: Optional[Callable[[Fraction], list[GridCheckResult]]] = None


@dataclass
class CheckReport:
    id: str
    anchor: str
    status: str  # "pass" | "fail" | "skipped"
    verified_order: str
    first_difference: Optional[dict] = None
    wall_time_ms: float = 0.0
    note: Optional[str] = None

    def to_json(self, timings: bool) -> dict:
        out = {
            "id": self.id,
            "anchor": self.anchor,
            "status": self.status,
            "verified_order": self.verified_order,
            "wall_time_ms": round(self.wall_time_ms, 3) if timings else 0,
        }
        if self.first_difference is not None:
            out["first_difference"] = self.first_difference
        if self.note is not None:
            out["note"] = self.note
        return out


_CATALOGUE: Optional[dict[str, IdentityCheck]] = None


def register_builtin_catalogue() -> dict[str, IdentityCheck]:
    global _CATALOGUE
    if _CATALOGUE is None:
        cat: dict[str, IdentityCheck] = {}

        def add(cid, anchor, kind, order, build=None, family=None):
            if cid in cat:
                raise ValueError(f"duplicate check id {cid}")
            cat[cid] = IdentityCheck(cid, anchor, kind, order, build, family)

        _register_theta_suites(add)
        _register_mock_dual_forms(add)
        _register_third_order(add)
        _register_appell_properties(add)
        _register_kac_peterson(add)
        _register_level_half(add)
        _register_level_third(add)
        _register_level_fifth(add)
        _register_level_two_thirds(add)
        _register_level_two_fifths(add)
        _register_polar_finite(add)
        _register_cross_spin(add)
        _register_quasi_periodicity(add)
        _register_string_structure(add)
        _CATALOGUE = cat
    return _CATALOGUE


# -- theta suites -----------------------------------------------------------

_THETA_FAMILIES = (
    "j-elliptic", "j-flip", "j-flip-inverse", "j-base-split",
    "j-negative-base", "j-root-split", "quintuple-product",
    "quintuple-product-middle", "j-split-m2", "j-split-m3",
    "two-by-two-product", "weierstrass-three-term",
)


def _register_theta_suites(add):
    cache: dict = {}

    def family_runner(name):
        def run(order):
            key = order
            if key not in cache:
                cache[key] = theta_identity_suite(order)
            return [r for r in cache[key] if r.identity == name]
        return run

    for name in _THETA_FAMILIES:
        add(f"suite:theta:{name}",
            f"classical theta transformation '{name}' on the monomial grid",
            "property", 200, family=family_runner(name))
    add("suite:theta:product-rearrangements",
        "eta-quotient forms of the small twisted theta constants",
        "property", 200, family=lambda order: product_rearrangements(order))

    def big_theta_equiv(order):
        out = []
        w = _as_fraction(order)
        for (n, mth) in ((0, 1), (1, 2), (2, 3), (3, 5), (-1, 4)):
            lhs = big_theta(n, mth, w)
            body = theta(ThetaArg(2, Fraction(mth + n), Fraction(-mth)), 2 * mth, w)
            rhs = body.times_monomial(GR_ONE, Fraction(n * n, 4 * mth), Fraction(-n, 2))
            ok, diff = lhs.equal_up_to(rhs, w)
            out.append(GridCheckResult("big-theta-vs-j", f"(n,m)=({n},{mth})",
                                       "pass" if ok else "fail",
                                       None if ok else str(diff)))
        return out

    add("suite:theta:big-theta-vs-j",
        "lattice theta with characteristics rewritten as a triple product",
        "property", 60, family=big_theta_equiv)


# -- mock theta dual forms ---------------------------------------------------

def _register_mock_dual_forms(add):
    for name in ("A2", "mu2", "f3", "omega3", "psi3", "chi3", "f0", "f1"):
        def build(order, name=name):
            return (mock_theta(name, "eulerian", order),
                    mock_theta(name, "appell", order))
        add(f"eq:mockDualForm:{name}",
            f"Eulerian and Appell/g3 forms of {name} agree",
            "statement", 200, build=build)

    def build_f3_intro(order):
        lhs = mock_theta("f3", "eulerian", order)
        rhs = QZSeries({(Fraction(0), Fraction(0)): GR_ONE,
                        (Fraction(1), Fraction(0)): GR_ONE,
                        (Fraction(2), Fraction(0)): GaussianRational(-2),
                        (Fraction(3), Fraction(0)): GaussianRational(3)}, 4)
        return lhs, rhs
    add("eq:f3-opening-coefficients",
        "f3 = 1 + q - 2q^2 + 3q^3 + ...",
        "statement", 4, build=build_f3_intro)


# -- classical third order ----------------------------------------------------

def _register_third_order(add):
    def pair_m56(order):
        w = order + 4
        return appell(neg_qmono(5), qmono(6), 12, w) - \
            appell(neg_qmono(1), qmono(6), 12, w).times_monomial(GR_ONE, -1, 0)

    def pair2_m56(order):
        w = order + 4
        return appell(neg_qmono(7), qmono(6), 12, w) - \
            appell(neg_qmono(-1), qmono(6), 12, w).times_monomial(GR_ONE, -2, 0)

    cases = [
        ("eq:mockIdentity-f-psi", "f3(q) + 4 psi3(-q) = J1^3/J2^2",
         lambda t: mock_theta("f3", "eulerian", t)
         + mock_sub("psi3", 2, 1, t).scale(GaussianRational(4)),
         lambda t: quot(t, num=[("J", 1, 3)], den=[("J", 2, 2)])),
        ("eq:mockIdentity-chi-f", "4 chi3(q) - f3(q) = 3 J3^4/(J1 J6^2)",
         lambda t: mock_theta("chi3", "eulerian", t).scale(GaussianRational(4))
         - mock_theta("f3", "eulerian", t),
         lambda t: quot(t, num=[("J", 3, 4)], den=[("J", 1), ("J", 6, 2)])
         .scale(GaussianRational(3))),
        ("eq:mockIdentity-chi-psi", "chi3(q) + psi3(-q) = J3 J4^3/(J2^2 J12)",
         lambda t: mock_theta("chi3", "eulerian", t) + mock_sub("psi3", 2, 1, t),
         lambda t: quot(t, num=[("J", 3), ("J", 4, 3)], den=[("J", 2, 2), ("J", 12)])),
        ("prop:alternate3rdAppell:chi",
         "m(-q^5,q^6;q^12) - q^-1 m(-q,q^6;q^12) = chi3 - J3J4^3/(J2^2 J12)",
         pair_m56,
         lambda t: mock_theta("chi3", "eulerian", t)
         - quot(t, num=[("J", 3), ("J", 4, 3)], den=[("J", 2, 2), ("J", 12)])),
        ("prop:alternate3rdAppell:psi",
         "m(-q^5,q^6;q^12) - q^-1 m(-q,q^6;q^12) = -psi3(-q)",
         pair_m56, lambda t: -mock_sub("psi3", 2, 1, t)),
        ("prop:alternateAppellPairs:second",
         "-q^-2 m(-q^-1,q^6;q^12) + m(-q^7,q^6;q^12) = 1 - chi3 + J3J4^3/(J2^2 J12)",
         pair2_m56,
         lambda t: QZSeries.one(_as_fraction(t)) - mock_theta("chi3", "eulerian", t)
         + quot(t, num=[("J", 3), ("J", 4, 3)], den=[("J", 2, 2), ("J", 12)])),
        ("prop:alternateAppellPairsAlt:first",
         "m(-q^5,q^6;q^12) - q^-1 m(-q,q^6;q^12) = f3/4 - J1^3/(4 J2^2)",
         pair_m56,
         lambda t: mock_theta("f3", "eulerian", t).scale(GaussianRational(QUARTER))
         - quot(t, num=[("J", 1, 3)], den=[("J", 2, 2)]).scale(GaussianRational(QUARTER))),
        ("prop:alternateAppellPairsAlt:second",
         "-q^-2 m(-q^-1,q^6;q^12) + m(-q^7,q^6;q^12) = 1 - f3/4 + J1^3/(4 J2^2)",
         pair2_m56,
         lambda t: QZSeries.one(_as_fraction(t))
         - mock_theta("f3", "eulerian", t).scale(GaussianRational(QUARTER))
         + quot(t, num=[("J", 1, 3)], den=[("J", 2, 2)]).scale(GaussianRational(QUARTER))),
    ]
    for cid, anchor, lhs_fn, rhs_fn in cases:
        def build(order, lhs_fn=lhs_fn, rhs_fn=rhs_fn):
            return lhs_fn(order), rhs_fn(order)
        add(cid, anchor, "statement", 200, build=build)

    add("suite:classicalThirdOrder",
        "the grouped classical third-order identity battery",
        "property", 120, family=lambda order: classical_third_order_suite(order))


# -- Appell functional equations, changing z, splitting ----------------------

_APPELL_GRID = (
    (neg_qmono(1), qmono(2), 5),
    (qmono(2), neg_qmono(3), 7),
    (neg_qmono(3), qmono(1), 4),
    (qmono(1), qmono(3), 6),
    (neg_qmono(2), neg_qmono(5), 9),
)


def _register_appell_properties(add):
    def functional_equations(order):
        out = []
        w = _as_fraction(order) + 6
        for x, z, b in _APPELL_GRID:
            lhs = appell(x, z, b, w)
            # m(x, qz; q) = m(x, z; q)
            rhs = appell(x, qmono(b) * z, b, w)
            ok, diff = lhs.equal_up_to(rhs, order)
            out.append(GridCheckResult("appell-z-shift", f"x={x},z={z},b={b}",
                                       "pass" if ok else "fail", None if ok else str(diff)))
            # m(x, z; q) = x^-1 m(1/x, 1/z; q)
            xi = x.inverse()
            rhs = appell(xi, z.inverse(), b, w).times_monomial(
                xi.coeff, xi.qpow, xi.zpow)
            ok, diff = lhs.equal_up_to(rhs, order)
            out.append(GridCheckResult("appell-flip", f"x={x},z={z},b={b}",
                                       "pass" if ok else "fail", None if ok else str(diff)))
            # m(qx, z; q) = 1 - x m(x, z; q)
            lhs2 = appell(qmono(b) * x, z, b, w)
            rhs2 = QZSeries.one(w) - lhs.times_monomial(x.coeff, x.qpow, x.zpow)
            ok, diff = lhs2.equal_up_to(rhs2, order)
            out.append(GridCheckResult("appell-x-shift", f"x={x},z={z},b={b}",
                                       "pass" if ok else "fail", None if ok else str(diff)))
            # j(z;q) m(x,z;q) = appell_j_product(x,z;q)
            jz = theta(z, b, w)
            ok, diff = (jz * lhs).equal_up_to(
                appell_j_product(x, z, b, w), order)
            out.append(GridCheckResult("appell-j-product-consistency",
                                       f"x={x},z={z},b={b}",
                                       "pass" if ok else "fail", None if ok else str(diff)))
        return out

    add("prop:appellFunctionalEquations",
        "z-shift, inversion and x-shift functional equations of m(x,z;q)",
        "property", 60, family=functional_equations)

    def changing_z(order):
        out = []
        w = _as_fraction(order) + 6
        grid = [
            (neg_qmono(1), qmono(2), qmono(4), 5),
            (qmono(2), neg_qmono(1), qmono(3), 6),
            (neg_qmono(2), qmono(1), neg_qmono(3), 7),
        ]
        for x, z1, z0, b in grid:
            lhs = appell(x, z1, b, w) - appell(x, z0, b, w)
            rhs = changing_z_psi(x, z1, z0, b, w)
            ok, diff = lhs.equal_up_to(rhs, order)
            out.append(GridCheckResult("changing-z", f"x={x},z1={z1},z0={z0},b={b}",
                                       "pass" if ok else "fail", None if ok else str(diff)))
            # z1 = z0 collapses to zero
            zero = changing_z_psi(x, z0, z0, b, w)
            ok = not zero
            out.append(GridCheckResult("changing-z-degenerate", f"x={x},z0={z0},b={b}",
                                       "pass" if ok else "fail", None))
        # the flip corollary m(x,z;q) = m(x, 1/(xz); q)
        for x, z, b in ((neg_qmono(1), qmono(2), 5), (qmono(2), neg_qmono(3), 7)):
            lhs = appell(x, z, b, w)
            rhs = appell(x, (x * z).inverse(), b, w)
            ok, diff = lhs.equal_up_to(rhs, order)
            out.append(GridCheckResult("changing-z-flip-corollary", f"x={x},z={z},b={b}",
                                       "pass" if ok else "fail", None if ok else str(diff)))
        return out

    add("thm:changingZ",
        "m(x,z1;q) - m(x,z0;q) equals the four-theta quotient, with the "
        "x^-1 z^-1 flip corollary",
        "property", 60, family=changing_z)

    def msplit(order):
        out = [msplit_m2(neg_qmono(1), qmono(1), qmono(6), 3, order)]
        for x, z, z1, b in ((neg_qmono(1), qmono(2), qmono(5), 4),
                            (qmono(1), neg_qmono(2), qmono(3), 2),
                            (neg_qmono(2), qmono(3), qmono(7), 5)):
            out.append(msplit_m2(x, z, z1, b, order))
        return out

    add("cor:msplitM2",
        "two-term splitting of m(x,z;q) into base-q^4 Appell functions "
        "plus a theta correction",
        "property", 60, family=msplit)

    def msplit_endpoint(order):
        w = _as_fraction(order) + 4
        lhs = appell(neg_qmono(1), qmono(1), 3, w)
        rhs = appell(neg_qmono(5), qmono(6), 12, w) \
            - appell(neg_qmono(1), qmono(6), 12, w).times_monomial(GR_ONE, -1, 0) \
            - quot(w, num=[("J", 3), ("J", 12, 3)], den=[("J", 4), ("J", 6, 2)]) \
            .times_monomial(GR_ONE, 1, 0)
        return lhs, rhs

    add("eq:msplitM2:third-order-endpoint",
        "m(-q,q;q^3) = m(-q^5,q^6;q^12) - q^-1 m(-q,q^6;q^12) - q J3 J12^3/(J4 J6^2)",
        "proof-chain", 200, build=msplit_endpoint)


# -- Kac-Peterson golden values ----------------------------------------------

def _register_kac_peterson(add):
    def kp1(order):
        w = _as_fraction(order) + 2
        return (string_coeff(1, 3, 0, 0, w, normalized=False).truncate(order),
                eta(w).invert_unit().truncate(order))

    def kp2(order):
        w = _as_fraction(order) + 2
        rhs = eta(w).invert_unit() ** 2 * eta(w).substitute_q(0, 2)
        return (string_coeff(1, 4, 1, 1, w, normalized=False).truncate(order),
                rhs.truncate(order))

    def kp3(order):
        w = _as_fraction(order) + 2
        rhs = (eta(w).invert_unit() ** 2 * theta(qmono(6), 15, w)) \
            .times_monomial(GR_ONE, Fraction(3, 40), 0)
        return (string_coeff(1, 5, 1, 1, w, normalized=False).truncate(order),
                rhs.truncate(order))

    def kp4(order):
        w = _as_fraction(order) + 6
        rhs = eta(w).invert_unit() ** 2 * eta(w).substitute_q(0, 6).invert_unit() \
            * eta(w).substitute_q(0, 12) ** 2
        return (string_coeff(1, 6, 2, 0, w, normalized=False).truncate(order),
                rhs.truncate(order))

    for cid, anchor, build in (
            ("eq:kacPeterson:C1_00", "C^1_{0,0} = 1/eta", kp1),
            ("eq:kacPeterson:C2_11", "C^2_{1,1} = eta(q^2)/eta^2", kp2),
            ("eq:kacPeterson:C3_11", "C^3_{1,1} = q^(3/40) J_{6,15}/eta^2", kp3),
            ("eq:kacPeterson:C4_20", "C^4_{2,0} = eta(q^12)^2/(eta^2 eta(q^6))", kp4)):
        add(cid, anchor, "statement", 100, build=build)

    for level, m, ell in ((1, 0, 0), (2, 1, 1), (3, 1, 1), (4, 2, 0)):
        add(f"eq:compactIntegerLevel:N={level}",
            "general admissible double-sum form equals the compact "
            f"integer-level form at N={level}",
            "property", 200,
            family=lambda order, level=level, m=m, ell=ell:
                [compact_integer_level_check(level, m, ell, order)])


# -- level 1/2: (p,p') = (2,5) -----------------------------------------------

def _E(p, pp, m, ell, t):
    return string_cleared(p, pp, m, ell, t)


def _register_level_half(add):
    for r in (0, 1):
        def build_a(order, r=r):
            t = _as_fraction(order) + 4
            lhs = _E(2, 5, 1, 2 * r + 1, t)
            rhs = quot(t, num=[("J", 1, 4), ("J", 4)], den=[("J", 2, 4)]) \
                * theta(qmono(4 * r + 4), 20, t)
            rhs = rhs.times_monomial(unit_i_power(2 * r), 1 - 2 * r, 0)
            tail = theta(qmono(2 + 2 * r), 5, t) * \
                (QZSeries.one(t) + mock_sub("A2", 2, 1, t).scale(GaussianRational(2)))
            return lhs, rhs + tail.times_monomial(GR_ONE, -r, 0)

        add(f"cor:pP25m1ell2rPlus1:r={r}:A-form",
            "odd-spin level-1/2 string function via the second-order A2(-q)",
            "statement", 200, build=build_a)

        def build_mu(order, r=r):
            t = _as_fraction(order) + 4
            lhs = _E(2, 5, 1, 2 * r + 1, t)
            rhs = quot(t, num=[("J", 1, 3)], den=[("J", 2), ("J", 4)]) \
                * theta(qmono(2 * r + 2), 5, t, base_unit=2)
            rhs = rhs.times_monomial(
                unit_i_power(2 * r) * GaussianRational(HALF), -r, 0)
            tail = theta(qmono(2 + 2 * r), 5, t) * \
                (QZSeries.one(t) - mock_theta("mu2", "eulerian", t).scale(GaussianRational(HALF)))
            return lhs, rhs + tail.times_monomial(GR_ONE, -r, 0)

        add(f"cor:pP25m1ell2rPlus1:r={r}:mu-form",
            "odd-spin level-1/2 string function via the second-order mu2(q)",
            "statement", 200, build=build_mu)

        # even-spin companions
        def build_a0(order, r=r):
            t = _as_fraction(order) + 4
            lhs = _E(2, 5, 0, 2 * r, t)
            rhs = quot(t, num=[("J", 1, 4), ("J", 4)], den=[("J", 2, 4)]) \
                * theta(qmono(4 * r + 12), 20, t)
            rhs = rhs.scale(unit_i_power(2 * r))
            tail = theta(qmono(1 + 2 * r), 5, t) * mock_sub("A2", 2, 1, t)
            return lhs, rhs - tail.times_monomial(GaussianRational(2), -r, 0)

        add(f"cor:pP25m0ell2r:r={r}:A-form",
            "even-spin level-1/2 string function via A2(-q)",
            "statement", 200, build=build_a0)

        def build_mu0(order, r=r):
            t = _as_fraction(order) + 4
            lhs = _E(2, 5, 0, 2 * r, t)
            rhs = quot(t, num=[("J", 1, 3)], den=[("J", 2), ("J", 4)]) \
                * theta(neg_qmono(2 * r + 1), 5, t, base_unit=2)
            rhs = rhs.times_monomial(
                unit_i_power(2 * r) * GaussianRational(HALF), -r, 0)
            tail = theta(qmono(1 + 2 * r), 5, t) * mock_theta("mu2", "eulerian", t)
            return lhs, rhs + tail.times_monomial(GaussianRational(HALF), -r, 0)

        add(f"cor:pP25m0ell2r:r={r}:mu-form",
            "even-spin level-1/2 string function via mu2(q)",
            "statement", 200, build=build_mu0)

        # the general z-form of the level-1/2 identity at z = -q, -q^2
        for zq, zlab in ((1, "-q"), (2, "-q2")):
            def build_gen(order, r=r, zq=zq):
                t = _as_fraction(order) + 8
                z = mono(zq, unit=2)
                # -q^e z^-5 at z = -q^zq becomes +q^(e-5zq)
                lhs = _E(2, 5, 1, 2 * r + 1, t)
                num = theta(qmono(Fraction(4 * r + 14 - 5 * zq)), 20, t) \
                    - theta(qmono(Fraction(-4 * r + 6 - 5 * zq)), 20, t) \
                    .times_monomial(unit_i_power(2 * (2 * r + 2)), zq * (2 * r + 2), 0)
                first = qpoch_cubed(t) * num \
                    * _inv_theta(z, 1, t) * _inv_theta(ThetaArg(2 + z.unit, z.qpow, 0), 4, t)
                first = first.times_monomial(unit_i_power(2 * r), -zq * r, 0)
                bracket = appell(neg_qmono(-1), ThetaArg(z.unit + 2, 4 - z.qpow, 0), 4, t) \
                    .times_monomial(GR_ONE, -1, 0) \
                    + appell(neg_qmono(3), ThetaArg(z.unit + 2, z.qpow, 0), 4, t)
                tail = theta(qmono(2 + 2 * r), 5, t) * bracket
                return lhs, first + tail.times_monomial(GR_ONE, -r, 0)

            add(f"eq:generalMockThetaConjLevel12:r={r}:z={zlab}",
                "level-1/2 polar-finite identity specialized to a monomial z",
                "proof-chain", 200, build=build_gen)


# -- level 1/3: (p,p') = (3,7) -------------------------------------------------

def _register_level_third(add):
    for r in (0, 1, 2):
        def build(order, r=r):
            t = _as_fraction(order) + 6
            lhs = _E(3, 7, 1, 2 * r + 1, t)
            lead = qpoch_cubed(t) * quot(
                t, num=[("jb", 5 - 2 * r, 14), ("j", 24 - 4 * r, 28)],
                den=[("J", 2), ("jb", 0, 1), ("J", 28)])
            lead = lead.times_monomial(unit_i_power(2 * r), 1 - 2 * r, 0)
            mid = quot(t, num=[("j", 2 + 2 * r, 14), ("j", 18 + 4 * r, 28)],
                       den=[("J", 28)]) \
                * (QZSeries.one(t) - mock_sub("omega3", 2, 1, t).times_monomial(GR_ONE, 1, 0))
            last = quot(t, num=[("j", 9 + 2 * r, 14), ("j", 4 + 4 * r, 28)],
                        den=[("J", 28)]) \
                * (QZSeries.one(t) - mock_sub("f3", 0, 2, t).scale(GaussianRational(HALF)))
            rhs = lead + mid.times_monomial(GR_ONE, -r, 0) \
                - last.times_monomial(GR_ONE, 1 - 2 * r, 0)
            return lhs, rhs

        add(f"cor:pP37m1ell2rPlus1:r={r}",
            "odd-spin level-1/3 string function via omega3(-q) and f3(q^2)",
            "statement", 200, build=build)

        def build_even(order, r=r):
            t = _as_fraction(order) + 6
            lhs = _E(3, 7, 0, 2 * r, t)
            lead = qpoch_cubed(t) * quot(
                t, num=[("jb", 1 + 2 * r, 14), ("j", 16 + 4 * r, 28)],
                den=[("J", 2), ("jb", 0, 1), ("J", 28)])
            lead = lead.times_monomial(unit_i_power(2 * r), -r, 0)
            mid = quot(t, num=[("j", 6 - 2 * r, 14), ("j", 26 - 4 * r, 28)],
                       den=[("J", 28)]) * mock_sub("omega3", 2, 1, t)
            last = quot(t, num=[("j", 1 + 2 * r, 14), ("j", 16 + 4 * r, 28)],
                        den=[("J", 28)]) * mock_sub("f3", 0, 2, t)
            rhs = lead - mid.times_monomial(GR_ONE, 2 - 2 * r, 0) \
                + last.times_monomial(GaussianRational(HALF), -r, 0)
            return lhs, rhs

        add(f"thm:pP37m0ell2r:r={r}",
            "even-spin level-1/3 string function via omega3(-q) and f3(q^2)",
            "statement", 200, build=build_even)

        # section-9 derivation endpoints with the character specialized
        def build_fourier(order, r=r):
            t = _as_fraction(order) + 8
            lhs = _E(3, 7, 1, 2 * r + 1, t)
            char = character_value_cleared(3, 7, 2 * r + 1, mono(2, unit=2), t)
            first = char * _inv_theta(qmono(2), 6, t)
            mid = quot(t, num=[("j", 5 - 2 * r, 14), ("j", 24 - 4 * r, 28)],
                       den=[("J", 28)]) \
                * (QZSeries.one(t) - mock_sub("f3", 0, 2, t).scale(GaussianRational(HALF)))
            last = quot(t, num=[("j", 2 + 2 * r, 14), ("j", 18 + 4 * r, 28)],
                        den=[("J", 28)]) \
                * (QZSeries.one(t) - mock_sub("omega3", 2, 1, t).times_monomial(GR_ONE, 1, 0))
            rhs = first - mid.times_monomial(GR_ONE, 1 - 2 * r, 0) \
                + last.times_monomial(GR_ONE, -r, 0)
            return lhs, rhs

        add(f"eq:fourierFinal37:r={r}",
            "level-1/3 Fourier endpoint: cleared character at z=-q^2 plus "
            "the two mock-theta corrections",
            "proof-chain", 200, build=build_fourier)

        def build_wk(order, r=r):
            t = _as_fraction(order) + 8
            lhs = character_value_cleared(3, 7, 2 * r + 1, mono(2, unit=2), t)
            rhs = qpoch_cubed(t) * quot(
                t, num=[("jb", 5 - 2 * r, 14), ("j", 24 - 4 * r, 28)],
                den=[("jb", 0, 1), ("J", 28)])
            rhs = rhs.times_monomial(unit_i_power(2 * r), 1 - 2 * r, 0)
            return lhs, rhs

        add(f"eq:weylKacFinal37:r={r}",
            "level-1/3 quotient endpoint: cleared character at z=-q^2 as a "
            "quintuple-collapsed theta quotient",
            "proof-chain", 200, build=build_wk)


# -- level 1/5: (p,p') = (5,11) ------------------------------------------------

def _five_term(t, lead_fn, diffs, factors, shifts):
    """lead + sum_k (+-1)^... q^shift_k * D_k * factor_k with alternating
    signs (-,+,-,+) after the lead term."""
    rhs = lead_fn(t)
    sign = -1
    for (d, fac, sh) in zip(diffs, factors, shifts):
        piece = (d * fac).times_monomial(GR_ONE, sh, 0)
        rhs = rhs + piece if sign > 0 else rhs - piece
        sign = -sign
    return rhs


def _register_level_fifth(add):
    for r in range(5):
        def diffs_511_odd(t, r=r):
            return [d_pair(21 + 10 * r, 8 + 8 * r, 1 - 10 * r, 110, t),
                    d_pair(32 + 10 * r, 6 + 6 * r, 12 - 10 * r, 110, t),
                    d_pair(43 + 10 * r, 4 + 4 * r, 23 - 10 * r, 110, t),
                    d_pair(54 + 10 * r, 2 + 2 * r, 34 - 10 * r, 110, t)]

        def build_odd(order, r=r):
            t = _as_fraction(order) + 10
            one = QZSeries.one(t)
            lhs = _E(5, 11, 1, 2 * r + 1, t)

            def lead(t):
                return (quot(t, num=[("j", 1, 2)]) * theta(qmono(8 * (r + 1)), 22, t)) \
                    .times_monomial(GR_ONE, (r - 1) ** 2, 0)

            factors = [one - mock_sub("X10", 0, 2, t),
                       one + mock_sub("psi10", 2, 1, t),
                       one - mock_sub("chi10", 0, 2, t),
                       one - mock_sub("phi10", 2, 1, t).times_monomial(GR_ONE, 1, 0)]
            rhs = _five_term(t, lead, diffs_511_odd(t, r), factors,
                             [6 - 4 * r, 3 - 3 * r, 1 - 2 * r, -r])
            return lhs, rhs

        add(f"cor:pP511m1ell2rPlus1:r={r}",
            "odd-spin level-1/5 string function via the four tenth-order "
            "mock theta functions",
            "statement", 40, build=build_odd)

        def build_even(order, r=r):
            t = _as_fraction(order) + 10
            lhs = _E(5, 11, 0, 2 * r, t)

            def lead(t):
                return -(quot(t, num=[("j", 1, 2)]) * theta(qmono(4 + 8 * r), 22, t)) \
                    .times_monomial(GR_ONE, r * r - 3 * r + 1, 0)

            diffs = [d_pair(16 + 10 * r, 4 + 8 * r, 6 - 10 * r, 110, t),
                     d_pair(27 + 10 * r, 3 + 6 * r, 17 - 10 * r, 110, t),
                     d_pair(38 + 10 * r, 2 + 4 * r, 28 - 10 * r, 110, t),
                     d_pair(49 + 10 * r, 1 + 2 * r, 39 - 10 * r, 110, t)]
            factors = [mock_sub("phi10", 2, 1, t).times_monomial(GR_ONE, 1, 0),
                       mock_sub("chi10", 0, 2, t),
                       -mock_sub("psi10", 2, 1, t),
                       mock_sub("X10", 0, 2, t)]
            rhs = _five_term(t, lead, diffs, factors,
                             [6 - 4 * r, 3 - 3 * r, 1 - 2 * r, -r])
            return lhs, rhs

        add(f"thm:pP511m0ell2r:r={r}",
            "even-spin level-1/5 string function via the four tenth-order "
            "mock theta functions",
            "statement", 40, build=build_even)


# -- level 2/3: (p,p') = (3,8) ---------------------------------------------------

def _theta38_A(r, t):
    """j(q^(6-2r);q^16) j(q^(28-4r);q^32) / J32."""
    return quot(t, num=[("j", 6 - 2 * r, 16), ("j", 28 - 4 * r, 32)],
                den=[("J", 32)])


def _theta38_B(r, t):
    """j(q^(2+2r);q^16) j(q^(20+4r);q^32) / J32."""
    return quot(t, num=[("j", 2 + 2 * r, 16), ("j", 20 + 4 * r, 32)],
                den=[("J", 32)])


def _theta38_case(r, t) -> QZSeries:
    """The spin-indexed theta constant of the first level-2/3 family."""
    if r == 0:
        return quot(t, num=[("J", 3), ("J", 4, 2), ("jb", 6, 16)],
                    den=[("J", 2), ("J", 12)])
    if r == 1:
        return quot(t, num=[("J", 3), ("J", 12, 3)], den=[("J", 6, 2)]) \
            .scale(GaussianRational(3))
    if r == 2:
        return quot(t, num=[("J", 3), ("J", 4, 2), ("jb", 2, 16)],
                    den=[("J", 2), ("J", 12)]).times_monomial(GR_ONE, -2, 0)
    raise ValueError(r)


def _psi38_case(r, t) -> QZSeries:
    """The spin-indexed theta constant of the second level-2/3 family."""
    if r == 0:
        return quot(t, num=[("J", 1, 2), ("J", 2)], den=[("J", 4)]) \
            .scale(GaussianRational(QUARTER))
    if r == 1:
        return quot(t, num=[("J", 1, 3), ("J", 4)], den=[("J", 2, 2)]) \
            .times_monomial(GaussianRational(Fraction(-1, 2)), -1, 0)
    if r == 2:
        return quot(t, num=[("J", 1, 2), ("J", 2)], den=[("J", 4)]) \
            .times_monomial(GaussianRational(QUARTER), -3, 0)
    raise ValueError(r)


def _register_level_two_thirds(add):
    for r in (0, 1, 2):
        def build_m1(order, r=r):
            t = _as_fraction(order) + 6
            one = QZSeries.one(t)
            lhs = _E(3, 8, 1, 2 * r + 1, t)
            rhs = _theta38_case(r, t) \
                + (_theta38_A(r, t) * (-mock_sub("psi3", 2, 1, t))) \
                .times_monomial(GaussianRational(-1), 1 - 2 * r, 0) \
                + (_theta38_B(r, t) * (one - mock_theta("chi3", "eulerian", t))) \
                .times_monomial(GR_ONE, -r, 0)
            return lhs, rhs

        add(f"thm:pP38m1ell2rPlus1:r={r}",
            "odd-spin level-2/3 string function, quantum number 1, via "
            "psi3(-q) and chi3(q)",
            "statement", 200, build=build_m1)

        def build_m3(order, r=r):
            t = _as_fraction(order) + 8
            one = QZSeries.one(t)
            lhs = _E(3, 8, 3, 2 * r + 1, t)
            inner1 = (one - (one - mock_theta("chi3", "eulerian", t))
                      .times_monomial(GR_ONE, 1, 0)).times_monomial(GR_ONE, -1, 0)
            rhs = _theta38_case(2 - r, t).times_monomial(GR_ONE, 6 - 3 * r, 0) \
                - (_theta38_A(r, t) * inner1).times_monomial(GR_ONE, 4 - 2 * r, 0) \
                + (_theta38_B(r, t)
                   * (mock_sub("psi3", 2, 1, t)
                      + QZSeries.one(t).times_monomial(GR_ONE, -2, 0))) \
                .times_monomial(GR_ONE, 3 - r, 0)
            return lhs, rhs

        add(f"cor:pP38m3ell2rPlus1:r={r}",
            "odd-spin level-2/3 string function, quantum number 3, by "
            "cross-spin from quantum number 1",
            "statement", 200, build=build_m3)

        def build_m1_alt(order, r=r):
            t = _as_fraction(order) + 6
            one = QZSeries.one(t)
            f3q = mock_theta("f3", "eulerian", t).scale(GaussianRational(QUARTER))
            lhs = _E(3, 8, 1, 2 * r + 1, t)
            rhs = _psi38_case(r, t) \
                - (_theta38_A(r, t) * f3q).times_monomial(GR_ONE, 1 - 2 * r, 0) \
                + (_theta38_B(r, t) * (one - f3q)).times_monomial(GR_ONE, -r, 0)
            return lhs, rhs

        add(f"thm:pP38m1ell2rPlus1Alt:r={r}",
            "odd-spin level-2/3 string function, quantum number 1, via "
            "f3(q) alone",
            "statement", 200, build=build_m1_alt)

        def build_m3_alt(order, r=r):
            t = _as_fraction(order) + 8
            one = QZSeries.one(t)
            f3q = mock_theta("f3", "eulerian", t).scale(GaussianRational(QUARTER))
            lhs = _E(3, 8, 3, 2 * r + 1, t)
            rhs = _psi38_case(2 - r, t).times_monomial(GR_ONE, 6 - 3 * r, 0) \
                + (_theta38_B(r, t)
                   * (one - f3q.times_monomial(GR_ONE, 2, 0))) \
                .times_monomial(GR_ONE, 1 - r, 0) \
                - (_theta38_A(r, t)
                   * (one - (one - f3q).times_monomial(GR_ONE, 1, 0))) \
                .times_monomial(GR_ONE, 3 - 2 * r, 0)
            return lhs, rhs

        add(f"cor:pP38m3ell2rPlus1Alt:r={r}",
            "odd-spin level-2/3 string function, quantum number 3, via "
            "f3(q) alone",
            "statement", 200, build=build_m3_alt)

    # prior even-spin results at (3,8), r in 0..3
    for r in range(4):
        add(f"thm:pP38m0ell2r:r={r}",
            "even-spin level-2/3 string function, quantum number 0, via "
            "omega3(-q^2) and f3(q^4)",
            "statement", 200,
            build=lambda order, r=r: _build_38_even(order, r, 0))
        add(f"thm:pP38m2ell2r:r={r}",
            "even-spin level-2/3 string function, quantum number 2, via "
            "omega3(-q^2) and f3(q^4)",
            "statement", 200,
            build=lambda order, r=r: _build_38_even(order, r, 2))

    # the level-2/3 master theta identities and the unusual lemmas
    _register_38_theta_machinery(add)


def _build_38_even(order, r, m):
    t = _as_fraction(order) + 8
    one = QZSeries.one(t)
    lhs = _E(3, 8, m, 2 * r, t)
    if m == 0:
        lead = (quot(t, num=[("J", 1, 2), ("J", 2), ("jb", 7 - 2 * r, 16),
                             ("j", 1 + 2 * r, 8)],
                     den=[("J", 4, 2), ("J", 8)])) \
            .times_monomial(unit_i_power(2 * ((r + 1) // 2))
                            * GaussianRational(HALF), -r, 0)
        mid = quot(t, num=[("j", 7 - 2 * r, 16), ("j", 30 - 4 * r, 32)],
                   den=[("J", 32)]) * mock_sub("omega3", 2, 2, t)
        last = quot(t, num=[("j", 1 + 2 * r, 16), ("j", 18 + 4 * r, 32)],
                    den=[("J", 32)]) * mock_sub("f3", 0, 4, t)
        rhs = lead - mid.times_monomial(GR_ONE, 3 - 2 * r, 0) \
            + last.times_monomial(GaussianRational(HALF), -r, 0)
    else:
        lead = (quot(t, num=[("J", 1, 2), ("J", 2), ("j", 2 + 4 * r, 32),
                             ("j", 7 - 2 * r, 16)],
                     den=[("J", 4, 2), ("J", 32)])) \
            .times_monomial(unit_i_power(2 * ((r + 1) // 2))
                            * GaussianRational(HALF), 3 - 2 * r, 0)
        mid = quot(t, num=[("j", 7 - 2 * r, 16), ("j", 30 - 4 * r, 32)],
                   den=[("J", 32)]) \
            * (one - mock_sub("f3", 0, 4, t).scale(GaussianRational(HALF)))
        last = quot(t, num=[("j", 1 + 2 * r, 16), ("j", 18 + 4 * r, 32)],
                    den=[("J", 32)]) \
            * (one - mock_sub("omega3", 2, 2, t).times_monomial(GR_ONE, 2, 0))
        rhs = lead - mid.times_monomial(GR_ONE, 3 - 2 * r, 0) \
            + last.times_monomial(GR_ONE, 1 - r, 0)
    return lhs, rhs


def _register_38_theta_machinery(add):
    # lemma: J3 J4^4/(J2^2 J12) - J1^3/J_{2,4} = 3q J3 J12^3/J6^2
    def uti1(order):
        t = _as_fraction(order) + 4
        lhs = quot(t, num=[("J", 3), ("J", 4, 4)], den=[("J", 2, 2), ("J", 12)]) \
            - quot(t, num=[("J", 1, 3)], den=[("j", 2, 4)])
        rhs = quot(t, num=[("J", 3), ("J", 12, 3)], den=[("J", 6, 2)]) \
            .times_monomial(GaussianRational(3), 1, 0)
        return lhs, rhs

    add("lemma:unusualThetaIdentity1",
        "J3 J4^4/(J2^2 J12) - J1^3/J_{2,4} = 3q J3 J12^3/J6^2",
        "statement", 200, build=uti1)

    def uti1_lhs_split(order):
        t = _as_fraction(order) + 4
        lhs = quot(t, num=[("J", 3), ("J", 4, 4)], den=[("J", 2, 2), ("J", 12)]) \
            - quot(t, num=[("J", 3), ("J", 12, 3)], den=[("J", 6, 2)]) \
            .times_monomial(GR_ONE, 1, 0)
        rhs = quot(t, num=[("J", 1), ("J", 4, 2), ("J", 6, 7)],
                   den=[("J", 2, 3), ("J", 3, 2), ("J", 12, 3)])
        return lhs, rhs

    add("eq:unusualThetaIdentity1:idLHS",
        "J3 J4^4/(J2^2 J12) - q J3 J12^3/J6^2 = J1 J4^2 J6^7/(J2^3 J3^2 J12^3)",
        "proof-chain", 200, build=uti1_lhs_split)

    def uti1_rhs_split(order):
        t = _as_fraction(order) + 4
        lhs = quot(t, num=[("J", 3), ("J", 12, 3)], den=[("J", 6, 2)]) \
            .times_monomial(GaussianRational(2), 1, 0) \
            + quot(t, num=[("J", 1, 3), ("J", 4)], den=[("J", 2, 2)])
        rhs = quot(t, num=[("J", 1), ("J", 4, 2), ("J", 6, 7)],
                   den=[("J", 2, 3), ("J", 3, 2), ("J", 12, 3)])
        return lhs, rhs

    add("eq:unusualThetaIdentity1:idRHS",
        "2q J3 J12^3/J6^2 + J1^3 J4/J2^2 = J1 J4^2 J6^7/(J2^3 J3^2 J12^3)",
        "proof-chain", 200, build=uti1_rhs_split)

    for r in (0, 1, 2):
        def uti2_minus(order, r=r):
            t = _as_fraction(order) + 6
            lhs = _theta38_A(r, t).times_monomial(GR_ONE, 1 - 2 * r, 0) \
                - _theta38_B(r, t).times_monomial(GR_ONE, -r, 0)
            rhs = (quot(t, num=[("j", 2 + 2 * r, 8)], den=[("J", 8)])
                   * theta(qmono(1 - r), 4, t)) \
                .times_monomial(GaussianRational(-1), -r, 0)
            return lhs, rhs

        add(f"lemma:unusualThetaIdentity2:r={r}:minus",
            "two-modulus theta difference collapsed to a single quotient",
            "statement", 200, build=uti2_minus)

        def uti2_plus(order, r=r):
            t = _as_fraction(order) + 6
            lhs = _theta38_A(r, t).times_monomial(GR_ONE, 1 - 2 * r, 0) \
                + _theta38_B(r, t).times_monomial(GR_ONE, -r, 0)
            rhs = (quot(t, num=[("j", 2 + 2 * r, 8)], den=[("J", 8)])
                   * theta(neg_qmono(1 - r), 4, t)) \
                .times_monomial(GR_ONE, -r, 0)
            return lhs, rhs

        add(f"lemma:unusualThetaIdentity2:r={r}:plus",
            "two-modulus theta sum collapsed to a single quotient",
            "statement", 200, build=uti2_plus)

        def master(order, r=r):
            t = _as_fraction(order) + 8
            term1 = (quot(t, num=[("J", 1, 3)], den=[("j", 2, 4), ("j", 6, 12)])
                     * theta(ThetaArg(2 * (r + 1), Fraction(3 * (r + 1))), 12, t)) \
                .times_monomial(unit_i_power(3 - r), HALF - Fraction(3 * r, 2), 0)
            term2 = (_theta38_B(r, t)
                     * quot(t, num=[("J", 3), ("J", 4, 3)],
                            den=[("J", 2, 2), ("J", 12)])) \
                .times_monomial(GR_ONE, -r, 0)
            term3 = (quot(t, num=[("J", 1, 2), ("J", 4), ("J", 12),
                                  ("j", 2 + 2 * r, 8)],
                          den=[("J", 2, 2), ("J", 3), ("J", 8)])
                     * theta(qmono(1 - r), 4, t)) \
                .times_monomial(unit_i_power(1), HALF - r, 0)
            return term1 + term2 + term3, _theta38_case(r, t)

        add(f"prop:masterThetaIdentitypP38m1ell2rPlus1:r={r}",
            "master theta identity behind the first level-2/3 family",
            "statement", 200, build=master)

        def master_alt(order, r=r):
            t = _as_fraction(order) + 8
            term1 = (quot(t, num=[("J", 1, 3)], den=[("j", 2, 4), ("j", 6, 12)])
                     * theta(ThetaArg(2 * (r + 1), Fraction(3 * (r + 1))), 12, t)) \
                .times_monomial(unit_i_power(3 - r), HALF - Fraction(3 * r, 2), 0)
            term2 = (quot(t, num=[("J", 1, 3), ("j", 2 + 2 * r, 8)],
                          den=[("J", 2, 2), ("J", 8)])
                     * theta(neg_qmono(1 - r), 4, t)) \
                .times_monomial(GaussianRational(QUARTER), -r, 0)
            term3 = (quot(t, num=[("J", 1, 2), ("J", 4), ("J", 12),
                                  ("j", 2 + 2 * r, 8)],
                          den=[("J", 2, 2), ("J", 3), ("J", 8)])
                     * theta(qmono(1 - r), 4, t)) \
                .times_monomial(unit_i_power(1), HALF - r, 0)
            return term1 + term2 + term3, _psi38_case(r, t)

        add(f"prop:masterThetaIdentitypP38m1ell2rPlus1Alt:r={r}",
            "master theta identity behind the second level-2/3 family",
            "statement", 200, build=master_alt)

    # the (3,8) odd-spin polar-finite specialization, two-variable
    for r in (0, 1, 2):
        def build_pf23(order, r=r):
            t = _as_fraction(order) + 12
            lhs = character_cleared(3, 8, 2 * r + 1, t, pre_z_power=Fraction(3, 2))
            z3 = ThetaArg(2, Fraction(3), Fraction(2))    # -q^3 z^2
            zm3 = ThetaArg(2, Fraction(-3), Fraction(2))  # -q^-3 z^2
            th_p3 = theta(z3, 12, t)
            th_m3 = theta(zm3, 12, t)
            e1 = string_cleared(3, 8, 1, 2 * r + 1, t)
            e3 = string_cleared(3, 8, 3, 2 * r + 1, t)
            fin = (e1 * th_p3).times_monomial(GR_ONE, 0, 1) + e3 * th_m3

            brk1 = _theta38_A(r, t) * (
                appell_j_product(neg_qmono(5), z3, 12, t)
                - appell_j_product(neg_qmono(1), z3, 12, t)
                .times_monomial(GR_ONE, -1, 0)) \
                .times_monomial(GaussianRational(-1), 1 - 2 * r, 0)
            brk1 = brk1 + _theta38_B(r, t) * (
                appell_j_product(neg_qmono(7), z3, 12, t)
                - appell_j_product(neg_qmono(-1), z3, 12, t)
                .times_monomial(GR_ONE, -2, 0)) \
                .times_monomial(GR_ONE, -r, 0)

            brk2 = _theta38_A(r, t) * (
                appell_j_product(neg_qmono(11), zm3, 12, t)
                .times_monomial(GR_ONE, -1, 0)
                - appell_j_product(neg_qmono(7), zm3, 12, t)) \
                .times_monomial(GaussianRational(-1), 4 - 2 * r, 0)
            brk2 = brk2 + _theta38_B(r, t) * (
                appell_j_product(neg_qmono(13), zm3, 12, t)
                .times_monomial(GR_ONE, -2, 0)
                - appell_j_product(neg_qmono(5), zm3, 12, t)) \
                .times_monomial(GR_ONE, 3 - r, 0)

            rhs = fin - brk1.times_monomial(GR_ONE, 0, 1) - brk2
            return lhs, rhs

        add(f"prop:polarFinite23OddSpin:r={r}",
            "odd-spin polar-finite decomposition specialized to level 2/3",
            "proof-chain", 60, build=build_pf23)

    # the removable-specialization limit evaluations
    def limit_rhs(sign, t):
        return quot(t, num=[("J", 1, 2), ("J", 4), ("J", 6, 2)],
                    den=[("J", 2, 2), ("J", 3)]) \
            .times_monomial(GaussianRational(sign), -1, 0)

    lims = [
        ("lemma:polarFinite23m1AppellVanish:first",
         lambda t: appell_j_product(neg_qmono(11), mono(0), 12, t)
         .times_monomial(GR_ONE, -1, 0)
         - appell_j_product(neg_qmono(7), mono(0), 12, t),
         -1),
        ("lemma:polarFinite23m1AppellVanish:second",
         lambda t: appell_j_product(neg_qmono(13), mono(0), 12, t)
         .times_monomial(GR_ONE, -2, 0)
         - appell_j_product(neg_qmono(5), mono(0), 12, t),
         -1),
        ("lemma:polarFinite23m3AppellVanish:first",
         lambda t: appell_j_product(neg_qmono(5), mono(0), 12, t)
         - appell_j_product(neg_qmono(1), mono(0), 12, t)
         .times_monomial(GR_ONE, -1, 0),
         1),
        ("lemma:polarFinite23m3AppellVanish:second",
         lambda t: appell_j_product(neg_qmono(7), mono(0), 12, t)
         - appell_j_product(neg_qmono(-1), mono(0), 12, t)
         .times_monomial(GR_ONE, -2, 0),
         1),
    ]
    for cid, lhs_fn, sign in lims:
        def build(order, lhs_fn=lhs_fn, sign=sign):
            t = _as_fraction(order) + 4
            return lhs_fn(t), limit_rhs(sign, t)
        add(cid,
            "removable specialization of the level-2/3 Appell combination "
            "as a theta quotient",
            "statement", 150, build=build)

    # the character value at the removable points
    for r in (0, 1, 2):
        def build_wk_pos(order, r=r):
            t = _as_fraction(order) + 8
            lhs = character_value_cleared(3, 8, 2 * r + 1,
                                          mono(Fraction(3, 2), unit=1), t)
            rhs = (qpoch_cubed(t)
                   * theta(ThetaArg(2 * (r + 1), Fraction(3 * (r + 1))), 12, t)
                   * _inv_theta(qmono(2), 4, t)) \
                .times_monomial(unit_i_power(3 - r),
                                HALF - Fraction(3 * r, 2), 0)
            return lhs, rhs

        add(f"prop:weylKac23ell2rzVal:r={r}:pos",
            "level-2/3 character at z = i q^(3/2) as a single theta quotient",
            "proof-chain", 200, build=build_wk_pos)

        def build_wk_neg(order, r=r):
            t = _as_fraction(order) + 8
            lhs = character_value_cleared(3, 8, 2 * r + 1,
                                          mono(Fraction(-3, 2), unit=1), t)
            rhs = (qpoch_cubed(t)
                   * theta(ThetaArg(2 * (r + 1), Fraction(3 * (r + 1))), 12, t)
                   * _inv_theta(qmono(2), 4, t)) \
                .times_monomial(unit_i_power(2 * (r + 1) - r),
                                Fraction(3 * r, 2) - 3 * r - 1, 0)
            return lhs, rhs

        add(f"prop:weylKac23ell2rzVal:r={r}:neg",
            "level-2/3 character at z = i q^(-3/2) as a single theta quotient",
            "proof-chain", 200, build=build_wk_neg)

    # cross-spin master relation for level 2/3
    for r in (0, 1, 2):
        def build_xs_master(order, r=r):
            t = _as_fraction(order) + 8
            lhs = _E(3, 8, 3, 2 * r + 1, t) \
                - _E(3, 8, 1, 2 * (2 - r) + 1, t).times_monomial(GR_ONE, 6 - 3 * r, 0)
            rhs = - quot(t, num=[("j", 10 + 2 * r, 16), ("j", 4 + 4 * r, 32)],
                         den=[("J", 32)]).times_monomial(GR_ONE, 3 - 2 * r, 0) \
                + quot(t, num=[("j", 2 + 2 * r, 16), ("j", 20 + 4 * r, 32)],
                       den=[("J", 32)]).times_monomial(GR_ONE, 1 - r, 0)
            return lhs, rhs

        add(f"eq:crossSpin23master:r={r}",
            "cross-spin master relation between the two odd-spin level-2/3 "
            "quantum numbers",
            "proof-chain", 200, build=build_xs_master)


# -- level 2/5: (p,p') = (5,12) ---------------------------------------------------

def _theta512_case(r, t) -> QZSeries:
    if r in (0, 2, 4):
        return QZSeries.zero(_as_fraction(t))
    shift = -1 if r == 1 else -6
    return quot(t, num=[("j", 1, 2), ("J", 1)]) \
        .times_monomial(GaussianRational(Fraction(-1, 2)), shift, 0)


def _diffs_512_odd(r, t):
    return [d_pair(22 + 10 * r, 8 + 8 * r, 2 - 10 * r, 120, t),
            d_pair(34 + 10 * r, 6 + 6 * r, 14 - 10 * r, 120, t),
            d_pair(46 + 10 * r, 4 + 4 * r, 26 - 10 * r, 120, t),
            d_pair(58 + 10 * r, 2 + 2 * r, 38 - 10 * r, 120, t)]


def _register_level_two_fifths(add):
    half_c = GaussianRational(HALF)
    for r in range(5):
        def build_m1(order, r=r):
            t = _as_fraction(order) + 10
            one = QZSeries.one(t)
            lhs = _E(5, 12, 1, 2 * r + 1, t)
            chi10 = mock_theta("chi10", "eulerian", t).scale(half_c)
            x10 = mock_theta("X10", "eulerian", t).scale(half_c)
            factors = [chi10, x10, one - x10, one - chi10]
            rhs = _five_term(t, lambda tt: _theta512_case(r, tt),
                             _diffs_512_odd(r, t), factors,
                             [6 - 4 * r, 3 - 3 * r, 1 - 2 * r, -r])
            return lhs, rhs

        add(f"thm:pP512m1ell2rPlus1:r={r}",
            "odd-spin level-2/5 string function, quantum number 1, via "
            "chi10(q) and X10(q)",
            "statement", 40, build=build_m1)

        def build_m3(order, r=r):
            t = _as_fraction(order) + 14
            one = QZSeries.one(t)
            lhs = _E(5, 12, 3, 2 * r + 1, t)
            chi10 = mock_theta("chi10", "eulerian", t).scale(half_c)
            x10 = mock_theta("X10", "eulerian", t).scale(half_c)

            def qshift(e):
                return QZSeries.one(t).times_monomial(GR_ONE, e, 0)

            factors = [chi10 + qshift(-1) - one,
                       x10 + qshift(-2) - one,
                       qshift(-3) - x10,
                       qshift(-4) - chi10]
            # shift 11-4r (not the displayed 11-5r): confirmed by deriving
            # the corollary from the cross-spin relation and the m=1 theorem
            rhs = _five_term(t,
                             lambda tt: _theta512_case(4 - r, tt)
                             .times_monomial(GR_ONE, 15 - 5 * r, 0),
                             _diffs_512_odd(r, t), factors,
                             [11 - 4 * r, 8 - 3 * r, 6 - 2 * r, 5 - r])
            return lhs, rhs

        add(f"cor:pP512m3ell2rPlus1:r={r}",
            "odd-spin level-2/5 string function, quantum number 3, by "
            "cross-spin from quantum number 1",
            "statement", 40, build=build_m3)

    for r in range(6):
        def build_m0(order, r=r):
            t = _as_fraction(order) + 10
            lhs = _E(5, 12, 0, 2 * r, t)

            def lead(tt):
                return -(quot(tt, num=[("j", 2 + 4 * r, 12), ("jb", 1 + 2 * r, 8),
                                       ("J", 1)], den=[("J", 4)])) \
                    .times_monomial(GR_ONE, Fraction(r * r - 5 * r + 2, 2), 0)

            diffs = [d_pair(17 + 10 * r, 4 + 8 * r, 7 - 10 * r, 120, t),
                     d_pair(29 + 10 * r, 3 + 6 * r, 19 - 10 * r, 120, t),
                     d_pair(41 + 10 * r, 2 + 4 * r, 31 - 10 * r, 120, t),
                     d_pair(53 + 10 * r, 1 + 2 * r, 43 - 10 * r, 120, t)]
            factors = [mock_sub("phi10", 2, 2, t).times_monomial(GR_ONE, 2, 0),
                       mock_sub("chi10", 0, 4, t),
                       -mock_sub("psi10", 2, 2, t),
                       mock_sub("X10", 0, 4, t)]
            rhs = _five_term(t, lead, diffs, factors,
                             [6 - 4 * r, 3 - 3 * r, 1 - 2 * r, -r])
            return lhs, rhs

        add(f"thm:pP512m0ell2r:r={r}",
            "even-spin level-2/5 string function, quantum number 0, via the "
            "tenth-order functions at q^2 and q^4",
            "statement", 40, build=build_m0)

        def build_m2(order, r=r):
            t = _as_fraction(order) + 14
            one = QZSeries.one(t)
            lhs = _E(5, 12, 2, 2 * r, t)

            def lead(tt):
                return (quot(tt, num=[("j", 2 + 4 * r, 12), ("jb", 5 + 2 * r, 8),
                                      ("J", 1)], den=[("J", 4)])) \
                    .times_monomial(GR_ONE, Fraction(r * r - 3 * r + 6, 2), 0)

            diffs = [d_pair(17 + 10 * r, 4 + 8 * r, 7 - 10 * r, 120, t),
                     d_pair(29 + 10 * r, 3 + 6 * r, 19 - 10 * r, 120, t),
                     d_pair(41 + 10 * r, 2 + 4 * r, 31 - 10 * r, 120, t),
                     d_pair(53 + 10 * r, 1 + 2 * r, 43 - 10 * r, 120, t)]
            factors = [one - mock_sub("X10", 0, 4, t),
                       one + mock_sub("psi10", 2, 2, t),
                       one - mock_sub("chi10", 0, 4, t),
                       one - mock_sub("phi10", 2, 2, t).times_monomial(GR_ONE, 2, 0)]
            rhs = _five_term(t, lead, diffs, factors,
                             [10 - 4 * r, 6 - 3 * r, 3 - 2 * r, 1 - r])
            return lhs, rhs

        add(f"thm:pP512m2ell2r:r={r}",
            "even-spin level-2/5 string function, quantum number 2, via the "
            "tenth-order functions at q^2 and q^4",
            "statement", 40, build=build_m2)


# -- the general polar-finite decompositions -----------------------------------

PF_GRID = ((2, 1), (3, 1), (3, 2), (5, 1), (5, 2))


def _pf_r_range(p, j, odd: bool):
    pp = 2 * p + j
    if odd:
        return range(0, (pp - 2 - 1) // 2 + 1)
    return range(0, (pp - 2) // 2 + 1)


def _parabola_min(b, c) -> Fraction:
    """Exact min over integer n of b*binom(n,2) + c*n."""
    b = _as_fraction(b)
    c = _as_fraction(c)
    v = Fraction(1, 2) - c / b
    fl = v.numerator // v.denominator
    best = None
    for n in (fl, fl + 1):
        val = b * Fraction(n * (n - 1), 2) + c * n
        if best is None or val < best:
            best = val
    return best


def _pf_guard(p, j, r, odd=True):
    """Working margin for the polar-finite builders: the worst negative
    q-shift any summand can carry, bounded exactly from the prefactor
    monomials and the enumeration parabolas."""
    pp = 2 * p + j
    big = 2 * r + 2 if odd else 2 * r + 1
    worst = Fraction(0)
    for s in range(j):
        e_off = p * (j - 2 * s - 1) if odd else p * (j - 2 * s)
        worst = min(worst, _parabola_min(2 * p * j, e_off))
        for m in range(1, p):
            pair_ord = min(
                _parabola_min(2 * p * pp, m * pp + p * big),
                m * pp - m * big + _parabola_min(2 * p * pp, -m * pp + p * big))
            prefix = binom2(p) - p * (r - s) + binom2(m + 1) + m * (r - p)
            if odd:
                br = min(m * (s + 1) - p * (2 * s + 1)
                         + _parabola_min(2 * p * j, p * (j + 2 * s + 1)),
                         -m * s + _parabola_min(2 * p * j, p * (j - 2 * s - 1)))
            else:
                br = min(m * s - 2 * p * s
                         + _parabola_min(2 * p * j, p * (j + 2 * s)),
                         -m * s + _parabola_min(2 * p * j, p * (j - 2 * s)))
            worst = min(worst, prefix + pair_ord + br)
    from math import ceil as _c
    return _c(-worst) + 4


def polar_finite_odd_sides(p, j, r, t):
    """Both sides of the odd-spin polar-finite decomposition, cleared by
    (q)^3 z^(1/2) q^(-offset)."""
    t = _as_fraction(t)
    pp = 2 * p + j
    b = 2 * p * j
    lhs = character_cleared(p, pp, 2 * r + 1, t, pre_z_power=HALF)
    rhs = QZSeries.zero(t)
    for s in range(j):
        prefarg = ThetaArg(2, Fraction(p * (j - 2 * s - 1)), Fraction(j))
        flip = ThetaArg(2, Fraction(p * (j + 2 * s + 1)), Fraction(-j))
        fin = string_cleared(p, pp, 2 * s + 1, 2 * r + 1, t) * theta(prefarg, b, t)
        rhs = rhs + fin.times_monomial(GR_ONE, 0, -s)
        polar = QZSeries.zero(t)
        for m in range(1, p):
            pair = _theta_pair(p, j, m, 2 * r + 2, t)
            bracket = appell_j_product(
                neg_qmono(j * m - p * (2 * s + 1)), flip, b, t) \
                .times_monomial(GR_ONE, m * (s + 1) - p * (2 * s + 1), 0)
            bracket = bracket + appell_j_product(
                neg_qmono(j * m + p * (2 * s + 1)), prefarg, b, t) \
                .times_monomial(GR_ONE, -m * s, 0)
            polar = polar + (pair * bracket).times_monomial(
                unit_i_power(2 * m), binom2(m + 1) + m * (r - p), 0)
        rhs = rhs + polar.times_monomial(
            unit_i_power(2 * p), binom2(p) - p * (r - s), -s)
    return lhs, rhs


def polar_finite_even_sides(p, j, r, t):
    """Both sides of the even-spin polar-finite decomposition, cleared by
    (q)^3 q^(-offset)."""
    t = _as_fraction(t)
    pp = 2 * p + j
    b = 2 * p * j
    lhs = character_cleared(p, pp, 2 * r, t, pre_z_power=0)
    rhs = QZSeries.zero(t)
    for s in range(j):
        prefarg = ThetaArg(2, Fraction(p * (j - 2 * s)), Fraction(j))
        flip = ThetaArg(2, Fraction(p * (j + 2 * s)), Fraction(-j))
        fin = string_cleared(p, pp, 2 * s, 2 * r, t) * theta(prefarg, b, t)
        rhs = rhs + fin.times_monomial(GR_ONE, 0, -s)
        polar = QZSeries.zero(t)
        for m in range(1, p):
            pair = _theta_pair(p, j, m, 2 * r + 1, t)
            bracket = appell_j_product(
                neg_qmono(j * m - 2 * p * s), flip, b, t) \
                .times_monomial(GR_ONE, m * s - 2 * p * s, 0)
            bracket = bracket + appell_j_product(
                neg_qmono(j * m + 2 * p * s), prefarg, b, t) \
                .times_monomial(GR_ONE, -m * s, 0)
            polar = polar + (pair * bracket).times_monomial(
                unit_i_power(2 * m), binom2(m + 1) + m * (r - p), 0)
        rhs = rhs + polar.times_monomial(
            unit_i_power(2 * p), binom2(p) - p * (r - s), -s)
    return lhs, rhs


def _register_polar_finite(add):
    for p, j in PF_GRID:
        order = 40 if p == 5 else 60
        for r in _pf_r_range(p, j, odd=True):
            def build(t, p=p, j=j, r=r):
                return polar_finite_odd_sides(p, j, r, _as_fraction(t) + _pf_guard(p, j, r))
            add(f"thm:generalPolarFiniteOddSpin:p={p},j={j},r={r}",
                "odd-spin polar-finite decomposition of the admissible "
                f"character at (p,p')=({p},{2 * p + j})",
                "statement", order, build=build)
        for r in _pf_r_range(p, j, odd=False):
            def build(t, p=p, j=j, r=r):
                return polar_finite_even_sides(p, j, r, _as_fraction(t) + _pf_guard(p, j, r, odd=False))
            add(f"thm:generalPolarFiniteEvenSpin:p={p},j={j},r={r}",
                "even-spin polar-finite decomposition of the admissible "
                f"character at (p,p')=({p},{2 * p + j})",
                "statement", order, build=build)

    # j = 1 corollary in its own dress
    for p in (2, 3, 5):
        order = 40 if p == 5 else 60
        for r in _pf_r_range(p, 1, odd=True):
            def build(t, p=p, r=r):
                t = _as_fraction(t) + _pf_guard(p, 1, r)
                pp = 2 * p + 1
                lhs = character_cleared(p, pp, 2 * r + 1, t, pre_z_power=HALF)
                minus_z = ThetaArg(2, Fraction(0), Fraction(1))
                flip = ThetaArg(2, Fraction(2 * p), Fraction(-1))
                rhs = string_cleared(p, pp, 1, 2 * r + 1, t) * theta(minus_z, 2 * p, t)
                polar = QZSeries.zero(t)
                for m in range(1, p):
                    pair = _theta_pair(p, 1, m, 2 * r + 2, t)
                    bracket = appell_j_product(neg_qmono(m - p), flip, 2 * p, t) \
                        .times_monomial(GR_ONE, m - p, 0)
                    bracket = bracket + appell_j_product(
                        neg_qmono(m + p), minus_z, 2 * p, t)
                    polar = polar + (pair * bracket).times_monomial(
                        unit_i_power(2 * m), binom2(m + 1) + m * (r - p), 0)
                rhs = rhs + polar.times_monomial(
                    unit_i_power(2 * p), binom2(p) - p * r, 0)
                return lhs, rhs

            add(f"cor:generalPolarFiniteOddSpin1p:p={p},r={r}",
                "odd-spin polar-finite decomposition specialized to j=1",
                "statement", order, build=build)

    # pre-Appell forms of the same decomposition (proof chain)
    for p, j in PF_GRID:
        order = 40 if p == 5 else 60
        for r in (0, min(1, 2 * p + j - 3)):
            def build(t, p=p, j=j, r=r):
                t = _as_fraction(t) + _pf_guard(p, j, r) + 2 * p * j
                pp = 2 * p + j
                lhs = character_cleared(p, pp, 2 * r + 1, t, pre_z_power=HALF)
                rhs = QZSeries.zero(t)
                for s in range(j):
                    arg = ThetaArg(2, Fraction(p * (2 * s + 1 + j)), Fraction(-j))
                    fin = string_cleared(p, pp, 2 * s + 1, 2 * r + 1, t) \
                        * theta(arg, 2 * p * j, t)
                    rhs = rhs + fin.times_monomial(GR_ONE, 0, -s)
                    polar = QZSeries.zero(t)
                    for m in range(1, p):
                        pair = _theta_pair(p, j, m, 2 * r + 2, t)
                        polar = polar + (pair * polar_sum_it(p, j, s, m, t)) \
                            .times_monomial(unit_i_power(2 * m),
                                            binom2(m + 1) + m * (r - p), 0)
                    rhs = rhs + polar.times_monomial(
                        unit_i_power(2 * p), binom2(p + 1) - p * (r + 1 - s), -s)
                return lhs, rhs

            add(f"prop:polarFinitePreAppell:p={p},j={j},r={r}",
                "pre-Appell shape of the odd-spin polar-finite decomposition",
                "proof-chain", order, build=build)

    # the i,t-sum to Appell-pair rewriting
    for p, j in PF_GRID:
        order = 40 if p == 5 else 60
        for s in range(j):
            for m in range(1, p):
                def build(t, p=p, j=j, s=s, m=m):
                    t = _as_fraction(t) + 2 * p * j + 8
                    lhs = polar_sum_it(p, j, s, m, t)
                    arg = ThetaArg(2, Fraction(p * (j - 2 * s - 1)), Fraction(j))
                    rhs = appell_j_product(
                        neg_qmono(j * m + p * (2 * s + 1)), arg, 2 * p * j, t) \
                        .times_monomial(GR_ONE, -m * s, 0) \
                        - appell_j_product(
                            neg_qmono(-j * m + p * (2 * s + 1)), arg, 2 * p * j, t) \
                        .times_monomial(GR_ONE, -m * (j - s - 1), 0)
                    return lhs, rhs

                add(f"prop:initSumOverIT:p={p},j={j},s={s},m={m}",
                    "quasi-period lattice sum rewritten as an Appell pair",
                    "proof-chain", order, build=build)


# -- cross-spin instances --------------------------------------------------------

def _register_cross_spin(add):
    instances = [
        (2, 1, 1, 1), (2, 1, 1, 2),
        (3, 1, 1, 1), (3, 1, 1, 2), (3, 1, 1, 3),
        (3, 2, 1, 1), (3, 2, 2, 1), (3, 2, 2, 2), (3, 2, 2, 3),
        (5, 1, 1, 1), (5, 1, 1, 4),
        (5, 2, 1, 2), (5, 2, 2, 3), (5, 2, 2, 5),
    ]
    for p, j, i, r in instances:
        order = 40 if p == 5 else 200
        add(f"thm:crossSpin:p={p},j={j},i={i},r={r}",
            "cross-spin relation between string functions of complementary "
            "spins",
            "statement", order,
            family=lambda t, p=p, j=j, i=i, r=r: [cross_spin_check(p, j, i, r, t)])

    for r in (0, 1):
        def build(t, r=r):
            t = _as_fraction(t) + 6
            lhs = _E(2, 5, 1, 2 * r + 1, t)
            rhs = -_E(2, 5, 0, 2 * (1 - r), t).times_monomial(GR_ONE, 1 - 2 * r, 0) \
                + theta(qmono(2 * r + 2), 5, t).times_monomial(GR_ONE, -r, 0)
            return lhs, rhs
        add(f"eq:master25crossSpin:r={r}",
            "level-1/2 cross-spin master relation",
            "proof-chain", 200, build=build)


# -- quasi-periodicity path independence -----------------------------------------

def _register_quasi_periodicity(add):
    for p, j in ((2, 1), (3, 2), (5, 2)):
        order = 80
        for s in range(j):
            for t_shift in (1, 2, 3, -1, -2, -3):
                add(f"thm:generalQuasiPeriodicityOddSpin:p={p},j={j},s={s},t={t_shift}",
                    "odd-spin quasi-periodic correction against the direct "
                    "double-sum difference",
                    "statement", order,
                    family=lambda order_, p=p, j=j, s=s, t_shift=t_shift:
                        [quasi_periodicity_check(p, j, s, 0, t_shift, order_)])


# -- structural checks on string functions and characters -------------------------

def _register_string_structure(add):
    for (p, pp, ells) in ((2, 5, (0, 1, 2, 3)), (3, 7, (0, 2, 5)),
                          (3, 8, (1, 3, 6)), (5, 11, (0, 4)), (5, 12, (1, 5))):
        order = 40 if p == 5 else 60
        for ell in ells:
            add(f"prop:WeylKacClearing:p={p},pp={pp},l={ell}",
                "Fourier assembly times the Weyl denominator reproduces the "
                "two-theta numerator",
                "property", order,
                family=lambda t, p=p, pp=pp, ell=ell:
                    [character_clearing_check(p, pp, ell, t)])

    add("eq:WK-formula:theta-ratio",
        "numerator and denominator of the character as lattice theta sums",
        "property", 40,
        family=lambda t: weyl_kac_theta_ratio_check(2, 5, 1, t)
        + weyl_kac_theta_ratio_check(3, 8, 2, t))

    for (p, pp, m, ell) in ((2, 5, 1, 1), (2, 5, 2, 0), (3, 7, 1, 1),
                            (3, 8, 3, 1), (5, 12, 2, 0)):
        def build(t, p=p, pp=pp, m=m, ell=ell):
            tt = _as_fraction(t) + 2
            return (string_cleared(p, pp, m, ell, tt),
                    string_cleared(p, pp, -m, ell, tt))
        add(f"prop:stringQuantumNegation:p={p},pp={pp},m={m},l={ell}",
            "string functions are even in the quantum number",
            "property", 40 if p == 5 else 100, build=build)

    for N in (1, 2):
        add(f"suite:integerLevelSymmetries:N={N}",
            "classical integer-level symmetries, periodicity and the theta "
            "expansion of the character",
            "property", 60 if N == 1 else 40,
            family=lambda t, N=N: integer_level_symmetries(N, t))


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

def _fr_str(x) -> str:
    f = _as_fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def run_check(cid: str, order=None, perturb_q=None) -> CheckReport:
    """Evaluate one catalogue entry.

    ``order``: q-order to verify to (default: the check's registered order).
    ``perturb_q``: if given, adds q^perturb_q to the right-hand side first;
    a correct catalogue entry must then fail (mutation sensitivity).
    """
    cat = register_builtin_catalogue()
    if cid not in cat:
        raise KeyError(f"unknown check id {cid!r}")
    chk = cat[cid]
    order = _as_fraction(order if order is not None else chk.default_order)
    start = time.perf_counter()

    def done(status, diff=None, note=None):
        return CheckReport(
            id=cid, anchor=chk.anchor, status=status,
            verified_order=_fr_str(order),
            first_difference=diff,
            wall_time_ms=(time.perf_counter() - start) * 1000.0,
            note=note)

    if chk.family is not None:
        try:
            results = chk.family(order)
        except Exception as exc:  # evaluation error -> skipped
            return done("skipped", note=f"{type(exc).__name__}: {exc}")
        fails = [r for r in results if r.status == "fail"]
        skips = [r for r in results if r.status == "skipped"]
        if fails:
            r = fails[0]
            return done("fail", note=f"{r.point}: {r.detail}")
        note = None
        if skips:
            note = f"{len(skips)} grid points skipped: {skips[0].detail}"
        return done("pass", note=note)

    work = order
    for _ in range(6):
        try:
            lhs, rhs = chk.build(work)
        except Exception as exc:
            return done("skipped", note=f"{type(exc).__name__}: {exc}")
        if perturb_q is not None:
            rhs = rhs + QZSeries.monomial(GR_ONE, perturb_q, 0, rhs.trunc)
        try:
            ok, diff = lhs.equal_up_to(rhs, order)
        except InsufficientTruncation:
            deficit = order - min(lhs.trunc, rhs.trunc)
            work = work + deficit + 4
            continue
        if ok:
            return done("pass")
        eq, ez, cl, cr = diff
        return done("fail", diff={
            "q_exponent": _fr_str(eq), "z_exponent": _fr_str(ez),
            "lhs": str(cl), "rhs": str(cr)})
    return done("skipped", note="could not reach the requested truncation")


def _run_one(args):
    cid, order = args
    return run_check(cid, order)


def run_suite(filter_glob: str = "*", order=None, threads: int = 1,
              ids=None) -> list[CheckReport]:
    """Run all catalogue checks matching the glob, in catalogue order.

    ``order=None`` uses each check's registered default.  ``threads`` > 1
    distributes checks over worker processes; reports are re-assembled in
    catalogue order, so output is identical for any worker count.
    """
    cat = register_builtin_catalogue()
    selected = [cid for cid in cat if fnmatch.fnmatch(cid, filter_glob)]
    if ids is not None:
        selected = [cid for cid in selected if cid in ids]
    if threads <= 1 or len(selected) <= 1:
        return [run_check(cid, order) for cid in selected]
    jobs = [(cid, order) for cid in selected]
    # consecutive checks share memoized series; chunking keeps a family's
    # work inside one worker's caches
    chunk = max(1, len(jobs) // (threads * 4))
    reports: dict[str, CheckReport] = {}
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for rep in pool.map(_run_one, jobs, chunksize=chunk):
            reports[rep.id] = rep
    return [reports[cid] for cid in selected]


def summarize(reports: list[CheckReport]) -> dict:
    return {
        "pass": sum(1 for r in reports if r.status == "pass"),
        "fail": sum(1 for r in reports if r.status == "fail"),
        "skipped": sum(1 for r in reports if r.status == "skipped"),
    }
