"""Theta functions on signed monomial arguments.

The basic object is j(x; q^b) = (x)_inf (q^b/x)_inf (q^b)_inf, computed
through its bilateral sum sum_n (-1)^n q^(b*binom(n,2)) x^n, which is the
triple-product identity read as a definition.  Arguments are restricted to
signed monomials x = i^k * q^a * z^c: every theta that occurs downstream has
this shape, and it keeps pole bookkeeping decidable.

Shorthands follow the classical notation: J(a, b) = j(q^a; q^b), the
overline variant takes -q^a, and J1 etc. denote J(a, 3a), i.e. the Euler
products (q^a; q^a)_inf.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Callable, Optional

from .series import (
    GR_ONE,
    GaussianRational,
    QSeriesError,
    QZSeries,
    NotAUnit,
    _as_fraction,
    unit_i_power,
)


class DegenerateSpecialization(QSeriesError):
    """A grid point made some cleared factor vanish or a divisor non-unit."""


def binom2(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(frozen=True)
class ThetaArg:
    """A signed monomial i^unit * q^qpow * z^zpow."""

    unit: int
    qpow: Fraction
    zpow: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "unit", self.unit % 4)
        object.__setattr__(self, "qpow", _as_fraction(self.qpow))
        object.__setattr__(self, "zpow", _as_fraction(self.zpow))

    @property
    def coeff(self) -> GaussianRational:
        return unit_i_power(self.unit)

    def is_z_free(self) -> bool:
        return self.zpow == 0

    def __mul__(self, other: "ThetaArg") -> "ThetaArg":
        return ThetaArg(self.unit + other.unit, self.qpow + other.qpow,
                        self.zpow + other.zpow)

    def __pow__(self, n: int) -> "ThetaArg":
        return ThetaArg(self.unit * n, self.qpow * n, self.zpow * n)

    def inverse(self) -> "ThetaArg":
        return ThetaArg(-self.unit, -self.qpow, -self.zpow)

    def __truediv__(self, other: "ThetaArg") -> "ThetaArg":
        return self * other.inverse()

    def substitute_z(self, zval: "ThetaArg") -> "ThetaArg":
        """Fold z -> zval (a z-free signed monomial) into this monomial."""
        if self.zpow == 0:
            return self
        if self.zpow.denominator != 1 and zval.unit % 4 != 0:
            raise QSeriesError(
                f"unit^({self.zpow}) is ambiguous when substituting z")
        k = self.zpow if self.zpow.denominator == 1 else 0
        return ThetaArg(self.unit + zval.unit * int(k),
                        self.qpow + zval.qpow * self.zpow)

    def __str__(self) -> str:
        sign = ["", "i*", "-", "-i*"][self.unit]
        parts = []
        if self.qpow:
            parts.append(f"q^{self.qpow}" if self.qpow != 1 else "q")
        if self.zpow:
            parts.append(f"z^{self.zpow}" if self.zpow != 1 else "z")
        if not parts:
            parts.append("1")
        return sign + "*".join(parts)


def mono(qpow, unit: int = 0, zpow=0) -> ThetaArg:
    return ThetaArg(unit, _as_fraction(qpow), _as_fraction(zpow))


def qmono(qpow) -> ThetaArg:
    return mono(qpow)


def neg_qmono(qpow) -> ThetaArg:
    return mono(qpow, unit=2)


class SeriesCache:
    """Grow-only cache: rebuilds at a higher truncation on demand and serves
    truncations of the stored value.  Safe for concurrent readers with
    single-writer updates."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key, trunc: Fraction, builder: Callable[[Fraction], QZSeries]) -> QZSeries:
        trunc = _as_fraction(trunc)
        with self._lock:
            entry = self._data.get(key)
        if entry is not None and entry.trunc >= trunc:
            return entry.truncate(trunc) if entry.trunc != trunc else entry
        # overshoot to the next multiple of 32 so nearby requests share work
        build_at = Fraction(max(32, 32 * ceil(trunc / 32)))
        value = builder(build_at)
        with self._lock:
            cur = self._data.get(key)
            if cur is None or cur.trunc < value.trunc:
                self._data[key] = value
        return value.truncate(trunc)


_theta_cache = SeriesCache()
_product_cache = SeriesCache()


def jacobi_theta(x: ThetaArg, base_pow, trunc, base_unit: int = 0) -> QZSeries:
    """j(x; u*q^base_pow) as the bilateral triple-product sum.

    ``base_unit`` (a power of i, normally 0) admits the few identities whose
    theta base is -q^b.  Exactly the lattice points with term order below
    ``trunc`` are enumerated; the quadratic exponent guarantees finiteness.
    """
    base_pow = _as_fraction(base_pow)
    trunc = _as_fraction(trunc)
    if base_pow <= 0:
        raise ValueError("theta base exponent must be positive")
    if base_unit % 4 and (base_unit % 4 != 2):
        raise ValueError("theta base sign must be +1 or -1")

    a = x.qpow
    terms: dict = {}

    def emit(n: int) -> bool:
        eq = base_pow * binom2(n) + a * n
        if eq >= trunc:
            return False
        unit = (2 * n + x.unit * n + base_unit * binom2(n)) % 4
        key = (eq, x.zpow * n)
        c = unit_i_power(unit)
        prev = terms.get(key)
        s = prev + c if prev is not None else c
        if s:
            terms[key] = s
        elif prev is not None:
            del terms[key]
        return True

    # integer argmin of the exponent parabola (vertex at 1/2 - a/base_pow);
    # scanning outward from it, the exponent is monotone on each side
    v = Fraction(1, 2) - a / base_pow
    fl = v.numerator // v.denominator
    n0 = fl if (base_pow * binom2(fl) + a * fl) <= (base_pow * binom2(fl + 1) + a * (fl + 1)) else fl + 1
    n = n0
    while emit(n):
        n += 1
    n = n0 - 1
    while emit(n):
        n -= 1
    return QZSeries(terms, trunc)


def _theta_key(x: ThetaArg, base_pow, base_unit):
    return ("j", x.unit, x.qpow, x.zpow, _as_fraction(base_pow), base_unit % 4)


def theta(x: ThetaArg, base_pow, trunc, base_unit: int = 0) -> QZSeries:
    """Cached jacobi_theta."""
    return _theta_cache.get(
        _theta_key(x, base_pow, base_unit), trunc,
        lambda t: jacobi_theta(x, base_pow, t, base_unit=base_unit))


def J(a, b, trunc, overline: bool = False, base_unit: int = 0) -> QZSeries:
    """J_{a,b} = j(q^a; q^b), or j(-q^a; q^b) for the overline variant."""
    x = neg_qmono(a) if overline else qmono(a)
    return theta(x, b, trunc, base_unit=base_unit)


def J1(a, trunc) -> QZSeries:
    """J_a = J_{a,3a}, the Euler product (q^a; q^a)_inf."""
    return J(a, 3 * a, trunc)


def euler_product(scale: int, trunc) -> QZSeries:
    """(q^scale; q^scale)_inf by direct product; the oracle counterpart of
    the pentagonal-number bilateral sum J_{scale,3*scale}."""
    trunc = _as_fraction(trunc)

    def build(t: Fraction) -> QZSeries:
        acc = QZSeries.one(t)
        i = 1
        while scale * i < t:
            acc = acc * QZSeries({(0, 0): GR_ONE, (Fraction(scale * i), 0): -GR_ONE}, t)
            i += 1
        return acc

    return _product_cache.get(("euler", scale), trunc, build)


def qpoch_cubed(trunc) -> QZSeries:
    """(q; q)_inf^3, the clearing factor for string functions."""
    def build(t: Fraction) -> QZSeries:
        j1 = J1(1, t)
        return j1 * j1 * j1

    return _product_cache.get(("qpoch3",), trunc, build)


def eta(trunc) -> QZSeries:
    """Dedekind eta: q^(1/24) * prod(1 - q^n)."""
    trunc = _as_fraction(trunc)
    return euler_product(1, trunc - Fraction(1, 24)).times_monomial(
        GR_ONE, Fraction(1, 24), 0)


def big_theta(n: int, m: int, trunc, scale=1) -> QZSeries:
    """Theta_{n,m}(z; q^scale) = sum over j in Z + n/2m of q^(scale*m*j^2) z^(-m*j)."""
    if m <= 0:
        raise ValueError("modulus m must be positive")
    scale = _as_fraction(scale)
    trunc = _as_fraction(trunc)
    off = Fraction(n, 2 * m)
    terms: dict = {}

    def emit(k: int) -> bool:
        jj = k + off
        eq = scale * m * jj * jj
        if eq >= trunc:
            return False
        key = (eq, -m * jj)
        prev = terms.get(key)
        s = prev + GR_ONE if prev is not None else GR_ONE
        terms[key] = s
        return True

    v = -off
    fl = v.numerator // v.denominator
    k0 = fl if abs(fl + off) <= abs(fl + 1 + off) else fl + 1
    k = k0
    while emit(k):
        k += 1
    k = k0 - 1
    while emit(k):
        k -= 1
    return QZSeries(terms, trunc)


# ---------------------------------------------------------------------------
# catalogue of classical theta transformation identities, checked on a grid
# ---------------------------------------------------------------------------

#: z-free grid monomials +-q^u with exponent denominators <= 4
GRID_X = (
    mono(Fraction(1, 2)),
    mono(Fraction(1, 2), unit=2),
    mono(Fraction(1, 3)),
    mono(Fraction(2, 3), unit=2),
    mono(Fraction(1, 4)),
    mono(Fraction(3, 4), unit=2),
    mono(Fraction(5, 4)),
    mono(1, unit=2),
)

GRID_XY = (
    (mono(Fraction(1, 2)), mono(Fraction(1, 3))),
    (mono(Fraction(1, 2), unit=2), mono(Fraction(3, 4))),
    (mono(Fraction(1, 4)), mono(Fraction(2, 3), unit=2)),
    (mono(1, unit=2), mono(Fraction(1, 2))),
    (mono(Fraction(2, 3)), mono(Fraction(1, 4), unit=2)),
    (mono(Fraction(1, 3), unit=2), mono(Fraction(1, 2), unit=2)),
    (mono(Fraction(3, 4)), mono(Fraction(5, 4))),
    (mono(Fraction(5, 4), unit=2), mono(Fraction(3, 4), unit=2)),
)

GRID_ABCD = (
    # the instance used to collapse the Appell correction for m(-q,q;q^3),
    # with base q^6: (a,b,c,d) = (-i q, -i q^2, i q, i)
    (mono(1, unit=3), mono(2, unit=3), mono(1, unit=1), mono(0, unit=1)),
    (mono(Fraction(1, 2)), mono(1), mono(Fraction(1, 3), unit=2), mono(Fraction(1, 4))),
    (mono(1, unit=2), mono(Fraction(1, 2)), mono(Fraction(3, 4)), mono(Fraction(1, 4), unit=2)),
    (mono(Fraction(3, 4)), mono(Fraction(1, 3)), mono(Fraction(1, 2), unit=2), mono(Fraction(2, 3))),
    (mono(Fraction(5, 4)), mono(Fraction(1, 4)), mono(Fraction(1, 2)), mono(1)),
    (mono(Fraction(2, 3), unit=2), mono(Fraction(1, 2)), mono(Fraction(1, 4)), mono(Fraction(3, 4), unit=2)),
    (mono(Fraction(1, 3)), mono(Fraction(2, 3)), mono(Fraction(1, 4), unit=2), mono(Fraction(1, 2))),
    (mono(Fraction(1, 4), unit=2), mono(Fraction(5, 4), unit=2), mono(Fraction(1, 2)), mono(Fraction(1, 3))),
    (mono(Fraction(1, 2)), mono(Fraction(5, 4)), mono(1), mono(Fraction(3, 4))),
)

#: base used by the Weierstrass-relation grid; integral so that i-unit
#: arguments stay consistent with integral q-powers
_WEIERSTRASS_BASE = 6


@dataclass
class GridCheckResult:
    identity: str
    point: str
    status: str  # "pass" | "fail" | "skipped"
    detail: Optional[str] = None


def _cmp(identity, point, lhs: QZSeries, rhs: QZSeries, order) -> GridCheckResult:
    ok, diff = lhs.equal_up_to(rhs, order)
    if ok:
        return GridCheckResult(identity, point, "pass")
    eq, ez, cl, cr = diff
    return GridCheckResult(identity, point, "fail",
                           f"first difference at q^{eq} z^{ez}: {cl} vs {cr}")


def theta_identity_suite(trunc) -> list[GridCheckResult]:
    """Check the classical transformation identities on the fixed grid:
    q-ellipticity, the flip, base splitting/merging, the two-term splits,
    the quintuple product, the two-by-two product relation, and the
    Weierstrass three-term relation.  Quotient identities are checked with
    denominators cleared, so every grid point is decidable."""
    trunc = _as_fraction(trunc)
    # generators are evaluated with margin so that monomial shifts and
    # negative leading orders never drop a comparison below `trunc`
    w = trunc + 12
    out: list[GridCheckResult] = []

    for x in GRID_X:
        jx = theta(x, 1, w)
        # j(q^n x; q) = (-1)^n q^(-binom(n,2)) x^(-n) j(x; q)
        for n in range(-2, 3):
            lhs = theta(ThetaArg(x.unit, x.qpow + n, x.zpow), 1, w)
            coeff = unit_i_power(2 * n) * (x.coeff ** (-n))
            rhs = jx.times_monomial(coeff, -binom2(n) - n * x.qpow, -n * x.zpow)
            out.append(_cmp("j-elliptic", f"x={x},n={n}", lhs, rhs, trunc))
        # j(x;q) = j(q/x;q) = -x j(1/x;q)
        out.append(_cmp("j-flip", f"x={x}",
                        jx, theta(mono(1) / x, 1, w), trunc))
        out.append(_cmp("j-flip-inverse", f"x={x}", jx,
                        theta(x.inverse(), 1, w)
                        .times_monomial(-x.coeff, x.qpow, x.zpow),
                        trunc))
        # j(x;q) J_n^n = J_1 prod_i j(q^i x; q^n)
        for n in (1, 2, 3):
            lhs = jx * (J1(n, w) ** n)
            rhs = J1(1, w)
            for i in range(n):
                rhs = rhs * theta(ThetaArg(x.unit, x.qpow + i, x.zpow), n, w)
            out.append(_cmp("j-base-split", f"x={x},n={n}", lhs, rhs, trunc))
        # j(x;-q) J_{1,4} = j(x;q^2) j(-q x;q^2)
        lhs = theta(x, 1, w, base_unit=2) * J(1, 4, w)
        rhs = theta(x, 2, w) * theta(ThetaArg(x.unit + 2, x.qpow + 1, x.zpow), 2, w)
        out.append(_cmp("j-negative-base", f"x={x}", lhs, rhs, trunc))
        # j(x^n;q^n) J_1^n = J_n prod_i j(zeta_n^i x; q), zeta_n in <i>
        for n, zeta_step in ((1, 0), (2, 2), (4, 1)):
            lhs = theta(x ** n, n, w) * (J1(1, w) ** n)
            rhs = J1(n, w)
            for i in range(n):
                rhs = rhs * theta(ThetaArg(x.unit + zeta_step * i, x.qpow, x.zpow), 1, w)
            out.append(_cmp("j-root-split", f"x={x},n={n}", lhs, rhs, trunc))
        # quintuple: (j(qx^3;q^3) + x j(q^2 x^3;q^3)) j(x;q) = J_1 j(x^2;q)
        lhs_core = theta(qmono(1) * (x ** 3), 3, w) + \
            theta(qmono(2) * (x ** 3), 3, w).times_monomial(x.coeff, x.qpow, x.zpow)
        out.append(_cmp("quintuple-product", f"x={x}",
                        lhs_core * theta(x, 1, w),
                        J1(1, w) * theta(x ** 2, 1, w), trunc))
        # and against the middle form: lhs_core * J_2 = j(-x;q) j(q x^2;q^2)
        out.append(_cmp("quintuple-product-middle", f"x={x}",
                        lhs_core * J1(2, w),
                        theta(ThetaArg(x.unit + 2, x.qpow, x.zpow), 1, w)
                        * theta(qmono(1) * (x ** 2), 2, w), trunc))

    # two-term split j(z;q) = sum_k (-1)^k q^binom(k,2) z^k
    #                          j((-1)^(m+1) q^(binom(m,2)+mk) z^m; q^(m^2))
    for m in (2, 3):
        for label, zarg in [("symbolic-z", mono(0, zpow=1))] + \
                [(f"z={x}", x) for x in GRID_X]:
            lhs = theta(zarg, 1, w)
            rhs = QZSeries.zero(w)
            for k in range(m):
                inner = ThetaArg(zarg.unit * m + 2 * (m + 1),
                                 binom2(m) + m * k + m * zarg.qpow,
                                 m * zarg.zpow)
                piece = theta(inner, m * m, w).times_monomial(
                    unit_i_power(2 * k) * (zarg.coeff ** k),
                    binom2(k) + k * zarg.qpow, k * zarg.zpow)
                rhs = rhs + piece.truncate(w)
            out.append(_cmp(f"j-split-m{m}", label, lhs, rhs, trunc))

    # j(x;q) j(y;q) = j(-xy;q^2) j(-q y/x;q^2) - x j(-qxy;q^2) j(-y/x;q^2)
    minus = ThetaArg(2, Fraction(0))
    for x, y in GRID_XY:
        lhs = theta(x, 1, w) * theta(y, 1, w)
        t1 = theta(minus * x * y, 2, w) * theta(minus * qmono(1) * (y / x), 2, w)
        t2 = theta(minus * qmono(1) * x * y, 2, w) * theta(minus * (y / x), 2, w)
        rhs = t1 - t2.times_monomial(x.coeff, x.qpow, x.zpow)
        out.append(_cmp("two-by-two-product", f"x={x},y={y}", lhs, rhs, trunc))

    # Weierstrass three-term relation at base q^_WEIERSTRASS_BASE
    b0 = _WEIERSTRASS_BASE
    for a, b, c, d in GRID_ABCD:
        def jj(*args):
            acc = QZSeries.one(w)
            for arg in args:
                acc = acc * theta(arg, b0, w)
            return acc

        lhs = jj(a * c, a / c, b * d, b / d)
        bc = b / c
        rhs = jj(a * d, a / d, b * c, b / c) + \
            jj(a * b, a / b, c * d, c / d).times_monomial(bc.coeff, bc.qpow, bc.zpow)
        out.append(_cmp("weierstrass-three-term", f"(a,b,c,d)=({a},{b},{c},{d})",
                        lhs, rhs, trunc))

    return out


#: the product rearrangements used throughout: (name, lhs builder, rhs builder)
def product_rearrangements(trunc) -> list[GridCheckResult]:
    """The standard eta-quotient forms of small twisted theta values."""
    trunc = _as_fraction(trunc)
    J_ = lambda a, b: J(a, b, trunc)
    Jb = lambda a, b: J(a, b, trunc, overline=True)
    E = lambda a: J1(a, trunc)
    inv = lambda s: s.invert_unit()
    two = GaussianRational(2)
    cases = [
        ("Jbar01=2J2^2/J1", lambda: Jb(0, 1), lambda: (E(2) * E(2) * inv(E(1))).scale(two)),
        ("Jbar01=2Jbar14", lambda: Jb(0, 1), lambda: Jb(1, 4).scale(two)),
        ("Jbar12=J2^5/(J1^2J4^2)", lambda: Jb(1, 2),
         lambda: E(2) ** 5 * inv(E(1) ** 2) * inv(E(4) ** 2)),
        ("J12=J1^2/J2", lambda: J_(1, 2), lambda: E(1) ** 2 * inv(E(2))),
        ("Jbar13=J2J3^2/(J1J6)", lambda: Jb(1, 3),
         lambda: E(2) * E(3) ** 2 * inv(E(1) * E(6))),
        ("J14=J1J4/J2", lambda: J_(1, 4), lambda: E(1) * E(4) * inv(E(2))),
        ("J16=J1J6^2/(J2J3)", lambda: J_(1, 6), lambda: E(1) * E(6) ** 2 * inv(E(2) * E(3))),
        ("Jbar16=J2^2J3J12/(J1J4J6)", lambda: Jb(1, 6),
         lambda: E(2) ** 2 * E(3) * E(12) * inv(E(1) * E(4) * E(6))),
    ]
    out = []
    for name, lhs, rhs in cases:
        out.append(_cmp("product-rearrangement", name, lhs(), rhs(), trunc))
    return out
