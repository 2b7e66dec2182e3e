"""Hecke-type double sums and admissible-level string functions.

The double sum

    f_{a,b,c}(x, y; q) = (sum_{r,s>=0} - sum_{r,s<0}) (-1)^(r+s) x^r y^s
                          q^(a binom(r,2) + b r s + c binom(s,2))

is enumerated quadrant by quadrant; on each quadrant the quadratic form is
nonnegative, so exactly the lattice points with term order below the
truncation are visited.

String functions for coprime p' >= 2, p >= 1 at level N = p'/p - 2 come in
three dressings: the integer-coefficient normalization (written curly-C in
the classical notation), the plain C = q^s_lambda * curly-C, and the cleared
form E = (q;q)_inf^3 * curly-C that the identity catalogue mostly works
with.  E is obtained from the difference of two double sums

    E = f(q^(1+(m+l)/2), -q^(p(p'+l+1)); q) - f(q^((m-l)/2), -q^(p(p'-l-1)); q)

with f = f_{1,p',2pp'}.  Characters are assembled as Fourier sums over the
quantum number with an order-certified cut; point values at signed
monomials outside the expansion annulus go through the theta-quotient form
instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd

from .series import (
    GR_ONE,
    GaussianRational,
    QSeriesError,
    QZSeries,
    _as_fraction,
    unit_i_power,
)
from .theta import (
    GridCheckResult,
    SeriesCache,
    ThetaArg,
    _cmp,
    big_theta,
    binom2,
    mono,
    neg_qmono,
    qmono,
    qpoch_cubed,
    theta,
)


class NonTerminatingEnumeration(QSeriesError):
    """The double-sum lower-bound certificate failed to close within the
    configured lattice radius."""


class MRangeBoundFailure(QSeriesError):
    """The quantum-number enumeration for a character could not be closed
    at the requested truncation."""


class IntegralityViolation(QSeriesError):
    """A normalized string function produced a non-integer coefficient."""


#: hard guard on lattice enumeration; generously above anything the
#: catalogue can reach
LATTICE_RADIUS = 20000


@dataclass(frozen=True)
class HeckeParams:
    a: int
    b: int
    c: int
    x: ThetaArg
    y: ThetaArg

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0 or self.c <= 0:
            raise ValueError("double-sum coefficients must be positive")
        if not (self.x.is_z_free() and self.y.is_z_free()):
            raise ValueError("double-sum arguments must be z-free")


def signed_range(lo: int, hi: int) -> tuple[int, range]:
    """sum_{i=lo}^{hi} under the convention that an inverted range flips
    sign: sum_{i=lo}^{hi} = -sum_{i=hi+1}^{lo-1} when hi < lo."""
    if hi >= lo:
        return 1, range(lo, hi + 1)
    return -1, range(hi + 1, lo)


def _ceil_div(num: Fraction) -> int:
    return ceil(num)


def hecke_sum(params: HeckeParams, trunc) -> QZSeries:
    """The indefinite double sum f_{a,b,c}(x, y; q), exact below trunc.

    The common case (signs +-1, integer exponents) accumulates integer
    counts on an integer exponent grid; only the boundary converts to the
    series representation.
    """
    a, b, c = params.a, params.b, params.c
    xq, yq = params.x.qpow, params.y.qpow
    ux, uy = params.x.unit % 4, params.y.unit % 4
    trunc = _as_fraction(trunc)

    fast = (xq.denominator == 1 and yq.denominator == 1
            and ux % 2 == 0 and uy % 2 == 0)
    counts: dict = {}

    if fast:
        xqi, yqi = xq.numerator, yq.numerator
        lim = trunc
        sx = 1 if ux == 0 else -1
        sy = 1 if uy == 0 else -1

        def emit_int(e: int, co: int):
            prev = counts.get(e)
            tot = prev + co if prev is not None else co
            if tot:
                counts[e] = tot
            elif prev is not None:
                del counts[e]
    else:
        def emit_frac(e: Fraction, unit: int):
            coeff = unit_i_power(unit)
            prev = counts.get(e)
            tot = prev + coeff if prev is not None else coeff
            if tot:
                counts[e] = tot
            elif prev is not None:
                del counts[e]

    # quadrant r,s >= 0 with sign +
    def q1(r: int, s: int):
        return a * binom2(r) + b * r * s + c * binom2(s) + xq * r + yq * s

    r_safe = max(0, _ceil_div(-yq / b), _ceil_div(Fraction(1, 2) - xq / a)) + 1
    r = 0
    while True:
        if r > LATTICE_RADIUS:
            raise NonTerminatingEnumeration("positive quadrant did not close")
        s_m = max(0, _ceil_div(-(b * r + yq) / c))
        if q1(r, s_m) >= trunc:
            if r >= r_safe:
                break
            r += 1
            continue
        if fast:
            xqi_r = a * (r * (r - 1) // 2) + xqi * r
            sgn_r = 1 if (r % 2 == 0) else -1
            if sx < 0 and r % 2:
                sgn_r = -sgn_r
            for s0, step in ((s_m, 1), (s_m - 1, -1)):
                s = s0
                while s >= 0:
                    e = xqi_r + b * r * s + c * (s * (s - 1) // 2) + yqi * s
                    if e >= lim:
                        break
                    co = sgn_r if s % 2 == 0 else -sgn_r
                    if sy < 0 and s % 2:
                        co = -co
                    emit_int(e, co)
                    s += step
        else:
            for s0, step in ((s_m, 1), (s_m - 1, -1)):
                s = s0
                while s >= 0 and q1(r, s) < trunc:
                    emit_frac(q1(r, s), 2 * (r + s) + ux * r + uy * s)
                    s += step
        r += 1

    # quadrant r,s < 0 with sign -; substitute r=-1-u, s=-1-v
    def q2(u: int, v: int):
        return (a * binom2(u + 2) + b * (1 + u) * (1 + v) + c * binom2(v + 2)
                - xq * (1 + u) - yq * (1 + v))

    u_safe = max(0, _ceil_div((yq - 2 * c) / b) - 1,
                 _ceil_div((xq - b) / a) - 2) + 1
    u = 0
    while True:
        if u > LATTICE_RADIUS:
            raise NonTerminatingEnumeration("negative quadrant did not close")
        v_m = max(0, _ceil_div((yq - b * (1 + u)) / c) - 2)
        if q2(u, v_m) >= trunc:
            if u >= u_safe:
                break
            u += 1
            continue
        if fast:
            base_u = a * ((u + 2) * (u + 1) // 2) - xqi * (1 + u)
            sgn_u = -1 if (u + 1) % 2 == 0 else 1  # -(-1)^(r+s) with r=-1-u
            if sx < 0 and (1 + u) % 2:
                sgn_u = -sgn_u
            for v0, step in ((v_m, 1), (v_m - 1, -1)):
                v = v0
                while v >= 0:
                    e = base_u + b * (1 + u) * (1 + v) \
                        + c * ((v + 2) * (v + 1) // 2) - yqi * (1 + v)
                    if e >= lim:
                        break
                    co = sgn_u if (1 + v) % 2 == 0 else -sgn_u
                    if sy < 0 and (1 + v) % 2:
                        co = -co
                    emit_int(e, co)
                    v += step
        else:
            for v0, step in ((v_m, 1), (v_m - 1, -1)):
                v = v0
                while v >= 0 and q2(u, v) < trunc:
                    emit_frac(q2(u, v),
                              2 + 2 * (u + v + 2) - ux * (1 + u) - uy * (1 + v))
                    v += step
        u += 1

    if fast:
        terms = {(Fraction(e), Fraction(0)): GaussianRational(co)
                 for e, co in counts.items()}
    else:
        terms = {(e, Fraction(0)): co for e, co in counts.items()}
    return QZSeries(terms, trunc)


# ---------------------------------------------------------------------------
# string functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StringFnId:
    """Selector (p, p', m, ell) for a string function at level p'/p - 2."""

    p: int
    pprime: int
    m: int
    ell: int

    def __post_init__(self):
        if self.p < 1 or self.pprime < 2:
            raise ValueError("need p >= 1 and p' >= 2")
        if gcd(self.p, self.pprime) != 1:
            raise ValueError(f"p={self.p} and p'={self.pprime} are not coprime")
        if self.pprime <= 2 * self.p:
            raise ValueError("level p'/p - 2 must be positive")
        if (self.m - self.ell) % 2:
            raise ValueError("quantum number and spin must have equal parity")
        if not (0 <= self.ell <= self.pprime - 2):
            raise ValueError(f"spin {self.ell} outside 0..{self.pprime - 2}")

    @classmethod
    def from_level(cls, level, m: int, ell: int) -> "StringFnId":
        shifted = _as_fraction(level) + 2
        return cls(shifted.denominator, shifted.numerator, m, ell)

    @property
    def level(self) -> Fraction:
        return Fraction(self.pprime, self.p) - 2

    @property
    def s_lambda(self) -> Fraction:
        return (Fraction(-1, 8)
                + Fraction(self.p * (self.ell + 1) ** 2, 4 * self.pprime)
                - Fraction(self.p * self.m ** 2, 4 * (self.pprime - 2 * self.p)))


_string_cache = SeriesCache()


def string_cleared(p: int, pprime: int, m: int, ell: int, trunc) -> QZSeries:
    """(q;q)_inf^3 times the integer-normalized string function, straight
    from the two Hecke double sums."""
    sid = StringFnId(p, pprime, m, ell)

    def build(t: Fraction) -> QZSeries:
        f1 = hecke_sum(HeckeParams(
            1, pprime, 2 * p * pprime,
            qmono(1 + (m + ell) // 2), neg_qmono(p * (pprime + ell + 1))), t)
        f2 = hecke_sum(HeckeParams(
            1, pprime, 2 * p * pprime,
            qmono((m - ell) // 2), neg_qmono(p * (pprime - ell - 1))), t)
        return f1 - f2

    out = _string_cache.get(("E", p, pprime, m, ell), _as_fraction(trunc), build)
    low = out.min_q_order()
    if low is not None and low < 0:
        raise IntegralityViolation(
            f"cleared string function {sid} has a negative-order term at q^{low}")
    return out


def string_cleared_integer_level(level: int, m: int, ell: int, trunc) -> QZSeries:
    """The compact positive-integer-level form
    (q)^3 curly-C = f_{1,1+N,1}(q^(1+(m+l)/2), q^(1-(m-l)/2); q)."""
    if level < 1:
        raise ValueError("integer level must be positive")
    return hecke_sum(HeckeParams(
        1, 1 + level, 1,
        qmono(1 + (m + ell) // 2), qmono(1 - (m - ell) // 2)), trunc)


def string_coeff(p: int, pprime: int, m: int, ell: int, trunc,
                 normalized: bool = True) -> QZSeries:
    """The string function itself: integer-normalized (curly-C) when
    ``normalized``, else C = q^s_lambda * curly-C.

    The normalized series is audited: any non-integer or non-real
    coefficient raises IntegralityViolation.
    """
    sid = StringFnId(p, pprime, m, ell)
    t = _as_fraction(trunc)
    cleared = string_cleared(p, pprime, m, ell, t)
    curly = (cleared * qpoch_cubed(t).invert_unit()).truncate(t)
    for eq, _, coeff in curly.iter_terms():
        if not coeff.is_rational_integer():
            raise IntegralityViolation(
                f"coefficient of q^{eq} in curly-C for {sid} is {coeff}")
    if normalized:
        return curly
    return curly.times_monomial(GR_ONE, sid.s_lambda, 0)


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

def character_offset(p: int, pprime: int, ell: int) -> Fraction:
    """The global exponent -1/8 + p(l+1)^2/(4p') carried by every Fourier
    mode of the character."""
    return Fraction(-1, 8) + Fraction(p * (ell + 1) ** 2, 4 * pprime)


def character_cleared(p: int, pprime: int, ell: int, trunc,
                      pre_z_power=0) -> QZSeries:
    """sum_m E_m * z^(pre_z_power - m/2), the character times
    (q)_inf^3 * z^pre_z_power * q^(-offset).

    Quantum numbers are enumerated on both sides until a run of modes
    contributes nothing below the truncation (mode orders grow linearly, so
    the run length 2*(p'-2p) closes the sum); a hard cap turns a failure to
    close into MRangeBoundFailure.
    """
    trunc = _as_fraction(trunc)
    pre = _as_fraction(pre_z_power)
    j_width = pprime - 2 * p
    stall_limit = 2 * max(j_width, 1)
    cap = max(512, int(8 * trunc) + 64)

    total = QZSeries.zero(trunc)

    def add_mode(m: int) -> bool:
        piece = string_cleared(p, pprime, m, ell, trunc)
        if not piece:
            return False
        nonlocal total
        total = total + piece.times_monomial(GR_ONE, 0, pre - Fraction(m, 2))
        return True

    for direction in (1, -1):
        m = ell % 2 if direction == 1 else (ell % 2) - 2
        stall = 0
        while stall < stall_limit:
            if abs(m) > cap:
                raise MRangeBoundFailure(
                    f"mode enumeration for character ({p},{pprime},{ell}) "
                    f"did not close by |m| = {cap}")
            stall = 0 if add_mode(m) else stall + 1
            m += 2 * direction
    return total


def character_value_cleared(p: int, pprime: int, ell: int, z0: ThetaArg, trunc) -> QZSeries:
    """(q)^3 q^(-offset) z^(1/2) chi(z;q) at a signed monomial z = z0.

    Evaluated through the theta-quotient form of the character (the Fourier
    assembly need not converge at such specializations):

        (q)^3 z0^((1-l)/2) ( j(-q^(p(l+1)+pp') z0^-p'; q^(2pp'))
            - z0^(l+1) j(-q^(-p(l+1)+pp') z0^-p'; q^(2pp')) ) / j(z0; q)
    """
    t = _as_fraction(trunc)
    if ell % 2 == 0 and z0.unit % 4:
        raise QSeriesError("even spin needs a half z-power shift first")
    w = t + 8
    b = 2 * p * pprime
    zinv_pp = z0 ** (-pprime)
    minus = ThetaArg(2, Fraction(0))
    t1 = theta(minus * qmono(p * (ell + 1) + p * pprime) * zinv_pp, b, w)
    zpow = z0 ** (ell + 1)
    t2 = theta(minus * qmono(-p * (ell + 1) + p * pprime) * zinv_pp, b, w) \
        .times_monomial(zpow.coeff, zpow.qpow, zpow.zpow)
    if (1 - ell) % 2 == 0:
        front = z0 ** ((1 - ell) // 2)
    else:
        # half powers of the monomial: legal only for sign-free z0
        if z0.unit % 4:
            raise QSeriesError("half power of a signed monomial is ambiguous")
        front = ThetaArg(0, z0.qpow * Fraction(1 - ell, 2))
    num = (t1 - t2).times_monomial(front.coeff, front.qpow, front.zpow)
    den_inv = theta(z0, 1, w + 4).invert_unit()
    return (qpoch_cubed(w) * num * den_inv).truncate(t)


def character(p: int, pprime: int, ell: int, trunc) -> QZSeries:
    """The admissible character itself as a two-variable series,
    q^offset / (q)_inf^3 times the cleared Fourier assembly."""
    t = _as_fraction(trunc)
    off = character_offset(p, pprime, ell)
    body = character_cleared(p, pprime, ell, t) * qpoch_cubed(t).invert_unit()
    return body.times_monomial(GR_ONE, off, 0)


def weyl_kac_numerator(p: int, pprime: int, ell: int, trunc) -> QZSeries:
    """The two-theta combination equal to character * z^(-1/2) q^(1/8) j(z;q):

    z^(-(l+1)/2) q^(p(l+1)^2/4p') ( j(-q^(p(l+1)+pp') z^-p'; q^(2pp'))
                                    - z^(l+1) j(-q^(-p(l+1)+pp') z^-p'; q^(2pp')) )
    """
    t = _as_fraction(trunc)
    w = t + 8
    b = 2 * p * pprime
    t1 = theta(ThetaArg(2, Fraction(p * (ell + 1) + p * pprime), Fraction(-pprime)), b, w)
    t2 = theta(ThetaArg(2, Fraction(-p * (ell + 1) + p * pprime), Fraction(-pprime)), b, w)
    out = t1 - t2.times_monomial(GR_ONE, 0, ell + 1)
    return out.times_monomial(
        GR_ONE, Fraction(p * (ell + 1) ** 2, 4 * pprime), Fraction(-(ell + 1), 2)).truncate(t)


def character_clearing_check(p: int, pprime: int, ell: int, trunc) -> GridCheckResult:
    """Fourier assembly times z^(-1/2) q^(1/8) j(z;q) against the cleared
    quotient form: the two routes to the same character."""
    t = _as_fraction(trunc)
    w = t + 8
    off = character_offset(p, pprime, ell)
    lhs = character_cleared(p, pprime, ell, w, pre_z_power=Fraction(-1, 2)) \
        * theta(mono(0, zpow=1), 1, w)
    lhs = lhs.times_monomial(GR_ONE, off + Fraction(1, 8), 0)
    rhs = qpoch_cubed(w) * weyl_kac_numerator(p, pprime, ell, w)
    return _cmp("character-clearing", f"(p,p',l)=({p},{pprime},{ell})", lhs, rhs, t)


def weyl_kac_theta_ratio_check(p: int, pprime: int, ell: int, trunc) -> list[GridCheckResult]:
    """The textbook theta-quotient form of the character against its
    compact rewriting: numerator and denominator separately."""
    t = _as_fraction(trunc)
    w = t + 8
    out = []
    num = big_theta(ell + 1, pprime, w, scale=p) - big_theta(-(ell + 1), pprime, w, scale=p)
    out.append(_cmp("weyl-kac-numerator", f"(p,p',l)=({p},{pprime},{ell})",
                    num, weyl_kac_numerator(p, pprime, ell, w), t))
    den = big_theta(1, 2, w) - big_theta(-1, 2, w)
    out.append(_cmp("weyl-kac-denominator", "",
                    den,
                    theta(mono(0, zpow=1), 1, w)
                    .times_monomial(GR_ONE, Fraction(1, 8), Fraction(-1, 2)), t))
    return out


# ---------------------------------------------------------------------------
# quasi-periodicity, integer-level symmetries, cross-spin
# ---------------------------------------------------------------------------

def _theta_pair(p: int, j: int, m: int, big_exp: int, trunc) -> QZSeries:
    """j(-q^(m(2p+j)+E); q^(2p(2p+j))) - q^(m(2p+j)-m*E') j(-q^(-m(2p+j)+E); ...)
    in the arrangement shared by the quasi-periodic and polar-finite sums;
    E = p*big_exp, E' = big_exp."""
    pp = 2 * p + j
    b = 2 * p * pp
    first = theta(neg_qmono(m * pp + p * big_exp), b, trunc)
    second = theta(neg_qmono(-m * pp + p * big_exp), b, trunc)
    return first - second.times_monomial(
        GR_ONE, m * pp - m * big_exp, 0).truncate(trunc)


def quasi_periodic_shift(p: int, j: int, s: int, r: int, t: int, trunc) -> QZSeries:
    """The explicit theta-valued correction equal to
    (q)^3 C_{2jt+2s+1, 2r+1} - (q)^3 C_{2s+1, 2r+1} at (p, p') = (p, 2p+j)."""
    if not (0 <= s < j):
        raise ValueError("need 0 <= s < j")
    trunc = _as_fraction(trunc)
    pp = 2 * p + j
    base_off = (Fraction(-1, 8) + Fraction(p * (2 * r + 2) ** 2, 4 * pp)
                + binom2(p + 1) - p * (r + 1 - s)
                - Fraction(p * (2 * s + 1) ** 2, 4 * j))

    shifts = []
    sign_i, irange = signed_range(1, t)
    for i in irange:
        e_i = -2 * p * j * binom2(i) - p * (2 * s + 1) * i
        for m in range(1, p):
            e_m = binom2(m + 1) + m * (r - p)
            for e_extra in (m * (j * i + s - j + 1), -m * (j * i + s)):
                shifts.append(base_off + e_i + e_m + e_extra)
    if not shifts:
        return QZSeries.zero(trunc)
    w = trunc - min(min(shifts), 0) + 1

    total = QZSeries.zero(trunc)
    for i in irange:
        e_i = -2 * p * j * binom2(i) - p * (2 * s + 1) * i
        for m in range(1, p):
            e_m = binom2(m + 1) + m * (r - p)
            pair = _theta_pair(p, j, m, 2 * r + 2, w)
            body = pair.times_monomial(GR_ONE, m * (j * i + s - j + 1), 0) - \
                pair.times_monomial(GR_ONE, -m * (j * i + s), 0)
            sgn = unit_i_power(2 * (p + m) + (0 if sign_i == 1 else 2))
            total = total + body.times_monomial(sgn, base_off + e_i + e_m, 0).truncate(trunc)
    return total


def quasi_periodicity_check(p: int, j: int, s: int, r: int, t: int, trunc) -> GridCheckResult:
    """Path independence: the direct Hecke values against the
    quasi-periodic reconstruction."""
    tr = _as_fraction(trunc)
    pp = 2 * p + j
    m_hi, m_lo = 2 * j * t + 2 * s + 1, 2 * s + 1
    ell = 2 * r + 1
    sl_hi = StringFnId(p, pp, m_hi, ell).s_lambda
    sl_lo = StringFnId(p, pp, m_lo, ell).s_lambda
    w = tr + max(0, -min(sl_hi, sl_lo)) + 1
    lhs = string_cleared(p, pp, m_hi, ell, w).times_monomial(GR_ONE, sl_hi, 0) - \
        string_cleared(p, pp, m_lo, ell, w).times_monomial(GR_ONE, sl_lo, 0)
    rhs = quasi_periodic_shift(p, j, s, r, t, tr)
    return _cmp("quasi-periodicity", f"(p,j,s,r,t)=({p},{j},{s},{r},{t})",
                lhs, rhs, tr)


def cross_spin_residual(p: int, j: int, i: int, r: int, trunc) -> QZSeries:
    """The theta-sum side of the cross-spin relation at (p, p') = (p, 2p+j):

    (-1)^p q^(binom(p,2)+p(i+r)) sum_{m=1}^{p-1} (-1)^m q^(binom(m+1,2)-m(i+p+r))
      ( j(-q^(m(2p+j)-2pr); q^(2p(2p+j))) - q^(2r(m-p)) j(-q^(m(2p+j)+2pr); ...) )
    """
    trunc = _as_fraction(trunc)
    pp = 2 * p + j
    b = 2 * p * pp
    shifts = [Fraction(binom2(p) + p * (i + r) + binom2(m + 1) - m * (i + p + r))
              for m in range(1, p)]
    shifts += [sh + 2 * r * (m - p) for sh, m in zip(shifts, range(1, p))]
    w = trunc - min([0] + [min(sh, 0) for sh in shifts]) + 1
    total = QZSeries.zero(trunc)
    for m in range(1, p):
        pair = theta(neg_qmono(m * pp - 2 * p * r), b, w) - \
            theta(neg_qmono(m * pp + 2 * p * r), b, w).times_monomial(
                GR_ONE, 2 * r * (m - p), 0)
        e = binom2(p) + p * (i + r) + binom2(m + 1) - m * (i + p + r)
        total = total + pair.times_monomial(unit_i_power(2 * (p + m)), e, 0).truncate(trunc)
    return total


def cross_spin_check(p: int, j: int, i: int, r: int, trunc) -> GridCheckResult:
    """(q)^3 curly-C_{2i-1,2r-1} - (-1)^(p+1) q^(p(i-r)+binom(p,2))
    (q)^3 curly-C_{2i-1-j,2p-2r+j-1} against the theta residual."""
    tr = _as_fraction(trunc)
    pp = 2 * p + j
    w = tr + max(0, -(p * (i - r) + binom2(p))) + 1
    lhs = string_cleared(p, pp, 2 * i - 1, 2 * r - 1, w)
    sgn = unit_i_power(2 * (p + 1) + 2)  # -(-1)^(p+1)
    lhs = lhs + string_cleared(p, pp, 2 * i - 1 - j, 2 * p - 2 * r + j - 1, w) \
        .times_monomial(sgn, p * (i - r) + binom2(p), 0)
    rhs = cross_spin_residual(p, j, i, r, tr)
    return _cmp("cross-spin", f"(p,j,i,r)=({p},{j},{i},{r})", lhs, rhs, tr)


def integer_level_symmetries(level: int, trunc) -> list[GridCheckResult]:
    """Classical symmetries and the theta-expansion at positive integer
    level: C_{m,l} = C_{-m,l} = C_{m+2N,l}, C_{m,l} = C_{N-m,N-l}, and
    chi_l = sum_{one period} C_{m,l} Theta_{m,N}."""
    N = level
    tr = _as_fraction(trunc)
    out = []
    pprime = N + 2

    def C(m, ell, w):
        sl = StringFnId(1, pprime, m, ell).s_lambda
        return string_cleared(1, pprime, m, ell, w - min(sl, 0) + 1) \
            .times_monomial(GR_ONE, sl, 0)

    w = tr + N + 2
    for ell in range(N + 1):
        for m in range(ell % 2, 2 * N, 2):
            out.append(_cmp("integer-level-symmetry", f"N={N}:C({m},{ell})=C({-m},{ell})",
                            C(m, ell, w), C(-m, ell, w), tr))
            out.append(_cmp("integer-level-symmetry", f"N={N}:C({m},{ell})=C({N - m},{N - ell})",
                            C(m, ell, w), C(N - m, N - ell, w), tr))
            out.append(_cmp("integer-level-periodicity", f"N={N}:C({m},{ell})=C({m + 2 * N},{ell})",
                            C(m, ell, w), C(m + 2 * N, ell, w), tr))
        # theta expansion of the character, both sides scaled by (q)^3
        off = character_offset(1, pprime, ell)
        lhs = character_cleared(1, pprime, ell, w).times_monomial(GR_ONE, off, 0)
        rhs = QZSeries.zero(w)
        for m in range(ell % 2, 2 * N, 2):
            rhs = rhs + C(m, ell, w) * big_theta(m, N, w)
        out.append(_cmp("integer-level-theta-expansion", f"N={N},l={ell}", lhs, rhs, tr))
    return out


def compact_integer_level_check(level: int, m: int, ell: int, trunc) -> GridCheckResult:
    """General admissible Hecke form against the compact integer-level
    double sum."""
    tr = _as_fraction(trunc)
    lhs = string_cleared(1, level + 2, m, ell, tr)
    rhs = string_cleared_integer_level(level, m, ell, tr)
    return _cmp("integer-level-compact-form", f"N={level},(m,l)=({m},{ell})",
                lhs, rhs, tr)
