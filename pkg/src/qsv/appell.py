"""Appell sums and Ramanujan's mock theta functions.

The Appell function is

    m(x, z; q) = (1/j(z;q)) * sum_r (-1)^r q^binom(r,2) z^r / (1 - q^(r-1) x z)

with x a z-free signed monomial and z a signed monomial that may carry a
symbolic z-power.  ``appell_j_product`` evaluates j(z;q)*m(x,z;q) straight
from the bilateral sum; it stays finite even where j(z;q) vanishes, which
is how the limit evaluations at the removable specializations work.

Each geometric denominator 1 - u with u = sigma q^e z^w is expanded in the
direction that raises q-orders: in powers of u for e > 0 and in powers of
1/u for e < 0, matching the |q| < 1 convention under which the identities
are stated.  e = 0 with a z-power has no q-graded expansion and is
rejected; e = 0 without one is a pole when sigma == 1.

Mock theta functions are available in their Eulerian shape (q-hypergeometric
sums with Pochhammer denominators) and, where classical Appell or g3 forms
exist, in that shape too; the acceptance suite pins the two against each
other.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor

from .series import (
    GR_ONE,
    GaussianRational,
    NotAUnit,
    QSeriesError,
    QZSeries,
    _as_fraction,
    unit_i_power,
)
from .theta import (
    DegenerateSpecialization,
    GridCheckResult,
    J,
    J1,
    SeriesCache,
    ThetaArg,
    _cmp,
    binom2,
    mono,
    neg_qmono,
    qmono,
    theta,
)


class PoleAtSpecialization(QSeriesError):
    """Some bilateral denominator vanishes identically or admits no
    q-graded expansion."""


class NonUnitPrefactor(QSeriesError):
    """1/j(z;q) was requested but the theta series is not a unit; use
    appell_j_product instead."""


class UnknownName(QSeriesError):
    pass


class FormUnavailable(QSeriesError):
    pass


def appell_j_product(x: ThetaArg, zarg: ThetaArg, base_pow, trunc,
                     base_unit: int = 0) -> QZSeries:
    """j(z;q^b) * m(x, z; q^b) as a single bilateral sum.

    Valid whenever no contributing denominator vanishes; in particular at
    specializations where j(z;q^b) = 0 and m itself has a pole.
    """
    if not x.is_z_free():
        raise ValueError("Appell x-argument must be z-free")
    base_pow = _as_fraction(base_pow)
    trunc = _as_fraction(trunc)
    if base_pow <= 0:
        raise ValueError("Appell base exponent must be positive")
    if base_unit % 2:
        raise ValueError("Appell base sign must be +1 or -1")

    b = base_pow
    cx, cz, wz = x.qpow, zarg.qpow, zarg.zpow
    ub, ux, uz = base_unit % 4, x.unit, zarg.unit

    def num_q(r: int) -> Fraction:
        return b * binom2(r) + cz * r

    def den_q(r: int) -> Fraction:
        return b * (r - 1) + cx + cz

    def term_min(r: int) -> Fraction:
        e = den_q(r)
        return num_q(r) + (-e if e < 0 else Fraction(0))

    # window of bilateral indices that can contribute below trunc: expand
    # exactly beyond both parabola vertices until the minima clear trunc
    v1 = Fraction(1, 2) - cz / b
    v2 = v1 + 1
    r_lo = floor(min(v1, v2)) - 1
    r_hi = ceil(max(v1, v2)) + 1
    while term_min(r_hi) < trunc:
        r_hi += 1
    while term_min(r_lo) < trunc:
        r_lo -= 1

    terms: dict = {}

    def emit(unit: int, eq: Fraction, ez: Fraction):
        c = unit_i_power(unit)
        key = (eq, ez)
        prev = terms.get(key)
        s = prev + c if prev is not None else c
        if s:
            terms[key] = s
        elif prev is not None:
            del terms[key]

    for r in range(r_lo, r_hi + 1):
        nq = num_q(r)
        if term_min(r) >= trunc:
            continue
        n_unit = 2 * r + ub * binom2(r) + uz * r
        n_ez = wz * r
        e = den_q(r)
        d_unit = (ub * (r - 1) + ux + uz) % 4
        if e == 0:
            if wz != 0:
                raise PoleAtSpecialization(
                    f"denominator 1 - i^{d_unit} z^{wz} at r={r} has no "
                    "q-graded expansion")
            if d_unit == 0:
                raise PoleAtSpecialization(f"denominator vanishes at r={r}")
            inv = (GR_ONE - unit_i_power(d_unit)).inverse()
            c = unit_i_power(n_unit) * inv
            key = (nq, n_ez)
            prev = terms.get(key)
            s = prev + c if prev is not None else c
            if s:
                terms[key] = s
            elif prev is not None:
                del terms[key]
            continue
        if e > 0:
            k = 0
            while nq + e * k < trunc:
                emit(n_unit + d_unit * k, nq + e * k, n_ez + wz * k)
                k += 1
        else:
            # 1/(1-u) = -sum_{k>=1} u^(-k)
            k = 1
            while nq - e * k < trunc:
                emit(n_unit - d_unit * k + 2, nq - e * k, n_ez - wz * k)
                k += 1
    return QZSeries(terms, trunc)


def appell(x: ThetaArg, zarg: ThetaArg, base_pow, trunc,
           base_unit: int = 0) -> QZSeries:
    """The full Appell function m(x, z; q^b), prefactor included."""
    trunc = _as_fraction(trunc)
    try:
        lead = theta(zarg, base_pow, trunc, base_unit=base_unit).leading_monomial()
    except NotAUnit as exc:
        raise NonUnitPrefactor(
            f"j({zarg}; q^{base_pow}) is not a unit: {exc}") from exc
    _, a, _ = lead
    ajp = appell_j_product(x, zarg, base_pow, trunc, base_unit=base_unit)
    rho = ajp.min_q_order()
    rho = trunc if rho is None else rho
    t_ajp = max(trunc, trunc + a)
    t_th = max(trunc, trunc + 2 * a - rho)
    ajp = appell_j_product(x, zarg, base_pow, t_ajp, base_unit=base_unit)
    inv = theta(zarg, base_pow, t_th, base_unit=base_unit).invert_unit()
    return (ajp * inv).truncate(trunc)


def changing_z_psi(x: ThetaArg, z1: ThetaArg, z0: ThetaArg, base_pow, trunc) -> QZSeries:
    """The theta quotient whose value is m(x,z1;q^b) - m(x,z0;q^b)."""
    trunc = _as_fraction(trunc)
    w = trunc + 8
    num = _euler_pow3(base_pow, w)
    num = num * theta(z1 / z0, base_pow, w) * theta(x * z0 * z1, base_pow, w)
    den = QZSeries.one(w)
    for arg in (z0, z1, x * z0, x * z1):
        t = theta(arg, base_pow, w)
        try:
            den = den * t.invert_unit()
        except NotAUnit as exc:
            raise DegenerateSpecialization(
                f"j({arg}; q^{base_pow}) in the denominator is not a unit") from exc
    out = (num * den).times_monomial(z0.coeff, z0.qpow, z0.zpow)
    return out.truncate(trunc)


def _euler_pow3(base_pow, trunc) -> QZSeries:
    j1 = theta(qmono(base_pow), 3 * _as_fraction(base_pow), trunc)
    return j1 * j1 * j1


def msplit_m2(x: ThetaArg, z: ThetaArg, z1: ThetaArg, base_pow, trunc) -> GridCheckResult:
    """Check the two-term splitting of m(x,z;q^b) into base-q^(4b) Appell
    functions plus an explicit theta correction."""
    trunc = _as_fraction(trunc)
    b = _as_fraction(base_pow)
    w = trunc + 8
    point = f"x={x},z={z},z1={z1},b={base_pow}"
    try:
        lhs = appell(x, z, b, w)
        minus = ThetaArg(2, Fraction(0))
        qb = qmono(b)
        rhs = appell(minus * qb * x * x, z1, 4 * b, w)
        second = appell(minus * qb.inverse() * x * x, z1, 4 * b, w)
        xm = qb.inverse() * x
        rhs = rhs - second.times_monomial(xm.coeff, xm.qpow, xm.zpow)

        j2cubed = theta(qmono(2 * b), 6 * b, w) ** 3
        bracket_num1 = theta(minus * qb * x * x * z * z1, 2 * b, w) * \
            theta((z * z) / z1, 4 * b, w)
        bracket_den1 = [(minus * qb * x * x * z1, 2 * b), (z, 2 * b)]
        bracket_num2 = theta(minus * (qb ** 2) * x * x * z * z1, 2 * b, w) * \
            theta((qb ** 2) * (z * z) / z1, 4 * b, w)
        bracket_den2 = [(minus * qb * x * x * z1, 2 * b), (qb * z, 2 * b)]

        def over(num, dens):
            acc = num
            for arg, bb in dens:
                t = theta(arg, bb, w)
                try:
                    acc = acc * t.invert_unit()
                except NotAUnit as exc:
                    raise DegenerateSpecialization(
                        f"j({arg}; q^{bb}) is not a unit") from exc
            return acc

        xz = x * z
        bracket = over(bracket_num1, bracket_den1) - \
            over(bracket_num2, bracket_den2).times_monomial(xz.coeff, xz.qpow, xz.zpow)
        corr = over(j2cubed, [(x * z, b), (z1, 4 * b)]) * bracket
        rhs = rhs + corr.times_monomial(z1.coeff, z1.qpow, z1.zpow)
        return _cmp("msplit-m2", point, lhs, rhs, trunc)
    except DegenerateSpecialization as exc:
        return GridCheckResult("msplit-m2", point, "skipped", str(exc))


# ---------------------------------------------------------------------------
# mock theta functions
# ---------------------------------------------------------------------------

_mock_cache = SeriesCache()

MOCK_NAMES = ("A2", "mu2", "f3", "omega3", "psi3", "chi3",
              "phi10", "psi10", "X10", "chi10", "f0", "f1")

_TENTH_ORDER = ("phi10", "psi10", "X10", "chi10")


def _geom_inv(qexp: Fraction, unit: int, trunc) -> QZSeries:
    """1/(1 - i^unit q^qexp) for qexp > 0, as its geometric series."""
    qexp = _as_fraction(qexp)
    if qexp <= 0:
        raise ValueError("geometric inverse needs a positive q-exponent")
    terms = {}
    k = 0
    while qexp * k < trunc:
        terms[(qexp * k, Fraction(0))] = unit_i_power(unit * k)
        k += 1
    return QZSeries(terms, trunc)


def _binomial_factor(qexp, unit, trunc) -> QZSeries:
    """(1 + i^unit q^qexp) shaped factors for numerator Pochhammers."""
    return QZSeries({(Fraction(0), Fraction(0)): GR_ONE,
                     (_as_fraction(qexp), Fraction(0)): unit_i_power(unit)}, trunc)


def _eulerian(trunc, order_fn, num_steps, den_steps, prefactor_fn, start=0):
    """Generic q-hypergeometric sum: at step n the numerator product gains
    the factors num_steps(n) (as (qexp, unit) with +i^unit q^e), the
    denominator gains den_steps(n) (each inverted), and the term is
    prefactor_fn(n) * num / den; order_fn(n) is the term's minimal q-order,
    increasing in n."""
    trunc = _as_fraction(trunc)
    total = QZSeries.zero(trunc)
    num = QZSeries.one(trunc)
    den_inv = QZSeries.one(trunc)
    n = start
    while _as_fraction(order_fn(n)) < trunc:
        for qe, un in num_steps(n):
            num = num * _binomial_factor(qe, un, trunc)
        for qe, un in den_steps(n):
            den_inv = den_inv * _geom_inv(qe, un, trunc)
        coeff, qshift = prefactor_fn(n)
        total = total + (num * den_inv).times_monomial(coeff, qshift, 0).truncate(trunc)
        n += 1
    return total


def _eulerian_mock(name: str, trunc) -> QZSeries:
    t = _as_fraction(trunc)
    if name == "A2":
        # sum q^(n+1) (-q^2;q^2)_n / (q;q^2)_{n+1}
        return _eulerian(
            t, lambda n: n + 1,
            lambda n: [(2 * n, 0)] if n else [],
            lambda n: [(2 * n + 1, 0)],
            lambda n: (GR_ONE, Fraction(n + 1)))
    if name == "mu2":
        # sum (-1)^n q^(n^2) (q;q^2)_n / (-q^2;q^2)_n^2
        return _eulerian(
            t, lambda n: n * n,
            lambda n: [(2 * n - 1, 2)] if n else [],
            lambda n: [(2 * n, 2), (2 * n, 2)] if n else [],
            lambda n: (unit_i_power(2 * n), Fraction(n * n)))
    if name == "f3":
        # sum q^(n^2) / (-q)_n^2
        return _eulerian(
            t, lambda n: n * n,
            lambda n: [],
            lambda n: [(n, 2), (n, 2)] if n else [],
            lambda n: (GR_ONE, Fraction(n * n)))
    if name == "omega3":
        # sum q^(2n(n+1)) / (q;q^2)_{n+1}^2
        return _eulerian(
            t, lambda n: 2 * n * (n + 1),
            lambda n: [],
            lambda n: [(2 * n + 1, 0), (2 * n + 1, 0)],
            lambda n: (GR_ONE, Fraction(2 * n * (n + 1))))
    if name == "psi3":
        # sum_{n>=1} q^(n^2) / (q;q^2)_n
        return _eulerian(
            t, lambda n: n * n,
            lambda n: [],
            lambda n: [(2 * n - 1, 0)],
            lambda n: (GR_ONE, Fraction(n * n)), start=1)
    if name == "chi3":
        # sum q^(n^2) (-q)_n / (-q^3;q^3)_n
        return _eulerian(
            t, lambda n: n * n,
            lambda n: [(n, 0)] if n else [],
            lambda n: [(3 * n, 2)] if n else [],
            lambda n: (GR_ONE, Fraction(n * n)))
    if name == "phi10":
        # sum q^binom(n+1,2) / (q;q^2)_{n+1}
        return _eulerian(
            t, lambda n: binom2(n + 1),
            lambda n: [],
            lambda n: [(2 * n + 1, 0)],
            lambda n: (GR_ONE, Fraction(binom2(n + 1))))
    if name == "psi10":
        # sum q^binom(n+2,2) / (q;q^2)_{n+1}
        return _eulerian(
            t, lambda n: binom2(n + 2),
            lambda n: [],
            lambda n: [(2 * n + 1, 0)],
            lambda n: (GR_ONE, Fraction(binom2(n + 2))))
    if name == "X10":
        # sum (-1)^n q^(n^2) / (-q;q)_{2n}
        return _eulerian(
            t, lambda n: n * n,
            lambda n: [],
            lambda n: [(2 * n - 1, 2), (2 * n, 2)] if n else [],
            lambda n: (unit_i_power(2 * n), Fraction(n * n)))
    if name == "chi10":
        # sum (-1)^n q^((n+1)^2) / (-q;q)_{2n+1}
        return _eulerian(
            t, lambda n: (n + 1) * (n + 1),
            lambda n: [],
            lambda n: [(2 * n, 2), (2 * n + 1, 2)] if n else [(1, 2)],
            lambda n: (unit_i_power(2 * n), Fraction((n + 1) * (n + 1))))
    if name == "f0":
        # sum q^(n^2) / (-q;q)_n
        return _eulerian(
            t, lambda n: n * n,
            lambda n: [],
            lambda n: [(n, 2)] if n else [],
            lambda n: (GR_ONE, Fraction(n * n)))
    if name == "f1":
        # sum q^(n(n+1)) / (-q;q)_n
        return _eulerian(
            t, lambda n: n * (n + 1),
            lambda n: [],
            lambda n: [(n, 2)] if n else [],
            lambda n: (GR_ONE, Fraction(n * (n + 1))))
    raise UnknownName(name)


def universal_g3(xpow, base_pow, trunc) -> QZSeries:
    """g3(q^a; q^b) = q^-a (-1 + sum_n q^(b n^2) / ((q^a;q^b)_{n+1} (q^(b-a);q^b)_n)).

    Only monomial arguments 0 < a < b are needed (the building block of the
    classical fifth-order decompositions)."""
    a = _as_fraction(xpow)
    b = _as_fraction(base_pow)
    if not (0 < a < b):
        raise ValueError("universal_g3 requires 0 < xpow < base_pow")
    t = _as_fraction(trunc) + a
    core = _eulerian(
        t, lambda n: b * n * n,
        lambda n: [],
        lambda n: [(a + b * n, 0)] + ([(b - a + b * (n - 1), 0)] if n else []),
        lambda n: (GR_ONE, b * n * n))
    core = core - QZSeries.one(t)
    return core.times_monomial(GR_ONE, -a, 0)


def _appell_mock(name: str, trunc) -> QZSeries:
    t = _as_fraction(trunc)
    w = t + 4
    m = appell
    if name == "A2":
        return (-m(qmono(1), qmono(2), 4, t)).truncate(t)
    if name == "mu2":
        two = GaussianRational(2)
        return (m(neg_qmono(1), mono(0, unit=2), 4, t).scale(two)
                + m(neg_qmono(1), qmono(1), 4, t).scale(two))
    if name == "f3":
        two = GaussianRational(2)
        return (m(neg_qmono(1), qmono(1), 3, t).scale(two)
                + m(neg_qmono(1), qmono(2), 3, t).scale(two))
    if name == "omega3":
        out = -m(qmono(1), qmono(2), 6, w) - m(qmono(1), qmono(4), 6, w)
        return out.times_monomial(GR_ONE, -1, 0).truncate(t)
    if name == "psi3":
        first = -m(qmono(1), neg_qmono(1), 3, w, base_unit=2)
        corr = theta(qmono(12), 36, w) ** 3
        corr = corr * theta(qmono(4), 12, w).invert_unit()
        corr = corr * theta(qmono(3), 12, w).invert_unit()
        return (first + corr.times_monomial(GR_ONE, 1, 0).truncate(w)).truncate(t)
    if name == "chi3":
        corr = theta(qmono(3), 6, w) ** 2 * J1(1, w).invert_unit()
        return (m(neg_qmono(1), qmono(1), 3, w) + corr).truncate(t)
    if name in _TENTH_ORDER:
        raise FormUnavailable(f"no Appell-sum form is catalogued for {name}")
    if name == "f0":
        two = GaussianRational(2)
        out = J(5, 10, w) * J(2, 5, w) * J1(1, w).invert_unit()
        return (out - universal_g3(2, 10, w).times_monomial(two, 2, 0)).truncate(t)
    if name == "f1":
        two = GaussianRational(2)
        out = J(5, 10, w) * J(1, 5, w) * J1(1, w).invert_unit()
        return (out - universal_g3(4, 10, w).times_monomial(two, 3, 0)).truncate(t)
    raise UnknownName(name)


def mock_theta(name: str, form: str, trunc) -> QZSeries:
    """A named classical mock theta function.

    ``form`` is "eulerian" for the defining q-hypergeometric sum and
    "appell" for the Appell-sum (or g3) shape; the tenth-order functions
    only carry the Eulerian form here.
    """
    if name not in MOCK_NAMES:
        raise UnknownName(f"unknown mock theta function {name!r}")
    if form not in ("eulerian", "appell"):
        raise ValueError("form must be 'eulerian' or 'appell'")
    if form == "appell" and name in _TENTH_ORDER:
        raise FormUnavailable(f"no Appell-sum form is catalogued for {name}")
    builder = _eulerian_mock if form == "eulerian" else _appell_mock
    return _mock_cache.get((name, form), _as_fraction(trunc),
                           lambda t: builder(name, t))


# ---------------------------------------------------------------------------
# classical third-order identities and the alternate Appell pairs
# ---------------------------------------------------------------------------

def classical_third_order_suite(trunc) -> list[GridCheckResult]:
    t = _as_fraction(trunc)
    w = t + 8
    out = []
    inv = lambda s: s.invert_unit()
    E = lambda a: J1(a, w)
    half = GaussianRational(Fraction(1, 2))
    quarter = GaussianRational(Fraction(1, 4))

    f3 = mock_theta("f3", "eulerian", w)
    psi3_negq = mock_theta("psi3", "eulerian", w).substitute_q(2, 1)
    chi3 = mock_theta("chi3", "eulerian", w)

    # f3(q) + 4 psi3(-q) = J1^3/J2^2
    out.append(_cmp("third-order-f-psi", "",
                    f3 + psi3_negq.scale(GaussianRational(4)),
                    E(1) ** 3 * inv(E(2) ** 2), t))
    # 4 chi3(q) - f3(q) = 3 J3^4/(J1 J6^2)
    out.append(_cmp("third-order-chi-f", "",
                    chi3.scale(GaussianRational(4)) - f3,
                    (E(3) ** 4 * inv(E(1)) * inv(E(6) ** 2)).scale(GaussianRational(3)), t))
    # chi3(q) + psi3(-q) = J3 J4^3/(J2^2 J12)
    theta_quot = E(3) * E(4) ** 3 * inv(E(2) ** 2) * inv(E(12))
    out.append(_cmp("third-order-chi-psi", "", chi3 + psi3_negq, theta_quot, t))

    # m(-q^5,q^6;q^12) - q^-1 m(-q,q^6;q^12), in its three stated values
    pair = appell(neg_qmono(5), qmono(6), 12, w) - \
        appell(neg_qmono(1), qmono(6), 12, w).times_monomial(GR_ONE, -1, 0)
    out.append(_cmp("alt-appell-third-chi", "", pair, chi3 - theta_quot, t))
    out.append(_cmp("alt-appell-third-psi", "", pair, -psi3_negq, t))
    out.append(_cmp("alt-appell-third-f", "", pair,
                    f3.scale(quarter) - (E(1) ** 3 * inv(E(2) ** 2)).scale(quarter), t))

    # -q^-2 m(-q^-1,q^6;q^12) + m(-q^7,q^6;q^12), second members of the pairs
    pair2 = appell(neg_qmono(7), qmono(6), 12, w) - \
        appell(neg_qmono(-1), qmono(6), 12, w).times_monomial(GR_ONE, -2, 0)
    one = QZSeries.one(w)
    out.append(_cmp("alt-appell-third-pair2", "", pair2,
                    one - (chi3 - theta_quot), t))
    out.append(_cmp("alt-appell-third-pair2-f", "", pair2,
                    one - (f3.scale(quarter) - (E(1) ** 3 * inv(E(2) ** 2)).scale(quarter)), t))

    # f3 & omega3 & mu2 & A2: Eulerian versus Appell-sum forms
    for name in ("A2", "mu2", "f3", "omega3", "psi3", "chi3", "f0", "f1"):
        out.append(_cmp("mock-dual-form", name,
                        mock_theta(name, "eulerian", t),
                        mock_theta(name, "appell", t), t))

    # second displayed Eulerian shape of A2 and the second Appell shapes
    a2_alt = _eulerian(
        w, lambda n: (n + 1) * (n + 1),
        lambda n: [(2 * n - 1, 0)] if n else [],
        lambda n: [(2 * n + 1, 0), (2 * n + 1, 0)],
        lambda n: (GR_ONE, Fraction((n + 1) * (n + 1))))
    out.append(_cmp("mock-dual-form", "A2-second-eulerian",
                    mock_theta("A2", "eulerian", t), a2_alt, t))
    f3_alt = appell(neg_qmono(1), qmono(1), 3, w).scale(GaussianRational(4)) + \
        theta(qmono(3), 6, w) ** 2 * inv(E(1))
    out.append(_cmp("mock-dual-form", "f3-single-appell",
                    mock_theta("f3", "eulerian", t), f3_alt, t))
    om_alt = appell(qmono(1), qmono(2), 6, w).times_monomial(GaussianRational(-2), -1, 0) + \
        E(6) ** 3 * inv(E(2)) * inv(theta(qmono(3), 6, w))
    out.append(_cmp("mock-dual-form", "omega3-single-appell",
                    mock_theta("omega3", "eulerian", t), om_alt, t))
    return out
