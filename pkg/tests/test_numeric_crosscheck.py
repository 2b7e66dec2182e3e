"""Floating-point cross-checks.

The exact engine is validated against plain complex-arithmetic evaluations
of the defining products and lattice sums at a concrete |q| < 1.  This
route shares no code with the series machinery, so agreement here rules
out a systematically wrong engine whose internal checks are consistent
with each other.
"""

import cmath

from qsv.appell import appell_j_product, mock_theta
from qsv.hecke import string_cleared
from qsv.theta import jacobi_theta, mono, neg_qmono, qmono

Q0 = 0.15
TOL = 1e-9


def poly_eval(series, q):
    total = 0j
    for eq, ez, c in series.iter_terms():
        assert ez == 0
        total += complex(c.re) * q ** float(eq) + 1j * complex(c.im) * q ** float(eq)
    return total


def num_theta(x, base_q, terms=300):
    """j(x; Q) = (x)_inf (Q/x)_inf (Q)_inf by direct products."""
    out = 1.0 + 0j
    for k in range(terms):
        out *= (1 - x * base_q ** k) * (1 - (base_q / x) * base_q ** k) \
            * (1 - base_q ** (k + 1))
    return out


def num_double_sum(a, b, c, xpow, ysign, ypow, q, radius=40):
    """f_{a,b,c}(q^xpow, ysign*q^ypow; q) with the negative quadrant in
    shifted coordinates so every float exponent stays nonnegative."""
    total = 0j
    for r in range(0, radius):
        for s in range(0, radius):
            e = (a * r * (r - 1) // 2 + b * r * s + c * s * (s - 1) // 2
                 + xpow * r + ypow * s)
            total += (-1) ** (r + s) * (ysign ** s) * q ** e
    for u in range(0, radius):
        for v in range(0, radius):
            e = (a * (u + 2) * (u + 1) // 2 + b * (1 + u) * (1 + v)
                 + c * (v + 2) * (v + 1) // 2 - xpow * (1 + u) - ypow * (1 + v))
            total -= (-1) ** (u + v) * (ysign ** (1 + v)) * q ** e
    return total


def test_theta_series_vs_numeric_product():
    series = jacobi_theta(neg_qmono(7), 16, 60)
    got = poly_eval(series, Q0)
    want = num_theta(-Q0 ** 7, Q0 ** 16)
    assert abs(got - want) < TOL * abs(want)


def test_string_function_vs_numeric_lattice():
    series = string_cleared(3, 8, 1, 1, 60)
    got = poly_eval(series, Q0)
    want = num_double_sum(1, 8, 48, 2, -1, 30, Q0) \
        - num_double_sum(1, 8, 48, 0, -1, 18, Q0)
    assert abs(got - want) < TOL * abs(want)


def test_mock_theta_vs_numeric_sum():
    series = mock_theta("f3", "eulerian", 60)
    got = poly_eval(series, Q0)
    want = 0j
    for n in range(40):
        den = 1.0 + 0j
        for i in range(1, n + 1):
            den *= (1 + Q0 ** i) ** 2
        want += Q0 ** (n * n) / den
    assert abs(got - want) < TOL * abs(want)


def test_appell_j_product_vs_numeric_bilateral():
    series = appell_j_product(neg_qmono(7), mono(0), 12, 60)
    got = poly_eval(series, Q0)
    want = 0j
    for r in range(-14, 15):
        want += (-1) ** r * Q0 ** (12 * r * (r - 1) // 2) \
            / (1 - Q0 ** (12 * (r - 1)) * (-Q0 ** 7))
    assert abs(got - want) < TOL * abs(want)


def test_identity_sides_numerically():
    """One of the level-2/3 statements, both sides as numbers: the engine's
    left side (lattice) against a right side built purely from numeric
    products and the numeric Eulerian sums."""
    r = 0
    lhs = poly_eval(string_cleared(3, 8, 1, 2 * r + 1, 60), Q0)

    def euler(a, terms=400):
        out = 1.0
        for k in range(1, terms):
            out *= (1 - Q0 ** (a * k))
        return out

    def jj(a, b):
        return num_theta(Q0 ** a, Q0 ** b)

    def jjb(a, b):
        return num_theta(-Q0 ** a, Q0 ** b)

    theta_case = jjb(6, 16) * euler(3) * euler(4) ** 2 / (euler(2) * euler(12))
    psi3_at_minus_q = 0j
    for n in range(1, 40):
        den = 1.0
        for i in range(1, n + 1):
            den *= (1 - (-Q0) ** (2 * i - 1))
        psi3_at_minus_q += (-Q0) ** (n * n) / den
    chi3 = 0j
    for n in range(40):
        num = 1.0
        den = 1.0
        for i in range(1, n + 1):
            num *= (1 + Q0 ** i)
            den *= (1 + Q0 ** (3 * i))
        chi3 += Q0 ** (n * n) * num / den
    A = jj(6 - 2 * r, 16) * jj(28 - 4 * r, 32) / euler(32)
    B = jj(2 + 2 * r, 16) * jj(20 + 4 * r, 32) / euler(32)
    rhs = theta_case \
        - Q0 ** (1 - 2 * r) * A * (-psi3_at_minus_q) \
        + Q0 ** (-r) * B * (1 - chi3)
    assert abs(lhs - rhs) < TOL * abs(rhs)
