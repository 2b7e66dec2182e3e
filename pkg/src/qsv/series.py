"""Exact scalars and sparse truncated bivariate Laurent series.

Everything downstream computes in the ring of Laurent series in ``q`` and
``z`` with rational exponents and coefficients in Q(i).  A series carries a
truncation order ``trunc``: all terms with q-exponent below ``trunc`` are
present and exact, terms at or above it are discarded.  No floating point
ever enters; coefficients are Gaussian rationals stored in lowest terms and
exponents are exact rationals.

Internally exponents are kept on a common integer grid (one denominator for
q, one for z) so that the hot paths (hashing, convolution) run on plain
ints.  The integer scaling is an implementation detail; the public surface
speaks ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, Optional


class QSeriesError(Exception):
    """Base class for errors raised by the series engine."""


class NotAUnit(QSeriesError):
    """Inversion was requested for a series whose lowest q-slice is not a
    single monomial."""


class IllDefinedRootOfUnityPower(QSeriesError):
    """A sign substitution hit a fractional exponent where the root of unity
    has no well-defined power."""


class InsufficientTruncation(QSeriesError):
    """A comparison or operation needs more terms than the operands carry."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class GaussianRational:
    """An exact element a + b*i of Q(i).

    Stored as integer numerators over one positive common denominator,
    normalized so gcd(a, b, d) == 1.  Instances are immutable.
    """

    __slots__ = ("an", "bn", "d")

    def __init__(self, re=0, im=0):
        re = _as_fraction(re)
        im = _as_fraction(im)
        d = lcm(re.denominator, im.denominator)
        self.an = re.numerator * (d // re.denominator)
        self.bn = im.numerator * (d // im.denominator)
        self.d = d

    @classmethod
    def _raw(cls, an: int, bn: int, d: int) -> "GaussianRational":
        self = object.__new__(cls)
        if d < 0:
            an, bn, d = -an, -bn, -d
        g = gcd(gcd(an, bn), d)
        if g > 1:
            an //= g
            bn //= g
            d //= g
        self.an = an
        self.bn = bn
        self.d = d
        return self

    @property
    def re(self) -> Fraction:
        return Fraction(self.an, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.bn, self.d)

    def __bool__(self) -> bool:
        return self.an != 0 or self.bn != 0

    def is_one(self) -> bool:
        return self.an == self.d and self.bn == 0

    def is_rational_integer(self) -> bool:
        return self.bn == 0 and self.d == 1

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational._raw(
            self.an * other.d + other.an * self.d,
            self.bn * other.d + other.bn * self.d,
            self.d * other.d,
        )

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational._raw(
            self.an * other.d - other.an * self.d,
            self.bn * other.d - other.bn * self.d,
            self.d * other.d,
        )

    def __neg__(self) -> "GaussianRational":
        return GaussianRational._raw(-self.an, -self.bn, self.d)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational._raw(
            self.an * other.an - self.bn * other.bn,
            self.an * other.bn + self.bn * other.an,
            self.d * other.d,
        )

    def inverse(self) -> "GaussianRational":
        n = self.an * self.an + self.bn * self.bn
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational._raw(self.d * self.an, -self.d * self.bn, n)

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        return self * other.inverse()

    def __pow__(self, n: int) -> "GaussianRational":
        if n < 0:
            return self.inverse() ** (-n)
        result = GR_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.an == other.an and self.bn == other.bn and self.d == other.d

    def __hash__(self) -> int:
        return hash((self.an, self.bn, self.d))

    def __str__(self) -> str:
        def rat(num: int) -> str:
            g = gcd(num, self.d)
            num, den = num // g, self.d // g
            return str(num) if den == 1 else f"{num}/{den}"

        if self.bn == 0:
            return rat(self.an)
        if self.bn > 0:
            im_abs, sign = self.bn, "+"
        else:
            im_abs, sign = -self.bn, "-"
        if im_abs == self.d:
            im_part = "i"
        else:
            im_part = rat(im_abs) + "i"
        if self.an == 0:
            return im_part if sign == "+" else "-" + im_part
        return rat(self.an) + sign + im_part

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)
GR_MINUS_ONE = GaussianRational(-1)

#: i**k for k = 0..3; the only units that appear as signs of monomials.
I_POWERS = (GR_ONE, GR_I, GR_MINUS_ONE, GaussianRational(0, -1))


def unit_i_power(k: int) -> GaussianRational:
    return I_POWERS[k % 4]


class QZSeries:
    """Sparse truncated Laurent series in q and z over Q(i).

    Invariants: no stored coefficient is zero, every stored q-exponent lies
    below ``trunc``, the q-support is bounded below, and each q-slice has
    finitely many z-terms (guaranteed by construction of all generators).
    Instances are immutable; all operations return fresh series.
    """

    __slots__ = ("_t", "_dq", "_dz", "trunc")

    def __init__(self, terms, trunc, _dq: Optional[int] = None, _dz: Optional[int] = None):
        trunc = _as_fraction(trunc)
        if _dq is not None:
            # terms already on the (dq, dz) integer grid
            self._t = terms
            self._dq = _dq
            self._dz = _dz if _dz is not None else 1
            self.trunc = trunc
            return
        dq = trunc.denominator
        dz = 1
        items = []
        for (eq, ez), c in terms.items():
            eq = _as_fraction(eq)
            ez = _as_fraction(ez)
            items.append((eq, ez, c))
            dq = lcm(dq, eq.denominator)
            dz = lcm(dz, ez.denominator)
        t = {}
        for eq, ez, c in items:
            if not c:
                continue
            if eq >= trunc:
                continue
            key = (eq.numerator * (dq // eq.denominator), ez.numerator * (dz // ez.denominator))
            prev = t.get(key)
            c = prev + c if prev is not None else c
            if c:
                t[key] = c
            elif prev is not None:
                del t[key]
        self._t = t
        self._dq = dq
        self._dz = dz
        self.trunc = trunc

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, trunc) -> "QZSeries":
        return cls({}, trunc, _dq=1, _dz=1)

    @classmethod
    def one(cls, trunc) -> "QZSeries":
        return cls.monomial(GR_ONE, 0, 0, trunc)

    @classmethod
    def monomial(cls, coeff: GaussianRational, qpow, zpow, trunc) -> "QZSeries":
        return cls({(_as_fraction(qpow), _as_fraction(zpow)): coeff}, trunc)

    # -- inspection ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def iter_terms(self) -> Iterator[tuple[Fraction, Fraction, GaussianRational]]:
        """Yield (q_exponent, z_exponent, coefficient) sorted by exponents."""
        dq, dz = self._dq, self._dz
        for (iq, iz) in sorted(self._t):
            yield Fraction(iq, dq), Fraction(iz, dz), self._t[(iq, iz)]

    def coefficient(self, qpow, zpow=0) -> GaussianRational:
        eq = _as_fraction(qpow)
        ez = _as_fraction(zpow)
        if eq >= self.trunc:
            raise InsufficientTruncation(
                f"coefficient of q^{eq} requested but series truncated at {self.trunc}")
        if self._dq % eq.denominator or self._dz % ez.denominator:
            return GR_ZERO
        key = (eq.numerator * (self._dq // eq.denominator),
               ez.numerator * (self._dz // ez.denominator))
        return self._t.get(key, GR_ZERO)

    def q_coefficients(self, limit=None) -> list[tuple[Fraction, GaussianRational]]:
        """Collapse z (which must be absent) and list (q_exponent, coeff)."""
        out = []
        for eq, ez, c in self.iter_terms():
            if ez:
                raise QSeriesError("series has z-dependence")
            if limit is None or eq < limit:
                out.append((eq, c))
        return out

    def min_q_order(self) -> Optional[Fraction]:
        """Smallest stored q-exponent, or None for the zero series."""
        if not self._t:
            return None
        return Fraction(min(iq for iq, _ in self._t), self._dq)

    def is_z_free(self) -> bool:
        return all(iz == 0 for _, iz in self._t)

    # -- helpers ------------------------------------------------------

    def _iq_trunc(self, dq: int) -> Fraction:
        # threshold on the dq grid; compare iq < trunc*dq exactly
        return self.trunc * dq

    def _rescaled(self, dq: int, dz: int) -> dict:
        fq = dq // self._dq
        fz = dz // self._dz
        if fq == 1 and fz == 1:
            return self._t
        return {(iq * fq, iz * fz): c for (iq, iz), c in self._t.items()}

    def _effective_order(self) -> Fraction:
        """Lower bound on the q-order of the exact series this truncation
        represents: the first stored exponent, or trunc when empty."""
        m = self.min_q_order()
        return self.trunc if m is None else m

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "QZSeries") -> "QZSeries":
        if not isinstance(other, QZSeries):
            return NotImplemented
        trunc = min(self.trunc, other.trunc)
        dq = lcm(self._dq, other._dq)
        dz = lcm(self._dz, other._dz)
        a = self._rescaled(dq, dz)
        b = other._rescaled(dq, dz)
        if len(a) < len(b):
            a, b = b, a
        t = dict(a)
        for key, c in b.items():
            prev = t.get(key)
            s = prev + c if prev is not None else c
            if s:
                t[key] = s
            elif prev is not None:
                del t[key]
        out = QZSeries(t, trunc, _dq=dq, _dz=dz)
        return out._clip()

    def __neg__(self) -> "QZSeries":
        t = {k: -c for k, c in self._t.items()}
        return QZSeries(t, self.trunc, _dq=self._dq, _dz=self._dz)

    def __sub__(self, other: "QZSeries") -> "QZSeries":
        return self + (-other)

    def _clip(self) -> "QZSeries":
        lim = self.trunc * self._dq
        if all(iq < lim for iq, _ in self._t):
            return self
        t = {k: c for k, c in self._t.items() if k[0] < lim}
        return QZSeries(t, self.trunc, _dq=self._dq, _dz=self._dz)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return self.scale(other)
        if not isinstance(other, QZSeries):
            return NotImplemented
        # A truncated product is complete below min(Ta + ord(b), Tb + ord(a)).
        trunc = min(self.trunc + other._effective_order(),
                    other.trunc + self._effective_order())
        if not self._t or not other._t:
            return QZSeries.zero(trunc)
        dq = lcm(self._dq, other._dq)
        dz = lcm(self._dz, other._dz)
        a = self._rescaled(dq, dz)
        b = other._rescaled(dq, dz)
        if len(a) > len(b):
            a, b = b, a
        lim = trunc * dq  # Fraction; int keys compare fine against it
        b_sorted = sorted(b.items())
        t: dict = {}
        get = t.get
        for (aq, az), ac in a.items():
            for (bq, bz), bc in b_sorted:
                cq = aq + bq
                if cq >= lim:
                    break
                key = (cq, az + bz)
                prod = ac * bc
                prev = get(key)
                s = prev + prod if prev is not None else prod
                if s:
                    t[key] = s
                elif prev is not None:
                    del t[key]
        return QZSeries(t, trunc, _dq=dq, _dz=dz)

    __rmul__ = __mul__

    def scale(self, c: GaussianRational) -> "QZSeries":
        if not c:
            return QZSeries.zero(self.trunc)
        t = {k: v * c for k, v in self._t.items()}
        return QZSeries(t, self.trunc, _dq=self._dq, _dz=self._dz)

    def times_monomial(self, coeff: GaussianRational, qpow, zpow) -> "QZSeries":
        """Multiply by coeff * q^qpow * z^zpow; truncation shifts by qpow."""
        qpow = _as_fraction(qpow)
        zpow = _as_fraction(zpow)
        if not coeff:
            return QZSeries.zero(self.trunc + qpow)
        dq = lcm(self._dq, qpow.denominator)
        dz = lcm(self._dz, zpow.denominator)
        sq = qpow.numerator * (dq // qpow.denominator)
        sz = zpow.numerator * (dz // zpow.denominator)
        fq = dq // self._dq
        fz = dz // self._dz
        t = {(iq * fq + sq, iz * fz + sz): c * coeff for (iq, iz), c in self._t.items()}
        return QZSeries(t, self.trunc + qpow, _dq=dq, _dz=dz)

    def __pow__(self, n: int) -> "QZSeries":
        if n < 0:
            return self.invert_unit() ** (-n)
        result = QZSeries.one(self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def truncate(self, new_trunc) -> "QZSeries":
        new_trunc = _as_fraction(new_trunc)
        if new_trunc > self.trunc:
            raise InsufficientTruncation(
                f"cannot extend truncation {self.trunc} to {new_trunc}")
        lim = new_trunc * self._dq
        t = {k: c for k, c in self._t.items() if k[0] < lim}
        return QZSeries(t, new_trunc, _dq=self._dq, _dz=self._dz)

    # -- inversion ----------------------------------------------------

    def leading_monomial(self):
        """The unique minimal-q term (coeff, qpow, zpow); NotAUnit if the
        lowest q-slice holds more than one z-term or the series is zero."""
        if not self._t:
            raise NotAUnit("zero series has no leading monomial")
        min_iq = min(iq for iq, _ in self._t)
        slice_keys = [k for k in self._t if k[0] == min_iq]
        if len(slice_keys) != 1:
            raise NotAUnit(
                f"lowest q-slice (exponent {Fraction(min_iq, self._dq)}) has "
                f"{len(slice_keys)} z-terms")
        key = slice_keys[0]
        return self._t[key], Fraction(key[0], self._dq), Fraction(key[1], self._dz)

    def invert_unit(self) -> "QZSeries":
        """Inverse of a series c*q^a*z^b*(1 + h) with ord_q(h) > 0.

        The result is complete below trunc - 2a; Newton iteration doubles
        the verified order each round.
        """
        c, a, b = self.leading_monomial()
        rel_trunc = self.trunc - a
        if rel_trunc <= 0:
            raise InsufficientTruncation(
                "series carries no terms beyond its leading monomial's order")
        # u = 1 + h, exact below rel_trunc
        u = self.times_monomial(c.inverse(), -a, -b)
        one = QZSeries.one(rel_trunc)
        h = u - one
        delta = h._effective_order()
        if delta <= 0:
            raise NotAUnit("leading monomial does not divide the series")
        # Newton step: any representative of u^-1 mod q^known improves to
        # mod q^(2*known), so re-reading a partial inverse at the higher
        # truncation (missing terms as zeros) is a legitimate lift.
        inv = QZSeries.one(delta)
        known = delta  # inv is correct below this relative order
        while known < rel_trunc:
            known = min(2 * known, rel_trunc)
            inv_l = QZSeries(inv._t, known, _dq=inv._dq, _dz=inv._dz)
            residual = one.truncate(known) - u.truncate(known) * inv_l
            inv = inv_l + inv_l * residual
        return inv.times_monomial(c.inverse(), -a, -b)

    # -- substitution -------------------------------------------------

    def substitute_q(self, sign_k: int, power) -> "QZSeries":
        """Apply q -> u * q^power where u = i^sign_k is a fourth root of
        unity and power is a positive rational.

        For u != 1 all q-exponents must be integers, otherwise u^e is
        ambiguous and IllDefinedRootOfUnityPower is raised.
        """
        power = _as_fraction(power)
        if power <= 0:
            raise ValueError("substitution power must be positive")
        sign_k %= 4
        t = {}
        for eq, ez, c in self.iter_terms():
            if sign_k:
                if eq.denominator != 1:
                    raise IllDefinedRootOfUnityPower(
                        f"sign^({eq}) is ambiguous for a nontrivial root of unity")
                c = c * unit_i_power(sign_k * eq.numerator)
            t[(eq * power, ez)] = c
        return QZSeries(t, self.trunc * power)

    # -- comparison ---------------------------------------------------

    def equal_up_to(self, other: "QZSeries", order):
        """Exact equality of all terms with q-exponent below ``order``.

        Returns (True, None) or (False, (eq, ez, self_coeff, other_coeff))
        with the lexicographically smallest disagreeing exponent pair.
        """
        order = _as_fraction(order)
        if order > self.trunc or order > other.trunc:
            raise InsufficientTruncation(
                f"comparison to order {order} exceeds truncation "
                f"min({self.trunc}, {other.trunc})")
        dq = lcm(self._dq, other._dq)
        dz = lcm(self._dz, other._dz)
        a = self._rescaled(dq, dz)
        b = other._rescaled(dq, dz)
        lim = order * dq
        diffs = []
        for key, c in a.items():
            if key[0] < lim and b.get(key) != c:
                diffs.append(key)
        for key, c in b.items():
            if key[0] < lim and key not in a:
                diffs.append(key)
        if not diffs:
            return True, None
        key = min(diffs)
        return False, (Fraction(key[0], dq), Fraction(key[1], dz),
                       a.get(key, GR_ZERO), b.get(key, GR_ZERO))

    def is_zero_up_to(self, order) -> bool:
        ok, _ = self.equal_up_to(QZSeries.zero(self.trunc), order)
        return ok

    def __repr__(self) -> str:
        head = []
        for eq, ez, c in self.iter_terms():
            head.append(f"({c})q^{eq}" + (f"z^{ez}" if ez else ""))
            if len(head) >= 8:
                head.append("...")
                break
        body = " + ".join(head) if head else "0"
        return f"<QZSeries {body} ; trunc={self.trunc}>"
