"""Exact arithmetic for qutrit Clifford+T operators.

Two families of rings are needed:

* ``Z[zeta]`` and ``Z[1/gamma]`` with ``zeta = exp(2 pi i / 9)`` and
  ``gamma = 1 - zeta``. These hold the entries of 3x3 operator matrices.
* ``Z[alpha]`` with dyadic coefficients and ``Z[1/2, 1/alpha]`` with
  ``alpha = sin(2 pi / 9)``. These hold the entries of 8x8 adjoint matrices.

``Z[zeta]`` elements are written in the basis ``1, zeta, ..., zeta^5`` and
reduced with ``zeta^6 = -1 - zeta^3``.  ``Z[alpha]`` elements are written in
``1, alpha, ..., alpha^5`` and reduced with ``64 alpha^6 = 3 - 36 alpha^2 +
96 alpha^4``.

The ``Cyc36Rational`` type is the common field ``Q(eta)``, ``eta = exp(2 pi
i / 36)``, containing ``zeta = eta^4``, ``i = eta^9`` and ``alpha``; it is
used to move real values from the cyclotomic side to the alpha side.

Besides the value classes, the module exposes tuple-level helpers (``zmul``,
``amul`` and friends) used on hot paths by the matrix layers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import NotADenominatorExponent, NotRealError, NotRepresentableError

_SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")

ZERO6 = (0, 0, 0, 0, 0, 0)
ONE6 = (1, 0, 0, 0, 0, 0)


def _trailing_zeros(x):
    return (x & -x).bit_length() - 1


def _v3(x):
    """3-adic valuation of a nonzero integer."""
    v = 0
    while x % 3 == 0:
        x //= 3
        v += 1
    return v


# ---------------------------------------------------------------------------
# Z[zeta] on 6-tuples
# ---------------------------------------------------------------------------


def zadd(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4], a[5] + b[5])


def zsub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3], a[4] - b[4], a[5] - b[5])


def zneg(a):
    return (-a[0], -a[1], -a[2], -a[3], -a[4], -a[5])


def zmul(a, b):
    a0, a1, a2, a3, a4, a5 = a
    b0, b1, b2, b3, b4, b5 = b
    c6 = a1 * b5 + a2 * b4 + a3 * b3 + a4 * b2 + a5 * b1
    c7 = a2 * b5 + a3 * b4 + a4 * b3 + a5 * b2
    c8 = a3 * b5 + a4 * b4 + a5 * b3
    c9 = a4 * b5 + a5 * b4
    c10 = a5 * b5
    # zeta^6 = -1 - zeta^3, zeta^9 = 1
    return (
        a0 * b0 - c6 + c9,
        a0 * b1 + a1 * b0 - c7 + c10,
        a0 * b2 + a1 * b1 + a2 * b0 - c8,
        a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0 - c6,
        a0 * b4 + a1 * b3 + a2 * b2 + a3 * b1 + a4 * b0 - c7,
        a0 * b5 + a1 * b4 + a2 * b3 + a3 * b2 + a4 * b1 + a5 * b0 - c8,
    )


def zconj(a):
    """Complex conjugation, zeta -> zeta^8."""
    a0, a1, a2, a3, a4, a5 = a
    return (a0 - a3, -a2, -a1, -a3, a5 - a2, a4 - a1)


def zmul_zeta(a):
    a0, a1, a2, a3, a4, a5 = a
    return (-a5, a0, a1, a2 - a5, a3, a4)


def zrot(a, m):
    """Multiply by zeta^m."""
    for _ in range(m % 9):
        a = zmul_zeta(a)
    return a


def zmul_gamma(a):
    return zsub(a, zmul_zeta(a))


def z_gamma_divisible(a):
    # Z[zeta]/(gamma) = Z_3 with zeta -> 1
    return (a[0] + a[1] + a[2] + a[3] + a[4] + a[5]) % 3 == 0


def zdiv_gamma(a):
    """Exact division by gamma = 1 - zeta; the caller checks divisibility."""
    a0, a1, a2, a3, a4, a5 = a
    q0, r = divmod(2 * a0 - (a1 + a2 + a3 + a4 + a5), 3)
    if r:
        raise ArithmeticError("not divisible by gamma")
    q1 = a1 + q0
    q2 = a2 + q1
    q5 = a0 - q0
    q3 = a3 + q2 - q5
    q4 = a4 + q3
    return (q0, q1, q2, q3, q4, q5)


def zpow(a, e):
    r = ONE6
    while e:
        if e & 1:
            r = zmul(r, a)
        a = zmul(a, a)
        e >>= 1
    return r


GAMMA6 = (1, -1, 0, 0, 0, 0)


def _format_poly(coeffs, symbol):
    terms = []
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        c = str(c)
        neg = c.startswith("-")
        mag = c[1:] if neg else c
        if j == 0:
            body = mag
        else:
            power = symbol if j == 1 else symbol + str(j).translate(_SUPERSCRIPT)
            body = power if mag == "1" else mag + power
        terms.append(("−" if neg else "+") + body)
    if not terms:
        return "0"
    s = "".join(terms)
    return s[1:] if s[0] == "+" else s


def _paren(s):
    return f"({s})" if ("+" in s[1:] or "−" in s[1:] or "/" in s) else s


class CycInt9:
    """An element of Z[zeta], zeta a primitive 9th root of unity."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=ZERO6):
        if isinstance(coeffs, int):
            coeffs = (coeffs, 0, 0, 0, 0, 0)
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != 6:
            raise ValueError("CycInt9 takes exactly 6 coefficients")
        self.coeffs = coeffs

    @classmethod
    def zeta(cls, power=1):
        return cls(zrot(ONE6, power))

    @classmethod
    def _wrap(cls, t):
        obj = object.__new__(cls)
        obj.coeffs = t
        return obj

    def _coerce(self, other):
        if isinstance(other, CycInt9):
            return other.coeffs
        if isinstance(other, int):
            return (other, 0, 0, 0, 0, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else CycInt9._wrap(zadd(self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else CycInt9._wrap(zsub(self.coeffs, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else CycInt9._wrap(zsub(o, self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else CycInt9._wrap(zmul(self.coeffs, o))

    __rmul__ = __mul__

    def __neg__(self):
        return CycInt9._wrap(zneg(self.coeffs))

    def __pow__(self, e):
        return CycInt9._wrap(zpow(self.coeffs, e))

    def conj(self):
        return CycInt9._wrap(zconj(self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def gamma_divisible(self):
        return z_gamma_divisible(self.coeffs)

    def div_gamma(self):
        return CycInt9._wrap(zdiv_gamma(self.coeffs))

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.coeffs == o

    def __hash__(self):
        return hash(self.coeffs)

    def __complex__(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / 9)
        return sum(c * z**j for j, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"CycInt9({list(self.coeffs)})"

    def __str__(self):
        return _format_poly(self.coeffs, "ζ")


def gamma_reduce(numerator, gexp):
    """Reduced representative of ``numerator / gamma**gexp``."""
    if gexp < 0:
        raise ValueError("gamma exponent must be nonnegative")
    n = numerator.coeffs if isinstance(numerator, CycInt9) else tuple(numerator)
    if not any(n):
        return GammaRational._wrap(ZERO6, 0)
    while gexp and z_gamma_divisible(n):
        n = zdiv_gamma(n)
        gexp -= 1
    return GammaRational._wrap(n, gexp)


class GammaRational:
    """An element ``numerator / gamma**gexp`` of Z[1/gamma], stored reduced."""

    __slots__ = ("_n", "gexp")

    def __init__(self, numerator=0, gexp=0):
        r = gamma_reduce(CycInt9(numerator) if not isinstance(numerator, CycInt9) else numerator, gexp)
        self._n, self.gexp = r._n, r.gexp

    @classmethod
    def _wrap(cls, n, gexp):
        obj = object.__new__(cls)
        obj._n = n
        obj.gexp = gexp
        return obj

    @property
    def numerator(self):
        return CycInt9._wrap(self._n)

    @staticmethod
    def _lift(x):
        if isinstance(x, GammaRational):
            return x
        if isinstance(x, CycInt9):
            return GammaRational._wrap(x.coeffs, 0)
        if isinstance(x, int):
            return GammaRational._wrap((x, 0, 0, 0, 0, 0), 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, ka, b, kb = self._n, self.gexp, o._n, o.gexp
        if ka < kb:
            a, ka, b, kb = b, kb, a, ka
        for _ in range(ka - kb):
            b = zmul_gamma(b)
        return gamma_reduce(zadd(a, b), ka)

    __radd__ = __add__

    def __neg__(self):
        return GammaRational._wrap(zneg(self._n), self.gexp)

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return gamma_reduce(zmul(self._n, o._n), self.gexp + o.gexp)

    __rmul__ = __mul__

    def conj(self):
        # conj(gamma) = -zeta^8 gamma
        n = zconj(self._n)
        k = self.gexp
        n = zrot(n, k)
        if k % 2:
            n = zneg(n)
        return GammaRational._wrap(n, k)

    def is_zero(self):
        return not any(self._n)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._n == o._n and self.gexp == o.gexp

    def __hash__(self):
        return hash((self._n, self.gexp))

    def __complex__(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / 9)
        return complex(self.numerator) / (1 - z) ** self.gexp

    def __repr__(self):
        return f"GammaRational({list(self._n)}, {self.gexp})"

    def __str__(self):
        num = _format_poly(self._n, "ζ")
        if self.gexp == 0:
            return num
        return f"{_paren(num)}/γ" + (str(self.gexp).translate(_SUPERSCRIPT) if self.gexp > 1 else "")


# ---------------------------------------------------------------------------
# Dyadic fractions and Z[alpha]
# ---------------------------------------------------------------------------


class Dyadic:
    """``num / 2**dexp`` with ``dexp == 0`` or ``num`` odd."""

    __slots__ = ("num", "dexp")

    def __init__(self, num=0, dexp=0):
        num = int(num)
        if dexp < 0:
            num <<= -dexp
            dexp = 0
        if num == 0:
            dexp = 0
        elif dexp:
            s = min(_trailing_zeros(num), dexp)
            num >>= s
            dexp -= s
        self.num = num
        self.dexp = dexp

    @classmethod
    def from_fraction(cls, f):
        f = Fraction(f)
        d = f.denominator
        if d & (d - 1):
            raise NotRepresentableError(f"{f} is not a dyadic fraction")
        return cls(f.numerator, d.bit_length() - 1)

    def _lift(self, o):
        if isinstance(o, Dyadic):
            return o
        if isinstance(o, int):
            return Dyadic(o)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        e = max(self.dexp, o.dexp)
        return Dyadic((self.num << (e - self.dexp)) + (o.num << (e - o.dexp)), e)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.num, self.dexp)

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self + (-o)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Dyadic(self.num * o.num, self.dexp + o.dexp)

    __rmul__ = __mul__

    def to_fraction(self):
        return Fraction(self.num, 1 << self.dexp)

    def residue(self):
        # 1/2 = 2 (mod 3), so a/2^b = a * 2^b (mod 3)
        return (self.num * (1 if self.dexp % 2 == 0 else 2)) % 3

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.dexp == o.dexp

    def __hash__(self):
        return hash((self.num, self.dexp))

    def __float__(self):
        return self.num / (1 << self.dexp)

    def __repr__(self):
        return f"Dyadic({self.num}, {self.dexp})"

    def __str__(self):
        return str(self.num) if self.dexp == 0 else f"{self.num}/{1 << self.dexp}"


def _alpha_power_table():
    """Rows of 2^10 * alpha^d for d = 0..10, reduced to degree < 6."""
    rel = {0: Fraction(3, 64), 2: Fraction(-36, 64), 4: Fraction(96, 64)}
    rows = []
    cur = [Fraction(0)] * 6
    cur[0] = Fraction(1)
    for d in range(11):
        rows.append(cur)
        top = cur[5]
        cur = [Fraction(0)] + cur[:5]
        for j, c in rel.items():
            cur[j] += top * c
    out = []
    for row in rows:
        scaled = [c * 1024 for c in row]
        if any(c.denominator != 1 for c in scaled):
            raise AssertionError("alpha reduction table is not integral at scale 2^10")
        out.append(tuple(int(c) for c in scaled))
    return tuple(out)


ALPHA_POW_1024 = _alpha_power_table()
_R6, _R7, _R8, _R9, _R10 = ALPHA_POW_1024[6:11]


def amul(a, b):
    """Product of integer alpha-polynomials, scaled by 2^10 (returns a 6-tuple)."""
    a0, a1, a2, a3, a4, a5 = a
    b0, b1, b2, b3, b4, b5 = b
    c0 = a0 * b0
    c1 = a0 * b1 + a1 * b0
    c2 = a0 * b2 + a1 * b1 + a2 * b0
    c3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
    c4 = a0 * b4 + a1 * b3 + a2 * b2 + a3 * b1 + a4 * b0
    c5 = a0 * b5 + a1 * b4 + a2 * b3 + a3 * b2 + a4 * b1 + a5 * b0
    c6 = a1 * b5 + a2 * b4 + a3 * b3 + a4 * b2 + a5 * b1
    c7 = a2 * b5 + a3 * b4 + a4 * b3 + a5 * b2
    c8 = a3 * b5 + a4 * b4 + a5 * b3
    c9 = a4 * b5 + a5 * b4
    c10 = a5 * b5
    return _reduce_alpha11((c0, c1, c2, c3, c4, c5, c6, c7, c8, c9, c10))


def _reduce_alpha11(c):
    out = [1024 * x for x in c[:6]]
    for d, row in ((6, _R6), (7, _R7), (8, _R8), (9, _R9), (10, _R10)):
        x = c[d]
        if x:
            for j in range(6):
                if row[j]:
                    out[j] += x * row[j]
    return tuple(out)


def adiv_alpha(n):
    """Exact division of an integer alpha-polynomial by alpha (needs 3 | n[0])."""
    q, r = divmod(n[0], 3)
    if r:
        raise ArithmeticError("not divisible by alpha")
    # 3/alpha = 36 alpha - 96 alpha^3 + 64 alpha^5
    return (n[1], n[2] + 36 * q, n[3], n[4] - 96 * q, n[5], 64 * q)


def _norm2(n, b):
    """Strip common powers of two from ``n / 2**b``."""
    if b == 0:
        return n, 0
    g = 0
    for x in n:
        g |= x
    if g == 0:
        return n, 0
    s = min(_trailing_zeros(g), b)
    if s:
        n = tuple(x >> s for x in n)
    return n, b - s


def _align2(a, ba, b, bb):
    if ba > bb:
        s = ba - bb
        return a, tuple(x << s for x in b), ba
    if bb > ba:
        s = bb - ba
        return tuple(x << s for x in a), b, bb
    return a, b, ba


class AlphaPoly:
    """An element of Z[alpha] with dyadic coefficients.

    Stored as integer coefficients over a shared power of two; ``coeffs``
    gives the per-coefficient ``Dyadic`` view.
    """

    __slots__ = ("_n", "_b")

    def __init__(self, coeffs=(0,) * 6):
        fr = [Fraction(c.to_fraction()) if isinstance(c, Dyadic) else Fraction(c) for c in coeffs]
        if len(fr) != 6:
            raise ValueError("AlphaPoly takes exactly 6 coefficients")
        b = 0
        for f in fr:
            d = f.denominator
            if d & (d - 1):
                raise NotRepresentableError(f"{f} is not dyadic")
            b = max(b, d.bit_length() - 1)
        n = tuple(int(f * (1 << b)) for f in fr)
        self._n, self._b = _norm2(n, b)

    @classmethod
    def _wrap(cls, n, b):
        obj = object.__new__(cls)
        obj._n, obj._b = _norm2(n, b)
        return obj

    @property
    def coeffs(self):
        return tuple(Dyadic(x, self._b) for x in self._n)

    def _lift(self, o):
        if isinstance(o, AlphaPoly):
            return o
        if isinstance(o, int):
            return AlphaPoly._wrap((o, 0, 0, 0, 0, 0), 0)
        if isinstance(o, Dyadic):
            return AlphaPoly._wrap((o.num, 0, 0, 0, 0, 0), o.dexp)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b, e = _align2(self._n, self._b, o._n, o._b)
        return AlphaPoly._wrap(zadd(a, b), e)

    __radd__ = __add__

    def __neg__(self):
        return AlphaPoly._wrap(zneg(self._n), self._b)

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlphaPoly._wrap(amul(self._n, o._n), self._b + o._b + 10)

    __rmul__ = __mul__

    def __pow__(self, e):
        r = AlphaPoly._wrap(ONE6, 0)
        x = self
        while e:
            if e & 1:
                r = r * x
            x = x * x
            e >>= 1
        return r

    def is_zero(self):
        return not any(self._n)

    def rho(self):
        return rho(self)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._n == o._n and self._b == o._b

    def __hash__(self):
        return hash((self._n, self._b))

    def __float__(self):
        import math

        a = math.sin(2 * math.pi / 9)
        return sum(x * a**j for j, x in enumerate(self._n)) / (1 << self._b)

    def __repr__(self):
        return f"AlphaPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return _format_poly([c.to_fraction() for c in self.coeffs], "α")


def rho(q):
    """Residue map Z[alpha] -> Z_3, q mod alpha."""
    if isinstance(q, AlphaPoly):
        n0, b = q._n[0], q._b
    elif isinstance(q, Dyadic):
        n0, b = q.num, q.dexp
    elif isinstance(q, int):
        n0, b = q, 0
    else:
        raise TypeError(f"rho is defined on Z[alpha], got {type(q).__name__}")
    return (n0 * (1 if b % 2 == 0 else 2)) % 3


#: alpha^6 / 3 = 1/64 - (3/16) alpha^2 + (1/2) alpha^4, so 1/3 = V_PRIME / alpha^6
V_PRIME = ((1, 0, -12, 0, 32, 0), 6)


def areduce(n, b, k):
    """Reduce ``n / (2**b alpha**k)`` to least denominator exponent.

    Returns the normalized ``(n, b, k)`` triple.
    """
    if not any(n):
        return ZERO6, 0, 0
    while k >= 6 and all(x % 3 == 0 for x in n):
        # 3 = alpha^6 / V'  ->  (3 m) / alpha^k = m / (V' alpha^(k-6))
        n = tuple(x // 3 for x in n)
        n = amul(n, INV_V_PRIME[0])
        b += INV_V_PRIME[1] + 10
        k -= 6
    while k and n[0] % 3 == 0:
        n = adiv_alpha(n)
        k -= 1
    n, b = _norm2(n, b)
    return n, b, k


def _valuation(n, limit):
    """Number of times alpha divides ``n`` (capped at ``limit``)."""
    if not any(n):
        return limit
    v = 0
    while v < limit and n[0] % 3 == 0:
        n = adiv_alpha(n)
        v += 1
    return v


class AlphaRational:
    """An element ``numerator / alpha**aexp`` of Z[1/2, 1/alpha].

    Always stored at the least denominator exponent.
    """

    __slots__ = ("_n", "_b", "aexp")

    def __init__(self, numerator=0, aexp=0):
        if isinstance(numerator, AlphaPoly):
            p = numerator
        elif isinstance(numerator, (int, Dyadic)):
            p = AlphaPoly._wrap(ONE6, 0) * numerator
        elif isinstance(numerator, Fraction):
            p = AlphaPoly([numerator, 0, 0, 0, 0, 0])
        else:
            p = AlphaPoly(numerator)
        if aexp < 0:
            p = p * AlphaPoly._wrap((0, 1, 0, 0, 0, 0), 0) ** (-aexp)
            aexp = 0
        self._n, self._b, self.aexp = areduce(p._n, p._b, aexp)

    @classmethod
    def _wrap(cls, n, b, k):
        obj = object.__new__(cls)
        obj._n, obj._b, obj.aexp = areduce(n, b, k)
        return obj

    @property
    def numerator(self):
        return AlphaPoly._wrap(self._n, self._b)

    def _lift(self, o):
        if isinstance(o, AlphaRational):
            return o
        if isinstance(o, AlphaPoly):
            return AlphaRational._wrap(o._n, o._b, 0)
        if isinstance(o, int):
            return AlphaRational._wrap((o, 0, 0, 0, 0, 0), 0, 0)
        if isinstance(o, Dyadic):
            return AlphaRational._wrap((o.num, 0, 0, 0, 0, 0), o.dexp, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, ka, c, kc = self._n, self.aexp, o._n, o.aexp
        ba, bc = self._b, o._b
        if ka < kc:
            a, ka, ba, c, kc, bc = c, kc, bc, a, ka, ba
        for _ in range(ka - kc):
            c = amul(c, (0, 1, 0, 0, 0, 0))
            bc += 10
        a, c, e = _align2(a, ba, c, bc)
        return AlphaRational._wrap(zadd(a, c), e, ka)

    __radd__ = __add__

    def __neg__(self):
        return AlphaRational._wrap(zneg(self._n), self._b, self.aexp)

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlphaRational._wrap(amul(self._n, o._n), self._b + o._b + 10, self.aexp + o.aexp)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self._n)

    def lde(self):
        return self.aexp

    def rho_k(self, k):
        return rho_k(self, k)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._n == o._n and self._b == o._b and self.aexp == o.aexp

    def __hash__(self):
        return hash((self._n, self._b, self.aexp))

    def __float__(self):
        import math

        return float(self.numerator) / math.sin(2 * math.pi / 9) ** self.aexp

    def __repr__(self):
        return f"AlphaRational({self.numerator!r}, {self.aexp})"

    def __str__(self):
        num = str(self.numerator)
        if self.aexp == 0:
            return num
        return f"{_paren(num)}/α" + (str(self.aexp).translate(_SUPERSCRIPT) if self.aexp > 1 else "")


def rho_k(q, k):
    """k-residue rho(alpha^k q) of an element of Z[1/2, 1/alpha]."""
    if not isinstance(q, AlphaRational):
        q = AlphaRational(q)
    if k < q.aexp:
        raise NotADenominatorExponent(f"{k} is below the least denominator exponent {q.aexp}")
    if k > q.aexp:
        return 0
    return (q._n[0] * (1 if q._b % 2 == 0 else 2)) % 3


def lde(q):
    """Least denominator exponent of an element of Z[1/2, 1/alpha]."""
    if not isinstance(q, AlphaRational):
        q = AlphaRational(q)
    return q.aexp


# ---------------------------------------------------------------------------
# Q(eta), eta a primitive 36th root of unity
# ---------------------------------------------------------------------------


def _eta_powers():
    # eta^12 = eta^6 - 1
    rows = []
    cur = [0] * 12
    cur[0] = 1
    for _ in range(36):
        rows.append(tuple(cur))
        top = cur[11]
        cur = [0] + cur[:11]
        cur[6] += top
        cur[0] -= top
    return tuple(rows)


_ETA_POW = _eta_powers()


class Cyc36Rational:
    """An element of Q(eta) with 12 rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=(0,) * 12):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != 12:
            raise ValueError("Cyc36Rational takes exactly 12 coefficients")
        self.coeffs = coeffs

    @classmethod
    def eta(cls, power=1):
        return cls(_ETA_POW[power % 36])

    @classmethod
    def from_cycint9(cls, x):
        out = [Fraction(0)] * 12
        for j, c in enumerate(x.coeffs if isinstance(x, CycInt9) else x):
            if c:
                for i, e in enumerate(_ETA_POW[4 * j]):
                    if e:
                        out[i] += c * e
        return cls(out)

    @classmethod
    def from_gamma_rational(cls, x):
        # 1/gamma = (3/gamma) / 3 with 3/gamma in Z[zeta]
        num = x._n
        for _ in range(x.gexp):
            num = zmul(num, THREE_OVER_GAMMA)
        v = cls.from_cycint9(num)
        return v * Fraction(1, 3**x.gexp)

    @classmethod
    def from_alpha_rational(cls, x):
        if not isinstance(x, AlphaRational):
            x = AlphaRational(x)
        acc = Cyc36Rational()
        for c in reversed(x.numerator.coeffs):
            acc = acc * ALPHA_36 + Cyc36Rational([c.to_fraction()] + [0] * 11)
        # 1/alpha = (3/alpha) / 3
        for _ in range(x.aexp):
            acc = acc * THREE_OVER_ALPHA_36 * Fraction(1, 3)
        return acc

    def _lift(self, o):
        if isinstance(o, Cyc36Rational):
            return o
        if isinstance(o, (int, Fraction)):
            return Cyc36Rational([o] + [0] * 11)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyc36Rational([a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc36Rational([-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self + (-o)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        prod = [Fraction(0)] * 23
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        for d in range(22, 11, -1):
            t = prod[d]
            if t:
                prod[d - 6] += t
                prod[d - 12] -= t
        return Cyc36Rational(prod[:12])

    __rmul__ = __mul__

    def conj(self):
        out = [Fraction(0)] * 12
        for j, c in enumerate(self.coeffs):
            if c:
                for i, e in enumerate(_ETA_POW[(36 - j) % 36]):
                    if e:
                        out[i] += c * e
        return Cyc36Rational(out)

    def is_real(self):
        return self.conj() == self

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __complex__(self):
        import cmath

        eta = cmath.exp(2j * cmath.pi / 36)
        return sum(float(c) * eta**j for j, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"Cyc36Rational({[str(c) for c in self.coeffs]})"


THREE_OVER_GAMMA = ONE6
for _j in (2, 4, 5, 7, 8):
    THREE_OVER_GAMMA = zmul(THREE_OVER_GAMMA, zsub(ONE6, zrot(ONE6, _j)))
del _j

I_36 = Cyc36Rational.eta(9)
# alpha = (eta^4 - eta^-4) / (2i), and 1/(2i) = eta^27 / 2
ALPHA_36 = (Cyc36Rational.eta(4) - Cyc36Rational.eta(32)) * Cyc36Rational.eta(27) * Fraction(1, 2)
THREE_OVER_ALPHA_36 = ALPHA_36 * 36 - ALPHA_36 * ALPHA_36 * ALPHA_36 * 96 + (
    ALPHA_36 * ALPHA_36 * ALPHA_36 * ALPHA_36 * ALPHA_36 * 64
)


def _solve_fractions(rows, rhs):
    """Solve the square system ``rows @ x = rhs`` over Q."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(rows, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _alpha_basis_inverse():
    """Pick 6 eta-coordinates on which alpha^0..alpha^5 are independent."""
    powers = [Cyc36Rational([1] + [0] * 11)]
    for _ in range(5):
        powers.append(powers[-1] * ALPHA_36)
    cols = [[p.coeffs[i] for p in powers] for i in range(12)]
    chosen = []
    basis = []
    for i, c in enumerate(cols):
        trial = basis + [c]
        if _rank(trial) == len(trial):
            chosen.append(i)
            basis = trial
        if len(chosen) == 6:
            break
    if len(chosen) != 6:
        raise AssertionError("alpha powers do not span a rank-6 subspace")
    return powers, chosen


def _rank(rows):
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


_ALPHA_POWERS_36, _ALPHA_PIVOTS = _alpha_basis_inverse()


def rational_to_alpha(coeffs):
    """AlphaRational equal to ``sum coeffs[j] alpha^j`` for rational coefficients."""
    coeffs = [Fraction(c) for c in coeffs]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    a = _trailing_zeros(den)
    rest = den >> a
    b3 = 0
    while rest % 3 == 0:
        rest //= 3
        b3 += 1
    if rest != 1:
        raise NotRepresentableError(f"denominator {den} has a prime factor other than 2 and 3")
    scale = (1 << a) * 3**b3
    n = tuple(int(c * scale) for c in coeffs)
    b = a
    # 1/3 = V' / alpha^6
    for _ in range(b3):
        n = amul(n, V_PRIME[0])
        b += V_PRIME[1] + 10
    return AlphaRational._wrap(n, b, 6 * b3)


def real_to_alpha(x):
    """Express a real element of Q(eta) in Z[1/2, 1/alpha]."""
    if not isinstance(x, Cyc36Rational):
        raise TypeError("real_to_alpha expects a Cyc36Rational")
    if not x.is_real():
        raise NotRealError("value is not fixed by complex conjugation")
    rows = [[_ALPHA_POWERS_36[j].coeffs[i] for j in range(6)] for i in _ALPHA_PIVOTS]
    sol = _solve_fractions(rows, [x.coeffs[i] for i in _ALPHA_PIVOTS])
    back = Cyc36Rational()
    for j, c in enumerate(sol):
        if c:
            back = back + _ALPHA_POWERS_36[j] * c
    if back != x:
        raise NotRepresentableError("value does not lie in Q(alpha)")
    return rational_to_alpha(sol)


def _as_poly(x, what):
    if x.aexp != 0:
        raise AssertionError(f"{what} is expected to be alpha-integral")
    return x._n, x._b


def _inv_v_prime():
    # (3/alpha)^6 = 3^6 / alpha^6, so 1/V' = 3/alpha^6 = (3/alpha)^6 / 3^5
    u1 = AlphaPoly([0, 36, 0, -96, 0, 64])
    p = u1**6
    n = tuple(c // 243 for c in p._n)
    if any(c % 243 for c in p._n):
        raise AssertionError("1/V' is not integral")
    chk = AlphaPoly._wrap(n, p._b) * AlphaPoly._wrap(*V_PRIME)
    if chk != AlphaPoly._wrap(ONE6, 0):
        raise AssertionError("1/V' check failed")
    return n, p._b


INV_V_PRIME = _inv_v_prime()

# Real and imaginary parts of zeta^j, j = 0..5, as alpha-polynomials.
RE_ZETA = tuple(
    _as_poly(real_to_alpha((Cyc36Rational.eta(4 * j) + Cyc36Rational.eta(-4 * j)) * Fraction(1, 2)), "cos")
    for j in range(6)
)
IM_ZETA = tuple(
    _as_poly(
        real_to_alpha((Cyc36Rational.eta(4 * j) - Cyc36Rational.eta(-4 * j)) * Cyc36Rational.eta(27) * Fraction(1, 2)),
        "sin",
    )
    for j in range(6)
)


def _inv_w():
    # |gamma|^2 = alpha^2 w with w a unit; returns w^-1 = alpha^2 / |gamma|^2
    g = Cyc36Rational.from_cycint9(THREE_OVER_GAMMA)
    inv_abs2 = g * g.conj() * Fraction(1, 9)
    r = real_to_alpha(inv_abs2)
    if r.aexp != 2:
        raise AssertionError("|gamma|^2 does not have alpha-valuation 2")
    return r._n, r._b


INV_W = _inv_w()


@lru_cache(maxsize=None)
def adjoint_scale(k):
    """Integer matrices sending zeta-coefficients of ``tau`` to the numerator of
    ``Re(tau) / (6 |gamma|^(2k))`` (resp. ``Im``) over ``2**b alpha**(2k+6)``.

    Returns ``(re_matrix, im_matrix, b)`` with 6x6 row-major nested tuples.
    """
    # F_k = w^-k * V' / 2
    f, fb = V_PRIME[0], V_PRIME[1] + 1
    for _ in range(k):
        f = amul(f, INV_W[0])
        fb += INV_W[1] + 10
    f, fb = _norm2(f, fb)
    cols_re, cols_im = [], []
    for table, cols in ((RE_ZETA, cols_re), (IM_ZETA, cols_im)):
        for n, b in table:
            cols.append((amul(n, f), b + fb + 10))
    b = max(c[1] for c in cols_re + cols_im)
    re = [[0] * 6 for _ in range(6)]
    im = [[0] * 6 for _ in range(6)]
    for j in range(6):
        for target, cols in ((re, cols_re), (im, cols_im)):
            n, cb = cols[j]
            for i in range(6):
                target[i][j] = n[i] << (b - cb)
    return tuple(map(tuple, re)), tuple(map(tuple, im)), b
