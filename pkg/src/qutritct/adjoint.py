"""The 8x8 adjoint representation over Z[1/2, 1/alpha].

Basis order (plus-type first, then minus-type)::

    Z+, X+, (XZ)+, (XZ^2)+, Z-, X-, (XZ)-, (XZ^2)-

with ``P+ = (P + P^2)/sqrt(6)`` and ``P- = i (P - P^2)/sqrt(6)``.  The
adjoint of ``U`` has entries ``tr[Q_i U Q_j U^dagger]``.

``Adj8`` keeps the 64 entries over a shared denominator ``2**b * alpha**K``
as an ``(8, 8, 6)`` integer array of alpha-polynomial numerators.  int64 is
used while the values are small; products that could overflow switch to
Python integers (object dtype).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import Mat3, Word, build_clifford_tables, generator_matrix
from .errors import (
    DomainError,
    InternalConsistencyError,
    NotADenominatorExponent,
    NotCliffordTError,
    NotRealError,
    NotRepresentableError,
)
from .rings import (
    ALPHA_POW_1024,
    ONE6,
    ZERO6,
    AlphaPoly,
    AlphaRational,
    Cyc36Rational,
    I_36,
    adiv_alpha,
    adjoint_scale,
    real_to_alpha,
    zadd,
    zconj,
    zmul,
    zneg,
    zrot,
    zsub,
)

QUADRANTS = {
    "++": (slice(0, 4), slice(0, 4)),
    "+-": (slice(0, 4), slice(4, 8)),
    "-+": (slice(4, 8), slice(0, 4)),
    "--": (slice(4, 8), slice(4, 8)),
}
PAULI_AXES = ("Z", "X", "XZ", "XZ2")

_INT64_LIMIT = 1 << 62
_ALPHA_POLY = AlphaPoly([0, 1, 0, 0, 0, 0])

# 1024 * alpha^(p+q) reduced, as a (6, 6, 6) table
_W = np.array([[ALPHA_POW_1024[p + q] for q in range(6)] for p in range(6)], dtype=np.int64)
_W_MAX = int(np.abs(_W).max())


def _max_abs(arr):
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(x)) for x in arr.flat)
    return int(np.abs(arr).max())


def _as_best_dtype(arr):
    if arr.dtype == object and _max_abs(arr) < _INT64_LIMIT:
        return arr.astype(np.int64)
    return arr


def _adiv_array(n):
    q = n[..., 0] // 3
    out = np.empty_like(n)
    out[..., 0] = n[..., 1]
    out[..., 1] = n[..., 2] + 36 * q
    out[..., 2] = n[..., 3]
    out[..., 3] = n[..., 4] - 96 * q
    out[..., 4] = n[..., 5]
    out[..., 5] = 64 * q
    return out


def _normalize(n, b, k):
    if not n.any():
        return np.zeros((8, 8, 6), dtype=np.int64), 0, 0
    limit = _INT64_LIMIT // 128
    bound = _max_abs(n) if n.dtype != object else 0
    if bound >= limit:
        n = n.astype(object)
    while k and not (n[..., 0] % 3).any():
        if n.dtype != object:
            # one alpha division grows coefficients by at most a factor 33
            bound *= 33
            if bound >= limit:
                bound = _max_abs(n) * 33
                if bound >= limit:
                    n = n.astype(object)
        n = _adiv_array(n)
        k -= 1
    if b:
        if n.dtype == object:
            g = 0
            for x in n.flat:
                g |= int(x)
        else:
            g = int(np.bitwise_or.reduce(n.ravel()))
        tz = (g & -g).bit_length() - 1 if g else 0
        s = min(tz, b)
        if s:
            n = n >> s
            b -= s
    return _as_best_dtype(n), b, k


def _poly_matmul_left(a_n):
    """Precompute the (48, 48) left operand for ``A @ B``."""
    big = a_n.dtype == object
    w = _W.astype(object) if big else _W
    a2 = np.tensordot(a_n, w, axes=([2], [0]))  # (i, k, q, r)
    return a2.transpose(0, 3, 1, 2).reshape(48, 48)


def _valuation(n):
    """alpha-adic valuation of a nonzero integer alpha-polynomial."""
    if n[0] % 3:
        return 0
    j = 0
    while all(x % 3 == 0 for x in n):
        n = tuple(x // 3 for x in n)
        j += 1
    s = 0
    while n[0] % 3 == 0:
        n = adiv_alpha(n)
        s += 1
        if s >= 6:
            raise InternalConsistencyError("alpha valuation exceeded 6 after stripping 3")
    return 6 * j + s


def _residue_of(n, b, d):
    """rho(n / (2^b alpha^d)) for integer polynomial ``n`` divisible by alpha^d."""
    if d < 0:
        return 0
    j, r = divmod(d, 6)
    if j:
        p = 3**j
        if any(x % p for x in n):
            raise NotADenominatorExponent("entry is not divisible by the requested alpha power")
        # 1/3 = V'/alpha^6 and rho(V') = 1
        n = tuple(x // p for x in n)
    for _ in range(r):
        if n[0] % 3:
            raise NotADenominatorExponent("entry is not divisible by the requested alpha power")
        n = adiv_alpha(n)
    return (n[0] * (1 if b % 2 == 0 else 2)) % 3


class AdjResidue:
    """8x8 array over Z_3 assembled quadrant-wise."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(int(x) % 3 for x in r) for r in rows)

    def quadrant(self, name):
        rs, cs = QUADRANTS[name]
        return tuple(r[cs] for r in self.rows[rs])

    def __eq__(self, other):
        return isinstance(other, AdjResidue) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        lines = []
        for i, r in enumerate(self.rows):
            if i == 4:
                lines.append("-" * 17)
            lines.append(" ".join(map(str, r[:4])) + " | " + " ".join(map(str, r[4:])))
        return "\n".join(lines)

    def __repr__(self):
        return f"AdjResidue({[list(r) for r in self.rows]})"


class Adj8:
    """8x8 matrix over Z[1/2, 1/alpha]."""

    __slots__ = ("N", "b", "K", "_key", "_left", "_qcache")

    def __init__(self, entries):
        vals = []
        for row in entries:
            for e in row:
                vals.append(e if isinstance(e, AlphaRational) else AlphaRational(e))
        if len(vals) != 64:
            raise ValueError("Adj8 needs 8x8 entries")
        k = max(v.aexp for v in vals)
        polys = [v.numerator * _ALPHA_POLY ** (k - v.aexp) for v in vals]
        b = max(q._b for q in polys)
        nums = [[x << (b - q._b) for x in q._n] for q in polys]
        arr = np.array(nums, dtype=object).reshape(8, 8, 6)
        self.N, self.b, self.K = _normalize(arr, b, k)
        self._key = None
        self._left = None
        self._qcache = None

    @classmethod
    def from_raw(cls, n, b, k):
        """Entries ``n[i, j] / (2**b alpha**k)``; ``n`` is an (8, 8, 6) array."""
        obj = object.__new__(cls)
        arr = np.asarray(n)
        if arr.dtype != object and arr.dtype != np.int64:
            arr = arr.astype(np.int64)
        obj.N, obj.b, obj.K = _normalize(arr, b, k)
        obj._key = None
        obj._left = None
        obj._qcache = None
        return obj

    @classmethod
    def identity(cls):
        n = np.zeros((8, 8, 6), dtype=np.int64)
        for i in range(8):
            n[i, i, 0] = 1
        return cls.from_raw(n, 0, 0)

    @classmethod
    def from_ints(cls, rows):
        n = np.zeros((8, 8, 6), dtype=np.int64)
        for i in range(8):
            for j in range(8):
                n[i, j, 0] = rows[i][j]
        return cls.from_raw(n, 0, 0)

    def entry(self, i, j):
        n = tuple(int(x) for x in self.N[i, j])
        return AlphaRational._wrap(n, self.b, self.K)

    @property
    def entries(self):
        return [[self.entry(i, j) for j in range(8)] for i in range(8)]

    def key(self):
        if self._key is None:
            self._key = (self.b, self.K, tuple(int(x) for x in self.N.flat))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Adj8):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def T(self):
        return Adj8.from_raw(self.N.transpose(1, 0, 2).copy(), self.b, self.K)

    def __matmul__(self, other):
        if not isinstance(other, Adj8):
            return NotImplemented
        a, bn = self.N, other.N
        bound = _max_abs(a) * _max_abs(bn) * 6 * 48 * _W_MAX
        if bound >= _INT64_LIMIT or a.dtype == object or bn.dtype == object:
            if self._left is None or self._left.dtype != object:
                left = _poly_matmul_left(a.astype(object))
                if a.dtype == object:
                    self._left = left
            else:
                left = self._left
            b2 = bn.astype(object).transpose(0, 2, 1).reshape(48, 8)
        else:
            if self._left is None or self._left.dtype == object:
                self._left = _poly_matmul_left(a)
            left = self._left
            b2 = bn.transpose(0, 2, 1).reshape(48, 8)
        c = (left @ b2).reshape(8, 6, 8).transpose(0, 2, 1)
        return Adj8.from_raw(np.ascontiguousarray(c), self.b + other.b + 10, self.K + other.K)

    __mul__ = __matmul__

    def lde(self):
        return self.K

    def _quadrant_vals(self, name):
        """Entry numerators of a quadrant with their alpha-valuations (cached)."""
        cache = self._qcache
        if cache is None:
            cache = self._qcache = {}
        got = cache.get(name)
        if got is None:
            rs, cs = QUADRANTS[name]
            rows = self.N[rs, cs].tolist()
            got = [[(tuple(n), _valuation(n) if any(n) else None) for n in row] for row in rows]
            cache[name] = got
        return got

    def quadrant_lde(self, name):
        """Least denominator exponent shared by the entries of one quadrant."""
        vals = [v for row in self._quadrant_vals(name) for _, v in row if v is not None]
        return max(0, self.K - min(vals)) if vals else 0

    def quadrant_residue(self, name, k):
        """rho_k applied entrywise to a quadrant (a 4x4 tuple of ints)."""
        out = []
        d = self.K - k
        for row in self._quadrant_vals(name):
            r = []
            for n, v in row:
                if v is None or v > d:
                    r.append(0)
                    continue
                if d > 0 and v < d:
                    raise NotADenominatorExponent(f"{k} is not a denominator exponent of the {name} quadrant")
                r.append(_residue_of(n, self.b, d))
            out.append(tuple(r))
        return tuple(out)

    def is_orthogonal(self):
        return self @ self.T == Adj8.identity()

    def det_mod(self, p=37):
        """Determinant reduced through an embedding Z[1/2, alpha] -> F_p."""
        r = _alpha_root_mod(p)
        scale = pow(pow(2, self.b, p) * pow(r, self.K, p), -1, p)
        m = []
        for i in range(8):
            row = []
            for j in range(8):
                v = 0
                for c in reversed([int(x) for x in self.N[i, j]]):
                    v = (v * r + c) % p
                row.append(v * scale % p)
            m.append(row)
        return _det_mod_p(m, p)

    def det(self):
        """Exact determinant of an orthogonal matrix (must be +1 or -1)."""
        if not self.is_orthogonal():
            raise DomainError("determinant is only computed for orthogonal matrices")
        d = self.det_mod()
        if d == 1:
            return 1
        if d == 36:
            return -1
        raise InternalConsistencyError("orthogonal matrix with determinant other than +-1")

    def to_float(self):
        return np.array([[float(self.entry(i, j)) for j in range(8)] for i in range(8)])

    def __repr__(self):
        return f"Adj8(b={self.b}, K={self.K})"

    def __str__(self):
        return "\n".join("[" + ", ".join(str(self.entry(i, j)) for j in range(8)) + "]" for i in range(8))


@lru_cache(maxsize=None)
def _alpha_root_mod(p):
    for r in range(1, p):
        if (64 * r**6 - 96 * r**4 + 36 * r**2 - 3) % p == 0:
            return r
    raise ValueError(f"alpha has no root modulo {p}")


def _det_mod_p(m, p):
    m = [row[:] for row in m]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c] % p
        inv = pow(m[c][c], -1, p)
        for r in range(c + 1, n):
            f = m[r][c] * inv % p
            if f:
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[c])]
    return det % p


# ---------------------------------------------------------------------------
# Q basis
# ---------------------------------------------------------------------------


class QBasisElement:
    """``P+`` or ``P-`` for a Pauli axis, with the 1/sqrt(6) scalar left symbolic."""

    __slots__ = ("pauli", "sign_type")

    def __init__(self, pauli, sign_type):
        if pauli not in PAULI_AXES or sign_type not in ("plus", "minus"):
            raise ValueError("bad Q-basis element")
        self.pauli = pauli
        self.sign_type = sign_type

    def numerator(self):
        """``P + P^2`` or ``P - P^2`` as an exact Mat3."""
        p = pauli_matrix(self.pauli)
        p2 = p * p
        sgn = 1 if self.sign_type == "plus" else -1
        return Mat3.from_raw([zadd(a, b) if sgn > 0 else zsub(a, b) for a, b in zip(p.nums, p2.nums)], 0)

    def to_cyc36(self):
        """Entries times sqrt(6) as Cyc36Rational (the i of minus-type included)."""
        num = self.numerator()
        c = I_36 if self.sign_type == "minus" else Cyc36Rational([1] + [0] * 11)
        return [[Cyc36Rational.from_cycint9(num.nums[3 * i + j]) * c for j in range(3)] for i in range(3)]

    def __repr__(self):
        return f"QBasisElement({self.pauli!r}, {self.sign_type!r})"

    def __str__(self):
        return f"({self.pauli}){'+' if self.sign_type == 'plus' else '-'}"


Q_BASIS = tuple(QBasisElement(p, t) for t in ("plus", "minus") for p in PAULI_AXES)


@lru_cache(maxsize=None)
def pauli_matrix(axis):
    x, z = generator_matrix("X"), generator_matrix("Z")
    return {"Z": z, "X": x, "XZ": x * z, "XZ2": x * z * z}[axis]


def _c36_matmul(a, b):
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] for j in range(3)] for i in range(3)]


def _c36_dagger(a):
    return [[a[j][i].conj() for j in range(3)] for i in range(3)]


def _c36_trace(a):
    return a[0][0] + a[1][1] + a[2][2]


def q_basis_gram():
    """Gram matrix tr(Q_i Q_j^dagger) as exact Fractions (real parts checked)."""
    mats = [q.to_cyc36() for q in Q_BASIS]
    out = []
    for a in mats:
        row = []
        for b in mats:
            t = _c36_trace(_c36_matmul(a, _c36_dagger(b))) * Fraction(1, 6)
            if any(t.coeffs[1:]):
                raise NotRealError("Gram entry is not rational")
            row.append(t.coeffs[0])
        out.append(row)
    return out


def _monomial(m):
    """(perm, exps) with m[r, perm[r]] = omega^exps[r]; m must be a Pauli."""
    perm, exps = [], []
    for r in range(3):
        for c in range(3):
            n = m.nums[3 * r + c]
            if any(n):
                for e in range(3):
                    if n == zrot(ONE6, 3 * e):
                        break
                else:
                    raise InternalConsistencyError("Pauli entry is not a power of omega")
                perm.append(c)
                exps.append(e)
    return tuple(perm), tuple(exps)


_PAULI_MONO = tuple((_monomial(pauli_matrix(a)), _monomial(pauli_matrix(a) * pauli_matrix(a))) for a in PAULI_AXES)
# sign s in Q_i = P + s P^2 (before the scalar)
_SIGNS = (1, 1, 1, 1, -1, -1, -1, -1)


def _omega_mul(a):
    a0, a1, a2, a3, a4, a5 = a
    return (-a3, -a4, -a5, a0 - a3, a1 - a4, a2 - a5)


def _pauli_trace_table(n):
    """t[(A, B)] = tr[A N B N^dagger] for all Pauli monomials A, B in {P, P^2}."""
    g = {}
    nc = [zconj(x) for x in n]
    for a in range(3):
        for b in range(3):
            na = n[3 * a + b]
            for c in range(3):
                for d in range(3):
                    g[(a, b, c, d)] = zmul(na, nc[3 * c + d])
    monos = [m for pair in _PAULI_MONO for m in pair]
    table = {}
    for ia, (pa, ea) in enumerate(monos):
        for ib, (pb, eb) in enumerate(monos):
            acc = [ZERO6, ZERO6, ZERO6]
            for r in range(3):
                for t in range(3):
                    e = (ea[r] + eb[t]) % 3
                    acc[e] = zadd(acc[e], g[(pa[r], t, r, pb[t])])
            table[(ia, ib)] = zadd(acc[0], _omega_mul(zadd(acc[1], _omega_mul(acc[2]))))
    return table


def _zeta_mult_table():
    w = np.zeros((6, 6, 6), dtype=np.int64)
    for p in range(6):
        for q in range(6):
            w[p, q] = zrot(ONE6, p + q)
    return w


def _linear_map(f):
    """6x6 matrix M with f(x) = M @ x for a Z-linear map on 6-tuples."""
    cols = [f(tuple(int(i == j) for i in range(6))) for j in range(6)]
    return np.array(cols, dtype=np.int64).T


_ZW = _zeta_mult_table().reshape(36, 6)
_OMEGA_POW = np.stack([_linear_map(lambda x, e=e: zrot(x, 3 * e)) for e in range(3)])
_CONJ_MAP = _linear_map(zconj)


def _gather_plan():
    monos = [m for pair in _PAULI_MONO for m in pair]
    idx = np.zeros((64, 9), dtype=np.int64)
    exps = np.zeros((64, 9), dtype=np.int64)
    for ia, (pa, ea) in enumerate(monos):
        for ib, (pb, eb) in enumerate(monos):
            c = 0
            for r in range(3):
                for t in range(3):
                    # G[a, b, c, d] flattened, a..d in range(3)
                    idx[8 * ia + ib, c] = ((pa[r] * 3 + t) * 3 + r) * 3 + pb[t]
                    exps[8 * ia + ib, c] = (ea[r] + eb[t]) % 3
                    c += 1
    onehot = np.stack([(exps == e).astype(np.int64) for e in range(3)])
    comb = np.zeros((64, 64), dtype=np.int64)
    for i in range(8):
        ai, si = 2 * (i % 4), _SIGNS[i]
        for j in range(8):
            aj, sj = 2 * (j % 4), _SIGNS[j]
            row = 8 * i + j
            comb[row, 8 * ai + aj] += 1
            comb[row, 8 * ai + aj + 1] += sj
            comb[row, 8 * (ai + 1) + aj] += si
            comb[row, 8 * (ai + 1) + aj + 1] += si * sj
    return idx, onehot, comb


_GATHER_IDX, _GATHER_ONEHOT, _TAU_COMB = _gather_plan()
_SMALL_NUM = 1 << 14


def _traces_vectorized(nums):
    """All 64 traces tau_ij in Z[zeta] as a (64, 6) int64 array."""
    n = np.array(nums, dtype=np.int64)
    nc = n @ _CONJ_MAP.T
    outer = np.einsum("xp,yq->xypq", n, nc).reshape(81, 36)
    g = outer @ _ZW
    terms = g[_GATHER_IDX]
    t = np.zeros((64, 6), dtype=np.int64)
    for e in range(3):
        part = np.einsum("ab,abr->ar", _GATHER_ONEHOT[e], terms)
        t += part @ _OMEGA_POW[e].T
    return _TAU_COMB @ t


def adjoint_from_matrix(u, method="fast"):
    """Adjoint representation of an exactly unitary Mat3.

    ``method="cyc36"`` evaluates every trace in Q(eta) and converts each
    real value separately; it is slow and used as a cross-check.
    """
    if not isinstance(u, Mat3):
        raise TypeError("adjoint_from_matrix expects a Mat3")
    if not u.is_unitary():
        raise DomainError("matrix is not exactly unitary")
    if method == "cyc36":
        return _adjoint_cyc36(u)
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    k = u.k
    if max(abs(x) for n in u.nums for x in n) < _SMALL_NUM:
        tau = _traces_vectorized(u.nums)
        ct = tau @ _CONJ_MAP.T
        same = _SAME.reshape(64)
        if not (ct[same] == tau[same]).all():
            raise NotCliffordTError("trace is not real", "ring")
        if not (ct[~same] == -tau[~same]).all():
            raise NotCliffordTError("trace is not imaginary", "ring")
        taus = tau
    else:
        taus = _traces_python(u.nums)
    return Adj8.from_raw(_traces_to_numerators(taus, k), adjoint_scale(k)[2], 2 * k + 6)


def _traces_python(nums):
    t = _pauli_trace_table(nums)
    taus = []
    for i in range(8):
        ai, si = 2 * (i % 4), _SIGNS[i]
        for j in range(8):
            aj, sj = 2 * (j % 4), _SIGNS[j]
            tau = t[(ai, aj)]
            x = t[(ai, aj + 1)]
            tau = zadd(tau, x) if sj > 0 else zsub(tau, x)
            x = t[(ai + 1, aj)]
            tau = zadd(tau, x) if si > 0 else zsub(tau, x)
            x = t[(ai + 1, aj + 1)]
            tau = zadd(tau, x) if si * sj > 0 else zsub(tau, x)
            # same-type blocks give real traces, mixed blocks imaginary ones
            if (i < 4) == (j < 4):
                if zconj(tau) != tau:
                    raise NotCliffordTError("trace is not real", "ring")
            elif zconj(tau) != zneg(tau):
                raise NotCliffordTError("trace is not imaginary", "ring")
            taus.append(tau)
    return taus


@lru_cache(maxsize=None)
def _scale_arrays(k):
    re_m, im_m, _ = adjoint_scale(k)
    big = max(abs(x) for r in re_m + im_m for x in r) >= 1 << 40
    dt = object if big else np.int64
    return np.array(re_m, dtype=dt).T, np.array(im_m, dtype=dt).T, big


# entry = +Re(tau) on ++, -Re(tau) on --, -Im(tau) on the mixed blocks
_BLOCK_SIGN = np.array([[1 if (i < 4) == (j < 4) and i < 4 else -1 for j in range(8)] for i in range(8)])
_SAME = np.array([[(i < 4) == (j < 4) for j in range(8)] for i in range(8)])


def _traces_to_numerators(taus, k):
    re_t, im_t, big = _scale_arrays(k)
    if isinstance(taus, np.ndarray):
        tmax = int(np.abs(taus).max())
    else:
        tmax = max(abs(x) for tau in taus for x in tau)
    if big or tmax >= 1 << 16:
        arr = np.array(taus, dtype=object)
        re_t, im_t = re_t.astype(object), im_t.astype(object)
    else:
        arr = np.asarray(taus, dtype=np.int64)
    re = (arr @ re_t).reshape(8, 8, 6)
    im = (arr @ im_t).reshape(8, 8, 6)
    out = np.where(_SAME[:, :, None], re, im)
    return out * _BLOCK_SIGN[:, :, None]


def _adjoint_cyc36(u):
    uc = [[Cyc36Rational.from_gamma_rational(u.entry(i, j)) for j in range(3)] for i in range(3)]
    ud = _c36_dagger(uc)
    qs = [q.to_cyc36() for q in Q_BASIS]
    rows = []
    for i in range(8):
        row = []
        for j in range(8):
            m = _c36_matmul(_c36_matmul(_c36_matmul(qs[i], uc), qs[j]), ud)
            tr = _c36_trace(m) * Fraction(1, 6)
            try:
                row.append(real_to_alpha(tr))
            except (NotRealError, NotRepresentableError) as exc:
                raise NotCliffordTError(str(exc), "ring") from exc
        rows.append(row)
    return Adj8(rows)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

HALF = AlphaRational(Fraction(1, 2))
SQRT3_HALF = AlphaRational([0, 3, 0, -4, 0, 0])
T1 = AlphaRational([Fraction(-1, 4), 0, 2, 0, -2, 0], 2)
T2 = AlphaRational([Fraction(1, 8), 0, Fraction(-3, 2), 0, 2, 0], 2)
T3 = AlphaRational([Fraction(-1, 16), 0, Fraction(1, 2), 0, -1, 0], 3)
T4 = AlphaRational([Fraction(1, 8), 0, -1, 0, 1, 0], 3)


def _table(entries):
    rows = [[AlphaRational(0)] * 8 for _ in range(8)]
    for (i, j), v in entries.items():
        rows[i][j] = v
    return Adj8(rows)


def _generator_tables():
    one = AlphaRational(1)
    s = _table(
        {(0, 0): one, (1, 3): one, (2, 1): one, (3, 2): one, (4, 4): one, (5, 7): one, (6, 5): one, (7, 6): one}
    )
    h = _table(
        {
            (0, 1): one,
            (1, 0): one,
            (2, 3): -HALF,
            (2, 7): -SQRT3_HALF,
            (3, 2): one,
            (4, 5): one,
            (5, 4): -one,
            (6, 3): SQRT3_HALF,
            (6, 7): -HALF,
            (7, 6): -one,
        }
    )
    t1, t2, t3, t4 = T1, T2, T3, T4
    z = AlphaRational(0)
    t = Adj8(
        [
            [one, z, z, z, z, z, z, z],
            [z, t1, t1, t2, z, t3, t3, t4],
            [z, t2, t1, t1, z, t4, t3, t3],
            [z, t1, t2, t1, z, t3, t4, t3],
            [z, z, z, z, one, z, z, z],
            [z, -t3, -t3, -t4, z, t1, t1, t2],
            [z, -t4, -t3, -t3, z, t2, t1, t1],
            [z, -t3, -t4, -t3, z, t1, t2, t1],
        ]
    )
    return {"S": s, "H": h, "T": t}


_GEN_ADJ = _generator_tables()
_GEN_ADJ["X"] = adjoint_from_matrix(generator_matrix("X"))
_GEN_ADJ["Z"] = adjoint_from_matrix(generator_matrix("Z"))


def adjoint_generator(g):
    tag = g.tag if hasattr(g, "tag") else g
    return _GEN_ADJ[tag]


def adjoint_of_word(w):
    """Product of generator adjoints in circuit order."""
    if isinstance(w, str):
        w = Word(w)
    a = Adj8.identity()
    for g in w:
        a = a @ _GEN_ADJ[g.tag]
    return a


# ---------------------------------------------------------------------------
# Residues and the prefix discriminator
# ---------------------------------------------------------------------------


def k_adjoint_residue(a, k):
    """The block residue at exponents (k, k+1; k+1, k+2)."""
    blocks = {}
    for name, e in (("++", k), ("+-", k + 1), ("-+", k + 1), ("--", k + 2)):
        if a.quadrant_lde(name) > e:
            raise NotADenominatorExponent(f"quadrant {name} does not admit denominator exponent {e}")
        blocks[name] = a.quadrant_residue(name, e)
    rows = []
    for i in range(4):
        rows.append(blocks["++"][i] + blocks["+-"][i])
    for i in range(4):
        rows.append(blocks["-+"][i] + blocks["--"][i])
    return AdjResidue(rows)


def symplectic_check(a):
    """True iff ``A^T Omega A = Omega`` with Omega = [[0, I], [-I, 0]]."""
    rows = [[0] * 8 for _ in range(8)]
    for i in range(4):
        rows[i][i + 4] = 1
        rows[i + 4][i] = -1
    omega = Adj8.from_ints(rows)
    return a.T @ omega @ a == omega


class PrefixDiscriminant:
    __slots__ = ("zero_row", "row_values")

    def __init__(self, zero_row, row_values):
        self.zero_row = zero_row
        self.row_values = tuple(row_values)

    def _t(self):
        return (self.zero_row, self.row_values)

    def __eq__(self, other):
        return isinstance(other, PrefixDiscriminant) and self._t() == other._t()

    def __hash__(self):
        return hash(self._t())

    def __repr__(self):
        return f"PrefixDiscriminant({self.zero_row}, {self.row_values})"


def discriminant(a, n):
    """Residue signature of the leftmost syllable of a T-count ``n`` adjoint.

    Returns None when the residue pattern is not of the expected shape.
    """
    pp = a.quadrant_residue("++", 2 * n)
    mp = a.quadrant_residue("-+", 2 * n + 1)
    zero = [r for r in range(4) if not any(pp[r])]
    if len(zero) != 1:
        return None
    z = zero[0]
    vals = []
    for r in range(4):
        if r == z:
            if any(mp[r]):
                return None
            continue
        nz = {x for x in mp[r] if x}
        if len(nz) != 1:
            return None
        vals.append(nz.pop())
    return PrefixDiscriminant(z, vals)


#: prefixes M' in LM, as (l, m) pairs: Id, H2, H, H3, SH, SH3, S2H, S2H3
PREFIXES = ((0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1))


class AdjointTables:
    """Clifford adjoints, prefix syllable adjoints and the discriminator table."""

    def __init__(self):
        tb = build_clifford_tables()
        self.clifford = []
        self.by_key = {}
        for c in range(tb.size):
            a = adjoint_from_matrix(tb.matrices[c])
            self.clifford.append(a)
            self.by_key.setdefault(a.key(), []).append(c)
        if len(self.by_key) != 216:
            raise InternalConsistencyError(f"{len(self.by_key)} Clifford adjoints, expected 216")
        t_hat = _GEN_ADJ["T"]
        self.prefix_clifford = {p: tb.lm[p] for p in PREFIXES}
        self.syllable = {}
        self.step = {}
        self.disc = {}
        for p in PREFIXES:
            m = self.clifford[tb.lm[p]] @ t_hat
            self.syllable[p] = m
            self.step[p] = m.T
            d = discriminant(m, 1)
            if d is None or d in self.disc:
                raise InternalConsistencyError("prefix discriminants are not distinct")
            self.disc[d] = p

    def clifford_class(self, a):
        """Lowest Clifford index with adjoint ``a``, or None."""
        cs = self.by_key.get(a.key())
        return min(cs) if cs else None


@lru_cache(maxsize=None)
def adjoint_tables():
    return AdjointTables()


def prefix_discriminator(a, n):
    """Prefix ``(l, m)`` of the leftmost syllable, for LDE(A++) = 2n, n >= 1."""
    d = discriminant(a, n)
    p = adjoint_tables().disc.get(d) if d is not None else None
    if p is None:
        raise NotCliffordTError("residue pattern matches no syllable prefix", "discriminator")
    return p
