"""Exact 3x3 operators: generators, words, and the Clifford group tables."""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from .errors import InternalConsistencyError
from .rings import (
    ONE6,
    ZERO6,
    CycInt9,
    GammaRational,
    z_gamma_divisible,
    zadd,
    zconj,
    zdiv_gamma,
    zmul,
    zmul_gamma,
    zneg,
    zrot,
)

GATE_TAGS = ("H", "S", "T", "X", "Z")


class Gate:
    """A single generator token."""

    __slots__ = ("tag",)
    _cache: dict = {}

    def __new__(cls, tag):
        if tag not in GATE_TAGS:
            raise ValueError(f"unknown gate {tag!r}")
        g = cls._cache.get(tag)
        if g is None:
            g = object.__new__(cls)
            object.__setattr__(g, "tag", tag)
            cls._cache[tag] = g
        return g

    def __repr__(self):
        return f"Gate({self.tag!r})"

    def __str__(self):
        return self.tag

    def __eq__(self, other):
        return isinstance(other, Gate) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)

    def __reduce__(self):
        return (Gate, (self.tag,))


class Word:
    """An ordered sequence of gates, read left to right as a matrix product."""

    __slots__ = ("gates",)

    def __init__(self, gates=()):
        if isinstance(gates, str):
            gates = [Gate(t) for t in gates.split()]
        self.gates = tuple(g if isinstance(g, Gate) else Gate(g) for g in gates)

    def __iter__(self):
        return iter(self.gates)

    def __len__(self):
        return len(self.gates)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.gates[i])
        return self.gates[i]

    def __add__(self, other):
        return Word(self.gates + tuple(other))

    def __eq__(self, other):
        return isinstance(other, Word) and self.gates == other.gates

    def __hash__(self):
        return hash(self.gates)

    def t_count(self):
        return sum(1 for g in self.gates if g.tag == "T")

    def __repr__(self):
        return f"Word({str(self)!r})"

    def __str__(self):
        return " ".join(g.tag for g in self.gates)


def _reduce_nums(nums, k):
    if k == 0:
        return nums, 0
    if not any(any(n) for n in nums):
        return tuple(ZERO6 for _ in nums), 0
    while k and all(z_gamma_divisible(n) for n in nums):
        nums = tuple(zdiv_gamma(n) for n in nums)
        k -= 1
    return nums, k


class Mat3:
    """3x3 matrix over Z[1/gamma].

    Internally a single gamma exponent ``k`` is shared by the nine
    numerators (row-major 6-tuples) and kept minimal, so the pair
    ``(k, nums)`` is a canonical key for the matrix.
    """

    __slots__ = ("k", "nums", "_hash")

    def __init__(self, entries):
        vals = []
        for row in entries:
            if len(row) != 3:
                raise ValueError("Mat3 needs 3 entries per row")
            for e in row:
                if isinstance(e, GammaRational):
                    vals.append(e)
                elif isinstance(e, CycInt9):
                    vals.append(GammaRational(e, 0))
                else:
                    vals.append(GammaRational(CycInt9(e), 0))
        if len(vals) != 9:
            raise ValueError("Mat3 needs 3 rows")
        k = max(v.gexp for v in vals)
        nums = []
        for v in vals:
            n = v.numerator.coeffs
            for _ in range(k - v.gexp):
                n = zmul_gamma(n)
            nums.append(n)
        self.nums, self.k = _reduce_nums(tuple(nums), k)
        self._hash = None

    @classmethod
    def from_raw(cls, nums, k):
        """Build from nine numerator tuples over a common ``gamma**k``."""
        obj = object.__new__(cls)
        obj.nums, obj.k = _reduce_nums(tuple(tuple(n) for n in nums), k)
        obj._hash = None
        return obj

    @classmethod
    def identity(cls):
        return cls.from_raw((ONE6, ZERO6, ZERO6, ZERO6, ONE6, ZERO6, ZERO6, ZERO6, ONE6), 0)

    @classmethod
    def scalar(cls, x):
        if isinstance(x, int):
            x = (x, 0, 0, 0, 0, 0)
        elif isinstance(x, CycInt9):
            x = x.coeffs
        return cls.from_raw((x, ZERO6, ZERO6, ZERO6, x, ZERO6, ZERO6, ZERO6, x), 0)

    @classmethod
    def diag(cls, a, b, c):
        return cls.from_raw((a, ZERO6, ZERO6, ZERO6, b, ZERO6, ZERO6, ZERO6, c), 0)

    @property
    def entries(self):
        return [[GammaRational(CycInt9(self.nums[3 * i + j]), self.k) for j in range(3)] for i in range(3)]

    def entry(self, i, j):
        return GammaRational(CycInt9(self.nums[3 * i + j]), self.k)

    def key(self):
        return (self.k, self.nums)

    def __mul__(self, other):
        if not isinstance(other, Mat3):
            return NotImplemented
        a, b = self.nums, other.nums
        out = []
        for i in range(3):
            a0, a1, a2 = a[3 * i], a[3 * i + 1], a[3 * i + 2]
            for j in range(3):
                out.append(zadd(zadd(zmul(a0, b[j]), zmul(a1, b[3 + j])), zmul(a2, b[6 + j])))
        return Mat3.from_raw(out, self.k + other.k)

    def __pow__(self, e):
        if e < 0:
            return self.dagger() ** (-e)
        r = Mat3.identity()
        x = self
        while e:
            if e & 1:
                r = r * x
            x = x * x
            e >>= 1
        return r

    def scale_zeta(self, m):
        """Multiply every entry by zeta^m."""
        return Mat3.from_raw(tuple(zrot(n, m) for n in self.nums), self.k)

    def dagger(self):
        # conj(1/gamma^k) = (-zeta)^k / gamma^k
        k = self.k
        out = []
        for i in range(3):
            for j in range(3):
                n = zrot(zconj(self.nums[3 * j + i]), k)
                out.append(zneg(n) if k % 2 else n)
        return Mat3.from_raw(out, k)

    def is_unitary(self):
        return self * self.dagger() == Mat3.identity()

    def det(self):
        n = self.nums

        def m2(a, b, c, d):
            return zadd(zmul(n[a], n[d]), zneg(zmul(n[b], n[c])))

        d = zadd(
            zadd(zmul(n[0], m2(4, 5, 7, 8)), zneg(zmul(n[1], m2(3, 5, 6, 8)))),
            zmul(n[2], m2(3, 4, 6, 7)),
        )
        return GammaRational(CycInt9(d), 3 * self.k)

    def nonzero_pattern(self):
        return tuple(bool(any(n)) for n in self.nums)

    def is_generalized_permutation(self):
        p = self.nonzero_pattern()
        rows = all(sum(p[3 * i : 3 * i + 3]) == 1 for i in range(3))
        cols = all(sum(p[j::3]) == 1 for j in range(3))
        return rows and cols

    def to_complex(self):
        return [[complex(self.entry(i, j)) for j in range(3)] for i in range(3)]

    def __eq__(self, other):
        if not isinstance(other, Mat3):
            return NotImplemented
        return self.k == other.k and self.nums == other.nums

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.k, self.nums))
        return self._hash

    def __repr__(self):
        return f"Mat3.from_raw({[list(n) for n in self.nums]}, {self.k})"

    def __str__(self):
        rows = []
        for i in range(3):
            rows.append("[" + ", ".join(str(self.entry(i, j)) for j in range(3)) + "]")
        return "[" + ",\n ".join(rows) + "]"


#: gamma^3 / sqrt(-3)
INV_SQRT_M3_NUM = (-1, 1, -1, -1, 2, -2)
#: sqrt(-3) = 1 + 2 omega
SQRT_M3 = (1, 0, 0, 2, 0, 0)

ZETA = zrot(ONE6, 1)
OMEGA = zrot(ONE6, 3)
OMEGA2 = zrot(ONE6, 6)


def _build_generators():
    h = []
    for i in range(3):
        for j in range(3):
            h.append(zrot(INV_SQRT_M3_NUM, 3 * ((i * j) % 3)))
    mats = {
        "H": Mat3.from_raw(h, 3),
        "S": Mat3.diag(zrot(ONE6, 8), zrot(ONE6, 8), zrot(ONE6, 11)),
        "T": Mat3.diag(ONE6, ZETA, zrot(ONE6, 8)),
        "X": Mat3.from_raw((ZERO6, ZERO6, ONE6, ONE6, ZERO6, ZERO6, ZERO6, ONE6, ZERO6), 0),
        "Z": Mat3.diag(ONE6, OMEGA, OMEGA2),
    }
    return mats


_GENERATORS = _build_generators()


def generator_matrix(g):
    """Exact matrix of a generator gate (``Gate`` or tag string)."""
    tag = g.tag if isinstance(g, Gate) else g
    return _GENERATORS[tag]


def word_to_matrix(w):
    """Left-to-right product of the generator matrices of ``w``."""
    if isinstance(w, str):
        w = Word(w)
    m = Mat3.identity()
    for g in w:
        m = m * _GENERATORS[g.tag]
    return m


def t_power_reduce(a):
    """Rewrite T^a as ``prefix * Z^e``.

    Returns ``(prefix_word, e)`` where the prefix is empty, ``T`` or
    ``H H T H H``.
    """
    a %= 9
    if a % 3 == 0:
        return Word(), a // 3
    if a % 3 == 1:
        return Word("T"), (a - 1) // 3
    # T^2 = H^2 T H^2 Z
    return Word("H H T H H"), (1 + (a - 2) // 3) % 3


# (L-part, M-part) prefix names. L in {Id, H, SH, S^2H}; M in {Id, H^2}.
L_WORDS = ("", "H", "S H", "S S H")
M_WORDS = ("", "H H")
LM_NAMES = {
    (0, 0): "",
    (0, 1): "H2",
    (1, 0): "H",
    (1, 1): "H3",
    (2, 0): "SH",
    (2, 1): "SH3",
    (3, 0): "S2H",
    (3, 1): "S2H3",
}
_POW_SUFFIX = {1: "", 2: "2"}


class CliffordTables:
    """The 648-element Clifford group generated by H and S, with lookups.

    Index order is breadth-first discovery order from the identity under
    right multiplication by H then S; index 0 is the identity.
    """

    def __init__(self):
        gens = (_GENERATORS["H"], _GENERATORS["S"])
        ident = Mat3.identity()
        self.matrices = [ident]
        self.index = {ident.key(): 0}
        parent = [-1]
        pgen = [-1]
        rmul = []
        q = deque([0])
        while q:
            i = q.popleft()
            row = []
            for gi, g in enumerate(gens):
                m = self.matrices[i] * g
                key = m.key()
                j = self.index.get(key)
                if j is None:
                    j = len(self.matrices)
                    if j >= 648:
                        raise InternalConsistencyError("Clifford closure exceeded 648 elements")
                    self.index[key] = j
                    self.matrices.append(m)
                    parent.append(i)
                    pgen.append(gi)
                    q.append(j)
                row.append(j)
            rmul.append(row)
        n = len(self.matrices)
        if n != 648:
            raise InternalConsistencyError(f"Clifford closure has {n} elements, expected 648")
        self.size = n
        self.rmul = rmul

        words = [Word()]
        for j in range(1, n):
            words.append(words[parent[j]] + [Gate("HS"[pgen[j]])])
        self.word = words

        # mul[a][b] via b = parent(b) * gen(b)
        cols = [list(range(n))]
        for b in range(1, n):
            pc = cols[parent[b]]
            g = pgen[b]
            cols.append([rmul[x][g] for x in pc])
        self.mul = [[cols[b][a] for b in range(n)] for a in range(n)]
        self.inv = [row.index(0) for row in self.mul]

        self.omega = self.lookup(Mat3.scalar(OMEGA))
        if self.omega is None:
            raise InternalConsistencyError("omega*I is not in the Clifford table")
        self.omega2 = self.mul[self.omega][self.omega]
        self.phase_rep = [min(c, self.mul[c][self.omega], self.mul[c][self.omega2]) for c in range(n)]
        reps = sorted(set(self.phase_rep))
        cls_id = {r: t for t, r in enumerate(reps)}
        self.phase_class = [cls_id[self.phase_rep[c]] for c in range(n)]
        self.class_reps = reps

        self.gen_index = {t: self.lookup(_GENERATORS[t]) for t in ("H", "S", "X", "Z")}

        self._build_subgroups()
        self._build_cosets()
        self._build_names()

    # -- lookups ----------------------------------------------------------
    def lookup(self, m):
        """Clifford index of matrix ``m`` or None."""
        return self.index.get(m.key())

    def of_word(self, w):
        if isinstance(w, str):
            w = Word(w)
        c = 0
        for g in w:
            if g.tag == "T":
                raise ValueError("T is not a Clifford gate")
            c = self.mul[c][self.gen_index[g.tag]]
        return c

    def closure(self, gens):
        seen = {0}
        order = [0]
        q = deque([0])
        while q:
            a = q.popleft()
            for g in gens:
                b = self.mul[a][g]
                if b not in seen:
                    seen.add(b)
                    order.append(b)
                    q.append(b)
        return order

    # -- S, M, L ----------------------------------------------------------
    def _build_subgroups(self):
        gi = self.gen_index
        mul = self.mul
        self.pauli = sorted(self.closure([gi["X"], gi["Z"]]))
        s_group = set(self.closure([gi["S"], gi["X"]]))
        if len(s_group) != 81 or self.omega not in s_group:
            raise InternalConsistencyError("<S, X> is not an 81-element group containing omega*I")

        def pw(c, e):
            r = 0
            for _ in range(e):
                r = mul[r][c]
            return r

        # name S-subgroup elements as omega^a Z^b S^c X^d
        s_list = []
        s_label = []
        for a in range(3):
            for b in range(3):
                for c in range(3):
                    for d in range(3):
                        x = mul[mul[mul[pw(self.omega, a)][pw(gi["Z"], b)]][pw(gi["S"], c)]][pw(gi["X"], d)]
                        s_list.append(x)
                        s_label.append((a, b, c, d))
        if set(s_list) != s_group or len(set(s_list)) != 81:
            raise InternalConsistencyError("S-subgroup labelling is not a bijection")
        order = sorted(range(81), key=lambda t: s_list[t])
        self.s_elems = [s_list[t] for t in order]
        self.s_labels = [s_label[t] for t in order]
        self.s_pos = {c: p for p, c in enumerate(self.s_elems)}

        hh = mul[gi["H"]][gi["H"]]
        self.m_elems = (0, hh)
        s_h = mul[gi["S"]][gi["H"]]
        self.l_elems = (0, gi["H"], s_h, mul[gi["S"]][s_h])
        self.lm = {(l, m): mul[self.l_elems[l]][self.m_elems[m]] for l in range(4) for m in range(2)}
        ms = {mul[m][s] for m in self.m_elems for s in self.s_elems}
        self.ms_elems = sorted(ms)

        # T^-1 s T for s in S
        t = _GENERATORS["T"]
        tinv = t.dagger()
        tconj = []
        for s in self.s_elems:
            c = self.lookup(tinv * self.matrices[s] * t)
            if c is None or c not in self.s_pos:
                raise InternalConsistencyError("S-subgroup is not normalized by T")
            tconj.append(self.s_pos[c])
        self.tconj = tconj

    def _build_cosets(self):
        inv, mul = self.inv, self.mul
        coset = [None] * self.size
        for (l, m), lm in self.lm.items():
            for s in self.s_elems:
                c = mul[lm][s]
                if coset[c] is not None:
                    raise InternalConsistencyError("LMS cosets overlap")
                coset[c] = (l, m, self.s_pos[s])
        if any(x is None for x in coset):
            raise InternalConsistencyError("LMS cosets do not cover the Clifford group")
        for c, (l, m, sp) in enumerate(coset):
            if mul[inv[self.lm[(l, m)]]][c] != self.s_elems[sp]:
                raise InternalConsistencyError("coset decomposition check failed")
        self.coset = coset

    def _build_names(self):
        names = []
        for c in range(self.size):
            l, m, sp = self.coset[c]
            parts = []
            lm = LM_NAMES[(l, m)]
            if lm:
                parts.append(lm)
            a, b, cc, d = self.s_labels[sp]
            for sym, e in (("w", a), ("Z", b), ("S", cc), ("X", d)):
                if e:
                    parts.append(sym + _POW_SUFFIX[e])
            names.append("·".join(parts) if parts else "Id")
        if len(set(names)) != self.size:
            raise InternalConsistencyError("Clifford names are not unique")
        self.names = names
        self.name_index = {nm: c for c, nm in enumerate(names)}

    def coset_decompose(self, c):
        """``(l, m, s)`` Clifford indices with ``matrices[c] = L*M*S``."""
        l, m, sp = self.coset[c]
        return self.l_elems[l], self.m_elems[m], self.s_elems[sp]

    def name(self, c):
        return self.names[c]

    def parse_name(self, text):
        text = text.strip()
        if text.startswith("C#"):
            c = int(text[2:])
            if not 0 <= c < self.size:
                raise ValueError(f"Clifford index {c} out of range")
            return c
        norm = text.replace("*", "·").replace(".", "·")
        if norm in self.name_index:
            return self.name_index[norm]
        raise ValueError(f"unknown Clifford name {text!r}")


@lru_cache(maxsize=None)
def build_clifford_tables():
    """Build (once) and return the shared Clifford tables."""
    return CliffordTables()


def coset_decompose(c):
    return build_clifford_tables().coset_decompose(c)
