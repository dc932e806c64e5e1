"""Canonical forms, the linear-time normalizer, and channel forms.

A canonical form is ``(eps | T | H2T) (HT | H3T | SHT | SH3T | S2HT | S2H3T)* C``
for a Clifford ``C``.  Internally every T-block is stored as a pair
``(l, m)``: the Clifford ``L M`` in front of the T, with ``L`` one of
``Id, H, SH, S2H`` and ``M`` one of ``Id, H2``.  Only the first block may
have ``l == 0``; those are the prefixes ``T`` and ``H2T``.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache

from .core import (
    GATE_TAGS,
    L_WORDS,
    M_WORDS,
    Gate,
    Mat3,
    Word,
    build_clifford_tables,
    generator_matrix,
)
from .errors import CircuitSyntaxError, ConversionError, InternalConsistencyError
from .rings import GAMMA6, ONE6, ZERO6, zadd, zmul, zpow, zrot

SYLLABLE_TAGS = {(1, 0): "HT", (1, 1): "H3T", (2, 0): "SHT", (2, 1): "SH3T", (3, 0): "S2HT", (3, 1): "S2H3T"}
PREFIX_TAGS = {(0, 0): "T", (0, 1): "H2T"}
BLOCK_TAGS = {**PREFIX_TAGS, **SYLLABLE_TAGS}
TAG_BLOCKS = {v: k for k, v in BLOCK_TAGS.items()}
SYLLABLE_ORDER = tuple(SYLLABLE_TAGS)
FIRST_BLOCK_ORDER = tuple(PREFIX_TAGS) + SYLLABLE_ORDER


class Syllable:
    """One of the six syllables ``M'T`` with ``M'`` in {H, H3, SH, SH3, S2H, S2H3}."""

    __slots__ = ("tag",)

    def __init__(self, tag):
        if tag not in TAG_BLOCKS or tag in PREFIX_TAGS.values():
            raise ValueError(f"unknown syllable {tag!r}")
        self.tag = tag

    @property
    def block(self):
        return TAG_BLOCKS[self.tag]

    @property
    def clifford_prefix(self):
        """Clifford index of the part before T."""
        return build_clifford_tables().lm[self.block]

    def word(self):
        return Word(_block_word(self.block))

    def __eq__(self, other):
        return isinstance(other, Syllable) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"Syllable({self.tag!r})"


def _block_word(block):
    l, m = block
    return (L_WORDS[l] + " " + M_WORDS[m] + " T").split()


class CanonicalForm:
    """``prefix`` in {"", "T", "H2T"}, a tuple of syllables and a final Clifford index."""

    __slots__ = ("prefix", "syllables", "final")

    def __init__(self, prefix="", syllables=(), final=0):
        if prefix not in ("", "T", "H2T"):
            raise ValueError(f"bad prefix {prefix!r}")
        self.prefix = prefix
        self.syllables = tuple(s if isinstance(s, Syllable) else Syllable(s) for s in syllables)
        self.final = int(final)

    @classmethod
    def from_blocks(cls, blocks, final):
        blocks = list(blocks)
        prefix = ""
        if blocks and blocks[0][0] == 0:
            prefix = PREFIX_TAGS[blocks[0]]
            blocks = blocks[1:]
        for b in blocks:
            if b[0] == 0:
                raise ValueError("only the first block may have an empty L-part")
        return cls(prefix, [Syllable(SYLLABLE_TAGS[b]) for b in blocks], final)

    def blocks(self):
        out = [TAG_BLOCKS[self.prefix]] if self.prefix else []
        out.extend(s.block for s in self.syllables)
        return out

    @property
    def t_count(self):
        return len(self.syllables) + (1 if self.prefix else 0)

    def key(self):
        return (self.prefix, tuple(s.tag for s in self.syllables), self.final)

    def __eq__(self, other):
        return isinstance(other, CanonicalForm) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"CanonicalForm({render_canonical(self)!r})"

    def __str__(self):
        return render_canonical(self)


class NormalizeStats:
    """Counters for the table operations performed by ``normalize``."""

    __slots__ = ("clifford_steps", "t_steps", "table_ops")

    def __init__(self):
        self.clifford_steps = 0
        self.t_steps = 0
        self.table_ops = 0


class _ParsedToken:
    __slots__ = ("tag", "count", "offset")

    def __init__(self, tag, count, offset):
        self.tag, self.count, self.offset = tag, count, offset


_TOKEN_RE = re.compile(r"\S+")


def _scan(text):
    for m in _TOKEN_RE.finditer(text):
        tok = m.group(0)
        off = len(text[: m.start()].encode("utf-8"))
        name, sep, rep = tok.partition(":")
        if name not in GATE_TAGS:
            raise CircuitSyntaxError(f"unknown token {name!r}", off)
        count = 1
        if sep:
            if not rep.isdigit() or int(rep) < 1:
                raise CircuitSyntaxError(f"bad repetition {rep!r}", off + len(name.encode("utf-8")) + 1)
            count = int(rep)
        yield _ParsedToken(name, count, off)


def parse_circuit(text):
    """Parse whitespace-separated gate tokens, with optional ``tok:k`` repeats."""
    gates = []
    for t in _scan(text):
        gates.extend([Gate(t.tag)] * t.count)
    return Word(gates)


def parse_input(text):
    """A circuit or a rendered canonical form, as a Word."""
    s = text.strip()
    if s.startswith("[") or s.startswith("C=") or s.startswith("C#"):
        return to_word(parse_canonical(s))
    return parse_circuit(text)


def normalize(w, stats=None):
    """Canonical form of the operator of ``w`` (gate-by-gate, linear time)."""
    tb = build_clifford_tables()
    if isinstance(w, str):
        w = parse_circuit(w)
    mul, coset, tconj, s_elems, lm = tb.mul, tb.coset, tb.tconj, tb.s_elems, tb.lm
    gen = tb.gen_index
    h2z = mul[lm[(0, 1)]][gen["Z"]]
    blocks = []
    final = 0
    ops = 0
    n_t = 0
    for g in w:
        tag = g.tag if isinstance(g, Gate) else g
        if tag != "T":
            final = mul[final][gen[tag]]
            ops += 1
            continue
        n_t += 1
        l, m, sp = coset[final]
        s2 = s_elems[tconj[sp]]
        ops += 2
        if not blocks or l != 0:
            blocks.append((l, m))
            final = s2
        elif m == 0:
            # T T = H2 T H2 Z
            lb, mb = blocks[-1]
            blocks[-1] = (lb, mb ^ 1)
            final = mul[h2z][s2]
            ops += 2
        else:
            # T H2 T = H2
            lb, mb = blocks.pop()
            final = mul[lm[(lb, mb ^ 1)]][s2]
            ops += 2
    if stats is not None:
        stats.clifford_steps += len(w) - n_t
        stats.t_steps += n_t
        stats.table_ops += ops
    return CanonicalForm.from_blocks(blocks, final)


def to_word(cf):
    tb = build_clifford_tables()
    gates = []
    for b in cf.blocks():
        gates.extend(_block_word(b))
    return Word(gates) + tb.word[cf.final]


@lru_cache(maxsize=None)
def _block_matrix(block):
    tb = build_clifford_tables()
    return tb.matrices[tb.lm[block]] * generator_matrix("T")


def blocks_matrix(blocks):
    m = Mat3.identity()
    for b in blocks:
        m = m * _block_matrix(b)
    return m


def to_matrix(cf):
    tb = build_clifford_tables()
    return blocks_matrix(cf.blocks()) * tb.matrices[cf.final]


def render_canonical(cf):
    tb = build_clifford_tables()
    parts = "".join(f"[{BLOCK_TAGS[b]}]" for b in cf.blocks())
    c = f"C={tb.name(cf.final)}"
    return f"{parts} {c}" if parts else c


_CANON_RE = re.compile(r"\s*\[([A-Z0-9]+)\]")


def parse_canonical(text):
    """Parse ``[H2T][SHT] C=H2·Z`` (or ``C#17``); a missing C means Id."""
    tb = build_clifford_tables()
    pos = 0
    blocks = []
    while True:
        m = _CANON_RE.match(text, pos)
        if not m:
            break
        tag = m.group(1)
        if tag not in TAG_BLOCKS:
            raise CircuitSyntaxError(f"unknown block {tag!r}", m.start(1))
        blocks.append(TAG_BLOCKS[tag])
        pos = m.end()
    rest = text[pos:].strip()
    if rest.startswith(","):
        rest = ""
    final = 0
    if rest:
        head = rest.split(",")[0].strip()
        try:
            if head.startswith("C="):
                final = tb.parse_name(head[2:])
            elif head.startswith("C#"):
                final = tb.parse_name(head)
            else:
                raise ValueError(head)
        except ValueError as exc:
            raise CircuitSyntaxError(f"bad final Clifford {head!r}", pos) from exc
    for i, b in enumerate(blocks):
        if i > 0 and b[0] == 0:
            raise CircuitSyntaxError(f"{BLOCK_TAGS[b]} may only appear first", pos)
    return CanonicalForm.from_blocks(blocks, final)


def count_canonical(n, mod_phase=True):
    """Number of canonical forms of T-count at most ``n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    num = 216 * (8 * 6**n - 3)
    if num % 5:
        raise InternalConsistencyError("canonical-form count is not an integer")
    c = num // 5
    return c if mod_phase else 3 * c


def enumerate_canonical_blocks(n):
    """Block sequences of every T-count from 0 to ``n``, in a fixed order."""
    yield ()
    for t in range(1, n + 1):
        for first in FIRST_BLOCK_ORDER:
            for rest in itertools.product(SYLLABLE_ORDER, repeat=t - 1):
                yield (first,) + rest


def final_cliffords(mod_phase):
    tb = build_clifford_tables()
    return list(tb.class_reps) if mod_phase else list(range(tb.size))


def enumerate_canonical(n, mod_phase=True):
    """All canonical forms with T-count at most ``n``."""
    finals = final_cliffords(mod_phase)
    for blocks in enumerate_canonical_blocks(n):
        for c in finals:
            yield CanonicalForm.from_blocks(blocks, c)


# ---------------------------------------------------------------------------
# Channel forms
# ---------------------------------------------------------------------------

AXES = ("Z", "X", "XZ", "XZ2")


def _third():
    # 1/3 = (gamma^6 / 3) / gamma^6
    g6 = zpow(GAMMA6, 6)
    if any(c % 3 for c in g6):
        raise InternalConsistencyError("3 does not divide gamma^6")
    return tuple(c // 3 for c in g6)


_G6_OVER_3 = _third()
# numerators of lambda_j over gamma^6
LAMBDA_NUMS = tuple(
    zmul(_G6_OVER_3, zadd(zadd(ONE6, zrot(ONE6, a)), zrot(ONE6, b))) for a, b in ((1, 8), (2, 7), (4, 5))
)


@lru_cache(maxsize=None)
def axis_matrix(axis):
    x, z = generator_matrix("X"), generator_matrix("Z")
    return {"Z": z, "X": x, "XZ": x * z, "XZ2": x * z * z}[axis]


@lru_cache(maxsize=None)
def tp_gate(axis, n=1):
    """The axis T gate ``lambda0 I + lambda1 P^n + lambda2 P^(2n)``."""
    if axis not in AXES:
        raise ValueError(f"unknown axis {axis!r}")
    if n % 3 == 0:
        raise ValueError("exponent must be 1 or 2")
    p = axis_matrix(axis) ** (n % 3)
    p2 = p * p
    ident = Mat3.identity()
    out = []
    for i in range(9):
        acc = ZERO6
        for lam, mat in zip(LAMBDA_NUMS, (ident, p, p2)):
            e = mat.nums[i]
            if any(e):
                acc = zadd(acc, zmul(lam, e))
        out.append(acc)
    return Mat3.from_raw(out, 6)


class ChannelForm:
    """``T_{P1^n1} ... T_{Pl^nl} C`` with consecutive axes distinct."""

    __slots__ = ("factors", "final")

    def __init__(self, factors=(), final=0):
        self.factors = tuple((a, int(n)) for a, n in factors)
        for a, n in self.factors:
            if a not in AXES or n not in (1, 2):
                raise ValueError(f"bad channel factor {(a, n)!r}")
        for (a, _), (b, _) in zip(self.factors, self.factors[1:]):
            if a == b:
                raise ValueError("consecutive channel axes must differ")
        self.final = int(final)

    @property
    def t_count(self):
        return len(self.factors)

    def key(self):
        return (self.factors, self.final)

    def __eq__(self, other):
        return isinstance(other, ChannelForm) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"ChannelForm({render_channel(self)!r})"

    def __str__(self):
        return render_channel(self)


class ChannelTables:
    """For each Clifford V: V T = T_{P^n} W with W Clifford."""

    def __init__(self):
        tb = build_clifford_tables()
        self.tp = {(a, n): tp_gate(a, n) for a in AXES for n in (1, 2)}
        tp_inv = {k: m.dagger() for k, m in self.tp.items()}
        # P^n up to phase -> (axis, n)
        mono = {}
        for a in AXES:
            for n in (1, 2):
                p = axis_matrix(a) ** n
                for j in range(3):
                    mono[p.scale_zeta(3 * j).key()] = (a, n)
        z = generator_matrix("Z")
        t = generator_matrix("T")
        self.peel = []
        for v in range(tb.size):
            vm = tb.matrices[v]
            conj = vm * z * vm.dagger()
            axn = mono.get(conj.key())
            if axn is None:
                raise ConversionError(f"Clifford {v} does not map Z to a Pauli power")
            w = tb.lookup(tp_inv[axn] * vm * t)
            if w is None:
                raise ConversionError(f"T_{axn} correction for Clifford {v} is not Clifford")
            self.peel.append((axn, w))
        # a Clifford R with R T R^-1 = T_{P^n} exactly
        self.conjugator = {}
        for v in range(tb.size):
            axn, w = self.peel[v]
            if w == v and axn not in self.conjugator:
                self.conjugator[axn] = v
        if len(self.conjugator) != 8:
            raise ConversionError("missing exact conjugator for some axis T gate")


@lru_cache(maxsize=None)
def channel_tables():
    return ChannelTables()


def to_channel(cf):
    tb = build_clifford_tables()
    ct = channel_tables()
    v = 0
    factors = []
    for b in cf.blocks():
        v = tb.mul[v][tb.lm[b]]
        axn, v = ct.peel[v]
        factors.append(axn)
    try:
        return ChannelForm(factors, tb.mul[v][cf.final])
    except ValueError as exc:
        raise ConversionError(str(exc)) from exc


def channel_word(ch):
    """A circuit for the channel form using exact conjugators R T R^-1."""
    tb = build_clifford_tables()
    ct = channel_tables()
    gates = Word()
    for axn in ch.factors:
        r = ct.conjugator[axn]
        gates = gates + tb.word[r] + Word("T") + tb.word[tb.inv[r]]
    return gates + tb.word[ch.final]


def from_channel(ch):
    cf = normalize(channel_word(ch))
    if cf.t_count != ch.t_count:
        raise ConversionError("channel conversion changed the T-count")
    return cf


def channel_matrix(ch):
    tb = build_clifford_tables()
    ct = channel_tables()
    m = Mat3.identity()
    for axn in ch.factors:
        m = m * ct.tp[axn]
    return m * tb.matrices[ch.final]


def render_channel(ch):
    tb = build_clifford_tables()
    parts = [f"T_{a}^{n}" for a, n in ch.factors]
    if ch.final != 0 or not parts:
        parts.append(f"C={tb.name(ch.final)}")
    return " ".join(parts)


_CH_RE = re.compile(r"T_(XZ2|XZ|X|Z)\^([12])$")


def parse_channel(text):
    tb = build_clifford_tables()
    factors = []
    final = 0
    offset = 0
    for m in _TOKEN_RE.finditer(text):
        tok = m.group(0)
        offset = m.start()
        fm = _CH_RE.match(tok)
        if fm:
            factors.append((fm.group(1), int(fm.group(2))))
        elif tok.startswith("C=") or tok.startswith("C#"):
            try:
                final = tb.parse_name(tok[2:] if tok.startswith("C=") else tok)
            except ValueError as exc:
                raise CircuitSyntaxError(f"bad final Clifford {tok!r}", offset) from exc
        else:
            raise CircuitSyntaxError(f"unknown channel token {tok!r}", offset)
    try:
        return ChannelForm(factors, final)
    except ValueError as exc:
        raise CircuitSyntaxError(str(exc), offset) from exc


__all__ = [
    "AXES",
    "CanonicalForm",
    "ChannelForm",
    "NormalizeStats",
    "Syllable",
    "channel_matrix",
    "count_canonical",
    "enumerate_canonical",
    "from_channel",
    "normalize",
    "parse_canonical",
    "parse_channel",
    "parse_circuit",
    "parse_input",
    "render_canonical",
    "render_channel",
    "tp_gate",
    "to_channel",
    "to_matrix",
    "to_word",
]
