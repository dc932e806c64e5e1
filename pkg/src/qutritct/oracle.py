"""Brute-force ground truth: every Clifford+T operator by minimal T-count.

The breadth-first search works on right Clifford cosets.  Operators of
minimal T-count ``k`` form a union of cosets ``R C`` (C ranging over the
648 Cliffords), so level ``k + 1`` is exhausted by the products
``R C T`` for every level-``k`` coset representative ``R`` and every
Clifford ``C``.  Each new coset is then expanded into its 648 operators.
"""

from __future__ import annotations

import json
import random

from .adjoint import adjoint_of_word, symplectic_check
from .core import Word, build_clifford_tables, generator_matrix
from .errors import InternalConsistencyError
from .normal_form import CanonicalForm, count_canonical, enumerate_canonical, normalize, render_canonical, to_matrix


class OperatorTable:
    """Exact matrix key -> (coset representative id, right Clifford, minimal T-count)."""

    def __init__(self):
        self.entries = {}
        self.reps = []  # (Mat3, Word, level)
        self.levels = []  # number of operators whose minimal T-count is k

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.entries

    def t_count(self, m):
        got = self.entries.get(m.key())
        return None if got is None else got[2]

    def word(self, key):
        """A circuit for the stored operator built from the BFS path."""
        rep, c, _ = self.entries[key]
        return self.reps[rep][1] + build_clifford_tables().word[c]

    def matrix(self, key):
        rep, c, _ = self.entries[key]
        return self.reps[rep][0] * build_clifford_tables().matrices[c]

    def items(self):
        """Yield ``(key, minimal T-count)`` in insertion order."""
        for key, (_, _, t) in self.entries.items():
            yield key, t

    def cumulative(self, n):
        return sum(self.levels[: n + 1])

    def _add_coset(self, rep, word, level):
        tb = build_clifford_tables()
        rid = len(self.reps)
        self.reps.append((rep, word, level))
        added = 0
        for c, cm in enumerate(tb.matrices):
            key = (rep * cm).key()
            if key in self.entries:
                raise InternalConsistencyError("right Clifford cosets overlap in the BFS table")
            self.entries[key] = (rid, c, level)
            added += 1
        return added


def bfs_operators(max_t):
    """All operators with T-count at most ``max_t``, stored with their minimal T-count."""
    if max_t < 0:
        raise ValueError("max_t must be nonnegative")
    tb = build_clifford_tables()
    t = generator_matrix("T")
    tw = Word("T")
    table = OperatorTable()
    table.levels.append(table._add_coset(tb.matrices[0], Word(), 0))
    frontier = [0]
    for level in range(1, max_t + 1):
        new = []
        size = 0
        for rid in frontier:
            rm, rw, _ = table.reps[rid]
            for c, cm in enumerate(tb.matrices):
                cand = rm * cm * t
                if cand.key() in table.entries:
                    continue
                new.append(len(table.reps))
                size += table._add_coset(cand, rw + tb.word[c] + tw, level)
        table.levels.append(size)
        frontier = new
    return table


class Report:
    """Outcome of a verification suite; violations are data, not errors."""

    def __init__(self, suite, n):
        self.suite = suite
        self.n = n
        self.counts = {}
        self.violations = []
        self.summary = ""

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        return {
            "suite": self.suite,
            "n": self.n,
            "ok": self.ok,
            "summary": self.summary,
            "counts": dict(self.counts),
            "violations": list(self.violations),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def lines(self):
        head = f"{self.suite} n={self.n}: {'ok' if self.ok else 'FAILED'}"
        out = [f"{head}, {self.summary}" if self.summary else head]
        for k, v in self.counts.items():
            out.append(f"  {k}: {v}")
        for v in self.violations[:20]:
            out.append(f"  violation: {v}")
        if len(self.violations) > 20:
            out.append(f"  ... {len(self.violations) - 20} more violations")
        return out


def write_summary(reports, path):
    """Write the machine-readable summary of several reports to ``path``."""
    data = {"reports": [r.to_dict() for r in reports], "ok": all(r.ok for r in reports)}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def verify_uniqueness(n, mod_phase=False):
    """Check that all canonical forms of T-count at most ``n`` give distinct matrices."""
    rep = Report("uniqueness", n)
    tb = build_clifford_tables()
    seen = {}
    total = 0
    last_blocks = None
    v = None
    for cf in enumerate_canonical(n, mod_phase):
        blocks = cf.blocks()
        if blocks != last_blocks:
            v = to_matrix(CanonicalForm.from_blocks(blocks, 0))
            last_blocks = blocks
        m = v * tb.matrices[cf.final]
        key = m.key()
        total += 1
        other = seen.get(key)
        if other is not None:
            rep.violations.append(f"{render_canonical(other)} and {render_canonical(cf)} give the same matrix")
        else:
            seen[key] = cf
    expected = count_canonical(n, mod_phase)
    rep.counts = {"forms": total, "distinct": len(seen), "collisions": total - len(seen), "expected": expected}
    rep.summary = f"{len(seen)} distinct matrices, {total - len(seen)} collisions"
    if total != expected:
        rep.violations.append(f"enumerated {total} forms, formula gives {expected}")
    return rep


def verify_optimality(n, table=None):
    """Compare BFS minimal T-counts with the T-counts of canonical forms."""
    rep = Report("optimality", n)
    if table is None:
        table = bfs_operators(n)
    forms = set()
    for key, t in table.items():
        cf = normalize(table.word(key))
        forms.add(cf)
        if cf.t_count != t:
            rep.violations.append(f"{render_canonical(cf)} has T-count {cf.t_count} but BFS minimum is {t}")
    expected = [count_canonical(k, mod_phase=False) for k in range(n + 1)]
    cumulative = [table.cumulative(k) for k in range(n + 1)]
    rep.counts = {
        "operators": len(table),
        "levels": list(table.levels),
        "cumulative": cumulative,
        "expected_cumulative": expected,
        "distinct_forms": len(forms),
    }
    rep.summary = f"{len(table)} operators, {len(rep.violations)} T-count mismatches"
    if cumulative != expected:
        rep.violations.append(f"BFS cumulative sizes {cumulative} differ from formula {expected}")
    if len(forms) != len(table):
        rep.violations.append(f"{len(table)} operators map to {len(forms)} canonical forms")
    return rep


def random_word(rng, length, alphabet=("H", "S", "T")):
    return Word([rng.choice(alphabet) for _ in range(length)])


def verify_orthogonality(samples=100, max_len=40, seed=0):
    """Adjoints of random words are orthogonal with determinant 1."""
    rep = Report("orthogonality", samples)
    rng = random.Random(seed)
    for _ in range(samples):
        w = random_word(rng, rng.randint(0, max_len))
        a = adjoint_of_word(w)
        if not a.is_orthogonal():
            rep.violations.append(f"adjoint of {w} is not orthogonal")
        elif a.det() != 1:
            rep.violations.append(f"adjoint of {w} has determinant -1")
    rep.summary = f"{samples} random words, {len(rep.violations)} failures"
    rep.counts = {"words": samples, "max_len": max_len, "seed": seed}
    return rep


def verify_symplectic(samples=100, max_len=40, seed=0):
    """Diagonal words give symplectic adjoints; H does not."""
    rep = Report("symplectic", samples)
    rng = random.Random(seed)
    for _ in range(samples):
        w = random_word(rng, rng.randint(0, max_len), ("T", "S", "Z"))
        # S is diagonal up to its phase, so every such word is diagonal
        if not symplectic_check(adjoint_of_word(w)):
            rep.violations.append(f"diagonal word {w} is not symplectic")
    if symplectic_check(adjoint_of_word(Word("H"))):
        rep.violations.append("H passes the symplectic check")
    rep.summary = f"{samples} diagonal words and H, {len(rep.violations)} failures"
    rep.counts = {"diagonal_words": samples, "max_len": max_len, "seed": seed}
    return rep


__all__ = [
    "OperatorTable",
    "Report",
    "bfs_operators",
    "random_word",
    "verify_optimality",
    "verify_orthogonality",
    "verify_symplectic",
    "verify_uniqueness",
    "write_summary",
]
