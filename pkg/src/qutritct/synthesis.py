"""Exact synthesis of canonical forms from matrices or adjoint representations.

Each iteration reads the leftmost syllable off the residues of the adjoint,
strips it with ``(M'T)^T`` and checks that the least denominator exponent of
the ++ quadrant dropped by exactly 2.  At exponent 0 what remains is a
Clifford adjoint.
"""

from __future__ import annotations

from .adjoint import PREFIXES, Adj8, adjoint_from_matrix, adjoint_tables, prefix_discriminator
from .core import LM_NAMES, Mat3, build_clifford_tables
from .errors import InternalConsistencyError, NotCliffordTError
from .normal_form import CanonicalForm, blocks_matrix


class SynthesisStep:
    __slots__ = ("n", "prefix", "lde_before", "lde_after")

    def __init__(self, n, prefix, lde_before, lde_after):
        self.n = n
        self.prefix = prefix
        self.lde_before = lde_before
        self.lde_after = lde_after

    @property
    def prefix_name(self):
        return LM_NAMES[self.prefix] or "Id"

    def __repr__(self):
        return f"SynthesisStep(n={self.n}, prefix={self.prefix_name}, lde {self.lde_before}->{self.lde_after})"


class SynthesisTrace:
    """Per-step record of a synthesis run."""

    def __init__(self):
        self.steps = []
        self.final_clifford = None
        self.phase_resolved = False
        self.matmuls = 0
        self.residue_evals = 0

    @property
    def arithmetic_ops(self):
        return self.matmuls + self.residue_evals

    def lines(self):
        out = []
        for i, s in enumerate(self.steps, 1):
            out.append(f"step {i}: n={s.n} prefix={s.prefix_name} LDE {s.lde_before} -> {s.lde_after}")
        return out


def _cross_check(a, k, chosen):
    """Try every prefix and confirm that only ``chosen`` drops the LDE by 2."""
    at = adjoint_tables()
    hits = []
    for p in PREFIXES:
        if at.step[p].__matmul__(a).quadrant_lde("++") == k - 2:
            hits.append(p)
    if hits != [chosen]:
        raise InternalConsistencyError(f"discriminator chose {chosen} but LDE drop test gives {hits}")


def _synthesize(a, check=False):
    at = adjoint_tables()
    trace = SynthesisTrace()
    blocks = []
    k = a.quadrant_lde("++")
    if k % 2:
        raise NotCliffordTError(f"LDE of the ++ quadrant is odd ({k})", "lde")
    while k > 0:
        n = k // 2
        p = prefix_discriminator(a, n)
        trace.residue_evals += 32
        if blocks and p[0] == 0:
            raise NotCliffordTError("inner syllable has an empty L-part", "discriminator")
        if check:
            _cross_check(a, k, p)
        a = at.step[p] @ a
        trace.matmuls += 1
        k2 = a.quadrant_lde("++")
        trace.residue_evals += 16
        if k2 != k - 2:
            raise NotCliffordTError(f"LDE went from {k} to {k2} instead of {k - 2}", "lde")
        trace.steps.append(SynthesisStep(n, p, k, k2))
        blocks.append(p)
        k = k2
    c = at.clifford_class(a)
    if c is None:
        raise NotCliffordTError("remaining adjoint is not a Clifford adjoint", "final")
    trace.final_clifford = c
    return blocks, c, trace


def synthesize_from_adjoint(a, check=False):
    """Canonical form (final Clifford = phase-class representative) and trace."""
    if not isinstance(a, Adj8):
        raise TypeError("synthesize_from_adjoint expects an Adj8")
    if not a.is_orthogonal():
        raise NotCliffordTError("adjoint matrix is not orthogonal", "unitarity")
    blocks, c, trace = _synthesize(a, check)
    return CanonicalForm.from_blocks(blocks, c), trace


def synthesize_from_matrix(u, check=False):
    """Canonical form of an exact Clifford+T unitary, including its global phase."""
    if not isinstance(u, Mat3):
        raise TypeError("synthesize_from_matrix expects a Mat3")
    if not u.is_unitary():
        raise NotCliffordTError("matrix is not exactly unitary", "unitarity")
    a = adjoint_from_matrix(u)
    blocks, rep, trace = _synthesize(a, check)
    tb = build_clifford_tables()
    v = blocks_matrix(blocks)
    c = tb.lookup(v.dagger() * u)
    if c is None or tb.phase_rep[c] != rep:
        raise NotCliffordTError("no Clifford in the phase class matches exactly", "phase")
    trace.final_clifford = c
    trace.phase_resolved = True
    return CanonicalForm.from_blocks(blocks, c), trace
