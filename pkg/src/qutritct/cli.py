"""Command-line interface: normalize, synth, enumerate, count, verify, convert, bound."""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .core import Mat3, word_to_matrix
from .errors import (
    CircuitSyntaxError,
    ConversionError,
    DomainError,
    InternalConsistencyError,
    NotCliffordTError,
)
from .normal_form import (
    NormalizeStats,
    channel_matrix,
    count_canonical,
    enumerate_canonical,
    from_channel,
    normalize,
    parse_channel,
    parse_input,
    render_canonical,
    render_channel,
    to_channel,
    to_matrix,
)
from .oracle import (
    verify_optimality,
    verify_orthogonality,
    verify_symplectic,
    verify_uniqueness,
    write_summary,
)
from .rings import GAMMA6, zadd, zconj, zmul, zpow, zsub
from .synthesis import synthesize_from_matrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# Matrix files
# ---------------------------------------------------------------------------


def _coef(x):
    if isinstance(x, bool):
        raise UsageError("matrix coefficients must be integers")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError as exc:
            raise UsageError(f"bad matrix coefficient {x!r}") from exc
    raise UsageError(f"bad matrix coefficient {x!r}; use integers or 'p/q' strings")


def _v3_only(d):
    j = 0
    while d % 3 == 0:
        d //= 3
        j += 1
    return j if d == 1 else None


def _is_unitary_poly(nums, k):
    """U U^dagger = I for entries ``nums[i] / gamma^k`` over Q(zeta)."""
    gg = zmul(GAMMA6, zconj(GAMMA6))
    scale = zpow(gg, k)
    for i in range(3):
        for j in range(3):
            acc = (0,) * 6
            for t in range(3):
                acc = zadd(acc, zmul(nums[3 * i + t], zconj(nums[3 * j + t])))
            want = scale if i == j else (0,) * 6
            if any(zsub(acc, want)):
                return False
    return True


def load_matrix(data):
    """Parse a matrix document ``{"gamma_exp": k, "entries": [[[c0..c5] x3] x3]}``."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise UsageError(f"matrix file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "entries" not in data:
        raise UsageError("matrix file needs an 'entries' field")
    k = data.get("gamma_exp", 0)
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise UsageError("gamma_exp must be a nonnegative integer")
    rows = data["entries"]
    if not isinstance(rows, list) or len(rows) != 3 or any(not isinstance(r, list) or len(r) != 3 for r in rows):
        raise UsageError("entries must be a 3x3 array")
    nums = []
    for r in rows:
        for e in r:
            if not isinstance(e, list) or len(e) != 6:
                raise UsageError("each entry must list 6 zeta-basis coefficients")
            nums.append(tuple(_coef(c) for c in e))
    if not _is_unitary_poly(nums, k):
        raise NotCliffordTError("matrix is not exactly unitary", "unitarity")
    # clear powers of 3 from the denominators using 1/3 = (gamma^6/3)/gamma^6
    j = 0
    for n in nums:
        for c in n:
            jj = _v3_only(c.denominator)
            if jj is None:
                raise NotCliffordTError(f"coefficient {c} is outside Z[1/gamma]", "ring")
            j = max(j, jj)
    if j:
        u = tuple(c // 3 for c in zpow(GAMMA6, 6))
        mult = zpow(u, j)
        nums = [zmul(tuple(c * 3**j for c in n), mult) for n in nums]
        k += 6 * j
    return Mat3.from_raw([tuple(int(c) for c in n) for n in nums], k)


def dump_matrix(m):
    return {"gamma_exp": m.k, "entries": [[list(m.nums[3 * i + j]) for j in range(3)] for i in range(3)]}


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit(args, text, obj):
    if args.format == "machine":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def _max_t(args, default):
    n = args.n if args.n is not None else args.max_t
    if args.n is not None and args.max_t is not None and args.n != args.max_t:
        raise UsageError("conflicting values for n and --max-t")
    if n is None:
        n = default
    if n < 0:
        raise UsageError("T-count bound must be nonnegative")
    return n


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_normalize(args):
    text = args.circuit if args.circuit is not None else sys.stdin.read()
    w = parse_input(text)
    stats = NormalizeStats()
    cf = normalize(w, stats)
    m = to_matrix(cf)
    if args.check and m != word_to_matrix(w):
        raise InternalConsistencyError("normalized form does not reproduce the circuit matrix")
    r = render_canonical(cf)
    obj = {"canonical": r, "t_count": cf.t_count}
    lines = [f"{r}, T-count {cf.t_count}"]
    if args.matrix:
        obj["matrix"] = dump_matrix(m)
        lines.append(str(m))
    if args.trace:
        obj["table_ops"] = stats.table_ops
        obj["gates"] = len(w)
        lines.append(f"gates {len(w)}, table operations {stats.table_ops}")
    _emit(args, "\n".join(lines), obj)
    return EXIT_OK


def cmd_synth(args):
    u = load_matrix(_read_text(args.file))
    cf, trace = synthesize_from_matrix(u, check=args.check)
    if to_matrix(cf) != u:
        raise InternalConsistencyError("synthesized form does not reproduce the input matrix")
    r = render_canonical(cf)
    lines = [r]
    if args.trace:
        lines.extend(trace.lines())
    obj = {
        "canonical": r,
        "t_count": cf.t_count,
        "steps": [
            {"n": s.n, "prefix": s.prefix_name, "lde_before": s.lde_before, "lde_after": s.lde_after}
            for s in trace.steps
        ],
    }
    _emit(args, "\n".join(lines), obj)
    return EXIT_OK


def cmd_enumerate(args):
    n = _max_t(args, 1)
    for cf in enumerate_canonical(n, args.mod_phase):
        r = render_canonical(cf)
        if args.format == "machine":
            print(json.dumps({"canonical": r, "t_count": cf.t_count}))
        else:
            print(r)
    return EXIT_OK


def cmd_count(args):
    n = _max_t(args, 1)
    c = count_canonical(n, args.mod_phase)
    _emit(args, str(c), {"n": n, "mod_phase": args.mod_phase, "count": c})
    return EXIT_OK


_SUITES = {
    "uniqueness": lambda n, a: verify_uniqueness(n, a.mod_phase),
    "optimality": lambda n, a: verify_optimality(n),
    "orthogonality": lambda n, a: verify_orthogonality(a.samples, seed=a.seed),
    "symplectic": lambda n, a: verify_symplectic(a.samples, seed=a.seed),
}


def cmd_verify(args):
    n = _max_t(args, 2)
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    reports = [_SUITES[s](n, args) for s in names]
    for rep in reports:
        if args.format == "machine":
            print(rep.to_json())
        else:
            print("\n".join(rep.lines()))
    if args.summary:
        write_summary(reports, args.summary)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_INTERNAL


def _looks_like_channel(text):
    return any(tok.startswith("T_") for tok in text.split())


def cmd_convert(args):
    text = args.form
    direction = args.to
    if direction is None:
        direction = "canonical" if _looks_like_channel(text) else "channel"
    if direction == "channel":
        cf = normalize(parse_input(text))
        ch = to_channel(cf)
        if channel_matrix(ch) != to_matrix(cf) or ch.t_count != cf.t_count:
            raise ConversionError("channel form does not match the canonical form")
        r = render_channel(ch)
    else:
        ch = parse_channel(text)
        cf = from_channel(ch)
        if channel_matrix(ch) != to_matrix(cf):
            raise ConversionError("canonical form does not match the channel form")
        r = render_canonical(cf)
    _emit(args, r, {"direction": direction, "result": r})
    return EXIT_OK


def bound_constant():
    """K = -log_6(5 sqrt(3) pi / 72)."""
    return -math.log(5 * math.sqrt(3) * math.pi / 72, 6)


def t_count_lower_bound(eps):
    if not 0 < eps < 1:
        raise UsageError("epsilon must lie in (0, 1)")
    k = bound_constant()
    return max(0, math.ceil(8 * math.log(1 / eps, 6) - k)), k


def cmd_bound(args):
    n, k = t_count_lower_bound(args.epsilon)
    _emit(args, f"n_min={n} K={k:.6f}", {"epsilon": args.epsilon, "n_min": n, "K": k})
    return EXIT_OK


# ---------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--format", choices=("text", "machine"), default="text")


def _add_n(p):
    p.add_argument("n", nargs="?", type=int, help="maximum T-count")
    p.add_argument("--max-t", type=int, dest="max_t")


def build_parser():
    parser = _Parser(prog="qutritct", description="Canonical forms for single-qutrit Clifford+T operators.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("normalize", help="rewrite a circuit into canonical form")
    p.add_argument("circuit", nargs="?", help="circuit text (read from stdin if omitted)")
    p.add_argument("--matrix", action="store_true", help="also print the exact matrix")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--check", action="store_true", help="compare matrices before printing")
    _add_common(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("synth", help="canonical form of an exact matrix")
    p.add_argument("file", help="matrix file (JSON), or - for stdin")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--check", action="store_true", help="cross-check every prefix choice")
    _add_common(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("enumerate", help="list canonical forms up to a T-count")
    _add_n(p)
    p.add_argument("--mod-phase", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", help="number of canonical forms up to a T-count")
    _add_n(p)
    p.add_argument("--mod-phase", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(_SUITES) + ["all"])
    _add_n(p)
    p.add_argument("--mod-phase", action="store_true")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--summary", help="write a JSON summary to this path")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("convert", help="convert between canonical and channel forms")
    p.add_argument("form")
    p.add_argument("--to", choices=("channel", "canonical"))
    _add_common(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("bound", help="T-count lower bound for approximation error epsilon")
    p.add_argument("epsilon", type=float)
    _add_common(p)
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CircuitSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotCliffordTError, DomainError) as exc:
        print(f"error: not a Clifford+T operator: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (InternalConsistencyError, ConversionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
