"""
Command-line entry point ``qsymp``.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage error,
3 refused input (e.g. a non-dominant highest weight), 4 internal error.
"""

import argparse
import json
import random
import sys
import time
import traceback

from . import classical
from .gtrep import WeightError, check_gl_relations, gl_module, module_manifest
from .rewrite import (LinComb, RewriteError, StepBudgetExceeded, normalize_gl,
                      normalize_local, normalize_sp, parse_expr, random_sp_word)
from .scalar import ONE, Q
from .tensor import (OpMatrix, build_R, build_Rprime, check_reflection,
                     check_yang_baxter)
from .twisted import (HighestWeight, ModuleError, NonDominantError, SPModule, build_L,
                      classical_character, embed_S, module_character, sp2_module,
                      verify_module, verma_truncated, weyl_dim_sp)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3
EXIT_INTERNAL = 4

DEFAULT_SEED = 1


class UsageError(Exception):
    pass


def _ints(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _signs(text):
    out = []
    for x in text.split(","):
        x = x.strip()
        if x in ("+", "+1", "1"):
            out.append(1)
        elif x in ("-", "-1"):
            out.append(-1)
        else:
            raise UsageError(f"signs must be + or -, got {x!r}")
    return tuple(out)


def _sign(text):
    s = _signs(text)
    if len(s) != 1:
        raise UsageError("expected a single sign")
    return s[0]


def _emit(out, args, payload, human):
    if getattr(args, "json", False):
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write(human.rstrip("\n") + "\n")


def _write_json(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _header(name, seed=None, **fields):
    parts = [f"qsymp {name}"]
    parts += [f"{k}={v}" for k, v in fields.items()]
    if seed is not None:
        parts.append(f"seed={seed}")
    return "# " + " ".join(parts)


def _matrix_text(name, m):
    lines = [f"{name}: {m.rows}x{m.cols}"]
    for (r, c), v in m.items():
        lines.append(f"  ({r + 1},{c + 1}) {v}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_normalize(args, out):
    algebra = args.algebra.upper()
    size = args.n
    if size < 1:
        raise UsageError("--n must be positive")
    x = parse_expr(args.expr, algebra, size)
    if args.strategy == "insertion":
        nf = normalize_sp(x, size) if algebra == "SP" else normalize_gl(x, size)
    else:
        nf = normalize_local(x, algebra, size, args.strategy)
    label = "n" if algebra == "SP" else "N"
    lines = [_header("normalize", algebra=args.algebra, **{label: size}, strategy=args.strategy)]
    if nf.is_zero():
        lines.append("0")
    for w, c in nf.items():
        lines.append(f"{w}\t{c}")
    payload = {"algebra": algebra, label: size, "expr": args.expr, "terms": nf.to_json()}
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_rmatrix(args, out):
    if args.n < 1:
        raise UsageError("--n must be positive")
    m = build_Rprime(args.n) if args.prime else build_R(args.n)
    name = "R'" if args.prime else "R"
    payload = m.to_json()
    if args.out:
        _write_json(args.out, payload)
    text = _header("rmatrix", N=args.n, prime=args.prime) + "\n" + _matrix_text(name, m)
    ybe = check_yang_baxter(build_R(args.n), args.n).is_zero()
    text += f"\nYang-Baxter residual zero: {ybe}"
    _emit(out, args, payload, text)
    return EXIT_OK if ybe else EXIT_CHECK_FAILED


def cmd_gt(args, out):
    nu = _ints(args.nu)
    gens = [g.strip().replace(" ", "") for g in args.gen] if args.gen else None
    try:
        manifest = module_manifest(nu, gens)
    except KeyError as exc:
        raise UsageError(str(exc.args[0]))
    if args.out:
        _write_json(args.out, manifest)
    V = gl_module(nu)
    lines = [_header("gt", nu=",".join(map(str, nu))), f"dim {V.dim}", "patterns (top row first):"]
    for k, p in enumerate(V.basis):
        lines.append(f"  {k + 1}: {p}")
    if gens:
        from .tensor import OpMatrix as _M
        for g in gens:
            lines.append(_matrix_text(g, _M.from_json(manifest["matrices"][g])))
    _emit(out, args, manifest, "\n".join(lines))
    return EXIT_OK


def _module_text(title, mod):
    lines = [title, f"dim {mod.dim}"]
    if mod.weights is not None:
        lines.append("basis: " + ", ".join(mod.labels))
    for (i, j), m in sorted(mod.matrices.items()):
        if not m.is_zero():
            lines.append(_matrix_text(f"s[{i},{j}]", m))
    zeros = [f"s[{i},{j}]" for (i, j), m in sorted(mod.matrices.items()) if m.is_zero()]
    if zeros:
        lines.append("zero: " + " ".join(zeros))
    return "\n".join(lines)


def cmd_build_l(args, out):
    m = _ints(args.m)
    signs = _signs(args.signs) if args.signs else None
    if signs is not None and len(signs) != len(m):
        raise UsageError("--signs must have one entry per --m entry")
    try:
        hw = HighestWeight.of(m, signs)
    except ValueError as exc:
        raise UsageError(str(exc))
    mod = build_L(hw)
    payload = mod.to_json()
    if args.out:
        _write_json(args.out, payload)
    expected = weyl_dim_sp(hw.classical_weight())
    text = _header("build-l", m=args.m, signs=args.signs or "+") + "\n" + _module_text(
        f"L{hw}", mod) + f"\nclassical dimension {expected}"
    _emit(out, args, payload, text)
    return EXIT_OK


def cmd_sp2(args, out):
    sigma = _sign(args.sigma)
    if args.m < 1:
        raise UsageError("--m must be a positive integer")
    mod = sp2_module(args.m, sigma)
    payload = mod.to_json()
    if args.out:
        _write_json(args.out, payload)
    text = _header("sp2", m=args.m, sigma=sigma) + "\n" + _module_text(
        f"L({'-' if sigma < 0 else ''}q^{args.m})", mod)
    _emit(out, args, payload, text)
    return EXIT_OK


def cmd_verma(args, out):
    m = _ints(args.m)
    if args.degree < 0:
        raise UsageError("--degree must be non-negative")
    try:
        hw = HighestWeight.of(m)
    except ValueError as exc:
        raise UsageError(str(exc))
    table = verma_truncated(hw, args.degree)
    rows = sorted(table.items(), key=lambda t: (classical.height(t[0]), t[0]))
    lines = [_header("verma", m=args.m, degree=args.degree),
             "depth omega -> multiplicity (weight q^(m - omega))"]
    lines += [f"  {list(om)} -> {c}" for om, c in rows]
    payload = {"m": list(m), "degree": args.degree,
               "multiplicities": [[list(om), c] for om, c in rows]}
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args, out):
    try:
        with open(args.module, encoding="utf-8") as fh:
            data = json.load(fh)
        mod = SPModule.from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        raise UsageError(f"cannot read module {args.module}: {exc}")
    report = verify_module(mod, seed=args.seed)
    lines = [_header("verify", module=args.module, seed=args.seed), f"dim {mod.dim}"]
    if report:
        names = sorted({r["relation"] for r in report})
        lines.append(f"FAIL: {len(report)} relation instance(s) violated: {', '.join(names)}")
        for r in report[:50]:
            lines.append(f"  {r['relation']} {r['indices']} max|residual| at q0={r['q0']}: "
                         f"{r['max_abs_residual']}")
    else:
        lines.append("PASS: all defining relations hold exactly")
    _emit(out, args, {"pass": not report, "failures": report}, "\n".join(lines))
    return EXIT_CHECK_FAILED if report else EXIT_OK


def dominant_tuples(n, max_m):
    def rec(prefix):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        lo = prefix[-1] if prefix else 1
        for x in range(lo, max_m + 1):
            yield from rec(prefix + [x])
    return list(rec([]))


def cmd_dims(args, out):
    if args.n < 1 or args.max_m < 1:
        raise UsageError("--n and --max-m must be positive")
    rows = []
    ok = True
    for m in dominant_tuples(args.n, args.max_m):
        hw = HighestWeight.of(m)
        dim = build_L(hw).dim
        weyl = weyl_dim_sp(hw.classical_weight())
        ok &= dim == weyl
        rows.append((m, dim, weyl))
    lines = [_header("dims", n=args.n, max_m=args.max_m), "m -> dim L (classical)"]
    lines += [f"  {m} -> {d} ({w}){'' if d == w else '  MISMATCH'}" for m, d, w in rows]
    payload = {"n": args.n, "max_m": args.max_m,
               "rows": [{"m": list(m), "dim": d, "weyl": w} for m, d, w in rows]}
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------

def selftest_checks(seed=DEFAULT_SEED, words=100):
    """(name, callable) pairs; each callable returns (passed, detail)."""

    def ybe():
        bad = [N for N in (2, 3, 4) if not check_yang_baxter(build_R(N), N).is_zero()]
        return not bad, f"failing N: {bad}" if bad else "N=2,3,4"

    def gl_rel():
        bad = []
        for N in (2, 3, 4):
            for nu in [(1,) + (0,) * (N - 1), (1, 1) + (0,) * (N - 2), (2,) + (0,) * (N - 1)]:
                if check_gl_relations(gl_module(nu)):
                    bad.append(nu)
        return not bad, f"failing nu: {bad}" if bad else "N=2,3,4, three weights each"

    def rootv():
        bad = []
        for nu in [(1, 0, 0, 0), (1, 1, 0, 0)]:
            V = gl_module(nu)
            for i in range(1, 5):
                for j in range(1, 5):
                    if abs(i - j) >= 2 and len(set(V.root_vector_all_k(i, j).values())) != 1:
                        bad.append((nu, i, j))
        return not bad, f"{bad}" if bad else "all intermediate indices agree"

    def reflection():
        bad = []
        for nu in [(1, 0), (2, 0), (1, 0, 0, 0), (1, 1, 0, 0)]:
            N = len(nu)
            if not check_reflection(build_R(N), build_Rprime(N), embed_S(nu), N).is_zero():
                bad.append(nu)
        return not bad, f"failing nu: {bad}" if bad else "4 modules"

    def sp2():
        bad = []
        for m in range(1, 6):
            for s in (1, -1):
                mod = sp2_module(m, s)
                spec = sorted(str(x) for x in mod.eigenvalues(1))
                want = sorted(str(Q ** (m - 2 * k) * s) for k in range(m))
                if mod.dim != m or spec != want or verify_module(mod):
                    bad.append((m, s))
        return not bad, f"{bad}" if bad else "m=1..5, both signs"

    def dims_and_chars():
        bad = []
        for m in [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)]:
            hw = HighestWeight.of(m)
            L = build_L(hw)
            if L.dim != weyl_dim_sp(hw.classical_weight()):
                bad.append((m, "dim"))
            if module_character(L) != classical_character(hw):
                bad.append((m, "character"))
            if verify_module(L, seed=seed):
                bad.append((m, "relations"))
        return not bad, f"{bad}" if bad else "six rank-2 modules"

    def refusal():
        try:
            build_L(HighestWeight.of((2, 1)))
        except NonDominantError:
            return True, "(2,1) refused"
        return False, "(2,1) was built"

    def verma():
        R = classical.RootSystemC(2).positive
        for d in range(5):
            table = verma_truncated(HighestWeight.of((1, 2)), d)
            for om, c in table.items():
                if classical.partition_count(om, R, d) != c:
                    return False, f"d={d} omega={om}"
        if any(c != 1 for c in verma_truncated(HighestWeight.of((3,)), 6).values()):
            return False, "rank one multiplicity above 1"
        return True, "n=2 d<=4, n=1"

    def rewriter():
        rng = random.Random(seed)
        mod = build_L(HighestWeight.of((1, 2)))
        for _ in range(words):
            n = rng.choice((1, 2))
            w = random_sp_word(rng, n)
            x = LinComb.word(w)
            nf = normalize_sp(x, n)
            if normalize_sp(nf, n) != nf:
                return False, f"not idempotent on {w}"
            if normalize_local(x, "SP", n, "leftmost") != nf:
                return False, f"strategies disagree on {w}"
            if n == 2 and mod.act(x) != mod.act(nf):
                return False, f"representation mismatch on {w}"
        return True, f"{words} random words"

    return [("yang-baxter", ybe), ("gl-relations", gl_rel), ("root-vectors", rootv),
            ("reflection", reflection), ("sp2-modules", sp2), ("dims-characters", dims_and_chars),
            ("non-dominant-refusal", refusal), ("verma", verma), ("rewriter", rewriter)]


def cmd_selftest(args, out):
    results = []
    ok = True
    for name, fn in selftest_checks(args.seed, args.words):
        t0 = time.time()
        passed, detail = fn()
        results.append({"check": name, "pass": passed, "detail": detail,
                        "seconds": round(time.time() - t0, 2)})
        ok &= passed
    lines = [_header("selftest", seed=args.seed, words=args.words)]
    for r in results:
        lines.append(f"{'PASS' if r['pass'] else 'FAIL'} {r['check']}: {r['detail']}")
    _emit(out, args, {"pass": ok, "results": results}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="qsymp",
        description="Exact computations in U_q(gl_N) and the twisted algebra U'_q(sp_2n).",
        epilog="exit codes: 0 ok, 1 check failed, 2 usage error, 3 refused input, "
               "4 internal error")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("--json", action="store_true", help="print JSON instead of text")
        sp.set_defaults(func=fn)
        return sp

    sp = add("normalize", cmd_normalize, "reduce an expression to PBW normal form")
    sp.add_argument("--algebra", choices=["sp", "gl"], required=True)
    sp.add_argument("--n", type=int, required=True, help="rank n (sp) or N (gl)")
    sp.add_argument("--expr", required=True, help='e.g. "s[1,1]*s[2,2]"')
    sp.add_argument("--strategy", default="insertion",
                    choices=["insertion", "leftmost", "rightmost"])

    sp = add("rmatrix", cmd_rmatrix, "print R (or R') for C^N (x) C^N")
    sp.add_argument("--n", type=int, required=True, help="dimension N")
    sp.add_argument("--prime", action="store_true")
    sp.add_argument("--out", help="write the matrix as JSON")

    sp = add("gt", cmd_gt, "Gelfand-Tsetlin module V(nu)")
    sp.add_argument("--nu", required=True, help="comma-separated, weakly decreasing")
    sp.add_argument("--gen", action="append", help="generator to print, e.g. t[2,1]")
    sp.add_argument("--out", help="write the module manifest as JSON")

    sp = add("build-l", cmd_build_l, "build L(lambda) for dominant lambda")
    sp.add_argument("--m", required=True, help="exponents m_1,...,m_n")
    sp.add_argument("--signs", help="signs, e.g. +,-")
    sp.add_argument("--out", help="write the module as JSON")

    sp = add("sp2", cmd_sp2, "closed-form rank-one module")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--sigma", default="+1")
    sp.add_argument("--out", help="write the module as JSON")

    sp = add("verma", cmd_verma, "weight multiplicities of a truncated Verma module")
    sp.add_argument("--m", required=True)
    sp.add_argument("--degree", type=int, required=True)

    sp = add("verify", cmd_verify, "check all defining relations on a module file")
    sp.add_argument("--module", required=True)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                    help="selects the sample point for residual sizes")

    sp = add("dims", cmd_dims, "dimension table of L(lambda) against the classical formula")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-m", type=int, required=True)

    sp = add("selftest", cmd_selftest, "run the invariant suite at desk scale")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--words", type=int, default=100, help="random words for the rewriter check")
    return p


def run(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, RewriteError, WeightError) as exc:
        err.write(f"qsymp {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except NonDominantError as exc:
        err.write(f"qsymp {args.command}: refused: {exc}; L(lambda) is infinite-dimensional\n")
        return EXIT_REFUSED
    except (StepBudgetExceeded, ModuleError) as exc:
        err.write(f"qsymp {args.command}: internal error: {exc}\n")
        return EXIT_INTERNAL
    except Exception:
        err.write(f"qsymp {args.command}: internal error\n")
        traceback.print_exc(file=err)
        return EXIT_INTERNAL


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
