"""Command-line interface: build, testset, verify, bench, mc (and sample).

Exit status: 0 accept / success, 1 reject, 2 usage or data error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .codes import (ENUMERATION_BUDGET, LinearCode, hamming_code, load_code,
                    min_distance_exhaustive, random_code, rm_code, rs_code,
                    save_code, syndrome_direct)
from .fmatrix import Matrix, Vector, mat_vec, matrix_from_lines, matrix_to_lines, solve
from .gf import field_from_order
from .opcount import OpCounter
from .rng import Sampler, derive_seed, fresh_seed
from .testset import (TestSet, build_code_testset, build_mds_testset,
                      load_testset, non_orthogonal_fraction, save_testset)
from .verifier import (VerifierConfig, determine_codeword, error_bound,
                       mc_counts, row_testset)

EXIT_ACCEPT, EXIT_REJECT, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, default=str))
    else:
        print(text)


def _seed(args) -> int:
    if args.seed is None:
        args.seed = fresh_seed()
        print(f"seed {args.seed}", file=sys.stderr)
    return args.seed


# ---------------------------------------------------------------------------
# build


def _build_code(args) -> LinearCode:
    kind = args.kind
    if kind == "rs":
        return rs_code(field_from_order(args.q), args.n, args.k)
    if kind == "rm":
        return rm_code(args.q, args.r, args.m)
    if kind == "random":
        return random_code(field_from_order(args.q), args.n, args.k, args.seed)
    if kind == "hamming":
        return hamming_code(3 if args.r is None else args.r)
    raise UsageError(f"unknown code family {kind!r}")


def cmd_build(args) -> int:
    C = _build_code(args)
    source = "analytic" if C.distance is not None else "unknown"
    if C.field.order ** C.k <= ENUMERATION_BUDGET and C.k > 0:
        d = min_distance_exhaustive(C)
        if C.distance is not None and d != C.distance:
            raise AssertionError(f"enumerated distance {d} != {C.distance}")
        C = LinearCode(C.generator, C.parity_check, C.label, d)
        source = "exhaustive"
    if args.out:
        save_code(C, args.out)
    d = "?" if C.distance is None else C.distance
    _emit(args, {"label": C.label, "field": C.field.name, "n": C.n, "k": C.k,
                 "d": C.distance, "distance_source": source, "path": args.out},
          f"{C.label} over {C.field.name}: [{C.n},{C.k},{d}] d={d} ({source})")
    return EXIT_ACCEPT


# ---------------------------------------------------------------------------
# testset


def cmd_testset(args) -> int:
    C = load_code(args.code)
    if args.mds:
        p_txt, u_txt = args.mds
        S = build_mds_testset(C.parity_check, Fraction(p_txt), int(u_txt))
    else:
        outer = load_code(args.outer)
        S = build_code_testset(C.parity_check, outer)
    if args.out:
        save_testset(S, args.out)
    _emit(args, {"nbar": S.nbar, "u": S.u, "n": S.n,
                 "designed_p": str(S.designed_p), "outer": S.outer_label,
                 "path": args.out},
          f"nbar={S.nbar} u={S.u} designed_p={S.designed_p} outer={S.outer_label}")
    return EXIT_ACCEPT


# ---------------------------------------------------------------------------
# verify


def read_vector(text: str, S: TestSet) -> Vector:
    """A vector file is a 1-row matrix in the hex text format."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    M = matrix_from_lines(S.base, lines)
    if M.rows != 1 or len(lines) != 2:
        raise ValueError("vector file must hold exactly one row")
    if M.cols != S.n:
        raise ValueError(f"vector has length {M.cols}, test set expects {S.n}")
    return M.row(0)


def write_vector(v: Vector, path) -> None:
    Path(path).write_text("\n".join(matrix_to_lines(Matrix(v.field, v.data[None, :]))) + "\n")


def cmd_verify(args) -> int:
    S = load_testset(args.testset)
    if args.stdin:
        text = sys.stdin.read()
    elif args.vector:
        text = Path(args.vector).read_text()
    else:
        raise UsageError("give a vector path or --stdin")
    x = read_vector(text, S)
    cfg = VerifierConfig(args.rounds, _seed(args))
    rep = determine_codeword(x, S, cfg)
    if rep.verdict == "reject":
        # one-sided error: the witness must really be non-orthogonal
        assert mat_vec(Matrix(S.ext, S.rows.data[[rep.witness_row]]), x).data[0] != 0
    payload = rep.to_dict() | {"seed": args.seed}
    if args.verbose and rep.witness_row is not None:
        payload["witness"] = [f"{v:x}" for v in S.rows.data[rep.witness_row]]
    text = rep.summary()
    if args.verbose and rep.witness_row is not None:
        text += "\nwitness " + " ".join(payload["witness"])
    _emit(args, payload, text)
    return EXIT_ACCEPT if rep.accepted else EXIT_REJECT


# ---------------------------------------------------------------------------
# bench


@dataclass
class BenchReport:
    code: str
    n: int
    k: int
    testset: str
    R: int
    u: int
    mul: int
    add: int
    designed_p: Fraction
    bound: Fraction
    wall_time: float
    syndrome_mul: int
    syndrome_add: int


def run_bench(C: LinearCode, S: TestSet, rounds: int, seed: int) -> BenchReport:
    """Full-R verification of a codeword (no early exit) plus the direct
    syndrome baseline, with both counters asserted against the cost model."""
    if S.n != C.n:
        raise ValueError("test set and code lengths differ")
    x = C.random_codeword(Sampler(seed))
    t0 = time.perf_counter()
    rep = determine_codeword(x, S, VerifierConfig(rounds, derive_seed(seed, 1)))
    wall = time.perf_counter() - t0
    if not rep.accepted:
        raise AssertionError("a codeword was rejected")
    n, u = C.n, S.u
    assert (rep.ops.base_mul, rep.ops.base_add) == (rounds * u * n, rounds * u * (n - 1))
    base = OpCounter()
    syn = syndrome_direct(C, x, base)
    assert syn.is_zero()
    r = C.n - C.k
    assert (base.base_mul, base.base_add) == (r * n, r * (n - 1))
    return BenchReport(C.label, C.n, C.k, S.outer_label, rounds, u,
                       rep.ops.base_mul, rep.ops.base_add, S.designed_p,
                       error_bound(S.designed_p, rounds) if S.designed_p > 0 else Fraction(0),
                       wall, base.base_mul, base.base_add)


PRESETS = {"rs255": (256, 255, 223, 32), "rs1023": (1024, 1023, 895, 128)}


def cmd_bench(args) -> int:
    seed = _seed(args)
    if args.preset:
        q, n, k, ko = PRESETS[args.preset]
        F = field_from_order(q)
        C = rs_code(F, n, k)
        S = build_code_testset(C.parity_check, rs_code(F, n, ko))
    else:
        if not (args.code and args.testset):
            raise UsageError("bench needs --preset or both --code and --testset")
        C = load_code(args.code)
        S = load_testset(args.testset, expected_base=C.field)
    rep = run_bench(C, S, args.rounds, seed)
    text = "\n".join([
        f"{rep.code} with {rep.testset}, R={rep.R}, u={rep.u}",
        f"{'method':<18}{'Mul.':>10}{'Add.':>10}",
        f"{'test set':<18}{rep.mul:>10,}{rep.add:>10,}",
        f"{'direct syndrome':<18}{rep.syndrome_mul:>10,}{rep.syndrome_add:>10,}",
        f"designed_p={rep.designed_p} bound=p^R={float(rep.bound):.3e} "
        f"verify_time={rep.wall_time * 1e3:.2f}ms",
    ])
    payload = asdict(rep)
    payload["designed_p"] = str(rep.designed_p)
    payload["bound"] = str(rep.bound)
    _emit(args, payload, text)
    return EXIT_ACCEPT


# ---------------------------------------------------------------------------
# mc


def unit_syndrome_error(C: LinearCode, j: int = 0) -> Vector:
    """A vector e with H e^T equal to the j-th unit vector."""
    r = C.n - C.k
    unit = np.zeros(r, dtype=np.int64)
    unit[j] = 1
    return solve(C.parity_check, Vector(C.field, unit))


def random_noncodeword(C: LinearCode, sampler: Sampler) -> Vector:
    while True:
        x = Vector(C.field, sampler.many_below(C.field.order, C.n))
        if not C.contains(x):
            return x


def _adversary_inputs(args, C: LinearCode, S: TestSet) -> list[tuple[str, Vector]]:
    kind = args.adversary
    if kind == "unit-syndrome":
        return [("unit-syndrome", unit_syndrome_error(C, args.unit))]
    if kind == "random-coset":
        smp = Sampler(derive_seed(args.seed, 10**6))
        return [(f"random-coset#{i}", random_noncodeword(C, smp))
                for i in range(args.count)]
    if kind == "codeword":
        return [("codeword", C.random_codeword(Sampler(derive_seed(args.seed, 10**6))))]
    if kind == "file":
        if not args.input:
            raise UsageError("--adversary file needs --input")
        return [(Path(args.input).name, read_vector(Path(args.input).read_text(), S))]
    raise UsageError(f"unknown adversary {kind!r}")


def run_mc(C: LinearCode, S: TestSet, inputs, trials: int, rounds: int, seed: int):
    naive = row_testset(C.parity_check)
    xs = [x for _, x in inputs]
    acc = mc_counts(S, xs, trials, rounds, seed)
    acc_naive = mc_counts(naive, xs, trials, rounds, seed)
    rows = []
    for (name, x), a, b in zip(inputs, acc, acc_naive):
        f = non_orthogonal_fraction(S, x)
        g = non_orthogonal_fraction(naive, x)
        rows.append({
            "input": name,
            "in_code": C.contains(x),
            "reject_fraction": f,
            "predicted_accept": (1 - f) ** rounds,
            "observed_accept": a / trials,
            "naive_reject_fraction": g,
            "naive_predicted_accept": (1 - g) ** rounds,
            "naive_observed_accept": b / trials,
            "bound": S.designed_p ** rounds,
        })
    return rows


def cmd_mc(args) -> int:
    seed = _seed(args)
    S = load_testset(args.testset)
    C = load_code(args.code)
    if C.n != S.n or C.field != S.base:
        raise UsageError("code and test set do not match")
    rows = run_mc(C, S, _adversary_inputs(args, C, S), args.trials, args.rounds, seed)
    head = (f"{'input':<18}{'f (exact)':>14}{'accept':>10}{'(1-f)^R':>10}"
            f"{'naive f':>10}{'naive acc':>11}{'p^R':>11}")
    lines = [f"trials={args.trials} R={args.rounds} seed={seed}", head]
    for r in rows:
        lines.append(
            f"{r['input']:<18}{str(r['reject_fraction']):>14}"
            f"{r['observed_accept']:>10.5f}{float(r['predicted_accept']):>10.5f}"
            f"{str(r['naive_reject_fraction']):>10}"
            f"{r['naive_observed_accept']:>11.5f}{float(r['bound']):>11.3e}")
    _emit(args, {"trials": args.trials, "rounds": args.rounds, "seed": seed,
                 "rows": [{k: (str(v) if isinstance(v, Fraction) else v)
                           for k, v in r.items()} for r in rows]},
          "\n".join(lines))
    return EXIT_ACCEPT


# ---------------------------------------------------------------------------
# sample: write a codeword, optionally with errors, as a vector file


def cmd_sample(args) -> int:
    C = load_code(args.code)
    smp = Sampler(_seed(args))
    x = C.random_codeword(smp)
    if args.errors:
        pos = []
        while len(pos) < args.errors:
            j = smp.below(C.n)
            if j not in pos:
                pos.append(j)
        e = np.zeros(C.n, dtype=np.int64)
        e[pos] = 1 + smp.many_below(C.field.order - 1, len(pos))
        x = x + Vector(C.field, e)
    write_vector(x, args.out)
    _emit(args, {"path": args.out, "in_code": C.contains(x)},
          f"wrote {args.out} (codeword: {C.contains(x)})")
    return EXIT_ACCEPT


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="codecheck", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("build", help="construct a code and write it to a file")
    b.add_argument("kind", choices=["rs", "rm", "random", "hamming"])
    b.add_argument("--q", type=int, default=2)
    b.add_argument("--n", type=int)
    b.add_argument("--k", type=int)
    b.add_argument("--r", type=int)
    b.add_argument("--m", type=int)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    t = sub.add_parser("testset", help="precompute a test set for a code")
    t.add_argument("code")
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--mds", nargs=2, metavar=("P", "U"))
    g.add_argument("--outer", metavar="CODE")
    t.add_argument("--out")
    t.set_defaults(func=cmd_testset)

    v = sub.add_parser("verify", help="randomised membership check of one vector")
    v.add_argument("testset")
    v.add_argument("vector", nargs="?")
    v.add_argument("--stdin", action="store_true")
    v.add_argument("--rounds", type=int, required=True)
    v.add_argument("--seed", type=int)
    v.add_argument("--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    be = sub.add_parser("bench", help="operation counts vs. direct syndrome")
    be.add_argument("--preset", choices=sorted(PRESETS))
    be.add_argument("--code")
    be.add_argument("--testset")
    be.add_argument("--rounds", type=int, default=7)
    be.add_argument("--seed", type=int)
    be.set_defaults(func=cmd_bench)

    mc = sub.add_parser("mc", help="Monte-Carlo accept rates against adversaries")
    mc.add_argument("testset")
    mc.add_argument("--code", required=True)
    mc.add_argument("--adversary", required=True,
                    choices=["unit-syndrome", "random-coset", "codeword", "file"])
    mc.add_argument("--input")
    mc.add_argument("--unit", type=int, default=0)
    mc.add_argument("--count", type=int, default=3)
    mc.add_argument("--trials", type=int, default=10000)
    mc.add_argument("--rounds", type=int, default=1)
    mc.add_argument("--seed", type=int)
    mc.set_defaults(func=cmd_mc)

    s = sub.add_parser("sample", help="write a (noisy) codeword vector file")
    s.add_argument("code")
    s.add_argument("--errors", type=int, default=0)
    s.add_argument("--seed", type=int)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sample)

    for p in (b, t, v, be, mc, s):
        p.add_argument("--json", action="store_true", help="machine-readable output")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_ACCEPT
    if args.cmd == "build":
        need = {"rs": ("n", "k"), "rm": ("r", "m"), "random": ("n", "k"),
                "hamming": ()}[args.kind]
        missing = [f"--{a}" for a in need if getattr(args, a) is None]
        if missing:
            print(f"error: build {args.kind} needs {' '.join(missing)}", file=sys.stderr)
            return EXIT_ERROR
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
