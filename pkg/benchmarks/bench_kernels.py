"""Timing comparison of the compiled and pure-Python mod-p matrix kernels.

Runs each operation in a child process so the backend is chosen by the
same import-time switch the package ships with (LOCALZETA_PURE=1 forces
the fallback).  Reports best-of-N wall time per backend and checks that
both backends produce identical results.

The kernels are the only hot loops in the package: the exhaustive coset
audit enumerates all of Sp4(F_p) by closure and multiplies every
representative by every subgroup element.  Everything else is exact
formal algebra or vectorized numerics and gains nothing from compilation.

Usage:
    python3 benchmarks/bench_kernels.py            # p = 3, the slow case
    python3 benchmarks/bench_kernels.py --p 2      # quick sanity run
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

# two fixed invertible seeds for the product-walk microbenchmark
_WALK_A = (1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1)
_WALK_B = (0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0)
_WALK_STEPS = 200_000


def _child(op: str, p: int, repeat: int) -> None:
    from localzeta import kernels
    from localzeta.cosets import coset_audit

    times = []
    payload = None
    for _ in range(repeat):
        start = time.perf_counter()
        if op == "audit":
            rep = coset_audit(p)
            payload = {
                "group_order": rep.group_order,
                "subgroup_order": rep.subgroup_order,
                "cosets": rep.rep_count,
                "passed": rep.passed,
            }
        elif op == "matmul":
            a = tuple(v % p for v in _WALK_A)
            b = tuple(v % p for v in _WALK_B)
            x = kernels.IDENTITY
            for i in range(_WALK_STEPS):
                x = kernels.mat_mul_mod(x, a if i & 1 else b, p)
            payload = {"checksum": sum(x)}
        else:
            raise SystemExit(f"unknown child op {op!r}")
        times.append(time.perf_counter() - start)
    print(
        json.dumps(
            {"backend": kernels.backend_name(), "best": min(times), "payload": payload}
        )
    )


def _run_child(op: str, p: int, repeat: int, pure: bool) -> dict:
    env = dict(os.environ)
    env.pop("LOCALZETA_PURE", None)
    if pure:
        env["LOCALZETA_PURE"] = "1"
    cmd = [
        sys.executable,
        os.path.abspath(__file__),
        "--child",
        op,
        "--p",
        str(p),
        "--repeat",
        str(repeat),
    ]
    out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=3, choices=(2, 3))
    parser.add_argument("--repeat", type=int, default=3, help="best-of-N timing")
    parser.add_argument("--child", default=None, help=argparse.SUPPRESS)
    args = parser.parse_args(argv)

    if args.child:
        _child(args.child, args.p, args.repeat)
        return 0

    rows = []
    mismatched = False
    for op, label in (("audit", "coset audit"), ("matmul", "product walk")):
        pure = _run_child(op, args.p, args.repeat, pure=True)
        fast = _run_child(op, args.p, args.repeat, pure=False)
        agree = pure["payload"] == fast["payload"]
        mismatched = mismatched or not agree
        rows.append((label, pure, fast, agree))

    compiled = rows[0][2]["backend"]
    print(f"mod-p kernel benchmark at p = {args.p} (best of {args.repeat})")
    if compiled == "python":
        print("note: compiled extension not built; both columns use the fallback")
    print(f"{'operation':<14} {'python':>10} {compiled:>10} {'speedup':>9}  agreement")
    for label, pure, fast, agree in rows:
        speedup = pure["best"] / fast["best"] if fast["best"] else float("inf")
        print(
            f"{label:<14} {pure['best']:>9.3f}s {fast['best']:>9.3f}s "
            f"{speedup:>8.1f}x  {'ok' if agree else 'MISMATCH'}"
        )
    return 1 if mismatched else 0


if __name__ == "__main__":
    sys.exit(main())
