"""Benchmark the compiled word kernel against its pure-Python twin.

Times the four kernel primitives (reduce_letters, concat, invert,
substitute) on identical random inputs for both backends, checks that the
outputs agree, and also times an end-to-end point-push workload in two
subprocesses (one with PUSHCALC_PURE=1, one without).

Usage:
    python benchmarks/bench_words.py [--cases N] [--repeat R] [--seed S]
"""
from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from pushcalc import _purewords

try:
    from pushcalc import _speedups
except ImportError:
    _speedups = None

END_TO_END = """
import time
from pushcalc.pushing import ManifoldModel, PuncturedSignature, push_word
from pushcalc.words import KERNEL_BACKEND, parse_word

sig = PuncturedSignature(ManifoldModel.default(2), 2)
word = parse_word("a1 a2 A1 a2 a1 A2") ** 8
push_word(sig, word, 1)
best = float("inf")
for _ in range(5):
    t0 = time.perf_counter()
    push_word(sig, word, 1)
    best = min(best, time.perf_counter() - t0)
print(f"{KERNEL_BACKEND}\\t{best * 1000:.2f}")
"""


def rand_letters(rng: random.Random, n: int, rank: int) -> tuple[int, ...]:
    return tuple(
        rng.choice((1, -1)) * rng.randint(1, rank) for _ in range(n)
    )


def build_inputs(cases: int, seed: int) -> dict[str, list]:
    rng = random.Random(seed)
    rank = 4
    raw = [rand_letters(rng, rng.randint(0, 40), rank) for _ in range(cases)]
    reduced = [_purewords.reduce_letters(x) for x in raw]
    pairs = [
        (reduced[i], reduced[(i * 7 + 1) % len(reduced)])
        for i in range(len(reduced))
    ]
    images = [
        tuple(rand_letters(rng, rng.randint(0, 5), rank) for _ in range(rank))
        for _ in range(8)
    ]
    subs = [(images[i % len(images)], w) for i, w in enumerate(reduced)]
    return {
        "reduce_letters": [(x,) for x in raw],
        "concat": pairs,
        "invert": [(x,) for x in reduced],
        "substitute": subs,
    }


def check_parity(inputs: dict[str, list]) -> None:
    for op, args_list in inputs.items():
        pure = getattr(_purewords, op)
        fast = getattr(_speedups, op)
        for args in args_list:
            a, b = pure(*args), fast(*args)
            if a != b:
                raise SystemExit(f"kernel mismatch in {op}: {args} -> {a} vs {b}")


def time_backend(module, inputs: dict[str, list], repeat: int) -> dict[str, float]:
    out = {}
    for op, args_list in inputs.items():
        fn = getattr(module, op)
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            for args in args_list:
                fn(*args)
            best = min(best, time.perf_counter() - t0)
        out[op] = best * 1000
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cases", type=int, default=5000)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    inputs = build_inputs(args.cases, args.seed)
    if _speedups is None:
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 1
    check_parity(inputs)
    print(f"outputs agree on {sum(len(v) for v in inputs.values())} calls")
    print()

    pure = time_backend(_purewords, inputs, args.repeat)
    fast = time_backend(_speedups, inputs, args.repeat)
    print(f"{'op':<16} {'pure ms':>9} {'compiled ms':>12} {'speedup':>8}")
    for op in inputs:
        ratio = pure[op] / fast[op] if fast[op] else float("inf")
        print(f"{op:<16} {pure[op]:>9.2f} {fast[op]:>12.2f} {ratio:>7.1f}x")

    print()
    print("end-to-end push of a length-48 word (g=2, k=2), best of 5:")
    for extra_env in ({"PUSHCALC_PURE": "1"}, {}):
        env = {k: v for k, v in os.environ.items() if k != "PUSHCALC_PURE"}
        env.update(extra_env)
        env["PYTHONPATH"] = os.pathsep.join(
            p for p in (os.path.join(os.path.dirname(__file__), "..", "src"),
                        env.get("PYTHONPATH")) if p
        )
        res = subprocess.run(
            [sys.executable, "-c", END_TO_END],
            capture_output=True, text=True, env=env, check=True,
        )
        backend, ms = res.stdout.strip().split("\t")
        print(f"{backend:<16} {float(ms):>9.2f} ms")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
