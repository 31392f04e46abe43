"""Time the compiled and pure-Python scan kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N] [--seed S]

Each case builds one dense code table and runs the SST scan and the three
IC scans with every available backend, checking that the outputs agree.
"""
import argparse
import time

from synsub import kernels
from synsub.harness import ExplicitRandom, TransformRandom, generate
from synsub.model import mod3

CASES = [
    ("explicit k=3 H=5 d=0.5", lambda s: generate(ExplicitRandom(3, 5, 0.5, 3, s))),
    ("explicit k=2 H=10 d=0.9", lambda s: generate(ExplicitRandom(2, 10, 0.9, 2, s))),
    ("transform k=2 q=4 H=12", lambda s: generate(TransformRandom(2, 4, 12, s))),
    ("transform k=3 q=3 H=8", lambda s: generate(TransformRandom(3, 3, 8, s))),
    ("mod3 H=6", lambda s: mod3()),
]


def best_of(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def run_case(lang, backend, repeat):
    k, H = len(lang.alphabet), lang.horizon
    codes = lang.codes(H)

    def work():
        out = [backend.sst_scan(codes, k, H)]
        out += [backend.ic_scan(codes, k, H, v) for v in range(3)]
        return out

    return best_of(work, repeat)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    names = kernels.available()
    print(f"backends: {', '.join(names)} (default {kernels.BACKEND})")
    header = f"{'case':28s}" + "".join(f"{n:>12s}" for n in names)
    if len(names) > 1:
        header += f"{'speedup':>10s}"
    print(header)
    for label, make in CASES:
        lang = make(args.seed)
        timings, outputs = {}, {}
        for name in names:
            timings[name], outputs[name] = run_case(lang, kernels.get(name), args.repeat)
        if len(set(map(repr, outputs.values()))) != 1:
            raise SystemExit(f"backends disagree on {label}")
        line = f"{label:28s}" + "".join(f"{timings[n] * 1e3:10.2f}ms" for n in names)
        if len(names) > 1:
            line += f"{timings['python'] / timings['compiled']:9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
