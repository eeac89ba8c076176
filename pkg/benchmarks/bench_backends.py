"""Compare the compiled and numpy kernel backends, per kernel and end to end.

    python benchmarks/bench_backends.py [--repeat 50] [--frames 40]
"""

import argparse
import statistics
import time

from fpdetect import kernels
from fpdetect.bench import compare_backends
from fpdetect.corpus import make_corpus
from fpdetect.detector import detect


def end_to_end(frames, repeat):
    per_frame = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        for f in frames:
            detect(f.image)
        per_frame.append((time.perf_counter() - t0) / len(frames))
    return min(per_frame) * 1e3, statistics.median(per_frame) * 1e3


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=30)
    ap.add_argument("--frames", type=int, default=40)
    args = ap.parse_args()

    table = compare_backends(repeat=args.repeat)
    names = list(table)
    print("per-kernel best time, 256x360 frame (us)")
    print(f"{'kernel':<16}" + "".join(f"{n:>12}" for n in names))
    for k in table[names[0]]:
        print(f"{k:<16}" + "".join(f"{table[n][k]:>12.1f}" for n in names))

    frames = make_corpus("mixed", args.frames, seed=0)
    active = kernels.backend
    print(f"\ndetect() per frame over {args.frames} mixed frames (ms)")
    try:
        for name, impl in kernels.available_backends().items():
            kernels.backend = impl
            best, med = end_to_end(frames, max(1, args.repeat // 10))
            print(f"{name:<10} best {best:6.2f}   median {med:6.2f}")
    finally:
        kernels.backend = active


if __name__ == "__main__":
    main()
