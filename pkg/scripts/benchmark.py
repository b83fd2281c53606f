from __future__ import annotations

from bernstirl.bench import BenchResult, run_bench

SIZES = {
    "hessenberg": (25, 50, 100, 200),
    "fps": (64, 128, 256, 512),
    "bell": (10, 20, 30, 40),
}


def main() -> None:
    seed = 0
    rows: list[BenchResult] = []
    for kernel, sizes in SIZES.items():
        for size in sizes:
            rows.append(run_bench(kernel, size, seed=seed))

    print(f"Benchmark: exact kernels  seed={seed}\n")
    header = f"{'kernel':<12} {'size':>6} {'operations':>12} {'time(s)':>10}"
    print(f"{header} {'us/op':>10}")
    print("-" * 54)
    for res in rows:
        per_op = 1e6 * res.seconds / res.operations
        print(
            f"{res.kernel:<12} {res.size:6d} {res.operations:12d} "
            f"{res.seconds:10.3f} {per_op:10.2f}"
        )


if __name__ == "__main__":
    main()
