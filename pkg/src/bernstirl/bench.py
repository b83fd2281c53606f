from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Literal

import numpy as np

from bernstirl.bell import bell_partial, family_args, partitions_exact
from bernstirl.exact_core import Rational
from bernstirl.fps import fps_pow, series_expm1_over_x
from bernstirl.hessenberg import det_recursive, random_hessenberg
from bernstirl.report import ORACLE

logger = logging.getLogger(__name__)

Kernel = Literal["hessenberg", "fps", "bell"]

BENCH_CAPS: dict[str, int] = {"hessenberg": 200, "fps": 512, "bell": 40}

# only the Hessenberg recursion has a source equation; the others are oracle machinery
KERNEL_LABELS: dict[str, str] = {
    "hessenberg": "Cahill-Narayan-Fibonacci-2004-Thm",
    "fps": ORACLE,
    "bell": ORACLE,
}


@dataclass(frozen=True)
class BenchResult:
    kernel: str
    size: int
    seconds: float
    operations: int


def _check_size(kernel: str, size: int) -> None:
    if kernel not in BENCH_CAPS:
        raise ValueError(f"kernel must be one of {sorted(BENCH_CAPS)}")
    cap = BENCH_CAPS[kernel]
    if not 1 <= size <= cap:
        raise ValueError(f"size must be in [1, {cap}] for {kernel}")


def run_bench(kernel: Kernel, size: int, seed: int = 0) -> BenchResult:
    """Time one kernel at one size. Informational only; nothing is asserted.

    operations counts the dominant exact multiplications (hessenberg, fps) or
    the partitions enumerated (bell).
    """
    _check_size(kernel, size)

    if kernel == "hessenberg":
        m = random_hessenberg(size, np.random.default_rng(seed))
        t0 = time.perf_counter()
        det_recursive(m)
        dt = time.perf_counter() - t0
        # row k contributes k terms, each with one superdiagonal factor
        ops = size * (size + 1)
    elif kernel == "fps":
        f = series_expm1_over_x(size)
        t0 = time.perf_counter()
        fps_pow(f, Rational(1, 2))
        dt = time.perf_counter() - t0
        # one series division for the logarithm and one exp recurrence
        ops = size * (size + 1)
    else:
        xs = family_args("halves", size)
        t0 = time.perf_counter()
        for k in range(1, size + 1):
            bell_partial(size, k, xs)
        dt = time.perf_counter() - t0
        ops = sum(
            sum(1 for _ in partitions_exact(size, k, size - k + 1))
            for k in range(1, size + 1)
        )

    logger.info("bench %s size=%d: %.4fs, %d ops", kernel, size, dt, ops)
    return BenchResult(kernel, size, dt, ops)
