"""Quality and cost reporting.

Image quality is peak signal-to-noise against an 8-bit peak, with an exact
match reported as LOSSLESS rather than a number. Cost comes in two shapes:
a pure rate formula (bits times clock over cycles) for feeding published
hardware constants, and a live benchmark that counts Montgomery products to
compare one fused double exponentiation against two single ones.

Reports serialize to single-line key=value text; the optional figure
helpers draw the same numbers with matplotlib.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from statistics import fmean

from .codec import GrayImage
from .errors import DimensionMismatch, DivideByZero
from .montmath import MontCtx
from .prng import rand_below

PEAK = 255


@dataclass
class QualityReport:
    """Pixel error between two images; psnr_db is None on an exact match."""

    mse: float
    psnr_db: float | None
    bpp: float | None = None

    @property
    def lossless(self) -> bool:
        return self.mse == 0

    def summary(self) -> str:
        psnr = "LOSSLESS" if self.psnr_db is None else f"{self.psnr_db:.4f}"
        line = f"mse={self.mse:.6g} psnr_db={psnr}"
        if self.bpp is not None:
            line += f" bpp={self.bpp:.6g}"
        return line


@dataclass
class BenchReport:
    """Montgomery product counts for fused vs back-to-back exponentiation."""

    k_bits: int
    trials: int
    montp_sim: float
    montp_seq: float
    ratio: float
    wall_ns_per_op: float
    sim_counts: list = field(default_factory=list, repr=False)
    seq_counts: list = field(default_factory=list, repr=False)

    def summary(self) -> str:
        return (f"k_bits={self.k_bits} trials={self.trials}"
                f" montp_sim={self.montp_sim:.2f} montp_seq={self.montp_seq:.2f}"
                f" ratio={self.ratio:.4f} wall_ns_per_op={self.wall_ns_per_op:.0f}")


def psnr(a: GrayImage, b: GrayImage, payload_bits: int | None = None) -> QualityReport:
    """Mean squared error and 10*log10(255^2 / mse) between two images."""
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatch(
            f"{a.width}x{a.height} vs {b.width}x{b.height}")
    total = 0
    for x, y in zip(a.samples, b.samples):
        d = x - y
        total += d * d
    count = a.width * a.height
    mse = total / count
    db = None if total == 0 else 10 * math.log10(PEAK * PEAK / mse)
    bpp = None if payload_bits is None else payload_bits / count
    return QualityReport(mse, db, bpp)


def throughput(input_bits: float, frequency_hz: float, cycles: float) -> float:
    """Bits per second through a pipeline: input_bits * frequency / cycles."""
    if cycles <= 0 or frequency_hz <= 0:
        raise DivideByZero(
            f"cycles and frequency must be positive, got {cycles}, {frequency_hz}")
    return input_bits * frequency_hz / cycles


def pixel_rate(input_bits: float, frequency_hz: float, cycles: float,
               bits_per_pixel: float) -> float:
    """The bit throughput spread over the width of one pixel."""
    if bits_per_pixel <= 0:
        raise DivideByZero(f"bits_per_pixel must be positive, got {bits_per_pixel}")
    return throughput(input_bits, frequency_hz, cycles) / bits_per_pixel


def bench_exponentiation(k_bits: int, trials: int, rng) -> BenchReport:
    """Measure Montgomery product counts at one modulus width.

    Every trial draws a fresh dense odd k-bit modulus, two bases, and two
    dense k-bit exponents, then runs the fused double exponentiation and the
    two single ones on the same inputs, reading the context counter around
    each. Wall time covers the fused call only.
    """
    if k_bits < 8:
        raise ValueError(f"k_bits must be at least 8, got {k_bits}")
    if trials < 100:
        raise ValueError(f"trials must be at least 100, got {trials}")
    top = 1 << (k_bits - 1)
    sim_counts = []
    seq_counts = []
    wall = 0
    for _ in range(trials):
        n = top | rand_below(rng, top) | 1
        ctx = MontCtx(n)
        g0 = rand_below(rng, n)
        g1 = rand_below(rng, n)
        e0 = top | rand_below(rng, top)
        e1 = top | rand_below(rng, top)
        base = ctx.mul_count()
        t0 = time.perf_counter_ns()
        fused = ctx.mont_sim_exp(g0, g1, e0, e1)
        wall += time.perf_counter_ns() - t0
        mid = ctx.mul_count()
        single = ctx.mont_exp(g0, e0) * ctx.mont_exp(g1, e1) % n
        assert fused == single  # same answer, different product count
        sim_counts.append(mid - base)
        seq_counts.append(ctx.mul_count() - mid)
    montp_sim = fmean(sim_counts)
    montp_seq = fmean(seq_counts)
    return BenchReport(k_bits, trials, montp_sim, montp_seq,
                       montp_sim / montp_seq, wall / trials,
                       sim_counts, seq_counts)


# --- figures ---

def save_bench_figure(report: BenchReport, path) -> None:
    """Histogram the per-trial product counts, fused vs sequential."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.hist([report.sim_counts, report.seq_counts], bins=24,
            label=["fused double exponentiation", "two single exponentiations"],
            color=["#2d6a9f", "#c2571a"])
    ax.axvline(report.montp_sim, color="#2d6a9f", linestyle="--", linewidth=1)
    ax.axvline(report.montp_seq, color="#c2571a", linestyle="--", linewidth=1)
    ax.set_xlabel("Montgomery products per operation")
    ax.set_ylabel("trials")
    ax.set_title(f"{report.k_bits}-bit exponents, ratio {report.ratio:.3f}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_difference_figure(a: GrayImage, b: GrayImage, report: QualityReport,
                           path) -> None:
    """Absolute per-pixel difference heatmap annotated with the summary line."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = [[abs(a.samples[y * a.width + x] - b.samples[y * a.width + x])
             for x in range(a.width)] for y in range(a.height)]
    fig, ax = plt.subplots(figsize=(6.4, 5.2))
    im = ax.imshow(rows, cmap="magma", vmin=0, vmax=max(1, max(max(r) for r in rows)))
    fig.colorbar(im, ax=ax, label="|difference|")
    ax.set_title(report.summary(), fontsize=9)
    ax.set_xticks([])
    ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
