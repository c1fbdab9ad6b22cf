"""Report figures rendered to files next to the delimited output.

All figures use the Agg backend and are written atomically (temp file +
rename), like every other artifact the toolkit emits.
"""

from __future__ import annotations

import math
import os
import tempfile
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .fuchsian import LengthSpectrum  # noqa: E402
from .pipeline import FreedomReport  # noqa: E402
from .surgery import DEFAULT_PROFILE, SmoothProfile, _twist_angle  # noqa: E402


def _atomic_savefig(fig, path: Path | str, dpi: int = 150) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    os.close(fd)
    try:
        fig.savefig(tmp, format=path.suffix.lstrip(".") or "png",
                    dpi=dpi, bbox_inches="tight")
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
        plt.close(fig)
    return path


def plot_freedom_report(report: FreedomReport, path: Path | str) -> Path:
    """Ratio decay and the three bounds across the genus schedule."""
    rows = report.rows
    gs = [r.g for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 3.6))

    ratio_rows = [r for r in rows if r.ratio_ub is not None]
    ax1.semilogx([r.g for r in ratio_rows], [r.ratio_ub for r in ratio_rows],
                 "o-", color="tab:blue")
    flagged = [r for r in rows if r.ratio_ub is None]
    if flagged:
        ax1.semilogx([r.g for r in flagged], [0.0] * len(flagged), "x",
                     color="tab:red", label="pre-asymptotic")
        ax1.legend()
    ax1.set_xlabel("genus g")
    ax1.set_ylabel("ratio upper bound")
    ax1.set_title("vol / (sys1 * sys2) bound")
    ax1.grid(True, which="both", alpha=0.3)

    ax2.loglog(gs, [r.sys1_lb for r in rows], "s-", label="sys1 lower")
    ax2.loglog(gs, [r.sys2_lb for r in rows], "^-", label="sys2 lower")
    ax2.loglog(gs, [r.vol_ub for r in rows], "v--", label="vol upper")
    ax2.set_xlabel("genus g")
    ax2.set_title("bound growth")
    ax2.legend()
    ax2.grid(True, which="both", alpha=0.3)

    fig.suptitle("freedom-ratio report")
    return _atomic_savefig(fig, path)


def plot_spectrum(spectrum: LengthSpectrum, path: Path | str) -> Path:
    """Witness multiplicity against geodesic length."""
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    lengths = [e.length for e in spectrum.entries]
    counts = [e.witness_count for e in spectrum.entries]
    ax.stem(lengths, counts)
    ax.set_xlabel("geodesic length")
    ax.set_ylabel("witnesses in box")
    ax.set_title(
        f"level-{spectrum.N} spectrum, p={spectrum.p} "
        f"(trace<= {spectrum.trace_bound}, box {spectrum.box_bound})")
    ax.grid(True, alpha=0.3)
    return _atomic_savefig(fig, path)


def plot_surgery_profiles(eps: float, delta: float, path: Path | str,
                          profile: SmoothProfile = DEFAULT_PROFILE,
                          half_width: float | None = None) -> Path:
    """Cutoff ramp across the collar and the twist angle along the tube."""
    if half_width is None:
        half_width = math.pi * eps / 2.0
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 3.4))

    n = 400
    rs = [eps + delta * i / (n - 1) for i in range(n)]
    phis = [1.0 - profile.value((r - eps) / delta) for r in rs]
    ax1.plot(rs, phis, color="tab:blue")
    ax1.axvline(eps + delta / 2.0, color="gray", ls=":", lw=1)
    ax1.axhline(0.5, color="gray", ls=":", lw=1)
    ax1.set_xlabel("r")
    ax1.set_ylabel("cutoff value")
    ax1.set_title(f"collar cutoff ({profile.name})")

    ts = [2.0 * math.pi * eps * i / (n - 1) for i in range(n)]
    alphas = [_twist_angle(t, eps, half_width, profile) for t in ts]
    ax2.plot(ts, alphas, color="tab:orange")
    ax2.axhline(math.pi, color="gray", ls=":", lw=1)
    ax2.set_xlabel("t")
    ax2.set_ylabel("twist angle")
    ax2.set_title("pi-rotation ramp")

    for ax in (ax1, ax2):
        ax.grid(True, alpha=0.3)
    return _atomic_savefig(fig, path)
