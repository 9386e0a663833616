"""Property and oracle checks shared by ``strohwf verify`` and the test suite.

Each ``check_*`` function runs one acceptance criterion and returns
:class:`CheckResult` objects carrying the measured value and the tolerance it
was held to. Random inputs come from seeded generators, so results are
reproducible.
"""

from __future__ import annotations

import math
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
from scipy import integrate

from .appendix_oracle import equivalence_report
from .materials import OrthotropicMaterial
from .presets import SWEEP_BETAS, SWEEP_GRID, reference_pair
from .sif import PointForceLoading, ratio_sweep, sif_betti, sif_three_point_closed
from .special import cplus_cminus
from .stroh import BimaterialSystem, bimaterial_system, oscillation_index, stroh_data
from .weight_functions import wf_space, wf_transform_matrix


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one acceptance check."""

    criterion: str
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.criterion} {self.name}: measured {self.measured:.3e} (tolerance {self.tolerance:.1e})"
        return f"{text} {self.detail}".rstrip()

    def as_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "name": self.name,
            "passed": self.passed,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


# ---------------------------------------------------------------------------
# Random inputs
# ---------------------------------------------------------------------------

def random_material(rng: np.random.Generator, avoid_degenerate: float = 1e-3) -> OrthotropicMaterial:
    """Draw a positive-definite orthotropic material.

    ``lam`` and ``sqrt(s11 s22)`` are log-uniform over ``[0.05, 20]`` and
    ``[0.2, 5]``; ``rho`` is uniform on ``(-0.9, 6)`` away from 1; ``theta`` is
    uniform below ``min(0.95, rho - 0.02)`` so that ``s66 > 0``.
    """
    lam = math.exp(rng.uniform(math.log(0.05), math.log(20.0)))
    while True:
        rho = rng.uniform(-0.9, 6.0)
        if abs(rho - 1.0) >= avoid_degenerate:
            break
    theta = rng.uniform(-0.95, min(0.95, rho - 0.02))
    scale = math.exp(rng.uniform(math.log(0.2), math.log(5.0)))
    return OrthotropicMaterial.from_anisotropy(lam, rho, theta, scale)


def random_pair(rng: np.random.Generator) -> tuple[OrthotropicMaterial, OrthotropicMaterial]:
    return random_material(rng), random_material(rng)


def reference_system() -> BimaterialSystem:
    return bimaterial_system(*reference_pair())


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------

def check_stroh_consistency(count: int = 1000, seed: int = 11, tol: float = 1e-12) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    gap_ab = 0.0
    gap_herm = 0.0
    for _ in range(count):
        data = stroh_data(random_material(rng))
        gap_ab = max(gap_ab, float(np.max(np.abs(data.y_from_ab() - data.Y))))
        y = data.y_from_ab()
        gap_herm = max(gap_herm, float(np.max(np.abs(y - y.conj().T))))
    return [
        CheckResult("1", "iAB^-1 equals closed-form Y", gap_ab < tol, gap_ab, tol, f"{count} materials"),
        CheckResult("1", "Y Hermitian", gap_herm < tol, gap_herm, tol, f"{count} materials"),
    ]


def check_eigenrelation(count: int = 1000, seed: int = 12, tol: float = 1e-12) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        system = bimaterial_system(*random_pair(rng))
        h, w = system.H, system.w
        eps = oscillation_index(system.beta)
        res = np.conj(h) @ w - math.exp(2.0 * math.pi * eps) * (h @ w)
        worst = max(worst, float(np.max(np.abs(res))))
    return [CheckResult("2", "conj(H) w = exp(2 pi eps) H w", worst < tol, worst, tol, f"{count} pairs")]


def check_gamma_identity(tol: float = 1e-13) -> list[CheckResult]:
    worst = 0.0
    for eps in np.linspace(-0.2, 0.2, 41):
        cp, cm = cplus_cminus(float(eps))
        worst = max(worst, abs(cp * cm - 0.5j * math.cosh(math.pi * eps)))
    return [CheckResult("3", "c+ c- = (i/2) cosh(pi eps)", worst < tol, worst, tol, "41-point grid")]


def check_oracle_equivalence(
    pairs: int = 100, samples: int = 50, seed: int = 14, tol: float = 1e-10
) -> list[CheckResult]:
    start = time.perf_counter()
    xi = np.concatenate([-np.logspace(-2, 2, samples // 2)[::-1], np.logspace(-2, 2, samples - samples // 2)])
    worst_ref = equivalence_report(*reference_pair(), xi)
    rng = np.random.default_rng(seed)
    worst_rand = 0.0
    for _ in range(pairs):
        worst_rand = max(worst_rand, equivalence_report(*random_pair(rng), xi))
    elapsed = time.perf_counter() - start
    worst = max(worst_ref, worst_rand)
    return [
        CheckResult(
            "4",
            "ODE oracle matches closed-form transforms",
            worst < tol,
            worst,
            tol,
            f"reference pair {worst_ref:.1e}, {pairs} random pairs {worst_rand:.1e}, {elapsed:.2f} s",
        )
    ]


def numeric_wf_transform(system: BimaterialSystem, kind: str, j: int, xi: float) -> np.ndarray:
    """Fourier transform of :func:`wf_space` by direct quadrature.

    On each half-line the integral up to ``X = 30/|xi|`` is done by adaptive
    quadrature after the substitution ``|x| = u^2``. Beyond ``X`` the field is
    exactly ``|x|^(-1/2)(c1 |x|^(i eps) + c2 |x|^(-i eps))``; the coefficients
    are fitted from two samples and the remaining integral is taken along a
    ray rotated into the half-plane where ``exp(i xi x)`` decays.
    """
    eps = system.epsilon
    big = 30.0 / abs(xi)
    total = np.zeros(2, dtype=np.complex128)
    for sgn in (1.0, -1.0):
        def field(x):
            return wf_space(system, kind, j, sgn * x)

        head = np.zeros(2, dtype=np.complex128)
        for comp in range(2):
            def g(u, comp=comp):
                return 2.0 * u * field(u * u)[comp] * np.exp(1j * xi * sgn * u * u)

            val, _ = integrate.quad(g, 0.0, math.sqrt(big), limit=2000, epsabs=1e-13, epsrel=1e-12, complex_func=True)
            head[comp] = val
        nodes = (big, 2.0 * big)
        basis = np.array([[x**-0.5 * x ** (1j * eps), x**-0.5 * x ** (-1j * eps)] for x in nodes])
        samples = np.array([field(x) for x in nodes])
        coef = np.linalg.solve(basis, samples.astype(np.complex128))
        rot = math.copysign(1.0, xi * sgn)
        tail = np.zeros(2, dtype=np.complex128)
        for comp in range(2):
            def t_fn(t, comp=comp):
                z = big + 1j * rot * t
                fz = z**-0.5 * (coef[0, comp] * z ** (1j * eps) + coef[1, comp] * z ** (-1j * eps))
                return fz * np.exp(1j * xi * sgn * z) * 1j * rot

            val, _ = integrate.quad(t_fn, 0.0, np.inf, limit=400, epsabs=1e-14, epsrel=1e-12, complex_func=True)
            tail[comp] = val
        total += head + tail
    return total


def check_transform_roundtrip(tol: float = 1e-6) -> list[CheckResult]:
    system = reference_system()
    worst = 0.0
    for kind in ("symmetric", "skew"):
        for j in (1, 2):
            for xi in (0.5, -0.5, 2.0, -2.0, 8.0, -8.0):
                ref = wf_transform_matrix(system, kind, xi)[0, :, j - 1]
                num = numeric_wf_transform(system, kind, j, xi)
                worst = max(worst, float(np.max(np.abs(num - ref)) / np.max(np.abs(ref))))
    return [CheckResult("5", "numerical Fourier transform of space-domain WFs", worst < tol, worst, tol, "xi in {+-0.5, +-2, +-8}")]


def check_method_agreement(tol: float = 1e-8) -> list[CheckResult]:
    base = reference_system()
    worst = 0.0
    for beta in SWEEP_BETAS:
        system = base.with_beta(beta)
        for t in (0.0, 0.3, 0.6, 0.9):
            quad = sif_betti(system, PointForceLoading.three_point(1.0, 1.0, t)).K.K
            closed = sif_three_point_closed(system, 1.0, 1.0, t).K.K
            worst = max(worst, abs(quad - closed) / abs(closed))
    return [CheckResult("6", "Betti quadrature vs closed form", worst < tol, worst, tol, "5 betas x 4 b/a values")]


def ks_loglog_slope(system: BimaterialSystem, lo: float = 0.9, hi: float = 0.999, count: int = 50) -> float:
    """Least-squares slope of ``log|K^S|`` against ``log(1 - b/a)``."""
    gap = np.geomspace(1.0 - lo, 1.0 - hi, count)
    ks = [abs(sif_three_point_closed(system, 1.0, 1.0, 1.0 - g).K.KS) for g in gap]
    return float(np.polyfit(np.log(gap), np.log(ks), 1)[0])


def check_figure_features() -> list[CheckResult]:
    base = reference_system()
    out = []
    ka0 = max(abs(sif_three_point_closed(base.with_beta(b), 1.0, 1.0, 0.0).K.KA) for b in SWEEP_BETAS)
    out.append(CheckResult("7a", "K^A = 0 at b/a = 0", ka0 == 0.0, ka0, 0.0))

    real = base.with_beta(0.0)
    imag = 0.0
    for t in np.linspace(0.0, 0.95, 20):
        k = sif_three_point_closed(real, 1.0, 1.0, float(t)).K
        imag = max(imag, abs(k.KS.imag), abs(k.KA.imag))
    out.append(CheckResult("7b", "beta = 0 gives real K^S, K^A", imag < 1e-12, imag, 1e-12))

    slopes = [ks_loglog_slope(base.with_beta(b)) for b in SWEEP_BETAS]
    dev = max(abs(s + 0.5) for s in slopes)
    out.append(
        CheckResult(
            "7c",
            "log-log slope of |K^S| on b/a in [0.9, 0.999] is -0.5",
            dev <= 0.02,
            dev,
            0.02,
            "slopes " + ", ".join(f"{s:.4f}" for s in slopes),
        )
    )

    lo, hi, count = SWEEP_GRID
    grid = np.linspace(lo, hi, count)
    rows = ratio_sweep(base, 1.0, 1.0, grid, SWEEP_BETAS)
    peaks = {b: max(r.ratio for r in rows if r.beta == b) for b in SWEEP_BETAS}
    hits = [b for b, v in peaks.items() if 0.30 <= v <= 0.50]
    best = max(peaks.values())
    out.append(
        CheckResult(
            "7d",
            "max K^A_I/K^S_I in [0.30, 0.50] for some beta",
            bool(hits),
            best,
            0.5,
            "peaks " + ", ".join(f"beta={b:+.2f}:{v:.4f}" for b, v in peaks.items()),
        )
    )
    return out


def check_degenerate_continuity(tol: float = 1e-4) -> list[CheckResult]:
    partner = reference_pair()[0]
    xi = np.array([-5.0, -0.3, 0.3, 5.0])
    worst = 0.0
    for lam, theta, scale in ((1.0, -1.0 / 3.0, 1.0), (0.4, 0.1, 2.0), (3.0, -0.5, 0.7)):
        def build(rho):
            return OrthotropicMaterial.from_anisotropy(lam, rho, theta, scale)

        for order in (0, 1):
            ref_mats = (build(1.0), partner) if order == 0 else (partner, build(1.0))
            ref = bimaterial_system(*ref_mats)
            for delta in (1e-6, -1e-6):
                mats = (build(1.0 + delta), partner) if order == 0 else (partner, build(1.0 + delta))
                near = bimaterial_system(*mats)
                for kind in ("symmetric", "skew"):
                    a = wf_transform_matrix(ref, kind, xi)
                    b = wf_transform_matrix(near, kind, xi)
                    worst = max(worst, float(np.max(np.abs(a - b)) / np.max(np.abs(a))))
    return [CheckResult("8", "rho = 1 agrees with rho = 1 +- 1e-6", worst < tol, worst, tol)]


def check_cli_determinism() -> list[CheckResult]:
    from .cli import main

    with tempfile.TemporaryDirectory() as tmp:
        paths = [Path(tmp) / f"run{k}.csv" for k in (1, 2)]
        for k, path in enumerate(paths):
            args = [
                "sweep", "--pair", "aluminium-ref", "boron-ref",
                "--beta-list", ",".join(str(b) for b in SWEEP_BETAS),
                "--grid", ",".join(str(v) for v in SWEEP_GRID),
                "--workers", str(1 + 3 * k),
                "--out", str(path),
            ]
            code = main(args)
            if code != 0:
                return [CheckResult("9", "sweep CSV byte-identical", False, float(code), 0.0, "sweep failed")]
        same = paths[0].read_bytes() == paths[1].read_bytes()
    return [CheckResult("9", "sweep CSV byte-identical", same, 0.0 if same else 1.0, 0.0, "serial vs 4 workers")]


ALL_CHECKS: dict[str, Callable[[], list[CheckResult]]] = {
    "1": check_stroh_consistency,
    "2": check_eigenrelation,
    "3": check_gamma_identity,
    "4": check_oracle_equivalence,
    "5": check_transform_roundtrip,
    "6": check_method_agreement,
    "7": check_figure_features,
    "8": check_degenerate_continuity,
    "9": check_cli_determinism,
}


def run_all(selected=None) -> list[CheckResult]:
    results = []
    for key, check in ALL_CHECKS.items():
        if selected is None or key in selected:
            results.extend(check())
    return results
