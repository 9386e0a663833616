"""Crack-face point loadings and complex stress intensity factors."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import DomainError, QuadratureNonConvergence, ValidationError
from .quadrature import QuadratureReport, integrate_line
from .stroh import BimaterialSystem, ComplexSIF, m1_matrix

BALANCE_TOL = 1e-12
CONJUGATE_TOL = 1e-8

Force = tuple[float, tuple[float, float]]


def _as_forces(items: Iterable) -> tuple[Force, ...]:
    out = []
    for x, f in items:
        f1, f2 = f
        out.append((float(x), (float(f1), float(f2))))
    return tuple(out)


@dataclass(frozen=True)
class PointForceLoading:
    """Point forces on the upper and lower crack faces.

    Each entry ``(x, (f1, f2))`` contributes ``f * delta(x1 - x)`` to the face
    traction ``p = (sigma_21, sigma_22)`` evaluated at ``x2 = 0+`` (upper) or
    ``x2 = 0-`` (lower). All positions must lie behind the tip (``x < 0``) and
    the set must be self-balanced: the jump ``[p] = p+ - p-`` carries zero net
    force and zero moment about the tip.
    """

    upper: tuple[Force, ...] = field(default_factory=tuple)
    lower: tuple[Force, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "upper", _as_forces(self.upper))
        object.__setattr__(self, "lower", _as_forces(self.lower))
        forces = self.upper + self.lower
        if not forces:
            raise ValidationError("loading has no forces")
        for x, f in forces:
            if not (x < 0.0 and math.isfinite(x)):
                raise DomainError(f"force position {x} must be finite and negative")
            if not all(math.isfinite(v) for v in f):
                raise ValidationError(f"force {f} must be finite")
        xs, _, fjump = self.decompose()
        scale = sum(abs(v) for _, f in forces for v in f)
        net = np.abs(fjump.sum(axis=0)).max()
        moment = abs(float(xs @ fjump[:, 1]))
        if net > BALANCE_TOL * scale:
            raise ValidationError(f"loading is not self-balanced: net force {net:.3e}")
        arm = max(abs(x) for x, _ in forces)
        if moment > BALANCE_TOL * scale * arm:
            raise ValidationError(f"loading is not self-balanced: net moment {moment:.3e}")

    @classmethod
    def three_point(cls, F: float, a: float, b: float) -> "PointForceLoading":
        """Force ``-F`` on the upper face at ``-a`` balanced by ``-F/2`` at ``-a -+ b`` below."""
        if not a > 0.0:
            raise DomainError(f"a must be positive, got {a}")
        if not 0.0 <= b < a:
            raise DomainError(f"need 0 <= b < a, got a={a}, b={b}")
        return cls(
            upper=((-a, (0.0, -F)),),
            lower=((-a - b, (0.0, -F / 2.0)), (-a + b, (0.0, -F / 2.0))),
        )

    def as_three_point(self, rtol: float = 1e-12) -> tuple[float, float, float] | None:
        """Return ``(F, a, b)`` if this is a three-point load, else ``None``."""
        if len(self.upper) != 1:
            return None
        x_up, (f1, f2) = self.upper[0]
        F, a = -f2, -x_up
        if f1 != 0.0 or F == 0.0:
            return None
        lower: dict[float, np.ndarray] = {}
        for x, f in self.lower:
            lower[x] = lower.get(x, np.zeros(2)) + f
        tol = rtol * abs(F)
        if len(lower) == 1:
            ((x, f),) = lower.items()
            if abs(x - x_up) <= rtol * a and abs(f[0]) <= tol and abs(f[1] + F) <= tol:
                return F, a, 0.0
            return None
        if len(lower) != 2:
            return None
        (x_far, f_far), (x_near, f_near) = sorted(lower.items())
        b = 0.5 * (x_near - x_far)
        if abs(0.5 * (x_near + x_far) - x_up) > rtol * a or not 0.0 < b < a:
            return None
        for f in (f_far, f_near):
            if abs(f[0]) > tol or abs(f[1] + F / 2.0) > tol:
                return None
        return F, a, b

    def scaled(self, factor: float) -> "PointForceLoading":
        def sc(items):
            return tuple((x, (f[0] * factor, f[1] * factor)) for x, f in items)

        return PointForceLoading(sc(self.upper), sc(self.lower))

    def __add__(self, other: "PointForceLoading") -> "PointForceLoading":
        return PointForceLoading(self.upper + other.upper, self.lower + other.lower)

    def decompose(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Merge forces by position into symmetric and skew amplitudes.

        Returns
        -------
        xs : ndarray (K,)
            Distinct positions, sorted.
        fmean, fjump : ndarray (K, 2)
            ``<p> = (p+ + p-)/2`` and ``[p] = p+ - p-`` amplitudes.
        """
        xs = sorted({x for x, _ in self.upper + self.lower})
        index = {x: k for k, x in enumerate(xs)}
        up = np.zeros((len(xs), 2))
        lo = np.zeros((len(xs), 2))
        for x, f in self.upper:
            up[index[x]] += f
        for x, f in self.lower:
            lo[index[x]] += f
        return np.array(xs, dtype=np.float64), 0.5 * (up + lo), up - lo


def load_transforms(loading: PointForceLoading, xi: float) -> tuple[np.ndarray, np.ndarray]:
    """Fourier transforms ``(<p_hat>, [p_hat])`` at frequency ``xi``.

    ``p_hat(xi) = sum_k f_k exp(i xi x_k)``.
    """
    xs, fmean, fjump = loading.decompose()
    phase = np.exp(1j * float(xi) * xs)
    return phase @ fmean, phase @ fjump


@dataclass(frozen=True)
class SifResult:
    """Stress intensity factor together with how it was obtained."""

    K: ComplexSIF
    method: str
    quadrature: QuadratureReport | None = None
    conjugate_gap: float = 0.0


def _sif_from_integral(system: BimaterialSystem, total: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    m1 = m1_matrix(system)
    ks = np.linalg.solve(m1, total[0:2]) / (2j * math.pi)
    ka = np.linalg.solve(m1, total[2:4]) / (2j * math.pi)
    return ks, ka


def sif_betti(system: BimaterialSystem, loading: PointForceLoading, rtol: float = 1e-12) -> SifResult:
    """Complex SIF from the Betti integral of weight functions against the loading.

    ``(K, conj K) = (1/2 pi i) M1^-1 int ([U_hat]^T R <p_hat> + <U_hat>^T R [p_hat]) d eta``
    with ``R = diag(-1, 1)``. The two terms give ``K^S`` and ``K^A``.

    Raises
    ------
    QuadratureNonConvergence
        If the integral misses its tolerance or the recovered pair
        ``(K, conj K)`` is inconsistent beyond ``1e-8 |K|``.
    """
    xs, fmean, fjump = loading.decompose()
    p, c = system.packed
    fm = fmean.astype(np.complex128)
    fj = fjump.astype(np.complex128)

    def integrand(eta, side, group):
        if group is None:
            return _kernels.betti_envelope(eta, side, p, c, xs, fm, fj)
        sel = slice(group, group + 1)
        return _kernels.betti_envelope(eta, side, p, c, xs[sel], fm[sel], fj[sel])

    report = integrate_line(integrand, -xs, rtol=rtol)
    ks, ka = _sif_from_integral(system, report.value)
    kvec = ks + ka
    gap = abs(kvec[1] - np.conj(kvec[0]))
    if gap > CONJUGATE_TOL * abs(kvec[0]) + 1e-300:
        raise QuadratureNonConvergence(
            f"recovered K-vector is not a conjugate pair (gap {gap:.3e}, |K| {abs(kvec[0]):.3e})"
        )
    return SifResult(ComplexSIF(complex(ks[0]), complex(ka[0])), "betti_quadrature", report, float(gap))


def three_point_brackets(t: float, eps: float) -> tuple[complex, complex]:
    """Shape factors ``1/2 +- (1/4)((1 - t)^q + (1 + t)^q)`` with ``q = -1/2 - i eps``."""
    q = complex(-0.5, -eps)
    side = 0.25 * (complex(1.0 - t) ** q + complex(1.0 + t) ** q)
    return 0.5 + side, 0.5 - side


def sif_three_point_closed(system: BimaterialSystem, F: float, a: float, b: float) -> SifResult:
    """Closed-form SIF for the three-point crack-face load.

    With ``t = b/a`` and ``q = -1/2 - i eps``::

        K^S = e0^2 / (1 - beta)   * F sqrt(H22/H11) sqrt(2/pi) a^q {1/2 + ((1-t)^q + (1+t)^q)/4}
        K^A = e0^2 d2 / (1 - beta) * F sqrt(H22/H11) sqrt(2/pi) a^q {1/2 - ((1-t)^q + (1+t)^q)/4}

    ``K^A`` depends on ``gamma`` not at all: the ``B`` part of the skew weight
    function pairs with the lower-face forces into an integrand that is
    analytic and decaying in the lower half-plane, so it integrates to zero.

    Raises
    ------
    DomainError
        Unless ``a > 0`` and ``0 <= b < a``.
    """
    if not a > 0.0:
        raise DomainError(f"a must be positive, got {a}")
    if not 0.0 <= b < a:
        raise DomainError(f"need 0 <= b < a, got a={a}, b={b}")
    eps, beta, e0 = system.epsilon, system.beta, system.e0
    q = complex(-0.5, -eps)
    base = e0**2 / (1.0 - beta) * F * math.sqrt(system.H22 / system.H11) * math.sqrt(2.0 / math.pi) * a**q
    brs, bra = three_point_brackets(b / a, eps)
    ka = 0.0j if b == 0.0 else base * system.delta2 * bra
    return SifResult(ComplexSIF(base * brs, ka), "closed_form")


@dataclass(frozen=True)
class SweepRow:
    """One row of a three-point sweep, normalized by ``a^(1/2) / F``."""

    b_over_a: float
    beta: float
    KS: complex
    KA: complex

    @property
    def ratio(self) -> float:
        """``Re K^A / Re K^S``."""
        return self.KA.real / self.KS.real


def _sweep_point(args) -> SweepRow:
    system, F, a, t, beta = args
    res = sif_three_point_closed(system, F, a, t * a)
    norm = math.sqrt(a) / F
    return SweepRow(t, beta, res.K.KS * norm, res.K.KA * norm)


def ratio_sweep(
    system: BimaterialSystem,
    F: float,
    a: float,
    grid: Sequence[float],
    betas: Sequence[float] | None = None,
    workers: int = 1,
) -> list[SweepRow]:
    """Normalized ``K^S``, ``K^A`` and their ratio over a ``b/a`` grid.

    Rows are ordered grid-major then by ``beta``, independent of ``workers``.
    With ``betas`` given, each value replaces the material ``beta`` while the
    remaining interface constants are held fixed.
    """
    grid = [float(t) for t in grid]
    for t in grid:
        if not 0.0 <= t < 1.0:
            raise DomainError(f"b/a grid values must lie in [0, 1), got {t}")
    if betas is None:
        systems = [(system.beta, system)]
    else:
        systems = [(float(bt), system.with_beta(bt)) for bt in betas]
    jobs = [(sys_, F, a, t, bt) for t in grid for bt, sys_ in systems]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_point, jobs))
    return [_sweep_point(job) for job in jobs]
