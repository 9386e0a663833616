"""Adaptive quadrature for the half-line Fourier integrals of the Betti formula.

The integrand on one side of the origin has the form
``sum_k E_k(eta) exp(-i eta a_k)`` with ``a_k > 0``, where ``E_k`` behaves like
``|eta|^(-1/2 +- i eps)`` both at the origin and at infinity. It is therefore
weakly singular at ``eta = 0`` and only conditionally convergent at infinity.
The half-line is split into three pieces:

1. ``|eta| in (0, eta1]``: the substitution ``|eta| = u^2`` removes the
   inverse square root and geometrically graded panels in ``u`` resolve the
   ``u^(2 i eps)`` oscillation.
2. ``|eta| in [eta1, L]``: globally adaptive Gauss-Legendre panels.
3. ``|eta| > L``: for each force separately, the path is rotated to
   ``eta = side*L - i t`` where ``exp(-i eta a_k)`` decays like ``exp(-a_k t)``,
   and the resulting Laplace-type integral is evaluated by Gauss-Laguerre
   quadrature. ``L`` is doubled until two Laguerre orders agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import QuadratureNonConvergence

# Integrand signature: func(eta, side, group) -> ndarray (N, d); group None
# means all force groups, an int selects one group (for the rotated tail).
Integrand = Callable[[np.ndarray, int, "int | None"], np.ndarray]

_GL_HIGH = 20
_GL_LOW = 10
_LAG_ORDERS = (48, 72)
_GRADING_LEVELS = 52


@lru_cache(maxsize=None)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


@lru_cache(maxsize=None)
def _laguerre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.laguerre.laggauss(n)
    # Fold the exp(-x) weight back in so that plain function values can be summed.
    return x, w * np.exp(x)


@dataclass
class QuadratureReport:
    """Result of a half-line or full-line integration."""

    value: np.ndarray
    error_estimate: float
    evaluations: int
    cutoff: float

    def __add__(self, other: "QuadratureReport") -> "QuadratureReport":
        return QuadratureReport(
            self.value + other.value,
            self.error_estimate + other.error_estimate,
            self.evaluations + other.evaluations,
            max(self.cutoff, other.cutoff),
        )


def _panel_rules(g, lo: np.ndarray, hi: np.ndarray):
    """Apply the high and low order Gauss-Legendre rules to every panel."""
    xh, wh = _legendre(_GL_HIGH)
    xl, wl = _legendre(_GL_LOW)
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    nodes = np.concatenate(
        [(mid[:, None] + half[:, None] * xh).ravel(), (mid[:, None] + half[:, None] * xl).ravel()]
    )
    vals = g(nodes)
    npan = lo.size
    vh = vals[: npan * _GL_HIGH].reshape(npan, _GL_HIGH, -1)
    vl = vals[npan * _GL_HIGH :].reshape(npan, _GL_LOW, -1)
    ih = half[:, None] * np.einsum("q,pqd->pd", wh, vh)
    il = half[:, None] * np.einsum("q,pqd->pd", wl, vl)
    err = np.max(np.abs(ih - il), axis=1)
    return ih, err, nodes.size


def adaptive_panels(
    g: Callable[[np.ndarray], np.ndarray],
    edges: np.ndarray,
    tol: float,
    max_rounds: int = 40,
) -> QuadratureReport:
    """Globally adaptive Gauss-Legendre quadrature over consecutive panels.

    Parameters
    ----------
    g : callable
        Vectorized integrand mapping real nodes ``(N,)`` to ``(N, d)``.
    edges : ndarray
        Initial panel boundaries, increasing.
    tol : float
        Absolute tolerance on the summed error estimate (max-norm over
        components), or, if negative, ``|tol|`` times the running integral
        magnitude.
    """
    lo = np.asarray(edges[:-1], dtype=np.float64)
    hi = np.asarray(edges[1:], dtype=np.float64)
    done_val = None
    done_err = 0.0
    evals = 0
    for _ in range(max_rounds):
        ih, err, n = _panel_rules(g, lo, hi)
        evals += n
        total = ih.sum(axis=0) if done_val is None else done_val + ih.sum(axis=0)
        budget = abs(tol) if tol >= 0 else abs(tol) * max(float(np.max(np.abs(total))), 1e-300)
        if done_err + err.sum() <= budget:
            return QuadratureReport(total, done_err + float(err.sum()), evals, float(hi[-1]))
        share = budget / max(lo.size, 1)
        split = err > 0.25 * share
        keep = ~split
        kept = ih[keep].sum(axis=0)
        done_val = kept if done_val is None else done_val + kept
        done_err += float(err[keep].sum())
        mid = 0.5 * (lo[split] + hi[split])
        lo, hi = np.concatenate([lo[split], mid]), np.concatenate([mid, hi[split]])
        order = np.argsort(lo)
        lo, hi = lo[order], hi[order]
    raise QuadratureNonConvergence(
        f"panel quadrature missed tolerance after {max_rounds} refinement rounds"
    )


def rotated_tail(func: Integrand, side: int, cutoff: float, shift: float, group: int):
    """Integral of one force group over ``|eta| > cutoff`` via path rotation.

    Returns the value (``(d,)``), an error estimate and the evaluation count.
    """
    results = []
    evals = 0
    for order in _LAG_ORDERS:
        x, w = _laguerre(order)
        eta = side * cutoff - 1j * x / shift
        vals = func(eta, side, group)
        evals += order
        results.append((-1j * side / shift) * (w @ vals))
    err = float(np.max(np.abs(results[1] - results[0])))
    return results[1], err, evals


def integrate_side(
    func: Integrand,
    side: int,
    shifts: np.ndarray,
    rtol: float = 1e-12,
    max_doublings: int = 12,
) -> QuadratureReport:
    """Integral of ``func`` over the half-line ``side * (0, inf)``.

    Parameters
    ----------
    func : callable
        ``func(eta, side, group)`` returning ``(N, d)`` complex values for complex
        ``eta`` on the given side (analytic continuation into the lower
        half-plane is required for the tail).
    side : {+1, -1}
    shifts : ndarray
        Positive decay rates ``a_k`` of the force groups.
    rtol : float
        Relative tolerance with respect to the magnitude of the result.

    Raises
    ------
    QuadratureNonConvergence
        If the tail does not settle after ``max_doublings`` cutoff doublings
        or the panel refinement exhausts its budget.
    """
    shifts = np.asarray(shifts, dtype=np.float64)
    a_min, a_max = float(shifts.min()), float(shifts.max())
    eta1 = 1.0 / a_max
    cutoff = 12.0 / a_min

    def on_line(x):
        return func(side * x.astype(np.complex128), side, None)

    # Piece 1: |eta| = u^2 on geometric panels towards the origin.
    u1 = np.sqrt(eta1)
    uedges = u1 * 2.0 ** -np.arange(_GRADING_LEVELS, -1, -1, dtype=np.float64)

    def near(u):
        return (2.0 * u)[:, None] * on_line(u * u)

    head = adaptive_panels(near, uedges, -rtol)
    u0 = uedges[0]
    head.value = head.value + near(np.array([0.5 * u0]))[0] * u0
    head.evaluations += 1

    # Piece 2 grows with the cutoff; piece 3 is recomputed per cutoff.
    width = np.pi / a_max
    lo = eta1
    body = QuadratureReport(np.zeros_like(head.value), 0.0, 0, eta1)
    for _ in range(max_doublings):
        count = max(int(np.ceil((cutoff - lo) / width)), 1)
        edges = np.linspace(lo, cutoff, count + 1)
        body = body + adaptive_panels(on_line, edges, -rtol)
        lo = cutoff
        tail = np.zeros_like(head.value)
        tail_err = 0.0
        tail_evals = 0
        for k, a in enumerate(shifts):
            val, err, n = rotated_tail(func, side, cutoff, a, k)
            tail = tail + val
            tail_err += err
            tail_evals += n
        total = head.value + body.value + tail
        scale = max(float(np.max(np.abs(total))), 1e-300)
        if tail_err <= rtol * scale:
            return QuadratureReport(
                total,
                head.error_estimate + body.error_estimate + tail_err,
                head.evaluations + body.evaluations + tail_evals,
                cutoff,
            )
        cutoff *= 2.0
    raise QuadratureNonConvergence(
        f"rotated tail did not converge up to cutoff {cutoff / 2.0:.3e} (error {tail_err:.3e})"
    )


def integrate_line(func: Integrand, shifts: np.ndarray, rtol: float = 1e-12) -> QuadratureReport:
    """Integral over the whole real line, split at the origin."""
    return integrate_side(func, 1, shifts, rtol) + integrate_side(func, -1, shifts, rtol)
