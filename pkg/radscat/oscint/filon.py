"""Filon-type quadrature for int e^{i(t k^2 + c k)} A(k) dk.

The amplitude A is sampled at Gauss-Legendre nodes on each panel and replaced
by its interpolating polynomial. The moments of the interpolant against the
exact phase are computed with a Gauss rule on sub-panels over which the phase
advances by at most pi/2, so the rule stays accurate for |t| >> 1 without
resolving the oscillation with amplitude samples.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import legendre
from scipy.integrate import quad
from scipy.interpolate import BarycentricInterpolator

from radscat.errors import DomainError, NonConvergenceError
from radscat.logger import get_logger

SUB_PHASE = np.pi / 2
SUB_NODES = 8
DEFAULT_NODES = 12
DEFAULT_PANEL_WIDTH = 0.5
DEFAULT_TOL = 1e-11
MAX_HALVINGS = 10
QUAD_LIMIT = 400
DERIV_STEP = 1e-3


@lru_cache(maxsize=32)
def _gauss(m: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = legendre.leggauss(m)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _next_power_of_two(n: float) -> int:
    return 1 << max(0, math.ceil(math.log2(max(n, 1.0))))


def panel_nodes(edges, m: int = DEFAULT_NODES) -> np.ndarray:
    """Gauss-Legendre nodes of every panel, shape (P, m)."""
    edges = np.asarray(edges, dtype=float)
    ref_nodes, _ = _gauss(m)
    half = np.diff(edges) / 2
    return (edges[:-1] + half)[:, None] + half[:, None] * ref_nodes


@lru_cache(maxsize=64)
def _sub_rule(m: int, n_sub: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Fine points/weights on [-1, 1] and the Lagrange matrix of the m-point rule.

    ``lagrange[j, i]`` is the i-th Lagrange basis polynomial of the m Gauss
    nodes evaluated at fine point j.
    """
    ref_nodes, _ = _gauss(m)
    sub_nodes, sub_weights = _gauss(SUB_NODES)
    edges = np.linspace(-1.0, 1.0, n_sub + 1)
    half = np.diff(edges) / 2
    mid = edges[:-1] + half
    fine = (mid[:, None] + half[:, None] * sub_nodes).ravel()
    fine_weights = (half[:, None] * sub_weights).ravel()
    lagrange = BarycentricInterpolator(ref_nodes, np.eye(m))(fine)
    for array in (fine, fine_weights, lagrange):
        array.setflags(write=False)
    return fine, fine_weights, lagrange


class FilonRule:
    """Exact-phase product rule on a set of panels.

    Parameters
    ----------
    t : float
        Coefficient of k^2 in the phase
    edges : array
        Increasing panel edges
    nodes_per_panel : int
        Amplitude samples (Gauss-Legendre nodes) per panel
    max_frequency : float
        Largest |c| the rule must resolve in the linear phase c k
    """

    def __init__(
        self,
        t: float,
        edges,
        nodes_per_panel: int = DEFAULT_NODES,
        max_frequency: float = 0.0,
    ):
        self.t = float(t)
        self.edges = np.asarray(edges, dtype=float)
        if self.edges.ndim != 1 or len(self.edges) < 2:
            raise ValueError("A Filon rule needs at least one panel")
        if np.any(np.diff(self.edges) <= 0):
            raise ValueError("Panel edges must be strictly increasing")
        self.m = int(nodes_per_panel)
        self.max_frequency = abs(float(max_frequency))

        left, right = self.edges[:-1], self.edges[1:]
        half = (right - left) / 2
        mid = (right + left) / 2
        self.nodes = panel_nodes(self.edges, self.m)

        slope = 2 * abs(self.t) * np.maximum(np.abs(left), np.abs(right))
        advance = (slope + self.max_frequency) * (right - left)
        self._n_sub = [_next_power_of_two(a / SUB_PHASE) for a in advance]

        fine_nodes, fine_weights, slices = [], [], []
        start = 0
        for p, n_sub in enumerate(self._n_sub):
            fine, weights, _ = _sub_rule(self.m, n_sub)
            fine_nodes.append(mid[p] + half[p] * fine)
            fine_weights.append(half[p] * weights)
            slices.append(slice(start, start + len(fine)))
            start += len(fine)
        self.fine_nodes = np.concatenate(fine_nodes)
        self.fine_weights = np.concatenate(fine_weights) * np.exp(
            1j * self.t * self.fine_nodes**2
        )
        self._slices = slices

    @property
    def n_panels(self) -> int:
        return len(self.edges) - 1

    @property
    def n_fine(self) -> int:
        return len(self.fine_nodes)

    def panel_slice(self, p: int) -> slice:
        """Slice of the fine points that belong to panel p."""
        return self._slices[p]

    def lagrange(self, p: int) -> np.ndarray:
        """(n_fine_p, m) interpolation matrix of panel p."""
        return _sub_rule(self.m, self._n_sub[p])[2]

    def sample(self, func: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """func at the amplitude nodes, shape (P, m, ...)."""
        return np.asarray(func(self.nodes))

    def _check_frequency(self, c) -> None:
        c_max = float(np.max(np.abs(c))) if np.size(c) else 0.0
        if c_max > self.max_frequency * (1 + 1e-12):
            raise ValueError(
                f"Linear phase |c|={c_max:g} exceeds the resolved frequency"
                f" {self.max_frequency:g}"
            )

    def interpolate(self, values) -> np.ndarray:
        """Interpolant of node values (P, m, ...) at the fine points (N, ...)."""
        values = np.asarray(values)
        if values.shape[:2] != self.nodes.shape:
            raise ValueError(
                f"Expected values of shape {self.nodes.shape} + (...),"
                f" got {values.shape}"
            )
        dtype = np.result_type(values.dtype, float)
        out = np.empty((self.n_fine,) + values.shape[2:], dtype=dtype)
        for p in range(self.n_panels):
            out[self._slices[p]] = np.tensordot(self.lagrange(p), values[p], axes=1)
        return out

    def phase_weights(self, c: float = 0.0) -> np.ndarray:
        """Fine weights times e^{i(t k^2 + c k)}."""
        self._check_frequency(c)
        if c == 0:
            return self.fine_weights
        return self.fine_weights * np.exp(1j * c * self.fine_nodes)

    def integrate(self, values, c: float = 0.0) -> np.ndarray:
        """int e^{i(t k^2 + c k)} A(k) dk with A given at the nodes."""
        return np.tensordot(self.phase_weights(c), self.interpolate(values), axes=1)

    def weights(self, c: float = 0.0) -> np.ndarray:
        """(P, m) weights W with sum W * A(nodes) equal to integrate(A, c)."""
        phase = self.phase_weights(c)
        return np.stack(
            [
                self.lagrange(p).T @ phase[self._slices[p]]
                for p in range(self.n_panels)
            ]
        )


def filon_weights(t: float, c: float, edges, m: int = DEFAULT_NODES):
    """Nodes and exact-phase weights for piecewise polynomial amplitudes.

    Returns
    -------
    tuple[np.ndarray, np.ndarray]
        Nodes and weights, both of shape (n_panels, m)
    """
    rule = FilonRule(t, edges, m, max_frequency=abs(c))
    return rule.nodes, rule.weights(c)


def fresnel_gaussian(t: float, c: float = 0.0) -> complex:
    """int_R e^{i(t k^2 + c k)} dk = sqrt(pi/|t|) e^{i pi/4 sign t} e^{-i c^2/(4t)}."""
    if t == 0:
        raise DomainError("The Fresnel integral needs t != 0")
    return complex(
        np.sqrt(np.pi / abs(t))
        * np.exp(0.25j * np.pi * np.sign(t))
        * np.exp(-1j * c**2 / (4 * t))
    )


def graded_edges(
    start: float, stop: float, width: float, levels: int = 0
) -> np.ndarray:
    """Uniform panels of width <= ``width``, the first one split geometrically.

    The geometric splitting towards ``start`` handles amplitudes that behave
    like a fractional power of k - start.
    """
    if stop <= start:
        raise ValueError(f"Empty interval [{start}, {stop}]")
    n = max(1, math.ceil((stop - start) / width))
    edges = np.linspace(start, stop, n + 1)
    if levels > 0:
        first = edges[1] - start
        inner = start + first * 2.0 ** -np.arange(levels, 0, -1)
        edges = np.concatenate([[start], inner, edges[1:]])
    return edges


def legendre_tail(values, m: Optional[int] = None) -> np.ndarray:
    """Size of the last two Legendre coefficients of node values, per panel.

    values has shape (P, m, ...); the maximum over trailing axes is returned.
    """
    values = np.asarray(values)
    if m is None:
        m = values.shape[1]
    nodes, weights = _gauss(m)
    # discrete Legendre transform on the Gauss nodes
    vander = legendre.legvander(nodes, m - 1)
    norms = (2 * np.arange(m) + 1) / 2
    coeffs = np.einsum("j,jn,pj...->pn...", weights, vander, values)
    coeffs = coeffs * norms.reshape((1, m) + (1,) * (values.ndim - 2))
    tail = np.abs(coeffs[:, -1]) + np.abs(coeffs[:, -2])
    if tail.ndim > 1:
        tail = tail.reshape(len(tail), -1).max(axis=1)
    return tail


@dataclass
class AmplitudeProfile:
    """Amplitude A on [a, b] with the norms entering the van der Corput bound.

    Parameters
    ----------
    func : callable
        Vectorized k -> A(k)
    a, b : float
        Interval (a < b)
    deriv : callable, optional
        Analytic A'; five-point differences are used otherwise
    measure_tv : float, optional
        Total variation of a measure whose Fourier transform is A
    """

    func: Callable[[np.ndarray], np.ndarray]
    a: float
    b: float
    deriv: Optional[Callable[[np.ndarray], np.ndarray]] = None
    measure_tv: Optional[float] = None
    n_sample: int = 4001

    def __post_init__(self):
        if not self.b > self.a:
            raise DomainError(f"Empty amplitude interval [{self.a}, {self.b}]")

    def __call__(self, k):
        return self.func(np.asarray(k, dtype=float))

    def derivative(self, k) -> np.ndarray:
        """A'(k), analytic when available."""
        k = np.asarray(k, dtype=float)
        if self.deriv is not None:
            return self.deriv(k)
        h = DERIV_STEP * max(1.0, float(np.max(np.abs(k))) if k.size else 1.0)
        return (
            -self.func(k + 2 * h)
            + 8 * self.func(k + h)
            - 8 * self.func(k - h)
            + self.func(k - 2 * h)
        ) / (12 * h)

    @cached_property
    def sup_norm(self) -> float:
        k = np.linspace(self.a, self.b, self.n_sample)
        return float(np.max(np.abs(self(k))))

    @cached_property
    def deriv_l1(self) -> float:
        """||A'||_1 on [a, b] by adaptive quadrature."""
        breaks = np.linspace(self.a, self.b, 17)
        total = 0.0
        for lo, hi in zip(breaks[:-1], breaks[1:]):
            value, _ = quad(
                lambda k: float(np.abs(self.derivative(np.array([k]))[0])),
                lo,
                hi,
                limit=QUAD_LIMIT,
            )
            total += value
        return total

    @property
    def norm(self) -> float:
        """||alpha|| if known, else ||A||_inf + ||A'||_1."""
        if self.measure_tv is not None:
            return float(self.measure_tv)
        return self.sup_norm + self.deriv_l1


@dataclass(frozen=True)
class OscillatoryResult:
    """Value of an oscillatory integral and an a-posteriori error bound."""

    value: complex
    error_bound: float
    n_panels: int


def ibp_tail(t: float, c, k: float, value, deriv, side: str):
    """Two integration-by-parts terms of int e^{i(t k^2 + c k)} A beyond k.

    ``side="right"`` is int_k^inf and ``side="left"`` is int_-inf^k. The
    returned error estimate is the size of the next term for slowly varying A.
    c, A(k) and A'(k) may be arrays of the same shape; scalars give a
    (complex, float) pair.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    c = np.asarray(c, dtype=float)
    dphase = 2 * t * k + c
    if side == "right" and np.any(dphase * np.sign(t) <= 0):
        raise DomainError(
            f"Stationary point beyond k={k:g} (t={t:g})",
            details={"k": k, "t": t, "c": c.tolist()},
        )
    if side == "left" and np.any(dphase * np.sign(t) >= 0):
        raise DomainError(
            f"Stationary point before k={k:g} (t={t:g})",
            details={"k": k, "t": t, "c": c.tolist()},
        )
    ddphase = 2 * t
    # B = d/dk (A / (i phi'))
    second = deriv / (1j * dphase) - value * ddphase / (1j * dphase**2)
    term = np.exp(1j * (t * k**2 + c * k)) * (value - second) / (1j * dphase)
    error = (3 * np.abs(second) + np.abs(deriv) / np.abs(dphase)) * abs(ddphase)
    error /= np.abs(dphase) ** 2
    if side == "right":
        term = -term
    if np.ndim(term) == 0:
        return complex(term), float(error)
    return term, error


def _panel_count(profile: AmplitudeProfile, panel_width: float) -> int:
    return max(1, math.ceil((profile.b - profile.a) / panel_width))


def fresnel_filon(
    t: float,
    c: float,
    profile: AmplitudeProfile,
    panel_width: float = DEFAULT_PANEL_WIDTH,
    nodes_per_panel: int = DEFAULT_NODES,
    tol: float = DEFAULT_TOL,
    improper: bool = False,
    logger: Optional[logging.Logger] = None,
) -> OscillatoryResult:
    """I(t) = int_a^b e^{i(t k^2 + c k)} A(k) dk.

    Panels are halved until two successive rules agree to ``tol`` relative to
    max(|I|, ||A||_inf |t|^{-1/2}). With ``improper=True`` the integral is
    continued to the real line with integration-by-parts tails at both ends.
    """
    if logger is None:
        logger = get_logger("fresnel_filon")
    if t == 0:
        raise DomainError("Oscillatory integrals need t != 0")

    def evaluate(n_panels: int) -> complex:
        edges = np.linspace(profile.a, profile.b, n_panels + 1)
        rule = FilonRule(t, edges, nodes_per_panel, max_frequency=abs(c))
        return complex(rule.integrate(rule.sample(profile), c))

    n_panels = _panel_count(profile, panel_width)
    previous = evaluate(n_panels)
    scale_floor = profile.sup_norm / math.sqrt(abs(t))
    for _ in range(MAX_HALVINGS):
        n_panels *= 2
        current = evaluate(n_panels)
        difference = abs(current - previous)
        scale = max(abs(current), scale_floor)
        if difference <= tol * scale:
            break
        previous = current
    else:
        raise NonConvergenceError(
            f"Oscillatory quadrature did not settle with {n_panels} panels"
            f" (last change {difference:.3e})",
            details={
                "t": t,
                "c": c,
                "interval": [profile.a, profile.b],
                "panels": n_panels,
            },
        )

    value, error = current, difference
    if improper:
        for k_end, side in ((profile.b, "right"), (profile.a, "left")):
            k_arr = np.array([k_end])
            tail, tail_error = ibp_tail(
                t,
                c,
                k_end,
                complex(profile(k_arr)[0]),
                complex(profile.derivative(k_arr)[0]),
                side,
            )
            value += tail
            error += tail_error
    logger.debug(
        f"Oscillatory integral at t={t:g}, c={c:g}: {value:.6e}"
        f" (+- {error:.1e}, {n_panels} panels)"
    )
    return OscillatoryResult(value=value, error_bound=float(error), n_panels=n_panels)
