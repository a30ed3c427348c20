"""Potential presets and their moment functionals."""

from __future__ import annotations

import logging
import re
from abc import abstractmethod
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Optional

import numpy as np
import pandas as pd
from scipy.integrate import quad
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from radscat.base import Base
from radscat.errors import ConfigError, HypothesisViolationError
from radscat.logger import get_logger
from radscat.utils import DPATH_POTENTIALS, StrOrPathLike

QUAD_LIMIT = 400
# integrals over [eps, 1] for these eps must settle for q to count as integrable at 0
HYPOTHESIS_EPS = (1e-4, 1e-8, 1e-12)
# and integrals over [1, R] must settle for these R
HYPOTHESIS_RADII = (1e2, 1e4, 1e6)
HYPOTHESIS_RTOL = 1e-3


def _fmt(value: float) -> str:
    return np.format_float_positional(float(value), trim="-")


def _settled(values: list[float]) -> bool:
    """True if the last two values of a growing sequence of integrals agree."""
    if not np.all(np.isfinite(values)):
        return False
    return abs(values[-1] - values[-2]) <= HYPOTHESIS_RTOL * max(abs(values[-1]), 1e-12)


@dataclass(frozen=True)
class HypothesisReport:
    """Outcome of the numerical integrability check."""

    ok: bool
    near_zero: float
    at_infinity: float
    weight_exponent: float
    reason: str = ""


class Potential(Base):
    """A real potential q on the half line.

    Subclasses implement ``_evaluate`` and ``breakpoints``; compactly supported
    potentials also set ``support_end``.
    """

    name: str = "potential"

    @property
    @abstractmethod
    def id(self) -> str:
        """Canonical preset string, e.g. ``well(1,0,1)``."""

    @abstractmethod
    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        """Evaluate q on an array of positive x."""

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Points where q or its derivatives jump."""
        return ()

    @property
    def support_end(self) -> Optional[float]:
        """Right end of the support, or None if q has unbounded support."""
        return None

    @property
    def is_zero(self) -> bool:
        """True if q vanishes identically."""
        return False

    def __call__(self, x):
        x_arr = np.asarray(x, dtype=float)
        values = np.where(x_arr > 0, self._evaluate(np.maximum(x_arr, 1e-300)), 0.0)
        return values if np.ndim(x) else float(values)

    def _points(self, a: float, b: float) -> Optional[list[float]]:
        points = [p for p in self.breakpoints if a < p < b]
        return points or None

    def _integrate(self, func: Callable[[float], float], a: float, b: float) -> float:
        """Integrate func against |q| structure over [a, b], b possibly infinite."""
        if b <= a:
            return 0.0
        end = self.support_end
        if end is not None:
            b = min(b, end)
            if b <= a:
                return 0.0
        if np.isinf(b):
            finite_end = max(a, max(self.breakpoints, default=a)) + 1.0
            head = self._integrate(func, a, finite_end)
            tail, _ = quad(func, finite_end, np.inf, limit=QUAD_LIMIT)
            return head + tail
        value, _ = quad(func, a, b, points=self._points(a, b), limit=QUAD_LIMIT)
        return value

    def _integrate_decades(
        self, func: Callable[[float], float], a: float, b: float
    ) -> float:
        """Integrate over [a, b] split at powers of ten (a > 0)."""
        edges = np.unique(
            np.concatenate(
                [
                    [a, b],
                    10.0 ** np.arange(np.ceil(np.log10(a)), np.floor(np.log10(b)) + 1),
                ]
            )
        )
        edges = edges[(edges >= a) & (edges <= b)]
        pieces = zip(edges[:-1], edges[1:])
        return float(sum(self._integrate(func, lo, hi) for lo, hi in pieces))

    def moment(self, j: float, x: float) -> float:
        """sigma_j(x) = int_0^x y^j |q(y)| dy."""
        return self._integrate(lambda y: y**j * abs(self(y)), 0.0, x)

    def tail_moment(self, j: float, x: float) -> float:
        """Tilde sigma_j(x) = int_x^inf y^j |q(y)| dy."""
        return self._integrate(lambda y: y**j * abs(self(y)), x, np.inf)

    def weighted_moment(self, k: complex, x: float) -> float:
        """int_0^x y|q(y)|/(1+|k|y) dy."""
        kabs = abs(k)
        return self._integrate(lambda y: y * abs(self(y)) / (1 + kabs * y), 0.0, x)

    def weighted_tail_moment(self, k: complex, x: float) -> float:
        """int_x^inf y|q(y)|/(1+|k|y) dy."""
        kabs = abs(k)
        return self._integrate(lambda y: y * abs(self(y)) / (1 + kabs * y), x, np.inf)

    @cached_property
    def l1_norm(self) -> float:
        """||q||_1."""
        return self.tail_moment(0, 0.0)

    @cached_property
    def integral(self) -> float:
        """Signed integral of q over the half line."""
        return self._integrate(self, 0.0, np.inf)

    @cached_property
    def sup_negative_part(self) -> float:
        """sup_x max(0, -q(x)) sampled on a fine grid (breakpoints included)."""
        if self.is_zero:
            return 0.0
        radius = self.truncation_radius()
        x = np.concatenate(
            [
                np.linspace(radius * 1e-6, radius, 4001),
                np.asarray(self.breakpoints, dtype=float),
            ]
        )
        x = x[x > 0]
        return float(max(0.0, np.max(-self(x))))

    def truncation_radius(self, tol: float = 1e-12) -> float:
        """Smallest x with tilde sigma_1(x) < tol (support end if compact)."""
        if self.is_zero:
            return 0.0
        if self.support_end is not None:
            return float(self.support_end)
        if self.tail_moment(1, 0.0) < tol:
            return 0.0
        upper = max(1.0, max(self.breakpoints, default=1.0))
        while self.tail_moment(1, upper) >= tol:
            upper *= 2.0
            if upper > 1e8:
                raise HypothesisViolationError(
                    f"First tail moment of {self.id} does not fall below {tol}",
                    details={"potential": self.id, "tol": tol},
                )
        return float(
            brentq(
                lambda r: np.log(self.tail_moment(1, r) + 1e-300) - np.log(tol),
                upper / 2.0,
                upper,
                xtol=1e-10,
            )
        )

    @cached_property
    def effective_range(self) -> float:
        """Length scale of q: support end, else 3 tilde sigma_1(0)/tilde sigma_0(0)."""
        if self.is_zero:
            return 0.0
        if self.support_end is not None:
            return float(self.support_end)
        return 3.0 * self.tail_moment(1, 0.0) / self.l1_norm

    def check_hypothesis(
        self, l: float, logger: Optional[logging.Logger] = None
    ) -> HypothesisReport:
        """Numerically check int_0^1 |q| < inf and int_1^inf x^max(2,l+1)|q| < inf."""
        if logger is None:
            logger = get_logger("check_hypothesis")
        weight = max(2.0, l + 1.0)
        if self.is_zero:
            return HypothesisReport(True, 0.0, 0.0, weight)

        near = [
            self._integrate_decades(lambda y: abs(self(y)), eps, 1.0)
            for eps in HYPOTHESIS_EPS
        ]
        far = [
            self._integrate_decades(lambda y: y**weight * abs(self(y)), 1.0, radius)
            for radius in HYPOTHESIS_RADII
        ]
        reasons = []
        if not _settled(near):
            reasons.append(
                f"int_0^1 |q| does not settle as eps -> 0 (values {near})"
            )
        if not _settled(far):
            reasons.append(
                f"int_1^R x^{_fmt(weight)}|q| does not settle as R -> inf"
                f" (values {far})"
            )
        report = HypothesisReport(
            ok=not reasons,
            near_zero=float(near[-1]),
            at_infinity=float(far[-1]),
            weight_exponent=weight,
            reason="; ".join(reasons),
        )
        if not report.ok:
            logger.warning(
                f"Potential {self.id} violates the hypothesis: {report.reason}"
            )
        return report

    def require_hypothesis(self, l: float, logger: Optional[logging.Logger] = None):
        """Raise HypothesisViolationError if check_hypothesis fails."""
        report = self.check_hypothesis(l, logger=logger)
        if not report.ok:
            raise HypothesisViolationError(
                f"Potential {self.id} violates the integrability hypothesis",
                details={"potential": self.id, "l": l, "reason": report.reason},
            )
        return report

    def __str__(self) -> str:
        return self.id


class FreePotential(Potential):
    """q = 0."""

    name = "free"

    @property
    def id(self) -> str:
        return "free"

    @property
    def is_zero(self) -> bool:
        return True

    @property
    def support_end(self) -> Optional[float]:
        return 0.0

    def _evaluate(self, x):
        return np.zeros_like(x)


class WellPotential(Potential):
    """q = -v0 on [a, b], zero elsewhere."""

    name = "well"

    def __init__(self, v0: float, a: float, b: float):
        if not 0 <= a < b:
            raise ConfigError(f"well(v0,a,b) needs 0 <= a < b, got a={a}, b={b}")
        self.v0 = float(v0)
        self.a = float(a)
        self.b = float(b)

    @property
    def id(self) -> str:
        return f"well({_fmt(self.v0)},{_fmt(self.a)},{_fmt(self.b)})"

    @property
    def is_zero(self) -> bool:
        return self.v0 == 0

    @property
    def breakpoints(self):
        return tuple(p for p in (self.a, self.b) if p > 0)

    @property
    def support_end(self):
        return 0.0 if self.is_zero else self.b

    def _evaluate(self, x):
        return np.where((x >= self.a) & (x <= self.b), -self.v0, 0.0)

    @cached_property
    def sup_negative_part(self) -> float:
        return max(0.0, self.v0)


class ExpDecayPotential(Potential):
    """q = v0 exp(-x/a)."""

    name = "expdecay"

    def __init__(self, v0: float, a: float):
        if a <= 0:
            raise ConfigError(f"expdecay(v0,a) needs a > 0, got a={a}")
        self.v0 = float(v0)
        self.a = float(a)

    @property
    def id(self) -> str:
        return f"expdecay({_fmt(self.v0)},{_fmt(self.a)})"

    @property
    def is_zero(self) -> bool:
        return self.v0 == 0

    def _evaluate(self, x):
        return self.v0 * np.exp(-x / self.a)

    def tail_moment(self, j: float, x: float) -> float:
        if j == 1:
            return abs(self.v0) * self.a * (x + self.a) * np.exp(-x / self.a)
        if j == 0:
            return abs(self.v0) * self.a * np.exp(-x / self.a)
        return super().tail_moment(j, x)

    @cached_property
    def sup_negative_part(self) -> float:
        return max(0.0, -self.v0)


class PowerPotential(Potential):
    """q = c x^(-p) on (0, b], zero beyond b."""

    name = "power"

    def __init__(self, c: float, p: float, b: float):
        if b <= 0:
            raise ConfigError(f"power(c,p,b) needs b > 0, got b={b}")
        self.c = float(c)
        self.p = float(p)
        self.b = float(b)

    @property
    def id(self) -> str:
        return f"power({_fmt(self.c)},{_fmt(self.p)},{_fmt(self.b)})"

    @property
    def is_zero(self) -> bool:
        return self.c == 0

    @property
    def breakpoints(self):
        return (self.b,)

    @property
    def support_end(self):
        return self.b

    def _evaluate(self, x):
        return np.where(x <= self.b, self.c * x ** (-self.p), 0.0)


class TabulatedPotential(Potential):
    """Cubic-spline interpolant of (x, q) samples, zero beyond the last sample."""

    name = "tabulated"

    def __init__(self, fpath: StrOrPathLike):
        self.fpath = Path(fpath)
        df = pd.read_csv(self.fpath)
        if df.shape[1] != 2:
            raise ConfigError(
                f"Tabulated potential {self.fpath} must have two columns (x, q)"
                f", got {list(df.columns)}"
            )
        x, q = (df.iloc[:, i].to_numpy(dtype=float) for i in range(2))
        if len(x) < 2 or np.any(np.diff(x) <= 0) or x[0] < 0:
            raise ConfigError(
                f"Tabulated potential {self.fpath} needs at least two samples with"
                " nonnegative, strictly increasing x"
            )
        if not np.all(np.isfinite(q)):
            raise ConfigError(f"Tabulated potential {self.fpath} has non-finite q")
        self._x = x
        self._spline = CubicSpline(x, q, extrapolate=False)

    @property
    def id(self) -> str:
        return f"tabulated({self.fpath.as_posix()})"

    @property
    def breakpoints(self):
        return tuple(float(x) for x in self._x if x > 0)

    @property
    def support_end(self):
        return float(self._x[-1])

    def _evaluate(self, x):
        values = self._spline(np.clip(x, self._x[0], self._x[-1]))
        return np.where(x <= self._x[-1], values, 0.0)


@dataclass(frozen=True)
class PresetInfo:
    """Catalogue entry for a potential preset."""

    name: str
    signature: str
    description: str
    reference: str
    factory: Callable[..., Potential]
    n_args: Optional[int]


PRESETS: dict[str, PresetInfo] = {
    info.name: info
    for info in (
        PresetInfo(
            "free", "free", "q = 0", "F = 1; closed-form Bessel solutions and kernels",
            FreePotential, 0,
        ),
        PresetInfo(
            "well", "well(v0,a,b)", "q = -v0 on [a,b]",
            "closed-form matching oracle for l = 0 (Jost function, bound states,"
            " norming constants)",
            WellPotential, 3,
        ),
        PresetInfo(
            "expdecay", "expdecay(v0,a)", "q = v0 exp(-x/a)",
            "ODE oracle only",
            ExpDecayPotential, 2,
        ),
        PresetInfo(
            "power", "power(c,p,b)", "q = c x^-p on (0,b]",
            "violates the integrability hypothesis at 0 for p >= 1",
            PowerPotential, 3,
        ),
        PresetInfo(
            "tabulated", "tabulated(file)", "cubic spline through CSV samples",
            "CSV with two columns (x, q), header row, strictly increasing x >= 0;"
            " q = 0 beyond the last sample",
            TabulatedPotential, 1,
        ),
    )
}

PATTERN_PRESET = re.compile(r"^\s*([A-Za-z_]\w*)\s*(?:\((.*)\))?\s*$")


def _resolve_table_path(raw: str) -> Path:
    fpath = Path(raw.strip().strip("\"'"))
    if not fpath.exists() and (DPATH_POTENTIALS / fpath).exists():
        fpath = DPATH_POTENTIALS / fpath
    if not fpath.exists():
        raise ConfigError(f"Tabulated potential file not found: {raw}")
    return fpath


def parse_potential(preset: str | Potential) -> Potential:
    """Build a Potential from a preset string such as ``well(1,0,1)``."""
    if isinstance(preset, Potential):
        return preset
    match = PATTERN_PRESET.match(preset)
    if match is None:
        raise ConfigError(f"Cannot parse potential preset: {preset!r}")
    name, raw_args = match.groups()
    name = name.lower()
    if name not in PRESETS:
        raise ConfigError(
            f"Unknown potential preset {name!r}. Available: {list(PRESETS)}"
        )
    info = PRESETS[name]

    if name == "tabulated":
        if not raw_args:
            raise ConfigError("tabulated(file) needs a file path")
        return info.factory(_resolve_table_path(raw_args))

    args = [] if not raw_args or not raw_args.strip() else raw_args.split(",")
    if len(args) != info.n_args:
        raise ConfigError(
            f"Preset {info.signature} takes {info.n_args} argument(s), got {len(args)}"
        )
    try:
        values = [float(arg) for arg in args]
    except ValueError:
        raise ConfigError(f"Non-numeric argument in potential preset {preset!r}")
    return info.factory(*values)


def presets_table() -> list[dict[str, str]]:
    """Describe every preset (name, signature, description, reference)."""
    return [
        {
            "name": info.name,
            "signature": info.signature,
            "description": info.description,
            "reference": info.reference,
        }
        for info in PRESETS.values()
    ]
