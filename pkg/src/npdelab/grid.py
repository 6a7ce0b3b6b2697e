"""Periodic 1-D grids, finite-difference stencils, and spectral reference derivatives.

Stencil weights are solved exactly in rational arithmetic before conversion to
float64: the moment (Vandermonde) systems are badly conditioned in floating
point once the accuracy order reaches 6.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Sequence

import numpy as np

from .errors import (
    ConfigError,
    InsufficientPointsError,
    NonFiniteFieldError,
    SingularStencilError,
)

SCHEME_PRESETS = ("backward1", "central2", "central6")


@dataclass(frozen=True)
class Grid1D:
    """Uniform periodic grid on [0, length) with nodes x_i = i * dx."""

    n_points: int
    length: float
    periodic: bool = True

    def __post_init__(self):
        if self.n_points < 8:
            raise ConfigError(f"need at least 8 grid points, got {self.n_points}")
        if self.length <= 0:
            raise ConfigError(f"domain length must be positive, got {self.length}")
        if not self.periodic:
            raise ConfigError("only periodic grids are supported")

    @property
    def dx(self) -> float:
        return self.length / self.n_points

    def nodes(self) -> np.ndarray:
        return np.arange(self.n_points) * self.dx


@dataclass(frozen=True)
class Field:
    """Values sampled at the nodes of a grid. Entries must be finite."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", v)
        if v.shape != (self.grid.n_points,):
            raise ConfigError(
                f"field has {v.shape} values for a grid of {self.grid.n_points} points"
            )
        if not np.all(np.isfinite(v)):
            raise NonFiniteFieldError("field contains NaN or Inf")

    def __add__(self, other: "Field") -> "Field":
        return Field(self.grid, self.values + other.values)

    def __sub__(self, other: "Field") -> "Field":
        return Field(self.grid, self.values - other.values)

    def __mul__(self, scalar: float) -> "Field":
        return Field(self.grid, self.values * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True)
class Stencil:
    """Finite-difference weights for derivative order p at integer offsets.

    Weights are dimensionless; apply_stencil supplies the dx**(-p) scale.
    """

    deriv_order: int
    offsets: tuple[int, ...]
    weights: np.ndarray
    accuracy_order: int

    @property
    def width(self) -> int:
        return max(self.offsets) - min(self.offsets) + 1

    def is_symmetric(self) -> bool:
        return sorted(self.offsets) == sorted(-o for o in self.offsets)


def _solve_rational(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination with partial pivoting over exact rationals."""
    n = len(rhs)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if aug[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            raise SingularStencilError("moment system is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1, 1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def stencil_weights(deriv_order: int, offsets: Sequence[int]) -> Stencil:
    """Solve the moment conditions for the given offsets exactly.

    Row m of the system reads sum_j w_j * o_j**m / m! = [m == deriv_order]
    for m = 0 .. len(offsets)-1.
    """
    if deriv_order < 0:
        raise ConfigError(f"derivative order must be non-negative, got {deriv_order}")
    offs = tuple(int(o) for o in offsets)
    if len(set(offs)) != len(offs):
        raise SingularStencilError(f"duplicate offsets in {offs}")
    if len(offs) <= deriv_order:
        raise InsufficientPointsError(
            f"derivative order {deriv_order} needs at least {deriv_order + 1} points, got {len(offs)}"
        )
    n = len(offs)
    matrix = [[Fraction(o**m, factorial(m)) for o in offs] for m in range(n)]
    rhs = [Fraction(1 if m == deriv_order else 0) for m in range(n)]
    exact = _solve_rational(matrix, rhs)
    weights = np.array([float(w) for w in exact])

    accuracy = n - deriv_order
    symmetric = sorted(offs) == sorted(-o for o in offs)
    if symmetric and accuracy % 2 == 1:
        accuracy += 1
    return Stencil(deriv_order, offs, weights, accuracy)


@dataclass(frozen=True)
class SchemeChoice:
    """Named scheme preset plus derivative order; resolves to one stencil."""

    name: str
    deriv_order: int

    def __post_init__(self):
        if self.name not in SCHEME_PRESETS:
            raise ConfigError(f"unknown scheme {self.name!r}, expected one of {SCHEME_PRESETS}")

    @property
    def nominal_order(self) -> int:
        return 1 if self.name == "backward1" else int(self.name[-1])

    def resolve(self) -> Stencil:
        return _resolve_scheme(self.name, self.deriv_order)


@lru_cache(maxsize=None)
def _resolve_scheme(name: str, deriv_order: int) -> Stencil:
    if name == "backward1":
        return stencil_weights(deriv_order, tuple(range(-deriv_order, 1)))
    target = int(name[-1])
    radius = max(1, (deriv_order + 1) // 2)
    while True:
        count = 2 * radius + 1
        order = count - deriv_order
        if order > 0:
            if order % 2 == 1:
                order += 1
            if order >= target:
                return stencil_weights(deriv_order, tuple(range(-radius, radius + 1)))
        radius += 1


@lru_cache(maxsize=None)
def _gather_indices(offsets: tuple[int, ...], n_points: int) -> np.ndarray:
    base = np.arange(n_points)
    return np.stack([(base + o) % n_points for o in offsets])


def apply_stencil_values(values: np.ndarray, stencil: Stencil, dx: float) -> np.ndarray:
    """Array kernel behind apply_stencil; no finiteness checks."""
    idx = _gather_indices(stencil.offsets, values.shape[0])
    return (stencil.weights @ values[idx]) * dx ** (-stencil.deriv_order)


def apply_stencil(f: Field, s: Stencil) -> Field:
    """Apply a stencil on a periodic grid: out_i = dx^-p * sum_j w_j f[(i+o_j) % n]."""
    if s.width > f.grid.n_points:
        raise ConfigError(f"stencil width {s.width} exceeds grid size {f.grid.n_points}")
    if not np.all(np.isfinite(f.values)):
        raise NonFiniteFieldError("refusing to differentiate a non-finite field")
    return Field(f.grid, apply_stencil_values(f.values, s, f.grid.dx))


def fourier_forward(f: Field) -> np.ndarray:
    """Discrete Fourier modes of a field (complex vector of length n_points)."""
    return np.fft.fft(f.values)


def fourier_inverse(grid: Grid1D, coeffs: np.ndarray) -> Field:
    if coeffs.shape != (grid.n_points,):
        raise ConfigError("coefficient count does not match the grid")
    return Field(grid, np.fft.ifft(coeffs).real)


def spectral_derivative_values(values: np.ndarray, p: int, length: float) -> np.ndarray:
    n = values.shape[0]
    coeffs = np.fft.rfft(values)
    k = 2.0 * np.pi * np.fft.rfftfreq(n, d=length / n)
    mult = (1j * k) ** p
    if p % 2 == 1 and n % 2 == 0:
        mult[-1] = 0.0  # Nyquist mode has no well-defined odd derivative
    return np.fft.irfft(coeffs * mult, n)


def spectral_derivative(f: Field, p: int) -> Field:
    """Differentiate via Fourier multipliers (ik)^p.

    Near-exact for band-limited fields; serves as the reference derivative
    that stencil applications are measured against.
    """
    if not np.all(np.isfinite(f.values)):
        raise NonFiniteFieldError("refusing to differentiate a non-finite field")
    return Field(f.grid, spectral_derivative_values(f.values, p, f.grid.length))


@dataclass(frozen=True)
class ConvergenceMeasurement:
    slope: float
    dxs: tuple[float, ...]
    errors: tuple[float, ...]
    saturated: bool


def measured_convergence_order(
    scheme: SchemeChoice,
    f_analytic: Callable[[np.ndarray], np.ndarray],
    resolutions: Sequence[int],
    length: float = 2.0 * np.pi,
    df_analytic: Callable[[np.ndarray], np.ndarray] | None = None,
) -> ConvergenceMeasurement:
    """Least-squares slope of log(error) versus log(dx) for a scheme.

    The error at each resolution is the max-abs difference between the stencil
    derivative of f_analytic and either df_analytic or the spectral derivative.
    When errors sit at the round-off floor the slope is meaningless and the
    measurement is reported as saturated.
    """
    if len(resolutions) < 3:
        raise ConfigError("need at least 3 resolutions for a convergence fit")
    stencil = scheme.resolve()
    dxs, errors = [], []
    for n in resolutions:
        grid = Grid1D(int(n), length)
        x = grid.nodes()
        f = Field(grid, f_analytic(x))
        approx = apply_stencil(f, stencil)
        if df_analytic is not None:
            ref = df_analytic(x)
        else:
            ref = spectral_derivative(f, stencil.deriv_order).values
        dxs.append(grid.dx)
        errors.append(float(np.max(np.abs(approx.values - ref))))
    scale = max(max(errors), 1.0)
    floor = 1e3 * np.finfo(np.float64).eps * max(1.0, scale)
    saturated = any(e <= floor for e in errors)
    log_dx = np.log(np.asarray(dxs))
    log_err = np.log(np.maximum(errors, 1e-300))
    slope = float(np.polyfit(log_dx, log_err, 1)[0])
    return ConvergenceMeasurement(slope, tuple(dxs), tuple(errors), saturated)
