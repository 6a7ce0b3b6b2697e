"""Explicit Runge-Kutta stepping and trajectory rollout.

Blow-up is data here, not failure: rollouts over unstable maps truncate and
record the step at which values stopped being finite, so parameter sweeps can
report instabilities instead of crashing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigError
from .tableaus import ButcherTableau

RhsFn = Callable[[np.ndarray], np.ndarray]


class StageBlowup(Exception):
    """Internal signal: a stage produced non-finite values."""

    def __init__(self, stage: int):
        super().__init__(f"non-finite values at stage {stage}")
        self.stage = stage


@dataclass
class Trajectory:
    """Uniformly sampled rollout. states[k] is the solution after k steps.

    If the rollout blew up, blowup_step is the first step index whose state
    was non-finite; states is truncated to the last finite state.
    """

    times: np.ndarray
    states: np.ndarray
    blowup_step: int | None = None

    @property
    def n_steps(self) -> int:
        return self.states.shape[0] - 1

    def final_state(self) -> np.ndarray:
        return self.states[-1]


def rk_step(rhs: RhsFn, f: np.ndarray, dt: float, tableau: ButcherTableau) -> np.ndarray:
    """One explicit RK step. Raises StageBlowup if a stage goes non-finite."""
    if dt <= 0:
        raise ConfigError(f"dt must be positive, got {dt}")
    a, b = tableau.a, tableau.b
    k = []
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(tableau.stages):
            u = f
            for j in range(i):
                if a[i, j] != 0.0:
                    u = u + (dt * a[i, j]) * k[j]
            ki = rhs(u)
            if not np.all(np.isfinite(ki)):
                raise StageBlowup(i)
            k.append(ki)
        out = f
        for i in range(tableau.stages):
            if b[i] != 0.0:
                out = out + (dt * b[i]) * k[i]
    return out


def advance(rhs: RhsFn, f: np.ndarray, dt: float, tableau: ButcherTableau,
            substeps: int = 1) -> np.ndarray:
    """Advance by dt using `substeps` equal RK substeps.

    Substepping keeps stiff stencil operators inside the tableau's stability
    region while the outer sampling interval stays at dt.
    """
    if substeps < 1:
        raise ConfigError(f"substeps must be >= 1, got {substeps}")
    h = dt / substeps
    for _ in range(substeps):
        f = rk_step(rhs, f, h, tableau)
    return f


def integrate(rhs: RhsFn, f0: np.ndarray, dt: float, n_steps: int,
              tableau: ButcherTableau, substeps: int = 1) -> Trajectory:
    """Roll out n_steps from f0, recording every sampled state."""
    if n_steps < 0:
        raise ConfigError(f"n_steps must be non-negative, got {n_steps}")
    f0 = np.asarray(f0, dtype=np.float64)
    states = np.empty((n_steps + 1,) + f0.shape)
    states[0] = f0
    times = dt * np.arange(n_steps + 1)
    f = f0
    for step in range(1, n_steps + 1):
        try:
            f = advance(rhs, f, dt, tableau, substeps)
        except StageBlowup:
            return Trajectory(times[:step], states[:step].copy(), blowup_step=step)
        if not np.all(np.isfinite(f)):
            return Trajectory(times[:step], states[:step].copy(), blowup_step=step)
        states[step] = f
    return Trajectory(times, states)
