"""Explicit Runge-Utta tableaus used by the steppers.

The fifth-order pair was derived in tools/derive_tableau.py. Besides the 17
order-5 conditions it satisfies b.A^4.c = 1/480 and b.A^5.c = 1/1920, which
places a genuine interval of the imaginary axis (|y| <= 2.24) inside the
stability region. Off-the-shelf 5(4) pairs (Dormand-Prince, Cash-Karp,
Fehlberg) are all weakly unstable on the imaginary axis, which rules them out
for central-difference dispersive operators whose spectra are purely
imaginary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class ButcherTableau:
    name: str
    a: np.ndarray           # s x s, strictly lower triangular
    b: np.ndarray           # propagating weights, length s
    c: np.ndarray           # nodes, length s
    order: int
    b_embedded: np.ndarray | None = None
    embedded_order: int | None = None

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.float64)
        s = len(self.b)
        if a.shape != (s, s):
            raise ConfigError("tableau matrix shape does not match weight count")
        if np.any(np.abs(np.triu(a)) > 0):
            raise ConfigError(f"tableau {self.name} is not explicit")
        if abs(self.b.sum() - 1.0) > 1e-12:
            raise ConfigError(f"tableau {self.name} weights do not sum to 1")
        if np.max(np.abs(a.sum(axis=1) - self.c)) > 1e-12:
            raise ConfigError(f"tableau {self.name} violates the row-sum condition")

    @property
    def stages(self) -> int:
        return len(self.b)

    def stability_value(self, z: complex) -> complex:
        """Amplification R(z) of one step applied to u' = (z/dt) u."""
        k = np.zeros(self.stages, dtype=complex)
        for i in range(self.stages):
            k[i] = z * (1.0 + np.dot(self.a[i, :i], k[:i]))
        return 1.0 + complex(np.dot(self.b, k))


def _tableau(name, rows, b, order, b_embedded=None, embedded_order=None):
    s = len(b)
    a = np.zeros((s, s))
    for i, row in enumerate(rows, start=1):
        a[i, : len(row)] = row
    return ButcherTableau(
        name=name,
        a=a,
        b=np.asarray(b, dtype=np.float64),
        c=a.sum(axis=1),
        order=order,
        b_embedded=None if b_embedded is None else np.asarray(b_embedded, dtype=np.float64),
        embedded_order=embedded_order,
    )


def euler() -> ButcherTableau:
    return _tableau("euler", [], [1.0], order=1)


def rk4() -> ButcherTableau:
    return _tableau(
        "rk4",
        [[0.5], [0.0, 0.5], [0.0, 0.0, 1.0]],
        [1 / 6, 1 / 3, 1 / 3, 1 / 6],
        order=4,
    )


def rk5_pair() -> ButcherTableau:
    """Seven-stage 5(4) pair with an imaginary-axis stability interval."""
    rows = [
        [0.14327620996100307],
        [0.0662712248547342, 0.11622095745772214],
        [0.9604680402528513, -4.3590499092108494, 3.738033729619309],
        [2.501116068133401, -11.80796552686124, 9.698571177849107,
         -0.12651254100265288],
        [2.5671581567735977, -11.101906759406992, 8.559780719687895,
         1.0148271061111116, -0.38650926288936455],
        [-0.027648973671446166, 0.08096275655420113, 0.6121578708708353,
         0.25611188658518785, -0.502911464216028, 0.41780998959992544],
    ]
    b = [0.11446424480321071, 0.0, 0.029293484044260295, 0.7077860994705916,
         -0.21228431554196306, -0.048826286583830265, 0.40956677380773077]
    b_hat = [0.9785076151872336, 0.0, -3.3783864026710804, 4.026095002853234,
             0.05570714426450336, -1.6682289609518473, 0.9863056013179572]
    return _tableau("rk5_pair", rows, b, order=5, b_embedded=b_hat, embedded_order=4)


_BY_NAME = {"euler": euler, "rk4": rk4, "rk5_pair": rk5_pair}


def tableau_by_name(name: str) -> ButcherTableau:
    try:
        return _BY_NAME[name]()
    except KeyError:
        raise ConfigError(f"unknown tableau {name!r}, expected one of {sorted(_BY_NAME)}") from None
