"""RLC transients of the antenna supply and safe sleep/wake timing windows.

The supply is modelled as a lossless series LC loop: after power-off the
capacitor discharges (source-free response), after power-on it charges
towards U (step response). A window (t1, t2) is a source-free duration t1 and
a step-response duration t2; it is admissible when the superposed capacitor
and inductor voltages stay at or below the nominal voltage U.

Timing bounds are only single-valued on [0, tau/2] where cos(2 pi t / tau)
is monotone; longer delays reduce to that interval by periodicity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# relative slack on the U bound so boundary points count as admissible
BOUNDARY_SLACK = 1e-12


class Damping(str, enum.Enum):
    OVERDAMPED = "overdamped"
    CRITICAL = "critical"
    UNDERDAMPED = "underdamped"


@dataclass(frozen=True)
class RlcCircuit:
    L_h: float = 1e-3
    C1: float = 3e-3
    C2: float = 3e-3
    C3: float = 3e-3
    R: float = 0.0
    U: float = 48.0

    def __post_init__(self):
        if not self.L_h > 0:
            raise DomainError("inductance must be positive")
        if self.R < 0:
            raise DomainError("resistance must be non-negative")
        if not self.U > 0:
            raise DomainError("nominal voltage must be positive")
        effective_capacitance(self.C1, self.C2, self.C3)

    @property
    def C_eff(self) -> float:
        return effective_capacitance(self.C1, self.C2, self.C3)

    @property
    def tau(self) -> float:
        return 2 * math.pi * math.sqrt(self.L_h * self.C_eff)


@dataclass(frozen=True)
class ResonantParams:
    alpha_neper: float
    omega: float
    tau: float
    damping: Damping


@dataclass(frozen=True)
class TransitionWindow:
    t1: float
    t2: float
    tau: float

    def admissible(self, U: float = 1.0) -> bool:
        return bool(is_admissible(self.t1, self.t2, U, self.tau))


def effective_capacitance(C1: float, C2: float, C3: float) -> float:
    """Series combination of the two bypass capacitors and the antenna."""
    if min(C1, C2, C3) <= 0:
        raise DomainError("capacitances must be positive")
    return 1.0 / (1.0 / C1 + 1.0 / C2 + 1.0 / C3)


def resonant_params(circuit: RlcCircuit) -> ResonantParams:
    C = circuit.C_eff
    alpha = circuit.R / (2 * circuit.L_h)
    omega = 1.0 / math.sqrt(circuit.L_h * C)
    if math.isclose(alpha, omega, rel_tol=1e-12):
        damping = Damping.CRITICAL
    elif alpha > omega:
        damping = Damping.OVERDAMPED
    else:
        damping = Damping.UNDERDAMPED
    return ResonantParams(alpha_neper=alpha, omega=omega, tau=2 * math.pi / omega, damping=damping)


def _phase(t, tau):
    if not tau > 0:
        raise DomainError("tau must be positive")
    return 2 * np.pi * np.asarray(t, dtype=float) / tau


def source_free_voltages(t, U: float, tau: float):
    """(u_c, u_l) after power-off with u_c(0) = U and i(0) = 0."""
    u_c = U * np.cos(_phase(t, tau))
    return u_c, -u_c


def step_response_voltages(t, U: float, tau: float):
    """(u_c, u_l) after power-on from an empty capacitor."""
    c = np.cos(_phase(t, tau))
    return U * (1 - c), U * c


def constraint_values(t1, t2, U: float, tau: float):
    c1 = np.cos(_phase(t1, tau))
    c2 = np.cos(_phase(t2, tau))
    return U * c1 + U * c2 - U, -U * c1 - U * c2


def is_admissible(t1, t2, U: float, tau: float):
    u_c, u_l = constraint_values(t1, t2, U, tau)
    limit = U * (1 + BOUNDARY_SLACK)
    ok = (u_c <= limit) & (u_l <= limit)
    return bool(ok) if np.ndim(ok) == 0 else ok


@dataclass(frozen=True)
class Bound:
    value: float
    unconstrained: bool = False


def bound_with_flag(t_other: float, tau: float) -> Bound:
    """Closed-form timing bound tau * arccos(1/2 - cos(2 pi t / tau)) / (2 pi).

    Arguments above 1 give 0; below -1 the constraint never binds and the
    interval cap tau/2 is returned with ``unconstrained`` set.
    """
    if not tau > 0:
        raise DomainError("tau must be positive")
    arg = 0.5 - math.cos(2 * math.pi * t_other / tau)
    if arg > 1:
        return Bound(0.0)
    if arg < -1:
        return Bound(tau / 2, unconstrained=True)
    return Bound(tau * math.acos(arg) / (2 * math.pi))


def max_t2(t1: float, tau: float) -> float:
    return bound_with_flag(t1, tau).value


def max_t1(t2: float, tau: float) -> float:
    return bound_with_flag(t2, tau).value


def exact_max_t2(t1: float, tau: float) -> float:
    """Largest t2 in [0, tau/2] admissible for ``t1``, solved from the voltage limits.

    Only the inductor limit can bind: cos a + cos b >= -1.
    """
    if not tau > 0:
        raise DomainError("tau must be positive")
    arg = -1.0 - math.cos(2 * math.pi * t1 / tau)
    if arg <= -1:
        return tau / 2
    return tau * math.acos(arg) / (2 * math.pi)


def feasible_region_grid(tau: float, n: int, U: float = 1.0):
    """n x n admissibility grid over [0, tau/2]^2; cell (i, j) is (t1_i, t2_j)."""
    if n < 2:
        raise DomainError("grid needs n >= 2")
    t = np.linspace(0.0, tau / 2, n)
    T1, T2 = np.meshgrid(t, t, indexing="ij")
    return t, is_admissible(T1, T2, U, tau)


def write_grid_csv(tau: float, n: int, out, U: float = 1.0) -> None:
    t, grid = feasible_region_grid(tau, n, U)
    out.write("t1,t2,admissible\n")
    for i, a in enumerate(t):
        for j, b in enumerate(t):
            out.write(f"{float(a)!r},{float(b)!r},{str(bool(grid[i, j])).lower()}\n")
