"""Optical core power: EDFA count, uncompensated span, ASE term, router power.

Lengths are in km, rates in Gbps, powers in W.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Sequence

from .efficiency import EeResult, energy_efficiency
from .errors import DomainError, GeometryError


@dataclass(frozen=True)
class FiberSpan:
    L: float
    L_edfa: float = 80.0
    L_BS: float = 10.0
    G: float = 0.99
    atten_db_per_km: float = 0.3
    P_edfa_per_gbps: float = 4.0

    def __post_init__(self):
        if self.L < 0 or self.L_BS < 0 or not self.L_edfa > 0:
            raise GeometryError("fiber lengths must be non-negative and L_edfa positive")
        if not 0 < self.G <= 1:
            raise DomainError("fiber gain must lie in (0, 1]")
        if self.atten_db_per_km < 0:
            raise DomainError("attenuation must be non-negative")

    @property
    def atten_neper_per_km(self) -> float:
        # dB/km -> 1/km for use in exp(-beta l)
        return self.atten_db_per_km * math.log(10) / 10


@dataclass(frozen=True)
class RouterModel:
    slots: int = 16
    full_duplex_power: float = 10900.0
    d_f: int = 2
    oxc_base: float = 150.0
    oxc_per_degree: float = 135.0
    port_power: float = 400.0
    fiber_capacity_gbps: float = 40.0

    def __post_init__(self):
        if self.d_f < 1:
            raise DomainError("OXC degree must be >= 1")
        if self.slots < 1 or not self.fiber_capacity_gbps > 0:
            raise DomainError("slots and fiber capacity must be positive")

    @property
    def slot_power(self) -> float:
        """Power of one working slot, the P_prev carried into the next hop."""
        return self.full_duplex_power / self.slots

    @property
    def normalization(self) -> float:
        """slots x per-fiber Gbps (640 for the default chassis)."""
        return self.slots * self.fiber_capacity_gbps


@dataclass(frozen=True)
class HopLedger:
    hop: int
    P_t: float
    P_ase: float
    P_s: float
    P_c: float


@dataclass(frozen=True)
class WiredPathResult:
    hops: int
    P_s: float
    P_c_total: float
    P_o: float
    rate_gbps: float
    ledger: tuple[HopLedger, ...] = field(default=(), repr=False)


def edfa_count(L: float, L_edfa: float) -> int:
    if L < 0 or not L_edfa > 0:
        raise GeometryError(f"invalid lengths L={L}, L_edfa={L_edfa}")
    return max(math.ceil(L / L_edfa) - 1, 0)


def uncompensated_length(L: float, alpha: int, L_edfa: float, L_BS: float) -> float:
    l = L - alpha * L_edfa + L_BS
    if l < 0:
        raise GeometryError(f"negative uncompensated length {l}")
    return l


def ase_power(
    span: FiberSpan,
    l: float,
    P_prev: float,
    n_g: float,
    normalization: float = 640.0,
) -> float:
    if l < 0 or not P_prev > 0 or n_g < 0:
        raise DomainError("ase_power needs l >= 0, P_prev > 0, n_g >= 0")
    return span.G * l * math.exp(-span.atten_neper_per_km * l) * (P_prev / normalization) * n_g


def transmit_power(P_prev: float, n_g: float, P_ase: float, normalization: float = 640.0) -> float:
    if not P_prev > 0:
        raise DomainError("P_prev must be positive")
    return P_prev / normalization * n_g + P_ase


def signal_power(P_t: float, alpha: int, P_edfa: float) -> float:
    if P_t < 0 or alpha < 0 or P_edfa < 0:
        raise DomainError("signal_power arguments must be non-negative")
    return P_t + alpha * P_edfa


def transponder_count(n_g: float, capacity_gbps: float = 40.0) -> int:
    if n_g < 0:
        raise DomainError("rate must be non-negative")
    return math.ceil(n_g / capacity_gbps)


def router_power(n_g: float, d_f: int, awake: bool = True, router: RouterModel | None = None) -> float:
    router = router or RouterModel()
    if d_f < 1:
        raise DomainError("OXC degree must be >= 1")
    if not awake:
        return 0.0
    oxc = router.oxc_base + router.oxc_per_degree * d_f
    return oxc + router.port_power * transponder_count(n_g, router.fiber_capacity_gbps)


def wired_path_power(
    span: FiberSpan,
    router: RouterModel,
    hops: int,
    n_g: float,
    degrees: Sequence[int] | None = None,
    awake: Sequence[bool] | None = None,
) -> WiredPathResult:
    """Power of a path of ``hops`` routers carrying ``n_g`` Gbps over ``span``.

    Each hop's transmit power starts from the former hop's per-slot power; the
    EDFA count and uncompensated length come from the span geometry. The
    returned P_o is the last hop's signal power plus every awake router.
    """
    if hops < 1:
        raise DomainError("hops must be >= 1")
    degrees = list(degrees) if degrees is not None else [router.d_f] * hops
    awake = list(awake) if awake is not None else [True] * hops
    if len(degrees) != hops or len(awake) != hops:
        raise DomainError("degrees/awake must have one entry per hop")

    alpha = edfa_count(span.L, span.L_edfa)
    l = uncompensated_length(span.L, alpha, span.L_edfa, span.L_BS)
    p_edfa = span.P_edfa_per_gbps * n_g
    norm = router.normalization

    ledger = []
    # every hop is fed by one working slot of the former hop's router
    P_prev = router.slot_power
    P_s = 0.0
    for i in range(hops):
        p_ase = ase_power(span, l, P_prev, n_g, norm)
        p_t = transmit_power(P_prev, n_g, p_ase, norm)
        P_s = signal_power(p_t, alpha, p_edfa)
        p_c = router_power(n_g, degrees[i], awake[i], router)
        ledger.append(HopLedger(hop=i + 1, P_t=p_t, P_ase=p_ase, P_s=P_s, P_c=p_c))
    P_c_total = sum(h.P_c for h in ledger)
    return WiredPathResult(
        hops=hops,
        P_s=P_s,
        P_c_total=P_c_total,
        P_o=P_s + P_c_total,
        rate_gbps=n_g,
        ledger=tuple(ledger),
    )


def wired_ee(n_g: float, P_o: float) -> EeResult:
    return energy_efficiency(n_g * 1e9, P_o)


def write_power_ledger(result: WiredPathResult, path) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["hop", "P_t", "P_ase", "P_s", "P_c"])
        for h in result.ledger:
            w.writerow([h.hop, repr(h.P_t), repr(h.P_ase), repr(h.P_s), repr(h.P_c)])
