"""Wireless section: zero-forcing beamforming, SINR, ergodic rates and power.

Channels are K x N matrices of i.i.d. CN(0, 1) entries, one row per UE.
Rates are in bit/s, powers in W.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .efficiency import EeResult, energy_efficiency
from .errors import (
    DivergentRegimeError,
    DomainError,
    InsufficientAntennasError,
    InvalidDimensionError,
    SingularMatrixError,
)

# conditioning threshold on H H^H above which ZF is refused
MAX_CONDITION = 1e12


@dataclass(frozen=True)
class ChannelMatrix:
    K: int
    N: int
    entries: np.ndarray
    seed: int | None = None

    def row(self, k: int) -> np.ndarray:
        return self.entries[k]


@dataclass(frozen=True)
class ZfBeamformer:
    W: np.ndarray
    gamma: float


@dataclass(frozen=True)
class WirelessParams:
    """Per-BS radio parameters.

    ``P_bs`` is the power of the full antenna array of ``n`` elements, ``M``
    the number of associated antennas used in the Wishart limit, ``N0`` the
    noise power and ``B_ccs`` the component-carrier bandwidth.
    """

    P_bs: float = 40.0
    n: int = 200
    M: int = 200
    N0: float = 1.0
    B_ccs: float = 5e6
    P_mr: float = 480.0
    antennas_per_ue: int = 2

    def __post_init__(self):
        for name in ("P_bs", "N0", "B_ccs", "P_mr"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")
        if self.n < 1 or self.M < 1 or self.antennas_per_ue < 1:
            raise InvalidDimensionError("antenna counts must be positive")

    def beta(self, K: int) -> float:
        return power_alloc_beta(self.P_bs, K, self.n, self.antennas_per_ue)

    def rho(self, K: int) -> float:
        return self.beta(K) / self.N0


def _check_dims(K: int, N: int) -> None:
    if K < 1 or N < 1 or K >= N:
        raise InvalidDimensionError(f"need 0 < K < N, got K={K}, N={N}")


def _complex_gaussian(rng: np.random.Generator, K: int, N: int) -> np.ndarray:
    re = rng.standard_normal((K, N))
    im = rng.standard_normal((K, N))
    return (re + 1j * im) / np.sqrt(2.0)


def gen_channel(K: int, N: int, seed: int) -> ChannelMatrix:
    _check_dims(K, N)
    rng = np.random.default_rng(seed)
    return ChannelMatrix(K=K, N=N, entries=_complex_gaussian(rng, K, N), seed=seed)


def channel_from_array(H) -> ChannelMatrix:
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    K, N = H.shape
    if K < 1 or N < 1 or K > N:
        raise InvalidDimensionError(f"need 0 < K <= N, got shape {H.shape}")
    return ChannelMatrix(K=K, N=N, entries=H)


def zf_beamformer(H: ChannelMatrix) -> ZfBeamformer:
    """W = H^H (H H^H)^-1, the right pseudo-inverse of H."""
    h = H.entries
    gram = h @ h.conj().T
    if np.linalg.cond(gram) > MAX_CONDITION:
        raise SingularMatrixError("channel matrix is rank deficient")
    # W^H = gram^-1 H since gram is Hermitian
    W = np.linalg.solve(gram, h).conj().T
    gamma = float(np.linalg.norm(W, "fro") ** 2 / H.K)
    return ZfBeamformer(W=W, gamma=gamma)


def sinr(H: ChannelMatrix, W: ZfBeamformer, k: int, rho: float) -> float:
    if not 0 <= k < H.K:
        raise IndexError(f"UE index {k} out of range for K={H.K}")
    if not rho > 0:
        raise DomainError("rho must be positive")
    gains = np.abs(H.entries[k] @ W.W) ** 2
    signal = gains[k]
    interference = gains.sum() - signal
    return float(rho * signal / (rho * interference + 1.0))


def per_ue_rate(B_ccs: float, sinr_value: float) -> float:
    if sinr_value < 0:
        raise DomainError(f"SINR must be non-negative, got {sinr_value!r}")
    return float(B_ccs * np.log2(1.0 + sinr_value))


def power_alloc_beta(P_bs: float, K: int, n: int, antennas_per_ue: int = 2) -> float:
    """Power taken by the awake antennas when each UE keeps ``antennas_per_ue`` on."""
    if n < antennas_per_ue * K:
        raise InsufficientAntennasError(
            f"{n} antennas cannot serve {K} UEs with {antennas_per_ue} each"
        )
    return P_bs * antennas_per_ue * K / n


def wishart_trace_limit(M: int, K: int) -> float:
    """Large-system value of E{tr((H H^H)^-1)} = K / (M - K)."""
    if M <= K:
        raise DivergentRegimeError(f"need M > K, got M={M}, K={K}")
    return K / (M - K)


def wishart_trace_mc(M: int, K: int, trials: int, seed: int) -> float:
    """Monte Carlo mean of ||W||_F^2 over ``trials`` independent K x M channels.

    Trial ``i`` draws from ``default_rng([seed, i])`` so the estimate does not
    depend on evaluation order.
    """
    if M <= K:
        raise DivergentRegimeError(f"need M > K, got M={M}, K={K}")
    if trials < 1:
        raise DomainError("trials must be >= 1")
    total = 0.0
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        H = ChannelMatrix(K=K, N=M, entries=_complex_gaussian(rng, K, M))
        total += zf_beamformer(H).gamma * K
    return total / trials


def ergodic_sum_rate(M: int, K: int, rho: float, B_ccs: float) -> float:
    """B log2(1 + rho K / E||W||_F^2) with the Wishart limit, i.e. B log2(1 + rho (M - K))."""
    if M <= K:
        raise DivergentRegimeError(f"need M > K, got M={M}, K={K}")
    if rho < 0:
        raise DomainError("rho must be non-negative")
    return float(B_ccs * np.log2(1.0 + rho * K / wishart_trace_limit(M, K)))


def total_wireless_power(P_BS: float, P_mr: float) -> float:
    if P_BS < 0 or P_mr < 0:
        raise DomainError("powers must be non-negative")
    return P_BS + P_mr


def wireless_ee(rate: float, power: float) -> EeResult:
    return energy_efficiency(rate, power)


def cell_rate(params: WirelessParams, K: int) -> float:
    """Ergodic sum rate of one BS serving K UEs; zero for an idle BS."""
    if K == 0:
        return 0.0
    return ergodic_sum_rate(params.M, K, params.rho(K), params.B_ccs)


def cell_power(params: WirelessParams, K: int) -> float:
    """Array power with only the UEs' antennas awake (sleeping ones draw nothing)."""
    return params.beta(K) if K else 0.0
