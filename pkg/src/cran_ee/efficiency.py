from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class EeResult:
    """Rate (bit/s), power (W) and their ratio, energy efficiency (bit/J)."""

    rate: float
    power: float
    efficiency: float


def energy_efficiency(rate: float, power: float) -> EeResult:
    if not power > 0:
        raise DomainError(f"power must be positive, got {power!r}")
    return EeResult(rate=float(rate), power=float(power), efficiency=float(rate) / float(power))
