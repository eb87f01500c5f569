"""Simulation configuration: TOML file with one table per section.

Every field has a default (the reference parameter set), so an empty
file is a valid configuration. See ``docs/config.md`` for the grammar.
"""

from __future__ import annotations

import dataclasses
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigNotFoundError, ConfigParseError, ConfigValidationError, SimulationError
from .icn import Cluster, ClusterTopology
from .transition import RlcCircuit
from .wired import FiberSpan, RouterModel
from .wireless import WirelessParams


@dataclass(frozen=True)
class WirelessConfig:
    M: int = 200
    n: int = 200
    P_bs: float = 40.0
    N0: float = 1.0
    B_ccs: float = 5e6
    P_mr: float = 480.0
    antennas_per_ue: int = 2
    # wireless peak bit rate; carried for completeness, no formula uses it
    peak_bandwidth_hz: float = 200e6
    ue_per_bs: int = 42
    bs_per_cluster: int = 20
    k_min: int = 1
    k_max: int = 400
    k_step: int = 1

    def params(self) -> WirelessParams:
        return WirelessParams(
            P_bs=self.P_bs, n=self.n, M=self.M, N0=self.N0,
            B_ccs=self.B_ccs, P_mr=self.P_mr, antennas_per_ue=self.antennas_per_ue,
        )


@dataclass(frozen=True)
class WiredConfig:
    L_edfa: float = 80.0
    hop_distance_km: float = 100.0
    L_BS_km: float = 10.0
    G: float = 0.99
    atten_db_per_km: float = 0.3
    P_edfa_per_gbps: float = 4.0
    slots: int = 16
    full_duplex_power: float = 10900.0
    oxc_base: float = 150.0
    oxc_per_degree: float = 135.0
    port_power: float = 400.0
    fiber_capacity_gbps: float = 40.0
    d_f: int = 2
    rate_gbps: float = 40.0
    hops_max: int = 8
    rate_min: float = 1.0
    rate_max: float = 80.0
    rate_step: float = 1.0
    rate_sweep_hops: int = 2

    def span(self, L: float) -> FiberSpan:
        return FiberSpan(
            L=L, L_edfa=self.L_edfa, L_BS=self.L_BS_km, G=self.G,
            atten_db_per_km=self.atten_db_per_km, P_edfa_per_gbps=self.P_edfa_per_gbps,
        )

    def router(self) -> RouterModel:
        return RouterModel(
            slots=self.slots, full_duplex_power=self.full_duplex_power, d_f=self.d_f,
            oxc_base=self.oxc_base, oxc_per_degree=self.oxc_per_degree,
            port_power=self.port_power, fiber_capacity_gbps=self.fiber_capacity_gbps,
        )


@dataclass(frozen=True)
class TransitionConfig:
    L_h: float = 1e-3
    C1: float = 3e-3
    C2: float = 3e-3
    C3: float = 3e-3
    R: float = 0.0
    U: float = 48.0

    def circuit(self) -> RlcCircuit:
        return RlcCircuit(**dataclasses.asdict(self))


def _default_clusters() -> tuple[dict, ...]:
    caches = {0: ["news"], 2: ["video"]}
    return tuple({"id": i, "cache": caches.get(i, [])} for i in range(8))


@dataclass(frozen=True)
class TopologyConfig:
    clusters: tuple[dict, ...] = field(default_factory=_default_clusters)
    edges: tuple[tuple[int, int], ...] | None = None
    serving_cluster: int = 0
    origin_server: int = 7
    catalog: tuple[str, ...] = ("news", "video", "music", "maps")


@dataclass(frozen=True)
class SchedulerConfig:
    n_rf: int = 100
    retry_limit: int = 10
    poll_interval: float = 0.1
    arrival_rate: float = 20.0
    mean_duration: float = 2.0
    zipf_alpha: float = 0.8


@dataclass(frozen=True)
class ScenarioConfig:
    name: str = "default"
    seed: int = 0
    num_requests: int = 1000
    duration_s: float = 60.0


@dataclass(frozen=True)
class SimConfig:
    wireless: WirelessConfig = field(default_factory=WirelessConfig)
    wired: WiredConfig = field(default_factory=WiredConfig)
    transition: TransitionConfig = field(default_factory=TransitionConfig)
    topology: TopologyConfig = field(default_factory=TopologyConfig)
    scheduler: SchedulerConfig = field(default_factory=SchedulerConfig)
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)

    def build_topology(self, origin_server: int | None = None, extra_cache: dict | None = None) -> ClusterTopology:
        """Cluster topology; ``extra_cache`` adds names to individual clusters."""
        extra_cache = extra_cache or {}
        clusters = tuple(
            Cluster(
                id=c["id"],
                cache=frozenset(c.get("cache", ())) | frozenset(extra_cache.get(c["id"], ())),
                d_f=c.get("d_f", self.wired.d_f),
            )
            for c in self.topology.clusters
        )
        return ClusterTopology(
            clusters=clusters,
            edges=self.topology.edges,
            hop_distance_km=self.wired.hop_distance_km,
            L_BS_km=self.wired.L_BS_km,
            bs_per_cluster=self.wireless.bs_per_cluster,
            origin_server=self.topology.origin_server if origin_server is None else origin_server,
        )

    def with_seed(self, seed: int) -> "SimConfig":
        return dataclasses.replace(self, scenario=dataclasses.replace(self.scenario, seed=seed))


_SECTIONS = {f.name: f.type for f in dataclasses.fields(SimConfig)}
_SECTION_TYPES = {
    "wireless": WirelessConfig,
    "wired": WiredConfig,
    "transition": TransitionConfig,
    "topology": TopologyConfig,
    "scheduler": SchedulerConfig,
    "scenario": ScenarioConfig,
}
_CLUSTER_KEYS = {"id", "cache", "d_f"}


def _coerce(value, default, where: str):
    if isinstance(default, bool) or isinstance(value, bool):
        raise ConfigValidationError(f"{where}: booleans are not accepted")
    if isinstance(default, int):
        if not isinstance(value, int):
            raise ConfigValidationError(f"{where}: expected an integer, got {value!r}")
        return value
    if isinstance(default, float):
        if not isinstance(value, (int, float)):
            raise ConfigValidationError(f"{where}: expected a number, got {value!r}")
        return float(value)
    if isinstance(default, str):
        if not isinstance(value, str):
            raise ConfigValidationError(f"{where}: expected a string, got {value!r}")
        return value
    return value


def _clusters(value, where: str) -> tuple[dict, ...]:
    if not isinstance(value, list):
        raise ConfigValidationError(f"{where}: expected an array of tables")
    out = []
    for i, c in enumerate(value):
        w = f"{where}[{i}]"
        if not isinstance(c, dict):
            raise ConfigValidationError(f"{w}: expected a table")
        unknown = set(c) - _CLUSTER_KEYS
        if unknown:
            raise ConfigValidationError(f"{w}: unknown key {sorted(unknown)[0]!r}")
        if "id" not in c or not isinstance(c["id"], int) or isinstance(c["id"], bool):
            raise ConfigValidationError(f"{w}: integer 'id' is required")
        cache = c.get("cache", [])
        if not isinstance(cache, list) or not all(isinstance(x, str) and x for x in cache):
            raise ConfigValidationError(f"{w}.cache: expected a list of non-empty names")
        entry = {"id": c["id"], "cache": list(cache)}
        if "d_f" in c:
            entry["d_f"] = _coerce(c["d_f"], 1, f"{w}.d_f")
        out.append(entry)
    return tuple(out)


def _section(name: str, table) -> object:
    cls = _SECTION_TYPES[name]
    if not isinstance(table, dict):
        raise ConfigValidationError(f"[{name}] must be a table")
    defaults = cls()
    names = {f.name for f in dataclasses.fields(cls)}
    kwargs = {}
    for key, value in table.items():
        where = f"[{name}].{key}"
        if key not in names:
            raise ConfigValidationError(f"unknown key {key!r} in [{name}]")
        if name == "topology" and key == "clusters":
            kwargs[key] = _clusters(value, where)
        elif name == "topology" and key == "edges":
            if not isinstance(value, list) or not all(
                isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e) for e in value
            ):
                raise ConfigValidationError(f"{where}: expected a list of [u, v] integer pairs")
            kwargs[key] = tuple(tuple(e) for e in value)
        elif name == "topology" and key == "catalog":
            if not isinstance(value, list) or not value or not all(isinstance(x, str) and x for x in value):
                raise ConfigValidationError(f"{where}: expected a non-empty list of names")
            kwargs[key] = tuple(value)
        else:
            kwargs[key] = _coerce(value, getattr(defaults, key), where)
    return cls(**kwargs)


def validate(cfg: SimConfig) -> SimConfig:
    w, d, s, sc = cfg.wireless, cfg.wired, cfg.scheduler, cfg.scenario

    def need(cond: bool, msg: str) -> None:
        if not cond:
            raise ConfigValidationError(msg)

    for sec in (w, d, cfg.transition, s):
        for f in dataclasses.fields(sec):
            v = getattr(sec, f.name)
            if f.name in ("R", "atten_db_per_km"):
                need(v >= 0, f"{f.name} must be non-negative")
            elif isinstance(v, (int, float)) and f.name != "retry_limit":
                need(v > 0, f"{f.name} must be positive")
    need(s.retry_limit >= 0, "retry_limit must be non-negative")
    need(w.M > w.ue_per_bs, f"M={w.M} must exceed the per-BS UE count K={w.ue_per_bs}")
    need(w.n >= w.antennas_per_ue * w.ue_per_bs, "n must provide antennas_per_ue antennas to every UE")
    need(w.M > min(w.n // w.antennas_per_ue, s.n_rf), "M must exceed the largest concurrent UE count")
    need(w.k_min <= w.k_max, "k_min must not exceed k_max")
    need(d.G <= 1, "G must lie in (0, 1]")
    need(d.rate_min <= d.rate_max, "rate_min must not exceed rate_max")
    need(sc.num_requests >= 0, "num_requests must be non-negative")
    need(sc.duration_s > 0, "duration_s must be positive")
    try:
        cfg.transition.circuit()
        topo = cfg.build_topology()
        topo.cluster(cfg.topology.serving_cluster)
        topo.cluster(cfg.topology.origin_server)
    except SimulationError as e:
        raise ConfigValidationError(f"invalid topology or circuit: {e}") from None
    return cfg


def config_from_dict(data: dict) -> SimConfig:
    unknown = set(data) - set(_SECTIONS)
    if unknown:
        raise ConfigValidationError(f"unknown section {sorted(unknown)[0]!r}")
    sections = {name: _section(name, table) for name, table in data.items()}
    return validate(SimConfig(**sections))


def parse_config(path) -> SimConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigNotFoundError(f"config file not found: {path}")
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise ConfigParseError(f"{path}: {e}") from None
    return config_from_dict(data)
