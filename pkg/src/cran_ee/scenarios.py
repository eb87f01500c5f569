"""Scenario runners and CSV output.

wireless  UE-count sweep, shared C-RAN machine room vs one machine room per BS
wired     hop-count sweep (ICN nearest copy vs IP origin server) and a rate sweep
combined  scheduler-driven request sequence, wireless + wired power end to end
"""

from __future__ import annotations

import bisect
import csv
import math
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .config import SimConfig
from .errors import SimulationError
from .icn import ClusterTopology, NdoRequest, flood_resolve, ip_baseline_resolve, path_length
from .scheduler import (
    EventKind,
    ResourceState,
    SchedulerPolicy,
    generate_requests,
    run_schedule,
)
from .wired import wired_path_power
from .wireless import cell_power, cell_rate, total_wireless_power

CSV_COLUMNS = ("sweep_var", "value", "variant", "rate_bps", "power_w", "ee_bits_per_joule")


@dataclass(frozen=True)
class ResultRow:
    sweep_var: str
    value: float
    variant: str
    rate_bps: float
    power_w: float
    ee_bits_per_joule: float


@dataclass
class ScenarioResult:
    name: str
    rows: list[ResultRow] = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def add(self, sweep_var: str, value, variant: str, rate: float, power: float) -> None:
        self.rows.append(ResultRow(sweep_var, value, variant, rate, power, rate / power))

    def series(self, variant: str, sweep_var: str | None = None) -> list[ResultRow]:
        return [r for r in self.rows if r.variant == variant and (sweep_var is None or r.sweep_var == sweep_var)]


def cell_loads(K: int, ue_per_bs: int, bs_per_cluster: int) -> list[int]:
    """UEs per active BS when BSs fill up one after another; excess UEs are not served."""
    served = min(K, ue_per_bs * bs_per_cluster)
    full, rest = divmod(served, ue_per_bs)
    return [ue_per_bs] * full + ([rest] if rest else [])


def run_wireless_scenario(config: SimConfig) -> ScenarioResult:
    w = config.wireless
    params = w.params()
    result = ScenarioResult("wireless")
    active = []
    for K in range(w.k_min, w.k_max + 1, w.k_step):
        loads = cell_loads(K, w.ue_per_bs, w.bs_per_cluster)
        rate = sum(cell_rate(params, k) for k in loads)
        p_bs = sum(cell_power(params, k) for k in loads)
        result.add("ues", K, "cran", rate, total_wireless_power(p_bs, w.P_mr))
        result.add("ues", K, "traditional", rate, total_wireless_power(p_bs, len(loads) * w.P_mr))
        active.append(len(loads))
    result.extras["active_bs"] = active
    return result


def sawtooth_events(result: ScenarioResult) -> list:
    """Sweep values where the traditional layout switches on another machine room."""
    values = [r.value for r in result.series("traditional")]
    active = result.extras["active_bs"]
    return [values[i] for i in range(1, len(active)) if active[i] > active[i - 1]]


def _route_degrees(topology: ClusterTopology, src: int, dst: int) -> list[int]:
    return [topology.cluster(c).d_f for c in topology.route(src, dst)]


def _path_power(config: SimConfig, topology: ClusterTopology, src: int, dst: int, n_g: float) -> float:
    degrees = _route_degrees(topology, src, dst)
    hops = len(degrees)
    span = config.wired.span(path_length(hops, topology.hop_distance_km, topology.L_BS_km))
    return wired_path_power(span, config.wired.router(), hops, n_g, degrees=degrees).P_o


def _cluster_at_distance(topology: ClusterTopology, src: int, dist: int) -> int:
    lengths = nx.single_source_shortest_path_length(topology.graph, src)
    candidates = sorted(c for c, d in lengths.items() if d == dist)
    if not candidates:
        raise SimulationError(f"no cluster {dist} links away from cluster {src}")
    return candidates[0]


def run_wired_scenario(config: SimConfig) -> ScenarioResult:
    d = config.wired
    serving = config.topology.serving_cluster
    catalog = config.topology.catalog
    result = ScenarioResult("wired")
    base = config.build_topology()

    for h in range(1, d.hops_max + 1):
        server = _cluster_at_distance(base, serving, h - 1)
        topo = config.build_topology(origin_server=server, extra_cache={server: catalog})
        totals = {"icn": 0.0, "ip": 0.0}
        for name in catalog:
            req = NdoRequest(name, serving)
            _, icn_src = flood_resolve(topo, req)
            _, ip_src = ip_baseline_resolve(topo, req)
            totals["icn"] += _path_power(config, topo, serving, icn_src, d.rate_gbps)
            totals["ip"] += _path_power(config, topo, serving, ip_src, d.rate_gbps)
        rate = len(catalog) * d.rate_gbps * 1e9
        for variant in ("icn", "ip"):
            result.add("hops", h, variant, rate, totals[variant])

    server = _cluster_at_distance(base, serving, d.rate_sweep_hops - 1)
    count = int(math.floor((d.rate_max - d.rate_min) / d.rate_step + 1e-9)) + 1
    for i in range(count):
        n_g = d.rate_min + i * d.rate_step
        result.add("rate_gbps", n_g, "path", n_g * 1e9, _path_power(config, base, serving, server, n_g))
    return result


def power_jumps(rows: list[ResultRow], threshold: float) -> list:
    """Sweep values v_i where power rises by more than ``threshold`` from v_{i-1}."""
    return [rows[i - 1].value for i in range(1, len(rows)) if rows[i].power_w - rows[i - 1].power_w > threshold]


def _per_ue_share_integral(intervals, params):
    """Piecewise-constant concurrency; returns (times, cumulative per-UE bits, total bits)."""
    events = sorted([(s, 1) for s, e in intervals] + [(e, -1) for s, e in intervals], key=lambda x: (x[0], x[1]))
    times, cum = [0.0], [0.0]
    total = 0.0
    K, t_prev = 0, 0.0
    for t, delta in events:
        if t > t_prev:
            if K:
                rate = cell_rate(params, K)
                total += rate * (t - t_prev)
                cum.append(cum[-1] + rate / K * (t - t_prev))
            else:
                cum.append(cum[-1])
            times.append(t)
            t_prev = t
        K += delta
    return times, cum, total


def _interp(times, cum, t):
    i = bisect.bisect_right(times, t) - 1
    if i >= len(times) - 1:
        return cum[-1]
    frac = (t - times[i]) / (times[i + 1] - times[i])
    return cum[i] + frac * (cum[i + 1] - cum[i])


def run_combined_scenario(config: SimConfig) -> ScenarioResult:
    w, s, sc, top = config.wireless, config.scheduler, config.scenario, config.topology
    params = w.params()
    topo = config.build_topology(extra_cache={top.origin_server: top.catalog})
    policy = SchedulerPolicy(
        tau=config.transition.circuit().tau,
        antennas_per_ue=w.antennas_per_ue,
        retry_limit=s.retry_limit,
        poll_interval=s.poll_interval,
    )
    requests = generate_requests(
        sc.num_requests, top.catalog, w.n, sc.seed,
        arrival_rate=s.arrival_rate, mean_duration=s.mean_duration,
        zipf_alpha=s.zipf_alpha, origin_cluster=top.serving_cluster,
    )
    state = ResourceState(w.n, s.n_rf)
    traces = run_schedule(requests, state, topo, policy, check=True)

    served = []
    for req, tr in zip(requests, traces):
        ev = tr.first(EventKind.SERVED)
        if ev is None:
            continue
        sleep = tr.first(EventKind.SLEEP_SCHEDULED).detail
        served.append((ev.time, ev.time + req.duration, ev.detail["source"], sleep["t1"], sleep["t2"], req))

    horizon = max([sc.duration_s] + [end + t1 for _, end, _, t1, _, _ in served])
    times, cum, bits = _per_ue_share_integral([(a, b) for a, b, *_ in served], params)

    per_antenna = w.P_bs / w.n
    bs_energy_sleep = sum(w.antennas_per_ue * per_antenna * (end - start + t1) for start, end, _, t1, _, _ in served)
    wired = {"cran_icn": 0.0, "traditional_ip": 0.0}
    for start, end, source, _, _, req in served:
        dur = end - start
        if dur <= 0:
            continue
        n_g = (_interp(times, cum, end) - _interp(times, cum, start)) / dur / 1e9
        ip_hops, ip_src = ip_baseline_resolve(topo, NdoRequest(req.name, req.origin_cluster))
        wired["cran_icn"] += _path_power(config, topo, req.origin_cluster, source, n_g) * dur
        wired["traditional_ip"] += _path_power(config, topo, req.origin_cluster, ip_src, n_g) * dur

    wireless = {
        "cran_icn": w.P_mr * horizon + bs_energy_sleep,
        "traditional_ip": (w.P_mr + w.P_bs) * horizon,
    }
    result = ScenarioResult("combined")
    breakdown = {}
    for variant in ("cran_icn", "traditional_ip"):
        p_wl = wireless[variant] / horizon
        p_wd = wired[variant] / horizon
        breakdown[variant] = {"wireless_w": p_wl, "wired_w": p_wd}
        result.add("requests", sc.num_requests, variant, bits / horizon, p_wl + p_wd)
    result.extras.update(
        traces=traces,
        windows=[(t1, t2) for *_, t1, t2, _ in served],
        breakdown=breakdown,
        horizon_s=horizon,
        tau=policy.tau,
        served=len(served),
        blocked=sum(tr.blocked for tr in traces),
    )
    return result


SCENARIOS = {
    "wireless": run_wireless_scenario,
    "wired": run_wired_scenario,
    "combined": run_combined_scenario,
}


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return repr(float(x))


def emit_csv(result: ScenarioResult, path) -> None:
    with open(path, "w", newline="", encoding="ascii") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in result.rows:
            writer.writerow([
                r.sweep_var, _fmt(r.value), r.variant,
                _fmt(r.rate_bps), _fmt(r.power_w), _fmt(r.ee_bits_per_joule),
            ])


def read_csv(path) -> list[ResultRow]:
    with open(path, newline="", encoding="ascii") as f:
        reader = csv.DictReader(f)
        return [
            ResultRow(
                row["sweep_var"], float(row["value"]), row["variant"],
                float(row["rate_bps"]), float(row["power_w"]), float(row["ee_bits_per_joule"]),
            )
            for row in reader
        ]
