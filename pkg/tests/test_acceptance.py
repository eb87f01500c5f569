"""Exit criteria for the simulator, one test per criterion at its stated tolerance."""

import dataclasses
import time

import numpy as np

from cran_ee.config import SimConfig
from cran_ee.scenarios import (
    emit_csv,
    power_jumps,
    run_combined_scenario,
    run_wired_scenario,
    run_wireless_scenario,
    sawtooth_events,
)
from cran_ee.transition import feasible_region_grid, is_admissible, max_t1, max_t2
from cran_ee.wired import FiberSpan, RouterModel, router_power, transponder_count, wired_path_power
from cran_ee.wireless import gen_channel, wishart_trace_mc, zf_beamformer


def test_1_wishart_limit(criterion):
    start = time.perf_counter()
    est = wishart_trace_mc(M=200, K=42, trials=1000, seed=2024)
    elapsed = time.perf_counter() - start
    limit = 42 / 158
    rel = abs(est - limit) / limit
    ok = criterion("1. Wishart limit", rel < 0.05 and elapsed < 30, f"mean={est:.5f} rel_err={rel:.4f} time={elapsed:.1f}s")
    assert ok


def test_2_zf_orthogonality(criterion):
    worst = 0.0
    rng = np.random.default_rng(7)
    for i in range(100):
        K = int(rng.integers(4, 17))
        H = gen_channel(K, 4 * K, seed=1000 + i)
        G = H.entries @ zf_beamformer(H).W
        worst = max(worst, np.max(np.abs(G - np.diag(np.diag(G)))))
    assert criterion("2. ZF orthogonality", worst < 1e-9, f"max|h_k w_j|={worst:.2e}")


def test_3_transition_spot_values(criterion):
    tau = 1.0
    errs = [abs(max_t2(0.0, tau) - tau / 3) / (tau / 3), abs(max_t2(tau / 4, tau) - tau / 6) / (tau / 6)]
    assert criterion("3. transition closed form vs grid", max(errs) <= 1e-12, f"spot rel_err={max(errs):.1e}")


def test_3_transition_grid_boundary(criterion):
    tau, n = 1.0, 1000
    t, grid = feasible_region_grid(tau, n)
    step = t[1] - t[0]
    # feasible t2 for fixed t1 is an interval starting at 0 on [0, tau/2]
    edge_t2 = np.array([t[row].max() if row.any() else -np.inf for row in grid])
    edge_t1 = np.array([t[col].max() if col.any() else -np.inf for col in grid.T])
    closed_t2 = np.array([max_t2(x, tau) for x in t])
    closed_t1 = np.array([max_t1(x, tau) for x in t])
    gap = max(np.max(np.abs(edge_t2 - closed_t2)), np.max(np.abs(edge_t1 - closed_t1)))
    ok = criterion(
        "3. transition closed form vs grid",
        gap <= step,
        f"grid boundary gap={gap / step:.0f} cells (allowed 1)",
    )
    assert ok


def test_4_scheduler_safety(criterion):
    cfg = SimConfig()
    cfg = dataclasses.replace(cfg, scenario=dataclasses.replace(cfg.scenario, num_requests=10_000))
    # run_schedule(check=True) raises on any counter underflow or desync
    res = run_combined_scenario(cfg)
    tau = res.extras["tau"]
    windows = res.extras["windows"]
    bad = sum(not is_admissible(t1, t2, cfg.transition.U, tau) for t1, t2 in windows)
    ok = criterion(
        "4. scheduler safety",
        bad == 0 and len(windows) > 0,
        f"{len(windows)} sleep windows, {bad} inadmissible, {res.extras['blocked']} blocked",
    )
    assert ok


def test_5_wireless_shape(criterion):
    cfg = SimConfig()
    res = run_wireless_scenario(cfg)
    cran, trad = res.series("cran"), res.series("traditional")
    dominated = all(c.ee_bits_per_joule >= t.ee_bits_per_joule for c, t in zip(cran, trad))
    jumps = sawtooth_events(res)
    expected = cfg.wireless.k_max // cfg.wireless.ue_per_bs
    ok = criterion(
        "5. wireless EE shape",
        dominated and len(jumps) == expected,
        f"cran>=traditional={dominated}, sawtooth jumps={len(jumps)} (expected {expected})",
    )
    assert ok


def test_6_wired_shape(criterion):
    cfg = SimConfig()
    res = run_wired_scenario(cfg)
    decreasing = {}
    for v in ("icn", "ip"):
        rows = res.series(v, "hops")
        ee = [r.ee_bits_per_joule for r in rows]
        decreasing[v] = [r.value for r in rows] == list(range(1, 9)) and all(a > b for a, b in zip(ee, ee[1:]))
    icn_ge_ip = all(
        a.ee_bits_per_joule >= b.ee_bits_per_joule
        for a, b in zip(res.series("icn", "hops"), res.series("ip", "hops"))
    )
    jumps = power_jumps(res.series("path", "rate_gbps"), threshold=cfg.wired.port_power / 2)
    span, router = FiberSpan(L=100), RouterModel()
    step = wired_path_power(span, router, 2, 40 + 1e-9).P_o - wired_path_power(span, router, 2, 40).P_o
    ok = criterion(
        "6. wired EE shape",
        all(decreasing.values()) and icn_ge_ip and jumps == [40.0]
        and transponder_count(40) == 1 and transponder_count(40 + 1e-9) == 2 and abs(step - 800) < 1e-6,
        f"decreasing={decreasing}, icn>=ip={icn_ge_ip}, jumps at {jumps}",
    )
    assert ok


def test_7_determinism(criterion, tmp_path):
    cfg = SimConfig().with_seed(11)
    same = True
    for name, run in (("wireless", run_wireless_scenario), ("wired", run_wired_scenario), ("combined", run_combined_scenario)):
        a, b = tmp_path / f"{name}_a.csv", tmp_path / f"{name}_b.csv"
        emit_csv(run(cfg), a)
        emit_csv(run(cfg), b)
        same &= a.read_bytes() == b.read_bytes()
    assert criterion("7. determinism", same, "byte-identical CSV for all three scenarios")


def test_8_router_constants(criterion):
    p = router_power(40, 2, awake=True)
    slot = RouterModel().slot_power
    assert criterion("8. router constants", p == 820 and slot == 681.25, f"router={p} W, slot={slot} W")
