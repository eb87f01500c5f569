"""Wired EE versus hop count (ICN vs IP) and path power versus line rate."""

from _common import load

from cran_ee.scenarios import emit_csv, power_jumps, run_wired_scenario


def main():
    cfg, out = load(__doc__, "results/wired_sweep.csv")
    res = run_wired_scenario(cfg)
    emit_csv(res, out)
    print(f"{len(res.rows)} rows -> {out}")
    print(f"{'hops':>4} {'EE icn':>12} {'EE ip':>12}")
    for a, b in zip(res.series("icn", "hops"), res.series("ip", "hops")):
        print(f"{a.value:>4g} {a.ee_bits_per_joule:>12.4g} {b.ee_bits_per_joule:>12.4g}")
    jumps = power_jumps(res.series("path", "rate_gbps"), threshold=cfg.wired.port_power / 2)
    print(f"transponder steps after {jumps} Gbps")


if __name__ == "__main__":
    main()
