"""Wireless EE versus served UEs for C-RAN and per-BS machine rooms."""

from _common import load

from cran_ee.scenarios import emit_csv, run_wireless_scenario, sawtooth_events


def main():
    cfg, out = load(__doc__, "results/wireless_sweep.csv")
    res = run_wireless_scenario(cfg)
    emit_csv(res, out)
    cran, trad = res.series("cran"), res.series("traditional")
    best = max(cran, key=lambda r: r.ee_bits_per_joule)
    print(f"{len(res.rows)} rows -> {out}")
    print(f"peak C-RAN EE {best.ee_bits_per_joule:.4g} bit/J at K={best.value:g}")
    print(f"traditional EE drops at K={sawtooth_events(res)}")
    print(f"EE ratio at K={cran[-1].value:g}: {cran[-1].ee_bits_per_joule / trad[-1].ee_bits_per_joule:.2f}")


if __name__ == "__main__":
    main()
