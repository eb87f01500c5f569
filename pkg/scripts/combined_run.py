"""Joint C-RAN + ICN run with the sleep scheduler against the traditional IP baseline."""

from _common import load

from cran_ee.scenarios import emit_csv, run_combined_scenario


def main():
    cfg, out = load(__doc__, "results/combined.csv")
    res = run_combined_scenario(cfg)
    emit_csv(res, out)
    ex = res.extras
    print(f"served {ex['served']}, blocked {ex['blocked']}, horizon {ex['horizon_s']:.2f} s")
    for r in res.rows:
        b = ex["breakdown"][r.variant]
        print(f"{r.variant:>15}: EE {r.ee_bits_per_joule:.4g} bit/J "
              f"(wireless {b['wireless_w']:.1f} W, wired {b['wired_w']:.1f} W)")


if __name__ == "__main__":
    main()
