import argparse
from pathlib import Path

from cran_ee.config import SimConfig, parse_config, validate


def load(description: str, default_out: str):
    p = argparse.ArgumentParser(description=description)
    p.add_argument("--config", help="TOML config; defaults when omitted")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", default=default_out)
    args = p.parse_args()
    cfg = parse_config(args.config) if args.config else validate(SimConfig())
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    return cfg, out
