"""Optional JSON config, located through the OSPQ_CONFIG environment variable."""
from __future__ import annotations

import json
import os
from fractions import Fraction

DEFAULTS = {
    "probes": ["1/5", "1/2", "3/4"],
    "precision": 50,
    "corep_bound": 3,
    "ell_bound": 4,
}

ENV_VAR = "OSPQ_CONFIG"


def load_config(path: str | None = None) -> dict:
    cfg = dict(DEFAULTS)
    path = path or os.environ.get(ENV_VAR)
    if path:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(data)
    return cfg


def probes(cfg: dict) -> list[Fraction]:
    return [Fraction(str(p)) for p in cfg["probes"]]
