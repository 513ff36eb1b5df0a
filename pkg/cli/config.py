from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from bench.harness import BenchConfig

load_dotenv()

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent / "defaults.yaml"


@dataclass
class GaussKuzminConfig:
    bits: int = 256
    samples: int = 1000
    max_bucket: int = 64


@dataclass
class Bn1Config:
    kmax: int = 49
    N: int = 1_000_000
    samples: int = 100_000


@dataclass
class StatsConfig:
    seed: int = 42
    workers: int = 1
    gauss_kuzmin: GaussKuzminConfig = field(default_factory=GaussKuzminConfig)
    bn1: Bn1Config = field(default_factory=Bn1Config)


@dataclass
class LoggingConfig:
    path: str = "logs/ostrowski.log"
    level: str = "INFO"


@dataclass
class AppConfig:
    stats: StatsConfig
    bench: BenchConfig
    logging: LoggingConfig


def _section(data: Dict[str, Any], key: str) -> Dict[str, Any]:
    return data.get(key) or {}


def load_config(path: Optional[str] = None) -> AppConfig:
    """Packaged defaults, or the YAML named by OSTROWSKI_CONFIG, plus env overrides."""
    path = path or os.getenv("OSTROWSKI_CONFIG") or str(DEFAULT_CONFIG_PATH)
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}

    stats = _section(data, "stats")
    gk = _section(stats, "gauss_kuzmin")
    bn1 = _section(stats, "bn1")
    bench = _section(data, "bench")
    logs = _section(data, "logging")

    stats_config = StatsConfig(
        seed=int(stats.get("seed", 42)),
        workers=int(os.getenv("OSTROWSKI_WORKERS") or stats.get("workers", 1)),
        gauss_kuzmin=GaussKuzminConfig(
            bits=int(gk.get("bits", 256)),
            samples=int(gk.get("samples", 1000)),
            max_bucket=int(gk.get("max_bucket", 64)),
        ),
        bn1=Bn1Config(
            kmax=int(bn1.get("kmax", 49)),
            N=int(bn1.get("N", 1_000_000)),
            samples=int(bn1.get("samples", 100_000)),
        ),
    )
    bench_config = BenchConfig(
        bits=[int(b) for b in bench.get("bits", [64, 128, 256, 512, 1024])],
        reps=int(bench.get("reps", 1000)),
        seed=int(bench.get("seed", 1)),
        batches=int(bench.get("batches", 5)),
        subtraction_threshold=int(bench.get("subtraction_threshold", 16)),
    )
    logging_config = LoggingConfig(
        path=os.getenv("OSTROWSKI_LOG_PATH") or logs.get("path", "logs/ostrowski.log"),
        level=(os.getenv("OSTROWSKI_LOG_LEVEL") or logs.get("level", "INFO")).upper(),
    )
    return AppConfig(stats=stats_config, bench=bench_config, logging=logging_config)
