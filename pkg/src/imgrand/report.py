"""JSON report documents."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

from . import __version__
from .evaluator import (DistributionSource, EvaluationConfig, EvaluationReport, Mode, Verdict)
from .stats import CriticalInterval, DiffStats

SCHEMA_VERSION = "1.0"


def report_to_dict(report: EvaluationReport) -> dict:
    cfg = report.config_echo
    return {
        "score": report.score,
        "score_display": f"{report.score:.3f}",
        "verdict": report.verdict.value,
        "round_passes": list(report.round_passes),
        "interval": None if report.interval is None else asdict(report.interval),
        "stats": {"mean": report.stats.mean, "variance": report.stats.variance,
                  "std": report.stats.std},
        "pairs_used": report.pairs_used,
        "pairs_raw": report.pairs_raw,
        "lambda": report.lam,
        "mode": report.mode.value,
        "distribution_source": report.distribution_source.value,
        "rng": report.rng,
        "extras": dict(report.extras),
        "config": {
            "alpha": cfg.alpha, "n_tests": cfg.n_tests, "t_rounds": cfg.t_rounds,
            "pairs": cfg.pairs, "lambda": cfg.lam, "mode": cfg.mode.value,
            "seed": cfg.seed, "sampler": cfg.sampler,
        },
    }


def report_from_dict(d: dict) -> EvaluationReport:
    c = d["config"]
    config = EvaluationConfig(alpha=c["alpha"], n_tests=c["n_tests"], t_rounds=c["t_rounds"],
                              pairs=c["pairs"], lam=c["lambda"], mode=Mode(c["mode"]),
                              seed=c["seed"], sampler=c["sampler"])
    return EvaluationReport(
        score=d["score"],
        round_passes=tuple(d["round_passes"]),
        interval=None if d["interval"] is None else CriticalInterval(**d["interval"]),
        stats=DiffStats(d["stats"]["mean"], d["stats"]["variance"]),
        pairs_used=d["pairs_used"],
        pairs_raw=d["pairs_raw"],
        lam=d["lambda"],
        mode=Mode(d["mode"]),
        verdict=Verdict(d["verdict"]),
        config_echo=config,
        distribution_source=DistributionSource(d["distribution_source"]),
        rng=d["rng"],
        extras=dict(d["extras"]),
    )


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class ReportDocument:
    image_path: str
    image_sha256: str
    report: EvaluationReport
    schema_version: str = SCHEMA_VERSION
    tool_version: str = __version__
    created_utc: str = field(default_factory=_now)

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "tool": "imgrand",
            "tool_version": self.tool_version,
            "created_utc": self.created_utc,
            "image_path": self.image_path,
            "image_sha256": self.image_sha256,
            "report": report_to_dict(self.report),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> ReportDocument:
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema_version')!r}")
        return cls(image_path=d["image_path"], image_sha256=d["image_sha256"],
                   report=report_from_dict(d["report"]), schema_version=d["schema_version"],
                   tool_version=d["tool_version"], created_utc=d["created_utc"])

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        return cls.from_dict(json.loads(text))
