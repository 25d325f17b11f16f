"""Shared result record for inequality/identity check suites."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of a sampled check.

    min_slack is the smallest margin by which the asserted inequality held
    (negative values are violations); metrics carries whatever extra numbers
    the specific check wants to surface.
    """

    name: str
    passed: bool
    n_samples: int
    n_violations: int
    min_slack: float
    metrics: dict = field(default_factory=dict)
    notes: tuple = ()

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "n_samples": self.n_samples,
            "n_violations": self.n_violations,
            "min_slack": self.min_slack,
            "metrics": dict(self.metrics),
            "notes": list(self.notes),
        }
