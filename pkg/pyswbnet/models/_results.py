"""Models for analysis and inference results."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path

from mashumaro.mixins.json import DataClassJSONMixin

from pyswbnet.const import ARTIFACT_VERSION, Condition, Verdict

from ._config import RunConfig


@dataclass(kw_only=True, frozen=True)
class Partition:
    """Community id per node, ids dense in 0..count-1."""

    membership: tuple[int, ...]

    @property
    def count(self) -> int:
        """Return the number of communities."""
        return len(set(self.membership))

    def communities(self) -> list[frozenset[int]]:
        """Return the member sets ordered by community id."""
        groups: list[set[int]] = [set() for _ in range(self.count)]
        for node, community in enumerate(self.membership):
            groups[community].add(node)
        return [frozenset(group) for group in groups]


@dataclass(kw_only=True, frozen=True)
class PermutationResult(DataClassJSONMixin):
    """Two-sided permutation test of a difference in condition means."""

    difference: float
    p_value: float
    iterations: int


@dataclass(kw_only=True, frozen=True)
class WelchResult(DataClassJSONMixin):
    """Unequal-variance t test."""

    t: float
    df: float
    p_value: float


@dataclass(kw_only=True, frozen=True)
class LogisticFit(DataClassJSONMixin):
    """Maximum-likelihood logit coefficients with Wald statistics."""

    names: tuple[str, ...]
    coefficients: tuple[float, ...]
    standard_errors: tuple[float, ...]
    p_values: tuple[float, ...]
    log_likelihood: float
    iterations: int
    likelihood_trace: tuple[float, ...] = ()

    def coefficient(self, name: str) -> float:
        """Return the coefficient of a named covariate."""
        return self.coefficients[self.names.index(name)]

    def standard_error(self, name: str) -> float:
        """Return the standard error of a named covariate."""
        return self.standard_errors[self.names.index(name)]

    def p_value(self, name: str) -> float:
        """Return the Wald p-value of a named covariate."""
        return self.p_values[self.names.index(name)]


@dataclass(kw_only=True, frozen=True)
class MediationResult(DataClassJSONMixin):
    """Decomposition of a condition effect through a mediator.

    `unstable` flags a near-zero total effect, which makes `proportion`
    meaningless.
    """

    total: float
    direct: float
    indirect: float
    a: float
    b: float
    proportion: float | None
    ci_low: float
    ci_high: float
    p_value: float
    clusters: int
    bootstrap: int
    unstable: bool = False


@dataclass(kw_only=True, frozen=True)
class MediationReport(DataClassJSONMixin):
    """Mediation result together with the columns it was computed on."""

    version: str = ARTIFACT_VERSION
    mediator: str
    outcome: str
    seed: int
    result: MediationResult


@dataclass(kw_only=True, frozen=True)
class SessionEntry(DataClassJSONMixin):
    """One simulated network listed in a run manifest."""

    condition: Condition
    replicate: int
    network_id: str
    seed: int
    log_file: str


@dataclass(kw_only=True)
class RunManifest(DataClassJSONMixin):
    """Index of a run directory."""

    version: str = ARTIFACT_VERSION
    created_at: datetime
    config: RunConfig
    sessions: list[SessionEntry] = field(default_factory=list)

    def log_path(self, run_directory: Path, entry: SessionEntry) -> Path:
        """Return the absolute path of a session's log."""
        return run_directory / entry.log_file

    @property
    def conditions(self) -> set[Condition]:
        """Return the conditions present in the run."""
        return {entry.condition for entry in self.sessions}


@dataclass(kw_only=True, frozen=True)
class FindingVerdict:
    """Outcome of one replication check."""

    finding: str
    required: bool
    verdict: Verdict
    visible: float | None = None
    invisible: float | None = None
    effect: float | None = None
    p_value: float | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        """Return whether the check passed."""
        return self.verdict is Verdict.PASS
