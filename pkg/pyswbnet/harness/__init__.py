"""Batch runner, event-log persistence and reports."""

from ._analyze import (
    METRIC_COLUMNS,
    SUMMARY_OUTCOMES,
    TRAJECTORY_COLUMNS,
    AnalysisReport,
    analyze,
    analyze_network,
    network_means,
)
from ._config import load_run_config, run_config_from_mapping
from ._eventlog import dump_log, dump_record, parse_log, read_log, write_log
from ._mediate import DEFAULT_MEDIATOR, DEFAULT_OUTCOMES, mediate_cmd, mediation_file
from ._parallel import run_jobs
from ._replicate import (
    INTERACTION_TERMS,
    interaction_design,
    load_trajectories,
    replicate,
)
from ._simulate import network_id, read_manifest, simulate

__all__ = [
    "DEFAULT_MEDIATOR",
    "DEFAULT_OUTCOMES",
    "INTERACTION_TERMS",
    "METRIC_COLUMNS",
    "SUMMARY_OUTCOMES",
    "TRAJECTORY_COLUMNS",
    "AnalysisReport",
    "analyze",
    "analyze_network",
    "dump_log",
    "dump_record",
    "interaction_design",
    "load_run_config",
    "load_trajectories",
    "mediate_cmd",
    "mediation_file",
    "network_id",
    "network_means",
    "parse_log",
    "read_log",
    "read_manifest",
    "replicate",
    "run_config_from_mapping",
    "run_jobs",
    "simulate",
    "write_log",
]
