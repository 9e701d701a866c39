"""Neuroevolution of swarm controllers with novelty search."""

import json
from pathlib import Path

from ._core import (
    ConfigError,
    RunIncomplete,
    RuntimeFailure,
    activate,
    combine_harmonic,
    config_hash,
    count_clusters,
    evaluate,
    export,
    fitness_aggregation,
    genome_summary,
    initial_genome,
    load_run,
    nearest_rank_percentile,
    normalize_config,
    posteval,
    resume,
    score_pmcns,
    score_scalarized,
    sparseness,
    update_criterion,
)
from . import _core

__all__ = [
    "ConfigError",
    "RunIncomplete",
    "RuntimeFailure",
    "activate",
    "combine_harmonic",
    "config_hash",
    "count_clusters",
    "evaluate",
    "evolve",
    "export",
    "fitness_aggregation",
    "genome_summary",
    "initial_genome",
    "load_config",
    "load_run",
    "nearest_rank_percentile",
    "normalize_config",
    "posteval",
    "resume",
    "score_pmcns",
    "score_scalarized",
    "sparseness",
    "update_criterion",
]


def load_config(config):
    """Return the normalized config for a dict or a path to a JSON file."""
    if isinstance(config, (str, Path)):
        config = json.loads(Path(config).read_text())
    return json.loads(normalize_config(json.dumps(config)))


def evolve(config, workers=0, max_generations=None, force=False):
    """Run an experiment from a dict or a JSON file; returns the manifest path."""
    path = ""
    if isinstance(config, (str, Path)):
        path = str(config)
        config = json.loads(Path(config).read_text())
    return _core.evolve(json.dumps(config), path, workers, max_generations, force)
