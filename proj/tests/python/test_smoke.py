import json
import math

import pytest

import swarmnov


def tiny_config(out, policy="pmcns"):
    return {
        "task": "aggregation",
        "characterisation": "bcm",
        "selection": {"policy": policy},
        "novelty": {"k": 3},
        "evolution": {"population_size": 8, "generations": 3},
        "sim": {"steps": 100},
        "trials": 2,
        "posteval_trials": 2,
        "runs": 1,
        "seed": 4,
        "output_dir": str(out),
    }


def test_config_normalisation():
    cfg = swarmnov.load_config({"task": "resource"})
    assert cfg["characterisation"] == "bsimple"
    assert cfg["evolution"]["generations"] == 400
    assert cfg["sim"]["swarm_size"] == 5
    assert len(swarmnov.config_hash(json.dumps(cfg))) == 16
    with pytest.raises(ValueError, match="trials"):
        swarmnov.load_config({"task": "aggregation", "trials": 0})
    with pytest.raises(swarmnov.ConfigError):
        swarmnov.load_config({"task": "aggregation", "colour": 1})


def test_genome_and_network():
    text = swarmnov.initial_genome("aggregation", seed=2)
    summary = swarmnov.genome_summary(text)
    assert summary["complexity"] == 71
    out = swarmnov.activate(text, [[0.0] * 17, [1.0] * 17])
    assert len(out) == 2 and all(len(o) == 3 for o in out)
    assert all(0.0 < v < 1.0 for row in out for v in row)
    assert swarmnov.genome_summary(swarmnov.initial_genome("resource"))["complexity"] == 107


def test_evaluate_is_deterministic():
    cfg = json.dumps(tiny_config("unused"))
    text = swarmnov.initial_genome("aggregation", seed=5)
    a = swarmnov.evaluate(text, cfg, [1, 2])
    b = swarmnov.evaluate(text, cfg, [1, 2])
    assert a == b
    assert len(a["descriptor"]) == 2
    assert 0.0 <= a["fitness"] <= 1.0


def test_maths():
    assert swarmnov.sparseness([0.0], [[1.0], [2.0], [3.0]], k=2) == pytest.approx(1.5)
    assert swarmnov.combine_harmonic([0.5, 1.0]) == pytest.approx(2 / 3)
    assert swarmnov.combine_harmonic([0.5, 0.0]) == 0.0
    assert swarmnov.nearest_rank_percentile([0.1, 0.2, 0.3, 0.4], 0.5) == pytest.approx(0.2)
    assert swarmnov.update_criterion(0.0, [0.2, 0.4, 0.6, 0.8], 0.5, 0.25) == pytest.approx(0.1)
    assert swarmnov.score_pmcns([0.1, 0.5], [3.0, 2.0], 0.3) == [0.0, 2.0]
    assert swarmnov.score_scalarized([0.0, 1.0], [1.0, 0.0], 0.75) == pytest.approx([0.75, 0.25])
    d = math.hypot(1.5, 1.5)
    assert swarmnov.fitness_aggregation([(1.5 - 0.75, 1.5 - 0.75), (2.25, 2.25)], d) == pytest.approx(0.5)
    assert swarmnov.count_clusters([(0, 0), (0.2, 0), (1, 1)]) == 2


def test_experiment_round_trip(tmp_path):
    manifest = swarmnov.evolve(tiny_config(tmp_path / "exp"), workers=1, max_generations=2)
    assert not swarmnov.resume(manifest, workers=1, max_generations=0)
    assert swarmnov.resume(manifest, workers=1)
    with pytest.raises(swarmnov.ConfigError):
        swarmnov.evolve(tiny_config(tmp_path / "exp"), workers=1)
    run = swarmnov.load_run(tmp_path / "exp" / "run_000")
    assert len(run["best_fitness"]) == 3
    assert run["individuals"] == 24
    swarmnov.posteval(manifest, workers=1)
    files = swarmnov.export(manifest, "trajectory-curves")
    assert files and all(f.exists() for f in files)
    with pytest.raises(ValueError):
        swarmnov.export(manifest, "video")


def test_incomplete_export(tmp_path):
    manifest = swarmnov.evolve(tiny_config(tmp_path / "early"), workers=1, max_generations=0)
    with pytest.raises(swarmnov.RunIncomplete):
        swarmnov.export(manifest, "complexity")
    with pytest.raises(RuntimeError):
        swarmnov.export(manifest, "complexity")
