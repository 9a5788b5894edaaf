import json

import pytest

from braidcrypt.harness import (
    SCHEMES,
    ExperimentConfig,
    ExperimentReport,
    fit_slope,
    run_experiment,
    run_trial,
    scaling_probe,
)


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig("nope")
    with pytest.raises(ValueError):
        ExperimentConfig("as1", trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig("as1", n=7)
    with pytest.raises(ValueError):
        ExperimentConfig("as1", r=1)
    with pytest.raises(ValueError):
        ExperimentConfig.from_dict({"scheme": "as1", "bogus": 1})
    ExperimentConfig("as3", n=7)
    assert ExperimentConfig("as1", secret_len=5).chal_len == 5
    assert ExperimentConfig("as1", secret_len=5, challenge_len=9).chal_len == 9


def test_config_from_file(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"scheme": "as1", "trials": 2, "seed": 4}))
    cfg = ExperimentConfig.from_file(str(path))
    assert (cfg.scheme, cfg.trials, cfg.seed) == ("as1", 2, 4)


def test_single_as1_trial_succeeds():
    for seed in range(3):
        rep = run_experiment(ExperimentConfig("as1", trials=1, seed=seed))
        assert rep.successes == rep.forgeries_verified == 1
        assert rep.exact_recoveries == 1


@pytest.mark.parametrize("scheme", SCHEMES)
def test_reports_are_deterministic(scheme):
    cfg = ExperimentConfig(scheme, trials=2, seed=3, secret_len=4, timings=False)
    a, b = run_experiment(cfg).to_json(), run_experiment(cfg).to_json()
    assert a == b
    rep = ExperimentReport.from_json(a)
    assert rep.to_json() == a
    assert rep.successes == rep.forgeries_verified
    assert rep.successes + len(rep.failures) == rep.trials
    assert rep.cap_exceeded <= rep.trials - rep.successes


def test_trials_are_individually_reproducible():
    cfg = ExperimentConfig("as3", trials=4, seed=1, secret_len=6, timings=False)
    rep = run_experiment(cfg)
    again = run_trial(cfg, 2)
    assert again.success == (str(2) not in rep.failures)


def test_parallel_matches_serial():
    cfg = ExperimentConfig("sig", trials=4, seed=2, secret_len=6, timings=False)
    par = ExperimentConfig("sig", trials=4, seed=2, secret_len=6, timings=False, workers=2)
    assert run_experiment(cfg).to_json() == run_experiment(par).to_json()


def test_report_schema(tmp_path):
    out = tmp_path / "rep.json"
    run_experiment(ExperimentConfig("as1", trials=3, seed=0, output=str(out)))
    data = json.loads(out.read_text())
    for key in ("scheme", "params", "trials", "successes", "forgeries_verified", "cap_exceeded", "timings_ms", "mean_ms"):
        assert key in data
    assert len(data["timings_ms"]) == 3


def test_cap_is_counted_separately():
    rep = run_experiment(ExperimentConfig("as2-alg2", trials=2, seed=0, cap=1, timings=False))
    assert rep.cap_exceeded >= 1
    assert rep.successes + rep.cap_exceeded <= rep.trials


def test_fit_slope():
    assert fit_slope([100], [1.0]) is None
    assert fit_slope([1, 2, 4], [1, 4, 16]) == pytest.approx(2.0)


def test_scaling_probe():
    res = scaling_probe([50], trials=2)
    assert res["slope"] is None and len(res["table"]) == 1
    res = scaling_probe([50, 100], trials=2)
    assert res["slope"] is not None
    with pytest.raises(ValueError):
        scaling_probe([])
    with pytest.raises(ValueError):
        scaling_probe([10], op="meet")
