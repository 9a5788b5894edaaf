"""Seeded experiment runner.

Trial ``t`` of an experiment with seed ``s`` draws all of its randomness from
``numpy.random.SeedSequence([s, t])``, so any single trial can be replayed on
its own and results do not depend on how trials are scheduled.
"""

from __future__ import annotations

import json
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Optional, Sequence

import numpy as np

from .attacks import (
    AS2AttackFailed,
    as3_impersonate,
    attack_as1,
    attack_as2_alg1,
    attack_as2_alg2,
    attack_as2_double_coset,
    attack_as3,
    forge_signature,
)
from .braid import random_word
from .conjugacy import DEFAULT_CAP, DEFAULT_COSET_BUDGET, ResourceCapExceeded
from .garside import equals, left_normal_form, word_product
from .protocols import (
    as1_challenge,
    as1_keygen,
    as1_respond,
    as1_verify,
    as2_challenge,
    as2_keygen,
    as2_respond,
    as2_verify,
    as2g_keygen,
    as3_keygen,
    sig_keygen,
    sig_verify,
)

__all__ = [
    "SCHEMES",
    "ExperimentConfig",
    "ExperimentReport",
    "TrialResult",
    "run_trial",
    "run_experiment",
    "scaling_probe",
    "fit_slope",
]

SCHEMES = ("as1", "as2-alg1", "as2-alg2", "as2-coset", "as3", "sig")


@dataclass(frozen=True)
class ExperimentConfig:
    scheme: str
    n: int = 8
    secret_len: int = 8
    r: int = 2
    s: int = 2
    k: int = 2
    m: int = 3
    k_rounds: int = 20
    trials: int = 10
    seed: int = 0
    cap: int = DEFAULT_CAP
    coset_budget: int = DEFAULT_COSET_BUDGET
    c_len: int = 12
    challenge_len: Optional[int] = None
    original: bool = False
    timings: bool = True
    workers: int = 1
    output: Optional[str] = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; choose from {', '.join(SCHEMES)}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.n < 2 or self.secret_len < 0:
            raise ValueError("need n >= 2 and a nonnegative secret length")
        if self.scheme.startswith("as") and self.scheme != "as3" and self.n % 2:
            raise ValueError("schemes I and II need an even strand count")
        if min(self.r, self.s) < 2:
            raise ValueError("r and s must be >= 2")
        if self.k < 2:
            raise ValueError("k must be >= 2")

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentConfig:
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown config keys: {', '.join(sorted(extra))}")
        return cls(**d)

    @classmethod
    def from_file(cls, path: str) -> ExperimentConfig:
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    @property
    def chal_len(self) -> int:
        return self.secret_len if self.challenge_len is None else self.challenge_len


@dataclass(frozen=True)
class TrialResult:
    trial: int
    success: bool
    forgery_verified: bool
    cap_exceeded: bool
    exact: Optional[bool]
    ms: float
    detail: str = ""


@dataclass
class ExperimentReport:
    scheme: str
    params: dict
    trials: int
    successes: int
    forgeries_verified: int
    cap_exceeded: int
    exact_recoveries: int
    timings_ms: list = field(default_factory=list)
    mean_ms: float = 0.0
    median_ms: float = 0.0
    failures: dict = field(default_factory=dict)

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> ExperimentReport:
        return cls(**json.loads(text))


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def run_trial(cfg: ExperimentConfig, trial: int) -> TrialResult:
    """Keygen, one honest transcript, the attack, then a forgery on a fresh challenge."""
    rng = _trial_rng(cfg.seed, trial)
    start = time.perf_counter()
    capped = False
    exact = None
    detail = ""
    try:
        ok, verified, exact, detail = _RUNNERS[cfg.scheme](cfg, rng)
    except ResourceCapExceeded as exc:
        ok = verified = False
        capped = True
        detail = str(exc)
    ms = (time.perf_counter() - start) * 1000 if cfg.timings else 0.0
    if ok and not verified:
        raise AssertionError(f"trial {trial}: attack reported success without a verified forgery")
    return TrialResult(trial, ok, verified, capped, exact, ms, detail)


def _run_as1(cfg, rng):
    keys = as1_keygen(cfg.n, cfg.r, cfg.s, cfg.secret_len, rng)
    A, B = attack_as1(keys.X, cfg.n)
    exact = equals(A, keys.a ** cfg.r) and equals(B, keys.b ** cfg.s)
    ch = as1_challenge(cfg.n, cfg.r, cfg.s, cfg.chal_len, rng)
    verified = as1_verify(keys.X, ch, word_product(A, ch.Y, B))
    return verified, verified, exact, ""


def _as2_instance(cfg, rng):
    if cfg.original:
        keys = as2_keygen(cfg.n, cfg.r, cfg.s, cfg.secret_len, cfg.c_len, rng)
        rs = dict(r=cfg.r, s=cfg.s)
    else:
        keys = as2g_keygen(cfg.n, cfg.secret_len, cfg.c_len, rng)
        rs = {}
    ch = as2_challenge(keys.c, cfg.chal_len, rng, **rs)
    return keys, ch, as2_respond(keys, ch.Y), rs


def _run_as2(cfg, rng):
    keys, ch, Z, rs = _as2_instance(cfg, rng)
    try:
        if cfg.scheme == "as2-alg1":
            rec = attack_as2_alg1(keys.X, ch.Y, Z, keys.c, cfg.n, cfg.cap, cfg.coset_budget)
        elif cfg.scheme == "as2-alg2":
            rec = attack_as2_alg2(keys.X, ch.Y, Z, keys.c, cfg.n, cfg.cap, cfg.coset_budget, cfg.secret_len)
        else:
            rec = attack_as2_double_coset(keys.X, keys.c, cfg.n, cfg.coset_budget)
    except AS2AttackFailed as exc:
        return False, False, None, str(exc)
    exact = equals(rec.a1_hat, keys.a1) and equals(rec.a2_hat, keys.a2)
    fresh = as2_challenge(keys.c, cfg.chal_len, rng, **rs)
    verified = as2_verify(keys.X, fresh, word_product(rec.a1_hat, fresh.Y, rec.a2_hat))
    return verified, verified, exact, rec.method


def _run_as3(cfg, rng):
    keys = as3_keygen(cfg.n, cfg.secret_len, cfg.k_rounds, rng)
    res = attack_as3(keys.b, cfg.n, cfg.cap)
    if res.root is None:
        return False, False, None, res.status
    exact = equals(res.root, keys.a)
    report = as3_impersonate(res.root, keys.b, cfg.k_rounds, rng)
    return report.success, report.forgery_verified, exact, res.method


def _run_sig(cfg, rng):
    keys = sig_keygen(cfg.n, cfg.m, cfg.k, cfg.secret_len, rng)
    message = rng.bytes(16)
    sig = forge_signature(keys.public, message, rng, cfg.cap, beta_len=cfg.secret_len)
    if sig is None:
        return False, False, None, "no root"
    verified = sig_verify(keys.public, message, sig)
    return verified, verified, None, ""


_RUNNERS = {
    "as1": _run_as1,
    "as2-alg1": _run_as2,
    "as2-alg2": _run_as2,
    "as2-coset": _run_as2,
    "as3": _run_as3,
    "sig": _run_sig,
}


def _run_one(args):
    return run_trial(*args)


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    jobs = [(cfg, t) for t in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    results.sort(key=lambda r: r.trial)
    timings = [round(r.ms, 3) for r in results]
    failures = {str(r.trial): r.detail for r in results if not r.success}
    params = {k: v for k, v in asdict(cfg).items() if k not in ("scheme", "trials", "output", "workers")}
    report = ExperimentReport(
        scheme=cfg.scheme,
        params=params,
        trials=cfg.trials,
        successes=sum(r.success for r in results),
        forgeries_verified=sum(r.forgery_verified for r in results),
        cap_exceeded=sum(r.cap_exceeded for r in results),
        exact_recoveries=sum(bool(r.exact) for r in results),
        timings_ms=timings,
        mean_ms=round(statistics.fmean(timings), 3),
        median_ms=round(statistics.median(timings), 3),
        failures=failures,
    )
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(report.to_json())
    return report


def fit_slope(lengths: Sequence[float], times: Sequence[float]) -> Optional[float]:
    """Least-squares slope of log(time) against log(length); None with fewer than two points."""
    if len(lengths) < 2:
        return None
    slope, _ = np.polyfit(np.log(lengths), np.log(times), 1)
    return float(slope)


def scaling_probe(
    lengths: Sequence[int], trials: int = 5, seed: int = 0, n: int = 8, op: str = "normal_form"
) -> dict[str, Any]:
    """Mean left_normal_form time on random words of each length, and the log-log slope."""
    if op != "normal_form":
        raise ValueError(f"unsupported operation {op!r}")
    if not lengths:
        raise ValueError("need at least one length")
    rng = np.random.default_rng(seed)
    table = []
    for length in lengths:
        words = [random_word(n, length, None, rng) for _ in range(trials)]
        left_normal_form(words[0])
        start = time.perf_counter()
        for w in words:
            left_normal_form(w)
        table.append((length, (time.perf_counter() - start) / trials))
    return {"n": n, "table": table, "slope": fit_slope([l for l, _ in table], [t for _, t in table])}
