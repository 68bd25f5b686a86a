"""Batch verification suites over random and constructed instances.

Each suite draws seeded instances, evaluates a family of inequalities or
identities, and returns a report of per-check records.  Reports are
deterministic functions of (config, suite name): per-trial randomness is
derived from ``seed + trial`` so trial order and parallelism cannot change
the outcome.

Slack semantics: every record stores the signed margin by which its check is
satisfied (bound minus value for upper bounds, value minus bound for lower
bounds), so a negative slack beyond the configured floor is a failure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .channels import random_strict_channel
from .divergences import (
    min_rel_entropy,
    renyi_rel_entropy,
    sandwiched_rel_entropy,
)
from .errors import ValidationError
from .functionals import (
    channel_trace_value,
    cmi_trace_value,
    exp_trace_channel_value,
    exp_trace_cmi_value,
    lie_trotter_deviation,
    output_fixed_point_residual,
    recovery_fixed_point_residual,
    sandwiched_fixed_point_residual,
)
from .linalg import herm_pow
from .measures import (
    PETZ_ALPHA_GRID,
    SANDWICHED_ALPHA_GRID,
    ChannelTriple,
    TripartiteState,
    minmax_cmi,
    minmax_rel_ent_diff,
    rel_ent_diff,
    renyi_cmi,
    renyi_rel_ent_diff,
    sandwiched_cmi,
    sandwiched_rel_ent_diff,
    von_neumann_cmi,
)
from .states import DensityOperator, PositiveOperator, perturb_positive, random_density
from .structured import (
    build_markov_chain,
    build_sufficiency_triple,
    is_sufficient_petz,
    random_markov_spec,
    random_sufficiency_spec,
)

CONVERSE_FLOOR = 1e-6  # empirical positivity threshold for non-sufficient instances
SCREEN_DISTANCE = 1e-3  # random triples closer than this to recoverable are redrawn

SUITE_NAMES = ("trace", "characterization", "limits", "inequalities")


@dataclass(frozen=True)
class SuiteConfig:
    """Shared knobs for all suites.

    ``tol`` bounds structural-identity residuals, ``slack_floor`` is the
    allowed negative margin on exact inequalities, and ``limit_tol`` bounds
    the distance to the von Neumann quantities at alpha = 1 +- 1e-4.
    """

    trials: int = 25
    dims: tuple[int, ...] = (2, 2, 2)
    seed: int = 0
    tol: float = 1e-8
    alpha_grid: tuple[float, ...] | None = None
    eps_regularize: float = 0.0
    channel_dims: tuple[int, int] = (4, 3)
    slack_floor: float = 1e-9
    limit_tol: float = 1e-3

    def __post_init__(self):
        if self.trials < 1:
            raise ValidationError("bad-spec", "trials must be at least 1")
        if self.tol <= 0:
            raise ValidationError("bad-spec", "tol must be positive")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if self.alpha_grid is not None:
            object.__setattr__(
                self, "alpha_grid", tuple(float(a) for a in self.alpha_grid)
            )

    @property
    def petz_grid(self) -> tuple[float, ...]:
        grid = self.alpha_grid if self.alpha_grid is not None else PETZ_ALPHA_GRID
        return tuple(a for a in grid if 0.0 < a < 2.0 and abs(a - 1.0) >= 1e-6)

    @property
    def sandwiched_grid(self) -> tuple[float, ...]:
        grid = self.alpha_grid if self.alpha_grid is not None else SANDWICHED_ALPHA_GRID
        return tuple(a for a in grid if a > 0.5 and abs(a - 1.0) >= 1e-6)


@dataclass(frozen=True)
class CheckRecord:
    check: str
    trial: int
    seed: int
    alpha: float | None
    value: float
    bound: float
    slack: float
    passed: bool


@dataclass
class VerificationReport:
    suite: str
    config: SuiteConfig
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def worst_slack(self) -> float:
        return min((r.slack for r in self.records), default=float("inf"))

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "config": {
                "trials": self.config.trials,
                "dims": list(self.config.dims),
                "seed": self.config.seed,
                "tol": self.config.tol,
                "alpha_grid": list(self.config.alpha_grid)
                if self.config.alpha_grid is not None
                else None,
                "eps_regularize": self.config.eps_regularize,
                "channel_dims": list(self.config.channel_dims),
                "slack_floor": self.config.slack_floor,
                "limit_tol": self.config.limit_tol,
            },
            "records": [
                {
                    "check": r.check,
                    "trial": r.trial,
                    "seed": r.seed,
                    "alpha": r.alpha,
                    "value": r.value,
                    "bound": r.bound,
                    "slack": r.slack,
                    "passed": r.passed,
                }
                for r in self.records
            ],
            "worst_slack": self.worst_slack,
            "all_pass": self.all_pass,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_table(self) -> str:
        groups: dict[str, list[CheckRecord]] = {}
        for r in self.records:
            groups.setdefault(r.check, []).append(r)
        lines = [
            f"suite {self.suite}: trials={self.config.trials} "
            f"dims={'x'.join(str(d) for d in self.config.dims)} seed={self.config.seed}",
            f"{'check':<42} {'n':>6} {'fail':>5} {'worst_slack':>14}",
        ]
        for name, recs in groups.items():
            fails = sum(1 for r in recs if not r.passed)
            worst = min(r.slack for r in recs)
            lines.append(f"{name:<42} {len(recs):>6} {fails:>5} {worst:>+14.5e}")
        verdict = "PASS" if self.all_pass else "FAIL"
        lines.append(
            f"suite {self.suite}: {verdict} "
            f"({len(self.records)} checks, worst slack {self.worst_slack:+.5e})"
        )
        return "\n".join(lines)


class _Recorder:
    def __init__(self, suite: str, cfg: SuiteConfig):
        self.report = VerificationReport(suite=suite, config=cfg)

    def upper(self, check, trial, seed, alpha, value, bound, floor):
        """Record a check of the form value <= bound (+ floor)."""
        slack = bound - value
        self.report.records.append(
            CheckRecord(check, trial, seed, alpha, float(value), float(bound),
                        float(slack), bool(slack >= -floor))
        )

    def lower(self, check, trial, seed, alpha, value, bound, floor):
        """Record a check of the form value >= bound (- floor)."""
        slack = value - bound
        self.report.records.append(
            CheckRecord(check, trial, seed, alpha, float(value), float(bound),
                        float(slack), bool(slack >= -floor))
        )


def _trial_rng(cfg: SuiteConfig, trial: int) -> np.random.Generator:
    return np.random.default_rng(cfg.seed + trial)


def _random_state(cfg: SuiteConfig, rng) -> TripartiteState:
    rho = random_density(cfg.dims, seed=rng)
    if cfg.eps_regularize > 0.0:
        rho = perturb_positive(rho, cfg.eps_regularize)
    return TripartiteState(rho)


def _random_triple(cfg: SuiteConfig, rng) -> ChannelTriple:
    d_in, d_out = cfg.channel_dims
    rho = random_density((d_in,), seed=rng)
    sigma = PositiveOperator(random_density((d_in,), seed=rng).matrix)
    channel = random_strict_channel(d_in, d_out, seed=int(rng.integers(2**63)))
    return ChannelTriple(rho=rho, sigma=sigma, channel=channel)


def _markov_block_menu(rng) -> tuple[tuple[int, int], ...]:
    choices = (((2, 1), (1, 2)), ((1, 2), (2, 1)), ((1, 1), (2, 1)), ((1, 1), (1, 1)))
    return choices[int(rng.integers(len(choices)))]


def _sufficiency_block_menu(rng) -> tuple[tuple[int, int, int], ...]:
    choices = (
        ((2, 2, 2), (1, 2, 2)),
        ((1, 2, 2), (2, 2, 2)),
        ((2, 2, 1), (1, 2, 2)),
        ((1, 2, 3), (2, 2, 2)),
    )
    return choices[int(rng.integers(len(choices)))]


def _screened_nonsufficient_triple(
    cfg: SuiteConfig, trial: int, min_distance: float = SCREEN_DISTANCE
) -> ChannelTriple:
    """Random triple whose Petz round trip fails by at least ``min_distance``.

    Triples that happen to be (nearly) recoverable are discarded and redrawn
    from a deterministic per-attempt stream.
    """
    for attempt in range(64):
        rng = np.random.default_rng(
            np.random.SeedSequence((cfg.seed, trial, attempt))
        )
        triple = _random_triple(cfg, rng)
        _, d_rho, _ = is_sufficient_petz(triple)
        if d_rho >= min_distance:
            return triple
    raise ValidationError("bad-spec", "could not draw a non-sufficient triple")


def trace_inequality_suite(cfg: SuiteConfig, extra_state: TripartiteState | None = None) -> VerificationReport:
    """Certify the four trace bounds and their exponential limits.

    On random states and triples the recovered-chain traces stay at or below
    one; on constructed Markov chains and sufficiency triples they equal one.
    """
    rec = _Recorder("trace", cfg)
    if extra_state is not None:
        _trace_checks_for_state(rec, cfg, extra_state, -1, cfg.seed)
    for trial in range(cfg.trials):
        seed_t = cfg.seed + trial
        rng = _trial_rng(cfg, trial)
        state = _random_state(cfg, rng)
        _trace_checks_for_state(rec, cfg, state, trial, seed_t)

        triple = _random_triple(cfg, rng)
        for a in cfg.petz_grid:
            rec.upper("channel-trace-plain", trial, seed_t, a,
                      channel_trace_value(triple, a, sandwiched=False), 1.0, cfg.slack_floor)
        for a in cfg.sandwiched_grid:
            rec.upper("channel-trace-sandwiched", trial, seed_t, a,
                      channel_trace_value(triple, a, sandwiched=True), 1.0, cfg.slack_floor)
        rec.upper("exp-trace-channel", trial, seed_t, None,
                  exp_trace_channel_value(triple), 1.0, cfg.slack_floor)

        # equality cases: constructed recoverable instances sit exactly at 1
        markov = build_markov_chain(
            random_markov_spec(2, 2, _markov_block_menu(rng), seed=rng)
        )
        for a in cfg.petz_grid:
            rec.upper("markov-trace-equality", trial, seed_t, a,
                      abs(cmi_trace_value(markov, a, sandwiched=False) - 1.0),
                      cfg.tol, 0.0)
        for a in cfg.sandwiched_grid:
            rec.upper("markov-trace-equality-sandwiched", trial, seed_t, a,
                      abs(cmi_trace_value(markov, a, sandwiched=True) - 1.0),
                      cfg.tol, 0.0)
        suff = build_sufficiency_triple(
            random_sufficiency_spec(_sufficiency_block_menu(rng), seed=rng)
        )
        for a in cfg.petz_grid:
            rec.upper("sufficiency-trace-equality", trial, seed_t, a,
                      abs(channel_trace_value(suff, a, sandwiched=False) - 1.0),
                      cfg.tol, 0.0)
        for a in cfg.sandwiched_grid:
            rec.upper("sufficiency-trace-equality-sandwiched", trial, seed_t, a,
                      abs(channel_trace_value(suff, a, sandwiched=True) - 1.0),
                      cfg.tol, 0.0)
    return rec.report


def _trace_checks_for_state(rec, cfg, state, trial, seed_t):
    for a in cfg.petz_grid:
        rec.upper("cmi-trace-plain", trial, seed_t, a,
                  cmi_trace_value(state, a, sandwiched=False), 1.0, cfg.slack_floor)
    for a in cfg.sandwiched_grid:
        rec.upper("cmi-trace-sandwiched", trial, seed_t, a,
                  cmi_trace_value(state, a, sandwiched=True), 1.0, cfg.slack_floor)
    rec.upper("exp-trace-cmi", trial, seed_t, None,
              exp_trace_cmi_value(state), 1.0, cfg.slack_floor)


def characterization_suite(cfg: SuiteConfig) -> VerificationReport:
    """Certify the zero-iff-recoverable characterizations in both directions.

    Constructed sufficiency triples must drive every difference measure and
    every fixed-point residual to zero; screened random triples must keep all
    of them strictly positive.
    """
    rec = _Recorder("characterization", cfg)
    for trial in range(cfg.trials):
        seed_t = cfg.seed + trial
        rng = _trial_rng(cfg, trial)
        suff = build_sufficiency_triple(
            random_sufficiency_spec(_sufficiency_block_menu(rng), seed=rng)
        )
        # the plain difference is checked on its certified grid only: beyond
        # alpha = 2 its exponents amplify round-off past any useful tolerance
        for a in cfg.petz_grid:
            rec.upper("sufficiency-renyi-diff-zero", trial, seed_t, a,
                      abs(renyi_rel_ent_diff(suff, a)), cfg.tol, 0.0)
            rec.upper("sufficiency-output-fixed-point", trial, seed_t, a,
                      output_fixed_point_residual(suff, a), cfg.tol, 0.0)
        for a in cfg.sandwiched_grid:
            rec.upper("sufficiency-sandwiched-diff-zero", trial, seed_t, a,
                      abs(sandwiched_rel_ent_diff(suff, a)), cfg.tol, 0.0)
            rec.upper("sufficiency-sandwiched-fixed-point", trial, seed_t, a,
                      sandwiched_fixed_point_residual(suff, a), cfg.tol, 0.0)
        for a in cfg.petz_grid:
            rec.upper("sufficiency-recovery-fixed-point", trial, seed_t, a,
                      recovery_fixed_point_residual(suff, a), cfg.tol, 0.0)
        for kind in ("min", "max"):
            rec.upper(f"sufficiency-{kind}-diff-zero", trial, seed_t, None,
                      abs(minmax_rel_ent_diff(suff, kind)), cfg.tol, 0.0)

        hard = _screened_nonsufficient_triple(cfg, trial)
        rec.lower("nonsufficient-renyi-diff-positive", trial, seed_t, None,
                  max(renyi_rel_ent_diff(hard, a) for a in cfg.petz_grid),
                  CONVERSE_FLOOR, 0.0)
        rec.lower("nonsufficient-sandwiched-diff-positive", trial, seed_t, None,
                  max(sandwiched_rel_ent_diff(hard, a) for a in cfg.sandwiched_grid),
                  CONVERSE_FLOOR, 0.0)
        rec.lower("nonsufficient-fixed-point-positive", trial, seed_t, None,
                  max(recovery_fixed_point_residual(hard, a) for a in cfg.petz_grid),
                  CONVERSE_FLOOR, 0.0)
    return rec.report


def limit_suite(cfg: SuiteConfig) -> VerificationReport:
    """Certify alpha -> 1 limits and the product-formula convergence."""
    rec = _Recorder("limits", cfg)
    for trial in range(cfg.trials):
        seed_t = cfg.seed + trial
        rng = _trial_rng(cfg, trial)
        state = _random_state(cfg, rng)
        vn = von_neumann_cmi(state)
        for a in (1.0 - 1e-4, 1.0 + 1e-4):
            rec.upper("renyi-cmi-limit", trial, seed_t, a,
                      abs(renyi_cmi(state, a) - vn), cfg.limit_tol, 0.0)
            rec.upper("sandwiched-cmi-limit", trial, seed_t, a,
                      abs(sandwiched_cmi(state, a) - vn), cfg.limit_tol, 0.0)

        triple = _random_triple(cfg, rng)
        diff = rel_ent_diff(triple)
        for a in (1.0 - 1e-4, 1.0 + 1e-4):
            rec.upper("renyi-diff-limit", trial, seed_t, a,
                      abs(renyi_rel_ent_diff(triple, a) - diff), cfg.limit_tol, 0.0)

        for sign in (-1.0, 1.0):
            deviations = [
                lie_trotter_deviation(state, 1.0 + sign * 10.0**-k)
                for k in range(1, 5)
            ]
            margin = min(
                deviations[k] - deviations[k + 1] for k in range(len(deviations) - 1)
            )
            rec.lower("lie-trotter-monotone", trial, seed_t, 1.0 + sign * 0.1,
                      margin, 0.0, 1e-12)

        # commuting case: the product formula is exact at any order
        diag_state = TripartiteState(
            DensityOperator(np.diag(rng.dirichlet(np.ones(int(np.prod(cfg.dims))))),
                            cfg.dims)
        )
        for a in (0.5, 2.0):
            rec.upper("diagonal-lie-trotter-exact", trial, seed_t, a,
                      lie_trotter_deviation(diag_state, a), 1e-10, 0.0)

        pair_rho = random_density((cfg.channel_dims[0],), seed=rng)
        pair_sigma = random_density((cfg.channel_dims[0],), seed=rng)
        rec.upper("sandwiched-half-is-min", trial, seed_t, 0.5,
                  abs(sandwiched_rel_entropy(pair_rho, pair_sigma, 0.5)
                      - min_rel_entropy(pair_rho, pair_sigma)),
                  1e-9, 0.0)
    return rec.report


def inequality_suite(cfg: SuiteConfig) -> VerificationReport:
    """Certify data processing, concavity, the order relation between the two
    Renyi difference families, and non-negativity of all eight measures."""
    rec = _Recorder("inequalities", cfg)
    d_in, d_out = cfg.channel_dims
    for trial in range(cfg.trials):
        seed_t = cfg.seed + trial
        rng = _trial_rng(cfg, trial)
        rho = random_density((d_in,), seed=rng)
        sigma = PositiveOperator(random_density((d_in,), seed=rng).matrix)
        channel = random_strict_channel(d_in, d_out, seed=int(rng.integers(2**63)))
        out_rho, out_sigma = channel(rho.matrix), channel(sigma.matrix)
        for a in cfg.petz_grid:
            rec.lower("dpi-renyi", trial, seed_t, a,
                      renyi_rel_entropy(rho, sigma, a)
                      - renyi_rel_entropy(out_rho, out_sigma, a),
                      0.0, cfg.slack_floor)
        for a in cfg.sandwiched_grid:
            rec.lower("dpi-sandwiched", trial, seed_t, a,
                      sandwiched_rel_entropy(rho, sigma, a)
                      - sandwiched_rel_entropy(out_rho, out_sigma, a),
                      0.0, cfg.slack_floor)

        # concavity of B -> Tr{(A B^p A†)^(1/p)} on two-point mixtures
        dim = d_in
        a_mat = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        b_one = random_density((dim,), seed=rng).matrix
        b_two = random_density((dim,), seed=rng).matrix
        lam = float(rng.uniform(0.2, 0.8))
        mixed = lam * b_one + (1.0 - lam) * b_two
        for p in (0.3, 0.7, -0.3, -0.7):
            def functional(b):
                core = a_mat @ herm_pow(b, p) @ a_mat.conj().T
                return float(np.trace(herm_pow((core + core.conj().T) / 2, 1.0 / p)).real)

            gap = functional(mixed) - lam * functional(b_one) - (1.0 - lam) * functional(b_two)
            rec.lower("power-trace-concavity", trial, seed_t, p, gap, 0.0, cfg.slack_floor)

        triple = ChannelTriple(rho=rho, sigma=sigma, channel=channel)
        for a in (1.5, 2.0, 3.0):
            gamma = (2.0 * a - 1.0) / a
            rec.lower("sandwiched-dominates-substituted", trial, seed_t, a,
                      sandwiched_rel_ent_diff(triple, a)
                      - renyi_rel_ent_diff(triple, gamma),
                      0.0, cfg.slack_floor)

        state = _random_state(cfg, rng)
        for a in cfg.petz_grid:
            rec.lower("nonneg-renyi-cmi", trial, seed_t, a,
                      renyi_cmi(state, a), 0.0, cfg.slack_floor)
            rec.lower("nonneg-renyi-diff", trial, seed_t, a,
                      renyi_rel_ent_diff(triple, a), 0.0, cfg.slack_floor)
        for a in cfg.sandwiched_grid:
            rec.lower("nonneg-sandwiched-cmi", trial, seed_t, a,
                      sandwiched_cmi(state, a), 0.0, cfg.slack_floor)
            rec.lower("nonneg-sandwiched-diff", trial, seed_t, a,
                      sandwiched_rel_ent_diff(triple, a), 0.0, cfg.slack_floor)
        for kind in ("min", "max"):
            rec.lower(f"nonneg-{kind}-cmi", trial, seed_t, None,
                      minmax_cmi(state, kind), 0.0, cfg.slack_floor)
            rec.lower(f"nonneg-{kind}-diff", trial, seed_t, None,
                      minmax_rel_ent_diff(triple, kind), 0.0, cfg.slack_floor)
    return rec.report


_SUITES: dict[str, Callable[[SuiteConfig], VerificationReport]] = {
    "trace": trace_inequality_suite,
    "characterization": characterization_suite,
    "limits": limit_suite,
    "inequalities": inequality_suite,
}


def run_suite(name: str, cfg: SuiteConfig, **kwargs) -> VerificationReport:
    if name not in _SUITES:
        raise ValidationError("bad-spec", f"unknown suite {name!r}")
    return _SUITES[name](cfg, **kwargs)


def run_suites(names: Iterable[str], cfg: SuiteConfig, extra_state=None) -> list[VerificationReport]:
    reports = []
    for name in names:
        if name == "trace":
            reports.append(trace_inequality_suite(cfg, extra_state=extra_state))
        else:
            reports.append(run_suite(name, cfg))
    return reports
