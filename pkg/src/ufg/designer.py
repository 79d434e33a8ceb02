"""Simulated designer and the assist-on/assist-off experiment harness.

The simulated designer stands in for a human: it holds a target feature
vector and each round picks the two candidates whose noisy feature distance
to that target is lowest. Runs converge when the best candidate's true
distance drops to CONVERGENCE_EPSILON, or stop at the iteration cap. The
harness compares how many selection rounds the human had to sit through
with the intent agent on versus off.
"""

from __future__ import annotations

import csv
import random
import statistics
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import rng
from .evolution import GaParams, Generation
from .features import FeatureVector, extract_features, feature_distance
from .intent import AgentPolicy
from .model import GENOME_LENGTH, MapGenome, decode
from .session import STATUS_ACTIVE, Session, new_session, submit_selection

CONVERGENCE_EPSILON = 0.05
CSV_HEADER = ("seed", "assist", "human_rounds", "generations", "final_distance")


@dataclass
class DesignerProfile:
    """Stand-in human: prefers maps whose features sit near the target."""

    target: FeatureVector
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        self._rng = random.Random(self.seed)


def simulated_select(profile: DesignerProfile, gen: Generation) -> tuple[int, int]:
    """Two ids with the lowest noisy distance to the target; ties to lower id."""
    scored = []
    for cand in gen.candidates:
        noise = profile._rng.gauss(0.0, profile.noise_sigma) if profile.noise_sigma > 0 else 0.0
        scored.append((feature_distance(cand.features, profile.target) + noise, cand.id))
    scored.sort()
    return scored[0][1], scored[1][1]


@dataclass(frozen=True)
class RunResult:
    seed: int
    assist: bool
    human_rounds: int
    generations: int
    final_distance: float


def default_target(seed: int = 77) -> FeatureVector:
    """Features of an actual decoded map, so the target is reachable.

    The map is deliberately atypical for a random population (taller, denser
    blocks, sparser props): a same-distribution target is usually matched
    within a couple of rounds, which leaves the assist schedule nothing to
    save.
    """
    u = rng.KeyedRng(seed, 0, 0, 0).units(GENOME_LENGTH, 0)
    genes = u.copy()
    genes[0::4] = np.clip(u[0::4] * 0.6 + 0.15, 0.0, 1.0)
    genes[1::4] = 0.6
    genes[3::4] = 0.4
    return extract_features(decode(MapGenome(genes)))


def _best_distance(session: Session, target: FeatureVector) -> float:
    return min(feature_distance(c.features, target) for c in session.current.candidates)


def run_single(
    seed: int,
    assist: bool,
    max_iterations: int = 10,
    noise_sigma: float = 0.0,
    target: FeatureVector | None = None,
    epsilon: float = CONVERGENCE_EPSILON,
) -> RunResult:
    target = target or default_target()
    params = GaParams(seed=seed, max_iterations=max_iterations)
    policy = AgentPolicy() if assist else AgentPolicy(assist_ratio=0.0)
    session = new_session(params, policy)
    profile = DesignerProfile(target, noise_sigma, seed=seed)
    human_rounds = 0
    best = _best_distance(session, target)
    while session.status == STATUS_ACTIVE and best > epsilon:
        ids = simulated_select(profile, session.current)
        submit_selection(session, ids)
        human_rounds += 1
        best = _best_distance(session, target)
    return RunResult(seed, assist, human_rounds, session.current.index, best)


def run_experiment(
    n_seeds: int,
    max_iterations: int = 10,
    assist: str = "both",
    noise_sigma: float = 0.0,
    target: FeatureVector | None = None,
    base_seed: int = 0,
) -> list[RunResult]:
    if assist not in ("on", "off", "both"):
        raise ValueError("assist must be one of: on, off, both")
    if max_iterations not in (10, 20):
        raise ValueError("max_iterations must be 10 or 20")
    target = target or default_target()
    arms = {"on": (True,), "off": (False,), "both": (True, False)}[assist]
    results = []
    for seed in range(base_seed, base_seed + n_seeds):
        for arm in arms:
            results.append(run_single(seed, arm, max_iterations, noise_sigma, target))
    return results


def write_results_csv(results: list[RunResult], path: str | Path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        for row in results:
            writer.writerow(
                [row.seed, "on" if row.assist else "off", row.human_rounds, row.generations, f"{row.final_distance:.6f}"]
            )


def summarize(results: list[RunResult]) -> dict:
    """Per-arm medians of human rounds and final distance."""
    summary = {}
    for arm, name in ((True, "on"), (False, "off")):
        rows = [r for r in results if r.assist is arm]
        if rows:
            summary[name] = {
                "runs": len(rows),
                "median_human_rounds": statistics.median(r.human_rounds for r in rows),
                "median_final_distance": statistics.median(r.final_distance for r in rows),
                "converged": sum(r.final_distance <= CONVERGENCE_EPSILON for r in rows),
            }
    return summary
