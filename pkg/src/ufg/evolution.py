"""Interactive evolutionary engine: 9 candidates a round, 2 chosen, 7 bred.

The selecting entity (designer or agent) lives outside this module; the
engine only knows that each round hands it the two elite ids. Elites are
copied verbatim, the remaining seven slots are refilled by blend crossover
of the elite pair plus Gaussian mutation. All randomness is counter-keyed
by (seed, generation, candidate, attempt, gene), so results are identical
no matter the order in which offspring are produced or retried.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rng
from .evaluation import passes_gate
from .features import FeatureVector, extract_features
from .model import GENOME_LENGTH, EncodingError, MapGenome, MapLayout, decode

POPULATION_SIZE = 9
ELITE_COUNT = 2
GATE_RETRIES = 20

_STREAM_INIT = 0
_STREAM_CROSS = 1
_STREAM_MUTATE_FIRE = 2
_STREAM_MUTATE_NOISE = 3


class SelectionError(ValueError):
    """Raised for selections that are not two distinct in-range candidate ids."""


@dataclass(frozen=True)
class GaParams:
    seed: int = 0
    blx_alpha: float = 0.5
    mutation_rate: float = 0.05
    mutation_sigma: float = 0.1
    max_iterations: int = 10

    def __post_init__(self):
        if self.blx_alpha < 0:
            raise ValueError("blx_alpha must be >= 0")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must lie in [0, 1]")
        if self.mutation_sigma < 0:
            raise ValueError("mutation_sigma must be >= 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "blx_alpha": self.blx_alpha,
            "mutation_rate": self.mutation_rate,
            "mutation_sigma": self.mutation_sigma,
            "max_iterations": self.max_iterations,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "GaParams":
        return cls(**doc)


@dataclass(frozen=True)
class Candidate:
    id: int
    genome: MapGenome
    layout: MapLayout
    features: FeatureVector
    gate_warning: bool = False


@dataclass(frozen=True)
class Generation:
    index: int
    candidates: tuple[Candidate, ...]
    parent_ids: tuple[int, int] | None = None


def _materialize(cand_id: int, genome: MapGenome, gate_warning: bool = False) -> Candidate:
    layout = decode(genome)
    return Candidate(cand_id, genome, layout, extract_features(layout), gate_warning)


def init_population(params: GaParams) -> Generation:
    """Generation 0: nine genomes of uniform [0, 1) genes keyed off the seed."""
    candidates = []
    for cand_id in range(POPULATION_SIZE):
        keyed = rng.KeyedRng(params.seed, 0, cand_id, 0)
        genome = MapGenome(keyed.units(GENOME_LENGTH, _STREAM_INIT))
        candidates.append(_materialize(cand_id, genome))
    return Generation(index=0, candidates=tuple(candidates), parent_ids=None)


def blend_crossover(a: MapGenome, b: MapGenome, alpha: float, keyed: rng.KeyedRng) -> MapGenome:
    """BLX-alpha: each child gene is uniform on the parent interval widened by
    alpha times its length, clamped back into [0, 1]."""
    if a.genes.shape != b.genes.shape:
        raise EncodingError("parent genomes differ in length")
    lo = np.minimum(a.genes, b.genes)
    hi = np.maximum(a.genes, b.genes)
    spread = (hi - lo) * alpha
    u = keyed.units(GENOME_LENGTH, _STREAM_CROSS)
    child = (lo - spread) + u * ((hi + spread) - (lo - spread))
    return MapGenome(np.clip(child, 0.0, 1.0))


def gaussian_mutate(genome: MapGenome, rate: float, sigma: float, keyed: rng.KeyedRng) -> MapGenome:
    """Independently perturb each gene with probability rate by N(0, sigma^2)."""
    fired = keyed.units(GENOME_LENGTH, _STREAM_MUTATE_FIRE) < rate
    if not fired.any():
        return genome
    noise = keyed.normals(GENOME_LENGTH, _STREAM_MUTATE_NOISE) * sigma
    mutated = np.clip(genome.genes + noise, 0.0, 1.0)
    return MapGenome(np.where(fired, mutated, genome.genes))


def next_generation(gen: Generation, selected_ids: tuple[int, int], params: GaParams) -> Generation:
    """Elitism plus seven gated offspring of the selected pair."""
    a, b = selected_ids
    if a == b or not (0 <= a < POPULATION_SIZE and 0 <= b < POPULATION_SIZE):
        raise SelectionError(f"selection must be two distinct ids in 0..8, got {selected_ids}")
    elites = (gen.candidates[a], gen.candidates[b])
    new_index = gen.index + 1
    candidates = [
        Candidate(slot, elite.genome, elite.layout, elite.features)
        for slot, elite in enumerate(elites)
    ]
    for cand_id in range(ELITE_COUNT, POPULATION_SIZE):
        candidates.append(_breed_offspring(elites[0].genome, elites[1].genome, new_index, cand_id, params))
    return Generation(index=new_index, candidates=tuple(candidates), parent_ids=(a, b))


def _breed_offspring(
    ga: MapGenome, gb: MapGenome, gen_index: int, cand_id: int, params: GaParams
) -> Candidate:
    last = None
    for attempt in range(GATE_RETRIES):
        keyed = rng.KeyedRng(params.seed, gen_index, cand_id, attempt)
        child = blend_crossover(ga, gb, params.blx_alpha, keyed)
        child = gaussian_mutate(child, params.mutation_rate, params.mutation_sigma, keyed)
        layout = decode(child)
        if passes_gate(layout):
            return Candidate(cand_id, child, layout, extract_features(layout))
        last = (child, layout)
    child, layout = last
    return Candidate(cand_id, child, layout, extract_features(layout), gate_warning=True)
