"""Randomized and exhaustive search for singular max-ratio matrices.

The max-ratio matrix of positive, pairwise non-proportional vectors is
known to be invertible in dimension 2 and conjectured to be invertible in
every dimension. This module samples instances reproducibly and reports
any zero determinant together with an independent recomputation.

Per-trial randomness: the master seed and the trial index are mixed by
splitmix64 (``seed + (trial + 1) * 0x9E3779B97F4A7C15`` followed by the
standard finalizer), and the result seeds :class:`random.Random`. From it
``k`` is drawn with ``randint(k_min, k_max)`` and then each entry with
``randint(1, B)``, vector by vector, coordinate by coordinate.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .errors import InputError, InvariantViolation
from .exact import bareiss_det, cofactor_det, determinant
from .toric import linking_matrix

MASK64 = (1 << 64) - 1
RETRY_CAP = 1000


def splitmix64(seed: int, index: int) -> int:
    z = (seed + (index + 1) * 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 3
    k_min: int = 1
    k_max: int = 5
    bound: int = 9
    trials: int = 10_000
    seed: int = 42

    def __post_init__(self):
        if self.n < 2:
            raise InputError("n must be at least 2")
        if not 1 <= self.k_min <= self.k_max:
            raise InputError("need 1 <= k_min <= k_max")
        if self.bound < 1 or self.trials < 1:
            raise InputError("bound and trials must be positive")
        object.__setattr__(self, "seed", int(self.seed) & MASK64)

    def to_json(self) -> dict:
        return {"n": self.n, "k_min": self.k_min, "k_max": self.k_max,
                "bound": self.bound, "trials": self.trials, "seed": self.seed}


def _primitive(v: tuple) -> tuple:
    g = 0
    for a in v:
        g = gcd(g, a)
    return tuple(a // g for a in v)


def sample_weight_tuples(cfg: ExperimentConfig, trial: int) -> list[tuple[int, ...]]:
    """The ``trial``-th instance: ``k`` primitive, positive, pairwise non-proportional vectors."""
    rng = random.Random(splitmix64(cfg.seed, trial))
    k = rng.randint(cfg.k_min, cfg.k_max)
    out: list[tuple[int, ...]] = []
    while len(out) < k:
        for _ in range(RETRY_CAP):
            v = _primitive(tuple(rng.randint(1, cfg.bound) for _ in range(cfg.n)))
            if v not in out:
                out.append(v)
                break
        else:
            raise InputError(f"could not draw {k} non-proportional vectors with entries <= {cfg.bound}")
    return out


def _check_hypotheses(vs):
    for v in vs:
        if not all(a > 0 for a in v):
            raise InvariantViolation(f"sampled vector {v} is not positive")
    if len(set(map(_primitive, vs))) != len(vs):
        raise InvariantViolation(f"sampled vectors {vs} are not pairwise non-proportional")


def linking_determinant(vs) -> Fraction:
    return determinant(linking_matrix(vs))


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    trials: int = 0
    counterexamples: list = field(default_factory=list)  # [{"trial", "vectors", "det_recheck"}]
    min_abs_det: Optional[Fraction] = None
    min_instance: Optional[dict] = None
    per_k: dict = field(default_factory=dict)
    runtime: float = 0.0

    def to_json(self, include_runtime: bool = False) -> dict:
        d = {
            "config": self.config.to_json(),
            "trials": self.trials,
            "counterexamples": self.counterexamples,
            "min_abs_det": None if self.min_abs_det is None else str(self.min_abs_det),
            "min_instance": self.min_instance,
            "per_k": {str(k): self.per_k[k] for k in sorted(self.per_k)},
        }
        if include_runtime:
            d["runtime_seconds"] = round(self.runtime, 3)
        return d


def linking_determinant_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Exact determinants of ``cfg.trials`` sampled max-ratio matrices.

    A zero determinant is recomputed by cofactor expansion before it is
    reported; if the two routines disagree, :class:`InvariantViolation` is
    raised. The minimum ``|det|`` keeps the lowest trial index on ties.
    """
    start = time.perf_counter()
    rep = ExperimentReport(cfg)
    for t in range(cfg.trials):
        vs = sample_weight_tuples(cfg, t)
        _check_hypotheses(vs)
        L = linking_matrix(vs)
        det = determinant(L)
        k = len(vs)
        rep.per_k[k] = rep.per_k.get(k, 0) + 1
        if det == 0:
            check = cofactor_det(L)
            if check != 0:
                raise InvariantViolation(f"determinant routines disagree on trial {t}: 0 vs {check}")
            rep.counterexamples.append({"trial": t, "vectors": [list(v) for v in vs],
                                        "det_recheck": str(check)})
        if rep.min_abs_det is None or abs(det) < rep.min_abs_det:
            rep.min_abs_det = abs(det)
            rep.min_instance = {"trial": t, "vectors": [list(v) for v in vs], "det": str(det)}
        rep.trials += 1
    rep.runtime = time.perf_counter() - start
    return rep


def primitive_positive_vectors(bound: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(1, bound + 1) for b in range(1, bound + 1) if gcd(a, b) == 1]


def _scaled_linking_rows(vs) -> list[list[int]]:
    # row i multiplied by v_i1 * v_i2 to clear the ratios
    return [[max(vj[0] * vi[1], vj[1] * vi[0]) for vj in vs] for vi in vs]


def exhaustive_n2_check(bound: int, k_max: int, return_counterexample: bool = False):
    """Every set of at most ``k_max`` primitive positive planar vectors with entries
    at most ``bound`` has an invertible max-ratio matrix."""
    if bound < 1 or k_max < 1:
        raise InputError("bound and k_max must be positive")
    vecs = primitive_positive_vectors(bound)
    for k in range(1, k_max + 1):
        for vs in itertools.combinations(vecs, k):
            if bareiss_det(_scaled_linking_rows(vs)) == 0:
                return (False, list(vs)) if return_counterexample else False
    return (True, None) if return_counterexample else True
