"""Property harnesses run over seeded generated instances.

A harness draws one 64-bit seed per trial from a master ``random.Random``,
generates an instance from its lane, and checks one implication. Trials
whose hypothesis fails are vacuous; trials whose conclusion fails are
counterexamples and would mean the implementation is wrong.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from pydantic import ValidationError

from lib.config import HARNESS_ALIASES, HARNESS_MAP
from lib.differentials import degree_zero_differentials_embed, hh1_nontrivial, kaehler_module
from lib.errors import GenerationExhausted, UnknownName, ValidationFailure
from lib.gallery import suggest_name
from lib.galois import dual_basis, is_galois
from lib.generators import GeneratedInstance, planted_galois, random_graded_algebra, random_module
from lib.homology import tensor_self_nonzero
from lib.models import GeneratorParams
from lib.separable import concentrate_idempotent, degree_zero_regularity, separability_idempotent

logger = logging.getLogger(__name__)


class TrialStatus(str, Enum):
    HOLDS = "holds"
    VACUOUS = "vacuous"
    COUNTEREXAMPLE = "counterexample"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class TrialRecord:
    """Outcome of one trial; ``seed`` replays it."""

    trial: int
    seed: int
    status: TrialStatus
    family: str = ""
    base: str = ""
    degrees: tuple[int, ...] = ()
    detail: dict[str, Any] = field(default_factory=dict)
    rejections: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class HarnessReport:
    harness: str
    description: str
    seed: int
    params: GeneratorParams
    trials: tuple[TrialRecord, ...]
    sensitivity: dict[str, Any] | None = None

    def count(self, status: TrialStatus) -> int:
        return sum(1 for t in self.trials if t.status is status)

    @property
    def counterexamples(self) -> list[TrialRecord]:
        return [t for t in self.trials if t.status is TrialStatus.COUNTEREXAMPLE]

    @property
    def sensitive(self) -> bool:
        """The planted positive instance, when there is one, was recognised."""
        return self.sensitivity is None or bool(self.sensitivity["verdict"])

    @property
    def passed(self) -> bool:
        return not self.counterexamples and self.sensitive

    def rejections(self) -> dict[str, int]:
        total: Counter[str] = Counter()
        for t in self.trials:
            total.update(t.rejections)
        return dict(sorted(total.items()))


Outcome = tuple[TrialStatus, dict[str, Any]]


def _galois_grading(instance: GeneratedInstance) -> Outcome:
    algebra, action = instance.algebra, instance.action
    assert action is not None
    certificate = is_galois(algebra, action)
    detail: dict[str, Any] = {
        "galois": certificate.verdict,
        "graded": algebra.is_graded,
        "degree_bound_matches": certificate.degree_bound.matches,
    }
    if not certificate.verdict:
        return TrialStatus.VACUOUS, detail
    dual_basis(algebra, action, certificate)
    detail["kaehler_zero"] = kaehler_module(algebra).is_zero()
    if algebra.is_graded or not detail["kaehler_zero"]:
        return TrialStatus.COUNTEREXAMPLE, detail
    return TrialStatus.HOLDS, detail


def _separable(instance: GeneratedInstance, needs_regular: bool) -> Outcome:
    algebra = instance.algebra
    certificate = separability_idempotent(algebra)
    detail: dict[str, Any] = {"separable": certificate is not None, "graded": algebra.is_graded}
    if certificate is None:
        return TrialStatus.VACUOUS, detail
    if needs_regular:
        detail["regular"] = degree_zero_regularity(algebra).regular
        if not detail["regular"]:
            return TrialStatus.VACUOUS, detail
    outcome = concentrate_idempotent(algebra, certificate.idempotent).outcome
    detail["concentration"] = outcome.value
    if algebra.is_graded:
        return TrialStatus.COUNTEREXAMPLE, detail
    return TrialStatus.HOLDS, detail


def _separable_grading(instance: GeneratedInstance) -> Outcome:
    return _separable(instance, needs_regular=True)


def _separable_connective(instance: GeneratedInstance) -> Outcome:
    return _separable(instance, needs_regular=False)


def _kaehler(instance: GeneratedInstance, sign: int, embed: bool = False) -> Outcome:
    algebra = instance.algebra
    if not any(d * sign > 0 for d in algebra.degrees):
        return TrialStatus.VACUOUS, {"witness_degree": None}
    witness = hh1_nontrivial(algebra)
    detail: dict[str, Any] = {"witness_degree": witness.degree if witness else None}
    if embed:
        detail["degree_zero_embeds"] = degree_zero_differentials_embed(algebra)
    if witness is None:
        return TrialStatus.COUNTEREXAMPLE, detail
    return TrialStatus.HOLDS, detail


def _kaehler_connective(instance: GeneratedInstance) -> Outcome:
    return _kaehler(instance, 1)


def _kaehler_bounded_below(instance: GeneratedInstance) -> Outcome:
    return _kaehler(instance, -1)


def _kaehler_degree_zero(instance: GeneratedInstance) -> Outcome:
    return _kaehler(instance, 1, embed=True)


_CHECKS: dict[str, Callable[[GeneratedInstance], Outcome]] = {
    "galois-grading": _galois_grading,
    "separable-grading": _separable_grading,
    "separable-connective": _separable_connective,
    "kaehler-connective": _kaehler_connective,
    "kaehler-bounded-below": _kaehler_bounded_below,
    "kaehler-degree-zero": _kaehler_degree_zero,
}


def check_instance(name: str, instance: GeneratedInstance) -> Outcome:
    """Apply the implication of algebra harness ``name`` to ``instance``.

    Raises:
        UnknownName: ``name`` is not a registered harness
        ValidationFailure: ``name`` checks modules, not algebras
    """
    name = resolve_harness(name)
    if name not in _CHECKS:
        raise ValidationFailure(f"harness {name} does not check algebras")
    return _CHECKS[name](instance)


def harness_names() -> list[str]:
    return sorted(HARNESS_MAP)


def harness_aliases(name: str) -> list[str]:
    return list(HARNESS_MAP[name].get("aliases", []))


def resolve_harness(name: str) -> str:
    """Registered harness name for ``name`` or one of its aliases.

    Raises:
        UnknownName: neither a harness nor an alias
    """
    if name in HARNESS_MAP:
        return name
    if name in HARNESS_ALIASES:
        return HARNESS_ALIASES[name]
    raise UnknownName("harness", name, suggest_name(name, harness_names()))


def _entry(name: str) -> dict[str, Any]:
    return HARNESS_MAP[resolve_harness(name)]


def lane_params(
    name: str,
    max_rank: int | None = None,
    degree_range: tuple[int, int] | None = None,
) -> GeneratorParams:
    """Generator params of a harness lane, with command-line overrides."""
    overrides: dict[str, Any] = {}
    if max_rank is not None:
        overrides["max_rank"] = max_rank
    if degree_range is not None:
        overrides["degree_range"] = degree_range
    try:
        return GeneratorParams.model_validate({**_entry(name)["params"], **overrides})
    except ValidationError as e:
        raise ValidationFailure(f"invalid generator params for {name}: {e}") from e


def run_trial(name: str, params: GeneratorParams, trial: int = 0) -> TrialRecord:
    """One trial of harness ``name`` at ``params.seed``."""
    name = resolve_harness(name)
    logger.debug("%s trial %d seed %d", name, trial, params.seed)
    try:
        if name == "tensor-square":
            module = random_module(params)
            result = tensor_self_nonzero(module)
            status = TrialStatus.HOLDS if result.nonzero else TrialStatus.COUNTEREXAMPLE
            return TrialRecord(
                trial,
                params.seed,
                status,
                family="module",
                base=str(module.base),
                degrees=module.degrees,
                detail={"module": str(module.fingerprint), "square": str(result.fingerprint)},
            )
        instance = random_graded_algebra(params)
    except GenerationExhausted as e:
        logger.debug("%s trial %d: %s", name, trial, e)
        return TrialRecord(trial, params.seed, TrialStatus.EXHAUSTED, detail={"reason": str(e)})
    status, detail = check_instance(name, instance)
    if status is TrialStatus.COUNTEREXAMPLE:
        logger.warning("%s: counterexample at seed %d", name, params.seed)
    return TrialRecord(
        trial,
        params.seed,
        status,
        family=instance.family,
        base=str(instance.algebra.base),
        degrees=instance.algebra.degrees,
        detail=detail,
        rejections=dict(instance.stats.rejections),
    )


def _run_indexed(job: tuple[str, GeneratorParams, int]) -> TrialRecord:
    return run_trial(*job)


def _sensitivity(params: GeneratorParams) -> dict[str, Any]:
    planted = planted_galois(params)
    assert planted.action is not None
    certificate = is_galois(planted.algebra, planted.action)
    return {
        "seed": params.seed,
        "base": str(planted.algebra.base),
        "rank": planted.algebra.rank,
        "verdict": certificate.verdict,
    }


def run_harness(
    name: str,
    trials: int | None = None,
    seed: int = 0,
    params: GeneratorParams | None = None,
    jobs: int = 1,
) -> HarnessReport:
    """Run ``trials`` seeded trials; the same arguments give the same report.

    Raises:
        UnknownName: ``name`` is not a registered harness
    """
    name = resolve_harness(name)
    entry = HARNESS_MAP[name]
    params = params or lane_params(name)
    count = entry["trials"] if trials is None else trials
    master = random.Random(seed)
    jobs_list = [
        (name, params.lane(seed=master.getrandbits(64)), trial) for trial in range(count)
    ]
    if jobs > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = tuple(pool.map(_run_indexed, jobs_list, chunksize=8))
    else:
        records = tuple(_run_indexed(job) for job in jobs_list)
    sensitivity = None
    if name == "galois-grading" and jobs_list:
        sensitivity = _sensitivity(jobs_list[0][1])
    report = HarnessReport(name, entry["description"], seed, params, records, sensitivity)
    logger.info(
        "%s: %d trials, %d holding, %d vacuous, %d counterexamples",
        name,
        count,
        report.count(TrialStatus.HOLDS),
        report.count(TrialStatus.VACUOUS),
        len(report.counterexamples),
    )
    return report
