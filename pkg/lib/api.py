"""Public API for algext."""

from __future__ import annotations

from typing import Any

from lib import documents
from lib.differentials import (
    degree_zero_differentials_embed,
    hh1_nontrivial,
    kaehler_module,
    universal_derivation,
)
from lib.documents import Instance
from lib.errors import ValidationFailure
from lib.galois import dual_basis, is_galois
from lib.gallery import build_fixture
from lib.harness import (
    HarnessReport,
    TrialRecord,
    TrialStatus,
    lane_params,
    run_harness,
    run_trial,
)
from lib.homology import (
    GModule,
    cohomology_table,
    free_resolution,
    graded_tor,
    group_cohomology,
    tensor_self_nonzero,
    tor,
    tor_table,
)
from lib.linalg import PresentedModule
from lib.models import InstanceDocument, ReportDocument
from lib.separable import (
    ConcentrationOutcome,
    concentrate_idempotent,
    degree_zero_regularity,
    degree_zero_separability,
    separability_idempotent,
)
from lib.settings import Settings, get_settings

__version__ = "0.1.0"


def _require_action(instance: Instance, command: str) -> None:
    if instance.action is None:
        raise ValidationFailure(f"{command} needs an instance with a group and an action")


class Workbench:
    """High-level entry point: one method per report.

    Every method returns a ``ReportDocument`` whose verdicts come with the
    evidence needed to recheck them.

    Example:
        >>> wb = Workbench()
        >>> wb.check_galois(wb.fixture("f4")).verdicts["galois"]
        True
    """

    def __init__(self, settings: Settings | None = None) -> None:
        """Initialize the workbench.

        Args:
            settings: Settings object (defaults to loading from environment)
        """
        self.settings = settings or get_settings()

    def _report(
        self,
        command: str,
        arguments: dict[str, Any] | None,
        verdicts: dict[str, Any],
        evidence: dict[str, Any],
    ) -> ReportDocument:
        return ReportDocument(
            tool_version=__version__,
            command=command,
            arguments=arguments or {},
            verdicts=verdicts,
            evidence=evidence,
        )

    def _cap(self, cap: int | None) -> int:
        return self.settings.resolution_cap if cap is None else cap

    def fixture(self, name: str) -> Instance:
        """Named gallery fixture as an instance."""
        fixture = build_fixture(name)
        return Instance(fixture.algebra, fixture.action)

    def fixture_document(self, name: str) -> InstanceDocument:
        instance = self.fixture(name)
        return documents.instance_document(instance.algebra, instance.action)

    def check_galois(
        self, instance: Instance, arguments: dict[str, Any] | None = None
    ) -> ReportDocument:
        """Decide the Galois property for the instance's action.

        Args:
            instance: Commutative algebra with a validated action
            arguments: Command echo for the report

        Returns:
            Report with the fixed-ring check, the h-map and its inverse
        """
        _require_action(instance, "check-galois")
        assert instance.action is not None
        certificate = is_galois(instance.algebra, instance.action)
        return self._report(
            "check-galois",
            arguments,
            {
                "galois": certificate.verdict,
                "fixed_ring": certificate.fixed_ring_ok,
                "h_invertible": certificate.h_iso_ok,
                "faithful": certificate.faithful,
            },
            documents.galois_evidence(certificate),
        )

    def dual_basis(
        self, instance: Instance, arguments: dict[str, Any] | None = None
    ) -> ReportDocument:
        """Dual basis and projectivity data of a Galois extension.

        Raises:
            NotGalois: the instance is not Galois
        """
        _require_action(instance, "dual-basis")
        assert instance.action is not None
        certificate = dual_basis(instance.algebra, instance.action)
        return self._report(
            "dual-basis",
            arguments,
            {
                "dual_basis": all(r.is_zero() for r in certificate.residuals),
                "projective": certificate.is_retract,
                "projective_rank": certificate.projective_rank,
            },
            documents.dual_basis_evidence(certificate),
        )

    def check_separable(
        self, instance: Instance, arguments: dict[str, Any] | None = None
    ) -> ReportDocument:
        algebra = instance.algebra
        certificate = separability_idempotent(algebra)
        regularity = degree_zero_regularity(algebra)
        return self._report(
            "check-separable",
            arguments,
            {
                "separable": certificate is not None,
                "degree_zero_regular": regularity.regular,
                "degree_zero_domain": regularity.domain,
                "graded": algebra.is_graded,
            },
            {
                "separability": documents.separability_evidence(certificate),
                "regularity": documents.regularity_evidence(regularity),
            },
        )

    def concentrate(
        self, instance: Instance, arguments: dict[str, Any] | None = None
    ) -> ReportDocument:
        """Run the degree-lowering loop on a separability idempotent.

        Raises:
            ValidationFailure: the algebra is not separable
        """
        algebra = instance.algebra
        certificate = separability_idempotent(algebra)
        if certificate is None:
            raise ValidationFailure("concentrate needs a separable algebra")
        result = concentrate_idempotent(algebra, certificate.idempotent)
        evidence: dict[str, Any] = {
            "start": documents.separability_evidence(certificate),
            "concentration": documents.concentration_evidence(result),
        }
        concentrated = result.outcome is ConcentrationOutcome.CONCENTRATED
        if concentrated:
            restricted = degree_zero_separability(algebra, result.idempotent)
            evidence["degree_zero"] = documents.separability_evidence(restricted)
        return self._report(
            "concentrate",
            arguments,
            {"outcome": result.outcome.value, "concentrated": concentrated},
            evidence,
        )

    def kaehler(
        self, instance: Instance, arguments: dict[str, Any] | None = None
    ) -> ReportDocument:
        algebra = instance.algebra
        module = kaehler_module(algebra)
        derivations = [
            documents.differential_payload(universal_derivation(algebra, b, module))
            for b in algebra.basis()
        ]
        return self._report(
            "kaehler",
            arguments,
            {
                "kaehler_zero": module.is_zero(),
                "invariants": str(module.module.fingerprint),
                "degree_zero_embeds": degree_zero_differentials_embed(algebra),
            },
            {**documents.kaehler_evidence(module), "derivations": derivations},
        )

    def hh1(self, instance: Instance, arguments: dict[str, Any] | None = None) -> ReportDocument:
        witness = hh1_nontrivial(instance.algebra)
        return self._report(
            "hh1",
            arguments,
            {
                "nontrivial": witness is not None,
                "degree": witness.degree if witness else None,
            },
            documents.hh1_evidence(witness),
        )

    def tor(
        self,
        m: PresentedModule,
        n: PresentedModule,
        p: int,
        cap: int | None = None,
        arguments: dict[str, Any] | None = None,
    ) -> ReportDocument:
        limit = self._cap(cap)
        result = tor(m, n, p, limit)
        return self._report(
            "tor",
            arguments,
            {"zero": result.fingerprint.is_zero, "invariants": str(result.fingerprint)},
            {
                "tor": documents.module_payload(result),
                "resolution": documents.resolution_payload(free_resolution(m, p + 1)),
                "table": documents.table_payload(tor_table(m, n, p, limit)),
            },
        )

    def graded_tor(
        self,
        b: PresentedModule,
        c: PresentedModule,
        p: int,
        q: int,
        cap: int | None = None,
        arguments: dict[str, Any] | None = None,
    ) -> ReportDocument:
        result = graded_tor(b, c, p, q, self._cap(cap))
        return self._report(
            "graded-tor",
            arguments,
            {"zero": result.total.fingerprint.is_zero, "invariants": str(result.total.fingerprint)},
            documents.graded_tor_evidence(result),
        )

    def tensor_self(
        self, m: PresentedModule, arguments: dict[str, Any] | None = None
    ) -> ReportDocument:
        result = tensor_self_nonzero(m)
        return self._report(
            "tensor-self",
            arguments,
            {"nonzero": result.nonzero, "invariants": str(result.fingerprint)},
            documents.tensor_self_evidence(result),
        )

    def group_cohomology(
        self,
        instance: Instance,
        s: int,
        cap: int | None = None,
        arguments: dict[str, Any] | None = None,
    ) -> ReportDocument:
        """``H^s(G, B)`` for the instance's action, with the table up to ``s``."""
        _require_action(instance, "group-cohomology")
        assert instance.action is not None
        module = GModule.from_action(instance.action)
        limit = self._cap(cap)
        result = group_cohomology(module, s, limit)
        return self._report(
            "group-cohomology",
            arguments,
            {"zero": result.fingerprint.is_zero, "invariants": str(result.fingerprint)},
            {
                "cohomology": documents.module_payload(result),
                "table": documents.table_payload(cohomology_table(module, s, limit)),
            },
        )

    def fuzz(
        self,
        harness: str,
        trials: int | None = None,
        seed: int | None = None,
        max_rank: int | None = None,
        degree_range: tuple[int, int] | None = None,
        jobs: int | None = None,
        arguments: dict[str, Any] | None = None,
    ) -> tuple[ReportDocument, HarnessReport]:
        """Run a harness; settings supply the defaults left unset."""
        params = lane_params(harness, max_rank or self.settings.max_rank, degree_range)
        report = run_harness(
            harness,
            trials=trials if trials is not None else self.settings.fuzz_trials,
            seed=self.settings.fuzz_seed if seed is None else seed,
            params=params,
            jobs=jobs or self.settings.jobs,
        )
        return self._harness_report(report, arguments), report

    def replay(
        self,
        harness: str,
        trial_seed: int,
        max_rank: int | None = None,
        degree_range: tuple[int, int] | None = None,
        arguments: dict[str, Any] | None = None,
    ) -> ReportDocument:
        """Re-run the single trial drawn at ``trial_seed``."""
        params = lane_params(harness, max_rank or self.settings.max_rank, degree_range)
        record = run_trial(harness, params.lane(seed=trial_seed))
        return self._report(
            "fuzz",
            arguments,
            {"status": record.status.value},
            {"trial": _trial_payload(record)},
        )

    def _harness_report(
        self, report: HarnessReport, arguments: dict[str, Any] | None
    ) -> ReportDocument:
        verdicts: dict[str, Any] = {
            "passed": report.passed,
            "counterexamples": len(report.counterexamples),
            "holds": report.count(TrialStatus.HOLDS),
            "vacuous": report.count(TrialStatus.VACUOUS),
            "exhausted": report.count(TrialStatus.EXHAUSTED),
        }
        evidence: dict[str, Any] = {
            "harness": report.harness,
            "description": report.description,
            "params": report.params.model_dump(mode="json"),
            "trials": [_trial_payload(t) for t in report.trials],
            "rejections": report.rejections(),
        }
        if report.sensitivity is not None:
            verdicts["sensitivity"] = report.sensitive
            evidence["sensitivity"] = report.sensitivity
        return self._report("fuzz", arguments, verdicts, evidence)


def _trial_payload(record: TrialRecord) -> dict[str, Any]:
    return {
        "trial": record.trial,
        "seed": str(record.seed),
        "status": record.status.value,
        "family": record.family,
        "base": record.base,
        "degrees": list(record.degrees),
        "detail": record.detail,
    }

