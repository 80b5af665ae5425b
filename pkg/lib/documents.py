"""Instance and module documents, plus the evidence payloads of reports.

Scalars are written as decimal strings. Everything parsed here goes through
the same validators as programmatic construction.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from lib.differentials import DifferentialClass, KaehlerModule, NontrivialityWitness
from lib.errors import ParseError
from lib.galois import DegreeBound, DualBasisCertificate, GaloisCertificate
from lib.graded import AlgebraElement, GradedAlgebra, validate_algebra
from lib.groups import GroupAction, validate_action, validate_group
from lib.homology import GradedTorResult, Resolution, TableRow, TensorSelfResult
from lib.linalg import BaseRing, ExactMatrix, ModuleFingerprint, PresentedModule
from lib.models import (
    ActionPayload,
    AlgebraPayload,
    GroupPayload,
    InstanceDocument,
    ModuleDocument,
)
from lib.separable import (
    ConcentrationResult,
    RegularityReport,
    SeparabilityCertificate,
    ZeroDivisorWitness,
)


@dataclass(frozen=True)
class Instance:
    """A validated algebra with its optional action."""

    algebra: GradedAlgebra
    action: GroupAction | None = None


def _integers(values: Iterable[str], where: str) -> list[int]:
    try:
        return [int(v) for v in values]
    except ValueError as e:
        raise ParseError(f"{where}: scalars must be decimal strings ({e})") from e


def _strings(values: Iterable[int]) -> list[str]:
    return [str(v) for v in values]


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e


# Instances


def parse_instance(text: str) -> InstanceDocument:
    """Raises ParseError on malformed JSON or a schema mismatch."""
    try:
        return InstanceDocument.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"invalid instance document: {e}") from e


def instance_from_document(document: InstanceDocument, allow_unfaithful: bool = False) -> Instance:
    base = BaseRing.parse(document.base)
    payload = document.algebra
    constants = [
        (i, j, k, c)
        for (i, j, k, _), c in zip(
            payload.constants,
            _integers((entry[3] for entry in payload.constants), "constants"),
            strict=True,
        )
    ]
    algebra = validate_algebra(
        base,
        payload.names,
        payload.degrees,
        _integers(payload.unit, "unit"),
        constants,
        commutative=payload.commutative,
    )
    if document.group is None or document.action is None:
        return Instance(algebra)
    group = validate_group(document.group.table)
    matrices = [
        ExactMatrix.from_rows(
            base, [_integers(row, "action") for row in matrix], len(matrix[0]) if matrix else 0
        )
        for matrix in document.action.matrices
    ]
    return Instance(algebra, validate_action(group, algebra, matrices, allow_unfaithful))


def load_instance(path: Path, allow_unfaithful: bool = False) -> Instance:
    return instance_from_document(parse_instance(_read(path)), allow_unfaithful)


def instance_document(
    algebra: GradedAlgebra, action: GroupAction | None = None
) -> InstanceDocument:
    """Canonical document: constants sorted by ``(i, j, k)``."""
    group = action_payload = None
    if action is not None:
        group = GroupPayload(table=[list(row) for row in action.group.table])
        action_payload = ActionPayload(matrices=[matrix_payload(m) for m in action.matrices])
    return InstanceDocument(
        base=str(algebra.base),
        algebra=AlgebraPayload(
            names=list(algebra.names),
            degrees=list(algebra.degrees),
            unit=_strings(algebra.unit),
            constants=[(i, j, k, str(c)) for i, j, k, c in algebra.structure_constants()],
            commutative=algebra.commutative,
        ),
        group=group,
        action=action_payload,
    )


def dump_document(document: InstanceDocument | ModuleDocument) -> str:
    return document.model_dump_json(indent=2, exclude_none=True) + "\n"


# Modules


def parse_module(text: str) -> ModuleDocument:
    """Raises ParseError on malformed JSON or a schema mismatch."""
    try:
        return ModuleDocument.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"invalid module document: {e}") from e


def module_from_document(document: ModuleDocument) -> PresentedModule:
    base = BaseRing.parse(document.base)
    count = len(document.degrees)
    columns = [_integers(column, "relations") for column in document.relations]
    if any(len(column) != count for column in columns):
        raise ParseError(f"every relation column needs {count} entries")
    return PresentedModule(
        base, tuple(document.degrees), ExactMatrix.from_columns(base, columns, count)
    )


def load_module(path: Path) -> PresentedModule:
    return module_from_document(parse_module(_read(path)))


def module_document(module: PresentedModule) -> ModuleDocument:
    return ModuleDocument(
        base=str(module.base),
        degrees=list(module.degrees),
        relations=[_strings(c) for c in module.relations.columns()],
    )


# Evidence payloads


def matrix_payload(m: ExactMatrix) -> list[list[str]]:
    return [_strings(row) for row in m.entries]


def element_payload(e: AlgebraElement) -> dict[str, Any]:
    return {"text": str(e), "coords": _strings(e.coords)}


def elements_payload(elements: Sequence[AlgebraElement]) -> list[dict[str, Any]]:
    return [element_payload(e) for e in elements]


def fingerprint_payload(fingerprint: ModuleFingerprint) -> dict[str, Any]:
    return {
        "text": str(fingerprint),
        "free_rank": fingerprint.free_rank,
        "torsion": _strings(fingerprint.torsion),
    }


def module_payload(module: PresentedModule) -> dict[str, Any]:
    """Presentation plus invariant factors, per degree and in total."""
    return {
        "degrees": list(module.degrees),
        "relations": [_strings(c) for c in module.relations.columns()],
        "fingerprint": fingerprint_payload(module.fingerprint),
        "pieces": {
            str(d): fingerprint_payload(f) for d, f in module.graded_fingerprint().items()
        },
    }


def table_payload(rows: Sequence[TableRow]) -> list[dict[str, Any]]:
    return [
        {
            "index": row.index,
            "degree": row.degree,
            "invariants": fingerprint_payload(row.fingerprint),
        }
        for row in rows
    ]


def _ranks(ranks: dict[int, int]) -> dict[str, int]:
    return {str(d): r for d, r in ranks.items()}


def degree_bound_payload(bound: DegreeBound) -> dict[str, Any]:
    return {
        "tensor_ranks": _ranks(bound.tensor_ranks),
        "product_ranks": _ranks(bound.product_ranks),
        "matches": bound.matches,
    }


def galois_evidence(certificate: GaloisCertificate) -> dict[str, Any]:
    return {
        "fixed_generators": elements_payload(certificate.fixed_generators),
        "fixed_ring_ok": certificate.fixed_ring_ok,
        "h": matrix_payload(certificate.h),
        "h_inverse": (
            matrix_payload(certificate.h_inverse) if certificate.h_inverse is not None else None
        ),
        "h_iso_ok": certificate.h_iso_ok,
        "faithful": certificate.faithful,
        "degree_bound": degree_bound_payload(certificate.degree_bound),
    }


def dual_basis_evidence(certificate: DualBasisCertificate) -> dict[str, Any]:
    return {
        "pairs": [
            {"x": element_payload(x), "y": element_payload(y)} for x, y in certificate.pairs
        ],
        "h_preimage": element_payload(certificate.preimage),
        "coefficients": [_strings(row) for row in certificate.coefficients],
        "residuals": elements_payload(certificate.residuals),
        "projective_rank": certificate.projective_rank,
        "retraction": matrix_payload(certificate.retraction),
        "section": matrix_payload(certificate.section),
        "is_retract": certificate.is_retract,
    }


def witness_payload(witness: ZeroDivisorWitness | None) -> dict[str, Any] | None:
    if witness is None:
        return None
    return {
        "left": element_payload(witness.left),
        "right": element_payload(witness.right),
        "product_is_zero": witness.holds(),
    }


def separability_evidence(certificate: SeparabilityCertificate | None) -> dict[str, Any]:
    if certificate is None:
        return {"idempotent": None}
    return {
        "idempotent": element_payload(certificate.idempotent),
        "mu_check": certificate.mu_check,
        "centrality_check": certificate.centrality_check,
        "idempotence_check": certificate.idempotence_check,
    }


def regularity_evidence(report: RegularityReport) -> dict[str, Any]:
    return {
        "domain": report.domain,
        "regular": report.regular,
        "exhaustive": report.exhaustive,
        "witness": witness_payload(report.witness),
    }


def concentration_evidence(result: ConcentrationResult) -> dict[str, Any]:
    return {
        "outcome": result.outcome.value,
        "idempotent": element_payload(result.idempotent),
        "removed_degrees": list(result.removed),
        "steps": result.steps,
        "witness": witness_payload(result.witness),
    }


def differential_payload(item: DifferentialClass) -> dict[str, Any]:
    return {
        "label": item.label,
        "tensor": element_payload(item.tensor),
        "coefficients": _strings(item.coefficients),
        "is_zero": item.is_zero,
    }


def kaehler_evidence(module: KaehlerModule) -> dict[str, Any]:
    return {
        "ideal_generators": elements_payload(module.ideal.elements()),
        "ideal_degrees": list(module.ideal.degrees),
        "square_span": matrix_payload(module.squares),
        "square_degrees": list(module.square_degrees),
        "module": module_payload(module.module),
    }


def hh1_evidence(witness: NontrivialityWitness | None) -> dict[str, Any]:
    if witness is None:
        return {"witness": None}
    return {"witness": differential_payload(witness.element), "degree": witness.degree}


def resolution_payload(resolution: Resolution) -> dict[str, Any]:
    return {
        "ranks": list(resolution.ranks),
        "differentials": [matrix_payload(d) for d in resolution.differentials],
        "complete": resolution.complete,
    }


def graded_tor_evidence(result: GradedTorResult) -> dict[str, Any]:
    return {
        "p": result.p,
        "q": result.q,
        "pieces": [
            {"i": i, "j": j, "tor": module_payload(piece)}
            for (i, j), piece in sorted(result.pieces.items())
        ],
        "total": module_payload(result.total),
    }


def tensor_self_evidence(result: TensorSelfResult) -> dict[str, Any]:
    return {"product": module_payload(result.product)}
