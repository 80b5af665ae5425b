"""Tests for document models and their conversion to algebras and modules."""

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from lib.documents import (
    dump_document,
    instance_document,
    instance_from_document,
    load_instance,
    load_module,
    module_document,
    module_from_document,
    parse_instance,
    parse_module,
)
from lib.errors import ActionViolation, AxiomViolation, ParseError
from lib.gallery import make_finite_field_ext, make_truncated_poly
from lib.linalg import BaseRing, PresentedModule
from lib.models import GeneratorParams, InstanceDocument, ModuleDocument, ReportDocument

F2 = BaseRing.prime_field(2)


@pytest.fixture
def dual_numbers_text() -> str:
    """Instance document for F_2[x]/(x^2)."""
    return json.dumps(
        {
            "format": "algext.instance",
            "version": 1,
            "base": "F2",
            "algebra": {
                "names": ["1", "x"],
                "degrees": [0, 1],
                "unit": ["1", "0"],
                "constants": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]],
                "commutative": True,
            },
        }
    )


class TestInstanceDocument:
    """Tests for InstanceDocument."""

    def test_minimal(self) -> None:
        """Test defaults of a document without an action."""
        document = InstanceDocument(
            base="Z",
            algebra={"names": ["1"], "degrees": [0], "unit": ["1"]},  # type: ignore[arg-type]
        )
        assert document.format == "algext.instance"
        assert document.version == 1
        assert document.algebra.constants == []
        assert document.group is None

    def test_group_without_action(self) -> None:
        """Test that a group alone is rejected."""
        with pytest.raises(ValidationError):
            InstanceDocument(
                base="F2",
                algebra={"names": ["1"], "degrees": [0], "unit": ["1"]},  # type: ignore[arg-type]
                group={"table": [[0]]},  # type: ignore[arg-type]
            )

    def test_unknown_field(self) -> None:
        """Test that extra keys are forbidden."""
        with pytest.raises(ValidationError):
            ModuleDocument(base="Z", degrees=[0], extra=1)  # type: ignore[call-arg]

    def test_wrong_format_tag(self) -> None:
        """Test that another document kind is refused."""
        with pytest.raises(ValidationError):
            ModuleDocument(
                format="algext.instance",  # type: ignore[arg-type]
                base="Z",
                degrees=[0],
            )

    def test_report_timing_optional(self) -> None:
        """Test that timing is absent unless set."""
        report = ReportDocument(tool_version="0.1.0", command="hh1")
        assert report.timing is None
        assert report.verdicts == {}


class TestGeneratorParams:
    """Tests for GeneratorParams."""

    def test_defaults(self) -> None:
        """Test default knobs."""
        params = GeneratorParams()
        assert params.seed == 0
        assert params.degree_range == (-2, 2)
        assert params.base_choices == ("F2", "F3", "Z/4", "Z")

    def test_lane_overrides(self) -> None:
        """Test that lane() replaces fields and keeps the rest."""
        params = GeneratorParams(max_rank=6).lane(seed=9, connective=True)
        assert (params.seed, params.max_rank, params.connective) == (9, 6, True)

    @pytest.mark.parametrize(
        "fields",
        [
            {"degree_range": (2, 1)},
            {"force_graded": True, "forbid_graded": True},
            {"degree_zero_trivial": True, "degree_zero_extra": True},
            {"force_negative": True, "connective": True},
            {"seed": -1},
            {"max_rank": 0},
        ],
    )
    def test_inconsistent(self, fields: dict) -> None:
        """Test that contradictory or out-of-range knobs are rejected."""
        with pytest.raises(ValidationError):
            GeneratorParams(**fields)

    def test_lane_validates(self) -> None:
        """Test that lane() re-runs the validators."""
        with pytest.raises(ValidationError):
            GeneratorParams().lane(degree_range=(3, 0))

    def test_frozen(self) -> None:
        """Test that params cannot be mutated."""
        params = GeneratorParams()
        with pytest.raises(ValidationError):
            params.seed = 5  # type: ignore[misc]


class TestInstances:
    """Tests for parsing and writing instance documents."""

    def test_parse_and_build(self, dual_numbers_text: str) -> None:
        """Test that a valid document builds the dual numbers."""
        instance = instance_from_document(parse_instance(dual_numbers_text))
        assert instance.algebra == make_truncated_poly(F2, 2, 1)
        assert instance.action is None

    def test_malformed_json(self) -> None:
        """Test that broken JSON raises ParseError."""
        with pytest.raises(ParseError):
            parse_instance("{not json")

    def test_non_decimal_scalar(self, dual_numbers_text: str) -> None:
        """Test that a non-decimal unit coordinate raises ParseError."""
        text = dual_numbers_text.replace('"unit": ["1", "0"]', '"unit": ["one", "0"]')
        document = parse_instance(text)
        with pytest.raises(ParseError):
            instance_from_document(document)

    def test_axioms_checked_on_load(self, dual_numbers_text: str) -> None:
        """Test that a missing unit law is caught while building."""
        text = dual_numbers_text.replace('[1, 0, 1, "1"]', '[1, 0, 0, "1"]')
        with pytest.raises(AxiomViolation):
            instance_from_document(parse_instance(text))

    def test_document_regenerates(self) -> None:
        """Test that a written document loads back to the same algebra and action."""
        algebra, action = make_finite_field_ext(2, 2)
        text = dump_document(instance_document(algebra, action))
        instance = instance_from_document(parse_instance(text))
        assert instance.algebra == algebra
        assert instance.action is not None
        assert instance.action.matrices == action.matrices

    def test_unfaithful_refused_unless_allowed(self, tmp_path: Path) -> None:
        """Test that a trivial C_2 action loads only with allow_unfaithful."""
        algebra = make_truncated_poly(F2, 2, 0)
        document = InstanceDocument.model_validate(
            {
                **instance_document(algebra).model_dump(),
                "group": {"table": [[0, 1], [1, 0]]},
                "action": {"matrices": [[["1", "0"], ["0", "1"]]] * 2},
            }
        )
        path = tmp_path / "unfaithful.json"
        path.write_text(dump_document(document), encoding="utf-8")
        with pytest.raises(ActionViolation):
            load_instance(path)
        assert load_instance(path, allow_unfaithful=True).action is not None

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that an unreadable path raises ParseError."""
        with pytest.raises(ParseError):
            load_instance(tmp_path / "absent.json")


class TestModules:
    """Tests for module documents."""

    def test_parse(self) -> None:
        """Test that Z/2 + Z/3 parses to torsion (6,)."""
        text = json.dumps(
            {"base": "Z", "degrees": [0, 0], "relations": [["2", "0"], ["0", "3"]]}
        )
        module = module_from_document(parse_module(text))
        assert module.fingerprint.torsion == (6,)

    def test_column_length_mismatch(self) -> None:
        """Test that a relation column of the wrong length is refused."""
        document = ModuleDocument(base="Z", degrees=[0, 0], relations=[["2"]])
        with pytest.raises(ParseError):
            module_from_document(document)

    def test_write_and_load(self, tmp_path: Path) -> None:
        """Test that a written module loads back unchanged."""
        module = PresentedModule.cyclic(BaseRing.integers(), 4, degree=2)
        path = tmp_path / "z4.module.json"
        path.write_text(dump_document(module_document(module)), encoding="utf-8")
        assert load_module(path) == module
