#!/usr/bin/env python3
"""
Tests for the JSON report envelope.
"""

import json

import pytest

from polynomial_reducts import __version__
from polynomial_reducts.classifier import classify, interdefinable
from polynomial_reducts.decomposition import er_classify
from polynomial_reducts.exceptions import ConsistencyError
from polynomial_reducts.expansion import expansion_series
from polynomial_reducts.parser import parse_poly
from polynomial_reducts.report import ReportEnvelope, load_report_schema
from polynomial_reducts.unary import definable_functions
from polynomial_reducts.algebra.upoly import UPoly


class TestReportEnvelope:
    """Test envelope serialization"""

    def test_key_order(self):
        """Test fixed envelope key order"""
        envelope = ReportEnvelope("decompose", ["x*y"], er_classify(parse_poly("x*y")).to_dict())
        keys = list(json.loads(envelope.to_json()))
        assert keys == ["tool_version", "command", "inputs", "result", "diagnostics"]

    def test_version_and_newline(self):
        """Test tool version is stamped and text ends with a newline"""
        envelope = ReportEnvelope("decompose", ["x+y"], er_classify(parse_poly("x + y")).to_dict())
        text = envelope.to_json()
        assert text.endswith("}\n")
        assert json.loads(text)["tool_version"] == __version__

    def test_deterministic(self):
        """Test identical inputs give identical bytes"""
        first = ReportEnvelope("classify", ["x*y"], classify([parse_poly("x*y")]).to_dict())
        second = ReportEnvelope("classify", ["x*y"], classify([parse_poly("x*y")]).to_dict())
        assert first.to_json() == second.to_json()

    def test_indent(self):
        """Test configurable indentation"""
        envelope = ReportEnvelope("decompose", ["x+y"], er_classify(parse_poly("x + y")).to_dict())
        assert envelope.to_json(indent=4).splitlines()[1].startswith("    \"tool_version\"")
        assert envelope.to_json(indent=0).splitlines()[1].startswith("\"tool_version\"")

    def test_schema_is_bundled(self):
        """Test the packaged schema loads"""
        schema = load_report_schema()
        assert schema["title"] == "preduct report envelope"


class TestReportSchema:
    """Test every command's payload validates"""

    @pytest.mark.parametrize("texts", [
        ["x^17 + x^6*y^8 - y^3"],
        ["x + y", "2*x - 1/3*y"],
        ["x*y - x - y + 2", "(x-1)^2*(y-1) + 1"],
        ["x^2", "x^3"],
    ])
    def test_classification(self, texts):
        """Test each case validates"""
        report = classify([parse_poly(t) for t in texts])
        ReportEnvelope("classify", texts, report.to_dict()).validate()

    @pytest.mark.parametrize("text", ["x^2 + y^2", "x^2*y^4 + 1", "x^17 + x^6*y^8 - y^3"])
    def test_decompose(self, text):
        """Test each verdict validates"""
        ReportEnvelope("decompose", [text], er_classify(parse_poly(text)).to_dict()).validate()

    def test_interdef_with_diagnostics(self):
        """Test interdef payload with a corollary diagnostic"""
        result = interdefinable([parse_poly("x^2")], [parse_poly("-1*x^2")])
        envelope = ReportEnvelope("interdef", ["x^2", "-x^2"], result.to_dict(), result.diagnostics())
        envelope.validate()
        assert json.loads(envelope.to_json())["result"]["unary"]["forward"] == "r o P^1"

    def test_expansion(self):
        """Test expansion payload validates"""
        series = expansion_series(parse_poly("x + y"), "ap", [16, 64])
        ReportEnvelope("expansion", ["x + y"], series.to_dict()).validate()

    def test_unary(self):
        """Test definable family payload validates"""
        family = definable_functions(UPoly.of([1, 0, 1]), 5)
        ReportEnvelope("unary", ["x^2 + 1"], family.to_dict()).validate()

    def test_unknown_command(self):
        """Test unknown command is rejected"""
        with pytest.raises(ConsistencyError, match="command"):
            ReportEnvelope("frobnicate", [], {}).validate()

    def test_payload_mismatch(self):
        """Test payload of the wrong shape is rejected"""
        envelope = ReportEnvelope("expansion", ["x"], {"tag": "Neither"})
        with pytest.raises(ConsistencyError):
            envelope.to_json()
