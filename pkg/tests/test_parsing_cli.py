"""Expression grammar, round-trip printing, and the command-line surface."""
import json

import pytest
from hypothesis import given, settings, strategies as st

from algint.cli import SCHEMA_CORPUS, SCHEMA_RESULT, main, run_record
from algint.errors import (
    DomainError,
    ExprSyntaxError,
    SuitabilityFailure,
    UnknownVariable,
)
from algint.parsing import build_curve, build_element, field_for, uses_t
from algint.rings import QQ, QT, POLY_X_QQ

from conftest import curve_elements, small_fractions

R = POLY_X_QQ


# ---------------------------------------------------------------------------
# grammar

def test_precedence_and_associativity(parabola):
    assert build_element("1 + 2*3", parabola) == build_element("7", parabola)
    assert build_element("2*x^2", parabola) == build_element("2*(x^2)", parabola)
    assert build_element("1 - 2 - 3", parabola) == build_element("-4", parabola)
    assert build_element("8/2/2", parabola) == build_element("2", parabola)
    assert build_element("-x^2", parabola) == build_element("-(x^2)", parabola)


def test_negative_exponents(parabola):
    assert build_element("x^-2", parabola) == build_element("1/x^2", parabola)


def test_unary_minus(parabola):
    assert build_element("-y + y", parabola) == parabola.zero()
    assert build_element("- - 3", parabola) == build_element("3", parabola)


def test_syntax_error_positions():
    cases = [
        ("y/(x^", 4),        # '^' missing its exponent
        ("x + ", 2),         # '+' missing its right operand
        ("(x", 2),           # unclosed parenthesis
        ("x * * y", 2),      # first '*' is the one missing an operand
        ("x + @", 4),        # bad character
    ]
    curve = build_curve("y^2 - x", QQ)
    for text, offset in cases:
        with pytest.raises(ExprSyntaxError) as err:
            build_element(text, curve)
        assert err.value.position == offset, text
        assert f"offset {offset}" in str(err.value)


def test_unknown_variable_reports_name_and_position(parabola):
    with pytest.raises(UnknownVariable) as err:
        build_element("x + z*y", parabola)
    assert err.value.name == "z"
    assert err.value.position == 4


def test_t_rejected_over_plain_rationals(parabola):
    with pytest.raises(UnknownVariable):
        build_element("t*y", parabola)


def test_field_for_detects_parameter():
    assert field_for(["y^2 - x"]) is QQ
    assert field_for(["y^2 - x - t"]) is QT
    assert field_for(["y^2 - x"], force_t=True) is QT
    assert uses_t("x - t")
    assert not uses_t("x - torsion")  # names are maximal letter runs


def test_curve_must_involve_y():
    with pytest.raises(DomainError):
        build_curve("x^2 - 1", QQ)
    with pytest.raises(DomainError):
        build_curve("1/y", QQ)  # y inside a denominator is rejected
    # y over an x-denominator is fine: clearing gives the line y = x
    assert build_curve("y/x - 1", QQ).m == build_curve("y - x", QQ).m


def test_curve_denominators_cleared():
    curve = build_curve("y^2/2 - x/3", QQ)
    # same curve as 3*y^2 - 2*x after clearing; monic internal model
    other = build_curve("3*y^2 - 2*x", QQ)
    assert curve.m == other.m


@settings(max_examples=20)
@given(st.data())
def test_print_parse_roundtrip(parabola, data):
    f = data.draw(
        curve_elements(parabola, max_degree=2, denom_pool=(R.poly([0, 1]),))
    )
    assert build_element(str(f), parabola) == f


@settings(max_examples=15)
@given(st.data())
def test_print_parse_roundtrip_with_parameter(legendre, data):
    coeffs = data.draw(
        st.lists(small_fractions, min_size=2, max_size=2)
    )
    f = legendre.from_coords(
        [legendre.xfrac.coerce(c) for c in coeffs]
    ) * legendre.gen() + build_element("t/x", legendre)
    assert build_element(str(f), legendre) == f


# ---------------------------------------------------------------------------
# CLI surface

def test_cli_integrate_text(capsys):
    rc = main(["integrate", "--curve", "y^2 - x", "--integrand", "y/x^3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "integrable: yes" in out
    assert "-2/3/x^2*y" in out


def test_cli_integrate_non_integrable_text(capsys):
    rc = main(["integrate", "--curve", "y^2 - x", "--integrand", "y/(x^2*(x+1))"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "integrable: no" in out


def test_cli_syntax_error_exit_code(capsys):
    rc = main(["integrate", "--curve", "y^2 - x", "--integrand", "y/(x^"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "offset 4" in err


def test_cli_domain_error_exit_code(capsys):
    rc = main(["integrate", "--curve", "x^2 - 1", "--integrand", "x"])
    assert rc == 3


def test_cli_max_order_exit_code(capsys):
    rc = main([
        "telescope", "--curve", "y^2 - x*(x - 1)*(x - t)",
        "--integrand", "1/y", "--max-order", "1",
    ])
    assert rc == 5


def test_cli_suitability_exit_code(monkeypatch, capsys):
    import algint.cli as cli_mod

    def boom(*args, **kwargs):
        raise SuitabilityFailure("forced for the exit-code contract")

    monkeypatch.setattr(cli_mod, "_setup", boom)
    rc = main(["integrate", "--curve", "y^2 - x", "--integrand", "y"])
    assert rc == 4


def test_cli_structured_output_is_deterministic(capsys):
    argv = [
        "telescope", "--curve", "y^2 - x*(x - 1)*(x - t)",
        "--integrand", "1/y", "--format", "structured",
    ]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)
    assert doc["schema"] == SCHEMA_RESULT
    assert doc["mode"] == "telescope"
    assert doc["result"]["order"] == 2
    assert doc["result"]["verified"] is True
    assert doc["result"]["coefficients"] == ["1", "8*t - 4", "4*t^2 - 4*t"]


def test_cli_verify_subcommand(capsys):
    rc = main([
        "verify", "--curve", "y^2 - x*(x - 1)*(x - t)", "--integrand", "1/y",
        "--telescoper", "1, 8*t - 4, 4*t^2 - 4*t",
        "--certificate", "(-2/(x^2 - 2*t*x + t^2))*y",
    ])
    out = capsys.readouterr().out
    assert rc == 0
    assert "verified: yes" in out


def test_cli_verify_rejects_wrong_operator(capsys):
    rc = main([
        "verify", "--curve", "y^2 - x*(x - 1)*(x - t)", "--integrand", "1/y",
        "--telescoper", "1, 1, 1",
        "--certificate", "(-2/(x^2 - 2*t*x + t^2))*y",
    ])
    out = capsys.readouterr().out
    assert rc == 0
    assert "verified: no" in out


def test_cli_reduce_text(capsys):
    rc = main(["reduce", "--curve", "y^2 - x", "--integrand", "y/(x^2*(x+1))"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "remainder" in out


# ---------------------------------------------------------------------------
# corpus runner

def test_run_record_verifies_antiderivative():
    rec = {
        "name": "inline", "mode": "integrate",
        "curve": "y^2 - x", "integrand": "y/x^3",
        "expect": {"integrable": True},
    }
    out = run_record(rec)
    assert out["status"] == "ok"


def test_run_record_flags_expectation_mismatch():
    rec = {
        "name": "wrong", "mode": "integrate",
        "curve": "y^2 - x", "integrand": "y/x^3",
        "expect": {"integrable": False},
    }
    out = run_record(rec)
    assert out["status"] == "mismatch"


def test_run_record_captures_errors():
    rec = {
        "name": "broken", "mode": "integrate",
        "curve": "x^2 - 1", "integrand": "x",
    }
    out = run_record(rec)
    assert out["status"] == "error"
    assert out["error"]


def test_corpus_cli_on_bundled_file(capsys):
    rc = main(["corpus", "data/desk_corpus.jsonl"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "12/12 ok" in out


def test_corpus_cli_parallel_structured_deterministic(capsys, tmp_path):
    lines = [
        json.dumps({"name": "a", "mode": "integrate", "curve": "y^2 - x",
                    "integrand": "y/x^3", "expect": {"integrable": True}}),
        "# comment line",
        json.dumps({"name": "b", "mode": "integrate", "curve": "y^2 - x",
                    "integrand": "y/(x^2*(x+1))", "expect": {"integrable": False}}),
    ]
    path = tmp_path / "mini.jsonl"
    path.write_text("\n".join(lines) + "\n")
    argv1 = ["corpus", str(path), "--format", "structured"]
    argv2 = ["corpus", str(path), "--format", "structured", "--jobs", "2"]
    assert main(argv1) == 0
    first = capsys.readouterr().out
    assert main(argv2) == 0
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)
    assert doc["schema"] == SCHEMA_CORPUS
    assert [e["name"] for e in doc["entries"]] == ["a", "b"]


def test_corpus_exit_nonzero_on_mismatch(capsys, tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text(json.dumps({
        "name": "bad", "mode": "integrate", "curve": "y^2 - x",
        "integrand": "y/x^3", "expect": {"integrable": False},
    }) + "\n")
    rc = main(["corpus", str(path)])
    assert rc != 0
