import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weyldim.dimpoly import analyze
from weyldim.errors import ParseError
from weyldim.presentation import (
    Presentation,
    load,
    load_report_json,
    parse,
    render_presentation,
    render_report,
    report_payload,
)

from helpers import D, X, on, quadratic, random_relation, term

PRESENTATIONS = Path(__file__).resolve().parent.parent / "presentations"


def test_parse_quadratic():
    p = parse("weyl n=1\nmodule rank=1\nrel x^2 e1 + d^2 e1 + x d e1\n")
    assert (p.n, p.m) == (1, 1)
    assert p.relations == (quadratic(),)


def test_parse_coefficients_and_separators():
    p = parse("weyl n=1; module rank=2\nrel -2/3*x*d^2*e2 + 5 e1  # trailing comment")
    (f,) = p.relations
    assert f.terms[term((1,), (2,), 2)] == Fraction(-2, 3)
    assert f.terms[term((0,), (0,), 1)] == 5


def test_parse_glued_factors_and_indices():
    p = parse("weyl n=2\nmodule rank=1\nrel x1x2^2 d2 e + 3 d1^2 e1")
    (f,) = p.relations
    assert f.terms == {term((1, 2), (0, 1)): 1, term((0, 0), (2, 0)): 3}


def test_parse_collects_like_terms():
    (f,) = parse("weyl n=1\nmodule rank=1\nrel x e1 + 2 x e1 + d e1").relations
    assert f == on(3 * X + D)


def test_labels():
    p = load(str(PRESENTATIONS / "free_rank2.txt"))
    assert p.labels == ("f", "g")
    assert p.relations == ()


@pytest.mark.parametrize(
    "source, line, col, fragment",
    [
        ("weyl n=2\nmodule rank=1\nrel x3 e1", 3, 5, "out of range"),
        ("weyl n=1\nmodule rank=1\nrel d x e1", 3, 7, "x factor after d"),
        ("weyl n=1\nmodule rank=1\nrel x e1 - x e1", 3, 1, "zero relation"),
        ("weyl n=1\nmodule rank=1\nrel 1/0 x e1", 3, 7, "zero denominator"),
        ("weyl n=1\nmodule rank=2\nrel x e1 e2", 3, 10, "more than one generator"),
        ("weyl n=1\nmodule rank=1\nrel x", 3, 5, "no generator"),
        ("weyl n=1\nmodule rank=2\nrel x e", 3, 7, "index required"),
        ("weyl n=1\nmodule rank=1\nrel x^ e1", 3, 6, "exponent"),
        ("weyl n=1\nmodule rank=1\nrel x e1 / 2", 3, 10, "unexpected"),
        ("rel x e1", 1, 1, "before the 'weyl'"),
        ("weyl n=0\nmodule rank=1", 1, 8, "at least 1"),
        ("weyl n=1\nmodule rank=3\nlabels a b", 3, 1, "expected 3 labels"),
        ("module rank=1", 1, 1, "missing"),
    ],
)
def test_parse_errors_carry_position(source, line, col, fragment):
    with pytest.raises(ParseError) as info:
        parse(source)
    assert (info.value.line, info.value.column) == (line, col)
    assert fragment in str(info.value)


def test_presentation_rejects_zero_relation():
    with pytest.raises(ValueError):
        Presentation(1, 1, (on(X) - on(X),))


def test_example_files_parse():
    files = sorted(PRESENTATIONS.glob("*.txt"))
    assert len(files) >= 8
    for path in files:
        p = load(str(path))
        assert parse(render_presentation(p)) == p


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_render_round_trip(seed):
    rng = random.Random(seed)
    n, m = rng.choice([(1, 1), (1, 3), (2, 1), (2, 2)])
    rels = tuple(random_relation(rng, n, m, deg=4) for _ in range(rng.randint(1, 3)))
    p = Presentation(n, m, rels)
    assert parse(render_presentation(p)) == p


def test_json_report_round_trip():
    p = load(str(PRESENTATIONS / "ex_param_a2_b1.txt"))
    report = analyze(p.relations, p.n, p.m, bernstein=True)
    text = render_report(report, "json")
    back = load_report_json(text)
    assert back.phi == report.phi
    assert back.omega == report.omega and back.omega_bar == report.omega_bar
    assert back.psi == report.psi
    assert back.invariants == report.invariants
    assert json.loads(text) == json.loads(json.dumps(report_payload(report)))


def test_json_report_detects_inconsistent_payload():
    p = load(str(PRESENTATIONS / "ex_quadratic.txt"))
    d = json.loads(render_report(analyze(p.relations, p.n, p.m), "json"))
    d["phi"]["monomial"][0][0] = 99
    with pytest.raises(ValueError):
        load_report_json(json.dumps(d))


def test_json_keys_in_fixed_order():
    p = load(str(PRESENTATIONS / "ex_quadratic.txt"))
    d = json.loads(render_report(analyze(p.relations, p.n, p.m), "json"))
    assert list(d)[:9] == [
        "n", "m", "phi", "omega", "omega_bar", "psi", "invariants", "basis", "stability_point",
    ]


def test_text_report_mentions_phi():
    p = load(str(PRESENTATIONS / "ex_quadratic.txt"))
    text = render_report(analyze(p.relations, p.n, p.m, bernstein=True))
    assert "phi = 2*t1 + 2*t2\n" in text
    assert "psi = 2*t + 1\n" in text
    with pytest.raises(ValueError):
        render_report(analyze(p.relations, p.n, p.m), "xml")
