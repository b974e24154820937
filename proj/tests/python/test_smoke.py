import os
import re
from fractions import Fraction
from pathlib import Path

import pytest

import desiree

FIXTURES = Path(os.environ.get("DESIREE_FIXTURES", Path(__file__).resolve().parents[1] / "fixtures"))


def fixture(name):
    return (FIXTURES / name).read_text(encoding="utf-8")


def test_interval_membership_is_exact():
    d = desiree.membership(fixture("cost_intervals.dsr"), "Cost", 740)
    assert d == {"low": Fraction(119, 200), "medium": Fraction(81, 200), "high": 0}
    assert sum(d.values()) == 1


def test_point_membership():
    d = desiree.membership(fixture("cost_points.dsr"), "Cost", "740")
    assert d["low"] == Fraction(3, 4)


def test_interval_pair_against_monte_carlo():
    import random

    rng = random.Random(5)
    a, b, c, d = 500, 700, 800, 1000
    for p in (660, 740, 810, 900):
        m, _ = desiree.interval_pair(str(p), str(a), str(b), str(c), str(d))
        n = 200_000
        hits = sum(rng.uniform(a, b) + rng.uniform(c, d) > 2 * p for _ in range(n))
        assert abs(float(Fraction(m)) - hits / n) < 0.01


def test_round_trip_format():
    text = fixture("operators_worked.dsr")
    once = desiree.format_model(text)
    assert desiree.format_model(once) == once
    assert "F1'" in desiree.element_ids(text)


def test_syntax_error_position():
    diags = desiree.parse_diagnostics(fixture("syntax_error.dsr"))
    assert diags[0]["line"] == 2 and diags[0]["column"] == 35
    with pytest.raises(ValueError, match="2:35"):
        desiree.format_model(fixture("syntax_error.dsr"))
    with pytest.raises(desiree.DesireeError):
        desiree.query(fixture("traffic.dsr"), "<object: ")


def test_subsumption_verdicts():
    assert desiree.subsumes("A & B", "A") == "Proven"
    assert desiree.subsumes("A", "A & B") == "Refuted"
    model = "model m {\naxiom Airline_ticket :< Ticket;\n}\n"
    assert desiree.subsumes("<object: SOME Airline_ticket>", "<object: SOME Ticket>", model) == "Proven"


def test_query_and_fulfillment():
    traffic = fixture("traffic.dsr")
    assert desiree.query(traffic, "<inheres_in: {F5}>") == ["QG7"]
    assert desiree.fulfill(traffic)["F5"] == "fulfilled"
    assert desiree.fulfill(fixture("threshold.dsr"))["G"] == "unknown"
    assert desiree.fulfill(fixture("threshold.dsr"), 3)["G"] == "fulfilled"


def test_consistency():
    status, why = desiree.consistency(fixture("user_entity.dsr"))
    assert status == "Inconsistent" and why


def test_lint_findings():
    issues = {(f["element"], f["issue"]) for f in desiree.lint(fixture("meeting_lint.dsr"))}
    assert ("G1", "Ambiguous") in issues
    assert ("F3", "Redundant") in issues
    assert ("QG2", "Unverifiable") in issues


def test_owl_is_balanced_and_declared():
    owl = desiree.to_owl(fixture("traffic.dsr"))
    body = re.sub(r'"(?:\\.|[^"\\])*"|<[^>]*>', "", owl)
    depth = 0
    for ch in body:
        depth += ch == "("
        depth -= ch == ")"
        assert depth >= 0
    assert depth == 0
    declared = set(re.findall(r"Declaration\(\w+\((:[\w']+)\)\)", owl))
    used = {m for m in re.findall(r"(?<![\w:])(:[A-Za-z_][\w']*)", body)}
    assert used <= declared
