import json
from fractions import Fraction

import pytest

from charvar.cli import corpus_documents
from charvar.document import parse_document
from charvar.obstructions import (
    SATISFIED,
    VIOLATED,
    ComponentDatum,
    Finding,
    ObstructionReport,
    OrbifoldMorphismDatum,
    check_depth_and_dimension,
    check_pair_geometry,
    check_pullback,
    check_sum_rule,
    full_report,
)
from charvar.orbifold import OrbifoldSurface
from charvar.presentation import Character, CharvarError, Presentation, character_from_assignment
from charvar.torus import TranslatedSubtorus


def corpus(name):
    return parse_document(dict(corpus_documents())[name])


def test_artin_bundle_satisfied():
    doc = corpus("artin_2_4_4")
    p = doc.presentation
    v1, v2, v3 = doc.components.values()
    for a, b in ((v1, v2), (v1, v3), (v2, v3)):
        f = check_sum_rule(p, a, b)
        assert f.verdict == SATISFIED
        assert f.witness["points"] == [{"point": ["0", "0", "1/2"], "order": 2, "dim": 2}]
        assert check_pair_geometry(a, b).verdict == SATISFIED
    rep = full_report(p, list(doc.components.values()), scan=(4, 1))
    assert not rep.obstructed and rep.unexplained == ()


def test_synthetic_violation():
    doc = corpus("synthetic_sum_rule_violation")
    p = doc.presentation
    v1, v2 = doc.components.values()
    f = check_sum_rule(p, v1, v2)
    assert f.verdict == VIOLATED
    assert f.witness == {"point": ["1/2", "1/2"], "order": 2, "dim": 1, "required": 2}


def test_depth_rules():
    f2 = Presentation.from_strings(["s", "t"], [])
    whole = ComponentDatum(TranslatedSubtorus.build(f2, [0, 0], [[1, 0], [0, 1]]), 1)
    rules = {f.rule: f.verdict for f in check_depth_and_dimension(f2, whole)}
    assert rules == {"depth-claim": SATISFIED, "depth-through-one": SATISFIED}
    over = ComponentDatum(whole.subtorus, 2)
    rules = {f.rule: f.verdict for f in check_depth_and_dimension(f2, over)}
    assert rules["depth-claim"] == VIOLATED and rules["depth-through-one"] == VIOLATED


def test_translated_component_rules():
    doc = corpus("artin_2_4_4")
    c = next(iter(doc.components.values()))
    rules = {f.rule: f.verdict for f in check_depth_and_dimension(doc.presentation, c)}
    assert rules["translated-depth"] == SATISFIED
    # the shadow {(t, 1, 1/t)} carries no cohomology generically
    assert rules["shadow-not-component"] == SATISFIED


def test_pullback_checks():
    doc = corpus("concurrent_lines_pencil")
    p = doc.presentation
    (claim,) = doc.pullbacks
    f = check_pullback(p, claim.morphism, claim.target_character, claim.source_character)
    assert f.verdict == SATISFIED and f.witness["accounts_for_all"]
    wrong = character_from_assignment(p, ["1/3", "2/5", "0"])
    f = check_pullback(p, claim.morphism, claim.target_character, wrong)
    assert f.verdict == VIOLATED and f.witness["generator"] == "b"


def test_pullback_rejects_bad_input():
    p = Presentation.from_strings(["a"], [])
    target = OrbifoldSurface.free(0, (2, 3))
    m = OrbifoldMorphismDatum(target, (((0, 1),), ((1, 1),)), "too many")
    xi_c = character_from_assignment(target.presentation, ["1/2", "1/3"])
    with pytest.raises(CharvarError):
        check_pullback(p, m, xi_c, character_from_assignment(p, ["1/2"]))


def test_relator_image_not_killed():
    # source relation a^3 maps to mu1^3, which e(1/2) does not kill
    p = Presentation.from_strings(["a"], ["a^3"])
    target = OrbifoldSurface.free(0, (2, 3))
    m = OrbifoldMorphismDatum(target, (((0, 1),),), "bad")
    xi_c = character_from_assignment(target.presentation, ["1/2", "0"])
    xi = Character(p, (Fraction(1, 2),), ((),), 0)
    f = check_pullback(p, m, xi_c, xi)
    assert f.verdict == VIOLATED and "relator" in f.witness


def test_report_roundtrip_and_determinism():
    doc = corpus("synthetic_sum_rule_violation")
    rep = full_report(doc.presentation, list(doc.components.values()), scan=(6, 1))
    again = ObstructionReport.from_dict(json.loads(rep.to_json()))
    assert again == rep
    rep2 = full_report(doc.presentation, list(reversed(list(doc.components.values()))), scan=(6, 1))
    assert rep2.to_json() == rep.to_json()


def test_empty_report():
    rep = full_report(Presentation.from_strings(["a"], []))
    assert rep.overall == "satisfied" and rep.findings == ()


def test_finding_validation():
    with pytest.raises(ValueError):
        Finding("x", {}, "maybe")
