import importlib
import json

import pytest
from hypothesis import given, settings

from conftest import subjects
from mumu import circ, dag, lm, lmm, parse_lm, parse_lmm
from mumu.harness import (
    GenConfig,
    check_lemma2,
    check_lemma5,
    check_lemma6,
    check_nonconfluence,
    check_subst_lemmas,
    check_thm1,
    check_thm2,
    check_thm4,
    check_thm5,
    gen,
    linear_convertible,
    reachable,
    replay,
)
from mumu.harness.checks import circ_position, dag_position
from mumu.harness.gen import GenerationExhausted
from mumu.harness.search import key
from mumu.harness.suites import CBN_COUNTEREXAMPLE, lemma2_cbn_counterexample, run_suite
from mumu.simple_types import typable


def T(s):
    return parse_lm(s)


def rules_of(trace):
    return [r.rule for r, _ in trace.steps]


def replays(report):
    return all(replay(t) for t in report.witness)


# reachability

def test_reachable_from_normal_form():
    reach, _ = reachable(T("x"))
    assert list(reach.keys()) == [key(T("x"))]


def test_reachable_critical_pair_depth_three():
    c = parse_lmm("<mu 'a.<x|y*'a> | mt x.<z|x*'b>>", "command")
    reach, _ = reachable(c, "full", 3)
    assert key(parse_lmm("<x | y*mt x.<z|x*'b>>", "command")) in reach
    assert key(parse_lmm("<z | mu 'a.<x|y*'a>*'b>", "command")) in reach


def test_reachable_linear_chain():
    reach, _ = reachable(T("mu 'b.['c]mu 'd.['b]x y"), "linear")
    assert key(T("mu 'b.['b]x y")) in reach
    assert key(T("x y")) in reach


def test_reachable_depth_bound_flags_truncation():
    omega = T("(\\x.x x) (\\x.x x) y")
    reach, _ = reachable(omega, "full", 0)
    assert reach.truncated


# linear convertibility

def test_linear_convertible_reflexive():
    assert linear_convertible(T("x"), T("x")).status == "holds"


def test_linear_convertible_theta():
    r = linear_convertible(T("mu 'b.['b]x y"), T("x y"))
    assert r.status == "holds" and replays(r)


def test_linear_convertible_mu_case_pair():
    t = T("(mu 'a.['a]x) y")
    v = next(r.result for r in lm.redexes(t) if r.rule == "mu")
    reduced = next(r.result for r in lmm.redexes(dag(t)) if r.rule == "mu-tilde")
    assert linear_convertible(reduced, dag(v)).status == "holds"


def test_linear_convertible_without_join_is_inconclusive():
    assert linear_convertible(T("x"), T("y")).status == "inconclusive"


# generator

def test_size_one_is_a_variable():
    for seed in range(20):
        assert isinstance(gen(GenConfig(seed, 1, "lm")), lm.Var)


@pytest.mark.parametrize("fragment,pred", [("T", lmm.in_T), ("Q", lmm.in_Q)])
def test_fragment_respected(fragment, pred):
    for seed in range(50):
        assert pred(gen(GenConfig(seed, 12, "lmm", "command", fragment)))


def test_typable_only():
    for seed in range(30):
        assert typable(gen(GenConfig(seed, 10, "lm", "term", typable_only=True)))


def test_generator_deterministic():
    cfg = GenConfig(42, 12, "lmm", "context")
    assert gen(cfg) == gen(cfg)


def test_generator_sizes_bounded():
    for seed in range(100):
        assert lm.node_count(gen(GenConfig(seed, 7, "lm"))) <= 7


def test_generator_rejects_fragment_for_lm():
    with pytest.raises(ValueError):
        gen(GenConfig(0, 5, "lm", fragment="T"))


def test_generator_exhaustion(monkeypatch):
    g = importlib.import_module("mumu.harness.gen")
    monkeypatch.setattr(g, "typable", lambda x: False)
    with pytest.raises(GenerationExhausted):
        gen(GenConfig(0, 5, "lm", typable_only=True))


# round trips

def test_thm1_variable_zero_steps():
    r = check_thm1(T("x"))
    assert r.status == "holds" and len(r.witness[0]) == 0


def test_thm1_application_chain():
    r = check_thm1(T("x y"))
    assert r.status == "holds"
    assert rules_of(r.witness[0]) == ["beta", "rho", "theta"]
    assert all(s.linear for s, _ in r.witness[0].steps)


def test_thm1_structural_case():
    assert check_thm1(T("\\x.mu 'a.['a]x")).status == "holds"


def test_thm2_variable():
    r = check_thm2(parse_lmm("x"))
    assert r.status == "holds" and len(r.witness[0]) == 0


def test_thm2_tilde_mu_chain():
    r = check_thm2(parse_lmm("mt x.<x|'a>", "context"))
    assert r.status == "holds"
    assert rules_of(r.witness[0]) == ["beta", "mu-tilde", "mu"]


def test_thm2_cut():
    assert check_thm2(parse_lmm("<x|y*'a>", "command")).status == "holds"


@settings(max_examples=60, deadline=None)
@given(subjects("lm", "term", 10))
def test_thm1_property(t):
    r = check_thm1(t)
    assert r.status == "holds" and replays(r)
    assert lm.alpha_eq(r.witness[0].end, t)


@settings(max_examples=60, deadline=None)
@given(subjects("lmm", "context", 10))
def test_thm2_property(e):
    r = check_thm2(e)
    assert r.status == "holds" and replays(r)


# lemma 2

def test_lemma2_covariable_context_one_rho():
    r = check_lemma2(lm.CoVar("b"), "a", parse_lm("['a]x z", "command"))
    assert r.status == "holds" and rules_of(r.witness[0]) == ["rho"]


def test_lemma2_cbn_counterexample():
    r = check_lemma2(*CBN_COUNTEREXAMPLE, strategy="cbn", depth=10)
    assert r.status == "falsified"
    assert lemma2_cbn_counterexample().status == "holds"


def test_lemma2_cbn_with_identity_body_reached_by_theta():
    # with c = ['a]x the theta rule alone closes the gap, so no counterexample
    r = check_lemma2(lm.AppTo(lm.Var("y"), "b"), "a", parse_lm("['a]x", "command"), "cbn", depth=10)
    assert r.status == "holds" and rules_of(r.witness[0]) == ["theta"]


def test_lemma2_cbv_value_argument():
    e = lm.ArgStack(lm.CoVar("g"), T("\\z.z"))
    assert check_lemma2(e, "a", parse_lm("['a]x mu 'd.['a]y", "command"), "cbv").status == "holds"


# lemmas 5 and 6

def test_lemma5_n0():
    r = check_lemma5([T("x")], lmm.CoVar("a"))
    assert r.status == "holds" and len(r.witness[0]) == 0


def test_lemma5_n1():
    r = check_lemma5([T("x"), T("y")], lmm.CoVar("a"))
    assert r.status == "holds" and rules_of(r.witness[0]) == ["mu", "mu-tilde"]


def test_lemma6_argument_stack():
    e = lm.ArgStack(lm.CoVar("a"), T("u"))
    assert check_lemma6(e, T("x")).status == "holds"


# substitution lemmas

def test_lemma7_trivial():
    r = check_subst_lemmas(7, (T("x"), "x", T("\\y.y")))
    assert r.status == "holds"


def test_lemma8_named_shape():
    c = parse_lm("['a]w", "command")
    assert check_subst_lemmas(8, (c, "a", T("u"))).status == "holds"


def test_lemma9_named_shape():
    c = parse_lm("['a]w", "command")
    assert check_subst_lemmas(9, (c, "a", T("u"))).status == "holds"


def test_lemma10_renaming():
    assert check_subst_lemmas(10, (T("mu 'd.['a]x"), "a", "b")).status == "holds"


def test_lemma11_cut_shape():
    c = parse_lmm("<x|y*mt z.<z|'a>>", "command")
    assert check_subst_lemmas(11, (c, "x", parse_lmm("\\w.w"))).status == "holds"


def test_lemma12_covariable():
    c = parse_lmm("<x|'a>", "command")
    r = check_subst_lemmas(12, (c, "a", parse_lmm("mt z.<z|'b>", "context")))
    assert r.status == "holds"


# simulations

def test_dag_position_tracks_application():
    t = T("(\\x.x) ((\\y.y) z)")
    pos = dag_position(t, (1,))
    node = lmm.subterm_at(dag(t), pos)
    assert lmm.alpha_eq(node, dag(T("(\\y.y) z")))


def test_circ_position_tracks_cons_head():
    c = parse_lmm("<f | (mu 'a.<x|'a>)*y*'b>", "command")
    pos = circ_position(c, (1, 0))
    assert lm.alpha_eq(lm.subterm_at(circ(c), pos), T("mu 'a.['a]x"))


def test_thm4_beta():
    r = check_thm4(T("(\\x.x) y"))
    assert r.status == "holds" and replays(r)
    assert rules_of(r.witness[0]) == ["mu-tilde", "beta", "mu-tilde", "theta"]


def test_thm4_mu_case():
    r = check_thm4(T("(mu 'a.['a]x) y"))
    assert r.status == "holds" and replays(r)
    forms = {p["rule"]: p["form"] for p in r.notes["parts"]}
    assert forms["mu"] in ("direct", "join")


def test_thm4_rho_case_single_mu():
    r = check_thm4(parse_lm("['b]mu 'a.['a]x", "command"))
    rho = r.notes["parts"][0]
    assert rho["rule"] == "rho" and rho["form"] == "direct"
    assert rules_of(r.witness[0]) == ["mu"]


def test_thm4_cbn_skips_mu_prime():
    r = check_thm4(T("x (mu 'a.['c]y)"), "cbn")
    assert r.status == "holds" and r.notes["parts"] == []


def test_thm5_beta_prime_single_beta():
    r = check_thm5(parse_lmm("<\\x.u|v*'e>", "command"))
    assert r.status == "holds"
    full, lin = r.witness
    assert rules_of(full) + rules_of(lin) == ["beta"]


def test_thm5_mu_case():
    r = check_thm5(parse_lmm("<mu 'a.<x|'c> | y*'b>", "command"))
    assert r.status == "holds" and replays(r)


def test_thm5_tilde_mu_case():
    r = check_thm5(parse_lmm("<t | mt x.<x|x*'a>>", "command"))
    assert r.status == "holds"
    full, lin = r.witness
    assert rules_of(full) + rules_of(lin) == ["beta", "rho"]
    assert all(s.linear for s, _ in lin.steps)


def test_thm5_ignores_plain_beta():
    r = check_thm5(parse_lmm("<\\x.x|y*'a>", "command"))
    assert [p["rule"] for p in r.notes["parts"]] == ["beta-prime"]


@settings(max_examples=40, deadline=None)
@given(subjects("lm", "term", 9))
def test_thm4_witnesses_replay(t):
    r = check_thm4(t)
    assert r.status == "holds" and replays(r)


@settings(max_examples=40, deadline=None)
@given(subjects("lmm", "command", 9, fragment="Q"))
def test_thm5_cbv_linear_segment_points_to_target(c):
    r = check_thm5(c, "cbv")
    assert r.status == "holds" and replays(r)
    for full, lin in zip(r.witness[0::2], r.witness[1::2]):
        assert full.end is lin.start or key(full.end) == key(lin.start)
        assert all(s.linear for s, _ in lin.steps)


# reports

def test_nonconfluence():
    r = check_nonconfluence()
    assert r.status == "holds"
    assert sorted(r.notes["normal_forms"]) == sorted(["<x | y*mt x.<z|x*'b>>", "<z | mu 'a.<x|y*'a>*'b>"])


def test_report_json_key_set():
    d = json.loads(check_thm1(T("x y")).to_json())
    assert list(d) == ["name", "status", "bound_used", "subject", "witness"]
    assert d["witness"][0] == {"rule": "start", "linear": True, "term": "mu 'b1.['k0](\\y1.mu 'd1.['b1]x y1) y"}
    assert {tuple(w) for w in d["witness"]} == {("rule", "linear", "term")}


def test_suite_reports_deterministic():
    a = [r.to_json() for r in run_suite("thm4", count=5, size=8, seed=3)]
    b = [r.to_json() for r in run_suite("thm4", count=5, size=8, seed=3)]
    assert a == b


def test_suite_rejects_stray_strategy():
    with pytest.raises(ValueError):
        run_suite("thm1", 1, 5, 0, "cbn")
