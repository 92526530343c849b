import pytest
from hypothesis import given, settings

from conftest import subjects
from mumu import lm, lmm, parse_lm, parse_lmm
from mumu.simple_types import (
    Arrow,
    CutRuleError,
    Sequent,
    TVar,
    Untypable,
    check_sequent,
    cut_sequent,
    infer,
    parse_sequent,
    parse_type,
    subsumes,
)


def test_identity_type():
    s = infer(parse_lm("\\x.x"))
    assert s.render() == "|- _ : X0->X0 |"


def test_peirce():
    t = parse_lm("\\y.mu 'a.['a](y (\\x.mu 'd.['a]x))")
    s = infer(t)
    assert str(s.type) == "((X0->X1)->X0)->X0"
    assert s.gamma == {} and s.delta == {}


def test_named_variable_command():
    assert infer(parse_lm("['a]x", "command")).render("['a]x") == "['a]x : (x:X0 |- 'a:X0)"


def test_cut_with_cons():
    s = infer(parse_lmm("<x|y*'a>", "command"))
    assert s.render() == "_ : (x:X0->X1, y:X0 |- 'a:X1)"


def test_tilde_mu_context():
    assert infer(parse_lmm("mt x.<x|'a>", "context")).render() == "| _ : X0 |- 'a:X0"


def test_lmm_identity():
    assert str(infer(parse_lmm("\\x.x")).type) == "X0->X0"


def test_self_application_untypable():
    with pytest.raises(Untypable):
        infer(parse_lm("\\x.x x"))


def test_vacuous_discharge_allowed():
    assert str(infer(parse_lm("\\x.y")).type) == "X1->X0"


def test_check_sequent_instance():
    t = parse_lm("\\x.x")
    assert check_sequent(t, parse_sequent("|- _ : (A->B)->A->B |", "term"))


def test_check_sequent_rejects_non_instance():
    assert not check_sequent(parse_lm("\\x.x"), parse_sequent("|- _ : A->B |", "term"))


def test_check_sequent_lmm_axiom():
    assert check_sequent(parse_lmm("<x|'a>", "command"), parse_sequent("_ : (x:A |- 'a:A)", "command"))


def test_check_sequent_admits_weakening():
    claimed = parse_sequent("_ : (x:A, z:C |- 'a:A, 'b:B)", "command")
    assert check_sequent(parse_lmm("<x|'a>", "command"), claimed)


def test_parse_type_right_associative():
    assert parse_type("A->B->C") == Arrow(TVar("A"), Arrow(TVar("B"), TVar("C")))
    assert str(parse_type("(A->B)->C")) == "(A->B)->C"


def test_sequent_text_round_trip():
    for text, form in [("x:X0, y:X0->X1 |- _ : X1 | 'a:X2", "term"),
                       ("_ : (x:X0 |- 'a:X0)", "command"),
                       ("y:X1 | _ : X0 |- 'a:X0", "context")]:
        assert parse_sequent(text, form).render() == text


# derived cut rule

def test_cut_with_covariable():
    s = cut_sequent(parse_lm("x"), parse_lm("['a]#", "context"))
    assert s.render("['a]x") == "['a]x : (x:X0 |- 'a:X0)"


def test_cut_with_application_context():
    s = cut_sequent(parse_lm("x"), parse_lm("['b](u #)", "context"))
    assert s.render() == "_ : (u:X0->X1, x:X0 |- 'b:X1)"


def test_cut_with_argument_stack():
    s = cut_sequent(parse_lm("\\x.x"), parse_lm("['g]# @ y", "context"))
    assert s.render() == "_ : (y:X0 |- 'g:X0)"


def test_cut_type_clash():
    # x is both the plugged term and the function of the context: X = X -> Y
    with pytest.raises(CutRuleError):
        cut_sequent(parse_lm("x"), parse_lm("['a](x #)", "context"))


# properties

def _domains_match(x, kernel):
    s = infer(x)
    fv, fcv = kernel.free(x)
    return set(s.gamma) == set(fv) and set(s.delta) == set(fcv)


@settings(max_examples=150, deadline=None)
@given(subjects("lm", "term", typable_only=True))
def test_principal_domains_are_free_names_lm(t):
    assert _domains_match(t, lm)


@settings(max_examples=150, deadline=None)
@given(subjects("lmm", "command", typable_only=True))
def test_principal_domains_are_free_names_lmm(c):
    assert _domains_match(c, lmm)


@settings(max_examples=150, deadline=None)
@given(subjects("lm", "term", typable_only=True))
def test_principal_subsumes_itself(t):
    s = infer(t)
    assert subsumes(s, s)


def test_subsumes_requires_same_form():
    assert not subsumes(Sequent("term", type=TVar("A")), Sequent("context", type=TVar("A")))
