import pytest
from hypothesis import given, settings

from conftest import any_sort, subjects
from mumu import lm, parse_lm
from mumu.steps import StaleRedexError


def T(s):
    return parse_lm(s)


def C(s):
    return parse_lm(s, "command")


def E(s):
    return parse_lm(s, "context")


# free names and alpha-equivalence

def test_free_closed_term():
    assert lm.free(T("\\x.x")) == (frozenset(), frozenset())


def test_free_mu_binds_covariable():
    assert lm.free(T("mu 'a.['a]x")) == ({"x"}, set())


def test_free_of_application_context():
    assert lm.free(E("['b](y #)")) == ({"y"}, {"b"})


@pytest.mark.parametrize("a,b,expected", [
    ("\\x.x", "\\y.y", True),
    ("mu 'a.['a]x", "mu 'b.['b]x", True),
    ("\\x.\\y.x", "\\x.\\y.y", False),
    ("x", "y", False),
])
def test_alpha_eq(a, b, expected):
    assert lm.alpha_eq(T(a), T(b)) is expected


# plugging

def test_plug_covariable():
    assert lm.plug(lm.CoVar("a"), T("x")) == C("['a]x")


def test_plug_application_context():
    assert lm.plug(E("['b](u #)"), T("t")) == C("['b]u t")


def test_plug_argument_stack():
    assert lm.plug(E("['c]# @ u"), T("t")) == C("['c]t u")


# substitution

def test_subst_var_simple():
    assert lm.alpha_eq(lm.subst_var(T("x"), "x", T("\\y.y")), T("\\y.y"))


def test_subst_var_shadowed():
    assert lm.subst_var(T("\\x.x"), "x", T("u")) == T("\\x.x")


def test_subst_var_avoids_capture():
    out = lm.subst_var(T("\\y.x y"), "x", T("y"))
    assert lm.alpha_eq(out, T("\\z.y z"))
    assert "y" in lm.free(out)[0]


def test_subst_covar_argument_stack():
    out = lm.subst_covar(C("['a]x"), "a", lm.ArgStack(lm.CoVar("a"), T("y")))
    assert out == C("['a]x y")


def test_subst_covar_no_occurrence():
    assert lm.subst_covar(C("['b]x"), "a", E("['c]#")) == C("['b]x")


def test_subst_covar_renaming():
    out = lm.subst_covar(T("\\z.mu 'g.['a]z"), "a", lm.CoVar("b"))
    assert lm.alpha_eq(out, T("\\z.mu 'g.['b]z"))


def test_subst_covar_application_context_on_application_context_needs_covariable():
    with pytest.raises(ValueError):
        lm.subst_covar(E("['a](x #)"), "a", E("['b]# @ y"))


# redexes and strategies

def rules(s, strategy="free"):
    return sorted(r.rule for r in lm.redexes(s, strategy))


def test_beta_on_variable_is_linear():
    (r,) = lm.redexes(T("(\\x.x) y"))
    assert (r.rule, r.position, r.linear, r.result) == ("beta", (), True, T("y"))


def test_mu_prime_redex():
    r = next(r for r in lm.redexes(T("y (mu 'a.['a]x)")) if r.rule == "mu-prime")
    assert lm.alpha_eq(r.result, T("mu 'a.['a]y x"))


CRITICAL = "(\\x.x x) (mu 'b.['c]z)"


def test_critical_pair_free():
    assert rules(T(CRITICAL)) == ["beta", "mu-prime"]


def test_critical_pair_cbn():
    assert rules(T(CRITICAL), "cbn") == ["beta"]


def test_critical_pair_cbv():
    assert rules(T(CRITICAL), "cbv") == ["mu-prime"]


def test_cbv_os_restricts_mu_prime_to_value_functions():
    assert rules(T("(x y) (mu 'b.['c]z)"), "cbv-os") == []
    assert rules(T("x (mu 'b.['c]z)"), "cbv-os") == ["mu-prime"]


def test_duplicating_beta_is_not_linear():
    (r,) = lm.redexes(T("(\\x.x x) (y z)"))
    assert not r.linear


def test_step_rho():
    s = C("['b]mu 'a.['a]x")
    r = next(r for r in lm.redexes(s) if r.rule == "rho")
    assert lm.step(s, r) == C("['b]x")


def test_step_theta():
    (r,) = lm.redexes(T("mu 'd.['d]x"))
    assert r.rule == "theta" and r.result == T("x")


def test_step_mu():
    s = T("(mu 'a.['a]x) y")
    r = next(r for r in lm.redexes(s) if r.rule == "mu")
    assert lm.alpha_eq(lm.step(s, r), T("mu 'a.['a]x y"))


def test_theta_needs_covariable_absent():
    assert rules(T("mu 'd.['d]mu 'e.['d]x")) == ["rho"]


def test_stale_redex_rejected():
    r = lm.redexes(T("(\\x.x) y"))[0]
    with pytest.raises(StaleRedexError):
        lm.step(T("x"), r)


def test_unknown_strategy_rejected():
    with pytest.raises(ValueError):
        lm.redexes(T("x"), "lazy")


# reduce

@pytest.mark.parametrize("strategy", ["free", "cbn", "cbv", "cbv-os"])
def test_reduce_identity(strategy):
    tr = lm.reduce(T("(\\x.x) y"), strategy)
    assert len(tr) == 1 and tr.end == T("y") and tr.normal_form


def test_reduce_two_steps():
    tr = lm.reduce(T("mu 'd.['d]((\\x.x) y)"))
    assert len(tr) == 2 and tr.end == T("y")
    # leftmost-outermost fires the root theta before the inner beta
    assert [r.rule for r, _ in tr.steps] == ["theta", "beta"]


def test_reduce_normal_form():
    tr = lm.reduce(T("x"))
    assert len(tr) == 0 and tr.normal_form


def test_reduce_step_bound():
    omega = T("(\\x.x x) (\\x.x x)")
    tr = lm.reduce(omega, max_steps=5)
    assert len(tr) == 5 and tr.exhausted and not tr.normal_form


def test_all_paths_bfs_finds_shortest_normal_form():
    tr = lm.reduce(T("(\\x.y) ((\\x.x x) (\\x.x x))"), order="all-paths-bfs", max_steps=3)
    assert tr.normal_form and tr.end == T("y")


# properties

@settings(max_examples=150, deadline=None)
@given(any_sort("lm"))
def test_renaming_an_absent_name_keeps_alpha_class(x):
    assert lm.alpha_eq(x, lm.rename_var(x, "nope", "nope2"))
    assert lm.alpha_eq(x, lm.rename_covar(x, "nope", "nope2"))


@settings(max_examples=150, deadline=None)
@given(subjects("lm", "term"), subjects("lm", "term", 4))
def test_subst_var_free_variables(t, u):
    fv, _ = lm.free(t)
    out = lm.subst_var(t, "x", u)
    expected = (fv - {"x"}) | (lm.free(u)[0] if "x" in fv else frozenset())
    assert lm.free(out)[0] == expected


@settings(max_examples=150, deadline=None)
@given(subjects("lm", "term"))
def test_redex_results_are_replayable(t):
    for r in lm.redexes(t):
        assert lm.alpha_eq(lm.step(t, r), r.result)
