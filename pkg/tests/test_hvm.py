import random
from fractions import Fraction as F

import pytest
from conftest import as_table, enumerate_context

from hvmforge.errors import ResponseUndefined, SchemaError, StructureMismatch, ValidationError
from hvmforge.hvm import (
    CiHvm,
    FcHvm,
    GeneralHvm,
    NcHvm,
    RhoHvm,
    XiHvm,
    ci_to_fc,
    embed_nc,
    fc_to_ci,
    fc_to_general,
    general_to_fc,
    models,
    parse_hvm,
    realize,
    realize_all,
    realized_system,
    rho_to_nc,
    serialize_hvm,
    xi_to_general,
)
from hvmforge.prob import Assignment, Dist, JointDist, comonotone_coupling, product_coupling
from hvmforge.sampling import random_hvm
from hvmforge.systems import Context, cyclic4, is_consistently_connected

TWO = {"c": ("q1", "q2")}
A = Assignment


def same_realizations(m1, m2):
    return realize_all(m1) == realize_all(m2)


# -- realize ----------------------------------------------------------------------

def test_realize_deterministic_nc():
    m = NcHvm(TWO, Dist.point("l0"), {("q1", "l0"): "+1", ("q2", "l0"): "+1"})
    assert realize(m, "c") == Dist.point(A(q1="+1", q2="+1"))
    assert realize(m, Context("other", ("q2",))) == Dist.point(A(q2="+1"))


def test_realize_ci():
    m = CiHvm(TWO, {"c": Dist.uniform("ab")},
              {("q1", "a"): "+1", ("q1", "b"): "-1", ("q2", "a"): "+1", ("q2", "b"): "+1"})
    assert realize(m, "c") == Dist({A(q1="+1", q2="+1"): F(1, 2), A(q1="-1", q2="+1"): F(1, 2)})


def test_realize_pr_box_fc(prbox, prbox_fc):
    for c in prbox.contexts:
        # enumerate the two hidden values directly
        expected = {}
        for lam in ("+1", "-1"):
            row = tuple(prbox_fc.response[(q, c.id, lam)] for q in c.properties)
            expected[row] = expected.get(row, 0) + F(1, 2)
        assert as_table(realize(prbox_fc, c.id)) == expected
    assert as_table(realize(prbox_fc, "c4")) == {("-1", "+1"): F(1, 2), ("+1", "-1"): F(1, 2)}


def test_realize_response_undefined():
    m = FcHvm(TWO, Dist.uniform("ab"), {("q1", "c", "a"): "x", ("q2", "c", "a"): "y"})
    with pytest.raises(ResponseUndefined):
        realize(m, "c")


def test_realize_unknown_context():
    m = FcHvm(TWO, Dist.point("a"), {("q1", "c", "a"): "x", ("q2", "c", "a"): "y"})
    with pytest.raises(StructureMismatch):
        realize(m, "nope")


# -- models -----------------------------------------------------------------------

def test_models_pr_box(prbox, prbox_fc):
    assert models(prbox_fc, prbox)


def test_models_point_mass_misses_branch():
    pt = A(q1="+1", q2="+1", q3="+1", q4="+1")
    m = NcHvm(cyclic4(1, 1, 1, 1).structure, Dist.point(pt), {(q, pt): "+1" for q in pt})
    assert as_table(realize(m, "c1")) == {("+1", "+1"): 1}
    assert not models(m, cyclic4(1, 1, 1, 1))


def test_models_structure_mismatch(prbox_fc):
    s = realized_system(NcHvm(TWO, Dist.point("l"), {("q1", "l"): "a", ("q2", "l"): "b"}))
    with pytest.raises(StructureMismatch):
        models(prbox_fc, s)


@pytest.mark.parametrize("form", ["general", "ci", "fc", "nc", "xi", "rho"])
def test_models_own_realization(form):
    rng = random.Random(form)
    for _ in range(20):
        m = random_hvm(rng, form)
        assert models(m, realized_system(m))
        for cid in m.contexts:
            assert as_table(realize(m, cid)) == enumerate_context(m, cid)


# -- transformations: spec examples -------------------------------------------------

def test_ci_to_fc_point_masses():
    ctx = {"c1": ("q",), "c2": ("q",)}
    m = CiHvm(ctx, {"c1": Dist.point("a"), "c2": Dist.point("b")}, {("q", "a"): "x", ("q", "b"): "y"})
    fc = ci_to_fc(m)
    lam = A(c1="a", c2="b")
    assert fc.hidden == Dist.point(lam)
    assert fc.response[("q", "c1", lam)] == "x"
    assert fc.response[("q", "c2", lam)] == "y"
    assert same_realizations(fc, m)


def test_fc_to_ci_pr_box(prbox, prbox_fc):
    ci = fc_to_ci(prbox_fc)
    assert ci.hidden["c4"] == Dist.uniform([A(q4="-1", q1="+1"), A(q4="+1", q1="-1")])
    for a in ci.hidden["c4"]:
        for q in a:
            assert ci.response[(q, a)] == a[q]
    assert models(ci, prbox)
    assert models(ci_to_fc(ci), prbox)


def test_fc_to_ci_supports_are_exact_assignments(rng):
    for _ in range(30):
        m = random_hvm(rng, "fc")
        ci = fc_to_ci(m)
        for cid, qs in m.contexts.items():
            assert all(set(a) == set(qs) for a in ci.hidden[cid])


def test_fc_to_ci_context_free_gamma():
    ctx = {"c1": ("q1", "q2"), "c2": ("q2",)}
    gamma = {"a": {"q1": "+", "q2": "-"}, "b": {"q1": "-", "q2": "-"}}
    m = FcHvm(ctx, Dist({"a": F(1, 3), "b": F(2, 3)}),
              {(q, c, lam): gamma[lam][q] for c, qs in ctx.items() for q in qs for lam in "ab"})
    ci = fc_to_ci(m)
    assert same_realizations(ci, m)
    assert ci.hidden["c2"] == Dist.point(A(q2="-"))


def test_fc_to_ci_point_mass():
    m = FcHvm(TWO, Dist.point("z"), {("q1", "c", "z"): "u", ("q2", "c", "z"): "v"})
    assert fc_to_ci(m).hidden["c"] == Dist.point(A(q1="u", q2="v"))


def test_ci_to_fc_identical_hidden(rng):
    for _ in range(30):
        m = random_hvm(rng, "ci")
        mu = next(iter(m.hidden.values()))
        same = CiHvm(m.contexts, {c: mu for c in m.contexts}, m.response)
        assert same_realizations(ci_to_fc(same), same)


def test_general_to_fc_single_context():
    m = GeneralHvm(TWO, {"c": Dist.uniform("ab")},
                   {("q1", "c", "a"): "0", ("q1", "c", "b"): "1", ("q2", "c", "a"): "1", ("q2", "c", "b"): "1"})
    fc = general_to_fc(m)
    for lam in "ab":
        for q in ("q1", "q2"):
            assert fc.response[(q, "c", A(c=lam))] == m.response[(q, "c", lam)]
    assert same_realizations(fc, m)


def test_general_to_fc_context_dependent_alpha():
    ctx = {"c1": ("q",), "c2": ("q",)}
    mu = Dist({"a": F(1, 4), "b": F(3, 4)})
    m = GeneralHvm(ctx, {"c1": mu, "c2": mu},
                   {("q", "c1", "a"): "x", ("q", "c1", "b"): "y", ("q", "c2", "a"): "y", ("q", "c2", "b"): "x"})
    fc = general_to_fc(m)
    assert realize(fc, "c1") == Dist({A(q="x"): F(1, 4), A(q="y"): F(3, 4)})
    assert realize(fc, "c2") == Dist({A(q="y"): F(1, 4), A(q="x"): F(3, 4)})


def test_general_to_fc_point_masses():
    ctx = {"c1": ("q",), "c2": ("q",), "c3": ("q",)}
    m = GeneralHvm(ctx, {c: Dist.point(f"h{c}") for c in ctx}, {("q", c, f"h{c}"): c for c in ctx})
    assert general_to_fc(m).hidden == Dist.point(A(c1="hc1", c2="hc2", c3="hc3"))


def test_fc_to_general(prbox, prbox_fc, classical):
    g = fc_to_general(prbox_fc)
    assert models(g, prbox)
    assert g.hidden["c3"] == prbox_fc.hidden
    assert models(fc_to_general(embed_nc(classical, "fc")), cyclic4(1, 1, 1, 1))


def test_xi_to_general_product_of_points():
    m = XiHvm(TWO, {"c": JointDist(("q1", "q2"), {A(q1="a", q2="x"): 1})},
              {("q1", "c", "a"): "+1", ("q2", "c", "x"): "-1"})
    assert realize(xi_to_general(m), "c") == Dist.point(A(q1="+1", q2="-1"))


def _xi_correlated():
    joint = JointDist(("q1", "q2"), {A(q1="a", q2="x"): F(1, 2), A(q1="b", q2="y"): F(1, 2)})
    table = {("q1", "c", "a"): "+1", ("q1", "c", "b"): "-1", ("q2", "c", "x"): "+1", ("q2", "c", "y"): "-1"}
    return XiHvm(TWO, {"c": joint}, table)


def test_xi_to_general_correlated():
    g = xi_to_general(_xi_correlated())
    assert as_table(realize(g, "c")) == {("+1", "+1"): F(1, 2), ("-1", "-1"): F(1, 2)}


def test_rho_to_nc_examples():
    pt = A(q1="a", q2="x")
    m = RhoHvm(TWO, JointDist(("q1", "q2"), {pt: 1}), {("q1", "a"): "0", ("q2", "x"): "1"})
    nc = rho_to_nc(m)
    assert nc.hidden == Dist.point(pt) and nc.response == {("q1", pt): "0", ("q2", pt): "1"}

    joint = JointDist(("q1", "q2"), {A(q1="a", q2="x"): F(1, 2), A(q1="b", q2="y"): F(1, 2)})
    table = {("q1", "a"): "+1", ("q1", "b"): "-1", ("q2", "x"): "+1", ("q2", "y"): "-1"}
    nc = rho_to_nc(RhoHvm({"c": ("q1", "q2"), "d": ("q2", "q1")}, joint, table))
    for cid in ("c", "d"):
        assert {tuple(sorted(k)) for k in as_table(realize(nc, cid))} == {("+1", "+1"), ("-1", "-1")}


def test_rho_to_nc_always_consistent(rng):
    for _ in range(40):
        nc = rho_to_nc(random_hvm(rng, "rho"))
        assert is_consistently_connected(realized_system(nc)).consistent


@pytest.mark.parametrize("target", ["fc", "ci", "general"])
def test_embed_nc(target, classical):
    m = embed_nc(classical, target)
    assert m.form == target
    assert same_realizations(m, classical)
    assert models(m, cyclic4(1, 1, 1, 1))


def test_embed_nc_rejects_other_targets(classical):
    with pytest.raises(ValueError):
        embed_nc(classical, "xi")


# -- invariants -------------------------------------------------------------------

ARROWS = [
    ("ci", lambda m: ci_to_fc(m)),
    ("ci", lambda m: ci_to_fc(m, comonotone_coupling)),
    ("fc", fc_to_ci),
    ("general", lambda m: general_to_fc(m)),
    ("fc", fc_to_general),
    ("xi", xi_to_general),
    ("rho", rho_to_nc),
    ("nc", lambda m: embed_nc(m, "fc")),
    ("nc", lambda m: embed_nc(m, "ci")),
    ("nc", lambda m: embed_nc(m, "general")),
]


@pytest.mark.parametrize("form,arrow", ARROWS)
def test_transformations_preserve_realizations(form, arrow):
    rng = random.Random(f"theorem-{form}")
    for _ in range(60):
        m = random_hvm(rng, form)
        out = arrow(m)
        for cid in m.contexts:
            assert as_table(realize(out, cid)) == enumerate_context(m, cid)


def test_round_trip_ci_fc_ci(rng):
    for _ in range(40):
        m = random_hvm(rng, "ci")
        assert same_realizations(fc_to_ci(ci_to_fc(m)), m)


def test_coupling_strategy_independence(rng):
    for _ in range(40):
        m = random_hvm(rng, "ci")
        assert same_realizations(ci_to_fc(m, product_coupling), ci_to_fc(m, comonotone_coupling))


@pytest.mark.parametrize("form", ["general", "ci", "fc", "nc"])
def test_relabeling_invariance(form):
    rng = random.Random(f"relabel-{form}")
    for _ in range(20):
        m = random_hvm(rng, form)
        rename = lambda lam: f"renamed-{lam}"  # noqa: E731
        if m.per_context:
            hidden = {c: Dist((rename(x), p) for x, p in d.items()) for c, d in m.hidden.items()}
        else:
            hidden = Dist((rename(x), p) for x, p in m.hidden.items())
        table = {k[:-1] + (rename(k[-1]),): v for k, v in m.response.items()}
        assert same_realizations(type(m)(m.contexts, hidden, table), m)


# -- validation and serialization ----------------------------------------------------

def test_per_context_hidden_must_match_contexts():
    with pytest.raises(ValidationError):
        CiHvm(TWO, {"other": Dist.point("a")}, {})


def test_xi_and_rho_key_checks():
    with pytest.raises(ValidationError):
        XiHvm(TWO, {"c": JointDist(("q1",), {A(q1="a"): 1})}, {})
    with pytest.raises(ValidationError):
        RhoHvm(TWO, JointDist(("q1",), {A(q1="a"): 1}), {})


@pytest.mark.parametrize("form", ["general", "ci", "fc", "nc", "xi", "rho"])
def test_hvm_round_trip(form):
    rng = random.Random(f"io-{form}")
    for _ in range(20):
        m = random_hvm(rng, form)
        text = serialize_hvm(m)
        back = parse_hvm(text)
        assert back == m
        assert serialize_hvm(back) == text


def test_hvm_round_trip_nested_points(prbox_fc):
    for m in (ci_to_fc(fc_to_ci(prbox_fc)), fc_to_ci(prbox_fc), _xi_correlated()):
        assert parse_hvm(serialize_hvm(m)) == m


def test_parse_hvm_errors():
    with pytest.raises(SchemaError):
        parse_hvm('{"form": "zeta", "contexts": [], "hidden": [], "response": []}')
    doc = ('{"form": "nc", "contexts": [{"id": "c", "properties": ["q"]}],'
           ' "hidden": [{"lambda": "a", "p": "1/2"}], "response": []}')
    with pytest.raises(ValidationError, match="sum"):
        parse_hvm(doc)
    doc = ('{"form": "ci", "contexts": [{"id": "c", "properties": ["q"]}],'
           ' "hidden": [{"lambda": "a", "p": "1"}], "response": []}')
    with pytest.raises(SchemaError, match="one distribution per context"):
        parse_hvm(doc)
    doc = ('{"form": "fc", "contexts": [{"id": "c", "properties": ["q"]}],'
           ' "hidden": [{"lambda": "a", "p": "1"}], "response": [{"q": "q", "lambda": "a", "outcome": "x"}]}')
    with pytest.raises(SchemaError, match="'c' is required"):
        parse_hvm(doc)
