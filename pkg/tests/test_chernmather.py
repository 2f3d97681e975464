from fractions import Fraction

import pytest

from kclan.chernmather import (
    LocalizedClass, chern_factor, chern_mather, check_expansion, evaluate_pushforward,
    expand_localized, fundamental_class, identity_check, pushforward_chern,
    pushforward_fundamental, random_points, verify_conjecture,
)
from kclan.clan import parse_clan
from kclan.exactalg import LinearForm, Poly, RationalFunction
from kclan.resolution import (
    ZFixedPoint, all_specs, alternative_presentation, build_spec, noncompact_subsets,
    z_fixed_points,
)
from kclan.schubert import SchubertExpansion
from kclan.weyl import Permutation, length, parse_permutation

C = parse_clan
a1 = Poly.var(1, 1)


@pytest.fixture(scope="module")
def spec2():
    return build_spec(C("(+-)"), {1})


@pytest.fixture(scope="module")
def spec4():
    return build_spec(C("(1122)"), {2})


def test_chern_factors(spec2):
    e, s1 = Permutation.identity(2), Permutation.simple(1, 2)
    f = LinearForm([1])
    x = chern_factor(spec2, ZFixedPoint(e, e, e))
    assert x == RationalFunction(Poly.linear([-1], 1), {f: 1}) * RationalFunction(Poly.const(-1, 1))
    y = chern_factor(spec2, ZFixedPoint(e, e, s1))
    assert y == RationalFunction(a1 + 1, {f: 1})
    assert (x + y).is_polynomial() == Poly.const(2, 1)


def test_micro_example(spec2):
    res = chern_mather(spec2)
    e, s1 = Permutation.identity(2), Permutation.simple(1, 2)
    assert res.expansion.coeffs == {e: Poly.const(2, 1), s1: a1 + 1}
    assert res.positivity.verdict
    assert res.small


def test_routes_agree(spec4):
    loc = pushforward_chern(spec4)
    assert expand_localized(loc, "basis") == expand_localized(loc, "restriction")


def test_fundamental_class(spec4):
    f = fundamental_class(spec4)
    P = parse_permutation
    assert f.coeffs == {P("3421"): Poly.const(1, 3), P("4312"): Poly.const(1, 3),
                        P("4321"): Poly.linear([1, 1, 1])}


def test_localized_json(spec4):
    loc = pushforward_chern(spec4)
    assert LocalizedClass.from_json(loc.to_json(), 4) == loc


def test_threads_match(spec4):
    assert pushforward_chern(spec4, threads=2) == pushforward_chern(spec4)


def test_identity_check_detects_errors(spec4):
    res = chern_mather(spec4)
    assert identity_check(res.localized, res.expansion, seed=7)
    bad = dict(res.expansion.coeffs)
    w0 = Permutation.longest(4)
    bad[w0] = bad[w0] + Poly.const(1, 3)
    assert not identity_check(res.localized, SchubertExpansion(bad, 4), seed=7)


def test_injected_negative_coefficient():
    exp = SchubertExpansion({Permutation.identity(2): a1 - 3}, 2)
    rep = check_expansion(exp)
    assert not rep.verdict
    assert rep.witnesses == [(Permutation.identity(2), (0,), -3)]
    assert rep.to_json()["verdict"] == "FAIL"


def test_numeric_route_matches_symbolic(spec4):
    loc = pushforward_chern(spec4)
    for pt in random_points(4, 2, seed=3):
        num = evaluate_pushforward(spec4, pt)
        for y, b in loc.items():
            assert Fraction(b.evaluate(pt)) == num[y]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_invariants_small_n(n):
    for s in all_specs(n):
        res = chern_mather(s)
        exp = res.expansion
        # both routes give the same polynomial coefficients
        assert expand_localized(res.localized, "basis") == exp
        # every term c_w [Y_w] lives in homological degrees 0..dim Z
        for w, c in exp.items():
            assert length(w) - s.dim <= c.min_degree() <= c.degree() <= length(w)
        # alpha -> 0: integer coefficients, the point coefficient is chi(Z)
        limit = exp.nonequivariant()
        assert limit.get(Permutation.identity(n), 0) == len(z_fixed_points(s))
        # top degree is the fundamental class of the birational image
        top = {w: c for w, c in limit.items() if length(w) == s.dim}
        assert top == fundamental_class(s).nonequivariant()
        assert any(c == 1 for c in top.values())
        assert verify_conjecture(s).verdict


@pytest.mark.parametrize("n", [2, 3, 4])
def test_presentation_invariance(n):
    for s in all_specs(n):
        base = pushforward_chern(s)
        for N in noncompact_subsets(s):
            if N:
                assert pushforward_chern(alternative_presentation(s, N).spec) == base
