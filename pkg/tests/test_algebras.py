import random

import pytest
from hypothesis import given, settings, strategies as st

from gqs.algebras import (
    DEFAULT_FORM,
    FamilyTag,
    InvalidParameters,
    build,
    build_orthosymplectic,
    closure_failures,
    find_omega_signs,
    form_variants,
    make_tag,
    omega,
)
from gqs.cases import _explicit_B, build_caos, catalog
from gqs.grading import grade_by_toral
from gqs.superlinalg import Subspace, superbracket


def osp_dim(M, n):
    return M * (M - 1) // 2 + n * (2 * n + 1) + 2 * M * n


def oracle_dim(tag):
    if tag.family == "A":
        return (tag.m + tag.n + 2) ** 2 - 1
    M = {"B": 2 * tag.m + 1, "D": 2 * tag.m, "C": 2}[tag.family]
    n = tag.n - 1 if tag.family == "C" else tag.n
    return osp_dim(M, n)


TAGS = [
    FamilyTag("A", 0, 1),
    FamilyTag("A", 1, 0),
    FamilyTag("A", 1, 2),
    FamilyTag("A", 2, 0),
    FamilyTag("B", 0, 1),
    FamilyTag("B", 0, 2),
    FamilyTag("B", 1, 1),
    FamilyTag("B", 2, 0),
    FamilyTag("B", 1, 2),
    FamilyTag("D", 2, 1),
    FamilyTag.C(2),
    FamilyTag.C(3),
]


@pytest.fixture(scope="module", params=TAGS, ids=lambda t: t.label)
def alg(request):
    return build(request.param)


def test_dimension(alg):
    assert alg.dim == oracle_dim(alg.tag)
    assert len(alg.roots) + alg.rank == alg.dim


def test_rank(alg):
    t = alg.tag
    expected = {"A": t.m + t.n + 1, "B": t.m + t.n, "D": t.m + t.n, "C": t.n}[t.family]
    assert alg.rank == expected


def test_closed_under_bracket(alg):
    assert closure_failures(alg) == []


def test_root_vectors_are_weight_vectors(alg):
    for r in alg.roots:
        for h in alg.cartan.basis:
            j, k = r.matrix.support()[0]
            assert superbracket(h, r.matrix) == r.matrix.scale(h[(j, j)] - h[(k, k)])


def test_omega_is_involution(alg):
    for b in alg.basis.basis:
        assert omega(alg, omega(alg, b)) == b


def test_omega_maps_root_spaces_to_opposite(alg):
    for r in alg.roots:
        neg = tuple(-w for w in r.weight)
        assert omega(alg, r.matrix) in _root_space(alg, neg)


def _root_space(alg, weight):
    return Subspace.span(alg.context, [alg.root(weight).matrix])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_omega_super_antimorphism(seed):
    rng = random.Random(seed)
    a = build(rng.choice(TAGS))
    x, y = rng.choice(a.roots).matrix, rng.choice(a.roots).matrix
    sign = -1 if x.degree() and y.degree() else 1
    assert omega(a, superbracket(x, y)) == superbracket(omega(a, x), omega(a, y)).scale(-sign)


def test_b01_roots():
    a = build(FamilyTag("B", 0, 1))
    assert sorted(r.weight for r in a.roots) == [(-2,), (-1,), (1,), (2,)]
    assert {r.weight: r.parity for r in a.roots} == {(-2,): 0, (-1,): 1, (1,): 1, (2,): 0}


@pytest.mark.parametrize(
    "family,m,n",
    [("A", 1, 1), ("B", 0, 0), ("D", 1, 1), ("D", 2, 0), ("C", 0, 1), ("X", 1, 1), ("B", -1, 2)],
)
def test_invalid_parameters(family, m, n):
    with pytest.raises(InvalidParameters):
        make_tag(family, m, n)


def test_b0_alias():
    assert make_tag("B0", 0, 3) == FamilyTag("B", 0, 3)
    with pytest.raises(InvalidParameters):
        make_tag("B0", 1, 3)


@pytest.mark.parametrize("tag", [FamilyTag("B", 1, 1), FamilyTag("B", 0, 2), FamilyTag("B", 2, 1)], ids=str)
def test_form_variant_is_first_passing(tag):
    """The default form is the first variant under which the explicit B-type CAOs are members."""
    spec = next(s for s in catalog(tag) if s.explicit)
    passing = []
    for v in form_variants():
        a = build_orthosymplectic(tag, v)
        pairs = _explicit_B(spec, a.context)[0]
        passing.append(all(a.contains(p) and a.contains(q) for p, q in pairs))
    assert passing.index(True) == form_variants().index(DEFAULT_FORM)


# signs found by brute-force search over all +-1 diagonals
OMEGA_SIGNS = {
    FamilyTag("B", 1, 1): (1, 1, 1, -1, 1),
    FamilyTag("B", 0, 2): (1, -1, -1, 1, 1),
    FamilyTag("B", 2, 1): (1, 1, 1, 1, 1, -1, 1),
    FamilyTag("B", 1, 2): (1, 1, 1, -1, -1, 1, 1),
    FamilyTag("A", 1, 2): (1, 1, 1, 1, 1),
}


@pytest.mark.parametrize("tag", list(OMEGA_SIGNS), ids=str)
def test_omega_signs_frozen(tag):
    a = build(tag)
    pairs = [p for s in catalog(tag) if s.explicit for p in build_caos(s, a).pairs]
    assert a.omega_sign == OMEGA_SIGNS[tag]
    assert find_omega_signs(a, pairs) == OMEGA_SIGNS[tag]


def test_toral_lands_in_cartan():
    a = build(FamilyTag("A", 1, 2))
    h = a.toral([0, 1, 2, 0, 1])
    assert h.supertrace() == 0
    assert a.cartan.contains(h)


def test_centered_sl_only_on_request():
    with pytest.raises(InvalidParameters):
        make_tag("A", 1, 1)
    a = build(make_tag("A", 1, 1, allow_center=True))
    assert a.dim == 15 and a.rank == 3
    # the grading element is a gl diagonal that normalizes sl(2|2)
    g = grade_by_toral(a, (0, 1, 1, 1))
    assert (g.length, g.N) == (3, 3)
