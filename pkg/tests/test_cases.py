import re
from fractions import Fraction

import pytest

from gqs.algebras import FamilyTag, build, omega
from gqs.cases import UnknownCase, build_caos, catalog, expected_counts, find_case
from gqs.superlinalg import Subspace


def table_formula(spec):
    """(length, N) read off the classification tables, keyed by case id."""
    t = spec.tag
    m, n = t.m, t.n
    nums = dict((k, int(v)) for k, v in re.findall(r"(\w)=(\d+)", spec.id))
    if spec.id.startswith("B0."):
        i = nums["i"]
        return 5, i * (2 * n - 2 * i + 1)
    if spec.id.startswith("B."):
        k, l = nums["k"], nums["l"]
        if (k, l) == (1, 0):
            return 3, 2 * m + 2 * n - 1
        return 5, (k + l) * (2 * m - 2 * k + 2 * n - 2 * l + 1)
    if spec.id.startswith("D."):
        k, l = nums["k"], nums["l"]
        quad = (m + n) * (m + n + 1) // 2 - m
        if (k, l) == (1, 0):
            return 3, 2 * (m + n - 1)
        if (k, l) == (m, n):
            return 3, quad
        if spec.id.endswith(".quad"):
            return 5, quad
        if spec.id.endswith(".lin"):
            return 5, 2 * (m + n - 1)
        return 5, 2 * (k + l) * (m + n - k - l)
    if spec.id.startswith("C."):
        k, l = nums["k"], nums["l"]
        quad = n * (n + 1) // 2 - 1
        if (k, l) == (1, 0):
            return 3, 2 * (n - 1)
        if (k, l) == (1, n - 1):
            return 3, quad
        if spec.id.endswith(".quad"):
            return 5, quad
        if spec.id.endswith(".lin"):
            return 5, 2 * (n - 1)
        return 5, 2 * (k + l) * (n - k - l)
    M = m + n + 2
    i, j = nums["i"], nums.get("j")
    if ".step1." in spec.id:
        return 3, i * (M - i)
    if ".step2." in spec.id:
        return 5, {"A21": (j - i) * (M - j + i), "A22": i * (M - i), "A23": j * (M - j)}[spec.id[-3:]]
    return None


def brute_counts(alg, spec):
    degs = [sum(w * c for w, c in zip(r.weight, spec.grading_coords)) for r in alg.roots]
    return (5 if 2 in degs else 3), degs.count(-1)


TAGS = [
    FamilyTag("A", 0, 1),
    FamilyTag("A", 1, 2),
    FamilyTag("A", 3, 0),
    FamilyTag("B", 1, 1),
    FamilyTag("B", 2, 1),
    FamilyTag("B", 0, 3),
    FamilyTag("B", 3, 0),
    FamilyTag("D", 2, 1),
    FamilyTag("D", 3, 2),
    FamilyTag.C(3),
    FamilyTag.C(4),
]


@pytest.mark.parametrize("tag", TAGS, ids=str)
def test_expected_counts_match_tables_and_weights(tag):
    alg = build(tag)
    for spec in catalog(tag):
        formula = table_formula(spec)
        if formula is not None:
            assert expected_counts(spec) == formula, spec.id
        assert expected_counts(spec) == brute_counts(alg, spec), spec.id


def test_row_counts():
    assert len(catalog(FamilyTag("B", 1, 1))) == 3
    assert len(catalog(FamilyTag("B", 0, 4))) == 4
    assert len(catalog(FamilyTag("D", 3, 1))) == 8
    assert len(catalog(FamilyTag.C(4))) == 8
    # step1 + 3 step2 per pair + step5 per pair + 3 step6 per triple, M = 4
    assert len(catalog(FamilyTag("A", 2, 0))) == 3 + 9 + 3 + 3


def test_half_integer_coordinates_for_sl_rows():
    spec = find_case(FamilyTag("D", 3, 1), "D.table.k=3,l=1")
    assert all(c == Fraction(-1, 2) for c in spec.grading_coords)


def test_case_ids_unique():
    for tag in TAGS:
        ids = [s.id for s in catalog(tag)]
        assert len(ids) == len(set(ids))


def test_unknown_case():
    with pytest.raises(UnknownCase):
        find_case(FamilyTag("B", 1, 1), "B.table.k=9,l=9")


@pytest.mark.parametrize(
    "tag,case",
    [
        (FamilyTag("B", 0, 2), "B0.table.i=2"),
        (FamilyTag("B", 2, 1), "B.table.k=2,l=1"),
        (FamilyTag("A", 1, 2), "A.step1.i=1"),
        (FamilyTag("A", 1, 2), "A.step1.i=2"),
        (FamilyTag("A", 1, 2), "A.step2.i=2,j=3.A21"),
        (FamilyTag("D", 2, 1), "D.table.k=1,l=1.quad"),
        (FamilyTag.C(3), "C.table.k=0,l=2.quad"),
    ],
)
def test_caos_span_and_pair_under_omega(tag, case):
    alg = build(tag)
    caos = build_caos(find_case(tag, case), alg)
    g = caos.grading
    assert caos.N == g.N
    for s in (1, -1):
        assert Subspace.span(alg.context, [caos.op(i, s) for i in range(caos.N)]).same_span(g.component(s))
    for i in range(caos.N):
        assert omega(alg, caos.plus(i)) == caos.minus(i)


def test_g0_labels_drop_trivial_parts():
    labels = {s.id: s.g0_label for s in catalog(FamilyTag("B", 0, 2))}
    assert labels == {"B0.table.i=1": "B(0|1)", "B0.table.i=2": "sl(2)"}
