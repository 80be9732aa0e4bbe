import pytest

from gqs.algebras import FamilyTag, build
from gqs.cases import build_caos, find_case
from gqs.relations import (
    PINNED_PB_VARIANT,
    TEMPLATES,
    DomainMismatch,
    check_quadratic,
    compare_with_table,
    extract_triple_coefficients,
    verify_relations,
)


def caos_for(tag, case):
    return build_caos(find_case(tag, case), build(tag))


def para_bose(n):
    return caos_for(FamilyTag("B", 0, n), f"B0.table.i={n}")


@pytest.mark.parametrize("n", [1, 2])
def test_exactly_one_para_bose_variant_holds(n):
    caos = para_bose(n)
    verdicts = {v: verify_relations(caos, v).passed for v in ("R-PB-printed", "R-PB-swapped")}
    assert sum(verdicts.values()) == 1
    assert verdicts[PINNED_PB_VARIANT]
    assert TEMPLATES["R-PB"] is TEMPLATES[PINNED_PB_VARIANT]


def test_printed_variant_failure_is_reported():
    rep = verify_relations(para_bose(1), "R-PB-printed")
    assert rep.verdict == "fail"
    assert rep.as_dict()["n_failures"] == len(rep.failures) > 0


@pytest.mark.parametrize("n", [1, 2])
def test_oracle_agrees_with_pinned_variant(n):
    caos = para_bose(n)
    assert compare_with_table(caos, PINNED_PB_VARIANT) == []
    assert compare_with_table(caos, "R-PB-printed") != []


@pytest.mark.parametrize("m", [1, 2])
def test_para_fermi(m):
    caos = caos_for(FamilyTag("B", m, 0), f"B.table.k={m},l=0")
    assert verify_relations(caos, "R-PF").passed
    assert compare_with_table(caos, "R-PF") == []


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2)])
def test_mixed_statistics_and_subsets(m, n):
    caos = caos_for(FamilyTag("B", m, n), f"B.table.k={m},l={n}")
    assert verify_relations(caos, "R-MIX").passed
    bosons = [i for i, k in enumerate(caos.kinds) if k == 1]
    fermions = [i for i, k in enumerate(caos.kinds) if k == 0]
    assert verify_relations(caos.subset(bosons), "R-PB").passed
    assert verify_relations(caos.subset(fermions), "R-PF").passed


def test_mix_rejects_uniform_pf():
    caos = caos_for(FamilyTag("B", 1, 1), "B.table.k=1,l=1")
    with pytest.raises(DomainMismatch):
        verify_relations(caos, "R-PF")


@pytest.mark.parametrize(
    "tag,case,template",
    [
        (FamilyTag("A", 0, 1), "A.step1.i=1", "R-A1"),
        (FamilyTag("A", 2, 1), "A.step1.i=1", "R-A1"),
        (FamilyTag("A", 1, 2), "A.step1.i=2", "R-ADOUBLE"),
        (FamilyTag("A", 2, 1), "A.step1.i=2", "R-ADOUBLE"),
        (FamilyTag("A", 1, 2), "A.step2.i=1,j=2.A21", "R-A21R"),
        (FamilyTag("A", 1, 2), "A.step2.i=2,j=3.A21", "R-A21R"),
        (FamilyTag("A", 1, 2), "A.step2.i=3,j=4.A21", "R-A21R"),
    ],
)
def test_a_family_templates(tag, case, template):
    caos = caos_for(tag, case)
    rep = verify_relations(caos, template)
    assert rep.passed and rep.total > 0


def test_negative_control_pb_on_sl():
    """An sl-type CAO set is not para-Bose."""
    caos = caos_for(FamilyTag("A", 1, 0), "A.step1.i=1")
    assert not verify_relations(caos, "R-PB").passed


def test_quadratic_relations():
    assert check_quadratic(para_bose(2)).passed
    assert check_quadratic(caos_for(FamilyTag("A", 1, 2), "A.step1.i=2")).passed


def test_extractor_shape():
    caos = para_bose(1)
    table = extract_triple_coefficients(caos)
    assert len(table.entries) == 8
    assert table.entries[(0, 1, 0, 1, 0, 1)] == "zero(deg+3)"
    rows = table.rows()
    assert rows[0]["tuple"].startswith("[[[[x_1^")
