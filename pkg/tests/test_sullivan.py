import pytest

from cdgalab import sullivan
from cdgalab.cdga import Presentation
from cdgalab.errors import DegreeTooSmall, NotSimplyConnected


def heisenberg():
    return Presentation(
        [("x", 1), ("y", 1), ("z", 1)],
        {"z": {((0, 1), (1, 1)): 1}},
        name="h",
    )


def s2_model():
    return Presentation([("a", 2), ("b", 3)], {"b": {((0, 2),): 1}}, name="s2")


def test_build_model_of_s2():
    stage = sullivan.build_minimal_model(s2_model(), 4)
    gens = [(g.name, g.degree) for g in stage.model.generators]
    assert gens == [("v2_0", 2), ("v3_0", 3)]
    db = stage.model.gen_diff("v3_0")
    assert stage.model.render_element(db) == "v2_0^2"
    stage.verify()


def test_build_model_rejects_non_simply_connected():
    with pytest.raises(NotSimplyConnected):
        sullivan.build_minimal_model(heisenberg(), 3)
    with pytest.raises(DegreeTooSmall):
        sullivan.build_minimal_model(s2_model(), 1)


def test_build_model_of_even_sphere_like_target():
    # target with H = Q[a]/(a^3), a in degree 2 (a CP^2-type ring)
    target = Presentation([("a", 2), ("b", 5)], {"b": {((0, 3),): 1}}, name="cp2")
    stage = sullivan.build_minimal_model(target, 5)
    degs = sorted(g.degree for g in stage.model.generators)
    assert degs == [2, 5]
    stage.verify()


def test_split_generators_heisenberg():
    stage = sullivan.minimal_stage_from_presentation(heisenberg())
    split = sullivan.split_generators(stage, 1)
    names, c, n = split.per_degree[1]
    assert names == ["x", "y", "z"]
    assert c.dim == 2 and n.dim == 1
    assert c.contains((1, 0, 0)) and c.contains((0, 1, 0))
    assert n.contains((0, 0, 1))


def test_split_generators_s2():
    stage = sullivan.build_minimal_model(s2_model(), 3)
    split = sullivan.split_generators(stage, 3)
    assert split.c_basis(2).dim == 1 and split.n_basis(2).dim == 0
    assert split.c_basis(3).dim == 0 and split.n_basis(3).dim == 1


def test_torus_is_formal():
    t2 = Presentation([("x", 1), ("y", 1)], name="t2")
    stage = sullivan.minimal_stage_from_presentation(t2)
    cert = sullivan.check_s_formality(stage, 1, 2)
    assert cert.status == sullivan.FORMAL_CERTIFIED


def test_heisenberg_non_formal_with_witness():
    stage = sullivan.minimal_stage_from_presentation(heisenberg())
    cert = sullivan.fm_formality_report(stage, 3, cutoff=3)
    assert cert.status == sullivan.NON_FORMAL_WITNESS
    assert cert.witness_kind == "ideal-element"
    w = cert.witness
    assert stage.model.render_element(w) == "x*z"
    assert stage.model.is_closed(w)
    assert not stage.model.is_exact(w)


def test_s2_formal_via_model():
    stage = sullivan.build_minimal_model(s2_model(), 3)
    cert = sullivan.check_s_formality(stage, 3, 6)
    assert cert.status == sullivan.FORMAL_CERTIFIED


def test_exact_in_full_model():
    stage = sullivan.build_minimal_model(s2_model(), 3)
    a2 = stage.model.gen("v2_0")
    # a^2 is closed and non-exact in the truncated stage but bounds in the
    # full model (the target already kills it)
    assert stage.exact_in_full_model(a2 * a2)
    assert not stage.exact_in_full_model(a2)


def test_fm_dimension_to_s():
    assert sullivan.fm_dimension_to_s(7) == 3
    assert sullivan.fm_dimension_to_s(8) == 3
    assert sullivan.fm_dimension_to_s(6) == 2
    assert sullivan.fm_dimension_to_s(4) == 1
    assert sullivan.fm_dimension_to_s(3) == 1
    assert sullivan.fm_dimension_to_s(2) == 0
    with pytest.raises(DegreeTooSmall):
        sullivan.fm_dimension_to_s(1)


def test_fm_report_vacuous_dimension():
    stage = sullivan.build_minimal_model(s2_model(), 2)
    cert = sullivan.fm_formality_report(stage, 2, 4)
    assert cert.status == sullivan.FORMAL_CERTIFIED
    assert "vacuous" in cert.note


def test_check_s_formality_argument_guards():
    stage = sullivan.minimal_stage_from_presentation(heisenberg())
    with pytest.raises(DegreeTooSmall):
        sullivan.check_s_formality(stage, 5, 6)
    with pytest.raises(DegreeTooSmall):
        sullivan.check_s_formality(stage, 1, 0)


def test_quasi_map_is_chain_map():
    target = Presentation([("a", 2), ("b", 5)], {"b": {((0, 3),): 1}}, name="cp2")
    stage = sullivan.build_minimal_model(target, 6)
    for g in stage.model.generators:
        lhs = stage.target.differential(stage.quasi_map[g.name])
        rhs = stage.map_element(stage.model.gen_diff(g.name))
        assert lhs == rhs
