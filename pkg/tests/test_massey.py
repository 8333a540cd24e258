from fractions import Fraction

import pytest

from cdgalab import massey
from cdgalab.cdga import Presentation
from cdgalab.errors import UndefinedProduct


def heisenberg():
    return Presentation(
        [("x", 1), ("y", 1), ("z", 1)],
        {"z": {((0, 1), (1, 1)): 1}},
        name="h",
    )


def torus(n):
    return Presentation([(f"e{i}", 1) for i in range(n)], name=f"t{n}")


def classes(alg, *names):
    out = []
    for nm in names:
        el = alg.gen(nm)
        out.append(alg.cohomology(1).class_of(el))
    return out


def test_heisenberg_triple_nontrivial():
    h = heisenberg()
    cx, cx2, cy = classes(h, "x", "x", "y")
    coset = massey.triple_massey(h, cx, cx2, cy)
    assert coset.defined
    assert coset.degree == 2
    rep = h.cohomology(2).rep_element(coset.representative)
    assert h.render_element(rep) == "x*z"
    assert coset.indeterminacy.dim == 0
    assert not massey.is_trivial(coset)


def test_triple_undefined_on_torus():
    t = torus(3)
    c0, c1, c2 = classes(t, "e0", "e1", "e2")
    coset = massey.triple_massey(t, c0, c1, c2)
    assert not coset.defined
    with pytest.raises(UndefinedProduct):
        massey.is_trivial(coset)


def test_triple_trivial_when_cups_vanish_on_torus():
    t = torus(3)
    (c0,) = classes(t, "e0")
    coset = massey.triple_massey(t, c0, c0, c0)
    assert coset.defined
    assert massey.is_trivial(coset)


def test_indeterminacy_subspace():
    # <x, x, x> in Heisenberg: x.H^1 consists of exact forms (x^2 = 0 and
    # [x*y] = 0), so both representative and indeterminacy vanish
    h = heisenberg()
    (cx,) = classes(h, "x")
    coset = massey.triple_massey(h, cx, cx, cx)
    assert coset.defined
    assert not any(coset.representative)
    assert coset.indeterminacy.dim == 0
    assert massey.is_trivial(coset)
    # on a torus the indeterminacy is visibly nonzero: <e0, e0, e0> has
    # indeterminacy e0.H^1 of dimension 1 (only e0*e1 survives, twice)
    t = torus(2)
    (c0,) = classes(t, "e0")
    tcoset = massey.triple_massey(t, c0, c0, c0)
    assert tcoset.defined
    assert tcoset.indeterminacy.dim == 1


def test_without_indeterminacy_flag():
    h = heisenberg()
    cx, cy = classes(h, "x", "y")
    coset = massey.triple_massey(h, cx, cx, cy, with_indeterminacy=False)
    assert coset.defined and coset.indeterminacy.dim == 0


def test_mc_triple_matches_direct_sign():
    h = heisenberg()
    cx, cx2, cy = classes(h, "x", "x", "y")
    out = massey.mc_massey(h, [cx, cx2, cy])
    assert out is not None
    cls, system = out
    direct = massey.triple_massey(h, cx, cx2, cy)
    sign = Fraction(-1) if (cx.degree + cx2.degree) % 2 else Fraction(1)
    assert tuple(c * sign for c in cls.coords) == direct.representative
    assert system.n == 3
    assert h.is_closed(system.corner_value())


def test_mc_quadruple_obstructed():
    # <x, x, x, y>: the inner triple <x, x, y> is nontrivial, so the entry
    # A_25 would need a primitive for a non-exact cocycle
    h = heisenberg()
    cx, cy = classes(h, "x", "y")
    assert massey.mc_defining_system(h, [cx, cx, cx, cy]) is None
    assert massey.mc_massey(h, [cx, cx, cx, cy]) is None


def test_mc_quadruple_on_torus():
    t = torus(2)
    (c0,) = classes(t, "e0")
    out = massey.mc_massey(t, [c0, c0, c0, c0])
    assert out is not None
    cls, system = out
    assert cls.is_zero()
    assert system.corner_value().is_zero()


def test_mc_needs_three_classes():
    h = heisenberg()
    cx, cy = classes(h, "x", "y")
    with pytest.raises(ValueError):
        massey.mc_massey(h, [cx, cy])
