from fractions import Fraction

import pytest

from cdgalab import kummer
from cdgalab.errors import (
    DimensionMismatch,
    IdentityElement,
    NonClosing,
    NotInvolution,
)
from cdgalab.kummer import AffineMap, BettiVector, ResolutionProfile

HALF = Fraction(1, 2)


def test_affine_map_normalization_and_apply():
    g = AffineMap((1, -1), (Fraction(3, 2), Fraction(-1, 4)))
    assert g.shifts == (HALF, Fraction(3, 4))
    assert g.apply((0, 0)) == (HALF, Fraction(3, 4))
    assert AffineMap.identity(3).is_identity()
    with pytest.raises(DimensionMismatch):
        AffineMap((1, 1), (Fraction(0),))
    with pytest.raises(ValueError):
        AffineMap((2,), (Fraction(0),))


def test_compose():
    a = AffineMap((-1, 1), (Fraction(0), HALF))
    b = AffineMap((1, -1), (HALF, Fraction(0)))
    ab = kummer.compose(a, b)
    assert ab.signs == (-1, -1)
    # (S_a, c_a) after (S_b, c_b): S_a c_b + c_a
    assert ab.shifts == (HALF, HALF)
    with pytest.raises(DimensionMismatch):
        kummer.compose(a, AffineMap((1,), (Fraction(0),)))


def test_generate_group_joyce():
    grp = kummer.generate_group(kummer.joyce_generators())
    assert grp.order == 8
    assert grp.elements[0][0] == "e"
    words = set(grp.element_words())
    assert {"e", "alpha", "beta", "gamma"} <= words


def test_generate_group_rejects_non_involution():
    bad = {"s": AffineMap((1, 1), (Fraction(1, 3), Fraction(0)))}
    with pytest.raises(NotInvolution):
        kummer.generate_group(bad)


def test_generate_group_non_closing_guard():
    # a pair of involutions whose composition has infinite order cannot occur
    # for signed-diagonal maps with rational shifts of bounded denominator,
    # but the breadth-first closure still respects max_order
    gens = {"a": AffineMap((-1,), (Fraction(0),)), "b": AffineMap((-1,), (Fraction(1, 64),))}
    with pytest.raises(NonClosing):
        kummer.generate_group(gens, max_order=16)


def test_fixed_locus_counts():
    gens = kummer.joyce_generators()
    for g in gens.values():
        locus = kummer.fixed_locus(g)
        assert not locus.free
        assert locus.component_dim == 3
        assert locus.component_count == 16
    with pytest.raises(IdentityElement):
        kummer.fixed_locus(AffineMap.identity(3))


def test_free_elements():
    gens = kummer.joyce_generators()
    grp = kummer.generate_group(gens)
    census = kummer.singular_census(grp)
    assert sorted(census.free_words) == sorted(
        w for w, g in grp.elements
        if not g.is_identity() and kummer.fixed_locus(g).free
    )
    assert len(census.free_words) == 4
    assert len(census.partitions) == 3


def test_orbit_partition_and_singular_count():
    grp = kummer.generate_group(kummer.joyce_generators())
    census = kummer.singular_census(grp)
    for word, part in census.partitions.items():
        assert part.orbit_count == 4
        assert part.sizes() == [4, 4, 4, 4]
    assert census.singular_component_count == 12


def test_invariant_betti_joyce():
    grp = kummer.generate_group(kummer.joyce_generators())
    betti = kummer.invariant_betti(grp)
    assert tuple(betti) == (1, 0, 0, 7, 7, 0, 0, 1)
    assert betti.euler() == 0


def test_averaging_projector_diagonal_idempotent():
    grp = kummer.generate_group(kummer.joyce_generators())
    for k in (2, 3):
        proj = kummer.averaging_projector(grp, k)
        for (r, c), v in proj.entries.items():
            assert r == c
            assert v * v == v  # sign averages over a 2-group are 0 or 1


def test_invariant_basis_three_forms():
    grp = kummer.generate_group(kummer.joyce_generators())
    basis = kummer.invariant_basis(grp, 3)
    assert len(basis) == 7
    alg = basis[0].alg
    rendered = {alg.render_element(b) for b in basis}
    assert "dx2*dx4*dx6" in rendered


def test_k3_pipeline():
    sigma = AffineMap((-1,) * 4, (Fraction(0),) * 4)
    grp = kummer.generate_group({"sigma": sigma})
    assert grp.order == 2
    locus = kummer.fixed_locus(sigma)
    assert locus.component_count == 16 and locus.component_dim == 0
    census = kummer.singular_census(grp)
    assert census.partitions["sigma"].orbit_count == 16
    betti = kummer.invariant_betti(grp)
    assert tuple(betti) == (1, 0, 6, 0, 1)
    resolved = kummer.resolved_betti(betti, ResolutionProfile.from_base_dims([0] * 16))
    assert tuple(resolved) == (1, 0, 22, 0, 1)


def test_resolved_betti_joyce():
    grp = kummer.generate_group(kummer.joyce_generators())
    betti = kummer.invariant_betti(grp)
    profile = ResolutionProfile.from_base_dims([3] * 12)
    resolved = kummer.resolved_betti(betti, profile)
    assert tuple(resolved) == (1, 0, 12, 43, 43, 12, 0, 1)
    assert resolved.euler() == 0


def test_resolved_betti_codimension_guard():
    with pytest.raises(ValueError):
        kummer.resolved_betti(BettiVector((1, 0, 0, 1)), ResolutionProfile.from_base_dims([1]))


def test_shifted_fixed_locus_values():
    g = AffineMap((-1, 1), (HALF, Fraction(0)))
    locus = kummer.fixed_locus(g)
    values = sorted(v for comp in locus.components for _, v in comp)
    assert values == [Fraction(1, 4), Fraction(3, 4)]
    free = AffineMap((1, -1), (HALF, Fraction(0)))
    assert kummer.fixed_locus(free).free
