"""The generalized Kummer pipeline: signed-diagonal affine involutions on T^n,
group generation, fixed-locus census, invariant cohomology of the quotient,
orbit bookkeeping for singular tori, and resolution Betti arithmetic.

An affine map is x -> S x + c with S a +-1 diagonal and c taken mod 1.  The
induced action on H^*(T^n) forgets the shift: dx_i -> s_i dx_i, so invariant
cohomology is computed by the averaging projector over monomial k-forms.
Resolution of disjoint codimension-4 A1 loci adds, per singular component,
the Betti vector of its base torus shifted up by the fiber class degree 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .cdga import Element, Presentation
from .errors import DimensionMismatch, IdentityElement, NonClosing, NotInvolution
from .linalg import RatMatrix


def _mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x // 1)


@dataclass(frozen=True)
class AffineMap:
    """x -> signs * x + shifts on T^n, shifts normalized to [0, 1)."""

    signs: tuple[int, ...]
    shifts: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.signs) != len(self.shifts):
            raise DimensionMismatch("signs and shifts have different lengths")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")
        object.__setattr__(self, "shifts", tuple(_mod1(c) for c in self.shifts))

    @property
    def n(self) -> int:
        return len(self.signs)

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls((1,) * n, (Fraction(0),) * n)

    def is_identity(self) -> bool:
        return all(s == 1 for s in self.signs) and all(c == 0 for c in self.shifts)

    def apply(self, point) -> tuple[Fraction, ...]:
        return tuple(_mod1(s * Fraction(x) + c) for s, x, c in zip(self.signs, point, self.shifts))


def compose(g: AffineMap, h: AffineMap) -> AffineMap:
    """g after h: (S_g, c_g) o (S_h, c_h) = (S_g S_h, S_g c_h + c_g)."""
    if g.n != h.n:
        raise DimensionMismatch(f"torus dimensions {g.n} != {h.n}")
    signs = tuple(a * b for a, b in zip(g.signs, h.signs))
    shifts = tuple(_mod1(a * c + d) for a, c, d in zip(g.signs, h.shifts, g.shifts))
    return AffineMap(signs, shifts)


@dataclass
class ActionGroup:
    """Finite group of signed-diagonal affine maps with named generators."""

    n: int
    generators: dict[str, AffineMap]
    elements: list[tuple[str, AffineMap]]  # (reduced word, map); identity first

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_words(self) -> list[str]:
        return [w for w, _ in self.elements]

    def maps(self) -> list[AffineMap]:
        return [g for _, g in self.elements]


def generate_group(generators: dict[str, AffineMap], max_order: int = 1024) -> ActionGroup:
    """Breadth-first closure of the named generators under composition."""
    gens = dict(generators)
    ns = {g.n for g in gens.values()}
    if len(ns) > 1:
        raise DimensionMismatch("generators act on tori of different dimensions")
    n = ns.pop() if ns else 0
    for name, g in gens.items():
        if not compose(g, g).is_identity():
            raise NotInvolution(f"generator {name!r} does not square to the identity")
    names = sorted(gens)
    ident = AffineMap.identity(n)
    elements: list[tuple[str, AffineMap]] = [("e", ident)]
    seen = {ident}
    frontier = [("e", ident)]
    while frontier:
        new_frontier = []
        for word, g in frontier:
            for name in names:
                h = compose(g, gens[name])
                if h not in seen:
                    seen.add(h)
                    nw = name if word == "e" else f"{word}*{name}"
                    elements.append((nw, h))
                    new_frontier.append((nw, h))
                    if len(elements) > max_order:
                        raise NonClosing(f"group closure exceeded {max_order} elements")
        frontier = new_frontier
    return ActionGroup(n=n, generators=gens, elements=elements)


FixedComponent = tuple[tuple[int, Fraction], ...]  # ((coordinate, value), ...)


@dataclass
class FixedLocus:
    """Fixed-point data of one non-identity element."""

    element: AffineMap
    free: bool
    component_dim: int
    components: tuple[FixedComponent, ...]

    @property
    def component_count(self) -> int:
        return len(self.components)


def fixed_locus(g: AffineMap) -> FixedLocus:
    """Census of Fix(g): sign +1 coordinates must have shift 0 (else free);
    each sign -1 coordinate contributes the two solutions of 2x = c mod 1."""
    if g.is_identity():
        raise IdentityElement("the identity fixes everything")
    plus = [i for i, s in enumerate(g.signs) if s == 1]
    minus = [i for i, s in enumerate(g.signs) if s == -1]
    if any(g.shifts[i] != 0 for i in plus):
        return FixedLocus(element=g, free=True, component_dim=len(plus), components=())
    value_choices = []
    for i in minus:
        half = g.shifts[i] / 2
        value_choices.append([(i, _mod1(half)), (i, _mod1(half + Fraction(1, 2)))])
    components = tuple(tuple(choice) for choice in itertools.product(*value_choices))
    return FixedLocus(element=g, free=False, component_dim=len(plus), components=components)


def action_on_forms(g: AffineMap) -> tuple[int, ...]:
    """Pullback on the 1-form generators dx_i: the diagonal of signs."""
    return g.signs


def _monomial_sign(signs: tuple[int, ...], subset: tuple[int, ...]) -> int:
    out = 1
    for i in subset:
        out *= signs[i]
    return out


def _k_subsets(n: int, k: int):
    return list(itertools.combinations(range(n), k))


def averaging_projector(group: ActionGroup, k: int) -> RatMatrix:
    """(1/|G|) sum_g of the action on the degree-k monomial basis of forms."""
    subsets = _k_subsets(group.n, k)
    m = RatMatrix(len(subsets), len(subsets))
    weight = Fraction(1, group.order)
    for j, sub in enumerate(subsets):
        total = sum(_monomial_sign(g.signs, sub) for g in group.maps())
        m[j, j] = weight * total
    return m


@dataclass(frozen=True)
class BettiVector:
    values: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.values))


def invariant_betti(group: ActionGroup) -> BettiVector:
    """Betti numbers of T^n / G: ranks of the averaging projector per degree."""
    values = []
    for k in range(group.n + 1):
        proj = averaging_projector(group, k)
        # diagonal projector: rank = number of unit diagonal entries
        values.append(sum(1 for v in proj.entries.values() if v == 1))
    return BettiVector(tuple(values))


def torus_presentation(n: int) -> Presentation:
    """The exterior algebra on dx_1..dx_n with zero differential."""
    return Presentation([(f"dx{i}", 1) for i in range(1, n + 1)], name=f"t{n}")


def invariant_basis(group: ActionGroup, k: int, algebra: Presentation | None = None) -> list[Element]:
    """Monomial basis of the G-invariant degree-k forms."""
    alg = algebra if algebra is not None else torus_presentation(group.n)
    out = []
    for sub in _k_subsets(group.n, k):
        if all(_monomial_sign(g.signs, sub) == 1 for g in group.maps()):
            mono = tuple((i, 1) for i in sub)
            out.append(alg.element({mono: Fraction(1)}))
    return out


@dataclass
class OrbitPartition:
    orbits: list[list[FixedComponent]]

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]


def _act_on_component(g: AffineMap, comp: FixedComponent) -> FixedComponent:
    return tuple((i, _mod1(g.signs[i] * v + g.shifts[i])) for i, v in comp)


def orbit_partition(group: ActionGroup, locus: FixedLocus) -> OrbitPartition:
    """Partition the fixed components of one involution under the full group.

    Components are identified by their fixed coordinate values; for the
    signed-diagonal groups handled here conjugation preserves each
    involution, so the group permutes its components among themselves.
    """
    remaining = list(locus.components)
    orbits = []
    while remaining:
        seed = remaining[0]
        orbit = []
        for g in group.maps():
            image = _act_on_component(g, seed)
            if image not in orbit:
                orbit.append(image)
        orbits.append(sorted(orbit))
        remaining = [c for c in remaining if c not in orbit]
    return OrbitPartition(orbits=orbits)


@dataclass
class SingularCensus:
    """Per-involution fixed loci and orbit partitions, plus the total count
    of distinct singular components in the quotient."""

    loci: dict[str, FixedLocus]
    partitions: dict[str, OrbitPartition]
    free_words: list[str]

    @property
    def singular_component_count(self) -> int:
        return sum(p.orbit_count for p in self.partitions.values())


def singular_census(group: ActionGroup) -> SingularCensus:
    loci: dict[str, FixedLocus] = {}
    partitions: dict[str, OrbitPartition] = {}
    free_words: list[str] = []
    for word, g in group.elements:
        if g.is_identity():
            continue
        locus = fixed_locus(g)
        loci[word] = locus
        if locus.free:
            free_words.append(word)
        else:
            partitions[word] = orbit_partition(group, locus)
    return SingularCensus(loci=loci, partitions=partitions, free_words=free_words)


@dataclass
class ResolutionProfile:
    """Disjoint codimension-4 A1 singular components: (base_dim, fiber degree 2)."""

    singular_components: list[tuple[int, int]] = field(default_factory=list)

    @classmethod
    def from_base_dims(cls, base_dims) -> "ResolutionProfile":
        return cls(singular_components=[(d, 2) for d in base_dims])


def resolved_betti(orbifold: BettiVector, profile: ResolutionProfile) -> BettiVector:
    """Each component adds the Betti vector of its base torus shifted by the
    fiber class degree: b^k += sum over components of b^(k-2)(T^base)."""
    n = len(orbifold) - 1
    values = list(orbifold.values)
    for base_dim, fiber_deg in profile.singular_components:
        if base_dim + 4 != n:
            raise ValueError(f"component of base dim {base_dim} is not codimension 4 in dim {n}")
        for k in range(len(values)):
            j = k - fiber_deg
            if 0 <= j <= base_dim:
                values[k] += comb(base_dim, j)
    return BettiVector(tuple(values))


def joyce_generators() -> dict[str, AffineMap]:
    """The three involutions generating the Z2^3 action on T^7."""
    half = Fraction(1, 2)
    zero = Fraction(0)
    return {
        "alpha": AffineMap((-1, -1, -1, -1, 1, 1, 1), (zero,) * 7),
        "beta": AffineMap((-1, -1, 1, 1, -1, -1, 1), (zero, half, zero, zero, zero, zero, zero)),
        "gamma": AffineMap((-1, 1, -1, 1, -1, 1, -1), (half, zero, half, zero, zero, zero, zero)),
    }
