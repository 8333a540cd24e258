"""The intersection homology ring of the resolved T^7/Gamma orbifold and its
transport to a cup-product ring via Poincare duality.

Homology generators (112 labels): the point and fundamental classes, twelve
dim-2 cycles c_{delta,i}, forty-three dim-3 cycles (c_{delta,i,j}, t_delta,
t_i), and their primed duals in dims 4 and 5.  The nontrivial intersections
are:

    c_{di} . c'_{di} = -2 pt      c_{dij} . c'_{dij} = -2 pt
    t_k . t'_k = 8 pt             c'_{di} . c'_{di} = -2 t_d

with the fundamental class acting as the identity; every other basis pair is
zero and is flagged as chain-level disjoint.  The cup ring copies these
structure constants onto the Poincare duals (degree = 7 - dim), giving a
zero-differential graded ring with Betti vector (1,0,12,43,43,12,0,1).

Massey-triviality certificates follow the disjoint-representative argument:
when both pairwise intersections are empty at chain level, the bounding
manifolds U, V can be taken empty, so zero lies in the triple product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cdga import GradedAlgebra
from .linalg import RatMatrix

DELTAS = ("alpha", "beta", "gamma")
DELTA_SHORT = {"alpha": "a", "beta": "b", "gamma": "g"}

MANIFOLD_DIM = 7


@dataclass(frozen=True)
class GeneratorLabel:
    """A named homology generator of the resolved manifold."""

    kind: str  # c, c_prime, cij, cij_prime, t, t_prime, point, fundamental
    delta: str | None = None
    i: int | None = None
    j: int | None = None

    @property
    def dim(self) -> int:
        return {
            "point": 0,
            "c": 2,
            "cij": 3,
            "t": 3,
            "cij_prime": 4,
            "t_prime": 4,
            "c_prime": 5,
            "fundamental": 7,
        }[self.kind]

    @property
    def name(self) -> str:
        d = DELTA_SHORT.get(self.delta, self.delta)
        if self.kind == "point":
            return "pt"
        if self.kind == "fundamental":
            return "vol"
        if self.kind == "c":
            return f"c_{d}{self.i}"
        if self.kind == "c_prime":
            return f"cp_{d}{self.i}"
        if self.kind == "cij":
            return f"c_{d}{self.i}_{self.j}"
        if self.kind == "cij_prime":
            return f"cp_{d}{self.i}_{self.j}"
        if self.kind == "t":
            return f"t_{d}" if self.delta else f"t_{self.i}"
        if self.kind == "t_prime":
            return f"tp_{d}" if self.delta else f"tp_{self.i}"
        raise ValueError(self.kind)

    @property
    def dual_degree(self) -> int:
        return MANIFOLD_DIM - self.dim

    def __repr__(self):
        return f"Label({self.name})"


def all_labels() -> list[GeneratorLabel]:
    """The 112 homology generators in a fixed deterministic order."""
    labels = [GeneratorLabel("point")]
    labels += [GeneratorLabel("c", d, i) for d in DELTAS for i in range(1, 5)]
    labels += [GeneratorLabel("cij", d, i, j) for d in DELTAS for i in range(1, 5) for j in range(1, 4)]
    labels += [GeneratorLabel("t", d) for d in DELTAS]
    labels += [GeneratorLabel("t", None, i) for i in range(1, 5)]
    labels += [GeneratorLabel("cij_prime", d, i, j) for d in DELTAS for i in range(1, 5) for j in range(1, 4)]
    labels += [GeneratorLabel("t_prime", d) for d in DELTAS]
    labels += [GeneratorLabel("t_prime", None, i) for i in range(1, 5)]
    labels += [GeneratorLabel("c_prime", d, i) for d in DELTAS for i in range(1, 5)]
    labels.append(GeneratorLabel("fundamental"))
    return labels


Chain = dict[GeneratorLabel, Fraction]


@dataclass
class IntersectionTable:
    """All pairwise intersection products plus chain-level disjointness."""

    labels: list[GeneratorLabel]
    pairwise: dict[tuple[GeneratorLabel, GeneratorLabel], Chain]
    disjoint: dict[tuple[GeneratorLabel, GeneratorLabel], bool]

    def product(self, a: GeneratorLabel, b: GeneratorLabel) -> Chain:
        return self.pairwise[(a, b)]

    def is_disjoint(self, a: GeneratorLabel, b: GeneratorLabel) -> bool:
        return self.disjoint[(a, b)]


def build_table() -> IntersectionTable:
    labels = all_labels()
    point = labels[0]
    fundamental = labels[-1]
    by_name = {l.name: l for l in labels}
    pairwise: dict[tuple[GeneratorLabel, GeneratorLabel], Chain] = {}
    for a in labels:
        for b in labels:
            pairwise[(a, b)] = {}

    def put(a, b, chain: Chain):
        pairwise[(a, b)] = dict(chain)
        pairwise[(b, a)] = dict(chain)  # all listed pairs have even (n-k)(n-l)

    for lab in labels:
        pairwise[(fundamental, lab)] = {lab: Fraction(1)}
        pairwise[(lab, fundamental)] = {lab: Fraction(1)}
    for d in DELTAS:
        for i in range(1, 5):
            c = by_name[f"c_{DELTA_SHORT[d]}{i}"]
            cp = by_name[f"cp_{DELTA_SHORT[d]}{i}"]
            td = by_name[f"t_{DELTA_SHORT[d]}"]
            put(c, cp, {point: Fraction(-2)})
            put(cp, cp, {td: Fraction(-2)})
            for j in range(1, 4):
                cij = by_name[f"c_{DELTA_SHORT[d]}{i}_{j}"]
                cijp = by_name[f"cp_{DELTA_SHORT[d]}{i}_{j}"]
                put(cij, cijp, {point: Fraction(-2)})
        put(by_name[f"t_{DELTA_SHORT[d]}"], by_name[f"tp_{DELTA_SHORT[d]}"], {point: Fraction(8)})
    for i in range(1, 5):
        put(by_name[f"t_{i}"], by_name[f"tp_{i}"], {point: Fraction(8)})

    disjoint = {
        pair: (not chain) and pair[0].kind != "fundamental" and pair[1].kind != "fundamental"
        for pair, chain in pairwise.items()
    }
    return IntersectionTable(labels=labels, pairwise=pairwise, disjoint=disjoint)


class JoyceRing(GradedAlgebra):
    """The cohomology ring of the resolved manifold: Poincare duals of the
    homology generators with structure constants copied from the table and
    zero differential."""

    def __init__(self, table: IntersectionTable):
        super().__init__()
        self.table = table
        self._by_degree: dict[int, list[GeneratorLabel]] = {}
        for lab in table.labels:
            self._by_degree.setdefault(lab.dual_degree, []).append(lab)
        self._unit = next(l for l in table.labels if l.kind == "fundamental")

    def basis(self, k: int) -> list[GeneratorLabel]:
        return self._by_degree.get(k, [])

    def key_degree(self, key: GeneratorLabel) -> int:
        return key.dual_degree

    def unit_key(self) -> GeneratorLabel:
        return self._unit

    def mul_keys(self, k1: GeneratorLabel, k2: GeneratorLabel):
        return [(lab, c) for lab, c in self.table.product(k1, k2).items()]

    def diff_key(self, key: GeneratorLabel):
        return self.zero()

    def render_key(self, key: GeneratorLabel) -> str:
        return "1" if key.kind == "fundamental" else f"D{key.name}"

    def betti(self) -> tuple[int, ...]:
        return tuple(len(self.basis(k)) for k in range(MANIFOLD_DIM + 1))


def to_cohomology_ring(table: IntersectionTable | None = None) -> JoyceRing:
    return JoyceRing(table if table is not None else build_table())


def duality_report(ring: JoyceRing) -> list[dict]:
    """Per-degree rank of the pairing H^k x H^(7-k) -> H^7."""
    top = ring.basis(MANIFOLD_DIM)
    out = []
    for k in range(MANIFOLD_DIM + 1):
        rows = ring.basis(k)
        cols = ring.basis(MANIFOLD_DIM - k)
        m = RatMatrix(len(rows), len(cols))
        for a, ra in enumerate(rows):
            for b, cb in enumerate(cols):
                chain = ring.table.product(ra, cb)
                m[a, b] = chain.get(top[0], Fraction(0)) if top else Fraction(0)
        r = linalg.rank(m)
        out.append({
            "degree": k,
            "dim": len(rows),
            "rank": r,
            "nondegenerate": len(rows) == len(cols) and r == len(rows),
        })
    return out


def duality_check(ring: JoyceRing) -> bool:
    """For every k, the pairing H^k x H^(7-k) -> H^7 has full rank."""
    return all(row["nondegenerate"] for row in duality_report(ring))


def free_presentation(ring: JoyceRing | None = None):
    """The ring's generators as a free zero-differential presentation.

    The .cdga grammar cannot carry structure constants, so this export keeps
    only the generator names and degrees (the fundamental class becomes the
    unit and is dropped); products of distinct generators are free.  The full
    ring, products included, is available as JSON via the cli.
    """
    from .cdga import Presentation

    if ring is None:
        ring = to_cohomology_ring()
    gens = [(f"D{lab.name}", lab.dual_degree)
            for lab in ring.table.labels if lab.kind != "fundamental"]
    return Presentation(gens, name="joyce_ring")


@dataclass
class DisjointnessCertificate:
    """Zero belongs to the triple Massey product because both pairwise
    representative intersections are empty (U = V = S = empty)."""

    triple: tuple[GeneratorLabel, GeneratorLabel, GeneratorLabel]
    conclusion: str = "zero is contained in the intersection Massey product"
    justification: str = "both pairwise representative intersections are empty"


def intersection_massey_certificate(
    table: IntersectionTable,
    x: GeneratorLabel,
    y: GeneratorLabel,
    z: GeneratorLabel,
) -> DisjointnessCertificate | None:
    """Certificate that 0 lies in <Dx, Dy, Dz>, or None when the product is
    undefined (a pairwise cup is nonzero) or disjointness fails."""
    if table.product(x, y) or table.product(y, z):
        return None  # product undefined
    if table.is_disjoint(x, y) and table.is_disjoint(y, z):
        return DisjointnessCertificate(triple=(x, y, z))
    return None


@dataclass
class MasseyScanReport:
    total: int
    undefined: int
    certified: int
    uncertified: int


def massey_scan(table: IntersectionTable | None = None, restrict=None) -> MasseyScanReport:
    """Iterate ordered basis triples; count undefined vs certified-trivial."""
    if table is None:
        table = build_table()
    labels = list(restrict) if restrict is not None else table.labels
    nonzero = {}
    disjoint = {}
    for a in labels:
        for b in labels:
            nonzero[(a, b)] = bool(table.product(a, b))
            disjoint[(a, b)] = table.is_disjoint(a, b)
    undefined = certified = uncertified = 0
    for x in labels:
        for y in labels:
            if nonzero[(x, y)]:
                undefined += len(labels)
                continue
            dxy = disjoint[(x, y)]
            for z in labels:
                if nonzero[(y, z)]:
                    undefined += 1
                elif dxy and disjoint[(y, z)]:
                    certified += 1
                else:
                    uncertified += 1
    total = len(labels) ** 3
    return MasseyScanReport(total=total, undefined=undefined, certified=certified, uncertified=uncertified)
