"""Triple Massey products with indeterminacy, and higher products via the
Maurer-Cartan matrix equation.

The triple product follows the classical recipe: with representatives X, Y, Z
of classes of degrees k, l, m and X·Y = dU, Y·Z = dV, the coset representative
is X·V + (-1)^(k+1) U·Z, defined modulo x∪H^(l+m-1) + H^(k+l-1)∪z.

Higher products use a strictly upper triangular (n+1)x(n+1) matrix A with
d(A_ij) = sum_k conj(A_ik)·A_kj off the bands and [A_(k,k+1)] equal to the
input classes; the product representative is read off at the (1, n+1) corner.
With our deterministic solves the n = 3 corner equals (-1)^(d1+d2) times the
direct triple representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cdga import CohClass, Element, GradedAlgebra
from .errors import UndefinedProduct
from .linalg import SubspaceBasis


@dataclass
class MasseyCoset:
    """Representative-plus-indeterminacy description of a triple product."""

    degree: int
    representative: tuple  # class coordinates in H^degree
    indeterminacy: SubspaceBasis
    defined: bool

    @classmethod
    def undefined(cls) -> "MasseyCoset":
        return cls(degree=-1, representative=(), indeterminacy=SubspaceBasis(0), defined=False)


@dataclass
class DefiningSystem:
    """Entries (i, j) -> Element for 1 <= i < j <= n+1, excluding (1, n+1)."""

    n: int
    entries: dict[tuple[int, int], Element]

    def corner_value(self) -> Element:
        alg = next(iter(self.entries.values())).alg
        top = self.n + 1
        out = alg.zero()
        for k in range(2, top):
            out = out + self.entries[(1, k)].conjugate() * self.entries[(k, top)]
        return out


def triple_massey(alg: GradedAlgebra, x: CohClass, y: CohClass, z: CohClass,
                  with_indeterminacy: bool = True) -> MasseyCoset:
    """The triple Massey product <x, y, z>, undefined unless x∪y = y∪z = 0."""
    k, l, m = x.degree, y.degree, z.degree
    if not alg.cup(x, y).is_zero() or not alg.cup(y, z).is_zero():
        return MasseyCoset.undefined()
    X = x.representative()
    Y = y.representative()
    Z = z.representative()
    U = alg.solve_d(X * Y)
    V = alg.solve_d(Y * Z)
    sign = Fraction(-1) if (k + 1) % 2 else Fraction(1)
    C = X * V + (U * Z).scale(sign)
    deg = k + l + m - 1
    coh = alg.cohomology(deg)
    rep = coh.coords(C) if C else linalg.zero_vec(coh.dim)
    if with_indeterminacy:
        indet_vectors = []
        for h in alg.cohomology(l + m - 1).class_reps:
            indet_vectors.append(coh.coords(X * h))
        for h in alg.cohomology(k + l - 1).class_reps:
            indet_vectors.append(coh.coords(h * Z))
        indet = linalg.span_basis(coh.dim, indet_vectors)
    else:
        indet = SubspaceBasis(coh.dim)
    return MasseyCoset(degree=deg, representative=tuple(rep), indeterminacy=indet, defined=True)


def is_trivial(c: MasseyCoset) -> bool:
    """True iff the coset contains zero: representative in the indeterminacy."""
    if not c.defined:
        raise UndefinedProduct("triviality of an undefined product")
    return linalg.membership(c.representative, c.indeterminacy)


def mc_defining_system(alg: GradedAlgebra, classes) -> DefiningSystem | None:
    """Band-by-band construction of a defining system, or None when some
    lower product obstructs (an entry equation has no solution)."""
    classes = list(classes)
    n = len(classes)
    if n < 3:
        raise ValueError("Massey products need at least three classes")
    entries: dict[tuple[int, int], Element] = {}
    for i, cls in enumerate(classes, start=1):
        entries[(i, i + 1)] = cls.representative()
    for gap in range(2, n + 1):
        for i in range(1, n + 2 - gap):
            j = i + gap
            if (i, j) == (1, n + 1):
                continue
            rhs = alg.zero()
            for k in range(i + 1, j):
                rhs = rhs + entries[(i, k)].conjugate() * entries[(k, j)]
            u = alg.solve_d(rhs)
            if u is None:
                return None
            entries[(i, j)] = u
    return DefiningSystem(n=n, entries=entries)


def mc_massey(alg: GradedAlgebra, classes) -> tuple[CohClass, DefiningSystem] | None:
    """Higher Massey product via the corner of a defining system."""
    classes = list(classes)
    system = mc_defining_system(alg, classes)
    if system is None:
        return None
    corner = system.corner_value()
    if not alg.is_closed(corner):
        raise AssertionError("defining-system corner is not closed")
    degree = sum(c.degree for c in classes) - (len(classes) - 2)
    coh = alg.cohomology(degree)
    if corner.is_zero():
        cls = coh.class_from_coords(linalg.zero_vec(coh.dim))
    else:
        cls = coh.class_of(corner)
    return cls, system
