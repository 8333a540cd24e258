"""Finite-type graded-commutative differential algebras over Q.

Two kinds of algebra share one element type and one cohomology engine:

* ``Presentation`` -- a free CDGA on named generators with a differential
  given on generators and extended by the signed Leibniz rule;
* any other subclass of ``GradedAlgebra`` with its own basis and product
  (the Joyce cohomology ring with zero differential lives in ``joyce``).

Monomials are stored as sorted tuples of (generator index, exponent); odd
generators square to zero and swaps contribute Koszul signs.  All per-degree
bases are deterministic, so every matrix and every chosen representative is
reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import NotClosed, NotHomogeneous, UnknownGenerator
from .linalg import EchelonSolver, RatMatrix, SubspaceBasis


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"generator {self.name!r} must have degree >= 1")


class Element:
    """A finite rational combination of basis keys of one algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        self.alg = alg
        self.terms: dict = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[k] = c

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check_same(self, other):
        if self.alg is not other.alg:
            raise UnknownGenerator("elements belong to different algebras")

    def __add__(self, other):
        self._check_same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            nv = out.get(k, Fraction(0)) + c
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return Element(self.alg, out)

    def __neg__(self):
        return Element(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Element":
        c = Fraction(c)
        if c == 0:
            return Element(self.alg)
        return Element(self.alg, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_same(other)
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                for k, c in self.alg.mul_keys(k1, k2):
                    nv = out.get(k, Fraction(0)) + c1 * c2 * c
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return Element(self.alg, out)

    def degrees(self) -> list[int]:
        return sorted({self.alg.key_degree(k) for k in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Degree of a homogeneous element (0 for the zero element)."""
        degs = self.degrees()
        if not degs:
            return 0
        if len(degs) > 1:
            raise NotHomogeneous(f"mixed degrees {degs}")
        return degs[0]

    def component(self, k: int) -> "Element":
        return Element(
            self.alg,
            {m: c for m, c in self.terms.items() if self.alg.key_degree(m) == k},
        )

    def conjugate(self) -> "Element":
        """Scale each degree-p component by (-1)^p."""
        return Element(
            self.alg,
            {
                k: (c if self.alg.key_degree(k) % 2 == 0 else -c)
                for k, c in self.terms.items()
            },
        )

    def d(self) -> "Element":
        return self.alg.differential(self)

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.alg is other.alg
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.alg), frozenset(self.terms.items())))

    def __repr__(self):
        return f"Element({self.alg.render_element(self)})"


class GradedAlgebra:
    """Shared machinery: elements, differential, cohomology, exactness."""

    def __init__(self):
        self._coh_cache: dict[int, CohomologySpace] = {}
        self._dmat_cache: dict[int, RatMatrix] = {}
        self._dsolver_cache: dict[int, EchelonSolver] = {}

    # -- interface a concrete algebra provides -------------------------------
    def basis(self, k: int) -> list:
        raise NotImplementedError

    def key_degree(self, key) -> int:
        raise NotImplementedError

    def mul_keys(self, k1, k2) -> list[tuple[object, Fraction]]:
        raise NotImplementedError

    def diff_key(self, key) -> "Element":
        raise NotImplementedError

    def render_key(self, key) -> str:
        raise NotImplementedError

    # -- elements ------------------------------------------------------------
    def zero(self) -> Element:
        return Element(self)

    def unit(self) -> Element:
        return Element(self, {self.unit_key(): Fraction(1)})

    def unit_key(self):
        raise NotImplementedError

    def element(self, terms) -> Element:
        return Element(self, terms)

    def differential(self, a: Element) -> Element:
        out = self.zero()
        for k, c in a.terms.items():
            out = out + self.diff_key(k).scale(c)
        return out

    def render_element(self, a: Element) -> str:
        if not a.terms:
            return "0"
        parts = []
        for key in sorted(a.terms, key=self._key_sort):
            c = a.terms[key]
            body = self.render_key(key)
            if body == "1":
                mag = str(abs(c))
            elif abs(c) == 1:
                mag = body
            else:
                mag = f"{abs(c)}*{body}"
            parts.append(("-" if c < 0 else "+", mag))
        sign, mag = parts[0]
        text = ("-" if sign == "-" else "") + mag
        for sign, mag in parts[1:]:
            text += f" {sign} {mag}"
        return text

    def _key_sort(self, key):
        return (self.key_degree(key), self.basis(self.key_degree(key)).index(key))

    # -- vector coordinates per degree --------------------------------------
    def to_vector(self, a: Element, k: int) -> linalg.Vector:
        basis = self.basis(k)
        index = self._basis_index(k)
        v = [Fraction(0)] * len(basis)
        for key, c in a.terms.items():
            if self.key_degree(key) != k:
                raise NotHomogeneous(f"term of degree {self.key_degree(key)} in degree-{k} vector")
            v[index[key]] = c
        return tuple(v)

    def from_vector(self, v, k: int) -> Element:
        basis = self.basis(k)
        return Element(self, {key: c for key, c in zip(basis, v) if c})

    def _basis_index(self, k: int) -> dict:
        cache = getattr(self, "_bidx_cache", None)
        if cache is None:
            cache = self._bidx_cache = {}
        if k not in cache:
            cache[k] = {key: i for i, key in enumerate(self.basis(k))}
        return cache[k]

    def d_matrix(self, k: int) -> RatMatrix:
        """Matrix of d from degree k to degree k+1 in the fixed bases."""
        if k not in self._dmat_cache:
            src = self.basis(k)
            dst_index = self._basis_index(k + 1)
            m = RatMatrix(len(dst_index), len(src))
            for j, key in enumerate(src):
                for dk, c in self.diff_key(key).terms.items():
                    m[dst_index[dk], j] = c
            self._dmat_cache[k] = m
        return self._dmat_cache[k]

    def d_solver(self, k: int) -> EchelonSolver:
        if k not in self._dsolver_cache:
            self._dsolver_cache[k] = EchelonSolver(self.d_matrix(k))
        return self._dsolver_cache[k]

    # -- cohomology ----------------------------------------------------------
    def cohomology(self, k: int) -> "CohomologySpace":
        if k not in self._coh_cache:
            self._coh_cache[k] = CohomologySpace(self, k)
        return self._coh_cache[k]

    def is_closed(self, a: Element) -> bool:
        return self.differential(a).is_zero()

    def is_exact(self, a: Element) -> bool:
        """True iff the closed homogeneous element a lies in im(d)."""
        if a.is_zero():
            return True
        k = a.degree()
        if not self.is_closed(a):
            raise NotClosed("element is not closed")
        if k == 0:
            return False
        return self.d_solver(k - 1).solve(self.to_vector(a, k)) is not None

    def solve_d(self, rhs: Element, degree: int | None = None):
        """Deterministic u with d(u) = rhs, or None if rhs is not exact.

        ``degree`` names the degree of rhs when rhs is zero (so the solver
        knows which degree u lives in); a zero rhs always yields u = 0.
        """
        if rhs.is_zero():
            return self.zero()
        k = rhs.degree()
        if k == 0:
            return None
        x = self.d_solver(k - 1).solve(self.to_vector(rhs, k))
        if x is None:
            return None
        return self.from_vector(x, k - 1)

    def cup(self, c1: "CohClass", c2: "CohClass") -> "CohClass":
        """Product of cohomology classes via chosen representatives."""
        prod = c1.representative() * c2.representative()
        return self.cohomology(c1.degree + c2.degree).class_of(prod)


class CohomologySpace:
    """ker(d_k)/im(d_{k-1}) with chosen cocycle representatives."""

    def __init__(self, alg: GradedAlgebra, k: int):
        self.alg = alg
        self.degree = k
        nk = len(alg.basis(k))
        kernel = linalg.kernel_basis(alg.d_matrix(k))
        if k == 0:
            image = SubspaceBasis(nk)
        else:
            image = linalg.image_basis(alg.d_matrix(k - 1))
        self.exact_basis = image
        ech = linalg._Echelon()
        for v in image.vectors:
            ech.insert(linalg._to_row(v))
        rep_vectors = []
        for v in kernel.vectors:
            if ech.insert(linalg._to_row(v)):
                rep_vectors.append(v)
        self.rep_vectors = rep_vectors
        self.class_reps = [alg.from_vector(v, k) for v in rep_vectors]
        cols = list(rep_vectors) + list(image.vectors)
        self._solver = EchelonSolver(linalg.RatMatrix.from_columns(cols, nk))

    @property
    def dim(self) -> int:
        return len(self.class_reps)

    def coords(self, a: Element) -> linalg.Vector:
        """Coordinates of the class of a cocycle in the chosen class basis."""
        if a.is_zero():
            return linalg.zero_vec(self.dim)
        if a.degree() != self.degree:
            raise NotHomogeneous(f"cocycle has degree {a.degree()}, space is degree {self.degree}")
        if not self.alg.is_closed(a):
            raise NotClosed("coords of a non-closed element")
        x = self._solver.solve(self.alg.to_vector(a, self.degree))
        if x is None:
            raise NotClosed("element outside ker(d) span")  # unreachable for cocycles
        return tuple(x[: self.dim])

    def class_of(self, a: Element) -> "CohClass":
        return CohClass(self.alg, self.degree, self.coords(a))

    def class_from_coords(self, coords) -> "CohClass":
        coords = linalg.vec(coords)
        if len(coords) != self.dim:
            raise ValueError("coordinate length mismatch")
        return CohClass(self.alg, self.degree, coords)

    def rep_element(self, coords) -> Element:
        out = self.alg.zero()
        for c, rep in zip(coords, self.class_reps):
            if c:
                out = out + rep.scale(c)
        return out


@dataclass(frozen=True)
class CohClass:
    """A cohomology class in coordinates of the chosen class basis."""

    alg: GradedAlgebra
    degree: int
    coords: tuple

    def representative(self) -> Element:
        return self.alg.cohomology(self.degree).rep_element(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, CohClass)
            and self.alg is other.alg
            and self.degree == other.degree
            and tuple(self.coords) == tuple(other.coords)
        )

    def __hash__(self):
        return hash((id(self.alg), self.degree, tuple(self.coords)))


Monomial = tuple[tuple[int, int], ...]  # ((generator index, exponent), ...)


class Presentation(GradedAlgebra):
    """A finite-type free CDGA: ordered generators plus d on generators.

    ``diffs`` maps generator name -> Element over this presentation (or a raw
    {monomial: coefficient} dict).  Construction verifies that each diff image
    is homogeneous of degree deg+1, mentions only declared generators, and
    that d∘d = 0 on every generator.
    """

    def __init__(self, generators, diffs=None, name="a"):
        super().__init__()
        self.name = name
        self.generators: tuple[GeneratorSpec, ...] = tuple(
            g if isinstance(g, GeneratorSpec) else GeneratorSpec(*g) for g in generators
        )
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        self.degrees = tuple(g.degree for g in self.generators)
        self._diff_elements: dict[str, Element] = {}
        self._mono_diff_cache: dict[Monomial, Element] = {}
        self._basis_cache: dict[int, list[Monomial]] = {}
        diffs = diffs or {}
        for n in diffs:
            if n not in self.index:
                raise UnknownGenerator(f"differential given for unknown generator {n!r}")
        for g in self.generators:
            raw = diffs.get(g.name)
            if raw is None:
                el = self.zero()
            elif isinstance(raw, Element):
                el = Element(self, raw.terms)
            else:
                el = Element(self, raw)
            for mono in el.terms:
                for idx, _ in mono:
                    if not 0 <= idx < len(self.generators):
                        raise UnknownGenerator(f"d({g.name}) uses undeclared generator index {idx}")
            if el and el.degree() != g.degree + 1:
                raise ValueError(
                    f"d({g.name}) has degree {el.degree()}, expected {g.degree + 1}"
                )
            self._diff_elements[g.name] = el
        for g in self.generators:
            dd = self.differential(self._diff_elements[g.name])
            if not dd.is_zero():
                raise ValueError(f"d(d({g.name})) != 0")

    # -- generator access ----------------------------------------------------
    def gen(self, name: str) -> Element:
        if name not in self.index:
            raise UnknownGenerator(f"unknown generator {name!r}")
        return Element(self, {(((self.index[name], 1),)): Fraction(1)})

    def gen_diff(self, name: str) -> Element:
        if name not in self.index:
            raise UnknownGenerator(f"unknown generator {name!r}")
        return self._diff_elements[name]

    # -- basis / keys --------------------------------------------------------
    def unit_key(self) -> Monomial:
        return ()

    def key_degree(self, key: Monomial) -> int:
        return sum(self.degrees[i] * e for i, e in key)

    def basis(self, k: int) -> list[Monomial]:
        if k < 0:
            return []
        if k not in self._basis_cache:
            out: list[Monomial] = []

            def rec(idx: int, remaining: int, prefix: list):
                if remaining == 0:
                    out.append(tuple(prefix))
                    return
                if idx == len(self.generators):
                    return
                deg = self.degrees[idx]
                emax = remaining // deg
                if deg % 2 == 1:
                    emax = min(emax, 1)
                for e in range(emax, -1, -1):
                    if e:
                        prefix.append((idx, e))
                    rec(idx + 1, remaining - e * deg, prefix)
                    if e:
                        prefix.pop()

            rec(0, k, [])
            self._basis_cache[k] = out
        return self._basis_cache[k]

    def mul_keys(self, m1: Monomial, m2: Monomial):
        sign, merged = self._mul_mono(m1, m2)
        if merged is None:
            return []
        return [(merged, Fraction(sign))]

    def _mul_mono(self, m1: Monomial, m2: Monomial):
        odd1 = [i for i, e in m1 if self.degrees[i] % 2 == 1]
        inv = 0
        for j, e in m2:
            if self.degrees[j] % 2 == 1:
                inv += sum(1 for i in odd1 if i > j)
        counts: dict[int, int] = {}
        for i, e in m1:
            counts[i] = counts.get(i, 0) + e
        for i, e in m2:
            counts[i] = counts.get(i, 0) + e
        for i, e in counts.items():
            if self.degrees[i] % 2 == 1 and e > 1:
                return 1, None
        merged = tuple(sorted(counts.items()))
        return (-1 if inv % 2 else 1), merged

    # -- differential via the signed Leibniz rule ---------------------------
    def diff_key(self, key: Monomial) -> Element:
        if key in self._mono_diff_cache:
            return self._mono_diff_cache[key]
        if not key:
            result = self.zero()
        else:
            (i, e), rest = key[0], key[1:]
            gname = self.generators[i].name
            dg = self._diff_elements[gname]
            head_deg = self.degrees[i] * e
            # d(g^e) = e g^(e-1) dg, valid for even g and for odd g with e = 1
            if dg.is_zero():
                dhead = self.zero()
            else:
                power: Monomial = ((i, e - 1),) if e > 1 else ()
                dhead = Element(self, {power: Fraction(e)}) * dg
            result = dhead * Element(self, {rest: Fraction(1)})
            drest = self.diff_key(rest)
            if not drest.is_zero():
                head = Element(self, {((i, e),): Fraction(1)})
                tail = head * drest
                result = result + (tail if head_deg % 2 == 0 else -tail)
        self._mono_diff_cache[key] = result
        return result

    # -- rendering -----------------------------------------------------------
    def render_key(self, key: Monomial) -> str:
        if not key:
            return "1"
        parts = []
        for i, e in key:
            nm = self.generators[i].name
            parts.append(nm if e == 1 else f"{nm}^{e}")
        return "*".join(parts)

    def structurally_equal(self, other: "Presentation") -> bool:
        if self.name != other.name or self.generators != other.generators:
            return False
        return all(
            self._diff_elements[g.name].terms == other._diff_elements[g.name].terms
            for g in self.generators
        )

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"Presentation({self.name}: {gens})"


def multiply(a: Element, b: Element) -> Element:
    return a * b


def conjugate(a: Element) -> Element:
    return a.conjugate()


def differential(a: Element, p: GradedAlgebra | None = None) -> Element:
    if p is not None and a.alg is not p:
        raise UnknownGenerator("element is not over the given presentation")
    return a.alg.differential(a)


def degree_basis(p: Presentation, k: int) -> list[Monomial]:
    return p.basis(k)


def cohomology(p: GradedAlgebra, k: int) -> CohomologySpace:
    return p.cohomology(k)


def cup(p: GradedAlgebra, c1: CohClass, c2: CohClass) -> CohClass:
    return p.cup(c1, c2)


def is_exact(p: GradedAlgebra, a: Element) -> bool:
    return p.is_exact(a)
