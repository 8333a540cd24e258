"""Degree-truncated Sullivan minimal models and formality certificates.

``build_minimal_model`` runs the standard induction for simply-connected
targets: at each degree k it adjoins closed generators surjecting onto the
cokernel of H^k(model) -> H^k(target), then generators whose differentials
kill the kernel of H^(k+1)(model) -> H^(k+1)(target), extending the
quasi-isomorphism by deterministic solves.

Formality checking uses the C + N generator splitting: C_i is the kernel of
d on the degree-i generator space, N_i an echelon complement.  A closed
element of the ideal generated by N inside the subalgebra on generators of
degree <= s must be exact in the *full* model; for a stage with target T and
quasi-map F that is equivalent to [F(w)] = 0 in H(T), which is how exactness
is decided here.  (A presentation checked as its own minimal algebra has
target = model, where this is plain exactness.)

Non-formality is only asserted when the failure is complement-independent:
either a witness class survives the whole affine family of complements
(complements of C_i are graphs of linear maps N_i -> C_i, so the family is
linear in its parameters and the search is exact linear algebra), or a
nontrivial triple Massey product exists.  Otherwise the verdict is
Indeterminate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg, massey
from .cdga import Element, GeneratorSpec, GradedAlgebra, Presentation
from .errors import DegreeTooSmall, NotSimplyConnected
from .linalg import RatMatrix, SubspaceBasis

FORMAL_CERTIFIED = "FormalCertified"
NON_FORMAL_WITNESS = "NonFormalWitness"
INDETERMINATE = "Indeterminate"

# Above this many (spanning element, parameter) cells the affine-family
# search is skipped in favor of the Massey route / Indeterminate.
FAMILY_CHECK_CELL_LIMIT = 200_000


@dataclass
class MinimalModelStage:
    """A minimal model built up to a degree, with its quasi-isomorphism."""

    model: Presentation
    target: GradedAlgebra
    quasi_map: dict[str, Element]  # generator name -> target element
    built_to: int
    _mono_cache: dict = field(default_factory=dict, repr=False)

    def is_self_model(self) -> bool:
        return self.target is self.model

    def map_element(self, a: Element) -> Element:
        """Image of a model element under the quasi-isomorphism."""
        out = self.target.zero()
        for mono, c in a.terms.items():
            out = out + self._map_mono(mono).scale(c)
        return out

    def _map_mono(self, mono) -> Element:
        if mono in self._mono_cache:
            return self._mono_cache[mono]
        out = self.target.unit()
        for idx, e in mono:
            img = self.quasi_map[self.model.generators[idx].name]
            for _ in range(e):
                out = out * img
        self._mono_cache[mono] = out
        return out

    def exact_in_full_model(self, a: Element) -> bool:
        """True iff the closed element a becomes exact in the full model,
        i.e. its image class vanishes in the target cohomology."""
        if a.is_zero():
            return True
        img = self.map_element(a)
        if img.is_zero():
            return True
        return not any(self.target.cohomology(img.degree()).coords(img))

    def generator_names_of_degree(self, k: int) -> list[str]:
        return [g.name for g in self.model.generators if g.degree == k]

    def verify(self):
        """Re-check the stage invariants; raises AssertionError on failure."""
        for g in self.model.generators:
            img = self.map_element(self.model.gen_diff(g.name))
            if self.target.differential(self.quasi_map[g.name]) != img:
                raise AssertionError(f"quasi-map does not commute with d on {g.name}")
            for mono in self.model.gen_diff(g.name).terms:
                if sum(e for _, e in mono) < 2:
                    raise AssertionError(f"d({g.name}) has a linear term")
        for k in range(self.built_to + 2):
            mdim = self.model.cohomology(k).dim
            tdim = self.target.cohomology(k).dim
            mat = _cohomology_map_matrix(self, k)
            r = linalg.rank(mat) if mdim else 0
            if k <= self.built_to:
                if mdim != tdim or r != mdim:
                    raise AssertionError(
                        f"H^{k} is not an isomorphism (dims {mdim}/{tdim}, rank {r})"
                    )
            elif r != mdim:
                raise AssertionError(f"H^{k} is not injective")


def _cohomology_map_matrix(stage: MinimalModelStage, k: int) -> RatMatrix:
    """Matrix of the induced map H^k(model) -> H^k(target) in class bases."""
    hm = stage.model.cohomology(k)
    ht = stage.target.cohomology(k)
    cols = [ht.coords(stage.map_element(rep)) for rep in hm.class_reps]
    return RatMatrix.from_columns(cols, ht.dim) if cols else RatMatrix(ht.dim, 0)


def minimal_stage_from_presentation(p: Presentation) -> MinimalModelStage:
    """Treat a user-supplied minimal presentation as its own model and target."""
    built_to = max((g.degree for g in p.generators), default=0)
    qmap = {g.name: p.gen(g.name) for g in p.generators}
    return MinimalModelStage(model=p, target=p, quasi_map=qmap, built_to=built_to)


def build_minimal_model(target: GradedAlgebra, up_to: int, verify: bool = True) -> MinimalModelStage:
    """Inductive minimal model of a simply-connected target, built to degree up_to."""
    if up_to < 2:
        raise DegreeTooSmall("minimal models are built to degree >= 2")
    if target.cohomology(0).dim != 1:
        raise NotSimplyConnected("H^0(target) is not Q")
    if target.cohomology(1).dim != 0:
        raise NotSimplyConnected("H^1(target) is not 0")

    gens: list[GeneratorSpec] = []
    diffs: dict[str, dict] = {}
    qmap: dict[str, Element] = {}

    def make_stage(built):
        model = Presentation(gens, diffs, name="model")
        return MinimalModelStage(model=model, target=target, quasi_map=dict(qmap), built_to=built)

    for k in range(2, up_to + 1):
        stage = make_stage(k - 1)
        idx = 0
        # adjoin closed generators surjecting onto H^k(target)
        ht = target.cohomology(k)
        image = linalg.span_basis(
            ht.dim,
            [ht.coords(stage.map_element(rep)) for rep in stage.model.cohomology(k).class_reps],
        )
        for v in linalg.complement_basis(image).vectors:
            name = f"v{k}_{idx}"
            idx += 1
            gens.append(GeneratorSpec(name, k))
            diffs[name] = {}
            qmap[name] = ht.rep_element(v)
        # adjoin generators killing the kernel of H^(k+1)(model) -> H^(k+1)(target);
        # degree-k generators create no new degree-(k+1) monomials, so the
        # kernel computed before the adjunction stays valid throughout
        stage = make_stage(k - 1)
        hm1 = stage.model.cohomology(k + 1)
        for coeffs in linalg.kernel_basis(_cohomology_map_matrix(stage, k + 1)).vectors:
            zeta = hm1.rep_element(coeffs)
            u = target.solve_d(stage.map_element(zeta))
            if u is None:
                raise AssertionError("kernel class image failed to bound in the target")
            name = f"v{k}_{idx}"
            idx += 1
            gens.append(GeneratorSpec(name, k))
            diffs[name] = dict(zeta.terms)
            qmap[name] = u

    stage = make_stage(up_to)
    if verify:
        stage.verify()
    return stage


@dataclass
class FormalitySplit:
    """Per degree i <= s: generator names plus the splitting C_i + N_i.

    Coordinates are taken in the span of the degree-i generators, in
    declaration order; C_i = ker d, N_i = echelon complement.
    """

    per_degree: dict[int, tuple[list[str], SubspaceBasis, SubspaceBasis]]

    def gen_names(self, i: int) -> list[str]:
        return self.per_degree[i][0]

    def c_basis(self, i: int) -> SubspaceBasis:
        return self.per_degree[i][1]

    def n_basis(self, i: int) -> SubspaceBasis:
        return self.per_degree[i][2]


def split_generators(stage: MinimalModelStage, s: int) -> FormalitySplit:
    if s > stage.built_to:
        raise DegreeTooSmall(f"split to degree {s} exceeds built degree {stage.built_to}")
    model = stage.model
    per_degree = {}
    for i in range(1, s + 1):
        names = stage.generator_names_of_degree(i)
        if not names:
            per_degree[i] = (names, SubspaceBasis(0), SubspaceBasis(0))
            continue
        dst = model._basis_index(i + 1)
        m = RatMatrix(len(dst), len(names))
        for j, nm in enumerate(names):
            for mono, c in model.gen_diff(nm).terms.items():
                m[dst[mono], j] = c
        c_space = linalg.kernel_basis(m)
        per_degree[i] = (names, c_space, linalg.complement_basis(c_space))
    return FormalitySplit(per_degree=per_degree)


@dataclass
class FormalityCertificate:
    status: str
    s: int
    degree_cutoff: int
    witness: Element | None = None
    witness_kind: str | None = None  # "ideal-element" or "massey-triple"
    note: str = ""


def _gen_combo(model: Presentation, names: list[str], coeffs) -> Element:
    out = model.zero()
    for c, nm in zip(coeffs, names):
        if c:
            out = out + model.gen(nm).scale(c)
    return out


def _restricted_basis(model: Presentation, degree: int, max_gen_degree: int):
    """Degree-``degree`` monomials on generators of degree <= max_gen_degree."""
    return [
        mono
        for mono in model.basis(degree)
        if all(model.degrees[i] <= max_gen_degree for i, _ in mono)
    ]


def _target_class_coords(stage: MinimalModelStage, a: Element):
    """Coordinates of [F(a)] in the target cohomology; a must be closed.

    Returns the empty tuple when the image is zero on the nose.
    """
    img = stage.map_element(a) if a else stage.target.zero()
    if img.is_zero():
        return ()
    return stage.target.cohomology(img.degree()).coords(img)


def check_s_formality(stage: MinimalModelStage, s: int, cutoff: int) -> FormalityCertificate:
    """Exhaust the closed-ideal-elements-are-exact condition up to ``cutoff``."""
    if s > stage.built_to:
        raise DegreeTooSmall(f"s = {s} exceeds built degree {stage.built_to}")
    if cutoff < s:
        raise DegreeTooSmall("cutoff must be at least s")
    split = split_generators(stage, s)
    model = stage.model
    n_degrees = [i for i in range(1, s + 1) if split.n_basis(i).dim > 0]
    if not n_degrees:
        return FormalityCertificate(FORMAL_CERTIFIED, s, cutoff, note="all generators are closed")

    # Fast path: if every N generator maps to zero in the target, the whole
    # ideal maps to zero, so every closed ideal element is exact in the full
    # model and the condition holds at any cutoff.
    if all(
        stage.map_element(_gen_combo(model, split.gen_names(i), v)).is_zero()
        for i in n_degrees
        for v in split.n_basis(i).vectors
    ):
        return FormalityCertificate(
            FORMAL_CERTIFIED, s, cutoff,
            note="the quasi-isomorphism annihilates the non-closed complement",
        )

    failing_degree = None
    for q in range(min(n_degrees), cutoff + 1):
        vectors = []
        for i in n_degrees:
            monos = _restricted_basis(model, q - i, s)
            if not monos:
                continue
            for v in split.n_basis(i).vectors:
                nu = _gen_combo(model, split.gen_names(i), v)
                for mono in monos:
                    prod = nu * model.element({mono: Fraction(1)})
                    if prod:
                        vectors.append(model.to_vector(prod, q))
        if not vectors:
            continue
        for w in linalg.intersect_with_kernel(vectors, model.d_matrix(q)):
            if any(_target_class_coords(stage, model.from_vector(w, q))):
                failing_degree = q
                break
        if failing_degree is not None:
            break
    if failing_degree is None:
        return FormalityCertificate(FORMAL_CERTIFIED, s, cutoff)

    witness = _persistent_family_witness(stage, split, n_degrees, s, failing_degree)
    if witness is not None:
        return FormalityCertificate(
            NON_FORMAL_WITNESS, s, cutoff, witness=witness, witness_kind="ideal-element",
            note=f"closed non-exact ideal element in degree {failing_degree} "
                 "for every choice of complement",
        )
    mw = _massey_witness(stage, cutoff)
    if mw is not None:
        return FormalityCertificate(
            NON_FORMAL_WITNESS, s, cutoff, witness=mw, witness_kind="massey-triple",
            note="nontrivial triple Massey product",
        )
    return FormalityCertificate(
        INDETERMINATE, s, cutoff,
        note=f"the canonical complement fails in degree {failing_degree} but "
             "complement-independence could not be established",
    )


def _persistent_family_witness(stage, split, n_degrees, s, q):
    """An ideal element that stays closed with the same nonzero target class
    over the whole affine family of complements, or None.

    Complements of C_i are the graphs nu -> nu + L(nu) of linear maps
    N_i -> C_i, so each spanning product (nu + L nu) * m is affine-linear in
    the entries of L.  A constant-coefficient combination whose per-parameter
    components are closed with vanishing target class, and whose base part
    has a nonzero target class, fails condition (c) for every complement at
    once.  The search runs in two stages because class coordinates are only
    defined on closed elements: closedness conditions first, class conditions
    on that kernel second.
    """
    model = stage.model
    params: list[tuple[int, int, int]] = [
        (i, r, ci)
        for i in n_degrees
        for r in range(split.n_basis(i).dim)
        for ci in range(split.c_basis(i).dim)
    ]
    param_index = {p: k for k, p in enumerate(params)}
    spans: list[tuple[Element, list[tuple[int, Element]]]] = []
    for i in n_degrees:
        names = split.gen_names(i)
        monos = _restricted_basis(model, q - i, s)
        c_elems = [_gen_combo(model, names, v) for v in split.c_basis(i).vectors]
        for r, nv in enumerate(split.n_basis(i).vectors):
            nu = _gen_combo(model, names, nv)
            for mono in monos:
                me = model.element({mono: Fraction(1)})
                corrections = []
                for ci, ce in enumerate(c_elems):
                    corr = ce * me
                    if corr:
                        corrections.append((param_index[(i, r, ci)], corr))
                spans.append((nu * me, corrections))
    if not spans or len(spans) * (1 + len(params)) > FAMILY_CHECK_CELL_LIMIT:
        return None

    ncols = len(spans)
    dmat = model.d_matrix(q)

    def dvec(el):
        return dmat.mul_vec(model.to_vector(el, q)) if el else linalg.zero_vec(dmat.rows)

    # stage one: coefficient vectors making the base part and every
    # per-parameter component closed
    stacked = RatMatrix(dmat.rows * (1 + len(params)), ncols)
    for t, (base, corrections) in enumerate(spans):
        for r, x in enumerate(dvec(base)):
            if x:
                stacked[r, t] = x
        for p, corr in corrections:
            off = dmat.rows * (1 + p)
            for r, x in enumerate(dvec(corr)):
                if x:
                    stacked[off + r, t] = x
    closed = linalg.kernel_basis(stacked)
    if closed.dim == 0:
        return None

    # stage two: on the closed kernel, require every per-parameter component
    # to have vanishing target class
    hq_dim = stage.target.cohomology(q).dim

    def class_vec(el):
        cls = _target_class_coords(stage, el)
        return cls if cls else linalg.zero_vec(hq_dim)

    cond_cols = []
    base_cls = []
    for kv in closed.vectors:
        base = model.zero()
        comps = [model.zero() for _ in params]
        for c, (b, corrections) in zip(kv, spans):
            if not c:
                continue
            base = base + b.scale(c)
            for p, corr in corrections:
                comps[p] = comps[p] + corr.scale(c)
        col = []
        for comp in comps:
            col.extend(class_vec(comp))
        cond_cols.append(col)
        base_cls.append(class_vec(base))
    cond = RatMatrix.from_columns(cond_cols, len(params) * hq_dim)
    for mu in linalg.kernel_basis(cond).vectors:
        cls = [Fraction(0)] * hq_dim
        for m, bc in zip(mu, base_cls):
            if m:
                for j, x in enumerate(bc):
                    cls[j] += m * x
        if any(cls):
            witness = model.zero()
            for m, kv in zip(mu, closed.vectors):
                if m:
                    for c, (b, _) in zip(kv, spans):
                        if c:
                            witness = witness + b.scale(m * c)
            return _normalize_sign(witness)
    return None


def _normalize_sign(a: Element) -> Element:
    lead = min(a.terms, key=a.alg._key_sort)
    if a.terms[lead] < 0:
        a = -a
    return a


def _massey_witness(stage: MinimalModelStage, cutoff: int) -> Element | None:
    """A nontrivial triple Massey product representative, for self-models.

    Restricted to self-models because a nontrivial product computed in a
    truncated stage could still die under further generator adjunction.
    """
    if not stage.is_self_model():
        return None
    alg = stage.model
    degs = [d for d in range(1, stage.built_to + 2) if alg.cohomology(d).dim > 0]
    for d1, d2, d3 in itertools.product(degs, repeat=3):
        deg = d1 + d2 + d3 - 1
        if deg > cutoff + 1 or alg.cohomology(deg).dim == 0:
            continue
        h1, h2, h3 = (alg.cohomology(d) for d in (d1, d2, d3))
        for i, j, k in itertools.product(range(h1.dim), range(h2.dim), range(h3.dim)):
            coset = massey.triple_massey(
                alg,
                h1.class_from_coords(_unit(h1.dim, i)),
                h2.class_from_coords(_unit(h2.dim, j)),
                h3.class_from_coords(_unit(h3.dim, k)),
            )
            if coset.defined and not massey.is_trivial(coset):
                rep = alg.cohomology(coset.degree).rep_element(coset.representative)
                return _normalize_sign(rep)
    return None


def _unit(n: int, i: int):
    return tuple(Fraction(int(j == i)) for j in range(n))


def fm_dimension_to_s(manifold_dim: int) -> int:
    """Dimension 2n or 2n - 1 gives s = n - 1 (formal iff (n-1)-formal)."""
    if manifold_dim < 2:
        raise DegreeTooSmall("manifold dimension must be >= 2")
    n = (manifold_dim + 1) // 2
    return n - 1


def fm_formality_report(stage: MinimalModelStage, manifold_dim: int, cutoff: int) -> FormalityCertificate:
    """Formality certificate for a closed oriented manifold of the given
    dimension, via the dimension-to-s reduction."""
    s = fm_dimension_to_s(manifold_dim)
    if s < 1:
        return FormalityCertificate(
            FORMAL_CERTIFIED, s, cutoff,
            note=f"dimension {manifold_dim} gives s = {s}: the condition is vacuous",
        )
    if stage.built_to < s:
        raise DegreeTooSmall(f"model built to degree {stage.built_to} < required s = {s}")
    cert = check_s_formality(stage, s, max(cutoff, s))
    cert.note = (cert.note + f" (s = {s} from manifold dimension {manifold_dim})").strip()
    return cert
