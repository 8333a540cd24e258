"""Shared test utilities: corpus paths and random presentation generators.

Random presentations are built triangularly: each generator's differential is
drawn from the closed elements of the algebra on the *previous* generators,
so d^2 = 0 holds by construction and every draw is a valid CDGA.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from cdgalab import linalg
from cdgalab.cdga import Presentation

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def read_corpus(name: str) -> str:
    return (CORPUS / name).read_text(encoding="utf-8")


def build_presentation(choose, max_gens=5, max_degree=4, name="r") -> Presentation:
    """Construct a random presentation; ``choose(a, b)`` draws an int in [a, b]."""
    n = choose(1, max_gens)
    specs: list[tuple[str, int]] = []
    diffs: dict[str, dict] = {}
    for i in range(n):
        deg = choose(1, max_degree)
        partial = Presentation(specs, diffs, name=name)
        terms: dict = {}
        if choose(0, 1):  # closed generator half the time
            kern = linalg.kernel_basis(partial.d_matrix(deg + 1))
            basis = partial.basis(deg + 1)
            picks = min(kern.dim, 3)
            for _ in range(picks):
                if kern.dim == 0:
                    break
                v = kern.vectors[choose(0, kern.dim - 1)]
                c = Fraction(choose(-2, 2))
                if c == 0:
                    continue
                for mono, x in zip(basis, v):
                    if x:
                        nv = terms.get(mono, Fraction(0)) + c * x
                        if nv:
                            terms[mono] = nv
                        else:
                            terms.pop(mono, None)
        specs.append((f"g{i}", deg))
        diffs[f"g{i}"] = terms
    return Presentation(specs, diffs, name=name)


def random_presentation(rng, max_gens=5, max_degree=4, name="r") -> Presentation:
    return build_presentation(lambda a, b: rng.randint(a, b), max_gens, max_degree, name)


def random_homogeneous(choose, p: Presentation, degree: int):
    """A random element of the given degree (possibly zero)."""
    basis = p.basis(degree)
    terms = {}
    for mono in basis:
        c = choose(-2, 2)
        if c:
            terms[mono] = Fraction(c)
    return p.element(terms)
