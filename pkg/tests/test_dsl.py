from fractions import Fraction

import pytest

from cdgalab import dsl, kummer
from cdgalab.dsl import (
    NonInvolutionError,
    ParseError,
    SemanticError,
    parse_action,
    parse_cdga,
    parse_element,
    render,
    render_action,
)
from helpers import read_corpus

HEIS = "cdga h { gen x:1; gen y:1; gen z:1; d x = 0; d y = 0; d z = x*y; }"


def test_parse_heisenberg():
    p = parse_cdga(HEIS)
    assert p.name == "h"
    assert [(g.name, g.degree) for g in p.generators] == [("x", 1), ("y", 1), ("z", 1)]
    assert p.render_element(p.gen_diff("z")) == "x*y"
    assert p.gen_diff("x").is_zero()


def test_round_trip_structural_equality():
    p = parse_cdga(HEIS)
    assert p.structurally_equal(parse_cdga(render(p)))


def test_round_trip_rational_coefficients():
    text = "cdga f { gen x:1; gen y:1; gen z:1; d x=0; d y=0; d z = 1/2 x*y; }"
    p = parse_cdga(text)
    assert list(p.gen_diff("z").terms.values()) == [Fraction(1, 2)]
    assert p.structurally_equal(parse_cdga(render(p)))


def test_empty_algebra():
    p = parse_cdga("cdga a { }")
    assert p.generators == ()
    assert p.structurally_equal(parse_cdga(render(p)))


def test_comments_and_whitespace():
    text = "# header\ncdga s2 {\n  gen a:2; # the area class\n  gen b:3;\n  d a = 0;\n  d b = a^2;\n}\n"
    p = parse_cdga(text)
    assert p.render_element(p.gen_diff("b")) == "a^2"


def test_signs_and_parentheses():
    text = "cdga p { gen x:1; gen y:1; gen u:1; gen z:1; d x=0; d y=0; d u=0; d z = -(x + y)*u + 2 x*y; }"
    p = parse_cdga(text)
    dz = p.gen_diff("z")
    x, y, u = p.gen("x"), p.gen("y"), p.gen("u")
    assert dz == -(x + y) * u + (x * y).scale(2)


def test_unknown_generator_span():
    with pytest.raises(SemanticError) as exc:
        parse_cdga("cdga h { gen x:1; gen z:1; d x = 0; d z = x*w; }")
    assert exc.value.span.line == 1
    assert exc.value.span.column == 45
    assert "w" in exc.value.message


def test_degree_mismatch():
    with pytest.raises(SemanticError) as exc:
        parse_cdga("cdga h { gen x:1; gen z:1; d x = 0; d z = x; }")
    assert "degree 2" in exc.value.message


def test_missing_and_duplicate_differentials():
    with pytest.raises(SemanticError):
        parse_cdga("cdga h { gen x:1; }")
    with pytest.raises(SemanticError):
        parse_cdga("cdga h { gen x:1; d x = 0; d x = 0; }")


def test_d_squared_is_semantic_error():
    with pytest.raises(SemanticError) as exc:
        parse_cdga("cdga h { gen a:1; gen b:2; gen c:3; d a = b; d b = c; d c = 0; }")
    assert "d(d(a))" in exc.value.message


def test_syntax_errors_have_spans():
    with pytest.raises(ParseError) as exc:
        parse_cdga("cdga h { gen x 1; }")
    assert exc.value.span.line == 1
    assert exc.value.expected == [":"]
    with pytest.raises(ParseError):
        parse_cdga("cdga h { gen x:1; d x = 0; ")
    with pytest.raises(ParseError):
        parse_cdga("")


def test_spans_inside_input():
    text = "cdga h {\n  gen x:1;\n  d x = 0;\n  d q = 0;\n}"
    lines = text.split("\n")
    with pytest.raises(SemanticError) as exc:
        parse_cdga(text)
    span = exc.value.span
    assert 1 <= span.line <= len(lines)
    assert 1 <= span.column <= len(lines[span.line - 1]) + 1


def test_parse_element():
    p = parse_cdga(HEIS)
    el = parse_element(p, "x*z - 1/3 y*z")
    assert el == p.gen("x") * p.gen("z") - (p.gen("y") * p.gen("z")).scale(Fraction(1, 3))
    with pytest.raises(ParseError):
        parse_element(p, "x +")
    with pytest.raises(SemanticError):
        parse_element(p, "nope")


def test_parse_action_corpus():
    gens = parse_action(read_corpus("joyce.action"))
    assert set(gens) == {"alpha", "beta", "gamma"}
    assert gens["alpha"].signs == (-1, -1, -1, -1, 1, 1, 1)
    assert gens["beta"].shifts[1] == Fraction(1, 2)
    assert gens["gamma"].shifts == (Fraction(1, 2), 0, Fraction(1, 2), 0, 0, 0, 0)
    grp = kummer.generate_group(gens)
    assert tuple(kummer.invariant_betti(grp)) == (1, 0, 0, 7, 7, 0, 0, 1)


def test_parse_action_errors():
    with pytest.raises(SemanticError):
        parse_action("torus 7;\ninvolution a : signs(-,-,-) shifts(0,0,0);")
    with pytest.raises(NonInvolutionError):
        parse_action("torus 2;\ninvolution a : signs(+,+) shifts(1/3,0);")
    with pytest.raises(ParseError):
        parse_action("torus 2\ninvolution a : signs(-,-) shifts(0,0);")
    with pytest.raises(SemanticError):
        parse_action("torus 2;\ninvolution a : signs(-,-) shifts(0,0);\n"
                     "involution a : signs(-,-) shifts(0,0);")


def test_render_action_round_trip():
    gens = parse_action(read_corpus("joyce.action"))
    text = render_action(7, gens)
    again = parse_action(text)
    assert again == gens


def test_corpus_files_parse():
    for name in ("heisenberg.cdga", "torus7.cdga", "s2.cdga", "joyce-ring.cdga"):
        p = parse_cdga(read_corpus(name))
        assert p.structurally_equal(parse_cdga(render(p)))
    for name in ("joyce.action", "kummer-t4.action"):
        assert parse_action(read_corpus(name))
