"""Parsers and canonical serializers for the two input formats.

``.cdga`` files describe free CDGA presentations::

    cdga h {
      gen x:1; gen y:1; gen z:1;
      d x = 0; d y = 0; d z = x*y;
    }

``.action`` files describe signed-diagonal involutions on a torus::

    torus 7;
    involution alpha : signs(-,-,-,-,+,+,+) shifts(0,0,0,0,0,0,0);

Both formats are whitespace-insensitive, use ``#`` line comments, and write
rationals as ``p/q`` (never floats).  Errors carry 1-based source spans;
semantic problems (unknown generator, degree mismatch, d^2 != 0, length
mismatch, non-involution) are caught at parse time.  ``render`` is the
canonical inverse: parse_cdga(render(p)) is structurally equal to p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cdga import Element, GeneratorSpec, Presentation
from .errors import CdgaLabError
from .kummer import AffineMap, compose

KEYWORDS = {"cdga", "gen", "d", "torus", "involution", "signs", "shifts"}


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int

    def __str__(self):
        return f"line {self.line}, column {self.column}"


class ParseError(CdgaLabError):
    """A syntax error, with the span of the offending token."""

    def __init__(self, span: SourceSpan, message: str, expected=()):
        super().__init__(f"{span}: {message}")
        self.span = span
        self.message = message
        self.expected = list(expected)


class SemanticError(CdgaLabError):
    """A well-formed parse that violates a semantic rule."""

    def __init__(self, span: SourceSpan, message: str):
        super().__init__(f"{span}: {message}")
        self.span = span
        self.message = message


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, NUMBER, PUNCT, EOF
    text: str
    span: SourceSpan


class NonInvolutionError(SemanticError):
    """A declared involution that does not square to the identity mod 1.

    Distinct from plain SemanticError so callers can report it as a domain
    error rather than a malformed file.
    """


_PUNCT = set("{}();:=^*+-,/")


def _tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            i += 1
            col += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch.isalpha() or ch == "_":
            start, scol = i, col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            tokens.append(Token("IDENT", text[start:i], SourceSpan(line, scol, i - start)))
        elif ch.isdigit():
            start, scol = i, col
            while i < n and text[i].isdigit():
                i += 1
                col += 1
            tokens.append(Token("NUMBER", text[start:i], SourceSpan(line, scol, i - start)))
        elif ch in _PUNCT:
            tokens.append(Token("PUNCT", ch, SourceSpan(line, col, 1)))
            i += 1
            col += 1
        else:
            raise ParseError(SourceSpan(line, col, 1), f"unexpected character {ch!r}")
    end = SourceSpan(line, col, 1)
    tokens.append(Token("EOF", "", end))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def at_punct(self, ch: str) -> bool:
        t = self.peek()
        return t.kind == "PUNCT" and t.text == ch

    def expect_punct(self, ch: str) -> Token:
        t = self.peek()
        if t.kind != "PUNCT" or t.text != ch:
            raise ParseError(t.span, f"expected {ch!r}, found {t.text or 'end of input'!r}", [ch])
        return self.next()

    def expect_ident(self, what="identifier") -> Token:
        t = self.peek()
        if t.kind != "IDENT":
            raise ParseError(t.span, f"expected {what}, found {t.text or 'end of input'!r}", ["IDENT"])
        return self.next()

    def expect_keyword(self, word: str) -> Token:
        t = self.peek()
        if t.kind != "IDENT" or t.text != word:
            raise ParseError(t.span, f"expected {word!r}, found {t.text or 'end of input'!r}", [word])
        return self.next()

    def expect_int(self) -> tuple[int, Token]:
        t = self.peek()
        if t.kind != "NUMBER":
            raise ParseError(t.span, f"expected an integer, found {t.text or 'end of input'!r}", ["NUMBER"])
        self.next()
        return int(t.text), t

    def rational(self) -> tuple[Fraction, Token]:
        """RATIONAL := ("+" | "-")? NUMBER ("/" NUMBER)?"""
        sign = 1
        first = self.peek()
        if self.at_punct("-"):
            sign = -1
            self.next()
        elif self.at_punct("+"):
            self.next()
        num, tok = self.expect_int()
        if self.at_punct("/"):
            self.next()
            den, dtok = self.expect_int()
            if den == 0:
                raise ParseError(dtok.span, "zero denominator")
            return Fraction(sign * num, den), first if first is not tok else tok
        return Fraction(sign * num), first if first is not tok else tok


# ---------------------------------------------------------------------------
# .cdga files


@dataclass
class _Term:
    coeff: Fraction
    factors: list  # atoms: ("gen", Token, exp) | ("zero",) | ("expr", [terms])


def _parse_expr(p: _Parser) -> list[_Term]:
    """expr := term (("+" | "-") term)*; a leading sign folds into the first term."""
    terms = [_parse_term(p, allow_sign=True)]
    while p.at_punct("+") or p.at_punct("-"):
        op = p.next().text
        t = _parse_term(p)
        if op == "-":
            t.coeff = -t.coeff
        terms.append(t)
    return terms


def _at_factor_start(p: _Parser) -> bool:
    t = p.peek()
    return t.kind == "IDENT" or (t.kind == "NUMBER" and t.text == "0") or p.at_punct("(")


def _parse_term(p: _Parser, allow_sign: bool = False) -> _Term:
    coeff = Fraction(1)
    have_coeff = False
    if allow_sign and (p.at_punct("+") or p.at_punct("-")):
        if p.next().text == "-":
            coeff = -coeff
    if p.peek().kind == "NUMBER":
        mag, _ = p.rational()
        coeff *= mag
        have_coeff = True
        if p.at_punct("*"):  # allow 1/2*x as well as 1/2 x
            p.next()
    if have_coeff and not _at_factor_start(p):
        if coeff == 0:  # a bare 0 literal
            return _Term(coeff, [("zero",)])
        raise ParseError(p.peek().span, "expected a generator after the coefficient",
                         ["IDENT", "0", "("])
    factors = _parse_factor(p)
    while p.at_punct("*"):
        p.next()
        factors += _parse_factor(p)
    return _Term(coeff, factors)


def _parse_factor(p: _Parser) -> list:
    t = p.peek()
    if t.kind == "NUMBER" and t.text == "0":
        p.next()
        return [("zero",)]
    if t.kind == "IDENT":
        p.next()
        exp = 1
        if p.at_punct("^"):
            p.next()
            exp, etok = p.expect_int()
            if exp < 1:
                raise ParseError(etok.span, "exponents must be >= 1")
        return [("gen", t, exp)]
    if p.at_punct("("):
        p.next()
        inner = _parse_expr(p)
        p.expect_punct(")")
        return [("expr", inner)]
    raise ParseError(t.span, f"expected a generator, found {t.text or 'end of input'!r}",
                     ["IDENT", "0", "("])


def _term_to_element(alg: Presentation, term: _Term) -> Element:
    out = alg.unit().scale(term.coeff)
    for atom in term.factors:
        if atom[0] == "zero":
            return alg.zero()
        if atom[0] == "expr":
            sub = alg.zero()
            for t in atom[1]:
                sub = sub + _term_to_element(alg, t)
            out = out * sub
            continue
        _, tok, exp = atom
        if tok.text not in alg.index:
            raise SemanticError(tok.span, f"unknown generator {tok.text!r}")
        for _ in range(exp):
            out = out * alg.gen(tok.text)
    return out


def parse_cdga(text: str) -> Presentation:
    """Parse a .cdga file into a validated presentation."""
    p = _Parser(text)
    p.expect_keyword("cdga")
    name = p.expect_ident("algebra name")
    p.expect_punct("{")
    gen_decls: list[tuple[Token, int]] = []
    d_decls: list[tuple[Token, list[_Term]]] = []
    while not p.at_punct("}"):
        t = p.peek()
        if t.kind == "IDENT" and t.text == "gen":
            p.next()
            gname = p.expect_ident("generator name")
            if gname.text in KEYWORDS:
                raise ParseError(gname.span, f"{gname.text!r} is a reserved word")
            p.expect_punct(":")
            deg, dtok = p.expect_int()
            if deg < 1:
                raise SemanticError(dtok.span, "generator degrees must be >= 1")
            p.expect_punct(";")
            gen_decls.append((gname, deg))
        elif t.kind == "IDENT" and t.text == "d":
            p.next()
            gname = p.expect_ident("generator name")
            p.expect_punct("=")
            expr = _parse_expr(p)
            p.expect_punct(";")
            d_decls.append((gname, expr))
        else:
            raise ParseError(t.span, f"expected 'gen', 'd' or '}}', found {t.text or 'end of input'!r}",
                             ["gen", "d", "}"])
    p.expect_punct("}")
    tail = p.peek()
    if tail.kind != "EOF":
        raise ParseError(tail.span, f"unexpected trailing input {tail.text!r}")

    names = [g.text for g, _ in gen_decls]
    if len(set(names)) != len(names):
        dup = next(g for i, (g, _) in enumerate(gen_decls) if g.text in names[:i])
        raise SemanticError(dup.span, f"duplicate generator {dup.text!r}")
    scratch = Presentation([(g.text, deg) for g, deg in gen_decls], name=name.text)
    d_spans: dict[str, SourceSpan] = {}
    diffs: dict[str, dict] = {}
    for gname, expr in d_decls:
        if gname.text not in scratch.index:
            raise SemanticError(gname.span, f"differential for unknown generator {gname.text!r}")
        if gname.text in diffs:
            raise SemanticError(gname.span, f"duplicate differential for {gname.text!r}")
        el = scratch.zero()
        for term in expr:
            el = el + _term_to_element(scratch, term)
        deg = scratch.degrees[scratch.index[gname.text]]
        if el and (not el.is_homogeneous() or el.degree() != deg + 1):
            raise SemanticError(
                gname.span,
                f"d({gname.text}) must be homogeneous of degree {deg + 1}",
            )
        diffs[gname.text] = dict(el.terms)
        d_spans[gname.text] = gname.span
    for g, _ in gen_decls:
        if g.text not in diffs:
            raise SemanticError(g.span, f"generator {g.text!r} has no differential declaration")
    try:
        return Presentation([(g.text, deg) for g, deg in gen_decls], diffs, name=name.text)
    except ValueError as e:
        for gname, span in d_spans.items():
            if f"d(d({gname}))" in str(e):
                raise SemanticError(span, f"d(d({gname})) != 0") from e
        raise


def parse_element(p: Presentation, text: str) -> Element:
    """Parse a standalone expression (same grammar as differentials) over p."""
    parser = _Parser(text)
    terms = _parse_expr(parser)
    tail = parser.peek()
    if tail.kind != "EOF":
        raise ParseError(tail.span, f"unexpected trailing input {tail.text!r}")
    el = p.zero()
    for t in terms:
        el = el + _term_to_element(p, t)
    return el


def render(p: Presentation) -> str:
    """Canonical .cdga serialization; parses back structurally equal."""
    lines = [f"cdga {p.name} {{"]
    for g in p.generators:
        lines.append(f"  gen {g.name}:{g.degree};")
    for g in p.generators:
        lines.append(f"  d {g.name} = {_render_expr(p, p.gen_diff(g.name))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _render_expr(p: Presentation, el: Element) -> str:
    if el.is_zero():
        return "0"
    parts = []
    for mono in sorted(el.terms, key=p._key_sort):
        c = el.terms[mono]
        body = p.render_key(mono)
        if body == "1":
            mag = str(abs(c))
        elif abs(c) == 1:
            mag = body
        else:
            mag = f"{abs(c)} {body}"
        parts.append(("-" if c < 0 else "+", mag))
    sign, mag = parts[0]
    text = ("-" if sign == "-" else "") + mag
    for sign, mag in parts[1:]:
        text += f" {sign} {mag}"
    return text


# ---------------------------------------------------------------------------
# .action files


def parse_action(text: str) -> dict[str, AffineMap]:
    """Parse a .action file into named involution generators."""
    p = _Parser(text)
    p.expect_keyword("torus")
    n, ntok = p.expect_int()
    if n < 1:
        raise SemanticError(ntok.span, "torus dimension must be >= 1")
    p.expect_punct(";")
    gens: dict[str, AffineMap] = {}
    while p.peek().kind != "EOF":
        p.expect_keyword("involution")
        name = p.expect_ident("involution name")
        if name.text in gens:
            raise SemanticError(name.span, f"duplicate involution {name.text!r}")
        p.expect_punct(":")
        p.expect_keyword("signs")
        open_tok = p.expect_punct("(")
        signs = [_parse_sign(p)]
        while p.at_punct(","):
            p.next()
            signs.append(_parse_sign(p))
        p.expect_punct(")")
        if len(signs) != n:
            raise SemanticError(open_tok.span, f"expected {n} signs, found {len(signs)}")
        p.expect_keyword("shifts")
        open_tok = p.expect_punct("(")
        shifts = [p.rational()[0]]
        while p.at_punct(","):
            p.next()
            shifts.append(p.rational()[0])
        p.expect_punct(")")
        if len(shifts) != n:
            raise SemanticError(open_tok.span, f"expected {n} shifts, found {len(shifts)}")
        p.expect_punct(";")
        g = AffineMap(tuple(signs), tuple(shifts))
        if not compose(g, g).is_identity():
            raise NonInvolutionError(name.span, f"{name.text!r} is not an involution mod 1")
        gens[name.text] = g
    return gens


def _parse_sign(p: _Parser) -> int:
    t = p.peek()
    if p.at_punct("+"):
        p.next()
        return 1
    if p.at_punct("-"):
        p.next()
        return -1
    raise ParseError(t.span, f"expected '+' or '-', found {t.text or 'end of input'!r}", ["+", "-"])


def render_action(n: int, gens: dict[str, AffineMap]) -> str:
    """Canonical .action serialization of named involutions on T^n."""
    lines = [f"torus {n};"]
    for name, g in gens.items():
        signs = ",".join("+" if s == 1 else "-" for s in g.signs)
        shifts = ",".join(str(c) for c in g.shifts)
        lines.append(f"involution {name} : signs({signs}) shifts({shifts});")
    return "\n".join(lines) + "\n"
