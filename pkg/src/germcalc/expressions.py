"""Text form of series, maps, and vector fields.

The grammar is small and exact: integer literals, the imaginary unit
``i``, named variables, ``+ - * / ^`` and parentheses.  Multiplication is
always explicit (``2*z``, never ``2z``) and division is only defined by a
nonzero constant, which is exactly enough to write any rational or
Gaussian-rational coefficient.  A parenthesized comma-separated list at
top level denotes a map, one component per variable of the target.

Printing inverts parsing: ``parse_series(format_series(f, names),
names, f.truncation)`` returns ``f`` again.  Terms are emitted in
increasing monomial order and coefficients in lowest terms with positive
denominator, so equal objects print to equal strings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import ParseError
from .scalars import GaussianRational, I
from .series import FormalMap, FormalSeries

Scalar = Union[Fraction, GaussianRational]

_OPERATORS = set("+-*/^(),")


def default_variables(dimension: int) -> list[str]:
    """Naming convention used when no explicit names are given: z, then
    (z, w), then t1..tn."""
    if dimension == 1:
        return ["z"]
    if dimension == 2:
        return ["z", "w"]
    return [f"t{j}" for j in range(1, dimension + 1)]


def real_variables(pairs: int) -> list[str]:
    """Interleaved real/imaginary names x1, y1, ..., xn, yn."""
    out = []
    for j in range(1, pairs + 1):
        out.extend([f"x{j}", f"y{j}"])
    return out


def infer_variables(texts: Sequence[str]) -> list[str]:
    """Deduce the variable list from the names used in expressions.

    Recognizes the three conventions of default_variables and
    real_variables; anything else needs an explicit variable list.
    """
    seen: set[str] = set()
    for text in texts:
        seen.update(tok.text for tok in _tokenize(text) if tok.kind == "name")
    seen.discard("i")
    if seen <= {"z"}:
        return ["z"]
    if seen <= {"z", "w"}:
        return ["z", "w"]
    t_indices = [_indexed_name(name, "t") for name in seen]
    if all(j is not None for j in t_indices):
        return [f"t{j}" for j in range(1, max(t_indices) + 1)]
    xy_indices = [_indexed_name(name, "xy") for name in seen]
    if all(j is not None for j in xy_indices):
        return real_variables(max(xy_indices))
    raise ParseError(
        "cannot infer a variable set from "
        + ", ".join(sorted(seen))
        + "; pass the names explicitly"
    )


def _indexed_name(name: str, letters: str) -> Optional[int]:
    if len(name) >= 2 and name[0] in letters and name[1:].isdigit():
        index = int(name[1:])
        if index >= 1 and not name[1:].startswith("0"):
            return index
    return None


class _Token:
    __slots__ = ("kind", "text", "position")

    def __init__(self, kind: str, text: str, position: int):
        self.kind = kind  # "number" | "name" | "op" | "end"
        self.text = text
        self.position = position  # 1-based column


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            tokens.append(_Token("number", text[start:pos], start + 1))
            continue
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            tokens.append(_Token("name", text[start:pos], start + 1))
            continue
        if ch in _OPERATORS:
            tokens.append(_Token("op", ch, pos + 1))
            pos += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", pos + 1)
    tokens.append(_Token("end", "", len(text) + 1))
    return tokens


class _Parser:
    """Recursive descent over the token list.

    Values are either scalars or series; arithmetic promotes scalars to
    constant series on first contact.  The truncation acts as a cap on
    literal exponents -- a power the truncation cannot carry is a typo or
    a missing --trunc, not a silent zero.
    """

    def __init__(self, text: str, names: Sequence[str], truncation: int):
        if truncation < 0:
            raise ValueError("truncation must be nonnegative")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        if "i" in names:
            raise ValueError("'i' is reserved for the imaginary unit")
        self.text = text
        self.names = list(names)
        self.index_of = {name: j for j, name in enumerate(names)}
        self.truncation = truncation
        self.tokens = _tokenize(text)
        self.pos = 0

    # -- token plumbing -----------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, text: str) -> _Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            shown = tok.text if tok.kind != "end" else "end of input"
            raise ParseError(f"expected {text!r}, found {shown!r}", tok.position)
        return self.advance()

    # -- grammar ------------------------------------------------------------

    def parse_expression(self):
        value = self.parse_term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.advance()
                rhs = self.parse_term()
                value = self._add(value, rhs, tok)
            else:
                return value

    def parse_term(self):
        value = self.parse_factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.advance()
                value = self._mul(value, self.parse_factor())
            elif tok.kind == "op" and tok.text == "/":
                self.advance()
                value = self._div(value, self.parse_factor(), tok)
            else:
                return value

    def parse_factor(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.advance()
            value = self.parse_factor()
            return value if tok.text == "+" else self._negate(value)
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            exp_tok = self.peek()
            if exp_tok.kind != "number":
                raise ParseError(
                    "exponent must be a nonnegative integer literal",
                    exp_tok.position,
                )
            self.advance()
            exponent = int(exp_tok.text)
            if isinstance(base, FormalSeries) and exponent > self.truncation:
                raise ParseError(
                    f"exponent {exponent} exceeds truncation {self.truncation}",
                    exp_tok.position,
                )
            return self._pow(base, exponent)
        return base

    def parse_atom(self):
        tok = self.advance()
        if tok.kind == "number":
            return Fraction(int(tok.text))
        if tok.kind == "name":
            if tok.text == "i":
                return I
            j = self.index_of.get(tok.text)
            if j is None:
                raise ParseError(f"unknown variable {tok.text!r}", tok.position)
            return FormalSeries.variable(len(self.names), self.truncation, j)
        if tok.kind == "op" and tok.text == "(":
            value = self.parse_expression()
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == ",":
                raise ParseError(
                    "map tuples may only appear at top level", nxt.position
                )
            self.expect_op(")")
            return value
        shown = tok.text if tok.kind != "end" else "end of input"
        raise ParseError(f"unexpected {shown!r}", tok.position)

    def parse_tuple(self) -> list:
        """Top-level '(' expr (',' expr)* ')'; returns the component list."""
        self.expect_op("(")
        components = [self.parse_expression()]
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == ",":
                self.advance()
                components.append(self.parse_expression())
            else:
                break
        self.expect_op(")")
        return components

    # -- arithmetic on mixed scalar/series values ---------------------------

    def _promote(self, value) -> FormalSeries:
        if isinstance(value, FormalSeries):
            return value
        return FormalSeries.constant(len(self.names), self.truncation, value)

    def _add(self, a, b, tok: _Token):
        negate = tok.text == "-"
        if isinstance(a, FormalSeries) or isinstance(b, FormalSeries):
            a, b = self._promote(a), self._promote(b)
        return a - b if negate else a + b

    def _mul(self, a, b):
        if isinstance(a, FormalSeries) or isinstance(b, FormalSeries):
            a, b = self._promote(a), self._promote(b)
        return a * b

    def _div(self, a, b, tok: _Token):
        if isinstance(b, FormalSeries):
            if not all(m.degree == 0 for m, _ in b.sorted_terms()):
                raise ParseError(
                    "division is only defined by a nonzero constant",
                    tok.position,
                )
            b = b.constant_term()
        if not b:
            raise ParseError("division by zero", tok.position)
        inverse = 1 / b if isinstance(b, GaussianRational) else Fraction(1) / b
        return self._mul(a, inverse)

    def _negate(self, value):
        return -value

    def _pow(self, base, exponent: int):
        if isinstance(base, FormalSeries):
            out = FormalSeries.constant(len(self.names), self.truncation, 1)
            for _ in range(exponent):
                out = out * base
            return out
        return base**exponent


def parse_series(
    text: str, names: Sequence[str], truncation: int
) -> FormalSeries:
    """Parse a single series expression over the named variables."""
    parser = _Parser(text, names, truncation)
    value = parser.parse_expression()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected trailing {tok.text!r}", tok.position)
    return parser._promote(value)


def parse_map(text: str, names: Sequence[str], truncation: int) -> FormalMap:
    """Parse a component tuple '(expr, ..., expr)' as a formal map."""
    parser = _Parser(text, names, truncation)
    tok = parser.peek()
    if not (tok.kind == "op" and tok.text == "("):
        raise ParseError("a map must be a parenthesized component tuple", tok.position)
    components = parser.parse_tuple()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected trailing {tok.text!r}", tok.position)
    if len(components) != len(names):
        raise ParseError(
            f"map has {len(components)} components for {len(names)} variables",
            1,
        )
    return FormalMap([parser._promote(c) for c in components])


def parse_components(
    text: str, names: Sequence[str], truncation: int
) -> list[FormalSeries]:
    """Parse a component tuple without the vanishing/shape demands of a
    map; used for vector fields."""
    parser = _Parser(text, names, truncation)
    tok = parser.peek()
    if not (tok.kind == "op" and tok.text == "("):
        raise ParseError(
            "components must form a parenthesized tuple", tok.position
        )
    components = parser.parse_tuple()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected trailing {tok.text!r}", tok.position)
    if len(components) != len(names):
        raise ParseError(
            f"{len(components)} components for {len(names)} variables", 1
        )
    return [parser._promote(c) for c in components]


# -- printing ---------------------------------------------------------------


def format_scalar(value: Scalar) -> str:
    """Reduced-form scalar text that re-parses to the same value."""
    if isinstance(value, GaussianRational):
        if not value.imag:
            return format_scalar(value.real)
        if not value.real:
            return _imaginary_text(value.imag)
        imag = _imaginary_text(abs(value.imag))
        sign = "+" if value.imag > 0 else "-"
        return f"({format_scalar(value.real)} {sign} {imag})"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _imaginary_text(coefficient: Fraction) -> str:
    if coefficient == 1:
        return "i"
    if coefficient == -1:
        return "-i"
    return f"{format_scalar(coefficient)}*i"


def _monomial_text(exponents, names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def _is_negative(value: Scalar) -> bool:
    if isinstance(value, GaussianRational):
        if value.imag and value.real:
            return False  # full complex coefficients keep their parens
        if value.imag:
            return value.imag < 0
        return value.real < 0
    return value < 0


def format_series(f: FormalSeries, names: Optional[Sequence[str]] = None) -> str:
    """Deterministic text form, terms in increasing monomial order."""
    if names is None:
        names = default_variables(f.dimension)
    if len(names) != f.dimension:
        raise ValueError("need one name per variable")
    terms = f.sorted_terms()
    if not terms:
        return "0"
    pieces = []
    for mi, coeff in terms:
        negative = _is_negative(coeff)
        magnitude = -coeff if negative else coeff
        mono = _monomial_text(mi.exponents, names)
        if not mono:
            body = format_scalar(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{format_scalar(magnitude)}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"{'-' if negative else '+'} {body}")
    return " ".join(pieces)


def format_map(phi: FormalMap, names: Optional[Sequence[str]] = None) -> str:
    if names is None:
        names = default_variables(phi.dimension)
    inner = ", ".join(format_series(c, names) for c in phi.components)
    return f"({inner})"


def format_components(
    components: Sequence[FormalSeries], names: Optional[Sequence[str]] = None
) -> str:
    if names is None:
        names = default_variables(components[0].dimension)
    inner = ", ".join(format_series(c, names) for c in components)
    return f"({inner})"
