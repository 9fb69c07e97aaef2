"""Sparse integer polynomials with exact parsing, evaluation and sizing.

A polynomial is a list of (integer coefficient, integer exponent vector)
pairs over variables x1..xn.  Exponent vectors may carry negative entries
internally (they arise from monomial changes of variables); the external
text and JSON parsers reject them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError

Exponent = tuple[int, ...]


def _graded_lex_key(exponent: Exponent) -> tuple:
    return (sum(exponent), exponent)


@dataclass(frozen=True)
class SparsePolynomial:
    """Immutable n-variate polynomial in canonical graded-lex term order."""

    n: int
    terms: tuple[tuple[int, Exponent], ...]

    @staticmethod
    def from_terms(n: int, pairs: Iterable[tuple[int, Sequence[int]]]) -> "SparsePolynomial":
        """Combine duplicate monomials, drop zero coefficients, sort terms.

        Raises ValueError if nothing survives (the zero polynomial is not
        representable) or if an exponent vector has the wrong length.
        """
        if n < 1:
            raise ValueError("variable count must be >= 1")
        combined: dict[Exponent, int] = {}
        for coeff, exponent in pairs:
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != n:
                raise ValueError(f"exponent vector {exponent} has length != {n}")
            coeff = int(coeff)
            combined[exponent] = combined.get(exponent, 0) + coeff
        kept = [(c, e) for e, c in combined.items() if c != 0]
        if not kept:
            raise ValueError("empty polynomial after combining terms")
        kept.sort(key=lambda t: _graded_lex_key(t[1]))
        return SparsePolynomial(n, tuple(kept))

    @property
    def support(self) -> tuple[Exponent, ...]:
        return tuple(e for _, e in self.terms)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.terms)

    def has_negative_exponent(self) -> bool:
        return any(e < 0 for _, exp in self.terms for e in exp)

    def scaled(self, factor: int) -> "SparsePolynomial":
        if factor == 0:
            raise ValueError("scaling by zero")
        return SparsePolynomial(self.n, tuple((factor * c, e) for c, e in self.terms))

    def to_text(self) -> str:
        parts = []
        for idx, (coeff, exponent) in enumerate(self.terms):
            factors = [
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(exponent)
                if e != 0
            ]
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if idx == 0:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"c": str(c), "a": list(e)} for c, e in self.terms],
        }

    @staticmethod
    def from_json_dict(obj: dict, allow_negative: bool = False) -> "SparsePolynomial":
        try:
            n = int(obj["n"])
            raw = obj["terms"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed polynomial JSON: {exc}") from exc
        pairs = []
        for entry in raw:
            coeff = int(str(entry["c"]))
            exponent = [int(e) for e in entry["a"]]
            if not allow_negative and any(e < 0 for e in exponent):
                raise ValueError(f"negative exponent in {exponent} rejected at input boundary")
            pairs.append((coeff, exponent))
        return SparsePolynomial.from_terms(n, pairs)

    def __str__(self) -> str:
        return self.to_text()


class _Scanner:
    """Offset-tracking tokenizer for the polynomial text grammar."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self) -> int:
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        if not self.peek().isdigit():
            raise ParseError("expected integer", self.pos)
        while self.peek().isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])


def _parse_term(scanner: _Scanner) -> tuple[int, dict[int, int]]:
    scanner.skip_ws()
    coeff = 1
    exponents: dict[int, int] = {}
    saw_factor = False
    if scanner.peek().isdigit():
        coeff = scanner.take_int()
        saw_factor = True
    while True:
        scanner.skip_ws()
        if scanner.peek() == "*":
            scanner.pos += 1
            scanner.skip_ws()
        if scanner.peek() != "x":
            break
        scanner.pos += 1
        if not scanner.peek().isdigit():
            raise ParseError("expected variable index after 'x'", scanner.pos)
        index = scanner.take_int()
        if index == 0:
            raise ParseError("variable index 0 is not allowed", scanner.pos)
        power = 1
        if scanner.peek() == "^":
            scanner.pos += 1
            if scanner.peek() == "-":
                raise ParseError("negative exponents rejected at input boundary", scanner.pos)
            if not scanner.peek().isdigit():
                raise ParseError("expected integer exponent after '^'", scanner.pos)
            power = scanner.take_int()
        exponents[index - 1] = exponents.get(index - 1, 0) + power
        saw_factor = True
    if not saw_factor:
        raise ParseError("expected term", scanner.pos)
    return coeff, exponents


def parse_polynomial(text: str) -> SparsePolynomial:
    """Parse `term (('+'|'-') term)*` with terms `[int] ('*'? x<k>('^'<e>)?)*`.

    Whitespace is insignificant.  Duplicate monomials are combined and a
    polynomial that cancels to zero is a ParseError.
    """
    scanner = _Scanner(text)
    scanner.skip_ws()
    sign = 1
    if scanner.peek() in "+-":
        sign = -1 if scanner.peek() == "-" else 1
        scanner.pos += 1
    raw_terms: list[tuple[int, dict[int, int]]] = []
    coeff, exponents = _parse_term(scanner)
    raw_terms.append((sign * coeff, exponents))
    while True:
        scanner.skip_ws()
        if scanner.pos == len(scanner.text):
            break
        op = scanner.peek()
        if op not in "+-":
            raise ParseError(f"unexpected character {op!r}", scanner.pos)
        scanner.pos += 1
        coeff, exponents = _parse_term(scanner)
        raw_terms.append((coeff if op == "+" else -coeff, exponents))
    n = max((i + 1 for _, exps in raw_terms for i in exps), default=1)
    pairs = []
    for coeff, exps in raw_terms:
        vector = [0] * n
        for i, e in exps.items():
            vector[i] = e
        pairs.append((coeff, vector))
    try:
        return SparsePolynomial.from_terms(n, pairs)
    except ValueError:
        raise ParseError("empty polynomial after combining terms", len(text)) from None


def integer_size(a: int) -> int:
    """Bit-size measure of an integer: ceil(1 + log2(1 + |a|))."""
    m = 1 + abs(a)
    return 1 + (m - 1).bit_length()


def size_of(f: SparsePolynomial) -> int:
    """Sparse encoding size: sum over terms of coefficient and exponent sizes."""
    total = 0
    for coeff, exponent in f.terms:
        total += integer_size(coeff)
        total += sum(integer_size(e) for e in exponent)
    return total


def evaluate_at_rational(f: SparsePolynomial, point: Sequence) -> Fraction:
    """Exact value of f at a rational point.

    Raises ZeroDivisionError when a coordinate is 0 and its exponent is
    negative.
    """
    if len(point) != f.n:
        raise ValueError(f"point has length {len(point)}, expected {f.n}")
    coords = [Fraction(p) for p in point]
    total = Fraction(0)
    for coeff, exponent in f.terms:
        value = Fraction(coeff)
        for x, e in zip(coords, exponent):
            if e:
                value *= x**e
        total += value
    return total
