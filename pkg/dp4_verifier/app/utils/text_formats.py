"""
Text formats for polynomials, ideals and subspaces.
"""
import logging
import re
from fractions import Fraction
from typing import List, Sequence

from sympy import Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from app.models.errors import RingMismatchError
from app.services.exact_algebra import Field, MultiPoly, PolynomialRing
from app.services.groebner import PolyIdeal

# Configure logging
logger = logging.getLogger(__name__)

STANDARD_POINTS = ("e0", "e1", "e2", "e3", "e4")

_TRANSFORMATIONS = standard_transformations + (convert_xor,)
_HEADER = re.compile(r"^ring:\s*(QQ|GF\((\d+)\))\[([^\]]*)\]\s*order=(\w+)(?:\((\d+),(\w+)\))?\s*$")


def parse_polynomial(ring: PolynomialRing, text: str) -> MultiPoly:
    """
    Parse ``coeff*var1^e1*var2^e2 + ...`` into a polynomial of ``ring``.

    Args:
        ring: target ring; every symbol in the text must be one of its variables
        text: polynomial text

    Returns:
        MultiPoly: the parsed polynomial
    """
    local = {name: Symbol(name) for name in ring.variables}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMATIONS, evaluate=True)
    except (SyntaxError, TypeError, ValueError) as e:
        raise ValueError(f"Cannot parse polynomial '{text}': {e}")

    unknown = sorted(str(s) for s in expr.free_symbols if str(s) not in ring.variables)
    if unknown:
        raise RingMismatchError(f"Unknown variables {unknown} for {ring}")

    rational_ring = PolynomialRing(ring.variables, Field(0), ring.order, ring.block_size, ring.rest_order)
    try:
        element = rational_ring.sympy_ring.from_expr(expr)
    except Exception as e:
        raise ValueError(f"'{text}' is not a polynomial: {e}")
    field = rational_ring.field
    terms = {monom: field.to_fraction(c) for monom, c in element.iterterms()}
    return ring.from_terms(terms)


def format_ideal(ideal: PolyIdeal) -> str:
    """Header line ``ring: ...`` followed by one generator per line"""
    lines = [f"ring: {ideal.ring.header()}"]
    lines.extend(g.text() for g in ideal.generators)
    return "\n".join(lines)


def parse_ideal(text: str) -> PolyIdeal:
    """Inverse of :func:`format_ideal`"""
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines:
        raise ValueError("Empty ideal text")
    match = _HEADER.match(lines[0])
    if not match:
        raise ValueError(f"Malformed ring header '{lines[0]}'")
    field = Field(int(match.group(2))) if match.group(2) else Field(0)
    variables = tuple(v.strip() for v in match.group(3).split(",") if v.strip())
    order = match.group(4)
    block_size = int(match.group(5)) if match.group(5) else 0
    rest_order = match.group(6) or "grevlex"
    ring = PolynomialRing(variables, field, order, block_size, rest_order)
    return PolyIdeal(ring, tuple(parse_polynomial(ring, line) for line in lines[1:]))


def format_rows(field: Field, rows: Sequence[Sequence]) -> str:
    """Row-major matrix text: entries separated by ',' and rows by ';'"""
    return ";".join(",".join(field.format(x) for x in row) for row in rows)


def parse_rows(text: str, ncols: int = 5) -> List[List[Fraction]]:
    """
    Parse a subspace given as rows or as named standard points.

    Args:
        text: "1,0,0,0,0;0,1,0,0,0" or "e0,e1,e4"
        ncols: ambient dimension

    Returns:
        List[List[Fraction]]: the rows
    """
    text = text.strip()
    if not text:
        raise ValueError("Empty subspace text")
    tokens = [t.strip() for t in text.split(",")]
    if ";" not in text and all(t in STANDARD_POINTS for t in tokens):
        rows = []
        for token in tokens:
            index = STANDARD_POINTS.index(token)
            if index >= ncols:
                raise ValueError(f"Point {token} outside a {ncols}-dimensional space")
            rows.append([Fraction(int(i == index)) for i in range(ncols)])
        return rows

    rows = []
    for chunk in text.split(";"):
        entries = [e.strip() for e in chunk.split(",") if e.strip()]
        if len(entries) != ncols:
            raise ValueError(f"Row '{chunk}' has {len(entries)} entries, expected {ncols}")
        try:
            rows.append([Fraction(e) for e in entries])
        except ValueError:
            raise ValueError(f"Row '{chunk}' contains a non-rational entry")
    return rows


def format_coefficients(coefficients: Sequence[int]) -> str:
    """Ascending integer coefficients as ``1 + 4q + 10q^2``"""
    pieces = []
    for k, c in enumerate(coefficients):
        if c == 0:
            continue
        mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
        magnitude = abs(c)
        body = str(magnitude) if not mono else (mono if magnitude == 1 else f"{magnitude}{mono}")
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(pieces) or "0"
