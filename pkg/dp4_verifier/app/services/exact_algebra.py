"""
Exact algebra service.
Fields, sparse multivariate polynomials, Gram matrices of quadratic forms and binary forms.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import Rational, Symbol, isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import MonomialOrder, grevlex, lex
from sympy.polys.polyerrors import GeneratorsError
from sympy.polys.rings import PolyElement, PolyRing

from app.models.errors import CharacteristicError, InvalidGeometryError, RingMismatchError

# Configure logging
logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction, str, "FieldScalar"]


@lru_cache(maxsize=None)
def _domain(characteristic: int):
    # one domain object per characteristic: GF domains hash by identity of their dtype
    if characteristic == 0:
        return QQ
    return GF(characteristic, symmetric=False)


@dataclass(frozen=True)
class Field:
    """The rationals (characteristic 0) or a prime field F_p"""
    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise ValueError(f"Field characteristic must be 0 or a prime, got {self.characteristic}")

    @classmethod
    def rational(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def domain(self):
        """The sympy ground domain (QQ or GF(p))"""
        return _domain(self.characteristic)

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def element(self, value: Any):
        """
        Convert a Python value into a raw domain element.

        Args:
            value: int, Fraction, sympy Rational, "a/b" text, FieldScalar or a raw element

        Returns:
            The element of ``self.domain``
        """
        dom = self.domain
        if isinstance(value, FieldScalar):
            if value.field != self:
                raise RingMismatchError(f"Scalar over {value.field} used in {self}")
            return value.value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return dom.convert(value)
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Rational):
            value = Fraction(int(value.p), int(value.q))
        if isinstance(value, Fraction):
            if self.characteristic and value.denominator % self.characteristic == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({self.characteristic})")
            return dom.convert(value.numerator) / dom.convert(value.denominator)
        if dom.of_type(value):
            return value
        raise TypeError(f"Cannot convert {value!r} into {self}")

    def to_fraction(self, raw) -> Fraction:
        """Rational value of a raw element (residues in [0, p) for prime fields)"""
        if self.characteristic:
            return Fraction(int(raw) % self.characteristic)
        return Fraction(int(raw.numerator), int(raw.denominator))

    def format(self, raw) -> str:
        value = self.to_fraction(raw)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def parse(self, text: str):
        return self.element(text)

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


@dataclass(frozen=True)
class FieldScalar:
    """An exact field element together with its field"""
    field: Field
    value: Any

    @classmethod
    def of(cls, field: Field, value: Any) -> "FieldScalar":
        return cls(field, field.element(value))

    def _other(self, other) -> Any:
        return self.field.element(other)

    def __add__(self, other):
        return FieldScalar(self.field, self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldScalar(self.field, self.value - self._other(other))

    def __rsub__(self, other):
        return FieldScalar(self.field, self._other(other) - self.value)

    def __mul__(self, other):
        return FieldScalar(self.field, self.value * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        divisor = self._other(other)
        if not divisor:
            raise ZeroDivisionError("division by zero in exact field")
        return FieldScalar(self.field, self.value / divisor)

    def __neg__(self):
        return FieldScalar(self.field, -self.value)

    def __bool__(self) -> bool:
        return bool(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldScalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.element(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return False

    def __hash__(self) -> int:
        return hash((self.field.characteristic, self.to_fraction()))

    def to_fraction(self) -> Fraction:
        return self.field.to_fraction(self.value)

    def __str__(self) -> str:
        return self.field.format(self.value)


class BlockOrder(MonomialOrder):
    """Elimination order: grevlex on the first ``size`` variables, ties broken on the rest"""
    alias = "block"
    is_global = True

    def __init__(self, size: int, rest: str = "grevlex"):
        self.size = size
        self.rest = rest
        self._rest_key = lex if rest == "lex" else grevlex

    def __call__(self, monomial):
        return (grevlex(monomial[:self.size]), self._rest_key(monomial[self.size:]))

    def __repr__(self):
        return f"BlockOrder({self.size}, {self.rest!r})"

    def __eq__(self, other):
        return isinstance(other, BlockOrder) and (self.size, self.rest) == (other.size, other.rest)

    def __hash__(self):
        return hash((self.__class__.__name__, self.size, self.rest))


ORDER_TAGS = ("grevlex", "lex", "block")


@dataclass(frozen=True)
class PolynomialRing:
    """Ring descriptor: ordered variable names, coefficient field and monomial order"""
    variables: Tuple[str, ...]
    field: Field = Field(0)
    order: str = "grevlex"
    block_size: int = 0
    rest_order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("A polynomial ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"Duplicate variable names in {self.variables}")
        if self.order not in ORDER_TAGS:
            raise ValueError(f"Unknown monomial order '{self.order}'")
        if self.order == "block" and not 0 < self.block_size <= len(self.variables):
            raise ValueError(f"Block size {self.block_size} out of range for {len(self.variables)} variables")

    @property
    def sympy_ring(self) -> PolyRing:
        return _sympy_ring(self)

    @property
    def monomial_order(self) -> MonomialOrder:
        if self.order == "block":
            return BlockOrder(self.block_size, self.rest_order)
        return lex if self.order == "lex" else grevlex

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise RingMismatchError(f"Unknown variable '{name}' in {self}")

    def gen(self, name: str) -> "MultiPoly":
        return MultiPoly(self, self.sympy_ring.gens[self.index(name)])

    def gens(self) -> Tuple["MultiPoly", ...]:
        return tuple(MultiPoly(self, g) for g in self.sympy_ring.gens)

    def const(self, value: Any) -> "MultiPoly":
        return MultiPoly(self, self.sympy_ring.ground_new(self.field.element(value)))

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, self.sympy_ring.zero)

    def one(self) -> "MultiPoly":
        return MultiPoly(self, self.sympy_ring.one)

    def from_terms(self, terms: Mapping[Tuple[int, ...], Any]) -> "MultiPoly":
        element = {monom: self.field.element(c) for monom, c in terms.items()}
        return MultiPoly(self, self.sympy_ring.from_dict(element))

    def wrap(self, element: PolyElement) -> "MultiPoly":
        return MultiPoly(self, element)

    def with_order(self, order: str, block_size: int = 0, rest_order: str = "grevlex") -> "PolynomialRing":
        return PolynomialRing(self.variables, self.field, order, block_size, rest_order)

    def header(self) -> str:
        order = self.order
        if order == "block":
            order = f"block({self.block_size},{self.rest_order})"
        return f"{self.field}[{','.join(self.variables)}] order={order}"

    def __str__(self) -> str:
        return self.header()


@lru_cache(maxsize=None)
def _sympy_ring(ring: PolynomialRing) -> PolyRing:
    symbols = [Symbol(name) for name in ring.variables]
    return PolyRing(symbols, ring.field.domain, ring.monomial_order)


def _format_monomial(names: Sequence[str], monom: Sequence[int]) -> str:
    parts = []
    for name, e in zip(names, monom):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


@dataclass(frozen=True)
class MultiPoly:
    """A polynomial of a PolynomialRing; canonical through the sympy element"""
    ring: PolynomialRing
    element: PolyElement

    def _coerce(self, other) -> PolyElement:
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise RingMismatchError(f"Ring mismatch: {self.ring} vs {other.ring}")
            return other.element
        return self.ring.const(other).element

    def __add__(self, other):
        return MultiPoly(self.ring, self.element + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return MultiPoly(self.ring, self.element - self._coerce(other))

    def __rsub__(self, other):
        return MultiPoly(self.ring, self._coerce(other) - self.element)

    def __mul__(self, other):
        return MultiPoly(self.ring, self.element * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return MultiPoly(self.ring, -self.element)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("Negative powers are not polynomials")
        return MultiPoly(self.ring, self.element ** n)

    def __bool__(self) -> bool:
        return bool(self.element)

    @property
    def is_zero(self) -> bool:
        return not self.element

    def terms(self) -> List[Tuple[Tuple[int, ...], FieldScalar]]:
        """Terms in decreasing order under the ring's monomial order"""
        field = self.ring.field
        return [(monom, FieldScalar(field, c)) for monom, c in self.element.terms()]

    def leading_monomial(self) -> Tuple[int, ...]:
        return self.element.LM

    def degree(self) -> int:
        if not self.element:
            return -1
        return max(sum(monom) for monom in self.element.itermonoms())

    def variables_used(self) -> Tuple[str, ...]:
        used = set()
        for monom in self.element.itermonoms():
            used.update(i for i, e in enumerate(monom) if e)
        return tuple(name for i, name in enumerate(self.ring.variables) if i in used)

    def is_homogeneous_in(self, names: Sequence[str]) -> bool:
        idx = [self.ring.index(n) for n in names]
        degrees = {sum(monom[i] for i in idx) for monom in self.element.itermonoms()}
        return len(degrees) <= 1

    def diff(self, name: str) -> "MultiPoly":
        return MultiPoly(self.ring, self.element.diff(self.ring.sympy_ring.gens[self.ring.index(name)]))

    def to_ring(self, target: PolynomialRing) -> "MultiPoly":
        """Move into a ring with a superset (or reordering) of the used variables"""
        if target.field != self.ring.field:
            raise RingMismatchError(f"Field mismatch: {self.ring.field} vs {target.field}")
        try:
            return MultiPoly(target, self.element.set_ring(target.sympy_ring))
        except GeneratorsError:
            missing = [n for n in self.variables_used() if n not in target.variables]
            raise RingMismatchError(f"Variables {missing} do not exist in {target}")

    def substitute(self, mapping: Mapping[str, Any], target: Optional[PolynomialRing] = None) -> "MultiPoly":
        """
        Substitute polynomials (or scalars) for variables.

        Args:
            mapping: variable name -> MultiPoly of the target ring or scalar
            target: ring of the result (defaults to this ring)

        Returns:
            MultiPoly: the substituted polynomial in the target ring
        """
        target = target or self.ring
        if target.field != self.ring.field:
            raise RingMismatchError(f"Field mismatch: {self.ring.field} vs {target.field}")
        unknown = [name for name in mapping if name not in self.ring.variables]
        if unknown:
            raise RingMismatchError(f"Substitution for unknown variables {unknown}")

        sring = target.sympy_ring
        images: List[Optional[PolyElement]] = []
        for name in self.ring.variables:
            if name in mapping:
                image = mapping[name]
                if isinstance(image, MultiPoly):
                    if image.ring != target:
                        raise RingMismatchError(f"Image of '{name}' lives in {image.ring}, expected {target}")
                    images.append(image.element)
                else:
                    images.append(target.const(image).element)
            elif name in target.variables:
                images.append(sring.gens[target.index(name)])
            else:
                images.append(None)

        powers: Dict[Tuple[int, int], PolyElement] = {}
        result = sring.zero
        for monom, coeff in self.element.iterterms():
            term = sring.ground_new(coeff)
            for i, e in enumerate(monom):
                if not e:
                    continue
                if images[i] is None:
                    raise RingMismatchError(
                        f"Variable '{self.ring.variables[i]}' has no image in {target}")
                if (i, e) not in powers:
                    powers[(i, e)] = images[i] ** e
                term = term * powers[(i, e)]
            result = result + term
        return MultiPoly(target, result)

    def evaluate(self, point: Mapping[str, Any]) -> FieldScalar:
        """Value at a point given for every variable that occurs"""
        field = self.ring.field
        values = []
        for name in self.ring.variables:
            values.append(field.element(point[name]) if name in point else None)
        total = field.domain.zero
        for monom, coeff in self.element.iterterms():
            term = coeff
            for i, e in enumerate(monom):
                if e:
                    if values[i] is None:
                        raise RingMismatchError(f"No value given for '{self.ring.variables[i]}'")
                    term = term * values[i] ** e
            total = total + term
        return FieldScalar(field, total)

    def coefficients_in(self, names: Sequence[str]) -> Dict[Tuple[int, ...], "MultiPoly"]:
        """
        Split by monomials in ``names``; coefficients live in the ring of the other variables.

        Args:
            names: variables that form the monomials

        Returns:
            Dict mapping exponent tuples (ordered as ``names``) to coefficient polynomials.
            When no other variable exists the coefficients are constants of a one-variable ring.
        """
        idx = [self.ring.index(n) for n in names]
        others = [n for n in self.ring.variables if n not in names]
        coeff_ring = PolynomialRing(tuple(others) or ("_",), self.ring.field)
        other_idx = [self.ring.index(n) for n in others]
        buckets: Dict[Tuple[int, ...], Dict[Tuple[int, ...], Any]] = {}
        for monom, coeff in self.element.iterterms():
            key = tuple(monom[i] for i in idx)
            rest = tuple(monom[i] for i in other_idx) if others else (0,)
            buckets.setdefault(key, {})[rest] = coeff
        return {key: MultiPoly(coeff_ring, coeff_ring.sympy_ring.from_dict(terms))
                for key, terms in buckets.items()}

    def text(self) -> str:
        """Polynomial text format: ``coeff*var1^e1*var2^e2 + ...``"""
        if not self.element:
            return "0"
        field = self.ring.field
        pieces = []
        for monom, coeff in self.element.terms():
            value = field.to_fraction(coeff)
            negative = value < 0
            magnitude = -value if negative else value
            mono = _format_monomial(self.ring.variables, monom)
            if magnitude.denominator == 1:
                number = str(magnitude.numerator)
            else:
                number = f"{magnitude.numerator}/{magnitude.denominator}"
            if not mono:
                body = number
            elif magnitude == 1:
                body = mono
            else:
                body = f"{number}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.text()


def poly_arith(op: str, *args: MultiPoly, mapping: Optional[Mapping[str, Any]] = None,
               target: Optional[PolynomialRing] = None) -> MultiPoly:
    """
    Exact polynomial arithmetic entry point.

    Args:
        op: "add", "mul" or "substitute"
        args: operands sharing one ring (a single operand for substitute)
        mapping: variable -> image, for substitute
        target: ring of the substituted result

    Returns:
        MultiPoly: the canonical result
    """
    if not args:
        raise ValueError("poly_arith needs at least one operand")
    first = args[0]
    for other in args[1:]:
        if other.ring != first.ring:
            raise RingMismatchError(f"Ring mismatch: {first.ring} vs {other.ring}")
    if op == "add":
        result = first
        for other in args[1:]:
            result = result + other
        return result
    if op == "mul":
        result = first
        for other in args[1:]:
            result = result * other
        return result
    if op == "substitute":
        if len(args) != 1:
            raise ValueError("substitute takes exactly one polynomial")
        return first.substitute(mapping or {}, target)
    raise ValueError(f"Unknown polynomial operation '{op}'")


def poly_det(rows: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant of a square matrix of polynomials (fraction-free elimination)"""
    n = len(rows)
    if not n or any(len(r) != n for r in rows):
        raise ValueError("poly_det needs a non-empty square matrix")
    ring = rows[0][0].ring
    for row in rows:
        for entry in row:
            if entry.ring != ring:
                raise RingMismatchError(f"Ring mismatch: {ring} vs {entry.ring}")
    sring = ring.sympy_ring
    matrix = DomainMatrix([[entry.element for entry in row] for row in rows], (n, n), sring.to_domain())
    return MultiPoly(ring, sring.ring_new(matrix.det()))


# Linear algebra over a field on lists of raw domain elements


def field_rref(field: Field, rows: Sequence[Sequence[Any]], ncols: int) -> Tuple[List[List[Any]], Tuple[int, ...]]:
    """
    Reduced row echelon form of a matrix over ``field``.

    Args:
        field: coefficient field
        rows: matrix rows of raw elements (may be empty)
        ncols: number of columns

    Returns:
        (nonzero RREF rows, pivot columns)
    """
    if not rows:
        return [], ()
    matrix = DomainMatrix([list(r) for r in rows], (len(rows), ncols), field.domain)
    reduced, pivots = matrix.rref()
    reduced_rows = reduced.to_list()[:len(pivots)]
    return reduced_rows, tuple(pivots)


def field_rank(field: Field, rows: Sequence[Sequence[Any]], ncols: int) -> int:
    return len(field_rref(field, rows, ncols)[1])


def field_nullspace(field: Field, rows: Sequence[Sequence[Any]], ncols: int) -> List[List[Any]]:
    """Basis of {x : rows · x = 0}, as a list of vectors"""
    dom = field.domain
    if not rows:
        return [[dom.one if i == j else dom.zero for j in range(ncols)] for i in range(ncols)]
    matrix = DomainMatrix([list(r) for r in rows], (len(rows), ncols), dom)
    return matrix.nullspace().to_list()


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Symmetric Gram matrix; entries in the field or in a ring of parameters"""
    variables: Tuple[str, ...]
    matrix: DomainMatrix
    field: Field
    parameters: Optional[PolynomialRing] = None

    @property
    def n(self) -> int:
        return len(self.variables)

    def entry(self, i: int, j: int) -> Union[MultiPoly, FieldScalar]:
        value = self.matrix.to_list()[i][j]
        if self.parameters is not None:
            return MultiPoly(self.parameters, value)
        return FieldScalar(self.field, value)

    def rank(self) -> int:
        return self.matrix.rank()

    def det(self) -> Union[MultiPoly, FieldScalar]:
        value = self.matrix.det()
        if self.parameters is not None:
            return MultiPoly(self.parameters, self.parameters.sympy_ring.ring_new(value))
        return FieldScalar(self.field, value)

    def is_symmetric(self) -> bool:
        rows = self.matrix.to_list()
        return all(rows[i][j] == rows[j][i] for i in range(self.n) for j in range(self.n))


def gram_and_rank(q: MultiPoly, variables: Sequence[str]) -> Tuple[SymMatrix, int]:
    """
    Gram matrix of a quadratic form and its rank.

    Args:
        q: polynomial homogeneous of degree 2 in ``variables``; other variables are parameters
        variables: the form's variables, in matrix order

    Returns:
        Tuple[SymMatrix, int]: M with q = xᵀMx, and rank over the fraction field of the parameters
    """
    field = q.ring.field
    if field.characteristic == 2:
        raise CharacteristicError("Gram matrices are not defined for quadratic forms in characteristic 2")
    variables = tuple(variables)
    idx = [q.ring.index(v) for v in variables]
    params = tuple(n for n in q.variables_used() if n not in variables)
    param_ring = PolynomialRing(params, field) if params else None
    param_idx = [q.ring.index(p) for p in params]

    if param_ring is not None:
        sring = param_ring.sympy_ring
        domain = sring.to_domain()
        zero = sring.zero
    else:
        domain = field.domain
        zero = domain.zero
    half = field.element(Fraction(1, 2))
    n = len(variables)
    entries = [[zero for _ in range(n)] for _ in range(n)]

    for monom, coeff in q.element.iterterms():
        positions = [k for k, i in enumerate(idx) for _ in range(monom[i])]
        if len(positions) != 2:
            raise InvalidGeometryError(f"{q.text()} is not a quadratic form in {list(variables)}")
        if param_ring is not None:
            value = sring.term_new(tuple(monom[i] for i in param_idx), coeff)
        else:
            value = coeff
        i, j = positions
        if i == j:
            entries[i][i] = entries[i][i] + value
        else:
            entries[i][j] = entries[i][j] + value * half
            entries[j][i] = entries[j][i] + value * half

    matrix = DomainMatrix(entries, (n, n), domain)
    rank = matrix.rank()
    logger.debug(f"Gram matrix of {q.text()} in {variables}: rank {rank}")
    return SymMatrix(variables, matrix, field, param_ring), rank


def reconstruct_quadratic(gram: SymMatrix, ring: PolynomialRing) -> MultiPoly:
    """Rebuild xᵀMx in ``ring`` (which must contain the variables and parameters)"""
    rows = gram.matrix.to_list()
    xs = [ring.gen(v) for v in gram.variables]
    total = ring.zero()
    for i in range(gram.n):
        for j in range(gram.n):
            value = rows[i][j]
            if not value:
                continue
            if gram.parameters is not None:
                entry = MultiPoly(gram.parameters, value).to_ring(ring)
            else:
                entry = ring.const(FieldScalar(gram.field, value))
            total = total + entry * xs[i] * xs[j]
    return total


@dataclass(frozen=True)
class BinaryFormSystem:
    """Homogeneous forms in two variables (s0 : s1)"""
    forms: Tuple[MultiPoly, ...]
    s0: str = "s0"
    s1: str = "s1"

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        if not self.forms:
            raise ValueError("A binary form system needs at least one form")
        ring = self.forms[0].ring
        for form in self.forms:
            if form.ring != ring:
                raise RingMismatchError(f"Ring mismatch: {ring} vs {form.ring}")
            extra = [n for n in form.variables_used() if n not in (self.s0, self.s1)]
            if extra:
                raise InvalidGeometryError(f"Binary form {form.text()} involves {extra}")
            if not form.is_homogeneous_in((self.s0, self.s1)):
                raise InvalidGeometryError(f"Binary form {form.text()} is not homogeneous")

    @property
    def ring(self) -> PolynomialRing:
        return self.forms[0].ring


@dataclass(frozen=True)
class RootCluster:
    """Roots of one squarefree factor of the gcd"""
    factor: str
    degree: int
    multiplicity: int
    point: Optional[Tuple[str, str]] = None


@dataclass(frozen=True)
class BinaryIntersection:
    infinite: bool
    clusters: Tuple[RootCluster, ...] = ()
    gcd: str = ""

    @property
    def distinct_roots(self) -> int:
        return sum(c.degree for c in self.clusters)

    @property
    def length(self) -> int:
        return sum(c.degree * c.multiplicity for c in self.clusters)


@lru_cache(maxsize=None)
def _univariate_ring(field: Field) -> PolyRing:
    return PolyRing([Symbol("x")], field.domain, lex)


def _homogenize(field: Field, factor: PolyElement, degree: int, ring: PolynomialRing,
                s0: str, s1: str) -> MultiPoly:
    i0, i1 = ring.index(s0), ring.index(s1)
    terms = {}
    for (e,), coeff in factor.iterterms():
        monom = [0] * len(ring.variables)
        monom[i0] = degree - e
        monom[i1] = e
        terms[tuple(monom)] = coeff
    return MultiPoly(ring, ring.sympy_ring.from_dict(terms))


def binary_intersection(system: BinaryFormSystem) -> BinaryIntersection:
    """
    Common roots of binary forms, with multiplicities, over the algebraic closure.

    Args:
        system: homogeneous forms in (s0 : s1)

    Returns:
        BinaryIntersection: squarefree clusters of the gcd, or the infinite flag when all forms vanish
    """
    ring = system.ring
    field = ring.field
    nonzero = [f for f in system.forms if not f.is_zero]
    if not nonzero:
        logger.debug("All binary forms vanish: infinite intersection")
        return BinaryIntersection(infinite=True)

    i0, i1 = ring.index(system.s0), ring.index(system.s1)
    uni = _univariate_ring(field)
    valuation = None
    common = None
    for form in nonzero:
        v = min(monom[i0] for monom in form.element.itermonoms())
        dehomogenized = uni.from_dict({(monom[i1],): c for monom, c in form.element.iterterms()})
        valuation = v if valuation is None else min(valuation, v)
        common = dehomogenized if common is None else common.gcd(dehomogenized)

    clusters: List[RootCluster] = []
    if valuation:
        clusters.append(RootCluster(factor=system.s0, degree=1, multiplicity=valuation, point=("0", "1")))
    degree = common.degree()
    if degree > 0:
        _, factors = common.sqf_list()
        for factor, k in factors:
            d = factor.degree()
            point = None
            if d == 1:
                a = factor.coeff(uni.gens[0])
                b = factor.const()
                point = ("1", field.format(-b / a))
            text = _homogenize(field, factor, d, ring, system.s0, system.s1).text()
            clusters.append(RootCluster(factor=text, degree=d, multiplicity=k, point=point))

    gcd_poly = _homogenize(field, common.monic(), max(degree, 0), ring, system.s0, system.s1)
    if valuation:
        gcd_poly = gcd_poly * ring.gen(system.s0) ** valuation
    return BinaryIntersection(infinite=False, clusters=tuple(clusters), gcd=gcd_poly.text())


def random_scalar(field: Field, rng, bound: int = 5) -> Any:
    """Raw element drawn from a numpy Generator: small fractions over QQ, residues over GF(p)"""
    if field.characteristic:
        return field.element(int(rng.integers(0, field.characteristic)))
    numerator = int(rng.integers(-bound, bound + 1))
    denominator = int(rng.integers(1, 3))
    return field.element(Fraction(numerator, denominator))
