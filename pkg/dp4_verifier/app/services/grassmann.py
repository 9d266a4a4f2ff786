"""
Grassmann geometry service.
Pluecker machinery for Gr(2,5), the fourfold Y, its lines and planes, the vertex conic,
the dual conic and the plane sweep R.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Any, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from app.models.errors import InvalidGeometryError
from app.services.exact_algebra import (
    BinaryFormSystem,
    BinaryIntersection,
    Field,
    MultiPoly,
    PolynomialRing,
    binary_intersection,
    field_nullspace,
    field_rank,
    field_rref,
    poly_det,
    random_scalar,
)
from app.services.groebner import PolyIdeal, eliminate, reduced_gb

# Configure logging
logger = logging.getLogger(__name__)

AMBIENT = 5
PLUCKER_PAIRS: Tuple[Tuple[int, int], ...] = tuple(combinations(range(AMBIENT), 2))
PLUCKER_NAMES: Tuple[str, ...] = tuple(f"p{i}{j}" for i, j in PLUCKER_PAIRS)
PAIR_INDEX = {pair: k for k, pair in enumerate(PLUCKER_PAIRS)}
CONIC_VARIABLES = ("a0", "a1", "a2", "a3", "a4")
BINARY_VARIABLES = ("s0", "s1")


def _unit(field: Field, n: int, i: int) -> Tuple[Any, ...]:
    dom = field.domain
    return tuple(dom.one if j == i else dom.zero for j in range(n))


def _vector(field: Field, values: Sequence) -> Tuple[Any, ...]:
    return tuple(field.element(x) for x in values)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of F^n, stored as its reduced row echelon basis"""
    field: Field
    n: int
    rows: Tuple[Tuple[Any, ...], ...]

    @classmethod
    def span(cls, field: Field, vectors: Sequence[Sequence], n: Optional[int] = None) -> "Subspace":
        vectors = [_vector(field, v) for v in vectors]
        if n is None:
            if not vectors:
                raise ValueError("The ambient dimension is needed for an empty spanning set")
            n = len(vectors[0])
        if any(len(v) != n for v in vectors):
            raise InvalidGeometryError(f"Vectors must have {n} entries")
        reduced, _ = field_rref(field, vectors, n)
        return cls(field, n, tuple(tuple(r) for r in reduced))

    @classmethod
    def from_basis(cls, field: Field, vectors: Sequence[Sequence], n: Optional[int] = None) -> "Subspace":
        """Span of vectors that must be linearly independent"""
        space = cls.span(field, vectors, n)
        if space.dim != len(vectors):
            raise InvalidGeometryError(f"{len(vectors)} vectors span only a {space.dim}-dimensional space")
        return space

    @classmethod
    def whole(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, tuple(_unit(field, n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.field == other.field
                and self.n == other.n and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.field.characteristic, self.n, self.fractions()))

    def fractions(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(tuple(self.field.to_fraction(x) for x in row) for row in self.rows)

    def contains(self, vector: Sequence) -> bool:
        vector = _vector(self.field, vector)
        return field_rank(self.field, list(self.rows) + [vector], self.n) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return self.join(other).dim == self.dim

    def join(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, list(self.rows) + list(other.rows), self.n)

    def annihilator(self) -> "Subspace":
        """Linear forms vanishing on the subspace"""
        return Subspace.span(self.field, field_nullspace(self.field, self.rows, self.n), self.n)

    def intersect(self, other: "Subspace") -> "Subspace":
        forms = list(self.annihilator().rows) + list(other.annihilator().rows)
        return Subspace.span(self.field, field_nullspace(self.field, forms, self.n), self.n)

    def complement(self) -> List[Tuple[Any, ...]]:
        """Standard basis vectors at the non-pivot columns"""
        _, pivots = field_rref(self.field, self.rows, self.n)
        return [_unit(self.field, self.n, j) for j in range(self.n) if j not in pivots]

    def text(self) -> str:
        return ";".join(",".join(self.field.format(x) for x in row) for row in self.rows)


def wedge_vectors(x: Sequence, y: Sequence) -> Tuple[Any, ...]:
    """p_ij = x_i y_j - x_j y_i in the fixed Pluecker order"""
    return tuple(x[i] * y[j] - x[j] * y[i] for i, j in PLUCKER_PAIRS)


def _p(coords: Sequence, i: int, j: int):
    return coords[PAIR_INDEX[(i, j)]]


def plucker_relations(coords: Sequence) -> Tuple[Any, ...]:
    """
    Values of the five Pluecker quadrics.

    The k-th relation omits index k: p_ij p_kl - p_ik p_jl + p_il p_jk for i<j<k<l.
    """
    values = []
    for omitted in range(AMBIENT):
        i, j, k, l = [m for m in range(AMBIENT) if m != omitted]
        values.append(_p(coords, i, j) * _p(coords, k, l) - _p(coords, i, k) * _p(coords, j, l)
                      + _p(coords, i, l) * _p(coords, j, k))
    return tuple(values)


def linear_forms(coords: Sequence) -> Tuple[Any, Any]:
    """(H1, H2) = (p12 - p03, p13 - p24)"""
    return (_p(coords, 1, 2) - _p(coords, 0, 3), _p(coords, 1, 3) - _p(coords, 2, 4))


def linear_form_rows(field: Field) -> List[Tuple[Any, ...]]:
    """Coefficient rows of H1 and H2 on the ten Pluecker coordinates"""
    rows = []
    for k in range(2):
        rows.append(tuple(linear_forms(_unit(field, len(PLUCKER_PAIRS), m))[k]
                          for m in range(len(PLUCKER_PAIRS))))
    return rows


@dataclass(frozen=True)
class PlueckerVector:
    """Ten Pluecker coordinates p01..p34"""
    field: Field
    coords: Tuple[Any, ...]

    @classmethod
    def of(cls, field: Field, values: Sequence) -> "PlueckerVector":
        if len(values) != len(PLUCKER_PAIRS):
            raise InvalidGeometryError(f"A Pluecker vector has {len(PLUCKER_PAIRS)} coordinates")
        return cls(field, _vector(field, values))

    @property
    def decomposable(self) -> bool:
        return not any(plucker_relations(self.coords))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def coordinate(self, name: str) -> Fraction:
        return self.field.to_fraction(self.coords[PLUCKER_NAMES.index(name)])

    def as_dict(self) -> dict:
        return {name: self.field.format(c) for name, c in zip(PLUCKER_NAMES, self.coords)}

    def support(self) -> Subspace:
        """Row space of the skew matrix; the 2-space V2 when decomposable"""
        dom = self.field.domain
        matrix = [[dom.zero] * AMBIENT for _ in range(AMBIENT)]
        for (i, j), c in zip(PLUCKER_PAIRS, self.coords):
            matrix[i][j] = c
            matrix[j][i] = -c
        return Subspace.span(self.field, matrix, AMBIENT)


def wedge2(v2: Subspace) -> PlueckerVector:
    """Pluecker vector of a 2-dimensional subspace of V5"""
    if v2.n != AMBIENT or v2.dim != 2:
        raise InvalidGeometryError(f"wedge2 needs a 2-dimensional subspace of F^5, got dim {v2.dim}")
    return PlueckerVector(v2.field, wedge_vectors(v2.rows[0], v2.rows[1]))


def plucker_ring(field: Field = Field(0)) -> PolynomialRing:
    return PolynomialRing(PLUCKER_NAMES, field)


def plucker_relation_polys(ring: PolynomialRing) -> List[MultiPoly]:
    p = {name: ring.gen(name) for name in PLUCKER_NAMES}
    return list(plucker_relations([p[name] for name in PLUCKER_NAMES]))


def linear_form_polys(ring: PolynomialRing) -> List[MultiPoly]:
    p = [ring.gen(name) for name in PLUCKER_NAMES]
    return list(linear_forms(p))


@lru_cache(maxsize=None)
def y_ideal(field: Field = Field(0)) -> PolyIdeal:
    """Five Pluecker quadrics and the two linear forms"""
    ring = plucker_ring(field)
    return PolyIdeal(ring, tuple(plucker_relation_polys(ring) + linear_form_polys(ring)))


def on_Y(v: PlueckerVector) -> bool:
    return v.decomposable and not any(linear_forms(v.coords))


def _points_for_quadrics(space: Subspace) -> List[Tuple[Any, ...]]:
    # basis vectors and pairwise sums polarize every quadratic form
    points = list(space.rows)
    for x, y in combinations(space.rows, 2):
        points.append(tuple(a + b for a, b in zip(x, y)))
    return points


def subspace_on_Y(space: Subspace) -> bool:
    """Every point of P(space) ⊂ P^9 lies on Y"""
    for point in _points_for_quadrics(space):
        if any(plucker_relations(point)) or any(linear_forms(point)):
            return False
    return True


def wedge_space(space: Subspace) -> Subspace:
    """∧²V ⊂ ∧²V5 for a subspace V of V5"""
    vectors = [wedge_vectors(x, y) for x, y in combinations(space.rows, 2)]
    return Subspace.span(space.field, vectors, len(PLUCKER_PAIRS))


def linear_kernel(field: Field) -> Subspace:
    """ker H1 ∩ ker H2 in ∧²V5"""
    return Subspace.span(field, field_nullspace(field, linear_form_rows(field), len(PLUCKER_PAIRS)),
                         len(PLUCKER_PAIRS))


@dataclass(frozen=True)
class FlagLine:
    """A line of Gr(2,5) given by the flag V1 ⊂ V3"""
    v1: Subspace
    v3: Subspace

    def __post_init__(self):
        if self.v1.n != AMBIENT or self.v3.n != AMBIENT:
            raise InvalidGeometryError("Flags live in F^5")
        if self.v1.field != self.v3.field:
            raise InvalidGeometryError("Flag subspaces over different fields")
        if self.v1.dim != 1 or self.v3.dim != 3:
            raise InvalidGeometryError(f"Invalid flag dimensions ({self.v1.dim}, {self.v3.dim})")
        if not self.v3.contains_subspace(self.v1):
            raise InvalidGeometryError("The vertex is not contained in the plane")

    @classmethod
    def from_vectors(cls, field: Field, vertex: Sequence, plane: Sequence[Sequence]) -> "FlagLine":
        return cls(Subspace.from_basis(field, [vertex], AMBIENT), Subspace.from_basis(field, plane, AMBIENT))

    @property
    def field(self) -> Field:
        return self.v1.field

    @property
    def vertex(self) -> Tuple[Any, ...]:
        return self.v1.rows[0]

    def plane_complement(self) -> List[Tuple[Any, ...]]:
        """Two vectors of V3 completing the vertex to a basis"""
        chosen = [self.vertex]
        for row in self.v3.rows:
            if field_rank(self.field, chosen + [row], AMBIENT) > len(chosen):
                chosen.append(row)
            if len(chosen) == 3:
                break
        return chosen[1:]

    def describe(self) -> dict:
        return {"vertex": self.v1.text(), "plane": self.v3.text()}


def line_span(line: FlagLine) -> Subspace:
    """The 2-space v ∧ V3 of ∧²V5"""
    v = line.vertex
    return Subspace.from_basis(line.field, [wedge_vectors(v, w) for w in line.plane_complement()],
                               len(PLUCKER_PAIRS))


def line_in_Y(line: FlagLine) -> bool:
    return all(not any(linear_forms(w)) for w in line_span(line).rows)


def flag_from_span(span: Subspace) -> FlagLine:
    """
    Recover the flag of a line of Gr(2,5) from its 2-dimensional span.

    Args:
        span: 2-dimensional subspace of ∧²V5 made of decomposable vectors

    Returns:
        FlagLine: V1 = supp(w1) ∩ supp(w2), V3 = supp(w1) + supp(w2)
    """
    if span.n != len(PLUCKER_PAIRS) or span.dim != 2:
        raise InvalidGeometryError("A line span is a 2-dimensional subspace of ∧²V5")
    for point in _points_for_quadrics(span):
        if any(plucker_relations(point)):
            raise InvalidGeometryError("The span contains non-decomposable vectors")
    field = span.field
    s1 = PlueckerVector(field, span.rows[0]).support()
    s2 = PlueckerVector(field, span.rows[1]).support()
    return FlagLine(s1.intersect(s2), s1.join(s2))


@dataclass(frozen=True)
class VertexConic:
    """C_v = {a0 a4 + a1^2 = a2 = a3 = 0} ⊂ P(V5)"""
    field: Field

    @property
    def ring(self) -> PolynomialRing:
        return PolynomialRing(CONIC_VARIABLES, self.field)

    @property
    def ideal(self) -> PolyIdeal:
        a = [self.ring.gen(n) for n in CONIC_VARIABLES]
        return PolyIdeal(self.ring, (a[0] * a[4] + a[1] ** 2, a[2], a[3]))

    def point(self, s: Optional[Any]) -> Tuple[Any, ...]:
        """(1, s, 0, 0, -s^2); s = None is the point at infinity e4"""
        if s is None:
            return _unit(self.field, AMBIENT, 4)
        s = self.field.element(s)
        dom = self.field.domain
        return (dom.one, s, dom.zero, dom.zero, -s * s)

    def parametrization(self, ring: PolynomialRing, s0: str = "s0", s1: str = "s1") -> List[MultiPoly]:
        """Homogeneous parametrization (s0^2, s0 s1, 0, 0, -s1^2)"""
        x, y = ring.gen(s0), ring.gen(s1)
        return [x * x, x * y, ring.zero(), ring.zero(), -(y * y)]

    def contains(self, vector: Sequence) -> bool:
        a = _vector(self.field, vector)
        return not (a[0] * a[4] + a[1] * a[1]) and not a[2] and not a[3]


def vertex_conic(field: Field = Field(0)) -> VertexConic:
    return VertexConic(field)


def dual_conic(s: Optional[Any], field: Field = Field(0)) -> PlueckerVector:
    """e01 - 2s e04 - s^2 e14; s = None gives e14"""
    dom = field.domain
    coords = [dom.zero] * len(PLUCKER_PAIRS)
    if s is None:
        coords[PAIR_INDEX[(1, 4)]] = dom.one
    else:
        s = field.element(s)
        coords[PAIR_INDEX[(0, 1)]] = dom.one
        coords[PAIR_INDEX[(0, 4)]] = -2 * s
        coords[PAIR_INDEX[(1, 4)]] = -s * s
    return PlueckerVector(field, tuple(coords))


def dual_conic_forms(ring: PolynomialRing, s0: str = "s0", s1: str = "s1") -> List[MultiPoly]:
    """Coordinates of d(s0:s1) = s0^2 e01 - 2 s0 s1 e04 - s1^2 e14 as binary forms"""
    x, y = ring.gen(s0), ring.gen(s1)
    forms = [ring.zero() for _ in PLUCKER_PAIRS]
    forms[PAIR_INDEX[(0, 1)]] = x * x
    forms[PAIR_INDEX[(0, 4)]] = -2 * x * y
    forms[PAIR_INDEX[(1, 4)]] = -(y * y)
    return forms


def binary_ring(field: Field) -> PolynomialRing:
    return PolynomialRing(BINARY_VARIABLES, field)


def meet_dual_conic(span: Subspace) -> BinaryIntersection:
    """
    Intersection of P(span) with the dual conic, as roots in (s0 : s1).

    d(s) lies in the span exactly when every maximal minor of [span; d(s)] vanishes.
    """
    field = span.field
    ring = binary_ring(field)
    forms = dual_conic_forms(ring)
    rows = [[ring.const(field.format(c)) for c in row] for row in span.rows]
    used = sorted({j for row in span.rows for j, c in enumerate(row) if c}
                  | {PAIR_INDEX[(0, 1)], PAIR_INDEX[(0, 4)], PAIR_INDEX[(1, 4)]})
    size = span.dim + 1
    minors = []
    for columns in combinations(used, size):
        matrix = [[row[j] for j in columns] for row in rows] + [[forms[j] for j in columns]]
        minors.append(poly_det(matrix))
    return binary_intersection(BinaryFormSystem(tuple(minors)))


@dataclass(frozen=True)
class PlaneInY:
    """A plane of Y: sigma31 = P(V1 ∧ V4) or sigma22 = P(∧²V3)"""
    kind: str
    u3: Subspace
    defining: Subspace
    vertex: Optional[Subspace] = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("sigma31", "sigma22"):
            raise InvalidGeometryError(f"Unknown plane kind '{self.kind}'")
        if self.u3.dim != 3 or self.u3.n != len(PLUCKER_PAIRS):
            raise InvalidGeometryError("A plane of Y is a 3-dimensional subspace of ∧²V5")
        if not subspace_on_Y(self.u3):
            raise InvalidGeometryError(f"Plane {self.label} is not contained in Y")


def format_parameter(field: Field, t: Optional[Any]) -> str:
    return "inf" if t is None else field.format(field.element(t))


def make_Pt(t: Optional[Any], field: Field = Field(0)) -> PlaneInY:
    """
    The sigma31 plane P_t = P(V1(t) ∧ V4(t)).

    Args:
        t: plane parameter; None is the plane at infinity P(e4 ∧ <e0,e1,e3,e4>)
        field: coefficient field

    Returns:
        PlaneInY
    """
    dom = field.domain
    one, zero = dom.one, dom.zero
    if t is None:
        v = _unit(field, AMBIENT, 4)
        v4 = [_unit(field, AMBIENT, i) for i in (0, 1, 3, 4)]
    else:
        t = field.element(t)
        v = (one, t, zero, zero, -t * t)
        v4 = [_unit(field, AMBIENT, 0), _unit(field, AMBIENT, 1), (zero, zero, one, t, zero),
              _unit(field, AMBIENT, 4)]
    vertex = Subspace.from_basis(field, [v], AMBIENT)
    big = Subspace.from_basis(field, v4, AMBIENT)
    u3 = Subspace.span(field, [wedge_vectors(v, w) for w in v4], len(PLUCKER_PAIRS))
    return PlaneInY("sigma31", u3, big, vertex, f"P({format_parameter(field, t)})")


def make_S(field: Field = Field(0)) -> PlaneInY:
    """The sigma22 plane S = P(∧²<e0, e1, e4>)"""
    v3 = Subspace.from_basis(field, [_unit(field, AMBIENT, i) for i in (0, 1, 4)], AMBIENT)
    return PlaneInY("sigma22", wedge_space(v3), v3, None, "S")


def plane_meet(a: PlaneInY, b: PlaneInY) -> Subspace:
    return a.u3.intersect(b.u3)


def tangent_line(t: Optional[Any], field: Field = Field(0)) -> Subspace:
    """P_t ∩ S, the tangent line of the dual conic at d(t)"""
    return plane_meet(make_Pt(t, field), make_S(field))


def vertex_kernel(vertex: Sequence, field: Field) -> Subspace:
    """K_v = {w : H1(v∧w) = H2(v∧w) = 0}"""
    v = _vector(field, vertex)
    rows = [[linear_forms(wedge_vectors(v, _unit(field, AMBIENT, j)))[k] for j in range(AMBIENT)]
            for k in range(2)]
    return Subspace.span(field, field_nullspace(field, rows, AMBIENT), AMBIENT)


@dataclass(frozen=True)
class VertexLines:
    """Lines of Y through a vertex: 3-spaces V3 with v ∈ V3 ⊂ K_v"""
    vertex: Subspace
    kernel: Subspace

    @property
    def family_dim(self) -> int:
        # 3-spaces between <v> and K_v: Gr(2, K_v/<v>)
        return 2 * (self.kernel.dim - 3)

    @property
    def unique(self) -> bool:
        return self.kernel.dim == 3

    @property
    def line(self) -> Optional[FlagLine]:
        if not self.unique:
            return None
        return FlagLine(self.vertex, self.kernel)

    def line_for(self, form: Sequence) -> FlagLine:
        """
        Member of the family cut out by a linear form on V5.

        Args:
            form: five coefficients, vanishing at the vertex and not on all of K_v
        """
        field = self.vertex.field
        eta = _vector(field, form)
        if sum(a * b for a, b in zip(eta, self.vertex.rows[0])):
            raise InvalidGeometryError("The form must vanish at the vertex")
        v3 = self.kernel.intersect(Subspace.span(field, field_nullspace(field, [eta], AMBIENT), AMBIENT))
        if v3.dim != 3:
            raise InvalidGeometryError(f"The form cuts a {v3.dim}-dimensional space out of K_v")
        return FlagLine(self.vertex, v3)

    def sample(self, rng) -> FlagLine:
        """A random member, drawn from a numpy Generator"""
        if self.unique:
            return self.line
        field = self.vertex.field
        annihilator = self.vertex.annihilator().rows
        while True:
            coeffs = [random_scalar(field, rng) for _ in annihilator]
            eta = [sum((c * row[j] for c, row in zip(coeffs, annihilator)), field.domain.zero)
                   for j in range(AMBIENT)]
            try:
                return self.line_for(eta)
            except InvalidGeometryError:
                continue


def lines_with_vertex(vertex: Sequence, field: Field = Field(0)) -> VertexLines:
    """
    Lines of Y with the given vertex.

    Args:
        vertex: nonzero vector of V5
        field: coefficient field

    Returns:
        VertexLines: unique line off the vertex conic, a projective plane of lines on it
    """
    v = _vector(field, vertex)
    if not any(v):
        raise InvalidGeometryError("The vertex must be nonzero")
    kernel = vertex_kernel(v, field)
    lines = VertexLines(Subspace.from_basis(field, [v], AMBIENT), kernel)
    logger.debug(f"Vertex {lines.vertex.text()}: dim K_v = {kernel.dim}, family dimension {lines.family_dim}")
    return lines


def random_vector(field: Field, rng, n: int = AMBIENT) -> Tuple[Any, ...]:
    while True:
        v = tuple(random_scalar(field, rng) for _ in range(n))
        if any(v):
            return v


def random_line(field: Field, rng) -> FlagLine:
    """A random line of Y: random vertex, then a random member of its family"""
    return lines_with_vertex(random_vector(field, rng), field).sample(rng)


SWEEP_BLOCK = ("t", "l1", "l2", "l3")


@lru_cache(maxsize=None)
def ideal_of_R(field: Field = Field(0)) -> PolyIdeal:
    """
    Ideal of the threefold R swept by the planes P_t.

    A point of P_t is l1 v∧e1 + l2 v∧(e2 + t e3) + l3 v∧e4 with v = e0 + t e1 - t^2 e4;
    t and the plane coordinates are eliminated.
    """
    ring = PolynomialRing(SWEEP_BLOCK + PLUCKER_NAMES, field)
    t, l1, l2, l3 = (ring.gen(n) for n in SWEEP_BLOCK)
    zero, one = ring.zero(), ring.one()
    v = [one, t, zero, zero, -(t * t)]
    directions = [
        [zero, one, zero, zero, zero],
        [zero, zero, one, t, zero],
        [zero, zero, zero, zero, one],
    ]
    point = [zero for _ in PLUCKER_PAIRS]
    for weight, w in zip((l1, l2, l3), directions):
        for k, coordinate in enumerate(wedge_vectors(v, w)):
            point[k] = point[k] + weight * coordinate
    generators = [ring.gen(name) - point[k] for k, name in enumerate(PLUCKER_NAMES)]
    result = reduced_gb(eliminate(PolyIdeal(ring, tuple(generators)), SWEEP_BLOCK))
    logger.info(f"Ideal of R over {field}: {len(result)} generators")
    return result


def subspace_in_variety(ideal: PolyIdeal, space: Subspace) -> bool:
    """Every generator vanishes identically on the linear space"""
    field = space.field
    names = tuple(f"u{i}" for i in range(space.dim))
    ring = PolynomialRing(names, field)
    gens = [ring.gen(n) for n in names]
    images = {}
    for k, name in enumerate(ideal.ring.variables):
        total = ring.zero()
        for u, row in zip(gens, space.rows):
            if row[k]:
                total = total + u * ring.const(field.format(row[k]))
        images[name] = total
    return all(g.substitute(images, ring).is_zero for g in ideal.generators)


def point_in_variety(ideal: PolyIdeal, coords: Sequence, field: Field) -> bool:
    point = {name: c for name, c in zip(ideal.ring.variables, _vector(field, coords))}
    return all(not g.evaluate(point) for g in ideal.generators)


def _plane_conditions(line: FlagLine) -> BinaryFormSystem:
    """Binary forms in (s0 : s1), t = s1/s0, vanishing exactly when the line lies in P_t"""
    field = line.field
    ring = binary_ring(field)
    x, y = ring.gen("s0"), ring.gen("s1")
    zero, one = ring.zero(), ring.one()
    v_t = [x * x, x * y, zero, zero, -(y * y)]
    vertex = [ring.const(field.format(c)) for c in line.vertex]
    forms = list(wedge_vectors(vertex, v_t))
    v4_rows = [[one, zero, zero, zero, zero], [zero, one, zero, zero, zero],
               [zero, zero, x, y, zero], [zero, zero, zero, zero, one]]
    for w in line.v3.rows:
        forms.append(poly_det(v4_rows + [[ring.const(field.format(c)) for c in w]]))
    return BinaryFormSystem(tuple(forms))


def sigma31_parameters(line: FlagLine) -> List[Optional[Fraction]]:
    """Parameters t (None for infinity) of the planes P_t containing the line"""
    intersection = binary_intersection(_plane_conditions(line))
    if intersection.infinite:
        raise InvalidGeometryError("A line cannot lie in every plane P_t")
    params = []
    for cluster in intersection.clusters:
        if cluster.point is None:
            continue
        s0, s1 = Fraction(cluster.point[0]), Fraction(cluster.point[1])
        params.append(None if s0 == 0 else s1 / s0)
    return params


def planes_containing_line(line: FlagLine) -> List[str]:
    """Labels of the planes of Y containing the line: "S" and "P(t)" """
    labels = []
    if make_S(line.field).u3.contains_subspace(line_span(line)):
        labels.append("S")
    for t in sigma31_parameters(line):
        labels.append("P(inf)" if t is None else f"P({t})")
    return labels


# Gr(4,5)


def hyperplane_form(v4: Subspace) -> Tuple[Any, ...]:
    """φ_j = (-1)^j det(minor omitting column j); φ vanishes on V4"""
    if v4.n != AMBIENT or v4.dim != 4:
        raise InvalidGeometryError("hyperplane_form needs a 4-dimensional subspace of F^5")
    field = v4.field
    values = []
    for j in range(AMBIENT):
        minor = [[row[c] for c in range(AMBIENT) if c != j] for row in v4.rows]
        det = DomainMatrix(minor, (4, 4), field.domain).det()
        values.append(det if j % 2 == 0 else -det)
    return tuple(values)


def gr45_coordinates(v4: Subspace) -> Tuple[Any, ...]:
    """x = (φ0, φ1, φ4, -φ3, φ2)"""
    phi = hyperplane_form(v4)
    return (phi[0], phi[1], phi[4], -phi[3], phi[2])


def from_hyperplane(form: Sequence, field: Field = Field(0)) -> Subspace:
    phi = _vector(field, form)
    if not any(phi):
        raise InvalidGeometryError("The zero form defines no hyperplane")
    return Subspace.span(field, field_nullspace(field, [phi], AMBIENT), AMBIENT)


def chart_point(a, b, c, d, field: Field = Field(0)) -> Subspace:
    """x3 ≠ 0 chart: V4 = <e0 + a e3, e1 + b e3, e2 + c e3, e4 + d e3>"""
    a, b, c, d = _vector(field, (a, b, c, d))
    dom = field.domain
    one, zero = dom.one, dom.zero
    return Subspace.from_basis(field, [(one, zero, zero, a, zero), (zero, one, zero, b, zero),
                                       (zero, zero, one, c, zero), (zero, zero, zero, d, one)], AMBIENT)


def chart_point_x4(a, b, u, d, field: Field = Field(0)) -> Subspace:
    """x4 ≠ 0 chart: V4 = <e0 - a e2, e1 - b e2, e3 + u e2, e4 - d e2>"""
    a, b, u, d = _vector(field, (a, b, u, d))
    dom = field.domain
    one, zero = dom.one, dom.zero
    return Subspace.from_basis(field, [(one, zero, -a, zero, zero), (zero, one, -b, zero, zero),
                                       (zero, zero, u, one, zero), (zero, zero, -d, zero, one)], AMBIENT)


def chart_coordinates(v4: Subspace) -> Optional[Tuple[Fraction, Fraction, Fraction, Fraction]]:
    """(a, b, c, d) = (x0/x3, x1/x3, x4/x3, x2/x3), or None off the x3 chart"""
    field = v4.field
    x = gr45_coordinates(v4)
    if not x[3]:
        return None
    inv = field.domain.one / x[3]
    return tuple(field.to_fraction(c * inv) for c in (x[0], x[1], x[4], x[2]))


def conic_space(v4: Subspace) -> Subspace:
    """K_[V4] = ∧²V4 ∩ ker H1 ∩ ker H2"""
    return wedge_space(v4).intersect(linear_kernel(v4.field))


def relation_index(v4: Subspace) -> int:
    """
    Index of a Pluecker quadric restricting to the quadric of Gr(2,V4).

    On ∧²V4 the k-th relation equals the k-th maximal minor of V4 times q_G,
    so any k with nonzero minor works.
    """
    phi = hyperplane_form(v4)
    for k, value in enumerate(phi):
        if value:
            return k
    raise InvalidGeometryError("Degenerate 4-space")
