"""
Line and conic classifier.
Types (a)-(e) of lines in Y, the free/non-free dichotomy with its double-line oracle,
and the conic pairs (U3, V4) behind the double-line locus.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import Any, List, Optional, Sequence

from app.models.data_models import LineClassificationResult, SupportPoint
from app.models.errors import EmptyVarietyError, InvalidGeometryError
from app.services.exact_algebra import (
    Field,
    FieldScalar,
    MultiPoly,
    PolynomialRing,
    field_nullspace,
    field_rank,
    gram_and_rank,
    poly_det,
    random_scalar,
)
from app.services.groebner import PolyIdeal, ideal_dim, projective_dim
from app.services.grassmann import (
    AMBIENT,
    PLUCKER_NAMES,
    FlagLine,
    Subspace,
    conic_space,
    flag_from_span,
    ideal_of_R,
    line_in_Y,
    line_span,
    linear_forms,
    make_S,
    meet_dual_conic,
    planes_containing_line,
    plucker_ring,
    plucker_relations,
    relation_index,
    sigma31_parameters,
    subspace_in_variety,
    wedge_vectors,
)

# Configure logging
logger = logging.getLogger(__name__)


class LineType(str, Enum):
    A = "a"
    B = "b"
    C = "c"
    D = "d"
    E = "e"


class NormalBundleType(str, Enum):
    FREE = "free"
    NONFREE = "nonfree"


class ConicClass(str, Enum):
    """Conic P(U3) ∩ Gr(2,V4) by the rank of the restricted quadric"""
    SMOOTH = "smooth"
    LINE_PAIR = "line-pair"
    DOUBLE_LINE = "double-line"
    PLANE = "plane"

    @classmethod
    def from_rank(cls, rank: int) -> "ConicClass":
        return {3: cls.SMOOTH, 2: cls.LINE_PAIR, 1: cls.DOUBLE_LINE, 0: cls.PLANE}[rank]


@dataclass(frozen=True)
class ConicPair:
    """A point (U3, V4) of S(Y): U3 ⊂ K_[V4]"""
    u3: Subspace
    v4: Subspace

    def __post_init__(self):
        if self.v4.n != AMBIENT or self.v4.dim != 4:
            raise InvalidGeometryError(f"V4 must be a 4-dimensional subspace of F^5, got dim {self.v4.dim}")
        if self.u3.n != len(PLUCKER_NAMES) or self.u3.dim != 3:
            raise InvalidGeometryError(f"U3 must be a 3-dimensional subspace of ∧²V5, got dim {self.u3.dim}")
        if self.u3.field != self.v4.field:
            raise InvalidGeometryError("U3 and V4 over different fields")
        if not conic_space(self.v4).contains_subspace(self.u3):
            raise InvalidGeometryError("U3 is not contained in K_[V4]")

    @property
    def field(self) -> Field:
        return self.v4.field


def restricted_relation(rows: Sequence[Sequence[Any]], index: int, field: Field, prefix: str = "u") -> MultiPoly:
    """
    The index-th Pluecker quadric on span(rows), in coordinates prefix0, prefix1, ...

    Args:
        rows: basis of a subspace of ∧²V5 (raw field elements)
        index: which of the five relations
        field: coefficient field
        prefix: variable name prefix

    Returns:
        MultiPoly: the restricted quadric
    """
    names = tuple(f"{prefix}{i}" for i in range(len(rows)))
    ring = PolynomialRing(names, field)
    gens = ring.gens()
    coords = []
    for m in range(len(PLUCKER_NAMES)):
        total = ring.zero()
        for g, row in zip(gens, rows):
            if row[m]:
                total = total + g * ring.const(FieldScalar(field, row[m]))
        coords.append(total)
    return plucker_relations(coords)[index]


def restricted_quadric(pair: ConicPair) -> MultiPoly:
    """q_G restricted to U3, up to a nonzero scalar"""
    return restricted_relation(pair.u3.rows, relation_index(pair.v4), pair.field)


def conic_rank(pair: ConicPair) -> int:
    q = restricted_quadric(pair)
    _, rank = gram_and_rank(q, q.ring.variables)
    return rank


def conic_class(pair: ConicPair) -> ConicClass:
    return ConicClass.from_rank(conic_rank(pair))


def in_Dbar(pair: ConicPair) -> bool:
    """The conic is a double line or a plane"""
    return conic_rank(pair) <= 1


def psi(pair: ConicPair) -> PolyIdeal:
    """
    Ideal of the conic P(U3) ∩ Gr(2,V4) in the Pluecker P^9.

    The linear forms vanishing on U3 (H1 and H2 among their combinations) plus the
    single Pluecker quadric that restricts to q_G.
    """
    field = pair.field
    ring = plucker_ring(field)
    p = [ring.gen(name) for name in PLUCKER_NAMES]
    generators = []
    for row in pair.u3.annihilator().rows:
        form = ring.zero()
        for coefficient, variable in zip(row, p):
            if coefficient:
                form = form + variable * ring.const(FieldScalar(field, coefficient))
        generators.append(form)
    generators.append(plucker_relations(p)[relation_index(pair.v4)])
    return PolyIdeal(ring, tuple(generators))


def support_line(pair: ConicPair) -> FlagLine:
    """
    Support of a double line: the kernel of the rank-one form, as a flag.

    Raises:
        InvalidGeometryError: if the restricted quadric does not have rank 1
    """
    q = restricted_quadric(pair)
    gram, rank = gram_and_rank(q, q.ring.variables)
    if rank != 1:
        raise InvalidGeometryError(f"support_line needs a rank-1 conic, got rank {rank}")
    field = pair.field
    kernel = field_nullspace(field, gram.matrix.to_list(), 3)
    vectors = []
    for coefficients in kernel:
        vectors.append([sum((c * row[m] for c, row in zip(coefficients, pair.u3.rows)), field.domain.zero)
                        for m in range(len(PLUCKER_NAMES))])
    return flag_from_span(Subspace.span(field, vectors, len(PLUCKER_NAMES)))


def _kernel_gram(v4: Subspace):
    kernel = conic_space(v4)
    q = restricted_relation(kernel.rows, relation_index(v4), v4.field, "k")
    gram, rank = gram_and_rank(q, q.ring.variables)
    return kernel, gram, rank


def fiber_quadric_rank(v4: Subspace) -> int:
    """Rank of q_G on K_[V4]: 4 off Q3, 3 on Q3 off its singular line, 2 on it"""
    _, _, rank = _kernel_gram(v4)
    return rank


def tangent_conic_pair(v4: Subspace) -> ConicPair:
    """
    U3 = x^⊥ ∩ K_[V4] for an isotropic x of K_[V4] outside the radical.

    The conic is a tangent hyperplane section of the quadric surface of Gr(2,V4) ∩ H1 ∩ H2;
    it is a double line exactly when V4 lies on Q3 away from its singular line.
    """
    field = v4.field
    kernel, gram, _ = _kernel_gram(v4)
    g = gram.matrix.to_list()
    dim = kernel.dim
    zero = field.domain.zero
    for coefficients in product((0, 1, -1), repeat=dim):
        if not any(coefficients):
            continue
        c = [field.element(x) for x in coefficients]
        gc = [sum((g[i][j] * c[j] for j in range(dim)), zero) for i in range(dim)]
        if not any(gc) or sum((a * b for a, b in zip(c, gc)), zero):
            continue
        perp = field_nullspace(field, [gc], dim)
        rows = [[sum((w[i] * kernel.rows[i][m] for i in range(dim)), zero) for m in range(len(PLUCKER_NAMES))]
                for w in perp]
        return ConicPair(Subspace.span(field, rows, len(PLUCKER_NAMES)), v4)
    raise InvalidGeometryError(f"No isotropic vector of K_[V4] with coefficients in {{-1, 0, 1}} for {v4.text()}")


def random_conic_pair(v4: Subspace, rng) -> ConicPair:
    """A random U3 ⊂ K_[V4], drawn from a numpy Generator"""
    field = v4.field
    kernel = conic_space(v4)
    zero = field.domain.zero
    while True:
        weights = [[random_scalar(field, rng) for _ in kernel.rows] for _ in range(3)]
        rows = [[sum((w * row[m] for w, row in zip(ws, kernel.rows)), zero) for m in range(len(PLUCKER_NAMES))]
                for ws in weights]
        if field_rank(field, rows, len(PLUCKER_NAMES)) == 3:
            return ConicPair(Subspace.span(field, rows, len(PLUCKER_NAMES)), v4)


def hyperplane_rank_locus_dim(v4: Subspace) -> int:
    """
    Projective dimension of {η ∈ P(K_[V4]^*) : rank(q_G restricted to ker η) ≤ 1}.

    For η ≠ 0 the bordered matrix [[G, ηᵀ], [η, 0]] has rank rank(q|ker η) + 2, so the
    locus is cut out by its 4x4 minors. Returns -1 when the locus is empty.
    """
    field = v4.field
    _, gram, _ = _kernel_gram(v4)
    g = gram.matrix.to_list()
    n = len(g)
    names = tuple(f"h{i}" for i in range(n))
    ring = PolynomialRing(names, field)
    eta = ring.gens()
    bordered = [[ring.const(FieldScalar(field, g[i][j])) for j in range(n)] + [eta[i]] for i in range(n)]
    bordered.append(list(eta) + [ring.zero()])
    minors = []
    for rows in combinations(range(n + 1), n):
        for cols in combinations(range(n + 1), n):
            minor = poly_det([[bordered[r][c] for c in cols] for r in rows])
            if minor:
                minors.append(minor)
    dim = projective_dim(PolyIdeal(ring, tuple(minors)))
    logger.debug(f"Rank <= 1 hyperplane locus of {v4.text()}: dimension {dim}")
    return dim


# Lines


def _require_line_in_Y(line: FlagLine):
    if not line_in_Y(line):
        raise InvalidGeometryError(f"Line {line.describe()} is not contained in Y")


def line_in_S(line: FlagLine) -> bool:
    return make_S(line.field).u3.contains_subspace(line_span(line))


def classify_line_type(line: FlagLine) -> LineType:
    """
    Decision tree: in S, tangent to the dual conic (d) or not (e); else lying in some
    plane P_t, meeting the dual conic (c) or not (b); otherwise (a).
    """
    _require_line_in_Y(line)
    span = line_span(line)
    meeting = meet_dual_conic(span)
    if meeting.infinite:
        raise InvalidGeometryError("A line cannot contain the dual conic")
    if line_in_S(line):
        return LineType.D if meeting.distinct_roots == 1 else LineType.E
    if sigma31_parameters(line):
        return LineType.C if meeting.distinct_roots >= 1 else LineType.B
    return LineType.A


def is_non_free(line: FlagLine) -> NormalBundleType:
    """Non-free exactly when the line meets the dual conic in a single support point"""
    _require_line_in_Y(line)
    meeting = meet_dual_conic(line_span(line))
    if meeting.infinite:
        raise InvalidGeometryError("A line cannot contain the dual conic")
    return NormalBundleType.NONFREE if meeting.distinct_roots == 1 else NormalBundleType.FREE


DOUBLE_LINE_VARIABLES = ("z0", "z1", "z2", "z3", "s", "w")


def _double_line_ideal(line: FlagLine, at_infinity: bool) -> PolyIdeal:
    """
    Rank-one conic pairs supported on the line, over one chart of the pencil V4 ⊃ V3.

    V4 = V3 + <y> with y = c1 + s c2 (or y = c2 at infinity); U3 = W_L + <u> with
    u = z0 f2∧f3 + z1 v∧y + z2 f2∧y + z3 f3∧y. W_L sits in the radical iff z2 = z3 = 0;
    q_G(u) is then a multiple of z0 z1, inverted by w. At infinity s is pinned to 0.
    """
    field = line.field
    ring = PolynomialRing(DOUBLE_LINE_VARIABLES, field)
    z0, z1, z2, z3, s, w = ring.gens()

    def lift(vector):
        return [ring.const(FieldScalar(field, x)) for x in vector]

    v = lift(line.vertex)
    f2, f3 = (lift(f) for f in line.plane_complement())
    c1, c2 = (lift(c) for c in line.v3.complement())
    y = c2 if at_infinity else [a + s * b for a, b in zip(c1, c2)]
    parts = [(z0, wedge_vectors(f2, f3)), (z1, wedge_vectors(v, y)),
             (z2, wedge_vectors(f2, y)), (z3, wedge_vectors(f3, y))]
    u = [sum((z * part[m] for z, part in parts), ring.zero()) for m in range(len(PLUCKER_NAMES))]
    h1, h2 = linear_forms(u)
    generators = (h1, h2, z2, z3, w * z0 * z1 - 1)
    if at_infinity:
        generators += (s,)
    return PolyIdeal(ring, generators)


def double_line_family_dim(line: FlagLine) -> int:
    """
    Dimension of the family of double lines supported on the line.

    The rank-one conic pairs are searched over both charts of the pencil of V4 ⊃ V3; when
    there are none the double structures come from planes of Y through the line
    (dimension 0). Returns -1 when neither exists.
    """
    _require_line_in_Y(line)
    dims = []
    for at_infinity in (False, True):
        ideal = _double_line_ideal(line, at_infinity)
        try:
            dims.append(ideal_dim(ideal) - 1)
        except EmptyVarietyError:
            dims.append(-1)
    best = max(dims)
    if best >= 0:
        return best
    if planes_containing_line(line):
        return 0
    logger.warning(f"No double lines found on {line.describe()}")
    return -1


def meets_S(line: FlagLine) -> str:
    """L ∩ S as "empty", "point" or "line" """
    overlap = make_S(line.field).u3.intersect(line_span(line)).dim
    return ("empty", "point", "line")[overlap]


def _support_points(line: FlagLine) -> List[SupportPoint]:
    meeting = meet_dual_conic(line_span(line))
    return [SupportPoint(multiplicity=c.multiplicity, degree=c.degree, factor=c.factor,
                         parameter=list(c.point) if c.point else None)
            for c in meeting.clusters]


def classify_line(line: FlagLine, with_family: bool = True, check_sweep: bool = True) -> LineClassificationResult:
    """
    Full classification of a line of Y with the cross-checks between the oracles.

    Args:
        line: a line of Y
        with_family: also compute the double-line family dimension
        check_sweep: compare plane membership with the ideal of R for lines outside S

    Returns:
        LineClassificationResult: flags list every disagreement found
    """
    line_type = classify_line_type(line)
    bundle = is_non_free(line)
    planes = planes_containing_line(line)
    overlap = meets_S(line)
    flags = []

    family_dim: Optional[int] = None
    if with_family:
        family_dim = double_line_family_dim(line)
        expected = 1 if bundle == NormalBundleType.NONFREE else 0
        if family_dim != expected:
            flags.append(f"double-line family dimension {family_dim}, expected {expected} for a {bundle.value} line")

    if (bundle == NormalBundleType.NONFREE) != (line_type in (LineType.C, LineType.D)):
        flags.append(f"type {line_type.value} with {bundle.value} normal bundle")

    if line_type in (LineType.D, LineType.E) and overlap != "line":
        flags.append(f"line in S meets S in {overlap}")
    if line_type in (LineType.B, LineType.C) and overlap != "point":
        flags.append(f"type {line_type.value} line meets S in {overlap}")

    sigma31 = [p for p in planes if p != "S"]
    if line_type in (LineType.B, LineType.C) and len(sigma31) != 1:
        flags.append(f"type {line_type.value} line lies in {len(sigma31)} planes P_t")

    if check_sweep and line_type not in (LineType.D, LineType.E):
        in_R = subspace_in_variety(ideal_of_R(line.field), line_span(line))
        if in_R != bool(sigma31):
            flags.append(f"sweep membership {in_R} disagrees with plane membership {bool(sigma31)}")

    if flags:
        logger.warning(f"Line {line.describe()} classified with flags: {flags}")
    return LineClassificationResult(
        vertex=line.v1.text(),
        plane=line.v3.text(),
        type=line_type.value,
        normal_bundle=bundle.value,
        support_points=_support_points(line),
        family_dim=family_dim,
        planes=planes,
        meets_S=overlap,
        flags=flags,
    )
