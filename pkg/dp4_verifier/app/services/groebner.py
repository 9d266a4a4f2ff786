"""
Groebner engine.
Reduced Groebner bases, ideal membership and equality, elimination ideals and Krull dimension.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from app.models.errors import EmptyVarietyError, RingMismatchError
from app.services.exact_algebra import MultiPoly, PolynomialRing

# Configure logging
logger = logging.getLogger(__name__)

AUXILIARY_WEIGHT = "_w"


@dataclass(frozen=True)
class PolyIdeal:
    """An ideal given by generators of one ring; zero generators are dropped"""
    ring: PolynomialRing
    generators: Tuple[MultiPoly, ...] = ()

    def __post_init__(self):
        kept = []
        for g in self.generators:
            if g.ring != self.ring:
                raise RingMismatchError(f"Generator {g.text()} lives in {g.ring}, not {self.ring}")
            if not g.is_zero:
                kept.append(g)
        object.__setattr__(self, "generators", tuple(kept))

    @classmethod
    def of(cls, ring: PolynomialRing, generators: Iterable[MultiPoly]) -> "PolyIdeal":
        return cls(ring, tuple(generators))

    def to_ring(self, target: PolynomialRing) -> "PolyIdeal":
        return PolyIdeal(target, tuple(g.to_ring(target) for g in self.generators))

    def __add__(self, other: "PolyIdeal") -> "PolyIdeal":
        _check_same_ring(self, other)
        return PolyIdeal(self.ring, self.generators + other.generators)

    def __len__(self) -> int:
        return len(self.generators)


def _check_same_ring(I: PolyIdeal, J: PolyIdeal):
    if I.ring != J.ring:
        raise RingMismatchError(f"Ideals live in different rings: {I.ring} vs {J.ring}")


def _spoly(p1, p2, sring):
    lcm = sring.monomial_lcm(p1.LM, p2.LM)
    m1 = sring.monomial_div(lcm, p1.LM)
    m2 = sring.monomial_div(lcm, p2.LM)
    return p1.mul_monom(m1) - p2.mul_monom(m2)


def _buchberger(polys: List, sring) -> List:
    """
    Buchberger's algorithm with normal selection and the Gebauer-Moeller criteria.

    Args:
        polys: nonzero sympy ring elements
        sring: the sympy PolyRing (its order is the monomial order)

    Returns:
        The reduced Groebner basis, monic, sorted by decreasing leading monomial
    """
    order = sring.order
    monomial_mul = sring.monomial_mul
    monomial_div = sring.monomial_div
    monomial_lcm = sring.monomial_lcm

    if not polys:
        return []

    # inter-reduce the input first
    f1 = list(polys)
    while True:
        f = f1[:]
        f1 = []
        for i, p in enumerate(f):
            r = p.rem(f[:i])
            if r:
                f1.append(r.monic())
        if f == f1:
            break

    f = f1
    index = {}
    for i, h in enumerate(f):
        index[h] = i

    def select(pairs):
        return min(pairs, key=lambda pr: (order(monomial_lcm(f[pr[0]].LM, f[pr[1]].LM)), pr))

    def normal(g, basis):
        h = g.rem([f[j] for j in basis])
        if not h:
            return None
        h = h.monic()
        if h not in index:
            index[h] = len(f)
            f.append(h)
        return index[h]

    def update(G: Set[int], B: Set[Tuple[int, int]], ih: int):
        mh = f[ih].LM

        C = set(G)
        D = set()
        while C:
            ig = C.pop()
            mg = f[ig].LM
            lcm_hg = monomial_lcm(mh, mg)

            def lcm_divides(ip):
                return monomial_div(lcm_hg, monomial_lcm(mh, f[ip].LM))

            # coprime leading monomials, or no other pair dominates this one
            if monomial_mul(mh, mg) == lcm_hg or (
                    not any(lcm_divides(ipx) for ipx in C) and
                    not any(lcm_divides(pr[1]) for pr in D)):
                D.add((ih, ig))

        E = set()
        while D:
            ih_, ig = D.pop()
            mg = f[ig].LM
            if monomial_mul(mh, mg) != monomial_lcm(mh, mg):
                E.add((ih_, ig))

        B_new = set()
        while B:
            ig1, ig2 = B.pop()
            mg1 = f[ig1].LM
            mg2 = f[ig2].LM
            lcm12 = monomial_lcm(mg1, mg2)
            if not monomial_div(lcm12, mh) or \
                    monomial_lcm(mg1, mh) == lcm12 or \
                    monomial_lcm(mg2, mh) == lcm12:
                B_new.add((ig1, ig2))
        B_new |= E

        G_new = {ig for ig in G if not monomial_div(f[ig].LM, mh)}
        G_new.add(ih)
        return G_new, B_new

    F = set(range(len(f)))
    G: Set[int] = set()
    pairs: Set[Tuple[int, int]] = set()
    while F:
        ih = min(F, key=lambda i: (order(f[i].LM), i))
        F.remove(ih)
        G, pairs = update(G, pairs, ih)

    reductions_to_zero = 0
    while pairs:
        pair = select(pairs)
        pairs.remove(pair)
        s = _spoly(f[pair[0]], f[pair[1]], sring)
        basis = sorted(G, key=lambda g: (order(f[g].LM), g))
        ih = normal(s, basis)
        if ih is not None:
            G, pairs = update(G, pairs, ih)
        else:
            reductions_to_zero += 1

    reduced = set()
    for ig in G:
        ih = normal(f[ig], sorted(G - {ig}))
        if ih is not None:
            reduced.add(ih)

    result = sorted((f[i] for i in reduced), key=lambda p: order(p.LM), reverse=True)
    logger.debug(f"Buchberger finished: {len(result)} generators, {reductions_to_zero} pairs reduced to zero")
    return result


@lru_cache(maxsize=512)
def reduced_gb(ideal: PolyIdeal) -> PolyIdeal:
    """
    Unique reduced Groebner basis of an ideal for its ring's monomial order.

    Args:
        ideal: the ideal

    Returns:
        PolyIdeal: monic, inter-reduced generators sorted by decreasing leading monomial
    """
    sring = ideal.ring.sympy_ring
    basis = _buchberger([g.element for g in ideal.generators], sring)
    return PolyIdeal(ideal.ring, tuple(MultiPoly(ideal.ring, g) for g in basis))


def normal_form(f: MultiPoly, ideal: PolyIdeal) -> MultiPoly:
    """Remainder of f on division by the reduced Groebner basis"""
    if f.ring != ideal.ring:
        raise RingMismatchError(f"Polynomial ring {f.ring} differs from ideal ring {ideal.ring}")
    basis = reduced_gb(ideal)
    if not basis.generators:
        return f
    return MultiPoly(f.ring, f.element.rem([g.element for g in basis.generators]))


def ideal_member(f: MultiPoly, ideal: PolyIdeal) -> bool:
    return normal_form(f, ideal).is_zero


def ideal_contains(I: PolyIdeal, J: PolyIdeal) -> bool:
    """True when J ⊆ I"""
    _check_same_ring(I, J)
    return all(ideal_member(g, I) for g in J.generators)


def ideal_equal(I: PolyIdeal, J: PolyIdeal) -> bool:
    _check_same_ring(I, J)
    left = reduced_gb(I).generators
    right = reduced_gb(J).generators
    return tuple(g.element for g in left) == tuple(g.element for g in right)


def is_unit_ideal(ideal: PolyIdeal) -> bool:
    basis = reduced_gb(ideal).generators
    return len(basis) == 1 and basis[0].degree() == 0


def eliminate(ideal: PolyIdeal, block: Sequence[str], rest_order: str = "grevlex") -> PolyIdeal:
    """
    Elimination ideal I ∩ k[rest] through a block order with the block first.

    Args:
        ideal: the ideal
        block: variables to eliminate
        rest_order: "grevlex" or "lex" order on the remaining variables (ring order kept)

    Returns:
        PolyIdeal: generators of the elimination ideal in the ring of the remaining variables
    """
    block = tuple(block)
    missing = [v for v in block if v not in ideal.ring.variables]
    if missing:
        raise RingMismatchError(f"Cannot eliminate {missing}: not variables of {ideal.ring}")
    rest = tuple(v for v in ideal.ring.variables if v not in block)
    if not rest:
        raise ValueError("Eliminating every variable leaves no ring")
    field = ideal.ring.field
    elim_ring = PolynomialRing(block + rest, field, "block", len(block), rest_order)
    rest_ring = PolynomialRing(rest, field, rest_order)

    basis = reduced_gb(ideal.to_ring(elim_ring))
    kept = []
    for g in basis.generators:
        if all(not any(monom[:len(block)]) for monom in g.element.itermonoms()):
            kept.append(g.to_ring(rest_ring))
    logger.debug(f"Eliminated {list(block)}: {len(basis)} basis elements, {len(kept)} block-free")
    return PolyIdeal(rest_ring, tuple(kept))


def _leading_supports(ideal: PolyIdeal) -> List[Set[int]]:
    basis = reduced_gb(ideal)
    if is_unit_ideal(ideal):
        raise EmptyVarietyError(f"The ideal is the unit ideal of {ideal.ring}: empty variety")
    return [{i for i, e in enumerate(g.leading_monomial()) if e} for g in basis.generators]


def independent_set(ideal: PolyIdeal) -> Tuple[str, ...]:
    """
    First maximal independent set of variables modulo the leading-term ideal.

    Candidates are tried by decreasing size, then lexicographically on variable names.

    Returns:
        Tuple[str, ...]: the independent variables (sorted by name)
    """
    supports = _leading_supports(ideal)
    names = sorted(ideal.ring.variables)
    positions = {name: ideal.ring.index(name) for name in names}
    for size in range(len(names), -1, -1):
        for candidate in combinations(names, size):
            chosen = {positions[n] for n in candidate}
            if not any(support <= chosen for support in supports):
                return candidate
    return ()


def ideal_dim(ideal: PolyIdeal) -> int:
    """Affine Krull dimension of k[x]/I"""
    return len(independent_set(ideal))


def projective_dim(ideal: PolyIdeal) -> int:
    """Dimension of the projective variety of a homogeneous ideal; -1 when empty"""
    try:
        return ideal_dim(ideal) - 1
    except EmptyVarietyError:
        return -1


def ideal_intersection(I: PolyIdeal, J: PolyIdeal) -> PolyIdeal:
    """I ∩ J by eliminating w from w·I + (1 - w)·J"""
    _check_same_ring(I, J)
    ring = I.ring
    if AUXILIARY_WEIGHT in ring.variables:
        raise RingMismatchError(f"Variable name {AUXILIARY_WEIGHT} is reserved")
    big = PolynomialRing((AUXILIARY_WEIGHT,) + ring.variables, ring.field)
    w = big.gen(AUXILIARY_WEIGHT)
    gens = [w * g.to_ring(big) for g in I.generators]
    gens += [(1 - w) * g.to_ring(big) for g in J.generators]
    result = eliminate(PolyIdeal(big, tuple(gens)), (AUXILIARY_WEIGHT,), ring.order if ring.order != "block" else "grevlex")
    return result.to_ring(ring)


def compare_ideals(computed: PolyIdeal, displayed: PolyIdeal) -> str:
    """
    Compare two ideals of one ring.

    Returns:
        "equal", "strict-inclusion" (displayed ⊊ computed), "superset" (computed ⊊ displayed)
        or "incomparable"
    """
    _check_same_ring(computed, displayed)
    forward = ideal_contains(computed, displayed)
    backward = ideal_contains(displayed, computed)
    if forward and backward:
        return "equal"
    if forward:
        return "strict-inclusion"
    if backward:
        return "superset"
    return "incomparable"


def substitution_identity(f: MultiPoly, images, target: PolynomialRing,
                          relations: Optional[PolyIdeal] = None) -> bool:
    """
    Check that f pulled back along ``images`` vanishes, modulo ``relations`` when given.

    Args:
        f: polynomial to pull back
        images: variable -> MultiPoly of ``target``
        target: ring of the parametrization
        relations: ideal of ``target`` the pullback must lie in
    """
    pulled = f.substitute(images, target)
    if relations is None:
        return pulled.is_zero
    return ideal_member(pulled, relations)
