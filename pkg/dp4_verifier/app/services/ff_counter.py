"""
Finite-field point counter.
Exhaustive enumeration over F_q of the spaces attached to Y, with integer interpolation
of the counts.
"""
import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, Symbol
from sympy.polys.polyfuncs import interpolate as sympy_interpolate
from tqdm import tqdm

from app.config import ENUMERATION_BATCH, MAX_FLAG_ENUMERATION_Q, SHOW_PROGRESS, SUPPORTED_PRIMES
from app.models.data_models import CountResult
from app.models.errors import CharacteristicError, InterpolationError, UnknownSuiteError
from app.services.claims import COUNT_FORMULAS
from app.services.exact_algebra import Field, field_nullspace, field_rank
from app.services.grassmann import AMBIENT, PAIR_INDEX, PLUCKER_PAIRS, plucker_relations
from app.utils.text_formats import format_coefficients

# Configure logging
logger = logging.getLogger(__name__)

VARIETIES = ("Y", "H1Y", "Cv", "CvDual", "Q3", "SingQ3", "Dbar", "SY", "rank0locus",
             "P4", "Gr45", "planes", "nonfree")
LINEAR_VARIETIES = frozenset({"Y", "H1Y", "Cv", "SY", "P4", "Gr45", "planes"})
VARIETY_ALIASES = {name.lower(): name for name in VARIETIES}
LINE_METHODS = ("flags", "vertex-fibres")

_PAIR_I = np.array([i for i, _ in PLUCKER_PAIRS])
_PAIR_J = np.array([j for _, j in PLUCKER_PAIRS])
_S_COLUMNS = [PAIR_INDEX[(0, 1)], PAIR_INDEX[(0, 4)], PAIR_INDEX[(1, 4)]]
_OFF_S = [k for k in range(len(PLUCKER_PAIRS)) if k not in _S_COLUMNS]


@dataclass(frozen=True)
class CountPoly:
    """Integer polynomial in q, ascending coefficients"""
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coefficients = list(self.coefficients)
        while len(coefficients) > 1 and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coefficients) or (0,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, q: int) -> int:
        return sum(c * q ** k for k, c in enumerate(self.coefficients))

    def text(self) -> str:
        return format_coefficients(self.coefficients)


def expected_count(variety: str, q: int) -> int:
    return CountPoly(COUNT_FORMULAS[variety]).evaluate(q)


# Enumeration of RREF representatives


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n"""
    if k < 0 or k > n:
        return 0
    numerator = denominator = 1
    for i in range(k):
        numerator *= q ** (n - i) - 1
        denominator *= q ** (i + 1) - 1
    return numerator // denominator


def _grid(m: int, q: int, start: int, stop: int) -> np.ndarray:
    """Rows start..stop-1 of the lexicographic grid F_q^m"""
    index = np.arange(start, stop, dtype=np.int64)
    if m == 0:
        return np.zeros((len(index), 0), dtype=np.int64)
    powers = q ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return (index[:, None] // powers[None, :]) % q


def iter_grassmannian(k: int, n: int, q: int, batch: int = ENUMERATION_BATCH) -> Iterator[np.ndarray]:
    """
    RREF representatives of Gr(k, F_q^n) in batches of shape (b, k, n).

    Every batch shares one pivot pattern.
    """
    for pivots in combinations(range(n), k):
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivots]
        total = q ** len(free)
        for start in range(0, total, batch):
            stop = min(start + batch, total)
            values = _grid(len(free), q, start, stop)
            reps = np.zeros((stop - start, k, n), dtype=np.int64)
            for i, p in enumerate(pivots):
                reps[:, i, p] = 1
            for column, (i, j) in enumerate(free):
                reps[:, i, j] = values[:, column]
            yield reps


@lru_cache(maxsize=None)
def grassmannian_array(k: int, n: int, q: int) -> np.ndarray:
    return np.concatenate(list(iter_grassmannian(k, n, q)))


@lru_cache(maxsize=None)
def projective_points(n: int, q: int) -> np.ndarray:
    """Normalized representatives of P^{n-1}(F_q), leading entry 1"""
    return grassmannian_array(1, n, q)[:, 0, :]


def wedge(x: np.ndarray, y: np.ndarray, q: int) -> np.ndarray:
    """Pluecker coordinates of x ∧ y mod q, broadcasting over leading axes"""
    return (x[..., _PAIR_I] * y[..., _PAIR_J] - x[..., _PAIR_J] * y[..., _PAIR_I]) % q


def linear_form_values(p: np.ndarray, q: int) -> Tuple[np.ndarray, np.ndarray]:
    h1 = (p[..., PAIR_INDEX[(1, 2)]] - p[..., PAIR_INDEX[(0, 3)]]) % q
    h2 = (p[..., PAIR_INDEX[(1, 3)]] - p[..., PAIR_INDEX[(2, 4)]]) % q
    return h1, h2


def _rank_two_rows(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Rank over F_q of the 2 x m matrices with rows a[i], b[i]"""
    nonzero = (a != 0).any(axis=1) | (b != 0).any(axis=1)
    minors = (a[:, :, None] * b[:, None, :] - a[:, None, :] * b[:, :, None]) % q
    independent = (minors != 0).reshape(len(a), -1).any(axis=1)
    return nonzero.astype(np.int64) + independent.astype(np.int64)


def _elements(field: Field, rows) -> List[List]:
    return [[field.element(int(x)) for x in row] for row in rows]


def _nullspace_mod(field: Field, rows, n: int) -> np.ndarray:
    basis = field_nullspace(field, _elements(field, rows), n)
    return np.array([[int(field.to_fraction(x)) for x in row] for row in basis], dtype=np.int64).reshape(-1, n)


def _progress(iterable, desc: str, total: Optional[int] = None):
    return tqdm(iterable, desc=desc, total=total, disable=not SHOW_PROGRESS)


# Points


def _count_points(q: int, predicate: Callable[[np.ndarray], np.ndarray], n: int = AMBIENT) -> int:
    points = projective_points(n, q)
    return int(predicate(points).sum())


def _conic_predicate(q: int):
    def on_conic(a):
        return ((a[:, 0] * a[:, 4] + a[:, 1] ** 2) % q == 0) & (a[:, 2] == 0) & (a[:, 3] == 0)
    return on_conic


def _count_Y(q: int) -> Tuple[int, Dict[str, int]]:
    total = 0
    for reps in _progress(iter_grassmannian(2, AMBIENT, q), "Gr(2,5)"):
        h1, h2 = linear_form_values(wedge(reps[:, 0], reps[:, 1], q), q)
        total += int(((h1 == 0) & (h2 == 0)).sum())
    return total, {}


def _count_q3_equation(q: int) -> int:
    return _count_points(q, lambda x: (x[:, 1] ** 2 + 4 * x[:, 0] * x[:, 2]) % q == 0)


def _count_sing_q3(q: int) -> Tuple[int, Dict[str, int]]:
    def singular(x):
        value = (x[:, 1] ** 2 + 4 * x[:, 0] * x[:, 2]) % q == 0
        gradient = ((4 * x[:, 2]) % q == 0) & ((2 * x[:, 1]) % q == 0) & ((4 * x[:, 0]) % q == 0)
        return value & gradient
    return _count_points(q, singular), {}


def _count_cv_dual(q: int) -> Tuple[int, Dict[str, int]]:
    # coordinates (p01, p04, p14) on S
    return _count_points(q, lambda p: (p[:, 1] ** 2 + 4 * p[:, 0] * p[:, 2]) % q == 0, n=3), {}


def _count_gr45(q: int) -> Tuple[int, Dict[str, int]]:
    return sum(len(reps) for reps in iter_grassmannian(4, AMBIENT, q)), {}


def _count_planes(q: int) -> Tuple[int, Dict[str, int]]:
    """Planes P(v ∧ V4) and P(∧²V3) of Y"""
    sigma31 = 0
    points = projective_points(4, q)
    for basis in _progress(grassmannian_array(4, AMBIENT, q), "planes"):
        vertices = (points @ basis) % q
        h1, h2 = linear_form_values(wedge(vertices[:, None, :], basis[None, :, :], q), q)
        sigma31 += int(((h1 == 0) & (h2 == 0)).all(axis=1).sum())
    sigma22 = 0
    for reps in iter_grassmannian(3, AMBIENT, q):
        inside = np.ones(len(reps), dtype=bool)
        for i, j in combinations(range(3), 2):
            h1, h2 = linear_form_values(wedge(reps[:, i], reps[:, j], q), q)
            inside &= (h1 == 0) & (h2 == 0)
        sigma22 += int(inside.sum())
    return sigma31 + sigma22, {"sigma31": sigma31, "sigma22": sigma22}


# Lines


def _vertex_kernel_ranks(q: int) -> np.ndarray:
    """rank of w ↦ (H1(v∧w), H2(v∧w)) for every vertex v"""
    vertices = projective_points(AMBIENT, q)
    eye = np.eye(AMBIENT, dtype=np.int64)
    p = wedge(vertices[:, None, :], eye[None, :, :], q)
    h1, h2 = linear_form_values(p, q)
    return _rank_two_rows(h1, h2, q)


def _count_lines_by_vertex_fibres(q: int) -> Tuple[int, Dict[str, int]]:
    dims = AMBIENT - _vertex_kernel_ranks(q)
    histogram = Counter(f"dimK_v={d}" for d in dims.tolist())
    total = sum(gaussian_binomial(d - 1, 2, q) for d in dims.tolist())
    return total, dict(histogram)


def _lines_by_flags(q: int) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """All flags v ∈ V3, filtered to the lines of Y"""
    pencils = grassmannian_array(2, 4, q)
    eye = np.eye(AMBIENT, dtype=np.int64)
    for v in _progress(projective_points(AMBIENT, q), "flags"):
        lead = int(np.flatnonzero(v)[0])
        complement = eye[[j for j in range(AMBIENT) if j != lead]]
        w = (pencils @ complement) % q
        h1a, h2a = linear_form_values(wedge(v, w[:, 0], q), q)
        h1b, h2b = linear_form_values(wedge(v, w[:, 1], q), q)
        inside = (h1a == 0) & (h2a == 0) & (h1b == 0) & (h2b == 0)
        yield v, w[inside]


def _lines_by_vertex_fibres(q: int) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """For every vertex, the 3-spaces between v and K_v"""
    field = Field(q)
    eye = np.eye(AMBIENT, dtype=np.int64)
    for v in _progress(projective_points(AMBIENT, q), "vertex fibres"):
        h1, h2 = linear_form_values(wedge(v, eye, q), q)
        kernel = _nullspace_mod(field, [h1, h2], AMBIENT)
        chosen = [v]
        for row in kernel:
            if field_rank(field, _elements(field, chosen + [row]), AMBIENT) > len(chosen):
                chosen.append(row)
        complement = np.array(chosen[1:], dtype=np.int64)
        if len(complement) < 2:
            continue
        pencils = grassmannian_array(2, len(complement), q)
        yield v, (pencils @ complement) % q


def _iter_lines(q: int, method: str) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    if method == "flags":
        return _lines_by_flags(q)
    return _lines_by_vertex_fibres(q)


@lru_cache(maxsize=None)
def _dual_conic_points(q: int) -> np.ndarray:
    """d(s0:s1) = s0² e01 - 2 s0 s1 e04 - s1² e14 for (s0:s1) ∈ P^1(F_q)"""
    params = projective_points(2, q)
    points = np.zeros((len(params), len(PLUCKER_PAIRS)), dtype=np.int64)
    s0, s1 = params[:, 0], params[:, 1]
    points[:, PAIR_INDEX[(0, 1)]] = (s0 * s0) % q
    points[:, PAIR_INDEX[(0, 4)]] = (-2 * s0 * s1) % q
    points[:, PAIR_INDEX[(1, 4)]] = (-s1 * s1) % q
    return points


def dual_conic_incidence(p1: np.ndarray, p2: np.ndarray, q: int) -> np.ndarray:
    """Number of F_q-points of the dual conic on each line span <p1[i], p2[i]>"""
    d = _dual_conic_points(q)
    a, b, c = p1[:, None, :], p2[:, None, :], d[None, :, :]
    dependent = np.ones((len(p1), len(d)), dtype=bool)
    for i, j, k in combinations(range(len(PLUCKER_PAIRS)), 3):
        det = (a[..., i] * (b[..., j] * c[..., k] - b[..., k] * c[..., j])
               - a[..., j] * (b[..., i] * c[..., k] - b[..., k] * c[..., i])
               + a[..., k] * (b[..., i] * c[..., j] - b[..., j] * c[..., i])) % q
        dependent &= det == 0
    return dependent.sum(axis=1)


def _sweep_form(v: np.ndarray, q: int) -> Optional[np.ndarray]:
    """Annihilator of V4(t) when v = V1(t) lies on the vertex conic, else None"""
    if v[2] or v[3] or (v[0] * v[4] + v[1] * v[1]) % q:
        return None
    if v[0]:
        return np.array([0, 0, (-v[1]) % q, 1, 0], dtype=np.int64)
    return np.array([0, 0, 1, 0, 0], dtype=np.int64)


def line_statistics(q: int, method: str = "vertex-fibres") -> Dict[str, int]:
    """
    Lines of Y over F_q split by type, with the non-free lines per vertex.

    Returns:
        Dict with "lines", "type=a".."type=e", "nonfree" and "nonfree-vertices" counts
        keyed "vertex-nonfree=<n>"
    """
    if q == 2:
        raise CharacteristicError("Line types involve the dual conic, undefined in characteristic 2")
    stats: Counter = Counter()
    for v, w in _iter_lines(q, method):
        if not len(w):
            continue
        p1, p2 = wedge(v, w[:, 0], q), wedge(v, w[:, 1], q)
        points = dual_conic_incidence(p1, p2, q)
        in_S = (p1[:, _OFF_S] == 0).all(axis=1) & (p2[:, _OFF_S] == 0).all(axis=1)
        form = _sweep_form(v, q)
        if form is None:
            in_R = np.zeros(len(w), dtype=bool)
        else:
            in_R = ((w @ form) % q == 0).all(axis=1)
        kinds = np.where(in_S, np.where(points == 1, "d", "e"),
                         np.where(in_R, np.where(points >= 1, "c", "b"), "a"))
        stats["lines"] += len(w)
        stats.update(f"type={k}" for k in kinds.tolist())
        nonfree = int((points == 1).sum())
        stats["nonfree"] += nonfree
        if nonfree:
            stats[f"vertex-nonfree={nonfree}"] += 1
    return dict(stats)


def _count_h1y(q: int, method: str) -> Tuple[int, Dict[str, int]]:
    if method == "flags":
        return sum(len(w) for _, w in _lines_by_flags(q)), {}
    return _count_lines_by_vertex_fibres(q)


def _count_nonfree(q: int, method: str) -> Tuple[int, Dict[str, int]]:
    stats = line_statistics(q, method)
    histogram = {k: v for k, v in stats.items() if k.startswith("vertex-nonfree=")}
    return stats.get("nonfree", 0), histogram


# Conic pairs over Gr(4,5)


def _hyperplane_basis(phi: np.ndarray, q: int) -> Tuple[int, np.ndarray]:
    """Basis e_j - phi_j e_lead (j ≠ lead) of ker phi, phi normalized"""
    lead = int(np.flatnonzero(phi)[0])
    rows = []
    for j in range(AMBIENT):
        if j == lead:
            continue
        row = np.zeros(AMBIENT, dtype=np.int64)
        row[j] = 1
        row[lead] = (-phi[j]) % q
        rows.append(row)
    return lead, np.array(rows)


def _relation(vector: np.ndarray, index: int) -> int:
    return plucker_relations([int(x) for x in vector])[index]


def _double_gram(kernel: np.ndarray, index: int, q: int) -> np.ndarray:
    """Twice the Gram matrix of the index-th Pluecker quadric on the kernel rows"""
    d = len(kernel)
    gram = np.zeros((d, d), dtype=np.int64)
    values = [_relation(k, index) for k in kernel]
    for i in range(d):
        gram[i, i] = (2 * values[i]) % q
        for j in range(i + 1, d):
            value = (_relation(kernel[i] + kernel[j], index) - values[i] - values[j]) % q
            gram[i, j] = gram[j, i] = value
    return gram


@lru_cache(maxsize=None)
def _hyperplane_kernels(d: int, q: int) -> np.ndarray:
    """For every η ∈ P^{d-1}(F_q), a basis of ker η as an array (M, d-1, d)"""
    blocks = []
    for reps in iter_grassmannian(1, d, q):
        eta = reps[:, 0, :]
        lead = int(np.flatnonzero(eta[0])[0])
        basis = np.zeros((len(eta), d - 1, d), dtype=np.int64)
        for r, j in enumerate(j for j in range(d) if j != lead):
            basis[:, r, j] = 1
            basis[:, r, lead] = (-eta[:, j]) % q
        blocks.append(basis)
    return np.concatenate(blocks)


def _rank_at_most_one(m: np.ndarray, q: int) -> np.ndarray:
    size = m.shape[1]
    ok = np.ones(len(m), dtype=bool)
    for i, k in combinations(range(size), 2):
        for j, l in combinations(range(size), 2):
            ok &= (m[:, i, j] * m[:, k, l] - m[:, i, l] * m[:, k, j]) % q == 0
    return ok


def v4_partition(q: int, start: int, stop: int, with_quadrics: bool = True) -> Dict[str, int]:
    """
    Conic-pair statistics for the 4-spaces with index start..stop-1.

    Args:
        q: prime
        start: first hyperplane index in the enumeration of P^4
        stop: end of the range
        with_quadrics: also count ranks (odd q only)

    Returns:
        Dict of integer counters: dimK, SY, rank, Q3, Q3:sections, Dbar, rank0locus
    """
    field = Field(q)
    hyperplanes = projective_points(AMBIENT, q)[start:stop]
    pairs = list(combinations(range(4), 2))
    counts: Counter = Counter()
    for phi in hyperplanes:
        lead, basis = _hyperplane_basis(phi, q)
        w = np.array([wedge(basis[i], basis[j], q) for i, j in pairs])
        h1, h2 = linear_form_values(w, q)
        kernel = (_nullspace_mod(field, [h1, h2], len(pairs)) @ w) % q
        d = len(kernel)
        counts[f"dimK={d}"] += 1
        counts["SY"] += gaussian_binomial(d, 3, q)
        if not with_quadrics:
            continue
        gram = _double_gram(kernel, lead, q)
        rank = field_rank(field, _elements(field, gram), d)
        counts[f"rank={rank}"] += 1
        if rank <= 3:
            counts["Q3"] += 1
        sections = _hyperplane_kernels(d, q)
        restricted = np.einsum("mij,jk,mlk->mil", sections, gram, sections) % q
        counts["rank0locus"] += int((restricted == 0).reshape(len(restricted), -1).all(axis=1).sum())
        rank_one = int(_rank_at_most_one(restricted, q).sum())
        counts["Dbar"] += rank_one
        if rank_one:
            counts["Q3:sections"] += 1
    return dict(counts)


def _ranges(total: int, jobs: int) -> List[Tuple[int, int]]:
    step = -(-total // max(jobs, 1))
    return [(a, min(a + step, total)) for a in range(0, total, step)]


@lru_cache(maxsize=None)
def conic_pair_statistics(q: int, jobs: int = 1) -> Dict[str, int]:
    """v4_partition over all of Gr(4,5), split across worker processes; the cached dict is shared"""
    with_quadrics = q != 2
    total = len(projective_points(AMBIENT, q))
    if jobs <= 1:
        return v4_partition(q, 0, total, with_quadrics)
    counts: Counter = Counter()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(v4_partition, q, a, b, with_quadrics) for a, b in _ranges(total, jobs)]
        for future in _progress(as_completed(futures), "Gr(4,5) partitions", total=len(futures)):
            counts.update(future.result())
    return dict(counts)


def _from_statistics(key: str):
    def count(q: int, jobs: int) -> Tuple[int, Dict[str, int]]:
        stats = conic_pair_statistics(q, jobs)
        histogram = {k: v for k, v in stats.items() if k.startswith(("dimK=", "rank="))}
        return stats.get(key, 0), histogram
    return count


def _count_q3(q: int, jobs: int) -> Tuple[int, Dict[str, int]]:
    """
    4-spaces whose fibre quadric Gr(2,V4) ∩ H1 ∩ H2 has rank at most 3.

    The 4-spaces with a rank ≤ 1 hyperplane section and the zeros of x1² + 4 x0 x2 are
    counted alongside; both must agree with the rank count.
    """
    value, histogram = _from_statistics("Q3")(q, jobs)
    histogram["Q3:sections"] = conic_pair_statistics(q, jobs).get("Q3:sections", 0)
    histogram["Q3:equation"] = _count_q3_equation(q)
    if histogram["Q3:sections"] != value or histogram["Q3:equation"] != value:
        logger.warning(f"Q3 over F_{q}: rank count {value} disagrees with {histogram}")
    return value, histogram


# Entry points


def _check_request(variety: str, q: int) -> str:
    name = VARIETY_ALIASES.get(variety.lower())
    if name is None:
        raise ValueError(f"Unknown variety '{variety}', expected one of {list(VARIETIES)}")
    if q not in SUPPORTED_PRIMES:
        raise UnknownSuiteError(f"q={q} is not a supported prime {SUPPORTED_PRIMES}")
    if q == 2 and name not in LINEAR_VARIETIES:
        raise CharacteristicError(f"{name} involves a quadric and cannot be counted over F_2")
    return name


def default_method(variety: str, q: int) -> Optional[str]:
    if variety == "H1Y":
        return "flags" if q <= MAX_FLAG_ENUMERATION_Q else "vertex-fibres"
    if variety == "nonfree":
        return "vertex-fibres"
    return None


def count_detail(variety: str, q: int, jobs: int = 1, method: Optional[str] = None) -> CountResult:
    """
    Count the F_q-points of a variety.

    Args:
        variety: one of VARIETIES (case-insensitive)
        q: supported prime
        jobs: worker processes for the Gr(4,5) partitions
        method: "flags" or "vertex-fibres" for line counts

    Returns:
        CountResult: the count with its strata histogram
    """
    name = _check_request(variety, q)
    if method is not None and name not in ("H1Y", "nonfree"):
        raise ValueError(f"{name} has a single counting method")
    if method is not None and method not in LINE_METHODS:
        raise ValueError(f"Unknown method '{method}', expected one of {LINE_METHODS}")
    method = method or default_method(name, q)

    started = time.perf_counter()
    counters: Dict[str, Callable[[], Tuple[int, Dict[str, int]]]] = {
        "Y": lambda: _count_Y(q),
        "H1Y": lambda: _count_h1y(q, method),
        "Cv": lambda: (_count_points(q, _conic_predicate(q)), {}),
        "CvDual": lambda: _count_cv_dual(q),
        "Q3": lambda: _count_q3(q, jobs),
        "SingQ3": lambda: _count_sing_q3(q),
        "Dbar": lambda: _from_statistics("Dbar")(q, jobs),
        "SY": lambda: _from_statistics("SY")(q, jobs),
        "rank0locus": lambda: _from_statistics("rank0locus")(q, jobs),
        "P4": lambda: (len(projective_points(AMBIENT, q)), {}),
        "Gr45": lambda: _count_gr45(q),
        "planes": lambda: _count_planes(q),
        "nonfree": lambda: _count_nonfree(q, method),
    }
    try:
        value, histogram = counters[name]()
    except Exception as e:
        logger.error(f"Counting {name} over F_{q} failed: {e}", exc_info=True)
        raise
    elapsed = (time.perf_counter() - started) * 1000
    logger.info(f"|{name}(F_{q})| = {value} ({elapsed:.0f} ms)")
    return CountResult(variety=name, q=q, count=value, method=method, histogram=histogram, elapsed_ms=elapsed)


def count(variety: str, q: int, jobs: int = 1, method: Optional[str] = None) -> int:
    return count_detail(variety, q, jobs, method).count


def interpolate(samples: Sequence[Tuple[int, int]], degree: int) -> CountPoly:
    """
    Integer polynomial of the given degree through (q, count) samples.

    Extra samples are used as a consistency check.

    Raises:
        InterpolationError: too few samples, conflicting samples, a non-integer
            coefficient, or an extra sample off the interpolant
    """
    points = sorted(set((int(q), int(n)) for q, n in samples))
    abscissae = [q for q, _ in points]
    if len(set(abscissae)) != len(abscissae):
        raise InterpolationError(f"Conflicting counts for the same q in {points}")
    if len(points) < degree + 1:
        raise InterpolationError(f"{len(points)} samples cannot determine a degree {degree} polynomial")

    q = Symbol("q")
    expr = sympy_interpolate(points[:degree + 1], q)
    coefficients = Poly(expr, q).all_coeffs()[::-1]
    if any(not c.is_integer for c in coefficients):
        raise InterpolationError(f"Interpolant {expr} has non-integer coefficients")
    result = CountPoly(tuple(int(c) for c in coefficients))
    for x, value in points[degree + 1:]:
        if result.evaluate(x) != value:
            raise InterpolationError(f"Sample ({x}, {value}) is off the interpolant {result.text()}")
    return result
