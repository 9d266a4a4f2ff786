"""
Claims checked by the verifier: displayed polynomials, example lines, expected polynomials
and the registry of report anchors.
"""
from typing import Dict, List, Tuple

# Local equations of Gr(2,V4) ∩ H1 ∩ H2 on the x3 ≠ 0 chart of Gr(4,5)
CHART_X3_QUADRIC = ("b*c*p01^2 + c^2*p01*p02 + c*d*p01*p04 - a*p01^2 + b*p01*p04 + c*p02*p04"
                    " + d*p04^2 + d*p01*p14 - p02*p14")
CHART_X3_LINEAR = (
    "p03 - p12",
    "p12 - b*p01 - c*p02 - d*p04",
    "p13 - p24",
    "p23 + a*p02 + b*p12 - d*p24",
    "p24 + a*p01 - c*p12 - d*p14",
    "p34 - a*p04 - b*p14 - c*p24",
)

# Same on the x4 ≠ 0 chart
CHART_X4_QUADRIC = ("a*p04^2 + a*p01*p14 + b*p04*p14 - d*p14^2 - p01*p34 - a*u*p04*p14"
                    " - b*u*p14^2 - u*p04*p34 + u^2*p14*p34")
CHART_X4_LINEAR = (
    "p02 + b*p01 + d*p04 - u*p12",
    "p03 - p12",
    "p12 - a*p01 + d*p14 - u*p24",
    "p13 - p24",
    "p23 + a*p12 + b*p24 - d*p34",
    "p24 + a*p04 + b*p14 - u*p34",
)

# Image of the double-line locus in Gr(4,5)
Q3_EQUATION = "x1^2 + 4*x0*x2"
Q3_CHART_X3 = "b^2 + 4*a*d"
Q3_SINGULAR = ("x0", "x1", "x2")
GR45_VARIABLES = ("x0", "x1", "x2", "x3", "x4")

# Fibre over V4(c): the plane P_c and the plane S
SING_FIBER_COMMON = ("p23", "c*p24 - p34", "c*p02 - p12", "-c*p12 + p24", "p13 - p24", "p03 - p12")
SING_FIBER_SIGMA31 = ("c^2*p01 + c*p04 - p14",) + SING_FIBER_COMMON
SING_FIBER_S = ("p02",) + SING_FIBER_COMMON

# Example lines: type -> (vertex, plane)
EXAMPLE_LINES: Dict[str, Tuple[str, str]] = {
    "a": ("e2", "e0,e2,e3"),
    "b": ("e0", "e0,e2,e4"),
    "c": ("e0", "e0,e1,e2"),
    "d": ("e0", "e0,e1,e4"),
    "e": ("e1", "e0,e1,e4"),
}
EXPECTED_NORMAL_BUNDLE: Dict[str, str] = {"a": "free", "b": "free", "c": "nonfree", "d": "nonfree", "e": "free"}

# Intersection Poincare polynomial of the stable-map space, coefficients in q = t^2
IP_TARGET: Tuple[int, ...] = (1, 4, 10, 15, 15, 10, 4, 1)
LINE_SPACE_TARGET: Tuple[int, ...] = (1, 2, 3, 2, 1)

# Closed-form point counts over F_q, ascending coefficients in q
COUNT_FORMULAS: Dict[str, Tuple[int, ...]] = {
    "Y": (1, 1, 2, 1, 1),
    "H1Y": (1, 2, 3, 2, 1),
    "Cv": (1, 1),
    "CvDual": (1, 1),
    "Q3": (1, 1, 1, 1),
    "SingQ3": (1, 1),
    "Dbar": (1, 2, 2, 2, 1),
    "rank0locus": (2, 2),
    "P4": (1, 1, 1, 1, 1),
    "Gr45": (1, 1, 1, 1, 1),
    "planes": (2, 1),
    "nonfree": (1, 2, 1),
    "SY": (1, 2, 3, 4, 4, 3, 2, 1),
}

# Line strata over F_q: type -> ascending coefficients
LINE_TYPE_COUNTS: Dict[str, Tuple[int, ...]] = {
    "a": (0, 0, 0, 1, 1),
    "b": (0, 0, 1, 1),
    "c": (0, 1, 1),
    "d": (1, 1),
    "e": (0, 0, 1),
}

# Report anchors: check slug -> the claim's wording exactly as it appears in the source text
ANCHORS: Dict[str, str] = {
    "pluecker-embedding": r'the Pl\"ucker embedding',
    "y-definition": r"\{p_{12}-p_{03}=p_{13}-p_{24}=0\}",
    "flag-lines": r"\bH_1(\mathrm{Gr} (2,5))= \mathrm{Gr} (1,3,5)",
    "vertex-conic": r"\emph{vertex conic}",
    "dual-conic": r"generated by the tangent lines of $C_{v}$",
    "plane-equations": r"V_4=\text{span}\{e_0,e_1,e_2+te_3,e_4\}",
    "plane-tangency": "tangent line of the dual conic",
    "plane-pairs": r"is a point in $S$ for any $t\neq t' \in C_{v}$",
    "line-blowup": "smooth blow-up along the smooth conic",
    "line-types": "there are five types of lines in $Y$",
    "example-lines": "Example of lines in $Y$",
    "sweep-R": "be the union of planes in $Y$",
    "nonfree-support": "at a point uniquely",
    "nonfree-tangent": "the lines of the case (d) are only non-free",
    "double-lines": "for a (resp. non-free) free line $L$ in $Y$ is unique",
    "chart-x3-quadric": "bcp_{01}^2+c^2p_{01}p_{02}",
    "chart-x4-quadric": "ap_{04}^2+ap_{01}p_{14}+bp_{04}p_{14}",
    "q3-quadric": "x_1^2+4x_0x_2=0",
    "q3-singular": r"I_{\mathrm{Sing}(Q_3)}=\langle x_0, x_1, x_2\rangle",
    "sing-fiber": "c^2p_{01}+cp_{04}-p_{14}",
    "dbar-fibration": r"is a $\mathbb{P}^1$-fiberation over $Q_3$",
    "conic-incidence": r"U_3\subset \mathcal{K} _{[V_4]}",
    "blowup-center": r"is a disjoint union $\mathbb{P}^1\sqcup \mathbb{P}^1$",
    "point-counts": r"\emph{virtual} (resp. intersection) Poincar\'e polynomial",
    "line-fibration": r"isomorphic to a $\mathbb{P}^1$-fiberation over the vertex conic",
    "stable-maps-ip": "1+4t^{2}+10t^{4}+15t^{6}",
    "blowup-formula": r"(\mathrm{P} (\mathbb{P}^2)-1)\cdot \mathrm{P} (\bD(Y))",
}
REGISTERED_ANCHORS = frozenset(ANCHORS.values())


def anchor_text(slug: str) -> str:
    """Anchor wording for a check slug; unknown slugs come back unchanged and fail registration"""
    return ANCHORS.get(slug, slug)


def anchor_registered(anchor: str) -> bool:
    return anchor in REGISTERED_ANCHORS


def example_line_types() -> List[str]:
    return sorted(EXAMPLE_LINES)
