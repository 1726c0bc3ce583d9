"""Classification of plane-curve germs at the origin into simple (ADE) types.

The decision tree uses three exact local invariants of a bivariate germ
``f`` with ``f(0,0) = 0``:

* the multiplicity (lowest total degree of a term);
* the Milnor number, computed as the local intersection multiplicity of the
  two partial derivatives by the classical recursive reduction (restrict to
  the x-axis, cancel leading terms, split off factors of y), with
  non-isolated singularities detected by an exact gcd of the partials;
* for multiplicity three, the line-multiplicity structure of the tangent
  cone over the algebraic closure, decided by gcd of the cubic form with
  its derivatives (no root-finding).

A germ is log canonical with coefficient (1+eps)/2 exactly when it is
smooth or simple, which is the predicate the degeneration audits consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .eps import EpsNum, LOG_BRANCH_COEFF, rat
from .errors import PreconditionError
from .poly import Poly, gcd_bivariate, gcd_list, product, variables

INFINITE = math.inf

NON_SIMPLE_REASONS = (
    "multiplicity>=4",
    "non-reduced",
    "triple-line-large-mu",
    "non-isolated",
)


@dataclass(frozen=True)
class SingularityType:
    kind: str  # "Smooth" | "A" | "D" | "E" | "NonSimple"
    index: int | None = None
    reason: str | None = None

    def __post_init__(self):
        if self.kind == "Smooth":
            ok = self.index is None and self.reason is None
        elif self.kind == "A":
            ok = isinstance(self.index, int) and self.index >= 1 and self.reason is None
        elif self.kind == "D":
            ok = isinstance(self.index, int) and self.index >= 4 and self.reason is None
        elif self.kind == "E":
            ok = self.index in (6, 7, 8) and self.reason is None
        elif self.kind == "NonSimple":
            ok = self.index is None and self.reason in NON_SIMPLE_REASONS
        else:
            ok = False
        if not ok:
            raise PreconditionError(f"invalid singularity type {self.kind}({self.index})")

    @property
    def is_simple(self) -> bool:
        """Smooth or ADE; equivalently, log canonical at coefficient (1+eps)/2."""
        return self.kind != "NonSimple"

    def __str__(self):
        if self.kind == "Smooth":
            return "Smooth"
        if self.kind == "NonSimple":
            return f"NonSimple({self.reason})"
        return f"{self.kind}{self.index}"

    @staticmethod
    def parse(text: str) -> "SingularityType":
        t = text.strip()
        if t == "Smooth":
            return smooth()
        if t.startswith("NonSimple(") and t.endswith(")"):
            return non_simple(t[len("NonSimple("):-1])
        if t and t[0] in "ADE" and t[1:].isdigit():
            return SingularityType(t[0], int(t[1:]))
        raise PreconditionError(f"not a singularity type: {text!r}")


def smooth() -> SingularityType:
    return SingularityType("Smooth")


def a_type(n: int) -> SingularityType:
    return SingularityType("A", n)


def d_type(n: int) -> SingularityType:
    return SingularityType("D", n)


def e_type(n: int) -> SingularityType:
    return SingularityType("E", n)


def non_simple(reason: str) -> SingularityType:
    return SingularityType("NonSimple", reason=reason)


# -- germ plumbing ---------------------------------------------------------------


def _as_germ(f: Poly) -> Poly:
    """Validate and normalize a germ to the two variables (x, y)."""
    if f.is_zero:
        raise PreconditionError("the zero polynomial is not a curve germ")
    g = _force_xy(f)
    if g.is_constant:
        raise PreconditionError("constant polynomials are not curve germs")
    if g.constant_term() != 0:
        raise PreconditionError("curve germ must vanish at the origin")
    return g


def multiplicity(f: Poly) -> int:
    """Lowest total degree of a term of the germ."""
    return _as_germ(f).order()


def _restrict_to_axis(f: Poly) -> list[Fraction]:
    """Coefficient list of f(x, 0)."""
    coeffs: dict[int, Fraction] = {}
    for (i, j), c in f.terms.items():
        if j == 0:
            coeffs[i] = coeffs.get(i, Fraction(0)) + c
    if not coeffs:
        return []
    out = [Fraction(0)] * (max(coeffs) + 1)
    for i, c in coeffs.items():
        out[i] = c
    while out and out[-1] == 0:
        out.pop()
    return out


def _ord_at_zero(coeffs: list[Fraction]) -> int:
    for i, c in enumerate(coeffs):
        if c != 0:
            return i
    raise AssertionError("zero restriction has no vanishing order")


def local_intersection_multiplicity(f: Poly, g: Poly):
    """Intersection multiplicity of two curves at the origin (int or inf).

    Classical recursion: if a restriction to the x-axis vanishes
    identically, split off a factor of y (the axis contributes the vanishing
    order of the other restriction); otherwise cancel the larger-degree
    restriction against the smaller one, which preserves the local ideal.
    Infinite exactly when the curves share a component through the origin.
    """
    f, g = _as_germ_pair(f, g)
    if f.constant_term() != 0 or g.constant_term() != 0:
        return 0
    if f.is_zero or g.is_zero:
        return INFINITE
    common = gcd_bivariate(f, g)
    if not common.is_constant and common.constant_term() == 0:
        return INFINITE

    y = Poly.variable(("x", "y"), "y")
    x = Poly.variable(("x", "y"), "x")
    total = 0
    while True:
        if f.constant_term() != 0 or g.constant_term() != 0:
            return total
        fu = _restrict_to_axis(f)
        gu = _restrict_to_axis(g)
        if not fu and not gu:
            raise AssertionError("common axis factor survived the gcd guard")
        if not fu:
            total += _ord_at_zero(gu)
            quotient = f.divide_exact(y)
            if quotient is None:
                raise AssertionError("vanishing restriction without a y factor")
            f = quotient
            continue
        if not gu:
            f, g = g, f
            continue
        if len(fu) > len(gu):
            f, g = g, f
            fu, gu = gu, fu
        shift = len(gu) - len(fu)
        scale = gu[-1] / fu[-1]
        g = g - f * Poly(("x", "y"), {(shift, 0): scale})
        if g.is_zero:
            raise AssertionError("proportional inputs survived the gcd guard")


def _as_germ_pair(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    fz, gz = f.is_zero, g.is_zero
    if fz and gz:
        return Poly.zero(("x", "y")), Poly.zero(("x", "y"))
    if fz:
        return Poly.zero(("x", "y")), _force_xy(g)
    if gz:
        return _force_xy(f), Poly.zero(("x", "y"))
    return _force_xy(f), _force_xy(g)


def _force_xy(f: Poly) -> Poly:
    """Reinterpret a <=2-variable polynomial over the ring (x, y).

    Variables already named x or y keep their identity; foreign variable
    names are renamed positionally (a linear relabeling, which leaves every
    local invariant computed here unchanged).
    """
    g = f.drop_unused_vars()
    if len(g.vars) > 2:
        raise PreconditionError(f"expected a bivariate polynomial, got variables {g.vars}")
    if set(g.vars) <= {"x", "y"}:
        return g.embed(("x", "y"))
    if len(g.vars) == 2:
        return Poly(("x", "y"), dict(g.terms))
    if len(g.vars) == 1:
        return Poly(("x", "y"), {(e[0], 0): c for e, c in g.terms.items()})
    return Poly(("x", "y"), {(0, 0): c for c in g.terms.values()})


def milnor_number(f: Poly):
    """Milnor number at the origin: intersection multiplicity of the partials."""
    g = _as_germ(f)
    fx = g.derivative("x")
    fy = g.derivative("y")
    if fx.is_zero and fy.is_zero:
        raise PreconditionError("constant germ")
    return local_intersection_multiplicity(fx, fy)


def _non_reduced_at_origin(f: Poly) -> bool:
    w = gcd_list([f, f.derivative("x"), f.derivative("y")])
    return (not w.is_constant) and w.constant_term() == 0


def _tangent_cone_repeated_degree(f: Poly) -> int:
    """Total degree of gcd(T, Tx, Ty) for the tangent cone T: 0 for distinct
    lines, 1 for exactly one double line, 2 for a triple line (cubic case)."""
    cone = f.lowest_form()
    w = gcd_list([cone, cone.derivative("x"), cone.derivative("y")])
    return 0 if w.is_constant else w.total_degree()


def classify_ade(f: Poly) -> SingularityType:
    """Decision tree for plane-curve germs; the index always equals the Milnor number."""
    g = _as_germ(f)
    if _non_reduced_at_origin(g):
        return non_simple("non-reduced")
    mu = milnor_number(g)
    if mu == INFINITE:
        return non_simple("non-isolated")
    m = g.order()
    if m == 1:
        return smooth()
    if m == 2:
        return a_type(mu)
    if m == 3:
        repeated = _tangent_cone_repeated_degree(g)
        if repeated == 0:
            return d_type(mu)  # three distinct lines, an ordinary triple point
        if repeated == 1:
            return d_type(mu)  # one double line
        if mu in (6, 7, 8):
            return e_type(mu)
        return non_simple("triple-line-large-mu")
    return non_simple("multiplicity>=4")


def is_lc_pair(f: Poly, coeff: EpsNum = LOG_BRANCH_COEFF) -> bool:
    """Log canonicity of the pair (plane, coeff * germ) at the origin.

    Implemented for the branch coefficient (1+eps)/2 only, where the log
    canonical germs are exactly the smooth and simple ones.
    """
    if coeff != LOG_BRANCH_COEFF:
        raise PreconditionError("log-canonicity test is calibrated to coefficient (1+eps)/2")
    return classify_ade(f).is_simple


# -- collision germs of the branch curve ------------------------------------------


def collision_germ(cluster) -> Poly:
    """Local branch equation at a collision of marked points over [0:1].

    The indices in ``cluster`` (1-based, at most 3 of them) collide at the
    origin of the x-line; the remaining parameters take generic distinct
    nonzero values.  The branch curve is ``y0 y1 (y0^2 P1(x) + y1^2 P2(x))``
    with ``P1 = prod_{i<=4}(x - l_i)`` and ``P2 = prod_{i>=5}(x - l_i)``;
    the worst singular point above the collision lies on the horizontal line
    whose side vanishes to the higher order, and in that affine chart the
    germ is ``y (P + y^2 Q)`` with P the dominant side.
    """
    idx = sorted(set(int(i) for i in cluster))
    if not idx or any(i < 1 or i > 8 for i in idx):
        raise PreconditionError("cluster must be nonempty 1-based indices in 1..8")
    if len(idx) >= 4:
        raise PreconditionError("collisions of four or more points are not stable")
    lam: list[Fraction] = []
    fresh = 1
    for i in range(1, 9):
        if i in idx:
            lam.append(Fraction(0))
        else:
            lam.append(Fraction(fresh))
            fresh += 1
    ring = ("x", "y")
    x, y = variables(*ring)
    first = product([x - v for v in lam[:4]], vars=ring)
    second = product([x - v for v in lam[4:]], vars=ring)
    in_first_block = sum(1 for i in idx if i <= 4)
    if in_first_block >= len(idx) - in_first_block:
        dominant, other = first, second
    else:
        dominant, other = second, first
    return y * (dominant + y * y * other)


def collision_singularity(cluster) -> SingularityType:
    """ADE type of the double-cover singularity above a stable collision."""
    return classify_ade(collision_germ(cluster))
