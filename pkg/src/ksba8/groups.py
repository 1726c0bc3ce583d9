"""Symmetric-group actions on configurations and the transposition identity.

Two groups act on the eight marked points: the full symmetric group, and the
order-1152 subgroup preserving or swapping the index blocks {1..4} / {5..8}
(the blocks that enter the double-cover construction through the two
homogeneous coordinates).  Orbit questions are decided by brute-force
enumeration with exact comparisons, optionally modulo the Moebius action via
a canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations as _iter_permutations
from typing import Iterable, Sequence

from .eps import RatLike, rat
from .errors import PreconditionError
from .poly import Poly, poly_substitute, product, variables
from .projective import Mobius, ProjPoint, cross_ratio, mobius_apply
from .stability import Configuration

__all__ = [
    "Permutation", "enumerate_group", "act", "canonical_form_sl2", "same_orbit",
    "cross_ratio", "double_cover_affine_equation", "verify_transposition_identity",
]


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..8}, stored as the 0-based image tuple."""

    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(8)):
            raise PreconditionError("not a bijection of eight indices")

    @staticmethod
    def identity() -> "Permutation":
        return Permutation(tuple(range(8)))

    @staticmethod
    def from_one_based(seq: Sequence[int]) -> "Permutation":
        return Permutation(tuple(i - 1 for i in seq))

    @staticmethod
    def transposition(i: int, j: int) -> "Permutation":
        """Swap of the 1-based indices i and j."""
        img = list(range(8))
        img[i - 1], img[j - 1] = img[j - 1], img[i - 1]
        return Permutation(tuple(img))

    def __call__(self, i: int) -> int:
        """Image of a 1-based index."""
        return self.image[i - 1] + 1

    def inverse(self) -> "Permutation":
        inv = [0] * 8
        for k, v in enumerate(self.image):
            inv[v] = k
        return Permutation(tuple(inv))

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition self after other."""
        return Permutation(tuple(self.image[other.image[k]] for k in range(8)))


def enumerate_group(group: str) -> list[Permutation]:
    """All elements of ``"s8"`` or of the block subgroup ``"h"``, no duplicates."""
    g = group.lower()
    if g == "s8":
        return [Permutation(p) for p in _iter_permutations(range(8))]
    if g == "h":
        out = []
        swap = [4, 5, 6, 7, 0, 1, 2, 3]
        for first in _iter_permutations(range(4)):
            for second in _iter_permutations(range(4, 8)):
                straight = first + second
                out.append(Permutation(straight))
                out.append(Permutation(tuple(swap[k] for k in straight)))
        return out
    raise PreconditionError(f"unknown group {group!r}")


def act(sigma: Permutation, cfg: Configuration) -> Configuration:
    """Left action: point i of the result is point ``sigma^-1(i)`` of the input."""
    inv = sigma.inverse()
    return Configuration(tuple(cfg.points[inv.image[i]] for i in range(8)))


def _first_three_distinct(cfg: Configuration) -> tuple[ProjPoint, ProjPoint, ProjPoint]:
    chosen: list[ProjPoint] = []
    for p in cfg.points:
        if p not in chosen:
            chosen.append(p)
        if len(chosen) == 3:
            return tuple(chosen)  # type: ignore[return-value]
    raise PreconditionError("canonical form needs at least three distinct points")


def canonical_form_sl2(cfg: Configuration) -> Configuration:
    """Canonical orbit representative under the Moebius action.

    Applies the unique transformation sending the first three pairwise
    distinct points (in index order) to infinity, 0, 1.
    """
    p1, p2, p3 = _first_three_distinct(cfg)
    move = Mobius.sending_to_infty_zero_one(p1, p2, p3)
    return Configuration(tuple(move.apply(p) for p in cfg.points))


def same_orbit(c1: Configuration, c2: Configuration, group: str = "s8",
               mod_sl2: bool = False) -> bool:
    """Whether some permutation in the group maps c1 to c2 (exactly, or after
    reducing both sides to canonical Moebius form)."""
    if mod_sl2:
        target = canonical_form_sl2(c2)
        for sigma in enumerate_group(group):
            if canonical_form_sl2(act(sigma, c1)) == target:
                return True
        return False
    for sigma in enumerate_group(group):
        if act(sigma, c1) == c2:
            return True
    return False


# -- the transposition invariance identity --------------------------------------


def double_cover_affine_equation(lams: Sequence[RatLike]) -> Poly:
    """Affine equation ``z^2 - y (y^2 A(x) + B(x))`` of the double cover.

    Here ``A = prod_{i<=4}(x - lam_i)`` and ``B = prod_{i>=5}(x - lam_i)``;
    the chart is the affine patch where the second coordinates of both
    projective factors are nonzero.
    """
    vals = [rat(v) for v in lams]
    if len(vals) != 8:
        raise PreconditionError("eight parameters expected")
    ring = ("x", "y", "z")
    x, y, z = variables(*ring)
    a = product([x - v for v in vals[:4]], vars=ring)
    b = product([x - v for v in vals[4:]], vars=ring)
    return z * z - y * (y * y * a + b)


def _strip_linear_factors(p: Poly, roots: Iterable[Fraction]) -> Poly:
    x = Poly.variable(p.vars, "x")
    for r in roots:
        factor = x - r
        while True:
            q = p.divide_exact(factor)
            if q is None:
                break
            p = q
    return p


def verify_transposition_identity(lams: Sequence[RatLike], i: int, j: int) -> bool:
    """Check that swapping parameters i and j yields a birational surface.

    For a crossing swap (one index in each block) the rational substitution
    ``(x, y, z) -> (x, r y, r z)`` with ``r = (x - lam_j)/(x - lam_i)`` is
    applied to the affine double-cover equation; after clearing denominators
    and removing the factors supported on the exceptional locus, the result
    must equal the swapped equation exactly (up to a nonzero constant).
    Swaps inside one block leave the equation literally unchanged, since they
    only reorder the factors of one product.
    """
    vals = [rat(v) for v in lams]
    if len(vals) != 8:
        raise PreconditionError("eight parameters expected")
    if not (1 <= i <= 8 and 1 <= j <= 8) or i == j:
        raise PreconditionError("need two distinct indices in 1..8")
    if i > j:
        i, j = j, i
    source = double_cover_affine_equation(vals)
    swapped_vals = list(vals)
    swapped_vals[i - 1], swapped_vals[j - 1] = swapped_vals[j - 1], swapped_vals[i - 1]
    target = double_cover_affine_equation(swapped_vals)

    same_block = (i <= 4) == (j <= 4)
    if same_block:
        return source == target

    if vals[i - 1] == vals[j - 1]:
        raise PreconditionError("crossing swap needs distinct parameter values")
    ring = source.vars
    x = Poly.variable(ring, "x")
    y = Poly.variable(ring, "y")
    z = Poly.variable(ring, "z")
    r_num = x - vals[j - 1]
    r_den = x - vals[i - 1]
    numerator, denominator = poly_substitute(
        source, {"y": (r_num * y, r_den), "z": (r_num * z, r_den)}
    )
    # the denominator must be supported on the two exceptional lines
    if not _strip_linear_factors(denominator, [vals[i - 1], vals[j - 1]]).is_constant:
        return False
    reduced = _strip_linear_factors(numerator, [vals[i - 1], vals[j - 1]])
    return reduced.proportional_to(target)
