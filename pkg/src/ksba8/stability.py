"""GIT stability of ordered 8-point configurations on the projective line.

Under the symmetric linearization a configuration is stable when at most
three points coincide, strictly semi-stable when exactly four do, and
unstable otherwise.  The strictly semi-stable configurations with closed
orbit split 4+4 into two clusters; the partition's trace on the index
blocks {1..4} / {5..8} grades them into the three kinds a, b, c.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .eps import EpsNum, HASSETT_WEIGHT, RatLike, rat
from .errors import PreconditionError
from .poly import Poly
from .projective import Mobius, ProjPoint

FIRST_BLOCK = frozenset({1, 2, 3, 4})


class StabilityClass(Enum):
    STABLE = "Stable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    UNSTABLE = "Unstable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Configuration:
    """An ordered 8-tuple of rational points on the projective line."""

    points: tuple[ProjPoint, ...]

    def __post_init__(self):
        if len(self.points) != 8 or not all(isinstance(p, ProjPoint) for p in self.points):
            raise PreconditionError("a configuration holds exactly 8 projective points")

    @staticmethod
    def of(*values: Union[RatLike, ProjPoint]) -> "Configuration":
        """Build from affine rationals, ``"inf"``, or ready-made points."""
        pts = []
        for v in values:
            if isinstance(v, ProjPoint):
                pts.append(v)
            elif isinstance(v, str) and v.strip() in ("inf", "oo"):
                pts.append(ProjPoint.infinity())
            else:
                pts.append(ProjPoint.finite(rat(v)))
        return Configuration(tuple(pts))

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> ProjPoint:
        return self.points[i]

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.points) + ")"


@dataclass(frozen=True)
class SSSType:
    """Kind and defining partition of a closed-orbit strictly semi-stable point.

    ``partition`` is the 4-element index set (1-based, sorted) of one
    cluster, stored as the lexicographically smaller of the two complementary
    choices, i.e. the one containing index 1.
    """

    kind: str
    partition: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("a", "b", "c"):
            raise PreconditionError(f"unknown kind {self.kind!r}")
        part = self.partition
        if len(part) != 4 or sorted(part) != list(part) or len(set(part)) != 4 \
                or any(i < 1 or i > 8 for i in part):
            raise PreconditionError("partition must be 4 sorted distinct indices in 1..8")
        if 1 not in part:
            raise PreconditionError("partition is stored as the side containing index 1")
        if kind_of_partition(part) != self.kind:
            raise PreconditionError(
                f"partition {part} has kind {kind_of_partition(part)!r}, not {self.kind!r}")

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, 9) if i not in self.partition)


def kind_of_partition(partition: Iterable[int]) -> str:
    """Grade a 4-element index set by its overlap with the block {1,2,3,4}."""
    k = len(FIRST_BLOCK.intersection(partition))
    if k == 2:
        return "a"
    if k in (1, 3):
        return "b"
    return "c"


def classify_stability(cfg: Configuration) -> StabilityClass:
    worst = max(Counter(cfg.points).values())
    if worst <= 3:
        return StabilityClass.STABLE
    if worst == 4:
        return StabilityClass.STRICTLY_SEMISTABLE
    return StabilityClass.UNSTABLE


def closed_orbit_type(cfg: Configuration) -> SSSType | None:
    """The (kind, partition) of a two-cluster 4+4 configuration, else None."""
    counts = Counter(cfg.points)
    if len(counts) != 2 or set(counts.values()) != {4}:
        return None
    anchor = cfg.points[0]
    partition = tuple(i for i in range(1, 9) if cfg.points[i - 1] == anchor)
    return SSSType(kind_of_partition(partition), partition)


def component_count(kind: str) -> int:
    """Number of unordered partitions {I, I^c} of the given kind."""
    if kind not in ("a", "b", "c"):
        raise PreconditionError(f"unknown kind {kind!r}")
    from itertools import combinations

    count = 0
    for subset in combinations(range(1, 9), 4):
        if 1 not in subset:  # each unordered pair once, via the side containing 1
            continue
        if kind_of_partition(subset) == kind:
            count += 1
    return count


# -- points of the blown-up parameter space ------------------------------------


@dataclass(frozen=True)
class NormalDirection:
    """First-order separation data of the two clusters: eight rationals.

    The values indexed by the partition describe the displacements of the
    cluster placed at 0; the complementary values describe the cluster at
    infinity (and must be nonzero there: a vanishing value degenerates the
    associated one-parameter family into the unstable locus).
    """

    lam: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.lam) != 8 or not all(isinstance(v, Fraction) for v in self.lam):
            raise PreconditionError("normal data is a tuple of 8 exact rationals")

    @staticmethod
    def of(values: Sequence[RatLike]) -> "NormalDirection":
        return NormalDirection(tuple(rat(v) for v in values))


@dataclass(frozen=True)
class PlainConfig:
    """A point of the blow-up lying over a configuration outside the blown-up locus."""

    config: Configuration


@dataclass(frozen=True)
class ExceptionalPoint:
    """A point of an exceptional divisor: closed-orbit base plus normal direction."""

    base: Configuration
    sss: SSSType
    normal: NormalDirection

    def __post_init__(self):
        actual = closed_orbit_type(self.base)
        if actual is None:
            raise PreconditionError("base configuration does not have a closed orbit")
        if actual != self.sss:
            raise PreconditionError("declared type does not match the base configuration")
        complement_vals = [self.normal.lam[i - 1] for i in self.sss.complement]
        if any(v == 0 for v in complement_vals):
            raise PreconditionError(
                "normal data of the cluster at infinity must be nonzero")
        cluster_vals = [self.normal.lam[i - 1] for i in self.sss.partition]
        if len(set(cluster_vals)) == 1 and len(set(complement_vals)) == 1:
            raise PreconditionError("both clusters degenerate: not a point of the blow-up")

    @staticmethod
    def make(base: Configuration, normal: NormalDirection) -> "ExceptionalPoint":
        sss = closed_orbit_type(base)
        if sss is None:
            raise PreconditionError("base configuration does not have a closed orbit")
        return ExceptionalPoint(base, sss, normal)


KirwanPoint = Union[PlainConfig, ExceptionalPoint]


def kirwan_stable(point: KirwanPoint) -> bool:
    """Stability on the blow-up of the semi-stable locus along the 4+4 strata.

    Over the complement of the blown-up locus this is ordinary stability; an
    exceptional point is stable exactly when it lies off both strict
    transforms, i.e. when neither cluster's separation data is constant.
    """
    if isinstance(point, PlainConfig):
        return classify_stability(point.config) is StabilityClass.STABLE
    if isinstance(point, ExceptionalPoint):
        in_cluster = [point.normal.lam[i - 1] for i in point.sss.partition]
        out_cluster = [point.normal.lam[i - 1] for i in point.sss.complement]
        return len(set(in_cluster)) > 1 and len(set(out_cluster)) > 1
    raise TypeError(f"not a point of the blow-up: {point!r}")


# -- stabilizer weights on the normal space -------------------------------------


def _displacement_weight(at_zero: bool) -> int:
    """Weight of ``diag(t, 1/t)`` on a first-order displacement at 0 or infinity.

    The stabilizer acts as ``diag(t^2, 1)`` projectively; expanding its action
    on a displaced point gives the local coordinate ``t^2 d`` at 0 and
    ``d / t^2`` at infinity.
    """
    ring = ("t", "d")
    t = Poly.variable(ring, "t")
    d = Poly.variable(ring, "d")
    one = Poly.const(ring, 1)
    p, q = (d, one) if at_zero else (one, d)
    image = ((t * t) * p, q)
    num, den = (image[0], image[1]) if at_zero else (image[1], image[0])
    return num.degree_in("t") - den.degree_in("t")


def normal_weights(cfg: Configuration) -> tuple[int, ...]:
    """Stabilizer weights on the six normal directions at a closed-orbit point.

    Each cluster contributes its four first-order displacements modulo the
    common (barycenter) direction; the configuration is first moved so that
    the clusters sit at 0 and infinity.
    """
    sss = closed_orbit_type(cfg)
    if sss is None:
        raise PreconditionError("normal weights require a closed-orbit configuration")
    v_in = cfg.points[sss.partition[0] - 1]
    v_out = cfg.points[sss.complement[0] - 1]
    third = next(
        p for p in (ProjPoint.finite(k) for k in range(3)) if p not in (v_in, v_out)
    )
    move = Mobius.sending_to_infty_zero_one(v_out, v_in, third)
    zero, infinity = ProjPoint.finite(0), ProjPoint.infinity()
    for i in range(1, 9):
        target = zero if i in sss.partition else infinity
        if move.apply(cfg.points[i - 1]) != target:
            raise AssertionError("canonicalization failed")
    w_zero = _displacement_weight(at_zero=True)
    w_inf = _displacement_weight(at_zero=False)
    weights = (w_zero,) * 3 + (w_inf,) * 3
    return tuple(sorted(weights, reverse=True))


def hassett_stable(cfg: Configuration, weight: EpsNum = HASSETT_WEIGHT) -> bool:
    """Weighted stability of the marked projective line.

    True when at least three distinct points occur and, at every point, the
    total weight of the coincident markings is at most 1 in the infinitesimal
    order (so weight 1/4 + eps forbids exactly the 4-fold collisions).
    """
    counts = Counter(cfg.points)
    if len(counts) < 3:
        return False
    one = EpsNum(1, 0)
    return all(weight * multiplicity <= one for multiplicity in counts.values())
