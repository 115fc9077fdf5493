"""Moment polytope and reliability prismatoid geometry.

The set of normalized moment triples of laws on {0..n} is the convex hull

    M = conv{ v_i = (i/n, (i/n)^2, (i/n)^3) : i = 0..n },

a 3-dimensional cyclic polytope over points of the moment curve. Lifting
each vertex by a fourth coordinate equal to the indicator [i >= k] yields a
4-dimensional prismatoid whose upper (resp. lower) facets, seen from the
direction of that coordinate, project down to a triangulated subdivision of
M; the height of the upper (lower) hull over a moment triple is the sharp
maximum (minimum) of P(S >= k).

Facet families are emitted in closed form (four blocks per side, hinged on
the apex vertex: index k for the upper side, k-1 for the lower side); a
brute-force enumeration over vertex quadruples provides the independent
cross-check. Conventions:

* a simplex is stored as its vertex indices in family order;
* serialized form is one line per simplex: ``side block a b c d``;
* empty family ranges and index collisions (apex 0 or n) are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Literal, Sequence

from .exact import det_affine, solve_linear
from .moments import MomentTriple

__all__ = [
    "UPPER",
    "LOWER",
    "Simplex",
    "MembershipResult",
    "moment_vertex",
    "prismatoid_vertex",
    "cyclic_facets",
    "membership",
    "combination_on_curve",
    "barycentric",
    "subdivision",
    "upper_facets",
    "lower_facets",
    "brute_force_facets",
    "affinely_independent",
    "BRUTE_FORCE_MAX_N",
]

UPPER: Literal["U"] = "U"
LOWER: Literal["L"] = "L"

BRUTE_FORCE_MAX_N = 16


@dataclass(frozen=True)
class Simplex:
    """A full-dimensional simplex of the prismatoid boundary (equivalently,
    of the induced subdivision of M): vertex indices in family order, the
    side whose hull it belongs to, and the family block (1..4)."""

    indices: tuple[int, ...]
    side: str
    block: int

    def line(self) -> str:
        return "%s %d %s" % (self.side, self.block, " ".join(map(str, self.indices)))

    def key(self) -> tuple[str, frozenset]:
        return (self.side, frozenset(self.indices))


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of the polytope membership test.

    kind is one of "interior", "boundary", "outside". On the boundary, face
    holds the vertex indices of the minimal face containing the query and
    weights its (strictly positive) barycentric masses; outside, violated
    names one separating facet.
    """

    kind: str
    face: tuple[int, ...] | None = None
    weights: tuple[Fraction, ...] | None = None
    violated: tuple[int, int, int] | None = None

    @property
    def is_inside(self) -> bool:
        return self.kind != "outside"


@lru_cache(maxsize=None)
def moment_vertex(i: int, n: int, m: int = 3) -> tuple[Fraction, ...]:
    """Vertex v_i: the first m powers of i/n."""
    if not 0 <= i <= n:
        raise ValueError("vertex index out of range")
    t = Fraction(i, n)
    return tuple(t**j for j in range(1, m + 1))


def prismatoid_vertex(i: int, k: int, n: int, m: int = 3) -> tuple[Fraction, ...]:
    """Vertex v_i lifted by the tail indicator [i >= k]."""
    if not 0 <= k <= n:
        raise ValueError("k out of range")
    return moment_vertex(i, n, m) + (Fraction(1 if i >= k else 0),)


@lru_cache(maxsize=None)
def cyclic_facets(n: int) -> tuple[tuple[int, int, int], ...]:
    """Triangle facets of M: {0, i, i+1} for i = 1..n-1 and {t, t+1, n} for
    t = 0..n-2 (the two families of a 3-dimensional cyclic polytope)."""
    if n < 3:
        raise ValueError("the moment polytope is full-dimensional only for n >= 3")
    first = tuple((0, i, i + 1) for i in range(1, n))
    second = tuple((t, t + 1, n) for t in range(0, n - 1))
    return first + second


@lru_cache(maxsize=None)
def _centroid(n: int) -> tuple[Fraction, ...]:
    pts = [moment_vertex(i, n) for i in range(n + 1)]
    return tuple(sum(col, Fraction(0)) / (n + 1) for col in zip(*pts))


@lru_cache(maxsize=None)
def _facet_frames(n: int) -> tuple[tuple[tuple[int, int, int], int], ...]:
    """Each facet paired with the determinant sign of an interior reference
    point (the vertex centroid) against the facet plane."""
    c = _centroid(n)
    frames = []
    for facet in cyclic_facets(n):
        pts = [moment_vertex(i, n) for i in facet]
        ref = det_affine(pts + [c])
        if ref == 0:
            raise RuntimeError("centroid on a facet plane; degenerate polytope")
        frames.append((facet, 1 if ref > 0 else -1))
    return tuple(frames)


def combination_on_curve(
    indices: Sequence[int], n: int, coords: Sequence[Fraction]
) -> tuple[Fraction, ...] | None:
    """Weights lambda over the moment-curve points {v_i : i in indices} whose
    affine combination reproduces the given normalized moment coordinates.

    Solves the leading square Vandermonde block exactly, then checks the
    remaining moment equations; returns None when they are inconsistent.
    Weights may be negative; the caller decides what nonnegativity means.
    """
    s = len(indices)
    if len(set(indices)) != s:
        raise ValueError("indices must be distinct")
    if len(coords) < s - 1:
        raise ValueError("need at least %d moment coordinates" % (s - 1))
    ts = [Fraction(i, n) for i in indices]
    matrix = [[t**p for t in ts] for p in range(s)]
    rhs = [Fraction(1)] + list(coords[: s - 1])
    lam = solve_linear(matrix, rhs)
    if lam is None:  # impossible for distinct curve points, kept as a guard
        return None
    for p in range(s, len(coords) + 1):
        if sum((l * t**p for l, t in zip(lam, ts)), Fraction(0)) != coords[p - 1]:
            return None
    return tuple(lam)


def barycentric(indices: Sequence[int], n: int, mu: MomentTriple) -> tuple[Fraction, ...]:
    """Barycentric coordinates of mu with respect to a 4-vertex simplex on
    the moment curve. Entries can be negative (mu outside the simplex)."""
    if len(indices) != 4:
        raise ValueError("need exactly four vertex indices")
    lam = combination_on_curve(indices, n, mu.coords)
    if lam is None:
        raise ValueError("degenerate simplex")
    return lam


def membership(mu: MomentTriple) -> MembershipResult:
    """Classify mu against M by supporting-plane signs relative to the
    vertex centroid; on the boundary, identify the minimal carrying face."""
    n = mu.n
    point = list(mu.coords)
    zero_facets: list[tuple[int, int, int]] = []
    for facet, ref_sign in _facet_frames(n):
        pts = [moment_vertex(i, n) for i in facet]
        d = det_affine(pts + [point])
        if d == 0:
            zero_facets.append(facet)
        elif (d > 0) != (ref_sign > 0):
            return MembershipResult("outside", violated=facet)
    if not zero_facets:
        return MembershipResult("interior")
    lam = combination_on_curve(zero_facets[0], n, mu.coords)
    if lam is None:
        raise RuntimeError("point on a facet plane but not on the facet")
    face = tuple(i for i, l in zip(zero_facets[0], lam) if l != 0)
    weights = tuple(l for l in lam if l != 0)
    if any(l < 0 for l in lam):
        raise RuntimeError("negative carrying-face weight; inconsistent membership")
    return MembershipResult("boundary", face=face, weights=weights)


@lru_cache(maxsize=None)
def subdivision(apex: int, n: int) -> tuple[tuple[int, tuple[int, int, int, int]], ...]:
    """The four closed-form simplex families hinged on the apex vertex,
    as (block, indices) pairs in listing order. Ranges that are empty or
    would repeat a vertex are skipped.

    block 1: (0, i, i+1, apex)   i = 1 .. apex-2
    block 2: (0, apex, i, i+1)   i = apex+1 .. n-1
    block 3: (t, t+1, apex, n)   t = 0 .. apex-2
    block 4: (apex, t, t+1, n)   t = apex+1 .. n-2

    With apex = k these are the upper families; with apex = k-1 the lower
    ones. Blocks 1 and 2 fan around the edge (v_0, v_apex), blocks 3 and 4
    around (v_apex, v_n). Block 4 with apex = k triangulates the upper base;
    block 1 with apex = k-1 triangulates the lower base.
    """
    if not 0 <= apex <= n:
        raise ValueError("apex out of range")
    out: list[tuple[int, tuple[int, int, int, int]]] = []

    def emit(block: int, ix: tuple[int, int, int, int]) -> None:
        if len(set(ix)) == 4:
            out.append((block, ix))

    for i in range(1, apex - 1):
        emit(1, (0, i, i + 1, apex))
    for i in range(apex + 1, n):
        emit(2, (0, apex, i, i + 1))
    for t in range(0, apex - 1):
        emit(3, (t, t + 1, apex, n))
    for t in range(apex + 1, n - 1):
        emit(4, (apex, t, t + 1, n))
    return tuple(out)


def upper_facets(k: int, n: int) -> list[Simplex]:
    """Closed-form upper facet simplexes (apex k)."""
    _check_kn(k, n)
    return [Simplex(ix, UPPER, block) for block, ix in subdivision(k, n)]


def lower_facets(k: int, n: int) -> list[Simplex]:
    """Closed-form lower facet simplexes (apex k-1)."""
    _check_kn(k, n)
    return [Simplex(ix, LOWER, block) for block, ix in subdivision(k - 1, n)]


def _check_kn(k: int, n: int) -> None:
    if n < 3:
        raise ValueError("need n >= 3")
    if not 1 <= k <= n:
        raise ValueError("k must lie in {1..n}")


def affinely_independent(points: Sequence[Sequence[Fraction]]) -> bool:
    """Whether the given points (d+2 points in d+1 coordinates) are affinely
    independent, i.e. span a full-dimensional simplex."""
    dim = len(points[0])
    if len(points) != dim + 1:
        raise ValueError("need exactly dim+1 points for an affine determinant")
    return det_affine(points) != 0


def _classify_block(ix: Iterable[int], apex: int, n: int) -> int:
    """Match a facet vertex set against the four family patterns."""
    s = sorted(ix)
    if apex not in s:
        raise ValueError("facet does not contain the apex vertex")
    matches = []
    if 0 in s and apex != 0:
        pair = sorted(set(s) - {0, apex})
        if len(pair) == 2 and pair[1] == pair[0] + 1:
            if 1 <= pair[0] and pair[1] <= apex - 1:
                matches.append(1)
            if apex + 1 <= pair[0] <= n - 1:
                matches.append(2)
    if n in s and apex != n:
        pair = sorted(set(s) - {apex, n})
        if len(pair) == 2 and pair[1] == pair[0] + 1:
            if pair[0] >= 0 and pair[1] <= apex - 1:
                matches.append(3)
            if apex + 1 <= pair[0] <= n - 2:
                matches.append(4)
    if len(matches) != 1:
        raise ValueError("facet %r matches %d family patterns" % (s, len(matches)))
    return matches[0]


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _base_triangulation(base: tuple[int, ...], n: int) -> list[tuple[int, ...]]:
    """Triangulate a horizontal base (a lower-dimensional cyclic polytope
    over a contiguous index range) by brute force: find its triangle facets
    with a supporting-plane test in the 3-space of moment vertices, then
    cone from the lowest-index vertex over the facets avoiding it."""
    tris = []
    for tri in combinations(base, 3):
        others = [x for x in base if x not in tri]
        pts = [moment_vertex(i, n) for i in tri]
        signs = {_sign(det_affine(pts + [moment_vertex(x, n)])) for x in others}
        if 0 in signs or len(signs) != 1:
            continue
        tris.append(tri)
    a0 = base[0]
    return [(a0,) + tri for tri in tris if a0 not in tri]


def brute_force_facets(k: int, n: int) -> list[Simplex]:
    """Independent facet enumeration of the prismatoid.

    Every 4-subset of vertices spanning both bases is tested with the 5x5
    affine determinant against all remaining vertices: a constant nonzero
    sign means a supporting hyperplane, hence a facet. It is an upper facet
    exactly when stepping off the hyperplane in the positive direction of
    the lifted coordinate leaves the polytope, which reduces to comparing
    that common sign with the sign of the projected 4-point determinant.
    The horizontal bases (no spanning quadruple) are triangulated separately.
    """
    _check_kn(k, n)
    if n < 4:
        raise ValueError("brute force needs n >= 4 (the prismatoid must be 4-dimensional)")
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError("brute force capped at n <= %d" % BRUTE_FORCE_MAX_N)
    lifted = [prismatoid_vertex(i, k, n) for i in range(n + 1)]
    out: list[Simplex] = []
    for quad in combinations(range(n + 1), 4):
        if quad[-1] < k or quad[0] >= k:
            continue  # inside one base
        pts = [lifted[i] for i in quad]
        others = [x for x in range(n + 1) if x not in quad]
        signs = {_sign(det_affine(pts + [lifted[x]])) for x in others}
        if 0 in signs or len(signs) != 1:
            continue
        side_of_hull = signs.pop()
        lift_coeff = det_affine([moment_vertex(i, n) for i in quad])
        side = UPPER if _sign(lift_coeff) == -side_of_hull else LOWER
        apex = k if side == UPPER else k - 1
        out.append(Simplex(quad, side, _classify_block(quad, apex, n)))
    lower_base = tuple(range(0, k))
    if len(lower_base) >= 4:
        for ix in _base_triangulation(lower_base, n):
            out.append(Simplex(ix, LOWER, _classify_block(ix, k - 1, n)))
    upper_base = tuple(range(k, n + 1))
    if len(upper_base) >= 4:
        for ix in _base_triangulation(upper_base, n):
            out.append(Simplex(ix, UPPER, _classify_block(ix, k, n)))
    return out
