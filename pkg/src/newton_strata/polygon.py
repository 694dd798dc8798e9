"""Newton polygons as multisets of rational slopes in [0, 1].

The canonical representation is the slope multiset {(lambda, e(lambda))};
the lower-convex-hull picture is derived from it.  A polygon is *admissible
symmetric* when

* integrality: e(lambda) * lambda is an integer, i.e. b | e for lambda = a/b
  in lowest terms (so the hull breaks at lattice points);
* support: every slope lies in Q intersect [0, 1];
* symmetry: e(lambda) = e(1 - lambda).

These force total height 2g and total rise g, so the hull runs from (0, 0)
to (2g, g).  The dataclass constructor enforces all of it; anything that
violates admissibility raises NotAdmissible, which is also how a non-Weil
input polynomial announces itself.

All arithmetic is exact: slopes are integer pairs, interpolated heights are
fractions.Fraction values.  No floats anywhere.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, total_ordering
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import InvalidPRank, NotAdmissible
from .zeta import LPolynomial


@total_ordering
@dataclass(frozen=True)
class Slope:
    """A reduced fraction a/b in [0, 1]; c = b - a is the codimension part."""

    a: int
    b: int

    def __post_init__(self):
        if self.b < 1 or not (0 <= self.a <= self.b):
            raise NotAdmissible(f"slope {self.a}/{self.b} outside [0, 1]")
        if gcd(self.a, self.b) != 1:
            raise NotAdmissible(f"slope {self.a}/{self.b} not in lowest terms")

    @classmethod
    def of(cls, value: Union["Slope", Fraction, int, tuple]) -> "Slope":
        if isinstance(value, Slope):
            return value
        if isinstance(value, tuple):
            value = Fraction(*value)
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.b)

    @property
    def c(self) -> int:
        return self.b - self.a

    def dual(self) -> "Slope":
        return Slope(self.b - self.a, self.b)

    def __lt__(self, other: "Slope") -> bool:
        return self.a * other.b < other.a * self.b

    def __str__(self) -> str:
        return f"{self.a}/{self.b}"


SlopeLike = Union[Slope, Fraction, int, tuple]


@dataclass(frozen=True)
class NewtonPolygon:
    """An admissible symmetric Newton polygon; immutable and hashable.

    ``entries`` lists (slope, multiplicity) with slopes strictly increasing.
    The empty polygon (height 0) is allowed and is the join identity.
    """

    entries: tuple[tuple[Slope, int], ...]

    def __post_init__(self):
        seen = []
        for slope, e in self.entries:
            if not isinstance(slope, Slope):
                raise NotAdmissible("entries must carry Slope objects")
            if e < 1:
                raise NotAdmissible(f"multiplicity {e} < 1 at slope {slope}")
            if e % slope.b:
                raise NotAdmissible(f"integrality fails: {slope.b} does not divide e = {e}")
            seen.append(slope)
        if any(not (x < y) for x, y in zip(seen, seen[1:])):
            raise NotAdmissible("slopes must be strictly increasing")
        by_slope = dict(self.entries)
        for slope, e in self.entries:
            if by_slope.get(slope.dual()) != e:
                raise NotAdmissible(f"symmetry fails at slope {slope}")
        if self.height % 2:
            raise NotAdmissible("total multiplicity must be even")
        rise = sum(e * s.value for s, e in self.entries)
        if rise != Fraction(self.height, 2):
            raise NotAdmissible("endpoint sum e(lambda)*lambda != g")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[SlopeLike, int]]) -> "NewtonPolygon":
        merged: dict[Slope, int] = {}
        for slope_like, e in pairs:
            if e:
                slope = Slope.of(slope_like)
                merged[slope] = merged.get(slope, 0) + e
        return cls(tuple(sorted(merged.items(), key=lambda it: it[0])))

    # -- basic data --

    @property
    def height(self) -> int:
        return sum(e for _, e in self.entries)

    @property
    def genus(self) -> int:
        return self.height // 2

    def e_of(self, slope: SlopeLike) -> int:
        s = Slope.of(slope)
        for t, e in self.entries:
            if t == s:
                return e
        return 0

    def m_of(self, slope: SlopeLike) -> int:
        s = Slope.of(slope)
        return self.e_of(s) // s.b

    @property
    def p_rank(self) -> int:
        return self.e_of(Slope(0, 1))

    @property
    def is_supersingular(self) -> bool:
        return all(s == Slope(1, 2) for s, _ in self.entries)

    @property
    def is_ordinary(self) -> bool:
        return all(s in (Slope(0, 1), Slope(1, 1)) for s, _ in self.entries)

    @property
    def denominators(self) -> tuple[int, ...]:
        return tuple(sorted({s.b for s, _ in self.entries}))

    # -- geometry --

    def break_points(self) -> tuple[tuple[int, int], ...]:
        """Lattice vertices of the hull, from (0, 0) to (2g, g)."""
        points = [(0, 0)]
        x, y = 0, Fraction(0)
        for slope, e in self.entries:
            x += e
            y += e * slope.value
            assert y.denominator == 1, "integrality guarantees lattice break points"
            points.append((x, int(y)))
        return tuple(points)

    @cached_property
    def y_values(self) -> tuple[Fraction, ...]:
        """Hull height at every integer abscissa 0..2g (piecewise linear)."""
        out = [Fraction(0)]
        y = Fraction(0)
        for slope, e in self.entries:
            for _ in range(e):
                y += slope.value
                out.append(y)
        return tuple(out)

    def __str__(self) -> str:
        return polygon_to_text(self)


class Comparison(enum.Enum):
    LESS_OR_EQUAL = "less_or_equal"        # first argument lies on or above: mu <= nu
    GREATER_OR_EQUAL = "greater_or_equal"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def dominates(mu: NewtonPolygon, nu: NewtonPolygon) -> Comparison:
    """Compare in the dominance order: mu <= nu iff mu lies on or above nu.

    Only polygons of equal height share endpoints; checking the hull heights
    at the integer abscissae suffices because break points are integral.
    """
    if mu.height != nu.height:
        return Comparison.INCOMPARABLE
    ge = all(a >= b for a, b in zip(mu.y_values, nu.y_values))
    le = all(a <= b for a, b in zip(mu.y_values, nu.y_values))
    if ge and le:
        return Comparison.EQUAL
    if ge:
        return Comparison.LESS_OR_EQUAL
    if le:
        return Comparison.GREATER_OR_EQUAL
    return Comparison.INCOMPARABLE


def join(x: NewtonPolygon, y: NewtonPolygon) -> NewtonPolygon:
    """Multiset union of slope entries; heights add."""
    return NewtonPolygon.from_pairs(list(x.entries) + list(y.entries))


def nu(g: int, f: int) -> NewtonPolygon:
    """The most generic admissible symmetric polygon of height 2g and p-rank f.

    nu(g, g) is ordinary, nu(g, 0) is {1/2^(2g)} for g <= 2 and has slopes
    1/g, (g-1)/g (multiplicity g each) for g >= 3; in between, the p-rank
    splits off: nu(g, f) = nu(f, f) + nu(g-f, 0).
    """
    if g < 1 or not (0 <= f <= g):
        raise InvalidPRank(f"no polygon of genus {g} and p-rank {f}")
    if f == g:
        return NewtonPolygon.from_pairs([(Fraction(0), g), (Fraction(1), g)])
    if f == 0:
        if g <= 2:
            return NewtonPolygon.from_pairs([(Fraction(1, 2), 2 * g)])
        return NewtonPolygon.from_pairs([(Fraction(1, g), g), (Fraction(g - 1, g), g)])
    return join(nu(f, f), nu(g - f, 0))


def sigma(g: int) -> NewtonPolygon:
    """The supersingular polygon of height 2g: every slope equals 1/2."""
    if g < 1:
        raise InvalidPRank(f"no supersingular polygon of genus {g}")
    return NewtonPolygon.from_pairs([(Fraction(1, 2), 2 * g)])


# ---------------------------------------------------------------------------
# Construction from an L-polynomial
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _prime_power(q: int) -> tuple[int, int]:
    """(p, n) with q = p^n, or raise for non-prime-powers."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = q
    d = 2
    while d * d <= q:
        if q % d == 0:
            p = d
            break
        d += 1
    n = 0
    rest = q
    while rest % p == 0:
        rest //= p
        n += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, n


def _vp(x: int, p: int) -> int:
    v = 0
    x = abs(x)
    while x % p == 0:
        x //= p
        v += 1
    return v


def _lower_hull(points: Sequence[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Lower convex hull of points sorted by abscissa (monotone chain)."""
    hull: list[tuple[int, Fraction]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def np_from_l(lpoly: LPolynomial) -> NewtonPolygon:
    """Newton polygon of L: lower hull of (i, v(a_i)) with v(q) = 1.

    The p-adic valuation is normalized by v = v_p / n for q = p^n, so the
    result is independent of base-field extension.  Zero coefficients simply
    contribute no point (their valuation is +infinity).
    """
    p, n = _prime_power(lpoly.q)
    points = [
        (i, Fraction(_vp(c, p), n)) for i, c in enumerate(lpoly.coeffs) if c != 0
    ]
    hull = _lower_hull(points)
    pairs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        pairs.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    try:
        return NewtonPolygon.from_pairs(pairs)
    except NotAdmissible as exc:
        raise NotAdmissible(f"hull of {lpoly!r} is not admissible symmetric: {exc}") from exc


# ---------------------------------------------------------------------------
# Decomposability
# ---------------------------------------------------------------------------

def is_decomposable(np: NewtonPolygon) -> bool:
    """Whether np is a join of two nonempty admissible symmetric polygons.

    Any summand of a join is a sub-multiset, and a symmetric integral
    sub-multiset always leaves a symmetric integral complement, so exhaustive
    search over symmetric sub-multisets settles the question.
    """
    half = [(s, e) for s, e in np.entries if s < Slope(1, 2)]
    e_mid = np.e_of(Slope(1, 2))
    total = np.height

    def search(idx: int, chosen: int) -> bool:
        if idx == len(half):
            for mid in range(0, e_mid + 1, 2):
                if 0 < chosen + mid < total:
                    return True
            return False
        slope, e = half[idx]
        for take in range(0, e + 1, slope.b):
            if search(idx + 1, chosen + 2 * take):
                return True
        return False

    return search(0, 0)


# ---------------------------------------------------------------------------
# Text / JSON / TSV forms
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"^\s*(\d+)\*\((\d+)/(\d+)\)\s*$")


def polygon_to_text(np: NewtonPolygon) -> str:
    """Canonical text: ``4*(1/4)+4*(3/4)``; the empty polygon is ``empty``."""
    if not np.entries:
        return "empty"
    return "+".join(f"{e}*({s.a}/{s.b})" for s, e in np.entries)


def parse_polygon(text: str) -> NewtonPolygon:
    if text.strip() == "empty":
        return NewtonPolygon(())
    pairs = []
    for term in text.split("+"):
        m = _TERM_RE.match(term)
        if not m:
            raise NotAdmissible(f"cannot parse polygon term {term!r}")
        e, a, b = (int(v) for v in m.groups())
        pairs.append((Fraction(a, b), e))
    return NewtonPolygon.from_pairs(pairs)


def polygon_to_json_dict(np: NewtonPolygon) -> dict:
    return {
        "height": np.height,
        "entries": [{"a": s.a, "b": s.b, "e": e} for s, e in np.entries],
    }


def polygon_from_json_dict(data: dict) -> NewtonPolygon:
    return NewtonPolygon.from_pairs(
        [(Fraction(int(ent["a"]), int(ent["b"])), int(ent["e"])) for ent in data["entries"]]
    )


def break_points_tsv(np: NewtonPolygon) -> str:
    """Two tab-separated columns (x, y), one hull vertex per line."""
    return "\n".join(f"{x}\t{y}" for x, y in np.break_points()) + "\n"
