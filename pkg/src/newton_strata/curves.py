"""Curve models over prime fields: genus, exact point counts, p-rank filter.

Two families are supported, both defined over F_p by a single coefficient
list (constant term first):

* hyperelliptic  y^2 = f(x), p odd, f squarefree, deg f >= 3,
  genus ceil(deg f / 2) - 1;
* Artin-Schreier y^p - y = h(x), deg h >= 2 and gcd(deg h, p) = 1, so there is
  one totally ramified place at infinity and the genus is
  (p-1)(deg h - 1)/2.

Point counts are for the smooth projective model and are computed by direct
enumeration of the affine line: a quadratic-character test per x in the
hyperelliptic case, a trace-zero test per x in the Artin-Schreier case, plus
the points at infinity dictated by the degree and leading coefficient.

Genus convention note: some sources quote the family y^p - y = x*R(x) with R
additive of degree p^d as having genus (p-1)(p^d+1)/2.  The ramification
formula for a single pole of order m = p^d + 1 with gcd(m, p) = 1 gives
(p-1)*m' / 2 with m' = m - 1 = p^d, i.e. genus (p-1)p^d/2, and the genus-11
example of degree 23 over F_2 is only consistent with the latter.  This
module uses the ramification formula throughout.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from . import gf
from .errors import (
    CurveParseError,
    DegreeTooSmall,
    EvenCharHyperelliptic,
    FieldTooLarge,
    NotPrime,
    NotSquarefree,
    PoleOrderDivisibleByP,
    UnsupportedKind,
    WeilBoundViolated,
)
from .gf import DEFAULT_FIELD_CAP, make_field


class CurveKind(str, enum.Enum):
    HYPERELLIPTIC = "hyp"
    ARTIN_SCHREIER = "as"


@dataclass(frozen=True)
class CurveModel:
    """A validated curve over F_p.  Construct through :func:`make_curve`."""

    kind: CurveKind
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not gf.is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if not self.coeffs or self.coeffs[-1] % self.p == 0:
            raise ValueError("defining polynomial must have nonzero leading coefficient")
        if any(not (0 <= c < self.p) for c in self.coeffs):
            raise ValueError("coefficients must be residues in [0, p)")
        d = len(self.coeffs) - 1
        if self.kind is CurveKind.HYPERELLIPTIC:
            if self.p == 2:
                raise EvenCharHyperelliptic("y^2 = f(x) needs p odd")
            if d < 3:
                raise DegreeTooSmall(f"deg f = {d} < 3")
            if not gf.is_squarefree(self.coeffs, self.p):
                raise NotSquarefree(f"f = {list(self.coeffs)} has a repeated root over F_{self.p}")
        elif self.kind is CurveKind.ARTIN_SCHREIER:
            if d < 2:
                raise DegreeTooSmall(f"deg h = {d} < 2")
            if d % self.p == 0:
                raise PoleOrderDivisibleByP(f"p = {self.p} divides deg h = {d}")
        else:
            raise UnsupportedKind(str(self.kind))

    @cached_property
    def genus(self) -> int:
        d = len(self.coeffs) - 1
        if self.kind is CurveKind.HYPERELLIPTIC:
            return (d + 1) // 2 - 1
        return (self.p - 1) * (d - 1) // 2

    def __repr__(self) -> str:
        return f"CurveModel({curve_to_text(self)!r}, g={self.genus})"


def make_curve(kind: CurveKind | str, p: int, coeffs: Sequence[int]) -> CurveModel:
    """Validated model with coefficients reduced mod p and trimmed."""
    kind = CurveKind(kind)
    if not gf.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    reduced = gf.pol_trim([c % p for c in coeffs])
    return CurveModel(kind=kind, p=p, coeffs=tuple(reduced))


@dataclass(frozen=True)
class PointCounts:
    """Projective point counts N_1..N_m over F_{q^k}, exact nonnegative integers."""

    q: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if not self.counts:
            raise ValueError("empty count vector")
        if any(n < 0 for n in self.counts):
            raise ValueError("negative point count")


# ---------------------------------------------------------------------------
# Point counting
# ---------------------------------------------------------------------------

def _count_hyperelliptic_prime(model: CurveModel) -> int:
    p = model.p
    f = model.coeffs
    squares = {(i * i) % p for i in range(1, p)}
    n = 0
    for x in range(p):
        v = 0
        for c in reversed(f):
            v = (v * x + c) % p
        if v == 0:
            n += 1
        elif v in squares:
            n += 2
    if (len(f) - 1) % 2 == 1:
        n += 1
    elif f[-1] in squares:
        n += 2
    return n


def _count_artin_schreier_prime(model: CurveModel) -> int:
    # trace to F_p is the identity on F_p
    p = model.p
    n = 0
    for x in range(p):
        v = 0
        for c in reversed(model.coeffs):
            v = (v * x + c) % p
        if v == 0:
            n += p
    return n + 1


def count_points_with_field(model: CurveModel, F: gf.FieldSpec) -> int:
    """Count over an explicitly given F_{p^k}; the result is modulus-independent."""
    if F.p != model.p:
        raise ValueError(f"field characteristic {F.p} != curve characteristic {model.p}")
    if model.kind is CurveKind.HYPERELLIPTIC:
        f = model.coeffs
        squares = F.nonzero_square_packs
        n = 0
        for x in F.elements():
            v = F.eval_poly(f, x)
            if not any(v):
                n += 1
            elif F.pack(v) in squares:
                n += 2
        if (len(f) - 1) % 2 == 1:
            n += 1
        elif F.pack(F.embed(f[-1])) in squares:
            n += 2
        return n
    n = 0
    h = model.coeffs
    for x in F.elements():
        if F.trace(F.eval_poly(h, x)) == 0:
            n += model.p
    return n + 1


def count_points(model: CurveModel, k: int = 1, field_cap: int = DEFAULT_FIELD_CAP) -> int:
    """Exact number of points on the smooth projective model over F_{p^k}."""
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k == 1:
        # prime-field fast path: plain integer residues
        if model.p > field_cap:
            raise FieldTooLarge(f"p = {model.p} exceeds cap {field_cap}")
        if model.kind is CurveKind.HYPERELLIPTIC:
            return _count_hyperelliptic_prime(model)
        return _count_artin_schreier_prime(model)
    return count_points_with_field(model, make_field(model.p, k, field_cap))


def count_profile(
    model: CurveModel, m: Optional[int] = None, field_cap: int = DEFAULT_FIELD_CAP
) -> PointCounts:
    """N_1..N_m with model caps and the Hasse-Weil bound enforced per entry.

    A violation here is an implementation bug, never bad input, hence the
    dedicated error class.
    """
    if m is None:
        m = model.genus
    if m < 1:
        raise ValueError("need at least one count")
    g = model.genus
    p = model.p
    counts = []
    for k in range(1, m + 1):
        n = count_points(model, k, field_cap)
        qk = p ** k
        if model.kind is CurveKind.HYPERELLIPTIC:
            hard_cap = 2 * qk + 2
        else:
            hard_cap = p * qk + 1
        if not (0 <= n <= hard_cap):
            raise WeilBoundViolated(f"N_{k} = {n} outside model cap {hard_cap}")
        if (n - qk - 1) ** 2 > 4 * g * g * qk:
            raise WeilBoundViolated(f"N_{k} = {n} breaks |N - q^k - 1| <= 2g sqrt(q^k)")
        counts.append(n)
    return PointCounts(q=p, counts=tuple(counts))


# ---------------------------------------------------------------------------
# Hasse-Witt / Cartier-Manin p-rank
# ---------------------------------------------------------------------------

def _mat_mul_mod(a: list[list[int]], b: list[list[int]], p: int) -> list[list[int]]:
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(n):
            v = ai[t]
            if v:
                bt = b[t]
                for j in range(n):
                    oi[j] += v * bt[j]
        out[i] = [c % p for c in oi]
    return out


def _rank_mod(mat: list[list[int]], p: int) -> int:
    m = [row[:] for row in mat]
    n = len(m)
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, n) if m[r][col] % p), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [(c * inv) % p for c in m[rank]]
        for r in range(n):
            if r != rank and m[r][col]:
                c = m[r][col]
                m[r] = [(a - c * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def hasse_witt_matrix(model: CurveModel) -> list[list[int]]:
    """Cartier-Manin matrix M with M[i][j] = coeff of x^(ip-j) in f^((p-1)/2)."""
    if model.kind is not CurveKind.HYPERELLIPTIC:
        raise UnsupportedKind("Cartier-Manin matrix needs a hyperelliptic model")
    p, g = model.p, model.genus
    fe = gf.pol_pow(list(model.coeffs), (p - 1) // 2, p)

    def coeff(n: int) -> int:
        return fe[n] if 0 <= n < len(fe) else 0

    return [[coeff(i * p - j) for j in range(1, g + 1)] for i in range(1, g + 1)]


def hasse_witt_p_rank(model: CurveModel) -> int:
    """p-rank as the stable rank of M * M^(sigma) * ... * M^(sigma^(g-1)).

    sigma raises entries to the p-th power; the models here live over F_p, so
    the twists act trivially, but they are applied anyway to keep the formula
    honest.
    """
    p, g = model.p, model.genus
    m = hasse_witt_matrix(model)
    product = m
    twisted = m
    for _ in range(g - 1):
        twisted = [[pow(v, p, p) for v in row] for row in twisted]
        product = _mat_mul_mod(product, twisted, p)
    return _rank_mod(product, p)


# ---------------------------------------------------------------------------
# Serialization: `hyp p:3 f:[0,1,...]` / `as p:2 h:[...]`
# ---------------------------------------------------------------------------

_KIND_VAR = {CurveKind.HYPERELLIPTIC: "f", CurveKind.ARTIN_SCHREIER: "h"}


def curve_to_text(model: CurveModel) -> str:
    var = _KIND_VAR[model.kind]
    body = ",".join(str(c) for c in model.coeffs)
    return f"{model.kind.value} p:{model.p} {var}:[{body}]"


def parse_curve(text: str) -> CurveModel:
    """Parse the text form; raises CurveParseError with the failing position."""
    s = text.strip()
    offset = len(text) - len(text.lstrip())

    m = re.match(r"(hyp|as)\s+", s)
    if not m:
        raise CurveParseError("expected curve kind 'hyp' or 'as'", offset)
    kind = CurveKind(m.group(1))
    pos = m.end()

    m = re.match(r"p:(\d+)\s+", s[pos:])
    if not m:
        raise CurveParseError("expected 'p:<prime>'", offset + pos)
    p = int(m.group(1))
    pos += m.end()

    var = _KIND_VAR[kind]
    m = re.match(rf"{var}:\[([\d,\s-]*)\]\s*$", s[pos:])
    if not m:
        raise CurveParseError(f"expected '{var}:[c0,c1,...]'", offset + pos)
    body = m.group(1).strip()
    if not body:
        raise CurveParseError("empty coefficient list", offset + pos)
    try:
        coeffs = [int(tok) for tok in body.split(",")]
    except ValueError:
        raise CurveParseError("bad coefficient", offset + pos) from None
    return make_curve(kind, p, coeffs)


# ---------------------------------------------------------------------------
# Named-curve catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NamedCurve:
    """A model plus the claims recorded for it (verified by search.verify_named).

    Expected slope data is stored as (numerator, denominator, multiplicity)
    triples so this module stays independent of the polygon machinery.
    """

    name: str
    model: CurveModel
    expected_genus: Optional[int] = None
    expected_l_coeffs: Optional[tuple[int, ...]] = None
    expected_slopes: Optional[tuple[tuple[int, int, int], ...]] = None
    expected_p_rank: Optional[int] = None
    expected_supersingular: Optional[bool] = None
    comment: str = ""


def vdgvdv(p: int, r: Sequence[int], name: Optional[str] = None) -> NamedCurve:
    """The supersingular family y^p - y = x*R(x) with R additive.

    ``r`` lists the additive coefficients: R(x) = sum r_i * x^(p^i), so the
    model is y^p - y = sum r_i * x^(p^i + 1).
    """
    r = [c % p for c in r]
    if not r or r[-1] == 0:
        raise ValueError("additive coefficient list must have nonzero last entry")
    d = len(r) - 1
    h = [0] * (p ** d + 2)
    for i, c in enumerate(r):
        h[p ** i + 1] = c
    model = make_curve(CurveKind.ARTIN_SCHREIER, p, h)
    if name is None:
        name = f"vdgvdv-p{p}-r{''.join(str(c) for c in r)}"
    return NamedCurve(
        name=name,
        model=model,
        expected_genus=(p - 1) * p ** d // 2,
        expected_supersingular=True,
        expected_p_rank=0,
        comment=f"y^{p} - y = x*R(x) with additive R of degree {p}^{d}",
    )


def _blache_h() -> list[int]:
    h = [0] * 24
    for e in (23, 21, 17, 7, 5):
        h[e] = 1
    return h


def catalog() -> tuple[NamedCurve, ...]:
    """The named curves with recorded expected invariants."""
    ap_g4 = NamedCurve(
        name="ap-g4-p3",
        model=make_curve(CurveKind.HYPERELLIPTIC, 3, [0, 1, 1, 2, 1, 2, 1, 1, 0, 1]),
        expected_genus=4,
        expected_l_coeffs=(1, 0, 0, 0, 6, 0, 0, 0, 81),
        expected_slopes=((1, 4, 4), (3, 4, 4)),
        expected_p_rank=0,
        comment="genus-4 curve over F_3 with slopes 1/4 and 3/4",
    )
    blache = NamedCurve(
        name="blache-g11-p2",
        model=make_curve(CurveKind.ARTIN_SCHREIER, 2, _blache_h()),
        expected_genus=11,
        expected_slopes=((5, 11, 11), (6, 11, 11)),
        expected_p_rank=0,
        comment="genus-11 curve y^2+y = x^23+x^21+x^17+x^7+x^5 over F_2",
    )
    return (
        ap_g4,
        blache,
        vdgvdv(2, [0, 1], name="vdgvdv-p2-d1"),   # y^2+y = x^3
        vdgvdv(2, [0, 0, 1], name="vdgvdv-p2-d2"),  # y^2+y = x^5
        vdgvdv(3, [0, 1], name="vdgvdv-p3-d1"),   # y^3-y = x^4
    )
