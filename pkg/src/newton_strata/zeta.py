"""L-polynomials from point counts via Newton's identities, and back.

The zeta function of a curve of genus g over F_q is
L(T) / ((1-T)(1-qT)) with L of degree 2g, L(0) = 1.  Writing
L(T) = prod_j (1 - alpha_j T), the power sums p_k = sum_j alpha_j^k satisfy
p_k = q^k + 1 - N_k, so N_1..N_g determine the first g coefficients through
Newton's identities; the top half is then forced by the functional equation
a_{2g-i} = q^(g-i) * a_i.

Everything is exact integer arithmetic.  Each Newton-identity division by i
is asserted exact — a failed division proves the input counts are corrupt.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .curves import PointCounts
from .errors import NonIntegralCoefficient, SurplusMismatch


def _power_sums_from_coeffs(coeffs: Sequence[int], upto: int) -> list[int]:
    """p_1..p_upto of the reciprocal roots of sum a_i T^i with a_0 = 1.

    Uses p_k = (-1)^(k-1) k e_k + sum_{i<k} (-1)^(k-1-i) e_{k-i} p_i with the
    elementary symmetric functions e_i = (-1)^i a_i (zero beyond the degree).
    """
    n = len(coeffs) - 1
    e = [(-1) ** i * c for i, c in enumerate(coeffs)]
    p: list[int] = []
    for k in range(1, upto + 1):
        total = (-1) ** (k - 1) * k * e[k] if k <= n else 0
        for i in range(1, k):
            if k - i <= n:
                total += (-1) ** (k - 1 - i) * e[k - i] * p[i - 1]
        p.append(total)
    return p


@dataclass(frozen=True)
class LPolynomial:
    """Degree-2g integer polynomial satisfying the Weil functional equation.

    Validation on construction: a_0 = 1, a_{2g-i} = q^(g-i) a_i for i <= g,
    and the archimedean root-size proxy |p_k| <= 2g sqrt(q^k) for k <= 2g,
    checked exactly by squaring.  Nonnegativity of the implied point counts
    is *not* required here: products of L-polynomials are legitimate Weil
    polynomials of abelian varieties that need not be curves.  The curve-level
    check lives in :func:`l_from_counts`.
    """

    q: int
    g: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.g < 0 or self.q < 2:
            raise ValueError("need g >= 0 and q >= 2")
        if len(self.coeffs) != 2 * self.g + 1:
            raise ValueError(f"expected {2 * self.g + 1} coefficients")
        if any(not isinstance(c, int) for c in self.coeffs):
            raise ValueError("coefficients must be integers")
        if self.coeffs[0] != 1:
            raise ValueError("constant coefficient must be 1")
        for i in range(self.g + 1):
            if self.coeffs[2 * self.g - i] != self.q ** (self.g - i) * self.coeffs[i]:
                raise ValueError(
                    f"functional equation fails at i={i}: "
                    f"a_{2 * self.g - i} != q^{self.g - i} * a_{i}"
                )
        for k, pk in enumerate(_power_sums_from_coeffs(self.coeffs, 2 * self.g), start=1):
            if pk * pk > 4 * self.g * self.g * self.q ** k:
                raise ValueError(f"|p_{k}| exceeds 2g sqrt(q^{k}): roots off the Weil circle")

    def __repr__(self) -> str:
        return f"LPolynomial(q={self.q}, g={self.g}, coeffs={list(self.coeffs)})"


def power_sums(counts: PointCounts) -> tuple[int, ...]:
    """p_k = q^k + 1 - N_k for each supplied count."""
    return tuple(counts.q ** k + 1 - n for k, n in enumerate(counts.counts, start=1))


def power_sums_from_l(lpoly: LPolynomial, m: int) -> tuple[int, ...]:
    """p_1..p_m implied by the L-polynomial coefficients."""
    return tuple(_power_sums_from_coeffs(lpoly.coeffs, m))


def l_from_counts(counts: PointCounts, g: int) -> LPolynomial:
    """Reconstruct L from N_1..N_m, m >= g; surplus counts are cross-checked.

    The lower half comes from Newton's identities
    i * e_i = sum_{j=1..i} (-1)^(j-1) e_{i-j} p_j  with a_i = (-1)^i e_i,
    the upper half from the functional equation.
    """
    if g < 1:
        raise ValueError("genus must be >= 1")
    m = len(counts.counts)
    if m < g:
        raise ValueError(f"need at least g = {g} counts, got {m}")
    q = counts.q
    p = power_sums(counts)

    e = [1]
    for i in range(1, g + 1):
        total = 0
        for j in range(1, i + 1):
            total += (-1) ** (j - 1) * e[i - j] * p[j - 1]
        if total % i:
            raise NonIntegralCoefficient(f"Newton identity division by {i} is not exact")
        e.append(total // i)

    coeffs = [0] * (2 * g + 1)
    for i in range(g + 1):
        coeffs[i] = (-1) ** i * e[i]
    for i in range(g):
        coeffs[2 * g - i] = q ** (g - i) * coeffs[i]
    lpoly = LPolynomial(q=q, g=g, coeffs=tuple(coeffs))

    predicted = power_sums_from_l(lpoly, max(m, 2 * g))
    for k in range(1, 2 * g + 1):
        if q ** k + 1 - predicted[k - 1] < 0:
            raise ValueError(f"reconstructed L implies negative N_{k}; counts corrupt")
    for k in range(g + 1, m + 1):
        if predicted[k - 1] != p[k - 1]:
            raise SurplusMismatch(
                f"N_{k} = {counts.counts[k - 1]} inconsistent with reconstruction "
                f"(expected {q ** k + 1 - predicted[k - 1]})"
            )
    return lpoly


def predicted_counts(lpoly: LPolynomial, k: int) -> int:
    """The point count over F_{q^k} implied by L."""
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    return lpoly.q ** k + 1 - power_sums_from_l(lpoly, k)[-1]


def zeta_series(lpoly: LPolynomial, n: int) -> tuple[int, ...]:
    """Taylor coefficients c_0..c_n of L(T) / ((1-T)(1-qT)), exact integers.

    1/((1-T)(1-qT)) has coefficients s_j = 1 + q + ... + q^j.
    """
    if n < 0:
        raise ValueError("truncation order must be >= 0")
    q = lpoly.q
    s = [1]
    for _ in range(n):
        s.append(s[-1] * q + 1)
    out = []
    for i in range(n + 1):
        out.append(sum(lpoly.coeffs[j] * s[i - j] for j in range(min(i, 2 * lpoly.g) + 1)))
    return tuple(out)


def l_product(a: LPolynomial, b: LPolynomial) -> LPolynomial:
    """Product of two Weil polynomials over the same q (genus adds)."""
    if a.q != b.q:
        raise ValueError("L-polynomials over different base fields")
    coeffs = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                coeffs[i + j] += x * y
    return LPolynomial(q=a.q, g=a.g + b.g, coeffs=tuple(coeffs))


# -- wire format: coefficients as decimal strings (exact beyond 2^53) --------

def l_to_json_dict(lpoly: LPolynomial) -> dict:
    return {"q": lpoly.q, "g": lpoly.g, "coeffs": [str(c) for c in lpoly.coeffs]}


def l_from_json_dict(data: dict) -> LPolynomial:
    return LPolynomial(
        q=int(data["q"]), g=int(data["g"]), coeffs=tuple(int(c) for c in data["coeffs"])
    )


def l_of_curve(model, field_cap: Optional[int] = None, surplus: int = 0) -> LPolynomial:
    """Convenience pipeline: count N_1..N_{g+surplus}, then reconstruct L."""
    from .curves import count_profile
    from .gf import DEFAULT_FIELD_CAP

    cap = DEFAULT_FIELD_CAP if field_cap is None else field_cap
    profile = count_profile(model, model.genus + surplus, cap)
    return l_from_counts(profile, model.genus)
