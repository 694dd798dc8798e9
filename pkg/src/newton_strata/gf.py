"""Exact arithmetic in small finite fields F_{p^k}.

Elements are kept in the polynomial basis: a length-k tuple of residues mod p,
index i holding the coefficient of x^i.  All arithmetic is schoolbook and
exact; the fields used here are tiny (a few thousand elements at most, hard
cap 2^40), so transparency wins over cleverness.

Conventions, fixed once and documented here:

* Polynomial coefficient lists everywhere in this package are written from
  the constant term upward: ``[c0, c1, ..., cn]`` is c0 + c1*x + ... + cn*x^n.
* The canonical modulus of F_{p^k} is the least monic irreducible of degree k,
  where "least" compares the lower-coefficient vectors with the degree-(k-1)
  coefficient most significant and the constant term last; equivalently it is
  the first n = sum(a_i * p^i) in 0, 1, 2, ... whose polynomial
  x^k + a_{k-1} x^{k-1} + ... + a_0 is irreducible.  For k = 1 this degenerates
  to the modulus x, i.e. the plain prime field.
* Element enumeration order is by the same packing: element number n has
  coefficients given by the base-p digits of n, constant term least
  significant.

FieldSpec and FieldElement are immutable; they can be shared freely across
worker processes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .errors import FieldTooLarge, MixedFields, NotPrime

DEFAULT_FIELD_CAP = 1 << 40


def is_prime(n: int) -> bool:
    """Trial-division primality test; the characteristics here are tiny."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Dense polynomial arithmetic over F_p (coefficient lists, constant term first)
# ---------------------------------------------------------------------------

def pol_trim(f: Sequence[int]) -> list[int]:
    """Drop trailing zero coefficients; the zero polynomial becomes []."""
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def pol_deg(f: Sequence[int]) -> int:
    """Degree of a trimmed polynomial; -1 for the zero polynomial."""
    return len(f) - 1


def pol_mul(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return pol_trim([c % p for c in out])

def pol_pow(f: Sequence[int], e: int, p: int) -> list[int]:
    """f**e by square-and-multiply (no modular reduction)."""
    result = [1]
    base = pol_trim([c % p for c in f])
    while e:
        if e & 1:
            result = pol_mul(result, base, p)
        base = pol_mul(base, base, p)
        e >>= 1
    return result


def pol_divmod(f: Sequence[int], g: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    f = pol_trim([c % p for c in f])
    g = pol_trim([c % p for c in g])
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return [], f
    inv_lead = pow(g[-1], p - 2, p)
    rem = list(f)
    quo = [0] * (len(f) - len(g) + 1)
    for shift in range(len(f) - len(g), -1, -1):
        coef = (rem[shift + len(g) - 1] * inv_lead) % p
        if coef:
            quo[shift] = coef
            for j, b in enumerate(g):
                rem[shift + j] = (rem[shift + j] - coef * b) % p
    return pol_trim(quo), pol_trim(rem)


def pol_mod(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    return pol_divmod(f, g, p)[1]


def pol_gcd(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    """Monic gcd over F_p."""
    a, b = pol_trim([c % p for c in f]), pol_trim([c % p for c in g])
    while b:
        a, b = b, pol_mod(a, b, p)
    if a:
        inv_lead = pow(a[-1], p - 2, p)
        a = [(c * inv_lead) % p for c in a]
    return a


def pol_deriv(f: Sequence[int], p: int) -> list[int]:
    return pol_trim([(i * c) % p for i, c in enumerate(f)][1:])


def is_squarefree(f: Sequence[int], p: int) -> bool:
    """f squarefree over the algebraic closure, i.e. gcd(f, f') = 1."""
    return pol_deg(pol_gcd(f, pol_deriv(f, p), p)) == 0


def _pol_powmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = pol_mod(base, mod, p)
    while e:
        if e & 1:
            result = pol_mod(pol_mul(result, base, p), mod, p)
        base = pol_mod(pol_mul(base, base, p), mod, p)
        e >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin irreducibility test for a monic polynomial over F_p."""
    f = pol_trim([c % p for c in f])
    k = pol_deg(f)
    if k < 1 or f[-1] != 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # x^(p^k) == x mod f, and x^(p^(k/r)) - x coprime to f for prime r | k
    for r in _prime_factors(k):
        g = _pol_powmod(x, p ** (k // r), f, p)
        g = pol_trim([(a - b) % p for a, b in itertools.zip_longest(g, x, fillvalue=0)])
        if pol_deg(pol_gcd(g, f, p)) != 0:
            return False
    g = _pol_powmod(x, p ** k, f, p)
    return pol_trim([(a - b) % p for a, b in itertools.zip_longest(g, x, fillvalue=0)]) == []


def _canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree k under the documented packing order."""
    if k == 1:
        return (0, 1)
    for n in range(p ** k):
        lower = [(n // p ** i) % p for i in range(k)]
        cand = lower + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found; unreachable")


# ---------------------------------------------------------------------------
# Field objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """An explicit model of F_{p^k}: modulus plus derived arithmetic tables.

    Raw operations (``add``, ``mul``, ...) act on bare coefficient tuples and
    are what the point-counting loops use; ``FieldElement`` wraps the same
    tuples behind operators for everything else.
    """

    p: int
    k: int
    modulus: tuple[int, ...]
    q: int

    # -- derived tables (lazy, immutable once computed) --

    @cached_property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.k

    @cached_property
    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.k - 1)

    @cached_property
    def _reduction_rows(self) -> tuple[tuple[int, ...], ...]:
        # row t = coefficients of x^(k+t) reduced mod the modulus
        p, k = self.p, self.k
        rows = []
        cur = [(-self.modulus[j]) % p for j in range(k)]
        for _ in range(k, 2 * k - 1):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                base = rows[0]
                cur = [(cur[j] + top * base[j]) % p for j in range(k)]
        return tuple(rows)

    @cached_property
    def _trace_of_basis(self) -> tuple[int, ...]:
        # Tr(x^j) for j < k; traces of a basis give Tr as an F_p-linear form
        out = []
        for j in range(self.k):
            basis = tuple(1 if i == j else 0 for i in range(self.k))
            acc = basis
            frob = basis
            for _ in range(self.k - 1):
                frob = self.pow_(frob, self.p)
                acc = self.add(acc, frob)
            assert not any(acc[1:]), "trace landed outside the prime subfield"
            out.append(acc[0])
        return tuple(out)

    @cached_property
    def nonzero_square_packs(self) -> frozenset[int]:
        """Packed images of the nonzero squares; used by quadratic-character tests."""
        return frozenset(self.pack(self.mul(e, e)) for e in self.elements() if any(e))

    # -- raw arithmetic on coefficient tuples --

    def add(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, k = self.p, self.k
        if k == 1:
            return ((a[0] * b[0]) % p,)
        acc = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    acc[i + j] += ai * bj
        rows = self._reduction_rows
        for i in range(2 * k - 2, k - 1, -1):
            c = acc[i] % p
            if c:
                row = rows[i - k]
                for j in range(k):
                    acc[j] += c * row[j]
        return tuple(acc[j] % p for j in range(k))

    def pow_(self, a: tuple[int, ...], e: int) -> tuple[int, ...]:
        if e < 0:
            raise ValueError("negative exponents not supported; invert first")
        if self.k == 1:
            return (pow(a[0], e, self.p),)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: tuple[int, ...]) -> tuple[int, ...]:
        if not any(a):
            raise ZeroDivisionError("inverse of zero in F_%d^%d" % (self.p, self.k))
        return self.pow_(a, self.q - 2)

    def trace(self, a: tuple[int, ...]) -> int:
        """Trace down to F_p, returned as an integer residue."""
        t = self._trace_of_basis
        return sum(c * t[j] for j, c in enumerate(a)) % self.p

    def embed(self, c: int) -> tuple[int, ...]:
        """Image of the prime-field residue c."""
        return (c % self.p,) + (0,) * (self.k - 1)

    def pack(self, a: tuple[int, ...]) -> int:
        """Index of an element: base-p digits, constant term least significant."""
        n = 0
        for c in reversed(a):
            n = n * self.p + c
        return n

    def unpack(self, n: int) -> tuple[int, ...]:
        p = self.p
        return tuple((n // p ** i) % p for i in range(self.k))

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All q coefficient tuples, in increasing packed order."""
        for rev in itertools.product(range(self.p), repeat=self.k):
            yield rev[::-1]

    def eval_poly(self, coeffs: Sequence[int], x: tuple[int, ...]) -> tuple[int, ...]:
        """Evaluate a polynomial with prime-field coefficients at x.

        Powers of x are built through a shared square-and-multiply cache, so
        sparse polynomials cost about two multiplications per term.
        """
        p, k = self.p, self.k
        powers = {1: x}
        one = self.one

        def power(e: int) -> tuple[int, ...]:
            r = powers.get(e)
            if r is None:
                if e % 2 == 0:
                    t = power(e // 2)
                    r = self.mul(t, t)
                else:
                    r = self.mul(power(e - 1), x)
                powers[e] = r
            return r

        acc = [0] * k
        for i, c in enumerate(coeffs):
            c %= p
            if c:
                t = one if i == 0 else power(i)
                for j in range(k):
                    acc[j] += c * t[j]
        return tuple(v % p for v in acc)

    def element(self, coeffs: Sequence[int] | int) -> "FieldElement":
        """Wrap coefficients (or a packed index) as a FieldElement."""
        if isinstance(coeffs, int):
            raw = self.unpack(coeffs % self.q)
        else:
            raw = tuple(c % self.p for c in coeffs)
            if len(raw) != self.k:
                raise ValueError(f"expected {self.k} coefficients, got {len(raw)}")
        return FieldElement(self, raw)

    def __repr__(self) -> str:
        return f"FieldSpec(GF({self.p}^{self.k}), modulus={list(self.modulus)})"


@dataclass(frozen=True)
class FieldElement:
    """Immutable field element; arithmetic via operators, exact throughout."""

    owner: FieldSpec
    coeffs: tuple[int, ...]

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError("expected a FieldElement")
        if other.owner != self.owner:
            raise MixedFields(f"{self.owner!r} vs {other.owner!r}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.owner, self.owner.add(self.coeffs, other.coeffs))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.owner, self.owner.sub(self.coeffs, other.coeffs))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.owner, self.owner.mul(self.coeffs, other.coeffs))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.owner, self.owner.neg(self.coeffs))

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.owner, self.owner.pow_(self.coeffs, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.owner, self.owner.inv(self.coeffs))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.owner, self.owner.mul(self.coeffs, self.owner.inv(other.coeffs)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        return f"GF({self.owner.p}^{self.owner.k}){list(self.coeffs)}"


# ---------------------------------------------------------------------------
# Public constructors and module-level operations
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def make_field(p: int, k: int, cap: int = DEFAULT_FIELD_CAP) -> FieldSpec:
    """The canonical F_{p^k}.  Deterministic: same (p, k) gives the same modulus."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    q = p ** k
    if q > cap:
        raise FieldTooLarge(f"p^k = {q} exceeds cap {cap}")
    return FieldSpec(p=p, k=k, modulus=_canonical_modulus(p, k), q=q)


def make_field_with_modulus(
    p: int, k: int, modulus: Sequence[int], cap: int = DEFAULT_FIELD_CAP
) -> FieldSpec:
    """F_{p^k} with an explicit monic irreducible modulus (for cross-checks)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    q = p ** k
    if q > cap:
        raise FieldTooLarge(f"p^k = {q} exceeds cap {cap}")
    mod = tuple(c % p for c in modulus)
    if len(mod) != k + 1 or mod[-1] != 1:
        raise ValueError(f"modulus must be monic of degree {k}")
    if not is_irreducible(mod, p):
        raise ValueError(f"modulus {list(mod)} is reducible over F_{p}")
    return FieldSpec(p=p, k=k, modulus=mod, q=q)


def enumerate_elements(spec: FieldSpec) -> Iterator[FieldElement]:
    """All q elements exactly once, in the documented deterministic order."""
    for raw in spec.elements():
        yield FieldElement(spec, raw)


def trace_to_prime(a: FieldElement) -> int:
    """Tr(a) = sum of a^(p^i) for i < k, as a residue mod p."""
    return a.owner.trace(a.coeffs)
