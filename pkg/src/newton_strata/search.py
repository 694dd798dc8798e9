"""Exhaustive curve surveys with deterministic parallelism.

Candidates are monic defining polynomials, encoded as base-p integers of
their lower coefficients (constant term least significant), enumerated in
increasing order and cut into contiguous chunks.  A worker pool may scan
chunks in any schedule; results are merged strictly by chunk index, so the
survey output is byte-identical whatever the worker count.

Per-candidate pipeline: validate the model (non-squarefree hyperelliptic
candidates are skipped and counted) -> optional Hasse-Witt fast filter for
p-rank searches -> exact point counts -> L-polynomial -> Newton polygon ->
filter predicate.  Every p-rank match is double-checked against the slope-0
multiplicity of its reconstructed polygon; disagreement is a hard failure,
never a silent drop.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Union

import multiprocessing

from .curves import (
    CurveKind,
    CurveModel,
    NamedCurve,
    catalog,
    count_profile,
    curve_to_text,
    hasse_witt_p_rank,
    make_curve,
)
from .errors import (
    BudgetExceeded,
    DegreeTooSmall,
    EvenCharHyperelliptic,
    NotPrime,
    NotSquarefree,
    PoleOrderDivisibleByP,
    SelfCheckFailed,
    UnknownName,
)
from .gf import DEFAULT_FIELD_CAP, is_prime
from .polygon import (
    NewtonPolygon,
    np_from_l,
    polygon_to_json_dict,
    polygon_to_text,
)
from .zeta import LPolynomial, l_from_counts, l_to_json_dict

DEFAULT_BUDGET = 10 ** 8
DEFAULT_CHUNK = 512


# ---------------------------------------------------------------------------
# Families and filters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HyperellipticMonic:
    """Monic degree-d polynomials f over F_p, curves y^2 = f(x)."""

    p: int
    degree: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.p == 2:
            raise EvenCharHyperelliptic("hyperelliptic families need p odd")
        if self.degree < 3:
            raise DegreeTooSmall(f"degree {self.degree} < 3")

    @property
    def genus(self) -> int:
        return (self.degree + 1) // 2 - 1

    @property
    def cardinality(self) -> int:
        return self.p ** self.degree

    def model_for(self, n: int) -> CurveModel:
        """Candidate number n; raises NotSquarefree for singular models."""
        p = self.p
        coeffs = [(n // p ** i) % p for i in range(self.degree)] + [1]
        return make_curve(CurveKind.HYPERELLIPTIC, p, coeffs)

    def text(self) -> str:
        return f"hyp:{self.p}:{self.degree}"


@dataclass(frozen=True)
class ArtinSchreierFamily:
    """Monic degree-d polynomials h over F_p, curves y^p - y = h(x).

    ``support`` optionally restricts which lower exponents may be nonzero;
    None leaves all of 0..d-1 free.
    """

    p: int
    degree: int
    support: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.degree < 2:
            raise DegreeTooSmall(f"degree {self.degree} < 2")
        if self.degree % self.p == 0:
            raise PoleOrderDivisibleByP(f"p = {self.p} divides degree {self.degree}")
        if self.support is not None:
            if any(not (0 <= e < self.degree) for e in self.support):
                raise ValueError("support exponents must lie below the degree")
            if len(set(self.support)) != len(self.support):
                raise ValueError("support exponents must be distinct")
            object.__setattr__(self, "support", tuple(sorted(self.support)))

    @property
    def genus(self) -> int:
        return (self.p - 1) * (self.degree - 1) // 2

    @property
    def free_positions(self) -> tuple[int, ...]:
        if self.support is None:
            return tuple(range(self.degree))
        return self.support

    @property
    def cardinality(self) -> int:
        return self.p ** len(self.free_positions)

    def model_for(self, n: int) -> CurveModel:
        p = self.p
        coeffs = [0] * (self.degree + 1)
        coeffs[self.degree] = 1
        for i, pos in enumerate(self.free_positions):
            coeffs[pos] = (n // p ** i) % p
        return make_curve(CurveKind.ARTIN_SCHREIER, p, coeffs)

    def text(self) -> str:
        base = f"as:{self.p}:{self.degree}"
        if self.support is not None:
            base += ":" + ",".join(str(e) for e in self.support)
        return base


Family = Union[HyperellipticMonic, ArtinSchreierFamily]


@dataclass(frozen=True)
class PRankEquals:
    f: int

    def text(self) -> str:
        return f"prank={self.f}"


@dataclass(frozen=True)
class PolygonEquals:
    polygon: NewtonPolygon

    def text(self) -> str:
        return f"polygon={polygon_to_text(self.polygon)}"


@dataclass(frozen=True)
class Supersingular:
    def text(self) -> str:
        return "supersingular"


@dataclass(frozen=True)
class All:
    def text(self) -> str:
        return "all"


Filter = Union[PRankEquals, PolygonEquals, Supersingular, All]


@dataclass(frozen=True)
class SearchSpec:
    family: Family
    filter: Filter = All()
    limit: Optional[int] = None
    chunking: int = DEFAULT_CHUNK

    def __post_init__(self):
        if self.chunking < 1:
            raise ValueError("chunk size must be >= 1")
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be >= 1 when given")
        if isinstance(self.filter, PolygonEquals):
            if self.filter.polygon.height != 2 * self.family.genus:
                raise ValueError(
                    f"filter polygon height {self.filter.polygon.height} != "
                    f"2 * family genus {self.family.genus}"
                )
        if isinstance(self.filter, PRankEquals):
            if not (0 <= self.filter.f <= self.family.genus):
                raise ValueError(f"p-rank {self.filter.f} outside [0, {self.family.genus}]")


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatchRecord:
    """One surviving curve with its recomputed invariants."""

    model: CurveModel
    lpoly: LPolynomial
    polygon: NewtonPolygon
    p_rank: int


def analyze_curve(model: CurveModel, field_cap: int = DEFAULT_FIELD_CAP) -> MatchRecord:
    """Counts -> L-polynomial -> Newton polygon for one model."""
    counts = count_profile(model, model.genus, field_cap)
    lpoly = l_from_counts(counts, model.genus)
    np = np_from_l(lpoly)
    return MatchRecord(model=model, lpoly=lpoly, polygon=np, p_rank=np.p_rank)


def match_to_json_dict(rec: MatchRecord) -> dict:
    return {
        "curve": curve_to_text(rec.model),
        "L": l_to_json_dict(rec.lpoly),
        "polygon": polygon_to_json_dict(rec.polygon),
        "p_rank": rec.p_rank,
    }


def _scan_chunk(args: tuple) -> tuple:
    """Scan candidates [lo, hi); returns (scanned, skipped, matches, histogram)."""
    spec, lo, hi, field_cap = args
    family, flt = spec.family, spec.filter
    prank_mode = isinstance(flt, PRankEquals)
    hist: Optional[dict[str, int]] = None if prank_mode else {}
    matches: list[MatchRecord] = []
    scanned = 0
    skipped = 0
    for n in range(lo, hi):
        scanned += 1
        try:
            model = family.model_for(n)
        except NotSquarefree:
            skipped += 1
            continue
        if prank_mode and model.kind is CurveKind.HYPERELLIPTIC:
            hw = hasse_witt_p_rank(model)
            if hw != flt.f:
                continue
            rec = analyze_curve(model, field_cap)
            if rec.p_rank != hw:
                raise SelfCheckFailed(
                    f"{curve_to_text(model)}: Hasse-Witt rank {hw} != "
                    f"slope-zero multiplicity {rec.p_rank}"
                )
            matches.append(rec)
            continue
        rec = analyze_curve(model, field_cap)
        if hist is not None:
            key = polygon_to_text(rec.polygon)
            hist[key] = hist.get(key, 0) + 1
        if isinstance(flt, All):
            ok = True
        elif isinstance(flt, Supersingular):
            ok = rec.polygon.is_supersingular
        elif isinstance(flt, PolygonEquals):
            ok = rec.polygon == flt.polygon
        else:  # PRankEquals on a non-hyperelliptic family
            ok = rec.p_rank == flt.f
        if ok:
            matches.append(rec)
    return scanned, skipped, matches, hist


@dataclass(frozen=True)
class SurveyResult:
    """Merged survey outcome; deterministic for a given spec.

    ``histogram`` maps polygon text to curve count and is present only when
    the full pipeline ran for every scanned curve (every filter except the
    Hasse-Witt-accelerated p-rank search).  Singular (non-squarefree)
    candidates are counted in ``skipped_singular`` and appear in no bucket.
    """

    family: str
    filter: str
    total_scanned: int
    skipped_singular: int
    matches: tuple[MatchRecord, ...]
    histogram: Optional[dict[str, int]]
    complete: bool


def run_survey(
    spec: SearchSpec,
    workers: int = 1,
    field_cap: int = DEFAULT_FIELD_CAP,
    budget: int = DEFAULT_BUDGET,
    checkpoint_path: Optional[str] = None,
    on_match: Optional[Callable[[MatchRecord], None]] = None,
) -> SurveyResult:
    """Run the survey; results are independent of ``workers``.

    With a checkpoint path, the file records the last merged chunk index and
    a rerun resumes after it (counting only the resumed portion).  A
    KeyboardInterrupt yields the merged prefix flagged ``complete=False``.
    """
    card = spec.family.cardinality
    if card > budget:
        raise BudgetExceeded(f"family cardinality {card} exceeds budget {budget}")
    nchunks = (card + spec.chunking - 1) // spec.chunking

    start_chunk = 0
    if checkpoint_path and os.path.exists(checkpoint_path):
        contents = open(checkpoint_path).read().strip()
        if contents:
            start_chunk = int(contents) + 1

    payloads = [
        (spec, idx * spec.chunking, min((idx + 1) * spec.chunking, card), field_cap)
        for idx in range(start_chunk, nchunks)
    ]

    total_scanned = 0
    skipped = 0
    matches: list[MatchRecord] = []
    hist: Optional[dict[str, int]] = None if isinstance(spec.filter, PRankEquals) else {}
    complete = True
    limit = spec.limit

    def merge(chunk_idx: int, result: tuple) -> bool:
        """Fold one chunk in order; returns False once the limit is reached."""
        nonlocal total_scanned, skipped
        scanned, chunk_skipped, chunk_matches, chunk_hist = result
        total_scanned += scanned
        skipped += chunk_skipped
        if hist is not None and chunk_hist:
            for key, count in chunk_hist.items():
                hist[key] = hist.get(key, 0) + count
        for rec in chunk_matches:
            if limit is not None and len(matches) >= limit:
                break
            matches.append(rec)
            if on_match is not None:
                on_match(rec)
        if checkpoint_path:
            with open(checkpoint_path, "w") as fh:
                fh.write(f"{chunk_idx}\n")
        return not (limit is not None and len(matches) >= limit)

    try:
        if workers <= 1:
            for offset, payload in enumerate(payloads):
                if not merge(start_chunk + offset, _scan_chunk(payload)):
                    break
        else:
            ctx = multiprocessing.get_context("fork")
            executor = ProcessPoolExecutor(max_workers=workers, mp_context=ctx)
            try:
                for offset, result in enumerate(executor.map(_scan_chunk, payloads)):
                    if not merge(start_chunk + offset, result):
                        break
            finally:
                executor.shutdown(wait=False, cancel_futures=True)
    except KeyboardInterrupt:
        complete = False

    return SurveyResult(
        family=spec.family.text(),
        filter=spec.filter.text(),
        total_scanned=total_scanned,
        skipped_singular=skipped,
        matches=tuple(matches),
        histogram=hist,
        complete=complete,
    )


# ---------------------------------------------------------------------------
# Named-curve verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerifyClaim:
    label: str
    expected: str
    computed: str
    ok: bool


@dataclass(frozen=True)
class VerifyReport:
    name: str
    curve: str
    claims: tuple[VerifyClaim, ...]
    lpoly: LPolynomial
    polygon: NewtonPolygon

    @property
    def ok(self) -> bool:
        return all(claim.ok for claim in self.claims)


def verify_named(name: str, field_cap: int = DEFAULT_FIELD_CAP) -> VerifyReport:
    """Recompute every recorded claim for a catalog curve and compare."""
    named: Optional[NamedCurve] = next((c for c in catalog() if c.name == name), None)
    if named is None:
        known = ", ".join(c.name for c in catalog())
        raise UnknownName(f"{name!r}; known: {known}")

    model = named.model
    rec = analyze_curve(model, field_cap)
    claims: list[VerifyClaim] = []

    def claim(label: str, expected, computed):
        claims.append(
            VerifyClaim(label, str(expected), str(computed), ok=expected == computed)
        )

    if named.expected_genus is not None:
        claim("genus", named.expected_genus, model.genus)
    if named.expected_l_coeffs is not None:
        claim("l_coeffs", list(named.expected_l_coeffs), list(rec.lpoly.coeffs))
    if named.expected_slopes is not None:
        computed = tuple((s.a, s.b, e) for s, e in rec.polygon.entries)
        claim("slopes", list(named.expected_slopes), list(computed))
    if named.expected_p_rank is not None:
        claim("p_rank", named.expected_p_rank, rec.p_rank)
        if model.kind is CurveKind.HYPERELLIPTIC:
            claim("hasse_witt_p_rank", named.expected_p_rank, hasse_witt_p_rank(model))
    if named.expected_supersingular is not None:
        claim("supersingular", named.expected_supersingular, rec.polygon.is_supersingular)

    return VerifyReport(
        name=name,
        curve=curve_to_text(model),
        claims=tuple(claims),
        lpoly=rec.lpoly,
        polygon=rec.polygon,
    )


def verify_report_to_json_dict(report: VerifyReport) -> dict:
    return {
        "name": report.name,
        "curve": report.curve,
        "ok": report.ok,
        "claims": [
            {
                "label": c.label,
                "expected": c.expected,
                "computed": c.computed,
                "ok": c.ok,
            }
            for c in report.claims
        ],
        "L": l_to_json_dict(report.lpoly),
        "polygon": polygon_to_json_dict(report.polygon),
    }


# ---------------------------------------------------------------------------
# Text forms for CLI round-trips
# ---------------------------------------------------------------------------

def parse_family(text: str) -> Family:
    """``hyp:p:d`` or ``as:p:d[:e1,e2,...]``."""
    parts = text.split(":")
    if len(parts) >= 3 and parts[0] == "hyp":
        if len(parts) != 3:
            raise ValueError(f"bad hyperelliptic family {text!r}")
        return HyperellipticMonic(int(parts[1]), int(parts[2]))
    if len(parts) >= 3 and parts[0] == "as":
        support = None
        if len(parts) == 4:
            support = tuple(int(tok) for tok in parts[3].split(","))
        elif len(parts) != 3:
            raise ValueError(f"bad Artin-Schreier family {text!r}")
        return ArtinSchreierFamily(int(parts[1]), int(parts[2]), support)
    raise ValueError(f"unknown family {text!r}")
