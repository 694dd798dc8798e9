"""The poset of admissible symmetric Newton polygons of fixed height.

Enumeration, dominance order with covering relations (transitive reduction),
codimension as longest-chain length from the ordinary polygon, gradedness
checking, and stratification reports.

Canonical node order: polygons sorted by their integer-abscissa height
vectors, lexicographically ascending.  That is a linear extension of the
dominance order with the ordinary polygon first and the supersingular one
last, so codimension values read off in "top to bottom" order.

Enumeration is capped (default genus 8): the node count grows quickly and
nothing here needs more.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Union

from .errors import GenusTooLarge, NodeNotFound
from .polygon import NewtonPolygon, Slope, is_decomposable, polygon_to_text

DEFAULT_GENUS_CAP = 8
DECOMPOSABILITY_HEIGHT_CAP = 24


def _half_slopes(limit: int) -> list[Fraction]:
    """All reduced slopes in [0, 1/2) with denominator at most ``limit``."""
    out = [Fraction(0)]
    for b in range(2, limit + 1):
        for a in range(1, (b + 1) // 2):
            if gcd(a, b) == 1:
                out.append(Fraction(a, b))
    out.sort()
    return out


def enumerate_symmetric(g: int, cap: int = DEFAULT_GENUS_CAP) -> tuple[NewtonPolygon, ...]:
    """Every admissible symmetric polygon of height 2g, once, in canonical order.

    Symmetry pairs slopes {lambda, 1 - lambda}; integrality makes each pair
    with lambda = a/b < 1/2 consume b units per copy from the half-height g,
    and the self-dual slope 1/2 an even multiplicity.  So the polygons
    correspond to s + sum b_i * m_i = g with distinct slopes lambda_i < 1/2.
    """
    if g < 1:
        raise ValueError("genus must be >= 1")
    if g > cap:
        raise GenusTooLarge(f"genus {g} beyond enumeration cap {cap}")

    found: list[NewtonPolygon] = []
    for s in range(g + 1):
        remaining = g - s
        pool = _half_slopes(remaining) if remaining else []
        base = [(Fraction(1, 2), 2 * s)] if s else []

        def descend(idx: int, left: int, chosen: list[tuple[Fraction, int]]):
            if left == 0:
                found.append(NewtonPolygon.from_pairs(base + chosen))
                return
            if idx == len(pool):
                return
            lam = pool[idx]
            b = lam.denominator
            descend(idx + 1, left, chosen)
            take = b
            while take <= left:
                descend(
                    idx + 1,
                    left - take,
                    chosen + [(lam, take), (1 - lam, take)],
                )
                take += b

        descend(0, remaining, [])

    found.sort(key=lambda np: np.y_values)
    return tuple(found)


@dataclass(frozen=True)
class PolygonPoset:
    """Dominance poset on the height-2g admissible symmetric polygons.

    ``covers`` holds Hasse-diagram edges (i, j) meaning node_i < node_j is a
    covering relation (arrows point from special to generic).  ``codim`` is
    the longest-chain distance from the ordinary polygon; ``graded`` records
    whether every pair of comparable nodes has all its maximal chains of
    equal length (verified, not assumed).
    """

    g: int
    nodes: tuple[NewtonPolygon, ...]
    covers: tuple[tuple[int, int], ...]
    codim: tuple[int, ...]
    graded: bool

    def index_of(self, polygon: NewtonPolygon) -> int:
        try:
            return self.nodes.index(polygon)
        except ValueError:
            raise NodeNotFound(f"{polygon_to_text(polygon)} is not a node") from None

    @property
    def top_index(self) -> int:
        return 0

    @property
    def bottom_index(self) -> int:
        return len(self.nodes) - 1


@lru_cache(maxsize=None)
def build_poset(g: int, cap: int = DEFAULT_GENUS_CAP) -> PolygonPoset:
    """Nodes, covering relation, codimensions and the gradedness verdict."""
    nodes = enumerate_symmetric(g, cap)
    n = len(nodes)
    yv = [node.y_values for node in nodes]

    # strict dominance: under[i] = {j : node_i < node_j}; canonical order
    # guarantees j < i whenever node_i < node_j.
    under = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i):
            if all(a >= b for a, b in zip(yv[i], yv[j])):
                under[i].add(j)

    covers = []
    for i in range(n):
        for j in under[i]:
            if not any(j in under[k] for k in under[i]):
                covers.append((i, j))
    covers.sort()

    out_edges = [[] for _ in range(n)]
    for i, j in covers:
        out_edges[i].append(j)

    codim = [0] * n
    tops = 0
    for i in range(n):
        if out_edges[i]:
            codim[i] = max(codim[j] + 1 for j in out_edges[i])
        else:
            tops += 1
    assert tops == 1, "dominance must have a unique maximal element"

    graded = True
    for u in range(n):
        if not under[u]:
            continue
        shortest: dict[int, int] = {u: 0}
        longest: dict[int, int] = {u: 0}
        for w in range(u, -1, -1):
            if w not in shortest:
                continue
            for j in out_edges[w]:
                d = shortest[w] + 1
                if j not in shortest or d < shortest[j]:
                    shortest[j] = d
                longest[j] = max(longest.get(j, 0), longest[w] + 1)
        if any(shortest[v] != longest[v] for v in under[u]):
            graded = False
            break

    return PolygonPoset(
        g=g, nodes=nodes, covers=tuple(covers), codim=tuple(codim), graded=graded
    )


def codim(poset: PolygonPoset, node: Union[NewtonPolygon, int]) -> int:
    """Longest-chain length from the ordinary polygon down to ``node``."""
    if isinstance(node, int):
        if not (0 <= node < len(poset.nodes)):
            raise NodeNotFound(f"index {node} out of range")
        return poset.codim[node]
    return poset.codim[poset.index_of(node)]


# ---------------------------------------------------------------------------
# Stratum reports
# ---------------------------------------------------------------------------

_BLACHE_ENTRIES = ((Slope(5, 11), 11), (Slope(6, 11), 11))


@dataclass(frozen=True)
class StratumReport:
    """Discrete invariants of one Newton stratum, plus bookkeeping flags.

    ``codim`` and the codimension flag are omitted (None) when the genus is
    beyond the poset cap; ``decomposable`` is omitted beyond height 24.
    ``oort_flag_codim`` marks codim >= 3g - 3, the codimension half of the
    heuristic for polygons not expected on compact-type curves.
    """

    g: int
    polygon: NewtonPolygon
    p_rank: int
    codim: Optional[int]
    dim_ag: int
    dim_ss: int
    oort_flag_codim: Optional[bool]
    denominators: tuple[int, ...]
    decomposable: Optional[bool]
    notes: tuple[str, ...]


def stratum_report(
    g: int,
    polygon: NewtonPolygon,
    poset: Optional[PolygonPoset] = None,
    genus_cap: int = DEFAULT_GENUS_CAP,
) -> StratumReport:
    """Populate the report for an admissible symmetric polygon of height 2g."""
    if polygon.height != 2 * g:
        raise ValueError(f"polygon height {polygon.height} != 2g = {2 * g}")

    cd: Optional[int] = None
    notes: list[str] = []
    if poset is None and g <= genus_cap:
        poset = build_poset(g, genus_cap)
    if poset is not None:
        cd = codim(poset, polygon)
        if not poset.graded:
            notes.append("poset is not graded; codim is the longest-chain length")
    else:
        notes.append(f"codim omitted: genus {g} beyond poset cap {genus_cap}")

    decomposable: Optional[bool] = None
    if polygon.height <= DECOMPOSABILITY_HEIGHT_CAP:
        decomposable = is_decomposable(polygon)

    if polygon.is_supersingular and g >= 2:
        notes.append(
            "decomposes as g supersingular elliptic blocks: "
            "the polygon of a tree of supersingular elliptic curves"
        )
    if polygon.entries == _BLACHE_ENTRIES:
        notes.append("realized by y^2+y = x^23+x^21+x^17+x^7+x^5, genus 11 over F_2")

    return StratumReport(
        g=g,
        polygon=polygon,
        p_rank=polygon.p_rank,
        codim=cd,
        dim_ag=g * (g + 1) // 2,
        dim_ss=g * g // 4,
        oort_flag_codim=None if cd is None else cd >= 3 * g - 3,
        denominators=polygon.denominators,
        decomposable=decomposable,
        notes=tuple(notes),
    )


def report_to_json_dict(report: StratumReport) -> dict:
    return {
        "g": report.g,
        "polygon": polygon_to_text(report.polygon),
        "p_rank": report.p_rank,
        "codim": report.codim,
        "dim_ag": report.dim_ag,
        "dim_ss": report.dim_ss,
        "oort_flag_codim": report.oort_flag_codim,
        "denominators": list(report.denominators),
        "decomposable": report.decomposable,
        "notes": list(report.notes),
    }


# ---------------------------------------------------------------------------
# Exports
# ---------------------------------------------------------------------------

def to_dot(poset: PolygonPoset) -> str:
    """Deterministic DOT digraph: arrows run from special toward generic."""
    lines = [f"digraph newton_poset_g{poset.g} {{", "  rankdir=LR;"]
    for i, node in enumerate(poset.nodes):
        label = f"{polygon_to_text(node)}\\ncodim {poset.codim[i]}"
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in poset.covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_to_json_dict(poset: PolygonPoset) -> dict:
    return {
        "g": poset.g,
        "nodes": [polygon_to_text(node) for node in poset.nodes],
        "covers": [list(edge) for edge in poset.covers],
        "codim": list(poset.codim),
        "graded": poset.graded,
    }


__all__ = [
    "DEFAULT_GENUS_CAP",
    "DECOMPOSABILITY_HEIGHT_CAP",
    "PolygonPoset",
    "StratumReport",
    "build_poset",
    "codim",
    "enumerate_symmetric",
    "poset_to_json_dict",
    "report_to_json_dict",
    "stratum_report",
    "to_dot",
]
