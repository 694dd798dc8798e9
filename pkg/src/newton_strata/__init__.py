"""Exact zeta functions, Newton polygons and p-rank strata of curves
over small finite fields.

Modules:

* ``gf``      -- arithmetic in F_{p^k} (polynomial basis, canonical moduli)
* ``curves``  -- hyperelliptic / Artin-Schreier models, point counts, p-rank
* ``zeta``    -- L-polynomials from counts via Newton's identities
* ``polygon`` -- Newton polygons as slope multisets; dominance, join, nu/sigma
* ``poset``   -- the dominance poset, codimensions, stratum reports
* ``search``  -- exhaustive deterministic curve surveys
* ``cli``     -- the ``newton-strata`` command
"""

from .curves import (
    CurveKind,
    CurveModel,
    NamedCurve,
    PointCounts,
    catalog,
    count_points,
    count_points_with_field,
    count_profile,
    curve_to_text,
    hasse_witt_p_rank,
    make_curve,
    parse_curve,
    vdgvdv,
)
from .gf import (
    DEFAULT_FIELD_CAP,
    FieldElement,
    FieldSpec,
    enumerate_elements,
    make_field,
    make_field_with_modulus,
    trace_to_prime,
)
from .polygon import (
    Comparison,
    NewtonPolygon,
    Slope,
    break_points_tsv,
    dominates,
    is_decomposable,
    join,
    np_from_l,
    nu,
    parse_polygon,
    polygon_to_text,
    sigma,
)
from .poset import (
    PolygonPoset,
    StratumReport,
    build_poset,
    codim,
    enumerate_symmetric,
    stratum_report,
    to_dot,
)
from .search import (
    All,
    ArtinSchreierFamily,
    HyperellipticMonic,
    MatchRecord,
    PolygonEquals,
    PRankEquals,
    SearchSpec,
    Supersingular,
    SurveyResult,
    analyze_curve,
    run_survey,
    verify_named,
)
from .zeta import (
    LPolynomial,
    l_from_counts,
    l_of_curve,
    l_product,
    power_sums,
    predicted_counts,
    zeta_series,
)

__version__ = "0.1.0"
