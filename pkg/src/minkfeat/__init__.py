"""Feature curves of surfaces in Minkowski 3-space.

Surfaces are given as Monge-form polynomial patches; the library traces
the locus of degeneracy (LD), the discriminant of the curvature-line
equation (LPL), the parabolic curve (PC) and the mean-curvature null
curve (MCNC), classifies their singularities and mutual contacts, and
reports codimension-1 bifurcations along 1-parameter families.
"""
from .jets import (
    Jet2,
    NonzeroConstantTerm,
    DegenerateIFT,
    ift_series,
    invert_map,
    resultant_quartic_cubic,
)
from .minkowski import inner, cross, causal_type, norm, ZeroVector
from .patch import (
    MongePatch,
    FormBundle,
    FeatureField,
    FrameDegeneracy,
    fundamental_forms,
    feature_fields,
    bde_coefficients,
    bde_jets,
    monge_taylor,
    homothety,
    TIMELIKE_FORM,
    LIGHTCONE_FORM,
    FIELD_KINDS,
)
from .tracer import Rect, TracedCurve, IntersectionPoint, trace, intersect
from .classify import (
    PointClass,
    SingularityReport,
    LambdaVector,
    ScenarioReport,
    AmbiguousScenario,
    OutsideValidity,
    InsufficientDegree,
    WrongScenario,
    classify_point,
    lambda_invariants,
    classify_singularity,
    detect_scenario,
    flat_umbilic_geometry,
    lightlike_umbilic_geometry,
    null_chart_tangency,
    null_chart_a3,
)
from .contact import ContactResult, SingularBaseCurve, contact_order
from .family import (
    FamilySpec,
    BifurcationEvent,
    SweepResult,
    EventBracketError,
    FitResidualTooLarge,
    sweep,
    umbilic_points,
    umbilic_tracker,
    SwallowtailPoint,
    swallowtail_stratum,
    swallowtail_phi,
    a3_deformation_path,
    IntersectionMonitor,
    UmbilicCountMonitor,
    ComponentMonitor,
    IsolatedZeroMonitor,
    UmbilicOnCurveMonitor,
)
from .scene import Scene, SceneError, load_scene, parse_scene, scene_to_dict

__version__ = "0.1.0"
