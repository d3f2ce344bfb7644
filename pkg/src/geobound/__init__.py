"""Facet-pairing triangulations and cusp obstructions to bounding geometrically."""
from .triangulation import (
    BlockGluing, CycleTrace, FaceClassPartition, FacetGluing, InvalidTriangulation,
    Isomorphism, NotClosed, NotOrientable, OrientationAssignment, Triangulation,
    ValidationReport, assemble, check_valence, cone, euler_characteristic,
    extend_gluing, face_classes, isomorphism, orient, ridge_cycles, validate,
    vertex_links,
)
from .constructions import builtin, embedding_volume_bound, verify_paper_T
from .cusps import (
    CuspDescriptor, Modulus, ShapeClass, Verdict, VerdictTag, classify_shape,
    euler_parity_obstruction, pairing_obstruction_3d, pairing_obstruction_general,
    parse_modulus, reduce_modulus, trace_field_obstruction, twist_knot_verdict,
)
from .quadratic import QuadraticReal

__version__ = "0.1.0"
