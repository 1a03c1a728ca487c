"""Sandpile groups, rotor-routing on ribbon graphs and planar duality."""

from .duality import (
    DualityCheck,
    check_duality_theorem,
    dart_angle,
    dual_dart_angle_check,
    phi_map,
    tree_angle,
)
from .oracle import corpus, enumerate_spanning_trees, planar_corpus
from .ribbon import (
    Dart,
    DualCorrespondence,
    FaceSet,
    RibbonGraph,
    build_ribbon_graph,
    dual_tree,
    faces,
    genus,
    planar_dual,
)
from .rotor import RotorConfiguration, RoutingState, fire_vertex, rotor_from_tree, rotor_route_action, tree_from_rotor
from .sandpile import (
    Divisor,
    GroupStructure,
    JacobianClass,
    boundary,
    divisors_equivalent,
    jacobian_structure,
    lending_move,
    q_reduce,
    tree_count_kirchhoff,
)

__version__ = "0.1.0"
