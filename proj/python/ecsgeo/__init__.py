"""Euclidean constructions with arbitrary points.

Geometric kernel, construction programs with chooser strategies, the
Strommer deformation maps, finite closure generators, adversarial
demonstrations, and the sphere-model projective variant.
"""

from ecsgeo._core import (  # noqa: F401
    EcsError,
    EcsParseError,
    adversary_center_demo,
    builtin_names,
    distance,
    e_closure,
    f0_bar,
    f_pr,
    format_script,
    h_closure,
    intersect_circles,
    intersect_line_circle,
    intersect_lines,
    line_through,
    proj_check,
    run_builtin,
    run_script,
    scale_avoiding_unit,
    strommer_apply,
    strommer_circle,
    strommer_rotated_apply,
    y0_point,
    y_set_point,
    __version__,
)
