"""Shoe-pair packing planner and quasi-static simulator."""

from ._core import (  # noqa: F401
    PackpairError,
    ScenarioParseError,
    UnplannableError,
    catalog,
    classify_pair,
    convex_hull,
    min_area_rect,
    mse_loss,
    ned_loss,
    overall_loss,
    plan_scenario,
    predict_contact_outcome,
    required_topples,
    run_scenario,
    signed_angle,
    solve_side_toppling,
    solve_top_toppling,
)

__all__ = [
    "PackpairError",
    "ScenarioParseError",
    "UnplannableError",
    "catalog",
    "classify_pair",
    "convex_hull",
    "min_area_rect",
    "mse_loss",
    "ned_loss",
    "overall_loss",
    "plan_scenario",
    "predict_contact_outcome",
    "required_topples",
    "run_scenario",
    "signed_angle",
    "solve_side_toppling",
    "solve_top_toppling",
]
