"""Sampling-based motion planning with entropy-scaled exploration."""

from ._core import (
    Bandit,
    ContractError,
    DegenerateError,
    Scene,
    SceneError,
    arm_names,
    compute_reward,
    find_entropy_scale,
    generate_tunnel_scene,
    load_scene,
    load_scene_file,
    plan,
    planner_names,
    principal_axis,
    sample_cylinder,
)

__all__ = [
    "Bandit",
    "ContractError",
    "DegenerateError",
    "Scene",
    "SceneError",
    "arm_names",
    "compute_reward",
    "find_entropy_scale",
    "generate_tunnel_scene",
    "load_scene",
    "load_scene_file",
    "plan",
    "planner_names",
    "principal_axis",
    "sample_cylinder",
]
