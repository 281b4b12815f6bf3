import json
import math

import numpy as np
import pytest

import sisp

TUNNEL = json.dumps(
    {
        "name": "tunnel",
        "dimension": 2,
        "bounds": {"lo": [-50, -50], "hi": [50, 50]},
        "obstacles": [
            {"kind": "box", "lo": [-50, 2.5], "hi": [-20, 12.5]},
            {"kind": "box", "lo": [-50, -12.5], "hi": [-20, -2.5]},
        ],
        "start": [-47.5, 0],
        "goal": {"kind": "ball", "center": [15, 0], "tolerance": 2.5},
    }
)


def test_load_scene_and_queries():
    scene = sisp.load_scene(TUNNEL)
    assert scene.dimension == 2
    assert scene.is_state_valid([0.0, 0.0])
    assert not scene.is_state_valid([-30.0, 5.0])
    assert not scene.check_motion([-30.0, 0.0], [-30.0, 5.0])
    assert scene.goal_satisfied([15.0, 1.0])
    assert sisp.load_scene(scene.to_json()).to_json() == scene.to_json()


def test_bad_scene_raises():
    with pytest.raises(sisp.SceneError):
        sisp.load_scene('{"name": ')


def test_plan_is_deterministic():
    scene = sisp.generate_tunnel_scene(10.0)
    a = sisp.plan(scene, "mab-rrt", seed=3, timeout=10.0, trace=True)
    b = sisp.plan(scene, "mab-rrt", seed=3, timeout=10.0, trace=True)
    assert a["outcome"] == "solved"
    assert a["trace"] == b["trace"]
    assert a["path_length"] == pytest.approx(
        sum(np.linalg.norm(np.diff(np.asarray(a["path"]), axis=0), axis=1))
    )
    assert set(sisp.planner_names()) >= {"mab-rrt", "rrt-uniform"}
    with pytest.raises(sisp.ContractError):
        sisp.plan(scene, "nope")


def test_scale_search_converges_in_corridor():
    scene = sisp.generate_tunnel_scene(5.0)
    out = sisp.find_entropy_scale(scene, scene.start, seed=1)
    assert out["converged"]
    assert out["history"][-1][0] == out["r_star"]
    assert 0.1 <= out["history"][-1][1] <= 0.5


def test_principal_axis_and_cylinder():
    axis = sisp.principal_axis([[1, 0], [2, 0], [3, 0]], [0, 0])
    assert np.allclose(axis, [1, 0])
    pts = np.asarray(sisp.sample_cylinder([1, 0], [0, 0], True, 1.0, 2.0, 0.5, count=500, seed=4))
    assert pts.shape == (500, 2)
    assert np.all(pts[:, 0] >= 1.0 - 1e-12) and np.all(pts[:, 0] <= 2.0 + 1e-12)
    assert np.all(np.abs(pts[:, 1]) <= 0.5 + 1e-12)


def test_bandit():
    bandit = sisp.Bandit(window=4, beta=math.sqrt(2))
    assert sisp.arm_names() == ["uniform", "pc_positive", "pc_negative"]
    assert bandit.select() == "uniform"
    bandit.update("uniform", 0.0)
    assert bandit.select() == "pc_positive"
    bandit.set_enabled("pc_positive", False)
    assert bandit.select() == "pc_negative"
    assert sisp.compute_reward("pc_positive", True, 2.5) == pytest.approx(2.0)
    with pytest.raises(sisp.ContractError):
        bandit.update("uniform", -1.0)
