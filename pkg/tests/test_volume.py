import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from beltedfal.census import _tetrahedron
from beltedfal.core import nerve_of
from beltedfal.fixtures import load
from beltedfal.packing import pack
from beltedfal.volume import (
    INF,
    V8,
    VolumeError,
    coning_contributions,
    fal_volume,
    ideal_tetra_volume,
    lobachevsky,
    lower_bound,
    nerve_volume,
    polyhedron_volume,
    verify_decomposition_volume,
)


def lobachevsky_quad(theta):
    val, _ = quad(lambda t: -math.log(abs(2 * math.sin(t))), 0, theta, limit=200, points=[0.0])
    return val


def test_lobachevsky_anchors():
    assert lobachevsky(0.0) == 0.0
    assert abs(lobachevsky(math.pi / 6) - 0.5074708032) < 1e-9
    assert abs(lobachevsky(math.pi / 6) - lobachevsky_quad(math.pi / 6)) < 1e-12


@settings(max_examples=200)
@given(st.floats(-10, 10, allow_nan=False))
def test_lobachevsky_matches_clausen(theta):
    # Lambda(t) = Cl2(2t) / 2
    ref = float(mpmath.clsin(2, 2 * theta)) / 2
    assert abs(lobachevsky(theta) - ref) < 1e-12


@settings(max_examples=100)
@given(st.floats(-4, 4, allow_nan=False))
def test_lobachevsky_symmetries(theta):
    assert abs(lobachevsky(theta + math.pi) - lobachevsky(theta)) < 1e-12
    assert abs(lobachevsky(-theta) + lobachevsky(theta)) < 1e-15


def test_regular_ideal_tetrahedron():
    w = cmath.exp(1j * math.pi / 3)
    assert abs(ideal_tetra_volume(INF, 0, 1, w) - 3 * lobachevsky(math.pi / 3)) < 1e-12
    assert abs(3 * lobachevsky(math.pi / 3) - 1.0149416064) < 1e-9


def test_concyclic_is_flat_and_odd_permutation_negates():
    pts = [cmath.exp(1j * a) for a in (0.1, 1.3, 2.9, 4.4)]
    assert abs(ideal_tetra_volume(*pts)) < 1e-12
    q = [0j, 1 + 0j, 0.3 + 0.8j, -0.4 + 0.2j]
    v = ideal_tetra_volume(*q)
    assert v != 0
    assert abs(ideal_tetra_volume(q[1], q[0], q[2], q[3]) + v) < 1e-12


@settings(max_examples=100, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), min_size=4, max_size=4))
def test_tetra_volume_is_moebius_invariant(pts):
    if min(abs(a - b) for i, a in enumerate(pts) for b in pts[i + 1 :]) < 1e-2:
        return
    m = lambda z: (2 * z + 1j) / (0.5 * z + 1.5 - 0.25j)  # noqa: E731
    img = [m(z) for z in pts]
    if any(abs(0.5 * z + 1.5 - 0.25j) < 1e-2 for z in pts):
        return
    assert abs(ideal_tetra_volume(*pts) - ideal_tetra_volume(*img)) < 1e-8
    # moving a vertex to infinity gives the same value
    assert abs(ideal_tetra_volume(*pts) - ideal_tetra_volume(INF, *[1 / (z - pts[0]) for z in pts[1:]])) < 1e-8


def test_v8_value():
    assert abs(V8 - 3.663862377) < 1e-9
    assert abs(nerve_volume(_tetrahedron()) - V8) < 1e-9


def test_theta_nerve_is_half_octahedron():
    assert abs(nerve_volume(nerve_of(load("THETA"))) - V8 / 2) < 1e-9
    assert abs(V8 / 2 - 4 * lobachevsky(math.pi / 4)) < 1e-12


def test_apex_invariance_and_signs():
    p = pack(nerve_of(load("PRISM1")).skeleton())
    vols = [polyhedron_volume(p, apex) for apex in range(len(p.nerve.edges))]
    assert max(vols) - min(vols) < 1e-9
    assert all(c >= -1e-12 for c in coning_contributions(p, 0))


def test_outer_face_invariance():
    n = nerve_of(load("PRISM1")).skeleton()
    vols = [nerve_volume(n, f) for f in range(len(n.faces))]
    assert max(vols) - min(vols) < 1e-9


@pytest.mark.parametrize(
    "name,expected",
    [("BORR-tt", 2 * V8), ("BORR-tf", 2 * V8), ("BORR-ff", 2 * V8), ("THETA", V8), ("PRISM1", 4 * V8)],
)
def test_fal_volumes(name, expected):
    assert abs(fal_volume(load(name)) - expected) < 1e-6


def test_twist_invariance(census_by_c):
    for g in census_by_c[4]:
        base = fal_volume(g)
        for e in sorted(g.painted):
            assert fal_volume(g.with_twists({e})) == base


def test_refuses_poor_packing():
    p = pack(_tetrahedron())
    from dataclasses import replace

    with pytest.raises(VolumeError):
        polyhedron_volume(replace(p, residual=1.0))


def test_reports():
    r = verify_decomposition_volume(load("PRISM1"))
    assert r.additivity_defect < 1e-6 and abs(r.bound_slack) < 1e-6
    r3 = verify_decomposition_volume(load("PRISM3"))
    # PRISM3 shares its nerve with PRISM1, so it also sits on the bound
    assert r3.additivity_defect == 0.0 and r3.bound_slack >= -1e-9
    rw = verify_decomposition_volume(load("PRISM1"), refine=True)
    assert len(rw.summand_volumes) == 4 and rw.additivity_defect < 1e-6
    assert set(r.to_dict()) == {"volume", "c", "lower_bound", "summand_volumes", "additivity_defect", "bound_slack"}


def test_lower_bound_formula():
    assert lower_bound(3) == 4 * V8
    assert isinstance(lower_bound(2), float)
