import math
import random

import pytest

from surfclass.errors import (
    EmptySetError,
    NotContractingError,
    PointOnCurveError,
    UnknownPresetError,
)
from surfclass.planegeom import (
    SQRT3,
    AffineMap2,
    ClosedCurve,
    IFS,
    Point,
    Scene,
    certify_convergence,
    contraction_ratio,
    hausdorff_brute,
    hausdorff_distance,
    ifs_iterate,
    preset,
    preset_seed,
    snowflake,
    winding_number,
)


def test_contraction_ratio_examples():
    assert contraction_ratio(AffineMap2(0.5, 0, 0, 0.5, -0.25, 0)) == pytest.approx(0.5)
    assert contraction_ratio(AffineMap2(1, 0, 0, 1, 0, 0)) == pytest.approx(1.0)
    assert contraction_ratio(AffineMap2(0.5, -0.5, 0.5, 0.5, 0, 0)) == pytest.approx(
        math.sqrt(0.5), abs=1e-12
    )


def test_ifs_requires_contraction():
    with pytest.raises(NotContractingError):
        IFS((AffineMap2(1, 0, 0, 1, 0, 0),))
    with pytest.raises(NotContractingError):
        IFS(())


def test_preset_tables():
    g = preset("sierpinski-gasket")
    assert g.maps[0] == AffineMap2(0.5, 0.0, 0.0, 0.5, -0.25, 0.0)
    assert len(preset("heighway").maps) == 2
    assert len(preset("koch").maps) == 4
    assert len(preset("hilbert").maps) == 4
    assert len(preset("sierpinski-dragon").maps) == 3
    assert preset("koch").lam == pytest.approx(1 / 3)
    for name in ("sierpinski-gasket", "sierpinski-dragon", "heighway", "koch", "hilbert"):
        assert all(contraction_ratio(m) < 1 for m in preset(name).maps)
    with pytest.raises(UnknownPresetError):
        preset("mandelbrot")


def test_ifs_iterate_counts_and_fixed_point():
    g = preset("sierpinski-gasket")
    one = ifs_iterate(g, Scene((Point(0.3, 0.4),)), 1)
    assert len(one.primitives) == 3
    assert one.primitives[0] == Point(*g.maps[0].apply((0.3, 0.4)))
    assert ifs_iterate(g, Scene((Point(1, 2),)), 0) == Scene((Point(1, 2),))
    assert g.maps[2].apply((0.0, SQRT3 / 2)) == pytest.approx((0.0, SQRT3 / 2))
    five = ifs_iterate(g, preset_seed("sierpinski-gasket"), 5)
    assert len(five.primitives) == 3**5 * 3


def test_hausdorff_examples():
    assert hausdorff_distance([(0, 0)], [(0, 0)]) == 0.0
    assert hausdorff_distance([(0, 0)], [(3, 0)]) == 3.0
    assert hausdorff_distance([(0, 0), (1, 0)], [(0, 0)]) == 1.0
    with pytest.raises(EmptySetError):
        hausdorff_distance([], [(1, 2)])


def test_hausdorff_metric_axioms():
    rng = random.Random(99)
    for _ in range(1000):
        pts = lambda: [
            (rng.uniform(-5, 5), rng.uniform(-5, 5)) for _ in range(rng.randint(1, 6))
        ]
        A, B, C = pts(), pts(), pts()
        dab, dba = hausdorff_distance(A, B), hausdorff_distance(B, A)
        assert math.isclose(dab, dba, rel_tol=1e-12, abs_tol=1e-12)
        assert hausdorff_distance(A, A) == 0.0
        dac, dcb = hausdorff_distance(A, C), hausdorff_distance(C, B)
        assert dab <= dac + dcb + 1e-12 * max(1.0, dab)


def test_hausdorff_grid_matches_brute():
    rng = random.Random(5)
    for _ in range(20):
        A = [(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(150)]
        B = [(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(150)]
        assert hausdorff_distance(A, B) == pytest.approx(hausdorff_brute(A, B), abs=1e-14)


def test_contraction_inequality_on_sets():
    g = preset("sierpinski-gasket")
    rng = random.Random(17)
    for _ in range(50):
        A = [(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(rng.randint(1, 5))]
        B = [(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(rng.randint(1, 5))]
        FA = [m.apply(p) for m in g.maps for p in A]
        FB = [m.apply(p) for m in g.maps for p in B]
        assert hausdorff_distance(FA, FB) <= g.lam * hausdorff_distance(A, B) + 1e-9


def test_certify_convergence_gasket():
    corners = [(-0.5, 0.0), (0.5, 0.0), (0.0, SQRT3 / 2)]
    deltas = certify_convergence(preset("sierpinski-gasket"), corners, 6)
    assert len(deltas) == 6
    for n in range(1, 6):
        assert deltas[n] <= 0.5 * deltas[n - 1] + 1e-9
        assert deltas[n] <= 0.5**n * deltas[0] + 1e-9


def test_certify_convergence_fixed_point_like():
    # a singleton at the map's fixed point stays put under a one-map system
    sys = IFS((AffineMap2(0.5, 0, 0, 0.5, 0, 0),))
    deltas = certify_convergence(sys, [(0.0, 0.0)], 4)
    assert deltas == [0.0, 0.0, 0.0, 0.0]


def test_snowflake_composite():
    scene = snowflake(2)
    # three transformed copies of the 2-iterate of the koch seed
    assert len(scene.primitives) == 3 * (4**2)


def _ring(n=64, repeat=1, reverse=False):
    pts = [
        (math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n)) for k in range(n)
    ]
    pts = pts * repeat
    if reverse:
        pts = list(reversed(pts))
    return ClosedCurve(tuple(pts))


def test_winding_multiples():
    for m in (-3, -2, -1, 1, 2, 3):
        curve = _ring(repeat=abs(m), reverse=m < 0)
        assert winding_number(curve, (0.0, 0.0)) == m


def test_winding_outside_and_on_curve():
    square = ClosedCurve(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)))
    assert winding_number(square, (5.0, 5.0)) == 0
    assert winding_number(square, (0.5, 0.5)) == 1
    with pytest.raises(PointOnCurveError):
        winding_number(square, (0.5, 0.0))


def test_winding_invariances():
    ring = _ring(n=16)
    base = winding_number(ring, (0.1, -0.2))
    assert base == 1
    # rotation of the starting vertex
    pts = ring.points
    for k in (3, 7, 11):
        rotated = ClosedCurve(pts[k:] + pts[:k])
        assert winding_number(rotated, (0.1, -0.2)) == base
    # orientation reversal negates
    assert winding_number(ClosedCurve(tuple(reversed(pts))), (0.1, -0.2)) == -base
    # constant within a small disk away from the curve
    rng = random.Random(4)
    for _ in range(25):
        t = rng.uniform(0, 2 * math.pi)
        r = rng.uniform(0, 0.3)
        assert winding_number(ring, (r * math.cos(t), r * math.sin(t))) == 1


def test_winding_needs_refinement():
    # a long thin triangle hugging the query point forces bisection;
    # this traversal runs clockwise around the origin
    tri = ClosedCurve(((-10.0, 0.5), (10.0, 0.5), (0.0, -10.0)))
    assert winding_number(tri, (0.0, 0.0)) == -1
    rev = ClosedCurve(((0.0, -10.0), (10.0, 0.5), (-10.0, 0.5)))
    assert winding_number(rev, (0.0, 0.0)) == 1
