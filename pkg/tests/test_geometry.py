import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgpants.geometry.config import ConfigError, GeomConfig
from lgpants.geometry.doublepoints import DISK, TORUS, WALL_FREE_PATCH, double_point_report
from lgpants.geometry.export import polyline_csv, polyline_svg, read_polyline_csv
from lgpants.geometry.forms import (
    AngleTriple,
    DegeneratePoint,
    NotFiberDirection,
    SkeletonPoint,
    alpha,
    contact_form,
    fiber_primitive,
    fiber_primitive_defect,
    lagrangian_defect,
    lagrangian_defects,
    liouville_field,
    omega,
    project_q,
)
from lgpants.geometry.jacobian import (
    fd_jacobian,
    jacobi_singular_values,
    jacobian_rank_profile,
    second_singular_values,
)
from lgpants.geometry.link import (
    AtCenter,
    NoRoot,
    Polyline2,
    RootFindFailure,
    link_point,
    link_radii,
    stereographic,
    trefoil_link,
    trefoil_polyline,
)
from lgpants.geometry.maps import (
    OutsideDomain,
    disk_point,
    p_torus,
    toy_F,
    toy_g,
    toy_g_gradient,
    wall_distance,
)
from lgpants.geometry.toy import sample_wall, toy_property_defects

angles = st.floats(-10.0, 10.0, allow_nan=False)
unit = st.floats(-1.0, 1.0, allow_nan=False)
vec6 = st.lists(unit, min_size=6, max_size=6).map(np.array)


# ---- forms ---------------------------------------------------------------

@given(vec6, vec6)
def test_omega_antisymmetric(u, v):
    assert omega(u, v) == -omega(v, u)


def test_omega_normalisation_and_liouville():
    e = np.eye(6)
    assert omega(e[0], e[1]) == 1.0  # dx_1 ^ dy_1 on (d/dx_1, d/dy_1)
    assert omega(e[0], e[3]) == 0.0
    z = np.arange(6.0)
    # i_v omega = alpha for the radial field v(z) = z
    for w in e:
        assert omega(liouville_field(z), w) == pytest.approx(alpha(z, w))


@pytest.mark.parametrize("theta", [(0.0, 0.0), (0.4, -0.1)])
def test_lagrangian_examples(theta):
    assert lagrangian_defect(SkeletonPoint(1.0, AngleTriple(*theta))) < 1e-9


def test_lagrangian_control_and_degenerate():
    e = np.eye(6)
    assert abs(omega(e[0], e[1])) == 1.0  # span(d/dx_1, d/dy_1) is symplectic, not Lagrangian
    with pytest.raises(DegeneratePoint):
        lagrangian_defect(SkeletonPoint(0.0, AngleTriple(0.1, 0.2)))


@settings(max_examples=50)
@given(st.floats(0.01, 5.0), angles, angles)
def test_lagrangian_is_conic(r, t1, t2):
    for s in (0.5, 2.0, 10.0):
        assert lagrangian_defects(s * r, np.array([t1, t2])) < 1e-9


def test_skeleton_point_coordinates():
    pt = SkeletonPoint(2.0, AngleTriple(0.3, -1.0))
    th = pt.angles.as_array()
    assert th.sum() == pytest.approx(0.0, abs=1e-15)
    assert np.allclose(pt.ambient[0::2], 2 * np.cos(th))
    assert np.allclose(pt.ambient[1::2], 2 * np.sin(th))


def test_fiber_primitive_examples():
    e = np.eye(6)
    assert fiber_primitive_defect(np.zeros(6), e[1]) < 1e-12
    assert fiber_primitive_defect(np.array([1, 0, 1, 0, 1, 0.0]), e[1]) < 1e-8
    with pytest.raises(NotFiberDirection):
        fiber_primitive_defect(np.zeros(6), e[0])


@given(vec6, st.lists(unit, min_size=3, max_size=3))
def test_fiber_primitive_derivative_matches_alpha(z, vy):
    v = np.zeros(6)
    v[1::2] = vy
    # analytic derivative of sum x_a y_a along pure dy directions is sum x_a vy_a
    assert alpha(z, v) == pytest.approx(np.dot(z[0::2], vy), abs=1e-12)
    assert fiber_primitive_defect(z, v) < 1e-9


def test_projection_q_and_contact_form():
    z = np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    assert np.allclose(project_q(z, 0.5), [1, 3, 5, 0.5 + 2 + 12 + 30])
    # the horizontal lift (v, alpha(v)) is in the kernel of lambda_N
    v = np.linspace(-1, 1, 6)
    assert contact_form(z, 0.0, v, alpha(z, v)) == pytest.approx(0.0)


# ---- toy maps ------------------------------------------------------------

def test_toy_examples():
    d = toy_property_defects(AngleTriple(0.2, 0.3))
    assert d.quotient < 1e-12 and d.odd < 1e-12 and d.wall is None
    d = toy_property_defects(AngleTriple(np.pi / 12, -np.pi / 12))
    assert d.wall is not None and d.wall < 1e-12
    assert toy_property_defects(AngleTriple(0.0, 0.0)) == type(d)(0.0, 0.0, 0.0)
    with pytest.raises(OutsideDomain):
        toy_property_defects(AngleTriple(1.0, 0.5))


@given(angles, angles)
def test_g_product_identity(t1, t2):
    # on theta_1 + theta_2 + theta_3 = 0: sum cos sin = -2 sin sin sin
    t3 = -t1 - t2
    assert toy_g(np.array([t1, t2])) == pytest.approx(-2 * np.sin(t1) * np.sin(t2) * np.sin(t3), abs=1e-12)


def test_g_gradient_matches_finite_differences():
    th = np.random.default_rng(0).uniform(-0.5, 0.5, (50, 2))
    fd = fd_jacobian(lambda x: toy_g(x)[..., None], th)[..., 0, :]
    assert np.allclose(fd, toy_g_gradient(th), atol=1e-8)


def test_wall_samples_are_on_the_wall():
    w = sample_wall(np.random.default_rng(1), 500)
    assert np.all(wall_distance(w) < 1e-15)
    assert np.all(np.sum(w ** 2, axis=-1) + np.sum(w, axis=-1) ** 2 < 1.0)  # inside D


# ---- Jacobians -----------------------------------------------------------

def test_jacobi_matches_numpy_svd():
    rng = np.random.default_rng(3)
    for shape in [(3, 2), (4, 2), (4, 4), (2, 3)]:
        a = rng.normal(size=shape)
        assert np.allclose(jacobi_singular_values(a), np.linalg.svd(a, compute_uv=False), atol=1e-13)


def test_fd_jacobian_matches_analytic_p():
    th = np.random.default_rng(4).uniform(0, 2 * np.pi, (20, 2))
    t = np.concatenate([th, -th.sum(axis=1, keepdims=True)], axis=1)
    s = np.sin(t)
    analytic = np.stack([np.stack([-s[:, 0], np.zeros(20)], -1),
                         np.stack([np.zeros(20), -s[:, 1]], -1),
                         np.stack([s[:, 2], s[:, 2]], -1)], axis=1)
    assert np.allclose(fd_jacobian(p_torus, th), analytic, atol=1e-9)


def test_rank_examples():
    assert jacobian_rank_profile("p_K", (0.0, 0.0)).rank < 2
    assert jacobian_rank_profile("q_K", (1.0, 0.7)).rank == 2
    assert jacobian_rank_profile("F_toy", (0.0, 0.0)).rank < 2
    assert jacobian_rank_profile("F_toy", (0.2, 0.1)).rank == 2
    with pytest.raises(OutsideDomain):
        jacobian_rank_profile("F_toy", (1.0, 1.0))


def test_second_singular_value_batch_agrees_with_jacobi():
    th = np.random.default_rng(6).uniform(0, 2 * np.pi, (30, 2))
    batch = second_singular_values("q_K", th)
    ref = [jacobian_rank_profile("q_K", x).singular_values[1] for x in th]
    assert np.allclose(batch, ref, atol=1e-10)


# ---- double points -------------------------------------------------------

def test_toy_double_points_small_run():
    rep = double_point_report("F_toy", DISK, samples=3000)
    assert rep.points
    assert rep.max_wall_distance < 1e-6 and rep.all_transverse
    for p in rep.points:
        assert np.allclose(p.theta, -p.theta_other, atol=1e-8)  # the Z/2 partner


def test_q_double_points_are_antipodal_on_real_locus():
    rep = double_point_report("q_K", TORUS, samples=3000)
    assert rep.points and rep.all_transverse
    assert rep.max_real_locus_distance < 1e-6
    for p in rep.points:
        d = (p.theta + p.theta_other + np.pi) % (2 * np.pi) - np.pi
        assert np.allclose(d, 0.0, atol=1e-8)


def test_wall_free_patch_is_empty():
    assert double_point_report("p_K", WALL_FREE_PATCH, samples=3000).points == []


# ---- links ---------------------------------------------------------------

def test_link_point_examples():
    cfg = GeomConfig()
    pt = link_point(AngleTriple(0.0, 0.0), cfg)
    r = cfg.rho1 / np.sqrt(3)
    assert np.allclose(pt, [r, r, r, 0.0], atol=1e-11)
    assert np.allclose(link_point(AngleTriple(np.pi / 2, np.pi / 2), cfg), [0, 0, -cfg.rho1, 0], atol=1e-11)


@settings(max_examples=50, deadline=None)
@given(angles, angles, st.floats(0.01, 1.0))
def test_link_point_on_sphere_and_closed_form(t1, t2, rho):
    cfg = GeomConfig(rho1=rho)
    pt = link_point(AngleTriple(t1, t2), cfg)
    assert abs(np.linalg.norm(pt) - rho) < 1e-10
    r = link_radii(np.array([t1, t2]), rho)
    assert np.allclose(pt[:3], r * np.cos([t1, t2, -t1 - t2]), atol=1e-10)


def test_link_point_no_root():
    with pytest.raises(NoRoot):
        link_point(AngleTriple(0.0, 0.0), GeomConfig(tol=10.0))


def test_stereographic_examples():
    rho = 0.1
    assert np.allclose(stereographic([0, 0, 0, rho], rho), 0.0)
    assert np.linalg.norm(stereographic([rho, 0, 0, 0], rho)) == pytest.approx(2 * rho)
    with pytest.raises(AtCenter):
        stereographic([0, 0, -rho], rho)


@given(st.lists(unit, min_size=3, max_size=3))
def test_stereographic_is_central_projection(v):
    v = np.array(v)
    if np.linalg.norm(v) < 1e-3:
        return
    rho = 0.5
    pt = rho * v / np.linalg.norm(v)
    if pt[-1] < -rho + 1e-6:
        return
    img = stereographic(pt, rho)
    c = np.array([0, 0, -rho])
    # c, pt and the image (lifted to the plane x_d = rho) are collinear
    lifted = np.append(img, rho)
    assert np.linalg.norm(np.cross(pt - c, lifted - c)) < 1e-9 * max(1.0, np.linalg.norm(lifted - c))


def test_trefoil_link_contracts():
    cfg = GeomConfig(ray_samples=512)
    pts = trefoil_link(cfg)
    assert np.max(np.abs(np.linalg.norm(pts, axis=1) - cfg.rho1)) < 1e-9
    poly = trefoil_polyline(cfg)
    assert np.linalg.norm(poly.points[0] - poly.points[-1]) < 1e-9
    with pytest.raises(RootFindFailure):
        trefoil_polyline(GeomConfig(rho1=5.0, ray_samples=64))


def test_disk_point_lies_in_plane():
    th = disk_point(0.5, np.linspace(0, 2 * np.pi, 7))
    assert np.allclose(np.sum(np.concatenate([th, -th.sum(-1, keepdims=True)], -1) ** 2, -1), 0.25)
    assert np.allclose(toy_F(th)[..., 0], np.cos(th[:, 0]) - np.cos(th[:, 1]))


# ---- config and export ---------------------------------------------------

@pytest.mark.parametrize("field, value", [("samples", 0), ("rho1", 0.0), ("tol", -1.0), ("grid_res", 4)])
def test_config_validation(field, value):
    with pytest.raises(ConfigError):
        GeomConfig().with_(**{field: value})


def test_polyline_exports():
    poly = Polyline2.from_vertices([[0, 0], [1, 0], [0.5, 1 / 3]])
    text = polyline_csv(poly)
    assert text.splitlines()[0] == "x,y" and len(text.splitlines()) == 5
    assert "0.3333333333333333" in text  # repr keeps every digit
    assert np.array_equal(read_polyline_csv(text).points, poly.points)
    svg = polyline_svg(poly)
    assert svg.count("<path") == 1
    box = [float(x) for x in svg.split('viewBox="')[1].split('"')[0].split()]
    assert box[2] == pytest.approx(1.1) and box[3] == pytest.approx((1 / 3) * 1.1)


def test_polyline_invariants():
    with pytest.raises(ValueError):
        Polyline2(np.array([[0, 0], [1, 0], [0, 1], [1, 1.0]]))  # not closed
    with pytest.raises(ValueError):
        Polyline2.from_vertices([[0, 0], [0, 0], [1, 1]])
