import io
import math

import numpy as np
import pytest

from dualcurves import (DualCurve, DualVec3, Line, csv_text, export_csv, export_obj, great_circle,
                        line_to_dual, obj_text, random_sphere_curve, real_helix,
                        ruled_surface_from_dual_curve, study_circle)
from dualcurves.errors import ExportError, NotOnDualUnitSphere


def helicoid_mesh(s_samples=64, u_count=16):
    return ruled_surface_from_dual_curve(study_circle(), s_samples=s_samples,
                                         u_range=(-2.0, 2.0), u_count=u_count)


def test_helicoid_vertices():
    mesh = helicoid_mesh()
    s, u = np.meshgrid(mesh.s_values, mesh.u_values, indexing="ij")
    target = np.stack([u * np.cos(s), u * np.sin(s), s], axis=-1)
    assert np.max(np.linalg.norm(mesh.vertices - target, axis=-1)) < 1e-12
    assert mesh.shape == (64, 16) and mesh.u_count == 16 and mesh.u_range == (-2.0, 2.0)


def test_vertex_at_s0_u1():
    mesh = ruled_surface_from_dual_curve(study_circle(), s_samples=5, u_range=(-1, 1), u_count=3)
    np.testing.assert_allclose(mesh.vertices[0, 2], [1.0, 0.0, 0.0], atol=1e-15)


def test_constant_dual_curve_gives_swept_axis():
    const = DualCurve(lambda t: DualVec3(np.tile([1.0, 0, 0], (t.size, 1)), np.zeros((t.size, 3))),
                      (0.0, 1.0))
    mesh = ruled_surface_from_dual_curve(const, s_samples=4, u_count=3)
    assert np.all(mesh.base_curve == 0.0)
    assert np.all(mesh.rulings == [1.0, 0.0, 0.0])


def test_great_circle_is_a_pencil_through_origin():
    mesh = ruled_surface_from_dual_curve(great_circle(), s_samples=10, u_count=4)
    assert np.max(np.abs(mesh.base_curve)) == 0.0
    assert np.max(np.abs(mesh.vertices[..., 2])) == 0.0


def test_mesh_invariants_on_random_sphere_curve():
    curve = random_sphere_curve(np.random.default_rng(4))
    mesh = ruled_surface_from_dual_curve(curve, s_samples=40, u_range=(-3, 1), u_count=7)
    np.testing.assert_allclose(np.linalg.norm(mesh.rulings, axis=-1), 1.0, atol=1e-12)
    # base point is the foot of the perpendicular from the origin
    assert np.max(np.abs(np.einsum("ij,ij->i", mesh.base_curve, mesh.rulings))) < 1e-10
    # offsets run along the ruling with length |u|
    off = mesh.vertices - mesh.base_curve[:, None, :]
    np.testing.assert_allclose(np.linalg.norm(off, axis=-1),
                               np.broadcast_to(np.abs(mesh.u_values), off.shape[:2]), atol=1e-12)
    assert np.max(np.linalg.norm(np.cross(off, mesh.rulings[:, None, :]), axis=-1)) < 1e-12
    # Study consistency: the (base, ruling) line maps back to the curve point
    alpha = curve(mesh.s_values)
    back = line_to_dual(Line(mesh.base_curve, mesh.rulings))
    np.testing.assert_allclose(back.real, alpha.real, atol=1e-8)
    np.testing.assert_allclose(back.dual, alpha.dual, atol=1e-8)


def test_off_sphere_curve_is_rejected_with_location():
    with pytest.raises(NotOnDualUnitSphere) as info:
        ruled_surface_from_dual_curve(real_helix(1.0, 0.5), s_samples=16)
    err = info.value
    # oracle: g(alpha, alpha) = 1 + b^2 t^2 first exceeds 1 + 1e-6 at the second sample
    assert err.index == 1
    assert err.residual == pytest.approx(0.25 * err.s ** 2, rel=1e-12)


def test_obj_counts_and_indices():
    mesh = ruled_surface_from_dual_curve(study_circle(), s_samples=2, u_count=2)
    lines = obj_text(mesh).splitlines()
    assert sum(l.startswith("v ") for l in lines) == 4
    faces = [l for l in lines if l.startswith("f ")]
    assert faces == ["f 1 3 4", "f 1 4 2"]
    assert all(l[0] in "vf" for l in lines)


def test_helicoid_obj_vertex_count_and_determinism(tmp_path):
    mesh = helicoid_mesh()
    a, b = tmp_path / "a.obj", tmp_path / "b.obj"
    export_obj(mesh, a)
    export_obj(helicoid_mesh(), b)
    text = a.read_text()
    assert sum(l.startswith("v ") for l in text.splitlines()) == 1024
    assert sum(l.startswith("f ") for l in text.splitlines()) == 2 * 63 * 15
    assert a.read_bytes() == b.read_bytes()


def test_csv_row_and_round_trip():
    mesh = ruled_surface_from_dual_curve(study_circle(), s_samples=5, u_range=(-2.0, 2.0),
                                         u_count=5, s_range=(0.0, 2 * math.pi))
    text = csv_text(mesh)
    rows = text.splitlines()
    assert rows[0] == "s,u,x,y,z"
    data = np.loadtxt(io.StringIO(text), delimiter=",", skiprows=1)
    row = data[(np.isclose(data[:, 0], math.pi / 2)) & (data[:, 1] == 2.0)][0]
    np.testing.assert_allclose(row[2:], [0.0, 2.0, math.pi / 2], atol=1e-15)
    np.testing.assert_allclose(data[:, 2:], mesh.vertices.reshape(-1, 3), rtol=0, atol=1e-15)


def test_csv_with_no_rulings_is_header_only():
    mesh = ruled_surface_from_dual_curve(study_circle(), s_samples=3, u_count=0)
    assert csv_text(mesh) == "s,u,x,y,z\n"


def test_export_to_stream_and_failure(tmp_path):
    mesh = helicoid_mesh(4, 2)
    buf = io.StringIO()
    export_csv(mesh, buf)
    assert buf.getvalue() == csv_text(mesh)
    with pytest.raises(ExportError):
        export_obj(mesh, tmp_path / "missing" / "x.obj")
    with pytest.raises(OSError):
        export_csv(mesh, tmp_path)
