"""Export the helicoid swept by the unit-circle dual curve and report its vertex error."""
import argparse
import math
import time

import numpy as np

from dualcurves import export_csv, export_obj, ruled_surface_from_dual_curve, study_circle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="helicoid.obj")
    ap.add_argument("--grid", default="64x16", help="SxU sample counts")
    ap.add_argument("--u-range", type=float, nargs=2, default=(-2.0, 2.0))
    args = ap.parse_args()
    ns, nu = (int(v) for v in args.grid.lower().split("x"))

    start = time.perf_counter()
    mesh = ruled_surface_from_dual_curve(study_circle((0.0, 2 * math.pi)), s_samples=ns,
                                         u_range=tuple(args.u_range), u_count=nu)
    (export_csv if args.out.endswith(".csv") else export_obj)(mesh, args.out)
    elapsed = time.perf_counter() - start

    s, u = np.meshgrid(mesh.s_values, mesh.u_values, indexing="ij")
    target = np.stack([u * np.cos(s), u * np.sin(s), s], axis=-1)
    err = np.max(np.linalg.norm(mesh.vertices - target, axis=-1))
    print(f"wrote {args.out}: {ns * nu} vertices, max error vs (u cos s, u sin s, s) = {err:.2e}, "
          f"{elapsed * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
