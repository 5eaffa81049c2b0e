"""Run the normal-curve and dual-sphere tests side by side on a random family.

Positives are normalized curves on the dual unit sphere; negatives are scaled,
shifted copies that drift off every dual sphere. Prints one row per curve and
a summary of the separation between the two groups.
"""
import argparse

import numpy as np

from dualcurves import (dual_dot, fit_curvature_solution, normal_curve_test, off_sphere_control,
                        random_sphere_curve, spherical_test)
from dualcurves.curves import sample_parameters


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=20260101)
    ap.add_argument("-n", type=int, default=25, help="curves per group")
    ap.add_argument("--finite-differences", action="store_true")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    groups = {True: [random_sphere_curve(rng) for _ in range(args.n)],
              False: [off_sphere_control(rng) for _ in range(args.n)]}
    print(f"{'group':8} {'normal_res':>11} {'sphere_drift':>13} {'agree':>6} {'|c|^2-g|':>10}")
    stats = {True: [], False: []}
    agree = 0
    for expected, curves in groups.items():
        for curve in curves:
            if args.finite_differences:
                curve = curve.without_exact()
            nt, sf = normal_curve_test(curve), spherical_test(curve)
            drift = max(sf.center_drift, sf.radius_drift)
            ok = nt.is_normal == sf.is_spherical == expected
            agree += ok
            gap = float("nan")
            if expected:
                fit = fit_curvature_solution(curve)
                a = curve(sample_parameters(curve, 256))
                g, c = dual_dot(a, a), fit.c1 * fit.c1 + fit.c2 * fit.c2
                gap = max(np.max(np.abs(c.real - g.real)), np.max(np.abs(c.dual - g.dual)))
            stats[expected].append((nt.residual, drift))
            print(f"{'sphere' if expected else 'control':8} {nt.residual:11.3e} {drift:13.3e} "
                  f"{str(ok):>6} {gap:10.2e}")
    pos, neg = np.array(stats[True]), np.array(stats[False])
    print(f"\nagreement {agree}/{2 * args.n}")
    print(f"positives: max normal residual {pos[:, 0].max():.2e}, max drift {pos[:, 1].max():.2e}")
    print(f"controls:  min normal residual {neg[:, 0].min():.2e}, min drift {neg[:, 1].min():.2e}")


if __name__ == "__main__":
    main()
