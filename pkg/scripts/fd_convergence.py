"""Compare finite-difference Frenet residuals with the Taylor-jet path on each builtin curve."""
from pathlib import Path

import numpy as np

from dualcurves import (build_curve, frenet_apparatus, frenet_residuals, great_circle,
                        parse_curve_spec, real_helix, study_circle)
from dualcurves.curves import sample_parameters

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def worst(res):
    return max(max(r, d) for grp in ("frenet", "orthonormality") for r, d in res[grp].values())


def main():
    series = build_curve(parse_curve_spec((CONFIGS / "normalized_series.yaml").read_text()))
    print(f"{'curve':28} {'jet resid':>10} {'fd resid':>10} {'fd vs jet':>10}")
    for curve in (study_circle(), real_helix(1.0, 0.5), great_circle(), series):
        fd = curve.without_exact()
        s = sample_parameters(fd, 256)  # inset so both paths see the same points
        frames = [frenet_apparatus(c, s) for c in (curve, fd)]
        gap = max(np.max(np.abs(getattr(frames[0], k).real - getattr(frames[1], k).real)) +
                  np.max(np.abs(getattr(frames[0], k).dual - getattr(frames[1], k).dual))
                  for k in ("T", "N", "B", "k1", "k2"))
        r = [worst(frenet_residuals(f)) for f in frames]
        print(f"{curve.name[:28]:28} {r[0]:10.2e} {r[1]:10.2e} {gap:10.2e}")


if __name__ == "__main__":
    main()
