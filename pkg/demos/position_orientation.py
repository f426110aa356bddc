"""Rates for an emitter displaced from the sphere center.

Off center, the problem keeps only rotational symmetry about the
displacement axis, so the dipole orientation starts to matter: a radial
dipole (along the displacement) and a tangential one see different
boundary reflections.  The script sweeps the displacement q_L inside a
q_R = 5 sphere and prints the local-field corrected linear rates next to
the uncorrected ones, for both orientations.

It then shows the large-sphere trend: the further the emitter sits from
the center, the weaker the radius-oscillations of the rate, because the
reflected waves from different surface points no longer add in phase.
"""

import numpy as np

from locfield import RateRequest, compute

EPS = 1.1 + 1e-8j
Q_R = 5.0

print(f"emitter displaced by q_L inside a q_R = {Q_R} sphere, "
      f"eps = {EPS}")
print(f"{'q_L':>5} {'corr rad':>10} {'corr tan':>10} "
      f"{'uncorr rad':>11} {'uncorr tan':>11}")
for q_L in np.linspace(0.0, 4.5, 10):
    row = []
    for method in ("linear_born", "uncorrected"):
        for orient in ("radial", "tangential"):
            req = RateRequest(eps=EPS, method=method, q_R=Q_R, q_L=q_L,
                              q_C=0.01, orientation=orient)
            row.append(compute(req).total_ratio)
    print(f"{q_L:>5.1f} {row[0]:>10.6f} {row[1]:>10.6f} "
          f"{row[2]:>11.6f} {row[3]:>11.6f}")
print("at the center both orientations coincide by symmetry; near the")
print("surface the radial dipole couples more strongly to the boundary.\n")

# -- oscillation amplitude vs displacement -----------------------------------

grid = np.linspace(6.0, 10.0, 48)
print("radius-oscillation amplitude (max - min of Gamma/Gamma_0 over "
      "q_R in [6, 10]):")
for q_L in (0.0, 1.0, 5.0):
    vals = [compute(RateRequest(eps=EPS, method="linear_born", q_R=q,
                                q_L=q_L, q_C=0.01)).total_ratio
            for q in grid]
    print(f"  q_L = {q_L:.0f}:  {max(vals) - min(vals):.4f}")
print("the oscillations wash out as the emitter leaves the center.")
