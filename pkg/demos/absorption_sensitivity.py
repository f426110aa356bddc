"""How material absorption strains the linear rate formula.

With absorption, part of the emitted power is dissipated within the
cavity-scale neighbourhood of the emitter, and that nonradiative channel
scales like Im(chi)/q_C^3: it grows both with the absorption and with
shrinking cavity radius.  The linear formula keeps only the first order
of this term, so its error against the exact real-cavity rate grows the
same way.

The ``weak_absorption`` method splits the difference: it adds the
leading absorption shift to the transparent-medium rate and reports a
condition number saying how much of the total the shift amounts to.
"""

import numpy as np

from locfield import RateRequest, compute

Q_R = 2.0

print(f"linear-vs-exact gap at the center of a q_R = {Q_R} sphere")
print(f"{'Im chi':>9} {'gap (qC=0.01)':>14} {'gap (qC=0.02)':>14}")
for im in np.geomspace(1e-8, 1e-6, 7):
    row = []
    for q_C in (0.01, 0.02):
        kw = dict(eps=complex(1.1, im), q_R=Q_R, q_C=q_C)
        exact = compute(RateRequest(method="exact", **kw)).total_ratio
        linear = compute(RateRequest(method="linear_born", **kw)).total_ratio
        row.append(abs(exact - linear))
    print(f"{im:>9.1e} {row[0]:>14.3e} {row[1]:>14.3e}")
print("the gap tracks Im(chi)/q_C^3: ten times the absorption costs ten")
print("times the accuracy, doubling the cavity radius buys a factor ~8.\n")

# -- the weak-absorption shortcut -------------------------------------------

eps = 1.1 + 1e-7j
for q_C in (0.01, 0.02):
    kw = dict(eps=eps, q_R=Q_R, q_C=q_C)
    exact = compute(RateRequest(method="exact", **kw)).total_ratio
    weak = compute(RateRequest(method="weak_absorption", **kw)).total_ratio
    print(f"eps = {eps}, q_C = {q_C}: exact {exact:.6f}, "
          f"weak-absorption {weak:.6f}, diff {abs(exact - weak):.1e}")
print("the shortcut needs only the transparent-medium scattering tensor")
print("plus a closed-form shift, and stays within a percent of the shift")
print("itself while the absorbed fraction is small.")
