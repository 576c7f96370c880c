import warnings

import numpy as np

from tps import excitation
from tps.excitation import PulseShape
from tps.sequence import forward_e, half_length

# Each pulse shape has a cut-off g in units of the symbol rate.  The number
# of occupied w-domain indices is floor(g K): it depends on K only, not on
# how finely a unit interval is sampled.
shapes = {
    "raised cosine a=1": PulseShape.raised_cosine(1.0),
    "trapezoid r=1/3": PulseShape.trapezoid(1 / 3),
    "gaussian tp=fp=0.01": PulseShape.gaussian(0.01, 0.01),
    "modulated gaussian": PulseShape.modulated_gaussian(0.01, 0.1, 5 / 3),
}
for name, s in shapes.items():
    print(f"{name:22s} g={excitation.g_factor(s):.5f}  kmax(K=5)="
          f"{excitation.kmax_explicit(s, 5)}")

# Same shape, different sampling: kmax does not move.
rc = shapes["raised cosine a=1"]
for Ns in (10, 50, 200):
    exc = excitation.synth(rc, Ns, 10, 1e-12)
    print(f"Ns={Ns:3d} N={exc.N:5d} kmax={exc.kmax} nbw={exc.nbw:.5f}")

# Spectral support: beyond index kmax+1 the raised cosine is empty.
exc = excitation.synth(rc, 50, 10, 1e-12)
c = np.abs(forward_e(exc.sequence).coefficients)
print("largest coefficient past the band:",
      c[exc.kmax + 1:half_length(exc.N)].max() / c.max())

# Too few samples per UI: the spectrum aliases and synth says so.
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    print(excitation.synth(PulseShape.trapezoid(0.1), 2, 4, 1e-12).warnings)

# Gaussian time-bandwidth product converted to a time truncation level.
print("tp(BT=1) =", excitation.tp_from_bt(1.0))
