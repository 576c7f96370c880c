import numpy as np
from scipy.signal import hilbert

from tps import excitation, sequence, waveguide
from tps.excitation import PulseShape

# WR-284, TE10.  Cut-off and axial wavenumber at 3 GHz.
wr284 = waveguide.WaveguideSpec(72.14e-3, 34.04e-3)
te10 = waveguide.TE10
print("kc =", waveguide.cutoff(te10, wr284), "rad/m")
print("fc =", waveguide.cutoff_frequency(te10, wr284) / 1e9, "GHz")

# Put index 4 exactly at 3 GHz on a converged grid.
N = 1000
g = sequence.build_grid(N, 3 / 3e9 / N, 60)
print("kz(3 GHz) =", waveguide.kz(4, g, te10, wr284))

# Below cut-off the axial wavenumber is imaginary: evanescent.
print("kz(DC) =", waveguide.kz(1, g, te10, wr284))

# A 2.5 GHz modulated Gaussian through 420 mm of guide.
Ns, K = 729, 3
dt = 1 / 1.5e9 / Ns
exc = excitation.synth(PulseShape.modulated_gaussian(0.01, 0.1, 5 / 3), Ns, K, dt)
guide = wr284.with_length(0.42)
out = waveguide.propagate_sequence(exc.sequence, te10, guide, q=2)

env_in = np.abs(hilbert(exc.sequence.samples))
env_out = np.abs(hilbert(out.samples))
shift = (np.argmax(env_out) - np.argmax(env_in)) % exc.N
tau = guide.length / waveguide.group_velocity(2.5e9, te10, guide)
print(f"envelope moved {shift} samples; L/v_g is {tau / dt:.0f} samples "
      f"({(tau / dt) % exc.N:.0f} modulo the period)")

# Near cut-off the pulse disperses: a 2 ns period holds tones 0.5 GHz apart,
# and a large share of the pulse energy sits below cut-off.
gg = sequence.build_grid(exc.N, dt, 2)
ff = gg.w[:gg.half] / (2 * np.pi)
P = np.abs(sequence.forward_e(exc.sequence).coefficients[:gg.half]) ** 2
print("share of power below cut-off:",
      P[ff < waveguide.cutoff_frequency(te10, guide)].sum() / P.sum())
