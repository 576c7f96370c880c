import numpy as np

from tps import excitation, network, sequence
from tps.excitation import PulseShape
from tps.network import PortNetwork

# Raised-cosine excitation: K=10 UIs of 200 samples at 1 ps.
exc = excitation.synth(PulseShape.raised_cosine(1.0), 200, 10, 1e-12)
grid = sequence.build_grid(exc.N, 1e-12, 2)

# A two-port delay line of 7 ps written as Touchstone text and read back.
f = grid.w[:grid.half] / (2 * np.pi)
s = np.zeros((f.size, 2, 2), dtype=complex)
s[:, 1, 0] = s[:, 0, 1] = np.exp(-2j * np.pi * f * 7e-12)
text = network.format_touchstone(PortNetwork(f, s))
print(text.splitlines()[:2])
net = network.parse_touchstone(text)

# Resample S21 onto the quantized grid and take the periodic response.
t = network.resample(net, grid, 2, 1)
y = network.respond(exc, t)
print("max deviation from a 7-sample shift:",
      np.max(np.abs(y.samples - np.roll(exc.sequence.samples, 7))))
print("notes:", t.notes)

# The per-index product equals circular convolution with an impulse response.
rng = np.random.default_rng(1)
p = sequence.PeriodicSequence(rng.standard_normal(64), 1.0)
hseq = sequence.PeriodicSequence(rng.standard_normal(64), 1.0)
g64 = sequence.build_grid(64, 1.0, 2)
a = network.respond(p, network.WTransfer.from_impulse_response(hseq, g64)).samples
b = network.circular_convolve(p, hseq).samples
print("spectral vs direct:", np.max(np.abs(a - b)))

# KL divergence as a figure of merit between responses.
print("KL(y, y) =", network.kl_divergence(y, y))
print("KL(y, input) =", network.kl_divergence(y, exc.sequence))
