import numpy as np

from tps import sequence, waveguide

# A periodic sequence of N samples has N w-domain indices.  Index k sits at
# the quantized frequency w_k, which the order-q recurrence pulls towards
# the ideal omega_k = 2 pi (k-1) / T.
N, dt = 16, 1e-12
for q in (0, 1, 2):
    g = sequence.build_grid(N, dt, q)
    print(f"q={q}  w/omega on the positive half:",
          np.round(g.w[1:g.half] / g.omega[1:g.half], 6))

# Second half mirrors the first with a sign flip (SGN(k) = -1 there).
g = sequence.build_grid(N, dt, 2)
print("SGN:", g.sgn)

# The relative error at the band edge drops by NBW^2 with every extra order.
for nbw in (0.05, 0.1, 0.2, 0.5):
    row = [waveguide.dispersion_error_nbw(nbw, q) for q in range(4)]
    print(f"NBW={nbw:4}", "  ".join(f"{p:.3e}" for p in row))

# Leading-order estimates for q = 0, 1, 2 next to the exact values.
for q in (0, 1, 2):
    print(q, waveguide.dispersion_error_nbw(0.1, q), waveguide.dispersion_error_approx(0.1, q))

# Transforms: electric and magnetic maps, and their inverses.
x = sequence.PeriodicSequence(np.random.default_rng(0).standard_normal(N), dt)
e = sequence.forward_e(x)
h = sequence.forward_h(x)
print("round trip:", np.max(np.abs(sequence.inverse_e(e).samples - x.samples)),
      np.max(np.abs(sequence.inverse_h(h).samples - x.samples)))

# The first difference becomes multiplication by 2i sin(pi (k-1)/N) SGN(k).
print(np.round(sequence.dt_eigenvalues(8), 4))
