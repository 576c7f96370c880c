import numpy as np

from tps import energy
from tps.sequence import build_grid, ohmic_grid
from tps.verify import energy_residual

rng = np.random.default_rng(3)

# Random periodic E and H (H half a step later).  The time average of
# E x H equals a cosine-weighted sum over half of the w-domain indices.
fp = energy.FieldPair(rng.standard_normal((3, 24)), rng.standard_normal((3, 24)), 1e-12)
e, h = fp.spectra()
print("time domain:", energy.time_avg_poynting(fp))
print("w domain:   ", energy.w_domain_poynting(e, h))

# Mapping H with the electric operator breaks the identity.
print("residual, correct maps:", energy_residual(fp))
print("residual, wrong map:   ", energy_residual(fp, fault="symmetry"))

# Weights: 1 for DC (and N/2+1 when N is even), 2 elsewhere.
print([energy.delta_weight(k, 8) for k in range(1, 6)])

# Stored electric, magnetic and dissipated power densities.
g = build_grid(24, 1e-12, 2)
for sigma in (0.0, 0.05):
    print(sigma, energy.power_densities(e, h, g, ohmic_grid(sigma, 24)))
