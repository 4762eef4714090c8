"""
Character sums, bias and the divisor-bounded totient sum
========================================================
"""

import numpy as np

from smalldoubling.core import CyclicSet
from smalldoubling import fourier

# an interval of length 10 in Z_100 is strongly biased towards the first character
A = CyclicSet.interval(100, 0, 10)
prof = fourier.dft(A)
print("|A^(1)| =", abs(prof.coefficients[1]), " Parseval error:", prof.parseval_error())

w = fourier.bias_detect(A, min_index=50)
print("bias witness:", w.to_dict())

###############################################################################
# Energy two ways: counting quadruples, and the fourth moment of the DFT.

B = CyclicSet.parse("30:0,1,2,7,11")
print("E(B) =", fourier.energy(B), " via DFT:", round(fourier.fourier_energy(B), 6))

###############################################################################
# Phi(n) = (1/n) sum_{d | n, d <= 36} phi(d) stays below 4/2025 above 92400.

rep = fourier.phi_scan(92400, 200475)
print("checked", rep.checked, "values; violations:", rep.violations, "; max", rep.max_value, "at", rep.argmax)
print("Phi(92400) =", fourier.phi36(92400), ">= 4/2025:", fourier.phi36(92400) >= fourier.PHI_EPS)

###############################################################################
# Arc concentration: some open half-circle holds (1 + eta)|Z|/2 of the points.

rng = np.random.default_rng(0)
pts = np.exp(2j * np.pi * rng.random(9))
arc = fourier.arc_concentrate(pts)
print("eta = %.3f, bound = %.2f, half-circle holds %d" % (arc.eta, arc.bound, len(arc.members)))
