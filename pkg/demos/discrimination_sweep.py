"""Walk through the three steady-state discrimination signals.

Sweeps the squeezing parameter and prints, side by side for the empty and
single-atom cavity, the output photon flux, the two-photon fluctuation
magnitude, and the first few squeezed-Fock populations. Run with:

    python3 demos/discrimination_sweep.py
"""

import warnings

import numpy as np

import sqcavity as sq
from sqcavity.dynamics import build_liouvillian, steady_state
from sqcavity.model import build_dissipators, build_hamiltonian_squeezed
from sqcavity.observables import (
    lab_moments_from_squeezed,
    moments,
    output_flux,
    squeezed_frame_distribution,
)

warnings.simplefilter("ignore")

DELTA_C = 0.5   # cavity detuning, units of kappa
G0 = 5.0        # bare coupling
GAMMA = 1.0     # atomic decay
CUTOFF = 45


def solve(r, atom_present):
    params = sq.ModelParams.for_squeezing(
        DELTA_C, r, g0=G0, gamma=GAMMA, atom_present=atom_present
    )
    dims = sq.HilbertDims(CUTOFF)
    liouv = build_liouvillian(
        build_hamiltonian_squeezed(params, dims),
        build_dissipators(params, dims),
        frame=sq.SQUEEZED,
    )
    rho = steady_state(liouv)
    ms = moments(rho, sq.SQUEEZED)
    lab = lab_moments_from_squeezed(ms, r)
    dist = squeezed_frame_distribution(rho, n_report=5)
    return output_flux(lab, params.kappa), ms.abs_second_moment, dist.probs


print(f"delta_c = {DELTA_C} kappa, g0 = {G0} kappa, gamma = {GAMMA} kappa")
print()
print("        |        flux         |      |<a_s^2>|      |  P1 (squeezed Fock)")
print("   r    |   empty      atom   |   empty      atom   |   empty      atom")
print("-" * 78)
for r in np.arange(0.2, 1.41, 0.2):
    fe, me, pe = solve(r, False)
    fa, ma, pa = solve(r, True)
    print(f"  {r:4.1f}  | {fe:8.4f}  {fa:8.4f} | {me:8.4f}  {ma:8.4f} "
          f"| {pe[1]:8.5f}  {pa[1]:8.5f}")

print()
print("Reading the table: the atom raises the output flux, quenches the")
print("two-photon fluctuations of the squeezed mode, and fills in the odd")
print("squeezed-Fock levels that the empty cavity leaves almost empty. All")
print("three signals separate the two cases well before r reaches 1.")
