"""
How many extra qubits?
======================

Each added ancilla qubit doubles the register and widens the window of
accepted estimates.  The DPSS gap ``1 - lambda`` falls off like
``exp(-pi 2^m)``, so only ``log log(1/eps)`` boost qubits are needed, against
``log(1/eps)`` for the tophat taper.
"""

from taperqpe import new_grid
from taperqpe.bounds import cleve_m, karnik_lower_bound, required_m_asymptotic, slepian_gap
from taperqpe.eigen import dpss_pair

############################################################
# Measured gap against two analytic estimates

print(" m    N    K   1-lambda      asymptotic    bound")
for m in range(1, 6):
    g = new_grid(4, m)
    # past m=3 the true gap is below double precision and reads as 0
    lam = min(dpss_pair(g).value, 1.0)
    gap = slepian_gap(g.N, g.W).value
    bound = 1 - float(karnik_lower_bound(g.N, g.K))
    print(f"{m:2d} {g.N:4d} {g.K:4d}   {1 - lam:.3e}     {gap:.3e}     {bound:.3e}")

############################################################
# Qubits needed for a target failure probability

for eps in (1e-2, 1e-4, 1e-8, 1e-16):
    print(f"eps={eps:.0e}: tophat needs m={int(cleve_m(eps)):2d}, DPSS needs m={int(required_m_asymptotic(eps))}")
