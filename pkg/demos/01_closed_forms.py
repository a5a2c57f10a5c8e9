"""
Fidelity gain from bit-flip verification under local noise.

An ideal check keeps the +1 eigenspace of X^N.  Errors that commute with X^N
slip through; the rest are discarded.  The fidelity ratio is one over the
pass probability, which saturates at 2 as the noise grows.
"""
from math import comb

from svqaoa import NoiseSpec, QaoaParams, SymmetryOp, build_instance, layered_noisy_qaoa, qaoa_state_exact, sv_ideal
from svqaoa.graphs import random_regular
from svqaoa.pauli import f_depolarizing
from svqaoa.theory import ratio_depolarizing, script_f_sum

# how many weight-m errors survive the check

n = 6
print("weight m :", list(range(n + 1)))
print("commuting:", [f_depolarizing(n, m) for m in range(n + 1)])
print("all      :", [3**m * comb(n, m) for m in range(n + 1)])

# simulate and compare
inst = build_instance(random_regular(n, 3, seed=2))
params = QaoaParams([0.5, 0.8], [0.6, 0.3])
psi = qaoa_state_exact(inst, params)
print("\n  p     simulated   closed form")
for p in (0.01, 0.05, 0.1, 0.2):
    rho = layered_noisy_qaoa(inst, params, NoiseSpec.local_depolarizing(p))
    out = sv_ideal(rho, SymmetryOp.bitflip(n), psi, inst)
    print(f"{p:5.2f}  {out.ratio:10.6f}  {ratio_depolarizing(n, 2, p):10.6f}")

print("\nsaturation: pass probability for N*d = 60")
for p in (0.0, 0.02, 0.05, 0.1):
    print(f"  p={p:4.2f}  Tr(P rho) = {script_f_sum(60, p):.6f}")
