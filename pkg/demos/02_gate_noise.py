"""
Verification with a noisy check.

Here every gate is followed by depolarizing noise, including the gates of the
ancilla parity check.  At tiny rates the check costs about as much as it
saves; in a middle band it pays off; at high rates the state is close to
maximally mixed and postselection has little left to purify.
"""
from svqaoa import NoiseSpec, build_instance, optimize_params, random_regular, sv_noisy
from svqaoa.qaoa import approximation_ratio, qaoa_state_exact

inst = build_instance(random_regular(6, 3, seed=1))
print("edges:", inst.graph.edges)

for d in (1, 3):
    params = optimize_params(inst, d)
    ar = approximation_ratio(inst, qaoa_state_exact(inst, params))
    print(f"\nd={d}  noiseless approximation ratio {ar:.3f}")
    print("   p2      pass prob   <H> no SV   <H> SV       R")
    for p2 in (1e-4, 0.005, 0.02, 0.05, 0.1):
        out = sv_noisy(inst, params, NoiseSpec.gate(p2))
        print(f"{p2:7.4f}   {out.postselect_prob:8.4f}   {out.obj_no_sv:9.4f}  {out.obj_sv:8.4f}  {out.r_metric:+.4f}")

# the trajectory engine samples the same noise; it is what larger N would use
params = optimize_params(inst, 2)
ex = sv_noisy(inst, params, NoiseSpec.gate(0.05), engine="exact")
tr = sv_noisy(inst, params, NoiseSpec.gate(0.05), engine="trajectory", shots=20_000, seed=4)
print(f"\nexact      <H>_SV = {ex.obj_sv:.4f}")
print(f"trajectory <H>_SV = {tr.obj_sv:.4f} +/- {tr.obj_sv_se:.4f}")
