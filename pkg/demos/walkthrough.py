"""From a two-qubit Hamiltonian to its eigenvectors, printing each intermediate object."""
import numpy as np

from ncpauli import (
    PauliSum,
    build_eigenstate,
    extract_generators,
    full_spectrum,
    ground_search,
    is_noncontextual,
    sector_values,
    tapering_map,
    conjugate,
)
from ncpauli.verification import dense

h = PauliSum.from_dict({"ZZ": 0.5, "XI": 0.3, "XZ": 0.2})
print("H =", h)
print("noncontextual:", is_noncontextual(h))

d = extract_generators(h)
print("symmetry generators:", [g.label for g in d.g_generators])
print("clique representatives:", [c.label for c in d.a_reps])
for f in d.factorization:
    print(f"  {f.coeff:+.2f} {f.word.label} = {f.sign:+d} * G^{f.g_mask:b} * C[{f.clique}]")

# the symmetry IZ is already diagonal, so tapering is the identity map here
cmap = tapering_map(d.g_generators, d.n)
print("tapered H:", conjugate(cmap, h))

for bits in range(1 << d.g_size):
    v = sector_values(d, bits)
    print(f"sector {v.nu}: s0={v.s0:+.3f} s={np.round(v.s, 3)} E={v.e_minus:+.5f}/{v.e_plus:+.5f}")

spec = full_spectrum(d)
print("spectrum:", [(round(lam, 6), m) for lam, m in spec.entries])
print("dense check:", np.round(np.linalg.eigvalsh(dense(h)), 6))

g = ground_search(d)
state = build_eigenstate(d, g.bits, -1)
psi = state.to_statevector()
print(f"ground energy {g.energy:.6f} in sector {g.nu}, {state.chi_bound} branches")
for c, w in state.branches:
    print(f"  {c:.4f} * {w.label}")
print("residual:", np.linalg.norm(dense(h) @ psi - state.energy * psi))
