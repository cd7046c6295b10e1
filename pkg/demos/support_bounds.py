"""How many Pauli terms a noncontextual Hamiltonian can hold, checked by building the closures."""
import numpy as np

from ncpauli import Decomposition, PauliOperator, enumerate_closure, is_noncontextual, table_of_bounds
from ncpauli.instances import majorana_words, random_clifford, scramble

n = 4
for row in table_of_bounds(n):
    print(f"|G|={row.g_size} |A|={row.a_size}: {row.max_terms:3d} = {row.expression:24s} {row.flag}")

# build the largest case explicitly and count
rng = np.random.default_rng(0)
rot = random_clifford(rng, n)
gens = scramble([PauliOperator.single(n, q, "Z") for q in range(n - 1)], rot)
reps = scramble(majorana_words(1, n - 1, n), rot)
d = Decomposition.from_generators(n, gens, reps)
closure = enumerate_closure(d)
print(f"closure of |G|={n - 1}, |A|=3 on {n} qubits: {len(closure)} words, 2^n = {2 ** n}")
print("noncontextual:", is_noncontextual(list(closure)))
