"""Random test instances: noncontextual Hamiltonians, anticommuting sums, generator sets.

Structured instances are built in a frame where the symmetries are single-qubit
Z words and the clique representatives are Jordan-Wigner Majorana strings, then
scrambled by random Pauli quarter-turns.
"""
from __future__ import annotations

import numpy as np

from .clifford import _quarter_turn
from .pauli import PauliOperator, PauliSum, multiply

__all__ = [
    "majorana_words",
    "random_clifford",
    "scramble",
    "random_word",
    "random_pauli_set",
    "random_anticommuting_sum",
    "random_commuting_generators",
    "random_noncontextual",
]


def majorana_words(m: int, offset: int, n: int) -> list[PauliOperator]:
    """The ``2m + 1`` pairwise anticommuting strings on qubits ``offset..offset+m-1``."""
    out = []
    for k in range(m):
        pre = "I" * offset + "Z" * k
        post = "I" * (n - offset - k - 1)
        out.append(PauliOperator.from_string(pre + "X" + post))
        out.append(PauliOperator.from_string(pre + "Y" + post))
    out.append(PauliOperator.from_string("I" * offset + "Z" * m + "I" * (n - offset - m)))
    return out


def random_word(rng: np.random.Generator, n: int, allow_identity: bool = True) -> PauliOperator:
    while True:
        label = "".join(rng.choice(list("IXYZ"), size=n))
        if allow_identity or set(label) - {"I"}:
            return PauliOperator.from_string(label)


def random_clifford(rng: np.random.Generator, n: int, depth: int | None = None) -> list[PauliOperator]:
    depth = 3 * n if depth is None else depth
    return [random_word(rng, n, allow_identity=False) for _ in range(depth)]


def scramble(words, rotations) -> list[PauliOperator]:
    out = []
    for w in words:
        for q in rotations:
            w = _quarter_turn(q, 1, w)
        out.append(w.word)
    return out


def random_pauli_set(rng: np.random.Generator, n: int, size: int) -> list[PauliOperator]:
    """Distinct non-identity words (fewer if the space is too small)."""
    seen: dict[tuple[int, int], PauliOperator] = {}
    size = min(size, 4 ** n - 1)
    while len(seen) < size:
        w = random_word(rng, n, allow_identity=False)
        seen.setdefault(w.key, w)
    return list(seen.values())


def random_anticommuting_sum(rng: np.random.Generator, n: int, size: int | None = None) -> PauliSum:
    """Pairwise anticommuting words with Gaussian coefficients."""
    pool = majorana_words(n, 0, n)
    size = int(rng.integers(2, len(pool) + 1)) if size is None else size
    pick = rng.choice(len(pool), size=size, replace=False)
    words = scramble([pool[i] for i in pick], random_clifford(rng, n))
    coeffs = rng.normal(size=size)
    return PauliSum.from_terms(zip(coeffs, words), n=n)


def random_commuting_generators(rng: np.random.Generator, n: int, k: int | None = None) -> list[PauliOperator]:
    """``k`` independent commuting words (scrambled Z words, then mixed)."""
    k = int(rng.integers(1, n + 1)) if k is None else k
    gens = [PauliOperator.single(n, q, "Z") for q in range(k)]
    gens = scramble(gens, random_clifford(rng, n))
    for i in range(k):
        for j in range(k):
            if i != j and rng.random() < 0.3:
                gens[i] = multiply(gens[i], gens[j]).word
    return gens


def random_noncontextual(rng: np.random.Generator, n: int, g_size: int | None = None,
                         a_size: int | None = None, n_terms: int | None = None,
                         integer: bool = False, scrambled: bool = True) -> PauliSum:
    """Random noncontextual Hamiltonian with a chosen symmetry/clique structure.

    Terms are ``prod(G[mask])`` and ``prod(G[mask]) * C_i`` for random masks;
    every clique representative gets at least one term.  ``integer=True``
    draws small integer coefficients so that eigenvalues collide.
    """
    g_size = int(rng.integers(0, n + 1)) if g_size is None else g_size
    m = n - g_size
    if a_size is None:
        choices = [0] + list(range(2, 2 * m + 2)) if m > 0 else [0]
        a_size = int(rng.choice(choices))
    gens = [PauliOperator.single(n, q, "Z") for q in range(g_size)]
    reps = []
    if a_size:
        pool = majorana_words(m, g_size, n)
        reps = [pool[i] for i in rng.choice(len(pool), size=a_size, replace=False)]
        # decorate the representatives with random symmetry products
        for i, c in enumerate(reps):
            mask = int(rng.integers(0, 1 << g_size))
            for j in range(g_size):
                if (mask >> j) & 1:
                    c = multiply(c, gens[j])
            reps[i] = c.word
    if scrambled:
        rot = random_clifford(rng, n)
        gens, reps = scramble(gens, rot), scramble(reps, rot)
    if n_terms is None:
        n_terms = int(rng.integers(a_size + 1, a_size + 12))

    def product(mask: int, clique: int | None) -> PauliOperator:
        out = PauliOperator.identity(n) if clique is None else reps[clique]
        for j in range(g_size):
            if (mask >> j) & 1:
                out = multiply(out, gens[j])
        return out.word

    words = [product(int(rng.integers(0, 1 << g_size)), i) for i in range(a_size)]
    for _ in range(max(0, n_terms - a_size)):
        clique = None if a_size == 0 or rng.random() < 0.4 else int(rng.integers(0, a_size))
        words.append(product(int(rng.integers(0, 1 << g_size)), clique))
    if integer:
        coeffs = rng.integers(-3, 4, size=len(words)).astype(float)
        coeffs[coeffs == 0] = 1.0
    else:
        coeffs = rng.normal(size=len(words))
    return PauliSum.from_terms(zip(coeffs, words), n=n)
