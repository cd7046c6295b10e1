"""Desk-scale oracles that share no algorithmic path with the main modules.

Dense matrices come from explicit Kronecker products, the eigensolver is a
cyclic complex Jacobi iteration, and the noncontextuality oracle compares
Pauli strings character by character.
"""
from __future__ import annotations

import math
from collections.abc import Iterable
from functools import reduce
from itertools import combinations

import numpy as np

from .exceptions import CapExceeded, ConvergenceError, DimensionMismatch, NotHermitian
from .pauli import PauliOperator, PauliSum, product_terms

__all__ = [
    "dense",
    "dense_word",
    "apply",
    "apply_pauli",
    "trace_moments",
    "dense_eigenvalues",
    "brute_noncontextuality",
    "brute_commutes",
    "run_checks",
]

DENSE_CAP = 12
JACOBI_CAP = 64
MOMENT_TERM_CAP = 1 << 20
BRUTE_WORD_CAP = 20

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense_word(label: str) -> np.ndarray:
    """Kronecker product of single-qubit matrices, qubit 0 leftmost."""
    if not label:
        return np.ones((1, 1), dtype=complex)
    return reduce(np.kron, (_SINGLE[c] for c in label))


def dense(h: PauliSum, cap: int = DENSE_CAP) -> np.ndarray:
    if h.n > cap:
        raise CapExceeded(f"dense matrix on {h.n} qubits exceeds cap {cap}")
    m = np.zeros((1 << h.n, 1 << h.n), dtype=complex)
    for p, c in h.items():
        m += c * dense_word(p.label)
    return m


def apply_pauli(op: PauliOperator, v: np.ndarray) -> np.ndarray:
    idx = np.arange(v.shape[0], dtype=np.int64)
    src = idx ^ op.x
    sign = 1.0 - 2.0 * (np.bitwise_count(src & op.z) & 1)
    return (1j ** ((op.phase + int(op.x & op.z).bit_count()) % 4)) * sign * v[src]


def apply(h: PauliSum, v: np.ndarray) -> np.ndarray:
    """Matrix-free ``H v``."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (1 << h.n,):
        raise DimensionMismatch(f"vector of shape {v.shape} for {h.n} qubits")
    out = np.zeros_like(v)
    for p, c in h.items():
        out += c * apply_pauli(p, v)
    return out


def trace_moments(h: PauliSum, k_max: int = 4, cap: int = MOMENT_TERM_CAP) -> list[float]:
    """``Tr(H^k) / 2^n`` for ``k = 1..k_max`` from symbolic products.

    ``Tr(A B)/2^n`` is the sum of ``a_w b_w`` over shared words, so ``H^k``
    only needs the two half powers.
    """
    if not 1 <= k_max <= 4:
        raise ValueError("k_max must lie in 1..4")
    h1 = {k: complex(c) for k, c in h.terms.items()}
    powers = {0: {(0, 0): 1.0 + 0j}, 1: h1}
    if k_max >= 3:
        if len(h1) ** 2 > cap:
            raise CapExceeded(f"H^2 could hold {len(h1) ** 2} words (cap {cap})")
        powers[2] = product_terms(h.n, h1, h1)
    out = []
    for k in range(1, k_max + 1):
        a, b = powers[(k + 1) // 2], powers[k // 2]
        out.append(float(sum(c * b.get(w, 0.0) for w, c in a.items()).real))
    return out


def _round_robin(n: int) -> list[list[tuple[int, int]]]:
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        rounds.append([tuple(sorted((players[i], players[n - 1 - i]))) for i in range(n // 2)])
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def dense_eigenvalues(m: np.ndarray, cap: int = JACOBI_CAP, tol: float = 1e-12,
                      max_sweeps: int = 100) -> np.ndarray:
    """Sorted eigenvalues of a Hermitian matrix by cyclic complex Jacobi.

    Each round rotates ``N/2`` disjoint index pairs at once.  Iteration stops
    when the off-diagonal Frobenius norm drops below ``tol * max(1, ||m||_F)``.
    """
    a = np.array(m, dtype=complex)
    dim = a.shape[0]
    if a.shape != (dim, dim):
        raise DimensionMismatch("matrix must be square")
    if dim > cap:
        raise CapExceeded(f"dimension {dim} exceeds the Jacobi cap {cap}")
    scale = max(1.0, float(np.linalg.norm(a)))
    if np.linalg.norm(a - a.conj().T) > 1e-12 * scale:
        raise NotHermitian("Jacobi eigensolver needs a Hermitian matrix")
    if dim == 1:
        return np.array([a[0, 0].real])
    padded = dim % 2
    rounds = _round_robin(dim + padded)
    pairs = [np.array([(p, q) for p, q in r if q < dim]) for r in rounds]
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < tol * scale:
            return np.sort(np.diag(a).real)
        for pq in pairs:
            p, q = pq[:, 0], pq[:, 1]
            apq = a[p, q]
            b = np.abs(apq)
            phase = np.where(b > 0, apq / np.where(b > 0, b, 1), 1.0)
            theta = 0.5 * np.arctan2(2 * b, a[q, q].real - a[p, p].real)
            c, s = np.cos(theta), np.sin(theta)
            u = np.eye(dim, dtype=complex)
            u[p, p] = c
            u[p, q] = s
            u[q, p] = -s * phase.conj()
            u[q, q] = c * phase.conj()
            a = u.conj().T @ a @ u
        a = 0.5 * (a + a.conj().T)
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def brute_commutes(a: str, b: str) -> bool:
    """Two Pauli strings commute iff they differ nontrivially on an even number of sites."""
    clashes = sum(1 for x, y in zip(a, b) if x != "I" and y != "I" and x != y)
    return clashes % 2 == 0


def brute_noncontextuality(words: Iterable, cap: int = BRUTE_WORD_CAP) -> bool:
    """Literal test: drop universally commuting words, then check transitivity on triples."""
    labels = sorted({w if isinstance(w, str) else w.label for w in words})
    if len(labels) > cap:
        raise CapExceeded(f"{len(labels)} words exceed the triple-enumeration cap {cap}")
    rest = [a for a in labels if all(brute_commutes(a, b) for b in labels)]
    rest = [a for a in labels if a not in rest]
    for a, b, c in combinations(rest, 3):
        for x, y, z in ((a, b, c), (b, a, c), (a, c, b)):
            # y commutes with both x and z, so x and z must commute
            if brute_commutes(x, y) and brute_commutes(y, z) and not brute_commutes(x, z):
                return False
    return True


def _check(name: str, ok: bool | None, **detail) -> dict:
    status = "skipped" if ok is None else ("ok" if ok else "mismatch")
    return {"name": name, "status": status, **detail}


def run_checks(h: PauliSum, seed: int = 0, dense_cap: int = 10) -> dict:
    """Cross-check the main modules against the oracles; returns a report dict."""
    from .eigenstate import build_eigenstate
    from .exceptions import ContextualSet
    from .spectrum import BRUTE_CAP, full_spectrum, ground_search
    from .structure import extract_generators, is_noncontextual

    checks = []
    words = [p.label for p in h.words]
    fast = is_noncontextual(h)
    if len(words) <= BRUTE_WORD_CAP:
        slow = brute_noncontextuality(words)
        checks.append(_check("noncontextuality", fast == slow, fast=fast, oracle=slow))
    else:
        checks.append(_check("noncontextuality", None, reason="too many words for the triple oracle"))
    if not fast:
        raise ContextualSet("input is contextual")
    d = extract_generators(h)
    checks.append(_check("reconstruction", d.reconstruct().isclose(h, 1e-12)))
    if d.g_size > BRUTE_CAP:
        checks.append(_check("spectrum", None, reason="|G| above the exhaustive cap"))
        return _report(checks)
    spec = full_spectrum(d)
    checks.append(_check("multiplicity_sum", spec.total_multiplicity == 1 << h.n))
    checks.append(_check("divisibility", spec.divisible, divisor=spec.divisor))
    try:
        moments = trace_moments(h)
        ref = spec.moments(4)
        ok = all(abs(x - y) <= 1e-9 * max(1.0, abs(x)) for x, y in zip(moments, ref))
        checks.append(_check("trace_moments", ok, symbolic=moments, closed_form=ref))
    except CapExceeded as e:
        checks.append(_check("trace_moments", None, reason=str(e)))
    if h.n > dense_cap:
        return _report(checks)
    mat = dense(h)
    rng = np.random.default_rng(seed)
    v = rng.normal(size=1 << h.n) + 1j * rng.normal(size=1 << h.n)
    checks.append(_check("apply_vs_dense", bool(np.allclose(apply(h, v), mat @ v, atol=1e-12, rtol=0))))
    if mat.shape[0] <= JACOBI_CAP:
        ev = dense_eigenvalues(mat)
        err = float(np.max(np.abs(ev - spec.eigenvalues())))
        checks.append(_check("spectrum_vs_jacobi", err <= 1e-9, max_error=err))
        g = ground_search(d)
        checks.append(_check("ground_vs_dense", abs(g.energy - ev[0]) <= 1e-10,
                             ground=g.energy, dense_min=float(ev[0])))
    g = ground_search(d)
    state = build_eigenstate(d, g.bits, -1)
    psi = state.to_statevector()
    res = float(np.linalg.norm(mat @ psi - state.energy * psi))
    unit = abs(float(np.linalg.norm(psi)) - 1.0)
    checks.append(_check("eigenstate_residual", res <= 1e-10 and unit <= 1e-12,
                         residual=res, norm_error=unit, branches=state.chi_bound))
    return _report(checks)


def _report(checks: list[dict]) -> dict:
    bad = any(c["status"] == "mismatch" for c in checks)
    return {"status": "mismatch" if bad else "ok", "checks": checks}
