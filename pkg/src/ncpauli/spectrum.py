"""Sector energies, ground-state search and the closed-form spectrum.

Fixing eigenvalues ``nu_i = +-1`` of the symmetry generators turns every
factorized term ``h * prod(G[mask]) * C_i`` into ``h * prod(nu[mask]) * C_i``,
so each block is ``s0 + sum_i s_i C_i`` with pairwise anticommuting ``C_i``
and eigenvalues ``s0 +- ||s||``.

Sectors are indexed by an unsigned integer whose bit ``i`` is set exactly
when ``nu_i = -1``.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import CapExceeded, TooManySymmetries
from .pauli import PauliOperator, PauliSum
from .structure import Decomposition

__all__ = [
    "SectorValues",
    "SpectrumSummary",
    "GroundResult",
    "sector_values",
    "sector_energies",
    "ground_search",
    "full_spectrum",
    "projector",
    "nu_to_bits",
    "bits_to_nu",
]

BRUTE_CAP = 24
PROJECTOR_CAP = 16
MERGE_TOL = 1e-9
DEFAULT_SWEEPS = 200
DEFAULT_CHAINS = 32
_CHUNK = 1 << 15


def nu_to_bits(nu: Sequence[int]) -> int:
    bits = 0
    for i, v in enumerate(nu):
        if v not in (1, -1):
            raise ValueError(f"sector entries must be +1 or -1, got {v}")
        if v == -1:
            bits |= 1 << i
    return bits


def bits_to_nu(bits: int, m: int) -> tuple[int, ...]:
    return tuple(-1 if (bits >> i) & 1 else 1 for i in range(m))


def _as_bits(d: Decomposition, nu) -> int:
    m = d.g_size
    if isinstance(nu, (int, np.integer)):
        if not 0 <= nu < (1 << m):
            raise ValueError(f"sector mask {nu} out of range for |G| = {m}")
        return int(nu)
    if len(nu) != m:
        raise ValueError(f"sector has {len(nu)} entries, |G| = {m}")
    return nu_to_bits(nu)


class _Tables:
    """Per-term arrays used by the vectorized sector evaluation."""

    def __init__(self, d: Decomposition):
        f = d.factorization
        self.masks = np.array([t.g_mask for t in f], dtype=np.int64)
        self.h = np.array([t.h for t in f], dtype=float)
        clique = np.array([-1 if t.clique is None else t.clique for t in f], dtype=int)
        self.sym = clique < 0
        self.onehot = np.zeros((len(f), d.a_size))
        rows = np.nonzero(~self.sym)[0]
        self.onehot[rows, clique[rows]] = 1.0

    def evaluate(self, bits: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """``(s0, s)`` for a vector of sector masks."""
        parity = np.bitwise_count(bits[:, None] & self.masks[None, :]) & 1
        contrib = (1 - 2 * parity.astype(float)) * self.h
        s0 = contrib[:, self.sym].sum(axis=1)
        return s0, contrib @ self.onehot


@lru_cache(maxsize=64)
def _tables_cached(d: Decomposition) -> _Tables:
    return _Tables(d)


@dataclass(frozen=True)
class SectorValues:
    nu: tuple[int, ...]
    s0: float
    s: tuple[float, ...]
    norm_s: float
    e_minus: float
    e_plus: float

    @property
    def bits(self) -> int:
        return nu_to_bits(self.nu)


def sector_values(d: Decomposition, nu) -> SectorValues:
    """Symmetry contributions ``s0(nu)``, ``s(nu)`` and both block energies."""
    bits = _as_bits(d, nu)
    s0, s = _tables_cached(d).evaluate(np.array([bits], dtype=np.int64))
    s0, s = float(s0[0]), s[0]
    norm = float(np.linalg.norm(s))
    return SectorValues(bits_to_nu(bits, d.g_size), s0, tuple(s.tolist()), norm, s0 - norm, s0 + norm)


def sector_energies(d: Decomposition, nu) -> tuple[float, float]:
    v = sector_values(d, nu)
    return v.e_minus, v.e_plus


def _sweep(d: Decomposition, cap: int):
    m = d.g_size
    if m > cap:
        raise TooManySymmetries(f"|G| = {m} exceeds the exhaustive-search cap {cap}")
    tab = _tables_cached(d)
    total = 1 << m
    for start in range(0, total, _CHUNK):
        bits = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        s0, s = tab.evaluate(bits)
        yield bits, s0, np.sqrt((s * s).sum(axis=1))


@dataclass(frozen=True)
class GroundResult:
    bits: int
    nu: tuple[int, ...]
    energy: float
    certified: bool


def ground_search(d: Decomposition, mode: str = "brute", cap: int = BRUTE_CAP, seed: int = 0,
                  sweeps: int = DEFAULT_SWEEPS, chains: int = DEFAULT_CHAINS,
                  tie_tol: float = 1e-12) -> GroundResult:
    """Minimize ``s0(nu) - ||s(nu)||`` over sectors.

    ``mode="brute"`` is exhaustive and certified; ``mode="anneal"`` runs
    parallel single-flip Metropolis chains with geometric cooling and is not.
    Ties within ``tie_tol`` go to the smallest sector mask.
    """
    if mode == "brute":
        best_e, best_b = np.inf, 0
        for bits, s0, norm in _sweep(d, cap):
            e = s0 - norm
            lo = e.min()
            if lo < best_e - tie_tol:
                best_e, best_b = lo, int(bits[np.nonzero(e <= lo + tie_tol)[0][0]])
            elif lo <= best_e + tie_tol:
                cand = int(bits[np.nonzero(e <= best_e + tie_tol)[0][0]])
                best_b = min(best_b, cand)
                best_e = min(best_e, lo)
        return GroundResult(best_b, bits_to_nu(best_b, d.g_size), float(best_e), True)
    if mode == "anneal":
        return _anneal(d, seed, sweeps, chains, tie_tol)
    raise ValueError(f"unknown search mode {mode!r}")


def _anneal(d: Decomposition, seed: int, sweeps: int, chains: int, tie_tol: float) -> GroundResult:
    m = d.g_size
    tab = _tables_cached(d)

    def energy(bits):
        s0, s = tab.evaluate(bits)
        return s0 - np.sqrt((s * s).sum(axis=1))

    if m == 0:
        e = float(energy(np.zeros(1, dtype=np.int64))[0])
        return GroundResult(0, (), e, False)
    rng = np.random.default_rng(seed)
    state = rng.integers(0, 1 << m, size=chains, dtype=np.int64)
    e = energy(state)
    # starting temperature from the typical single-flip energy change
    probe = energy(state ^ (np.int64(1) << rng.integers(0, m, size=chains)))
    t_hot = max(float(np.mean(np.abs(probe - e))), 1e-3 * max(float(np.abs(tab.h).sum()), 1e-12))
    t_cold = 1e-3 * t_hot
    best_e, best_b = np.inf, 0

    def record(es, bs):
        nonlocal best_e, best_b
        lo = float(es.min())
        if lo < best_e - tie_tol:
            best_e = lo
            best_b = int(bs[es <= lo + tie_tol].min())
        elif lo <= best_e + tie_tol:
            best_b = min(best_b, int(bs[es <= best_e + tie_tol].min()))
            best_e = min(best_e, lo)

    record(e, state)
    for sweep in range(sweeps):
        temp = t_hot * (t_cold / t_hot) ** (sweep / max(1, sweeps - 1))
        for j in rng.permutation(m):
            prop = state ^ (np.int64(1) << np.int64(j))
            ep = energy(prop)
            delta = ep - e
            accept = (delta <= 0) | (rng.random(chains) < np.exp(-np.maximum(delta, 0) / temp))
            state = np.where(accept, prop, state)
            e = np.where(accept, ep, e)
            record(e, state)
    return GroundResult(best_b, bits_to_nu(best_b, m), best_e, False)


@dataclass(frozen=True)
class SpectrumSummary:
    """Eigenvalues with multiplicities ``m`` and contributing-sector counts ``k``."""

    n: int
    entries: tuple[tuple[float, int], ...]
    k: tuple[int, ...]
    g_size: int
    a_size: int
    block_dim: int
    divisor: int | None

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def divisible(self) -> bool:
        if self.divisor is None:
            return True
        return all(m % self.divisor == 0 for _, m in self.entries)

    def eigenvalues(self) -> np.ndarray:
        """Full sorted multiset (length ``2^n``)."""
        vals = np.array([v for v, _ in self.entries])
        mult = np.array([m for _, m in self.entries], dtype=np.int64)
        return np.repeat(vals, mult)

    def moments(self, k_max: int = 4) -> list[float]:
        """``sum m lambda^k / 2^n`` for ``k = 1..k_max``."""
        vals = np.array([v for v, _ in self.entries])
        mult = np.array([m for _, m in self.entries], dtype=float)
        return [float((mult * vals ** k).sum() / 2.0 ** self.n) for k in range(1, k_max + 1)]


def multiplicity_divisor(a_size: int) -> int | None:
    """``2^(ceil((|A|-1)/2) - 1)`` for ``|A| >= 2``, else None."""
    if a_size < 2:
        return None
    return 1 << (-(-(a_size - 1) // 2) - 1)


def full_spectrum(d: Decomposition, n: int | None = None, tol: float = MERGE_TOL,
                  cap: int = BRUTE_CAP) -> SpectrumSummary:
    """All ``2^n`` eigenvalues from the ``2^|G|`` sector energy pairs."""
    n = d.n if n is None else n
    m = d.g_size
    half = n - m - 1
    vals, mults, sectors = [], [], []
    for bits, s0, norm in _sweep(d, cap):
        if d.a_size == 0:
            vals.append(s0)
            mults.append(np.full(len(bits), 1 << (n - m), dtype=np.int64))
            sectors.append(bits)
        else:
            vals += [s0 - norm, s0 + norm]
            mults += [np.full(len(bits), 1 << half, dtype=np.int64)] * 2
            sectors += [bits, bits]
    vals = np.concatenate(vals)
    mults = np.concatenate(mults)
    sectors = np.concatenate(sectors)
    order = np.argsort(vals, kind="stable")
    vals, mults, sectors = vals[order], mults[order], sectors[order]
    # new group whenever the gap to the group's first value exceeds tol
    starts = [0]
    for i in range(1, len(vals)):
        if vals[i] - vals[starts[-1]] > tol:
            starts.append(i)
    starts.append(len(vals))
    entries, ks = [], []
    for a, b in zip(starts[:-1], starts[1:]):
        w = mults[a:b]
        entries.append((float((vals[a:b] * w).sum() / w.sum()), int(w.sum())))
        ks.append(int(len(np.unique(sectors[a:b]))))
    return SpectrumSummary(n, tuple(entries), tuple(ks), m, d.a_size, 1 << (n - m),
                           multiplicity_divisor(d.a_size))


def projector(nu, g: Sequence[PauliOperator], cap: int = PROJECTOR_CAP) -> PauliSum:
    """``2^-|G| prod_i (I + nu_i G_i)`` expanded into Pauli words."""
    g = list(g)
    if len(g) > cap:
        raise CapExceeded(f"projector over {len(g)} generators exceeds cap {cap}")
    if isinstance(nu, (int, np.integer)):
        nu = bits_to_nu(int(nu), len(g))
    if len(nu) != len(g):
        raise ValueError("one eigenvalue per generator is required")
    if not g:
        raise ValueError("projector needs at least one generator to fix the qubit count")
    n = g[0].n
    out = PauliSum.identity(n)
    for v, gi in zip(nu, g):
        out = out * (0.5 * (PauliSum.identity(n) + PauliSum.from_operator(gi, v)))
    return out
