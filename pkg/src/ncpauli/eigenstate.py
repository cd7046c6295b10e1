"""Eigenvectors of noncontextual Hamiltonians as short sums of stabilizer branches.

In sector ``nu`` the Hamiltonian acts as ``s0 + ||s|| C(nu)`` where
``C(nu) = sum_i (s_i/||s||) C_i``.  The LCU rotation ``R`` with
``R^dag C(nu) R = sigma C_1`` turns the stabilizer state fixed by
``{nu_i G_i} u {sign sigma C_1}`` into an eigenvector ``R |anchor>`` with
energy ``s0 + sign ||s||``.  Expanding ``R`` gives at most ``|A|`` branches.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .clifford import tapering_map
from .exceptions import CapExceeded, DependentGenerators, DimensionMismatch, NotCommuting
from .partitioning import RotationPlan, reduce_to_pauli
from .pauli import PauliOperator, commutes
from .spectrum import _as_bits, bits_to_nu, sector_values
from .structure import Decomposition

__all__ = [
    "StabilizerTableau",
    "StabilizerSum",
    "anchor_state",
    "build_eigenstate",
    "rank_bound",
    "apply_word",
]

STATEVECTOR_CAP = 20


def apply_word(op: PauliOperator, v: np.ndarray) -> np.ndarray:
    """``op |v>`` for a phase-carrying Pauli operator; qubit 0 is the top bit."""
    idx = np.arange(v.shape[0], dtype=np.int64)
    src = idx ^ op.x
    signs = 1.0 - 2.0 * (np.bitwise_count(src & op.z) & 1)
    phase = 1j ** ((op.phase + bin(op.x & op.z).count("1")) % 4)
    return phase * signs * v[src]


@dataclass(frozen=True)
class StabilizerTableau:
    """``n`` independent commuting signed words fixing a single state."""

    n: int
    generators: tuple[PauliOperator, ...]

    def __post_init__(self):
        if len(self.generators) != self.n:
            raise DependentGenerators(f"{len(self.generators)} generators for {self.n} qubits")
        for i, a in enumerate(self.generators):
            if a.n != self.n:
                raise DimensionMismatch(f"generator {a} does not act on {self.n} qubits")
            if not a.is_hermitian():
                raise ValueError(f"generator {a} is not Hermitian")
            for b in self.generators[i + 1:]:
                if not commutes(a, b):
                    raise NotCommuting(f"{a} and {b} anticommute")

    def _basis_index(self) -> int:
        """A computational basis index with nonzero overlap on the state.

        Eliminating the x parts exposes the diagonal members ``+-Z^z`` of the
        group; any bit string satisfying all of them is in the support.
        """
        rows = list(self.generators)
        for bit in range(self.n - 1, -1, -1):
            piv = next((r for r in rows if (r.x >> bit) & 1), None)
            if piv is None:
                continue
            rows.remove(piv)
            rows = [piv * r if (r.x >> bit) & 1 else r for r in rows]
        diag = rows  # every remaining row has x == 0
        # solve z . b = [sign == -1] over GF(2)
        pivots: dict[int, tuple[int, int]] = {}
        for r in diag:
            z, rhs = r.z, 1 if r.sign < 0 else 0
            while z:
                lead = z.bit_length() - 1
                if lead not in pivots:
                    pivots[lead] = (z, rhs)
                    break
                pz, pr = pivots[lead]
                z, rhs = z ^ pz, rhs ^ pr
            if z == 0 and rhs:
                raise DependentGenerators("generators stabilize no state (they generate -I)")
        b = 0
        for lead in sorted(pivots):
            z, rhs = pivots[lead]
            # lower bits of b are already fixed; choose bit `lead` to satisfy the row
            if (bin(z & b).count("1") & 1) != rhs:
                b ^= 1 << lead
        return b

    def to_statevector(self) -> np.ndarray:
        if self.n > STATEVECTOR_CAP:
            raise CapExceeded(f"statevector on {self.n} qubits exceeds cap {STATEVECTOR_CAP}")
        v = np.zeros(1 << self.n, dtype=complex)
        v[self._basis_index()] = 1.0
        for s in self.generators:
            v = 0.5 * (v + apply_word(s, v))
        return v / np.linalg.norm(v)


def anchor_state(g: Sequence[PauliOperator], nu, p_a: PauliOperator | None = None, sign: int = 1,
                 n: int | None = None, completion_signs: int = 0) -> StabilizerTableau:
    """Complete ``{nu_i g_i} u {sign p_a}`` to a full stabilizer tableau.

    The partial set is tapered onto single-qubit Z words; every untouched
    qubit gets ``+Z`` in that frame (or ``-Z`` where ``completion_signs`` has
    the corresponding bit set) and the result is mapped back.
    """
    g = [PauliOperator.from_string(w) if isinstance(w, str) else w for w in g]
    if isinstance(p_a, str):
        p_a = PauliOperator.from_string(p_a)
    if n is None:
        n = (g[0] if g else p_a).n
    if isinstance(nu, (int, np.integer)):
        nu = bits_to_nu(int(nu), len(g))
    if len(nu) != len(g):
        raise ValueError("one eigenvalue per generator is required")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    words = [w.word for w in g] + ([p_a.word] if p_a is not None else [])
    signs = [v * w.sign for v, w in zip(nu, g)] + ([sign * p_a.sign] if p_a is not None else [])
    cmap = tapering_map(words, n)
    used = set(cmap.target_qubits)
    extra = []
    for k, q in enumerate(qq for qq in range(n) if qq not in used):
        z = PauliOperator.single(n, q, "Z")
        if (completion_signs >> k) & 1:
            z = -z
        extra.append(cmap.unconjugate_word(z))
    stabs = [w if s > 0 else -w for w, s in zip(words, signs)] + extra
    return StabilizerTableau(n, tuple(stabs))


@dataclass(frozen=True)
class StabilizerSum:
    """``psi = sum_l d_l W_l |anchor>``; ``chi_bound`` counts branches."""

    anchor: StabilizerTableau
    branches: tuple[tuple[complex, PauliOperator], ...]
    nu: tuple[int, ...]
    sign: int
    energy: float
    degenerate: bool = False
    plan: RotationPlan | None = None

    @property
    def n(self) -> int:
        return self.anchor.n

    @property
    def chi_bound(self) -> int:
        return len(self.branches)

    def to_statevector(self) -> np.ndarray:
        a = self.anchor.to_statevector()
        out = np.zeros_like(a)
        for d, w in self.branches:
            out += d * apply_word(w, a)
        return out


def build_eigenstate(d: Decomposition, nu, sign: int = -1, completion_signs: int = 0,
                     tol: float = 1e-12) -> StabilizerSum:
    """Eigenvector of sector ``nu`` with energy ``s0 + sign ||s(nu)||``.

    With ``A`` empty the sign is ignored and the anchor itself is returned.
    A sector with ``||s|| = 0`` is a scalar block; the anchor on ``C_1`` is
    returned with ``degenerate=True``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    bits = _as_bits(d, nu)
    sv = sector_values(d, bits)
    ident = PauliOperator.identity(d.n)
    if d.a_size == 0:
        anchor = anchor_state(d.g_generators, sv.nu, None, 1, d.n, completion_signs)
        return StabilizerSum(anchor, ((1.0 + 0j, ident),), sv.nu, 1, sv.s0)
    target = d.a_reps[0]
    if sv.norm_s <= tol:
        anchor = anchor_state(d.g_generators, sv.nu, target, sign, d.n, completion_signs)
        return StabilizerSum(anchor, ((1.0 + 0j, ident),), sv.nu, sign, sv.s0, degenerate=True)
    red = reduce_to_pauli(list(zip(d.a_reps, sv.s)), target_index=0, kind="lcu", tol=tol)
    anchor = anchor_state(d.g_generators, sv.nu, target, sign * red.sign, d.n, completion_signs)
    if red.plan is None:
        branches = ((1.0 + 0j, ident),)
    else:
        branches = tuple((complex(c), w) for c, w in red.plan.expansion)
    return StabilizerSum(anchor, branches, sv.nu, sign, sv.s0 + sign * sv.norm_s, plan=red.plan)


def rank_bound(s: StabilizerSum) -> int:
    """Branch count; an upper bound on stabilizer rank, not necessarily tight."""
    return s.chi_bound
