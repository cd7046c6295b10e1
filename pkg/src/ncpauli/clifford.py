"""Clifford tapering maps built from Pauli quarter-turn rotations.

A map is a product ``C = R_1 R_2 ... R_K`` of rotations
``R_k = exp(-i t_k pi/4 Q_k)`` with ``t_k = +-1``.  Conjugation ``C^dag P C``
applies ``R_1`` first; a word anticommuting with ``Q`` goes to ``i t Q P``.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from . import gf2
from .exceptions import DependentGenerators, DimensionMismatch, NonSymmetricInput, NotCommuting
from .pauli import PauliOperator, PauliSum, commutes, multiply

__all__ = [
    "CliffordMap",
    "tapering_map",
    "conjugate",
    "verify_z2",
    "project_sector",
    "sector_block",
]


def _quarter_turn(q: PauliOperator, turns: int, p: PauliOperator) -> PauliOperator:
    if commutes(q, p):
        return p
    out = multiply(q, p)
    return out.with_phase(out.phase + (1 if turns > 0 else 3))


@dataclass(frozen=True)
class CliffordMap:
    n: int
    rotations: tuple[tuple[PauliOperator, int], ...] = ()
    targets: tuple[tuple[int, int], ...] = ()
    signs: tuple[int, ...] = ()

    @property
    def target_qubits(self) -> list[int]:
        return [q for _, q in self.targets]

    def conjugate_word(self, p: PauliOperator) -> PauliOperator:
        """``C^dag p C`` with exact phase."""
        if p.n != self.n:
            raise DimensionMismatch(f"map acts on {self.n} qubits, word on {p.n}")
        for q, t in self.rotations:
            p = _quarter_turn(q, t, p)
        return p

    def unconjugate_word(self, p: PauliOperator) -> PauliOperator:
        """``C p C^dag``, the inverse of :meth:`conjugate_word`."""
        if p.n != self.n:
            raise DimensionMismatch(f"map acts on {self.n} qubits, word on {p.n}")
        for q, t in reversed(self.rotations):
            p = _quarter_turn(q, -t, p)
        return p

    def qubit_values(self, nu: Sequence[int]) -> list[int]:
        """Eigenvalue of ``Z`` on each target qubit for generator eigenvalues ``nu``."""
        return [s * v for s, v in zip(self.signs, nu)]


def tapering_map(generators: Sequence[PauliOperator], n: int | None = None) -> CliffordMap:
    """Clifford map sending each generator to ``+-Z`` on its own qubit.

    Generator ``i`` is assigned the lowest-index free qubit it acts on.  When
    it acts there with X or Y one rotation about ``g * Z_q`` lands it on
    ``Z_q``; when it acts there with Z (and elsewhere too) a rotation about
    ``g * X_q`` lands it on ``X_q`` and a quarter turn about ``Y_q`` finishes.
    Rotations commute with the Z images already fixed.
    """
    gens = [(PauliOperator.from_string(g) if isinstance(g, str) else g).word for g in generators]
    if n is None:
        if not gens:
            raise ValueError("qubit count required for an empty generator list")
        n = gens[0].n
    for g in gens:
        if g.n != n:
            raise DimensionMismatch(f"generator {g} does not act on {n} qubits")
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            if not commutes(a, b):
                raise NotCommuting(f"generators {a} and {b} anticommute")
    if not gf2.is_independent([g.symplectic for g in gens]):
        raise DependentGenerators("generators are not independent over GF(2)")

    images = list(gens)
    rotations: list[tuple[PauliOperator, int]] = []
    targets: list[tuple[int, int]] = []
    assigned: set[int] = set()

    def rotate(q: PauliOperator, start: int):
        rotations.append((q, 1))
        for j in range(start, len(images)):
            images[j] = _quarter_turn(q, 1, images[j])

    for i in range(len(images)):
        g = images[i]
        free = [q for q in g.support() if q not in assigned]
        if not free:
            raise DependentGenerators(f"generator {gens[i]} is a product of earlier ones")
        q = free[0]
        ch = g.char(q)
        z_q = PauliOperator.single(n, q, "Z")
        if g.word != z_q:
            if ch in "XY":
                rotate(multiply(g, z_q).word, i)
            else:
                rotate(multiply(g, PauliOperator.single(n, q, "X")).word, i)
                rotate(PauliOperator.single(n, q, "Y"), i)
        assert images[i].word == z_q, images[i]
        targets.append((i, q))
        assigned.add(q)
    return CliffordMap(n, tuple(rotations), tuple(targets), tuple(im.sign for im in images))


def conjugate(cmap: CliffordMap, h: PauliSum) -> PauliSum:
    """``C^dag H C`` term by term."""
    if h.n != cmap.n:
        raise DimensionMismatch(f"map acts on {cmap.n} qubits, Hamiltonian on {h.n}")
    acc: dict[tuple[int, int], float] = {}
    for p, c in h.items():
        img = cmap.conjugate_word(p)
        acc[img.key] = acc.get(img.key, 0.0) + img.sign * c
    return PauliSum(h.n, acc, h.tol)


def verify_z2(h: PauliSum, p: PauliOperator) -> bool:
    """True iff the Pauli ``p`` commutes with every term of ``h``."""
    return all(commutes(p, w) for w in h.words)


def project_sector(h: PauliSum, targets: Sequence[int], nu: Sequence[int]) -> PauliSum:
    """Fix ``Z`` on each target qubit to ``nu`` and drop those qubits."""
    if len(targets) != len(nu):
        raise ValueError("one eigenvalue per target qubit is required")
    if len(set(targets)) != len(targets):
        raise ValueError("target qubits must be distinct")
    fixed = dict(zip(targets, nu))
    keep = [q for q in range(h.n) if q not in fixed]
    acc: dict[str, float] = {}
    for p, c in h.items():
        label = p.label
        for q, v in fixed.items():
            ch = label[q]
            if ch in "XY":
                raise NonSymmetricInput(f"term {label} anticommutes with Z on qubit {q}")
            if ch == "Z":
                c *= v
        reduced = "".join(label[q] for q in keep)
        acc[reduced] = acc.get(reduced, 0.0) + c
    m = len(keep)
    return PauliSum(m, {PauliOperator.from_string(w).key: c for w, c in acc.items()}, h.tol)


def sector_block(h: PauliSum, cmap: CliffordMap, nu: Sequence[int]) -> PauliSum:
    """Block of ``h`` for generator eigenvalues ``nu`` on the untapered qubits."""
    return project_sector(conjugate(cmap, h), cmap.target_qubits, cmap.qubit_values(nu))
