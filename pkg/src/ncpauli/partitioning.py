"""Unitary partitioning: rotate a normalized anticommuting Pauli sum onto one word.

For ``O = sum_k beta_k P_k`` with pairwise anticommuting ``P_k`` and
``sum beta^2 = 1`` both plans build a unitary ``R`` with ``R^dag O R = P_w``.

Conjugation convention: a rotation ``exp(-i theta A)`` acts as
``R^dag P R = cos(2 theta) P + sin(2 theta) (i A P)`` on words anticommuting
with ``A`` and leaves commuting words alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import AllZero, DimensionMismatch, NotAnticommuting, ReductionFailed, SingleWord
from .pauli import DEFAULT_TOL, PauliOperator, PauliSum, _real_sum, commutes, multiply, product_terms

__all__ = [
    "NormalizedACSum",
    "RotationPlan",
    "ReductionResult",
    "normalize",
    "build_sequence_plan",
    "build_lcu_plan",
    "conjugate_by_plan",
    "reduce_to_pauli",
    "rotate",
]


def _coerce(terms) -> list[tuple[PauliOperator, float]]:
    if isinstance(terms, PauliSum):
        return list(terms.items())
    out = []
    for w, c in terms:
        if isinstance(w, (int, float)) and not isinstance(c, (int, float)):
            w, c = c, w
        op = PauliOperator.from_string(w) if isinstance(w, str) else w
        out.append((op.word, op.sign * float(c)))
    return out


@dataclass(frozen=True)
class NormalizedACSum:
    words: tuple[PauliOperator, ...]
    betas: tuple[float, ...]
    norm: float

    @property
    def n(self) -> int:
        return self.words[0].n

    def as_sum(self) -> PauliSum:
        return PauliSum.from_terms(zip(self.betas, self.words), n=self.n)


def normalize(terms) -> NormalizedACSum:
    """Split ``sum c_k P_k`` into unit-norm coefficients and ``||c||_2``."""
    pairs = _coerce(terms)
    if not pairs:
        raise AllZero("empty anticommuting sum")
    words = [w for w, _ in pairs]
    for i, a in enumerate(words):
        if a.n != words[0].n:
            raise DimensionMismatch("words act on different qubit counts")
        for b in words[i + 1:]:
            if commutes(a, b):
                raise NotAnticommuting(f"{a} and {b} commute")
    c = np.array([c for _, c in pairs], dtype=float)
    norm = float(np.linalg.norm(c))
    if norm == 0.0:
        raise AllZero("every coefficient is zero")
    return NormalizedACSum(tuple(words), tuple((c / norm).tolist()), norm)


@dataclass(frozen=True)
class RotationPlan:
    """Either a sequence of Pauli rotations or one LCU rotation.

    ``steps`` holds ``(A, theta)`` for ``exp(-i theta A)`` applied in order
    (sequence plans).  LCU plans store the collective ``angle`` and the
    expansion ``R = sum_l d_l W_l`` in ``expansion``.
    """

    kind: str
    target: PauliOperator
    steps: tuple[tuple[PauliOperator, float], ...] = ()
    angle: float = 0.0
    expansion: tuple[tuple[complex, PauliOperator], ...] = ()

    @property
    def n(self) -> int:
        return self.target.n


def _check_target(s: NormalizedACSum, target_index: int):
    if len(s.words) < 2:
        raise SingleWord("a single Pauli word needs no rotation")
    if not 0 <= target_index < len(s.words):
        raise IndexError(f"target index {target_index} out of range")


def build_sequence_plan(s: NormalizedACSum, target_index: int = 0) -> RotationPlan:
    """Fold every other word into the target, one rotation per word.

    With accumulated amplitude ``a`` on ``P_w`` and ``b`` on ``P_k`` the step
    rotates about ``A = i P_w P_k`` by ``theta = atan2(-b, a) / 2``, leaving
    ``sqrt(a^2 + b^2)`` on ``P_w``.
    """
    _check_target(s, target_index)
    w = s.words[target_index]
    a = s.betas[target_index]
    steps = []
    for k, (p, b) in enumerate(zip(s.words, s.betas)):
        if k == target_index:
            continue
        gen = multiply(w, p)
        gen = gen.with_phase(gen.phase + 1)
        steps.append((gen, 0.5 * math.atan2(-b, a)))
        a = math.hypot(a, b)
    return RotationPlan("sequence", w, tuple(steps))


def build_lcu_plan(s: NormalizedACSum, target_index: int = 0, tol: float = DEFAULT_TOL) -> RotationPlan:
    """One rotation ``exp(-i theta chi)`` with ``chi = sum_k (beta_k/omega) i P_k P_w``.

    ``chi`` squares to the identity, so ``R = cos(theta) I - i sin(theta) chi``
    has at most ``|A|`` Pauli words; ``2 theta = atan2(omega, beta_w)`` where
    ``omega`` is the norm of the non-target coefficients.
    """
    _check_target(s, target_index)
    w = s.words[target_index]
    bw = s.betas[target_index]
    omega = math.sqrt(sum(b * b for k, b in enumerate(s.betas) if k != target_index))
    if omega == 0.0:
        return RotationPlan("lcu", w, angle=0.0, expansion=((1.0 + 0j, PauliOperator.identity(w.n)),))
    theta = 0.5 * math.atan2(omega, bw)
    expansion = [(complex(math.cos(theta)), PauliOperator.identity(w.n))]
    for k, (p, b) in enumerate(zip(s.words, s.betas)):
        if k == target_index:
            continue
        t = multiply(p, w)
        t = t.with_phase(t.phase + 1)  # i P_k P_w, Hermitian
        d = -1j * math.sin(theta) * (b / omega) * t.sign
        if abs(d) > tol:
            expansion.append((d, t.word))
    return RotationPlan("lcu", w, angle=theta, expansion=tuple(expansion))


def rotate(h: PauliSum, gen: PauliOperator, theta: float) -> PauliSum:
    """``R^dag H R`` for ``R = exp(-i theta gen)`` and Hermitian ``gen``."""
    c2, s2 = math.cos(2 * theta), math.sin(2 * theta)
    acc: dict[tuple[int, int], float] = {}
    for p, c in h.items():
        if commutes(gen, p):
            acc[p.key] = acc.get(p.key, 0.0) + c
            continue
        acc[p.key] = acc.get(p.key, 0.0) + c2 * c
        q = multiply(gen, p)
        q = q.with_phase(q.phase + 1)
        acc[q.key] = acc.get(q.key, 0.0) + s2 * c * q.sign
    return PauliSum(h.n, acc, h.tol)


def conjugate_by_plan(plan: RotationPlan, h: PauliSum) -> PauliSum:
    """Symbolic ``R^dag H R``; results are pruned at ``h.tol``."""
    if h.n != plan.n:
        raise DimensionMismatch(f"plan acts on {plan.n} qubits, operator on {h.n}")
    if plan.kind == "sequence":
        for gen, theta in plan.steps:
            h = rotate(h, gen, theta)
        return h
    r = {w.key: d for d, w in plan.expansion}
    r_dag = {w.key: d.conjugate() for d, w in plan.expansion}
    acc = product_terms(h.n, product_terms(h.n, r_dag, h.terms), r)
    return _real_sum(h.n, acc, h.tol)


@dataclass(frozen=True)
class ReductionResult:
    word: PauliOperator
    sign: int
    norm: float
    plan: RotationPlan | None


def reduce_to_pauli(terms, target_index: int = 0, kind: str = "lcu",
                    tol: float = DEFAULT_TOL) -> ReductionResult:
    """Map an anticommuting sum onto ``sign * norm * word``.

    Words with zero coefficient (other than the target) are dropped first.
    """
    pairs = _coerce(terms)
    if not 0 <= target_index < len(pairs):
        raise IndexError(f"target index {target_index} out of range")
    target = pairs[target_index][0]
    kept = [(w, c) for k, (w, c) in enumerate(pairs) if k == target_index or abs(c) > tol]
    s = normalize(kept)
    if len(s.words) == 1:
        return ReductionResult(target, 1 if s.betas[0] > 0 else -1, s.norm, None)
    t = [w.key for w in s.words].index(target.key)
    if kind == "lcu":
        plan = build_lcu_plan(s, t, tol)
    elif kind == "sequence":
        plan = build_sequence_plan(s, t)
    else:
        raise ValueError(f"unknown plan kind {kind!r}")
    out = conjugate_by_plan(plan, s.as_sum())
    survivors = [(p, c) for p, c in out.items() if abs(c) > tol]
    if len(survivors) != 1 or survivors[0][0].key != target.key or abs(abs(survivors[0][1]) - 1) > 1e-12:
        raise ReductionFailed(f"conjugated sum is {out!r}, expected a single unit word {target}")
    return ReductionResult(target, 1 if survivors[0][1] > 0 else -1, s.norm, plan)

