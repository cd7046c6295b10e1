import math

import numpy as np
import pytest

from ncpauli import (
    PauliOperator,
    PauliSum,
    build_lcu_plan,
    build_sequence_plan,
    conjugate_by_plan,
    normalize,
    reduce_to_pauli,
)
from ncpauli.exceptions import AllZero, NotAnticommuting, SingleWord
from ncpauli.instances import random_anticommuting_sum
from ncpauli.verification import dense, dense_word

P = PauliOperator.from_string


def test_normalize():
    s = normalize([(P("Z"), 0.6), (P("X"), 0.8)])
    assert s.norm == pytest.approx(1.0)
    assert s.betas == pytest.approx((0.6, 0.8))
    s = normalize(PauliSum.from_dict({"Z": 3.0, "X": 4.0}))
    assert s.norm == 5.0


def test_normalize_errors():
    with pytest.raises(NotAnticommuting):
        normalize([(P("XI"), 1.0), (P("IX"), 1.0)])
    with pytest.raises(AllZero):
        normalize([(P("X"), 0.0), (P("Z"), 0.0)])


def test_single_word_plan_refused():
    with pytest.raises(SingleWord):
        build_lcu_plan(normalize([(P("X"), 1.0)]))


def test_lcu_plan_pauli_x_z():
    plan = build_lcu_plan(normalize([(P("Z"), 0.6), (P("X"), 0.8)]))
    theta = 0.5 * math.atan2(0.8, 0.6)
    assert plan.angle == pytest.approx(theta)
    coeffs = {w.label: c for c, w in plan.expansion}
    assert coeffs["I"] == pytest.approx(math.cos(theta))
    assert coeffs["Y"] == pytest.approx(-1j * math.sin(theta))


def test_reduce_single_word_needs_no_plan():
    r = reduce_to_pauli([(P("XY"), -2.0)])
    assert (r.word.label, r.sign, r.norm, r.plan) == ("XY", -1, 2.0, None)


def test_both_plans_reduce_random_sums():
    rng = np.random.default_rng(12)
    for _ in range(50):
        n = int(rng.integers(1, 5))
        h = random_anticommuting_sum(rng, n)
        for kind in ("lcu", "sequence"):
            for t in range(len(h)):
                r = reduce_to_pauli(h, t, kind)
                assert r.word == h.words[t]
                assert r.norm == pytest.approx(math.sqrt(sum(c * c for c in h.coeffs)))


def test_lcu_branch_count_at_most_size():
    rng = np.random.default_rng(13)
    for _ in range(20):
        h = random_anticommuting_sum(rng, 4)
        plan = build_lcu_plan(normalize(h))
        assert len(plan.expansion) <= len(h)


def test_symbolic_matches_dense_conjugation():
    rng = np.random.default_rng(14)
    for _ in range(20):
        n = int(rng.integers(1, 4))
        s = normalize(random_anticommuting_sum(rng, n))
        o = s.as_sum()
        lcu = build_lcu_plan(s)
        r = sum(c * dense_word(w.label) for c, w in lcu.expansion)
        assert np.allclose(r.conj().T @ r, np.eye(1 << n), atol=1e-12)
        assert np.allclose(r.conj().T @ dense(o) @ r, dense(conjugate_by_plan(lcu, o)), atol=1e-12)
        seq = build_sequence_plan(s)
        u = np.eye(1 << n, dtype=complex)
        for gen, theta in seq.steps:
            a = gen.sign * dense_word(gen.label)
            u = u @ (np.cos(theta) * np.eye(1 << n) - 1j * np.sin(theta) * a)
        assert np.allclose(u.conj().T @ dense(o) @ u, dense(conjugate_by_plan(seq, o)), atol=1e-12)


def test_zero_coefficient_target_still_reachable():
    r = reduce_to_pauli([(P("Z"), 0.0), (P("X"), -2.0), (P("Y"), 0.0)], target_index=0)
    assert r.word.label == "Z"
    assert r.norm == 2.0
