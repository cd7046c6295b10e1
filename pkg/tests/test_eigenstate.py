import math

import numpy as np
import pytest

from ncpauli import (
    Decomposition,
    PauliOperator,
    PauliSum,
    anchor_state,
    build_eigenstate,
    extract_generators,
    rank_bound,
)
from ncpauli.eigenstate import StabilizerTableau, apply_word
from ncpauli.exceptions import DependentGenerators, NotCommuting
from ncpauli.structure import TermFactor
from ncpauli.instances import random_noncontextual
from ncpauli.verification import dense, dense_word

P = PauliOperator.from_string
H2 = PauliSum.from_dict({"ZZ": 0.5, "XI": 0.3, "XZ": 0.2})


def _stabilized(state, words):
    for w in words:
        m = (1j ** w.phase) * dense_word(w.label)
        assert np.allclose(m @ state, state, atol=1e-12)


def test_apply_word_matches_dense():
    rng = np.random.default_rng(30)
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    for text in ["XYZ", "-iZIY", "IIX", "YYY"]:
        op = P(text)
        assert np.allclose(apply_word(op, v), (1j ** op.phase) * dense_word(op.label) @ v)


def test_anchor_examples():
    t = anchor_state([P("IZ")], (1,), P("ZZ"), -1)
    assert [str(g) for g in t.generators] == ["IZ", "-ZZ"]
    psi = t.to_statevector()
    # qubit 0 in |1>, qubit 1 in |0>
    assert abs(abs(psi[0b10]) - 1) < 1e-12
    _stabilized(psi, t.generators)
    assert np.allclose(anchor_state([], (), P("Z"), 1).to_statevector(), [1, 0])
    t = anchor_state([P("ZI"), P("IZ")], (1, 1))
    assert np.allclose(t.to_statevector(), [1, 0, 0, 0])


def test_anchor_completion_flag():
    a = anchor_state([P("XXI")], (1,), n=3).to_statevector()
    b = anchor_state([P("XXI")], (1,), n=3, completion_signs=0b01).to_statevector()
    assert abs(np.vdot(a, b)) < 1e-12


def test_anchor_errors():
    with pytest.raises(NotCommuting):
        anchor_state([P("XI")], (1,), P("ZI"), 1)
    with pytest.raises(DependentGenerators):
        anchor_state([P("ZZ"), P("ZI")], (1, 1), P("IZ"), 1)


def test_tableau_rejects_minus_identity():
    with pytest.raises(DependentGenerators):
        StabilizerTableau(2, (P("ZZ"), P("-ZZ"))).to_statevector()


def test_small_eigenstate():
    d = extract_generators(H2)
    s = build_eigenstate(d, (1,), -1)
    assert s.energy == pytest.approx(-1 / math.sqrt(2))
    assert rank_bound(s) == 2
    psi = s.to_statevector()
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.norm(dense(H2) @ psi - s.energy * psi) < 1e-12


def test_stabilizer_hamiltonian_single_branch():
    h = PauliSum.from_dict({"ZI": 1.0, "IZ": 0.5, "ZZ": -0.3})
    d = extract_generators(h)
    for nu in range(4):
        s = build_eigenstate(d, nu, 1)
        assert s.chi_bound == 1
        psi = s.to_statevector()
        assert np.linalg.norm(dense(h) @ psi - s.energy * psi) < 1e-12


def test_generator_example_at_most_three_branches():
    rng = np.random.default_rng(31)
    g = ["ZXZ", "YIY"]
    a = ["YYI", "ZYX", "XIX"]
    d0 = Decomposition.from_generators(3, g, a)
    words = [d0.product(m, c).word for m in range(4) for c in (None, 0, 1, 2)]
    h = PauliSum.from_terms(zip(rng.normal(size=len(words)), words), n=3)
    d = extract_generators(h)
    assert d.a_size == 3 and d.g_size == 2
    m = dense(h)
    for nu in range(4):
        for sign in (1, -1):
            s = build_eigenstate(d, nu, sign)
            assert s.chi_bound <= 3
            psi = s.to_statevector()
            assert np.linalg.norm(m @ psi - s.energy * psi) < 1e-10


def test_stabilizer_conditions_and_determinism():
    rng = np.random.default_rng(32)
    for _ in range(30):
        n = int(rng.integers(2, 7))
        h = random_noncontextual(rng, n)
        d = extract_generators(h)
        nu = int(rng.integers(0, 1 << d.g_size))
        s = build_eigenstate(d, nu, -1)
        psi = s.to_statevector()
        signed = [g if v > 0 else -g for g, v in zip(d.g_generators, s.nu)]
        _stabilized(psi, signed)
        again = build_eigenstate(d, nu, -1)
        assert again.branches == s.branches and again.anchor == s.anchor
        assert np.array_equal(again.to_statevector(), psi)


def test_degenerate_sector_flagged():
    # s(nu) vanishes in the nu = -1 sector
    d = Decomposition(2, (P("IZ"),), (P("ZZ"), P("XI")), factorization=(
        TermFactor(P("XI"), 1.0, 0, 1, 1), TermFactor(P("XZ"), 1.0, 1, 1, 1)))
    s = build_eigenstate(d, 1, -1)
    assert s.degenerate and s.chi_bound == 1 and s.energy == 0.0
    h = PauliSum.from_dict({"XI": 1.0, "XZ": 1.0})
    psi = s.to_statevector()
    assert np.linalg.norm(dense(h) @ psi) < 1e-12
