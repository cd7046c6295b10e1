import math

import numpy as np
import pytest

from ncpauli import (
    PauliOperator,
    PauliSum,
    extract_generators,
    full_spectrum,
    ground_search,
    projector,
    sector_energies,
    sector_values,
)
from ncpauli.exceptions import CapExceeded, TooManySymmetries
from ncpauli.instances import random_noncontextual
from ncpauli.spectrum import multiplicity_divisor
from ncpauli.structure import Decomposition, TermFactor
from ncpauli.verification import dense

H2 = PauliSum.from_dict({"ZZ": 0.5, "XI": 0.3, "XZ": 0.2})
ZI = PauliSum.from_dict({"ZI": 1.0})
# frozen from numpy.linalg.eigvalsh of the 4x4 matrix
H2_EIGS = [-0.7071067811865476, -0.5099019513592785, 0.5099019513592785, 0.7071067811865476]


def test_frozen_eigs_match_dense():
    assert np.allclose(np.linalg.eigvalsh(dense(H2)), H2_EIGS, atol=1e-15)


def test_sector_values_small():
    d = extract_generators(H2)
    v = sector_values(d, (1,))
    assert v.s0 == 0.0 and v.s == pytest.approx((0.5, 0.5))
    v = sector_values(d, (-1,))
    assert v.s == pytest.approx((0.5, 0.1))
    assert sector_energies(d, 0) == pytest.approx((-math.sqrt(0.5), math.sqrt(0.5)))
    assert sector_energies(d, 1) == pytest.approx((-math.sqrt(0.26), math.sqrt(0.26)))


def test_sector_values_trivial():
    d = extract_generators(ZI)
    assert sector_values(d, (1,)).s0 == 1.0
    assert sector_values(d, (-1,)).s0 == -1.0
    assert sector_energies(d, (-1,)) == (-1.0, -1.0)
    with pytest.raises(ValueError):
        sector_values(d, (1, 1))


def test_ground_search_small():
    g = ground_search(extract_generators(H2))
    assert g.bits == 0 and g.nu == (1,) and g.certified
    assert g.energy == pytest.approx(H2_EIGS[0], abs=1e-15)
    g = ground_search(extract_generators(ZI))
    assert g.nu == (-1,) and g.energy == -1.0


def test_ground_tie_breaks_to_smallest_mask():
    # energy nu_0 nu_1 is minimal at masks 0b01 and 0b10
    zz = PauliOperator.from_string("ZZ")
    d = Decomposition(2, (PauliOperator.from_string("ZI"), PauliOperator.from_string("IZ")), (),
                      factorization=(TermFactor(zz, 1.0, 0b11, None, 1),))
    assert ground_search(d).bits == 1
    assert ground_search(d, "anneal", seed=3).bits == 1


def test_brute_cap():
    d = extract_generators(PauliSum.from_dict({"ZII": 1.0, "IZI": 1.0, "IIZ": 1.0}))
    with pytest.raises(TooManySymmetries):
        ground_search(d, cap=2)
    with pytest.raises(TooManySymmetries):
        full_spectrum(d, cap=2)


def test_stabilizer_ground_matches_diagonal():
    rng = np.random.default_rng(20)
    for _ in range(20):
        n = int(rng.integers(1, 8))
        h = random_noncontextual(rng, n, g_size=n, a_size=0, scrambled=False)
        diag = np.diag(dense(h)).real
        assert ground_search(extract_generators(h)).energy == pytest.approx(diag.min(), abs=1e-12)


def test_full_spectrum_small():
    s = full_spectrum(extract_generators(H2))
    assert [m for _, m in s.entries] == [1, 1, 1, 1]
    assert np.allclose([v for v, _ in s.entries], H2_EIGS)
    s = full_spectrum(extract_generators(ZI))
    assert s.entries == ((-1.0, 2), (1.0, 2))
    assert s.k == (1, 1)


def test_full_spectrum_matches_dense_random():
    rng = np.random.default_rng(21)
    for i in range(60):
        n = int(rng.integers(1, 7))
        h = random_noncontextual(rng, n, integer=i % 2 == 0)
        s = full_spectrum(extract_generators(h))
        assert s.total_multiplicity == 2 ** n
        assert np.allclose(s.eigenvalues(), np.linalg.eigvalsh(dense(h)), atol=1e-9)
        assert s.divisible


def test_merge_reports_sector_counts():
    # ZZ + XZ with G = {IZ}: |s| = sqrt(2) in both sectors, so the blocks coincide
    w = PauliOperator.from_string
    d = Decomposition(2, (w("IZ"),), (w("ZZ"), w("XI")), factorization=(
        TermFactor(w("ZZ"), 1.0, 0, 0, 1), TermFactor(w("XZ"), 1.0, 1, 1, 1)))
    s = full_spectrum(d)
    assert s.entries == ((-math.sqrt(2), 2), (math.sqrt(2), 2))
    assert s.k == (2, 2)
    h = PauliSum.from_dict({"ZZ": 1.0, "XZ": 1.0})
    assert np.allclose(s.eigenvalues(), np.linalg.eigvalsh(dense(h)))


def test_divisor_formula():
    assert multiplicity_divisor(0) is None
    assert multiplicity_divisor(1) is None
    assert [multiplicity_divisor(a) for a in range(2, 8)] == [1, 1, 2, 2, 4, 4]


def test_projector_examples():
    z = PauliOperator.from_string("Z")
    assert projector((1,), [z]).as_dict() == {"I": 0.5, "Z": 0.5}
    assert projector(1, [z]).as_dict() == {"I": 0.5, "Z": -0.5}
    p = projector(1, [PauliOperator.from_string("IZ")])
    assert p.as_dict() == {"II": 0.5, "IZ": -0.5}
    m = dense(p)
    assert np.allclose(m @ m, m)


def test_projectors_sum_to_identity():
    gens = [PauliOperator.from_string(w) for w in ["ZZI", "XXX"]]
    total = PauliSum(3)
    for nu in range(4):
        total = total + projector(nu, gens)
    assert total == PauliSum.identity(3)


def test_projector_cap():
    gens = [PauliOperator.single(3, q, "Z") for q in range(3)]
    with pytest.raises(CapExceeded):
        projector(0, gens, cap=2)
