import numpy as np
import pytest

from ncpauli import (
    Decomposition,
    PauliOperator,
    PauliSum,
    build_graph,
    clique_partition,
    enumerate_closure,
    extract_generators,
    find_witness,
    is_noncontextual,
    max_support_bound,
    table_of_bounds,
    to_dot,
    universally_commuting,
)
from ncpauli.exceptions import CapExceeded, ContextualSet, NotGenerated
from ncpauli.instances import random_noncontextual
from ncpauli.structure import factorize_term

P = PauliOperator.from_string
SIX = ["XI", "YI", "ZI", "IX", "IY", "IZ"]
H2 = PauliSum.from_dict({"ZZ": 0.5, "XI": 0.3, "XZ": 0.2})


def test_six_single_qubit_paulis_are_contextual():
    assert not is_noncontextual(SIX)
    a, b, c = find_witness(build_graph(SIX))
    assert a.commutes(b) and b.commutes(c) and not a.commutes(c)


def test_generator_example_is_noncontextual():
    g = ["ZXZ", "YIY"]
    a = ["YYI", "ZYX", "XIX"]
    for x in g:
        for y in g + a:
            assert P(x).commutes(P(y))
    for i, x in enumerate(a):
        for y in a[i + 1:]:
            assert not P(x).commutes(P(y))
    d = Decomposition.from_generators(3, g, a)
    closure = enumerate_closure(d)
    assert len(closure) == 16
    assert is_noncontextual(list(closure))


def test_commuting_set_is_noncontextual():
    assert is_noncontextual(["ZZ", "ZI", "IZ", "XX", "YY"])


def test_universal_vertices():
    g = build_graph(["ZI", "XZ", "YZ", "IZ"])
    assert [w.label for w in universally_commuting(g)] == ["IZ"]


def test_cliques_sorted_and_disjoint():
    cliques = clique_partition(build_graph(H2))
    assert [[w.label for w in c] for c in cliques] == [["ZZ"], ["XI", "XZ"]]
    with pytest.raises(ContextualSet) as err:
        clique_partition(build_graph(SIX))
    assert err.value.witness is not None


def test_extract_small_example():
    d = extract_generators(H2)
    assert [w.label for w in d.g_generators] == ["IZ"]
    assert [w.label for w in d.a_reps] == ["ZZ", "XI"]
    table = {f.word.label: (f.g_mask, f.clique, f.sign) for f in d.factorization}
    assert table == {"ZZ": (0, 0, 1), "XI": (0, 1, 1), "XZ": (1, 1, 1)}
    assert d.reconstruct() == H2


def test_extract_stabilizer_hamiltonian():
    h = PauliSum.from_dict({"ZI": 1.0, "IZ": -0.5, "ZZ": 0.25, "II": 2.0})
    d = extract_generators(h)
    assert d.a_size == 0
    assert d.g_size == 2
    assert d.reconstruct().isclose(h)


def test_extract_rejects_contextual():
    with pytest.raises(ContextualSet):
        extract_generators(PauliSum.from_terms([(1.0, w) for w in SIX]))


def test_factorization_signs_are_phase_exact():
    rng = np.random.default_rng(11)
    for _ in range(100):
        h = random_noncontextual(rng, int(rng.integers(1, 6)))
        d = extract_generators(h)
        for f in d.factorization:
            prod = d.product(f.g_mask, f.clique)
            assert prod.word == f.word
            assert prod.sign == f.sign
        assert d.reconstruct().isclose(h, 1e-12)


def test_factorize_outside_span():
    d = Decomposition.from_generators(2, ["ZI"], [])
    with pytest.raises(NotGenerated):
        factorize_term(P("XI"), d)


def test_closure_size_law_random():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        d = extract_generators(random_noncontextual(rng, n))
        assert len(enumerate_closure(d)) == (1 << d.g_size) * (1 + d.a_size)


def test_closure_cap():
    d = Decomposition.from_generators(3, ["ZII", "IZI"], [])
    with pytest.raises(CapExceeded):
        enumerate_closure(d, cap=3)


def test_support_bound_validates():
    assert max_support_bound(1, 3, 2) == 8
    with pytest.raises(ValueError):
        max_support_bound(1, 4, 2)
    with pytest.raises(ValueError):
        max_support_bound(3, 0, 2)


def test_bounds_maximum_is_twice_diagonal():
    for n in range(1, 8):
        rows = table_of_bounds(n, depth=None)
        best = max(rows, key=lambda r: r.max_terms)
        assert best.max_terms == 2 ** (n + 1)
        assert (best.g_size, best.a_size) == (n - 1, 3)


def test_dot_export_clusters():
    text = to_dot(PauliSum.from_dict({"IZ": 1.0, "ZZ": 0.5, "XI": 0.3, "XZ": 0.2}))
    assert text.startswith("graph compatibility {")
    assert "cluster_universal" in text
    assert "cluster_clique_0" in text and "cluster_clique_1" in text
    assert '"XI" -- "XZ"' in text
