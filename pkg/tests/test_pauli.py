import numpy as np
import pytest

from ncpauli import PauliOperator, PauliSum, commutes, jordan_product, multiply
from ncpauli.exceptions import DimensionMismatch, NotHermitian, ParseError
from ncpauli.verification import dense, dense_word

P = PauliOperator.from_string


def test_parse_and_label_roundtrip():
    for text in ["I", "XYZ", "-ZZ", "+iX", "-iY", "IIII"]:
        op = P(text)
        assert P(str(op)) == op


def test_qubit_zero_is_leftmost():
    op = P("XIZ")
    assert op.char(0) == "X"
    assert op.char(2) == "Z"
    assert op.support() == [0, 2]
    assert op.x == 0b100 and op.z == 0b001


def test_bad_characters_raise():
    with pytest.raises(ParseError):
        P("XQ")
    with pytest.raises(ParseError):
        P("i-X")


def test_single_qubit_products():
    assert multiply(P("X"), P("Y")) == P("iZ")
    assert multiply(P("Y"), P("X")) == P("-iZ")
    assert multiply(P("Z"), P("X")) == P("iY")
    assert multiply(P("Y"), P("Y")) == P("I")


def test_product_matches_dense():
    rng = np.random.default_rng(0)
    for _ in range(50):
        a = P("".join(rng.choice(list("IXYZ"), 3)))
        b = P("".join(rng.choice(list("IXYZ"), 3)))
        c = multiply(a, b)
        phase = 1j ** c.phase
        assert np.allclose(dense_word(a.label) @ dense_word(b.label), phase * dense_word(c.label))


def test_commutation():
    assert commutes(P("XX"), P("ZZ"))
    assert not commutes(P("XI"), P("ZI"))
    assert commutes(P("XYZ"), P("XYZ"))


def test_jordan_product():
    assert jordan_product(P("X"), P("Z")) is None
    assert jordan_product(P("XX"), P("ZZ")) == P("-YY")


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        multiply(P("X"), P("XX"))


def test_canonical_order_izxy():
    h = PauliSum.from_dict({"Y": 1.0, "X": 2.0, "Z": 3.0, "I": 4.0})
    assert [w.label for w in h.words] == ["I", "Z", "X", "Y"]


def test_sum_merges_duplicates_and_prunes():
    h = PauliSum.from_terms([(0.5, "XZ"), (0.25, "XZ"), (1.0, "ZZ"), (-1.0, "ZZ")])
    assert h.as_dict() == {"XZ": 0.75}


def test_sign_folded_into_coefficient():
    h = PauliSum.from_terms([(2.0, "-XY")])
    assert h.as_dict() == {"XY": -2.0}
    with pytest.raises(NotHermitian):
        PauliSum.from_terms([(1.0, "iX")])


def test_sum_product_matches_dense():
    a = PauliSum.from_dict({"XZ": 0.3, "ZI": -1.2, "YY": 0.5})
    b = PauliSum.from_dict({"ZX": 0.7, "II": 0.1, "XX": 2.0})
    s = a + b
    assert np.allclose(dense(s), dense(a) + dense(b))
    # product of two commuting Hermitian sums is Hermitian
    c = a * a
    assert np.allclose(dense(c), dense(a) @ dense(a))


def test_non_hermitian_product_rejected():
    with pytest.raises(NotHermitian):
        PauliSum.from_dict({"X": 1.0}) * PauliSum.from_dict({"Z": 1.0})


def test_text_roundtrip_is_exact():
    h = PauliSum.from_dict({"XZ": 0.1 + 0.2, "ZZ": -1 / 3})
    assert PauliSum.from_text(h.to_text()) == h


def test_identity_coefficient():
    h = PauliSum.from_dict({"II": 0.25, "ZZ": 1.0})
    assert h.identity_coefficient() == 0.25
    assert h.norm2() == pytest.approx(0.25 ** 2 + 1.0)
