"""Exactness of the Pauli string algebra.

The dense-matrix homomorphism test at the bottom is the ground truth for
the whole phase convention: every product computed symbolically must
match the literal numpy matrix product.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from concatcode import PauliDimensionError, PauliString, eta
from concatcode.linalg import pauli_dense

P = PauliString.parse


def test_single_letter_products():
    assert P("X") * P("X") == P("I")
    assert P("X") * P("Y") == P("iZ")
    assert P("Y") * P("Z") == P("iX")
    assert P("Z") * P("X") == P("iY")
    assert P("X") * P("Z") == P("-iY")


def test_multiletter_product():
    assert P("ZZI") * P("XXX") == P("-YYX")


def test_product_length_mismatch():
    with pytest.raises(PauliDimensionError):
        P("XX") * P("X")
    with pytest.raises(PauliDimensionError):
        eta(P("XX"), P("X"))


def test_eta_examples():
    assert eta(P("XZZXI"), P("IXZZX")) == 1
    assert eta(P("X"), P("Z")) == -1
    assert eta(P("ZZI"), P("XII")) == -1


def test_weights():
    assert P("YYX").weight("Y") == 2
    assert P("ZZZZZZZZZ").weight("Z") == 9
    assert P("XZZXI").weight("X") == 2
    assert P("XZZXI").weight("I") == 1
    assert P("XYZII").weights() == (1, 1, 1)
    assert P("XYZII").pauli_weight() == 3


def test_strip_phase():
    assert P("-YYX").strip_phase() == P("YYX")
    assert P("iZ").strip_phase() == P("Z")
    assert P("II").strip_phase() == P("II")


def test_rendering_roundtrip():
    for text in ("XIZ", "-YYX", "iZ", "-iXY", "IIIII"):
        assert str(P(text)) == text


def test_parse_rejects_garbage():
    for bad in ("", "A", "x", "+-X", "i", "X Y"):
        with pytest.raises(ValueError):
            P(bad)


def test_phase_accessors():
    assert P("-YYX").phase == -1
    assert P("iZ").phase == 1j
    assert P("X").phase == 1
    assert P("X").is_hermitian
    assert P("-X").is_hermitian
    assert not P("iX").is_hermitian


def test_constructors():
    assert PauliString.identity(3) == P("III")
    assert PauliString.single(5, 2, "Y") == P("IIYII")
    with pytest.raises(ValueError):
        PauliString.single(2, 5, "X")
    with pytest.raises(ValueError):
        PauliString("XY", phase=0.5)


def test_neg_and_times_i():
    assert -P("X") == P("-X")
    assert P("X").times_i() == P("iX")
    assert P("XXX") * P("ZZZ") == P("iYYY")
    assert (P("XXX") * P("ZZZ")).times_i() == P("-YYY")


words = st.text(alphabet="IXYZ", min_size=1, max_size=8)
phases = st.sampled_from([1, 1j, -1, -1j])


@st.composite
def string_pairs(draw):
    w = draw(words)
    return (
        PauliString(w, draw(phases)),
        PauliString(draw(st.text(alphabet="IXYZ", min_size=len(w), max_size=len(w))), draw(phases)),
    )


@st.composite
def string_triples(draw):
    a, b = draw(string_pairs())
    c = PauliString(
        draw(st.text(alphabet="IXYZ", min_size=a.n, max_size=a.n)), draw(phases)
    )
    return a, b, c


@given(string_pairs())
def test_commutation_phase_relation(pair):
    a, b = pair
    ab = a * b
    ba = b * a
    if eta(a, b) == 1:
        assert ab == ba
    else:
        assert ab == -ba


@given(string_pairs())
def test_eta_symmetric(pair):
    a, b = pair
    assert eta(a, b) == eta(b, a)
    assert eta(a, a) == 1


@given(string_triples())
def test_associativity(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)


@given(words, phases)
def test_square_phase_vs_hermiticity(w, ph):
    p = PauliString(w, ph)
    assert ((p * p).phase == 1) == p.is_hermitian


@given(string_pairs())
def test_product_letters_ignore_phases(pair):
    a, b = pair
    stripped = a.strip_phase() * b.strip_phase()
    assert (a * b).letters == stripped.letters


@given(words, phases)
def test_strip_phase_idempotent(w, ph):
    p = PauliString(w, ph)
    assert p.strip_phase() == p.strip_phase().strip_phase()
    assert p.strip_phase().phase == 1
    assert p.strip_phase().letters == p.letters


@given(words, phases)
def test_parse_str_roundtrip(w, ph):
    p = PauliString(w, ph)
    assert PauliString.parse(str(p)) == p


@st.composite
def small_pairs(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    return (
        PauliString(draw(st.text(alphabet="IXYZ", min_size=n, max_size=n)), draw(phases)),
        PauliString(draw(st.text(alphabet="IXYZ", min_size=n, max_size=n)), draw(phases)),
    )


@given(small_pairs())
def test_product_matches_dense_matrices(pair):
    a, b = pair
    np.testing.assert_allclose(
        pauli_dense(a * b), pauli_dense(a) @ pauli_dense(b), atol=1e-12
    )


@given(small_pairs())
def test_eta_matches_dense_commutator(pair):
    a, b = pair
    da, db = pauli_dense(a), pauli_dense(b)
    if eta(a, b) == 1:
        np.testing.assert_allclose(da @ db, db @ da, atol=1e-12)
    else:
        np.testing.assert_allclose(da @ db, -db @ da, atol=1e-12)
