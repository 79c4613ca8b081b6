from itertools import product as iproduct

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pentaloss.pauli import (
    DimensionError,
    PauliOperator,
    StabilizerGroup,
    commutes,
    conjugate_by_cz,
    coset_elements,
    gf2_rank,
    in_span,
    multiply,
    product,
)

P = PauliOperator.from_string


def paulis(n):
    letters = st.text(alphabet="IXYZ", min_size=n, max_size=n)
    signs = st.sampled_from(["+", "-", "+i", "-i"])
    return st.builds(lambda s, body: P(s + body), signs, letters)


def test_single_qubit_products():
    assert multiply(P("X"), P("Y")) == P("+iZ")
    assert multiply(P("Y"), P("Z")) == P("+iX")
    assert multiply(P("Z"), P("X")) == P("+iY")
    assert multiply(P("Y"), P("X")) == P("-iZ")
    assert multiply(P("X"), P("X")) == P("I")


def test_string_round_trip_and_letters():
    op = P("-iXYZI")
    assert str(op) == "-iXYZI"
    assert op.letters() == "XYZI"
    assert op.weight == 3
    assert op.support == (1, 2, 3)
    assert str(P("ZYYZI")) == "+ZYYZI"


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        multiply(P("XX"), P("XXX"))


def test_commutation_examples():
    assert commutes(P("XX"), P("ZZ"))
    assert not commutes(P("XI"), P("ZI"))
    assert commutes(P("XYZ"), P("XYZ"))


def test_cz_conjugation_table():
    assert conjugate_by_cz(P("XI"), 1, 2) == P("XZ")
    assert conjugate_by_cz(P("IX"), 1, 2) == P("ZX")
    assert conjugate_by_cz(P("ZI"), 1, 2) == P("ZI")
    assert conjugate_by_cz(P("XX"), 1, 2) == P("YY")
    assert conjugate_by_cz(P("YX"), 1, 2) == P("-XY")


def test_cz_bad_indices():
    with pytest.raises((IndexError, ValueError)):
        conjugate_by_cz(P("XI"), 1, 1)
    with pytest.raises((IndexError, ValueError)):
        conjugate_by_cz(P("XI"), 1, 3)


def test_in_span_with_certificate():
    group = StabilizerGroup.from_strings(["XX", "ZZ"])
    res = in_span(group, (), P("-YY"))
    assert res.contained and res.exact
    assert sorted(res.generators) == [0, 1]
    assert not in_span(group, (), P("XI"))


def test_stabilizer_group_rejects_anticommuting():
    with pytest.raises(ValueError):
        StabilizerGroup.from_strings(["XI", "ZI"])


def test_stabilizer_group_rejects_dependent():
    with pytest.raises(ValueError):
        StabilizerGroup.from_strings(["XX", "ZZ", "-YY"])


def test_group_elements_and_membership():
    group = StabilizerGroup.from_strings(["XX", "ZZ"])
    assert group.order == 4
    assert P("-YY") in group
    assert P("YY") not in group
    assert group.contains_up_to_sign(P("YY"))


def test_coset_requires_commuting_rep():
    group = StabilizerGroup.from_strings(["ZZI", "IZZ"])
    assert len(coset_elements(group, P("XXX"))) == 4
    with pytest.raises(ValueError):
        coset_elements(group, P("XII"))


def test_gf2_rank():
    assert gf2_rank([0b011, 0b110, 0b101]) == 2
    assert gf2_rank([]) == 0


def _brute_in_span(gens, target):
    for bits in iproduct((0, 1), repeat=len(gens)):
        acc = PauliOperator.identity(target.n_qubits)
        for b, g in zip(bits, gens):
            if b:
                acc = acc * g
        if acc.equal_up_to_phase(target):
            return True
    return False


@settings(max_examples=60, deadline=None)
@given(st.lists(paulis(3), min_size=1, max_size=4), paulis(3))
def test_in_span_matches_brute_force(gens, target):
    gens = [g.canonical() for g in gens]
    assert bool(in_span(gens, (), target.unsigned())) == _brute_in_span(gens, target)


@settings(max_examples=100, deadline=None)
@given(paulis(3), paulis(3))
def test_product_matches_matrices(a, b):
    assert np.allclose((a * b).to_matrix(), a.to_matrix() @ b.to_matrix())


@settings(max_examples=100, deadline=None)
@given(paulis(3), paulis(3))
def test_commute_or_anticommute(a, b):
    ab, ba = a * b, b * a
    if commutes(a, b):
        assert ab == ba
    else:
        assert ab == -ba


@settings(max_examples=100, deadline=None)
@given(paulis(3), paulis(3), paulis(3))
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=100, deadline=None)
@given(paulis(4))
def test_hermitian_squares_to_identity(a):
    h = a.canonical()
    assert (h * h).is_identity and (h * h).phase == 0


@settings(max_examples=80, deadline=None)
@given(paulis(3), st.sampled_from([(1, 2), (1, 3), (2, 3), (3, 1)]))
def test_cz_conjugation_matches_matrices(a, pair):
    i, j = pair
    n = 3
    dim = 2**n
    cz = np.eye(dim)
    for k in range(dim):
        # qubit 1 is the most significant bit of the basis index
        bi = (k >> (n - i)) & 1
        bj = (k >> (n - j)) & 1
        if bi and bj:
            cz[k, k] = -1
    assert np.allclose(conjugate_by_cz(a, i, j).to_matrix(), cz @ a.to_matrix() @ cz)


@settings(max_examples=50, deadline=None)
@given(paulis(4))
def test_cz_is_an_involution(a):
    assert conjugate_by_cz(conjugate_by_cz(a, 2, 4), 2, 4) == a


def test_product_helper():
    assert product([P("XI"), P("IX"), P("ZZ")]) == P("-YY")
