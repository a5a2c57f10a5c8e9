import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from svqaoa.errors import InvalidArgumentError, ResourceLimitError
from svqaoa.pauli import (
    PauliString,
    commutes,
    count_commuting_bruteforce,
    f_dephasing,
    f_depolarizing,
    to_dense,
)

X = np.array([[0, 1], [1, 0]])
Y = np.array([[0, -1j], [1j, 0]])


def P(label):
    return PauliString.from_label(label)


def test_commutes_examples():
    assert not commutes(P("X"), P("Z"))
    assert commutes(P("XX"), P("ZZ"))
    assert commutes(P("XXX"), P("ZZI"))


def test_commutes_dimension_mismatch():
    with pytest.raises(InvalidArgumentError):
        commutes(P("X"), P("XZ"))


def test_to_dense_examples():
    assert np.allclose(to_dense(PauliString.identity(1)), np.eye(2))
    assert np.allclose(to_dense(P("X")), X)
    assert np.allclose(to_dense(PauliString.from_bits([1], [1])), Y)


def test_to_dense_qubit_order():
    # X on qubit 0 flips the least significant index bit.
    m = to_dense(P("XI"))
    assert m[1, 0] == 1 and m[0, 0] == 0


def test_to_dense_limit():
    with pytest.raises(ResourceLimitError):
        to_dense(PauliString.identity(11))


def test_xxx_zzi_dense_commutator():
    a, b = to_dense(P("XXX")), to_dense(P("ZZI"))
    assert np.allclose(a @ b, b @ a)


def all_strings(n):
    for letters in itertools.product("IXYZ", repeat=n):
        yield P("".join(letters))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_commutes_agrees_with_dense(n):
    strings = list(all_strings(n))
    dense = [to_dense(s) for s in strings]
    for a, da in zip(strings, dense):
        for b, db in zip(strings, dense):
            assert commutes(a, b) == np.allclose(da @ db, db @ da)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dense_is_unitary(n):
    for s in all_strings(n):
        m = to_dense(s)
        assert np.allclose(m @ m.conj().T, np.eye(1 << n))
        assert np.allclose(m, m.conj().T)


@given(st.integers(1, 12).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1), st.integers(0, 2**n - 1),
                        st.integers(0, 2**n - 1), st.integers(0, 2**n - 1))))
def test_commutes_symmetric_and_reflexive(args):
    n, ax, az, bx, bz = args
    a, b = PauliString(ax, az, n), PauliString(bx, bz, n)
    assert commutes(a, b) == commutes(b, a)
    assert commutes(a, a)
    assert commutes(a, PauliString.identity(n))


def test_weight_and_label():
    s = P("XIYZ")
    assert s.weight == 3
    assert s.label == "XIYZ"
    assert list(s.x_bits) == [1, 0, 1, 0]
    assert list(s.z_bits) == [0, 0, 1, 1]


def test_bruteforce_examples():
    xx = PauliString.all_x(2)
    assert count_commuting_bruteforce(xx, 1) == 2
    assert count_commuting_bruteforce(xx, 0, "Z") == 1
    assert count_commuting_bruteforce(xx, 2) == 5


def test_f_examples():
    assert f_depolarizing(7, 0) == 1
    assert f_depolarizing(2, 1) == 2
    assert f_depolarizing(2, 2) == 5
    assert f_dephasing(4, 2) == 6
    assert f_dephasing(4, 3) == 0
    assert f_dephasing(9, 0) == 1


def test_f_rejects_m_above_n():
    with pytest.raises(InvalidArgumentError):
        f_depolarizing(2, 3)
    with pytest.raises(InvalidArgumentError):
        f_dephasing(2, 3)


@pytest.mark.parametrize("n", range(1, 7))
def test_f_matches_bruteforce(n):
    sym = PauliString.all_x(n)
    for m in range(n + 1):
        assert f_depolarizing(n, m) == count_commuting_bruteforce(sym, m, "XYZ")
        assert f_dephasing(n, m) == count_commuting_bruteforce(sym, m, "Z")
        assert f_depolarizing(n, m) <= 3**m * comb(n, m)


def test_full_alphabet_total():
    ident = PauliString.identity(4)
    for m in range(5):
        assert count_commuting_bruteforce(ident, m) == 3**m * comb(4, m)


def test_f_exact_for_large_n():
    # beyond 64-bit range
    v = f_depolarizing(60, 30)
    assert isinstance(v, int) and v > 2**63
