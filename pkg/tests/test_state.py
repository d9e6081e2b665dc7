from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import st_numeric_state, st_state
from symqec.algebra import I, INV_SQRT2, SQRT2, CoeffExpr, sym
from symqec.oracle import to_dense
from symqec.state import (State, e, ket_state, phase_equivalent, states_equal,
                          superpose, tensor)

alpha, beta, xi = sym("α"), sym("β"), sym("ξ")


def test_ket_state_examples():
    s = ket_state([0])
    assert s.n == 1 and dict(s.terms) == {(0,): 1}
    assert dict(ket_state([0, 1, 1]).terms) == {(0, 1, 1): 1}
    assert ket_state("11") == ket_state([1, 1])


@pytest.mark.parametrize("bad", [[], [2], [0, -1], "", [True]])
def test_ket_state_rejects_bad_bits(bad):
    with pytest.raises(ValueError):
        ket_state(bad)


def test_superpose_examples():
    psi = superpose([(alpha, ket_state([0])), (beta, ket_state([1]))])
    assert dict(psi.terms) == {(0,): alpha, (1,): beta}
    assert superpose([(xi, psi), (-xi, psi)]).is_zero()
    doubled = superpose([(INV_SQRT2, ket_state([0])), (INV_SQRT2, ket_state([0]))])
    assert dict(doubled.terms) == {(0,): SQRT2}


def test_superpose_width_mismatch():
    with pytest.raises(ValueError):
        superpose([(1, ket_state([0])), (1, ket_state([0, 1]))])


def test_tensor_distributes_over_weighted_sum():
    # e[a] ⊗ ξ(α e[x] + β e[y]) -> ξα e[a,x] + ξβ e[a,y], with a=1, x=0, y=1
    inner = xi * (alpha * e(0) + beta * e(1))
    out = tensor(e(1), inner)
    assert dict(out.terms) == {(1, 0): xi * alpha, (1, 1): xi * beta}
    assert e(1, inner) == out


def test_tensor_basis():
    assert tensor(e(0), e(1)) == e(0, 1)


def test_tensor_of_uniform_pairs_brute_force():
    plus = e(0) + e(1)
    expected = State(2, [(bits, 1) for bits in product((0, 1), repeat=2)])
    assert tensor(plus, plus) == expected
    assert len(tensor(plus, plus)) == 4


def test_nested_ket_flattens():
    assert e(0, e(1), 1) == e(0, 1, 1)
    assert states_equal(e(0, e(1), 1), ket_state([0, 1, 1]))
    assert all(isinstance(b, int) for ket in e(0, e(1, e(0)), 1).terms for b in ket)


def test_states_equal_examples():
    assert not states_equal(e(0), e(1))
    psi = alpha * e(0) + beta * e(1)
    assert states_equal(psi, psi + CoeffExpr() * e(1))
    assert psi == State(1, [((0,), alpha), ((1,), beta), ((1,), 0)])


def test_zero_state_propagates():
    z = State.zero(2)
    assert tensor(z, e(1)).is_zero() and tensor(z, e(1)).n == 3
    assert (z + e(0, 1)) == e(0, 1)
    assert z.to_text() == "0"


def test_phase_equivalent_examples():
    psi = alpha * e(0) + beta * e(1)
    assert phase_equivalent(psi, I * psi)
    lam = sym("a8") + sym("b8") + sym("c8") - I * sym("d8")
    assert phase_equivalent(psi * lam, psi)
    assert not phase_equivalent(e(0) + e(1), e(0) - e(1))
    assert not phase_equivalent(e(0), e(0, 0))
    assert not phase_equivalent(psi, State.zero(1))
    assert phase_equivalent(State.zero(1), State.zero(1))


def _all_pairs(a, b):
    if a.support() != b.support():
        return False
    kets = list(a.terms)
    return all(a.coeff(k) * b.coeff(m) == a.coeff(m) * b.coeff(k) for k in kets for m in kets)


@settings(max_examples=60, deadline=None)
@given(st_state(n=2), st_state(n=2))
def test_phase_equivalent_pivot_matches_all_pairs(a, b):
    assert phase_equivalent(a, b) == _all_pairs(a, b)


@given(st_state(), st.data())
def test_phase_equivalent_reflexive_symmetric(a, data):
    assert phase_equivalent(a, a)
    b = data.draw(st_state(n=a.n))
    assert phase_equivalent(a, b) == phase_equivalent(b, a)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st_numeric_state(n), st_numeric_state(n),
                                                     st.sampled_from([1, -1, I, -I, INV_SQRT2]))))
def test_phase_equivalent_agrees_with_numeric_check(args):
    a, b, phase = args
    for other in (b, a * phase):
        va = to_dense(a, {}).amplitudes
        vb = to_dense(other, {}).amplitudes
        numeric = abs(abs(np.vdot(va, vb)) - np.linalg.norm(va) * np.linalg.norm(vb)) < 1e-12
        if np.linalg.norm(va) == 0 or np.linalg.norm(vb) == 0:
            numeric = np.linalg.norm(va) == np.linalg.norm(vb)
        assert phase_equivalent(a, other) == numeric


@settings(deadline=None)
@given(st_state(max_terms=3), st_state(max_terms=3), st_state(max_terms=3))
def test_tensor_associative(a, b, c):
    assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))


@settings(deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st_state(n=n), st_state(n=n))), st_state())
def test_tensor_bilinear(pair, c):
    a, b = pair
    x, y = alpha + 1, beta * I
    left = superpose([(x, a), (y, b)])
    assert tensor(left, c) == superpose([(x, tensor(a, c)), (y, tensor(b, c))])
    assert tensor(c, left) == superpose([(x, tensor(c, a)), (y, tensor(c, b))])


def test_text_format():
    psi = alpha * e(0) + beta * e(1)
    assert psi.to_text() == "α·e[0] + β·e[1]"
    assert (INV_SQRT2 * (e(0) - e(1))).to_text() == "(1/2)√2·e[0] − (1/2)√2·e[1]"
    assert ((alpha + beta) * e(1, 0)).to_text() == "(α+β)·e[1,0]"
    assert (-e(0, 1)).to_text() == "−e[0,1]"


@given(st_state())
def test_json_round_trip_and_order(s):
    data = s.to_json()
    kets = [t["ket"] for t in data["terms"]]
    assert kets == sorted(kets)
    assert State.from_json(data) == s


def test_immutable():
    with pytest.raises(AttributeError):
        e(0).n = 3
    with pytest.raises(TypeError):
        e(0).terms[(1,)] = alpha
