from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomcharge.atoms import atom_decomposition
from atomcharge.charge import (
    charge2,
    kl_in_n_basis,
    kostant_oracle,
    kostka_foulkes,
    kostka_number,
    kostka_table,
    llt_charge2,
    partitions_up_to,
    q_kostant,
)
from atomcharge.crystal import build_crystal
from atomcharge.poly import LaurentPoly
from atomcharge.rootlat import bruhat_leq, dominant_below, is_dominant, positive_roots, rho_pair2


def by_weight(C, values):
    return {C.weights[x]: values[x] for x in range(len(C))}


def test_rank_one_charges():
    C = build_crystal(1, [4])
    c = by_weight(C, [Fraction(charge2(C, x), 2) for x in C])
    got = [c[w] for w in [(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)]]
    assert got == [0, 1, 2, Fraction(3, 2), Fraction(1, 2)]


def test_highest_has_zero_charge():
    for n, lam in [(1, (3,)), (2, (2, 1)), (3, (3, 1, 1))]:
        C = build_crystal(n, lam)
        assert charge2(C, C.highest) == 0


def test_adjoint_zero_weight_charges():
    C = build_crystal(2, [2, 1])
    assert sorted(charge2(C, x) for x in C.elements_of_weight((1, 1, 1))) == [2, 4]


def test_kostka_examples():
    assert kostka_foulkes(2, (2, 1), (2, 1, 0)) == 1
    assert kostka_foulkes(2, (2, 1), (1, 1, 1)).to_text("q") == "q + q^2"
    assert kostka_foulkes(1, (4,), (3, 1)) == LaurentPoly({2: 1})


def test_kostka_rejects_bad_weights():
    with pytest.raises(ValueError):
        kostka_foulkes(2, (2, 1), (1, 2, 0))
    with pytest.raises(ValueError):
        kostka_foulkes(2, (2, 1), (2, 1, 1))
    with pytest.raises(ValueError):
        kostka_foulkes(2, (2, 1), (3, 0, 0))


def test_llt_examples():
    C = build_crystal(1, [4])
    mid = C.elements_of_weight((2, 2))[0]
    # the W-sum over {id, s} gives 2 + 2, divided by 2!
    assert llt_charge2(C, mid) == 4
    C = build_crystal(2, [2, 1])
    assert sorted(llt_charge2(C, x) for x in C.elements_of_weight((1, 1, 1))) == [2, 4]


def test_kostant_examples():
    assert kostant_oracle(2, (2, 1), (2, 1, 0)) == 1
    assert kostant_oracle(2, (2, 1), (1, 1, 1)) == LaurentPoly({2: 1, 4: 1})
    # (3,0,0) lies above (2,1,0)
    assert kostant_oracle(2, (2, 1), (3, 0, 0)) == 0


def test_q_kostant_small_values():
    # theta = a1 + a2 splits as itself or as a1 + a2
    assert q_kostant(2, (1, 1)) == LaurentPoly({2: 1, 4: 1})
    assert q_kostant(2, (0, 0)) == 1
    assert q_kostant(2, (-1, 0)) == 0
    # 2*alpha in rank one: only 2*alpha
    assert q_kostant(1, (2,)) == LaurentPoly({4: 1})


def test_kostka_number_small():
    assert kostka_number((2, 1), (1, 1, 1)) == 2
    assert kostka_number((3, 2, 1), (2, 2, 2)) == 2
    assert kostka_number((2, 2), (1, 1, 1, 1)) == 2
    assert kostka_number((3,), (1, 1, 1)) == 1
    assert kostka_number((2, 1), (3, 0, 0)) == 0


def test_n_basis_examples():
    e = kl_in_n_basis(2, (2, 1))
    assert sorted(e.terms) == [((1, 1, 1), 2), ((2, 1, 0), 0)]
    assert e.to_text() == "N_(2,1,0) + v^2 N_(1,1,1)"
    assert kl_in_n_basis(1, (4,)).terms == (((4, 0), 0),)


def test_n_basis_top_atom_has_exponent_zero():
    for n in (1, 2, 3):
        for lam in partitions_up_to(5, n + 1):
            e = kl_in_n_basis(n, lam)
            top = max(e.terms, key=lambda t: rho_pair2(t[0]))
            assert top[1] == 0


shapes = st.integers(1, 3).flatmap(
    lambda n: st.tuples(st.just(n), st.sampled_from(partitions_up_to(6, n + 1))))


@settings(max_examples=40, deadline=None)
@given(shapes)
def test_oracles_agree(shape):
    n, lam = shape
    C = build_crystal(n, lam)
    for mu, k in kostka_table(n, lam).items():
        assert k == kostant_oracle(n, lam, mu)
        assert k.nonnegative()
        assert k.eval_one() == kostka_number(C.lam, mu)
    for x in C:
        if is_dominant(C.weights[x]):
            assert charge2(C, x) == llt_charge2(C, x)


@settings(max_examples=40, deadline=None)
@given(shapes)
def test_dominant_charge_is_sum_of_eps(shape):
    n, lam = shape
    C = build_crystal(n, lam)
    for x in C:
        if is_dominant(C.weights[x]):
            assert charge2(C, x) == 2 * sum(C.eps_alpha(b, x) for b in positive_roots(n))


@settings(max_examples=40, deadline=None)
@given(shapes)
def test_charge_shifts_along_atoms(shape):
    n, lam = shape
    C = build_crystal(n, lam)
    dec = atom_decomposition(C)
    for a in dec:
        dom = [x for x in a.members if is_dominant(C.weights[x])]
        for x in dom:
            for y in dom:
                diff = rho_pair2(C.weights[x]) - rho_pair2(C.weights[y])
                assert charge2(C, y) - charge2(C, x) == diff


@settings(max_examples=40, deadline=None)
@given(shapes)
def test_n_basis_reexpansion(shape):
    n, lam = shape
    e = kl_in_n_basis(n, lam)
    for w, exp in e.terms:
        assert exp >= 0 and exp % 2 == 0
    top = build_crystal(n, lam).lam
    for mu in dominant_below(top):
        assert bruhat_leq(mu, top)
        assert e.coefficient_at(mu) == kostka_foulkes(n, lam, mu)
