import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intcomb.exact import symbol
from intcomb.lorentzian import (
    LorentzParams,
    commutation_residual,
    conjugate_parameter,
    entry_bound,
    genfun_check,
    phi_invariant,
    transfer_entry,
    transfer_matrix,
)

P = LorentzParams(F(1, 10), F(1, 2))


def test_entry_examples():
    g, a = F(1, 7), F(2, 3)
    p = LorentzParams(g, a)
    assert transfer_entry(p, 0, 0) == 1
    assert transfer_entry(p, 1, 1) == g * g * (a * a + 1)
    assert transfer_entry(p, 1, 0) == a * g


def test_entry_rejects_negative_state():
    with pytest.raises(ValueError, match="invalid state"):
        transfer_entry(P, -1, 0)


def test_symbolic_entries():
    g, a = symbol("g"), symbol("a")
    p = LorentzParams(g, a)
    assert transfer_entry(p, 1, 1) == g * g * (a * a + 1)
    assert transfer_entry(p, 2, 1) == (a * g) ** 3 * (1 + 2 / (a * a))


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=20), st.fractions(min_value=-3, max_value=3, max_denominator=20))
def test_matrix_symmetric(g, a):
    if not g or not a:
        return
    assert transfer_matrix(LorentzParams(g, a), 6).is_symmetric()


def test_genfun_examples():
    assert genfun_check(LorentzParams(F(1, 7), F(2, 3)), 2).passed
    assert genfun_check(P, 1).passed
    bad = genfun_check(LorentzParams(F(1, 7), F(2, 3)), 4, perturb=True)
    assert not bad.passed
    assert bad.details["first_discrepancy"]["monomial"] == "z^1 w^1"


def test_genfun_random_pairs_order_8():
    rng = random.Random(7)
    for _ in range(5):
        p = LorentzParams(F(rng.randint(1, 9), rng.randint(2, 30)), F(rng.randint(1, 9), rng.randint(1, 9)))
        assert genfun_check(p, 8).passed


def test_phi_examples():
    assert phi_invariant(LorentzParams(F(1, 10), 1)) == 10
    assert phi_invariant(P) == F(397, 20)
    g, a = symbol("g"), symbol("a")
    assert phi_invariant(LorentzParams(g, a)) == (1 - g * g * (1 - a * a)) / (a * g)


def test_phi_undefined():
    with pytest.raises(ValueError, match="phi undefined"):
        LorentzParams(0, F(1, 2))
    with pytest.raises(ValueError, match="phi undefined"):
        LorentzParams(F(1, 2), 0)


def test_conjugate_examples():
    assert conjugate_parameter(P, F(1, 2)) == P
    p = LorentzParams(F(1, 10), 1)
    assert conjugate_parameter(p, 1) == p
    lin = conjugate_parameter(P, 1)
    assert lin.g == F(20, 397) and phi_invariant(lin) == phi_invariant(P)
    q = conjugate_parameter(P, F(2, 3))
    assert q.numeric
    with mpmath.workdps(60):
        assert abs(phi_invariant(q) - mpmath.mpf(397) / 20) < mpmath.mpf(10) ** -50


def test_conjugate_rational_root():
    # phi(1/2, 1) = 2; with a' = 1/2 the quadratic has the rational root 2/3
    p = LorentzParams(F(1, 2), 1)
    q = conjugate_parameter(p, F(1, 2))
    assert not q.numeric and q.g == F(2, 3)
    assert phi_invariant(q) == phi_invariant(p)


def test_commutation_examples():
    assert commutation_residual(P, P, 20, 5).details["residual"] == 0
    good = commutation_residual(P, conjugate_parameter(P, F(2, 3)), 40, 10)
    assert good.passed and good.details["residual"] < 1e-10
    bad = commutation_residual(P, LorentzParams(F(1, 10), F(2, 3)), 40, 10)
    assert not bad.passed
    assert bad.details["residual"] >= 1000 * (bad.details["tail_bound"] + bad.details["tolerance"])
    assert "counterexample" in bad.details


def test_commutation_exact_rational_pair():
    p = LorentzParams(F(1, 2), 1)
    q = conjugate_parameter(p, F(1, 2))
    r = commutation_residual(p, q, 40, 10)
    assert r.passed and r.details["arithmetic"] == "exact"


def test_truncation_precondition():
    with pytest.raises(ValueError, match="truncation not controlled"):
        commutation_residual(LorentzParams(2, 1), P)


def test_entry_bound_holds():
    for p in (P, LorentzParams(F(1, 5), F(3, 2))):
        for i in range(25):
            for k in range(25):
                v = abs(transfer_entry(p, i, k))
                assert mpmath.mpf(v.numerator) / v.denominator <= entry_bound(p, i, k) * (1 + mpmath.mpf(10) ** -40)


def test_naive_bound_is_too_small():
    # (ag)^{2n} (1 + a^-2)^n underestimates T_nn once n >= 2
    a, g = F(1, 2), F(1, 10)
    n = 3
    naive = (a * g) ** (2 * n) * (1 + 1 / (a * a)) ** n
    assert transfer_entry(LorentzParams(g, a), n, n) > naive
