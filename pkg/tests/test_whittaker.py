from fractions import Fraction as F

import pytest

from intcomb.whittaker import (
    CartanData,
    ConePath,
    HighestWeight,
    NonGenericWeight,
    cartan_type_a,
    e_action,
    gram_certificate,
    kostant_partition,
    pairing,
    path_weight,
    positive_roots,
    vertex_value,
    whittaker_defect,
    whittaker_expansion,
)

A1 = cartan_type_a(1)
A2 = cartan_type_a(2)
B2 = CartanData(((2, -2), (-1, 2)))
G2 = CartanData(((2, -1), (-3, 2)))


def sl2_oracle(lam, mu, K):
    # e f^j|l> = j (l + 1 - j) f^{j-1}|l>, so c_j j (l + 1 - j) = mu c_{j-1}
    c = [F(1)]
    for j in range(1, K + 1):
        c.append(mu * c[-1] / (j * (lam + 1 - j)))
    return c


def test_a1_vertex_values():
    hw = HighestWeight((F(5, 7),), (1,))
    lam = F(5, 7)
    for j in range(1, 8):
        assert vertex_value(A1, hw, (j,)) == j * (lam + 1 - j)


def test_non_generic_weight():
    hw = HighestWeight((0,), (1,))
    with pytest.raises(NonGenericWeight, match="non-generic weight"):
        vertex_value(A1, hw, (1,))
    with pytest.raises(NonGenericWeight):
        whittaker_defect(A1, HighestWeight((2,), (1,)), 4)


def test_empty_path():
    assert path_weight(A2, HighestWeight((1, 1), (1, 1)), ()) == 1
    assert ConePath(()).vertices(2) == []


@pytest.mark.parametrize("lam,mu", [(F(5, 7), F(1)), (F(-3, 11), F(2, 3))])
def test_a1_coefficients_match_recursion(lam, mu):
    v = whittaker_expansion(A1, HighestWeight((lam,), (mu,)), 6)
    oracle = sl2_oracle(lam, mu, 6)
    for j in range(7):
        assert v[(1,) * j] == oracle[j]


def test_depth_zero():
    assert whittaker_expansion(A2, HighestWeight((1, 2), (1, 1)), 0) == {(): 1}


def test_noncommutative_coefficients():
    v = whittaker_expansion(A2, HighestWeight((F(5, 7), F(3, 2)), (1, 1)), 2)
    assert v[(1, 2)] == F(28, 135) and v[(2, 1)] == F(98, 225)


def test_e_action_examples():
    hw = HighestWeight((F(5, 7), F(3, 2)), (1, 1))
    assert e_action(A2, hw, 1, (1,)) == {(): F(5, 7)}
    assert e_action(A2, hw, 2, (1,)) == {}
    # e_1 f_1 f_2 |l> = f_2 (l_1 + 1)... the commutator acts on f_2|l> with coroot value l_1 - C_12
    assert e_action(A2, hw, 1, (1, 2)) == {(2,): F(5, 7) + 1}
    assert e_action(A2, hw, 1, (2, 1)) == {(2,): F(5, 7)}


def test_pairing_examples():
    hw = HighestWeight((F(5, 7),), (1,))
    assert pairing(A1, hw, (), ()) == 1
    assert pairing(A1, hw, (1,), (1,)) == F(5, 7)
    assert pairing(A1, hw, (1, 1), (1, 1)) == 2 * F(5, 7) * (F(5, 7) - 1)
    assert pairing(A2, HighestWeight((1, 1), (1, 1)), (1,), (2,)) == 0


@pytest.mark.parametrize(
    "cd,lam,mu,K",
    [
        (A1, (F(5, 7),), (1,), 6),
        (A1, (F(-3, 11),), (F(2, 3),), 6),
        (A2, (F(5, 7), F(3, 2)), (1, 1), 4),
        (A2, (F(-2, 5), F(7, 3)), (F(1, 2), 3), 4),
        (cartan_type_a(3), (F(5, 7), F(3, 2), F(-2, 5)), (1, 1, 1), 3),
    ],
)
def test_defect_vanishes(cd, lam, mu, K):
    r = whittaker_defect(cd, HighestWeight(lam, mu), K)
    assert r.passed
    assert r.details["nonzero_pairings"] == 0


def test_perturbed_coefficient_fails():
    r = whittaker_defect(A2, HighestWeight((F(5, 7), F(3, 2)), (1, 1)), 4, perturb=(1, 2))
    assert not r.passed and r.status.upper() == "FAIL"
    assert r.details["nonzero_pairings"] > 0


def test_positive_roots():
    assert sorted(positive_roots(A2)) == [(0, 1), (1, 0), (1, 1)]
    assert len(positive_roots(B2)) == 4
    assert len(positive_roots(G2)) == 6
    assert len(positive_roots(cartan_type_a(3))) == 6


def test_gram_rank_matches_kostant():
    hw = HighestWeight((F(5, 7), F(3, 2)), (1, 1))
    cert = gram_certificate(A2, hw, 3)
    for row in cert:
        assert row["rank"] == row["dimension"]
    dims = {tuple(r["weight"]): r["dimension"] for r in cert}
    assert dims[(1, 1)] == 2 and dims[(2, 1)] == 2 and dims[(2, 0)] == 1
    assert kostant_partition(A2, (1, 1)) == 2


def test_gram_rank_drops_at_special_weight():
    # l_1 = 1 is dominant integral: f_1^2 |l> is singular, so weight (2, 0) is degenerate
    cert = gram_certificate(A2, HighestWeight((1, F(3, 2)), (1, 1)), 2)
    row = next(r for r in cert if r["weight"] == [2, 0])
    assert row["rank"] < row["dimension"]


def test_non_simply_laced():
    for cd, lam in ((B2, (F(5, 7), F(3, 2))), (G2, (F(5, 7), F(3, 2)))):
        assert whittaker_defect(cd, HighestWeight(lam, (1, 1)), 3).passed


def test_not_finite_type():
    with pytest.raises(ValueError):
        CartanData(((2, -2), (-2, 2)))


def test_endpoint_determined_by_letters():
    for w in [(1, 2, 2), (2, 1, 2), (2, 2, 1)]:
        p = ConePath(w)
        assert p.endpoint(2) == (1, 2)
        assert p.vertices(2)[-1] == (1, 2)
