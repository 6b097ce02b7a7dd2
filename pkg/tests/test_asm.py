from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intcomb.asm import (
    Asm,
    InvalidConfiguration,
    all_asms,
    all_sixvertex_configs,
    asm_count_formula,
    asm_stats,
    asm_to_osculating,
    asm_to_sixvertex,
    bijection_report,
    count_asms,
    enumerate_asms,
    lambda_det_identity,
    lambda_det_rhs,
    osculating_to_asm,
    sixvertex_to_asm,
)

CENTER = Asm(((0, 1, 0), (1, -1, 1), (0, 1, 0)))


def test_small_enumerations():
    assert [a.entries for a in enumerate_asms(1)] == [((1,),)]
    three = list(enumerate_asms(3))
    assert len(three) == 7
    assert sum(any(-1 in r for r in a.entries) for a in three) == 1
    assert len(list(enumerate_asms(5))) == 429


def test_enumeration_order_is_deterministic():
    a = [x.monotone_triangle() for x in enumerate_asms(4)]
    assert a == sorted(a)
    assert len(set(a)) == 42


def test_enumeration_size_guard():
    with pytest.raises(ValueError, match="size too large"):
        list(enumerate_asms(8))
    with pytest.raises(ValueError, match="size too large"):
        list(enumerate_asms(0))


def test_product_formula_independent_of_enumeration():
    # oracle: closed form evaluated on its own
    assert [asm_count_formula(n) for n in range(1, 8)] == [1, 2, 7, 42, 429, 7436, 218348]
    assert [count_asms(n) for n in range(1, 7)] == [asm_count_formula(n) for n in range(1, 7)]


def test_invalid_matrices_rejected():
    with pytest.raises(InvalidConfiguration):
        Asm(((1, 0), (1, 0)))
    with pytest.raises(InvalidConfiguration):
        Asm(((0, 1, 0), (1, 0, 0), (0, 1, 0)))
    with pytest.raises(InvalidConfiguration):
        Asm(((1, -1, 1), (0, 1, 0), (0, 1, 0)))


def test_sixvertex_examples():
    one = asm_to_sixvertex(Asm(((1,),)))
    assert sixvertex_to_asm(one) == Asm(((1,),))
    assert len(list(all_sixvertex_configs(3))) == 7
    # the brute-force configurations are exactly the images of ASMs
    assert {asm_to_sixvertex(a) for a in all_asms(3)} == set(all_sixvertex_configs(3))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_round_trips(n):
    for A in all_asms(n):
        assert sixvertex_to_asm(asm_to_sixvertex(A)) == A
        assert osculating_to_asm(asm_to_osculating(A)) == A
    r = bijection_report(n)
    assert r.passed and r.details["distinct_paths"] == count_asms(n)


def test_dwbc_violation_detected():
    cfg = asm_to_sixvertex(CENTER)
    bad = type(cfg)(cfg.n, ((False,) + cfg.horizontal[0][1:],) + cfg.horizontal[1:], cfg.vertical)
    with pytest.raises(InvalidConfiguration, match="not a DWBC configuration"):
        sixvertex_to_asm(bad)
    flipped = [list(r) for r in cfg.horizontal]
    flipped[1][1] = not flipped[1][1]
    bad = type(cfg)(cfg.n, tuple(map(tuple, flipped)), cfg.vertical)
    with pytest.raises(InvalidConfiguration, match="not a DWBC configuration"):
        sixvertex_to_asm(bad)


def test_osculation_examples():
    ident = asm_to_osculating(Asm.identity(4))
    assert ident.osculations() == []
    assert len(asm_to_osculating(CENTER).osculations()) == 1
    assert len({asm_to_osculating(a) for a in all_asms(4)}) == 42


def test_osculations_count_inversions_minus_negatives():
    for n in range(1, 6):
        for A in all_asms(n):
            st_ = asm_stats(A)
            assert len(asm_to_osculating(A).osculations()) == st_.inversions - st_.n_minus


def test_stats_examples():
    for n in range(1, 5):
        s = asm_stats(Asm.identity(n))
        assert (s.inversions, s.n_minus, s.m) == (0, 0, tuple(range(n - 1, -1, -1)))
    s = asm_stats(Asm(((0, 1), (1, 0))))
    assert (s.inversions, s.n_minus, s.m) == (1, 0, (0, 1))
    s = asm_stats(CENTER)
    assert (s.inversions, s.n_minus) == (2, 1)


def test_stats_invariants():
    for n in range(1, 6):
        for A in all_asms(n):
            s = asm_stats(A)
            assert s.inversions - s.n_minus >= 0
            assert sum(s.m) == n * (n - 1) // 2
            is_perm = s.n_minus == 0
            assert (sorted(s.m) == list(range(n))) == is_perm


def test_dihedral_symmetry():
    for n in range(1, 5):
        asms = set(all_asms(n))
        for A in asms:
            T = A.transpose()
            flipped = Asm(tuple(reversed(A.entries)))
            assert T in asms and flipped in asms
            assert asm_stats(T).n_minus == asm_stats(A).n_minus
            assert asm_stats(T).inversions == asm_stats(A).inversions
            assert asm_stats(flipped).n_minus == asm_stats(A).n_minus


def test_lambda_det_examples():
    assert lambda_det_identity(1).passed
    assert lambda_det_identity(2).passed
    rhs, count = lambda_det_rhs(4)
    assert count == 42
    for n in range(1, 6):
        assert lambda_det_identity(n).passed


def test_lambda_det_two_terms():
    rhs, count = lambda_det_rhs(2)
    assert count == 2
    assert rhs.terms == {(1, 0, 0): 1, (0, 1, 1): -1}


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from([-1, 0, 1]), min_size=9, max_size=9))
def test_random_matrices_validate_iff_in_enumeration(entries):
    rows = tuple(tuple(entries[3 * i: 3 * i + 3]) for i in range(3))
    try:
        A = Asm(rows)
    except InvalidConfiguration:
        assert rows not in {a.entries for a in all_asms(3)}
    else:
        assert A in set(all_asms(3))
