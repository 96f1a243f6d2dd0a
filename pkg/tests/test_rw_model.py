import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import count_monomials, enumerate_partitions, expand_product, geometric
from rwhopf.errors import InputError, SizeCapExceeded
from rwhopf.rw_model import (
    RWModel,
    edge_injectivity_check,
    eq46_check,
    hmu_prime_series,
    induction_cells,
    induction_check,
    k_series,
    prop39_4_check,
    r_prime_series,
    run_grid,
    stable_range_report,
    tor_total_series,
)
from rwhopf.series import TruncSeries


def p(n):
    return len(enumerate_partitions(n)) if n >= 0 else 0


def model_degrees(k, n):
    return [j for j in range(1, n + 1) for _ in range(p(j - k))]


def test_r_prime_examples():
    assert list(r_prime_series(1, 3).coeffs) == [1, 1, 2, 4]
    assert r_prime_series(9, 6) == TruncSeries.one(6)


def test_hmu_prime_examples():
    assert list(hmu_prime_series(1, 4).coeffs) == [1, 0, 1, 0, 2]
    assert hmu_prime_series(4, 7) == TruncSeries.one(7)


def test_k_series_examples():
    assert list(k_series(1, 4).coeffs) == [1, 1, 1, 3, 5]
    assert k_series(6, 5) == TruncSeries.one(5)
    want = expand_product([[1, 1], [1, 0, 1], [1, 0, 0, 1], [1, 0, 0, 1], [1, 0, 0, 0, 1], [1, 0, 0, 0, 1], [1, 0, 0, 0, 1]], 4)
    assert list(k_series(1, 4).coeffs) == want


def test_series_against_direct_expansion():
    for k in range(-3, 5):
        n = 10
        degs = model_degrees(k, n)
        assert list(r_prime_series(k, n).coeffs) == expand_product([geometric(d, n) for d in degs], n)
        plus = [[1] + [0] * (d - 1) + [1] for d in degs]
        assert list(k_series(k, n).coeffs) == expand_product(plus, n)


def test_monomial_count_oracle():
    for k in range(-4, 9):
        rp = r_prime_series(k, 10)
        for d in range(11):
            assert count_monomials(model_degrees(k, d), d) == rp[d]


def test_model_generators_and_pi0():
    m = RWModel(-2, 6)
    assert m.generator_counts == {1: 3, 2: 5, 3: 7, 4: 11, 5: 15, 6: 22}
    assert m.pi0_rank == 2
    assert RWModel(0, 5).pi0_rank == 1
    assert RWModel(3, 5).pi0_rank == 0
    assert RWModel(3, 5).generator_counts == {3: 1, 4: 1, 5: 2}


def test_model_series_is_r_prime():
    for k in range(-3, 6):
        m = RWModel(k, 12)
        assert m.presented().poincare() == r_prime_series(k, 12)


def test_perturbed_model():
    m = RWModel(1, 6).perturbed({2: 1})
    assert m.generator_counts[2] == 2
    with pytest.raises(InputError):
        RWModel(1, 6).perturbed({1: -2}).generator_counts


def test_eq46_examples():
    assert eq46_check(1, 20)
    assert eq46_check(-2, 20)
    bad = k_series(1, 20) + TruncSeries.monomial(7, 20)
    assert not eq46_check(1, 20, kser=bad)


def test_hmu_is_r_prime_in_alpha_squared():
    for k in range(-3, 7):
        n = 20
        assert hmu_prime_series(k, n) == r_prime_series(k, n // 2).substitute_power(2, n)


def test_prop39_4_examples():
    assert prop39_4_check(1, 16)
    assert prop39_4_check(0, 16)
    assert prop39_4_check(-2, 12)
    # the torus factor is needed: drop it and the identity fails for k <= 0
    m = RWModel(0, 10)
    without = tor_total_series(m) * TruncSeries.binomial(1, 1, 10).pow(-1)
    assert without != k_series(1, 10)


def test_stable_range_report():
    assert [r["degree"] for r in stable_range_report(-1, 8)] == [0]
    assert [r["degree"] for r in stable_range_report(0, 8)] == [0]
    rows = stable_range_report(3, 10)
    assert [r["degree"] for r in rows] == [0, 1, 2, 3, 4, 5]
    rp = r_prime_series(3, 10)
    assert [r["connected_dim"] for r in rows] == [rp[d] for d in range(6)]
    assert stable_range_report(-2, 4)[0]["pi0"] == "F2[Z^2]"


# frozen from independent expansion: (k, ell) -> (tor1, k_next, higher)
FROZEN = {
    (-2, 3): (11, 57, 46),
    (0, 2): (3, 5, 2),
    (1, 6): (11, 33, 22),
    (2, 3): (2, 2, 0),
    (3, 7): (7, 9, 2),
    (-1, 4): (11, 51, 40),
}


@pytest.mark.parametrize("cell", sorted(FROZEN))
def test_induction_frozen_cells(cell):
    k, ell = cell
    r = induction_check(ell, k, 16, bar_cap=None)
    assert (r.tor1_dim, r.k_next_dim, r.higher_tor_sum) == FROZEN[cell]
    assert r.consistent and r.tor0_dim == 0
    assert r.m == ell - k + 1


def test_frozen_k_next_independently():
    for (k, ell), (_, k_next, _) in FROZEN.items():
        degs = model_degrees(k, ell + 1)
        plus = [[1] + [0] * (d - 1) + [1] for d in degs]
        assert expand_product(plus, ell + 1)[ell + 1] == k_next


def test_induction_tor1_is_partition_count():
    for k, ell in induction_cells(range(1, 7)):
        r = induction_check(ell, k, 16, bar_cap=None)
        if ell >= 1:
            assert r.tor1_dim == p(r.m)


def test_induction_degenerate_slice():
    r = induction_check(3, 2, 16)
    assert r.higher_tor_sum == 0 and r.tor1_dim == r.k_next_dim


def test_induction_negative_ell_uses_tor0():
    r = induction_check(-1, -1, 16)
    assert (r.tor1_dim, r.k_next_dim, r.tor0_dim) == (0, 1, 1)
    assert r.consistent


def test_induction_bar_path():
    r = induction_check(3, 1, 16)
    assert r.path == "analytic+bar"
    assert (r.bar_tor1_dim, r.bar_higher_tor_sum) == (r.tor1_dim, r.higher_tor_sum)
    r = induction_check(3, 1, 16, bar_cap=None)
    assert r.path == "analytic" and r.bar_tor1_dim is None


def test_induction_perturbed_model_reports_cell():
    bad = RWModel(0, 16).perturbed({2: 1})
    r = induction_check(3, 1, 16, model=bad)
    assert not r.consistent
    assert r.offending == ((2, 2),)
    bad = RWModel(0, 16).perturbed({4: -1})
    # a missing degree-4 generator first shows up at total degree 5
    assert induction_check(3, 1, 16, model=bad).consistent
    r = induction_check(4, 1, 16, model=bad)
    assert not r.consistent and (1, 4) in r.offending


def test_induction_truncation_too_small():
    with pytest.raises(InputError):
        induction_check(5, 1, 5)


def test_induction_report_json():
    d = induction_check(2, 1, 16).to_json()
    assert set(d) >= {"tor1_dim", "k_next_dim", "higher_tor_sum", "consistent", "offending", "path"}
    assert isinstance(d["offending"], list)


def test_induction_cells():
    cells = induction_cells([1])
    assert cells == [(-2, -2), (-1, -1), (0, 0), (1, 1), (2, 2)]
    assert len(induction_cells(range(1, 7))) == sum(m + 4 for m in range(1, 7))


def test_edge_examples():
    assert edge_injectivity_check(2, 4, 2000)
    assert edge_injectivity_check(5, 3, 2000)  # Q_3 is empty


def test_edge_corrupted_differential():
    def corrupt(bc):
        idx = bc.index(1, 4)
        x2 = idx[((2, 0, 0, 0),)]
        y = idx[((0, 0, 1, 0),)]
        # d[x|x] = [y] instead of [x^2]
        return bc.with_toggle(2, 4, 0, x2).with_toggle(2, 4, 0, y)

    assert not edge_injectivity_check(2, 4, 2000, mutate=corrupt)


def test_edge_size_cap():
    with pytest.raises(SizeCapExceeded):
        edge_injectivity_check(-3, 10, 50)


def _square(x):
    return x * x


def test_run_grid_order_independent_of_workers():
    cells = list(range(20))
    assert run_grid(_square, cells, 1) == run_grid(_square, cells, 4) == [c * c for c in cells]


@settings(max_examples=30, deadline=None)
@given(st.integers(-6, 10), st.integers(0, 18))
def test_eq46_property(k, n):
    assert eq46_check(k, n)


@settings(max_examples=20, deadline=None)
@given(st.integers(-4, 8), st.integers(0, 14))
def test_prop39_4_property(k, n):
    assert prop39_4_check(k, n)
