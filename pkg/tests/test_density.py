from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psibar import atlas, core, density
from psibar.errors import CapacityError

CS = (Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(2))


def test_as_exact():
    assert density.as_exact(0) == 0
    assert density.as_exact("0.25") == Fraction(1, 4)
    assert density.as_exact("-1/2") == Fraction(-1, 2)
    assert density.as_exact(Fraction(3, 7)) == Fraction(3, 7)
    for bad in (0.5, 1.0, float("nan")):
        with pytest.raises(TypeError):
            density.as_exact(bad)
    with pytest.raises(TypeError):
        density.as_exact(True)
    with pytest.raises(ValueError):
        density.as_exact("elephant")
    with pytest.raises(ValueError):
        density.as_exact("1/0")


def test_in_v_examples():
    assert density.in_v(12, 0) is True
    assert density.in_v(3, 0) is False
    for k in range(0, 12):
        n = 1 << (k + 1)
        assert density.in_v(n, 0) is True
    with pytest.raises(ValueError):
        density.in_v(0, 0)
    with pytest.raises(TypeError):
        density.in_v(5, 0.5)


@given(
    st.integers(1, 10**5),
    st.fractions(min_value=-3, max_value=3, max_denominator=7),
    st.integers(1, 5),
)
@settings(max_examples=200)
def test_in_v_representation_independent(n, c, scale):
    # u/v and (s*u)/(s*v) must decide identically
    scaled = Fraction(c.numerator * scale, c.denominator * scale)
    assert density.in_v(n, c) == density.in_v(n, scaled)


def test_odd_part_examples():
    assert density.odd_part_in_v(core.factorize(3), 0) is True
    assert density.odd_part_in_v(core.factorize(9), 0) is True
    assert density.odd_part_in_v(core.factorize(27), 0) is False
    with pytest.raises(ValueError):
        density.odd_part_in_v(core.factorize(1), 0)
    with pytest.raises(ValueError):
        density.odd_part_in_v(core.factorize(6), 0)


@given(st.integers(1, 10**6), st.sampled_from(CS))
@settings(max_examples=300)
def test_even_membership_decided_by_odd_part(n, c):
    n = 2 * n
    t = n >> ((n & -n).bit_length() - 1)
    if t == 1:
        return
    assert density.in_v(n, c) == density.odd_part_in_v(core.factorize(t), c)


@given(st.integers(1, 5000), st.integers(1, 10), st.sampled_from((0, 1)))
@settings(max_examples=200)
def test_membership_independent_of_two_power(t, alpha, c):
    t = 2 * t - 1  # odd
    base = density.in_v(2 * t, c)
    dt = core.big_d(t)
    assert density.in_v(t << alpha, c, lam=alpha - 1 + dt) == base


def test_even_divisor_closure():
    for n in range(2, 4000, 2):
        if not density.in_v(n, 0):
            continue
        for d in range(2, n + 1, 2):
            if n % d == 0:
                assert density.in_v(d, 0), (n, d)


def test_in_t_examples():
    assert density.in_t(29, 0) is True
    assert density.in_t(31, 0) is False
    assert density.in_t(3, -1) is True
    for bad in (15, 2, 1, 9):
        with pytest.raises(ValueError):
            density.in_t(bad, 0)


def test_in_t_positivity_small():
    for q in core.primes_up_to(2000):
        if q > 2:
            assert density.in_t(q, -1)


def test_k_max():
    assert density.k_max(3, 0) == 2
    assert density.k_max(29, 0) == 0
    assert density.k_max(3, -1) == 0
    assert density.k_max(5, "-7/2") == 0
    assert density.k_max(3, Fraction(-1, 2)) == 1
    with pytest.raises(ValueError):
        density.k_max(4, 0)


def test_k_max_consistency():
    # powers up to the bound are members; one more power never divides an even member
    for q in (3, 5, 7):
        for c in (0, Fraction(1, 2), 1):
            k = density.k_max(q, c)
            for beta in range(1, k + 1):
                assert density.in_v(2 * q**beta, c), (q, c, beta)
            assert not density.in_v(2 * q ** (k + 1), c), (q, c)
    cap = 3 ** (density.k_max(3, 0) + 1)
    for n in range(2, 10**4, 2):
        if density.in_v(n, 0):
            assert n % cap != 0, n


def test_density_table():
    rows = density.density_table(0, [100])
    assert rows[0] == density.DensityRow(x=100, b_c=4, pi_x=25, ratio=Fraction(4, 25))
    rows = density.density_table(-2, [100])
    assert rows[0].b_c == 24 and rows[0].pi_x == 25
    rows = density.density_table(0, [10, 100, 1000])
    assert [r.x for r in rows] == [10, 100, 1000]
    assert all(r.b_c <= r.pi_x for r in rows)
    assert rows[2].pi_x == 168
    with pytest.raises(ValueError):
        density.density_table(0, [])
    with pytest.raises(ValueError):
        density.density_table(0, [100, 100])
    with pytest.raises(ValueError):
        density.density_table(0, [100, 10])
    with pytest.raises(CapacityError):
        density.density_table(0, [atlas.MAX_SIEVE_LIMIT + 1])


def test_density_rows_recountable():
    rows = density.density_table(0, [500])
    manual = sum(
        1 for q in core.primes_up_to(500) if q > 2 and density.in_t(q, 0)
    )
    assert rows[0].b_c == manual
    assert rows[0].pi_x == len(core.primes_up_to(500))


def test_first_members_at_zero():
    members = [q for q in core.primes_up_to(100) if q > 2 and density.in_t(q, 0)]
    assert members == [29, 53, 59, 89]


def test_progression_closure():
    rep = density.progression_closure_report(0, 30_000)
    assert rep.ok, rep.summary()
    assert rep.notes["smallest_member"] == 29
    rep2 = density.progression_closure_report(10, 10_000)
    assert rep2.ok and "inconclusive" in rep2.notes
    rep3 = density.progression_closure_report(-1, 100)
    assert rep3.ok and rep3.notes["smallest_member"] == 3


def test_t_witness():
    assert density.t_witness(0) == 53
    assert density.t_witness(-1) == 5
    assert density.t_witness(Fraction(-1, 2)) == 17
    assert density.t_witness("-1/2") == 17
    assert density.t_witness(0, search_cap=50) is None
    with pytest.raises(ValueError):
        density.t_witness(0, search_cap=1)


@given(st.fractions(min_value=Fraction(-3, 2), max_value=Fraction(3, 2), max_denominator=5))
@settings(max_examples=60, deadline=None)
def test_t_witness_construction(c):
    w = density.t_witness(c, search_cap=10**7)
    assert w is not None
    assert core.is_prime(w)
    assert density.in_t(w, c)
    assert (w + 1) % (3 ** (density.k_max(3, c) + 1)) == 0


def test_verify_density_claims():
    rep = density.verify_density_claims(0, 4000)
    assert rep.ok, rep.summary()
    rep_half = density.verify_density_claims(Fraction(1, 2), 2000)
    assert rep_half.ok, rep_half.summary()
    with pytest.raises(ValueError):
        density.verify_density_claims(0, 5)
