from math import gcd

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from psibar import core
from psibar.errors import IterationCapExceeded

# hand-checked small tables
PSIBAR_1_12 = [1, 1, 4, 2, 6, 4, 8, 4, 12, 6, 12, 8]
PSI_1_12 = [1, 3, 4, 6, 6, 12, 8, 12, 12, 18, 12, 24]
PHI_1_12 = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
BIGD_1_10 = [0, 1, 2, 2, 3, 3, 3, 3, 4, 4]


def test_small_value_tables():
    assert [core.psi_bar(n) for n in range(1, 13)] == PSIBAR_1_12
    assert [core.dedekind_psi(n) for n in range(1, 13)] == PSI_1_12
    assert [core.euler_phi(n) for n in range(1, 13)] == PHI_1_12
    assert [core.big_d(n) for n in range(1, 11)] == BIGD_1_10
    assert core.big_d(441) == 10  # 441 = 3^2 * 7^2, counts 2 and 3 each twice


def test_domain_errors():
    for fn in (core.psi_bar, core.dedekind_psi, core.euler_phi, core.big_d,
               core.lambda_additive, core.lambda_trajectory):
        with pytest.raises(ValueError):
            fn(0)
    with pytest.raises(ValueError):
        core.factorize(-3)
    with pytest.raises(ValueError):
        core.trajectory(5, "nope")


@given(st.integers(1, 10**6), st.integers(1, 10**6))
@settings(max_examples=200)
def test_multiplicative_on_coprime(m, n):
    assume(gcd(m, n) == 1)
    assert core.psi_bar(m * n) == core.psi_bar(m) * core.psi_bar(n)
    assert core.dedekind_psi(m * n) == core.dedekind_psi(m) * core.dedekind_psi(n)
    assert core.euler_phi(m * n) == core.euler_phi(m) * core.euler_phi(n)


@given(st.integers(1, 10**5), st.integers(1, 10**5))
@settings(max_examples=200)
def test_big_d_completely_additive(x, y):
    assert core.big_d(x * y) == core.big_d(x) + core.big_d(y)


def test_prime_power_images():
    assert core.psi_bar(2**5) == 2**4
    assert core.psi_bar(3**4) == 3**3 * 4
    assert core.dedekind_psi(2**5) == 2**4 * 3
    assert core.euler_phi(7**3) == 7**2 * 6


def test_lambda_landmarks():
    assert core.lambda_additive(1) == 0
    assert core.lambda_additive(2) == 0
    assert core.lambda_additive(4) == 1
    assert core.lambda_additive(3) == 2
    assert core.lambda_additive(5) == 3
    assert core.lambda_additive(9) == 4
    assert core.lambda_additive(100) == 7
    for p in (2, 3, 5, 7, 13):
        assert core.lambda_additive((1 << p) - 1) == p


def test_lambda_routes_agree_exhaustive():
    for n in range(1, 3001):
        assert core.lambda_additive(n) == core.lambda_trajectory(n)


@given(st.integers(1, 10**6))
@settings(max_examples=150)
def test_lambda_routes_agree_sampled(n):
    assert core.lambda_additive(n) == core.lambda_trajectory(n)


def test_lambda_trajectory_cap():
    with pytest.raises(IterationCapExceeded):
        core.lambda_trajectory(3, cap=1)


def test_trajectory_collapse():
    t = core.trajectory(100)
    assert t.iterates[:8] == [100, 60, 48, 32, 16, 8, 4, 2]
    assert t.reach_two_index == 7
    assert t.collapsed and t.collapse_value == 1
    assert t.iterates[-1] == t.iterates[-2] == 1

    t2 = core.trajectory(2)
    assert t2.reach_two_index == 0


def test_trajectory_phi_iteration_lengths():
    assert core.trajectory(1, core.PHI).iteration_length == 1
    assert core.trajectory(2, core.PHI).iteration_length == 1
    assert core.trajectory(3, core.PHI).iteration_length == 2
    assert core.trajectory(100, core.PHI).iteration_length == 6


def test_trajectory_psi_never_collapses():
    t = core.trajectory(3, core.PSI, cap=25)
    assert not t.collapsed
    assert len(t.iterates) == 26
    assert t.iteration_length is None
    # strictly nondecreasing and growing
    assert t.iterates[-1] > t.iterates[0]


def test_psi_tail_detect():
    for n in (2, 3, 5):
        hit = core.psi_tail_detect(n)
        assert (hit.a, hit.b) == (1, 1)
    hit = core.psi_tail_detect(3)
    assert hit.step == 2 and hit.value == 6
    with pytest.raises(ValueError):
        core.psi_tail_detect(1)


@given(st.integers(2, 5000))
@settings(max_examples=100)
def test_psi_tail_successor_doubles(n):
    hit = core.psi_tail_detect(n)
    assert hit is not None
    assert core.factorize(hit.value) == ((2, hit.a), (3, hit.b))
    succ = core.dedekind_psi(hit.value)
    assert succ == 2 * hit.value
    assert core.factorize(succ) == ((2, hit.a + 1), (3, hit.b))


@given(st.integers(1, 10**9))
@settings(max_examples=200)
def test_factorize_roundtrip(n):
    pairs = core.factorize(n)
    assert core.factored_value(pairs) == n
    primes = [p for p, _ in pairs]
    assert primes == sorted(primes)
    assert all(core.is_prime(p) for p in primes)
    assert all(a >= 1 for _, a in pairs)


def test_factorize_known():
    assert core.factorize(1) == ()
    assert core.factorize(2**4 * 3**2 * 97) == ((2, 4), (3, 2), (97, 1))
    big = (10**9 + 7) * (10**9 + 9)
    assert core.factorize(big) == ((10**9 + 7, 1), (10**9 + 9, 1))
    assert core.factorize((10**9 + 7) ** 2) == ((10**9 + 7, 2),)


def test_is_prime_against_sympy():
    for n in range(0, 2000):
        assert core.is_prime(n) == sympy.isprime(n), n


@given(st.integers(2, 2**64))
@settings(max_examples=300)
def test_is_prime_sampled_against_sympy(n):
    assert core.is_prime(n) == sympy.isprime(n)


def test_is_prime_large():
    assert core.is_prime((1 << 127) - 1)
    assert not core.is_prime((1 << 11) - 1)  # 2047 = 23 * 89
    assert core.is_prime(2) and not core.is_prime(1) and not core.is_prime(0)


def test_primes_up_to():
    assert core.primes_up_to(1) == []
    assert core.primes_up_to(10) == [2, 3, 5, 7]
    assert len(core.primes_up_to(10**4)) == 1229


def test_white_conditions():
    assert core.check_white_conditions(core.PSI_BAR, 100, 4).ok
    assert core.check_white_conditions(core.PHI, 100, 4).ok
    rep = core.check_white_conditions(core.PSI, 3, 1)
    assert not rep.ok
    assert any(v.p == 2 and v.q == 3 and v.condition == 1 for v in rep.violations)
    with pytest.raises(ValueError):
        core.check_white_conditions("nope", 10, 2)
    with pytest.raises(ValueError):
        core.check_white_conditions(core.PSI, 1, 1)


def test_verify_white_behavior():
    rep = core.verify_white_behavior(200, 4)
    assert rep.ok, rep.summary()
