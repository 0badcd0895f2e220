"""Evaluation of the modified Dedekind psi map and its iteration bookkeeping.

The map of interest acts on prime powers as ``p^(a-1) * (p+1)`` for odd p
and as ``2^(a-1)`` at p = 2, extended multiplicatively.  Halving at 2 makes
every trajectory fall to 2 and then to 1, so each n has a well-defined
iteration count ``lambda_`` (steps to reach 2).  The companion ``big_d``
(= lambda for odd n, lambda + 1 for even n) is completely additive, which
gives a second, trajectory-free way to compute the count; both routes are
exposed so they can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod
from typing import NamedTuple, Optional

from .errors import IterationCapExceeded
from .report import VerificationReport

# (prime, exponent) pairs, strictly increasing by prime; empty tuple is 1.
Factorization = tuple[tuple[int, int], ...]

PSI_BAR = "psibar"
PSI = "psi"
PHI = "phi"
FUNCTION_IDS = (PSI_BAR, PSI, PHI)

_TRIAL_BOUND = 1 << 16

# Below this bound the listed Miller-Rabin bases are a proven primality test.
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(primes_up_to(_TRIAL_BOUND))


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, ascending (sieve of Eratosthenes)."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start :: p] = b"\x00" * ((n - start) // p + 1)
    return [i for i, flag in enumerate(sieve) if flag]


def _miller_rabin(n: int, base: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    # n odd positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_prp(n: int) -> bool:
    # Selfridge parameter choice; n odd, > 2, not a perfect square.
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -(d + 2) if d > 0 else -(d - 2)
    q = (1 - d) // 4
    k = n + 1
    s = (k & -k).bit_length() - 1
    m = k >> s
    # Compute U_m, V_m for P = 1 via binary ladder.
    u, v, qk = 1, 1, q % n
    for bit in bin(m)[3:]:
        u = u * v % n
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (u + v) % n, (v + d * u) % n
            if u & 1:
                u += n
            if v & 1:
                v += n
            u, v = u // 2 % n, v // 2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


def is_prime(n: int) -> bool:
    """Deterministic below ~3.3e24 (fixed Miller-Rabin bases), BPSW above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n < _MR_DETERMINISTIC_BOUND:
        return all(_miller_rabin(n, b) for b in _MR_BASES)
    if not _miller_rabin(n, 2):
        return False
    r = isqrt(n)
    if r * r == n:
        return False
    return _strong_lucas_prp(n)


def _brent_rho(n: int, c: int) -> int:
    # Deterministic parameters; returns a divisor of n (possibly n itself).
    y, m, g, r, q = 2, 128, 1, 1, 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r <<= 1
    if g == n:
        g = 1
        y = ys
        while g == 1:
            y = (y * y + c) % n
            g = gcd(abs(x - y), n)
    return g


def _factor_no_small(n: int, out: list[int]) -> None:
    # n has no prime factor <= _TRIAL_BOUND
    if n == 1:
        return
    if is_prime(n):
        out.append(n)
        return
    r = isqrt(n)
    if r * r == n:
        _factor_no_small(r, out)
        _factor_no_small(r, out)
        return
    c = 1
    while True:
        d = _brent_rho(n, c)
        if 1 < d < n:
            break
        c += 1
    _factor_no_small(d, out)
    _factor_no_small(n // d, out)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    """Prime factorization of n >= 1 as sorted (prime, exponent) pairs.

    Trial division by sieved primes up to 2^16, then Brent's cycle method
    with deterministic restarts for any remaining cofactor.  ``factorize(1)``
    is the empty tuple.
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    pairs = []
    rest = n
    for p in _small_primes():
        if p * p > rest:
            break
        if rest % p == 0:
            a = 1
            rest //= p
            while rest % p == 0:
                rest //= p
                a += 1
            pairs.append((p, a))
    if rest > 1:
        if rest < _TRIAL_BOUND * _TRIAL_BOUND:
            pairs.append((rest, 1))
        else:
            large: list[int] = []
            _factor_no_small(rest, large)
            large.sort()
            i = 0
            while i < len(large):
                j = i
                while j < len(large) and large[j] == large[i]:
                    j += 1
                pairs.append((large[i], j - i))
                i = j
    pairs.sort()
    return tuple(pairs)


def factored_value(pairs: Factorization) -> int:
    """Multiply a factorization back into the integer it represents."""
    return prod(p**a for p, a in pairs)


def _prime_power_image(fn_id: str, p: int, a: int) -> int:
    if fn_id == PSI_BAR:
        return p ** (a - 1) if p == 2 else p ** (a - 1) * (p + 1)
    if fn_id == PSI:
        return p ** (a - 1) * (p + 1)
    if fn_id == PHI:
        return p ** (a - 1) * (p - 1)
    raise ValueError(f"unknown function id {fn_id!r}")


def _apply(fn_id: str, n: int) -> int:
    if n < 1:
        raise ValueError(f"{fn_id} requires n >= 1")
    return prod(_prime_power_image(fn_id, p, a) for p, a in factorize(n))


def psi_bar(n: int) -> int:
    """Modified Dedekind psi: p^(a-1)(p+1) at odd primes, 2^(a-1) at two."""
    return _apply(PSI_BAR, n)


def dedekind_psi(n: int) -> int:
    """Dedekind psi: multiplicative with p^a -> p^(a-1)(p+1)."""
    return _apply(PSI, n)


def euler_phi(n: int) -> int:
    """Euler's totient via the factorization of n."""
    return _apply(PHI, n)


def _step_factored(pairs: Factorization, fn_id: str) -> Factorization:
    # Image of a factored integer, returned factored.  Only p+1 / p-1 ever
    # need factorizing, so iterates never require splitting large values.
    acc: dict[int, int] = {}
    for p, a in pairs:
        if a > 1:
            acc[p] = acc.get(p, 0) + a - 1
        if fn_id == PSI_BAR and p == 2:
            continue  # halved at two: the p^(a-1) part is the whole image
        shift = p - 1 if fn_id == PHI else p + 1
        if shift > 1:
            for q, b in factorize(shift):
                acc[q] = acc.get(q, 0) + b
    return tuple(sorted(acc.items()))


@dataclass(frozen=True)
class TrajectoryReport:
    """Iterate sequence of ``start`` under one of the three maps.

    ``iterates[k]`` is the k-th image (``iterates[0] == start``).  When the
    sequence becomes constant the report ends with the repeated value twice
    and ``iteration_length`` is the first positive index hitting it.  For
    the halved map, ``reach_two_index`` is the first index whose iterate is
    exactly 2, i.e. the iteration-count of ``start``.
    """

    start: int
    fn_id: str
    iterates: list[int]
    collapsed: bool
    collapse_value: Optional[int]
    iteration_length: Optional[int]
    reach_two_index: Optional[int]


def trajectory(n: int, fn_id: str = PSI_BAR, cap: int = 10_000) -> TrajectoryReport:
    """Iterate ``fn_id`` from n for at most ``cap`` applications.

    A non-collapsing run (always the case for the unhalved psi map, n > 1)
    is reported with ``collapsed=False`` rather than raised.
    """
    if n < 1:
        raise ValueError("trajectory requires n >= 1")
    if fn_id not in FUNCTION_IDS:
        raise ValueError(f"unknown function id {fn_id!r}")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    pairs = factorize(n)
    iterates = [n]
    reach_two = 0 if (fn_id == PSI_BAR and n == 2) else None
    while len(iterates) <= cap:
        pairs = _step_factored(pairs, fn_id)
        value = factored_value(pairs)
        iterates.append(value)
        if fn_id == PSI_BAR and reach_two is None and value == 2:
            reach_two = len(iterates) - 1
        if value == iterates[-2]:
            return TrajectoryReport(
                start=n,
                fn_id=fn_id,
                iterates=iterates,
                collapsed=True,
                collapse_value=value,
                iteration_length=iterates.index(value, 1),
                reach_two_index=reach_two,
            )
    return TrajectoryReport(
        start=n,
        fn_id=fn_id,
        iterates=iterates,
        collapsed=False,
        collapse_value=None,
        iteration_length=None,
        reach_two_index=reach_two,
    )


class TailHit(NamedTuple):
    a: int
    b: int
    step: int
    value: int


def psi_tail_detect(n: int, cap: int = 200) -> Optional[TailHit]:
    """First iterate of n under Dedekind psi of the form 2^a * 3^b (a, b >= 1).

    From such a value onward the trajectory just doubles, so finding one
    pins down the eventual tail.  Returns None if no iterate within ``cap``
    steps has that shape.
    """
    if n < 2:
        raise ValueError("tail detection requires n >= 2")
    pairs = factorize(n)
    for step in range(cap + 1):
        if len(pairs) == 2 and pairs[0][0] == 2 and pairs[1][0] == 3:
            return TailHit(a=pairs[0][1], b=pairs[1][1], step=step, value=factored_value(pairs))
        pairs = _step_factored(pairs, PSI)
    return None


# Additive values at primes; value-deterministic and append-only, so a data
# race between threads can only redo identical work.
_D_AT_PRIME: dict[int, int] = {2: 1}


def _d_at_prime(p: int) -> int:
    v = _D_AT_PRIME.get(p)
    if v is None:
        # For odd prime p the value equals that of p + 1, all of whose prime
        # factors are smaller than p, so the recursion bottoms out at 2.
        v = sum(a * _d_at_prime(q) for q, a in factorize(p + 1))
        _D_AT_PRIME[p] = v
    return v


def big_d(n: int) -> int:
    """Completely additive companion of the iteration count.

    Equals the iteration count for odd n and one more than it for even n;
    computed here purely from the factorization, never by iterating.
    """
    if n < 1:
        raise ValueError("big_d requires n >= 1")
    return sum(a * _d_at_prime(p) for p, a in factorize(n))


def lambda_additive(n: int) -> int:
    """Iteration count of n (steps of the halved map to reach 2), additively."""
    if n < 1:
        raise ValueError("lambda_additive requires n >= 1")
    d = big_d(n)
    return d - 1 if n % 2 == 0 else d


def lambda_trajectory(n: int, cap: int = 10_000) -> int:
    """Iteration count of n measured by actually running the trajectory.

    Independent of :func:`lambda_additive`; the two must agree everywhere.
    The cap only guards against implementation bugs, since every starting
    point above 1 eventually reaches two.
    """
    if n < 1:
        raise ValueError("lambda_trajectory requires n >= 1")
    if n == 1:
        return 0
    pairs = factorize(n)
    steps = 0
    while pairs != ((2, 1),):
        pairs = _step_factored(pairs, PSI_BAR)
        steps += 1
        if steps > cap:
            raise IterationCapExceeded(f"no collapse of {n} within {cap} steps")
    return steps


@dataclass(frozen=True)
class WhiteViolation:
    p: int
    alpha: int
    condition: int  # 1: some prime q > p divides f(p^alpha); 2: p^alpha divides f(p^alpha)
    q: Optional[int]


@dataclass
class WhiteReport:
    fn_id: str
    prime_bound: int
    exponent_bound: int
    violations: list[WhiteViolation]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_white_conditions(fn_id: str, prime_bound: int, exponent_bound: int) -> WhiteReport:
    """Test the two finite-index conditions on all p <= prime_bound, a <= exponent_bound.

    Condition 1: every prime divisor of f(p^a) is <= p.  Condition 2:
    p^a does not divide f(p^a).  Violations are returned as data.
    """
    if fn_id not in FUNCTION_IDS:
        raise ValueError(f"unknown function id {fn_id!r}")
    if prime_bound < 2 or exponent_bound < 1:
        raise ValueError("bounds too small")
    violations = []
    for p in primes_up_to(prime_bound):
        for alpha in range(1, exponent_bound + 1):
            image = _prime_power_image(fn_id, p, alpha)
            for q, _ in factorize(image):
                if q > p:
                    violations.append(WhiteViolation(p=p, alpha=alpha, condition=1, q=q))
            if image % p**alpha == 0:
                violations.append(WhiteViolation(p=p, alpha=alpha, condition=2, q=None))
    return WhiteReport(
        fn_id=fn_id,
        prime_bound=prime_bound,
        exponent_bound=exponent_bound,
        violations=violations,
    )


def verify_white_behavior(prime_bound: int = 1000, exponent_bound: int = 6) -> VerificationReport:
    """Both finiteness conditions hold for the halved map and the totient.

    The unhalved psi map must fail, and fail in exactly one way: 3 divides
    its image of every power of two.  Any other violation pattern is a bug.
    """
    rep = VerificationReport(
        title=f"finiteness conditions, primes <= {prime_bound}, exponents <= {exponent_bound}"
    )
    pairs_scanned = len(primes_up_to(prime_bound)) * exponent_bound
    for fn_id, label in ((PSI_BAR, "halved map"), (PHI, "totient")):
        w = check_white_conditions(fn_id, prime_bound, exponent_bound)
        first = w.violations[0] if w.violations else None
        rep.add(
            f"{label} satisfies both conditions",
            w.ok,
            pairs_scanned,
            counterexample=(first.p, first.alpha, first.condition, first.q) if first else None,
        )
    w = check_white_conditions(PSI, prime_bound, exponent_bound)
    expected = all(v.p == 2 and v.condition == 1 and v.q == 3 for v in w.violations)
    complete = len(w.violations) == exponent_bound
    stray = next(
        (v for v in w.violations if not (v.p == 2 and v.condition == 1 and v.q == 3)), None
    )
    rep.add(
        "unhalved map fails only through 3 dividing images of powers of two",
        expected and complete,
        pairs_scanned,
        counterexample=(stray.p, stray.alpha, stray.condition, stray.q) if stray else None,
        detail=f"{len(w.violations)} violations, one per exponent expected",
    )
    return rep
