"""Exact membership tests for the two threshold families and their densities.

For a rational parameter c, one family collects n whose value exceeds
2^(count - c) where count is n's iteration count ("overshooting" numbers);
the other collects odd primes whose count exceeds log2 of the prime by more
than c + 1.  Every predicate reduces to a big-integer power comparison with
c = u/v, so no float ever participates in a membership decision; float
inputs for c are rejected outright.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Optional, Union

import numpy as np

from .atlas import MAX_SIEVE_LIMIT, build_sieve
from .core import Factorization, is_prime, lambda_additive, primes_up_to
from .errors import CapacityError, InternalInconsistencyError
from .report import VerificationReport

ExactRational = Union[int, str, Fraction]


def as_exact(c: ExactRational) -> Fraction:
    """Coerce c to an exact Fraction; floats are refused, not rounded.

    Strings may be fractions ("-3/7") or finite decimals ("0.25"), both
    parsed exactly.
    """
    if isinstance(c, bool):
        raise TypeError("c must be a rational number, not bool")
    if isinstance(c, float):
        raise TypeError(
            "float c is not accepted: membership tests are exact; pass int, Fraction, or string"
        )
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    if isinstance(c, str):
        try:
            return Fraction(c)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {c!r} as an exact rational") from exc
    raise TypeError(f"c must be int, Fraction, or string, got {type(c).__name__}")


def in_v(n: int, c: ExactRational, *, lam: Optional[int] = None) -> bool:
    """Exact test of n > 2^(count(n) - c); ``lam`` short-circuits the count."""
    if n < 1:
        raise ValueError("n must be >= 1")
    frac = as_exact(c)
    u, v = frac.numerator, frac.denominator
    k = lambda_additive(n) if lam is None else lam
    e = v * k - u
    if e < 0:
        return True
    return n**v > (1 << e)


def odd_part_in_v(t_factorization: Factorization, c: ExactRational) -> bool:
    """Membership of 2^a * t via t's factorization alone (any a >= 1).

    Decides t * 2^(c+1) > 2^S where S sums exponent-weighted counts of t's
    prime factors.  For even n this agrees with :func:`in_v` on n, which is
    what makes membership independent of the power of two; the two routes
    are deliberately separate so they can be cross-checked.
    """
    pairs = tuple(t_factorization)
    if not pairs:
        raise ValueError("t must be >= 3")
    if any(p == 2 for p, _ in pairs):
        raise ValueError("t must be odd")
    frac = as_exact(c)
    u, v = frac.numerator, frac.denominator
    t = prod(p**a for p, a in pairs)
    s = sum(a * lambda_additive(p) for p, a in pairs)
    e = v * s - (u + v)
    if e < 0:
        return True
    return t**v > (1 << e)


def _lam_prime(q: int) -> int:
    return lambda_additive(q)


def _in_t_given_lam(q: int, lam_q: int, u: int, v: int) -> bool:
    # count(q) - log2(q) > c + 1  <=>  2^(v*lam) > q^v * 2^(u+v)
    s = u + v
    if s >= 0:
        return (1 << (v * lam_q)) > (q**v << s)
    return (1 << (v * lam_q - s)) > q**v


def in_t(q: int, c: ExactRational) -> bool:
    """Exact test of count(q) - log2(q) > c + 1 for an odd prime q.

    Equality cannot occur (log2 of a prime is irrational), so the strict
    comparison is unambiguous.
    """
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise ValueError("q must be an odd prime")
    frac = as_exact(c)
    return _in_t_given_lam(q, lambda_additive(q), frac.numerator, frac.denominator)


def k_max(q: int, c: ExactRational) -> int:
    """Largest j >= 0 with j * (count(q) - log2 q) <= c + 1; 0 when c <= -1.

    Linear scan with exact comparisons; terminates because the per-step
    excess is strictly positive.
    """
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise ValueError("q must be an odd prime")
    frac = as_exact(c)
    if frac <= -1:
        return 0
    u, v = frac.numerator, frac.denominator
    lam_q = lambda_additive(q)
    s = u + v  # > 0 here
    j = 0
    while True:
        jn = j + 1
        if (1 << (v * jn * lam_q)) <= (q ** (v * jn) << s):
            j = jn
        else:
            return j


@dataclass(frozen=True)
class DensityRow:
    x: int
    b_c: int
    pi_x: int
    ratio: Optional[Fraction]  # b_c / pi_x, exact; None when pi_x = 0


def density_table(c: ExactRational, xs: Iterable[int]) -> list:
    """Counts of qualifying odd primes versus all primes at each cutoff in xs.

    xs must be strictly ascending.  The prime counts include 2; the
    qualifying count does not (the family is defined on odd primes), which
    leaves the limiting ratio unchanged.
    """
    xs = [int(x) for x in xs]
    if not xs:
        raise ValueError("xs must be nonempty")
    if any(x < 1 for x in xs):
        raise ValueError("cutoffs must be >= 1")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("xs must be strictly ascending")
    frac = as_exact(c)
    u, v = frac.numerator, frac.denominator
    x_max = xs[-1]
    if x_max > MAX_SIEVE_LIMIT:
        raise CapacityError(f"cutoff {x_max} exceeds sieve capacity {MAX_SIEVE_LIMIT}")
    table = build_sieve(max(x_max, 2))
    lam = table.lambda_array()
    rows = []
    primes = primes_up_to(x_max)
    i = 0
    pi_count = 0
    b_count = 0
    for x in xs:
        while i < len(primes) and primes[i] <= x:
            q = primes[i]
            pi_count += 1
            if q != 2 and _in_t_given_lam(q, int(lam[q]), u, v):
                b_count += 1
            i += 1
        rows.append(
            DensityRow(
                x=x,
                b_c=b_count,
                pi_x=pi_count,
                ratio=Fraction(b_count, pi_count) if pi_count else None,
            )
        )
    return rows


def progression_closure_report(c: ExactRational, x: int) -> VerificationReport:
    """Check that primes one below a multiple of a qualifying prime qualify too.

    Scans the full progression for the smallest qualifying prime q0 and,
    additionally, for every qualifying q <= sqrt(x).  An empty family below
    x yields an inconclusive report (a note, no failed claim).
    """
    if x < 3:
        raise ValueError("x must be >= 3")
    frac = as_exact(c)
    u, v = frac.numerator, frac.denominator
    if x > MAX_SIEVE_LIMIT:
        raise CapacityError(f"x {x} exceeds sieve capacity {MAX_SIEVE_LIMIT}")
    table = build_sieve(x)
    lam = table.lambda_array()
    primes = primes_up_to(x)
    members = [q for q in primes if q != 2 and _in_t_given_lam(q, int(lam[q]), u, v)]
    rep = VerificationReport(title=f"progression closure for c={frac} up to {x}")
    if not members:
        rep.notes["inconclusive"] = f"no qualifying primes below {x}"
        return rep
    q0 = members[0]
    rep.notes["smallest_member"] = q0
    member_set = set(members)
    moduli = [q0] + [q for q in members[1:] if q * q <= x]
    for q in moduli:
        checked = 0
        bad = None
        target = q - 1
        for p in primes:
            if p == 2 or p % q != target:
                continue
            checked += 1
            if bad is None and p not in member_set:
                bad = (q, p)
        rep.add(
            f"primes at -1 mod {q} all qualify",
            bad is None,
            checked,
            counterexample=bad,
        )
    return rep


def t_witness(c: ExactRational, search_cap: int = 1_000_000) -> Optional[int]:
    """Construct a qualifying prime of the form 2L * 3^(k+1) - 1.

    k is sized so the 3-power part alone overshoots c + 1; the first prime
    the progression produces must then qualify, and is re-checked by the
    direct predicate before being returned.  None when no prime in the
    progression stays within ``search_cap`` (existence is guaranteed, a
    bound is not).
    """
    frac = as_exact(c)
    if search_cap < 5:
        raise ValueError("search_cap too small")
    k = k_max(3, frac)
    block = 3 ** (k + 1)
    ell = 1
    while True:
        w = 2 * ell * block - 1
        if w > search_cap:
            return None
        if is_prime(w):
            if not in_t(w, frac):
                raise InternalInconsistencyError(
                    f"constructed prime {w} fails the membership it was built for"
                )
            return w
        ell += 1


def verify_density_claims(c: ExactRational, limit: int = 100_000) -> VerificationReport:
    """Re-check the structural facts behind the density argument up to ``limit``.

    Covers: third-section membership coincides with the c=0 family; even
    membership is decided by the odd part alone (checked at this c); even
    divisors of even members are members; every odd prime qualifies at
    c = -1.
    """
    if limit < 10:
        raise ValueError("limit must be >= 10")
    if limit > MAX_SIEVE_LIMIT:
        raise CapacityError(f"limit {limit} exceeds sieve capacity {MAX_SIEVE_LIMIT}")
    frac = as_exact(c)
    table = build_sieve(limit)
    lam = table.lambda_array()
    rep = VerificationReport(title=f"density-side invariants up to {limit} (c={frac})")

    # counts fit: lam <= 2*log2(limit)+1 < 62, so 1 << lam is exact in int64
    n_arr = np.arange(limit + 1, dtype=np.int64)
    lam64 = lam.astype(np.int64)
    in_v0 = n_arr > (np.int64(1) << np.maximum(lam64, 0))
    bad = None
    checked = 0
    for k in range(0, int(lam64.max()) + 1):
        idx = np.nonzero(lam64 == k)[0]
        checked += int(idx.size)
        if bad is not None or idx.size == 0:
            continue
        if k == 0:
            thr_iii = np.isin(idx, (2,))
        elif k == 1:
            thr_iii = np.isin(idx, (4,))
        else:
            thr_iii = idx > (1 << k)
        mism = np.nonzero(thr_iii != in_v0[idx])[0]
        if mism.size:
            bad = (int(idx[mism[0]]), k)
    rep.add(
        "third-section label coincides with the c=0 family",
        bad is None,
        checked,
        counterexample=bad,
    )

    from .core import factorize  # local import keeps module deps one-way

    checked = 0
    bad = None
    for n in range(2, limit + 1, 2):
        t = n >> ((n & -n).bit_length() - 1)
        checked += 1
        if t == 1:
            continue  # pure powers of two have no odd part to test
        via_n = in_v(n, frac, lam=int(lam[n]))
        via_t = odd_part_in_v(factorize(t), frac)
        if bad is None and via_n != via_t:
            bad = (n, t)
            break
    rep.add(
        "even membership is decided by the odd part alone",
        bad is None,
        checked,
        counterexample=bad,
    )

    checked = 0
    bad = None
    for n in range(2, limit + 1, 2):
        if not in_v(n, frac, lam=int(lam[n])):
            continue
        for d in _even_divisors(n):
            checked += 1
            if bad is None and not in_v(d, frac, lam=int(lam[d])):
                bad = (n, d)
        if bad is not None:
            break
    rep.add(
        "even divisors of even members are members",
        bad is None,
        checked,
        counterexample=bad,
    )

    checked = 0
    bad = None
    for q in primes_up_to(limit):
        if q == 2:
            continue
        checked += 1
        if bad is None and not _in_t_given_lam(q, int(lam[q]), -1, 1):
            bad = (q,)
    rep.add(
        "every odd prime qualifies at c = -1",
        bad is None,
        checked,
        counterexample=bad,
    )
    return rep


def _even_divisors(n: int) -> list:
    from .core import factorize

    divs = [1]
    for p, a in factorize(n):
        divs = [d * p**e for d in divs for e in range(a + 1)]
    return [d for d in divs if d % 2 == 0]
