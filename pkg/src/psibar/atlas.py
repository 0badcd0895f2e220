"""Bulk iteration-count tables and the class/section geometry built on them.

`build_sieve` fills a dense table of the additive companion d over 1..N in
O(N) with a smallest-prime-factor sieve, giving the iteration count of every
n at once.  Class k is the set of n whose count is k; each class splits into
three sections by comparing n against twice the smallest odd member and
against 2^k.  `verify_class_structure` re-derives the structural claims from
the table and reports them as data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernel
from .core import factorize, is_prime, lambda_additive
from .errors import CapacityError, InsufficientSieveError, InternalInconsistencyError
from .report import VerificationReport

SECTION_I = "I"
SECTION_II = "II"
SECTION_III = "III"

# 2^27 entries x two int32 arrays ~= 1 GiB transient; refuse beyond that.
MAX_SIEVE_LIMIT = 1 << 27


@dataclass
class SieveTable:
    """Immutable-after-build table of d values (and optionally spf) for 1..limit."""

    limit: int
    d: np.ndarray
    spf: Optional[np.ndarray]
    backend: str
    _lam: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def d_value(self, n: int) -> int:
        self._check_range(n)
        return int(self.d[n])

    def lam(self, n: int) -> int:
        """Iteration count of n, read off the table."""
        self._check_range(n)
        return int(self.d[n]) - (1 - (n & 1))

    def lambda_array(self) -> np.ndarray:
        """int32 array a with a[n] the iteration count of n; a[0] = -1."""
        if self._lam is None:
            lam = self.d.copy()
            lam[2::2] -= 1
            lam[0] = -1
            self._lam = lam
        return self._lam

    def _check_range(self, n: int) -> None:
        if n < 1:
            raise ValueError("n must be >= 1")
        if n > self.limit:
            raise InsufficientSieveError(f"n={n} exceeds table limit {self.limit}")


def build_sieve(limit: int, *, keep_spf: bool = False, backend: Optional[str] = None) -> SieveTable:
    """Sieve d over 1..limit; deterministic and identical across backends.

    ``backend`` forces 'cython' or 'python'; default is the best available.
    The spf array is a construction artifact, dropped unless ``keep_spf``.
    """
    if limit < 2:
        raise ValueError("sieve limit must be >= 2")
    if limit > MAX_SIEVE_LIMIT:
        raise CapacityError(f"limit {limit} exceeds supported maximum {MAX_SIEVE_LIMIT}")
    if backend is None:
        build, name = _kernel.build_d_spf, _kernel.BACKEND
    else:
        build, _ = _kernel.get_kernels(backend)
        name = backend
    d, spf = build(limit)
    return SieveTable(limit=limit, d=d, spf=spf if keep_spf else None, backend=name)


def smallest_odd_in_class(k: int) -> int:
    """Closed form for the least odd number with iteration count k (k >= 2)."""
    if k < 2:
        raise ValueError("closed form applies to classes k >= 2 only")
    r = k % 3
    if r == 0:
        return 5 ** (k // 3)
    if r == 1:
        return 9 * 5 ** ((k - 4) // 3)
    return 3 * 5 ** ((k - 2) // 3)


def section_of(n: int, lambda_n: int) -> str:
    """Section label of n within its class; ``lambda_n`` must equal n's count.

    For k >= 2: section I is n < 2*(smallest odd member), II runs up to 2^k,
    III is beyond 2^k.  Classes 0 and 1 are {1, 2} and {4} with fixed labels.
    A claimed member equal to 2^k is impossible and raises.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if lambda_n < 0:
        raise ValueError("class index must be >= 0")
    if lambda_n == 0:
        if n == 1:
            return SECTION_I
        if n == 2:
            return SECTION_III
        raise InternalInconsistencyError(f"class 0 is {{1, 2}}; got n={n}")
    if lambda_n == 1:
        if n == 4:
            return SECTION_III
        raise InternalInconsistencyError(f"class 1 is {{4}}; got n={n}")
    pow2 = 1 << lambda_n
    if n == pow2:
        # impossible member: the count of 2^k is k - 1
        raise InternalInconsistencyError(f"{n} = 2^{lambda_n} cannot lie in class {lambda_n}")
    if n < 2 * smallest_odd_in_class(lambda_n):
        return SECTION_I
    if n < pow2:
        return SECTION_II
    return SECTION_III


@dataclass(frozen=True)
class ClassExtremes:
    min_odd: Optional[int]
    min_even: Optional[int]
    max_odd: Optional[int]
    max_even: Optional[int]


@dataclass
class ClassQueryResult:
    k: int
    members: list  # of (n, section label), ascending
    extremes: ClassExtremes
    complete: bool  # table covers the whole class (limit >= 2^(k+1))


def class_members(table: SieveTable, k: int) -> ClassQueryResult:
    """All table entries in class k with section labels and parity extremes."""
    if k < 0:
        raise ValueError("class index must be >= 0")
    lam = table.lambda_array()
    idx = np.nonzero(lam == k)[0]
    if k >= 2:
        t_section = 2 * smallest_odd_in_class(k)
        t_pow = 1 << k

        def label(n: int) -> str:
            if n == t_pow:
                raise InternalInconsistencyError(f"{n} = 2^{k} flagged as class {k}")
            if n < t_section:
                return SECTION_I
            if n < t_pow:
                return SECTION_II
            return SECTION_III

    else:
        def label(n: int) -> str:
            return section_of(n, k)

    members = [(int(n), label(int(n))) for n in idx]
    odds = idx[idx % 2 == 1]
    evens = idx[idx % 2 == 0]
    extremes = ClassExtremes(
        min_odd=int(odds.min()) if odds.size else None,
        min_even=int(evens.min()) if evens.size else None,
        max_odd=int(odds.max()) if odds.size else None,
        max_even=int(evens.max()) if evens.size else None,
    )
    return ClassQueryResult(
        k=k,
        members=members,
        extremes=extremes,
        complete=table.limit >= (1 << (k + 1)),
    )


def largest_odd_in_class(table: SieveTable, k: int) -> int:
    """Largest odd number in class k, exact once the table reaches 2^k."""
    if k < 0:
        raise ValueError("class index must be >= 0")
    if k == 1:
        raise ValueError("class 1 has no odd members")
    if k == 0:
        return 1
    if table.limit < (1 << k):
        raise InsufficientSieveError(
            f"table limit {table.limit} below 2^{k}; largest odd member may be missed"
        )
    hi = min(table.limit, (1 << k) - 1)
    lam = table.lambda_array()
    members = np.nonzero(lam[: hi + 1] == k)[0]
    odd = members[members % 2 == 1]
    if odd.size == 0:
        raise InternalInconsistencyError(f"class {k} shows no odd member below 2^{k}")
    return int(odd.max())


def smallest_multiple_in_class(a: int, k: int) -> int:
    """Least multiple of a whose iteration count is k (k above a's own count)."""
    if a < 1:
        raise ValueError("a must be >= 1")
    la = lambda_additive(a)
    if k <= la:
        raise ValueError(f"no multiple of {a} lies in class {k} (its own class is {la})")
    if k == la + 1:
        # the one-step class holds a single multiple: 4a for odd a, 2a for even
        return 4 * a if a & 1 else 2 * a
    return a * smallest_odd_in_class(k - la)


def _divisors(n: int) -> list:
    divs = [1]
    for p, a in factorize(n):
        divs = [d * p**e for d in divs for e in range(a + 1)]
    return sorted(divs)


def verify_class_structure(
    table: SieveTable, k_max: int, *, conjecture_scan: bool = False
) -> VerificationReport:
    """Recompute the structural claims about classes 2..k_max from the table.

    Requires the table to cover 2^(k_max+1) so every class scanned is seen
    in full.  With ``conjecture_scan`` the primality of each largest odd
    member is reported in the notes (data only, never a pass/fail item).
    """
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    if table.limit < (1 << (k_max + 1)):
        raise InsufficientSieveError(
            f"verification to k_max={k_max} needs table limit >= {1 << (k_max + 1)}"
        )
    lam = table.lambda_array()
    rep = VerificationReport(
        title=f"class structure, classes 2..{k_max}, table limit {table.limit}"
    )

    per_class_odds = {}
    per_class_evens = {}
    for k in range(0, k_max + 1):
        idx = np.nonzero(lam == k)[0]
        per_class_odds[k] = idx[idx % 2 == 1]
        per_class_evens[k] = idx[idx % 2 == 0]

    def first_fail(name, pairs, detail=""):
        checked = 0
        bad = None
        for key, ok in pairs:
            checked += 1
            if not ok and bad is None:
                bad = key
        rep.add(name, bad is None, checked, counterexample=bad, detail=detail)

    first_fail(
        "smallest odd member equals the closed form",
        (
            ((k, int(per_class_odds[k].min())), int(per_class_odds[k].min()) == smallest_odd_in_class(k))
            for k in range(2, k_max + 1)
        ),
    )
    first_fail(
        "smallest even member is twice the smallest odd",
        (
            ((k, int(per_class_evens[k].min())), int(per_class_evens[k].min()) == 2 * smallest_odd_in_class(k))
            for k in range(2, k_max + 1)
        ),
    )
    first_fail(
        "largest even member is 2^(k+1)",
        (
            ((k, int(per_class_evens[k].max())), int(per_class_evens[k].max()) == 1 << (k + 1))
            for k in range(2, k_max + 1)
        ),
    )
    first_fail(
        "largest odd member lies below 2^k",
        (
            ((k, int(per_class_odds[k].max())), int(per_class_odds[k].max()) < 1 << k)
            for k in range(2, k_max + 1)
        ),
    )

    checked = 0
    bad = None
    for k in range(0, k_max + 1):
        evens = per_class_evens[k]
        checked += int(evens.size)
        if bad is None and evens.size:
            low = evens & -evens
            hits = np.nonzero(low == (1 << k))[0]
            if hits.size:
                bad = (k, int(evens[hits[0]]))
    rep.add(
        "no even member has 2-adic valuation equal to its class index",
        bad is None,
        checked,
        counterexample=bad,
    )

    largest = {0: 1}
    for k in range(2, k_max + 1):
        largest[k] = largest_odd_in_class(table, k)
    checked = 0
    bad = None
    for k, b in largest.items():
        for dv in _divisors(b):
            checked += 1
            if bad is None and largest.get(lambda_additive(dv)) != dv:
                bad = (k, b, dv)
    rep.add(
        "divisors of each largest odd member are largest odd members themselves",
        bad is None,
        checked,
        counterexample=bad,
    )

    checked = 0
    bad = None
    for j in range(2, k_max + 1):
        bound = 2 * smallest_odd_in_class(j)
        sect1 = per_class_odds[j][per_class_odds[j] < bound]
        for m in sect1:
            for dv in _divisors(int(m)):
                checked += 1
                if dv == 1:
                    continue
                ld = int(lam[dv])
                if bad is None and not (ld >= 2 and dv < 2 * smallest_odd_in_class(ld)):
                    bad = (j, int(m), dv)
    rep.add(
        "first-section membership is divisor-closed",
        bad is None,
        checked,
        counterexample=bad,
    )

    checked = 0
    bad = None
    for m1 in range(2, 2 * k_max + 1):
        g1 = smallest_odd_in_class(m1)
        for m2 in range(2, 2 * k_max + 1):
            checked += 1
            if bad is None and g1 * smallest_odd_in_class(m2) < smallest_odd_in_class(m1 + m2):
                bad = (m1, m2)
    rep.add(
        "smallest-odd values are supermultiplicative across class sums",
        bad is None,
        checked,
        counterexample=bad,
    )

    if conjecture_scan:
        rep.notes["largest_odd_primality"] = [
            [k, largest[k], is_prime(largest[k])] for k in sorted(largest) if largest[k] > 1
        ]
    return rep
