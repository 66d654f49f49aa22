"""Number-theoretic predicates behind the transitive-colouring obstructions.

Everything here is exact integer / rational arithmetic; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .errors import DegenerateParameters, OutOfScopeParameters, VerificationFailed


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def is_prime_power(n: int) -> bool:
    """n = p^a for a prime p and a >= 1, by trial factorisation."""
    if n < 2:
        return False
    p = None
    m = n
    for f in range(2, n + 1):
        if f * f > m:
            break
        if m % f == 0:
            p = f
            while m % f == 0:
                m //= f
            break
    if p is None:
        return True  # n itself is prime
    return m == 1


# -- the classification of edge-transitive self-complementary r-graphs ----------


@dataclass(frozen=True)
class ClassAResult:
    member: bool
    case: Optional[int]     # which clause fired, 1..5
    via_dual: bool          # clause fired for (k, k-r) instead of (k, r)

    def __bool__(self) -> bool:
        return self.member


def _class_a_case(k: int, r: int) -> Optional[int]:
    if r == 1 and k % 2 == 0:
        return 1
    if r == 2 and k % 4 == 1 and is_prime_power(k):
        return 2
    if r == 3 and k % 4 == 2 and is_prime_power(k - 1):
        return 3
    if r >= 3 and r % 2 == 1 and k == r + 1:
        return 4
    if r >= 7 and r % 4 == 3 and is_prime_power(r + 2) and k in (r + 2, r + 3):
        return 5
    return None


def class_A_membership(k: int, r: int) -> ClassAResult:
    """Existence of an edge-transitive self-complementary k-vertex r-graph.

    The published clause list is checked for (k, r) and, via the
    edge-complementation duality, for (k, k-r); the duality closure also
    covers small pairs such as (5, 3) that the clauses alone miss.
    """
    if not (k > r >= 1):
        raise DegenerateParameters(f"need k > r >= 1, got ({k}, {r})")
    case = _class_a_case(k, r)
    if case is not None:
        return ClassAResult(True, case, False)
    dual = _class_a_case(k, k - r)
    if dual is not None:
        return ClassAResult(True, dual, True)
    return ClassAResult(False, None, False)


@dataclass(frozen=True)
class KneserAdmissibility:
    admissible: bool
    case: Optional[int]

    def __bool__(self) -> bool:
        return self.admissible


def kneser_admissible(n: int, r: int) -> KneserAdmissibility:
    """Necessary parameter conditions for H(n, r) to admit a transitive
    colouring, as the published five-clause list (checked verbatim)."""
    if not (r >= 1 and n > 2 * r):
        raise DegenerateParameters(f"need n > 2r >= 2, got ({n}, {r})")
    if r == 1 and n % 2 == 1:
        return KneserAdmissibility(True, 1)
    if r == 2 and n % 4 == 3 and is_prime_power(n - 2):
        return KneserAdmissibility(True, 2)
    if r == 3 and n % 4 == 1 and is_prime_power(n - 4):
        return KneserAdmissibility(True, 3)
    if r >= 3 and r % 2 == 1 and n == 2 * r + 1:
        return KneserAdmissibility(True, 4)
    if r >= 7 and r % 4 == 3 and is_prime_power(r + 2) and n in (2 * r + 2, 2 * r + 3):
        return KneserAdmissibility(True, 5)
    return KneserAdmissibility(False, None)


# -- prime gadgets ---------------------------------------------------------------


@dataclass(frozen=True)
class PrimeInRange:
    prime: Optional[int]
    special_case: bool  # t = 5, the one value with no prime in [3t/2, 2t)

    def __bool__(self) -> bool:
        return self.prime is not None


def prime_in_range(t: int) -> PrimeInRange:
    """Smallest odd prime p with 3t/2 <= p < 2t; t = 5 has none."""
    if t < 2:
        raise DegenerateParameters("need t >= 2")
    lo = (3 * t + 1) // 2  # ceil(3t/2)
    for p in range(lo, 2 * t):
        if p % 2 == 1 and is_prime(p):
            return PrimeInRange(p, False)
    return PrimeInRange(None, t == 5)


def prime_divisor_pt(t: int) -> int:
    """Odd prime dividing C(2t-1, t) but neither C(3t-1, t-1) nor C(3t-1, t);
    for even t >= 4 it also divides no integer in [2t, 3t+1].

    The witness is 3 for t = 5 and otherwise the prime in [3t/2, 2t); the
    divisibility claims are re-verified by exact arithmetic on each call.
    """
    if t < 2:
        raise DegenerateParameters("need t >= 2")
    if t == 5:
        p = 3
    else:
        pr = prime_in_range(t)
        if pr.prime is None:
            raise OutOfScopeParameters(f"no prime available for t = {t}")
        p = pr.prime
    checks = [
        comb(2 * t - 1, t) % p == 0,
        comb(3 * t - 1, t - 1) % p != 0,
        comb(3 * t - 1, t) % p != 0,
    ]
    if t >= 4 and t % 2 == 0:
        checks.append(all(m % p != 0 for m in range(2 * t, 3 * t + 2)))
    if not all(checks):
        raise VerificationFailed(f"divisibility witness failed for t = {t}, p = {p}")
    return p


# -- the integrality obstruction ---------------------------------------------------


@dataclass(frozen=True)
class IntegralityResult:
    d: Fraction
    is_integer: bool
    t: int
    k: int
    s: int
    case: str  # "i" or "ii"

    def __bool__(self) -> bool:
        return self.is_integer

    def to_json(self) -> dict:
        return {
            "d": [self.d.numerator, self.d.denominator],
            "is_integer": self.is_integer,
            "t": self.t,
            "k": self.k,
            "s": self.s,
            "case": self.case,
        }


def kneser_integrality_test(n: int, r: int) -> IntegralityResult:
    """Exact star-count average for H(n, r) with odd r = 2t - 1:

        d = 2 * C(n-t, t-1) * C(k, s-1) * C(3t-1, t) / C(2t-1, t),

    k = n - r, s = k - r.  A transitive colouring forces d to be an integer,
    so a non-integer value certifies that none exists.  Applicable when
    t >= 2 and n = 2r + 1, or t >= 4 even and n in {2r+2, 2r+3}.
    """
    if r % 2 == 0 or r < 3:
        raise OutOfScopeParameters(f"need odd r >= 3, got r = {r}")
    t = (r + 1) // 2
    case = None
    if t >= 2 and n == 2 * r + 1:
        case = "i"
    elif t >= 4 and t % 2 == 0 and n in (2 * r + 2, 2 * r + 3):
        case = "ii"
    if case is None:
        raise OutOfScopeParameters(
            f"hypotheses not met for (n, r) = ({n}, {r}): "
            "need n = 2r+1 (any odd r >= 3) or n in {2r+2, 2r+3} with (r+1)/2 even >= 4"
        )
    k = n - r
    s = k - r
    d = Fraction(2 * comb(n - t, t - 1) * comb(k, s - 1) * comb(3 * t - 1, t),
                 comb(2 * t - 1, t))
    return IntegralityResult(d, d.denominator == 1, t, k, s, case)
