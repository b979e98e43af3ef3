"""Exact rational arithmetic helpers: Bernoulli numbers, Bernoulli
polynomials and binomial coefficients.

Two Bernoulli conventions exist in the literature and both are needed
here, so every call names one explicitly:

  at-zero :  B_k = B_k(0),  B_1 = -1/2   (generating function t/(e^t-1))
  at-one  :  B_k = B_k(1),  B_1 = +1/2   (generating function t*e^t/(e^t-1))

They differ only at k = 1: B_k(1) = (-1)^k * B_k(0).

All values are `fractions.Fraction`; nothing in this module touches
floating point.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

Rational = Fraction

_CONVENTIONS = ("at-zero", "at-one")

# cache of at-zero Bernoulli numbers B_0..B_n, grown under a lock so
# concurrent readers never observe a half-built entry
_bern_cache: list[Fraction] = [Fraction(1)]
_bern_lock = threading.Lock()


def binomial(n: int, r: int) -> int:
    """C(n, r), defined as 0 when r < 0 or r > n."""
    if r < 0 or r > n:
        return 0
    return comb(n, r)


def _extend_bernoulli(k: int) -> None:
    # recurrence sum_{j=0}^{k} C(k+1, j) B_j = 0, solved for B_k
    with _bern_lock:
        while len(_bern_cache) <= k:
            m = len(_bern_cache)
            acc = sum(Fraction(comb(m + 1, j)) * _bern_cache[j] for j in range(m))
            _bern_cache.append(-acc / (m + 1))


def bernoulli_number(k: int, convention: str) -> Fraction:
    """B_k in the named convention ("at-zero" or "at-one")."""
    if convention not in _CONVENTIONS:
        raise ValueError(f"unknown Bernoulli convention {convention!r}")
    if k < 0:
        raise ValueError("Bernoulli index must be >= 0")
    if len(_bern_cache) <= k:
        _extend_bernoulli(k)
    value = _bern_cache[k]
    if convention == "at-one" and k % 2 == 1:
        value = -value
    return value


def bernoulli_poly(k: int, x: Rational) -> Fraction:
    """Bernoulli polynomial B_k(x) = sum_j C(k,j) B_j(0) x^(k-j)."""
    if k < 0:
        raise ValueError("Bernoulli index must be >= 0")
    x = Fraction(x)
    if len(_bern_cache) <= k:
        _extend_bernoulli(k)
    return sum(
        Fraction(comb(k, j)) * _bern_cache[j] * x ** (k - j) for j in range(k + 1)
    )
