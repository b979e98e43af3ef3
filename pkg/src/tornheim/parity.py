"""Closed forms for the double series

    zeta_{a,b}(k1,k2,k3) = sum_{m,n>0} m^-k1 n^-k2 (a m + b n)^-k3

at odd weight k = k1+k2+k3, as exact Q-linear combinations of zeta
values and Clausen constants (pi-power times one of zeta(j), C_j(q),
S_j(q) with q of denominator dividing lcm(a,b)).

The value equals -(1/2) Re[G_{a,b}(k1,k2,k3) + G_{b,a}(k2,k1,k3)] where
G_{a,b} is the coefficient of t1^k1 t2^k2 t3^k3 in a generating function
built from Bernoulli series and Hurwitz-type sums.  That coefficient is
a finite sum assembled here exactly: term1 pairs a depth-one zeta series
with the coefficients A_b(r,s) of

    alpha_b(t1,t2) = beta0(t1) beta0(-t2) (e^{b t1 - t2}-1)/(b t1 - t2),
    beta0(t) = t/(e^t - 1) = sum B_p(0) t^p / p!,

and term2 collects the shift corrections

    atilde_{b,c}(t1,t2) = -t1 e^{-c t1} beta0(-t2) (e^{b t1 - t2}-1)/(b t1 - t2)

for c = 1..b-1, whose constants are Clausen values at angles a*c/b paired
with Bernoulli polynomial values B_q(c/b).  Powers of i are carried
symbolically; at odd weight every surviving monomial is real and the
single real_part call at the end is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd

from .arith import bernoulli_number, bernoulli_poly
from .constants import (PI, IMAG_UNIT, SymbolicValue, mono_weight, real_part,
                        reduce_angle, zeta)


@dataclass(frozen=True)
class EvalRequest:
    a: int
    b: int
    k1: int
    k2: int
    k3: int

    def __post_init__(self):
        if min(self.a, self.b, self.k1, self.k2, self.k3) < 1:
            raise ValueError("all of a, b, k1, k2, k3 must be >= 1")
        if self.weight % 2 == 0:
            raise ValueError("parity theorem applies to odd weight only")

    @property
    def weight(self) -> int:
        return self.k1 + self.k2 + self.k3

    @property
    def swapped(self) -> "EvalRequest":
        return EvalRequest(self.b, self.a, self.k2, self.k1, self.k3)


class TruncatedBiSeries:
    """Exact coefficients of sum c_{r,s} t1^r t2^s, truncated at total
    degree <= degree; multiplication truncates."""

    __slots__ = ("degree", "_coeffs")

    def __init__(self, degree: int, coeffs: dict | None = None):
        if degree < 0:
            raise ValueError("degree bound must be >= 0")
        self.degree = degree
        self._coeffs: dict[tuple[int, int], Fraction] = {}
        if coeffs:
            for (r, s), v in coeffs.items():
                if r + s <= degree and v:
                    self._coeffs[(r, s)] = Fraction(v)

    def coeff(self, r: int, s: int) -> Fraction:
        return self._coeffs.get((r, s), Fraction(0))

    def items(self):
        return sorted(self._coeffs.items())

    def __add__(self, other: "TruncatedBiSeries") -> "TruncatedBiSeries":
        d = min(self.degree, other.degree)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return TruncatedBiSeries(d, out)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, x) -> "TruncatedBiSeries":
        return TruncatedBiSeries(self.degree,
                                 {k: v * x for k, v in self._coeffs.items()})

    def __mul__(self, other: "TruncatedBiSeries") -> "TruncatedBiSeries":
        d = min(self.degree, other.degree)
        out: dict[tuple[int, int], Fraction] = {}
        for (r1, s1), v1 in self._coeffs.items():
            for (r2, s2), v2 in other._coeffs.items():
                r, s = r1 + r2, s1 + s2
                if r + s <= d:
                    out[(r, s)] = out.get((r, s), Fraction(0)) + v1 * v2
        return TruncatedBiSeries(d, out)

    def __eq__(self, other):
        if not isinstance(other, TruncatedBiSeries):
            return NotImplemented
        return self.degree == other.degree and self._coeffs == other._coeffs

    @classmethod
    def exp_t1(cls, c, degree: int) -> "TruncatedBiSeries":
        """e^{c t1} as a bi-series constant in t2."""
        c = Fraction(c)
        return cls(degree, {(p, 0): c ** p / factorial(p)
                            for p in range(degree + 1)})


def _beta0_t1(degree: int) -> TruncatedBiSeries:
    return TruncatedBiSeries(degree, {
        (p, 0): bernoulli_number(p, "at-zero") / factorial(p)
        for p in range(degree + 1)})


def _beta0_neg_t2(degree: int) -> TruncatedBiSeries:
    return TruncatedBiSeries(degree, {
        (0, p): bernoulli_number(p, "at-zero") * Fraction((-1) ** p, factorial(p))
        for p in range(degree + 1)})


def _expm1_ratio(b: int, degree: int) -> TruncatedBiSeries:
    # (e^{b t1 - t2} - 1)/(b t1 - t2) = sum (b t1 - t2)^w / (w+1)!
    coeffs = {
        (p1, p2): Fraction(b ** p1 * (-1) ** p2,
                           factorial(p1) * factorial(p2) * (p1 + p2 + 1))
        for p1 in range(degree + 1) for p2 in range(degree + 1 - p1)}
    return TruncatedBiSeries(degree, coeffs)


def alpha_coeffs(b: int, degree: int) -> TruncatedBiSeries:
    """A_b(r,s): coefficients of beta0(t1) beta0(-t2) (e^{bt1-t2}-1)/(bt1-t2)."""
    if b < 1:
        raise ValueError("b must be >= 1")
    return _beta0_t1(degree) * _beta0_neg_t2(degree) * _expm1_ratio(b, degree)


def alpha_tilde_coeffs(b: int, c: int, degree: int) -> TruncatedBiSeries:
    """Coefficients of -t1 e^{-c t1} beta0(-t2) (e^{bt1-t2}-1)/(bt1-t2)."""
    if not 1 <= c <= b - 1:
        raise ValueError("need 1 <= c <= b-1")
    front = TruncatedBiSeries(degree, {
        (p, 0): -Fraction((-c) ** (p - 1), factorial(p - 1))
        for p in range(1, degree + 1)})
    return front * _beta0_neg_t2(degree) * _expm1_ratio(b, degree)


def zeta_integral_coeff(a: int, b: int, r: int, s: int) -> SymbolicValue:
    """gcd(a,b)^(r+s)/(a^s b^r) * zeta(r+s) for odd r+s, else zero."""
    if min(a, b, r, s) < 1:
        raise ValueError("arguments must be >= 1")
    if (r + s) % 2 == 0:
        return SymbolicValue.zero()
    g = gcd(a, b)
    coeff = Fraction(g ** (r + s), a ** s * b ** r)
    return SymbolicValue.from_factors(coeff, [(zeta(r + s), 1)])


def term1_coeff(req: EvalRequest) -> SymbolicValue:
    """Coefficient block pairing A_b(n2,n3) with the depth-one zeta series;
    monomials come out as (2 pi i)^(n2+n3) rational zeta(k1+s)."""
    a, b, k1, k2, k3 = req.a, req.b, req.k1, req.k2, req.k3
    series = alpha_coeffs(b, k2 + k3)
    out = SymbolicValue.zero()
    for n2 in range(k2 + 1):
        for n3 in range(k3 + 1):
            ab = series.coeff(n2, n3)
            if ab == 0:
                continue
            s = k2 + k3 - n2 - n3
            j = k2 - n2
            if s < 1 or j > s:
                continue
            zv = zeta_integral_coeff(a, 1, k1, s)
            if zv.is_zero:
                continue
            e = n2 + n3
            coeff = ab * comb(s, j) * Fraction(-b) ** j * 2 ** e
            out = out + SymbolicValue.from_factors(
                coeff, [(PI, e), (IMAG_UNIT, e)]) * zv
    return out


def term2_coeff(req: EvalRequest) -> SymbolicValue:
    """Shift-correction block: Clausen values at angles a*c/b weighted by
    Bernoulli polynomial values B_q(c/b); empty when b = 1."""
    a, b, k1, k2, k3 = req.a, req.b, req.k1, req.k2, req.k3
    p = k1 - 1
    out = SymbolicValue.zero()
    for c in range(1, b):
        series = alpha_tilde_coeffs(b, c, k2 + k3)
        angle = Fraction(a * c, b)
        bq_at = Fraction(c, b)
        for n2 in range(1, k2 + 1):
            for n3 in range(k3 + 1):
                at = series.coeff(n2, n3)
                if at == 0:
                    continue
                big_q = k2 + k3 - n2 - n3 + 1
                j = k2 - n2
                if j > big_q - 1:
                    continue
                fixed = at * comb(big_q - 1, j) * Fraction(b) ** j \
                    * (-1) ** (big_q - 1 - j)
                for s in range(1, big_q + 1):
                    q = big_q - s
                    e = n2 + n3 + q - 1
                    base = fixed * Fraction((-1) ** s * 2 ** e,
                                            factorial(q) * a ** s)
                    if (p + s) % 2:
                        # -i * S_{p+s+1}(ac/b) * B_q(c/b)
                        cst = reduce_angle("S", p + s + 1, angle) \
                            * bernoulli_poly(q, bq_at)
                        head = SymbolicValue.from_factors(
                            -base, [(PI, e), (IMAG_UNIT, e + 1)])
                    else:
                        # zeta(p+s+1) B_q(1) - C_{p+s+1}(ac/b) B_q(c/b)
                        cst = SymbolicValue.from_factors(
                            bernoulli_number(q, "at-one"),
                            [(zeta(p + s + 1), 1)]) \
                            - reduce_angle("C", p + s + 1, angle) \
                            * bernoulli_poly(q, bq_at)
                        head = SymbolicValue.from_factors(
                            base, [(PI, e), (IMAG_UNIT, e)])
                    out = out + head * cst
    return out


def g_coefficient(req: EvalRequest) -> SymbolicValue:
    """The full coefficient G_{a,b}(k1,k2,k3), i-powers included.

    The generating function has a third block depending on (t1,t2) and
    (t1,t3) only; its coefficient at t2^k2 t3^k3 with k2,k3 >= 1 is zero,
    so term1 + term2 is the whole coefficient.
    """
    return term1_coeff(req) + term2_coeff(req)


def closed_form(req: EvalRequest) -> SymbolicValue:
    """zeta_{a,b}(k1,k2,k3) = -(1/2) Re[G_{a,b}(k1,k2,k3)+G_{b,a}(k2,k1,k3)]."""
    g = g_coefficient(req) + g_coefficient(req.swapped)
    value = real_part(g) * Fraction(-1, 2)
    for mono, _ in value.terms():
        assert mono_weight(mono) == req.weight, "weight homogeneity broken"
    return value
