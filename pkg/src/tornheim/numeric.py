"""High-precision numeric evaluation: the independent oracle against
which every symbolic identity is checked.

Lattice sums sum_{m,n>=1} prod_f (cm_f*m + cn_f*n)^(-beta_f) are
evaluated by summing the inner variable exactly: partial fractions turn
each inner sum into Hurwitz zeta and digamma values with exact rational
coefficients.  The outer variable is summed to a cutoff M and the tail
is summed in closed form from the Euler-Maclaurin asymptotics of
zeta(j, 1+qm) and psi(1+qm); every asymptotic coefficient is an exact
rational, divergent pieces must cancel exactly, and the reported tail
bound is the first omitted term of each expansion (valid because the
summands are completely monotone).  Results carry a rigorous bound or
the evaluation raises; there is no silent truncation.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd, ceil, log10

import mpmath
from mpmath import mp

from .arith import bernoulli_number
from .constants import BaseConstant, SymbolicValue, _mono_exp, IMAG_UNIT

_MAX_CUTOFF = 50000


class PrecisionError(RuntimeError):
    """Requested tolerance not reachable within the evaluation budget."""


@dataclass(frozen=True)
class Precision:
    digits: int = 30
    tolerance: float = 1e-10

    def __post_init__(self):
        if not (0 < self.tolerance < 1):
            raise ValueError("tolerance must be in (0,1)")
        need = ceil(-log10(self.tolerance)) + 10
        if self.digits < need:
            raise ValueError(
                f"{self.digits} digits leaves no guard digits for "
                f"tolerance {self.tolerance}; need >= {need}")

    @property
    def dps(self) -> int:
        # internal guard digits on top of the reporting precision
        return self.digits + 10


DEFAULT_PRECISION = Precision()


@dataclass
class NumericCheckRecord:
    label: str
    lhs: str
    rhs: str
    abs_residual: str
    rel_residual: str
    tolerance: float
    digits: int
    passed: bool
    cutoff: int | None = None

    def as_json_dict(self) -> dict:
        return {
            "label": self.label, "lhs": self.lhs, "rhs": self.rhs,
            "abs_residual": self.abs_residual,
            "rel_residual": self.rel_residual,
            "tolerance": self.tolerance, "digits": self.digits,
            "passed": self.passed, "cutoff": self.cutoff,
        }


def check_values(lhs, rhs, precision: Precision = DEFAULT_PRECISION,
                 label: str = "", cutoff: int | None = None) -> NumericCheckRecord:
    """Compare two reals: relative residual, absolute below a 1e-6 floor."""
    with mp.workdps(precision.dps):
        lhs, rhs = mp.mpf(lhs), mp.mpf(rhs)
        diff = abs(lhs - rhs)
        scale = abs(rhs)
        rel = diff / scale if scale >= mp.mpf("1e-6") else diff
        passed = rel <= mp.mpf(precision.tolerance)
        return NumericCheckRecord(
            label=label, lhs=mp.nstr(lhs, precision.digits),
            rhs=mp.nstr(rhs, precision.digits),
            abs_residual=mp.nstr(diff, 5), rel_residual=mp.nstr(rel, 5),
            tolerance=precision.tolerance, digits=precision.digits,
            passed=bool(passed), cutoff=cutoff)


# ------------------------------------------------------------ constants

_const_cache: dict[tuple, object] = {}


def eval_constant(c: BaseConstant, precision: Precision = DEFAULT_PRECISION):
    """One base constant as a real at working precision.

    Clausen values via periodic grouping over one period N:
    C_j(d/N) = N^-j sum_{r=1..N} cos(2 pi r d/N) zeta(j, r/N), same with
    sin; L(j,chi3) = 3^-j (zeta(j,1/3) - zeta(j,2/3)), digamma at j=1.
    """
    key = (c, precision.dps)
    if key in _const_cache:
        return _const_cache[key]
    with mp.workdps(precision.dps):
        if c.kind == "pi":
            v = +mp.pi
        elif c.kind == "sqrt3":
            v = mp.sqrt(3)
        elif c.kind == "i":
            raise ValueError("imaginary unit has no real evaluation")
        elif c.kind == "zeta":
            v = mp.zeta(c.index)
        elif c.kind == "L3":
            if c.index == 1:
                v = -(mp.psi(0, mp.mpf(1) / 3) - mp.psi(0, mp.mpf(2) / 3)) / 3
            else:
                third = mp.mpf(1) / 3
                v = (mp.zeta(c.index, third)
                     - mp.zeta(c.index, 2 * third)) / mp.mpf(3) ** c.index
        else:
            j, q = c.index, c.angle
            N, d = q.denominator, q.numerator
            trig = mp.cos if c.kind == "C" else mp.sin
            v = mp.fsum(trig(2 * mp.pi * r * d / N) * mp.zeta(j, mp.mpf(r) / N)
                        for r in range(1, N + 1)) / mp.mpf(N) ** j
    _const_cache[key] = v
    return v


def eval_symbolic(v: SymbolicValue, precision: Precision = DEFAULT_PRECISION):
    """Exact-coefficient sum of evaluated monomials; rejects i factors."""
    with mp.workdps(precision.dps):
        total = mp.mpf(0)
        for mono, coeff in v.terms():
            if _mono_exp(mono, IMAG_UNIT):
                raise ValueError("imaginary units present; take real_part first")
            x = mp.mpf(coeff.numerator) / coeff.denominator
            for sym, e in mono:
                x *= eval_constant(sym, precision) ** e
            total += x
        return total


# ------------------------------------------------------------ lattice sums

def _partial_fraction_coeffs(shifts_betas):
    """1/prod_i (u+q_i)^{b_i} = sum gamma_{i,j}/(u+q_i)^j as {(q_i,j): gamma}.

    gamma_{i,j} = T_i^{(b_i-j)}(-q_i)/(b_i-j)! with T_i the product of the
    other factors; derivatives via the log-derivative recursion, exactly.
    """
    out = {}
    for i, (qi, bi) in enumerate(shifts_betas):
        others = [(ql, bl) for l, (ql, bl) in enumerate(shifts_betas) if l != i]
        t0 = Fraction(1)
        for ql, bl in others:
            t0 *= (ql - qi) ** (-bl)
        maxt = bi - 1
        logd = [Fraction(0)] * (maxt + 1)
        for r in range(1, maxt + 1):
            logd[r] = -sum(Fraction(bl * (-1) ** (r - 1) * factorial(r - 1))
                           / (ql - qi) ** r for ql, bl in others)
        derivs = [t0]
        for k in range(1, maxt + 1):
            derivs.append(sum(Fraction(comb(k - 1, r)) * logd[r + 1]
                              * derivs[k - 1 - r] for r in range(k)))
        for t in range(bi):
            out[(qi, bi - t)] = derivs[t] / factorial(t)
    return out


def _normalize_factors(factors):
    """[(cm, cn, beta)] -> primitive merged forms and a rational prefactor."""
    merged: dict[tuple, int] = {}
    scale = Fraction(1)
    for cm, cn, beta in factors:
        if cm < 0 or cn < 0 or (cm, cn) == (0, 0) or beta < 1:
            raise ValueError(f"bad factor ({cm},{cn})^{beta}")
        g = gcd(cm, cn)
        scale *= Fraction(g) ** (-beta)
        key = (cm // g, cn // g)
        merged[key] = merged.get(key, 0) + beta
    return merged, scale


def _lattice_pass(merged, scale, dps, M, K):
    """One evaluation at cutoff M; returns (value, tail_bound)."""
    A = 0
    cn_scale = Fraction(1)
    shifts: dict[Fraction, int] = {}
    for (cm, cn), b in merged.items():
        if cn == 0:
            A += b
            cn_scale *= Fraction(cm) ** (-b)
        else:
            cn_scale *= Fraction(cn) ** (-b)
            shifts[Fraction(cm, cn)] = shifts.get(Fraction(cm, cn), 0) + b
    B = sum(shifts.values())
    if B < 2:
        raise ValueError("inner sum does not converge")

    gamma = _partial_fraction_coeffs(sorted(shifts.items()))
    # residues of the 1/u parts sum to zero; the log divergences of the
    # digamma terms cancel pairwise because of it
    assert sum(g for (q, j), g in gamma.items() if j == 1) == 0

    with mp.workdps(dps):
        def inner_sum(m):
            tot = mp.mpf(0)
            for (q, j), g in gamma.items():
                gm = mp.mpf(g.numerator) / g.denominator
                if j >= 2:
                    if q == 0:
                        h = mp.zeta(j)
                    else:
                        h = mp.zeta(j, 1 + mp.mpf(q.numerator) * m / q.denominator)
                    tot += gm * mp.power(m, j - B) * h
                else:
                    x = mp.mpf(1) if q == 0 else 1 + mp.mpf(q.numerator) * m / q.denominator
                    tot -= gm * mp.power(m, 1 - B) * mp.psi(0, x)
            return tot * mp.power(m, -A)

        head = mp.fsum(inner_sum(m) for m in range(1, M + 1))

        # tail coefficients, exact: c[r][symbol] multiplies zeta(r, M+1),
        # d[r] multiplies -zeta'(r, M+1); symbols are 1, euler-gamma,
        # zeta(j) and log q
        c: dict[int, dict] = defaultdict(lambda: defaultdict(Fraction))
        d: dict[int, Fraction] = defaultdict(Fraction)
        bound = mp.mpf(0)

        def b2(r):
            return bernoulli_number(r, "at-zero")

        for (q, j), g in gamma.items():
            if j >= 2:
                if q == 0:
                    r = A + B - j
                    if r < 2:
                        raise ValueError("outer sum does not converge")
                    c[r][("zeta", j)] += g
                    continue
                base = A + B - j
                c[base + j - 1][1] += g * q ** (1 - j) / (j - 1)
                c[base + j][1] += -g * q ** (-j) / 2
                for rr in range(1, K + 1):
                    rise = Fraction(1)
                    for t in range(2 * rr - 1):
                        rise *= j + t
                    c[base + j - 1 + 2 * rr][1] += (g * b2(2 * rr) * rise
                                                    / factorial(2 * rr)
                                                    * q ** (1 - j - 2 * rr))
                rise = Fraction(1)
                for t in range(2 * K + 1):
                    rise *= j + t
                omit = abs(g * b2(2 * K + 2) / factorial(2 * K + 2) * rise
                           * q ** (1 - j - 2 * K - 2))
                bound += (mp.mpf(omit.numerator) / omit.denominator
                          * mp.zeta(base + j + 1 + 2 * K, M + 1))
            else:
                gg = -g
                r0 = A + B - 1
                if r0 < 2:
                    raise ValueError("outer sum does not converge")
                if q == 0:
                    c[r0][("gamma",)] += -gg
                    continue
                c[r0][("logq", q)] += gg
                d[r0] += gg
                c[r0 + 1][1] += gg / (2 * q)
                for rr in range(1, K + 1):
                    c[r0 + 2 * rr][1] += -gg * b2(2 * rr) / (2 * rr * q ** (2 * rr))
                omit = abs(gg * b2(2 * K + 2) / ((2 * K + 2) * q ** (2 * K + 2)))
                bound += (mp.mpf(omit.numerator) / omit.denominator
                          * mp.zeta(r0 + 2 * K + 2, M + 1))

        # any formally divergent coefficient must have cancelled exactly
        for r in [r for r in c if r < 2]:
            for sym, val in c[r].items():
                assert val == 0, f"divergent tail term m^-{r} {sym}"
            del c[r]
        for r in [r for r in d if r < 2]:
            assert d[r] == 0, f"divergent tail term log(m) m^-{r}"
            del d[r]

        tail = mp.mpf(0)
        for r, syms in sorted(c.items()):
            coef = mp.mpf(0)
            for sym, val in syms.items():
                x = mp.mpf(val.numerator) / val.denominator
                if sym == 1:
                    coef += x
                elif sym == ("gamma",):
                    coef += x * mp.euler
                elif sym[0] == "zeta":
                    coef += x * mp.zeta(sym[1])
                else:
                    coef += x * mp.log(mp.mpf(sym[1].numerator) / sym[1].denominator)
            tail += coef * mp.zeta(r, M + 1)
        for r, val in sorted(d.items()):
            tail += -mp.mpf(val.numerator) / val.denominator * mp.zeta(r, M + 1, 1)

        prefactor = scale * cn_scale
        pref = mp.mpf(prefactor.numerator) / prefactor.denominator
        return (head + tail) * pref, abs(bound * pref)


def lattice_sum(factors, precision: Precision = DEFAULT_PRECISION,
                cutoff: int | None = None, swap: bool | None = None,
                order: int = 10):
    """sum_{m,n>=1} prod (cm*m+cn*n)^-beta with a rigorous tail bound.

    factors: iterable of (cm, cn, beta).  Returns (value, bound).  The
    orientation (which variable is summed exactly) is chosen to maximize
    the smallest Hurwitz shift unless `swap` forces it; `cutoff` seeds
    the outer cutoff M, which doubles until the bound meets tolerance.
    """
    merged, scale = _normalize_factors(factors)

    def min_shift(inner_second: bool) -> Fraction:
        qs = [Fraction(cm, cn) if inner_second else Fraction(cn, cm)
              for (cm, cn) in merged
              if cm > 0 and cn > 0]
        return min(qs) if qs else Fraction(1)

    if swap is None:
        swap = min_shift(False) > min_shift(True)
    if swap:
        merged = {(cn, cm): b for (cm, cn), b in merged.items()}

    qmin = min((Fraction(cm, cn) for (cm, cn) in merged if cn > 0 and cm > 0),
               default=Fraction(1))
    M = cutoff if cutoff is not None else max(40, int(24 / qmin) + 1)
    while True:
        value, bound = _lattice_pass(merged, scale, precision.dps, M, order)
        target = mp.mpf(precision.tolerance) * max(abs(value), mp.mpf("1e-30"))
        if bound <= target:
            return value, bound
        if 2 * M > _MAX_CUTOFF:
            raise PrecisionError(
                f"tail bound {mp.nstr(bound, 3)} above tolerance at cutoff {M}")
        M *= 2


def eval_tornheim(a: int, b: int, k1: int, k2: int, k3: int,
                  precision: Precision = DEFAULT_PRECISION):
    """sum_{m,n>0} m^-k1 n^-k2 (a m + b n)^-k3 numerically."""
    if min(a, b, k1, k2, k3) < 1:
        raise ValueError("all parameters must be >= 1")
    if k1 + k2 + k3 < 4:
        raise ValueError("weight must be >= 4 for comfortable convergence")
    value, _ = lattice_sum([(1, 0, k1), (0, 1, k2), (a, b, k3)], precision)
    return value


def eval_g2_series(ks, precision: Precision = DEFAULT_PRECISION):
    """The six-form double series over m,n>0 with exponents k1..k6."""
    ks = tuple(ks)
    if len(ks) != 6 or min(ks) < 1:
        raise ValueError("need six exponents >= 1")
    forms = [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)]
    value, _ = lattice_sum([(cm, cn, k) for (cm, cn), k in zip(forms, ks)],
                           precision)
    return value
