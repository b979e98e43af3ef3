"""Symbolic constant algebra: canonical monomials, angle reduction,
basis conversion, printing and serialization.

Angle-reduction rules are checked against mpmath's clsin/clcos, an
implementation of the same Clausen values that shares no code with the
package's own Hurwitz-zeta evaluator.
"""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp

from tornheim.constants import (BaseConstant, IMAG_UNIT, PI, SQRT3,
                                SymbolicValue, clausen_c, clausen_s,
                                dirichlet_l3, exact_L_rational, exact_L_value,
                                from_json, imag_part, mono_weight, real_part,
                                reduce_angle, to_dirichlet_basis, to_json,
                                to_latex, to_text, zeta)
from tornheim.numeric import DEFAULT_PRECISION, eval_constant, eval_symbolic

F = Fraction


def sv(coeff, *factors):
    return SymbolicValue.from_factors(coeff, list(factors))


# ------------------------------------------------------- canonical symbols

def test_base_constant_validation():
    with pytest.raises(ValueError):
        BaseConstant("zeta", 1)
    with pytest.raises(ValueError):
        BaseConstant("L3", 0)
    with pytest.raises(ValueError):
        BaseConstant("pi", 2)
    with pytest.raises(ValueError):
        BaseConstant("C", 1, F(1, 5))
    with pytest.raises(ValueError):
        BaseConstant("C", 4, F(3, 5))       # not reflected
    with pytest.raises(ValueError):
        BaseConstant("C", 4, F(1, 3))       # reducible to zeta
    with pytest.raises(ValueError):
        BaseConstant("C", 4, F(1, 6))
    with pytest.raises(ValueError):
        BaseConstant("S", 4, F(1, 6))
    with pytest.raises(ValueError):
        BaseConstant("evenzeta", 4)
    BaseConstant("S", 2, F(1, 3))
    BaseConstant("C", 2, F(1, 5))


def test_monomial_normalization():
    assert sv(1, (IMAG_UNIT, 5)) == sv(1, (IMAG_UNIT, 1))
    assert sv(1, (IMAG_UNIT, 4)) == SymbolicValue.from_rational(1)
    assert sv(1, (SQRT3, 2)) == SymbolicValue.from_rational(3)
    assert sv(1, (SQRT3, 3)) == sv(3, (SQRT3, 1))
    assert sv(2, (PI, 1), (PI, 2)) == sv(2, (PI, 3))
    # i^2 is kept (it is not real); real_part resolves it to -1
    v = sv(1, (IMAG_UNIT, 2))
    assert not v.is_zero
    assert real_part(v) == SymbolicValue.from_rational(-1)


def test_coefficient_accounts_for_carry():
    v = sv(5, (SQRT3, 2), (zeta(3), 1))     # = 15 zeta(3)
    assert v.coefficient([(zeta(3), 1)]) == 15
    assert v.coefficient([(SQRT3, 2), (zeta(3), 1)]) == 5


def test_algebra_ring_axioms():
    x = sv(2, (zeta(3), 1)) + sv(F(1, 2), (PI, 1))
    y = sv(1, (PI, 2)) - SymbolicValue.from_rational(3)
    z = sv(F(-1, 3), (SQRT3, 1), (PI, 1))
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert x - x == SymbolicValue.zero()
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert x ** 0 == SymbolicValue.from_rational(1)
    with pytest.raises(ValueError):
        x ** -1


def test_real_imag_decomposition():
    v = (sv(2, (PI, 1), (IMAG_UNIT, 1)) + sv(3, (zeta(3), 1))
         + sv(1, (IMAG_UNIT, 2)) + sv(5, (IMAG_UNIT, 3)))
    re, im = real_part(v), imag_part(v)
    rebuilt = re + sv(1, (IMAG_UNIT, 1)) * im
    # rebuilt and v agree once both are split into real/imag parts
    assert real_part(rebuilt) == re and imag_part(rebuilt) == im
    assert im == sv(2, (PI, 1)) - SymbolicValue.from_rational(5)
    assert re == sv(3, (zeta(3), 1)) - SymbolicValue.from_rational(1)


# --------------------------------------------------------- angle reduction

def _clausen_ref(kind, j, q):
    # independent reference: mpmath Clausen sums
    fn = mp.clcos if kind == "C" else mp.clsin
    return fn(j, 2 * mp.pi * mp.mpf(q.numerator) / q.denominator)


@pytest.mark.parametrize("kind", ["C", "S"])
@pytest.mark.parametrize("j", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("q", [F(0), F(1, 2), F(1, 3), F(2, 3), F(1, 6),
                               F(5, 6), F(1, 4), F(3, 4), F(1, 5), F(7, 5),
                               F(-1, 3), F(11, 6), F(2, 5), F(3, 8)])
def test_reduce_angle_against_mpmath(kind, j, q):
    with mp.workdps(35):
        got = eval_symbolic(reduce_angle(kind, j, q))
        want = _clausen_ref(kind, j, q % 1)
        assert abs(got - want) <= mp.mpf("1e-30") * (1 + abs(want))


def test_reduce_angle_canonical_forms():
    assert reduce_angle("S", 4, F(0)).is_zero
    assert reduce_angle("S", 4, F(1, 2)).is_zero
    assert reduce_angle("C", 4, F(0)) == sv(1, (zeta(4), 1))
    assert reduce_angle("C", 4, F(1, 2)) == sv(F(1, 8) - 1, (zeta(4), 1))
    assert reduce_angle("C", 3, F(1, 3)) == sv(F(1 - 9, 2 * 9), (zeta(3), 1))
    assert reduce_angle("C", 3, F(1, 6)) == sv(
        (F(1, 4) - 1) * F(-8, 18), (zeta(3), 1))
    assert reduce_angle("S", 3, F(1, 6)) == sv(
        F(5, 4), (clausen_s(3, F(1, 3)), 1))
    assert reduce_angle("S", 3, F(2, 3)) == sv(-1, (clausen_s(3, F(1, 3)), 1))
    assert reduce_angle("C", 5, F(7, 5)) == sv(1, (clausen_c(5, F(2, 5)), 1))
    with pytest.raises(ValueError):
        reduce_angle("C", 1, F(1, 5))
    with pytest.raises(ValueError):
        reduce_angle("X", 3, F(1, 5))


@given(st.integers(2, 7),
       st.fractions(min_value=-2, max_value=2, max_denominator=12))
def test_reduce_angle_periodicity_and_reflection(j, q):
    q = F(q)
    assert reduce_angle("C", j, q) == reduce_angle("C", j, q + 1)
    assert reduce_angle("C", j, -q) == reduce_angle("C", j, q)
    assert reduce_angle("S", j, -q) == -reduce_angle("S", j, q)


# ----------------------------------------------------------- L(j, chi3)

def test_exact_l_rational_table():
    assert exact_L_rational(1) == F(1, 9)
    assert exact_L_rational(3) == F(4, 243)
    assert exact_L_rational(5) == F(4, 2187)
    with pytest.raises(ValueError):
        exact_L_rational(2)


@pytest.mark.parametrize("j", [1, 3, 5, 7, 9])
def test_exact_l_value_numeric(j):
    with mp.workdps(40):
        lhs = eval_constant(dirichlet_l3(j))
        rhs = eval_symbolic(exact_L_value(j))
        assert abs(lhs - rhs) <= mp.mpf("1e-35") * abs(rhs)


# ------------------------------------------------------ dirichlet basis

def test_pi_even_power_becomes_zeta():
    v = to_dirichlet_basis(sv(1, (PI, 2), (zeta(5), 1)), 7)
    assert v == sv(6, (zeta(2), 1), (zeta(5), 1))
    v = to_dirichlet_basis(sv(1, (PI, 4), (zeta(3), 1)), 7)
    assert v == sv(90, (zeta(4), 1), (zeta(3), 1))


def test_s_third_becomes_l_product():
    v = to_dirichlet_basis(sv(1, (PI, 1), (clausen_s(4, F(1, 3)), 1)), 5)
    assert v == sv(F(9, 2), (dirichlet_l3(1), 1), (dirichlet_l3(4), 1))
    with mp.workdps(35):
        lhs = eval_symbolic(sv(1, (PI, 1), (clausen_s(4, F(1, 3)), 1)))
        rhs = eval_symbolic(v)
        assert abs(lhs - rhs) <= mp.mpf("1e-30") * abs(rhs)


def test_bare_zeta_is_kept():
    v = sv(4, (zeta(5), 1)) - sv(F(1, 3), (PI, 2), (zeta(3), 1))
    out = to_dirichlet_basis(v, 5)
    assert out.coefficient([(zeta(5), 1)]) == 4
    assert out.coefficient([(zeta(2), 1), (zeta(3), 1)]) == -2


def test_dirichlet_basis_rejections():
    with pytest.raises(ValueError):
        to_dirichlet_basis(sv(1, (clausen_c(3, F(1, 5)), 1), (PI, 2)), 5)
    with pytest.raises(ValueError):
        to_dirichlet_basis(sv(1, (clausen_s(3, F(1, 4)), 1), (PI, 2)), 5)
    with pytest.raises(ValueError):
        to_dirichlet_basis(sv(1, (PI, 5)), 5)          # odd pi, no sqrt3
    with pytest.raises(ValueError):
        to_dirichlet_basis(sv(1, (SQRT3, 1), (PI, 4)), 5)
    with pytest.raises(ValueError):
        to_dirichlet_basis(sv(1, (IMAG_UNIT, 1), (PI, 5)), 5)
    with pytest.raises(ValueError):
        to_dirichlet_basis(sv(1, (zeta(5), 1)), 4)     # even weight
    with pytest.raises(ValueError):
        to_dirichlet_basis(sv(1, (zeta(5), 1)), 7)     # weight mismatch


def test_mono_weight():
    v = sv(1, (PI, 3), (clausen_s(2, F(1, 3)), 1))
    ((mono, _),) = v.terms()
    assert mono_weight(mono) == 5


# --------------------------------------------------------------- printing

def test_to_text():
    assert to_text(SymbolicValue.zero()) == "0"
    assert to_text(SymbolicValue.from_rational(F(-3, 2))) == "-3/2"
    v = sv(4, (zeta(5), 1)) - sv(F(1, 3), (PI, 2), (zeta(3), 1))
    assert to_text(v) == "4ζ(5) - 1/3 π^2ζ(3)"
    w = sv(F(9, 2), (dirichlet_l3(1), 1), (dirichlet_l3(4), 1))
    assert to_text(w) == "9/2 L(1,χ3)L(4,χ3)"
    assert to_text(sv(-1, (PI, 1), (clausen_s(4, F(1, 3)), 1))) \
        == "-πS_4(1/3)"


def test_to_latex():
    assert to_latex(SymbolicValue.zero()) == "0"
    v = sv(4, (zeta(5), 1)) - sv(F(1, 3), (PI, 2), (zeta(3), 1))
    assert to_latex(v) == r"4\zeta(5)-\frac{\pi^2}{3}\zeta(3)"
    w = sv(F(-4, 81), (PI, 3), (clausen_s(2, F(1, 3)), 1))
    assert to_latex(w) == r"-\frac{4\pi^3}{81}S_2(\tfrac{1}{3})"
    assert to_latex(sv(1, (dirichlet_l3(1), 1), (dirichlet_l3(6), 1))) \
        == r"L(1,\chi_3)L(6,\chi_3)"


# ------------------------------------------------------------ round trips

@given(st.lists(st.tuples(
    st.fractions(min_value=-5, max_value=5, max_denominator=64),
    st.sampled_from(["pi", "sqrt3", "zeta3", "S", "C", "L3", "one"]),
    st.integers(1, 3)), max_size=5))
def test_json_round_trip(spec):
    symbols = {
        "pi": (PI, 1), "sqrt3": (SQRT3, 1), "zeta3": (zeta(3), 1),
        "S": (clausen_s(2, F(1, 3)), 1), "C": (clausen_c(3, F(2, 5)), 1),
        "L3": (dirichlet_l3(2), 1), "one": (PI, 0),
    }
    v = SymbolicValue.zero()
    for coeff, name, e in spec:
        sym, base = symbols[name]
        v = v + sv(coeff, (sym, base * e))
    assert from_json(to_json(v)) == v


def test_json_rejects_garbage():
    with pytest.raises((ValueError, KeyError)):
        from_json('{"terms": [{"num": "1", "den": "1", '
                  '"factors": [{"kind": "zeta", "index": 1, "exp": 1}]}]}')
