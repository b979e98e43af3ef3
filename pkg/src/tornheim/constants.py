"""Symbolic constants: exact Q-linear combinations of monomials in
pi, i, sqrt(3), zeta(j), Clausen values and Dirichlet L-values.

Conventions:
    C_j(q) = Re Li_j(e^{2 pi i q})      S_j(q) = Im Li_j(e^{2 pi i q})
    L(j,chi3) with chi3(n) = +1, -1, 0 for n = 1, 2, 0 mod 3

Canonical form: Clausen angles are reduced mod 1 and reflected into
(0, 1/2); the reducible angles ({0, 1/2, 1/3, 1/6} for C, {0, 1/2, 1/6}
for S) are rewritten to rational multiples of zeta(j) or S_j(1/3), so
equal values within the rule set have equal term maps and == is
syntactic.  i is a symbol with exponent stored mod 4 (real_part does the
projection); sqrt(3)^2 folds into the coefficient as 3.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
import json

from .arith import Rational, bernoulli_number, bernoulli_poly

_KIND_ORDER = {"zeta": 0, "C": 1, "S": 2, "L3": 3, "pi": 4, "sqrt3": 5, "i": 6}
_NO_INDEX = ("pi", "sqrt3", "i")

# a stable description of the canonicalization rules; hashed into output
# records so consumers can tell when the canonical form changed meaning
RULES_DOC = (
    "angle-reduction/1: q mod 1; reflect (C even, S odd) to (0,1/2];"
    " S(0)=S(1/2)=0; C(0)=zeta; C(1/2)=(2^(1-j)-1)zeta;"
    " C(1/3)=(1-3^(j-1))/(2*3^(j-1))zeta; C(1/6)=(2^(1-j)-1)C(1/3);"
    " S(1/6)=(1+2^(1-j))S(1/3); i^4=1; sqrt3^2=3;"
    " dirichlet/1: S_j(1/3)=(sqrt3/2)L(j,chi3); pi^(2n)=ratio*zeta(2n);"
    " sqrt3*pi^j=L(j,chi3)/q_j (odd j); bare zeta(k) kept"
)


@dataclass(frozen=True)
class BaseConstant:
    kind: str
    index: int = 0
    angle: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind in _NO_INDEX:
            if self.index != 0 or self.angle != 0:
                raise ValueError(f"{self.kind} takes no index/angle")
        elif self.kind == "zeta":
            if self.index < 2 or self.angle != 0:
                raise ValueError("zeta index must be >= 2")
        elif self.kind == "L3":
            if self.index < 1 or self.angle != 0:
                raise ValueError("L(j,chi3) index must be >= 1")
        elif self.kind in ("C", "S"):
            if self.index < 2:
                raise ValueError("Clausen index must be >= 2")
            q = self.angle
            if not (0 < q < Fraction(1, 2)):
                raise ValueError(f"Clausen angle {q} not canonical")
            if q in (Fraction(1, 6),) or (self.kind == "C" and q == Fraction(1, 3)):
                raise ValueError(f"angle {q} is reducible; use reduce_angle")
        else:
            raise ValueError(f"unknown constant kind {self.kind!r}")

    @property
    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.index, self.angle)

    @property
    def weight(self) -> int:
        if self.kind == "pi":
            return 1
        if self.kind in ("zeta", "C", "S", "L3"):
            return self.index
        return 0


PI = BaseConstant("pi")
IMAG_UNIT = BaseConstant("i")
SQRT3 = BaseConstant("sqrt3")


def zeta(j: int) -> BaseConstant:
    return BaseConstant("zeta", j)


def dirichlet_l3(j: int) -> BaseConstant:
    return BaseConstant("L3", j)


def clausen_c(j: int, q: Rational) -> BaseConstant:
    return BaseConstant("C", j, Fraction(q))


def clausen_s(j: int, q: Rational) -> BaseConstant:
    return BaseConstant("S", j, Fraction(q))


# a monomial is a sorted tuple of (BaseConstant, exponent >= 1) pairs
Monomial = tuple


def _normalize_monomial(factors) -> tuple[Fraction, Monomial]:
    """Merge duplicate symbols, fold i^4 -> 1 and sqrt3^2 -> 3."""
    exps: dict[BaseConstant, int] = {}
    for sym, e in factors:
        if e:
            exps[sym] = exps.get(sym, 0) + e
    carry = Fraction(1)
    if IMAG_UNIT in exps:
        exps[IMAG_UNIT] %= 4
    if SQRT3 in exps:
        e = exps[SQRT3]
        carry *= Fraction(3) ** (e // 2)
        exps[SQRT3] = e % 2
    mono = tuple(sorted(((s, e) for s, e in exps.items() if e > 0),
                        key=lambda p: p[0].sort_key))
    return carry, mono


def mono_weight(mono: Monomial) -> int:
    return sum(sym.weight * e for sym, e in mono)


def _mono_exp(mono: Monomial, sym: BaseConstant) -> int:
    for s, e in mono:
        if s == sym:
            return e
    return 0


def _display_key(mono: Monomial):
    consts = tuple((p[0].sort_key, p[1]) for p in mono
                   if p[0].kind not in _NO_INDEX)
    return (_mono_exp(mono, PI), len(consts), consts,
            tuple((p[0].sort_key, p[1]) for p in mono))


class SymbolicValue:
    """Exact rational linear combination of constant monomials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        self._terms: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    self._terms[mono] = Fraction(coeff)

    @classmethod
    def zero(cls) -> "SymbolicValue":
        return cls()

    @classmethod
    def from_rational(cls, x: Rational) -> "SymbolicValue":
        return cls({(): Fraction(x)})

    @classmethod
    def from_factors(cls, coeff: Rational, factors) -> "SymbolicValue":
        """coeff * prod of (BaseConstant, exponent) pairs."""
        carry, mono = _normalize_monomial(factors)
        return cls({mono: Fraction(coeff) * carry})

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: _display_key(t[0]))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, factors) -> Fraction:
        """Coefficient of the monomial given as (symbol, exponent) pairs."""
        carry, mono = _normalize_monomial(factors)
        return self._terms.get(mono, Fraction(0)) / carry

    def __add__(self, other):
        if not isinstance(other, SymbolicValue):
            return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return SymbolicValue(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SymbolicValue({m: -c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return SymbolicValue()
            return SymbolicValue({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, SymbolicValue):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                carry, mono = _normalize_monomial(list(m1) + list(m2))
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2 * carry
        return SymbolicValue(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers unsupported")
        out = SymbolicValue.from_rational(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SymbolicValue):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self):
        return f"SymbolicValue({to_text(self)!r})"


def real_part(v: SymbolicValue) -> SymbolicValue:
    """Project onto the real line: i^0 -> 1, i^2 -> -1, odd powers -> 0."""
    out: dict[Monomial, Fraction] = {}
    for mono, coeff in v._terms.items():
        e = _mono_exp(mono, IMAG_UNIT)
        if e % 2:
            continue
        if e == 2:
            coeff = -coeff
        mono = tuple(p for p in mono if p[0] != IMAG_UNIT)
        out[mono] = out.get(mono, Fraction(0)) + coeff
    return SymbolicValue(out)


def imag_part(v: SymbolicValue) -> SymbolicValue:
    """The real value w with v = real_part(v) + i*w."""
    out: dict[Monomial, Fraction] = {}
    for mono, coeff in v._terms.items():
        e = _mono_exp(mono, IMAG_UNIT)
        if e % 2 == 0:
            continue
        if e == 3:
            coeff = -coeff
        mono = tuple(p for p in mono if p[0] != IMAG_UNIT)
        out[mono] = out.get(mono, Fraction(0)) + coeff
    return SymbolicValue(out)


def _c_third(j: int) -> Fraction:
    # C_j(1/3) = (1 - 3^(j-1)) / (2 * 3^(j-1))
    return Fraction(1 - 3 ** (j - 1), 2 * 3 ** (j - 1))


def reduce_angle(kind: str, j: int, q: Rational) -> SymbolicValue:
    """Canonical value of C_j(q) or S_j(q) for rational q."""
    if kind not in ("C", "S"):
        raise ValueError("kind must be 'C' or 'S'")
    if j < 2:
        raise ValueError("Clausen index must be >= 2 (polylog divergence)")
    q = Fraction(q) % 1
    sign = 1
    if q > Fraction(1, 2):
        q = 1 - q
        if kind == "S":
            sign = -1
    if kind == "S":
        if q == 0 or q == Fraction(1, 2):
            return SymbolicValue.zero()
        if q == Fraction(1, 6):
            coeff = sign * (1 + Fraction(1, 2 ** (j - 1)))
            return SymbolicValue.from_factors(coeff, [(clausen_s(j, Fraction(1, 3)), 1)])
        return SymbolicValue.from_factors(sign, [(clausen_s(j, q), 1)])
    if q == 0:
        return SymbolicValue.from_factors(1, [(zeta(j), 1)])
    if q == Fraction(1, 2):
        return SymbolicValue.from_factors(Fraction(1, 2 ** (j - 1)) - 1, [(zeta(j), 1)])
    if q == Fraction(1, 3):
        return SymbolicValue.from_factors(_c_third(j), [(zeta(j), 1)])
    if q == Fraction(1, 6):
        coeff = (Fraction(1, 2 ** (j - 1)) - 1) * _c_third(j)
        return SymbolicValue.from_factors(coeff, [(zeta(j), 1)])
    return SymbolicValue.from_factors(1, [(clausen_c(j, q), 1)])


def exact_L_rational(j: int) -> Fraction:
    """q_j with L(j,chi3) = q_j * sqrt(3) * pi^j, for odd j >= 1."""
    if j < 1 or j % 2 == 0:
        raise ValueError("closed form exists only for odd index >= 1")
    sign = -1 if ((j + 1) // 2) % 2 else 1
    return sign * Fraction(2 ** j) * bernoulli_poly(j, Fraction(1, 3)) / (3 * factorial(j))


def exact_L_value(j: int) -> SymbolicValue:
    """L(j,chi3) for odd j as a rational multiple of sqrt(3)*pi^j."""
    return SymbolicValue.from_factors(exact_L_rational(j), [(SQRT3, 1), (PI, j)])


def _pi_even_to_zeta(e: int) -> Fraction:
    # pi^(2n) = ratio * zeta(2n) by zeta(2n) = (-1)^(n+1) B_2n (2pi)^(2n) / (2 (2n)!)
    n = e // 2
    z_coeff = Fraction((-1) ** (n + 1)) * bernoulli_number(e, "at-zero") \
        * Fraction(2 ** e) / (2 * factorial(e))
    return 1 / z_coeff


def to_dirichlet_basis(v: SymbolicValue, k: int) -> SymbolicValue:
    """Rewrite an odd-weight value over {pi, sqrt3, zeta, S_j(1/3)} into
    products zeta(a)zeta(b) / L(a,chi3)L(b,chi3) (bare zeta(k) kept)."""
    if k % 2 == 0:
        raise ValueError("weight must be odd")
    half = SymbolicValue.from_factors(Fraction(1, 2), [(SQRT3, 1)])
    staged = SymbolicValue.zero()
    for mono, coeff in v.terms():
        acc = SymbolicValue.from_rational(coeff)
        for sym, e in mono:
            if sym.kind == "S":
                if sym.angle != Fraction(1, 3):
                    raise ValueError(
                        f"not in G2 constant field: S_{sym.index}({sym.angle})")
                repl = half * SymbolicValue.from_factors(1, [(dirichlet_l3(sym.index), 1)])
                acc = acc * repl ** e
            elif sym.kind == "C":
                raise ValueError(
                    f"not in G2 constant field: C_{sym.index}({sym.angle})")
            else:
                acc = acc * SymbolicValue.from_factors(1, [(sym, e)])
        staged = staged + acc
    out = SymbolicValue.zero()
    for mono, coeff in staged.terms():
        if _mono_exp(mono, IMAG_UNIT):
            raise ValueError("imaginary units present; take real_part first")
        e_pi = _mono_exp(mono, PI)
        has_s3 = _mono_exp(mono, SQRT3) == 1
        rest = [(s, e) for s, e in mono if s.kind not in ("pi", "sqrt3")]
        if has_s3:
            if e_pi % 2 == 0:
                raise ValueError("sqrt(3) with even pi power has no L-product form")
            coeff /= exact_L_rational(e_pi)
            rest.append((dirichlet_l3(e_pi), 1))
        elif e_pi:
            if e_pi % 2:
                raise ValueError("odd pi power without sqrt(3) has no product form")
            coeff *= _pi_even_to_zeta(e_pi)
            rest.append((zeta(e_pi), 1))
        out = out + SymbolicValue.from_factors(coeff, rest)
    for mono, _ in out.terms():
        if mono_weight(mono) != k:
            raise ValueError(f"weight {mono_weight(mono)} term in weight-{k} value")
    return out


# ---------------------------------------------------------------- printing

_TEXT_NAMES = {"pi": "π", "sqrt3": "√3", "i": "i"}


def _sym_text(sym: BaseConstant, e: int) -> str:
    if sym.kind in _NO_INDEX:
        s = _TEXT_NAMES[sym.kind]
    elif sym.kind == "zeta":
        s = f"ζ({sym.index})"
    elif sym.kind == "L3":
        s = f"L({sym.index},χ3)"
    else:
        s = f"{sym.kind}_{sym.index}({sym.angle})"
    return s if e == 1 else f"{s}^{e}"


def to_text(v: SymbolicValue) -> str:
    if v.is_zero:
        return "0"
    parts = []
    for mono, coeff in v.terms():
        prefix = [p for p in mono if p[0].kind in _NO_INDEX]
        consts = [p for p in mono if p[0].kind not in _NO_INDEX]
        body = "".join(_sym_text(s, e) for s, e in prefix + consts)
        n, d = abs(coeff.numerator), coeff.denominator
        if d == 1:
            cs = "" if (n == 1 and body) else str(n)
        else:
            cs = f"{n}/{d}" + (" " if body else "")
        piece = cs + body
        if not parts:
            parts.append(("-" if coeff < 0 else "") + piece)
        else:
            parts.append(("- " if coeff < 0 else "+ ") + piece)
    return " ".join(parts)


def _exp_latex(e: int) -> str:
    if e == 1:
        return ""
    return f"^{e}" if e < 10 else f"^{{{e}}}"


def _sub_latex(j: int) -> str:
    return f"_{j}" if j < 10 else f"_{{{j}}}"


def _sym_latex(sym: BaseConstant, e: int) -> str:
    if sym.kind == "zeta":
        s = rf"\zeta({sym.index})"
    elif sym.kind == "L3":
        s = rf"L({sym.index},\chi_3)"
    else:
        q = sym.angle
        s = (sym.kind + _sub_latex(sym.index)
             + rf"(\tfrac{{{q.numerator}}}{{{q.denominator}}})")
    return s + _exp_latex(e)


def to_latex(v: SymbolicValue) -> str:
    if v.is_zero:
        return "0"
    parts = []
    for mono, coeff in v.terms():
        num_factors = []
        n, d = abs(coeff.numerator), coeff.denominator
        i_e = _mono_exp(mono, IMAG_UNIT)
        s3 = _mono_exp(mono, SQRT3)
        pi_e = _mono_exp(mono, PI)
        if n != 1:
            num_factors.append(str(n))
        if i_e:
            num_factors.append("i" + _exp_latex(i_e))
        if s3:
            num_factors.append(r"\sqrt{3}")
        if pi_e:
            num_factors.append(r"\pi" + _exp_latex(pi_e))
        consts = "".join(_sym_latex(s, e) for s, e in mono
                         if s.kind not in _NO_INDEX)
        numerator = "".join(num_factors)
        if d == 1:
            body = numerator + consts
            if not body:
                body = "1"
        else:
            body = rf"\frac{{{numerator or '1'}}}{{{d}}}" + consts
        if not parts:
            parts.append(("-" if coeff < 0 else "") + body)
        else:
            parts.append(("-" if coeff < 0 else "+") + body)
    return "".join(parts)


# ------------------------------------------------------------ serialization

def to_json_dict(v: SymbolicValue) -> dict:
    terms = []
    for mono, coeff in v.terms():
        factors = []
        for sym, e in mono:
            f = {"kind": sym.kind, "exp": e}
            if sym.kind not in _NO_INDEX:
                f["index"] = sym.index
            if sym.kind in ("C", "S"):
                f["angle"] = [str(sym.angle.numerator), str(sym.angle.denominator)]
            factors.append(f)
        terms.append({"num": str(coeff.numerator),
                      "den": str(coeff.denominator),
                      "factors": factors})
    return {"terms": terms}


def from_json_dict(d: dict) -> SymbolicValue:
    out = SymbolicValue.zero()
    for t in d["terms"]:
        coeff = Fraction(int(t["num"]), int(t["den"]))
        factors = []
        for f in t["factors"]:
            kind = f["kind"]
            if kind in _NO_INDEX:
                sym = BaseConstant(kind)
            elif kind in ("C", "S"):
                angle = Fraction(int(f["angle"][0]), int(f["angle"][1]))
                sym = BaseConstant(kind, f["index"], angle)
            else:
                sym = BaseConstant(kind, f["index"])
            factors.append((sym, f["exp"]))
        out = out + SymbolicValue.from_factors(coeff, factors)
    return out


def to_json(v: SymbolicValue) -> str:
    return json.dumps(to_json_dict(v))


def from_json(s: str) -> SymbolicValue:
    return from_json_dict(json.loads(s))
