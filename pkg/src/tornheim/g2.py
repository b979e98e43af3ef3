"""End-to-end evaluation of the six-form lattice zeta value

    zeta(k1..k6; G2) = sum_{m,n>0} 1/(m^k1 n^k2 (m+n)^k3 (m+2n)^k4
                                      (m+3n)^k5 (2m+3n)^k6)

at odd weight: partial-fraction reduction to double series
zeta_{a,b}(e1,e2,e3) with (a,b) in {(1,1),(1,2),(1,3),(2,3)}, closed
forms via the parity engine, and conversion to the product basis
zeta(2n)zeta(k-2n) / L(2n+1,chi3)L(k-2n-1,chi3).

Every result is verified against the high-precision double series
before it is returned; an identity that fails its numeric check raises
VerificationError instead of being emitted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import numeric, pfd
from .constants import (SymbolicValue, to_dirichlet_basis, to_json_dict,
                        to_latex, to_text)
from .numeric import (DEFAULT_PRECISION, NumericCheckRecord, Precision,
                      check_values, eval_g2_series, eval_symbolic)
from .parity import EvalRequest, closed_form


class VerificationError(RuntimeError):
    """A symbolic result failed its mandatory numeric check."""


@dataclass(frozen=True)
class G2Request:
    ks: tuple[int, int, int, int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "ks", tuple(self.ks))
        if len(self.ks) != 6 or min(self.ks) < 1:
            raise ValueError("need six exponents >= 1")
        if self.weight % 2 == 0:
            raise ValueError("parity theorem applies to odd weight only")

    @property
    def weight(self) -> int:
        return sum(self.ks)


@dataclass
class G2ClosedForm:
    request: G2Request
    clausen: SymbolicValue
    dirichlet: SymbolicValue
    reduction: pfd.TermSum
    checks: dict[str, NumericCheckRecord]
    precision: Precision
    trace: list = field(default_factory=list)

    def reduction_list(self) -> list[tuple[Fraction, int, int, int, int, int]]:
        """[(coeff, a, b, e1, e2, e3)] with the term coeff * zeta_{a,b}(e)."""
        out = []
        for t in self.reduction:
            a, b, (e1, e2, e3) = _term_parameters(t)
            out.append((t.coeff, a, b, e1, e2, e3))
        return out

    def to_json_dict(self) -> dict:
        return {
            "request": list(self.request.ks),
            "weight": self.request.weight,
            "clausen": to_json_dict(self.clausen),
            "dirichlet": to_json_dict(self.dirichlet),
            "clausen_text": to_text(self.clausen),
            "dirichlet_text": to_text(self.dirichlet),
            "latex": to_latex(self.dirichlet),
            "reduction": [
                {"coeff": [str(c.numerator), str(c.denominator)],
                 "a": a, "b": b, "k": [e1, e2, e3]}
                for c, a, b, e1, e2, e3 in self.reduction_list()],
            "checks": {k: v.as_json_dict() for k, v in self.checks.items()},
            "digits": self.precision.digits,
            "tolerance": self.precision.tolerance,
        }


def _term_parameters(t: pfd.TermProduct):
    e1 = t.exponent(pfd.FORM_M)
    e2 = t.exponent(pfd.FORM_N)
    others = [(f, e) for f, e in t.exponents
              if f not in (pfd.FORM_M, pfd.FORM_N)]
    if len(others) != 1 or e1 < 1 or e2 < 1:
        raise ValueError(f"term {t} is not in double-series shape")
    form, e3 = others[0]
    return form.cm, form.cn, (e1, e2, e3)


def request_term_sum(req: G2Request) -> pfd.TermSum:
    """The defining six-form product as a TermSum input for the reducer."""
    return pfd.TermSum.make([pfd.TermProduct.make(
        1, list(zip(pfd.G2_FORMS, req.ks)))])


def evaluate_g2(req: G2Request,
                precision: Precision = DEFAULT_PRECISION,
                collect_trace: bool = False) -> G2ClosedForm:
    trace: list | None = [] if collect_trace else None
    reduced = pfd.reduce_to_tornheim(request_term_sum(req), trace=trace)

    clausen = SymbolicValue.zero()
    for t in reduced:
        a, b, (e1, e2, e3) = _term_parameters(t)
        clausen = clausen + closed_form(EvalRequest(a, b, e1, e2, e3)) * t.coeff
    dirichlet = to_dirichlet_basis(clausen, req.weight)

    series = eval_g2_series(req.ks, precision)
    checks = {
        "clausen": check_values(eval_symbolic(clausen, precision), series,
                                precision, label="clausen vs series"),
        "dirichlet": check_values(eval_symbolic(dirichlet, precision), series,
                                  precision, label="dirichlet vs series"),
    }
    if not all(c.passed for c in checks.values()):
        failed = [c for c in checks.values() if not c.passed]
        raise VerificationError(
            "numeric check failed: " + "; ".join(
                f"{c.label}: residual {c.rel_residual}" for c in failed))
    return G2ClosedForm(request=req, clausen=clausen, dirichlet=dirichlet,
                        reduction=reduced, checks=checks, precision=precision,
                        trace=trace or [])
