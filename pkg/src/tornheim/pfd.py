"""Exact partial-fraction rewriting for products of powers of linear
forms cm*m + cn*n.

A TermSum is a Q-linear combination of products prod_f f^(-e_f).  The
atomic rewrite uses an exact relation alpha*u + beta*w = c*v between two
forms u, w in a term and an eliminator v:

    1/(u w) = (1/(c v)) (alpha/w + beta/u)

iterated until one of u, w disappears from each branch.  Every step can
be verified as an exact polynomial identity in Q[m,n] (verify_step), and
the reducer drives arbitrary products over the six-form set
{m, n, m+n, m+2n, m+3n, 2m+3n} down to the shape m^-e1 n^-e2 (am+bn)^-e3
whose lattice sum is the double series zeta_{a,b}(e1,e2,e3).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd


@dataclass(frozen=True)
class LinearForm:
    cm: int
    cn: int

    def __post_init__(self):
        if self.cm < 0 or self.cn < 0 or (self.cm, self.cn) == (0, 0):
            raise ValueError("form coefficients must be nonnegative, not both zero")
        if gcd(self.cm, self.cn) != 1:
            raise ValueError("forms are stored primitive; carry the gcd in the coefficient")

    @property
    def sort_key(self):
        return (self.cm, self.cn)

    def __str__(self):
        parts = []
        if self.cm:
            parts.append("m" if self.cm == 1 else f"{self.cm}m")
        if self.cn:
            parts.append("n" if self.cn == 1 else f"{self.cn}n")
        return "+".join(parts)


FORM_M = LinearForm(1, 0)
FORM_N = LinearForm(0, 1)
G2_TARGETS = (LinearForm(1, 1), LinearForm(1, 2), LinearForm(1, 3),
              LinearForm(2, 3))
G2_FORMS = (FORM_M, FORM_N) + G2_TARGETS


@dataclass(frozen=True)
class Relation:
    """alpha*u + beta*w = c*v for an ordered pair (u,w); c > 0 is derived
    from the coefficients and checked exactly at use time."""
    alpha: Fraction
    beta: Fraction
    v: LinearForm


def relation_scale(u: LinearForm, w: LinearForm, rel: Relation) -> Fraction:
    sm = rel.alpha * u.cm + rel.beta * w.cm
    sn = rel.alpha * u.cn + rel.beta * w.cn
    c = sm / rel.v.cm if rel.v.cm else sn / rel.v.cn
    if c <= 0 or sm != c * rel.v.cm or sn != c * rel.v.cn:
        raise ValueError(
            f"relation not exactly satisfied: {rel.alpha}({u}) + {rel.beta}({w}) "
            f"is not a positive multiple of {rel.v}")
    return c


# one canonical relation per unordered pair of non-basis G2 forms (keys
# sorted by form order); the eliminator is n in every case
_R = Relation
G2_RELATIONS = {
    (LinearForm(1, 1), LinearForm(1, 2)): _R(Fraction(-1), Fraction(1), FORM_N),
    (LinearForm(1, 1), LinearForm(1, 3)): _R(Fraction(-1), Fraction(1), FORM_N),
    (LinearForm(1, 1), LinearForm(2, 3)): _R(Fraction(-2), Fraction(1), FORM_N),
    (LinearForm(1, 2), LinearForm(1, 3)): _R(Fraction(-1), Fraction(1), FORM_N),
    (LinearForm(1, 2), LinearForm(2, 3)): _R(Fraction(2), Fraction(-1), FORM_N),
    (LinearForm(1, 3), LinearForm(2, 3)): _R(Fraction(2), Fraction(-1), FORM_N),
}

RELATIONS_DOC = "g2-relations/1: " + "; ".join(
    f"{rel.alpha}({u})+{rel.beta}({w})->({rel.v})"
    for (u, w), rel in sorted(G2_RELATIONS.items(),
                              key=lambda kv: (kv[0][0].sort_key, kv[0][1].sort_key)))


@dataclass(frozen=True)
class TermProduct:
    coeff: Fraction
    exponents: tuple[tuple[LinearForm, int], ...]

    @classmethod
    def make(cls, coeff, exponents) -> "TermProduct":
        if isinstance(exponents, dict):
            exponents = exponents.items()
        exps: dict[LinearForm, int] = {}
        for f, e in exponents:
            if e < 0:
                raise ValueError("exponents must be nonnegative")
            if e:
                exps[f] = exps.get(f, 0) + e
        ordered = tuple(sorted(exps.items(), key=lambda p: p[0].sort_key))
        return cls(Fraction(coeff), ordered)

    def exponent(self, form: LinearForm) -> int:
        for f, e in self.exponents:
            if f == form:
                return e
        return 0

    @property
    def support(self) -> tuple[LinearForm, ...]:
        return tuple(f for f, _ in self.exponents)

    @property
    def weight(self) -> int:
        return sum(e for _, e in self.exponents)

    def scaled(self, x) -> "TermProduct":
        return TermProduct(self.coeff * x, self.exponents)


@dataclass(frozen=True)
class TermSum:
    terms: tuple[TermProduct, ...]

    @classmethod
    def make(cls, terms) -> "TermSum":
        merged: dict[tuple, Fraction] = {}
        for t in terms:
            merged[t.exponents] = merged.get(t.exponents, Fraction(0)) + t.coeff
        kept = tuple(TermProduct(c, ex) for ex, c in sorted(
            merged.items(),
            key=lambda kv: tuple((f.sort_key, e) for f, e in kv[0])) if c)
        return cls(kept)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: "TermSum") -> "TermSum":
        return TermSum.make(self.terms + other.terms)

    def scaled(self, x) -> "TermSum":
        return TermSum(tuple(t.scaled(x) for t in self.terms))


def split_pair(t: TermProduct, u: LinearForm, w: LinearForm,
               relation: Relation) -> TermSum:
    """Eliminate the (u,w) pair from t using alpha*u + beta*w = c*v;
    output terms carry pairs (v,u) or (v,w) only, weights preserved."""
    r, s = t.exponent(u), t.exponent(w)
    if u == w or r < 1 or s < 1:
        raise ValueError("term must contain two distinct forms u, w")
    c = relation_scale(u, w, relation)
    rest = [(f, e) for f, e in t.exponents if f != u and f != w]
    out = []
    stack = [(t.coeff, r, s, 0)]
    while stack:
        coeff, eu, ew, ev = stack.pop()
        if eu == 0 or ew == 0:
            out.append(TermProduct.make(
                coeff, rest + [(relation.v, ev), (u, eu), (w, ew)]))
        else:
            stack.append((coeff * relation.alpha / c, eu - 1, ew, ev + 1))
            stack.append((coeff * relation.beta / c, eu, ew - 1, ev + 1))
    return TermSum.make(out)


# ------------------------------------------------------ exact verification

def _poly_mul(p1: dict, p2: dict) -> dict:
    out: dict[tuple[int, int], Fraction] = {}
    for (a1, b1), v1 in p1.items():
        for (a2, b2), v2 in p2.items():
            k = (a1 + a2, b1 + b2)
            out[k] = out.get(k, Fraction(0)) + v1 * v2
    return out


def _form_power(form: LinearForm, e: int) -> dict:
    return {(i, e - i): Fraction(comb(e, i) * form.cm ** i * form.cn ** (e - i))
            for i in range(e + 1)
            if form.cm ** i * form.cn ** (e - i)}


def verify_step(before: TermSum, after: TermSum) -> bool:
    """True iff the sums agree as rational functions of (m,n), decided by
    exact polynomial comparison over the common denominator."""
    degrees: dict[LinearForm, int] = {}
    for t in tuple(before) + tuple(after):
        for f, e in t.exponents:
            degrees[f] = max(degrees.get(f, 0), e)

    def numerator(ts: TermSum) -> dict:
        acc: dict[tuple[int, int], Fraction] = {}
        for t in ts:
            poly = {(0, 0): t.coeff}
            for f, dmax in degrees.items():
                need = dmax - t.exponent(f)
                if need:
                    poly = _poly_mul(poly, _form_power(f, need))
            for k, v in poly.items():
                acc[k] = acc.get(k, Fraction(0)) + v
        return {k: v for k, v in acc.items() if v}

    return numerator(before) == numerator(after)


@dataclass(frozen=True)
class RewriteStep:
    term: TermProduct
    u: LinearForm
    w: LinearForm
    relation: Relation
    produced: TermSum


def _term_json(t: TermProduct) -> dict:
    return {"coeff": [str(t.coeff.numerator), str(t.coeff.denominator)],
            "factors": [{"form": [f.cm, f.cn], "exp": e}
                        for f, e in t.exponents]}


def trace_to_json(trace) -> list:
    out = []
    for st in trace:
        rel = st.relation
        out.append({
            "term": _term_json(st.term),
            "pair": [[st.u.cm, st.u.cn], [st.w.cm, st.w.cn]],
            "relation": {"alpha": str(rel.alpha), "beta": str(rel.beta),
                         "v": [rel.v.cm, rel.v.cn]},
            "produced": [_term_json(t) for t in st.produced],
        })
    return out


def reduce_to_tornheim(ts: TermSum,
                       basis_forms: tuple = (FORM_M, FORM_N),
                       target_forms: tuple = G2_TARGETS,
                       relations: dict | None = None,
                       verify: bool = True,
                       trace: list | None = None) -> TermSum:
    """Rewrite every term down to support {m, n, L} with L a target form.

    Deterministic strategy: in each term take the two smallest distinct
    non-basis forms and eliminate the pair with the table relation.  Each
    step is verified exactly when `verify` is set; a step-count watchdog
    of 4^weight guards termination.
    """
    relations = G2_RELATIONS if relations is None else relations
    allowed = set(basis_forms) | set(target_forms)
    maxweight = 0
    for t in ts:
        if any(f not in allowed for f in t.support):
            raise ValueError("unsupported form system")
        maxweight = max(maxweight, t.weight)
    watchdog = 4 ** maxweight
    steps = 0
    queue = list(ts)
    done = []
    while queue:
        t = queue.pop()
        nonbasis = [f for f, _ in t.exponents if f not in basis_forms]
        if len(nonbasis) <= 1:
            done.append(t)
            continue
        u, w = nonbasis[0], nonbasis[1]
        try:
            rel = relations[(u, w)]
        except KeyError:
            raise ValueError(f"no relation for the pair ({u}, {w})") from None
        pieces = split_pair(t, u, w, rel)
        steps += 1
        if steps > watchdog:
            raise RuntimeError("rewrite exceeded its step budget")
        if verify and not verify_step(TermSum.make([t]), pieces):
            raise RuntimeError(f"rewrite step failed exact verification on {t}")
        if trace is not None:
            trace.append(RewriteStep(t, u, w, rel, pieces))
        queue.extend(pieces)
    result = TermSum.make(done)
    for t in result:
        nonbasis = [f for f, _ in t.exponents if f not in basis_forms]
        if len(nonbasis) != 1 or any(t.exponent(f) < 1 for f in basis_forms):
            raise ValueError(f"term {t} did not reduce to basis-pair + target shape")
        if nonbasis[0] not in target_forms:
            raise ValueError(f"terminal form {nonbasis[0]} is not a target")
    return result
