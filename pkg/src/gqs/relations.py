"""Quadratic and triple relation templates, checked exactly on CAO matrices.

Signs xi, eta, eps are the integers +1/-1.  A triple relation instance keeps
its right-hand side both as a matrix and as coefficients over the CAOs, so it
can be compared entry by entry with :func:`extract_triple_coefficients`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .cases import CAOSet
from .exactfield import Scalar, render
from .superlinalg import Subspace, SuperMatrix, render_matrix, superbracket, zero

SIGNS = (1, -1)
OpKey = Tuple[int, int]  # (pair index, sign)


class DomainMismatch(ValueError):
    pass


class ExpansionFailure(RuntimeError):
    pass


def _s(x: int) -> str:
    return "+" if x > 0 else "-"


def _neg1(exponent) -> int:
    e = Fraction(exponent)
    if e.denominator != 1:
        raise ValueError(f"non-integer sign exponent {e}")
    return -1 if int(e) % 2 else 1


def _sort_key(key: tuple) -> tuple:
    # quadratic keys start with a tag string, triple keys with an int
    return tuple((1, x) if isinstance(x, str) else (0, x) for x in key)


def _delta(a, b) -> int:
    return 1 if a == b else 0


@dataclass
class RelationInstance:
    key: tuple
    text: str
    lhs: SuperMatrix
    rhs: SuperMatrix
    terms: Optional[Dict[OpKey, Scalar]] = None


@dataclass
class RelationTemplate:
    id: str
    index_domain: str
    lhs: str
    rhs: str
    generate: Callable[[CAOSet], Iterator[RelationInstance]] = field(repr=False)
    domain_check: Callable[[CAOSet], Optional[str]] = field(repr=False)

    def instances(self, caos: CAOSet) -> List[RelationInstance]:
        problem = self.domain_check(caos)
        if problem:
            raise DomainMismatch(f"{self.id} on {caos.case_id}: {problem}")
        return sorted(self.generate(caos), key=lambda inst: _sort_key(inst.key))


@dataclass
class RelationReport:
    template: str
    case: str
    total: int
    failures: List[Tuple[tuple, str]]

    @property
    def verdict(self) -> str:
        return "pass" if not self.failures else "fail"

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self, limit: int = 20) -> dict:
        return {
            "template": self.template,
            "case": self.case,
            "total": self.total,
            "n_failures": len(self.failures),
            "failures": [{"tuple": list(map(str, k)), "residual": r} for k, r in self.failures[:limit]],
            "verdict": self.verdict,
        }


def _combine(caos: CAOSet, terms: Dict[OpKey, Scalar]) -> SuperMatrix:
    out = zero(caos.context)
    for (i, s), c in sorted(terms.items()):
        if c:
            out = out + caos.op(i, s).scale(c)
    return out


def _triple(caos: CAOSet, a: OpKey, b: OpKey, c: OpKey) -> SuperMatrix:
    return superbracket(superbracket(caos.op(*a), caos.op(*b)), caos.op(*c))


def _triple_instance(caos, a, b, c, terms, name="x") -> RelationInstance:
    terms = {k: Scalar.coerce(v) for k, v in terms.items() if v}
    lhs = _triple(caos, a, b, c)
    text = f"[[[[{name}_{a[0] + 1}^{_s(a[1])}, {name}_{b[0] + 1}^{_s(b[1])}]], {name}_{c[0] + 1}^{_s(c[1])}]]"
    key = (a[0], a[1], b[0], b[1], c[0], c[1])
    return RelationInstance(key, text, lhs, _combine(caos, terms), terms)


def _bracket_eq(caos, key, a, b, c=None, d=None, text="") -> RelationInstance:
    lhs = superbracket(caos.op(*a), caos.op(*b))
    rhs = superbracket(caos.op(*c), caos.op(*d)) if c is not None else zero(caos.context)
    return RelationInstance(key, text, lhs, rhs, None)


def _add(terms: Dict[OpKey, object], key: OpKey, coeff) -> None:
    if coeff:
        terms[key] = terms.get(key, 0) + coeff


# ---------------------------------------------------------------------------
# para-Bose / para-Fermi / mixed


def _uniform_kind(caos: CAOSet) -> Optional[str]:
    if len(set(caos.kinds)) > 1:
        return "operators of different kinds"
    return None


def _mixed_kinds(caos: CAOSet) -> Optional[str]:
    if any(k not in (0, 1) for k in caos.kinds):
        return "every pair needs a kind label 0 (para-Fermi) or 1 (para-Bose)"
    return None


def _gen_pb(swapped: bool):
    def gen(caos: CAOSet):
        r = range(caos.N)
        for j, k, l in itertools.product(r, r, r):
            for xi, eta, eps in itertools.product(SIGNS, SIGNS, SIGNS):
                terms: Dict[OpKey, int] = {}
                if swapped:
                    _add(terms, (k, eta), (eps - xi) * _delta(j, l))
                    _add(terms, (j, xi), (eps - eta) * _delta(k, l))
                else:
                    _add(terms, (k, xi), (eps - xi) * _delta(j, l))
                    _add(terms, (j, eta), (eps - eta) * _delta(k, l))
                yield _triple_instance(caos, (j, xi), (k, eta), (l, eps), terms, "B")

    return gen


def _gen_pf(caos: CAOSet):
    r = range(caos.N)
    for j, k, l in itertools.product(r, r, r):
        for xi, eta, eps in itertools.product(SIGNS, SIGNS, SIGNS):
            terms: Dict[OpKey, Fraction] = {}
            _add(terms, (j, xi), Fraction((eps - eta) ** 2, 2) * _delta(k, l))
            _add(terms, (k, eta), -Fraction((eps - xi) ** 2, 2) * _delta(j, l))
            yield _triple_instance(caos, (j, xi), (k, eta), (l, eps), terms, "F")


def _gen_mix(caos: CAOSet):
    r = range(caos.N)
    kind = caos.kinds
    for j, k, l in itertools.product(r, r, r):
        for xi, eta, eps in itertools.product(SIGNS, SIGNS, SIGNS):
            epsl = eps ** kind[l]
            terms: Dict[OpKey, int] = {}
            _add(terms, (k, eta), -2 * _delta(j, l) * _delta(eps, -xi) * epsl * _neg1(kind[k] * kind[l]))
            _add(terms, (j, xi), 2 * epsl * _delta(k, l) * _delta(eps, -eta))
            yield _triple_instance(caos, (j, xi), (k, eta), (l, eps), terms, "b")


# ---------------------------------------------------------------------------
# A(m|n): step 1, i = 1


def _theta(caos: CAOSet, idx: int) -> int:
    return caos.context.theta(idx)


def _check_a1(caos: CAOSet) -> Optional[str]:
    M = caos.context.size
    if caos.N != M - 1 or [lab for lab in caos.labels] != [("a", j) for j in range(1, M)]:
        return "expects the step-1 (i=1) operators a_j, j=1..m+n+1"
    return None


def _gen_a1(caos: CAOSet):
    N = caos.N
    th = lambda j: _theta(caos, j + 1)  # noqa: E731  theta_{j+1} for 1-based j
    for j, k in itertools.product(range(N), range(N)):
        for s in SIGNS:
            yield _bracket_eq(caos, ("quad", s, j, k), (j, s), (k, s), text=f"[[a_{j + 1}^{_s(s)}, a_{k + 1}^{_s(s)}]] = 0")
    for j, k, l in itertools.product(range(N), range(N), range(N)):
        J, K, L = j + 1, k + 1, l + 1
        terms: Dict[OpKey, int] = {}
        _add(terms, (l, 1), _neg1(th(J)) * _delta(j, k))
        _add(terms, (j, 1), _delta(k, l))
        yield _triple_instance(caos, (j, 1), (k, -1), (l, 1), terms, "a")
        terms = {}
        _add(terms, (l, -1), -_neg1(th(J)) * _delta(j, k))
        _add(terms, (k, -1), -_neg1((th(J) + th(K)) * th(L)) * _delta(j, l))
        yield _triple_instance(caos, (j, 1), (k, -1), (l, -1), terms, "a")


# ---------------------------------------------------------------------------
# A(m|n): step 1, i = 2


def _check_adouble(caos: CAOSet) -> Optional[str]:
    M = caos.context.size
    want = [("-", j) for j in range(1, M - 1)] + [("+", j) for j in range(1, M - 1)]
    if caos.labels != want:
        return "expects the step-1 (i=2) operators a_{-,j}, a_{+,j}"
    return None


def _gen_adouble(caos: CAOSet):
    half = caos.N // 2
    pos = lambda xi, j: (0 if xi < 0 else half) + j  # noqa: E731  j is 0-based
    deg = lambda i, s: caos.op(i, s).degree()  # noqa: E731
    th = lambda a: _theta(caos, a)  # noqa: E731
    theta12 = th(1) + th(2)
    r = range(half)
    name = lambda xi, j, s: f"a_{{{_s(xi)}{j + 1}}}^{_s(s)}"  # noqa: E731

    for xi, eta in itertools.product(SIGNS, SIGNS):
        for j, k in itertools.product(r, r):
            for s in SIGNS:
                yield _bracket_eq(
                    caos, ("quad", s, xi, j, eta, k), (pos(xi, j), s), (pos(eta, k), s),
                    text=f"[[{name(xi, j, s)}, {name(eta, k, s)}]] = 0",
                )
    for xi in SIGNS:
        for j, k in itertools.product(r, r):
            if j == k:
                continue
            yield _bracket_eq(
                caos, ("cross", xi, j, k), (pos(xi, j), 1), (pos(-xi, k), -1),
                text=f"[[{name(xi, j, 1)}, {name(-xi, k, -1)}]] = 0",
            )
    for j, k in itertools.product(r, r):
        if j == k:
            continue
        yield _bracket_eq(
            caos, ("diag", j, k), (pos(-1, j), 1), (pos(-1, k), -1), (pos(1, j), 1), (pos(1, k), -1),
            text=f"[[{name(-1, j, 1)}, {name(-1, k, -1)}]] = [[{name(1, j, 1)}, {name(1, k, -1)}]]",
        )
    for j, k in itertools.product(r, r):
        if j >= k or th(j + 3) != th(k + 3):
            continue
        for xi in SIGNS:
            yield _bracket_eq(
                caos, ("theta", xi, j, k), (pos(xi, j), 1), (pos(-xi, j), -1), (pos(xi, k), 1), (pos(-xi, k), -1),
                text=f"[[{name(xi, j, 1)}, {name(-xi, j, -1)}]] = [[{name(xi, k, 1)}, {name(-xi, k, -1)}]]",
            )
    for xi, eta, eps in itertools.product(SIGNS, SIGNS, SIGNS):
        for j, k, l in itertools.product(r, r, r):
            a, b = (pos(xi, j), 1), (pos(eta, k), -1)
            dab = deg(*a) * deg(*b)
            terms: Dict[OpKey, int] = {}
            c = (pos(eps, l), 1)
            _add(terms, (pos(xi, l), 1), _neg1(dab + _delta(xi, -eta) * theta12 * deg(*c)) * _delta(eta, eps) * _delta(j, k))
            _add(terms, (pos(eps, j), 1), _delta(xi, eta) * _delta(k, l))
            yield _triple_instance(caos, a, b, c, terms, "a")
            terms = {}
            c = (pos(eps, l), -1)
            _add(terms, (pos(eta, l), -1), -_neg1(dab) * _delta(xi, eps) * _delta(j, k))
            _add(terms, (pos(eps, k), -1), -_neg1((th(j + 3) + th(k + 3)) * deg(*c)) * _delta(xi, eta) * _delta(j, l))
            yield _triple_instance(caos, a, b, c, terms, "a")


# ---------------------------------------------------------------------------
# A(m|n): step 2, j - i = 1


def _check_a21r(caos: CAOSet) -> Optional[str]:
    kinds = caos.kinds
    if any(k not in (0, 1) for k in kinds):
        return "expects two kinds <k> in {0, 1}"
    i = kinds.count(0)
    if kinds != [0] * i + [1] * (len(kinds) - i) or caos.N != caos.context.size - 1:
        return "expects a_1..a_i of kind 0 followed by a_{i+1}..a_{m+n+1} of kind 1"
    return None


def _gen_a21r(caos: CAOSet):
    N = caos.N
    kind = caos.kinds
    i = kind.count(0)
    t = lambda a: _theta(caos, a)  # noqa: E731  theta of a 1-based matrix index
    deg = lambda q, s: caos.op(q, s).degree()  # noqa: E731
    I = i + 1  # matrix index i+1
    r = range(N)

    for k, l in itertools.product(r, r):
        for s in SIGNS:
            if kind[k] == kind[l]:
                yield _bracket_eq(caos, ("quad", s, k, l), (k, s), (l, s), text=f"[[a_{k + 1}^{_s(s)}, a_{l + 1}^{_s(s)}]] = 0")
            elif kind[k] == 0:
                yield _bracket_eq(
                    caos, ("cross", s, k, l), (k, -s), (l, s), text=f"[[a_{k + 1}^{_s(-s)}, a_{l + 1}^{_s(s)}]] = 0"
                )

    for k, l, p in itertools.product(r, r, r):
        K, L, P = k + 1, l + 1, p + 1  # 1-based labels
        ck, cl, cp = kind[k], kind[l], kind[p]
        if ck == cl:
            terms: Dict[OpKey, int] = {}
            _add(terms, (p, 1), _neg1(cl + cp + ck * (t(K + 1) + t(I))) * _delta(k, l))
            _add(terms, (k, 1), _neg1(cl + cp + (1 - cl) * (t(L) + t(I)) * (t(L) + t(K) + t(K) + t(I))) * _delta(l, p))
            yield _triple_instance(caos, (k, 1), (l, -1), (p, 1), terms, "a")
            terms = {}
            dk = deg(k, 1)
            _add(
                terms, (l, -1),
                -_neg1(cl + cp + dk * (ck * (t(K + 1) + t(L + 1)) + (1 - cl) * (t(L) + t(I)))) * _delta(k, p),
            )
            _add(terms, (p, -1), -_neg1(cl + cp + ck * (t(K + 1) + t(I))) * _delta(k, l))
            yield _triple_instance(caos, (k, 1), (l, -1), (p, -1), terms, "a")
        if ck == 0 and cl == 1:
            for xi in SIGNS:
                terms = {}
                e1 = Fraction(1, 2) * (t(P) + t(I)) * ((1 + xi) * (t(L + 1) + t(I)) + (1 - xi) * (t(K) + t(L + 1)))
                e2 = Fraction(1, 2) * (1 + xi) * (t(L + 1) + t(I)) * ((t(K) + t(I)) + (t(K) + t(L + 1)))
                _add(terms, (l, xi), -_neg1(e1) * _delta(k, p))
                _add(terms, (k, xi), _neg1(e2) * _delta(l, p))
                yield _triple_instance(caos, (k, xi), (l, xi), (p, -xi), terms, "a")
        for xi in SIGNS:
            yield _triple_instance(caos, (k, xi), (l, xi), (p, xi), {}, "a")


# ---------------------------------------------------------------------------


def _template(tid, domain, lhs, rhs, gen, check) -> RelationTemplate:
    return RelationTemplate(tid, domain, lhs, rhs, gen, check)


TEMPLATES: Dict[str, RelationTemplate] = {
    t.id: t
    for t in [
        _template(
            "R-PB-printed", "xi,eta,eps = +-1; j,k,l = 1..N",
            "[{B_j^xi, B_k^eta}, B_l^eps]", "(eps-xi) d_jl B_k^xi + (eps-eta) d_kl B_j^eta",
            _gen_pb(False), _uniform_kind,
        ),
        _template(
            "R-PB-swapped", "xi,eta,eps = +-1; j,k,l = 1..N",
            "[{B_j^xi, B_k^eta}, B_l^eps]", "(eps-xi) d_jl B_k^eta + (eps-eta) d_kl B_j^xi",
            _gen_pb(True), _uniform_kind,
        ),
        _template(
            "R-PF", "xi,eta,eps = +-1; j,k,l = 1..N",
            "[[F_j^xi, F_k^eta], F_l^eps]", "1/2 (eps-eta)^2 d_kl F_j^xi - 1/2 (eps-xi)^2 d_jl F_k^eta",
            _gen_pf, _uniform_kind,
        ),
        _template(
            "R-MIX", "xi,eta,eps = +-1; j,k,l = 1..n+m; <j> = 1 para-Bose, 0 para-Fermi",
            "[[[[b_j^xi, b_k^eta]], b_l^eps]]",
            "-2 d_jl d_{eps,-xi} eps^<l> (-1)^{<k><l>} b_k^eta + 2 eps^<l> d_kl d_{eps,-eta} b_j^xi",
            _gen_mix, _mixed_kinds,
        ),
        _template(
            "R-A1", "j,k,l = 1..m+n+1",
            "[[a^+-, a^+-]]; [[[[a_j^+, a_k^-]], a_l^+-]]",
            "0; (-1)^theta_{j+1} d_jk a_l^+ + d_kl a_j^+; "
            "-(-1)^theta_{j+1} d_jk a_l^- - (-1)^{theta_{j+1,k+1} theta_{l+1}} d_jl a_k^-",
            _gen_a1, _check_a1,
        ),
        _template(
            "R-ADOUBLE", "xi,eta,eps = +-; j,k,l = 1..m+n",
            "quadratic, bracket equalities and [[[[a_{xi j}^+, a_{eta k}^-]], a_{eps l}^+-]]",
            "see generator", _gen_adouble, _check_adouble,
        ),
        _template(
            "R-A21R", "k,l,p = 1..m+n+1; <k> = 0 for k <= i, 1 otherwise",
            "quadratic and triple relations of two kinds",
            "see generator", _gen_a21r, _check_a21r,
        ),
    ]
}

# Decided by test_relations.test_exactly_one_para_bose_variant_holds.
PINNED_PB_VARIANT = "R-PB-swapped"
TEMPLATES["R-PB"] = TEMPLATES[PINNED_PB_VARIANT]


def get_template(tid: str) -> RelationTemplate:
    try:
        return TEMPLATES[tid]
    except KeyError:
        raise KeyError(f"unknown relation template {tid!r}") from None


def verify_relations(caos: CAOSet, template) -> RelationReport:
    if isinstance(template, str):
        template = get_template(template)
    failures = []
    insts = template.instances(caos)
    for inst in insts:
        diff = inst.lhs - inst.rhs
        if diff:
            failures.append((inst.key, f"{inst.text}: lhs - rhs = {render_matrix(diff)}"))
    return RelationReport(template.id, caos.case_id, len(insts), failures)


# ---------------------------------------------------------------------------


def check_quadratic(caos: CAOSet) -> RelationReport:
    """Same-sign brackets vanish (length 3) or span G_{+-2} (length 5)."""
    g = caos.grading
    if g is None:
        raise ValueError("check_quadratic needs the CAO set's grading")
    failures = []
    total = 0
    for s in SIGNS:
        brackets = []
        for a in range(caos.N):
            for b in range(a, caos.N):
                total += 1
                z = superbracket(caos.op(a, s), caos.op(b, s))
                brackets.append(z)
                if g.length == 3 and z:
                    failures.append((("quad", s, a, b), f"nonzero: {render_matrix(z)}"))
                elif g.length == 5 and not g.component(2 * s).contains(z):
                    failures.append((("quad", s, a, b), f"outside G_{2 * s:+d}: {render_matrix(z)}"))
        if g.length == 5:
            total += 1
            span = Subspace.span(caos.context, brackets)
            if not span.same_span(g.component(2 * s)):
                failures.append((("span", s), f"dim span = {span.dim} != dim G_{2 * s:+d} = {g.component(2 * s).dim}"))
    return RelationReport("quadratic", caos.case_id, total, failures)


@dataclass
class CoefficientTable:
    case: str
    entries: Dict[tuple, object]  # key -> list of (label, Scalar) or "zero(deg+3)"/"zero(deg-3)"

    def coefficients(self, key: tuple) -> Dict[OpKey, Scalar]:
        val = self.entries[key]
        if isinstance(val, str):
            return {}
        return {k: c for k, c in val}

    def rows(self) -> List[dict]:
        out = []
        for key in sorted(self.entries):
            val = self.entries[key]
            if isinstance(val, str):
                expansion = val
            else:
                expansion = " + ".join(f"({render(c)})*x_{i + 1}^{_s(s)}" for (i, s), c in val) or "0"
            out.append({"tuple": _key_text(key), "expansion": expansion})
        return out


def _key_text(key: tuple) -> str:
    i, s, j, t, k, u = key
    return f"[[[[x_{i + 1}^{_s(s)}, x_{j + 1}^{_s(t)}]], x_{k + 1}^{_s(u)}]]"


def extract_triple_coefficients(caos: CAOSet) -> CoefficientTable:
    """Expand every double bracket of CAOs in the CAO basis (the oracle)."""
    ctx = caos.context
    spaces = {s: Subspace(ctx, [caos.op(i, s) for i in range(caos.N)]) for s in SIGNS}
    entries: Dict[tuple, object] = {}
    r = range(caos.N)
    for i, j, k in itertools.product(r, r, r):
        for s, t, u in itertools.product(SIGNS, SIGNS, SIGNS):
            key = (i, s, j, t, k, u)
            z = _triple(caos, (i, s), (j, t), (k, u))
            total = s + t + u
            if abs(total) == 3:
                if z:
                    raise ExpansionFailure(f"degree {total} bracket is nonzero: {_key_text(key)}")
                entries[key] = f"zero(deg{total:+d})"
                continue
            sign = 1 if total > 0 else -1
            try:
                coeffs = spaces[sign].express(z)
            except ValueError as exc:
                raise ExpansionFailure(f"{_key_text(key)} is not in span of x^{_s(sign)}") from exc
            entries[key] = [((q, sign), c) for q, c in enumerate(coeffs) if c]
    return CoefficientTable(caos.case_id, entries)


def compare_with_table(caos: CAOSet, template, table: Optional[CoefficientTable] = None) -> List[tuple]:
    """Triple-relation tuples where the template's coefficients differ from the oracle."""
    if isinstance(template, str):
        template = get_template(template)
    if table is None:
        table = extract_triple_coefficients(caos)
    bad = []
    for inst in template.instances(caos):
        if inst.terms is None:
            continue
        want = table.coefficients(inst.key)
        got = {k: v for k, v in inst.terms.items() if v}
        if want != got:
            bad.append(inst.key)
    return bad
