"""Catalog of generalized-quantum-statistics cases and their CAO sets.

Grading coordinates are chosen so that the annihilation operators x_i^- sit in
degree -1 (ad-h eigenvalue -1).  For the A family the coordinates are the
diagonal of h (before the identity shift into sl); for the osp families they
are (t_1..t_m | s_1..s_n), the values of h on eps_i and delta_j.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebras import Algebra, FamilyTag, build, omega
from .exactfield import Scalar
from .grading import FiveGrading, grade_by_toral
from .superlinalg import NotAMember, ParityContext, SuperMatrix, unit

SQRT2 = Scalar(0, 1)
HALF = Fraction(1, 2)


class UnknownCase(KeyError):
    pass


@dataclass(frozen=True)
class CaseSpec:
    id: str
    tag: FamilyTag
    grading_coords: Tuple[Fraction, ...]
    expected_length: int
    expected_N: int
    relation_template: Optional[str] = None
    g0_label: str = ""
    expected_g0: Tuple[int, int] = (0, 0)  # (even dim, odd dim) of G_0 from its type
    explicit: bool = False


@dataclass
class CAOSet:
    case_id: str
    tag: FamilyTag
    context: ParityContext
    pairs: List[Tuple[SuperMatrix, SuperMatrix]]
    labels: List[tuple]
    parities: List[int]
    kinds: List[Optional[int]]
    grading: Optional[FiveGrading] = None
    meta: Dict[str, object] = field(default_factory=dict)

    @property
    def N(self) -> int:
        return len(self.pairs)

    def plus(self, i: int) -> SuperMatrix:
        return self.pairs[i][0]

    def minus(self, i: int) -> SuperMatrix:
        return self.pairs[i][1]

    def op(self, i: int, sign: int) -> SuperMatrix:
        return self.pairs[i][0] if sign > 0 else self.pairs[i][1]

    def subset(self, indices: Sequence[int]) -> "CAOSet":
        return CAOSet(
            self.case_id + ".subset",
            self.tag,
            self.context,
            [self.pairs[i] for i in indices],
            [self.labels[i] for i in indices],
            [self.parities[i] for i in indices],
            [self.kinds[i] for i in indices],
            None,
            dict(self.meta),
        )


# ---------------------------------------------------------------------------
# G_0 dimension bookkeeping from the subalgebra types printed in the tables


def _sl_roots(p: int, q: int) -> Tuple[int, int]:
    return p * (p - 1) + q * (q - 1), 2 * p * q


def _b_roots(a: int, b: int) -> Tuple[int, int]:
    return 2 * a * a + 2 * b * b, 2 * b * (2 * a + 1)


def _d_roots(a: int, b: int) -> Tuple[int, int]:
    return 2 * a * (a - 1) + 2 * b * b, 4 * a * b


def _g0(rank: int, *root_counts: Tuple[int, int]) -> Tuple[int, int]:
    return rank + sum(r[0] for r in root_counts), sum(r[1] for r in root_counts)


def _a_blocks_g0(tag: FamilyTag, coords: Sequence[Fraction]) -> Tuple[str, Tuple[int, int]]:
    """G_0 = H + sum of sl(p|q) over groups of indices sharing a diagonal value."""
    groups: Dict[Fraction, List[int]] = {}
    for a, v in enumerate(coords):
        groups.setdefault(v, []).append(a + 1)
    parts = []
    counts = []
    for v in sorted(groups):
        idx = groups[v]
        p = sum(1 for a in idx if a <= tag.m + 1)
        q = len(idx) - p
        parts.append(f"sl({p}|{q})")
        counts.append(_sl_roots(p, q))
    return "+".join(parts), _g0(tag.m + tag.n + 1, *counts)


def _coords(m: int, n: int, k: int, l: int, val=-1) -> Tuple[Fraction, ...]:
    return tuple(Fraction(val) if i < k else Fraction(0) for i in range(m)) + tuple(
        Fraction(val) if j < l else Fraction(0) for j in range(n)
    )


# ---------------------------------------------------------------------------


def _catalog_A(tag: FamilyTag) -> List[CaseSpec]:
    m, n = tag.m, tag.n
    M = m + n + 2
    out = []

    def blocks(*segments):
        # segments: (first index, last index, value); indices 1-based inclusive
        vals = [None] * M
        for lo, hi, v in segments:
            for a in range(lo, hi + 1):
                vals[a - 1] = Fraction(v)
        assert None not in vals
        return tuple(vals)

    def add(cid, coords, length, N, template=None, explicit=False):
        label, g0 = _a_blocks_g0(tag, coords)
        out.append(CaseSpec(cid, tag, coords, length, N, template, label, g0, explicit))

    for i in range(1, M):
        template = {1: "R-A1", 2: "R-ADOUBLE"}.get(i)
        add(f"A.step1.i={i}", blocks((1, i, 0), (i + 1, M, 1)), 3, i * (M - i), template, i in (1, 2))
    for i in range(1, M):
        for j in range(i + 1, M):
            b1, b2, b3 = (1, i), (i + 1, j), (j + 1, M)
            variants = {
                "A21": ((0, 1, 2), (j - i) * (M - j + i)),
                "A22": ((1, 2, 0), i * (M - i)),
                "A23": ((0, 2, 1), j * (M - j)),
            }
            for name, (vals, N) in variants.items():
                coords = blocks(b1 + (vals[0],), b2 + (vals[1],), b3 + (vals[2],))
                explicit = name == "A21" and j - i == 1
                add(f"A.step2.i={i},j={j}.{name}", coords, 5, N, "R-A21R" if explicit else None, explicit)
    for i in range(1, M):
        for j in range(i + 1, M):
            coords = blocks((1, i, 1), (i + 1, j, 0), (j + 1, M, 1))
            add(f"A.step5.i={i},j={j}", coords, 3, (j - i) * (M - j + i))
    for i in range(1, M):
        for j in range(i + 1, M):
            for k in range(j + 1, M):
                w1, w2 = (i + 1, j), (j + 1, k)
                outer = [(1, i), (k + 1, M)]
                variants = {
                    "v1": ((0, 1, 2), (j - i) * (M - j + i)),
                    "v2": ((1, 2, 0), (k - i) * (M + i - k)),
                    "v3": ((0, 2, 1), (k - j) * (M + j - k)),
                }
                for name, (vals, N) in variants.items():
                    segs = [o + (vals[0],) for o in outer if o[0] <= o[1]]
                    coords = blocks(*segs, w1 + (vals[1],), w2 + (vals[2],))
                    add(f"A.step6.i={i},j={j},k={k}.{name}", coords, 5, N)
    return out


def _catalog_B(tag: FamilyTag) -> List[CaseSpec]:
    m, n = tag.m, tag.n
    out = []
    if m == 0:
        for i in range(1, n + 1):
            g0 = _g0(n, _sl_roots(i, 0), _b_roots(0, n - i))
            out.append(
                CaseSpec(
                    f"B0.table.i={i}",
                    tag,
                    _coords(0, n, 0, i),
                    5,
                    i * (2 * n - 2 * i + 1),
                    "R-PB" if i == n else None,
                    f"sl({i})+B(0|{n - i})",
                    g0,
                    i == n,
                )
            )
        return out
    for k in range(m + 1):
        for l in range(n + 1):
            if (k, l) == (0, 0):
                continue
            top = k == m and l == n
            template = ("R-MIX" if n else "R-PF") if top else None
            g0 = _g0(m + n, _sl_roots(k, l), _b_roots(m - k, n - l))
            if (k, l) == (1, 0):
                length, N, label = 3, 2 * m + 2 * n - 1, f"B({m - 1}|{n})"
            else:
                length, N = 5, (k + l) * (2 * m - 2 * k + 2 * n - 2 * l + 1)
                label = f"sl({k}|{l})+B({m - k}|{n - l})"
            out.append(CaseSpec(f"B.table.k={k},l={l}", tag, _coords(m, n, k, l), length, N, template, label, g0, top))
    return out


def _catalog_D(tag: FamilyTag) -> List[CaseSpec]:
    m, n = tag.m, tag.n
    out = []
    quad = (m + n) * (m + n + 1) // 2 - m
    special = {(0, 0), (1, 0), (m - 1, n), (m, n)}
    for k in range(m + 1):
        for l in range(n + 1):
            if (k, l) in special:
                continue
            g0 = _g0(m + n, _sl_roots(k, l), _d_roots(m - k, n - l))
            out.append(
                CaseSpec(
                    f"D.table.k={k},l={l}",
                    tag,
                    _coords(m, n, k, l),
                    5,
                    2 * (k + l) * (m + n - k - l),
                    None,
                    f"sl({k}|{l})+D({m - k}|{n - l})",
                    g0,
                )
            )
    out.append(
        CaseSpec(
            "D.table.k=1,l=0", tag, _coords(m, n, 1, 0), 3, 2 * (m + n - 1), None,
            f"D({m - 1}|{n})", _g0(m + n, _d_roots(m - 1, n)),
        )
    )
    out.append(
        CaseSpec(
            f"D.table.k={m},l={n}", tag, _coords(m, n, m, n, -HALF), 3, quad, None,
            f"sl({m}|{n})", _g0(m + n, _sl_roots(m, n)),
        )
    )
    g0 = _g0(m + n, _sl_roots(m - 1, n), _d_roots(1, 0))
    half = _coords(m, n, m - 1, n, -HALF)
    half = half[: m - 1] + (Fraction(-3, 2),) + half[m:]
    out.append(CaseSpec(f"D.table.k={m - 1},l={n}.quad", tag, half, 5, quad, None, f"sl({m - 1}|{n})", g0))
    out.append(
        CaseSpec(
            f"D.table.k={m - 1},l={n}.lin", tag, _coords(m, n, m - 1, n), 5, 2 * (m + n - 1), None,
            f"sl({m - 1}|{n})", g0,
        )
    )
    return out


def _catalog_C(tag: FamilyTag) -> List[CaseSpec]:
    n = tag.n
    r = n - 1  # number of delta coordinates
    out = []
    for k in (0, 1):
        for l in range(1, n - 1):
            g0 = _g0(n, _sl_roots(k, l), _d_roots(1 - k, n - 1 - l))
            out.append(
                CaseSpec(
                    f"C.table.k={k},l={l}", tag, _coords(1, r, k, l), 5, 2 * (k + l) * (n - k - l), None,
                    f"sl({k}|{l})+D({1 - k}|{n - 1 - l})", g0,
                )
            )
    out.append(
        CaseSpec(
            "C.table.k=1,l=0", tag, _coords(1, r, 1, 0), 3, 2 * (n - 1), None,
            f"sp({2 * (n - 1)})", _g0(n, _d_roots(0, n - 1)),
        )
    )
    quad = n * (n + 1) // 2 - 1
    out.append(
        CaseSpec(
            f"C.table.k=1,l={n - 1}", tag, _coords(1, r, 1, r, -HALF), 3, quad, None,
            f"sl(1|{n - 1})", _g0(n, _sl_roots(1, n - 1)),
        )
    )
    g0 = _g0(n, _sl_roots(0, n - 1), _d_roots(1, 0))
    out.append(
        CaseSpec(
            f"C.table.k=0,l={n - 1}.quad", tag, (Fraction(-3, 2),) + (-HALF,) * r, 5, quad, None,
            f"sl({n - 1})", g0,
        )
    )
    out.append(
        CaseSpec(
            f"C.table.k=0,l={n - 1}.lin", tag, (Fraction(0),) + (Fraction(-1),) * r, 5, 2 * (n - 1), None,
            f"sl({n - 1})", g0,
        )
    )
    return out


_TRIVIAL = re.compile(r"^(sl\(([01]|0\|[01]|1\|0)\)|[BD]\(0\|0\))$")


def _clean_label(label: str) -> str:
    """Drop zero summands such as sl(1|0) or B(0|0)."""
    parts = [p for p in label.split("+") if not _TRIVIAL.match(p)]
    return "+".join(parts) or "H"


def catalog(tag: FamilyTag) -> List[CaseSpec]:
    specs = {"A": _catalog_A, "B": _catalog_B, "C": _catalog_C, "D": _catalog_D}[tag.family](tag)
    return [replace(s, g0_label=_clean_label(s.g0_label)) for s in specs]


def find_case(tag: FamilyTag, case_id: str) -> CaseSpec:
    for spec in catalog(tag):
        if spec.id == case_id:
            return spec
    raise UnknownCase(f"no case {case_id!r} for {tag}")


def expected_counts(spec: CaseSpec) -> Tuple[int, int]:
    return spec.expected_length, spec.expected_N


# ---------------------------------------------------------------------------
# CAO sets


def _explicit_A(spec: CaseSpec, ctx: ParityContext):
    M = ctx.size
    e = lambda j, k: unit(ctx, j, k)  # noqa: E731
    pairs, labels, kinds = [], [], []
    if spec.id == "A.step1.i=1":
        for j in range(1, M):
            pairs.append((e(j + 1, 1), e(1, j + 1)))
            labels.append(("a", j))
            kinds.append(None)
    elif spec.id == "A.step1.i=2":
        for xi, row in (("-", 1), ("+", 2)):
            for j in range(1, M - 1):
                pairs.append((e(j + 2, row), e(row, j + 2)))
                labels.append((xi, j))
                kinds.append(None)
    else:
        i = int(spec.id.split("i=")[1].split(",")[0])
        for k in range(1, M):
            if k <= i:
                pairs.append((e(i + 1, k), e(k, i + 1)))
                kinds.append(0)
            else:
                pairs.append((e(k + 1, i + 1), e(i + 1, k + 1)))
                kinds.append(1)
            labels.append(("a", k))
    return pairs, labels, kinds, {}


def _explicit_B(spec: CaseSpec, ctx: ParityContext):
    m, n = spec.tag.m, spec.tag.n
    p = 2 * m + 1
    e = lambda j, k: unit(ctx, j, k)  # noqa: E731
    pairs, labels, kinds = [], [], []
    for j in range(1, n + 1):
        bm = (e(p, p + n + j) + e(p + j, p)).scale(-SQRT2)
        bp = (e(p, p + j) - e(p + n + j, p)).scale(SQRT2)
        pairs.append((bp, bm))
        labels.append(("B", j))
        kinds.append(1)
    for k in range(1, m + 1):
        fm = (e(k, p) - e(p, m + k)).scale(SQRT2)
        fp = (e(p, k) - e(m + k, p)).scale(SQRT2)
        pairs.append((fp, fm))
        labels.append(("F", k))
        kinds.append(0)
    return pairs, labels, kinds, {}


def build_caos(spec: CaseSpec, alg: Optional[Algebra] = None, grading: Optional[FiveGrading] = None) -> CAOSet:
    if alg is None:
        alg = build(spec.tag)
    if grading is None:
        grading = grade_by_toral(alg, spec.grading_coords)
    ctx = alg.context
    if spec.explicit:
        if spec.tag.family == "A":
            pairs, labels, kinds, meta = _explicit_A(spec, ctx)
        else:
            pairs, labels, kinds, meta = _explicit_B(spec, ctx)
        for xp, xm in pairs:
            if not (alg.contains(xp) and alg.contains(xm)):
                raise NotAMember(f"{spec.id}: explicit CAO is not in {spec.tag}")
    else:
        pairs, labels, kinds, meta = [], [], [], {}
        for r in alg.roots:
            if grading.degree_of_root.get(r.weight) == 1:
                pairs.append((r.matrix, omega(alg, r.matrix)))
                labels.append(("root", r.weight))
                kinds.append(None)
    parities = [xp.degree() for xp, _ in pairs]
    return CAOSet(spec.id, spec.tag, ctx, pairs, labels, parities, kinds, grading, meta)
