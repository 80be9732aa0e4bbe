"""Brute-force sweep over toral elements and reconciliation with the catalog."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .algebras import Algebra, FamilyTag, build
from .cases import CaseSpec, catalog
from .grading import DEGREES, FiveGrading, ToralElement, grade_by_toral, toral_element, verify_grading
from .superlinalg import Subspace, superbracket

GUARD = 10**8


class SearchSpaceTooLarge(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GradingSignature:
    length: int
    N: int
    dims: Tuple[int, ...]  # dim G_{-2}, ..., dim G_{+2}
    g0_profile: Tuple[int, int, int, int]  # (even dim, odd dim, dim [G0,G0], Cartan rank)

    def as_dict(self) -> dict:
        return {
            "length": self.length,
            "N": self.N,
            "dims": list(self.dims),
            "g0_even": self.g0_profile[0],
            "g0_odd": self.g0_profile[1],
            "g0_derived": self.g0_profile[2],
            "cartan_rank": self.g0_profile[3],
        }


@dataclass(frozen=True)
class SearchSpace:
    """Coordinates swept over {-bound, ..., bound} in steps of ``step``.

    ``fix_last`` pins the last coordinate to 0 (used for sl, where only
    differences of diagonal entries matter).
    """

    rank: int
    bound: int = 2
    step: Fraction = Fraction(1)
    fix_last: bool = False

    def values(self) -> List[Fraction]:
        count = int(2 * self.bound / self.step)
        return [Fraction(-self.bound) + i * self.step for i in range(count + 1)]

    @property
    def free(self) -> int:
        return self.rank - 1 if self.fix_last else self.rank

    def size(self) -> int:
        return len(self.values()) ** self.free

    def vectors(self):
        """Nonzero vectors, one per +- pair (first nonzero entry positive), lexicographic."""
        if self.size() > GUARD:
            raise SearchSpaceTooLarge(f"{len(self.values())}^{self.free} exceeds {GUARD}")
        tail = (Fraction(0),) if self.fix_last else ()
        for v in itertools.product(self.values(), repeat=self.free):
            lead = next((x for x in v if x), None)
            if lead is None or lead < 0:
                continue
            yield tuple(v) + tail


def default_space(alg: Algebra, bound: int = 2) -> SearchSpace:
    if alg.tag.family == "A":
        return SearchSpace(alg.n_coords, bound, Fraction(1), fix_last=True)
    # half-integer coordinates are needed for the sl(m|n)-type rows of D and C
    return SearchSpace(alg.n_coords, bound, Fraction(1, 2))


def _derived_dim(alg: Algebra, g0: Subspace) -> int:
    return Subspace.span(alg.context, (superbracket(x, y) for x, y in itertools.combinations_with_replacement(g0.basis, 2))).dim


def signature(g: FiveGrading, alg: Algebra) -> GradingSignature:
    g0 = g.component(0)
    even = sum(1 for b in g0.basis if b.degree() == 0)
    return GradingSignature(g.length, g.N, g.dims(), (even, g0.dim - even, _derived_dim(alg, g0), alg.rank))


# ---------------------------------------------------------------------------


class _Sweeper:
    """Fast admissibility filter using root weights, with memoized G_0 profiles."""

    def __init__(self, alg: Algebra):
        self.alg = alg
        self.roots = [(r.weight, r.parity) for r in alg.roots]
        self._profiles: Dict[FrozenSet, Tuple[int, int, int, int]] = {}

    def degrees(self, coords: Sequence[Fraction]) -> Optional[Dict[tuple, int]]:
        out = {}
        for wt, _ in self.roots:
            val = sum((w * c for w, c in zip(wt, coords)), Fraction(0))
            if val.denominator != 1 or not -2 <= val <= 2:
                return None
            out[wt] = int(val)
        if 1 not in out.values():
            return None
        return out

    def pre_signature(self, coords) -> Optional[GradingSignature]:
        degs = self.degrees(coords)
        if degs is None:
            return None
        dims = {d: 0 for d in DEGREES}
        for d in degs.values():
            dims[d] += 1
        dims[0] += self.alg.rank
        length = 5 if dims[2] else 3
        g0_roots = frozenset(wt for wt, d in degs.items() if d == 0)
        prof = self._profiles.get(g0_roots)
        if prof is None:
            alg = self.alg
            mats = list(alg.cartan.basis) + [alg.root(w).matrix for w in sorted(g0_roots)]
            even = alg.rank + sum(1 for w in g0_roots if alg.root(w).parity == 0)
            g0 = Subspace(alg.context, mats)
            prof = (even, g0.dim - even, _derived_dim(alg, g0), alg.rank)
            self._profiles[g0_roots] = prof
        return GradingSignature(length, dims[-1], tuple(dims[d] for d in DEGREES), prof)


@lru_cache(maxsize=None)
def _algebra(tag: FamilyTag) -> Algebra:
    return build(tag)


def _sweep_chunk(args):
    tag, chunk = args
    sw = _Sweeper(_algebra(tag))
    out = []
    for coords in chunk:
        sig = sw.pre_signature(coords)
        if sig is not None:
            out.append((coords, sig))
    return out


@dataclass
class EnumerationResult:
    found: List[Tuple[ToralElement, GradingSignature]]
    admissible_vectors: int
    rejected_signatures: List[GradingSignature] = field(default_factory=list)

    @property
    def signatures(self) -> List[GradingSignature]:
        return [s for _, s in self.found]


def enumerate_gradings(alg: Algebra, space: Optional[SearchSpace] = None, jobs: int = 1, verify: bool = True) -> EnumerationResult:
    """Sweep the search space, deduplicate by signature, verify one grading per signature."""
    if space is None:
        space = default_space(alg)
    if space.rank != alg.n_coords:
        raise ValueError(f"search space rank {space.rank} != {alg.n_coords} coordinates")
    vectors = list(space.vectors())
    if jobs > 1 and len(vectors) > 64:
        size = (len(vectors) + jobs * 4 - 1) // (jobs * 4)
        chunks = [(alg.tag, vectors[i : i + size]) for i in range(0, len(vectors), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            hits = [h for part in pool.map(_sweep_chunk, chunks) for h in part]
    else:
        sw = _Sweeper(alg)
        hits = []
        for coords in vectors:
            sig = sw.pre_signature(coords)
            if sig is not None:
                hits.append((coords, sig))
    groups: Dict[GradingSignature, List[tuple]] = {}
    for coords, sig in hits:  # hits are in lexicographic vector order
        groups.setdefault(sig, []).append(coords)
    found = []
    rejected = []
    for sig in sorted(groups):
        chosen = None
        for coords in groups[sig]:
            h = toral_element(alg, coords)
            g = grade_by_toral(alg, h)
            if not verify or verify_grading(alg, g).passed:
                assert signature(g, alg) == sig
                chosen = h
                break
        if chosen is None:
            rejected.append(sig)
        else:
            found.append((chosen, sig))
    return EnumerationResult(found, len(hits), rejected)


# ---------------------------------------------------------------------------


@dataclass
class RowMatch:
    case_id: str
    g0_label: str
    expected_length: int
    expected_N: int
    expected_g0: Tuple[int, int]
    matches: List[int]  # indices into the found signature list


@dataclass
class ReconcileReport:
    tag: FamilyTag
    rows: List[RowMatch]
    found: List[GradingSignature]
    unmatched_found: List[int]
    collisions: List[List[str]]

    @property
    def unmatched_rows(self) -> List[str]:
        return [r.case_id for r in self.rows if not r.matches]

    @property
    def passed(self) -> bool:
        return not self.unmatched_rows

    def as_dict(self) -> dict:
        return {
            "algebra": self.tag.label,
            "rows": [
                {
                    "case": r.case_id,
                    "g0": r.g0_label,
                    "length": r.expected_length,
                    "N": r.expected_N,
                    "g0_even": r.expected_g0[0],
                    "g0_odd": r.expected_g0[1],
                    "matched_signatures": r.matches,
                }
                for r in self.rows
            ],
            "found": [s.as_dict() for s in self.found],
            "unmatched_rows": self.unmatched_rows,
            "unmatched_found": self.unmatched_found,
            "collisions": self.collisions,
        }


def _matches(spec: CaseSpec, sig: GradingSignature) -> bool:
    return (sig.length, sig.N, sig.g0_profile[0], sig.g0_profile[1]) == (
        spec.expected_length,
        spec.expected_N,
        spec.expected_g0[0],
        spec.expected_g0[1],
    )


def reconcile(alg: Algebra, found: Sequence[GradingSignature], specs: Optional[Sequence[CaseSpec]] = None) -> ReconcileReport:
    if specs is None:
        specs = catalog(alg.tag)
    found = list(found)
    rows = []
    used = set()
    for spec in specs:
        hits = [i for i, sig in enumerate(found) if _matches(spec, sig)]
        used.update(hits)
        rows.append(RowMatch(spec.id, spec.g0_label, spec.expected_length, spec.expected_N, spec.expected_g0, hits))
    # rows whose expected (length, N, G_0 parity dims) coincide cannot be told
    # apart by signature; report them rather than merging
    by_key: Dict[tuple, List[str]] = {}
    for spec in specs:
        by_key.setdefault((spec.expected_length, spec.expected_N, spec.expected_g0), []).append(spec.id)
    collisions = [ids for ids in by_key.values() if len(ids) > 1]
    unmatched = [i for i in range(len(found)) if i not in used]
    return ReconcileReport(alg.tag, rows, found, unmatched, collisions)


def render_table(specs: Sequence[CaseSpec], title: str = "") -> str:
    """Markdown table in the layout G_0 = H + ... | l | N."""
    lines = []
    if title:
        lines += [f"### {title}", ""]
    lines += ["| case | G_0 = H + ... | l | N |", "|---|---|---|---|"]
    for s in specs:
        lines.append(f"| {s.id} | {s.g0_label} | {s.expected_length} | {s.expected_N} |")
    return "\n".join(lines) + "\n"


def render_reconcile(rep: ReconcileReport) -> str:
    lines = [f"### Reconciliation for {rep.tag.label}", "", "| case | G_0 = H + ... | l | N | G_0 dims (even, odd) | matched |", "|---|---|---|---|---|---|"]
    for r in rep.rows:
        m = ", ".join(f"#{i}" for i in r.matches) or "NONE"
        lines.append(f"| {r.case_id} | {r.g0_label} | {r.expected_length} | {r.expected_N} | {r.expected_g0} | {m} |")
    lines += ["", "| # | l | N | dims G_-2..G_+2 | G_0 profile |", "|---|---|---|---|---|"]
    for i, s in enumerate(rep.found):
        flag = " (unmatched)" if i in rep.unmatched_found else ""
        lines.append(f"| {i}{flag} | {s.length} | {s.N} | {s.dims} | {s.g0_profile} |")
    if rep.collisions:
        lines += ["", "Rows sharing a signature: " + "; ".join(", ".join(c) for c in rep.collisions)]
    return "\n".join(lines) + "\n"
