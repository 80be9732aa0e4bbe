"""Z-gradings of length 3 or 5 induced by diagonal toral elements."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebras import Algebra, eigenvalue, omega
from .superlinalg import Subspace, SuperMatrix, superbracket

DEGREES = (-2, -1, 0, 1, 2)


class NotAdmissible(ValueError):
    """The toral element does not induce an admissible 5-term grading."""


@dataclass(frozen=True)
class ToralElement:
    coords: Tuple[Fraction, ...]
    h: SuperMatrix


def toral_element(alg: Algebra, coords: Sequence[object]) -> ToralElement:
    coords = tuple(Fraction(c) for c in coords)
    return ToralElement(coords, alg.toral(coords))


@dataclass
class FiveGrading:
    toral: Optional[ToralElement]
    components: Dict[int, Subspace]
    degree_of_root: Dict[Tuple[int, ...], int] = field(default_factory=dict)

    def component(self, d: int) -> Subspace:
        return self.components[d]

    def dims(self) -> Tuple[int, ...]:
        return tuple(self.components[d].dim for d in DEGREES)

    @property
    def N(self) -> int:
        return self.components[-1].dim

    @property
    def length(self) -> int:
        return 5 if self.components[2].dim or self.components[-2].dim else 3

    def truncated(self, degree: int, drop: int) -> "FiveGrading":
        """Copy with basis vector ``drop`` removed from one component (for negative controls)."""
        comps = dict(self.components)
        old = comps[degree]
        keep = [b for i, b in enumerate(old.basis) if i != drop]
        comps[degree] = Subspace(old.context, keep)
        return FiveGrading(self.toral, comps, dict(self.degree_of_root))


def grade_by_toral(alg: Algebra, h) -> FiveGrading:
    """Eigenspace decomposition of ad h; ``h`` may be a ToralElement or coordinates."""
    if not isinstance(h, ToralElement):
        h = toral_element(alg, h)
    # for sl(k|k) the grading element is a diagonal of gl(k|k), which still normalizes sl
    outer = alg.tag.family == "A" and alg.tag.m == alg.tag.n and h.h.is_diagonal()
    if not (alg.cartan.contains(h.h) or outer):
        raise NotAdmissible("toral element is not in the Cartan subalgebra")
    buckets: Dict[int, List[SuperMatrix]] = {d: [] for d in DEGREES}
    degree_of_root = {}
    for r in alg.roots:
        lam = eigenvalue(r.matrix, h.h)
        if lam is None or not lam.is_rational():
            raise NotAdmissible(f"root {r.weight} is not an eigenvector with rational eigenvalue")
        val = lam.a
        if val.denominator != 1:
            raise NotAdmissible(f"non-integer eigenvalue {val} on root {r.weight}")
        d = int(val)
        if d not in buckets:
            raise NotAdmissible(f"eigenvalue {d} outside -2..2 on root {r.weight}")
        buckets[d].append(r.matrix)
        degree_of_root[r.weight] = d
    if not buckets[1] or not buckets[-1]:
        raise NotAdmissible("G_{+-1} is zero")
    buckets[0] = list(alg.cartan.basis) + buckets[0]
    comps = {d: Subspace(alg.context, buckets[d]) for d in DEGREES}
    return FiveGrading(h, comps, degree_of_root)


# ---------------------------------------------------------------------------


def bracket_span(xs: Sequence[SuperMatrix], ys: Sequence[SuperMatrix], ctx) -> Subspace:
    return Subspace.span(ctx, (superbracket(x, y) for x in xs for y in ys))


def generated_subalgebra(alg: Algebra, seeds: Sequence[SuperMatrix], max_rounds: Optional[int] = None) -> Subspace:
    """Smallest bracket-closed subspace containing ``seeds``.

    Span growth round by round: each round brackets the newly added vectors
    with everything found so far.  Stops when a round adds nothing.
    """
    ctx = alg.context
    space = Subspace.span(ctx, seeds)
    found = list(space.basis)
    new = list(found)
    rounds = 0
    limit = alg.dim + 1 if max_rounds is None else max_rounds
    while new:
        rounds += 1
        if rounds > limit:
            raise RuntimeError("generated_subalgebra did not reach a fixed point")
        fresh = []
        for x in new:
            for y in found:
                z = superbracket(x, y)
                if z and space._ech.add(z.entries):
                    fresh.append(z)
        found.extend(fresh)
        new = fresh
    return Subspace(ctx, found)


@dataclass
class GradingReport:
    checks: Dict[str, bool]
    details: Dict[str, str]
    strict_g0: bool

    CHECKS = ("closure", "generation", "omega_symmetry", "root_vectors", "generates_algebra")

    @property
    def passed(self) -> bool:
        return all(self.checks[c] for c in self.CHECKS)

    def as_dict(self) -> dict:
        return {
            "checks": {c: self.checks[c] for c in self.CHECKS},
            "strict_g0_equals_bracket": self.strict_g0,
            "details": dict(sorted(self.details.items())),
        }


def verify_grading(alg: Algebra, g: FiveGrading) -> GradingReport:
    ctx = alg.context
    comps = g.components
    checks: Dict[str, bool] = {}
    details: Dict[str, str] = {}

    # (a) [[G_j, G_k]] inside G_{j+k}, zero beyond +-2
    closure_ok = True
    for j in DEGREES:
        for k in DEGREES:
            if k < j:
                continue
            target = comps.get(j + k)
            for x in comps[j].basis:
                for y in comps[k].basis:
                    z = superbracket(x, y)
                    if not z:
                        continue
                    if target is None or not target.contains(z):
                        closure_ok = False
                        details.setdefault("closure", f"[[G_{j}, G_{k}]] not inside G_{j + k}")
                        break
                if not closure_ok:
                    break
    checks["closure"] = closure_ok

    # (b) G_{+-2} = [[G_{+-1}, G_{+-1}]], G_0 = [[G_{+1}, G_{-1}]] + H
    gen_ok = True
    for s in (1, -1):
        sq = bracket_span(comps[s].basis, comps[s].basis, ctx)
        if not sq.same_span(comps[2 * s]):
            gen_ok = False
            details[f"generation_{2 * s:+d}"] = f"dim [[G_{s:+d},G_{s:+d}]] = {sq.dim}, dim G_{2 * s:+d} = {comps[2 * s].dim}"
    mixed = bracket_span(comps[1].basis, comps[-1].basis, ctx)
    with_h = Subspace.span(ctx, list(mixed.basis) + list(alg.cartan.basis))
    if not with_h.same_span(comps[0]):
        gen_ok = False
        details["generation_0"] = f"dim([[G_+1,G_-1]] + H) = {with_h.dim}, dim G_0 = {comps[0].dim}"
    strict = mixed.same_span(comps[0])
    checks["generation"] = gen_ok

    # (c) omega(G_{+i}) = G_{-i}
    om_ok = True
    for i in (1, 2):
        image = Subspace.span(ctx, (omega(alg, x) for x in comps[i].basis))
        if not image.same_span(comps[-i]):
            om_ok = False
            details[f"omega_{i}"] = f"omega(G_+{i}) != G_-{i}"
    checks["omega_symmetry"] = om_ok

    # (d) basis of G_{+-1} consists of root vectors
    rv_ok = True
    for s in (1, -1):
        for x in comps[s].basis:
            if not is_root_vector(alg, x):
                rv_ok = False
                details[f"root_vectors_{s:+d}"] = "basis element is not a root vector"
    checks["root_vectors"] = rv_ok

    # (e) G_{+1} and G_{-1} generate the algebra
    gen = generated_subalgebra(alg, list(comps[1].basis) + list(comps[-1].basis))
    checks["generates_algebra"] = gen.dim == alg.dim
    if gen.dim != alg.dim:
        details["generates_algebra"] = f"generated dim {gen.dim} of {alg.dim}"

    return GradingReport(checks, details, strict)


def is_root_vector(alg: Algebra, x: SuperMatrix) -> bool:
    """Nonzero simultaneous ad-eigenvector of the Cartan with a nonzero weight."""
    if not x or not alg.contains(x):
        return False
    nonzero = False
    for h in alg.cartan.basis:
        lam = eigenvalue(x, h)
        if lam is None:
            return False
        if lam:
            nonzero = True
    return nonzero
