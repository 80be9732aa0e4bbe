"""Matrix realizations of A(m|n), B(m|n), C(n) and D(m|n).

Index layout
------------
A(m|n) = sl(m+1|n+1): indices 1..m+1 even, m+2..m+n+2 odd; weight of the
diagonal unit at index a is the a-th coordinate of (eps_1..eps_{m+1} |
delta_1..delta_{n+1}).

osp-type (B, D, C): even indices first, then odd ones.  With p = 2m+1 (B) or
p = 2m (D, C):

    a = i        (1 <= i <= m)   weight  eps_i
    a = m + i                    weight -eps_i
    a = 2m + 1   (B only)        weight  0
    a = p + j    (1 <= j <= n)   weight  delta_j
    a = p + n + j                weight -delta_j

The algebra is the stabilizer of a supersymmetric form pairing i <-> m+i,
2m+1 with itself and p+j <-> p+n+j.  C(n) is realized as osp(2|2n-2), i.e.
the D-layout with one eps coordinate and n-1 delta coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactfield import Scalar
from .superlinalg import (
    NotAMember,
    ParityContext,
    Subspace,
    SuperMatrix,
    matrix_nullspace,
    superbracket,
    supertrace_constraint,
    unit,
)

Weight = Tuple[int, ...]


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True)
class FamilyTag:
    family: str
    m: int
    n: int
    # sl(k|k) is not simple; it is only admitted for matrix-level relation checks
    allow_center: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        f, m, n = self.family, self.m, self.n
        if f not in ("A", "B", "C", "D"):
            raise InvalidParameters(f"unknown family {f!r}")
        if m < 0 or n < 0:
            raise InvalidParameters("parameters must be nonnegative")
        if f == "A" and m == n and not self.allow_center:
            raise InvalidParameters(f"A({m}|{n}) has a center; only m != n is supported")
        if f == "B" and m == 0 and n == 0:
            raise InvalidParameters("B(0|0) is trivial")
        if f == "D" and (m < 2 or n < 1):
            raise InvalidParameters("D(m|n) needs m >= 2 and n >= 1")
        if f == "C" and (n < 2 or m != 1):
            raise InvalidParameters("C(n) needs n >= 2 (stored with m = 1)")

    @classmethod
    def C(cls, n: int) -> "FamilyTag":
        return cls("C", 1, n)

    @property
    def label(self) -> str:
        if self.family == "C":
            return f"C({self.n})"
        return f"{self.family}({self.m}|{self.n})"

    def __str__(self):
        return self.label


def expected_dim(tag: FamilyTag) -> int:
    m, n = tag.m, tag.n
    if tag.family == "A":
        return (m + n + 2) ** 2 - 1
    if tag.family == "B":
        return m * (2 * m + 1) + n * (2 * n + 1) + 2 * n * (2 * m + 1)
    if tag.family == "D":
        return m * (2 * m - 1) + n * (2 * n + 1) + 4 * m * n
    return 1 + (n - 1) * (2 * n - 1) + 4 * (n - 1)


@dataclass(frozen=True)
class RootVector:
    weight: Weight
    matrix: SuperMatrix
    parity: int


# frozen by test_algebras.test_form_variant_is_first_passing
DEFAULT_FORM = (1, -1, "block")


@dataclass
class Algebra:
    tag: FamilyTag
    context: ParityContext
    basis: Subspace
    cartan: Subspace
    roots: List[RootVector]
    omega_sign: Tuple[int, ...]
    index_weights: Tuple[Weight, ...]
    form: Optional[Dict[Tuple[int, int], int]] = None
    _root_index: Dict[Weight, RootVector] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._root_index = {r.weight: r for r in self.roots}

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def rank(self) -> int:
        return self.cartan.dim

    @property
    def n_coords(self) -> int:
        """Number of weight coordinates (eps..|delta..)."""
        return len(self.index_weights[0])

    def root(self, weight: Sequence[int]) -> RootVector:
        return self._root_index[tuple(weight)]

    def contains(self, x: SuperMatrix) -> bool:
        return self.basis.contains(x)

    def weight_of(self, j: int, k: int) -> Weight:
        wj, wk = self.index_weights[j - 1], self.index_weights[k - 1]
        return tuple(a - b for a, b in zip(wj, wk))

    def toral(self, coords: Sequence[object]) -> SuperMatrix:
        """Cartan element whose value on a root of weight w is w . coords."""
        coords = [Fraction(c) for c in coords]
        if len(coords) != self.n_coords:
            raise ValueError(f"{self.tag}: expected {self.n_coords} coordinates, got {len(coords)}")
        vals = [sum((w * c for w, c in zip(wt, coords)), Fraction(0)) for wt in self.index_weights]
        if self.tag.family == "A" and self.tag.m != self.tag.n:
            # shift by a multiple of the identity (central in gl) to reach sl
            ctx = self.context
            st = sum((-v if ctx.theta(a + 1) else v) for a, v in enumerate(vals))
            m, n = self.tag.m, self.tag.n
            shift = Fraction(st) / ((m + 1) - (n + 1))
            vals = [v - shift for v in vals]
        return SuperMatrix(self.context, {(a + 1, a + 1): v for a, v in enumerate(vals)})

    def describe(self) -> str:
        roots = sorted(r.weight for r in self.roots)
        lines = [f"algebra: {self.tag.label}", f"dim: {self.dim}", f"rank: {self.rank}", "roots:"]
        lines += ["  " + format_weight(w, self.tag) for w in roots]
        return "\n".join(lines)


def format_weight(w: Sequence[int], tag: FamilyTag) -> str:
    if tag.family == "A":
        ne = tag.m + 1
    else:
        ne = 1 if tag.family == "C" else tag.m
    names = [f"e{i + 1}" for i in range(ne)] + [f"d{j + 1}" for j in range(len(w) - ne)]
    parts = []
    for c, name in zip(w, names):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{sign}{mag}{name}")
    s = "".join(parts) or "0"
    return s[1:] if s.startswith("+") else s


# ---------------------------------------------------------------------------
# construction helpers


def root_decomposition(alg: Algebra) -> List[RootVector]:
    """Split the algebra into simultaneous ad-eigenspaces of the diagonal Cartan.

    For a diagonal h, [h, e_jk] = (h_j - h_k) e_jk, so grouping matrix units by
    w(j) - w(k) and projecting the basis onto each group gives the root spaces.
    """
    return _decompose(alg.context, alg.basis, alg.index_weights)


def _decompose(ctx: ParityContext, basis: Subspace, index_weights) -> List[RootVector]:
    groups: Dict[Weight, List[Dict]] = {}
    for b in basis:
        parts: Dict[Weight, Dict] = {}
        for (j, k), v in b.entries.items():
            wt = tuple(a - c for a, c in zip(index_weights[j - 1], index_weights[k - 1]))
            parts.setdefault(wt, {})[(j, k)] = v
        for wt, ent in parts.items():
            groups.setdefault(wt, []).append(ent)
    roots = []
    zero_wt = tuple(0 for _ in index_weights[0])
    for wt in sorted(groups):
        if wt == zero_wt:
            continue
        space = Subspace.span(ctx, [SuperMatrix(ctx, e) for e in groups[wt]])
        for mat in space.canonical_basis():
            roots.append(RootVector(wt, mat, mat.degree()))
    return roots


def build_special_linear(m: int, n: int, allow_center: bool = False) -> Algebra:
    tag = FamilyTag("A", m, n, allow_center)
    size = m + n + 2
    ctx = ParityContext.blocks(m + 1, n + 1)
    diag_cols = [(j, j) for j in range(1, size + 1)]
    cartan = matrix_nullspace(ctx, [supertrace_constraint(ctx)], diag_cols)
    offdiag = [unit(ctx, j, k) for j in range(1, size + 1) for k in range(1, size + 1) if j != k]
    basis = Subspace(ctx, list(cartan.basis) + offdiag)
    weights = tuple(tuple(1 if c == a else 0 for c in range(size)) for a in range(size))
    roots = _decompose(ctx, basis, weights)
    return Algebra(tag, ctx, basis, cartan, roots, (1,) * size, weights)


def _osp_layout(tag: FamilyTag, order: str = "block"):
    """(context, index weights, pairing) for the osp realization of ``tag``."""
    if tag.family == "C":
        m, n, self_paired = 1, tag.n - 1, False
    else:
        m, n, self_paired = tag.m, tag.n, tag.family == "B"
    n_even = 2 * m + (1 if self_paired else 0)
    size = n_even + 2 * n
    ctx = ParityContext.blocks(n_even, 2 * n)
    ncoord = m + n
    weights: List[Weight] = [None] * size  # type: ignore

    def vec(c, s):
        w = [0] * ncoord
        w[c] = s
        return tuple(w)

    for i in range(m):
        weights[i] = vec(i, 1)
        weights[m + i] = vec(i, -1)
    if self_paired:
        weights[2 * m] = tuple([0] * ncoord)
    p = n_even
    for j in range(n):
        if order == "block":
            a, b = p + j, p + n + j
        else:
            a, b = p + 2 * j, p + 2 * j + 1
        weights[a] = vec(m + j, 1)
        weights[b] = vec(m + j, -1)
    return ctx, tuple(weights), m, n, self_paired


def osp_form(tag: FamilyTag, variant=DEFAULT_FORM) -> Dict[Tuple[int, int], int]:
    """Supersymmetric form: symmetric on the even block, skew on the odd block."""
    self_sign, odd_sign, order = variant
    ctx, _, m, n, self_paired = _osp_layout(tag, order)
    G: Dict[Tuple[int, int], int] = {}
    for i in range(1, m + 1):
        G[(i, m + i)] = G[(m + i, i)] = 1
    p = 2 * m
    if self_paired:
        G[(2 * m + 1, 2 * m + 1)] = self_sign
        p += 1
    for j in range(1, n + 1):
        if order == "block":
            a, b = p + j, p + n + j
        else:
            a, b = p + 2 * j - 1, p + 2 * j
        G[(a, b)] = odd_sign
        G[(b, a)] = -odd_sign
    return G


def _invariance_constraints(ctx: ParityContext, G, cols: Sequence[Tuple[int, int]], degree: int):
    """Rows of X^T G + (-1)^{deg X theta_a} G X = 0 restricted to unknowns ``cols``."""
    size = ctx.size
    pair = {}
    for (a, b), v in G.items():
        pair[a] = (b, v)  # G[a, pair(a)] = v
    colset = set(cols)
    rows = []
    for a in range(1, size + 1):
        for b in range(1, size + 1):
            row: Dict[Tuple[int, int], int] = {}
            # (X^T G)_{ab} = X_{pb, a} G_{pb, b} where G_{pb, b} != 0
            pb, _ = pair[b]
            gv = G[(pb, b)]
            if (pb, a) in colset:
                row[(pb, a)] = row.get((pb, a), 0) + gv
            pa, ga = pair[a]
            sign = -1 if (degree and ctx.theta(a)) else 1
            if (pa, b) in colset:
                row[(pa, b)] = row.get((pa, b), 0) + sign * ga
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    return rows


def build_orthosymplectic(tag: FamilyTag, variant=DEFAULT_FORM) -> Algebra:
    if tag.family not in ("B", "C", "D"):
        raise InvalidParameters(f"{tag} is not orthosymplectic")
    ctx, weights, m, n, self_paired = _osp_layout(tag, variant[2])
    G = osp_form(tag, variant)
    size = ctx.size
    classes: Dict[Weight, List[Tuple[int, int]]] = {}
    for j in range(1, size + 1):
        for k in range(1, size + 1):
            wt = tuple(a - b for a, b in zip(weights[j - 1], weights[k - 1]))
            classes.setdefault(wt, []).append((j, k))
    zero_wt = tuple([0] * (m + n))
    cartan = None
    roots: List[RootVector] = []
    for wt in sorted(classes):
        cols = classes[wt]
        degs = {ctx.degree(j, k) for j, k in cols}
        assert len(degs) == 1, "weight classes are parity-homogeneous"
        deg = degs.pop()
        space = matrix_nullspace(ctx, _invariance_constraints(ctx, G, cols, deg), cols)
        if wt == zero_wt:
            cartan = space
        else:
            roots.extend(RootVector(wt, x, deg) for x in space.basis)
    assert cartan is not None
    basis = Subspace(ctx, list(cartan.basis) + [r.matrix for r in roots])
    p = size - 2 * n
    signs = tuple([1] * p + [-1] * n + [1] * n)
    return Algebra(tag, ctx, basis, cartan, roots, signs, weights, form=G)


def build(tag: FamilyTag) -> Algebra:
    if tag.family == "A":
        return build_special_linear(tag.m, tag.n, tag.allow_center)
    return build_orthosymplectic(tag)


def build_family(family: str, m: int = 0, n: int = 0) -> Algebra:
    """Convenience entry point accepting the B0 alias for B(0|n)."""
    return build(make_tag(family, m, n))


def make_tag(family: str, m: int = 0, n: int = 0, allow_center: bool = False) -> FamilyTag:
    if family == "B0":
        if m:
            raise InvalidParameters("B0 takes no m parameter")
        return FamilyTag("B", 0, n)
    if family == "C":
        return FamilyTag.C(n)
    return FamilyTag(family, m, n, allow_center)


def form_variants():
    """The sign/order variants tried when fixing the osp form convention."""
    return list(itertools.product((1, -1), (1, -1), ("block", "interleaved")))


# ---------------------------------------------------------------------------
# anti-involution


def omega(alg: Algebra, x: SuperMatrix, check: bool = True) -> SuperMatrix:
    """Signed transpose D x^T D^{-1}."""
    if check and not alg.contains(x):
        raise NotAMember("omega: argument is not in the algebra")
    y = x.transpose().conjugate_diag(alg.omega_sign)
    if check and not alg.contains(y):
        raise NotAMember("omega: image left the algebra")
    return y


def find_omega_signs(alg: Algebra, pairs: Sequence[Tuple[SuperMatrix, SuperMatrix]] = ()) -> Optional[Tuple[int, ...]]:
    """First +-1 diagonal (lexicographic, D_11 = +1) making the signed transpose
    preserve the algebra and send each x+ to x-."""
    size = alg.context.size
    for tail in itertools.product((1, -1), repeat=size - 1):
        signs = (1,) + tail
        ok = all(alg.contains(b.transpose().conjugate_diag(signs)) for b in alg.basis)
        if ok and all(xp.transpose().conjugate_diag(signs) == xm for xp, xm in pairs):
            return signs
    return None


def closure_failures(alg: Algebra) -> List[Tuple[int, int]]:
    """Index pairs of basis elements whose bracket leaves the span."""
    bad = []
    b = alg.basis.basis
    for i in range(len(b)):
        for j in range(i, len(b)):
            if not alg.contains(superbracket(b[i], b[j])):
                bad.append((i, j))
    return bad


def eigenvalue(x: SuperMatrix, h: SuperMatrix) -> Optional[Scalar]:
    """Common value h_j - h_k over the support of x, or None if x is not an
    eigenvector of ad h (or is zero)."""
    val = None
    for j, k in x.entries:
        d = h[(j, j)] - h[(k, k)]
        if val is None:
            val = d
        elif d != val:
            return None
    return val


__all__ = [
    "Algebra",
    "FamilyTag",
    "InvalidParameters",
    "RootVector",
    "build",
    "build_family",
    "build_orthosymplectic",
    "build_special_linear",
    "closure_failures",
    "eigenvalue",
    "expected_dim",
    "find_omega_signs",
    "form_variants",
    "format_weight",
    "make_tag",
    "omega",
    "osp_form",
    "root_decomposition",
]
