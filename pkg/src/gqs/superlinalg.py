"""Graded matrices, the super-bracket and exact linear algebra over Q(sqrt2).

Indices are 1-based throughout so that ``unit(ctx, j, k)`` is the matrix unit
e_{jk}.  Matrices are stored sparsely as ``{(j, k): Scalar}`` with zero entries
dropped; at the sizes used here (<= 20x20, a handful of nonzeros per root
vector) this keeps bracket-closure sweeps cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .exactfield import ONE, ZERO, Scalar, render

Index = Tuple[int, int]
Vec = Dict[Index, Scalar]

EVEN, ODD, MIXED = "even", "odd", "mixed"


class ContextMismatch(ValueError):
    pass


class NotAMember(ValueError):
    """Raised when a vector is not in the span of a subspace."""


@dataclass(frozen=True)
class ParityContext:
    """theta_j for each row/column index j = 1..size."""

    parity: Tuple[int, ...]

    def __post_init__(self):
        if not self.parity:
            raise ValueError("empty parity context")
        if any(p not in (0, 1) for p in self.parity):
            raise ValueError(f"parities must be 0/1, got {self.parity}")

    @property
    def size(self) -> int:
        return len(self.parity)

    def theta(self, j: int) -> int:
        if not 1 <= j <= len(self.parity):
            raise IndexError(j)
        return self.parity[j - 1]

    def degree(self, j: int, k: int) -> int:
        return (self.parity[j - 1] + self.parity[k - 1]) % 2

    @classmethod
    def blocks(cls, n_even: int, n_odd: int) -> "ParityContext":
        return cls((0,) * n_even + (1,) * n_odd)


class SuperMatrix:
    """Square matrix over Q(sqrt2) carrying a parity context.  Immutable."""

    __slots__ = ("entries", "context", "_hash")

    def __init__(self, context: ParityContext, entries: Optional[Dict[Index, object]] = None):
        self.context = context
        clean: Vec = {}
        if entries:
            n = context.size
            for (j, k), v in entries.items():
                if not (1 <= j <= n and 1 <= k <= n):
                    raise IndexError((j, k))
                s = v if isinstance(v, Scalar) else Scalar.coerce(v)
                if s:
                    clean[(j, k)] = s
        self.entries = clean
        self._hash = None

    @classmethod
    def _raw(cls, context: ParityContext, entries: Vec) -> "SuperMatrix":
        # trusted constructor: entries already nonzero Scalars
        obj = cls.__new__(cls)
        obj.context = context
        obj.entries = entries
        obj._hash = None
        return obj

    # -- basic access ----------------------------------------------------

    @property
    def size(self) -> int:
        return self.context.size

    def __getitem__(self, jk: Index) -> Scalar:
        return self.entries.get(jk, ZERO)

    def support(self) -> List[Index]:
        return sorted(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __bool__(self):
        return bool(self.entries)

    def dense(self) -> List[List[Scalar]]:
        n = self.size
        return [[self[(j, k)] for k in range(1, n + 1)] for j in range(1, n + 1)]

    def is_diagonal(self) -> bool:
        return all(j == k for j, k in self.entries)

    def diagonal(self) -> Tuple[Scalar, ...]:
        return tuple(self[(j, j)] for j in range(1, self.size + 1))

    # -- linear structure ---------------------------------------------------

    def _check(self, other: "SuperMatrix"):
        if self.context != other.context:
            raise ContextMismatch("matrices live in different parity contexts")

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        out = dict(self.entries)
        for key, v in other.entries.items():
            s = out.get(key)
            if s is None:
                out[key] = v
            else:
                s = s + v
                if s:
                    out[key] = s
                else:
                    del out[key]
        return SuperMatrix._raw(self.context, out)

    def __neg__(self) -> "SuperMatrix":
        return SuperMatrix._raw(self.context, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + (-other)

    def scale(self, c) -> "SuperMatrix":
        c = Scalar.coerce(c)
        if not c:
            return SuperMatrix._raw(self.context, {})
        return SuperMatrix._raw(self.context, {k: c * v for k, v in self.entries.items()})

    def __mul__(self, c):
        if isinstance(c, SuperMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        rows: Dict[int, List[Tuple[int, Scalar]]] = {}
        for (j, k), v in other.entries.items():
            rows.setdefault(j, []).append((k, v))
        out: Vec = {}
        for (i, j), u in self.entries.items():
            for k, v in rows.get(j, ()):
                key = (i, k)
                prev = out.get(key)
                out[key] = u * v if prev is None else prev + u * v
        return SuperMatrix._raw(self.context, {k: v for k, v in out.items() if v})

    def transpose(self) -> "SuperMatrix":
        return SuperMatrix._raw(self.context, {(k, j): v for (j, k), v in self.entries.items()})

    def conjugate_diag(self, signs: Sequence[int]) -> "SuperMatrix":
        """D x D^{-1} for D = diag(signs) with signs = +-1."""
        return SuperMatrix._raw(
            self.context,
            {(j, k): (v if signs[j - 1] == signs[k - 1] else -v) for (j, k), v in self.entries.items()},
        )

    def supertrace(self) -> Scalar:
        total = ZERO
        for (j, k), v in self.entries.items():
            if j == k:
                total = total - v if self.context.theta(j) else total + v
        return total

    # -- grading ------------------------------------------------------------

    def homogeneous_parts(self) -> Tuple["SuperMatrix", "SuperMatrix"]:
        ctx = self.context
        even: Vec = {}
        odd: Vec = {}
        for (j, k), v in self.entries.items():
            (odd if ctx.degree(j, k) else even)[(j, k)] = v
        return SuperMatrix._raw(ctx, even), SuperMatrix._raw(ctx, odd)

    def parity(self) -> str:
        degs = {self.context.degree(j, k) for j, k in self.entries}
        if degs == {1}:
            return ODD
        if len(degs) == 2:
            return MIXED
        return EVEN  # the zero matrix counts as even

    def degree(self) -> int:
        """0 or 1 for homogeneous matrices; raises on mixed ones."""
        p = self.parity()
        if p == MIXED:
            raise ValueError("matrix is not homogeneous")
        return 1 if p == ODD else 0

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.context == other.context and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.context, frozenset(self.entries.items())))
        return self._hash

    def __repr__(self):
        return f"SuperMatrix({render_matrix(self)})"


def unit(context: ParityContext, j: int, k: int) -> SuperMatrix:
    return SuperMatrix(context, {(j, k): ONE})


def diag(context: ParityContext, values: Sequence[object]) -> SuperMatrix:
    if len(values) != context.size:
        raise ValueError("diagonal length does not match context size")
    return SuperMatrix(context, {(j + 1, j + 1): v for j, v in enumerate(values)})


def zero(context: ParityContext) -> SuperMatrix:
    return SuperMatrix._raw(context, {})


def lincomb(context: ParityContext, terms: Iterable[Tuple[object, SuperMatrix]]) -> SuperMatrix:
    out = zero(context)
    for c, m in terms:
        out = out + m.scale(c)
    return out


def render_matrix(x: SuperMatrix) -> str:
    """Render in the e_{jk} basis, e.g. ``sqrt2*e_{1,2} - 1*e_{3,1}``."""
    if x.is_zero():
        return "0"
    parts = []
    for j, k in x.support():
        parts.append(f"({render(x[(j, k)])})*e_{{{j},{k}}}")
    return " + ".join(parts)


def parity_of(x: SuperMatrix) -> str:
    return x.parity()


def superbracket(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    """[[x, y]] = xy - (-1)^{deg x deg y} yx, extended bilinearly."""
    if x.context != y.context:
        raise ContextMismatch("superbracket of matrices from different contexts")
    x0, x1 = x.homogeneous_parts()
    y0, y1 = y.homogeneous_parts()
    out = zero(x.context)
    for xp, dx in ((x0, 0), (x1, 1)):
        if not xp:
            continue
        for yq, dy in ((y0, 0), (y1, 1)):
            if not yq:
                continue
            a = xp @ yq
            b = yq @ xp
            out = out + (a + b if dx and dy else a - b)
    return out


# ---------------------------------------------------------------------------
# exact elimination


def _axpy(v: Vec, c: Scalar, w: Vec) -> None:
    """v <- v - c*w in place."""
    for key, val in w.items():
        prev = v.get(key)
        new = -(c * val) if prev is None else prev - c * val
        if new:
            v[key] = new
        elif prev is not None:
            del v[key]


class Echelon:
    """Incremental reduced row echelon form over Q(sqrt2).

    Each stored row remembers its expression in terms of the vectors that were
    added, so membership queries also return expansion coefficients.
    """

    def __init__(self):
        self.rows: Dict[object, Tuple[Vec, Dict[int, Scalar]]] = {}
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Vec) -> Tuple[Vec, Dict[int, Scalar]]:
        res = dict(v)
        coeffs: Dict[int, Scalar] = {}
        for piv, (row, rc) in self.rows.items():
            c = res.get(piv)
            if c is None:
                continue
            _axpy(res, c, row)
            for i, w in rc.items():
                prev = coeffs.get(i)
                coeffs[i] = c * w if prev is None else prev + c * w
        return res, {i: w for i, w in coeffs.items() if w}

    def add(self, v: Vec) -> bool:
        """Add v; returns False (and stores nothing) if v is already in the span."""
        res, coeffs = self.reduce(v)
        idx = self.count
        if not res:
            return False
        piv = min(res)
        inv = res[piv].invert()
        row = {k: x * inv for k, x in res.items()}
        rc = {i: -(w * inv) for i, w in coeffs.items()}
        rc[idx] = inv
        for p, (other, oc) in self.rows.items():
            c = other.get(piv)
            if c is None:
                continue
            _axpy(other, c, row)
            for i, w in rc.items():
                prev = oc.get(i)
                new = -(c * w) if prev is None else prev - c * w
                if new:
                    oc[i] = new
                elif prev is not None:
                    del oc[i]
        self.rows[piv] = (row, rc)
        self.count += 1
        return True

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)[0]

    def canonical_rows(self) -> List[Vec]:
        return [dict(self.rows[p][0]) for p in sorted(self.rows)]


class Subspace:
    """Span of exactly independent SuperMatrices in one context."""

    def __init__(self, context: ParityContext, basis: Sequence[SuperMatrix] = (), check: bool = True):
        self.context = context
        self._ech = Echelon()
        kept: List[SuperMatrix] = []
        for b in basis:
            if b.context != context:
                raise ContextMismatch("basis element from a different context")
            if self._ech.add(b.entries):
                kept.append(b)
            elif check:
                raise ValueError("basis is linearly dependent")
        self.basis: Tuple[SuperMatrix, ...] = tuple(kept)

    @classmethod
    def span(cls, context: ParityContext, vectors: Iterable[SuperMatrix]) -> "Subspace":
        """Subspace spanned by ``vectors``, dropping dependent ones."""
        return cls(context, list(vectors), check=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self) -> Iterator[SuperMatrix]:
        return iter(self.basis)

    def contains(self, v: SuperMatrix) -> bool:
        return self._ech.contains(v.entries)

    def __contains__(self, v: SuperMatrix) -> bool:
        return self.contains(v)

    def express(self, v: SuperMatrix) -> List[Scalar]:
        res, coeffs = self._ech.reduce(v.entries)
        if res:
            raise NotAMember("vector is not in the span")
        return [coeffs.get(i, ZERO) for i in range(self.dim)]

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def same_span(self, other: "Subspace") -> bool:
        return self.dim == other.dim and self.contains_subspace(other)

    def canonical_basis(self) -> List[SuperMatrix]:
        return [SuperMatrix._raw(self.context, row) for row in self._ech.canonical_rows()]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, size={self.context.size})"


def rank(vectors: Sequence[SuperMatrix]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v.entries)
    return len(ech)


def nullspace(constraints: Sequence[Dict[object, object]], columns: Sequence[object]) -> List[Dict[object, Scalar]]:
    """Basis of {x : sum_c row[c] x[c] = 0 for every row}, in reduced form.

    One basis vector per free column (in column order), with 1 in that column.
    """
    order = {c: i for i, c in enumerate(columns)}
    ech = Echelon()
    for row in constraints:
        vec = {}
        for c, v in row.items():
            if c not in order:
                raise KeyError(f"constraint mentions unknown column {c!r}")
            s = Scalar.coerce(v)
            if s:
                vec[order[c]] = s
        ech.add(vec)
    pivots = set(ech.rows)
    basis = []
    for i, c in enumerate(columns):
        if i in pivots:
            continue
        vec = {c: ONE}
        for p, (row, _) in ech.rows.items():
            val = row.get(i)
            if val:
                vec[columns[p]] = -val
        basis.append(vec)
    return basis


def matrix_nullspace(
    context: ParityContext, constraints: Sequence[Dict[Index, object]], columns: Optional[Sequence[Index]] = None
) -> Subspace:
    """Nullspace of linear constraints on matrix entries, as a Subspace."""
    if columns is None:
        n = context.size
        columns = [(j, k) for j in range(1, n + 1) for k in range(1, n + 1)]
    vecs = nullspace(constraints, list(columns))
    return Subspace(context, [SuperMatrix(context, v) for v in vecs])


def express_in_basis(v: SuperMatrix, space: Subspace) -> List[Scalar]:
    if v.context != space.context:
        raise ContextMismatch("vector and subspace live in different contexts")
    return space.express(v)


def supertrace_constraint(context: ParityContext) -> Dict[Index, int]:
    return {(j, j): (-1 if context.theta(j) else 1) for j in range(1, context.size + 1)}


def as_fraction(s: Scalar) -> Fraction:
    if not s.is_rational():
        raise ValueError(f"{s} is irrational")
    return s.a
