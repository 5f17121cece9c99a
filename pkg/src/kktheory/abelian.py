"""Exact linear algebra over the integers and finitely generated abelian groups.

All arithmetic is done with arbitrary-precision Python integers; nothing here
ever touches floating point, so results are exact at any size.  The pieces:

* ``IntMatrix`` -- immutable integer matrices of any shape, including empty
  shapes like 0 x n, which occur routinely as boundary maps of trivial groups.
* ``smith_normal_form`` -- ``u @ m @ v == d`` with unimodular ``u``, ``v`` and
  a divisibility chain ``d[0][0] | d[1][1] | ...`` of nonnegative entries.
* ``FgAbGroup`` -- a finitely generated abelian group presented as the
  cokernel of a relations matrix, carrying its canonical invariant-factor
  decomposition.  Equality of groups means equality of canonical forms.
* ``GroupHom`` -- an integer matrix between presented groups; the constructor
  certifies that the matrix descends to a well-defined homomorphism.
* ``homology`` -- ker/im of a two-step complex of presented groups, returned
  in canonical form together with ambient lifts of its generators, so that
  maps induced on homology can be computed afterwards (``induced_hom``).
* ``extension_candidates`` -- the isomorphism classes of finite abelian groups
  admitting a given subgroup with a given quotient, found by exhaustive
  enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as _cartesian
from math import prod


class CompositionNotZero(Exception):
    """Two supposedly consecutive boundary maps do not compose to zero."""


class NotWellDefined(Exception):
    """A matrix does not send source relations into target relations."""


class NotChainMap(Exception):
    """A map fails to carry one kernel lattice into another."""


class BoundExceeded(Exception):
    """A configured search bound was exceeded."""


class InfiniteInput(Exception):
    """A finite group was required but an infinite one was supplied."""


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------

class IntMatrix:
    """Immutable matrix of Python ints, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, entries):
        entries = tuple(tuple(int(x) for x in row) for row in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError(f"expected {rows}x{cols} entries")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", entries)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @staticmethod
    def from_rows(rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return IntMatrix(len(rows), ncols, rows)

    @staticmethod
    def identity(n):
        return IntMatrix(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows, cols):
        return IntMatrix(rows, cols, [[0] * cols for _ in range(rows)])

    @staticmethod
    def diagonal(values, rows=None, cols=None):
        values = list(values)
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        m = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            m[i][i] = v
        return IntMatrix(rows, cols, m)

    @staticmethod
    def column(values):
        values = list(values)
        return IntMatrix(len(values), 1, [[v] for v in values])

    @staticmethod
    def from_columns(columns, rows=None):
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count needed for a matrix with no columns")
            rows = len(columns[0])
        return IntMatrix(rows, len(columns),
                         [[c[i] for c in columns] for i in range(rows)])

    @staticmethod
    def hstack(*mats):
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise ValueError("row counts differ")
        return IntMatrix(rows, sum(m.cols for m in mats),
                         [sum((m.data[i] for m in mats), ()) for i in range(rows)])

    @staticmethod
    def vstack(*mats):
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("column counts differ")
        return IntMatrix(sum(m.rows for m in mats), cols,
                         [row for m in mats for row in m.data])

    @staticmethod
    def assemble(grid):
        """Build a block matrix from a grid (list of lists) of IntMatrix."""
        stripes = [IntMatrix.hstack(*row) for row in grid]
        return IntMatrix.vstack(*stripes)

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(r[j] for r in self.data)

    def columns(self, indices):
        return IntMatrix(self.rows, len(indices),
                         [[row[j] for j in indices] for row in self.data])

    def top_rows(self, n):
        return IntMatrix(n, self.cols, self.data[:n])

    def transpose(self):
        return IntMatrix(self.cols, self.rows,
                         [self.col(j) for j in range(self.cols)])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        ot = other.transpose().data
        return IntMatrix(self.rows, other.cols,
                         [[sum(a * b for a, b in zip(row, c)) for c in ot]
                          for row in self.data])

    def apply(self, vec):
        vec = tuple(vec)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, s):
        return IntMatrix(self.rows, self.cols,
                         [[s * a for a in row] for row in self.data])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self):
        return all(a == 0 for row in self.data for a in row)

    def tolist(self):
        return [list(r) for r in self.data]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.tolist()})"


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(row) for row in m.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SnfDecomposition:
    """u @ m @ v == d; u, v unimodular; d diagonal, nonnegative, d_i | d_{i+1}.

    The inverses of the transforms are tracked alongside because downstream
    computations (image bases, generator lifts) need them.
    """

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix

    @property
    def diagonal(self):
        n = min(self.d.rows, self.d.cols)
        return tuple(self.d.data[i][i] for i in range(n))

    @property
    def rank(self):
        return sum(1 for e in self.diagonal if e != 0)


@lru_cache(maxsize=None)
def smith_normal_form(m: IntMatrix) -> SnfDecomposition:
    """Diagonalize an integer matrix by unimodular row and column operations.

    Pivoting always picks the remaining entry of smallest nonzero absolute
    value, which keeps intermediate entries tame and makes the output
    deterministic.  Only ``d`` is canonical; ``u`` and ``v`` are just *some*
    witnesses, so tests should check identities, not their literal entries.
    """
    rows, cols = m.rows, m.cols
    d = [list(row) for row in m.data]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    ui = [row[:] for row in u]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    vi = [row[:] for row in v]

    def row_swap(a, b):
        d[a], d[b] = d[b], d[a]
        u[a], u[b] = u[b], u[a]
        for r in ui:
            r[a], r[b] = r[b], r[a]

    def row_add(a, b, q):  # row a += q * row b
        d[a] = [x + q * y for x, y in zip(d[a], d[b])]
        u[a] = [x + q * y for x, y in zip(u[a], u[b])]
        for r in ui:
            r[b] -= q * r[a]

    def row_negate(a):
        d[a] = [-x for x in d[a]]
        u[a] = [-x for x in u[a]]
        for r in ui:
            r[a] = -r[a]

    def col_swap(a, b):
        for r in d:
            r[a], r[b] = r[b], r[a]
        for r in v:
            r[a], r[b] = r[b], r[a]
        vi[a], vi[b] = vi[b], vi[a]

    def col_add(a, b, q):  # col a += q * col b
        for r in d:
            r[a] += q * r[b]
        for r in v:
            r[a] += q * r[b]
        vi[b] = [x - q * y for x, y in zip(vi[b], vi[a])]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                e = d[i][j]
                if e != 0 and (best is None or abs(e) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            row_swap(best[0], t)
        if best[1] != t:
            col_swap(best[1], t)
        while True:
            pivot = d[t][t]
            changed = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    q = d[i][t] // pivot
                    if q:
                        row_add(i, t, -q)
                    if d[i][t]:  # remainder is a strictly smaller pivot
                        row_swap(i, t)
                        changed = True
                        break
            if changed:
                continue
            for j in range(t + 1, cols):
                if d[t][j]:
                    q = d[t][j] // pivot
                    if q:
                        col_add(j, t, -q)
                    if d[t][j]:
                        col_swap(j, t)
                        changed = True
                        break
            if changed:
                continue
            culprit = None
            for i in range(t + 1, rows):
                if any(d[i][j] % pivot for j in range(t + 1, cols)):
                    culprit = i
                    break
            if culprit is None:
                break
            row_add(t, culprit, 1)  # absorb a non-divisible entry, then re-clear
        t += 1

    for i in range(limit):
        if d[i][i] < 0:
            row_negate(i)

    return SnfDecomposition(
        u=IntMatrix(rows, rows, u),
        d=IntMatrix(rows, cols, d),
        v=IntMatrix(cols, cols, v),
        u_inv=IntMatrix(rows, rows, ui),
        v_inv=IntMatrix(cols, cols, vi),
    )


def solve_in_span(a: IntMatrix, b: IntMatrix):
    """Solve ``a @ x == b`` over the integers, columnwise.

    Returns an IntMatrix ``x`` with one column per column of ``b``, or None if
    some column of ``b`` is not in the column span of ``a``.
    """
    if a.rows != b.rows:
        raise ValueError("row counts differ")
    s = smith_normal_form(a)
    diag = s.diagonal
    r = s.rank
    xcols = []
    for j in range(b.cols):
        c = s.u.apply(b.col(j))
        y = [0] * a.cols
        ok = True
        for i, ci in enumerate(c):
            if i < r:
                if ci % diag[i]:
                    ok = False
                    break
                y[i] = ci // diag[i]
            elif ci != 0:
                ok = False
                break
        if not ok:
            return None
        xcols.append(s.v.apply(y))
    return IntMatrix.from_columns(xcols, rows=a.cols)


def in_span(a: IntMatrix, b: IntMatrix) -> bool:
    return solve_in_span(a, b) is not None


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer null space of ``a``."""
    s = smith_normal_form(a)
    return s.v.columns(range(s.rank, a.cols))


def column_span_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of the lattice spanned by the columns of ``a``."""
    s = smith_normal_form(a)
    diag = s.diagonal
    cols = [tuple(diag[j] * x for x in s.u_inv.col(j)) for j in range(s.rank)]
    return IntMatrix.from_columns(cols, rows=a.rows)


# ---------------------------------------------------------------------------
# Finitely generated abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FgAbGroup:
    """Cokernel of ``relations`` inside Z^ambient_rank, plus canonical form.

    ``invariant_factors`` is the divisibility chain d_1 | d_2 | ... (each at
    least 2) and ``free_rank`` the number of Z summands.  Two groups compare
    equal when their canonical forms agree, i.e. when they are isomorphic;
    use ``same_presentation`` when literal coordinates matter.
    """

    ambient_rank: int
    relations: IntMatrix
    invariant_factors: tuple
    free_rank: int

    @property
    def canonical(self):
        return (self.invariant_factors, self.free_rank)

    def __eq__(self, other):
        if not isinstance(other, FgAbGroup):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    @property
    def is_trivial(self):
        return not self.invariant_factors and self.free_rank == 0

    @property
    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        return prod(self.invariant_factors) if self.invariant_factors else 1

    def exponent(self):
        if self.free_rank:
            return None
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def generator_count(self):
        return len(self.invariant_factors) + self.free_rank

    def describe(self) -> str:
        """Render as "0", "Z", "Z_2 + Z_4 + Z" (torsion in chain order, then Z's)."""
        parts = [f"Z_{d}" for d in self.invariant_factors] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    __str__ = describe

    def __repr__(self):
        return f"FgAbGroup({self.describe()!r})"

    @staticmethod
    def from_invariants(factors, free_rank=0) -> "FgAbGroup":
        """Group presented with one generator per cyclic factor (diag relations)."""
        factors = [int(d) for d in factors]
        n = len(factors) + free_rank
        rel = IntMatrix.diagonal(factors, rows=n, cols=len(factors))
        return group_from_presentation(rel)

    @staticmethod
    def from_description(text: str) -> "FgAbGroup":
        """Parse the output of ``describe`` (also accepts unsorted factors)."""
        text = text.strip()
        if text == "0":
            return trivial_group()
        factors = []
        free = 0
        for token in text.split("+"):
            token = token.strip()
            if token == "Z":
                free += 1
            elif token.startswith("Z_"):
                factors.append(int(token[2:]))
            else:
                raise ValueError(f"cannot parse group token {token!r}")
        return FgAbGroup.from_invariants(factors, free)


def group_from_presentation(relations: IntMatrix) -> FgAbGroup:
    """Canonicalize Z^rows / (column span of ``relations``) via its SNF."""
    diag = smith_normal_form(relations).diagonal
    factors = tuple(e for e in diag if e >= 2)
    rank = sum(1 for e in diag if e != 0)
    return FgAbGroup(
        ambient_rank=relations.rows,
        relations=relations,
        invariant_factors=factors,
        free_rank=relations.rows - rank,
    )


def free_group(n: int) -> FgAbGroup:
    return group_from_presentation(IntMatrix.zeros(n, 0))


def trivial_group() -> FgAbGroup:
    return free_group(0)


def cyclic_group(n: int) -> FgAbGroup:
    if n == 0:
        return free_group(1)
    return FgAbGroup.from_invariants([n])


def direct_sum(*groups) -> FgAbGroup:
    amb = sum(g.ambient_rank for g in groups)
    cols = []
    offset = 0
    for g in groups:
        for j in range(g.relations.cols):
            col = [0] * amb
            for i, x in enumerate(g.relations.col(j)):
                col[offset + i] = x
            cols.append(col)
        offset += g.ambient_rank
    return group_from_presentation(IntMatrix.from_columns(cols, rows=amb))


def same_presentation(a: FgAbGroup, b: FgAbGroup) -> bool:
    return a.ambient_rank == b.ambient_rank and a.relations == b.relations


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupHom:
    """Integer matrix source -> target, certified well-defined on cokernels."""

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.ambient_rank, self.source.ambient_rank):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match "
                f"{self.target.ambient_rank}x{self.source.ambient_rank}")
        image_of_relations = self.matrix @ self.source.relations
        if solve_in_span(self.target.relations, image_of_relations) is None:
            raise NotWellDefined(
                "matrix does not map source relations into target relations")

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        if not same_presentation(other.target, self.source):
            raise ValueError("composition mismatch: inner target != outer source")
        return GroupHom(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other: "GroupHom") -> "GroupHom":
        if not (same_presentation(self.source, other.source)
                and same_presentation(self.target, other.target)):
            raise ValueError("sum of homs with different endpoints")
        return GroupHom(self.source, self.target, self.matrix + other.matrix)

    def __neg__(self):
        return GroupHom(self.source, self.target, -self.matrix)

    def is_zero(self) -> bool:
        return in_span(self.target.relations, self.matrix)

    def equals(self, other: "GroupHom") -> bool:
        return (same_presentation(self.source, other.source)
                and same_presentation(self.target, other.target)
                and in_span(self.target.relations, self.matrix - other.matrix))

    def __repr__(self):
        return f"GroupHom({self.source.describe()} -> {self.target.describe()})"


def identity_hom(g: FgAbGroup) -> GroupHom:
    return GroupHom(g, g, IntMatrix.identity(g.ambient_rank))


def zero_hom(source: FgAbGroup, target: FgAbGroup) -> GroupHom:
    return GroupHom(source, target, IntMatrix.zeros(target.ambient_rank, source.ambient_rank))


def kernel_lattice(h: GroupHom) -> IntMatrix:
    """Basis of { x in Z^ambient(source) : h(x) lies in the target relations span }.

    The induced subgroup of the source is exactly ker(h); note the lattice
    always contains the source relations, so ker(h) is this lattice modulo
    source relations.
    """
    stacked = IntMatrix.hstack(h.matrix, h.target.relations)
    kb = kernel_basis(stacked)
    generators = kb.top_rows(h.source.ambient_rank)
    return column_span_basis(generators)


# ---------------------------------------------------------------------------
# Homology of two consecutive maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HomologyResult:
    """ker(d_out)/im(d_in) in canonical form, with ambient generator lifts.

    ``lift`` column i is an element of the middle group's ambient lattice
    representing canonical generator i (torsion generators first, in chain
    order, then free ones).  Enough of the change of basis is retained to
    express further ambient kernel elements in these generators.
    """

    group: FgAbGroup
    lift: IntMatrix
    middle: FgAbGroup
    kernel_lattice_basis: IntMatrix
    boundary_in: IntMatrix
    _transform: IntMatrix      # row transform of the SNF of the inner relations
    _diag: tuple
    _kept: tuple               # indices of canonical generators in z-coordinates

    def express(self, vec):
        """Coordinates of an ambient kernel element in the canonical generators."""
        w = solve_in_span(self.kernel_lattice_basis, IntMatrix.column(vec))
        if w is None:
            raise ValueError("element does not lie in the kernel lattice")
        z = self._transform.apply(w.col(0))
        coords = []
        torsion = len(self.group.invariant_factors)
        for pos, j in enumerate(self._kept):
            if pos < torsion:
                coords.append(z[j] % self._diag[j])
            else:
                coords.append(z[j])
        return tuple(coords)


def homology(d_in: GroupHom, d_out: GroupHom) -> HomologyResult:
    """Homology at the middle of ``. -> middle -> .`` with generator lifts.

    Raises CompositionNotZero unless d_out o d_in vanishes as a map of
    presented groups.
    """
    if not same_presentation(d_in.target, d_out.source):
        raise ValueError("middle groups of the two boundary maps differ")
    if not (d_out @ d_in).is_zero():
        raise CompositionNotZero("boundary maps do not compose to zero")
    middle = d_in.target
    lattice = kernel_lattice(d_out)
    inner = IntMatrix.hstack(d_in.matrix, middle.relations)
    relations_in_lattice = solve_in_span(lattice, inner)
    if relations_in_lattice is None:  # impossible once the two checks above pass
        raise RuntimeError("image escaped the kernel lattice")
    s = smith_normal_form(relations_in_lattice)
    diag = s.diagonal
    rank = s.rank
    torsion_idx = [j for j in range(rank) if diag[j] >= 2]
    free_idx = list(range(rank, lattice.cols))
    kept = torsion_idx + free_idx
    group = FgAbGroup.from_invariants([diag[j] for j in torsion_idx], len(free_idx))
    lift = lattice @ s.u_inv.columns(kept)
    return HomologyResult(
        group=group,
        lift=lift,
        middle=middle,
        kernel_lattice_basis=lattice,
        boundary_in=d_in.matrix,
        _transform=s.u,
        _diag=diag,
        _kept=tuple(kept),
    )


def induced_hom(f: GroupHom, h_src: HomologyResult, h_tgt: HomologyResult) -> GroupHom:
    """Map induced on homology by a chain map component ``f``.

    Raises NotChainMap unless ``f`` carries the source kernel lattice into the
    target kernel lattice (which is what commuting with the boundaries means
    at this level).
    """
    if not same_presentation(f.source, h_src.middle):
        raise ValueError("f.source is not the source homology's middle group")
    if not same_presentation(f.target, h_tgt.middle):
        raise ValueError("f.target is not the target homology's middle group")
    mapped = f.matrix @ h_src.kernel_lattice_basis
    if solve_in_span(h_tgt.kernel_lattice_basis, mapped) is None:
        raise NotChainMap("map does not preserve the kernel lattices")
    cols = []
    for i in range(h_src.lift.cols):
        cols.append(h_tgt.express(f.matrix.apply(h_src.lift.col(i))))
    mat = IntMatrix.from_columns(cols, rows=h_tgt.group.generator_count())
    return GroupHom(h_src.group, h_tgt.group, mat)


# ---------------------------------------------------------------------------
# Extensions of finite abelian groups
# ---------------------------------------------------------------------------

DEFAULT_EXTENSION_BOUND = 2 ** 16


def _factorint(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(n):
    """Partitions of n as non-increasing tuples."""
    if n == 0:
        yield ()
        return

    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def abelian_groups_of_order(n: int):
    """All isomorphism classes of abelian groups of order n, deterministically."""
    if n <= 0:
        raise ValueError("order must be positive")
    per_prime = []
    for p, e in sorted(_factorint(n).items()):
        per_prime.append([(p, part) for part in _partitions(e)])
    groups = []
    for combo in _cartesian(*per_prime) if per_prime else [()]:
        divisors = [p ** e for p, part in combo for e in part]
        groups.append(FgAbGroup.from_invariants(divisors))
    groups.sort(key=lambda g: g.invariant_factors)
    return groups


def _admits_extension(g: FgAbGroup, sub: FgAbGroup, quot: FgAbGroup) -> bool:
    """Does g contain a copy of sub with quotient quot?  Checked by listing
    every homomorphism sub -> g and testing injectivity plus quotient type."""
    a = sub.invariant_factors
    b = g.invariant_factors
    m = len(b)
    sub_order = sub.order()
    g_order = g.order()
    diag_b = IntMatrix.diagonal(list(b), rows=m, cols=m)
    entry_choices = []
    for ai in a:
        col_choices = []
        for bj in b:
            gcd_ab = _gcd(ai, bj)
            step = bj // gcd_ab
            col_choices.append([t * step for t in range(gcd_ab)])
        entry_choices.append(col_choices)
    # all homs: pick each matrix entry independently
    flat_choices = [c for col in entry_choices for c in col]
    for flat in _cartesian(*flat_choices) if flat_choices else [()]:
        cols = [flat[i * m:(i + 1) * m] for i in range(len(a))]
        hom = IntMatrix.from_columns(cols, rows=m)
        span = IntMatrix.hstack(hom, diag_b)
        basis = column_span_basis(span)
        image_order = g_order // abs(determinant(basis))
        if image_order != sub_order:
            continue
        if group_from_presentation(span) == quot:
            return True
    return False


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def extension_candidates(sub: FgAbGroup, quot: FgAbGroup,
                         order_bound: int = DEFAULT_EXTENSION_BOUND):
    """Isomorphism classes of finite abelian G with sub <= G and G/sub == quot.

    Enumerates every abelian group of order |sub| * |quot| (indexed by
    partitions of the prime exponents) and keeps those passing an exhaustive
    subgroup-with-quotient test.  The direct sum sub + quot always appears.
    """
    if not sub.is_finite or not quot.is_finite:
        raise InfiniteInput("extension enumeration needs finite groups")
    total = sub.order() * quot.order()
    if total > order_bound:
        raise BoundExceeded(f"order {total} exceeds bound {order_bound}")
    found = [g for g in abelian_groups_of_order(total)
             if _admits_extension(g, sub, quot)]
    return found
