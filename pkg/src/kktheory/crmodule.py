"""Building blocks of CR K-theory and the graded coefficient module A.

The two free rank-one CR-modules (the K-theory of the reals and of the
complexes, viewed as real C*-algebras) are hard-coded as degree-indexed
tables of groups together with the natural transformations eta, c, r, psi.
From a vertex partition they combine into the graded module

    A = (real block)^{fixed vertices} + (complex block)^{2-orbits}

whose degree-0 complex part is Z^{vertices}, and every adjacency matrix
induces a graded endomorphism rho of A determined by that complex part.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FgAbGroup, GroupHom, IntMatrix, free_group, in_span, trivial_group
from .kgraph import KGraphSpec, VertexPartition, block_decompose, validate

REAL_PERIOD = 8
COMPLEX_PERIOD = 2


# ---------------------------------------------------------------------------
# The two building-block tables
# ---------------------------------------------------------------------------

def _grp(*factors, free=0):
    return FgAbGroup.from_invariants(list(factors), free)


def _mat(rows, cols, entries=None):
    if entries is None:
        return IntMatrix.zeros(rows, cols)
    return IntMatrix(rows, cols, entries)


@dataclass(frozen=True)
class BlockTable:
    """One rank-one building block: its eight KO and KU groups and the
    degreewise matrices of eta (degree +1), c, r and psi."""

    name: str
    ko: tuple
    ku: tuple
    eta: tuple
    c: tuple
    r: tuple
    psi: tuple


def real_block_table() -> BlockTable:
    Z, Z2, O = _grp(free=1), _grp(2), trivial_group()
    ko = (Z, Z2, Z2, O, Z, O, O, O)
    ku = (Z, O, Z, O, Z, O, Z, O)
    ko_n = [g.ambient_rank for g in ko]
    ku_n = [g.ambient_rank for g in ku]
    eta_vals = [1, 1, 0, 0, 0, 0, 0, 0]
    c_vals = [1, 0, 0, 0, 2, 0, 0, 0]
    r_vals = [2, 0, 1, 0, 1, 0, 0, 0]
    psi_vals = [1, 0, -1, 0, 1, 0, -1, 0]
    eta = tuple(_mat(ko_n[(n + 1) % 8], ko_n[n],
                     [[eta_vals[n]]] if ko_n[(n + 1) % 8] and ko_n[n] else None)
                for n in range(8))
    c = tuple(_mat(ku_n[n], ko_n[n],
                   [[c_vals[n]]] if ku_n[n] and ko_n[n] else None)
              for n in range(8))
    r = tuple(_mat(ko_n[n], ku_n[n],
                   [[r_vals[n]]] if ko_n[n] and ku_n[n] else None)
              for n in range(8))
    psi = tuple(_mat(ku_n[n], ku_n[n],
                     [[psi_vals[n]]] if ku_n[n] else None)
                for n in range(8))
    return BlockTable("R", ko, ku, eta, c, r, psi)


def complex_block_table() -> BlockTable:
    Z, Z2f, O = _grp(free=1), _grp(free=2), trivial_group()
    ko = (Z, O, Z, O, Z, O, Z, O)
    ku = (Z2f, O, Z2f, O, Z2f, O, Z2f, O)
    ko_n = [g.ambient_rank for g in ko]
    ku_n = [g.ambient_rank for g in ku]
    swap = [[0, 1], [1, 0]]
    nswap = [[0, -1], [-1, 0]]
    c_cols = {0: [[1], [1]], 2: [[-1], [1]], 4: [[1], [1]], 6: [[-1], [1]]}
    r_rows = {0: [[1, 1]], 2: [[-1, 1]], 4: [[1, 1]], 6: [[-1, 1]]}
    psi_mats = {0: swap, 2: nswap, 4: swap, 6: nswap}
    eta = tuple(_mat(ko_n[(n + 1) % 8], ko_n[n]) for n in range(8))
    c = tuple(_mat(ku_n[n], ko_n[n], c_cols.get(n)) for n in range(8))
    r = tuple(_mat(ko_n[n], ku_n[n], r_rows.get(n)) for n in range(8))
    psi = tuple(_mat(ku_n[n], ku_n[n], psi_mats.get(n)) for n in range(8))
    return BlockTable("C", ko, ku, eta, c, r, psi)


@dataclass(frozen=True)
class CrBlockTables:
    real_block: BlockTable
    complex_block: BlockTable


def standard_tables() -> CrBlockTables:
    return CrBlockTables(real_block_table(), complex_block_table())


# ---------------------------------------------------------------------------
# Relation checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationCheck:
    relation: str
    block: str
    degree: int
    passed: bool


@dataclass(frozen=True)
class CrRelationReport:
    checks: tuple

    @property
    def all_passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def _equal_mod(target: FgAbGroup, lhs: IntMatrix, rhs: IntMatrix) -> bool:
    return in_span(target.relations, lhs - rhs)


def check_cr_relations(tables: CrBlockTables) -> CrRelationReport:
    """Verify the defining relations of both block tables, degree by degree.

    Equalities are taken modulo the target group's relations (so e.g. r o c
    lands on 2*id even when the target is 2-torsion).
    """
    checks = []
    for tab in (tables.real_block, tables.complex_block):
        for n in range(8):
            n1, n2, n3 = (n + 1) % 8, (n + 2) % 8, (n + 3) % 8
            ko_id = IntMatrix.identity(tab.ko[n].ambient_rank)
            ku_id = IntMatrix.identity(tab.ku[n].ambient_rank)
            cases = [
                ("r.c = 2", tab.ko[n], tab.r[n] @ tab.c[n], ko_id.scaled(2)),
                ("c.r = 1 + psi", tab.ku[n], tab.c[n] @ tab.r[n], ku_id + tab.psi[n]),
                ("2.eta = 0", tab.ko[n1], tab.eta[n].scaled(2),
                 IntMatrix.zeros(*tab.eta[n].shape)),
                ("eta.r = 0", tab.ko[n1], tab.eta[n] @ tab.r[n],
                 IntMatrix.zeros(tab.ko[n1].ambient_rank, tab.ku[n].ambient_rank)),
                ("c.eta = 0", tab.ku[n1], tab.c[n1] @ tab.eta[n],
                 IntMatrix.zeros(tab.ku[n1].ambient_rank, tab.ko[n].ambient_rank)),
                ("eta^3 = 0", tab.ko[n3], tab.eta[n2] @ tab.eta[n1] @ tab.eta[n],
                 IntMatrix.zeros(tab.ko[n3].ambient_rank, tab.ko[n].ambient_rank)),
                ("psi.c = c", tab.ku[n], tab.psi[n] @ tab.c[n], tab.c[n]),
                ("r.psi = r", tab.ko[n], tab.r[n] @ tab.psi[n], tab.r[n]),
                ("psi^2 = 1", tab.ku[n], tab.psi[n] @ tab.psi[n], ku_id),
            ]
            for relation, target, lhs, rhs in cases:
                checks.append(RelationCheck(relation, tab.name, n,
                                            _equal_mod(target, lhs, rhs)))
    return CrRelationReport(tuple(checks))


# ---------------------------------------------------------------------------
# The graded module A and the endomorphisms rho
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedGroupA:
    """Degreewise groups of A for a given partition.

    Real part (period 8), with nf fixed vertices and n1 two-orbits:
    degree 0 and 4: Z^nf + Z^n1; degree 1: Z_2^nf; degree 2: Z_2^nf + Z^n1;
    degree 6: Z^n1; degrees 3, 5, 7: 0.  Complex part (period 2): degree 0 is
    Z^(nf + 2 n1) in (fixed, paired, partners) coordinates, degree 1 is 0.
    """

    n_fixed: int
    n_paired: int
    real: tuple
    cplx: tuple

    def group(self, part: str, degree: int) -> FgAbGroup:
        if part == "real":
            return self.real[degree % REAL_PERIOD]
        if part == "complex":
            return self.cplx[degree % COMPLEX_PERIOD]
        raise ValueError(f"unknown part {part!r}")


def build_graded_group(partition: VertexPartition) -> GradedGroupA:
    nf, n1 = partition.n_fixed, partition.n_paired
    mixed = FgAbGroup.from_invariants([2] * nf, n1)   # Z_2^nf + Z^n1
    full_free = free_group(nf + n1)
    real = (
        full_free,                       # 0
        FgAbGroup.from_invariants([2] * nf),  # 1
        mixed,                           # 2
        trivial_group(),                 # 3
        full_free,                       # 4
        trivial_group(),                 # 5
        free_group(n1),                  # 6
        trivial_group(),                 # 7
    )
    cplx = (free_group(nf + 2 * n1), trivial_group())
    return GradedGroupA(nf, n1, real, cplx)


def _reduce_rows(mat: IntMatrix, moduli) -> IntMatrix:
    """Reduce entries of row i modulo moduli[i] (0 means leave alone)."""
    rows = []
    for i, row in enumerate(mat.data):
        m = moduli[i]
        rows.append([x % m for x in row] if m else list(row))
    return IntMatrix(mat.rows, mat.cols, rows)


@dataclass(frozen=True)
class RhoMap:
    """A single color's graded endomorphism of A."""

    color: int
    real: tuple
    cplx: tuple

    def hom(self, part: str, degree: int) -> GroupHom:
        if part == "real":
            return self.real[degree % REAL_PERIOD]
        if part == "complex":
            return self.cplx[degree % COMPLEX_PERIOD]
        raise ValueError(f"unknown part {part!r}")


def build_rho(spec: KGraphSpec, color: int,
              partition: VertexPartition | None = None,
              graded: GradedGroupA | None = None) -> RhoMap:
    """Assemble the per-degree matrices of rho^color from the blocks of
    B = I - M^t.  Degree 0 complex is the full reordered B; the real degrees
    follow the fixed block pattern (torsion rows reduced mod 2)."""
    if partition is None:
        partition = validate(spec)
    if graded is None:
        graded = build_graded_group(partition)
    blocks = block_decompose(spec, color, partition)
    nf, n1 = partition.n_fixed, partition.n_paired
    b11, b12, b21 = blocks.b11, blocks.b12, blocks.b21
    plus = blocks.b22 + blocks.b23
    minus = blocks.b22 - blocks.b23
    mixed_mods = [2] * nf + [0] * n1

    deg0 = IntMatrix.assemble([[b11, b12.scaled(2)], [b21, plus]])
    deg1 = _reduce_rows(b11, [2] * nf)
    deg2 = _reduce_rows(IntMatrix.assemble([[b11, b12], [IntMatrix.zeros(n1, nf), minus]]),
                        mixed_mods)
    deg4 = IntMatrix.assemble([[b11, b12], [b21.scaled(2), plus]])
    deg6 = minus

    def endo(degree, mat):
        g = graded.group("real", degree)
        return GroupHom(g, g, mat)

    zero_endo = GroupHom(trivial_group(), trivial_group(), IntMatrix.zeros(0, 0))
    real = (
        endo(0, deg0), endo(1, deg1), endo(2, deg2), zero_endo,
        endo(4, deg4), zero_endo, endo(6, deg6), zero_endo,
    )
    cplx_group = graded.group("complex", 0)
    cplx = (
        GroupHom(cplx_group, cplx_group, blocks.reassemble()),
        zero_endo,
    )
    return RhoMap(color=color, real=real, cplx=cplx)


def psi_on_A(partition: VertexPartition, graded: GradedGroupA | None = None) -> GroupHom:
    """Degree-0 complex-part involution of A: fix the fixed block, swap the
    paired and partner blocks."""
    if graded is None:
        graded = build_graded_group(partition)
    nf, n1 = partition.n_fixed, partition.n_paired
    g = graded.group("complex", 0)
    zero_f1 = IntMatrix.zeros(nf, n1)
    zero_1f = IntMatrix.zeros(n1, nf)
    mat = IntMatrix.assemble([
        [IntMatrix.identity(nf), zero_f1, zero_f1],
        [zero_1f, IntMatrix.zeros(n1, n1), IntMatrix.identity(n1)],
        [zero_1f, IntMatrix.identity(n1), IntMatrix.zeros(n1, n1)],
    ])
    return GroupHom(g, g, mat)


def complexification_degree0(partition: VertexPartition) -> IntMatrix:
    """Degree-0 complexification A^O_0 -> A^U_0: identity into the fixed
    block, diagonal into the two halves of each 2-orbit."""
    nf, n1 = partition.n_fixed, partition.n_paired
    return IntMatrix.assemble([
        [IntMatrix.identity(nf), IntMatrix.zeros(nf, n1)],
        [IntMatrix.zeros(n1, nf), IntMatrix.identity(n1)],
        [IntMatrix.zeros(n1, nf), IntMatrix.identity(n1)],
    ])
