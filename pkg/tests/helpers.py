"""Shared test utilities: random valid inputs and independent oracles.

The oracles here deliberately avoid the library's Smith-form machinery:
homology is recomputed by enumerating group elements, and core tables are
re-verified by direct rank propagation around the exact cycles.
"""

from itertools import product as cartesian
import random

from kktheory.abelian import FgAbGroup, GroupHom, IntMatrix, group_from_presentation
from kktheory.kgraph import KGraphSpec


# ---------------------------------------------------------------------------
# Random valid k-graph specs
# ---------------------------------------------------------------------------

def random_involution(rng, nv):
    idx = list(range(nv))
    rng.shuffle(idx)
    gamma = list(range(nv))
    while len(idx) >= 2 and rng.random() < 0.7:
        a, b = idx.pop(), idx.pop()
        gamma[a], gamma[b] = b, a
    return gamma


def random_valid_spec(rng, k=None, nv=None) -> KGraphSpec:
    """Commuting matrices are built as polynomials in one symmetrized seed,
    which also guarantees compatibility with the involution."""
    nv = nv if nv is not None else rng.randint(1, 4)
    k = k if k is not None else rng.randint(1, 4)
    gamma = random_involution(rng, nv)
    p = IntMatrix(nv, nv, [[1 if gamma[i] == j else 0 for j in range(nv)]
                           for i in range(nv)])
    base = IntMatrix(nv, nv, [[rng.randint(0, 2) for _ in range(nv)] for _ in range(nv)])
    seed = base + (p @ base @ p)
    seed2 = seed @ seed
    mats = []
    for _ in range(k):
        a, b, c = rng.randint(1, 2), rng.randint(0, 2), rng.randint(0, 1)
        mats.append(IntMatrix.identity(nv).scaled(a) + seed.scaled(b) + seed2.scaled(c))
    return KGraphSpec(k=k, vertices=tuple(f"v{i}" for i in range(nv)),
                      matrices=tuple(mats), involution=tuple(gamma))


def one_vertex_spec(m, n) -> KGraphSpec:
    return KGraphSpec.from_lists(2, ["v"], [[[m]], [[n]]], [0])


def symmetric_three_vertex_spec(n) -> KGraphSpec:
    m = [[1, 1, 1], [1, 0, n - 1], [1, n - 1, 0]]
    return KGraphSpec.from_lists(2, ["v1", "v2", "v3"], [m, m], [0, 2, 1])


def asymmetric_three_vertex_spec(n) -> KGraphSpec:
    m1 = [[1, 1, 1], [1, 0, n - 1], [1, n - 1, 0]]
    m2 = [[1, 1, 1], [1, n - 1, 0], [1, 0, n - 1]]
    return KGraphSpec.from_lists(2, ["v1", "v2", "v3"], [m1, m2], [0, 2, 1])


# ---------------------------------------------------------------------------
# Element-enumeration homology oracle (no Smith forms anywhere)
# ---------------------------------------------------------------------------

def _closure(generators, mods):
    zero = tuple(0 for _ in mods)
    seen = {zero}
    frontier = [zero]
    while frontier:
        x = frontier.pop()
        for g in generators:
            y = tuple((a + b) % m for a, b, m in zip(x, g, mods))
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def _apply_mod(matrix_rows, vec, mods_out):
    return tuple(sum(row[j] * vec[j] for j in range(len(vec))) % m
                 for row, m in zip(matrix_rows, mods_out))


def _prime_factors(n):
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


def oracle_homology_invariants(f_matrix, mods_b, g_matrix, mods_c):
    """Invariant factors of ker(g)/im(f) inside prod Z_mods_b, by brute force.

    f_matrix columns are elements of the middle group; g_matrix maps the
    middle group to prod Z_mods_c.  Returns the ascending invariant-factor
    tuple of the quotient.
    """
    gens = [tuple(f_matrix[i][j] % mods_b[i] for i in range(len(mods_b)))
            for j in range(len(f_matrix[0]) if f_matrix else 0)]
    image = _closure(gens, mods_b)
    zero_c = tuple(0 for _ in mods_c)
    kernel = [b for b in cartesian(*[range(m) for m in mods_b])
              if _apply_mod(g_matrix, b, mods_c) == zero_c]
    assert image <= set(kernel)
    quotient_order = len(kernel) // len(image)
    per_prime = {}
    for p, _ in _prime_factors(quotient_order).items():
        layer_sizes = [1]
        i = 1
        while True:
            power = p ** i
            count = sum(1 for x in kernel
                        if tuple((power * a) % m for a, m in zip(x, mods_b)) in image)
            layer_sizes.append(count // len(image))
            if layer_sizes[-1] == layer_sizes[-2]:
                break
            i += 1
        m_counts = []  # m_counts[i] = number of cyclic p-factors of exponent > i
        for i in range(len(layer_sizes) - 1):
            ratio = layer_sizes[i + 1] // layer_sizes[i]
            exponent_count = 0
            while ratio > 1:
                ratio //= p
                exponent_count += 1
            m_counts.append(exponent_count)
        exps = []
        for i in range(len(m_counts)):
            exactly = m_counts[i] - (m_counts[i + 1] if i + 1 < len(m_counts) else 0)
            exps.extend([i + 1] * exactly)
        per_prime[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in per_prime.values()), default=0)
    factors_desc = []
    for t in range(width):
        d = 1
        for p, exps in per_prime.items():
            if t < len(exps):
                d *= p ** exps[t]
        factors_desc.append(d)
    return tuple(sorted(factors_desc))


def random_finite_complex(rng, max_order=2 ** 12):
    """A -> B -> C with zero composition, as presented groups plus homs.

    B and C are random direct sums of small cyclic groups; the map out is an
    arbitrary well-defined hom, and the map in hits random elements of its
    elementwise kernel.
    """
    def random_mods(limit, max_parts):
        mods = []
        total = 1
        for _ in range(rng.randint(1, max_parts)):
            m = rng.choice([2, 2, 3, 4, 5, 8, 9])
            if total * m > limit:
                break
            mods.append(m)
            total *= m
        return mods or [2]

    mods_b = random_mods(max_order, 4)
    mods_c = random_mods(64, 2)
    g_rows = []
    for mc in mods_c:
        row = []
        for mb in mods_b:
            g = _gcd(mb, mc)
            step = mc // g
            row.append(step * rng.randrange(g))
        g_rows.append(row)
    kernel = [b for b in cartesian(*[range(m) for m in mods_b])
              if _apply_mod(g_rows, b, mods_c) == tuple(0 for _ in mods_c)]
    picks = [rng.choice(kernel) for _ in range(rng.randint(0, 3))]
    mods_a = []
    f_cols = []
    for v in picks:
        order = 1
        for a, m in zip(v, mods_b):
            order = _lcm(order, m // _gcd(a, m))
        mods_a.append(order)
        f_cols.append(list(v))
    group_a = group_from_presentation(IntMatrix.diagonal(mods_a, rows=len(mods_a)))
    group_b = group_from_presentation(IntMatrix.diagonal(mods_b, rows=len(mods_b)))
    group_c = group_from_presentation(IntMatrix.diagonal(mods_c, rows=len(mods_c)))
    f_hom = GroupHom(group_a, group_b,
                     IntMatrix.from_columns(f_cols, rows=len(mods_b)))
    g_hom = GroupHom(group_b, group_c, IntMatrix(len(mods_c), len(mods_b), g_rows))
    return f_hom, g_hom, (f_cols, mods_b, g_rows, mods_c)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _lcm(a, b):
    return a * b // _gcd(a, b) if a and b else 0


# ---------------------------------------------------------------------------
# Independent re-check of core MO tables
# ---------------------------------------------------------------------------

_CYCLE_STARTS = (0, 1)


def _cycle_terms(start):
    """Alternating term list [(kind, index), ...] of one 12-term cycle."""
    terms = []
    s = start
    for _ in range(4):
        terms.extend([("mo", s % 8), ("mo", (s + 1) % 8), ("mu", s % 8)])
        s -= 2
    return terms


def _cycle_eta_assignments(terms, ranks):
    """All consistent arrow-rank propagations; yields the eta ranks
    (positions 0, 3, 6, 9 are the eta arrows)."""
    term_ranks = [ranks[t] for t in terms]
    arrow_caps = [min(term_ranks[i], term_ranks[(i + 1) % 12]) for i in range(12)]
    for t in range(arrow_caps[0] + 1):
        vs = [t]
        good = True
        for i in range(1, 12):
            v = term_ranks[i] - vs[-1]
            if not 0 <= v <= arrow_caps[i]:
                good = False
                break
            vs.append(v)
        if good and vs[-1] + vs[0] == term_ranks[0]:
            yield {terms[i][1]: vs[i] for i in (0, 3, 6, 9)}


def core_table_consistent(mo_ranks, mu_ranks):
    """Re-verify a candidate MO rank table directly: both cycles must admit
    arrow ranks satisfying exactness, and the combined eta ranks must respect
    rank(eta_i) + rank(eta_{i+1}) <= rank(MO_{i+1})."""
    ranks = {("mo", q): mo_ranks[q] for q in range(8)}
    ranks.update({("mu", q): mu_ranks[q] for q in range(8)})
    options = []
    for start in _CYCLE_STARTS:
        assignments = list(_cycle_eta_assignments(_cycle_terms(start), ranks))
        if not assignments:
            return False
        options.append(assignments)
    for eta_a in options[0]:
        for eta_b in options[1]:
            etas = {**eta_a, **eta_b}
            if all(etas[i] + etas[(i + 1) % 8] <= mo_ranks[(i + 1) % 8]
                   for i in range(8)):
                return True
    return False


def group_of(desc: str) -> FgAbGroup:
    return FgAbGroup.from_description(desc)
