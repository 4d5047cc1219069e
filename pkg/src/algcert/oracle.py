"""Brute-force ground truth over small finite fields: exhaustive automorphism
enumeration and the induced action on J/J^2.

Deliberately naive; a candidate-count guard is the only optimization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import RadicalData, StructureAlgebra, jacobson_radical
from .errors import SearchSpaceTooLarge, UnsupportedRadicalComputation
from .fields import PrimeField
from .linalg import Matrix, Subspace, invert, quotient_basis

DEFAULT_MAX_ENUM = 10**7


@dataclass
class EnumeratedGroup:
    elements: list          # automorphism matrices, sorted by entry tuples
    order: int


def _is_algebra_map(algebra: StructureAlgebra, m: Matrix) -> bool:
    f = algebra.field
    d = algebra.dim
    cols = [[m.rows[r][c] for r in range(d)] for c in range(d)]
    for i in range(d):
        for j in range(d):
            want = m.matvec(algebra.table[i][j])
            got = algebra.multiply(cols[i], cols[j])
            if want != got:
                return False
    return True


def enumerate_automorphisms(algebra: StructureAlgebra,
                            rad: RadicalData | None = None,
                            max_enum: int = DEFAULT_MAX_ENUM,
                            verify_group_axioms: bool = True) -> EnumeratedGroup:
    """All algebra automorphisms of a GF(p) algebra by exhaustive search.

    Local commutative algebras enumerate generator images inside J
    (p^(n dim J) candidates); any other algebra enumerates arbitrary images
    of a complement of the identity (p^(d(d-1)) candidates).  Every returned
    map is verified multiplicative, unital and invertible.
    """
    f = algebra.field
    if not isinstance(f, PrimeField):
        raise UnsupportedRadicalComputation("enumeration works over GF(p) only")
    p, d = f.p, algebra.dim
    if rad is None:
        try:
            rad = jacobson_radical(algebra)
        except UnsupportedRadicalComputation:
            rad = None
    elements = []
    if rad is not None and algebra.commutative and rad.radical.dim == d - 1:
        elements = _enumerate_local_commutative(algebra, rad, max_enum)
    else:
        elements = _enumerate_general(algebra, max_enum)
    elements.sort(key=lambda m: tuple(x for row in m.rows for x in row))
    group = EnumeratedGroup(elements, len(elements))
    if verify_group_axioms and group.order <= 1000:
        _verify_group(algebra, group)
    return group


def _enumerate_local_commutative(algebra: StructureAlgebra, rad: RadicalData,
                                 max_enum: int) -> list:
    f = algebra.field
    p, d = f.p, algebra.dim
    gens = quotient_basis(rad.square, rad.radical)
    n = len(gens)
    jdim = rad.radical.dim
    count = p**(n * jdim)
    if count > max_enum:
        raise SearchSpaceTooLarge(count, max_enum)
    # monomial basis of the algebra: pivots of the evaluation map
    from .poly import TruncatedRing
    ring = TruncatedRing(n, rad.lowey_length)
    images = {}
    cols = []
    for m in ring.monomials:
        if sum(m) == 0:
            img = list(algebra.one)
        else:
            i = next(j for j, e in enumerate(m) if e)
            parent = tuple(e - 1 if j == i else e for j, e in enumerate(m))
            img = algebra.multiply(images[parent], gens[i])
        images[m] = img
        cols.append(img)
    from .linalg import kernel, rref, rref_mod_rows
    ev = Matrix.from_columns(f, cols)
    _, rank, pivots = rref(ev)
    assert rank == d
    basis_monos = [ring.monomials[c] for c in pivots]
    basis_vecs = [cols[c] for c in pivots]
    binv = invert(Matrix.from_columns(f, basis_vecs))
    assert binv is not None
    relations = [[(pos, c) for pos, c in enumerate(row) if c]
                 for row in kernel(ev).basis]
    jbasis = rad.radical.basis
    # J/J^2 coordinates of every radical basis vector, for the linear block
    sq = rad.square
    lift_space = [list(v) for v in gens]
    jj2_coords = []
    for row in jbasis:
        residual = sq.reduce(row)
        coords = _express(f, residual, lift_space, d)
        jj2_coords.append(coords)
    out = []
    for assign in itertools.product(range(p), repeat=n * jdim):
        block = []
        for i in range(n):
            chunk = assign[i * jdim:(i + 1) * jdim]
            block.append([sum(c * jc[t] for c, jc in zip(chunk, jj2_coords)) % p
                          for t in range(n)])
        _, piv = rref_mod_rows(block, n, p)
        if len(piv) < n:
            continue
        ys = []
        for i in range(n):
            y = [f.zero] * d
            for c, row in zip(assign[i * jdim:(i + 1) * jdim], jbasis):
                if c:
                    y = [f.add(a, f.mul(c, b)) for a, b in zip(y, row)]
            ys.append(y)
        # a generator assignment defines an endomorphism iff every ideal
        # relation evaluates to zero on it
        vals: dict = {}
        if not all(
                algebra.is_zero_vector(_poly_value(algebra, ys, rel, ring, vals))
                for rel in relations):
            continue
        img_cols = [_eval_monomial(algebra, ys, m, vals) for m in basis_monos]
        cand = Matrix.from_columns(f, img_cols).mul(binv)
        if invert(cand) is None:
            continue
        if _is_algebra_map(algebra, cand):
            out.append(cand)
    return out


def _express(f, vec, basis_rows, dim):
    m = Matrix.from_columns(f, basis_rows)
    from .linalg import solve
    coords = solve(m, vec)
    assert coords is not None
    return [int(c) for c in coords]


def _poly_value(algebra, ys, relation, ring, cache):
    f = algebra.field
    acc = [f.zero] * algebra.dim
    for pos, c in relation:
        val = _eval_monomial(algebra, ys, ring.monomials[pos], cache)
        acc = [f.add(a, f.mul(c, b)) for a, b in zip(acc, val)]
    return acc


def _eval_monomial(algebra, ys, m, cache):
    if m in cache:
        return cache[m]
    if sum(m) == 0:
        val = list(algebra.one)
    else:
        i = next(j for j, e in enumerate(m) if e)
        parent = tuple(e - 1 if j == i else e for j, e in enumerate(m))
        val = algebra.multiply(_eval_monomial(algebra, ys, parent, cache), ys[i])
    cache[m] = val
    return val


def _enumerate_general(algebra: StructureAlgebra, max_enum: int) -> list:
    f = algebra.field
    p, d = f.p, algebra.dim
    one_line = Subspace.from_vectors(f, d, [algebra.one])
    comp = quotient_basis(one_line, Subspace.full(f, d))
    free = len(comp)
    count = p**(d * free)
    if count > max_enum:
        raise SearchSpaceTooLarge(count, max_enum)
    base = Matrix.from_columns(f, [algebra.one] + comp)
    binv = invert(base)
    assert binv is not None
    out = []
    for assign in itertools.product(range(p), repeat=d * free):
        img_cols = [list(algebra.one)]
        for t in range(free):
            img_cols.append(list(assign[t * d:(t + 1) * d]))
        cand = Matrix.from_columns(f, img_cols).mul(binv)
        if invert(cand) is None:
            continue
        if _is_algebra_map(algebra, cand):
            out.append(cand)
    return out


def _verify_group(algebra: StructureAlgebra, group: EnumeratedGroup) -> None:
    """Sanity checks: identity and inverses always, composition closure in
    full for small groups and on a seeded sample of pairs beyond that
    (closure is implied by exhaustiveness; the check guards against bugs)."""
    import random

    p, d = algebra.field.p, algebra.dim
    mats = [tuple(tuple(int(x) for x in row) for row in m.rows)
            for m in group.elements]
    keys = set(mats)
    eye = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
    assert eye in keys, "identity missing"
    for m in group.elements:
        inv = invert(m)
        assert inv is not None
        assert tuple(tuple(int(x) for x in row) for row in inv.rows) in keys, \
            "inverse missing"
    order = len(mats)
    if order * order <= 40000:
        pairs = ((a, b) for a in mats for b in mats)
    else:
        rng = random.Random(0xa11c)
        pairs = ((rng.choice(mats), rng.choice(mats)) for _ in range(40000))
    for a, b in pairs:
        prod = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(d)) % p
                  for j in range(d))
            for i in range(d))
        assert prod in keys, "not closed under composition"


@dataclass
class InducedAction:
    matrices: list           # J/J^2 blocks aligned with the group elements
    kernel_count: int        # elements acting as the identity on J/J^2
    image_order: int         # number of distinct blocks


def induced_jj2_matrices(group: EnumeratedGroup, algebra: StructureAlgebra,
                         rad: RadicalData) -> InducedAction:
    """The J/J^2 block of every enumerated automorphism."""
    f = algebra.field
    lifts = quotient_basis(rad.square, rad.radical)
    n = len(lifts)
    partial = Subspace.from_vectors(f, algebra.dim,
                                    list(rad.square.basis) + lifts)
    rest = quotient_basis(partial, Subspace.full(f, algebra.dim))
    stacked = Matrix(f, list(rad.square.basis) + lifts + rest).transpose()
    binv = invert(stacked)
    assert binv is not None
    lo, hi = rad.square.dim, rad.square.dim + n

    def block(m: Matrix) -> Matrix:
        cols = []
        for x in lifts:
            coords = binv.matvec(m.matvec(x))
            cols.append(coords[lo:hi])
        return Matrix.from_columns(f, cols)

    eye = Matrix.identity(f, n)
    mats = [block(m) for m in group.elements]
    kernel_count = sum(1 for b in mats if b == eye)
    distinct = {tuple(x for row in b.rows for x in row) for b in mats}
    return InducedAction(mats, kernel_count, len(distinct))
