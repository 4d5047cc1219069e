"""Structure-constant algebras: axioms, center, Jacobson radical and its
filtration, Wedderburn-Malcev complements for split basic algebras, and the
derivation Lie algebra with its series.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .errors import (AmbientMismatch, NonAssociative, NotSplitBasic, NotUnital,
                     UnsupportedRadicalComputation)
from .fields import Field, PrimeField, QQ
from .linalg import (Matrix, Subspace, kernel, mat_bracket,
                     quotient_basis, solve)
from .roots import minimal_polynomial, roots_in_field

DEFAULT_SCAN_BOUND = 10**7


class StructureAlgebra:
    """Finite-dimensional unital associative algebra given by a d x d x d
    structure tensor: e_i * e_j = sum_k table[i][j][k] e_k.

    Associativity and unitality are verified exhaustively at load time.
    A presentation-derived instance may carry ``known_radical``.
    """

    def __init__(self, field: Field, table, one, known_radical: Subspace | None = None):
        d = len(table)
        self.field = field
        self.dim = d
        self.table = [[[field.coerce(x) for x in cell] for cell in row] for row in table]
        for row in self.table:
            if len(row) != d or any(len(cell) != d for cell in row):
                raise AmbientMismatch("structure tensor is not d x d x d")
        self.one = [field.coerce(x) for x in one]
        if len(self.one) != d:
            raise AmbientMismatch("identity vector has wrong length")
        self.known_radical = known_radical
        self._int_table, self._int_den = self._scaled_int_table()
        self._sparse = [[[(k, c) for k, c in enumerate(cell) if c]
                         for cell in row] for row in self._int_table]
        self._verify_unital()
        self._verify_associative()
        self.commutative = all(
            self.table[i][j] == self.table[j][i]
            for i in range(d) for j in range(i + 1, d))

    # -- load-time checks ------------------------------------------------

    def _scaled_int_table(self):
        if isinstance(self.field, PrimeField):
            return [[[int(x) for x in cell] for cell in row] for row in self.table], 1
        den = 1
        for row in self.table:
            for cell in row:
                for x in cell:
                    den = lcm(den, x.denominator)
        ints = [[[int(x * den) for x in cell] for cell in row] for row in self.table]
        return ints, den

    def _verify_unital(self):
        f = self.field
        for j in range(self.dim):
            left = [f.zero] * self.dim
            right = [f.zero] * self.dim
            for i, c in enumerate(self.one):
                if f.is_zero(c):
                    continue
                for k in range(self.dim):
                    left[k] = f.add(left[k], f.mul(c, self.table[i][j][k]))
                    right[k] = f.add(right[k], f.mul(c, self.table[j][i][k]))
            want = [f.one if k == j else f.zero for k in range(self.dim)]
            if left != want or right != want:
                raise NotUnital(f"declared identity fails on basis element {j}")

    def _verify_associative(self):
        d = self.dim
        sparse = self._sparse
        mod = self.field.p if isinstance(self.field, PrimeField) else None
        for i in range(d):
            si = sparse[i]
            for j in range(d):
                v = si[j]
                for k in range(d):
                    lhs: dict[int, int] = {}
                    for t, c in v:
                        for s, c2 in sparse[t][k]:
                            lhs[s] = lhs.get(s, 0) + c * c2
                    rhs: dict[int, int] = {}
                    for t, c in sparse[j][k]:
                        for s, c2 in si[t]:
                            rhs[s] = rhs.get(s, 0) + c * c2
                    for s in set(lhs) | set(rhs):
                        diff = lhs.get(s, 0) - rhs.get(s, 0)
                        if (diff % mod if mod else diff) != 0:
                            raise NonAssociative(i, j, k)

    # -- arithmetic --------------------------------------------------------

    def multiply(self, x, y) -> list:
        f = self.field
        x = [f.coerce(v) for v in x]
        y = [f.coerce(v) for v in y]
        out = [f.zero] * self.dim
        for i, a in enumerate(x):
            if f.is_zero(a):
                continue
            row = self.table[i]
            for j, b in enumerate(y):
                if f.is_zero(b):
                    continue
                ab = f.mul(a, b)
                for k, c in enumerate(row[j]):
                    if not f.is_zero(c):
                        out[k] = f.add(out[k], f.mul(ab, c))
        return out

    def power(self, x, e: int) -> list:
        result = list(self.one)
        base = [self.field.coerce(v) for v in x]
        while e:
            if e & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            e >>= 1
        return result

    def left_multiplication(self, x) -> Matrix:
        """Matrix of a -> x*a in the algebra basis."""
        cols = []
        f = self.field
        for j in range(self.dim):
            ej = [f.one if t == j else f.zero for t in range(self.dim)]
            cols.append(self.multiply(x, ej))
        return Matrix.from_columns(f, cols)

    def subspace_product(self, u: Subspace, v: Subspace) -> Subspace:
        vecs = [self.multiply(a, b) for a in u.basis for b in v.basis]
        return Subspace.from_vectors(self.field, self.dim, vecs)

    def is_zero_vector(self, x) -> bool:
        f = self.field
        return all(f.is_zero(v) for v in x)

    def __repr__(self):
        return f"StructureAlgebra(dim={self.dim}, field={self.field!r})"


def load_algebra(table, one, field: Field, known_radical: Subspace | None = None) -> StructureAlgebra:
    return StructureAlgebra(field, table, one, known_radical=known_radical)


def center(algebra: StructureAlgebra) -> Subspace:
    """Z(A) as the kernel of x -> (x e_i - e_i x)_i."""
    d = algebra.dim
    tbl = algebra._int_table
    rows = []
    for i in range(d):
        for k in range(d):
            row = [tbl[j][i][k] - tbl[i][j][k] for j in range(d)]
            if any(row):
                rows.append(row)
    if not rows:
        return Subspace.full(algebra.field, d)
    return kernel(Matrix(algebra.field, rows))


# -- radical -------------------------------------------------------------------

@dataclass
class RadicalData:
    radical: Subspace
    powers: list          # [J, J^2, ..., J^l] with the last entry zero
    lowey_length: int
    jj2_dim: int

    @property
    def square(self) -> Subspace:
        return self.powers[1] if len(self.powers) > 1 else self.powers[0]


def _radical_data(algebra: StructureAlgebra, j: Subspace) -> RadicalData:
    powers = [j]
    cur = j
    while cur.dim > 0:
        nxt = algebra.subspace_product(cur, j)
        if nxt.dim >= cur.dim and cur.dim > 0:
            # not nilpotent: cannot happen for a genuine radical
            raise UnsupportedRadicalComputation("candidate radical is not nilpotent")
        powers.append(nxt)
        cur = nxt
    lowey = len(powers)  # J^lowey = 0, and J^(lowey-1) != 0 (or J = 0, lowey = 1)
    jj2 = powers[0].dim - (powers[1].dim if len(powers) > 1 else 0)
    return RadicalData(j, powers, lowey, jj2)


def _verify_ideal(algebra: StructureAlgebra, j: Subspace) -> bool:
    full = Subspace.full(algebra.field, algebra.dim)
    return (j.contains_space(algebra.subspace_product(full, j))
            and j.contains_space(algebra.subspace_product(j, full)))


def dickson_radical(algebra: StructureAlgebra) -> Subspace:
    """Characteristic-0 radical: kernel of the Gram matrix of the trace form
    tau(x, y) = trace(L_x L_y) of the left regular representation."""
    d = algebra.dim
    tbl = algebra._int_table
    # L_i[k][j] = tbl[i][j][k]; trace(L_i L_j) = sum_{a,b} L_i[a][b] L_j[b][a]
    lmats = [[[tbl[i][j][k] for j in range(d)] for k in range(d)] for i in range(d)]
    gram = []
    for i in range(d):
        li = lmats[i]
        row = []
        for j in range(d):
            lj = lmats[j]
            s = 0
            for a in range(d):
                lia = li[a]
                for b in range(d):
                    v = lia[b]
                    if v:
                        s += v * lj[b][a]
            row.append(s)
        gram.append(row)
    return kernel(Matrix(QQ, gram))


def nilpotent_scan_radical(algebra: StructureAlgebra, bound: int = DEFAULT_SCAN_BOUND) -> Subspace:
    """Span of all nilpotent elements of a commutative GF(p) algebra,
    found by exhaustive enumeration (guarded by ``bound``)."""
    import itertools

    f = algebra.field
    assert isinstance(f, PrimeField)
    p, d = f.p, algebra.dim
    total = p**d
    if total > bound:
        raise UnsupportedRadicalComputation(
            f"scan needs {total} elements, bound is {bound}")
    steps = max(1, (d - 1).bit_length())  # x^(2^steps) >= x^d
    span = Subspace.zero(f, d)
    for vec in itertools.product(range(p), repeat=d):
        if not any(vec):
            continue
        v = list(vec)
        if span.contains(v):
            continue
        y = v
        for _ in range(steps):
            y = algebra.multiply(y, y)
            if algebra.is_zero_vector(y):
                break
        if algebra.is_zero_vector(y):
            span = span.sum(Subspace.from_vectors(f, d, [v]))
            if span.dim == d - 1:
                # cannot exceed codimension 1 in a unital algebra
                break
    return span


def jacobson_radical(algebra: StructureAlgebra, scan_bound: int = DEFAULT_SCAN_BOUND) -> RadicalData:
    """Radical with its power filtration.

    Over Q the Dickson trace criterion is used; over GF(p) only commutative
    algebras are scanned exhaustively, unless the radical is already known
    from a presentation.  The result is post-verified to be a nilpotent
    two-sided ideal.
    """
    if algebra.known_radical is not None:
        j = algebra.known_radical
    elif not isinstance(algebra.field, PrimeField):
        j = dickson_radical(algebra)
    elif algebra.commutative:
        j = nilpotent_scan_radical(algebra, bound=scan_bound)
    else:
        raise UnsupportedRadicalComputation(
            "GF(p) non-commutative input needs a presentation-supplied radical")
    if not _verify_ideal(algebra, j):
        raise UnsupportedRadicalComputation("computed radical is not an ideal")
    return _radical_data(algebra, j)


def lowey_length(rad: RadicalData) -> int:
    return rad.lowey_length


def jj2_basis(algebra: StructureAlgebra, rad: RadicalData) -> list:
    """Lift of a basis of J/J^2 into J (extends a basis of J^2 inside J)."""
    return quotient_basis(rad.square, rad.radical)


# -- Wedderburn-Malcev ---------------------------------------------------------

@dataclass
class WMDecomposition:
    semisimple_part: Subspace
    radical: Subspace
    idempotents: list


class _QuotientAlgebra:
    """A/J with multiplication through chosen coset representatives."""

    def __init__(self, algebra: StructureAlgebra, j: Subspace):
        self.algebra = algebra
        f = algebra.field
        full = Subspace.full(f, algebra.dim)
        self.reps = quotient_basis(j, full)
        self.dim = len(self.reps)
        rows = list(j.basis) + self.reps
        from .linalg import invert
        binv = invert(Matrix(f, rows).transpose())
        assert binv is not None
        self._binv = binv
        self.unit = self.project(algebra.one)

    def project(self, v) -> list:
        coords = self._binv.matvec(v)
        return coords[self.algebra.dim - self.dim:]

    def lift(self, vbar) -> list:
        f = self.algebra.field
        out = [f.zero] * self.algebra.dim
        for c, rep in zip(vbar, self.reps):
            if not f.is_zero(c):
                out = [f.add(x, f.mul(c, y)) for x, y in zip(out, rep)]
        return out

    def multiply(self, xbar, ybar) -> list:
        prod = self.algebra.multiply(self.lift(xbar), self.lift(ybar))
        return self.project(prod)

    def mult_operator(self, zbar) -> Matrix:
        f = self.algebra.field
        cols = []
        for j in range(self.dim):
            ej = [f.one if t == j else f.zero for t in range(self.dim)]
            cols.append(self.multiply(zbar, ej))
        return Matrix.from_columns(f, cols)

    def is_commutative(self) -> bool:
        f = self.algebra.field
        for i in range(self.dim):
            ei = [f.one if t == i else f.zero for t in range(self.dim)]
            for j in range(i + 1, self.dim):
                ej = [f.one if t == j else f.zero for t in range(self.dim)]
                if self.multiply(ei, ej) != self.multiply(ej, ei):
                    return False
        return True


def _poly_divide(coeffs: list, root, fld: Field) -> list:
    """Deflate one factor (t - root) via synthetic division (ascending coeffs)."""
    out = [fld.zero] * (len(coeffs) - 1)
    carry = fld.zero
    for i in range(len(coeffs) - 1, 0, -1):
        carry = fld.add(coeffs[i], fld.mul(carry, root))
        out[i - 1] = carry
    return out


def _split_components(quot: _QuotientAlgebra):
    """Decompose a commutative semisimple A/J into one-dimensional
    components; raises NotSplitBasic when a component is a proper field
    extension of the base field."""
    f = quot.algebra.field
    n = quot.dim
    components = [(quot.unit, Subspace.full(f, n))]
    done = []
    while components:
        unit, space = components.pop()
        if space.dim == 1:
            done.append((unit, space))
            continue
        parts = _try_split(quot, unit, space)
        if parts is None:
            raise NotSplitBasic(
                f"a {space.dim}-dimensional block of A/J has no eigenbasis over {f!r}")
        components.extend(parts)
    return done


def _try_split(quot: _QuotientAlgebra, unit, space: Subspace):
    f = quot.algebra.field
    for z in space.basis:
        # minimal polynomial of z on the component: powers unit, z, z^2, ...
        def powers():
            cur = list(unit)
            while True:
                yield cur
                cur = quot.multiply(cur, z)
        mp = minimal_polynomial(powers(), f)
        if len(mp) <= 2:
            continue  # z is a scalar multiple of the component unit
        roots = roots_in_field(mp, f)
        if not roots:
            continue
        mz = quot.mult_operator(z)
        parts = []
        remaining = mp
        for lam in roots:
            shifted = Matrix(f, [[f.sub(x, lam if i == j else f.zero)
                                  for j, x in enumerate(row)]
                                 for i, row in enumerate(mz.rows)])
            eig = kernel(shifted).intersect(space)
            if eig.dim > 0:
                parts.append(eig)
            remaining = _poly_divide(remaining, lam, f)
        covered = sum(p.dim for p in parts)
        if covered < space.dim:
            if len(remaining) <= 1:
                return None
            rest_op = _eval_poly_at_matrix(remaining, mz, f)
            rest = kernel(rest_op).intersect(space)
            if rest.dim == 0 or rest.dim == space.dim:
                return None
            parts.append(rest)
        if len(parts) < 2:
            continue
        # split the unit across the direct sum to get each part's identity
        stacked = [row for p in parts for row in p.basis]
        coeffs = solve(Matrix(f, stacked).transpose(), unit)
        assert coeffs is not None
        out = []
        offset = 0
        for p in parts:
            u = [f.zero] * quot.dim
            for c, row in zip(coeffs[offset:offset + p.dim], p.basis):
                if not f.is_zero(c):
                    u = [f.add(x, f.mul(c, y)) for x, y in zip(u, row)]
            offset += p.dim
            out.append((u, p))
        return out
    return None


def _eval_poly_at_matrix(coeffs: list, m: Matrix, fld: Field) -> Matrix:
    n = m.nrows
    acc = Matrix.zeros(fld, n, n)
    for c in reversed(coeffs):
        acc = acc.mul(m)
        if not fld.is_zero(c):
            acc = acc.add(Matrix.identity(fld, n).scale(c))
    return acc


def wm_complement(algebra: StructureAlgebra, rad: RadicalData) -> WMDecomposition:
    """Semisimple complement A_s with A = A_s + J for split basic algebras.

    A/J must be commutative with an eigenbasis of idempotents over the base
    field; primitive idempotents are lifted one at a time by the Newton map
    e -> 3e^2 - 2e^3, sandwiched to stay orthogonal, until exactly idempotent.
    """
    f = algebra.field
    j = rad.radical
    quot = _QuotientAlgebra(algebra, j)
    if not quot.is_commutative():
        raise NotSplitBasic("A/J is not commutative")
    pieces = _split_components(quot)
    prims = sorted((u for u, _ in pieces), key=lambda u: [str(c) for c in u])
    lifted = []
    esum = [f.zero] * algebra.dim
    max_steps = 2 * max(1, rad.lowey_length).bit_length() + 4
    for fbar in prims:
        g = quot.lift(fbar)
        # u = (1 - E) g (1 - E) keeps u orthogonal to every lifted idempotent
        eg = algebra.multiply(esum, g)
        ge = algebra.multiply(g, esum)
        ege = algebra.multiply(esum, ge)
        u = [f.add(f.sub(f.sub(a, b), c), dch)
             for a, b, c, dch in zip(g, eg, ge, ege)]
        for _ in range(max_steps):
            uu = algebra.multiply(u, u)
            if uu == u:
                break
            uuu = algebra.multiply(uu, u)
            u = [f.sub(f.mul(f.coerce(3), a), f.mul(f.coerce(2), b))
                 for a, b in zip(uu, uuu)]
        else:
            raise NotSplitBasic("Newton idempotent lifting failed to converge")
        if quot.project(u) != fbar:
            raise NotSplitBasic("lifted idempotent drifted from its coset")
        lifted.append(u)
        esum = [f.add(a, b) for a, b in zip(esum, u)]
    if esum != algebra.one:
        raise NotSplitBasic("lifted idempotents do not sum to the identity")
    a_s = Subspace.from_vectors(f, algebra.dim, lifted)
    if a_s.dim != len(lifted) or a_s.intersect(j).dim != 0 \
            or a_s.sum(j).dim != algebra.dim:
        raise NotSplitBasic("complement does not split the algebra")
    return WMDecomposition(a_s, j, lifted)


# -- derivations and Lie structure ----------------------------------------------

@dataclass
class LieSubalgebra:
    """Bracket-closed subspace of n x n matrices (flattened row-major)."""

    field: Field
    n: int
    space: Subspace
    ambient: str = "matrices"

    @property
    def dim(self) -> int:
        return self.space.dim

    def basis_matrices(self) -> list[Matrix]:
        n = self.n
        return [Matrix(self.field, [row[i * n:(i + 1) * n] for i in range(n)])
                for row in self.space.basis]

    def contains_matrix(self, m: Matrix) -> bool:
        return self.space.contains(m.flatten())

    def is_bracket_closed(self) -> bool:
        mats = self.basis_matrices()
        return all(self.contains_matrix(mat_bracket(a, b))
                   for i, a in enumerate(mats) for b in mats[i + 1:])


def derivation_algebra(algebra: StructureAlgebra) -> LieSubalgebra:
    """Der(A): matrices D with D(e_i e_j) = D(e_i) e_j + e_i D(e_j), D(1) = 0.

    Solved as one exact kernel computation in d^2 unknowns D[a][b]
    (D(e_b) = sum_a D[a][b] e_a).
    """
    d = algebra.dim
    tbl = algebra._int_table
    rows = set()
    for i in range(d):
        for j in range(d):
            cell = tbl[i][j]
            for t in range(d):
                row = [0] * (d * d)
                for k in range(d):
                    if cell[k]:
                        row[t * d + k] += cell[k]
                for a in range(d):
                    v = tbl[a][j][t]
                    if v:
                        row[a * d + i] -= v
                for b in range(d):
                    v = tbl[i][b][t]
                    if v:
                        row[b * d + j] -= v
                if any(row):
                    rows.add(tuple(row))
    one_int = algebra.one if isinstance(algebra.field, PrimeField) else \
        [int(x * algebra._int_den) for x in algebra.one]
    for t in range(d):
        row = [0] * (d * d)
        for b in range(d):
            v = one_int[b] if isinstance(one_int[b], int) else int(one_int[b])
            if v:
                row[t * d + b] += v
        if any(row):
            rows.add(tuple(row))
    if not rows:
        space = Subspace.full(algebra.field, d * d)
    else:
        space = kernel(Matrix(algebra.field, [list(r) for r in rows]))
    return LieSubalgebra(algebra.field, d, space, ambient="derivations")


def inner_derivations(algebra: StructureAlgebra) -> LieSubalgebra:
    """span{ad_x : x in A}; dim = dim A - dim Z(A)."""
    d = algebra.dim
    f = algebra.field
    vecs = []
    for i in range(d):
        flat = []
        for t in range(d):
            for j in range(d):
                flat.append(f.sub(algebra.table[i][j][t], algebra.table[j][i][t]))
        vecs.append(flat)
    return LieSubalgebra(f, d, Subspace.from_vectors(f, d * d, vecs),
                         ambient="derivations")


def der_into(algebra: StructureAlgebra, rad: RadicalData, target: Subspace,
             der: LieSubalgebra | None = None) -> LieSubalgebra:
    """{D in Der(A) : D(J) <= target}."""
    if der is None:
        der = derivation_algebra(algebra)
    f = algebra.field
    d = algebra.dim
    basis_mats = der.basis_matrices()
    rows = []
    for v in rad.radical.basis:
        images = [m.matvec(v) for m in basis_mats]
        residuals = [target.reduce(img) for img in images]
        for coord in range(d):
            row = [res[coord] for res in residuals]
            if any(not f.is_zero(x) for x in row):
                rows.append(row)
    if not rows:
        return LieSubalgebra(f, d, der.space, ambient="derivations")
    coeff_kernel = kernel(Matrix(f, rows))
    vecs = []
    for w in coeff_kernel.basis:
        flat = [f.zero] * (d * d)
        for c, m in zip(w, basis_mats):
            if not f.is_zero(c):
                mf = m.flatten()
                flat = [f.add(x, f.mul(c, y)) for x, y in zip(flat, mf)]
        vecs.append(flat)
    return LieSubalgebra(f, d, Subspace.from_vectors(f, d * d, vecs),
                         ambient="derivations")


@dataclass
class LieSeries:
    derived_series: list
    lower_central_series: list
    is_solvable: bool
    is_nilpotent: bool


def _bracket_span(field: Field, n: int, left: list[Matrix], right: list[Matrix]) -> Subspace:
    vecs = [mat_bracket(a, b).flatten() for a in left for b in right]
    return Subspace.from_vectors(field, n * n, vecs)


def lie_series(lie: LieSubalgebra, max_steps: int = 64) -> LieSeries:
    """Derived and lower-central series via repeated bracket spans."""
    f, n = lie.field, lie.n

    def mats(space: Subspace) -> list[Matrix]:
        return LieSubalgebra(f, n, space).basis_matrices()

    derived = [lie.space]
    while derived[-1].dim > 0:
        nxt = _bracket_span(f, n, mats(derived[-1]), mats(derived[-1]))
        if nxt.dim == derived[-1].dim:
            break
        derived.append(nxt)
        if len(derived) > max_steps:
            break
    lower = [lie.space]
    base = lie.basis_matrices()
    while lower[-1].dim > 0:
        nxt = _bracket_span(f, n, base, mats(lower[-1]))
        if nxt.dim == lower[-1].dim:
            break
        lower.append(nxt)
        if len(lower) > max_steps:
            break
    return LieSeries(derived, lower,
                     is_solvable=derived[-1].dim == 0,
                     is_nilpotent=lower[-1].dim == 0)
