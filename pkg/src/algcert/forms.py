"""Quadratic and higher homogeneous forms: Gram extraction, diagonalization,
isotropy and nonsingularity evidence, the linearized stabilizer/similarity
algebras of a polynomial, the linear-change stabilizer of an ideal, and the
rational flag search on a stable subspace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import LieSubalgebra, lie_series
from .errors import (CharTwo, NotDegreeTwo, NotGraded, NotHomogeneous,
                     NotStable, SearchSpaceTooLarge, ZeroPolynomial)
from .fields import Field, PrimeField
from .linalg import Matrix, Subspace, invert, kernel, mat_bracket, rref, solve
from .poly import Poly, partial_derivative
from .presentation import MinimalDegreeSubspace, Presentation
from .roots import minimal_polynomial, operator_power_sequence, roots_in_field

DEFAULT_HEIGHT_BOUND = 50
DEFAULT_PRIMES = (5, 7, 11, 13)
DEFAULT_MAX_ENUM = 10**7


# -- quadratic forms --------------------------------------------------------------

@dataclass
class QuadraticForm:
    gram: Matrix
    poly: Poly

    @property
    def n(self) -> int:
        return self.gram.nrows

    @property
    def field(self) -> Field:
        return self.gram.field

    def evaluate(self, v):
        f = self.field
        v = [f.coerce(x) for x in v]
        gv = self.gram.matvec(v)
        s = f.zero
        for a, b in zip(v, gv):
            s = f.add(s, f.mul(a, b))
        return s


def quadratic_from_poly(f: Poly) -> QuadraticForm:
    """Symmetric Gram matrix of a homogeneous degree-2 polynomial (char != 2)."""
    fld = f.field
    if fld.characteristic == 2:
        raise CharTwo("quadratic-form machinery needs characteristic != 2")
    if f.is_zero() or not f.is_homogeneous() or f.degree() != 2:
        raise NotDegreeTwo("need a nonzero homogeneous polynomial of degree 2")
    n = f.n_vars
    half = fld.inv(fld.coerce(2))
    gram = [[fld.zero] * n for _ in range(n)]
    for m, c in f.terms.items():
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            i = support[0]
            gram[i][i] = c
        else:
            i, j = support
            gram[i][j] = fld.mul(half, c)
            gram[j][i] = gram[i][j]
    return QuadraticForm(Matrix(fld, gram), f)


def diagonalize(q: QuadraticForm) -> tuple[Matrix, list]:
    """Congruence transformation P with P^T G P diagonal; returns (P, diagonal)."""
    f = q.field
    n = q.n
    g = [list(row) for row in q.gram.rows]
    p = [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]

    def add_col(dst, src, c):
        for r in range(n):
            g[r][dst] = f.add(g[r][dst], f.mul(c, g[r][src]))
        for r in range(n):
            g[dst][r] = f.add(g[dst][r], f.mul(c, g[src][r]))
        for r in range(n):
            p[r][dst] = f.add(p[r][dst], f.mul(c, p[r][src]))

    def swap_cols(a, b):
        for r in range(n):
            g[r][a], g[r][b] = g[r][b], g[r][a]
        g[a], g[b] = g[b], g[a]
        for r in range(n):
            p[r][a], p[r][b] = p[r][b], p[r][a]

    for i in range(n):
        if f.is_zero(g[i][i]):
            j = next((t for t in range(i + 1, n) if not f.is_zero(g[t][t])), None)
            if j is not None:
                swap_cols(i, j)
            else:
                j = next((t for t in range(i + 1, n) if not f.is_zero(g[i][t])), None)
                if j is None:
                    continue
                add_col(i, j, f.one)  # char != 2: g[i][i] becomes 2 g[i][j]
        pivot = g[i][i]
        for j in range(i + 1, n):
            if not f.is_zero(g[i][j]):
                add_col(j, i, f.neg(f.div(g[i][j], pivot)))
    return Matrix(f, p), [g[i][i] for i in range(n)]


@dataclass
class IsotropyEvidence:
    verdict: str                  # ANISOTROPIC_CERTIFIED | ISOTROPIC_WITNESS | UNKNOWN
    method: str                   # definiteness | exhaustive_finite_field | bounded_search | degenerate
    witness: list | None = None


def isotropy(q: QuadraticForm, height_bound: int = DEFAULT_HEIGHT_BOUND,
             max_enum: int = DEFAULT_MAX_ENUM) -> IsotropyEvidence:
    """Isotropy evidence.

    Over GF(p) the point set is scanned exhaustively (complete).  Over Q,
    definiteness of the diagonalized form certifies anisotropy; otherwise a
    bounded integer search either produces a witness or reports UNKNOWN.
    """
    f = q.field
    n = q.n
    if isinstance(f, PrimeField):
        if f.p**n > max_enum:
            raise SearchSpaceTooLarge(f.p**n, max_enum)
        for vec in itertools.product(range(f.p), repeat=n):
            if any(vec) and f.is_zero(q.evaluate(list(vec))):
                return IsotropyEvidence("ISOTROPIC_WITNESS",
                                        "exhaustive_finite_field", list(vec))
        return IsotropyEvidence("ANISOTROPIC_CERTIFIED", "exhaustive_finite_field")
    rad = kernel(q.gram)
    if rad.dim > 0:
        return IsotropyEvidence("ISOTROPIC_WITNESS", "degenerate",
                                list(rad.basis[0]))
    _, diag = diagonalize(q)
    if all(d > 0 for d in diag) or all(d < 0 for d in diag):
        return IsotropyEvidence("ANISOTROPIC_CERTIFIED", "definiteness")
    h = _capped_height(height_bound, n, max_enum)
    for vec in itertools.product(range(-h, h + 1), repeat=n):
        if any(vec) and q.evaluate(list(vec)) == 0:
            return IsotropyEvidence("ISOTROPIC_WITNESS", "bounded_search",
                                    [Fraction(x) for x in vec])
    return IsotropyEvidence("UNKNOWN", "bounded_search")


def _capped_height(height_bound: int, n: int, max_enum: int) -> int:
    h = height_bound
    while h > 1 and (2 * h + 1) ** n > max_enum:
        h -= max(1, h // 4)
    return h


# -- nonsingularity ----------------------------------------------------------------

@dataclass
class NonsingularityEvidence:
    verdict: str                  # NONSINGULAR_CERTIFIED | SINGULAR_WITNESS | PROBABLY_NONSINGULAR | UNKNOWN
    method: str
    witness: list | None = None
    primes_used: list = dc_field(default_factory=list)


def _uni_gcd(a: list, b: list, fld: Field) -> list:
    def trim(x):
        while x and fld.is_zero(x[-1]):
            x.pop()
        return x

    def rem(x, y):
        x = list(x)
        inv = fld.inv(y[-1])
        while len(x) >= len(y):
            c = fld.mul(x[-1], inv)
            shift = len(x) - len(y)
            for i, m in enumerate(y):
                x[shift + i] = fld.sub(x[shift + i], fld.mul(c, m))
            trim(x)
            if not x:
                break
        return x

    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, rem(a, b)
    if a:
        inv = fld.inv(a[-1])
        a = [fld.mul(inv, c) for c in a]
    return a


def _binary_coeff_vector(f: Poly, degree: int) -> list:
    """Coefficients [c_0..c_degree] with c_i the coefficient of X1^i X2^(d-i)."""
    fld = f.field
    out = [fld.zero] * (degree + 1)
    for (e1, e2), c in f.terms.items():
        out[e1] = c
    return out


def binary_form_resultant_rank(fx: Poly, fy: Poly, degree: int) -> tuple[int, int]:
    """(rank, size) of the Sylvester matrix of two binary forms of declared
    equal degree; rank < size iff they share a projective root over the
    algebraic closure, i.e. the resultant vanishes."""
    fld = fx.field
    a = _binary_coeff_vector(fx, degree)
    b = _binary_coeff_vector(fy, degree)
    size = 2 * degree
    rows = []
    for shift in range(degree):
        row = [fld.zero] * size
        for i, c in enumerate(a):
            row[shift + i] = c
        rows.append(row)
    for shift in range(degree):
        row = [fld.zero] * size
        for i, c in enumerate(b):
            row[shift + i] = c
        rows.append(row)
    _, rank, _ = rref(Matrix(fld, rows))
    return rank, size


def _diagonal_profile(f: Poly) -> list | None:
    """Coefficients [a_1..a_n] when f = sum a_i X_i^d; None otherwise."""
    fld = f.field
    d = f.degree()
    out = [fld.zero] * f.n_vars
    for m, c in f.terms.items():
        support = [i for i, e in enumerate(m) if e]
        if len(support) != 1 or m[support[0]] != d:
            return None
        out[support[0]] = c
    return out


def _partials(f: Poly) -> list[Poly]:
    return [partial_derivative(f, i) for i in range(f.n_vars)]


def _is_common_zero(parts: list[Poly], v) -> bool:
    fld = parts[0].field
    return all(fld.is_zero(p.evaluate(v)) for p in parts)


def nonsingularity(f: Poly, height_bound: int = DEFAULT_HEIGHT_BOUND,
                   primes=DEFAULT_PRIMES,
                   max_enum: int = DEFAULT_MAX_ENUM) -> NonsingularityEvidence:
    """Evidence that 0 is the only common root of the partial derivatives.

    Diagonal forms and binary forms get exact verdicts; for n >= 3 over Q
    the common zero locus of the partials is scanned over several prime
    reductions (empty scans => PROBABLY_NONSINGULAR), over GF(p) only the
    rational points are scanned.
    """
    fld = f.field
    if f.is_zero() or not f.is_homogeneous():
        raise NotHomogeneous("need a nonzero homogeneous polynomial")
    d = f.degree()
    if d < 2:
        raise NotHomogeneous("need degree at least 2")
    n = f.n_vars
    char = fld.characteristic
    diag = _diagonal_profile(f)
    if diag is not None:
        missing = next((i for i, a in enumerate(diag) if fld.is_zero(a)), None)
        if char and d % char == 0:
            witness = [fld.one] + [fld.zero] * (n - 1)
            return NonsingularityEvidence("SINGULAR_WITNESS", "diagonal", witness)
        if missing is not None:
            witness = [fld.one if i == missing else fld.zero for i in range(n)]
            return NonsingularityEvidence("SINGULAR_WITNESS", "diagonal", witness)
        return NonsingularityEvidence("NONSINGULAR_CERTIFIED", "diagonal")
    parts = _partials(f)
    if n <= 2:
        return _nonsingularity_binary(f, parts)
    if isinstance(fld, PrimeField):
        if fld.p**n > max_enum:
            raise SearchSpaceTooLarge(fld.p**n, max_enum)
        for vec in itertools.product(range(fld.p), repeat=n):
            if any(vec) and _is_common_zero(parts, list(vec)):
                return NonsingularityEvidence("SINGULAR_WITNESS",
                                              "exhaustive_finite_field",
                                              list(vec), [fld.p])
        return NonsingularityEvidence("PROBABLY_NONSINGULAR",
                                      "exhaustive_finite_field",
                                      primes_used=[fld.p])
    used = []
    any_nonempty = False
    for p in primes:
        if any(c.denominator % p == 0 for c in f.terms.values()):
            continue
        gf = PrimeField(p)
        if p**n > max_enum:
            continue
        red = Poly(n, gf, {m: gf.coerce(c) for m, c in f.terms.items()})
        red_parts = _partials(red)
        nonempty = any(
            any(vec) and _is_common_zero(red_parts, list(vec))
            for vec in itertools.product(range(p), repeat=n))
        used.append(p)
        any_nonempty = any_nonempty or nonempty
    if used and not any_nonempty:
        return NonsingularityEvidence("PROBABLY_NONSINGULAR", "prime_reductions",
                                      primes_used=used)
    # some reduction is singular: look for a rational witness of bounded height
    for radius in range(1, _capped_height(height_bound, n, max_enum) + 1):
        for vec in itertools.product(range(-radius, radius + 1), repeat=n):
            if max(abs(x) for x in vec) != radius:
                continue
            if _is_common_zero(parts, [Fraction(x) for x in vec]):
                return NonsingularityEvidence("SINGULAR_WITNESS", "bounded_search",
                                              [Fraction(x) for x in vec], used)
    return NonsingularityEvidence("UNKNOWN", "prime_reductions", primes_used=used)


def _nonsingularity_binary(f: Poly, parts: list[Poly]) -> NonsingularityEvidence:
    fld = f.field
    d = f.degree()
    if f.n_vars == 1:
        # f = c X1^d was handled by the diagonal rule; only f = 0 remains
        raise NotHomogeneous("unreachable: univariate non-diagonal form")
    fx, fy = parts
    if fx.is_zero() and fy.is_zero():
        witness = [fld.one, fld.zero]
        return NonsingularityEvidence("SINGULAR_WITNESS", "resultant", witness)
    if fx.is_zero() or fy.is_zero():
        g = fy if fx.is_zero() else fx
        witness = _binary_rational_root(g)
        if witness is not None:
            return NonsingularityEvidence("SINGULAR_WITNESS", "resultant", witness)
        return NonsingularityEvidence("UNKNOWN", "resultant")
    rank, size = binary_form_resultant_rank(fx, fy, d - 1)
    if rank == size:
        return NonsingularityEvidence("NONSINGULAR_CERTIFIED", "resultant")
    if _is_common_zero(parts, [fld.one, fld.zero]):
        return NonsingularityEvidence("SINGULAR_WITNESS", "resultant",
                                      [fld.one, fld.zero])
    ax = _binary_coeff_vector(fx, d - 1)
    ay = _binary_coeff_vector(fy, d - 1)
    g = _uni_gcd(ax, ay, fld)
    if len(g) > 1:
        roots = roots_in_field(g, fld)
        if roots:
            return NonsingularityEvidence("SINGULAR_WITNESS", "resultant",
                                          [roots[0], fld.one])
    return NonsingularityEvidence("UNKNOWN", "resultant")


def _binary_rational_root(g: Poly) -> list | None:
    """A base-field projective zero of a nonzero binary form, if any."""
    fld = g.field
    coeffs = _binary_coeff_vector(g, g.degree())
    if fld.is_zero(coeffs[-1]):
        return [fld.one, fld.zero]
    roots = roots_in_field(coeffs, fld)
    if roots:
        return [roots[0], fld.one]
    return None


# -- linearized stabilizer / similarity algebras -----------------------------------

def _delta_polys(f: Poly) -> list[list[Poly]]:
    """q[i][j] = X_i * df/dX_j, so that delta_M(f) = sum m_ij q[i][j]."""
    n = f.n_vars
    parts = _partials(f)
    out = []
    for i in range(n):
        xi = Poly.variable(n, f.field, i)
        out.append([xi.mul(parts[j]) for j in range(n)])
    return out


def delta_action(m: Matrix, f: Poly) -> Poly:
    """Derivative of t -> f(X (I + tM)) at t = 0."""
    n = f.n_vars
    fld = f.field
    out = Poly.zero(n, fld)
    parts = _partials(f)
    for j in range(n):
        if parts[j].is_zero():
            continue
        form = Poly(n, fld, {tuple(1 if t == i else 0 for t in range(n)):
                             m.rows[i][j] for i in range(n)})
        out = out.add(form.mul(parts[j]))
    return out


def stab_lie(f: Poly) -> LieSubalgebra:
    """Lie algebra of the stabilizer of f: {M : delta_M(f) = 0}."""
    if f.is_zero():
        raise ZeroPolynomial("stabilizer of the zero polynomial")
    if not f.is_homogeneous():
        raise NotHomogeneous("need a homogeneous polynomial")
    fld = f.field
    n = f.n_vars
    q = _delta_polys(f)
    monos = sorted({m for row in q for p in row for m in p.terms})
    rows = []
    for mono in monos:
        row = [q[i][j].coefficient(mono) for i in range(n) for j in range(n)]
        rows.append(row)
    if not rows:
        space = Subspace.full(fld, n * n)
    else:
        space = kernel(Matrix(fld, rows))
    return LieSubalgebra(fld, n, space)


def sim_lie(f: Poly) -> LieSubalgebra:
    """Lie algebra of the similarity group: {M : delta_M(f) in span{f}}."""
    if f.is_zero():
        raise ZeroPolynomial("similarity algebra of the zero polynomial")
    if not f.is_homogeneous():
        raise NotHomogeneous("need a homogeneous polynomial")
    fld = f.field
    n = f.n_vars
    q = _delta_polys(f)
    monos = sorted({m for row in q for p in row for m in p.terms} | set(f.terms))
    rows = []
    for mono in monos:
        row = [q[i][j].coefficient(mono) for i in range(n) for j in range(n)]
        row.append(fld.neg(f.coefficient(mono)))
        rows.append(row)
    sol = kernel(Matrix(fld, rows))
    vecs = [v[:n * n] for v in sol.basis]
    return LieSubalgebra(fld, n, Subspace.from_vectors(fld, n * n, vecs))


def im_phi_lie(pres: Presentation) -> LieSubalgebra:
    """{M in gl_n : delta_M(ideal) <= ideal} for a graded presentation."""
    f = pres.field
    n = pres.n_vars
    for row in pres.ideal.basis:
        if not pres.row_poly(row).is_homogeneous():
            raise NotGraded("presentation ideal has no homogeneous basis")
    residual_vectors = []
    for row in pres.ideal.basis:
        h = pres.row_poly(row)
        q = _delta_polys(h)
        for i in range(n):
            for j in range(n):
                vec = pres.ring.truncate(q[i][j])
                residual_vectors.append(pres.ideal.reduce(vec))
    if not residual_vectors:
        return LieSubalgebra(f, n, Subspace.full(f, n * n))
    rows = []
    per_gen = n * n
    for block_start in range(0, len(residual_vectors), per_gen):
        block = residual_vectors[block_start:block_start + per_gen]
        for coord in range(pres.ring.dim):
            row = [res[coord] for res in block]
            if any(not f.is_zero(x) for x in row):
                rows.append(row)
    if not rows:
        return LieSubalgebra(f, n, Subspace.full(f, n * n))
    return LieSubalgebra(f, n, kernel(Matrix(f, rows)))


# -- flag search --------------------------------------------------------------------

@dataclass
class FlagSearchResult:
    status: str                   # FULL_FLAG | NO_RATIONAL_FLAG | NOT_SOLVABLE
    flag: list | None = None      # chain vectors in the W coordinates


def restricted_action(lie: LieSubalgebra, w: MinimalDegreeSubspace,
                      ring=None) -> list[Matrix]:
    """Matrices of delta_M acting on W for each basis M of the Lie algebra.

    Raises NotStable when some delta_M image leaves W.
    """
    f = lie.field
    basis_polys = w.polys
    ops = []
    for m in lie.basis_matrices():
        cols = []
        for wp in basis_polys:
            img = delta_action(m, wp)
            vec = [img.coefficient(mono) for mono in w.monomials]
            if not w.space.contains(vec):
                raise NotStable("subspace is not stable under the action")
            coords = solve(Matrix(f, list(w.space.basis)).transpose(), vec)
            assert coords is not None
            cols.append(coords)
        ops.append(Matrix.from_columns(f, cols))
    return ops


def _bracket_closure(field: Field, n: int, ops: list[Matrix]) -> Subspace:
    span = Subspace.from_vectors(field, n * n, [m.flatten() for m in ops])
    while True:
        mats = LieSubalgebra(field, n, span).basis_matrices()
        grown = span
        for i, a in enumerate(mats):
            for b in mats[i + 1:]:
                grown = grown.sum(Subspace.from_vectors(
                    field, n * n, [mat_bracket(a, b).flatten()]))
        if grown.dim == span.dim:
            return span
        span = grown


def flag_search(operators: list[Matrix], field: Field,
                dim_w: int | None = None) -> FlagSearchResult:
    """Search a full flag of subspaces stable under all operators.

    Works over the base field only: each step needs a common eigenvector
    whose eigenvalues lie in the field; a solvable action without one yields
    NO_RATIONAL_FLAG.  Non-solvable spans are rejected outright.
    """
    if dim_w is None:
        if not operators:
            raise ValueError("need dim_w when no operators are given")
        dim_w = operators[0].nrows
    if operators:
        closure = _bracket_closure(field, dim_w, operators)
        if not lie_series(LieSubalgebra(field, dim_w, closure)).is_solvable:
            return FlagSearchResult("NOT_SOLVABLE")
    flag: list[list] = []
    reps = Matrix.identity(field, dim_w).rows
    ops = [Matrix(field, m.rows) for m in operators]
    cur = dim_w
    while cur > 0:
        candidates = [Subspace.full(field, cur)]
        for op in ops:
            mp = minimal_polynomial(operator_power_sequence(op), field)
            eigi = roots_in_field(mp, field)
            refined = []
            for lam in eigi:
                shifted = Matrix(field, [[field.sub(x, lam if i == j else field.zero)
                                          for j, x in enumerate(row)]
                                         for i, row in enumerate(op.rows)])
                eig = kernel(shifted)
                for s in candidates:
                    meet = s.intersect(eig)
                    if meet.dim > 0:
                        refined.append(meet)
            candidates = refined
            if not candidates:
                return FlagSearchResult("NO_RATIONAL_FLAG")
        v = list(candidates[0].basis[0])
        flag.append(_combine(field, v, reps))
        if cur == 1:
            break
        line = Subspace.from_vectors(field, cur, [v])
        comp = [list(r) for r in _complement_rows(field, line, cur)]
        stacked = Matrix(field, [v] + comp).transpose()
        binv = invert(stacked)
        assert binv is not None
        new_ops = []
        for op in ops:
            cols = []
            for w in comp:
                img = op.matvec(w)
                coords = binv.matvec(img)
                cols.append(coords[1:])
            new_ops.append(Matrix.from_columns(field, cols))
        reps = [_combine(field, w, reps) for w in comp]
        ops = new_ops
        cur -= 1
    return FlagSearchResult("FULL_FLAG", flag)


def _combine(field: Field, coords, reps) -> list:
    out = [field.zero] * len(reps[0])
    for c, rep in zip(coords, reps):
        if not field.is_zero(c):
            out = [field.add(x, field.mul(c, y)) for x, y in zip(out, rep)]
    return out


def _complement_rows(field: Field, line: Subspace, n: int) -> list:
    from .linalg import quotient_basis
    return quotient_basis(line, Subspace.full(field, n))
