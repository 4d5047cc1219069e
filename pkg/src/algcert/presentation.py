"""Quiver-style presentations of split local commutative algebras:
admissible ideals inside the truncated ring, normal-form generators,
monomial detection, the star property, minimal-degree subspaces and the
associated graded ideal.

The ideal of a presentation is stored as a subspace of the truncated-ring
coordinates (the part of degree < l; the power <X>^l is implicit).  Because
coordinates are in graded-lex order, the rows of the canonical RREF basis
sort by valuation, which makes every degree filtration a row filter.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

from .algebra import StructureAlgebra, RadicalData, _QuotientAlgebra, _try_split
from .errors import (NotAdmissible, NotCommutative, NotLocal, NotSplit,
                     LoweyMismatch)
from .fields import Field
from .linalg import Matrix, Subspace, invert, kernel, quotient_basis
from .poly import Poly, TruncatedRing, monomial_gcd_factor, s_index


class Presentation:
    """Admissible ideal <X>^l + <P_1..P_m> presenting k[X1..Xn]/I."""

    def __init__(self, field: Field, n_vars: int, lowey: int,
                 ring: TruncatedRing, ideal: Subspace, generators: list[Poly]):
        self.field = field
        self.n_vars = n_vars
        self.lowey = lowey
        self.ring = ring
        self.ideal = ideal
        self.generators = generators
        self._validate()

    def _validate(self):
        ring, f = self.ring, self.field
        lin_cut = 1 + self.n_vars  # constant + linear coordinates come first
        for row in self.ideal.basis:
            if any(not f.is_zero(x) for x in row[:lin_cut]):
                raise NotAdmissible("ideal meets the constant/linear slice")
        for row in self.ideal.basis:
            for i in range(self.n_vars):
                shifted = self._x_multiple(row, i)
                if not self.ideal.contains(shifted):
                    raise NotAdmissible("ideal is not closed under X_i multiplication")

    def _x_multiple(self, vec, i: int) -> list:
        ring, f = self.ring, self.field
        out = [f.zero] * ring.dim
        for pos, c in enumerate(vec):
            if f.is_zero(c):
                continue
            m = ring.monomials[pos]
            m2 = tuple(e + 1 if j == i else e for j, e in enumerate(m))
            if sum(m2) < ring.trunc_degree:
                out[ring.index[m2]] = f.add(out[ring.index[m2]], c)
        return out

    def row_valuation(self, row) -> int:
        f = self.field
        lead = next(i for i, x in enumerate(row) if not f.is_zero(x))
        return sum(self.ring.monomials[lead])

    def filtered(self, d: int) -> Subspace:
        """Ideal part supported on degree >= d (a row filter in RREF form)."""
        rows = [r for r in self.ideal.basis if self.row_valuation(r) >= d]
        return Subspace(self.field, self.ring.dim, rows)

    def degree_projection(self, d: int):
        """(slice monomial list, projected subspace of the valuation-d rows)."""
        ring = self.ring
        slice_pos = ring.degree_slice(d)
        vecs = []
        for r in self.ideal.basis:
            if self.row_valuation(r) == d:
                vecs.append([r[p] for p in slice_pos])
        monos = [ring.monomials[p] for p in slice_pos]
        return monos, Subspace.from_vectors(self.field, len(slice_pos), vecs)

    def row_poly(self, row) -> Poly:
        return self.ring.poly_from_vector(row, self.field)

    def contains_poly(self, f: Poly) -> bool:
        return self.ideal.contains(self.ring.truncate(f))

    def algebra_dim(self) -> int:
        return self.ring.dim - self.ideal.dim

    def __repr__(self):
        return (f"Presentation(n={self.n_vars}, l={self.lowey}, "
                f"ideal_dim={self.ideal.dim}, field={self.field!r})")


def _saturate(ring: TruncatedRing, field: Field, gens: list[Poly]) -> Subspace:
    """Span of all truncated monomial multiples of the generators."""
    vecs = []
    l = ring.trunc_degree
    for g in gens:
        val = min(sum(m) for m in g.terms) if not g.is_zero() else l
        for m in ring.monomials:
            if sum(m) + val >= l:
                continue
            prod = g.mul(Poly.monomial(ring.n_vars, field, m))
            if any(sum(mm) < l for mm in prod.terms):
                vecs.append(ring.truncate(prod))
    return Subspace.from_vectors(field, ring.dim, vecs)


def presentation_from_ideal(n_vars: int, lowey: int, generators: list[Poly],
                            field: Field) -> Presentation:
    """Build the presentation of <X>^l + <generators>.

    Generators must have no constant or linear component after truncation.
    If the generated ideal already contains a smaller power of <X>, the
    stored Lowey length is corrected and a LoweyMismatch warning is issued
    (also when a supplied generator is entirely absorbed by <X>^l).
    """
    if lowey < 2:
        raise NotAdmissible("truncation degree must be at least 2")
    ring = TruncatedRing(n_vars, lowey)
    absorbed = False
    truncated = []
    for g in generators:
        if g.n_vars != n_vars:
            raise NotAdmissible("generator arity mismatch")
        vec = ring.truncate(g)
        cut = ring.poly_from_vector(vec, field)
        if cut.is_zero():
            absorbed = True
            continue
        if any(sum(m) < 2 for m in cut.terms):
            raise NotAdmissible(f"generator {g} has a constant or linear part")
        truncated.append(cut)
    ideal = _saturate(ring, field, truncated)
    actual = _actual_lowey(ring, field, ideal)
    if actual < lowey:
        warnings.warn(
            f"supplied Lowey length {lowey} corrected to {actual}", LoweyMismatch)
        return presentation_from_ideal(n_vars, actual, truncated, field)
    if absorbed:
        warnings.warn(
            "a generator was absorbed into the implicit power ideal", LoweyMismatch)
    return Presentation(field, n_vars, lowey, ring, ideal, truncated)


def _actual_lowey(ring: TruncatedRing, field: Field, ideal: Subspace) -> int:
    for m in range(2, ring.trunc_degree):
        pos = ring.degree_slice(m)
        vecs = []
        for p in pos:
            v = [field.zero] * ring.dim
            v[p] = field.one
            vecs.append(v)
        if all(ideal.contains(v) for v in vecs):
            return m
    return ring.trunc_degree


def presentation_from_algebra(algebra: StructureAlgebra, rad: RadicalData) -> Presentation:
    """Realize a split local commutative algebra as k[X1..Xn]/I.

    Picks lifts of a J/J^2 basis, evaluates all truncated-ring monomials on
    them, and returns the kernel of the (surjective) evaluation map.
    """
    if not algebra.commutative:
        raise NotCommutative("presentations need a commutative algebra")
    codim = algebra.dim - rad.radical.dim
    if codim > 1:
        quot = _QuotientAlgebra(algebra, rad.radical)
        if _try_split(quot, quot.unit, Subspace.full(algebra.field, quot.dim)):
            raise NotLocal("A/J splits into several components")
        raise NotSplit("A/J is a proper extension of the base field")
    if rad.jj2_dim == 0:
        raise NotAdmissible("radical is trivial; no admissible presentation")
    n = rad.jj2_dim
    l = rad.lowey_length
    ring = TruncatedRing(n, l)
    gens = quotient_basis(rad.square, rad.radical)
    images: dict[tuple, list] = {}
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
    ev = Matrix.from_columns(algebra.field, cols)
    from .linalg import rref
    _, rank, _ = rref(ev)
    if rank != algebra.dim:
        raise NotAdmissible("evaluation map is not surjective")
    ideal = kernel(ev)
    pres = Presentation(algebra.field, n, l, ring, ideal, [])
    pres.generators = normal_form(pres).generators
    return pres


# -- normal form and derived data ------------------------------------------------

@dataclass
class NormalForm:
    generators: list[Poly]
    is_monomial: bool
    property_star_r: int | None


def normal_form(pres: Presentation) -> NormalForm:
    """Minimal degreewise generator extraction.

    Working up through degrees d = 2..l-1, new generators form a basis of
    the valuation-(>= d) part of the ideal modulo both the ideal generated
    by earlier generators and the valuation-(>= d+1) part.  Ties are broken
    by graded-lex RREF pivots, so the output is canonical.
    """
    f = pres.field
    ring = pres.ring
    gens: list[Poly] = []
    span = Subspace.zero(f, ring.dim)
    for d in range(2, pres.lowey):
        f_d = pres.filtered(d)
        if f_d.dim == 0:
            continue
        base = span.intersect(f_d).sum(pres.filtered(d + 1))
        for vec in quotient_basis(base, f_d):
            gens.append(pres.row_poly(vec))
        span = _saturate(ring, f, gens)
    if span != pres.ideal:
        raise AssertionError("normal-form generators failed to reconstruct the ideal")
    is_mono = all(g.is_monomial() for g in gens)
    return NormalForm(gens, is_mono, _property_star(gens))


def is_monomial_ideal(pres: Presentation) -> bool:
    """True iff the ideal subspace has a basis of single monomials."""
    f = pres.field
    return all(sum(0 if f.is_zero(x) else 1 for x in row) == 1
               for row in pres.ideal.basis)


def _property_star(gens: list[Poly]) -> int | None:
    non_monomial = [g for g in gens if not g.is_monomial()]
    if not non_monomial:
        return None
    best = None
    for g in non_monomial:
        _, core = monomial_gcd_factor(g)
        s = s_index(core)
        if s is None:
            return None
        best = s if best is None else min(best, s)
    return best


def property_star(pres: Presentation, nf: NormalForm | None = None) -> int | None:
    """Largest r such that every non-monomial normal-form generator is an
    s-monomial homogeneous polynomial with s >= r (None when all generators
    are monomials or some generator is inhomogeneous)."""
    if nf is None:
        nf = normal_form(pres)
    return _property_star(nf.generators)


@dataclass
class MinimalDegreeSubspace:
    degree: int
    monomials: list          # labels for the slice coordinates
    space: Subspace          # inside the degree slice
    polys: list[Poly]
    is_power_slice: bool     # ideal had no part below degree l

    @property
    def dim(self) -> int:
        return self.space.dim


def minimal_degree_subspace(pres: Presentation) -> MinimalDegreeSubspace:
    """Span of the lowest-degree components of the ideal.

    When the ideal subspace is trivial (pure power <X>^l), the full slice of
    degree-l monomials is returned with ``is_power_slice`` set.
    """
    f = pres.field
    if pres.ideal.dim == 0:
        n, l = pres.n_vars, pres.lowey
        monos = sorted((m for m in itertools.product(range(l + 1), repeat=n)
                        if sum(m) == l), key=lambda m: (tuple(-e for e in m)))
        polys = [Poly.monomial(n, f, m) for m in monos]
        return MinimalDegreeSubspace(l, monos, Subspace.full(f, len(monos)),
                                     polys, True)
    d_min = min(pres.row_valuation(r) for r in pres.ideal.basis)
    monos, space = pres.degree_projection(d_min)
    polys = [Poly(pres.n_vars, f, {m: c for m, c in zip(monos, row)})
             for row in space.basis]
    return MinimalDegreeSubspace(d_min, monos, space, polys, False)


def associated_graded_ideal(pres: Presentation) -> Presentation:
    """Presentation of the ideal generated by all lowest-degree components."""
    f = pres.field
    gens: list[Poly] = []
    for d in range(2, pres.lowey):
        monos, proj = pres.degree_projection(d)
        for row in proj.basis:
            gens.append(Poly(pres.n_vars, f,
                             {m: c for m, c in zip(monos, row)}))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LoweyMismatch)
        return presentation_from_ideal(pres.n_vars, pres.lowey, gens, f)


def is_graded_presentation(pres: Presentation, nf: NormalForm | None = None) -> bool:
    """Sufficient criterion: all normal-form generators are homogeneous."""
    if nf is None:
        nf = normal_form(pres)
    return all(g.is_homogeneous() for g in nf.generators)


def has_homogeneous_ideal(pres: Presentation) -> bool:
    """Subspace-level gradedness: every canonical basis row is homogeneous."""
    return all(pres.row_poly(r).is_homogeneous() for r in pres.ideal.basis)


# -- quotient algebra -------------------------------------------------------------

def quotient_algebra(pres: Presentation, attach_radical: bool = True) -> StructureAlgebra:
    """Structure constants of T(n, l)/I on a canonical complement basis.

    With ``attach_radical`` the span of positive-degree monomial images is
    recorded as the known radical.
    """
    f = pres.field
    ring = pres.ring
    full = Subspace.full(f, ring.dim)
    reps = quotient_basis(pres.ideal, full)
    d = len(reps)
    stacked = Matrix(f, list(pres.ideal.basis) + reps).transpose()
    binv = invert(stacked)
    assert binv is not None

    def project(vec) -> list:
        coords = binv.matvec(vec)
        return coords[pres.ideal.dim:]

    def t_multiply(u, v) -> list:
        pu = ring.poly_from_vector(u, f)
        pv = ring.poly_from_vector(v, f)
        return ring.truncate(pu.mul(pv))

    table = [[project(t_multiply(reps[i], reps[j])) for j in range(d)]
             for i in range(d)]
    one_vec = [f.zero] * ring.dim
    one_vec[0] = f.one
    one = project(one_vec)
    known = None
    if attach_radical:
        positive = []
        for pos in range(1, ring.dim):
            v = [f.zero] * ring.dim
            v[pos] = f.one
            positive.append(project(v))
        known = Subspace.from_vectors(f, d, positive)
    return StructureAlgebra(f, table, one, known_radical=known)
