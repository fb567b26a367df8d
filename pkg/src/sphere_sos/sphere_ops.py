"""Rotation vector fields and Laplacians on the unit sphere.

The field X_ij = x_i d/dx_j - x_j d/dx_i generates the rotation of the
x_i x_j plane.  It annihilates the sphere relation, so it descends to a
derivation of the quotient ring, and the spherical Laplacian is realized
operationally as the sum of the squares of all the X_ij.  Everything here is
exact; the raw-polynomial identity

    sum_{i<j} X_ij^2  =  r^2 * laplace_euclid - euler^2 - (m - 2) * euler

ties that definition to the ambient Euclidean Laplacian and is exposed as a
checkable artifact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from . import linalg
from .polynomials import (
    Polynomial,
    SphereFunction,
    SpherePolynomial,
    euler_operator,
    laplace_euclid,
)


@dataclass(frozen=True, order=True)
class RotationField:
    """Index pair (i, j) with i < j naming the derivation x_i d_j - x_j d_i."""

    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise ValueError(f"need 1 <= i < j, got ({self.i}, {self.j})")

    def __str__(self) -> str:
        return f"X{self.i}{self.j}"

    def apply_raw(self, p: Polynomial) -> Polynomial:
        if self.j > p.m:
            raise IndexError(f"{self} out of range for m={p.m}")
        xi = Polynomial.variable(p.m, self.i)
        xj = Polynomial.variable(p.m, self.j)
        return xi * p.partial(self.j) - xj * p.partial(self.i)

    def __call__(self, f):
        return apply_rotation_field(self, f)


def rotation_fields(m: int) -> list[RotationField]:
    """All m(m-1)/2 rotation fields in lexicographic pair order."""
    return [RotationField(i, j) for i, j in combinations(range(1, m + 1), 2)]


def apply_rotation_field(field: RotationField, f):
    """Apply a rotation field to a polynomial, sphere polynomial, or quotient.

    Well-defined on residue classes because the field annihilates the sphere
    relation; on quotients the factored-power denominator makes the quotient
    rule raise the denominator exponent by one instead of squaring it.
    """
    if isinstance(field, tuple):
        field = RotationField(*field)
    if isinstance(f, Polynomial):
        return field.apply_raw(f)
    if isinstance(f, SpherePolynomial):
        if field.j > f.m:
            raise IndexError(f"{field} out of range for m={f.m}")
        return SpherePolynomial(field.apply_raw(f.poly))
    if isinstance(f, SphereFunction):
        if field.j > f.m:
            raise IndexError(f"{field} out of range for m={f.m}")
        d_num = SpherePolynomial(field.apply_raw(f.num.poly))
        if f.exp == 0:
            return SphereFunction.from_polynomial(d_num)
        d_base = SpherePolynomial(field.apply_raw(f.base.poly))
        if d_base.is_zero():
            return SphereFunction._make(d_num, f.base, f.exp)
        num = d_num * f.base - f.num * d_base.scale(f.exp)
        return SphereFunction._make(num, f.base, f.exp + 1)
    raise TypeError(f"cannot differentiate {type(f).__name__}")


def laplace_sphere(f):
    """Spherical Laplacian: the sum over i < j of X_ij applied twice.

    Accepts SpherePolynomial or SphereFunction and returns the same kind.
    The pair sum is accumulated in index order, so results are deterministic.
    """
    if isinstance(f, Polynomial):
        raise TypeError(
            "laplace_sphere acts on residue classes; reduce the polynomial first"
        )
    result = None
    for field in rotation_fields(f.m):
        term = apply_rotation_field(field, apply_rotation_field(field, f))
        result = term if result is None else result + term
    return result


def compose_fields(word, f):
    """Apply a word of rotation fields, first entry first."""
    for field in word:
        f = apply_rotation_field(field, f)
    return f


def check_sum_of_squares_identity(p: Polynomial) -> bool:
    """Raw-polynomial operator identity behind the spherical sum of squares.

    True iff sum_{i<j} X_ij^2 p equals r^2 * laplace_euclid(p) - euler(euler(p))
    - (m-2) * euler(p) exactly.  False is a finding, not an error.
    """
    m = p.m
    lhs = Polynomial.zero(m)
    for field in rotation_fields(m):
        lhs = lhs + field.apply_raw(field.apply_raw(p))
    ep = euler_operator(p)
    rhs = Polynomial.radius_squared(m) * laplace_euclid(p) - euler_operator(ep) - ep.scale(m - 2)
    return lhs == rhs


def check_commutation(field: RotationField, f: SphereFunction) -> bool:
    """True iff the field commutes with the spherical Laplacian on f, exactly."""
    lhs = apply_rotation_field(field, laplace_sphere(f))
    rhs = laplace_sphere(apply_rotation_field(field, f))
    return lhs == rhs


# ----------------------------------------------------------------------
# harmonic polynomials
# ----------------------------------------------------------------------


def monomials_of_degree(m: int, d: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree d, graded-lex descending (deterministic)."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], d, m)
    return out


def harmonic_space_dimension(m: int, d: int) -> int:
    """Dimension of degree-d harmonic polynomials in m variables."""
    if d < 0:
        return 0
    if d < 2:
        return comb(m + d - 1, d)
    return comb(m + d - 1, d) - comb(m + d - 3, d - 2)


def generate_harmonic_basis(m: int, d: int) -> list[Polynomial]:
    """Exact basis of homogeneous degree-d polynomials killed by laplace_euclid.

    Computed as the kernel of the Laplacian's coefficient matrix from degree d
    to degree d-2, by fraction-free elimination; deterministic ordering.
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    if d < 0:
        raise ValueError(f"need d >= 0, got {d}")
    source = monomials_of_degree(m, d)
    if d < 2:
        return [Polynomial(m, {exps: 1}) for exps in source]
    target = monomials_of_degree(m, d - 2)
    target_index = {exps: k for k, exps in enumerate(target)}
    matrix = [[Fraction(0)] * len(source) for _ in range(len(target))]
    for col, exps in enumerate(source):
        for i in range(m):
            e = exps[i]
            if e >= 2:
                lowered = list(exps)
                lowered[i] = e - 2
                matrix[target_index[tuple(lowered)]][col] += e * (e - 1)
    kernel = linalg.nullspace(matrix, n_cols=len(source))
    basis = []
    for vec in kernel:
        terms = {exps: c for exps, c in zip(source, vec) if c != 0}
        basis.append(Polynomial(m, terms))
    return basis


def check_spherical_eigenvalue(p: Polynomial, m: int | None = None) -> bool:
    """True iff the sphere restriction of the degree-l harmonic p satisfies
    laplace_sphere = -l(l + m - 2) exactly.

    Raises if p is not homogeneous harmonic (precondition violation, reported
    distinctly from a false verdict).
    """
    if m is not None and m != p.m:
        raise ValueError(f"ambient dimension mismatch: {m} vs {p.m}")
    m = p.m
    if not p.is_homogeneous():
        raise ValueError("eigenvalue oracle needs a homogeneous polynomial")
    if not laplace_euclid(p).is_zero():
        raise ValueError("eigenvalue oracle needs a Euclidean-harmonic polynomial")
    if p.is_zero():
        return True
    ell = p.degree()
    restricted = SpherePolynomial(p)
    return laplace_sphere(restricted) == restricted.scale(-ell * (ell + m - 2))
