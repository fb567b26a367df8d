"""Realizing Lie-algebra elements as derivations of the sphere ring.

A basis element E_ij of so(m) generates the one-parameter rotation group of
the x_i x_j plane; differentiating f(exp(t E_ij) p) at t = 0 gives the
derivation -X_ij.  Linear extension realizes all of so(m) on S^{m-1}, and the
quaternionic combinations V_i, V_j, V_k realize su(2) on S^3.  Realization is
an antihomomorphism: realize([u, v]) = -[realize(u), realize(v)].

The projected Casimir of a positive form acts as
f -> sum_j realize(dual_j)(realize(basis_j)(f)); under the default trace-form
normalization it coincides exactly with the spherical Laplacian.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .lie import CasimirElement, LieAlgebraData
from .polynomials import Polynomial, SphereFunction, SpherePolynomial
from .sphere_ops import (
    RotationField,
    apply_rotation_field,
    generate_harmonic_basis,
    laplace_sphere,
    rotation_fields,
)


@dataclass(frozen=True)
class RealizedField:
    """Finite rational combination of rotation fields, acting as a derivation."""

    m: int
    weights: tuple[tuple[RotationField, Fraction], ...]

    @classmethod
    def from_weights(cls, m: int, weights: dict[RotationField, Fraction]) -> "RealizedField":
        clean = tuple(
            (field, Fraction(c))
            for field, c in sorted(weights.items(), key=lambda kv: (kv[0].i, kv[0].j))
            if c != 0
        )
        return cls(m=m, weights=clean)

    @classmethod
    def zero(cls, m: int) -> "RealizedField":
        return cls(m=m, weights=())

    def __call__(self, f):
        if isinstance(f, SphereFunction):
            out = SphereFunction.zero(self.m)
        elif isinstance(f, SpherePolynomial):
            out = SpherePolynomial.zero(self.m)
        else:
            raise TypeError(f"cannot differentiate {type(f).__name__}")
        for field, c in self.weights:
            out = out + apply_rotation_field(field, f).scale(c)
        return out

    def __add__(self, other: "RealizedField") -> "RealizedField":
        if self.m != other.m:
            raise ValueError("ambient dimension mismatch")
        acc = dict(self.weights)
        for field, c in other.weights:
            acc[field] = acc.get(field, Fraction(0)) + c
        return RealizedField.from_weights(self.m, acc)

    def scale(self, factor) -> "RealizedField":
        f = Fraction(factor)
        return RealizedField.from_weights(
            self.m, {field: c * f for field, c in self.weights}
        )

    def commutator(self, other: "RealizedField"):
        """Commutator as an operator map f -> self(other(f)) - other(self(f))."""

        def action(f):
            return self(other(f)) - other(self(f))

        return action


def realize_so_field(coords: Sequence, m: int) -> RealizedField:
    """Realize a coordinate vector over the E_ij basis of so(m) on S^{m-1}.

    The basis element E_ij maps to -X_ij (the flow convention fixes the sign;
    squared sums are insensitive to it).
    """
    pairs = list(combinations(range(1, m + 1), 2))
    if len(coords) != len(pairs):
        raise ValueError(
            f"coordinate vector has length {len(coords)}, expected {len(pairs)}"
        )
    weights = {
        RotationField(i, j): -Fraction(c) for (i, j), c in zip(pairs, coords)
    }
    return RealizedField.from_weights(m, weights)


def su2_fields() -> tuple[RealizedField, RealizedField, RealizedField]:
    """The three quaternionic rotation combinations on S^3.

    V_i = X12 + X34, V_j = X13 - X24, V_k = X14 + X23; they close with
    [V_i, V_j] = -2 V_k and realize left quaternion multiplication.
    """
    one = Fraction(1)
    vi = RealizedField.from_weights(
        4, {RotationField(1, 2): one, RotationField(3, 4): one}
    )
    vj = RealizedField.from_weights(
        4, {RotationField(1, 3): one, RotationField(2, 4): -one}
    )
    vk = RealizedField.from_weights(
        4, {RotationField(1, 4): one, RotationField(2, 3): one}
    )
    return vi, vj, vk


def realize_su2_element(coords: Sequence) -> RealizedField:
    """Realize su(2) coordinates (cyclic basis [e1,e2] = e3) on S^3.

    Each cyclic basis vector maps to half the corresponding quaternionic
    field, which is what makes the map an antihomomorphism.
    """
    if len(coords) != 3:
        raise ValueError("su(2) coordinate vectors have length 3")
    vi, vj, vk = su2_fields()
    half = Fraction(1, 2)
    out = RealizedField.zero(4)
    for c, v in zip(coords, (vi, vj, vk)):
        out = out + v.scale(half * Fraction(c))
    return out


@dataclass(frozen=True)
class ProjectedCasimir:
    """Realized (dual, basis) field pairs; acts as the sum of compositions."""

    pairs: tuple[tuple[RealizedField, RealizedField], ...]

    def __call__(self, f):
        result = None
        for dual, basic in self.pairs:
            term = dual(basic(f))
            result = term if result is None else result + term
        return result


def projected_casimir(casimir: CasimirElement, m: int, algebra: str = "so") -> ProjectedCasimir:
    """Realize a Casimir element on the sphere S^{m-1}.

    ``algebra`` picks the realization map: "so" for so(m) coordinate vectors
    over the E_ij basis, "su2" for the cyclic su(2) basis on S^3 (m = 4).
    """
    if algebra == "so":
        realize = lambda coords: realize_so_field(coords, m)  # noqa: E731
    elif algebra == "su2":
        if m != 4:
            raise ValueError("the su(2) realization lives on S^3 (m = 4)")
        realize = realize_su2_element
    else:
        raise ValueError(f"unknown realization {algebra!r}")
    return ProjectedCasimir(
        pairs=tuple((realize(dual), realize(vec)) for dual, vec in casimir.pairs)
    )


# ----------------------------------------------------------------------
# test suites and theorem-level checks
# ----------------------------------------------------------------------


def standard_test_suite(
    m: int,
    max_harmonic_degree: int = 4,
    random_count: int = 20,
    seed: int = 710,
) -> list[SphereFunction]:
    """Deterministic exact test functions: harmonic restrictions plus seeded
    random rational functions with pole-free denominators."""
    suite: list[SphereFunction] = []
    for d in range(max_harmonic_degree + 1):
        for p in generate_harmonic_basis(m, d):
            suite.append(SphereFunction.from_polynomial(SpherePolynomial(p)))
    rng = random.Random(seed)
    base = SpherePolynomial(
        Polynomial.constant(m, 3) - Polynomial.variable(m, m)
    )
    for _ in range(random_count):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            exps = [0] * m
            for _ in range(rng.randint(0, 3)):
                exps[rng.randrange(m)] += 1
            terms[tuple(exps)] = Fraction(rng.randint(-5, 5))
        num = SpherePolynomial(Polynomial(m, terms))
        exp = rng.randint(0, 2)
        suite.append(SphereFunction._make(num, base, exp))
    return suite


def verify_lap_eq_casimir(
    casimir: CasimirElement,
    m: int,
    test_functions: Sequence[SphereFunction] | None = None,
    algebra: str = "so",
    scale: Fraction = Fraction(1),
) -> bool:
    """True iff the projected Casimir equals scale * laplace_sphere on every
    test function, exactly."""
    operator = projected_casimir(casimir, m, algebra)
    functions = (
        list(test_functions) if test_functions is not None else standard_test_suite(m)
    )
    for f in functions:
        if operator(f) != laplace_sphere(f).scale(scale):
            return False
    return True


def commutation_defect(
    field: RealizedField, operator: ProjectedCasimir, f: SphereFunction
) -> SphereFunction:
    return field(operator(f)) - operator(field(f))


def verify_commutation_theorem(
    casimir: CasimirElement,
    m: int,
    complement_coords: Sequence[Sequence],
    full_coords: Sequence[Sequence] | None = None,
    test_functions: Sequence[SphereFunction] | None = None,
) -> dict[str, bool]:
    """Exact commutation of realized fields with the projected Casimir.

    Returns verdicts for the complement fields (the theorem's statement) and,
    when given, for a full set of algebra fields (stronger, expected true on
    spheres where the operator is rotation invariant).
    """
    operator = projected_casimir(casimir, m)
    functions = (
        list(test_functions)
        if test_functions is not None
        else standard_test_suite(m, max_harmonic_degree=3, random_count=8)
    )

    def all_commute(coord_list) -> bool:
        for coords in coord_list:
            field = realize_so_field(coords, m)
            for f in functions:
                if not commutation_defect(field, operator, f).is_zero():
                    return False
        return True

    verdicts = {"complement": all_commute(complement_coords)}
    if full_coords is not None:
        verdicts["full_algebra"] = all_commute(full_coords)
    return verdicts


def sum_of_field_squares(fields: Sequence[RealizedField], f):
    """Sum of each field applied twice, in the given order."""
    result = None
    for v in fields:
        term = v(v(f))
        result = term if result is None else result + term
    return result


def verify_group_case_identity(
    test_functions: Sequence[SphereFunction] | None = None,
) -> bool:
    """The three-field and six-field sums of squares agree exactly on S^3."""
    functions = (
        list(test_functions)
        if test_functions is not None
        else standard_test_suite(4, max_harmonic_degree=3, random_count=8)
    )
    fields = su2_fields()
    for f in functions:
        if sum_of_field_squares(fields, f) != laplace_sphere(f):
            return False
    return True


def realization_antihomomorphism_defect(
    algebra: LieAlgebraData, u: Sequence, v: Sequence, m: int, f
):
    """realize([u, v]) f + [realize(u), realize(v)] f; zero when the
    antihomomorphism law holds on f."""
    bracket_field = realize_so_field(algebra.bracket(u, v), m)
    ru, rv = realize_so_field(u, m), realize_so_field(v, m)
    return bracket_field(f) + ru(rv(f)) - rv(ru(f))
