"""Exact Lie-algebra infrastructure.

Algebras are given by rational structure constants on a labelled basis;
forms are symmetric rational matrices.  Everything needed downstream is
exact: brackets, trace and Killing forms, invariance checks with explicit
counterexample witnesses, orthogonal reductive decompositions, and Casimir
elements as (dual vector, basis vector) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg

Vector = tuple[Fraction, ...]


def _vec(values: Sequence) -> Vector:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class LieAlgebraData:
    """Structure constants c[i][j][k] with [X_i, X_j] = sum_k c[i][j][k] X_k."""

    dim: int
    labels: tuple[str, ...]
    structure: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        if len(self.labels) != self.dim:
            raise ValueError("label count does not match dimension")
        if len(self.structure) != self.dim or any(
            len(row) != self.dim or any(len(v) != self.dim for v in row)
            for row in self.structure
        ):
            raise ValueError("structure constant tensor must be dim x dim x dim")

    def basis_vector(self, index: int) -> Vector:
        return _vec(1 if k == index else 0 for k in range(self.dim))

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        """[u, v] in coordinates; bilinear extension of the structure constants."""
        u, v = _vec(u), _vec(v)
        if len(u) != self.dim or len(v) != self.dim:
            raise ValueError("coordinate vectors must match the algebra dimension")
        out = [Fraction(0)] * self.dim
        for i, ci in enumerate(u):
            if ci == 0:
                continue
            for j, cj in enumerate(v):
                if cj == 0:
                    continue
                for k, c in enumerate(self.structure[i][j]):
                    if c != 0:
                        out[k] += ci * cj * c
        return tuple(out)

    def ad_matrix(self, u: Sequence) -> list[list[Fraction]]:
        """Matrix of ad(u): columns are [u, X_j] in basis coordinates."""
        cols = [self.bracket(u, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def check_antisymmetry(self) -> bool:
        for i in range(self.dim):
            for j in range(self.dim):
                if any(
                    self.structure[i][j][k] != -self.structure[j][i][k]
                    for k in range(self.dim)
                ):
                    return False
        return True

    def check_jacobi(self) -> bool:
        """Jacobi identity on all basis triples, exactly."""
        for i in range(self.dim):
            ei = self.basis_vector(i)
            for j in range(self.dim):
                ej = self.basis_vector(j)
                for k in range(self.dim):
                    ek = self.basis_vector(k)
                    total = [
                        a + b + c
                        for a, b, c in zip(
                            self.bracket(ei, self.bracket(ej, ek)),
                            self.bracket(ej, self.bracket(ek, ei)),
                            self.bracket(ek, self.bracket(ei, ej)),
                        )
                    ]
                    if any(t != 0 for t in total):
                        return False
        return True


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric rational matrix; positive definiteness checked on demand."""

    matrix: tuple[Vector, ...]

    def __post_init__(self):
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("form matrix must be square")
        for i in range(n):
            for j in range(i):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise ValueError("form matrix must be symmetric")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "BilinearForm":
        return cls(tuple(_vec(row) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, u: Sequence, v: Sequence) -> Fraction:
        u, v = _vec(u), _vec(v)
        return sum(
            u[i] * self.matrix[i][j] * v[j]
            for i in range(self.dim)
            for j in range(self.dim)
            if u[i] != 0 and self.matrix[i][j] != 0
        ) or Fraction(0)

    def is_positive_definite(self) -> bool:
        """Exact Sylvester criterion: all leading principal minors positive."""
        return all(d > 0 for d in linalg.leading_principal_minors(self.matrix))

    def scale(self, factor) -> "BilinearForm":
        f = Fraction(factor)
        return BilinearForm(tuple(_vec(x * f for x in row) for row in self.matrix))


# ----------------------------------------------------------------------
# concrete algebras
# ----------------------------------------------------------------------


def so_basis_labels(m: int) -> list[str]:
    return [f"E{i}{j}" for i, j in combinations(range(1, m + 1), 2)]


def so_basis_matrix(m: int, i: int, j: int) -> list[list[Fraction]]:
    """Antisymmetric matrix unit with +1 in row i column j (1-based), -1 transposed."""
    rows = [[Fraction(0)] * m for _ in range(m)]
    rows[i - 1][j - 1] = Fraction(1)
    rows[j - 1][i - 1] = Fraction(-1)
    return rows


def _mat_mul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)
    ]


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def so_algebra(m: int) -> LieAlgebraData:
    """so(m) on the basis {E_ij}_{i<j}, structure constants from matrix commutators."""
    if m < 3:
        raise ValueError(f"need m >= 3, got {m}")
    pairs = list(combinations(range(1, m + 1), 2))
    mats = [so_basis_matrix(m, i, j) for i, j in pairs]
    index = {p: k for k, p in enumerate(pairs)}
    dim = len(pairs)
    structure = []
    for a in range(dim):
        row = []
        for b in range(dim):
            comm = _mat_sub(_mat_mul(mats[a], mats[b]), _mat_mul(mats[b], mats[a]))
            coords = [Fraction(0)] * dim
            for (i, j), k in index.items():
                coords[k] = comm[i - 1][j - 1]
            # Sanity: the commutator must be exactly the claimed combination.
            recon = [[Fraction(0)] * m for _ in range(m)]
            for (i, j), k in index.items():
                if coords[k] != 0:
                    recon[i - 1][j - 1] += coords[k]
                    recon[j - 1][i - 1] -= coords[k]
            if recon != comm:
                raise AssertionError("so(m) commutator fell outside the E_ij span")
            row.append(tuple(coords))
        structure.append(tuple(row))
    return LieAlgebraData(dim=dim, labels=tuple(so_basis_labels(m)), structure=tuple(structure))


def su2_algebra() -> LieAlgebraData:
    """su(2) abstractly: [e1, e2] = e3 and cyclic permutations."""
    dim = 3
    structure = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        structure[i][j][k] = Fraction(1)
        structure[j][i][k] = Fraction(-1)
    return LieAlgebraData(
        dim=dim,
        labels=("e1", "e2", "e3"),
        structure=tuple(tuple(tuple(v) for v in row) for row in structure),
    )


def su2_round_form() -> BilinearForm:
    """Form on su2_algebra whose projected Casimir matches the unit-sphere
    Laplacian on S^3 (the flow fields of the cyclic basis have length 1/2
    there, so the matching Gram matrix is I/4)."""
    return BilinearForm.from_rows(
        [[Fraction(1, 4) if i == j else Fraction(0) for j in range(3)] for i in range(3)]
    )


def trace_form(m: int, scale=Fraction(-1, 2)) -> BilinearForm:
    """B(X, Y) = scale * trace(XY) on the E_ij basis of so(m).

    The default scale -1/2 makes {E_ij} orthonormal, which is the
    normalization under which the projected Casimir reproduces the round
    Laplacian with constant exactly one.
    """
    pairs = list(combinations(range(1, m + 1), 2))
    mats = [so_basis_matrix(m, i, j) for i, j in pairs]
    s = Fraction(scale)
    rows = []
    for a in mats:
        row = []
        for b in mats:
            prod = _mat_mul(a, b)
            row.append(s * sum(prod[i][i] for i in range(m)))
        rows.append(row)
    return BilinearForm.from_rows(rows)


def killing_form(algebra: LieAlgebraData) -> BilinearForm:
    """K(X, Y) = trace(ad X . ad Y), exactly, from the structure constants."""
    mats = [algebra.ad_matrix(algebra.basis_vector(i)) for i in range(algebra.dim)]
    rows = []
    for a in mats:
        row = []
        for b in mats:
            prod = _mat_mul(a, b)
            row.append(sum(prod[i][i] for i in range(algebra.dim)))
        rows.append(row)
    return BilinearForm.from_rows(rows)


def perturbed_form(base: BilinearForm, index: int = 0, bump=Fraction(1)) -> BilinearForm:
    """Negative control: a symmetric but non-invariant perturbation of a form."""
    rows = [list(row) for row in base.matrix]
    rows[index][index] += Fraction(bump)
    return BilinearForm.from_rows(rows)


# ----------------------------------------------------------------------
# invariance and reductivity
# ----------------------------------------------------------------------


def ad_invariance_witness(
    algebra: LieAlgebraData, form: BilinearForm
) -> tuple[int, int, int] | None:
    """First basis triple (z, x, y) violating B([Z,X],Y) + B(X,[Z,Y]) = 0, or None."""
    if form.dim != algebra.dim:
        raise ValueError("form and algebra dimensions differ")
    for z in range(algebra.dim):
        ez = algebra.basis_vector(z)
        for x in range(algebra.dim):
            ex = algebra.basis_vector(x)
            bzx = algebra.bracket(ez, ex)
            for y in range(algebra.dim):
                ey = algebra.basis_vector(y)
                if form(bzx, ey) + form(ex, algebra.bracket(ez, ey)) != 0:
                    return (z, x, y)
    return None


def check_ad_invariance(algebra: LieAlgebraData, form: BilinearForm) -> bool:
    return ad_invariance_witness(algebra, form) is None


@dataclass(frozen=True)
class ReductiveDecomposition:
    """B-orthogonal splitting of the algebra into a subalgebra and its complement."""

    algebra: LieAlgebraData
    form: BilinearForm
    subalgebra_basis: tuple[Vector, ...]
    complement_basis: tuple[Vector, ...]

    def project_complement(self, u: Sequence) -> Vector:
        """B-orthogonal projection onto the complement, exact.

        Solves the Gram system of the complement basis; valid because B is
        positive definite.
        """
        u = _vec(u)
        basis = self.complement_basis
        if not basis:
            return tuple(Fraction(0) for _ in range(self.algebra.dim))
        gram = [[self.form(a, b) for b in basis] for a in basis]
        rhs = [self.form(a, u) for a in basis]
        coeffs = linalg.solve(gram, rhs)
        out = [Fraction(0)] * self.algebra.dim
        for c, vec in zip(coeffs, basis):
            for i, v in enumerate(vec):
                out[i] += c * v
        return tuple(out)


def orthogonal_decomposition(
    algebra: LieAlgebraData,
    subalgebra_basis: Sequence[Sequence],
    form: BilinearForm,
) -> ReductiveDecomposition:
    """Split the algebra as subalgebra + B-orthogonal complement, verified exactly.

    Checks that the given span is closed under the bracket, that the form is
    positive definite, that dimensions add up, and that the complement is
    bracket-stable under the subalgebra.
    """
    if form.dim != algebra.dim:
        raise ValueError("form and algebra dimensions differ")
    if not form.is_positive_definite():
        raise ValueError("decomposition needs a positive definite form")
    k_basis = [_vec(v) for v in subalgebra_basis]
    if linalg.rank(k_basis) != len(k_basis):
        raise ValueError("subalgebra basis vectors are linearly dependent")
    for a in k_basis:
        for b in k_basis:
            if not linalg.in_span(k_basis, algebra.bracket(a, b)):
                raise ValueError("given span is not closed under the bracket")
    # Complement: kernel of u -> (B(u, k_1), ..., B(u, k_r)).
    if k_basis:
        constraint = [
            [form(algebra.basis_vector(col), k) for col in range(algebra.dim)]
            for k in k_basis
        ]
        m_basis = [tuple(v) for v in linalg.nullspace(constraint, n_cols=algebra.dim)]
    else:
        m_basis = [algebra.basis_vector(i) for i in range(algebra.dim)]
    if len(k_basis) + len(m_basis) != algebra.dim:
        raise AssertionError("complement dimension mismatch")
    for k in k_basis:
        for mvec in m_basis:
            if form(k, mvec) != 0:
                raise AssertionError("complement is not B-orthogonal")
            if not linalg.in_span(m_basis, algebra.bracket(k, mvec)):
                raise ValueError("complement is not stable under the subalgebra")
    return ReductiveDecomposition(
        algebra=algebra,
        form=form,
        subalgebra_basis=tuple(k_basis),
        complement_basis=tuple(m_basis),
    )


def natural_reductivity_witness(
    dec: ReductiveDecomposition,
) -> tuple[int, int, int] | None:
    """First complement-basis triple violating
    B([Z,X]_m, Y) + B(X, [Z,Y]_m) = 0, or None."""
    basis = dec.complement_basis
    alg, form = dec.algebra, dec.form
    for z, ez in enumerate(basis):
        for x, ex in enumerate(basis):
            pzx = dec.project_complement(alg.bracket(ez, ex))
            for y, ey in enumerate(basis):
                pzy = dec.project_complement(alg.bracket(ez, ey))
                if form(pzx, ey) + form(ex, pzy) != 0:
                    return (z, x, y)
    return None


def check_natural_reductivity(dec: ReductiveDecomposition) -> bool:
    return natural_reductivity_witness(dec) is None


# ----------------------------------------------------------------------
# Casimir elements
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CasimirElement:
    """Pairs (dual vector, basis vector); the element is the sum of products."""

    pairs: tuple[tuple[Vector, Vector], ...]

    @property
    def dim(self) -> int:
        return len(self.pairs)


def casimir_element(
    algebra: LieAlgebraData,
    form: BilinearForm,
    basis: Sequence[Sequence] | None = None,
) -> CasimirElement:
    """Casimir pairs for any basis: dual vectors come from the inverse Gram matrix.

    Raises on a singular Gram matrix (degenerate form or dependent basis).
    Gram consistency B(dual_i, basis_j) = delta_ij is re-verified exactly.
    """
    if form.dim != algebra.dim:
        raise ValueError("form and algebra dimensions differ")
    if basis is None:
        vecs = [algebra.basis_vector(i) for i in range(algebra.dim)]
    else:
        vecs = [_vec(v) for v in basis]
        if len(vecs) != algebra.dim:
            raise ValueError("basis must have exactly dim vectors")
    gram = [[form(a, b) for b in vecs] for a in vecs]
    inverse = linalg.invert(gram)  # raises ZeroDivisionError if singular
    duals = []
    for j in range(algebra.dim):
        dual = [Fraction(0)] * algebra.dim
        for i in range(algebra.dim):
            c = inverse[i][j]
            if c != 0:
                for t, v in enumerate(vecs[i]):
                    dual[t] += c * v
        duals.append(tuple(dual))
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            expected = Fraction(1) if i == j else Fraction(0)
            if form(duals[i], vecs[j]) != expected:
                raise AssertionError("dual basis failed the Gram consistency check")
    return CasimirElement(pairs=tuple((duals[j], vecs[j]) for j in range(algebra.dim)))


def so_subalgebra_fixing_last_axis(m: int) -> list[Vector]:
    """Coordinates in so(m) of the copy of so(m-1) acting on the first m-1 axes."""
    pairs = list(combinations(range(1, m + 1), 2))
    out = []
    for k, (i, j) in enumerate(pairs):
        if j <= m - 1:
            out.append(
                tuple(Fraction(1) if t == k else Fraction(0) for t in range(len(pairs)))
            )
    return out
