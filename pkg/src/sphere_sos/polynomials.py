"""Exact arithmetic in the coordinate ring of the unit sphere.

Three layers, all over arbitrary-precision rationals (``fractions.Fraction``):

  Polynomial        sparse multivariate polynomial in ``m`` ambient variables,
                    stored as a dict mapping exponent tuples to nonzero
                    coefficients.
  SpherePolynomial  residue class modulo the sphere relation
                    x_1^2 + ... + x_m^2 - 1, kept in a unique normal form in
                    which the last variable never appears with exponent >= 2.
  SphereFunction    quotient of two sphere polynomials.  Internally the
                    denominator is carried as ``base ** exp`` so that repeated
                    differentiation does not square denominators; the public
                    ``numerator``/``denominator`` view is unchanged.

Everything is immutable and exact: no floating point, no precision loss.
Equality of quotients is decided by cross-multiplication, which is valid
because the sphere relation is irreducible over the rationals (the quotient
ring is an integral domain for every m >= 2).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Mapping, Sequence

Exponents = tuple[int, ...]
RationalLike = Fraction | int

_TERM_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def term_order_key(exponents: Exponents) -> tuple[int, Exponents]:
    """Graded-lexicographic sort key (total degree first, then exponents)."""
    return (sum(exponents), exponents)


class Polynomial:
    """Sparse exact-rational polynomial in ``m`` ambient variables.

    ``terms`` maps exponent tuples of length ``m`` to nonzero Fractions; the
    zero polynomial is the empty dict.  Instances are immutable.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[Exponents, RationalLike] | None = None):
        if m < 1:
            raise ValueError(f"need at least one variable, got m={m}")
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != m:
                raise ValueError(f"exponent tuple {exps} has length {len(exps)}, expected {m}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = _as_fraction(coeff)
            if c != 0:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if clean[exps] == 0:
                    del clean[exps]
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _make(cls, m: int, terms: dict[Exponents, Fraction]) -> "Polynomial":
        # Trusted constructor: terms already canonical (no zeros, right length).
        self = object.__new__(cls)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "terms", terms)
        return self

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Polynomial is immutable")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, m: int) -> "Polynomial":
        return cls._make(m, {})

    @classmethod
    def one(cls, m: int) -> "Polynomial":
        return cls.constant(m, 1)

    @classmethod
    def constant(cls, m: int, value: RationalLike) -> "Polynomial":
        c = _as_fraction(value)
        if c == 0:
            return cls._make(m, {})
        return cls._make(m, {(0,) * m: c})

    @classmethod
    def variable(cls, m: int, index: int) -> "Polynomial":
        """The polynomial x_index, with 1-based index as in x1..xm."""
        if not 1 <= index <= m:
            raise IndexError(f"variable index {index} out of range 1..{m}")
        exps = [0] * m
        exps[index - 1] = 1
        return cls._make(m, {tuple(exps): Fraction(1)})

    @classmethod
    def radius_squared(cls, m: int) -> "Polynomial":
        """x_1^2 + ... + x_m^2."""
        terms = {}
        for i in range(m):
            exps = [0] * m
            exps[i] = 2
            terms[tuple(exps)] = Fraction(1)
        return cls._make(m, terms)

    # ------------------------------------------------------------------
    # structure
    # ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.m, Fraction(0))

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1 by convention."""
        if not self.terms:
            return -1
        return max(sum(exps) for exps in self.terms)

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def is_homogeneous(self) -> bool:
        degrees = {sum(exps) for exps in self.terms}
        return len(degrees) <= 1

    def content(self) -> Fraction:
        """Positive rational c with self = c * (primitive integer polynomial)."""
        if not self.terms:
            return Fraction(1)
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the graded-lex leading term (0 for the zero polynomial)."""
        if not self.terms:
            return Fraction(0)
        return self.terms[max(self.terms, key=term_order_key)]

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------
    def _check_dim(self, other: "Polynomial") -> None:
        if self.m != other.m:
            raise ValueError(f"ambient dimension mismatch: {self.m} vs {other.m}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_dim(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps, Fraction(0)) + c
            if s == 0:
                out.pop(exps, None)
            else:
                out[exps] = s
        return Polynomial._make(self.m, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial._make(self.m, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_dim(other)
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exps, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(exps, None)
                else:
                    out[exps] = s
        return Polynomial._make(self.m, out)

    def __rmul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, value: RationalLike) -> "Polynomial":
        c = _as_fraction(value)
        if c == 0:
            return Polynomial._make(self.m, {})
        return Polynomial._make(self.m, {e: k * c for e, k in self.terms.items()})

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.one(self.m)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.m, frozenset(self.terms.items())))

    def __reduce__(self):
        return (_rebuild_polynomial, (self.m, tuple(self.terms.items())))

    # ------------------------------------------------------------------
    # calculus and evaluation
    # ------------------------------------------------------------------
    def partial(self, index: int) -> "Polynomial":
        """Formal partial derivative with respect to x_index (1-based)."""
        if not 1 <= index <= self.m:
            raise IndexError(f"variable index {index} out of range 1..{self.m}")
        i = index - 1
        out: dict[Exponents, Fraction] = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            new = list(exps)
            new[i] = e - 1
            key = tuple(new)
            s = out.get(key, Fraction(0)) + c * e
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return Polynomial._make(self.m, out)

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        """Exact value at a rational point."""
        if len(point) != self.m:
            raise ValueError(f"point has length {len(point)}, expected {self.m}")
        pt = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(pt, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def evaluate_float(self, point: Sequence[float]) -> float:
        if len(point) != self.m:
            raise ValueError(f"point has length {len(point)}, expected {self.m}")
        total = 0.0
        for exps, c in self.terms.items():
            term = float(c)
            for v, e in zip(point, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def substitute_linear(self, matrix: Sequence[Sequence[RationalLike]]) -> "Polynomial":
        """Substitute x_i -> sum_j matrix[i][j] * x_j (an exact linear change of variables)."""
        if len(matrix) != self.m or any(len(row) != self.m for row in matrix):
            raise ValueError(f"substitution matrix must be {self.m}x{self.m}")
        images = []
        for row in matrix:
            terms: dict[Exponents, Fraction] = {}
            for j, entry in enumerate(row):
                c = _as_fraction(entry)
                if c != 0:
                    exps = [0] * self.m
                    exps[j] = 1
                    terms[tuple(exps)] = c
            images.append(Polynomial._make(self.m, terms))
        result = Polynomial.zero(self.m)
        # Cache powers of each image since exponents repeat across terms.
        power_cache: dict[tuple[int, int], Polynomial] = {}

        def image_power(i: int, e: int) -> Polynomial:
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = images[i] ** e
            return power_cache[key]

        for exps, c in self.terms.items():
            term = Polynomial.constant(self.m, c)
            for i, e in enumerate(exps):
                if e:
                    term = term * image_power(i, e)
            result = result + term
        return result

    # ------------------------------------------------------------------
    # canonical text form
    # ------------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=term_order_key, reverse=True):
            c = self.terms[exps]
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            if factors:
                parts.append(f"{c} * " + " ".join(factors))
            else:
                parts.append(str(c))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial(m={self.m}, {self})"

    @classmethod
    def parse(cls, text: str, m: int) -> "Polynomial":
        """Inverse of ``str``: parse ``c * x1^a1 x2^a2`` fragments joined by ``+``."""
        text = text.strip()
        if text == "0":
            return cls.zero(m)
        terms: dict[Exponents, Fraction] = {}
        for fragment in text.split(" + "):
            pieces = fragment.split(" * ")
            if len(pieces) == 1:
                coeff_text, factor_text = pieces[0], ""
            elif len(pieces) == 2:
                coeff_text, factor_text = pieces
            else:
                raise ValueError(f"malformed term {fragment!r}")
            coeff = Fraction(coeff_text.strip())
            exps = [0] * m
            if factor_text:
                for factor in factor_text.split():
                    match = _TERM_RE.match(factor)
                    if not match:
                        raise ValueError(f"malformed variable factor {factor!r}")
                    index = int(match.group(1))
                    if not 1 <= index <= m:
                        raise ValueError(f"variable x{index} out of range for m={m}")
                    exps[index - 1] += int(match.group(2) or 1)
            key = tuple(exps)
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return cls(m, terms)


def laplace_euclid(p: Polynomial) -> Polynomial:
    """Sum of second partials, acting on raw polynomials."""
    out = Polynomial.zero(p.m)
    for i in range(1, p.m + 1):
        out = out + p.partial(i).partial(i)
    return out


def euler_operator(p: Polynomial) -> Polynomial:
    """Radial grading operator: sum_i x_i * d/dx_i.  Multiplies degree-d terms by d."""
    out: dict[Exponents, Fraction] = {}
    for exps, c in p.terms.items():
        d = sum(exps)
        if d:
            out[exps] = c * d
    return Polynomial._make(p.m, out)


# ----------------------------------------------------------------------
# the quotient ring
# ----------------------------------------------------------------------


class SpherePolynomial:
    """Residue class of a polynomial modulo x_1^2 + ... + x_m^2 - 1.

    The stored representative is the unique normal form with exponent of the
    last variable <= 1 in every term, so equality is plain dict equality.
    """

    __slots__ = ("poly",)

    def __init__(self, poly: Polynomial):
        object.__setattr__(self, "poly", _reduce_terms(poly))

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("SpherePolynomial is immutable")

    @classmethod
    def _trusted(cls, poly: Polynomial) -> "SpherePolynomial":
        # Caller guarantees poly is already in normal form.
        self = object.__new__(cls)
        object.__setattr__(self, "poly", poly)
        return self

    @classmethod
    def zero(cls, m: int) -> "SpherePolynomial":
        return cls._trusted(Polynomial.zero(m))

    @classmethod
    def one(cls, m: int) -> "SpherePolynomial":
        return cls._trusted(Polynomial.one(m))

    @classmethod
    def constant(cls, m: int, value: RationalLike) -> "SpherePolynomial":
        return cls._trusted(Polynomial.constant(m, value))

    @classmethod
    def variable(cls, m: int, index: int) -> "SpherePolynomial":
        return cls._trusted(Polynomial.variable(m, index))

    @property
    def m(self) -> int:
        return self.poly.m

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_constant(self) -> bool:
        return self.poly.is_constant()

    def constant_value(self) -> Fraction:
        return self.poly.constant_value()

    def degree(self) -> int:
        return self.poly.degree()

    def content(self) -> Fraction:
        return self.poly.content()

    def leading_coefficient(self) -> Fraction:
        return self.poly.leading_coefficient()

    def __add__(self, other: "SpherePolynomial") -> "SpherePolynomial":
        if not isinstance(other, SpherePolynomial):
            return NotImplemented
        # Normal forms are closed under addition.
        return SpherePolynomial._trusted(self.poly + other.poly)

    def __sub__(self, other: "SpherePolynomial") -> "SpherePolynomial":
        if not isinstance(other, SpherePolynomial):
            return NotImplemented
        return SpherePolynomial._trusted(self.poly - other.poly)

    def __neg__(self) -> "SpherePolynomial":
        return SpherePolynomial._trusted(-self.poly)

    def __mul__(self, other) -> "SpherePolynomial":
        if isinstance(other, (int, Fraction)):
            return SpherePolynomial._trusted(self.poly.scale(other))
        if not isinstance(other, SpherePolynomial):
            return NotImplemented
        return SpherePolynomial(self.poly * other.poly)

    def __rmul__(self, other) -> "SpherePolynomial":
        if isinstance(other, (int, Fraction)):
            return SpherePolynomial._trusted(self.poly.scale(other))
        return NotImplemented

    def scale(self, value: RationalLike) -> "SpherePolynomial":
        return SpherePolynomial._trusted(self.poly.scale(value))

    def __pow__(self, exponent: int) -> "SpherePolynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = SpherePolynomial.one(self.m)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpherePolynomial):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    def __reduce__(self):
        return (SpherePolynomial._trusted, (self.poly,))

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        """Exact value at a rational point of the sphere."""
        require_on_sphere(point)
        if len(point) != self.m:
            raise ValueError(f"point has length {len(point)}, expected {self.m}")
        return self.poly.evaluate(point)

    def evaluate_float(self, point: Sequence[float]) -> float:
        return self.poly.evaluate_float(point)

    def __str__(self) -> str:
        return str(self.poly)

    def __repr__(self) -> str:
        return f"SpherePolynomial(m={self.m}, {self})"


def reduce_mod_sphere(p: Polynomial) -> SpherePolynomial:
    """Normal form of a raw polynomial modulo the sphere relation.

    Every x_m^2 is rewritten as 1 - x_1^2 - ... - x_{m-1}^2, so the result has
    last-variable exponent <= 1 in every term.  The map is an idempotent ring
    homomorphism onto normal forms.
    """
    if p.m < 2:
        raise ValueError("the sphere relation needs at least two variables")
    return SpherePolynomial(p)


def _reduce_terms(p: Polynomial) -> Polynomial:
    m = p.m
    if m < 2:
        raise ValueError("the sphere relation needs at least two variables")
    if all(exps[-1] <= 1 for exps in p.terms):
        return p
    # complement = 1 - x_1^2 - ... - x_{m-1}^2, the image of x_m^2.
    complement = Polynomial.one(m) - (
        Polynomial.radius_squared(m) - Polynomial.variable(m, m) ** 2
    )
    comp_powers: dict[int, Polynomial] = {0: Polynomial.one(m)}

    def comp_power(q: int) -> Polynomial:
        if q not in comp_powers:
            comp_powers[q] = comp_power(q - 1) * complement
        return comp_powers[q]

    out = Polynomial.zero(m)
    passthrough: dict[Exponents, Fraction] = {}
    for exps, c in p.terms.items():
        e_last = exps[-1]
        if e_last <= 1:
            s = passthrough.get(exps, Fraction(0)) + c
            if s == 0:
                passthrough.pop(exps, None)
            else:
                passthrough[exps] = s
            continue
        q, r = divmod(e_last, 2)
        stem = list(exps)
        stem[-1] = r
        mono = Polynomial._make(m, {tuple(stem): c})
        out = out + mono * comp_power(q)
    return out + Polynomial._make(m, passthrough)


def require_on_sphere(point: Sequence[RationalLike]) -> list[Fraction]:
    """Check sum of squares equals 1 exactly; returns the point as Fractions."""
    pt = [_as_fraction(v) for v in point]
    if sum(v * v for v in pt) != 1:
        raise ValueError(f"point {tuple(str(v) for v in pt)} is not on the unit sphere")
    return pt


# ----------------------------------------------------------------------
# the fraction field
# ----------------------------------------------------------------------


class SphereFunction:
    """Quotient of two sphere polynomials.

    The value is ``num / base**exp``.  Carrying the denominator as an explicit
    power keeps iterated derivations cheap: a derivation raises ``exp`` by one
    instead of squaring a materialized denominator.  Quotients are *not*
    reduced to lowest terms; only rational content is cancelled (the base is
    kept primitive with positive leading coefficient).  Equality is decided by
    cross-multiplication.
    """

    __slots__ = ("num", "base", "exp")

    def __init__(self, numerator: SpherePolynomial, denominator: SpherePolynomial):
        if not isinstance(numerator, SpherePolynomial) or not isinstance(
            denominator, SpherePolynomial
        ):
            raise TypeError("numerator and denominator must be SpherePolynomial values")
        if numerator.m != denominator.m:
            raise ValueError(
                f"ambient dimension mismatch: {numerator.m} vs {denominator.m}"
            )
        if denominator.is_zero():
            raise ZeroDivisionError("denominator is zero in the quotient ring")
        num, base, exp = _normalize(numerator, denominator, 1)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("SphereFunction is immutable")

    @classmethod
    def _make(cls, num: SpherePolynomial, base: SpherePolynomial, exp: int) -> "SphereFunction":
        num, base, exp = _normalize(num, base, exp)
        self = object.__new__(cls)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exp", exp)
        return self

    @classmethod
    def from_polynomial(cls, p: SpherePolynomial) -> "SphereFunction":
        return cls._make(p, SpherePolynomial.one(p.m), 0)

    @classmethod
    def constant(cls, m: int, value: RationalLike) -> "SphereFunction":
        return cls.from_polynomial(SpherePolynomial.constant(m, value))

    @classmethod
    def zero(cls, m: int) -> "SphereFunction":
        return cls.constant(m, 0)

    @property
    def m(self) -> int:
        return self.num.m

    @property
    def numerator(self) -> SpherePolynomial:
        return self.num

    @property
    def denominator(self) -> SpherePolynomial:
        return self.base**self.exp

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.exp == 0

    def _check_dim(self, other: "SphereFunction") -> None:
        if self.m != other.m:
            raise ValueError(f"ambient dimension mismatch: {self.m} vs {other.m}")

    def __add__(self, other: "SphereFunction") -> "SphereFunction":
        if not isinstance(other, SphereFunction):
            return NotImplemented
        self._check_dim(other)
        if self.exp == 0:
            if other.exp == 0:
                return SphereFunction._make(
                    self.num + other.num, SpherePolynomial.one(self.m), 0
                )
            return SphereFunction._make(
                self.num * other.base**other.exp + other.num, other.base, other.exp
            )
        if other.exp == 0:
            return other + self
        if self.base == other.base:
            e = max(self.exp, other.exp)
            num = self.num * self.base ** (e - self.exp) + other.num * self.base ** (
                e - other.exp
            )
            return SphereFunction._make(num, self.base, e)
        lhs_den = self.base**self.exp
        rhs_den = other.base**other.exp
        return SphereFunction._make(
            self.num * rhs_den + other.num * lhs_den, lhs_den * rhs_den, 1
        )

    def __sub__(self, other: "SphereFunction") -> "SphereFunction":
        if not isinstance(other, SphereFunction):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "SphereFunction":
        return SphereFunction._make(-self.num, self.base, self.exp)

    def __mul__(self, other) -> "SphereFunction":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SphereFunction):
            return NotImplemented
        self._check_dim(other)
        if self.exp == 0:
            return SphereFunction._make(self.num * other.num, other.base, other.exp)
        if other.exp == 0:
            return SphereFunction._make(self.num * other.num, self.base, self.exp)
        if self.base == other.base:
            return SphereFunction._make(
                self.num * other.num, self.base, self.exp + other.exp
            )
        return SphereFunction._make(
            self.num * other.num, self.base**self.exp * other.base**other.exp, 1
        )

    def __rmul__(self, other) -> "SphereFunction":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, value: RationalLike) -> "SphereFunction":
        return SphereFunction._make(self.num.scale(value), self.base, self.exp)

    def __truediv__(self, other: "SphereFunction") -> "SphereFunction":
        if not isinstance(other, SphereFunction):
            return NotImplemented
        self._check_dim(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        num = self.num * other.base**other.exp
        den = other.num * self.base**self.exp
        return SphereFunction._make(num, den, 1)

    def square(self) -> "SphereFunction":
        return self * self

    def __eq__(self, other) -> bool:
        if not isinstance(other, SphereFunction):
            return NotImplemented
        self._check_dim(other)
        if self.base == other.base:
            lo, hi = (self, other) if self.exp <= other.exp else (other, self)
            return lo.num * lo.base ** (hi.exp - lo.exp) == hi.num
        return self.num * other.denominator == other.num * self.denominator

    __hash__ = None  # equality is semantic (cross-multiplication), so no hashing

    def __reduce__(self):
        return (SphereFunction._make, (self.num, self.base, self.exp))

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        """Exact value at a rational sphere point; rejects denominator zeros."""
        pt = require_on_sphere(point)
        if len(pt) != self.m:
            raise ValueError(f"point has length {len(pt)}, expected {self.m}")
        den_val = self.base.poly.evaluate(pt) ** self.exp
        if den_val == 0:
            raise ZeroDivisionError(
                f"denominator vanishes at {tuple(str(v) for v in pt)}"
            )
        return self.num.poly.evaluate(pt) / den_val

    def evaluate_float(self, point: Sequence[float]) -> float:
        den_val = self.base.poly.evaluate_float(point) ** self.exp
        return self.num.poly.evaluate_float(point) / den_val

    def substitute_linear(self, matrix: Sequence[Sequence[RationalLike]]) -> "SphereFunction":
        """Exact linear change of variables applied to numerator and denominator."""
        num = SpherePolynomial(self.num.poly.substitute_linear(matrix))
        base = SpherePolynomial(self.base.poly.substitute_linear(matrix))
        return SphereFunction._make(num, base, self.exp)

    def __str__(self) -> str:
        if self.exp == 0:
            return str(self.num)
        return f"({self.num}) / ({self.base})^{self.exp}"

    def __repr__(self) -> str:
        return f"SphereFunction(m={self.m}, {self})"


def _rebuild_polynomial(m: int, items) -> Polynomial:
    return Polynomial._make(m, dict(items))


def _normalize(
    num: SpherePolynomial, base: SpherePolynomial, exp: int
) -> tuple[SpherePolynomial, SpherePolynomial, int]:
    """Canonical (num, base, exp): zero and constant denominators collapse to
    exp 0; otherwise the base is primitive with positive leading coefficient."""
    if exp < 0:
        raise ValueError("denominator exponent must be nonnegative")
    m = num.m
    if base.is_zero():
        raise ZeroDivisionError("denominator is zero in the quotient ring")
    if num.is_zero():
        return SpherePolynomial.zero(m), SpherePolynomial.one(m), 0
    if exp == 0:
        return num, SpherePolynomial.one(m), 0
    if base.is_constant():
        return num.scale(1 / base.constant_value() ** exp), SpherePolynomial.one(m), 0
    content = base.content()
    if base.leading_coefficient() < 0:
        content = -content
    if content != 1:
        base = base.scale(1 / content)
        num = num.scale(1 / content**exp)
    return num, base, exp


def sphere_point_from_plane(u: RationalLike, v: RationalLike) -> tuple[Fraction, Fraction, Fraction]:
    """Exact sphere point (2u, 2v, u^2+v^2-1) / (u^2+v^2+1) from a rational plane point.

    The image omits only the north pole (0, 0, 1); the plane origin maps to the
    south pole.
    """
    uf, vf = _as_fraction(u), _as_fraction(v)
    s = uf * uf + vf * vf
    d = s + 1
    return (2 * uf / d, 2 * vf / d, (s - 1) / d)


def sample_plane_points(count: int, seed: int) -> list[tuple[Fraction, Fraction]]:
    """Deterministic rational plane points with |u|, |v| <= 1, used for sphere sampling.

    Coordinates have small denominators so downstream exact evaluation stays
    cheap.  Distinctness is enforced so sample sets never repeat a point.
    """
    import random

    rng = random.Random(seed)
    points: list[tuple[Fraction, Fraction]] = []
    seen = set()
    while len(points) < count:
        den = rng.randint(2, 40)
        u = Fraction(rng.randint(-den, den), den)
        den2 = rng.randint(2, 40)
        v = Fraction(rng.randint(-den2, den2), den2)
        if (u, v) in seen:
            continue
        seen.add((u, v))
        points.append((u, v))
    return points


def sample_cap_points(count: int, seed: int) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Deterministic exact sphere points inside the cap around the south pole.

    Plane parameters are bounded by 1 in each coordinate, so every point stays
    within geodesic distance 2*atan(sqrt(2)) < 2 of the south pole and well
    away from the excluded north pole.
    """
    return [sphere_point_from_plane(u, v) for u, v in sample_plane_points(count, seed)]
