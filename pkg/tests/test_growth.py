import math
from fractions import Fraction

import pytest

from sphere_sos.growth import (
    analyze_growth,
    check_mean_monotonicity,
    check_second_derivative_at_zero,
    mean_profile,
    spherical_mean,
)
from sphere_sos.harmonics import planar_combination, stereographic_harmonic
from sphere_sos.polynomials import Polynomial, SphereFunction, SpherePolynomial

SOUTH = (0.0, 0.0, -1.0)


def squared(h):
    return h.value * h.value


class TestSphericalMean:
    def test_constant_function(self):
        one = SphereFunction.constant(3, 1)
        for r in (0.1, 0.7, 1.2):
            assert spherical_mean(one, SOUTH, r, 64) == pytest.approx(1.0, abs=1e-14)

    def test_limit_at_zero_radius(self):
        sq = squared(stereographic_harmonic(1, "re"))
        small = spherical_mean(sq, SOUTH, 1e-5, 64)
        assert abs(small - sq.evaluate_float(SOUTH)) < 1e-9

    def test_closed_form_oracle(self):
        # For h = x1/(1 - x3) the circle mean about the south pole is
        # tan(r/2)^2 / 2 (the pullback is the plane coordinate u).
        sq = squared(stereographic_harmonic(1, "re"))
        for r in (0.2, 0.4, 0.8):
            assert spherical_mean(sq, SOUTH, r, 256) == pytest.approx(
                math.tan(r / 2) ** 2 / 2, rel=1e-12
            )

    def test_quadrature_self_consistency(self):
        for k, part in ((1, "re"), (2, "im"), (3, "re")):
            sq = squared(stereographic_harmonic(k, part))
            for r in (0.3, 0.9):
                m256 = spherical_mean(sq, SOUTH, r, 256)
                m512 = spherical_mean(sq, SOUTH, r, 512)
                assert abs(m256 - m512) < 1e-12

    def test_low_order_rejected(self):
        one = SphereFunction.constant(3, 1)
        with pytest.raises(ValueError):
            spherical_mean(one, SOUTH, 0.5, 4)

    def test_rotation_invariance(self):
        # Rotate by the exact rational orthogonal matrix built from (3,4,5)
        # in the x1 x3 plane; means about the rotated center must agree.
        h = stereographic_harmonic(2, "re")
        sq = squared(h)
        c, s = Fraction(3, 5), Fraction(4, 5)
        rot = [[c, 0, -s], [0, 1, 0], [s, 0, c]]
        inv = [[c, 0, s], [0, 1, 0], [-s, 0, c]]
        rotated = sq.substitute_linear(inv)
        new_center = (
            float(-rot[0][2]),
            float(-rot[1][2]),
            float(-rot[2][2]),
        )  # image of the south pole
        for r in (0.2, 0.6, 1.0):
            a = spherical_mean(sq, SOUTH, r, 128)
            b = spherical_mean(rotated, new_center, r, 128)
            assert abs(a - b) < 1e-12


class TestMonotonicity:
    def test_constant_passes(self):
        means = [1.0] * 10
        ok, idx = check_mean_monotonicity(means)
        assert ok and idx is None

    @pytest.mark.parametrize(
        "k,part", [(0, "re"), (1, "re"), (1, "im"), (2, "re"), (3, "im")]
    )
    def test_family_members_monotone(self, k, part):
        sq = squared(stereographic_harmonic(k, part))
        radii = [1.2 * (i + 1) / 40 for i in range(40)]
        means = mean_profile(sq, SOUTH, radii, 128)
        ok, _ = check_mean_monotonicity(means)
        assert ok

    def test_non_subharmonic_control_flagged(self):
        # f = 1 - x3^2 peaks on the equator; about an equatorial center the
        # mean of f^2 strictly decreases, so the checker must flag it.
        x3 = SpherePolynomial.variable(3, 3)
        f = SphereFunction.from_polynomial(SpherePolynomial.one(3) - x3 * x3)
        sq = f * f
        radii = [1.2 * (i + 1) / 40 for i in range(40)]
        means = mean_profile(sq, (1.0, 0.0, 0.0), radii, 128)
        ok, idx = check_mean_monotonicity(means)
        assert not ok
        assert idx is not None


class TestSecondDerivative:
    def test_constant_both_sides_zero(self):
        one = SphereFunction.constant(3, 1)
        ok, fd, exact = check_second_derivative_at_zero(one, SOUTH)
        assert ok
        assert exact == 0.0
        assert abs(fd) < 1e-9

    def test_flat_profile_families(self):
        # k >= 2 members vanish to high order at the pole: exact side is 0
        # and the finite difference must stay inside the absolute fallback.
        for k in (2, 3, 4):
            sq = squared(stereographic_harmonic(k, "im"))
            ok, fd, exact = check_second_derivative_at_zero(sq, SOUTH)
            assert exact == 0.0
            assert ok, (k, fd)

    def test_degree_one_pullback(self):
        sq = squared(stereographic_harmonic(1, "re"))
        ok, fd, exact = check_second_derivative_at_zero(sq, SOUTH)
        assert ok
        assert exact == pytest.approx(0.25, abs=1e-15)
        assert fd == pytest.approx(0.25, rel=1e-6)

    def test_combined_family_member(self):
        h = planar_combination([(1, "re", 1), (1, "im", 1)])
        sq = squared(h)
        ok, fd, exact = check_second_derivative_at_zero(sq, SOUTH)
        assert ok
        # |grad h|^2 doubles relative to the single-part case
        assert exact == pytest.approx(0.5, abs=1e-15)

    def test_offcenter_reference_value(self):
        # The exact side is evaluated wherever the center sits.
        sq = squared(stereographic_harmonic(2, "re"))
        center = (math.sin(0.4), 0.0, -math.cos(0.4))
        ok, fd, exact = check_second_derivative_at_zero(sq, center)
        assert ok


class TestAnalyzeGrowth:
    def test_full_report_for_family_member(self):
        sq = squared(stereographic_harmonic(2, "im"))
        report = analyze_growth(sq, "stereo:k=2:im", SOUTH, 1.2, 40, 256)
        assert report.monotone
        assert report.second_derivative_ok
        assert report.passed
        assert len(report.radii) == len(report.means) == 40
        assert report.radii[-1] == pytest.approx(1.2)

    def test_grid_validation(self):
        sq = squared(stereographic_harmonic(1, "re"))
        with pytest.raises(ValueError):
            analyze_growth(sq, "x", SOUTH, 1.2, 1, 64)
        with pytest.raises(ValueError):
            analyze_growth(sq, "x", SOUTH, 0.0, 10, 64)

    def test_control_report_fails(self):
        x3 = SpherePolynomial.variable(3, 3)
        f = SphereFunction.from_polynomial(SpherePolynomial.one(3) - x3 * x3)
        report = analyze_growth(f * f, "control", (1.0, 0.0, 0.0), 1.2, 40, 128)
        assert not report.monotone
        assert not report.passed
