"""Tests for the zero set of the kernel curve and the smallest
pathological order."""

import io
import math

import pytest

from fracsmooth import (
    InvalidArgumentError,
    ModulusRequest,
    NormParams,
    QuadConfig,
    ZeroRecord,
    corpus,
    curve_F,
    linearized_modulus,
    read_registry,
    scan_zero_set,
    write_registry,
    y_zeros,
    z_eval,
    z_many,
)

TWO_PI = 2.0 * math.pi


@pytest.fixture(scope="module")
def wide_scan():
    """Every zero with order up to 40 and argument up to 40 pi."""
    return scan_zero_set(40.0, 40.0 * math.pi, 120, 512, beta_min=4.0)


def record_noise(rec):
    """Cancellation floor of one z evaluation at the record's point."""
    _, noise = z_many(rec.beta_k, [rec.t_k], with_noise=True)
    return float(noise[0])


class TestSmallestOrder:
    def test_frozen_location(self, beta0_record):
        r = beta0_record
        assert r.beta_k == pytest.approx(4.843171446205815, abs=1e-9)
        assert r.t_k == pytest.approx(8.478812720585928, abs=1e-9)
        assert r.residual <= 1e-8
        assert r.branch_index == 1

    def test_window_assertions(self, beta0_record):
        r = beta0_record
        assert 4.0 < r.beta_k < 5.0
        assert abs(r.beta_k - 4.85) <= 0.05
        assert r.t_k > TWO_PI
        assert math.pi * (3.0 - 2.0 / r.beta_k) < r.t_k < 3.0 * math.pi

    def test_bracket_encloses_location(self, beta0_record):
        r = beta0_record
        b_lo, b_hi, t_lo, t_hi = r.bracket
        assert b_lo <= r.beta_k <= b_hi
        assert t_lo <= r.t_k <= t_hi
        assert b_hi - b_lo <= 2e-10

    def test_x_sign_change_on_the_shifted_branch(self):
        assert curve_F(4.0) > 0.0 > curve_F(5.0)

    def test_x_along_branch_is_continuous(self):
        assert abs(curve_F(4.5 + 1e-4) - curve_F(4.5)) < 0.01

    def test_branch_function_domain(self):
        with pytest.raises(InvalidArgumentError):
            curve_F(3.0)


class TestYZeros:
    def test_order_one_has_no_crossings(self):
        # y(1, t) = cos t - 1 only touches zero at the lattice
        assert y_zeros(1.0, 0.05, TWO_PI - 0.05, 512) == []
        assert y_zeros(1.0, 0.05, 2.0 * TWO_PI, 700) == []

    def test_order_five_base_period(self):
        want = [0.7341775358277134, 2.236206733067182,
                4.046978574112405, 5.549007771351873]
        got = y_zeros(5.0, 0.05, TWO_PI - 0.05, 512)
        assert len(got) == 4
        for g, w in zip(got, want):
            assert g == pytest.approx(w, abs=1e-7)

    def test_zeros_shift_with_the_period(self):
        base = y_zeros(5.0, 0.05, TWO_PI - 0.05, 512)
        shifted = y_zeros(5.0, 0.05 + TWO_PI, 2.0 * TWO_PI - 0.05, 512)
        assert len(shifted) == len(base)
        for b, s in zip(base, shifted):
            assert s == pytest.approx(b + TWO_PI, abs=1e-7)

    def test_single_zero_on_shifted_branch_window(self):
        got = y_zeros(5.0, math.pi * (3.0 - 2.0 / 5.0), 3.0 * math.pi, 128)
        assert len(got) == 1
        assert got[0] == pytest.approx(8.51939204024677, abs=1e-7)

    def test_validation(self):
        with pytest.raises(InvalidArgumentError):
            y_zeros(5.0, 0.0, 1.0, 64)
        with pytest.raises(InvalidArgumentError):
            y_zeros(5.0, 0.5, 1.0, 1)


class TestScan:
    def test_census(self, wide_scan):
        assert len(wide_scan) == 204
        betas = [r.beta_k for r in wide_scan]
        assert all(b > 4.0 for b in betas)
        assert all(b2 > b1 for b1, b2 in zip(betas, betas[1:]))
        assert all(r.t_k > TWO_PI for r in wide_scan)

    def test_first_orders_frozen(self, wide_scan):
        want = [4.843171446223275, 5.737949090695473, 6.318989957950544]
        for r, w in zip(wide_scan[:3], want):
            assert r.beta_k == pytest.approx(w, abs=1e-8)

    def test_scan_agrees_with_direct_search(self, wide_scan, beta0_record):
        assert wide_scan[0].beta_k == pytest.approx(
            beta0_record.beta_k, abs=1e-9)
        assert wide_scan[0].t_k == pytest.approx(beta0_record.t_k, abs=1e-8)

    def test_residuals_scale_aware(self, wide_scan):
        # below order 16 the strict absolute target holds; beyond it the
        # attainable accuracy is the cancellation floor of the evaluation
        # (amplitudes grow like 2^beta), so the target widens with it
        small = [r for r in wide_scan if r.beta_k <= 16.0]
        assert len(small) == 52
        assert max(r.residual for r in small) <= 1e-8
        for r in wide_scan:
            assert r.residual <= max(1e-8, 64.0 * record_noise(r)), r.beta_k

    def test_residual_stable_under_tighter_quadrature(self, wide_scan):
        tight = QuadConfig(abs_tol=1e-11, max_subdiv=4000)
        for r in wide_scan:
            if r.beta_k > 16.0:
                continue
            requad = abs(z_eval(r.beta_k, r.t_k, tight))
            assert abs(requad - r.residual) < 1e-8, r.beta_k

    def test_linearized_modulus_closes_at_each_record(self, wide_scan):
        # at a zero the linearized modulus of e^(it) degenerates:
        # its value is |z(beta_k, t_k)| / t_k
        e1 = corpus("exponential", 1)
        for r in wide_scan:
            req = ModulusRequest(beta=r.beta_k, h=r.t_k, norm=NormParams(p=2))
            got = linearized_modulus(e1, req)
            if r.beta_k <= 16.0:
                assert got < 1e-7, r.beta_k
            else:
                limit = max(1e-8, 64.0 * record_noise(r)) / r.t_k
                assert got <= limit, r.beta_k

    def test_grid_doubling_is_stable(self):
        coarse = scan_zero_set(8.0, 6.0 * math.pi, 40, 512, beta_min=4.0)
        fine = scan_zero_set(8.0, 6.0 * math.pi, 80, 1024, beta_min=4.0)
        assert len(coarse) == len(fine)
        assert len(coarse) > 0
        for a, b in zip(coarse, fine):
            assert a.beta_k == pytest.approx(b.beta_k, abs=1e-6)
            assert a.t_k == pytest.approx(b.t_k, abs=1e-6)

    def test_no_zeros_at_low_order(self):
        assert scan_zero_set(4.0, 40.0 * math.pi, 40, 256) == []

    def test_validation(self):
        with pytest.raises(InvalidArgumentError):
            scan_zero_set(4.0, 10.0, beta_min=4.0)
        with pytest.raises(InvalidArgumentError):
            scan_zero_set(8.0, 0.0)
        with pytest.raises(InvalidArgumentError):
            scan_zero_set(8.0, 10.0, beta_grid=1)


class TestRegistry:
    RECORDS = [
        ZeroRecord(beta_k=4.85, t_k=8.48, residual=1e-10,
                   bracket=(4.84, 4.86, 8.47, 8.49), branch_index=1),
        ZeroRecord(beta_k=5.74, t_k=9.1, residual=2e-10,
                   bracket=(5.73, 5.75, 9.0, 9.2), branch_index=1),
    ]

    def test_round_trip(self):
        buf = io.StringIO()
        write_registry(buf, self.RECORDS)
        back = read_registry(io.StringIO(buf.getvalue()))
        assert back == self.RECORDS

    def test_bytes_deterministic(self):
        a, b = io.StringIO(), io.StringIO()
        write_registry(a, self.RECORDS)
        write_registry(b, self.RECORDS)
        assert a.getvalue() == b.getvalue()
        assert a.getvalue().endswith("\n")
