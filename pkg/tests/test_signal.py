"""Tests for trigonometric polynomials, norms, and the corpus."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracsmooth import InvalidArgumentError, NormParams, TrigPoly, corpus
from fracsmooth.signal import evaluate, from_samples, grid_values, lp_norm

PI = math.pi


def e_n(n):
    return corpus("exponential", n)


class TestTrigPoly:
    def test_coeff_vector_length_enforced(self):
        with pytest.raises(InvalidArgumentError):
            TrigPoly(2, np.ones(4))

    def test_negative_degree_rejected(self):
        with pytest.raises(InvalidArgumentError):
            TrigPoly(-1, np.ones(1))

    def test_nonfinite_coeffs_rejected(self):
        with pytest.raises(InvalidArgumentError):
            TrigPoly(0, np.array([np.nan]))

    def test_freqs_and_coeff_accessor(self):
        f = TrigPoly(2, np.arange(5, dtype=complex))
        assert list(f.freqs) == [-2, -1, 0, 1, 2]
        assert f.coeff(-2) == 0.0
        assert f.coeff(2) == 4.0
        assert f.coeff(7) == 0.0  # outside the band

    def test_is_real_flag(self):
        assert corpus("abs_sin_truncated", 4).is_real
        assert corpus("random_smooth", 8, seed=1).is_real
        assert not e_n(1).is_real

    def test_arithmetic(self):
        f = e_n(1) + e_n(3)
        assert f.degree == 3
        assert f.coeff(1) == 1.0 and f.coeff(3) == 1.0
        g = f - e_n(1)
        assert g.coeff(1) == 0.0
        h = 2.5 * e_n(2)
        assert h.coeff(2) == 2.5


class TestLpNorm:
    @pytest.mark.parametrize("p", [0.5, 1.0, 2.0, math.inf])
    def test_single_mode_has_unit_norm(self, p):
        # |e^{inx}| = 1 identically
        assert lp_norm(e_n(4), NormParams(p=p)) == pytest.approx(1.0, abs=1e-12)

    def test_constant(self):
        f = TrigPoly(0, np.array([3.0 - 4.0j]))
        assert lp_norm(f, NormParams(p=2.0)) == pytest.approx(5.0, rel=1e-13)

    def test_two_cosine_parseval(self):
        f = TrigPoly(1, np.array([1.0, 0.0, 1.0], dtype=complex))  # 2cos x
        assert lp_norm(f, NormParams(p=2.0)) == pytest.approx(math.sqrt(2.0), rel=1e-12)

    def test_parseval_on_corpus(self, corpus_members):
        for fid, f in corpus_members:
            direct = lp_norm(f, NormParams(p=2.0)) ** 2
            parseval = float(np.sum(np.abs(f.coeffs) ** 2))
            assert direct == pytest.approx(parseval, rel=1e-10), fid

    def test_oversampling_stability(self):
        # smooth members: doubling the sampling factor is a no-op at
        # the documented 1e-6 level (measured ~1e-15)
        for f in (e_n(3), corpus("random_smooth", 8, seed=1)):
            for p in (1.0, 2.0, math.inf):
                refine = math.isinf(p)
                a = lp_norm(f, NormParams(p=p, oversample=8, refine=refine))
                b = lp_norm(f, NormParams(p=p, oversample=16, refine=refine))
                assert abs(a - b) <= 1e-6 * a

    def test_invalid_p_rejected(self):
        with pytest.raises(InvalidArgumentError):
            NormParams(p=0.0)
        with pytest.raises(InvalidArgumentError):
            NormParams(p=-2.0)

    def test_p1_is_min_of_one_and_p(self):
        assert NormParams(p=0.5).p1 == 0.5
        assert NormParams(p=3.0).p1 == 1.0
        assert NormParams(p=math.inf).p1 == 1.0


@settings(max_examples=100, deadline=None)
@given(re=st.floats(-10, 10), im=st.floats(-10, 10),
       p=st.sampled_from([0.5, 1.0, 2.0, math.inf]))
def test_norm_homogeneity(re, im, p):
    """lp_norm(c*f, p) = |c| * lp_norm(f, p), including the p=1/2 quasi-norm."""
    c = complex(re, im)
    f = corpus("random_smooth", 6, seed=9)
    base = lp_norm(f, NormParams(p=p))
    scaled = lp_norm(c * f, NormParams(p=p))
    assert scaled == pytest.approx(abs(c) * base, rel=1e-12, abs=1e-12)


class TestEvaluate:
    def test_single_mode_endpoints(self):
        assert evaluate(e_n(1), [0.0])[0] == pytest.approx(1.0)
        assert evaluate(e_n(1), [PI])[0] == pytest.approx(-1.0, abs=1e-15)

    def test_against_per_term_summation(self):
        rng = np.random.default_rng(3)
        f = TrigPoly(5, rng.normal(size=11) + 1j * rng.normal(size=11))
        xs = rng.uniform(0.0, 2 * PI, size=16)
        naive = np.array([sum(f.coeff(k) * np.exp(1j * k * x)
                              for k in range(-5, 6)) for x in xs])
        assert np.max(np.abs(evaluate(f, xs) - naive)) < 1e-12

    def test_grid_values_match_evaluate(self):
        f = corpus("sawtooth_truncated", 6)
        n = 32
        xs = 2 * PI * np.arange(n) / n
        assert np.max(np.abs(grid_values(f, n) - evaluate(f, xs))) < 1e-12


class TestFromSamples:
    def test_single_mode_recovery(self):
        xs = 2 * PI * np.arange(8) / 8
        f = from_samples(np.exp(1j * xs))
        assert f.degree == 3
        assert f.coeff(1) == pytest.approx(1.0)
        assert abs(f.coeff(0)) < 1e-15 and abs(f.coeff(2)) < 1e-15

    def test_constant_samples(self):
        f = from_samples(np.full(7, 2.0 + 0j))
        assert f.coeff(0) == pytest.approx(2.0)
        assert np.sum(np.abs(f.coeffs)) == pytest.approx(2.0)

    def test_round_trip_exact_recovery(self):
        rng = np.random.default_rng(11)
        f = TrigPoly(5, rng.normal(size=11) + 1j * rng.normal(size=11))
        g = from_samples(grid_values(f, 16))
        assert g.degree == 7
        for k in range(-7, 8):
            assert g.coeff(k) == pytest.approx(f.coeff(k), abs=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(InvalidArgumentError):
            from_samples(np.array([]))


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 40), seed=st.integers(0, 2**16))
def test_from_samples_reproduces_samples(n, seed):
    """evaluate(from_samples(v)) returns v at the sample grid (odd N exact;
    even N exact once the Nyquist line is absent from the data)."""
    rng = np.random.default_rng(seed)
    m = (n - 1) // 2
    f = TrigPoly(m, rng.normal(size=2 * m + 1) + 1j * rng.normal(size=2 * m + 1))
    xs = 2 * PI * np.arange(n) / n
    v = evaluate(f, xs)
    back = evaluate(from_samples(v), xs)
    assert np.max(np.abs(back - v)) < 1e-10 * max(1.0, np.max(np.abs(v)))


class TestCorpus:
    def test_exponential_is_single_mode(self):
        f = corpus("exponential", 3)
        assert f.coeff(3) == 1.0
        assert np.sum(np.abs(f.coeffs)) == 1.0

    def test_negative_mode_index(self):
        f = corpus("exponential", -2)
        assert f.coeff(-2) == 1.0

    def test_abs_sin_coefficients(self):
        # Fourier series of |sin x|: 2/pi - (4/pi) sum cos(2mx)/(4m^2-1)
        f = corpus("abs_sin_truncated", 2)
        assert f.coeff(0) == pytest.approx(2.0 / PI, rel=1e-15)
        assert f.coeff(2) == pytest.approx(-2.0 / (3.0 * PI), rel=1e-15)
        assert f.coeff(1) == 0.0

    def test_abs_sin_against_quadrature(self):
        # numeric Fourier coefficients of |sin| as an independent oracle
        f = corpus("abs_sin_truncated", 4)
        n = 4096
        xs = 2 * PI * np.arange(n) / n
        for k in range(-4, 5):
            ck = np.mean(np.abs(np.sin(xs)) * np.exp(-1j * k * xs))
            assert f.coeff(k) == pytest.approx(ck, abs=1e-6)

    def test_random_smooth_deterministic(self):
        a = corpus("random_smooth", 8, seed=5)
        b = corpus("random_smooth", 8, seed=5)
        assert np.array_equal(a.coeffs, b.coeffs)
        c = corpus("random_smooth", 8, seed=6)
        assert not np.array_equal(a.coeffs, c.coeffs)

    def test_random_smooth_decay_profile(self):
        f = corpus("random_smooth", 12, seed=1)
        for k in range(1, 13):
            assert abs(f.coeff(k)) == pytest.approx((1.0 + k) ** -2.0, rel=1e-12)

    def test_sawtooth_is_sine_series(self):
        f = corpus("sawtooth_truncated", 5)
        # sum sin(kx)/k: purely odd, imaginary coefficient pairs
        for k in range(1, 6):
            assert f.coeff(k) == pytest.approx(-0.5j / k)
        assert f.coeff(0) == 0.0

    def test_unknown_kind(self):
        with pytest.raises(InvalidArgumentError):
            corpus("chirp", 4)

    def test_default_corpus_ids(self, corpus_members):
        assert [fid for fid, _ in corpus_members] == [
            "exp:1", "exp:3", "random:8:1", "random:16:2",
            "sawtooth:8", "abssin:8"]
