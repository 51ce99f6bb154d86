import numpy as np
import pytest

from thermalquench.series import (
    convergence_guard,
    nth_order_term,
    partial_sum,
    shift_ratio_envelope,
    verify_resummation,
)
from thermalquench.spectral import TestPacket as Packet
from thermalquench.spectral import QuadratureSpec, adiabatic, adiabatic_classical, pair
from thermalquench.thermal import ThermalParams, bose_coefficient, bose_derivative, dispersion

BENCH = ThermalParams(beta=1.0, m_sq=1.0, m0_sq=1.0, lam=0.1)
FREE = ThermalParams(beta=1.0, m_sq=1.0, m0_sq=1.0, lam=0.0)
F = Packet(k_center=1.0, k_width=0.5, t_center=2.0, t_width=0.3)
G = Packet(k_center=1.0, k_width=0.5, t_center=2.5, t_width=0.3)
QUAD = QuadratureSpec()


def manual_first_order(params, f, g, quad):
    """The first-order term assembled from scratch: per momentum, the weight
    -beta * shift/(eps_lambda+eps) * b_plus * b_minus on each branch."""
    k, w = quad.radial_rule(f, g)
    d = dispersion(k, params)
    bp = bose_coefficient(+1, params.beta, d.eps)
    bm = bose_coefficient(-1, params.beta, d.eps)
    weight = w * 4.0 * np.pi * k * k / (2.0 * d.eps_lambda)
    factor = -params.beta * params.mass_shift / (d.eps_lambda + d.eps) * bp * bm
    branches = f.freq_component(d.eps_lambda, k) * g.freq_component(-d.eps_lambda, k)
    branches = branches + f.freq_component(-d.eps_lambda, k) * g.freq_component(d.eps_lambda, k)
    return complex(np.sum(weight * factor * branches))


class TestNthOrderTerm:
    def test_first_order_sign_frozen(self):
        term = nth_order_term(1, BENCH, F, G, QUAD)
        assert term.value == pytest.approx(manual_first_order(BENCH, F, G, QUAD), rel=1e-14)
        assert term.value.real < 0.0  # the first correction lowers the pairing

    def test_free_terms_vanish(self):
        for n in (1, 3, 5):
            assert nth_order_term(n, FREE, F, G, QUAD).value == 0.0

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_dual_path_agreement(self, n):
        a = nth_order_term(n, BENCH, F, G, QUAD, path="beta-derivative").value
        b = nth_order_term(n, BENCH, F, G, QUAD, path="descent-sum").value
        assert abs(a - b) <= 1e-10 * max(abs(a), abs(b))

    @pytest.mark.parametrize("n", [2, 4, 7])
    def test_symmetrization_is_identity(self, n):
        sym = nth_order_term(n, BENCH, F, G, QUAD, path="descent-sum", symmetrized=True)
        raw = nth_order_term(n, BENCH, F, G, QUAD, path="descent-sum", symmetrized=False)
        assert sym.value == pytest.approx(raw.value, rel=1e-14)
        assert np.allclose(sym.per_k, raw.per_k)

    def test_simplex_normalization_scales_with_beta(self):
        # isolate the beta^n/n! factor: doubling beta must contribute 2^n
        # on top of the derivative tower's own beta dependence, per node
        n = 3
        doubled = ThermalParams(beta=2.0, m_sq=1.0, m0_sq=1.0, lam=0.1)
        term_1 = nth_order_term(n, BENCH, F, G, QUAD)
        term_2 = nth_order_term(n, doubled, F, G, QUAD)
        k, _ = QUAD.radial_rule(F, G)
        eps = dispersion(k, BENCH).eps
        deriv_ratio = bose_derivative(n, +1, 2.0, eps) / bose_derivative(n, +1, 1.0, eps)
        expected = 2.0**n * deriv_ratio
        mask = np.abs(term_1.per_k) > 1e-300
        assert np.allclose((term_2.per_k / term_1.per_k)[mask], expected[mask], rtol=1e-12)

    def test_order_bounds(self):
        with pytest.raises(ValueError):
            nth_order_term(0, BENCH, F, G, QUAD)
        with pytest.raises(ValueError):
            nth_order_term(17, BENCH, F, G, QUAD)
        with pytest.raises(ValueError):
            nth_order_term(2, BENCH, F, G, QUAD, path="sideways")

    def test_successive_ratios_below_envelope(self):
        env = shift_ratio_envelope(BENCH, F, G, QUAD)
        values = [nth_order_term(n, BENCH, F, G, QUAD).value for n in range(1, 9)]
        for a, b in zip(values, values[1:]):
            assert abs(b / a) <= 1.5 * env


class TestPartialSum:
    def test_zeroth_term(self):
        assert partial_sum(0, BENCH, F, G, QUAD) == pair(adiabatic_classical(BENCH), F, G, QUAD)

    def test_converges_to_shifted_thermal_state(self):
        closed = pair(adiabatic(BENCH), F, G, QUAD)
        total = partial_sum(8, BENCH, F, G, QUAD)
        assert abs(total - closed) / abs(closed) <= 1e-8

    def test_gap_monotone_in_order(self):
        closed = pair(adiabatic(BENCH), F, G, QUAD)
        gaps = [
            abs(partial_sum(n, BENCH, F, G, QUAD) - closed) / abs(closed) for n in range(0, 7)
        ]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))

    def test_remainder_bounded_by_first_omitted_term(self):
        closed = pair(adiabatic(BENCH), F, G, QUAD)
        for n in range(0, 7):
            remainder = abs(partial_sum(n, BENCH, F, G, QUAD) - closed)
            omitted = abs(nth_order_term(n + 1, BENCH, F, G, QUAD).value)
            assert remainder <= 2.0 * omitted

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            partial_sum(-1, BENCH, F, G, QUAD)


class TestConvergenceGuard:
    def test_bench_inside(self):
        ok, max_shift, limit = convergence_guard(BENCH, F, G, QUAD)
        assert ok and max_shift < limit
        assert limit == pytest.approx(1.0)  # beta is the binding constraint here

    def test_strong_coupling_outside(self):
        strong = ThermalParams(beta=1.0, m_sq=1.0, m0_sq=1.0, lam=8.0)
        ok, max_shift, limit = convergence_guard(strong, F, G, QUAD)
        assert not ok and max_shift >= limit


class TestVerifyResummation:
    def test_bench_report_passes(self):
        report = verify_resummation(BENCH, F, G, N=8, tol=1e-8, quad=QUAD)
        assert report.verdict == "pass"
        assert report.final_rel_gap <= 1e-8
        assert report.max_dual_path_dev <= 1e-10
        gaps = [r.rel_gap_to_closed_form for r in report.rows]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))

    def test_free_case_trivial(self):
        report = verify_resummation(FREE, F, G, N=0, tol=1e-12, quad=QUAD)
        assert report.verdict == "pass"
        assert report.final_rel_gap == 0.0

    def test_radius_violation_is_a_verdict_not_a_failure(self):
        strong = ThermalParams(beta=1.0, m_sq=1.0, m0_sq=1.0, lam=8.0)
        report = verify_resummation(strong, F, G, N=4, tol=1e-8, quad=QUAD)
        assert report.verdict == "radius-violated"
        assert not report.passed

    def test_report_dict_round_trips_through_json(self):
        import json

        report = verify_resummation(BENCH, F, G, N=3, tol=1e-6, quad=QUAD)
        doc = json.loads(json.dumps(report.to_dict(), sort_keys=True))
        assert doc["verdict"] == "pass"
        assert len(doc["orders"]) == 3
        assert doc["orders"][0]["order"] == 1
