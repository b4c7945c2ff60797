#include "qsearch/dynamics.hpp"

#include <algorithm>
#include <numbers>

#include <fmt/format.h>

#include "qsearch/errors.hpp"

namespace qsearch {

namespace {

constexpr Complex kI{0.0, 1.0};

StateVector2 axpy(const StateVector2& y, Complex a, const StateVector2& k) {
    return {y.a_w + a * k.a_w, y.a_r + a * k.a_r};
}

double rabi_norm_of(const SearchParams& params) {
    return pauli_decompose(build_generalized(params)).rabi_norm();
}

}  // namespace

Matrix2 propagator(const Hamiltonian2& h, double t) {
    if (!std::isfinite(t)) throw InvalidParams("evolution time must be finite");
    const PauliCoefficients c = pauli_decompose(h);
    const Complex global = std::exp(-kI * (c.c0 * t));
    const double norm = c.rabi_norm();
    if (norm < kPauliDegeneracy) return global * Matrix2::identity();

    const double angle = norm * t;
    const double nx = c.cx / norm;
    const double ny = c.cy / norm;
    const double nz = c.cz / norm;
    const Matrix2 n_sigma{nz, Complex(nx, -ny), Complex(nx, ny), -nz};
    return global * (Complex(std::cos(angle)) * Matrix2::identity() - (kI * std::sin(angle)) * n_sigma);
}

StateVector2 evolve(const Hamiltonian2& h, const StateVector2& psi0, double t) {
    return propagator(h, t) * psi0;
}

StateVector2 integrate_reference(const Hamiltonian2& h, const StateVector2& psi0, double t,
                                 std::size_t steps) {
    if (steps < kMinReferenceSteps) {
        throw StepCountTooSmall(fmt::format("need at least {} steps, got {}", kMinReferenceSteps, steps));
    }
    if (!std::isfinite(t)) throw InvalidParams("evolution time must be finite");

    // dpsi/dt = -i H psi
    const Matrix2 generator = -kI * h.matrix();
    const double dt = t / static_cast<double>(steps);
    const double initial_norm = psi0.norm();

    StateVector2 psi = psi0;
    for (std::size_t i = 0; i < steps; ++i) {
        const StateVector2 k1 = generator * psi;
        const StateVector2 k2 = generator * axpy(psi, 0.5 * dt, k1);
        const StateVector2 k3 = generator * axpy(psi, 0.5 * dt, k2);
        const StateVector2 k4 = generator * axpy(psi, dt, k3);
        psi.a_w += dt / 6.0 * (k1.a_w + 2.0 * k2.a_w + 2.0 * k3.a_w + k4.a_w);
        psi.a_r += dt / 6.0 * (k1.a_r + 2.0 * k2.a_r + 2.0 * k3.a_r + k4.a_r);
    }

    const double drift = std::abs(psi.norm() - initial_norm);
    if (!(drift <= kMaxNormDrift)) {
        throw NormDrift(fmt::format("norm drifted by {} over {} steps (t = {})", drift, steps, t));
    }
    return psi;
}

double success_probability(const SearchParams& params, double t) {
    const StateVector2 psi = evolve(build_generalized(params), initial_state(params.overlap()), t);
    return std::clamp(psi.target_probability(), 0.0, 1.0);
}

double success_probability_rate(const SearchParams& params, double t) {
    const Hamiltonian2 h = build_generalized(params);
    const StateVector2 psi = evolve(h, initial_state(params.overlap()), t);
    const StateVector2 h_psi = h.matrix() * psi;
    // d|a_w|^2/dt = 2 Re(conj(a_w) * (-i (H psi)_w))
    return 2.0 * (std::conj(psi.a_w) * h_psi.a_w).imag();
}

EvolutionTrace trace_evolution(const SearchParams& params, double t_max, std::size_t samples) {
    if (!std::isfinite(t_max) || t_max < 0.0) {
        throw InvalidParams(fmt::format("t-max must be finite and non-negative, got {}", t_max));
    }
    if (t_max > 0.0 && samples < 2) {
        throw InvalidParams(fmt::format("need at least 2 samples for t-max > 0, got {}", samples));
    }
    if (samples < 1) throw InvalidParams("need at least 1 sample");

    const Hamiltonian2 h = build_generalized(params);
    const StateVector2 psi0 = initial_state(params.overlap());

    EvolutionTrace trace;
    const std::size_t count = t_max == 0.0 ? 1 : samples;
    trace.samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t =
            count == 1 ? 0.0 : t_max * static_cast<double>(i) / static_cast<double>(count - 1);
        const StateVector2 psi = evolve(h, psi0, t);
        trace.samples.push_back({t, psi, psi.target_probability()});
    }
    return trace;
}

double half_rabi_time(const SearchParams& params) {
    const double norm = rabi_norm_of(params);
    if (norm < kDegenerateRabiNorm) {
        throw DegenerateDynamics(fmt::format("Rabi norm {} vanishes; no finite search time", norm));
    }
    return 0.5 * std::numbers::pi / norm;
}

MaximumReport find_first_maximum(const SearchParams& params, std::size_t grid_points) {
    if (grid_points < 3) throw InvalidParams(fmt::format("grid needs at least 3 points, got {}", grid_points));
    const double formula_time = half_rabi_time(params);
    const double period = 2.0 * formula_time;

    const Hamiltonian2 h = build_generalized(params);
    const StateVector2 psi0 = initial_state(params.overlap());
    const Matrix2 step = propagator(h, period / static_cast<double>(grid_points));

    // Grid over (0, period], stepping the state with a fixed one-step propagator.
    std::size_t best = 1;
    double best_p = -1.0;
    StateVector2 psi = psi0;
    for (std::size_t i = 1; i <= grid_points; ++i) {
        psi = step * psi;
        const double p = psi.target_probability();
        if (p > best_p) {
            best_p = p;
            best = i;
        }
    }

    const double spacing = period / static_cast<double>(grid_points);
    double lo = spacing * static_cast<double>(best - 1);
    double hi = std::min(period, spacing * static_cast<double>(best + 1));
    double t_star = spacing * static_cast<double>(best);

    if (success_probability_rate(params, lo) > 0.0 && success_probability_rate(params, hi) < 0.0) {
        for (int iter = 0; iter < 200 && hi - lo > 1e-14 * hi; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (success_probability_rate(params, mid) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        t_star = 0.5 * (lo + hi);
    }

    MaximumReport report;
    report.t_star = t_star;
    report.p_star = success_probability(params, t_star);
    report.formula_time = formula_time;
    report.p_formula = success_probability(params, formula_time);
    report.relative_gap = std::abs(t_star - formula_time) / formula_time;
    return report;
}

}  // namespace qsearch
