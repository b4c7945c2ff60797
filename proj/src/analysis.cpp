#include "qsearch/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qsearch/dynamics.hpp"
#include "qsearch/errors.hpp"

namespace qsearch {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kDenominatorFloor = 1e-12;
constexpr double kConditionTolerance = 1e-9;

double one_minus_sq(double x) { return (1.0 - x) * (1.0 + x); }

void require_normalized(const StateVector2& state) {
    const double n = state.norm();
    if (!(std::abs(n - 1.0) <= 1e-9)) throw InvalidParams(fmt::format("state norm is {}, expected 1", n));
}

void require_type31(double e, double eps, double x) {
    if (!(eps < e) || !(eps > e * x)) {
        throw ConditionViolated(fmt::format(
            "type3-1 requires E > epsilon > E x; got E = {}, epsilon = {}, E x = {}", e, eps, e * x));
    }
}

}  // namespace

double running_time(const SearchParams& p) {
    const double e = p.energy();
    const double eps = p.coupling();
    const double x = p.overlap();
    const double aligned = e * x + eps * std::cos(p.phase());
    const double transverse = eps * std::sin(p.phase());
    const double denom_sq = aligned * aligned + one_minus_sq(x) * transverse * transverse;
    const double denom = std::sqrt(denom_sq);
    if (!(denom > kDenominatorFloor)) {
        throw DegenerateDynamics(fmt::format(
            "running-time denominator {} vanishes (E x + epsilon cos phi = 0 and sin phi = 0)", denom));
    }
    return kHalfPi / denom;
}

double running_time_equal_coupling(const SearchParams& p) {
    const double e = p.energy();
    if (std::abs(e - p.coupling()) > kConditionTolerance * e) {
        throw NotEqualCoupling(fmt::format("requires E = epsilon; got E = {}, epsilon = {}", e, p.coupling()));
    }
    const double factor = 1.0 + p.overlap() * std::cos(p.phase());
    if (!(factor > kDenominatorFloor)) {
        throw DegenerateDynamics(fmt::format("1 + x cos phi = {} vanishes", factor));
    }
    return kHalfPi / (e * factor);
}

double type31_phase(double energy, double coupling, double overlap) {
    require_type31(energy, coupling, overlap);
    return std::acos(-energy * overlap / coupling);
}

double running_time_type31(const SearchParams& p) {
    const double e = p.energy();
    const double eps = p.coupling();
    const double x = p.overlap();
    require_type31(e, eps, x);
    const double ex = e * x;
    return kHalfPi / std::sqrt(one_minus_sq(x) * (eps - ex) * (eps + ex));
}

double running_time_type4(const SearchParams& p) {
    if (std::abs(std::abs(std::sin(p.phase())) - 1.0) > kConditionTolerance) {
        throw ConditionViolated(fmt::format("type4 requires phi = +-pi/2; got phi = {}", p.phase()));
    }
    const double e = p.energy();
    const double eps = p.coupling();
    const double x = p.overlap();
    const double denom = std::sqrt((e - eps) * (e + eps) * x * x + eps * eps);
    if (!(denom > kDenominatorFloor)) throw DegenerateDynamics("type4 denominator vanishes");
    return kHalfPi / denom;
}

std::string_view to_string(SpeedupType type) noexcept {
    switch (type) {
        case SpeedupType::Type1: return "Type1";
        case SpeedupType::Type2: return "Type2";
        case SpeedupType::Type3_1: return "Type3_1";
        case SpeedupType::Type3_2: return "Type3_2";
        case SpeedupType::Type4: return "Type4";
    }
    return "Unknown";
}

Classification classify(const Couplings& c, std::optional<double> overlap, double tol) {
    // Validates the couplings (and the overlap when given).
    (void)SearchParams::from_couplings(c, overlap.value_or(0.5));

    const double e = c.energy;
    const double eps = c.coupling;
    const double cos_phi = std::cos(c.phase);
    const bool equal_coupling = std::abs(e - eps) <= tol * e;
    const bool quarter_phase = std::abs(cos_phi) <= tol;

    if (equal_coupling && quarter_phase) return {SpeedupType::Type2, "E = epsilon and phi = +-pi/2"};
    if (equal_coupling) return {SpeedupType::Type3_2, "E = epsilon, phi != +-pi/2"};
    if (quarter_phase) return {SpeedupType::Type4, "phi = +-pi/2 and epsilon < E"};
    if (overlap) {
        const double ex = e * *overlap;
        if (eps > ex && eps > 0.0 && std::abs(cos_phi + ex / eps) <= tol) {
            return {SpeedupType::Type3_1, "phi = arccos(-E x / epsilon) and E > epsilon > E x"};
        }
    }
    return {SpeedupType::Type1, "E > epsilon, no special phase"};
}

Classification classify(const SearchParams& params, double tol) {
    return classify(params.couplings(), params.overlap(), tol);
}

double mean_energy(const Hamiltonian2& h, const StateVector2& state) {
    h.require_hermitian();
    require_normalized(state);
    const StateVector2 h_eta = h.matrix() * state;
    return (std::conj(state.a_w) * h_eta.a_w + std::conj(state.a_r) * h_eta.a_r).real();
}

double energy_spread(const Hamiltonian2& h, const StateVector2& state) {
    const double mean = mean_energy(h, state);
    // || (H - <H>) eta || avoids the cancellation in <H^2> - <H>^2.
    const StateVector2 h_eta = h.matrix() * state;
    const StateVector2 centered{h_eta.a_w - mean * state.a_w, h_eta.a_r - mean * state.a_r};
    return centered.norm();
}

SpeedLimitReport speed_limit_bound(const SearchParams& params) {
    const Hamiltonian2 h = build_generalized(params);
    const StateVector2 psi = initial_state(params.overlap());

    SpeedLimitReport r;
    r.mean_energy = mean_energy(h, psi);
    r.energy_spread = energy_spread(h, psi);
    if (!(r.energy_spread >= kDenominatorFloor)) {
        throw DegenerateDynamics(fmt::format("energy spread {} vanishes", r.energy_spread));
    }
    r.ml_component = kHalfPi / r.mean_energy;
    r.mt_component = kHalfPi / r.energy_spread;
    r.bound = std::max(r.ml_component, r.mt_component);
    r.formula_time = running_time(params);
    r.relative_gap = std::abs(r.mt_component - r.formula_time) / r.formula_time;
    return r;
}

double success_probability_at_T(const SearchParams& params) {
    return success_probability(params, running_time(params));
}

double success_probability_at_T_closed_form(const SearchParams& params) {
    const double x = params.overlap();
    const double rabi = pauli_decompose(build_generalized(params)).rabi_norm();
    if (rabi < kDegenerateRabiNorm) throw DegenerateDynamics("Rabi norm vanishes");
    const double transverse = params.coupling() * std::sin(params.phase());
    return 1.0 - x * x * one_minus_sq(x) * transverse * transverse / (rabi * rabi);
}

ScalingReport sweep_scaling(const Couplings& couplings, std::uint64_t n_min, std::uint64_t n_max,
                            std::size_t points) {
    if (n_min < 2 || n_min >= n_max) {
        throw InvalidRange(fmt::format("need 2 <= n_min < n_max; got n_min = {}, n_max = {}", n_min, n_max));
    }
    if (points < 5) throw InvalidRange(fmt::format("need at least 5 points, got {}", points));

    const double log_min = std::log(static_cast<double>(n_min));
    const double log_span = std::log(static_cast<double>(n_max)) - log_min;

    ScalingReport report;
    report.samples.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        std::uint64_t n = n_min;
        if (i + 1 == points) {
            n = n_max;
        } else if (i > 0) {
            const double frac = static_cast<double>(i) / static_cast<double>(points - 1);
            n = static_cast<std::uint64_t>(std::llround(std::exp(log_min + frac * log_span)));
        }
        if (!report.samples.empty() && n <= report.samples.back().count) {
            throw InvalidRange(fmt::format("N samples collapse at N = {}; widen the range or use fewer points", n));
        }
        const SearchParams p = SearchParams::from_count(couplings.energy, couplings.coupling, couplings.phase, n);
        try {
            report.samples.push_back({n, running_time(p)});
        } catch (const DegenerateDynamics& e) {
            throw DegenerateDynamics(fmt::format("at N = {}: {}", n, e.what()));
        }
    }

    // Ordinary least squares of ln T on ln N.
    const double count = static_cast<double>(points);
    double mean_u = 0.0;
    double mean_v = 0.0;
    for (const auto& s : report.samples) {
        mean_u += std::log(static_cast<double>(s.count));
        mean_v += std::log(s.time);
    }
    mean_u /= count;
    mean_v /= count;

    double suu = 0.0;
    double suv = 0.0;
    for (const auto& s : report.samples) {
        const double du = std::log(static_cast<double>(s.count)) - mean_u;
        const double dv = std::log(s.time) - mean_v;
        suu += du * du;
        suv += du * dv;
    }
    report.slope = suv / suu;
    report.intercept = mean_v - report.slope * mean_u;

    double ssr = 0.0;
    for (const auto& s : report.samples) {
        const double resid =
            std::log(s.time) - (report.intercept + report.slope * std::log(static_cast<double>(s.count)));
        ssr += resid * resid;
    }
    report.slope_stderr = std::sqrt(ssr / (count - 2.0) / suu);
    return report;
}

}  // namespace qsearch
