// analysis.hpp - closed-form running times, the speedup-type classifier,
// speed-limit quantities and N-sweep scaling fits.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsearch/model.hpp"

namespace qsearch {

// Relative tolerance for matching the type conditions (E = eps, phi = +-pi/2, ...).
inline constexpr double kClassifyTolerance = 1e-9;

/// (pi/2) / sqrt((Ex + eps cos phi)^2 + (1 - x^2) eps^2 sin^2 phi).
/// Throws DegenerateDynamics when the denominator is below 1e-12.
double running_time(const SearchParams& params);

/// (pi/2) / (E (1 + x cos phi)), valid for E = eps.
/// Throws NotEqualCoupling unless |E - eps| <= 1e-9 E.
double running_time_equal_coupling(const SearchParams& params);

/// The phase arccos(-Ex/eps) at which Ex + eps cos phi vanishes.
/// Throws ConditionViolated unless E > eps > Ex.
double type31_phase(double energy, double coupling, double overlap);

/// (pi/2) / sqrt((1 - x^2)(eps^2 - E^2 x^2)). Ignores params.phase(); the phase is
/// fixed to type31_phase(). Throws ConditionViolated unless E > eps > Ex.
double running_time_type31(const SearchParams& params);

/// (pi/2) / sqrt((E^2 - eps^2) x^2 + eps^2). Throws ConditionViolated unless |sin phi| = 1.
double running_time_type4(const SearchParams& params);

enum class SpeedupType { Type1, Type2, Type3_1, Type3_2, Type4 };

std::string_view to_string(SpeedupType type) noexcept;

struct Classification {
    SpeedupType type = SpeedupType::Type1;
    std::string condition;  // the matched condition, human readable
};

/// First match wins: Type2 > Type3_2 > Type4 > Type3_1 > Type1.
/// Without an overlap the Type3_1 condition cannot be evaluated and is skipped.
Classification classify(const Couplings& couplings, std::optional<double> overlap,
                        double tol = kClassifyTolerance);
Classification classify(const SearchParams& params, double tol = kClassifyTolerance);

/// <eta|H|eta>
double mean_energy(const Hamiltonian2& h, const StateVector2& state);
/// sqrt(<eta|(H - <H>)^2|eta>)
double energy_spread(const Hamiltonian2& h, const StateVector2& state);

struct SpeedLimitReport {
    double mean_energy = 0.0;
    double energy_spread = 0.0;
    double ml_component = 0.0;  // pi / (2 mean)
    double mt_component = 0.0;  // pi / (2 spread)
    double bound = 0.0;         // max of the two components
    double formula_time = 0.0;  // running_time(params)
    double relative_gap = 0.0;  // |mt_component - formula_time| / formula_time
};

/// Speed-limit quantities of the generalized Hamiltonian in the initial state |psi>.
SpeedLimitReport speed_limit_bound(const SearchParams& params);

/// success_probability evaluated at running_time(params).
double success_probability_at_T(const SearchParams& params);

/// 1 - x^2 (1 - x^2) eps^2 sin^2 phi / |c|^2
double success_probability_at_T_closed_form(const SearchParams& params);

struct ScalingSample {
    std::uint64_t count = 0;  // N
    double time = 0.0;        // T
};

struct ScalingReport {
    std::vector<ScalingSample> samples;
    double slope = 0.0;         // d ln T / d ln N
    double slope_stderr = 0.0;
    double intercept = 0.0;
};

/// Geometrically spaced N in [n_min, n_max] (rounded to integers), x = 1/sqrt(N),
/// T from running_time, ordinary least squares of ln T on ln N.
/// Throws InvalidRange on bad bounds or when rounding collapses two samples.
ScalingReport sweep_scaling(const Couplings& couplings, std::uint64_t n_min, std::uint64_t n_max,
                            std::size_t points);

}  // namespace qsearch
