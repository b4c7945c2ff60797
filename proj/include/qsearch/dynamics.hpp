// dynamics.hpp - exact and reference time evolution of the two-level search problem.

#pragma once

#include <cstddef>
#include <vector>

#include "qsearch/model.hpp"

namespace qsearch {

// Below this Rabi norm the sigma part of H is treated as absent.
inline constexpr double kPauliDegeneracy = 1e-14;
// Below this Rabi norm there is no oscillation and no finite search time.
inline constexpr double kDegenerateRabiNorm = 1e-12;

inline constexpr std::size_t kDefaultGridPoints = 10'000;
inline constexpr std::size_t kMinReferenceSteps = 100;
// Final-norm deviation the reference integrator tolerates before failing.
inline constexpr double kMaxNormDrift = 1e-6;

/// exp(-i H t), built from the Pauli form of H.
Matrix2 propagator(const Hamiltonian2& h, double t);

StateVector2 evolve(const Hamiltonian2& h, const StateVector2& psi0, double t);

/// Classical fixed-step RK4 for i dpsi/dt = H psi. Independent of propagator();
/// used as the numerical oracle for it. Does not renormalize.
StateVector2 integrate_reference(const Hamiltonian2& h, const StateVector2& psi0, double t,
                                 std::size_t steps);

/// |<w| exp(-iHt) |psi>|^2 for the generalized Hamiltonian.
double success_probability(const SearchParams& params, double t);

/// d/dt of success_probability, from the Schroedinger equation at the evolved state.
double success_probability_rate(const SearchParams& params, double t);

struct TraceSample {
    double t = 0.0;
    StateVector2 state;
    double p_success = 0.0;
};

struct EvolutionTrace {
    std::vector<TraceSample> samples;
};

/// Samples the exact evolution from |psi> at `samples` evenly spaced times on [0, t_max].
/// t_max == 0 yields the single t = 0 row.
EvolutionTrace trace_evolution(const SearchParams& params, double t_max, std::size_t samples);

/// pi / (2 |c|), the half-Rabi time.
double half_rabi_time(const SearchParams& params);

struct MaximumReport {
    double t_star = 0.0;        // numerical argmax of p(t) over one period
    double p_star = 0.0;        // p(t_star)
    double formula_time = 0.0;  // half-Rabi time
    double p_formula = 0.0;     // p(formula_time)
    double relative_gap = 0.0;  // |t_star - formula_time| / formula_time
};

/// Locates the first maximum of the success probability on (0, pi/|c|] by a
/// dense grid followed by bisection on the sign of dp/dt.
/// Throws DegenerateDynamics when |c| < kDegenerateRabiNorm.
MaximumReport find_first_maximum(const SearchParams& params, std::size_t grid_points = kDefaultGridPoints);

}  // namespace qsearch
