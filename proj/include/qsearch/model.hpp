// model.hpp - search parameters, 2x2 Hamiltonians in the {|w>, |r>} basis,
// Pauli decomposition, and the free/interaction split of the search Hamiltonian.
//
// Units: hbar = 1. Energies are in arbitrary units; times in inverse energy.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace qsearch {

using Complex = std::complex<double>;

// Absolute tolerance for Hermiticity and entrywise equality on unit-scale energies.
inline constexpr double kDefaultTolerance = 1e-12;

// Energy scales of the generalized search Hamiltonian without the overlap.
// Used for sweeps (where x varies) and for classification without a fixed N.
struct Couplings {
    double energy = 1.0;    // E
    double coupling = 0.0;  // epsilon
    double phase = 0.0;     // phi, radians
};

/// The tuple (E, epsilon, phi, x). Always valid once constructed:
/// E > 0, 0 <= epsilon <= E, 0 < x < 1, phi reduced to [0, 2pi).
class SearchParams {
public:
    static SearchParams from_overlap(double energy, double coupling, double phase, double overlap);
    /// x = 1/sqrt(N), N >= 2.
    static SearchParams from_count(double energy, double coupling, double phase, std::uint64_t count);
    static SearchParams from_couplings(const Couplings& c, double overlap) {
        return from_overlap(c.energy, c.coupling, c.phase, overlap);
    }

    double energy() const noexcept { return energy_; }
    double coupling() const noexcept { return coupling_; }
    double phase() const noexcept { return phase_; }
    double overlap() const noexcept { return overlap_; }
    Couplings couplings() const noexcept { return {energy_, coupling_, phase_}; }

    /// round(1/x^2); display only.
    std::uint64_t count() const noexcept;

private:
    SearchParams(double e, double eps, double phi, double x)
        : energy_(e), coupling_(eps), phase_(phi), overlap_(x) {}

    double energy_;
    double coupling_;
    double phase_;
    double overlap_;
};

/// Reduces an angle to [0, 2pi).
double reduce_angle(double phi) noexcept;

struct StateVector2 {
    Complex a_w;  // amplitude on the target |w>
    Complex a_r;  // amplitude on the complement |r>

    /// Throws InvalidParams unless | |a_w|^2 + |a_r|^2 - 1 | <= tol.
    static StateVector2 normalized(Complex a_w, Complex a_r, double tol = kDefaultTolerance);

    double norm() const noexcept { return std::sqrt(std::norm(a_w) + std::norm(a_r)); }
    double target_probability() const noexcept { return std::norm(a_w); }
};

/// |psi> = x|w> + sqrt(1 - x^2)|r>.
StateVector2 initial_state(double overlap);

// Dense 2x2 complex matrix, row-major.
class Matrix2 {
public:
    constexpr Matrix2() = default;
    constexpr Matrix2(Complex a00, Complex a01, Complex a10, Complex a11) : m_{a00, a01, a10, a11} {}

    static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Complex& operator()(int row, int col) { return m_[static_cast<std::size_t>(2 * row + col)]; }
    const Complex& operator()(int row, int col) const {
        return m_[static_cast<std::size_t>(2 * row + col)];
    }

    Matrix2 adjoint() const;
    Complex trace() const { return m_[0] + m_[3]; }

    friend Matrix2 operator*(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator+(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator-(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator*(Complex s, const Matrix2& a);
    friend StateVector2 operator*(const Matrix2& a, const StateVector2& v);

    /// Largest entrywise modulus of (a - b).
    friend double max_abs_diff(const Matrix2& a, const Matrix2& b);

private:
    std::array<Complex, 4> m_{};
};

/// 2x2 Hamiltonian in the (|w>, |r>) basis. Stores arbitrary entries;
/// consumers that need Hermiticity check it and throw NonHermitian.
class Hamiltonian2 {
public:
    Hamiltonian2() = default;
    explicit Hamiltonian2(const Matrix2& m) : m_(m) {}
    Hamiltonian2(Complex h_ww, Complex h_wr, Complex h_rw, Complex h_rr) : m_(h_ww, h_wr, h_rw, h_rr) {}

    const Complex& entry(int row, int col) const { return m_(row, col); }
    const Matrix2& matrix() const noexcept { return m_; }

    bool is_hermitian(double tol = kDefaultTolerance) const;
    /// Throws NonHermitian when is_hermitian(tol) fails.
    void require_hermitian(double tol = kDefaultTolerance) const;

private:
    Matrix2 m_;
};

/// H = c0 I + cx sx + cy sy + cz sz.
struct PauliCoefficients {
    double c0 = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    double cz = 0.0;

    /// |c| = half the eigenvalue gap.
    double rabi_norm() const noexcept { return std::sqrt(cx * cx + cy * cy + cz * cz); }
    Hamiltonian2 reconstruct() const;
};

/// E1|w><w| + E2|r><r| + E3(e^{i varphi}|w><r| + h.c.)
struct InteractionDecomposition {
    double e1 = 0.0;      // free energy of |w>
    double e2 = 0.0;      // free energy of |r>
    double e3 = 0.0;      // interaction strength, >= 0
    double varphi = 0.0;  // interaction phase, (-pi, pi]
};

Hamiltonian2 build_generalized(const SearchParams& params);
Hamiltonian2 build_farhi_gutmann(double energy, double overlap);

PauliCoefficients pauli_decompose(const Hamiltonian2& h, double tol = kDefaultTolerance);

InteractionDecomposition decompose_interaction(const SearchParams& params);
Hamiltonian2 recompose_from_interaction(const InteractionDecomposition& d, double overlap);

}  // namespace qsearch
