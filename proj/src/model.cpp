#include "qsearch/model.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "qsearch/errors.hpp"

namespace qsearch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_overlap(double x) {
    if (!std::isfinite(x) || x <= 0.0 || x >= 1.0) {
        throw InvalidParams(fmt::format("overlap x must lie in (0, 1), got {}", x));
    }
}

double complement_amplitude(double x) { return std::sqrt((1.0 - x) * (1.0 + x)); }

}  // namespace

double reduce_angle(double phi) noexcept {
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod of a value just below zero can round up to exactly 2pi.
    if (r >= kTwoPi) r = 0.0;
    return r;
}

SearchParams SearchParams::from_overlap(double energy, double coupling, double phase, double overlap) {
    if (!std::isfinite(energy) || energy <= 0.0) {
        throw InvalidParams(fmt::format("E must be positive and finite, got {}", energy));
    }
    if (!std::isfinite(coupling) || coupling < 0.0 || coupling > energy) {
        throw InvalidParams(fmt::format("epsilon must lie in [0, E] = [0, {}], got {}", energy, coupling));
    }
    if (!std::isfinite(phase)) throw InvalidParams("phi must be finite");
    require_overlap(overlap);
    return SearchParams(energy, coupling, reduce_angle(phase), overlap);
}

SearchParams SearchParams::from_count(double energy, double coupling, double phase, std::uint64_t count) {
    if (count < 2) throw InvalidParams(fmt::format("N must be at least 2, got {}", count));
    return from_overlap(energy, coupling, phase, 1.0 / std::sqrt(static_cast<double>(count)));
}

std::uint64_t SearchParams::count() const noexcept {
    return static_cast<std::uint64_t>(std::llround(1.0 / (overlap_ * overlap_)));
}

StateVector2 StateVector2::normalized(Complex a_w, Complex a_r, double tol) {
    const double n2 = std::norm(a_w) + std::norm(a_r);
    if (!(std::abs(n2 - 1.0) <= tol)) {
        throw InvalidParams(fmt::format("state is not normalized: |a|^2 = {}", n2));
    }
    return {a_w, a_r};
}

StateVector2 initial_state(double overlap) {
    require_overlap(overlap);
    return {overlap, complement_amplitude(overlap)};
}

Matrix2 Matrix2::adjoint() const {
    return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
            a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)};
}

Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
    return {a(0, 0) + b(0, 0), a(0, 1) + b(0, 1), a(1, 0) + b(1, 0), a(1, 1) + b(1, 1)};
}

Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    return {a(0, 0) - b(0, 0), a(0, 1) - b(0, 1), a(1, 0) - b(1, 0), a(1, 1) - b(1, 1)};
}

Matrix2 operator*(Complex s, const Matrix2& a) {
    return {s * a(0, 0), s * a(0, 1), s * a(1, 0), s * a(1, 1)};
}

StateVector2 operator*(const Matrix2& a, const StateVector2& v) {
    return {a(0, 0) * v.a_w + a(0, 1) * v.a_r, a(1, 0) * v.a_w + a(1, 1) * v.a_r};
}

double max_abs_diff(const Matrix2& a, const Matrix2& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a.m_[i] - b.m_[i]));
    return worst;
}

bool Hamiltonian2::is_hermitian(double tol) const {
    return std::abs(m_(0, 0).imag()) <= tol && std::abs(m_(1, 1).imag()) <= tol &&
           std::abs(m_(0, 1) - std::conj(m_(1, 0))) <= tol;
}

void Hamiltonian2::require_hermitian(double tol) const {
    if (!is_hermitian(tol)) {
        throw NonHermitian(fmt::format("Hermiticity violated beyond {} (H01 - conj(H10) = {})", tol,
                                       std::abs(m_(0, 1) - std::conj(m_(1, 0)))));
    }
}

Hamiltonian2 PauliCoefficients::reconstruct() const {
    return {Complex(c0 + cz, 0.0), Complex(cx, -cy), Complex(cx, cy), Complex(c0 - cz, 0.0)};
}

Hamiltonian2 build_generalized(const SearchParams& p) {
    const double e = p.energy();
    const double eps = p.coupling();
    const double x = p.overlap();
    const double s = complement_amplitude(x);
    const Complex twist = std::polar(eps, p.phase());

    // Outer products of |psi> = (x, s) expanded in the (|w>, |r>) basis.
    const double h_ww = e * (1.0 + x * x) + 2.0 * x * twist.real();
    const double h_rr = e * s * s;
    const Complex h_wr = s * (e * x + twist);
    return {h_ww, h_wr, std::conj(h_wr), h_rr};
}

Hamiltonian2 build_farhi_gutmann(double energy, double overlap) {
    return build_generalized(SearchParams::from_overlap(energy, 0.0, 0.0, overlap));
}

PauliCoefficients pauli_decompose(const Hamiltonian2& h, double tol) {
    h.require_hermitian(tol);
    const Complex h01 = h.entry(0, 1);
    const Complex h10 = h.entry(1, 0);
    return {
        .c0 = 0.5 * (h.entry(0, 0).real() + h.entry(1, 1).real()),
        .cx = 0.5 * (h01.real() + h10.real()),
        .cy = 0.5 * (h10.imag() - h01.imag()),
        .cz = 0.5 * (h.entry(0, 0).real() - h.entry(1, 1).real()),
    };
}

InteractionDecomposition decompose_interaction(const SearchParams& p) {
    const double e = p.energy();
    const double x = p.overlap();
    const double s = complement_amplitude(x);
    const Complex twist = std::polar(p.coupling(), p.phase());
    const Complex coupling = s * (e * x + twist);

    InteractionDecomposition d;
    d.e1 = e * (1.0 + x * x) + 2.0 * x * twist.real();
    d.e2 = e * (1.0 - x) * (1.0 + x);
    d.e3 = std::abs(coupling);
    d.varphi = d.e3 == 0.0 ? 0.0 : std::atan2(coupling.imag(), coupling.real());
    if (d.varphi <= -std::numbers::pi) d.varphi = std::numbers::pi;
    return d;
}

Hamiltonian2 recompose_from_interaction(const InteractionDecomposition& d, double overlap) {
    require_overlap(overlap);
    if (!std::isfinite(d.e1) || !std::isfinite(d.e3) || !std::isfinite(d.varphi)) {
        throw InvalidParams("decomposition entries must be finite");
    }
    if (!(d.e2 > 0.0)) throw InvalidParams(fmt::format("E2 must be positive, got {}", d.e2));
    if (d.e3 < 0.0) throw InvalidParams(fmt::format("E3 must be non-negative, got {}", d.e3));

    // Rewrite in terms of |w> and |psi>, then expand the |psi> outer products
    // back into the (|w>, |r>) basis.
    const double x = overlap;
    const double s = complement_amplitude(x);
    const double s2 = (1.0 - x) * (1.0 + x);
    const Complex interaction = std::polar(d.e3, d.varphi);

    const double a_ww = d.e1 + d.e2 * x * x / s2 - 2.0 * d.e3 * x * std::cos(d.varphi) / s;
    const double a_pp = d.e2 / s2;
    const Complex a_wp = (interaction - d.e2 * x / s) / s;
    const Complex a_pw = (std::conj(interaction) - d.e2 * x / s) / s;

    const Matrix2 ww{1.0, 0.0, 0.0, 0.0};
    const Matrix2 pp{x * x, x * s, x * s, s * s};
    const Matrix2 wp{x, s, 0.0, 0.0};
    const Matrix2 pw{x, 0.0, s, 0.0};
    return Hamiltonian2(Complex(a_ww) * ww + Complex(a_pp) * pp + a_wp * wp + a_pw * pw);
}

}  // namespace qsearch
