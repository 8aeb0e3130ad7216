#pragma once

// Gaussian-state numerics: covariance matrices, symplectic transforms,
// Williamson spectra and entropies.
//
// Convention: vacuum variance is 1, i.e. the vacuum covariance matrix is the
// identity. Much of the literature uses 2 (shot noise units); every matrix in
// this library is dimensionless with vacuum = I. All entropies are in bits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace sqbound {

// Raised when a numeric routine cannot interpret its own output (eigensolver
// returning complex values where a symplectic spectrum was expected, pairing
// failures, negative radicands). Distinct from precondition violations, which
// use the std exception hierarchy directly.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace gaussian_core {

namespace detail {

inline constexpr double sym_tol = 1e-12;        // relative symmetry tolerance
inline constexpr double symplectic_tol = 1e-10; // entrywise |S Omega S^T - Omega|
inline constexpr double imag_tol = 1e-8;        // relative imaginary part allowed
inline constexpr double pair_tol = 1e-8;        // degenerate-pair matching
inline constexpr double nu_slack = 1e-9;        // physicality slack below 1
inline constexpr double ln2 = 0.69314718055994530942;

} // namespace detail

using Matrix = Eigen::MatrixXd;

// standard symplectic form, direct sum of [[0,1],[-1,0]] per mode
inline Matrix omega(std::size_t modes) {
    Matrix w = Matrix::Zero(2 * modes, 2 * modes);
    for (std::size_t k = 0; k < modes; ++k) {
        w(2 * k, 2 * k + 1) = 1.0;
        w(2 * k + 1, 2 * k) = -1.0;
    }
    return w;
}

struct CovarianceMatrix {
    std::size_t modes = 0;
    Matrix entries;

    CovarianceMatrix() = default;

    explicit CovarianceMatrix(Matrix m) {
        const auto rows = m.rows();
        if (rows < 2 || rows != m.cols() || rows % 2 != 0)
            throw std::invalid_argument("covariance: need a square 2M x 2M matrix");
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
        if (asym > detail::sym_tol * scale)
            throw std::invalid_argument("covariance: matrix not symmetric");
        modes = static_cast<std::size_t>(rows) / 2;
        entries = 0.5 * (m + m.transpose()); // kill rounding asymmetry
    }
};

struct SymplecticTransform {
    std::size_t modes = 0;
    Matrix entries;

    SymplecticTransform() = default;

    explicit SymplecticTransform(Matrix m) {
        const auto rows = m.rows();
        if (rows < 2 || rows != m.cols() || rows % 2 != 0)
            throw std::invalid_argument("symplectic: need a square 2M x 2M matrix");
        modes = static_cast<std::size_t>(rows) / 2;
        const Matrix w = omega(modes);
        const double dev = (m * w * m.transpose() - w).cwiseAbs().maxCoeff();
        if (dev > detail::symplectic_tol)
            throw std::invalid_argument("symplectic: S Omega S^T != Omega (deviation " +
                                        std::to_string(dev) + ")");
        entries = std::move(m);
    }
};

struct SymplecticSpectrum {
    std::vector<double> values; // sorted descending, each >= 1 - 1e-9
};

// g(x) = ((x+1)/2) log2((x+1)/2) - ((x-1)/2) log2((x-1)/2), the entropy of a
// Gaussian mode with symplectic eigenvalue x. Evaluated in the mean photon
// number n = (x-1)/2 with log1p so the two terms never cancel: the direct
// two-term form loses ~8 digits around x ~ 5e6, which is inside the photon
// range the finite-N bounds are tested at.
inline double g_entropy(double x) {
    if (!(x >= 1.0 - detail::nu_slack))
        throw std::domain_error("g_entropy: argument " + std::to_string(x) +
                                " below the physical domain [1, inf)");
    if (x <= 1.0)
        return 0.0; // values in [1 - 1e-9, 1] clamp to the pure-state value
    const double n = 0.5 * (x - 1.0);
    if (n >= 1.0)
        return (std::log1p(n) + n * std::log1p(1.0 / n)) / detail::ln2;
    return ((1.0 + n) * std::log1p(n) - n * std::log(n)) / detail::ln2;
}

// single-mode thermal state, mean photon number N
inline CovarianceMatrix thermal_cov(double N) {
    if (!(N >= 0.0))
        throw std::domain_error("thermal_cov: mean photon number must be >= 0");
    return CovarianceMatrix((1.0 + 2.0 * N) * Matrix::Identity(2, 2));
}

namespace detail {

inline void check_mode_pair(std::size_t i, std::size_t j, std::size_t total) {
    if (total == 0)
        throw std::invalid_argument("transform: need at least one mode");
    if (i == j || i >= total || j >= total)
        throw std::invalid_argument("transform: mode indices must be distinct and < total");
}

// embed a two-mode block transform (2x2 blocks bii, bij, bji, bjj acting on
// the (q,p) pair of each mode) into a total_modes-mode identity
inline SymplecticTransform embed_pair(const Eigen::Matrix2d& bii, const Eigen::Matrix2d& bij,
                                      const Eigen::Matrix2d& bji, const Eigen::Matrix2d& bjj,
                                      std::size_t i, std::size_t j, std::size_t total) {
    Matrix m = Matrix::Identity(2 * total, 2 * total);
    m.block<2, 2>(2 * i, 2 * i) = bii;
    m.block<2, 2>(2 * i, 2 * j) = bij;
    m.block<2, 2>(2 * j, 2 * i) = bji;
    m.block<2, 2>(2 * j, 2 * j) = bjj;
    return SymplecticTransform(std::move(m));
}

} // namespace detail

// beamsplitter of transmissivity T on modes (i, j):
//   [  sqrt(T) I2      sqrt(1-T) I2 ]
//   [ -sqrt(1-T) I2    sqrt(T) I2   ]
inline SymplecticTransform beamsplitter(double T, std::size_t mode_i, std::size_t mode_j,
                                        std::size_t total_modes) {
    if (!(T >= 0.0 && T <= 1.0))
        throw std::domain_error("beamsplitter: transmissivity must lie in [0,1]");
    detail::check_mode_pair(mode_i, mode_j, total_modes);
    const double st = std::sqrt(T);
    const double sr = std::sqrt(1.0 - T);
    const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
    return detail::embed_pair(st * id, sr * id, -sr * id, st * id, mode_i, mode_j, total_modes);
}

// two-mode squeezer with gain G = cosh^2(r) on modes (i, j):
//   [ sqrt(G) I2         sqrt(G-1) sigma_z ]
//   [ sqrt(G-1) sigma_z  sqrt(G) I2        ]
inline SymplecticTransform two_mode_squeezer(double G, std::size_t mode_i, std::size_t mode_j,
                                             std::size_t total_modes) {
    if (!(G >= 1.0))
        throw std::domain_error("two_mode_squeezer: gain must be >= 1");
    detail::check_mode_pair(mode_i, mode_j, total_modes);
    const double cg = std::sqrt(G);
    const double sg = std::sqrt(G - 1.0);
    const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
    Eigen::Matrix2d sz;
    sz << 1.0, 0.0, 0.0, -1.0;
    return detail::embed_pair(cg * id, sg * sz, sg * sz, cg * id, mode_i, mode_j, total_modes);
}

// compose(a, b) acts as b first, then a
inline SymplecticTransform compose(const SymplecticTransform& a, const SymplecticTransform& b) {
    if (a.modes != b.modes)
        throw std::invalid_argument("compose: mode counts differ");
    return SymplecticTransform(a.entries * b.entries);
}

inline CovarianceMatrix apply(const SymplecticTransform& S, const CovarianceMatrix& gamma) {
    if (S.modes != gamma.modes)
        throw std::invalid_argument("apply: mode counts differ");
    return CovarianceMatrix(S.entries * gamma.entries * S.entries.transpose());
}

// partial trace of a Gaussian state = principal submatrix on the kept modes
inline CovarianceMatrix reduce(const CovarianceMatrix& gamma, const std::vector<std::size_t>& keep) {
    if (keep.empty())
        throw std::invalid_argument("reduce: kept mode set must be nonempty");
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] >= gamma.modes)
            throw std::invalid_argument("reduce: mode index out of range");
        for (std::size_t l = k + 1; l < keep.size(); ++l)
            if (keep[k] == keep[l])
                throw std::invalid_argument("reduce: duplicate mode index");
    }
    Matrix out(2 * keep.size(), 2 * keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t c = 0; c < keep.size(); ++c)
            out.block<2, 2>(2 * r, 2 * c) = gamma.entries.block<2, 2>(2 * keep[r], 2 * keep[c]);
    return CovarianceMatrix(std::move(out));
}

// Williamson spectrum via the eigenvalues of -(Omega Gamma)^2, which are the
// nu_k^2, each doubly degenerate. Keeps the arithmetic real; matrices here are
// at most 10x10 so robustness beats speed.
inline SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& gamma) {
    const Matrix og = omega(gamma.modes) * gamma.entries;
    const Matrix a = -(og * og);
    Eigen::EigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success)
        throw numeric_error("symplectic_eigenvalues: eigensolver failed to converge");

    std::vector<double> squares;
    squares.reserve(2 * gamma.modes);
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const std::complex<double> lam = solver.eigenvalues()(k);
        if (std::abs(lam.imag()) > detail::imag_tol * std::max(1.0, std::abs(lam)))
            throw numeric_error("symplectic_eigenvalues: eigenvalue has relative imaginary part " +
                                std::to_string(std::abs(lam.imag()) / std::max(1.0, std::abs(lam))));
        squares.push_back(std::max(lam.real(), 0.0));
    }
    std::sort(squares.begin(), squares.end(), std::greater<double>());

    SymplecticSpectrum spec;
    spec.values.reserve(gamma.modes);
    for (std::size_t k = 0; k < gamma.modes; ++k) {
        const double a1 = std::sqrt(squares[2 * k]);
        const double a2 = std::sqrt(squares[2 * k + 1]);
        if (std::abs(a1 - a2) > detail::pair_tol * std::max(1.0, a1))
            throw numeric_error("symplectic_eigenvalues: degenerate pair mismatch (" +
                                std::to_string(a1) + " vs " + std::to_string(a2) + ")");
        const double nu = 0.5 * (a1 + a2);
        if (nu < 1.0 - detail::nu_slack)
            throw std::domain_error("symplectic_eigenvalues: unphysical covariance, nu = " +
                                    std::to_string(nu));
        spec.values.push_back(nu);
    }
    return spec;
}

inline double gaussian_entropy(const CovarianceMatrix& gamma) {
    double h = 0.0;
    for (double nu : symplectic_eigenvalues(gamma).values)
        h += g_entropy(nu);
    return h;
}

// H(B|C) = H(BC) - H(C); may be negative for entangled states
inline double conditional_entropy(const CovarianceMatrix& gamma,
                                  const std::vector<std::size_t>& subsystem_b,
                                  const std::vector<std::size_t>& subsystem_c) {
    for (std::size_t b : subsystem_b)
        for (std::size_t c : subsystem_c)
            if (b == c)
                throw std::invalid_argument("conditional_entropy: subsystems overlap at mode " +
                                            std::to_string(b));
    std::vector<std::size_t> joint = subsystem_b;
    joint.insert(joint.end(), subsystem_c.begin(), subsystem_c.end());
    std::sort(joint.begin(), joint.end());
    return gaussian_entropy(reduce(gamma, joint)) - gaussian_entropy(reduce(gamma, subsystem_c));
}

} // namespace gaussian_core
} // namespace sqbound
