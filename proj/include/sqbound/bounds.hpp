#pragma once

// Squashed-entanglement upper bounds on the two-way assisted capacities:
// finite-photon-number and asymptotic bounds for phase-insensitive Gaussian
// channels, and the finite-dimensional channel bounds (erasure, amplitude
// damping, Pauli, depolarizing) with the convex-decomposition machinery.

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sqbound/channels.hpp"
#include "sqbound/gaussian_core.hpp"

namespace sqbound::bounds {

enum class Direction { upper, lower, exact };

inline const char* to_string(Direction d) {
    switch (d) {
    case Direction::upper: return "upper";
    case Direction::lower: return "lower";
    default: return "exact";
    }
}

struct BoundResult {
    double value = 0.0; // bits; +inf sentinel for divergent bounds
    std::string kind;
    Direction direction = Direction::upper;
    std::string channel;                 // human-readable descriptor
    channels::PhotonConstraint constraint; // finite N or unbounded
    std::string source = "in-paper";     // "external-cited" for borrowed curves
};

namespace detail {

inline constexpr double ln2 = 0.69314718055994530942;
inline constexpr long double ln2l = 0.693147180559945309417232121458L;
inline constexpr double inf = std::numeric_limits<double>::infinity();

// tolerance routing evaluation to the degenerate-case formulas; the general
// asymptotic expression is 0/0 on the G T = 1 line and loses digits nearby
inline constexpr double branch_tol = 1e-6;
// pure-loss / amplifier parameter degeneracy detection
inline constexpr double edge_tol = 1e-12;

inline std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string describe(const channels::PhaseInsensitiveChannel& ch) {
    return "gaussian(tau=" + fmt(ch.tau) + ",nu=" + fmt(ch.nu) + ")";
}

// negative values from pure rounding are snapped to zero; anything worse means
// the formulas were fed garbage and is reported, not hidden
inline double sanitize_nonnegative(double v, const char* what) {
    if (v >= 0.0)
        return v;
    if (v > -1e-8)
        return 0.0;
    throw numeric_error(std::string(what) + ": bound came out negative (" + fmt(v) + ")");
}

// ---- shared 1-D optimizers -------------------------------------------------
//
// Objectives here are smooth on compact intervals; a coarse grid brackets the
// extremum and golden-section refines it. Deterministic by construction.

template <class F>
double golden_refine_max(F&& f, double lo, double hi, double tol) {
    constexpr double gr = 0.61803398874989484820;
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return f(0.5 * (a + b));
}

template <class F>
double grid_golden_max(F&& f, double lo, double hi, int grid_points, double tol) {
    int best = 0;
    double fbest = -inf;
    std::vector<double> xs(static_cast<std::size_t>(grid_points));
    for (int k = 0; k < grid_points; ++k) {
        const double x = lo + (hi - lo) * k / (grid_points - 1);
        xs[static_cast<std::size_t>(k)] = x;
        const double v = f(x);
        if (v > fbest) {
            fbest = v;
            best = k;
        }
    }
    const double a = xs[static_cast<std::size_t>(std::max(best - 1, 0))];
    const double b = xs[static_cast<std::size_t>(std::min(best + 1, grid_points - 1))];
    if (b <= a)
        return fbest;
    return std::max(fbest, golden_refine_max(f, a, b, tol));
}

template <class F>
double grid_golden_min(F&& f, double lo, double hi, int grid_points, double tol) {
    return -grid_golden_max([&](double x) { return -f(x); }, lo, hi, grid_points, tol);
}

// ---- entropy helpers -------------------------------------------------------

inline double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0)
        return 0.0; // 0 log 0 := 0
    return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

// single-term depolarizing upper bound (3p log2 p + (4-3p) log2(4-3p)) / 8
inline double dp1_value(double p) {
    const double plog = p > 0.0 ? 3.0 * p * std::log2(p) : 0.0;
    return (plog + (4.0 - 3.0 * p) * std::log2(4.0 - 3.0 * p)) / 8.0;
}

// zeta(a, b) = a b log2(a / b), continued by 0 at b <= 0 (x log x -> 0)
inline long double zeta2(long double a, long double b) {
    if (b <= 0.0L)
        return 0.0L;
    return a * b * (std::log(a / b) / ln2l);
}

inline long double log2_ratio_1pm(long double t) {
    // log2((1+t)/(1-t)) without forming 1-t when t is tiny
    return (std::log1p(t) - std::log1p(-t)) / ln2l;
}

// additive-noise limit of the asymptotic bound, expressed through the
// beamsplitter transmissivity T = 1/(n_bar + 1); the L'Hopital value of the
// general expression on the G T = 1 line
inline long double additive_limit_at_T(long double t) {
    if (t >= 1.0L)
        return std::numeric_limits<long double>::infinity();
    return (t * t + 1.0L) / (2.0L * t) * log2_ratio_1pm(t) - 1.0L / ln2l;
}

} // namespace detail

// ---- closed-form symplectic spectra ---------------------------------------

// Symplectic eigenvalues of the squashed 5-mode output, reduced to E1'E2' (two
// values) and B E1' E2' (three values, the third exactly 1), plus the two
// radical combinations Omega_+/- they are built from.
struct ClosedFormSpectra {
    double nu_E[2];  // slots in the printed order
    double nu_BE[3]; // third entry is exactly 1
    double omega_plus;
    double omega_minus;
};

// The printed radicands (1+N)^2 - 4NT +- 2G(1+N)(NT-1) + (G+GNT)^2 and the
// surds nu = |sqrt(-(...)/2)| are evaluated here in algebraically identical
// but numerically stable regroupings:
//   Omega+^2 = ((1+N) - G(1+NT))^2 + 4NT(G(1+N) - 1)     (sum of nonnegatives)
//   Omega-^2 = ((1+N) + G(1+NT))^2 - 4NT(G(1+N) + 1)     (bounded cancellation)
// and each pair of eigenvalues comes from its larger member plus the exact
// product identities nu_E1 nu_E2 = G + N(G-T), nu_BE1 nu_BE2 = G + N(G+T).
// The naive surds lose eps*N^2 absolute accuracy at large N, which is fatal to
// the finite-N bound long before N reaches the tested 1e6 range.
inline ClosedFormSpectra closed_form_spectra(double G, double T, double N) {
    if (!(G >= 1.0))
        throw std::domain_error("closed_form_spectra: gain must be >= 1");
    if (!(T >= 0.0 && T <= 1.0))
        throw std::domain_error("closed_form_spectra: transmissivity must lie in [0,1]");
    if (!(N >= 0.0))
        throw std::domain_error("closed_form_spectra: photon number must be >= 0");

    const double np1 = 1.0 + N;
    const double gnt = G * (1.0 + N * T);
    const double w_plus = (np1 - gnt) * (np1 - gnt) + 4.0 * N * T * (G * np1 - 1.0);
    const double w_minus = (np1 + gnt) * (np1 + gnt) - 4.0 * N * T * (G * np1 + 1.0);
    if (w_plus < -1e-9 || w_minus < -1e-9)
        throw numeric_error("closed_form_spectra: negative radicand under Omega");

    ClosedFormSpectra out;
    out.omega_plus = std::sqrt(std::max(w_plus, 0.0));
    out.omega_minus = std::sqrt(std::max(w_minus, 0.0));

    // E1'E2' block: nu^2 solve the quadratic with sum s_e and signed cross
    // term c_e * Omega-; slot 1 carries the + sign of the printed form
    const double s_e = 1.0 + G * G + 2.0 * N * (1.0 - T + G * T * (G - 1.0)) +
                       N * N * (G * T - 1.0) * (G * T - 1.0);
    const double c_e = G - 1.0 + N * (G * T - 1.0);
    const double prod_e = G + N * (G - T);
    const double big_e = std::sqrt(0.5 * std::max(s_e + std::abs(c_e) * out.omega_minus, 0.0));
    const double small_e = prod_e / big_e;
    out.nu_E[0] = c_e >= 0.0 ? big_e : small_e;
    out.nu_E[1] = c_e >= 0.0 ? small_e : big_e;

    // B E1'E2' block: cross coefficient 1 + G + N(1 + GT) is always positive
    const double s_b = 1.0 + G * G + 2.0 * N * (1.0 - T + G * T * (G + 1.0)) +
                       N * N * (1.0 + G * T) * (1.0 + G * T);
    const double c_b = 1.0 + G + N * (1.0 + G * T);
    const double prod_b = G + N * (G + T);
    const double big_b = std::sqrt(0.5 * std::max(s_b + c_b * out.omega_plus, 0.0));
    out.nu_BE[0] = big_b;
    out.nu_BE[1] = prod_b / big_b;
    out.nu_BE[2] = 1.0;

    for (double nu : {out.nu_E[0], out.nu_E[1], out.nu_BE[0], out.nu_BE[1]})
        if (nu < 1.0 - gaussian_core::detail::nu_slack)
            throw numeric_error("closed_form_spectra: eigenvalue " + detail::fmt(nu) +
                                " below 1");
    return out;
}

namespace detail {

// G = 1 collapse of the finite-N bound: the spectra degenerate and the bound
// is exactly g(1 + N(1+T)) - g(1 + N(1-T)). Evaluated as a single log1p
// combination because in the deep-loss regime (T ~ 1e-20, values ~ 1e-21) the
// difference of the two g calls is pure cancellation noise.
inline double esq_finite_pure_loss(double T, double N) {
    if (N <= 0.0 || T <= 0.0)
        return 0.0;
    if (T >= 1.0)
        return gaussian_core::g_entropy(1.0 + 2.0 * N);
    const double alpha = 0.5 * N * (1.0 + T); // photon number of the big mode
    const double beta = 0.5 * N * (1.0 - T);  // photon number of the small mode
    const double d = N * T;                   // alpha - beta, exactly
    const double term1 = (1.0 + beta) * std::log1p(d / (1.0 + beta));
    const double term2 = d * std::log1p(1.0 / alpha);
    const double term3 = beta * std::log1p(2.0 * T / (1.0 - T)); // log(alpha/beta)
    return (term1 + term2 - term3) / ln2;
}

} // namespace detail

// ---- Gaussian channel bounds ----------------------------------------------

// Upper bound on Q2/P2 at input mean photon number N: H(B|E1'E2') of the
// squashed output with a thermal input. The balanced squashing makes
// H(B|E1'E2') = H(B|F1'F2'), so the conditional entropy is the bound itself
// rather than half the symmetrized sum (the symmetry is verified in tests).
inline BoundResult esq_finite_n(const channels::PhaseInsensitiveChannel& ch, double N) {
    if (!(N >= 0.0) || !std::isfinite(N))
        throw std::domain_error("esq_finite_n: photon number must be finite and >= 0");

    double value;
    if (ch.G <= 1.0 + detail::edge_tol) {
        value = detail::esq_finite_pure_loss(ch.T, N);
    } else {
        const ClosedFormSpectra sp = closed_form_spectra(ch.G, ch.T, N);
        using gaussian_core::g_entropy;
        value = g_entropy(sp.nu_BE[0]) + g_entropy(sp.nu_BE[1]) - g_entropy(sp.nu_E[0]) -
                g_entropy(sp.nu_E[1]);
    }
    return BoundResult{detail::sanitize_nonnegative(value, "esq_finite_n"), "esq-finite-N",
                       Direction::upper, detail::describe(ch),
                       channels::PhotonConstraint::finite(N)};
}

// Same quantity through the generic machinery: build thermal(N) (+) vacuum^4,
// push it through the 10x10 pipeline, take H(B|E1'E2') from dense symplectic
// spectra. Exists to cross-check the closed forms, not for production use.
inline BoundResult esq_finite_n_oracle(const channels::PhaseInsensitiveChannel& ch, double N) {
    if (!(N >= 0.0) || !std::isfinite(N))
        throw std::domain_error("esq_finite_n_oracle: photon number must be finite and >= 0");
    using namespace gaussian_core;
    Matrix in = Matrix::Identity(10, 10);
    in(0, 0) = in(1, 1) = 1.0 + 2.0 * N;
    const CovarianceMatrix out = apply(channels::squashing_pipeline(ch), CovarianceMatrix(in));
    const double value = conditional_entropy(out, {0}, {1, 3}); // B given E1'E2'
    return BoundResult{detail::sanitize_nonnegative(value, "esq_finite_n_oracle"),
                       "esq-finite-N-oracle", Direction::upper, detail::describe(ch),
                       channels::PhotonConstraint::finite(N)};
}

// Unconstrained (N -> inf) limit of the bound. Piecewise:
//   identity channel          -> +inf
//   G = 1 (pure loss)         -> log2((1+T)/(1-T))
//   T = 1 (amplifier)         -> log2((G+1)/(G-1))
//   G T = 1 (additive line)   -> L'Hopital limit formula
//   otherwise                 -> ((1-T^2) G log2((1+T)/(1-T))
//                                 - (G^2-1) T log2((G+1)/(G-1))) / (1 - G^2 T^2)
// The general expression is evaluated in long double: near the additive line
// (|GT - 1| ~ branch tolerance) double precision leaves ~1e-9 of 0/0 residue,
// which would break the 1e-10 cross-parameterization identity.
inline BoundResult esq_asymptotic(const channels::PhaseInsensitiveChannel& ch) {
    const auto result = [&](double v) {
        return BoundResult{v, "esq-asymptotic", Direction::upper, detail::describe(ch),
                           channels::PhotonConstraint::unbounded()};
    };
    const double G = ch.G, T = ch.T;
    if (T >= 1.0 - detail::edge_tol && G <= 1.0 + detail::edge_tol)
        return result(detail::inf); // identity channel: bound diverges
    if (G <= 1.0 + detail::edge_tol)
        return result(static_cast<double>(detail::log2_ratio_1pm(static_cast<long double>(T))));
    if (T >= 1.0 - detail::edge_tol)
        return result(std::log2((G + 1.0) / (G - 1.0)));
    // tau = G T exactly, and branching on the stored tau keeps this routing
    // bit-identical with the tau-nu form of the same bound
    if (std::abs(ch.tau - 1.0) < detail::branch_tol)
        return result(static_cast<double>(detail::additive_limit_at_T(static_cast<long double>(T))));

    const long double Tl = T, Gl = G;
    const long double lt = detail::log2_ratio_1pm(Tl);
    const long double lg = std::log((Gl + 1.0L) / (Gl - 1.0L)) / detail::ln2l;
    const long double num = (1.0L - Tl * Tl) * Gl * lt - (Gl * Gl - 1.0L) * Tl * lg;
    const long double den = 1.0L - Gl * Gl * Tl * Tl;
    return result(detail::sanitize_nonnegative(static_cast<double>(num / den), "esq_asymptotic"));
}

// The same asymptotic bound written directly in the (tau, nu) parameters with
// zeta(a,b) = a b log2(a/b). Kept as an independent code path so the two
// printed forms can be checked against each other.
inline BoundResult esq_asymptotic_tau_nu(double tau, double nu) {
    const channels::PhaseInsensitiveChannel ch = channels::from_tau_nu(tau, nu);
    const auto result = [&](double v) {
        return BoundResult{v, "esq-asymptotic-tau-nu", Direction::upper, detail::describe(ch),
                           channels::PhotonConstraint::unbounded()};
    };
    if (ch.T >= 1.0 - detail::edge_tol && ch.G <= 1.0 + detail::edge_tol)
        return result(detail::inf); // identity channel
    if (ch.T >= 1.0 - detail::edge_tol) // amplifiers with tau = G near 1 stay finite
        return result(std::log2((ch.G + 1.0) / (ch.G - 1.0)));
    if (std::abs(tau - 1.0) < detail::branch_tol) // tau = G T, so this is the additive line
        return result(static_cast<double>(detail::additive_limit_at_T(static_cast<long double>(ch.T))));

    const long double t = tau, n = nu;
    const long double num =
        detail::zeta2(1.0L + n + 3.0L * t, 1.0L + n - t) - t * detail::zeta2(t + n + 3.0L, t + n - 1.0L);
    const long double den = 2.0L * (1.0L + n + t) * (1.0L - t * t);
    return result(detail::sanitize_nonnegative(static_cast<double>(num / den),
                                               "esq_asymptotic_tau_nu"));
}

// Additive-noise channel limit, n_bar = noise variance; through T = 1/(n_bar+1)
inline BoundResult esq_additive_limit(double n_bar) {
    if (!(n_bar > 0.0))
        throw std::domain_error("esq_additive_limit: noise variance must be > 0");
    const long double t = 1.0L / (static_cast<long double>(n_bar) + 1.0L);
    const double value = static_cast<double>(detail::additive_limit_at_T(t));
    return BoundResult{value, "esq-additive-limit", Direction::upper,
                       "gaussian(additive,nbar=" + detail::fmt(n_bar) + ")",
                       channels::PhotonConstraint::unbounded()};
}

// Excess-noise form for 0 <= tau < 1, chi >= 0 (nu = 1 - tau + chi)
inline BoundResult esq_chi_form(double tau, double chi) {
    if (!(tau >= 0.0 && tau < 1.0))
        throw std::domain_error("esq_chi_form: tau must lie in [0,1)");
    if (!(chi >= 0.0))
        throw std::domain_error("esq_chi_form: chi must be >= 0");
    const auto result = [&](double v) {
        return BoundResult{v, "esq-chi", Direction::upper,
                           "gaussian(tau=" + detail::fmt(tau) + ",chi=" + detail::fmt(chi) + ")",
                           channels::PhotonConstraint::unbounded()};
    };
    if (tau > 1.0 - detail::branch_tol) {
        // additive line; T = 2 tau / (2 + chi) matches the tau-nu route exactly
        const long double t = 2.0L * static_cast<long double>(tau) / (2.0L + static_cast<long double>(chi));
        return result(static_cast<double>(detail::additive_limit_at_T(t)));
    }
    const long double t = tau, x = chi;
    const long double num =
        detail::zeta2(x + 2.0L + 2.0L * t, x + 2.0L - 2.0L * t) - t * detail::zeta2(x + 4.0L, x);
    const long double den = (4.0L + 2.0L * x) * (1.0L - t * t);
    return result(detail::sanitize_nonnegative(static_cast<double>(num / den), "esq_chi_form"));
}

// ---- finite-dimensional channel bounds ------------------------------------

// erasure channel capacity, exact: Q2 = P2 = (1-p) log2 d
inline BoundResult erasure_capacity(int d, double p) {
    const auto spec = channels::QubitChannelSpec::erasure(d, p);
    return BoundResult{(1.0 - p) * std::log2(static_cast<double>(d)), "erasure-exact",
                       Direction::exact,
                       "erasure(d=" + std::to_string(spec.d) + ",p=" + detail::fmt(p) + ")",
                       channels::PhotonConstraint::unbounded()};
}

// half the entanglement-assisted capacity: (1/2) max_p [h(p) + h((1-g)p) - h(gp)]
inline BoundResult amplitude_damping_bound(double gamma) {
    channels::QubitChannelSpec::amplitude_damping(gamma); // range check
    const auto objective = [gamma](double p) {
        return detail::binary_entropy(p) + detail::binary_entropy((1.0 - gamma) * p) -
               detail::binary_entropy(gamma * p);
    };
    const double best = detail::grid_golden_max(objective, 0.0, 1.0, 101, 1e-10);
    return BoundResult{std::max(0.5 * best, 0.0), "esq-ad", Direction::upper,
                       "amplitude-damping(gamma=" + detail::fmt(gamma) + ")",
                       channels::PhotonConstraint::unbounded()};
}

// 1 - H(pbar)/2 for a Pauli channel with probabilities pbar, floored at 0
inline BoundResult pauli_bound(double p0, double p1, double p2, double p3) {
    const auto spec = channels::QubitChannelSpec::pauli(p0, p1, p2, p3);
    double H = 0.0;
    for (double p : spec.pbar)
        if (p > 0.0)
            H -= p * std::log2(p);
    return BoundResult{std::max(1.0 - 0.5 * H, 0.0), "esq-pauli", Direction::upper,
                       "pauli(p0=" + detail::fmt(p0) + ",p1=" + detail::fmt(p1) + ",p2=" +
                           detail::fmt(p2) + ",p3=" + detail::fmt(p3) + ")",
                       channels::PhotonConstraint::unbounded()};
}

// Depolarizing bound: zero at and past the entanglement-breaking point
// p = 2/3; below it, optimize the convex split into a weaker depolarizing
// channel at eps and the entanglement-breaking one, min over eps in [0, p] of
// (1 - alpha) dp1(eps) with alpha = (p - eps)/(2/3 - eps).
inline BoundResult depolarizing_bound(double p) {
    channels::QubitChannelSpec::depolarizing(p); // range check
    const auto describe = [&] { return "depolarizing(p=" + detail::fmt(p) + ")"; };
    constexpr double eb_onset = 2.0 / 3.0;
    if (p >= eb_onset)
        return BoundResult{0.0, "esq-depol", Direction::upper, describe(),
                           channels::PhotonConstraint::unbounded()};
    const auto objective = [p](double eps) {
        const double alpha = (p - eps) / (eb_onset - eps);
        return (1.0 - alpha) * detail::dp1_value(eps);
    };
    const double best = p > 0.0 ? detail::grid_golden_min(objective, 0.0, p, 201, 1e-10)
                                : detail::dp1_value(0.0);
    return BoundResult{std::max(best, 0.0), "esq-depol", Direction::upper, describe(),
                       channels::PhotonConstraint::unbounded()};
}

// E_sq is convex over channels: a convex mixture of channels is bounded by the
// weighted sum of the component bounds
inline BoundResult convex_combination_bound(const std::vector<std::pair<double, BoundResult>>& terms) {
    if (terms.empty())
        throw std::invalid_argument("convex_combination_bound: no terms");
    double wsum = 0.0, value = 0.0;
    for (const auto& [w, r] : terms) {
        if (!(w >= 0.0))
            throw std::invalid_argument("convex_combination_bound: weights must be >= 0");
        if (r.direction == Direction::lower)
            throw std::invalid_argument("convex_combination_bound: needs upper/exact bounds");
        wsum += w;
        value += w * r.value;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw std::invalid_argument("convex_combination_bound: weights sum to " +
                                    detail::fmt(wsum) + ", not 1");
    return BoundResult{value, "convex-combination", Direction::upper, "mixture",
                       channels::PhotonConstraint::unbounded()};
}

// Entanglement-breaking channels have zero squashed entanglement, hence zero
// Q2 and P2; the caller asserts the EB predicate
inline BoundResult eb_zero_bound(const std::string& channel_descriptor) {
    return BoundResult{0.0, "eb-zero", Direction::upper, channel_descriptor,
                       channels::PhotonConstraint::unbounded()};
}

} // namespace sqbound::bounds
