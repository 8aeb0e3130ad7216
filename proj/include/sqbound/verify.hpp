#pragma once

// Self-check suites behind the `verify` subcommand: oracle cross-checks and
// the bound invariants, numbered to match the acceptance checklist. Random
// grids are seed-pinned and the uniform deviates are derived from the raw
// mt19937_64 stream directly (not std::uniform_real_distribution, whose
// output is implementation-defined), so a report is reproducible bit for bit.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sqbound/bounds.hpp"
#include "sqbound/channels.hpp"
#include "sqbound/comparisons.hpp"

namespace sqbound::cli {

struct VerifyOptions {
    std::uint64_t seed = 8675309;
    double tol_scale = 1.0;   // multiplies every tolerance
    double inject_fault = 0.0; // added to a closed-form eigenvalue, negative control
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    bool all_pass = true;
};

namespace detail {

struct uniform_source {
    std::mt19937_64 gen;
    explicit uniform_source(std::uint64_t seed) : gen(seed) {}
    double next() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; } // [0,1)
    double next(double lo, double hi) { return lo + (hi - lo) * next(); }
};

// deviation tracker: a suite passes if its worst deviation stays under its
// tolerance and no structural check failed
struct suite_run {
    double worst = 0.0;
    bool ok = true;
    std::string note;

    void dev(double d) { worst = std::max(worst, std::abs(d)); }
    void require(bool cond, const std::string& why) {
        if (!cond && ok) {
            ok = false;
            note = why;
        }
    }
    SuiteResult finish(const std::string& name, double tol) const {
        SuiteResult r;
        r.name = name;
        r.pass = ok && worst <= tol;
        r.detail = ok ? ("max deviation " + bounds::detail::fmt(worst) + ", tolerance " +
                         bounds::detail::fmt(tol))
                      : note;
        return r;
    }
};

inline channels::PhaseInsensitiveChannel channel_from_gt(double G, double T) {
    return channels::from_tau_nu(G * T, 2.0 * G - 1.0 - G * T);
}

inline gaussian_core::CovarianceMatrix squashed_output(const channels::PhaseInsensitiveChannel& ch,
                                                       double N) {
    using namespace gaussian_core;
    Matrix in = Matrix::Identity(10, 10);
    in(0, 0) = in(1, 1) = 1.0 + 2.0 * N;
    return apply(channels::squashing_pipeline(ch), CovarianceMatrix(in));
}

} // namespace detail

inline VerifyReport run_verify(const VerifyOptions& opt = {}) {
    using channels::from_tau_nu;
    using channels::pure_loss;
    namespace bd = bounds::detail;
    const double ts = opt.tol_scale;
    VerifyReport report;

    const auto add = [&](SuiteResult r) {
        report.all_pass = report.all_pass && r.pass;
        report.suites.push_back(std::move(r));
    };
    const auto guarded = [&](const std::string& name, auto&& body) {
        try {
            add(body());
        } catch (const std::exception& e) {
            add(SuiteResult{name, false, std::string("exception: ") + e.what()});
        }
    };

    // 1: pure-loss asymptotic bound equals log2((1+eta)/(1-eta))
    guarded("1-pure-loss-asymptotic", [&] {
        detail::suite_run run;
        for (int k = 0; k <= 9; ++k) {
            const double eta = k / 10.0;
            const double want = std::log2((1.0 + eta) / (1.0 - eta));
            run.dev(bounds::esq_asymptotic(pure_loss(eta)).value - want);
        }
        return run.finish("1-pure-loss-asymptotic", 1e-12 * ts);
    });

    // 2: amplifier bound equals log2((G+1)/(G-1)) and dominates the exact capacity
    guarded("2-amplifier", [&] {
        detail::suite_run run;
        for (double G : {1.1, 2.0, 5.0, 10.0}) {
            const double v = bounds::esq_asymptotic(channels::amplifier(G)).value;
            run.dev(v - std::log2((G + 1.0) / (G - 1.0)));
            run.require(v >= comparisons::pirandola_amplifier(G).value,
                        "amplifier bound fell below the exact capacity at G = " + bd::fmt(G));
        }
        return run.finish("2-amplifier", 1e-12 * ts);
    });

    // 3: the general bound approaches the additive-noise limit from either side
    guarded("3-additive-limit", [&] {
        detail::suite_run run;
        for (double nbar : {0.1, 1.0, 10.0}) {
            const double T = 1.0 / (nbar + 1.0);
            const double limit = bounds::esq_additive_limit(nbar).value;
            for (double side : {-1.0, 1.0}) {
                const double G = (1.0 + side * 1e-6) / T;
                const double v = bounds::esq_asymptotic(detail::channel_from_gt(G, T)).value;
                run.dev(v - limit);
            }
        }
        const double exact = 1.25 * std::log2(3.0) - 1.0 / bd::ln2;
        run.require(std::abs(bounds::esq_additive_limit(1.0).value - exact) <= 1e-12 * ts,
                    "closed-form additive value at nbar = 1 drifted");
        return run.finish("3-additive-limit", 1e-5 * ts);
    });

    // 4: (T,G), (tau,nu) and (tau,chi) forms of the asymptotic bound agree
    guarded("4-parameterization", [&] {
        detail::suite_run run;
        detail::uniform_source u(opt.seed);
        for (int k = 0; k < 500; ++k) {
            const double tau = u.next(0.0, 3.0);
            const double nu = std::abs(1.0 - tau) + u.next(0.0, 3.0);
            const double a = bounds::esq_asymptotic(from_tau_nu(tau, nu)).value;
            const double b = bounds::esq_asymptotic_tau_nu(tau, nu).value;
            run.dev(a - b);
            if (tau < 1.0) {
                const double chi = std::max(0.0, nu - (1.0 - tau));
                run.dev(b - bounds::esq_chi_form(tau, chi).value);
            }
        }
        return run.finish("4-parameterization", 1e-10 * ts);
    });

    // 5: closed-form spectra and bound against the generic dense pipeline
    guarded("5-closed-form-oracle", [&] {
        detail::suite_run run;
        detail::uniform_source u(opt.seed + 1);
        for (int k = 0; k < 1000; ++k) {
            const double G = u.next(1.0, 10.0);
            const double T = 1.0 - u.next(); // (0, 1]
            const double N = u.next(0.0, 100.0);
            const auto ch = detail::channel_from_gt(G, T);

            auto sp = bounds::closed_form_spectra(G, T, N);
            sp.nu_E[0] += opt.inject_fault; // negative-control hook, normally 0

            const auto out = detail::squashed_output(ch, N);
            const auto gen_e = gaussian_core::symplectic_eigenvalues(gaussian_core::reduce(out, {1, 3}));
            const auto gen_be =
                gaussian_core::symplectic_eigenvalues(gaussian_core::reduce(out, {0, 1, 3}));

            double e_hi = std::max(sp.nu_E[0], sp.nu_E[1]);
            double e_lo = std::min(sp.nu_E[0], sp.nu_E[1]);
            run.dev(e_hi - gen_e.values[0]);
            run.dev(e_lo - gen_e.values[1]);
            double be[3] = {sp.nu_BE[0], sp.nu_BE[1], sp.nu_BE[2]};
            std::sort(be, be + 3, std::greater<double>());
            for (int i = 0; i < 3; ++i)
                run.dev(be[i] - gen_be.values[static_cast<std::size_t>(i)]);

            run.dev(bounds::esq_finite_n(ch, N).value - bounds::esq_finite_n_oracle(ch, N).value);
        }
        return run.finish("5-closed-form-oracle", 1e-8 * ts);
    });

    // 6: finite-N bound starts at zero, grows with N, stays under the
    // asymptotic value, and closes the gap as N grows
    guarded("6-finite-N-properties", [&] {
        detail::suite_run run;
        detail::uniform_source u(opt.seed + 2);
        const double Ns[] = {0.0, 0.01, 0.1, 1.0, 10.0, 100.0, 1000.0};
        for (int k = 0; k < 100; ++k) {
            const double G = u.next(1.0, 5.0);
            const double T = u.next(0.05, 0.95);
            const auto ch = detail::channel_from_gt(G, T);
            const double va = bounds::esq_asymptotic(ch).value;

            double prev = -1.0;
            for (double N : Ns) {
                const double v = bounds::esq_finite_n(ch, N).value;
                if (N == 0.0)
                    run.require(v <= 1e-10 * ts, "nonzero bound at N = 0");
                run.require(v >= prev - 1e-10 * ts, "bound decreased in N at N = " + bd::fmt(N));
                run.require(v <= va + 1e-8 * ts, "finite-N bound exceeded the asymptotic value");
                prev = v;
            }
            const double gap3 = va - bounds::esq_finite_n(ch, 1e3).value;
            const double gap6 = va - bounds::esq_finite_n(ch, 1e6).value;
            run.require(gap6 < gap3, "gap to the asymptotic bound failed to shrink by N = 1e6");
        }
        return run.finish("6-finite-N-properties", 1.0); // structural checks only
    });

    // 7: conditioning on E1'E2' and on F1'F2' gives the same entropy
    guarded("7-squash-symmetry", [&] {
        detail::suite_run run;
        detail::uniform_source u(opt.seed + 3);
        for (int k = 0; k < 200; ++k) {
            const double G = u.next(1.0, 10.0);
            const double T = 1.0 - u.next();
            const double N = u.next(0.0, 100.0);
            const auto out = detail::squashed_output(detail::channel_from_gt(G, T), N);
            const double he = gaussian_core::conditional_entropy(out, {0}, {1, 3});
            const double hf = gaussian_core::conditional_entropy(out, {0}, {2, 4});
            run.dev(he - hf);
        }
        return run.finish("7-squash-symmetry", 1e-9 * ts);
    });

    // 8: finite-dimensional channel values
    guarded("8-finite-dimensional", [&] {
        detail::suite_run run;
        run.require(bounds::erasure_capacity(2, 0.5).value == 0.5, "erasure(2, 0.5) != 0.5");
        run.require(bounds::pauli_bound(1, 0, 0, 0).value == 1.0, "pauli identity != 1");
        run.require(bounds::pauli_bound(0.25, 0.25, 0.25, 0.25).value == 0.0,
                    "uniform pauli != 0");
        run.require(bounds::depolarizing_bound(0.0).value == 1.0, "depolarizing(0) != 1");
        run.require(bounds::depolarizing_bound(2.0 / 3.0).value == 0.0, "depolarizing(2/3) != 0");
        for (int k = 0; k <= 100; ++k) {
            const double p = k / 100.0;
            run.require(bounds::depolarizing_bound(p).value <= bd::dp1_value(p) + 1e-12,
                        "optimized depolarizing bound above the single-term bound at p = " +
                            bd::fmt(p));
        }
        run.require(bounds::amplitude_damping_bound(0.0).value == 1.0, "AD bound at 0 != 1");
        run.require(bounds::amplitude_damping_bound(1.0).value == 0.0, "AD bound at 1 != 0");
        run.dev(bounds::amplitude_damping_bound(0.5).value - 0.5);
        return run.finish("8-finite-dimensional", 1e-9 * ts);
    });

    // 9: entanglement-breaking predicate forms agree off the boundary, and the
    // EB route coexists with a strictly positive Gaussian bound
    guarded("9-entanglement-breaking", [&] {
        detail::suite_run run;
        for (int i = 1; i <= 19; i += 2) {
            const double tau = i / 10.0;
            for (double margin : {-0.2, -0.01, -1e-5, 1e-5, 0.01, 0.2}) {
                const auto ch = from_tau_nu(tau, tau + 1.0 + margin);
                const bool canonical = channels::is_entanglement_breaking(ch);
                const bool derived = ch.G * (1.0 - ch.T) >= 1.0;
                run.require(canonical == derived,
                            "EB predicate forms disagree at tau = " + bd::fmt(tau) +
                                ", margin = " + bd::fmt(margin));
            }
        }
        const auto eb_ch = channels::thermal(0.4, 1.0);
        run.require(channels::is_entanglement_breaking(eb_ch), "thermal(0.4, 1) not flagged EB");
        run.require(bounds::eb_zero_bound(bd::describe(eb_ch)).value == 0.0,
                    "EB route gave a nonzero bound");
        const double v = bounds::esq_asymptotic(eb_ch).value;
        run.require(v > 0.0, "Gaussian bound vanished on the EB thermal channel");
        run.dev(v - 0.333824138637540735); // frozen reference value
        return run.finish("9-entanglement-breaking", 1e-10 * ts);
    });

    return report;
}

} // namespace sqbound::cli
