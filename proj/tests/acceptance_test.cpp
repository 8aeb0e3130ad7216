// Acceptance gate: one check per stated criterion, one PASS/FAIL line each.
// Exits nonzero if any criterion fails. Kept independent of the unit-test
// framework so the output reads as a plain checklist.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "sqbound/bounds.hpp"
#include "sqbound/channels.hpp"
#include "sqbound/cli.hpp"
#include "sqbound/comparisons.hpp"
#include "sqbound/gaussian_core.hpp"

using namespace sqbound;

namespace {

int failures = 0;

void report(int num, const std::string& what, bool pass, const std::string& note = "") {
    std::printf("%s criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", num, what.c_str(),
                note.empty() ? "" : " -- ", note.c_str());
    if (!pass)
        ++failures;
}

struct rng {
    std::mt19937_64 gen;
    explicit rng(uint64_t seed) : gen(seed) {}
    double uni(double lo, double hi) { return lo + (hi - lo) * ((gen() >> 11) * 0x1.0p-53); }
};

channels::PhaseInsensitiveChannel from_gt(double g, double t) {
    return channels::from_tau_nu(g * t, 2.0 * g - 1.0 - g * t);
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

int run_cli_code(const std::string& args) {
    const std::string cmd = std::string("\"") + SQBOUND_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_1() {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double eta = i / 10.0;
        const double got = bounds::esq_asymptotic(channels::pure_loss(eta)).value;
        const double want = std::log2((1.0 + eta) / (1.0 - eta));
        worst = std::max(worst, std::abs(got - want));
    }
    report(1, "pure-loss asymptotic bound equals log2((1+eta)/(1-eta)) to 1e-12", worst <= 1e-12,
           "max deviation " + num(worst));
}

void criterion_2() {
    double worst = 0.0;
    bool ordered = true;
    for (double g : {1.1, 2.0, 5.0, 10.0}) {
        const double got = bounds::esq_asymptotic(channels::amplifier(g)).value;
        const double want = std::log2((g + 1.0) / (g - 1.0));
        worst = std::max(worst, std::abs(got - want));
        ordered = ordered && got >= comparisons::pirandola_amplifier(g).value;
    }
    report(2, "amplifier asymptotic bound equals log2((G+1)/(G-1)) and dominates log2(G/(G-1))",
           worst <= 1e-12 && ordered, "max deviation " + num(worst));
}

void criterion_3() {
    double worst = 0.0;
    for (double nbar : {0.1, 1.0, 10.0}) {
        const double t = 1.0 / (nbar + 1.0);
        const double lim = bounds::esq_additive_limit(nbar).value;
        for (double sign : {-1.0, 1.0}) {
            const double g = (1.0 + sign * 1e-6) / t;
            if (g <= 1.0)
                continue;
            worst = std::max(worst, std::abs(bounds::esq_asymptotic(from_gt(g, t)).value - lim));
        }
    }
    const double exact = 1.25 * std::log2(3.0) - 1.0 / std::log(2.0);
    const double dev1 = std::abs(bounds::esq_additive_limit(1.0).value - exact);
    report(3, "additive-noise limit matched near GT=1 (1e-5) and exact at nbar=1 (1e-12)",
           worst <= 1e-5 && dev1 <= 1e-12,
           "limit deviation " + num(worst) + ", nbar=1 deviation " + num(dev1));
}

void criterion_4() {
    rng r(20240811);
    double worst12 = 0.0, worst2c = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double tau = r.uni(0.0, 3.0);
        const double nu = std::abs(1.0 - tau) + r.uni(1e-9, 4.0);
        const double g1 = bounds::esq_asymptotic(channels::from_tau_nu(tau, nu)).value;
        const double g2 = bounds::esq_asymptotic_tau_nu(tau, nu).value;
        if (std::isinf(g1) || std::isinf(g2)) {
            if (std::isinf(g1) != std::isinf(g2))
                worst12 = 1.0;
            continue;
        }
        worst12 = std::max(worst12, std::abs(g1 - g2));
    }
    for (int i = 0; i < 500; ++i) {
        const double tau = r.uni(0.0, 0.999999);
        const double chi = r.uni(0.0, 5.0);
        const double g2 = bounds::esq_asymptotic_tau_nu(tau, 1.0 - tau + chi).value;
        const double gc = bounds::esq_chi_form(tau, chi).value;
        worst2c = std::max(worst2c, std::abs(g2 - gc));
    }
    report(4, "the three asymptotic parameterizations agree to 1e-10 on 500 random channels",
           worst12 <= 1e-10 && worst2c <= 1e-10,
           "Gbound1-Gbound2 " + num(worst12) + ", Gbound2-chi " + num(worst2c));
}

void criterion_5() {
    rng r(424242);
    double worst_eig = 0.0, worst_esq = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double g = r.uni(1.0, 10.0);
        const double t = r.uni(1e-6, 1.0);
        const double n = r.uni(0.0, 100.0);
        auto ch = from_gt(g, t);
        auto cf = bounds::closed_form_spectra(g, t, n);

        auto d = channels::squashing_pipeline(ch);
        gaussian_core::Matrix in = gaussian_core::Matrix::Identity(10, 10);
        in(0, 0) = in(1, 1) = 1.0 + 2.0 * n;
        auto out = gaussian_core::apply(d, gaussian_core::CovarianceMatrix(in));
        auto nu_e = gaussian_core::symplectic_eigenvalues(gaussian_core::reduce(out, {1, 3}));
        auto nu_be = gaussian_core::symplectic_eigenvalues(gaussian_core::reduce(out, {0, 1, 3}));

        std::vector<double> ce{cf.nu_E[0], cf.nu_E[1]};
        std::sort(ce.rbegin(), ce.rend());
        std::vector<double> cbe{cf.nu_BE[0], cf.nu_BE[1], cf.nu_BE[2]};
        std::sort(cbe.rbegin(), cbe.rend());
        for (int k = 0; k < 2; ++k)
            worst_eig = std::max(worst_eig, std::abs(ce[k] - nu_e.values[k]) /
                                                std::max(1.0, std::abs(ce[k])));
        for (int k = 0; k < 3; ++k)
            worst_eig = std::max(worst_eig, std::abs(cbe[k] - nu_be.values[k]) /
                                                std::max(1.0, std::abs(cbe[k])));
        worst_esq = std::max(worst_esq, std::abs(bounds::esq_finite_n(ch, n).value -
                                                 bounds::esq_finite_n_oracle(ch, n).value));
    }
    report(5, "closed-form spectra and finite-N bound match the generic pipeline oracle (1e-8, 1000 draws)",
           worst_eig <= 1e-8 && worst_esq <= 1e-8,
           "eigenvalue deviation " + num(worst_eig) + ", bound deviation " + num(worst_esq));
}

void criterion_6() {
    rng r(777);
    const double ns[] = {0.0, 0.01, 0.1, 1.0, 10.0, 100.0, 1e3};
    double worst_zero = 0.0, worst_drop = 0.0, worst_over = 0.0;
    bool gaps_shrink = true;
    for (int i = 0; i < 100; ++i) {
        const double g = 1.0 + r.uni(0.0, 4.0);
        const double t = r.uni(0.01, 0.999);
        auto ch = from_gt(g, t);
        const double limit = bounds::esq_asymptotic(ch).value;
        worst_zero = std::max(worst_zero, std::abs(bounds::esq_finite_n(ch, 0.0).value));
        double prev = 0.0;
        for (double n : ns) {
            const double cur = bounds::esq_finite_n(ch, n).value;
            worst_drop = std::max(worst_drop, prev - cur);
            worst_over = std::max(worst_over, cur - limit);
            prev = cur;
        }
        const double gap3 = limit - bounds::esq_finite_n(ch, 1e3).value;
        const double gap6 = limit - bounds::esq_finite_n(ch, 1e6).value;
        gaps_shrink = gaps_shrink && gap6 < gap3;
    }
    report(6, "finite-N bound: zero at N=0, non-decreasing, below asymptotic, gap shrinks (100 channels)",
           worst_zero <= 1e-10 && worst_drop <= 1e-10 && worst_over <= 1e-8 && gaps_shrink,
           "N=0 " + num(worst_zero) + ", drop " + num(worst_drop) + ", overshoot " + num(worst_over));
}

void criterion_7() {
    rng r(1618);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double g = 1.0 + r.uni(0.0, 4.0);
        const double t = r.uni(0.01, 1.0);
        const double n = r.uni(0.0, 50.0);
        auto d = channels::squashing_pipeline(from_gt(g, t));
        gaussian_core::Matrix in = gaussian_core::Matrix::Identity(10, 10);
        in(0, 0) = in(1, 1) = 1.0 + 2.0 * n;
        auto out = gaussian_core::apply(d, gaussian_core::CovarianceMatrix(in));
        const double he = gaussian_core::conditional_entropy(out, {0}, {1, 3});
        const double hf = gaussian_core::conditional_entropy(out, {0}, {2, 4});
        worst = std::max(worst, std::abs(he - hf));
    }
    report(7, "conditioning on either squashed environment pair gives equal entropy (1e-9, 200 draws)",
           worst <= 1e-9, "max deviation " + num(worst));
}

void criterion_8() {
    bool ok = true;
    ok = ok && bounds::erasure_capacity(2, 0.5).value == 0.5;
    ok = ok && std::abs(bounds::pauli_bound(1, 0, 0, 0).value - 1.0) <= 1e-12;
    ok = ok && std::abs(bounds::pauli_bound(0.25, 0.25, 0.25, 0.25).value) <= 1e-12;
    ok = ok && std::abs(bounds::depolarizing_bound(0.0).value - 1.0) <= 1e-12;
    ok = ok && bounds::depolarizing_bound(2.0 / 3.0).value == 0.0;
    bool dominated = true;
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        const double cap = p < 2.0 / 3.0 ? bounds::detail::dp1_value(p) : 0.0;
        dominated = dominated && bounds::depolarizing_bound(p).value <= cap + 1e-12;
    }
    ok = ok && dominated;
    ok = ok && std::abs(bounds::amplitude_damping_bound(0.0).value - 1.0) <= 1e-9;
    ok = ok && std::abs(bounds::amplitude_damping_bound(1.0).value) <= 1e-9;
    ok = ok && std::abs(bounds::amplitude_damping_bound(0.5).value - 0.5) <= 1e-9;
    report(8, "finite-dimensional bounds hit their closed-form values", ok);
}

void criterion_9() {
    bool ok = true;
    rng r(31337);
    for (int i = 0; i < 400; ++i) {
        const double tau = r.uni(0.0, 2.5);
        const double nu = std::abs(1.0 - tau) + r.uni(0.0, 4.0);
        if (std::abs(nu - (tau + 1.0)) < 1e-9)
            continue;
        auto ch = channels::from_tau_nu(tau, nu);
        ok = ok && channels::is_entanglement_breaking(ch) == (ch.G * (1.0 - ch.T) >= 1.0);
    }
    auto eb = channels::thermal(0.4, 1.0);
    ok = ok && channels::is_entanglement_breaking(eb);
    ok = ok && bounds::eb_zero_bound("thermal(0.4,1)").value == 0.0;
    const double esq = bounds::esq_asymptotic(eb).value;
    ok = ok && esq > 0.0;
    report(9, "EB predicate matches G(1-T)>=1; EB route gives 0 while the Gaussian bound stays positive",
           ok, "esq_asymptotic(thermal(0.4,1)) = " + num(esq));
}

void criterion_10() {
    bool ok = true;
    auto fig2 = cli::figure_dataset(cli::FigureJob{"fig2-depol", 101});
    ok = ok && std::abs(fig2.curves[0].ys[5] - bounds::detail::dp1_value(0.05)) <= 1e-9;
    for (std::size_t k = 0; k < fig2.xs.size(); ++k)
        if (fig2.xs[k] >= 2.0 / 3.0)
            ok = ok && fig2.curves[0].ys[k] == 0.0;

    auto fig4 = cli::figure_dataset(cli::FigureJob{"fig4-thermal", 31});
    for (std::size_t k = 1; k < fig4.xs.size(); ++k)
        ok = ok && fig4.curves[0].ys[k] > 0.0 && std::isfinite(fig4.curves[0].ys[k]);

    auto fig5 = cli::figure_dataset(cli::FigureJob{"fig5-pureloss-finite", 41});
    for (const auto& curve : fig5.curves) {
        for (double y : curve.ys)
            ok = ok && std::isfinite(y) && y >= 0.0;
        for (std::size_t k = 1; k < curve.ys.size(); ++k)
            ok = ok && curve.ys[k] >= curve.ys[k - 1];
    }
    report(10, "figure datasets reproduce the stated curve properties (fig2, fig4, fig5)", ok);
}

void criterion_11() {
    const int good = run_cli_code("verify");
    const int bad = run_cli_code("verify --inject-fault 1e-3");
    report(11, "verify subcommand passes clean and fails the injected-fault negative control",
           good == 0 && bad == 2,
           "clean exit " + std::to_string(good) + ", fault exit " + std::to_string(bad));
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (failures == 0) {
        std::printf("acceptance: all 11 criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
