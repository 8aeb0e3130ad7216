#pragma once

// Comparison curves for the figures: entanglement-flux upper bounds, the exact
// amplifier capacity, and the coherent-information-style lower bounds. Only
// curves with a printed closed form are implemented; the one borrowed formula
// (the pure-loss secret-key capacity) is flagged source = "external-cited" in
// every output it appears in.

#include <cmath>
#include <stdexcept>
#include <string>

#include "sqbound/bounds.hpp"

namespace sqbound::comparisons {

using bounds::BoundResult;
using bounds::Direction;

// entanglement-flux bound for amplitude damping: min{1, -log2(gamma)}
inline BoundResult pirandola_ad(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::domain_error("pirandola_ad: gamma must lie in [0,1]");
    const double value = gamma > 0.0 ? std::min(1.0, -std::log2(gamma)) : 1.0;
    return BoundResult{value, "pirandola-ad", Direction::upper,
                       "amplitude-damping(gamma=" + bounds::detail::fmt(gamma) + ")",
                       channels::PhotonConstraint::unbounded()};
}

// reverse coherent information of amplitude damping: max_p [h(p) - h(p gamma)]
inline BoundResult rci_ad(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::domain_error("rci_ad: gamma must lie in [0,1]");
    const auto objective = [gamma](double p) {
        return bounds::detail::binary_entropy(p) - bounds::detail::binary_entropy(p * gamma);
    };
    const double best = bounds::detail::grid_golden_max(objective, 0.0, 1.0, 101, 1e-10);
    return BoundResult{std::max(best, 0.0), "rci-ad", Direction::lower,
                       "amplitude-damping(gamma=" + bounds::detail::fmt(gamma) + ")",
                       channels::PhotonConstraint::unbounded()};
}

// exact amplifier capacity Q2 = P2 = log2(G/(G-1))
inline BoundResult pirandola_amplifier(double gain) {
    if (!(gain > 1.0))
        throw std::domain_error("pirandola_amplifier: gain must be > 1");
    return BoundResult{std::log2(gain / (gain - 1.0)), "pirandola-amplifier", Direction::exact,
                       "gaussian(amplifier,G=" + bounds::detail::fmt(gain) + ")",
                       channels::PhotonConstraint::unbounded()};
}

// additive-noise upper bound (n_bar - 1)/ln2 - log2(n_bar); zero exactly at
// the entanglement-breaking onset n_bar = 1
inline BoundResult pirandola_additive(double n_bar) {
    if (!(n_bar > 0.0))
        throw std::domain_error("pirandola_additive: noise variance must be > 0");
    return BoundResult{(n_bar - 1.0) / bounds::detail::ln2 - std::log2(n_bar),
                       "pirandola-additive", Direction::upper,
                       "gaussian(additive,nbar=" + bounds::detail::fmt(n_bar) + ")",
                       channels::PhotonConstraint::unbounded()};
}

// coherent information of the additive-noise channel, a lower bound on P2;
// negative for n_bar > 1/e -- reported as-is, capacity displays floor it at 0
inline BoundResult coherent_info_additive(double n_bar) {
    if (!(n_bar > 0.0))
        throw std::domain_error("coherent_info_additive: noise variance must be > 0");
    return BoundResult{-1.0 / bounds::detail::ln2 - std::log2(n_bar), "coherent-info-additive",
                       Direction::lower,
                       "gaussian(additive,nbar=" + bounds::detail::fmt(n_bar) + ")",
                       channels::PhotonConstraint::unbounded()};
}

// two-way assisted secret-key capacity of the pure-loss channel, -log2(1-eta);
// the formula is cited from the repeaterless-bound literature, not derived
// here, hence the external source tag
inline BoundResult plob_pure_loss(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error("plob_pure_loss: eta must lie in [0,1]");
    const double value = eta < 1.0 ? -std::log1p(-eta) / bounds::detail::ln2
                                   : std::numeric_limits<double>::infinity();
    return BoundResult{value, "plob", Direction::exact,
                       "gaussian(pure-loss,eta=" + bounds::detail::fmt(eta) + ")",
                       channels::PhotonConstraint::unbounded(), "external-cited"};
}

// the pure-loss squashed-entanglement bound log2((1+eta)/(1-eta)) under its
// historical name, for figure legends
inline BoundResult takeoka_pure_loss(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error("takeoka_pure_loss: eta must lie in [0,1]");
    const double value =
        eta < 1.0 ? static_cast<double>(bounds::detail::log2_ratio_1pm(static_cast<long double>(eta)))
                  : std::numeric_limits<double>::infinity();
    return BoundResult{value, "takeoka-pure-loss", Direction::upper,
                       "gaussian(pure-loss,eta=" + bounds::detail::fmt(eta) + ")",
                       channels::PhotonConstraint::unbounded()};
}

} // namespace sqbound::comparisons
