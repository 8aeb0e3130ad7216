#pragma once

// Phase-insensitive Gaussian channel parameterizations, validity and
// entanglement-breaking predicates, qubit channel descriptors, and the 5-mode
// dilation-plus-squashing pipeline.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "sqbound/gaussian_core.hpp"

namespace sqbound::channels {

struct invalid_channel : std::domain_error {
    using std::domain_error::domain_error;
};

// Canonical parameterization is (tau, nu): loss/gain tau >= 0, noise nu with
// nu >= |1 - tau|. The dilation parameters are derived:
//   T = 2 tau / (tau + nu + 1)   beamsplitter transmissivity
//   G = (tau + nu + 1) / 2       amplifier gain
// and satisfy tau = G T, nu = 2G - 1 - G T.
struct PhaseInsensitiveChannel {
    double tau = 0.0;
    double nu = 1.0;
    double T = 0.0; // derived
    double G = 1.0; // derived
};

inline PhaseInsensitiveChannel from_tau_nu(double tau, double nu) {
    if (!(tau >= 0.0) || !std::isfinite(tau) || !std::isfinite(nu))
        throw invalid_channel("channel: tau must be finite and >= 0");
    if (nu < std::abs(1.0 - tau) - 1e-12)
        throw invalid_channel("channel: nu = " + std::to_string(nu) +
                              " violates nu >= |1 - tau| = " + std::to_string(std::abs(1.0 - tau)));
    PhaseInsensitiveChannel ch;
    ch.tau = tau;
    ch.nu = nu;
    const double s = tau + nu + 1.0;
    // rounding in tau + nu can push the derived values a hair past their
    // mathematical range (G >= 1, T <= 1); clamp so sqrt(G-1) etc. stay real
    ch.T = std::min(1.0, 2.0 * tau / s);
    ch.G = std::max(1.0, 0.5 * s);
    return ch;
}

inline PhaseInsensitiveChannel pure_loss(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error("pure_loss: eta must lie in [0,1]");
    return from_tau_nu(eta, 1.0 - eta);
}

inline PhaseInsensitiveChannel thermal(double eta, double n_b) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error("thermal: eta must lie in [0,1]");
    if (!(n_b >= 0.0))
        throw std::domain_error("thermal: N_B must be >= 0");
    return from_tau_nu(eta, (1.0 - eta) * (2.0 * n_b + 1.0));
}

// classical additive noise of variance n_bar; T = 1/(n_bar+1), G = n_bar+1
inline PhaseInsensitiveChannel additive(double n_bar) {
    if (!(n_bar > 0.0))
        throw std::domain_error("additive: noise variance must be > 0");
    return from_tau_nu(1.0, 2.0 * n_bar);
}

// quantum-limited amplifier, nu = G - 1 sits exactly on the validity boundary
inline PhaseInsensitiveChannel amplifier(double gain) {
    if (!(gain > 1.0))
        throw std::domain_error("amplifier: gain must be > 1");
    return from_tau_nu(gain, gain - 1.0);
}

inline PhaseInsensitiveChannel from_chi(double tau, double chi) {
    if (!(chi >= 0.0))
        throw std::domain_error("from_chi: excess noise chi must be >= 0");
    return from_tau_nu(tau, 1.0 - tau + chi);
}

// nu >= tau + 1, equivalently G(1-T) >= 1. The canonical form is exact at the
// additive-noise onset n_bar = 1 where the derived G(1-T) sits on the boundary
// only up to rounding.
inline bool is_entanglement_breaking(const PhaseInsensitiveChannel& ch) {
    return ch.nu >= ch.tau + 1.0;
}

// Stinespring dilation plus squashing isometry as one 10x10 symplectic matrix
// D = B3 S B2 B1 in mode order (A', E1, F1, E2, F2):
//   B1: transmissivity-T beamsplitter on (A', E1)   -- the loss
//   B2: balanced beamsplitter on (E1, F1)           -- squash arm 1
//   S : gain-G two-mode squeezer on (A', E2)        -- the amplification
//   B3: balanced beamsplitter on (E2, F2)           -- squash arm 2
// Output slots carry (B, E1', F1', E2', F2') in the same order.
inline gaussian_core::SymplecticTransform squashing_pipeline(const PhaseInsensitiveChannel& ch) {
    using namespace gaussian_core;
    const SymplecticTransform b1 = beamsplitter(ch.T, 0, 1, 5);
    const SymplecticTransform b2 = beamsplitter(0.5, 1, 2, 5);
    const SymplecticTransform s = two_mode_squeezer(ch.G, 0, 3, 5);
    const SymplecticTransform b3 = beamsplitter(0.5, 3, 4, 5);
    return compose(b3, compose(s, compose(b2, b1)));
}

// mean photon number constraint on the channel input
struct PhotonConstraint {
    std::optional<double> photons; // no value = unbounded

    static PhotonConstraint unbounded() { return {}; }
    static PhotonConstraint finite(double n) {
        if (!(n >= 0.0))
            throw std::domain_error("photon constraint: N must be >= 0");
        PhotonConstraint c;
        c.photons = n;
        return c;
    }
    bool is_finite() const { return photons.has_value(); }
};

struct QubitChannelSpec {
    enum class Kind { erasure, amplitude_damping, pauli, depolarizing };
    Kind kind;
    int d = 2;          // erasure dimension
    double p = 0.0;     // erasure / depolarizing probability
    double gamma = 0.0; // amplitude damping
    double pbar[4] = {1.0, 0.0, 0.0, 0.0}; // pauli distribution

    static QubitChannelSpec erasure(int d, double p) {
        if (d < 2)
            throw std::domain_error("erasure: dimension must be >= 2");
        if (!(p >= 0.0 && p <= 1.0))
            throw std::domain_error("erasure: probability must lie in [0,1]");
        QubitChannelSpec s;
        s.kind = Kind::erasure;
        s.d = d;
        s.p = p;
        return s;
    }
    static QubitChannelSpec amplitude_damping(double gamma) {
        if (!(gamma >= 0.0 && gamma <= 1.0))
            throw std::domain_error("amplitude damping: gamma must lie in [0,1]");
        QubitChannelSpec s;
        s.kind = Kind::amplitude_damping;
        s.gamma = gamma;
        return s;
    }
    static QubitChannelSpec pauli(double p0, double p1, double p2, double p3) {
        const double sum = p0 + p1 + p2 + p3;
        if (!(p0 >= 0.0 && p1 >= 0.0 && p2 >= 0.0 && p3 >= 0.0))
            throw std::invalid_argument("pauli: probabilities must be >= 0");
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("pauli: probabilities sum to " + std::to_string(sum) +
                                        ", not 1");
        QubitChannelSpec s;
        s.kind = Kind::pauli;
        s.pbar[0] = p0;
        s.pbar[1] = p1;
        s.pbar[2] = p2;
        s.pbar[3] = p3;
        return s;
    }
    static QubitChannelSpec depolarizing(double p) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::domain_error("depolarizing: probability must lie in [0,1]");
        QubitChannelSpec s;
        s.kind = Kind::depolarizing;
        s.p = p;
        return s;
    }
};

} // namespace sqbound::channels
