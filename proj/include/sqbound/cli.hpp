#pragma once

// Sweep and figure dataset construction plus the CSV/JSON renderers backing
// the command line tool. Everything here is deterministic: fixed grids, fixed
// "%.12g" formatting, '\n' line endings, ordered output.

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sqbound/bounds.hpp"
#include "sqbound/comparisons.hpp"

namespace sqbound::cli {

struct SweepSpec {
    std::string parameter; // x-axis label, e.g. "eta", "nbar", "gamma"
    double start = 0.0;
    double stop = 1.0;
    int points = 101;
    bool log_scale = false;
};

inline void validate(const SweepSpec& spec) {
    if (spec.points < 2)
        throw std::invalid_argument("sweep: need at least 2 grid points");
    if (!(spec.start < spec.stop))
        throw std::invalid_argument("sweep: start must be < stop");
    if (spec.log_scale && !(spec.start > 0.0))
        throw std::invalid_argument("sweep: log scale requires start > 0");
}

inline std::vector<double> make_grid(const SweepSpec& spec) {
    validate(spec);
    std::vector<double> xs(static_cast<std::size_t>(spec.points));
    if (spec.log_scale) {
        const double la = std::log10(spec.start), lb = std::log10(spec.stop);
        for (int k = 0; k < spec.points; ++k)
            xs[static_cast<std::size_t>(k)] = std::pow(10.0, la + (lb - la) * k / (spec.points - 1));
    } else {
        for (int k = 0; k < spec.points; ++k)
            xs[static_cast<std::size_t>(k)] = spec.start + (spec.stop - spec.start) * k / (spec.points - 1);
    }
    xs.front() = spec.start; // endpoints exact, no rounding drift
    xs.back() = spec.stop;
    return xs;
}

struct Curve {
    std::string name;
    bounds::Direction direction = bounds::Direction::upper;
    std::string source = "in-paper";
    std::vector<double> ys;
};

struct Dataset {
    std::string channel;
    std::string constraint; // "unbounded" or "N=<value>"
    std::string x_label;
    std::vector<std::string> comments; // emitted as leading '#' lines
    std::vector<double> xs;
    std::vector<Curve> curves;
};

// a curve before evaluation: name/direction/source plus the pointwise formula
struct CurveDef {
    std::string name;
    bounds::Direction direction = bounds::Direction::upper;
    std::string source = "in-paper";
    std::function<double(double)> eval;
};

namespace detail {

// Evaluate one curve over the grid. Points are independent, so they are split
// across a few threads by stride; every slot is written exactly once, which
// keeps the result identical for any thread count (including 1).
inline std::vector<double> map_grid(const std::vector<double>& xs,
                                    const std::function<double(double)>& f) {
    std::vector<double> ys(xs.size());
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t nthreads = std::max(1u, std::min({hw, 8u, static_cast<unsigned>(xs.size())}));
    if (nthreads == 1 || xs.size() < 16) {
        for (std::size_t k = 0; k < xs.size(); ++k)
            ys[k] = f(xs[k]);
        return ys;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t k = t; k < xs.size(); k += nthreads)
                    ys[k] = f(xs[k]);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return ys;
}

inline std::string fmt12(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace detail

inline Dataset evaluate(std::string channel, std::string constraint, std::string x_label,
                        std::vector<std::string> comments, std::vector<double> xs,
                        const std::vector<CurveDef>& defs) {
    Dataset ds;
    ds.channel = std::move(channel);
    ds.constraint = std::move(constraint);
    ds.x_label = std::move(x_label);
    ds.comments = std::move(comments);
    ds.xs = std::move(xs);
    for (const auto& def : defs)
        ds.curves.push_back(Curve{def.name, def.direction, def.source, detail::map_grid(ds.xs, def.eval)});
    return ds;
}

// fixed 12-significant-digit CSV; comment lines first, then the header row
inline std::string render_csv(const Dataset& ds) {
    std::string out;
    out += "# channel: " + ds.channel + "\n";
    out += "# constraint: " + ds.constraint + "\n";
    for (const auto& c : ds.comments)
        out += "# " + c + "\n";
    for (const auto& c : ds.curves)
        if (c.source == "external-cited")
            out += "# external-cited: " + c.name + "\n";
    out += ds.x_label;
    for (const auto& c : ds.curves)
        out += "," + c.name;
    out += "\n";
    for (std::size_t k = 0; k < ds.xs.size(); ++k) {
        out += detail::fmt12(ds.xs[k]);
        for (const auto& c : ds.curves)
            out += "," + detail::fmt12(c.ys[k]);
        out += "\n";
    }
    return out;
}

// same data model as the CSV; infinities map to null in JSON
inline std::string render_json(const Dataset& ds) {
    nlohmann::ordered_json j;
    j["channel"] = ds.channel;
    j["constraint"] = ds.constraint;
    j["comments"] = ds.comments;
    j["curves"] = nlohmann::ordered_json::array();
    for (const auto& c : ds.curves) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["direction"] = bounds::to_string(c.direction);
        jc["source"] = c.source;
        auto pts = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < ds.xs.size(); ++k) {
            auto pt = nlohmann::ordered_json::array();
            pt.push_back(ds.xs[k]);
            if (std::isfinite(c.ys[k]))
                pt.push_back(c.ys[k]);
            else
                pt.push_back(nullptr);
            pts.push_back(pt);
        }
        jc["points"] = pts;
        j["curves"].push_back(jc);
    }
    return j.dump(2) + "\n";
}

// ---- sweep families --------------------------------------------------------

struct SweepOptions {
    std::optional<double> photons; // finite input energy for esq-finite-N
    double n_b = 0.0;              // thermal environment occupation
    int d = 2;                     // erasure dimension
    std::vector<std::string> curves; // empty = family defaults
};

namespace detail {

inline std::string constraint_string(const std::optional<double>& photons) {
    return photons ? "N=" + fmt12(*photons) : "unbounded";
}

inline CurveDef esq_asymptotic_curve(std::function<channels::PhaseInsensitiveChannel(double)> mk) {
    return {"esq-asymptotic", bounds::Direction::upper, "in-paper",
            [mk = std::move(mk)](double x) { return bounds::esq_asymptotic(mk(x)).value; }};
}

inline CurveDef esq_finite_curve(std::function<channels::PhaseInsensitiveChannel(double)> mk,
                                 double photons) {
    return {"esq-finite-N", bounds::Direction::upper, "in-paper",
            [mk = std::move(mk), photons](double x) { return bounds::esq_finite_n(mk(x), photons).value; }};
}

} // namespace detail

// All curve definitions available for one sweep family. An unknown family or
// an unknown curve name is a caller error.
inline std::vector<CurveDef> sweep_family_curves(const std::string& family,
                                                 const SweepOptions& opts) {
    using channels::PhaseInsensitiveChannel;
    std::vector<CurveDef> defs;
    if (family == "pure-loss") {
        auto mk = [](double eta) { return channels::pure_loss(eta); };
        defs.push_back(detail::esq_asymptotic_curve(mk));
        if (opts.photons)
            defs.push_back(detail::esq_finite_curve(mk, *opts.photons));
        defs.push_back({"takeoka-pure-loss", bounds::Direction::upper, "in-paper",
                        [](double eta) { return comparisons::takeoka_pure_loss(eta).value; }});
        defs.push_back({"plob", bounds::Direction::exact, "external-cited",
                        [](double eta) { return comparisons::plob_pure_loss(eta).value; }});
    } else if (family == "thermal") {
        const double nb = opts.n_b;
        auto mk = [nb](double eta) { return channels::thermal(eta, nb); };
        defs.push_back(detail::esq_asymptotic_curve(mk));
        if (opts.photons)
            defs.push_back(detail::esq_finite_curve(mk, *opts.photons));
    } else if (family == "additive") {
        defs.push_back({"esq-additive-limit", bounds::Direction::upper, "in-paper",
                        [](double nbar) { return bounds::esq_additive_limit(nbar).value; }});
        if (opts.photons) {
            auto mk = [](double nbar) { return channels::additive(nbar); };
            defs.push_back(detail::esq_finite_curve(mk, *opts.photons));
        }
        defs.push_back({"pirandola-additive", bounds::Direction::upper, "in-paper",
                        [](double nbar) { return comparisons::pirandola_additive(nbar).value; }});
        defs.push_back({"coherent-info-additive", bounds::Direction::lower, "in-paper",
                        [](double nbar) { return comparisons::coherent_info_additive(nbar).value; }});
    } else if (family == "amplifier") {
        auto mk = [](double gain) { return channels::amplifier(gain); };
        defs.push_back(detail::esq_asymptotic_curve(mk));
        if (opts.photons)
            defs.push_back(detail::esq_finite_curve(mk, *opts.photons));
        defs.push_back({"pirandola-amplifier", bounds::Direction::exact, "in-paper",
                        [](double gain) { return comparisons::pirandola_amplifier(gain).value; }});
    } else if (family == "amplitude-damping") {
        defs.push_back({"esq-ad", bounds::Direction::upper, "in-paper",
                        [](double g) { return bounds::amplitude_damping_bound(g).value; }});
        defs.push_back({"pirandola-ad", bounds::Direction::upper, "in-paper",
                        [](double g) { return comparisons::pirandola_ad(g).value; }});
        defs.push_back({"rci-ad", bounds::Direction::lower, "in-paper",
                        [](double g) { return comparisons::rci_ad(g).value; }});
    } else if (family == "depolarizing") {
        defs.push_back({"esq-depol", bounds::Direction::upper, "in-paper",
                        [](double p) { return bounds::depolarizing_bound(p).value; }});
        defs.push_back({"esq-pauli", bounds::Direction::upper, "in-paper", [](double p) {
                            return bounds::pauli_bound(1.0 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p).value;
                        }});
    } else if (family == "erasure") {
        const int d = opts.d;
        defs.push_back({"erasure-exact", bounds::Direction::exact, "in-paper",
                        [d](double p) { return bounds::erasure_capacity(d, p).value; }});
    } else {
        throw std::invalid_argument("sweep: unknown channel family '" + family + "'");
    }
    if (!opts.curves.empty()) {
        std::vector<CurveDef> selected;
        for (const auto& want : opts.curves) {
            bool found = false;
            for (auto& def : defs)
                if (def.name == want) {
                    selected.push_back(def);
                    found = true;
                    break;
                }
            if (!found)
                throw std::invalid_argument("sweep: curve '" + want + "' not available for family '" +
                                            family + "'");
        }
        return selected;
    }
    return defs;
}

inline Dataset run_sweep(const std::string& family, const SweepSpec& spec, const SweepOptions& opts) {
    auto defs = sweep_family_curves(family, opts);
    std::vector<std::string> comments;
    if (family == "thermal")
        comments.push_back("thermal environment occupation N_B = " + detail::fmt12(opts.n_b));
    if (family == "erasure")
        comments.push_back("erasure dimension d = " + std::to_string(opts.d));
    return evaluate(family, detail::constraint_string(opts.photons), spec.parameter, std::move(comments),
                    make_grid(spec), defs);
}

// ---- figure reproduction ---------------------------------------------------

struct FigureJob {
    std::string id;
    int resolution = 101; // grid points
};

// The per-figure curve sets follow the printed figures; comparison curves
// whose closed forms are not printed are listed as machine-readable
// "omitted: <name> (formula not in paper)" header comments instead of being
// invented.
inline Dataset figure_dataset(const FigureJob& job) {
    const int n = job.resolution;
    if (n < 2)
        throw std::invalid_argument("figure: resolution must be >= 2");

    if (job.id == "fig1-ad") {
        SweepSpec spec{"gamma", 0.0, 1.0, n, false};
        SweepOptions opts;
        return run_sweep("amplitude-damping", spec, opts);
    }
    if (job.id == "fig2-depol") {
        SweepSpec spec{"p", 0.0, 1.0, n, false};
        SweepOptions opts;
        Dataset ds = run_sweep("depolarizing", spec, opts);
        ds.comments.push_back("omitted: takeoka-depol (formula not in paper)");
        ds.comments.push_back("omitted: pirandola-depol (formula not in paper)");
        ds.comments.push_back("omitted: rci-depol (formula not in paper)");
        return ds;
    }
    if (job.id == "fig3-additive") {
        SweepSpec spec{"nbar", 0.01, 100.0, n, true};
        SweepOptions opts;
        Dataset ds = run_sweep("additive", spec, opts);
        ds.comments.push_back("omitted: takeoka-additive (formula not in paper)");
        return ds;
    }
    if (job.id == "fig4-thermal") {
        // x axis in dB of loss as in the printed figure: eta = 10^(-dB/10)
        SweepSpec spec{"loss_db", 0.0, 30.0, n, false};
        std::vector<CurveDef> defs;
        defs.push_back({"esq-asymptotic", bounds::Direction::upper, "in-paper", [](double db) {
                            const double eta = std::pow(10.0, -db / 10.0);
                            return bounds::esq_asymptotic(channels::thermal(eta, 1.0)).value;
                        }});
        std::vector<std::string> comments{
            "thermal channel, N_B = 1",
            "loss_db = -10*log10(eta)",
            "omitted: takeoka-thermal (formula not in paper)",
            "omitted: pirandola-thermal (formula not in paper)",
            "omitted: rci-thermal (formula not in paper)",
        };
        return evaluate("thermal", "unbounded", spec.parameter, std::move(comments), make_grid(spec),
                        defs);
    }
    if (job.id == "fig5-pureloss-finite") {
        // deep-loss regime of the finite-energy pure-loss bound vs the
        // secret-key capacity; both curves are ~1e-21 bits here
        SweepSpec spec{"eta", 0.0, 2e-20, n, false};
        SweepOptions opts;
        opts.photons = 0.1;
        opts.curves = {"esq-finite-N", "plob"};
        Dataset ds = run_sweep("pure-loss", spec, opts);
        ds.comments.push_back("input mean photon number N = 0.1");
        return ds;
    }
    if (job.id == "fig6-thermal-finite") {
        SweepSpec spec{"eta", 0.0, 1.0, n, false};
        SweepOptions opts;
        opts.photons = 0.1;
        opts.n_b = 1.0;
        opts.curves = {"esq-finite-N"};
        Dataset ds = run_sweep("thermal", spec, opts);
        ds.comments.push_back("input mean photon number N = 0.1");
        ds.comments.push_back("omitted: takeoka-thermal-finite (formula not in paper)");
        ds.comments.push_back("omitted: pirandola-thermal (formula not in paper)");
        return ds;
    }
    throw std::invalid_argument("figure: unknown id '" + job.id + "' (known: fig1-ad, fig2-depol, " +
                                "fig3-additive, fig4-thermal, fig5-pureloss-finite, fig6-thermal-finite)");
}

} // namespace sqbound::cli
