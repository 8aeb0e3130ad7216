// Command line front end: point evaluations (bound), parameter sweeps (sweep),
// figure dataset reproduction (figure) and the self-check suites (verify).
// Exit codes: 0 success, 1 usage or parameter error, 2 numeric/verify failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqbound/bounds.hpp"
#include "sqbound/channels.hpp"
#include "sqbound/cli.hpp"
#include "sqbound/comparisons.hpp"
#include "sqbound/verify.hpp"

namespace {

using namespace sqbound;

std::string fmt12(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw std::invalid_argument("cannot open output file '" + out_path + "'");
    f << text;
}

// ---- bound subcommand ------------------------------------------------------

struct BoundReport {
    std::string channel;
    std::string constraint = "unbounded";
    bool entanglement_breaking = false;
    std::vector<bounds::BoundResult> results;
};

struct GaussianFlags {
    std::optional<double> tau, nu, T, G, eta, nb, nbar, gain, chi, photons;
};

channels::PhaseInsensitiveChannel resolve_gaussian(const GaussianFlags& f) {
    int groups = 0;
    groups += f.nbar.has_value();
    groups += f.gain.has_value();
    groups += f.eta.has_value();
    groups += f.tau.has_value() && f.chi.has_value();
    groups += f.tau.has_value() && f.nu.has_value();
    groups += f.T.has_value() && f.G.has_value();
    if (groups != 1)
        throw std::invalid_argument(
            "specify the channel exactly one way: --tau --nu | --T --G | --eta [--nb] | "
            "--nbar | --gain | --tau --chi");
    if (f.nbar)
        return channels::additive(*f.nbar);
    if (f.gain)
        return channels::amplifier(*f.gain);
    if (f.eta)
        return f.nb ? channels::thermal(*f.eta, *f.nb) : channels::pure_loss(*f.eta);
    if (f.tau && f.chi)
        return channels::from_chi(*f.tau, *f.chi);
    if (f.tau && f.nu)
        return channels::from_tau_nu(*f.tau, *f.nu);
    const double G = *f.G, T = *f.T;
    return channels::from_tau_nu(G * T, 2.0 * G - 1.0 - G * T);
}

BoundReport gaussian_bound_report(const GaussianFlags& f) {
    const auto ch = resolve_gaussian(f);
    BoundReport rep;
    rep.channel = bounds::detail::describe(ch);
    rep.entanglement_breaking = channels::is_entanglement_breaking(ch);
    rep.results.push_back(bounds::esq_asymptotic(ch));
    if (f.photons) {
        rep.constraint = "N=" + fmt12(*f.photons);
        rep.results.push_back(bounds::esq_finite_n(ch, *f.photons));
    }
    const bool pure_loss_like = ch.G <= 1.0 + 1e-12 && ch.T < 1.0;
    const bool amplifier_like = ch.T >= 1.0 - 1e-12 && ch.G > 1.0 + 1e-12;
    const bool additive_like = std::abs(ch.tau - 1.0) <= 1e-12 && ch.nu > 0.0;
    if (pure_loss_like)
        rep.results.push_back(comparisons::plob_pure_loss(ch.tau));
    if (amplifier_like)
        rep.results.push_back(comparisons::pirandola_amplifier(ch.G));
    if (additive_like) {
        rep.results.push_back(comparisons::pirandola_additive(0.5 * ch.nu));
        rep.results.push_back(comparisons::coherent_info_additive(0.5 * ch.nu));
    }
    if (rep.entanglement_breaking)
        rep.results.push_back(bounds::eb_zero_bound(rep.channel));
    return rep;
}

std::string render_report_table(const BoundReport& rep) {
    std::ostringstream os;
    os << "channel: " << rep.channel << "\n";
    os << "constraint: " << rep.constraint << "\n";
    os << "entanglement-breaking: " << (rep.entanglement_breaking ? "yes" : "no") << "\n";
    for (const auto& r : rep.results) {
        char line[160];
        std::snprintf(line, sizeof line, "%-24s %-6s %-16s %s\n", r.kind.c_str(),
                      bounds::to_string(r.direction), fmt12(r.value).c_str(), r.source.c_str());
        os << line;
    }
    return os.str();
}

std::string render_report_csv(const BoundReport& rep) {
    std::string out;
    out += "# channel: " + rep.channel + "\n";
    out += "# constraint: " + rep.constraint + "\n";
    out += "# entanglement-breaking: " + std::string(rep.entanglement_breaking ? "yes" : "no") + "\n";
    out += "kind,direction,source,value\n";
    for (const auto& r : rep.results)
        out += r.kind + "," + bounds::to_string(r.direction) + "," + r.source + "," +
               fmt12(r.value) + "\n";
    return out;
}

std::string render_report_json(const BoundReport& rep) {
    nlohmann::ordered_json j;
    j["channel"] = rep.channel;
    j["constraint"] = rep.constraint;
    j["entanglement_breaking"] = rep.entanglement_breaking;
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.results) {
        nlohmann::ordered_json jr;
        jr["kind"] = r.kind;
        jr["direction"] = bounds::to_string(r.direction);
        jr["source"] = r.source;
        if (std::isfinite(r.value))
            jr["value"] = r.value;
        else
            jr["value"] = nullptr;
        j["results"].push_back(jr);
    }
    return j.dump(2) + "\n";
}

std::string render_report(const BoundReport& rep, const std::string& format) {
    if (format == "json")
        return render_report_json(rep);
    if (format == "csv")
        return render_report_csv(rep);
    return render_report_table(rep);
}

std::string render_dataset(const cli::Dataset& ds, const std::string& format) {
    return format == "json" ? cli::render_json(ds) : cli::render_csv(ds);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"squashed-entanglement bounds on two-way assisted capacities\n"
                 "(phase-insensitive bosonic Gaussian channels and common qubit channels)"};
    app.require_subcommand(1);
    app.footer("Conventions: vacuum variance 1, all entropies in bits.\n"
               "Figure loss axes use dB with loss_db = -10*log10(eta); converting fiber\n"
               "length to eta is left to the caller.");

    // ---- bound ----
    auto* cmd_bound = app.add_subcommand("bound", "evaluate all applicable bounds at one point");
    std::string bound_kind;
    cmd_bound->add_option("kind", bound_kind, "channel kind")
        ->required()
        ->check(CLI::IsMember({"gaussian", "erasure", "amplitude-damping", "pauli", "depolarizing"}));
    GaussianFlags gf;
    cmd_bound->add_option("--tau", gf.tau, "loss/gain parameter tau");
    cmd_bound->add_option("--nu", gf.nu, "noise parameter nu");
    cmd_bound->add_option("--T", gf.T, "beamsplitter transmissivity");
    cmd_bound->add_option("--G", gf.G, "amplifier gain");
    cmd_bound->add_option("--eta", gf.eta, "loss eta (pure loss, or thermal with --nb)");
    cmd_bound->add_option("--nb", gf.nb, "thermal environment occupation N_B");
    cmd_bound->add_option("--nbar", gf.nbar, "additive noise variance");
    cmd_bound->add_option("--gain", gf.gain, "quantum-limited amplifier gain");
    cmd_bound->add_option("--chi", gf.chi, "excess noise chi (with --tau)");
    cmd_bound->add_option("--photons", gf.photons, "input mean photon number constraint");
    int er_d = 2;
    std::optional<double> fd_p, fd_gamma;
    std::optional<double> fd_p0, fd_p1, fd_p2, fd_p3;
    cmd_bound->add_option("--d", er_d, "erasure dimension");
    cmd_bound->add_option("--p", fd_p, "erasure / depolarizing probability");
    cmd_bound->add_option("--gamma", fd_gamma, "amplitude damping parameter");
    cmd_bound->add_option("--p0", fd_p0, "pauli probability of I");
    cmd_bound->add_option("--p1", fd_p1, "pauli probability of X");
    cmd_bound->add_option("--p2", fd_p2, "pauli probability of Y");
    cmd_bound->add_option("--p3", fd_p3, "pauli probability of Z");
    std::string bound_format = "table", bound_out;
    cmd_bound->add_option("--format", bound_format, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    cmd_bound->add_option("--out", bound_out, "write output to file");

    // ---- sweep ----
    auto* cmd_sweep = app.add_subcommand("sweep", "evaluate bound curves over a parameter grid");
    std::string sweep_family;
    cmd_sweep->add_option("family", sweep_family, "channel family")
        ->required()
        ->check(CLI::IsMember({"pure-loss", "thermal", "additive", "amplifier",
                               "amplitude-damping", "depolarizing", "erasure"}));
    double sw_start = 0.0, sw_stop = 1.0;
    int sw_points = 101;
    bool sw_log = false;
    cmd_sweep->add_option("--start", sw_start, "grid start")->required();
    cmd_sweep->add_option("--stop", sw_stop, "grid stop")->required();
    cmd_sweep->add_option("--points", sw_points, "number of grid points (default 101)");
    cmd_sweep->add_flag("--log", sw_log, "logarithmic grid (start must be > 0)");
    std::string sw_curves;
    cmd_sweep->add_option("--curves", sw_curves, "comma-separated curve names (default: all)");
    std::optional<double> sw_photons;
    double sw_nb = 0.0;
    int sw_d = 2;
    cmd_sweep->add_option("--photons", sw_photons, "input mean photon number constraint");
    cmd_sweep->add_option("--nb", sw_nb, "thermal environment occupation N_B");
    cmd_sweep->add_option("--d", sw_d, "erasure dimension");
    std::string sw_format = "csv", sw_out;
    cmd_sweep->add_option("--format", sw_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd_sweep->add_option("--out", sw_out, "write output to file");

    // ---- figure ----
    auto* cmd_figure = app.add_subcommand("figure", "reproduce a figure dataset");
    std::string fig_id;
    cmd_figure->add_option("id", fig_id, "figure id")
        ->required()
        ->check(CLI::IsMember({"fig1-ad", "fig2-depol", "fig3-additive", "fig4-thermal",
                               "fig5-pureloss-finite", "fig6-thermal-finite"}));
    int fig_points = 101;
    cmd_figure->add_option("--points", fig_points, "grid resolution (default 101)");
    std::string fig_format = "csv", fig_out;
    cmd_figure->add_option("--format", fig_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd_figure->add_option("--out", fig_out, "write output to file");

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "run the oracle and invariant suites");
    cli::VerifyOptions vopt;
    cmd_verify->add_option("--seed", vopt.seed, "random grid seed (default 8675309)");
    cmd_verify->add_option("--tol-scale", vopt.tol_scale, "multiply all tolerances");
    cmd_verify->add_option("--inject-fault", vopt.inject_fault,
                           "perturb a closed-form eigenvalue (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage errors are exit 1, --help is success
    }

    try {
        if (cmd_bound->parsed()) {
            BoundReport rep;
            if (bound_kind == "gaussian") {
                rep = gaussian_bound_report(gf);
            } else if (bound_kind == "erasure") {
                if (!fd_p)
                    throw std::invalid_argument("erasure needs --p (and optionally --d)");
                rep.channel = "erasure(d=" + std::to_string(er_d) + ",p=" + fmt12(*fd_p) + ")";
                rep.results.push_back(bounds::erasure_capacity(er_d, *fd_p));
            } else if (bound_kind == "amplitude-damping") {
                if (!fd_gamma)
                    throw std::invalid_argument("amplitude-damping needs --gamma");
                rep.channel = "amplitude-damping(gamma=" + fmt12(*fd_gamma) + ")";
                rep.results.push_back(bounds::amplitude_damping_bound(*fd_gamma));
                rep.results.push_back(comparisons::pirandola_ad(*fd_gamma));
                rep.results.push_back(comparisons::rci_ad(*fd_gamma));
            } else if (bound_kind == "pauli") {
                if (!(fd_p0 && fd_p1 && fd_p2 && fd_p3))
                    throw std::invalid_argument("pauli needs --p0 --p1 --p2 --p3");
                rep.channel = "pauli(p0=" + fmt12(*fd_p0) + ",p1=" + fmt12(*fd_p1) + ",p2=" +
                              fmt12(*fd_p2) + ",p3=" + fmt12(*fd_p3) + ")";
                rep.results.push_back(bounds::pauli_bound(*fd_p0, *fd_p1, *fd_p2, *fd_p3));
            } else { // depolarizing
                if (!fd_p)
                    throw std::invalid_argument("depolarizing needs --p");
                rep.channel = "depolarizing(p=" + fmt12(*fd_p) + ")";
                rep.entanglement_breaking = *fd_p >= 2.0 / 3.0;
                rep.results.push_back(bounds::depolarizing_bound(*fd_p));
                rep.results.push_back(bounds::pauli_bound(1.0 - 0.75 * *fd_p, 0.25 * *fd_p,
                                                          0.25 * *fd_p, 0.25 * *fd_p));
                if (rep.entanglement_breaking)
                    rep.results.push_back(bounds::eb_zero_bound(rep.channel));
            }
            emit(render_report(rep, bound_format), bound_out);
            return 0;
        }

        if (cmd_sweep->parsed()) {
            cli::SweepOptions opts;
            opts.photons = sw_photons;
            opts.n_b = sw_nb;
            opts.d = sw_d;
            if (!sw_curves.empty()) {
                std::stringstream ss(sw_curves);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!item.empty())
                        opts.curves.push_back(item);
            }
            std::string x_label = "x";
            if (sweep_family == "pure-loss" || sweep_family == "thermal")
                x_label = "eta";
            else if (sweep_family == "additive")
                x_label = "nbar";
            else if (sweep_family == "amplifier")
                x_label = "gain";
            else if (sweep_family == "amplitude-damping")
                x_label = "gamma";
            else
                x_label = "p";
            cli::SweepSpec spec{x_label, sw_start, sw_stop, sw_points, sw_log};
            emit(render_dataset(cli::run_sweep(sweep_family, spec, opts), sw_format), sw_out);
            return 0;
        }

        if (cmd_figure->parsed()) {
            cli::FigureJob job{fig_id, fig_points};
            emit(render_dataset(cli::figure_dataset(job), fig_format), fig_out);
            return 0;
        }

        if (cmd_verify->parsed()) {
            const cli::VerifyReport report = cli::run_verify(vopt);
            for (const auto& s : report.suites)
                std::cout << "suite " << s.name << ": " << (s.pass ? "PASS" : "FAIL") << " ("
                          << s.detail << ")\n";
            if (report.all_pass) {
                std::cout << "verify: all suites passed\n";
                return 0;
            }
            std::cout << "verify: FAILURES detected\n";
            return 2;
        }
    } catch (const numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
