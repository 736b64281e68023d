// qi: command-line front end for the qinfo library.
//
// Every subcommand writes one report to stdout. JSON is the stable format;
// text output is for people. Exit codes: 0 ok, 1 bad input, 2 when the
// verdict is Undetermined or InfeasibleEvidence.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "qinfo/entropy.hpp"
#include "qinfo/errors.hpp"
#include "qinfo/games.hpp"
#include "qinfo/io.hpp"
#include "qinfo/pure_entanglement.hpp"
#include "qinfo/schur_weyl.hpp"
#include "qinfo/separability.hpp"

using namespace qinfo;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char *kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerdict = 2;

// Twelve significant digits keep reports readable and stable across platforms.
double clean(double x) {
    if (!std::isfinite(x)) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    double y = std::strtod(buf, nullptr);
    return y == 0 ? 0.0 : y;
}

Json clean_array(const std::vector<double> &v) {
    Json a = Json::array();
    for (double x : v) a.push_back(clean(x));
    return a;
}

Json number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return clean(x);
}

std::string spin_label(size_t twice_j) {
    return twice_j % 2 == 0 ? std::to_string(twice_j / 2) : std::to_string(twice_j) + "/2";
}

struct StateInput {
    std::string path;
    std::string named;
    double param = 0;

    void add(CLI::App *app) {
        app->add_option("--state", path, "state JSON file or inline JSON");
        app->add_option("--named", named, "standard state name (phi_plus, ghz, w, rho_anti, noisy_epr, ...)");
        app->add_option("--param", param, "parameter of the named state (d or p)");
    }

    AnyState load() const {
        if (!path.empty() && !named.empty()) throw FormatError("give either --state or --named, not both");
        if (!named.empty()) return standard_state(named, param);
        if (path.empty()) throw FormatError("a state is required (--state or --named)");
        return state_from_json(load_json(path));
    }

    Json echo() const {
        Json j;
        if (!named.empty()) {
            j["named"] = named;
            j["param"] = clean(param);
        } else {
            j["state"] = path;
        }
        return j;
    }
};

PureState require_pure(const AnyState &s) {
    if (auto p = std::get_if<PureState>(&s)) return *p;
    throw FormatError("this subcommand needs a pure state");
}

void print_text(const Json &j, const std::string &prefix, std::ostream &out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            print_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        }
    } else {
        out << prefix << ": " << j.dump() << "\n";
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qi: quantum information numerics"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    uint64_t seed = 0x5EED;
    bool time_seed = false;
    bool timing = false;
    std::string format = "json";
    app.add_option("--seed", seed, "random seed (default 0x5EED)");
    app.add_flag("--time-seed", time_seed, "seed from the clock instead of --seed");
    app.add_flag("--timing", timing, "include elapsed milliseconds in the report");
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    Json inputs, results;
    int exit_code = kExitOk;
    std::function<void()> action;

    // ppt
    StateInput ppt_state;
    std::vector<size_t> ppt_cut{0};
    auto *ppt = app.add_subcommand("ppt", "partial transpose test");
    ppt_state.add(ppt);
    ppt->add_option("--cut", ppt_cut, "subsystems to transpose");
    ppt->callback([&] {
        action = [&] {
            DensityMatrix rho = as_density(ppt_state.load());
            auto v = ppt_check(rho, ppt_cut);
            inputs = ppt_state.echo();
            inputs["cut"] = ppt_cut;
            results["is_ppt"] = v.is_ppt;
            results["min_eig"] = clean(v.min_eigenvalue);
            results["spectrum"] = clean_array(v.spectrum);
        };
    });

    // witness
    StateInput wit_state;
    std::string wit_kind = "phi_plus";
    std::string wit_file;
    auto *wit = app.add_subcommand("witness", "evaluate an entanglement witness");
    wit_state.add(wit);
    wit->add_option("--kind", wit_kind, "phi_plus, chsh or eigen")->check(CLI::IsMember({"phi_plus", "chsh", "eigen"}));
    wit->add_option("--witness", wit_file, "witness operator as matrix JSON (overrides --kind)");
    wit->callback([&] {
        action = [&] {
            DensityMatrix rho = as_density(wit_state.load());
            std::optional<Witness> w;
            if (!wit_file.empty()) {
                w.emplace(matrix_from_json(load_json(wit_file)));
            } else if (wit_kind == "chsh") {
                w.emplace(chsh_witness());
            } else if (wit_kind == "eigen") {
                w.emplace(eigen_witness(rho));
            } else {
                w.emplace(phi_plus_witness());
            }
            double v = witness_value(*w, rho);
            inputs = wit_state.echo();
            inputs["kind"] = wit_file.empty() ? wit_kind : "file";
            if (!wit_file.empty()) inputs["witness"] = wit_file;
            results["value"] = clean(v);
            results["detected"] = v < -1e-9;
        };
    });

    // extend
    StateInput ext_state;
    size_t ext_k = 2;
    std::vector<size_t> ext_cut{0};
    size_t ext_iters = 5000;
    auto *ext = app.add_subcommand("extend", "k-extendibility feasibility");
    ext_state.add(ext);
    ext->add_option("--k", ext_k, "number of B copies")->check(CLI::PositiveNumber);
    ext->add_option("--cut", ext_cut, "A subsystems");
    ext->add_option("--max-iter", ext_iters, "iteration budget");
    ext->callback([&] {
        action = [&] {
            DensityMatrix rho = as_density(ext_state.load());
            ExtendibilityOptions opts;
            opts.max_iterations = ext_iters;
            auto rep = k_extendibility(rho, ext_cut, ext_k, opts);
            inputs = ext_state.echo();
            inputs["k"] = ext_k;
            inputs["cut"] = ext_cut;
            inputs["max_iter"] = ext_iters;
            results["status"] = to_string(rep.status);
            results["residual"] = clean(rep.residual);
            results["iterations"] = rep.iterations;
            results["max_violation"] = clean(rep.max_violation);
            if (rep.status != Feasibility::Feasible) exit_code = kExitVerdict;
        };
    });

    // chsh
    size_t chsh_starts = 32;
    auto *chsh = app.add_subcommand("chsh", "CHSH classical and quantum values");
    chsh->add_option("--starts", chsh_starts, "optimizer restarts")->check(CLI::PositiveNumber);
    chsh->callback([&] {
        action = [&] {
            auto cl = chsh_classical_optimum();
            QuantumStrategy paper{bell_state(BellState::PhiPlus), {0, M_PI / 4}, {M_PI / 8, -M_PI / 8}};
            ChshOptimizeOptions opts;
            opts.starts = chsh_starts;
            auto best = chsh_optimize(seed, opts);
            double tsirelson = std::pow(std::cos(M_PI / 8), 2);
            inputs["starts"] = chsh_starts;
            results["classical"] = cl.value;
            results["classical_achievers"] = cl.achievers.size();
            results["quantum"] = clean(chsh_value(paper));
            results["optimized"] = clean(best.value);
            results["optimized_angles"] = clean_array({best.angles.begin(), best.angles.end()});
            results["tsirelson_gap"] = clean(tsirelson - best.value);
        };
    });

    // classify3q
    StateInput c3_state;
    auto *c3 = app.add_subcommand("classify3q", "three-qubit SLOCC class");
    c3_state.add(c3);
    c3->callback([&] {
        action = [&] {
            PureState psi = require_pure(c3_state.load());
            auto c = classify_three_qubit(psi);
            inputs = c3_state.echo();
            results["class"] = c.slocc_class ? to_string(*c.slocc_class) : "Undetermined";
            results["hyperdet_abs"] = clean(c.hyperdet_abs);
            results["marginal_min_eigenvalues"] =
                clean_array({c.marginal_min_eigenvalues.begin(), c.marginal_min_eigenvalues.end()});
            if (c.undetermined()) exit_code = kExitVerdict;
        };
    });

    // marginal3q
    std::vector<double> lmax;
    auto *m3 = app.add_subcommand("marginal3q", "three-qubit marginal compatibility");
    m3->add_option("--lmax", lmax, "largest eigenvalue of each one-qubit marginal")->expected(3)->required();
    m3->callback([&] {
        action = [&] {
            LocalSpectra l{lmax[0], lmax[1], lmax[2]};
            inputs["lmax"] = clean_array(lmax);
            bool ok = three_qubit_spectra_compatible(l);
            results["compatible"] = ok;
            if (ok) {
                PureState psi = three_qubit_state_from_spectra(l);
                const auto &a = psi.amplitudes();
                results["ansatz_amplitudes"] = clean_array({a[0].real(), a[3].real(), a[5].real(), a[6].real()});
                auto got = local_lambda_max(psi);
                results["ansatz_lmax"] = clean_array({got.begin(), got.end()});
            }
        };
    });

    // teleport
    StateInput tp_state;
    auto *tp = app.add_subcommand("teleport", "teleport a qubit");
    tp_state.add(tp);
    tp->callback([&] {
        action = [&] {
            PureState psi = require_pure(tp_state.load());
            auto t = teleport(psi, seed);
            inputs = tp_state.echo();
            results["outcome"] = t.outcome;
            results["probabilities"] = clean_array({t.probabilities.begin(), t.probabilities.end()});
            results["fidelity"] = clean(t.fidelity);
            results["bob_state"] = state_to_json(t.bob_state);
        };
    });

    // compress
    std::vector<double> cp_p;
    size_t cp_n = 1000, cp_trials = 200;
    double cp_rate = 0.6;
    std::optional<double> cp_delta;
    auto *cp = app.add_subcommand("compress", "fixed-length source compression trials");
    cp->add_option("--p", cp_p, "source distribution")->required();
    cp->add_option("--n", cp_n, "block length")->check(CLI::PositiveNumber);
    cp->add_option("--rate", cp_rate, "bits per symbol");
    cp->add_option("--trials", cp_trials, "number of trials")->check(CLI::PositiveNumber);
    cp->add_option("--delta", cp_delta, "restrict the codebook to delta-typical strings");
    cp->callback([&] {
        action = [&] {
            Distribution p(cp_p);
            auto r = compression_trial(p, cp_n, cp_rate, cp_trials, seed, cp_delta);
            inputs["p"] = clean_array(cp_p);
            inputs["n"] = cp_n;
            inputs["rate"] = clean(cp_rate);
            inputs["trials"] = cp_trials;
            if (cp_delta) inputs["delta"] = clean(*cp_delta);
            results["entropy"] = clean(shannon_entropy(p));
            results["success_frequency"] = clean(r.success_frequency);
            results["successes"] = r.successes;
            results["log_codebook_size"] = clean(r.log_codebook_size);
        };
    });

    // entropy
    StateInput en_state;
    std::vector<double> en_p;
    std::vector<size_t> en_a, en_b, en_c;
    auto *en = app.add_subcommand("entropy", "Shannon / von Neumann entropies");
    en_state.add(en);
    en->add_option("--p", en_p, "classical distribution");
    en->add_option("--a", en_a, "subsystems of part A");
    en->add_option("--b", en_b, "subsystems of part B");
    en->add_option("--c", en_c, "subsystems of part C");
    en->callback([&] {
        action = [&] {
            if (!en_p.empty()) {
                inputs["p"] = clean_array(en_p);
                results["shannon"] = clean(shannon_entropy(Distribution(en_p)));
                return;
            }
            DensityMatrix rho = as_density(en_state.load());
            inputs = en_state.echo();
            results["von_neumann"] = clean(von_neumann_entropy(rho));
            if (en_a.empty() != en_b.empty()) throw FormatError("--a and --b go together");
            if (!en_a.empty()) {
                auto m = information_measures(rho.matrix(), rho.dims(), en_a, en_b, en_c);
                inputs["a"] = en_a;
                inputs["b"] = en_b;
                if (!en_c.empty()) inputs["c"] = en_c;
                results["S(A)"] = clean(m.s_a);
                results["S(B)"] = clean(m.s_b);
                results["S(AB)"] = clean(m.s_ab);
                results["S(A|B)"] = clean(m.s_a_given_b);
                results["I(A:B)"] = clean(m.mutual_information);
                if (m.conditional_mutual_information) results["I(A:B|C)"] = clean(*m.conditional_mutual_information);
            }
        };
    });

    // definetti
    size_t df_d = 2, df_n = 10, df_k = 1;
    auto *df = app.add_subcommand("definetti", "estimation overlap and de Finetti bound");
    df->add_option("--d", df_d, "local dimension")->check(CLI::PositiveNumber);
    df->add_option("--n", df_n, "copies kept")->check(CLI::PositiveNumber);
    df->add_option("--k", df_k, "copies traced")->check(CLI::PositiveNumber);
    df->callback([&] {
        action = [&] {
            auto [num, den] = estimation_overlap_exact(df_d, df_n, df_k);
            inputs["d"] = df_d;
            inputs["n"] = df_n;
            inputs["k"] = df_k;
            results["overlap_numerator"] = num.str();
            results["overlap_denominator"] = den.str();
            results["overlap"] = clean(estimation_overlap(df_d, df_n, df_k));
            results["lower_bound"] = clean(1.0 - static_cast<double>(df_d * df_k) / df_n);
            results["bound_holds"] = estimation_overlap_bound_holds(df_d, df_n, df_k);
            results["trace_distance_bound"] = clean(definetti_error_bound(df_d, df_n, df_k));
        };
    });

    // spectrum
    double sp_r = 0;
    size_t sp_n = 2, sp_samples = 0;
    auto *sp = app.add_subcommand("spectrum", "Keyl-Werner spectrum estimation");
    sp->add_option("--r", sp_r, "rho = diag(1/2 + r, 1/2 - r)");
    sp->add_option("--n", sp_n, "number of copies")->check(CLI::PositiveNumber);
    sp->add_option("--samples", sp_samples, "also draw this many spin outcomes");
    sp->callback([&] {
        action = [&] {
            inputs["r"] = clean(sp_r);
            inputs["n"] = sp_n;
            Json probs, bounds;
            for (const auto &p : spectrum_estimation_distribution(sp_r, sp_n)) {
                probs[spin_label(p.twice_j)] = clean(p.probability);
                bounds[spin_label(p.twice_j)] = number(keyl_werner_bound(sp_r, sp_n, p.twice_j));
            }
            results["probs"] = probs;
            results["bounds"] = bounds;
            if (sp_samples > 0) {
                inputs["samples"] = sp_samples;
                auto est = keyl_werner_estimate(sample_spin_outcomes(sp_r, sp_n, sp_samples, seed), sp_n, sp_r);
                results["r_hat"] = clean(est.r_hat);
                results["standard_error"] = clean(est.standard_error);
            }
        };
    });

    // datahiding
    size_t dh_d = 2;
    auto *dh = app.add_subcommand("datahiding", "Werner data-hiding bias");
    dh->add_option("--d", dh_d, "local dimension")->check(CLI::Range(2, 1 << 20));
    dh->callback([&] {
        action = [&] {
            auto r = data_hiding_bias(dh_d);
            inputs["d"] = dh_d;
            results["ppt_norm_value"] = clean(r.ppt_norm_value);
            if (r.ppt_norm_numeric) results["ppt_norm_numeric"] = clean(*r.ppt_norm_numeric);
            results["ppt_measurement_bias"] = clean(r.ppt_measurement_bias);
            results["local_bound"] = clean(r.local_bound);
            results["bound_holds"] = r.bound_holds;
            results["global_distance"] = clean(r.global_distance);
        };
    });

    // motzkin
    size_t ms_vertices = 3;
    std::vector<std::string> ms_edges;
    auto *ms = app.add_subcommand("motzkin", "Motzkin-Straus clique check");
    ms->add_option("--vertices", ms_vertices, "number of vertices")->check(CLI::PositiveNumber);
    ms->add_option("--edges", ms_edges, "edges as i-j");
    ms->callback([&] {
        action = [&] {
            std::vector<std::pair<size_t, size_t>> edges;
            for (const auto &e : ms_edges) {
                size_t i, j;
                char dash;
                std::istringstream in(e);
                if (!(in >> i >> dash >> j) || dash != '-' || !in.eof()) throw FormatError("edge must look like i-j: " + e);
                edges.emplace_back(i, j);
            }
            auto r = motzkin_straus(ms_vertices, edges, seed);
            inputs["vertices"] = ms_vertices;
            inputs["edges"] = ms_edges;
            results["clique_number"] = r.clique_number;
            results["optimization_value"] = clean(r.optimization_value);
            results["motzkin_straus_value"] = clean(1.0 - 1.0 / r.clique_number);
            results["product_state_value"] = clean(r.product_state_value);
            results["h_sep_lower"] = clean(r.h_sep_lower);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInput;
    }

    if (time_seed) {
        seed = static_cast<uint64_t>(std::chrono::system_clock::now().time_since_epoch().count());
    }
    auto start = std::chrono::steady_clock::now();
    try {
        action();
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }

    Json report;
    report["subcommand"] = app.get_subcommands().front()->get_name();
    report["inputs"] = inputs.is_null() ? Json::object() : inputs;
    report["seed"] = seed;
    report["results"] = results;
    report["version"] = kVersion;
    if (timing) {
        auto ms_elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report["elapsed_ms"] = clean(ms_elapsed);
    }
    if (format == "text") {
        print_text(report, "", std::cout);
    } else {
        std::cout << report.dump() << "\n";
    }
    return exit_code;
}
