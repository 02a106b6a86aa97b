// sigma-lab: command-line front door for the finite sigma-algebra laboratory.
// All file I/O lives here; the core library is pure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sigmalab/bundle.hpp"
#include "sigmalab/density.hpp"
#include "sigmalab/dyadic.hpp"
#include "sigmalab/infodesign.hpp"
#include "sigmalab/json_io.hpp"
#include "sigmalab/lattice.hpp"
#include "sigmalab/metric.hpp"
#include "sigmalab/modes.hpp"
#include "sigmalab/projection.hpp"

namespace {

using nlohmann::json;
using namespace sigmalab;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
    }
}

std::string dump(const json& j) { return j.dump(2); }

json doubles_json(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

TestFamily family_by_name(const FiniteProbSpace& space, const std::string& name) {
    if (name == "atoms") return TestFamily::atoms(space);
    if (name == "atoms+pairs") return TestFamily::atoms_pairs(space);
    throw std::invalid_argument("field \"family\" must be \"atoms\" or \"atoms+pairs\"");
}

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
    return os.str();
}

struct GlobalOpts {
    unsigned long seed = 0;
    std::string format = "json";
    double tol = -1.0;  // negative: module default
    int jobs = 0;

    double tol_or(double def) const { return tol >= 0.0 ? tol : def; }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sigma-lab: numerical laboratory for sub-sigma-algebra convergence"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env_jobs = std::getenv("SIGMA_LAB_JOBS")) g.jobs = std::atoi(env_jobs);
    app.add_option("--seed", g.seed, "Seed for randomized generators");
    app.add_option("--format", g.format, "Report encoding: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--tol", g.tol, "Override module default tolerances");
    app.add_option("--jobs", g.jobs, "Worker parallelism hint");

    std::string space_path, a_path, b_path, f_path, seq_path, limit_path, out_path;
    std::string family_name = "atoms+pairs";

    // condexp
    auto* condexp_cmd = app.add_subcommand("condexp", "Conditional expectation E[f|B]");
    condexp_cmd->add_option("--space", space_path)->required();
    condexp_cmd->add_option("--f", f_path)->required();
    condexp_cmd->add_option("--partition", b_path)->required();
    condexp_cmd->add_option("--out", out_path);
    condexp_cmd->callback([&] {
        auto space = space_from_json(load_json(space_path));
        auto f = randvec_from_json(load_json(f_path));
        auto b = partition_from_json(load_json(b_path));
        emit(dump(to_json(cond_exp(space, f, b))), out_path);
    });

    // charcheck
    std::string matrix_path;
    auto* charcheck_cmd =
        app.add_subcommand("charcheck", "Markovian projection characterization checks");
    charcheck_cmd->add_option("--space", space_path)->required();
    charcheck_cmd->add_option("--matrix", matrix_path)->required();
    charcheck_cmd->add_option("--out", out_path);
    charcheck_cmd->callback([&] {
        auto space = space_from_json(load_json(space_path));
        json mj = load_json(matrix_path);
        auto rows = mj.at("matrix").get<std::vector<std::vector<double>>>();
        Eigen::MatrixXd m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows[0].size())
                throw std::invalid_argument("field \"matrix\" must be rectangular");
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
        auto rep = check_markov_characterization({space, m}, g.tol_or(1e-9));
        json out{{"is_projection", rep.is_projection},
                 {"is_markov", rep.is_markov},
                 {"fixes_constants", rep.fixes_constants},
                 {"range_is_lattice", rep.range_is_lattice}};
        if (rep.recovered_partition) out["recovered_partition"] = to_json(*rep.recovered_partition);
        emit(dump(out), out_path);
    });

    // metric
    auto* metric_cmd = app.add_subcommand("metric", "d_kappa metric and L2-varying convergence");
    auto* dkappa_cmd = metric_cmd->add_subcommand("dkappa", "d_kappa(A,B)");
    dkappa_cmd->add_option("--space", space_path)->required();
    dkappa_cmd->add_option("--a", a_path)->required();
    dkappa_cmd->add_option("--b", b_path)->required();
    dkappa_cmd->add_option("--family", family_name);
    dkappa_cmd->callback([&] {
        auto space = space_from_json(load_json(space_path));
        auto a = partition_from_json(load_json(a_path));
        auto b = partition_from_json(load_json(b_path));
        std::cout << format_double(d_kappa(space, a, b, family_by_name(space, family_name)))
                  << "\n";
    });
    auto* extract_cmd = metric_cmd->add_subcommand("extract", "Convergent subsequence extraction");
    extract_cmd->add_option("--space", space_path)->required();
    extract_cmd->add_option("--seq", seq_path)->required();
    extract_cmd->add_option("--out", out_path);
    extract_cmd->callback([&] {
        auto seq = sequence_from_json(load_json(seq_path));
        auto res = extract_convergent_subsequence(seq);
        emit(dump(json{{"indices", res.indices}, {"limit", to_json(res.limit)}}), out_path);
    });
    auto* prope_cmd = metric_cmd->add_subcommand("property-e", "Cauchy/Property (E) criterion");
    prope_cmd->add_option("--space", space_path)->required();
    prope_cmd->add_option("--seq", seq_path)->required();
    prope_cmd->add_option("--family", family_name);
    prope_cmd->add_option("--out", out_path);
    prope_cmd->callback([&] {
        auto space = space_from_json(load_json(space_path));
        auto seq = sequence_from_json(load_json(seq_path));
        auto res =
            property_E_check(space, seq, family_by_name(space, family_name), g.tol_or(1e-9));
        json out{{"cauchy_ok", res.cauchy_ok}, {"tail_indices", res.tail_indices}};
        if (res.limit) out["limit"] = to_json(*res.limit);
        emit(dump(out), out_path);
    });

    // modes analyze
    double eps = 0.1;
    std::string probe_f_path, probe_atoms_str;
    auto* modes_cmd = app.add_subcommand("modes", "Convergence-mode deviation reports");
    auto* analyze_cmd = modes_cmd->add_subcommand("analyze", "Per-mode deviation traces");
    analyze_cmd->add_option("--space", space_path)->required();
    analyze_cmd->add_option("--seq", seq_path)->required();
    analyze_cmd->add_option("--limit", limit_path)->required();
    analyze_cmd->add_option("--eps", eps);
    analyze_cmd->add_option("--probe-f", probe_f_path);
    analyze_cmd->add_option("--probe-atoms", probe_atoms_str, "Comma-separated atom indices");
    analyze_cmd->add_option("--family", family_name);
    analyze_cmd->add_option("--out", out_path);
    analyze_cmd->callback([&] {
        auto space = space_from_json(load_json(space_path));
        auto seq = sequence_from_json(load_json(seq_path));
        auto limit = partition_from_json(load_json(limit_path));
        RandVec probe_f = probe_f_path.empty() ? RandVec(space.n_atoms(), 1.0)
                                               : randvec_from_json(load_json(probe_f_path));
        std::vector<std::size_t> probe_atoms;
        if (probe_atoms_str.empty()) {
            // default: quartile positions
            for (int q = 1; q <= 3; ++q)
                probe_atoms.push_back(space.n_atoms() * static_cast<std::size_t>(q) / 4);
        } else {
            std::stringstream ss(probe_atoms_str);
            std::string tok;
            while (std::getline(ss, tok, ',')) probe_atoms.push_back(std::stoul(tok));
        }
        auto rep = analyze(space, seq, limit, family_by_name(space, family_name), eps,
                           probe_atoms, probe_f);
        auto violations = check_hierarchy(rep);
        if (g.format == "csv") {
            std::ostringstream os;
            os << "n,dev_l2varying,dev_strong_op,dev_weak_op,dev_op_norm,dev_in_prob,dev_j1\n";
            for (std::size_t k = 0; k < rep.dev_strong_op.size(); ++k)
                os << k << "," << format_double(rep.dev_l2varying[k]) << ","
                   << format_double(rep.dev_strong_op[k]) << ","
                   << format_double(rep.dev_weak_op[k]) << ","
                   << format_double(rep.dev_op_norm[k]) << ","
                   << format_double(rep.dev_in_prob[k]) << "," << format_double(rep.dev_j1[k])
                   << "\n";
            emit(os.str(), out_path);
        } else {
            json traces = json::array();
            for (std::size_t a = 0; a < rep.probe_atoms.size(); ++a)
                traces.push_back(json{{"atom", rep.probe_atoms[a]},
                                      {"values", doubles_json(rep.pointwise_trace[a])}});
            json out{{"eps", rep.eps},
                     {"dev_l2varying", doubles_json(rep.dev_l2varying)},
                     {"dev_strong_op", doubles_json(rep.dev_strong_op)},
                     {"dev_weak_op", doubles_json(rep.dev_weak_op)},
                     {"dev_op_norm", doubles_json(rep.dev_op_norm)},
                     {"dev_in_prob", doubles_json(rep.dev_in_prob)},
                     {"dev_j1", doubles_json(rep.dev_j1)},
                     {"pointwise_trace", traces},
                     {"hierarchy", violations.empty() ? "ok" : "violated"},
                     {"violations", violations}};
            emit(dump(out), out_path);
        }
    });

    // lattice
    auto* lattice_cmd = app.add_subcommand("lattice", "Join, meet, independence, continuity");
    for (const char* name : {"join", "meet"}) {
        auto* cmd = lattice_cmd->add_subcommand(name);
        cmd->add_option("--space", space_path)->required();
        cmd->add_option("--a", a_path)->required();
        cmd->add_option("--b", b_path)->required();
        cmd->add_option("--out", out_path);
        bool is_join = std::string(name) == "join";
        cmd->callback([&, is_join] {
            auto a = partition_from_json(load_json(a_path));
            auto b = partition_from_json(load_json(b_path));
            emit(dump(to_json(is_join ? join(a, b) : meet(a, b))), out_path);
        });
    }
    auto* indep_cmd = lattice_cmd->add_subcommand("independent");
    indep_cmd->add_option("--space", space_path)->required();
    indep_cmd->add_option("--a", a_path)->required();
    indep_cmd->add_option("--b", b_path)->required();
    indep_cmd->callback([&] {
        auto space = space_from_json(load_json(space_path));
        auto a = partition_from_json(load_json(a_path));
        auto b = partition_from_json(load_json(b_path));
        std::cout << (independent(space, a, b, g.tol_or(1e-12)) ? "true" : "false") << "\n";
    });
    std::string seqa_path, seqb_path, lima_path, limb_path;
    auto* cont_cmd = lattice_cmd->add_subcommand("continuity");
    cont_cmd->add_option("--space", space_path)->required();
    cont_cmd->add_option("--seqa", seqa_path)->required();
    cont_cmd->add_option("--seqb", seqb_path)->required();
    cont_cmd->add_option("--lima", lima_path)->required();
    cont_cmd->add_option("--limb", limb_path)->required();
    cont_cmd->add_option("--family", family_name);
    cont_cmd->add_option("--out", out_path);
    cont_cmd->callback([&] {
        auto space = space_from_json(load_json(space_path));
        auto rep = lattice_continuity_experiment(
            space, sequence_from_json(load_json(seqa_path)),
            sequence_from_json(load_json(seqb_path)), partition_from_json(load_json(lima_path)),
            partition_from_json(load_json(limb_path)), family_by_name(space, family_name));
        json viol = json::array();
        for (auto [k, j] : rep.violations) viol.push_back(json{{"index", k}, {"test", j}});
        emit(dump(json{{"dkappa_join", doubles_json(rep.dkappa_join)},
                       {"dkappa_meet", doubles_json(rep.dkappa_meet)},
                       {"meet_lhs", doubles_json(rep.meet_lhs)},
                       {"meet_bound", doubles_json(rep.meet_bound)},
                       {"violations", viol}}),
             out_path);
    });

    // bundle
    std::string u_path;
    auto* bundle_cmd = app.add_subcommand("bundle", "Bundle-space convergence and fingerprints");
    auto* fp_cmd = bundle_cmd->add_subcommand("fingerprint");
    fp_cmd->add_option("--space", space_path)->required();
    fp_cmd->add_option("--u", u_path)->required();
    fp_cmd->add_option("--partition", b_path)->required();
    fp_cmd->add_option("--family", family_name);
    fp_cmd->add_option("--out", out_path);
    fp_cmd->callback([&] {
        auto space = space_from_json(load_json(space_path));
        BundleElement elem(randvec_from_json(load_json(u_path)),
                           partition_from_json(load_json(b_path)));
        auto fp = fingerprint(space, elem, family_by_name(space, family_name));
        if (fp.norm_warning)
            std::cerr << "warning: element norm exceeds 1; fingerprint box bounds scale\n";
        json out = json::array();
        for (std::size_t j = 0; j < fp.entries.size(); ++j)
            out.push_back(json{{"test", j + 1},
                               {"first", fp.entries[j].first},
                               {"second", fp.entries[j].second}});
        emit(dump(out), out_path);
    });
    for (const char* name : {"strongdev", "weakdev"}) {
        auto* cmd = bundle_cmd->add_subcommand(name);
        cmd->add_option("--space", space_path)->required();
        cmd->add_option("--seq", seq_path)->required();
        cmd->add_option("--limit", limit_path)->required();
        cmd->add_option("--family", family_name);
        cmd->add_option("--out", out_path);
        bool strong = std::string(name) == "strongdev";
        cmd->callback([&, strong] {
            auto space = space_from_json(load_json(space_path));
            json sj = load_json(seq_path);
            std::vector<BundleElement> seq;
            for (const auto& e : sj.at("elements"))
                seq.emplace_back(randvec_from_json(e.at("u").is_array()
                                                       ? json{{"values", e.at("u")}}
                                                       : e),
                                 partition_from_json(e.at("partition")));
            json lj = load_json(limit_path);
            BundleElement limit(randvec_from_json(json{{"values", lj.at("u")}}),
                                partition_from_json(lj.at("partition")));
            auto fam = family_by_name(space, family_name);
            if (strong) {
                emit(dump(json{{"dev", doubles_json(bundle_strong_dev(space, seq, limit, fam))}}),
                     out_path);
            } else {
                auto res = bundle_weak_dev(space, seq, limit, fam);
                emit(dump(json{{"w1_sup", res.w1_sup}, {"w2_dev", doubles_json(res.w2_dev)}}),
                     out_path);
            }
        });
    }

    // density
    double k_bound = 4.0;
    std::string density_path;
    auto* density_cmd = app.add_subcommand("density", "Density pairs and rho-convergence");
    auto* rho_cmd = density_cmd->add_subcommand("rho");
    rho_cmd->add_option("--space", space_path)->required();
    rho_cmd->add_option("--density", density_path)->required();
    rho_cmd->add_option("--f", f_path)->required();
    rho_cmd->callback([&] {
        auto space = space_from_json(load_json(space_path));
        auto pair = density_from_json(space, load_json(density_path));
        auto f = randvec_from_json(load_json(f_path));
        std::cout << format_double(rho_value(space, pair, f)) << "\n";
    });
    auto* dex_cmd = density_cmd->add_subcommand("extract");
    dex_cmd->add_option("--space", space_path)->required();
    dex_cmd->add_option("--seq", seq_path)->required();
    dex_cmd->add_option("--K", k_bound);
    dex_cmd->add_option("--family", family_name);
    dex_cmd->add_option("--out", out_path);
    dex_cmd->callback([&] {
        auto space = space_from_json(load_json(space_path));
        json sj = load_json(seq_path);
        std::vector<DensityPair> seq;
        for (const auto& d : sj.at("densities")) seq.push_back(density_from_json(space, d));
        auto res = extract_rho_convergent(space, seq, k_bound,
                                          family_by_name(space, family_name));
        emit(dump(json{{"indices", res.indices},
                       {"limit",
                        json{{"partition", to_json(res.limit.g)}, {"u", res.limit.u.values}}},
                       {"cluster_radius", res.cluster_radius},
                       {"rho_envelope", doubles_json(res.rho_envelope)}}),
             out_path);
    });

    // dyadic
    int dy_k = 12;
    std::uint64_t nmax = 4095;
    std::string dy_f = "g0", omegas_str = "0.1,0.3,0.7";
    auto* dyadic_cmd = app.add_subcommand("dyadic", "Exact dyadic counterexample traces");
    auto* c1_cmd = dyadic_cmd->add_subcommand("claim1");
    c1_cmd->add_option("--K", dy_k);
    c1_cmd->add_option("--nmax", nmax);
    c1_cmd->add_option("--f", dy_f, "g0 or a randvec JSON file");
    c1_cmd->add_option("--out", out_path);
    c1_cmd->callback([&] {
        DyadicSpace space(dy_k);
        std::vector<Rational> f;
        if (dy_f == "g0") {
            f = g0_exact(space);
        } else {
            RandVec fv = randvec_from_json(load_json(dy_f));
            for (double x : fv.values) f.emplace_back(x);
        }
        auto rows = claim1_trace(space, 1, nmax, f);
        std::ostringstream os;
        os << "n,m,P_I,norm_sq,delta,P_I_float,norm_sq_float,delta_float\n";
        for (const auto& r : rows)
            os << r.n << "," << r.m << "," << rational_str(r.p_interval) << ","
               << rational_str(r.norm_sq) << "," << rational_str(r.delta) << ","
               << format_double(to_double(r.p_interval)) << ","
               << format_double(to_double(r.norm_sq)) << ","
               << format_double(to_double(r.delta)) << "\n";
        emit(os.str(), out_path);
    });
    auto* c2_cmd = dyadic_cmd->add_subcommand("claim2");
    c2_cmd->add_option("--K", dy_k);
    c2_cmd->add_option("--nmax", nmax)->default_val(std::uint64_t{0});
    c2_cmd->add_option("--omegas", omegas_str, "Comma-separated points of [0,1]");
    c2_cmd->add_option("--out", out_path);
    c2_cmd->callback([&] {
        DyadicSpace space(dy_k);
        std::uint64_t hi = nmax != 0 ? nmax : (std::uint64_t{1} << dy_k) - 1;
        std::vector<std::size_t> atoms;
        std::stringstream ss(omegas_str);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            double w = std::stod(tok);
            if (w < 0.0 || w > 1.0) throw std::invalid_argument("field \"omegas\": out of [0,1]");
            auto atom = static_cast<std::size_t>(w * static_cast<double>(space.n_atoms()));
            atoms.push_back(std::min(atom, space.n_atoms() - 1));
        }
        auto traces = claim2_trace(space, 1, hi, atoms);
        std::ostringstream os;
        os << "atom,n,value,value_float\n";
        for (const auto& tr : traces)
            for (std::size_t i = 0; i < tr.trace.size(); ++i)
                os << tr.atom << "," << (i + 1) << "," << rational_str(tr.trace[i]) << ","
                   << format_double(to_double(tr.trace[i])) << "\n";
        os << "# per-atom horizon estimates\n";
        os << "atom,limsup_abs_dev,last_pow2_dev\n";
        for (const auto& tr : traces)
            os << tr.atom << "," << rational_str(tr.limsup_estimate) << ","
               << (tr.pow2_dev.empty() ? std::string("-") : rational_str(tr.pow2_dev.back()))
               << "\n";
        emit(os.str(), out_path);
    });

    // infodesign
    std::string instance_path;
    auto* info_cmd = app.add_subcommand("infodesign", "Information-design equilibrium solver");
    auto* solve_cmd = info_cmd->add_subcommand("solve");
    solve_cmd->add_option("--instance", instance_path)->required();
    solve_cmd->add_option("--out", out_path);
    solve_cmd->callback([&] {
        auto inst = instance_from_json(load_json(instance_path));
        auto eq = solve_equilibrium(inst);
        json strategies = json::array();
        for (std::size_t h = 0; h < eq.s_hat.per_support.size(); ++h)
            strategies.push_back(json{{"support_index", h},
                                      {"blocks", eq.s_hat.per_support[h]}});
        emit(dump(json{{"nu_hat", eq.nu_hat.weights},
                       {"s_hat", strategies},
                       {"value", eq.value},
                       {"certificate",
                        json{{"dm_kkt_residual", eq.certificate.dm_kkt_residual},
                             {"id_vertex_gap", eq.certificate.id_vertex_gap},
                             {"chosen_support_index", eq.certificate.chosen_support_index},
                             {"optimal_face", eq.certificate.optimal_face}}}}),
             out_path);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
