#include "cli.hpp"

#include "condent/error.hpp"
#include "condent/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace condent::cli {

namespace {

using io::Json;

constexpr const char* kVersion = "0.1.0";

const std::vector<std::string> kCommands = {
    "entropy", "relative", "majorize", "oracle", "channel-apply", "channel-sample",
    "power-universal", "admissible", "grid", "large-sample", "rate", "catalyst",
    "ncopy", "thermo", "curvature", "falsify"};

// Inline JSON when the argument looks like JSON, otherwise a file path.
Json load(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return io::parse_text(arg, "argument");
    std::ifstream in(arg);
    if (!in) throw Error(ErrorCode::SchemaError, "cannot read '" + arg + "'", "/");
    std::stringstream ss;
    ss << in.rdbuf();
    return io::parse_text(ss.str(), arg);
}

Grid load_grid(const std::string& name) {
    try {
        return grid_by_name(name.empty() ? default_grid_preset_name() : name);
    } catch (const Error& e) {
        throw Error(ErrorCode::SchemaError, e.detail(), "/grid");
    }
}

struct Options {
    std::string p, q, third;
    std::string family;
    std::optional<double> alpha, alpha2, beta, t, a, b, p_param, h, weight, delta, eps;
    std::string tau, spec, grid, output, energies, prop = "first", thermo_cmd;
    int n = 1;
    double d = 0.0;
    std::size_t dim = 2, n_in = 1, n_out = 1, trials = 10000;
    std::uint64_t seed = 0;
};

double need(const std::optional<double>& v, const char* flag) {
    if (!v) throw Error(ErrorCode::SchemaError, std::string("missing --") + flag, "/");
    return *v;
}

DiscreteMeasure tau_of(const Options& o) {
    if (o.tau.empty()) throw Error(ErrorCode::SchemaError, "missing --tau", "/");
    return io::measure_from_json(load(o.tau));
}

EntropyFamily family_of(const Options& o) {
    if (!o.spec.empty()) return io::family_from_json(load(o.spec));
    const std::string& f = o.family;
    if (f == "bulk") return FamilyBulk{BulkParam(need(o.t, "t"), tau_of(o))};
    if (f == "zero") return FamilyZero{need(o.alpha, "alpha")};
    if (f == "neg_inf") return FamilyNegInf{tau_of(o)};
    if (f == "pos_inf_zero") return FamilyPosInfZero{};
    NamedSpec s{};
    if (f == "hayashi") {
        s.name = NamedFamily::Hayashi;
    } else if (f == "arimoto") {
        s.name = NamedFamily::Arimoto;
    } else if (f == "two_param") {
        s.name = NamedFamily::TwoParam;
        s.beta = need(o.beta, "beta");
    } else if (f == "cachin") {
        s.name = NamedFamily::Cachin;
    } else if (f == "renner_wolf") {
        s.name = NamedFamily::RennerWolf;
    } else if (f == "tan_hayashi") {
        s.name = NamedFamily::TanHayashi;
        s.a = need(o.a, "a");
        s.b = need(o.b, "b");
        return FamilyNamed{s};
    } else {
        throw Error(ErrorCode::SchemaError, "unknown family '" + f + "'", "/family");
    }
    s.alpha = need(o.alpha, "alpha");
    return FamilyNamed{s};
}

Json cmd_entropy(const Options& o) {
    const JointDist j = io::joint_from_json(load(o.p));
    if (!o.spec.empty()) {
        const Json spec = load(o.spec);
        if (spec.contains("mixture")) {
            const MixtureEntropy m = io::mixture_from_json(spec);
            return Json{{"value", io::to_json(h_mixture(j, m))}, {"family", io::to_json(m)}};
        }
    }
    const EntropyFamily f = family_of(o);
    return Json{{"value", io::to_json(evaluate(j, f))}, {"family", io::to_json(f)}};
}

Json cmd_curvature(const Options& o) {
    Json out;
    if (o.prop == "first" || o.prop == "derivation") {
        const double p = o.p_param.value_or(0.1);
        const int d = o.d > 0 ? static_cast<int>(o.d) : 200;
        const Direction dir = counterexample_alpha_gt_one(p, d);
        out["direction"] = io::to_json(dir);
        if (o.prop == "derivation") {
            const double alpha = o.alpha.value_or(2.0);
            out["alpha"] = io::to_json(alpha);
            out["sample"] = io::to_json(derivation_second_derivative(dir, alpha, o.h));
            return out;
        }
        const double alpha = o.alpha.value_or(2.0);
        const double w = o.weight.value_or(1.0);
        DiscreteMeasure tau = w < 1.0 ? DiscreteMeasure({{0.0, 1.0 - w}, {alpha, w}}) : DiscreteMeasure::point(alpha);
        const BulkParam param(o.t.value_or(1.0), std::move(tau));
        out["param"] = io::to_json(param);
        out["sample"] = io::to_json(second_derivative(dir, param, o.h));
        return out;
    }
    if (o.prop == "second") {
        const BulkParam param(o.t.value_or(-0.1), DiscreteMeasure::point(o.alpha.value_or(2.0)));
        const int d = o.d > 0 ? static_cast<int>(o.d) : 1000;
        const Direction dir = counterexample_beta0_positive(param, d);
        const BetaSplit b = beta_split(param);
        out["param"] = io::to_json(param);
        out["direction"] = io::to_json(dir);
        out["beta0"] = b.beta0;
        out["beta1"] = b.beta1;
        out["asymptote"] = beta0_asymptote(param);
        out["sample"] = io::to_json(second_derivative(dir, param, o.h));
        return out;
    }
    if (o.prop == "third") {
        const double a1 = o.alpha.value_or(1.5);
        const double a2 = o.alpha2.value_or(3.0);
        const double w = o.weight.value_or(0.5);
        const BulkParam param(o.t.value_or(-0.2), DiscreteMeasure({{a1, w}, {a2, 1.0 - w}}));
        const Direction dir = counterexample_two_points(param, o.delta.value_or(0.1), o.d > 0 ? o.d : 1000.0);
        out["param"] = io::to_json(param);
        out["direction"] = io::to_json(dir);
        out["asymptote"] = two_points_asymptote(param);
        out["sample"] = io::to_json(second_derivative(dir, param, o.h));
        return out;
    }
    throw Error(ErrorCode::SchemaError, "unknown --prop '" + o.prop + "'", "/prop");
}

Json cmd_thermo(const Options& o) {
    const Json e = load(o.energies.empty() ? throw Error(ErrorCode::SchemaError, "missing --energies", "/") : o.energies);
    GibbsSpec g = io::gibbs_from_json(e);
    if (o.beta) g.beta = *o.beta;
    if (o.thermo_cmd == "second-laws") {
        const JointDist p = io::joint_from_json(load(o.p));
        const JointDist q = io::joint_from_json(load(o.q));
        return io::to_json(second_laws_verdict(p, q, g, o.eps.value_or(0.01), load_grid(o.grid)));
    }
    if (o.thermo_cmd == "free-energy") {
        const JointDist p = io::joint_from_json(load(o.p));
        if (!o.t) {
            return Json{{"value", io::to_json(free_energy_neg_inf(p, g, tau_of(o)))}, {"family", "neg_inf"}};
        }
        return Json{{"value", io::to_json(free_energy(p, g, BulkParam(*o.t, tau_of(o))))}, {"family", "bulk"}};
    }
    if (o.thermo_cmd == "embed") {
        const EmbedSpec spec = embed_spec(g);
        Json out{{"embedding", io::to_json(spec)}, {"gibbs", gibbs_state(g)}};
        if (!o.p.empty()) out["embedded"] = io::to_json(embed(io::joint_from_json(load(o.p)), spec));
        return out;
    }
    throw Error(ErrorCode::UnknownCommand, "unknown thermo command '" + o.thermo_cmd + "'");
}

void write_error(std::ostream& out, const std::string& code, const std::string& detail, const std::string& pointer) {
    Json j{{"error", code}, {"detail", detail}};
    if (!pointer.empty()) j["pointer"] = pointer;
    out << io::write(j) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    bool manifest = false;
    std::vector<std::string> rest;
    for (const std::string& a : args) {
        if (a == "--manifest") {
            manifest = true;
        } else {
            rest.push_back(a);
        }
    }
    if (!rest.empty() && rest.front().front() != '-' &&
        std::find(kCommands.begin(), kCommands.end(), rest.front()) == kCommands.end()) {
        write_error(out, "UnknownCommand", "unknown command '" + rest.front() + "'", "");
        return 2;
    }

    Options o;
    CLI::App app{"Conditional entropy and conditional majorization toolkit", "condent"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    std::function<Json()> action;

    auto positional2 = [&](CLI::App* sub) {
        sub->add_option("P", o.p, "first input (file or inline JSON)")->required();
        sub->add_option("Q", o.q, "second input (file or inline JSON)")->required();
    };
    auto grid_flag = [&](CLI::App* sub) { sub->add_option("--grid", o.grid, "grid preset: coarse, medium, fine"); };

    auto* entropy = app.add_subcommand("entropy", "evaluate an entropy family");
    entropy->add_option("P", o.p)->required();
    entropy->add_option("--family", o.family);
    entropy->add_option("--spec", o.spec, "family or mixture JSON");
    entropy->add_option("--alpha", o.alpha);
    entropy->add_option("--beta", o.beta);
    entropy->add_option("--t", o.t);
    entropy->add_option("--tau", o.tau);
    entropy->add_option("--a", o.a);
    entropy->add_option("--b", o.b);
    entropy->callback([&] { action = [&] { return cmd_entropy(o); }; });

    auto* relative = app.add_subcommand("relative", "Renyi divergence of two vectors");
    positional2(relative);
    relative->add_option("--alpha", o.alpha)->required();
    relative->callback([&] {
        action = [&] {
            const ProbVec p = io::probvec_from_json(load(o.p));
            const ProbVec r = io::probvec_from_json(load(o.q));
            return Json{{"value", io::to_json(renyi_relative(p, r, *o.alpha))}};
        };
    });

    auto* major = app.add_subcommand("majorize", "prefix-sum majorization test");
    positional2(major);
    major->callback([&] {
        action = [&] {
            return Json{{"majorizes", majorizes(io::probvec_from_json(load(o.p)), io::probvec_from_json(load(o.q)))}};
        };
    });

    auto* oracle = app.add_subcommand("oracle", "exact conditional majorization oracle");
    positional2(oracle);
    oracle->callback([&] {
        action = [&] {
            const OracleCertificate c =
                cond_majorizes_oracle(io::joint_from_json(load(o.p)), io::joint_from_json(load(o.q)));
            Json j = io::to_json(c);
            j["verified"] = verify_certificate(c);
            return j;
        };
    });

    auto* apply = app.add_subcommand("channel-apply", "apply a conditionally mixing channel");
    positional2(apply);
    apply->callback([&] {
        action = [&] {
            return io::to_json(apply_channel(io::joint_from_json(load(o.p)), io::channel_from_json(load(o.q))));
        };
    });

    auto* sample = app.add_subcommand("channel-sample", "sample a conditionally mixing channel");
    sample->add_option("--d", o.dim)->required();
    sample->add_option("--n", o.n_in)->required();
    sample->add_option("--n-out", o.n_out)->required();
    sample->add_option("--seed", o.seed);
    sample->callback([&] { action = [&] { return io::to_json(sample_channel(o.dim, o.n_in, o.n_out, o.seed)); }; });

    auto* pu = app.add_subcommand("power-universal", "power-universality test");
    pu->add_option("P", o.p)->required();
    pu->callback([&] { action = [&] { return Json{{"power_universal", power_universal(io::joint_from_json(load(o.p)))}}; }; });

    auto* adm = app.add_subcommand("admissible", "parameter admissibility");
    adm->add_option("--t", o.t);
    adm->add_option("--tau", o.tau)->required();
    adm->callback([&] {
        action = [&] {
            const DiscreteMeasure tau = tau_of(o);
            Json j{{"neg_inf", io::to_json(in_neg_inf(tau))}, {"integral", io::to_json(integral_coefficient(tau))}};
            j["bulk"] = o.t ? io::to_json(in_bulk(BulkParam(*o.t, tau))) : Json(nullptr);
            return j;
        };
    });

    auto* grid_cmd = app.add_subcommand("grid", "list a parameter grid");
    grid_flag(grid_cmd);
    grid_cmd->callback([&] { action = [&] { return io::to_json(load_grid(o.grid)); }; });

    auto* large = app.add_subcommand("large-sample", "large-sample transformation verdict");
    positional2(large);
    grid_flag(large);
    large->callback([&] {
        action = [&] {
            return io::to_json(large_sample_verdict(io::joint_from_json(load(o.p)), io::joint_from_json(load(o.q)),
                                                    load_grid(o.grid)));
        };
    });

    auto* rate = app.add_subcommand("rate", "optimal transformation rate estimate");
    positional2(rate);
    grid_flag(rate);
    rate->callback([&] {
        action = [&] {
            return io::to_json(
                rate_formula(io::joint_from_json(load(o.p)), io::joint_from_json(load(o.q)), load_grid(o.grid)));
        };
    });

    auto* cat = app.add_subcommand("catalyst", "build the n-copy catalyst");
    positional2(cat);
    cat->add_option("-n", o.n)->required();
    cat->add_option("-o,--output", o.output);
    cat->callback([&] {
        action = [&] {
            const JointDist c = catalyst(io::joint_from_json(load(o.p)), io::joint_from_json(load(o.q)), o.n);
            if (o.output.empty()) return io::to_json(c);
            std::ofstream f(o.output);
            if (!f) throw Error(ErrorCode::SchemaError, "cannot write '" + o.output + "'", "/output");
            f << io::write(io::to_json(c)) << '\n';
            return Json{{"written", o.output}, {"rows", c.rows()}, {"cols", c.cols()}};
        };
    });

    auto* ncopy = app.add_subcommand("ncopy", "oracle on n-fold tensor powers");
    positional2(ncopy);
    ncopy->add_option("-n", o.n)->required();
    ncopy->callback([&] {
        action = [&] {
            const OracleCertificate c =
                n_copy_feasible(io::joint_from_json(load(o.p)), io::joint_from_json(load(o.q)), o.n);
            Json j = io::to_json(c);
            j["verified"] = verify_certificate(c);
            return j;
        };
    });

    auto* thermo = app.add_subcommand("thermo", "thermodynamic quantities");
    thermo->add_option("command", o.thermo_cmd, "second-laws, free-energy or embed")->required();
    thermo->add_option("P", o.p);
    thermo->add_option("Q", o.q);
    thermo->add_option("--energies", o.energies);
    thermo->add_option("--beta", o.beta);
    thermo->add_option("--eps", o.eps);
    thermo->add_option("--t", o.t);
    thermo->add_option("--tau", o.tau);
    grid_flag(thermo);
    thermo->callback([&] { action = [&] { return cmd_thermo(o); }; });

    auto* curv = app.add_subcommand("curvature", "second derivative along a constructed direction");
    curv->add_option("--prop", o.prop, "first, second, third or derivation");
    curv->add_option("--alpha", o.alpha);
    curv->add_option("--alpha2", o.alpha2);
    curv->add_option("--t", o.t);
    curv->add_option("--p", o.p_param);
    curv->add_option("--d", o.d);
    curv->add_option("--delta", o.delta);
    curv->add_option("--weight", o.weight);
    curv->add_option("--step", o.h, "finite-difference step");
    curv->callback([&] { action = [&] { return cmd_curvature(o); }; });

    auto* fals = app.add_subcommand("falsify", "search for monotonicity violations");
    fals->add_option("--t", o.t)->required();
    fals->add_option("--tau", o.tau)->required();
    fals->add_option("--trials", o.trials);
    fals->add_option("--seed", o.seed);
    fals->callback([&] {
        action = [&] { return io::to_json(falsify_monotonicity(BulkParam(*o.t, tau_of(o)), o.trials, o.seed)); };
    });

    int code = 0;
    try {
        std::vector<std::string> reversed(rest.rbegin(), rest.rend());
        app.parse(reversed);
        out << io::write(action()) << '\n';
    } catch (const CLI::CallForHelp&) {
        out << app.help();
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
    } catch (const CLI::ParseError& e) {
        write_error(out, "UsageError", e.what(), "");
        code = 2;
    } catch (const Error& e) {
        write_error(out, std::string(error_name(e.code())), e.detail(), e.pointer());
        code = 2;
    } catch (const std::exception& e) {
        write_error(out, "InternalError", e.what(), "");
        code = 1;
    }

    if (manifest) {
        const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        Json m{{"command", rest.empty() ? "" : rest.front()},
               {"arguments", rest.empty() ? std::vector<std::string>{} : std::vector<std::string>(rest.begin() + 1, rest.end())},
               {"seed", o.seed},
               {"version", kVersion},
               {"grid", o.grid.empty() ? default_grid_preset_name() : o.grid},
               {"exit_code", code},
               {"wall_time_seconds", elapsed}};
        err << io::write(Json{{"manifest", m}}) << '\n';
    }
    return code;
}

}  // namespace condent::cli
