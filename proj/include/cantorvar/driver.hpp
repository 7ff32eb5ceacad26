#pragma once

#include <iostream>
#include <optional>

#include "cantorvar/io.hpp"
#include "cantorvar/verify.hpp"

namespace cantorvar {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitCapExceeded = 3;

/// Command-line overrides; config file values fill whatever is unset.
struct CliOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::string out_path;
    int jobs = 1;
    std::string fault;  // test fixture: none | telescoping | character | ominus
    std::vector<int> ps;
};

namespace detail {

inline json load_config(const CliOptions& opt) {
    json cfg = json::object();
    if (!opt.config_path.empty()) cfg = load_json_file(opt.config_path);
    if (cfg.contains("schema") && cfg.at("schema").get<int>() != 1)
        throw std::invalid_argument("unsupported config schema");
    return cfg;
}

inline std::string csv_join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        s += fmt_double(v[i]);
    }
    return s;
}

}  // namespace detail

// --- verify ------------------------------------------------------------------

inline int cmd_verify(const CliOptions& opt, std::ostream& out) {
    json cfg = detail::load_config(opt);
    VerifyConfig vc;
    vc.group_orders = cfg.value("group", std::vector<int>{2});
    vc.ps = cfg.value("p", std::vector<int>{2});
    vc.trials = cfg.value("trials", 50);
    vc.seed = opt.seed.value_or(cfg.value("seed", std::uint64_t{1}));
    vc.mode = opt.mode.value_or(cfg.value("mode", std::string{"both"}));
    vc.jobs = opt.jobs;
    if (vc.mode != "both" && vc.mode != "exact" && vc.mode != "float")
        throw std::invalid_argument("mode must be exact, float, or both");
    Fault fault = fault_from_string(!opt.fault.empty() ? opt.fault
                                                       : cfg.value("fault", std::string{}));

    auto results = run_verify_suite(vc, fault);
    json checks = json::array();
    for (const auto& r : results)
        checks.push_back(json{{"check_id", r.check_id},
                              {"mode", r.mode},
                              {"instances", r.instances},
                              {"failures", r.failures},
                              {"worst_ratio", r.worst_ratio},
                              {"seed", r.seed},
                              {"failing_seed", r.failing_seed}});
    bool passed = suite_passed(results);
    json report{{"command", "verify"}, {"group", vc.group_orders}, {"p", vc.ps},
                {"trials", vc.trials}, {"seed", vc.seed},          {"mode", vc.mode},
                {"passed", passed},    {"checks", checks}};
    out << report.dump(2) << "\n";
    return passed ? kExitOk : kExitCheckFailure;
}

// --- variation -----------------------------------------------------------------

inline int cmd_variation(const CliOptions& opt, std::ostream& out) {
    json cfg = detail::load_config(opt);
    Group g = make_group(cfg.value("group", std::vector<int>{2}));
    std::vector<double> ps;
    if (!opt.ps.empty())
        for (int p : opt.ps) ps.push_back(p);
    else
        ps = cfg.value("p", std::vector<double>{2.0});
    std::vector<int> ladder_ks = cfg.value("ladder", std::vector<int>{-1, 0});
    ScaleLadder ladder = make_ladder(ladder_ks);
    std::string mode = opt.mode.value_or(cfg.value("mode", std::string{"float"}));

    json inst = cfg.value("instances", json{{"type", "indicator"}});
    std::string type = inst.value("type", std::string{"indicator"});
    long long trials = type == "indicator" ? 1 : inst.value("trials", 8);
    int N = inst.value("N", 0), K = inst.value("K", std::max(0, ladder.back()));
    bool nonneg = inst.value("nonneg", true);
    std::uint64_t seed = opt.seed.value_or(inst.value("seed", std::uint64_t{1}));
    if (ladder.back() > K) throw std::invalid_argument("ladder exceeds resolution K");

    out << "trial,p,variation_sum,bound,ratio,jump_norms\n";
    bool all_ok = true;
    for (long long t = 0; t < trials; ++t) {
        std::mt19937_64 rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
        StepFn2<std::complex<double>> F = [&] {
            if (type == "indicator")
                return constant_indicator_unit_square<std::complex<double>>(
                    g, std::complex<double>(1.0, 0.0));
            long long m = ipow(g.d, N + K);
            auto ge = random_exact_grid(g, m, nonneg, false, rng);
            return to_float_step(make_step<Cyclo>(g, K, N, std::move(ge), nonneg));
        }();
        StepFn2<std::complex<double>> G = [&] {
            if (type == "indicator") return F;
            long long m = ipow(g.d, N + K);
            auto ge = random_exact_grid(g, m, nonneg, false, rng);
            return to_float_step(make_step<Cyclo>(g, K, N, std::move(ge), nonneg));
        }();
        int N2 = std::max(F.N, -ladder.front());
        F = extend_support(F, N2);
        G = extend_support(G, N2);
        std::vector<MeasuredValues> seq;
        for (int k : ladder.ks) seq.push_back(flatten(bilinear_average(F, G, k)));
        MeasureWeights w = uniform_cell_weights(F);
        for (double p : ps) {
            VariationReport rep = variation_sum(seq, w, p);
            double cp = compute_cp(p).value;
            double f2p = std::pow(lp_norm_pow_f(F, 2.0 * p), 1.0 / (2.0 * p));
            double g2p = std::pow(lp_norm_pow_f(G, 2.0 * p), 1.0 / (2.0 * p));
            fill_bound(rep, assembled_constant(p, cp) * std::pow(f2p, p) * std::pow(g2p, p));
            all_ok = all_ok && (rep.bound <= 0.0 || rep.ratio <= 1.0 + 1e-9);
            out << t << ',' << fmt_double(p) << ',' << fmt_double(rep.variation_sum) << ','
                << fmt_double(rep.bound) << ',' << fmt_double(rep.ratio) << ','
                << detail::csv_join(rep.jump_norms) << "\n";
        }
    }
    return all_ok ? kExitOk : kExitCheckFailure;
}

// --- jumps ----------------------------------------------------------------------

inline int cmd_jumps(const CliOptions& opt, std::ostream& out) {
    json cfg = detail::load_config(opt);
    if (!cfg.contains("system")) throw std::invalid_argument("jumps needs a system spec");
    FiniteSystem sys = system_from_json(cfg.at("system"));
    int p = opt.ps.empty() ? cfg.value("p", 2) : opt.ps.front();
    std::vector<double> eps = cfg.value("eps", std::vector<double>{0.1, 0.2, 0.5});
    long long trials = cfg.value("trials", 20);
    std::uint64_t seed = opt.seed.value_or(cfg.value("seed", std::uint64_t{1}));
    double cp = compute_cp(p).value;
    double Cp = assembled_constant(p, cp);

    out << "trial,eps,count,bound\n";
    bool all_ok = true;
    for (long long t = 0; t < trials; ++t) {
        std::mt19937_64 rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        Eigen::ArrayXcd f(sys.size), h(sys.size);
        for (int i = 0; i < sys.size; ++i) {
            f(i) = unif(rng);
            h(i) = unif(rng);
        }
        f /= system_norm(sys, f, 2.0 * p);
        h /= system_norm(sys, h, 2.0 * p);
        std::vector<MeasuredValues> seq;
        for (int n = 0; n <= sys.depth; ++n) seq.push_back(ergodic_average(sys, f, h, n));
        for (double e : eps) {
            int count = count_jumps(seq, sys.mu, e, static_cast<double>(p));
            double bound = Cp * std::pow(e, -static_cast<double>(p));
            all_ok = all_ok && count <= bound + 1e-9;
            out << t << ',' << fmt_double(e) << ',' << count << ',' << fmt_double(bound)
                << "\n";
        }
    }
    return all_ok ? kExitOk : kExitCheckFailure;
}

// --- cp -------------------------------------------------------------------------

inline int cmd_cp(const CliOptions& opt, std::ostream& out) {
    std::vector<double> ps;
    if (!opt.ps.empty())
        for (int p : opt.ps) ps.push_back(p);
    else if (!opt.config_path.empty())
        ps = detail::load_config(opt).value("p", std::vector<double>{2.0});
    else
        ps = {2.0};
    out << "p,c_p,C_p\n";
    for (double p : ps) {
        auto r = compute_cp(p);
        out << fmt_double(p) << ',' << fmt_double(r.value) << ','
            << fmt_double(assembled_constant(p, r.value)) << "\n";
    }
    return kExitOk;
}

/// Shared entry point used by the binary and the in-process tests.
inline int run_command(const std::string& command, const CliOptions& opt, std::ostream& out) {
    try {
        if (command == "verify") return cmd_verify(opt, out);
        if (command == "variation") return cmd_variation(opt, out);
        if (command == "jumps") return cmd_jumps(opt, out);
        if (command == "cp") return cmd_cp(opt, out);
        std::cerr << "unknown command: " << command << "\n";
        return kExitConfigError;
    } catch (const cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace cantorvar
