#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <mqs/mqs.hpp>

namespace {

using mqs::detail::format_g17;
using ordered_json = nlohmann::ordered_json;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open config file: " + path);
    try {
        nlohmann::json j;
        in >> j;
        if (!j.is_object()) throw usage_error("config file must hold a JSON object: " + path);
        return j;
    } catch (const nlohmann::json::parse_error& e) {
        throw usage_error("config file " + path + " is not valid JSON: " + e.what());
    }
}

// Config-file values fill in flags the user did not pass; flags win.
struct Merger {
    nlohmann::json file;

    template <class T>
    void merge(const CLI::Option* opt, const char* key, T& value) const {
        if (opt->count() == 0 && file.contains(key)) {
            try {
                value = file.at(key).get<T>();
            } catch (const nlohmann::json::exception&) {
                throw usage_error(std::string("config key '") + key + "' has the wrong type");
            }
        }
    }

    bool supplied(const CLI::Option* opt, const char* key) const {
        return opt->count() > 0 || file.contains(key);
    }
};

std::string join_meta(const std::string& command,
                      const std::vector<std::pair<std::string, std::string>>& params) {
    std::ostringstream os;
    os << "mqs " << mqs::version << " " << command;
    for (const auto& [k, v] : params) os << ' ' << k << '=' << v;
    return os.str();
}

ordered_json meta_json(const std::string& command,
                       const std::vector<std::pair<std::string, std::string>>& params) {
    ordered_json m;
    m["version"] = mqs::version;
    m["command"] = command;
    ordered_json p;
    for (const auto& [k, v] : params) p[k] = v;
    m["params"] = p;
    return m;
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw usage_error("cannot open output file: " + out_path);
    os << text;
}

ordered_json constants_json(const mqs::TheoryConstants& tc) {
    ordered_json j;
    j["m"] = tc.m;
    j["s"] = tc.s;
    j["rho"] = tc.rho;
    j["delta0"] = tc.delta0;
    j["case"] = mqs::to_string(tc.label);
    j["C"] = tc.C;
    j["delta_max"] = tc.delta_max;
    j["lambda_prime"] = tc.lambda_prime;
    return j;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw usage_error(message);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized multiquadric interpolation: scheme constants, MN curves, "
                 "optimal shape parameter, and bound verification"};
    app.require_subcommand(1);

    // shared flag storage; each subcommand registers only the flags it uses
    int n = 0;
    double beta = std::numeric_limits<double>::quiet_NaN();
    double sigma = 1.0, b0 = 1.0, delta = 0.0, d0 = 1.0, a = 0.25;
    int l = 0, points = 0, probe_multiplier = 4;
    double c = 0.0, c_min = 0.0, c_max = 0.0, r = 0.0;
    std::string out_path, format, config_path;

    // the per-subcommand format default is applied after parsing, once we
    // know which subcommand ran
    const auto add_common = [&](CLI::App* cmd) {
        auto* fmt_opt = cmd->add_option("--format", format, "output format (csv or json)");
        fmt_opt->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path, "output file (default: stdout)");
        cmd->add_option("--config", config_path,
                        "JSON file with flag values; explicit flags override it");
        return fmt_opt;
    };

    CLI::App* cmd_constants = app.add_subcommand(
        "constants", "derive the scheme constants for (n, beta, b0)");
    auto* co_n = cmd_constants->add_option("--n", n, "space dimension");
    auto* co_beta = cmd_constants->add_option("--beta", beta, "kernel exponent");
    auto* co_b0 = cmd_constants->add_option("--b0", b0, "scale bound b0 (default 1)");
    auto* co_fmt = add_common(cmd_constants);

    CLI::App* cmd_curve = app.add_subcommand("mn-curve", "sample MN(c) on a log grid");
    auto* cu_n = cmd_curve->add_option("--n", n, "space dimension");
    auto* cu_beta = cmd_curve->add_option("--beta", beta, "kernel exponent");
    auto* cu_sigma = cmd_curve->add_option("--sigma", sigma, "weight parameter (default 1)");
    auto* cu_b0 = cmd_curve->add_option("--b0", b0, "scale bound b0 (default 1)");
    auto* cu_delta = cmd_curve->add_option("--delta", delta, "density parameter (derives l)");
    auto* cu_l = cmd_curve->add_option("--l", l, "lattice degree (overrides --delta)");
    auto* cu_d0 = cmd_curve->add_option("--d0", d0, "multiquadric prefactor constant");
    auto* cu_cmin = cmd_curve->add_option("--c-min", c_min, "grid start (default 0.01)");
    auto* cu_cmax = cmd_curve->add_option("--c-max", c_max, "grid end (default 10)");
    auto* cu_points = cmd_curve->add_option("--points", points, "grid size (default 200)");
    auto* cu_fmt = add_common(cmd_curve);

    CLI::App* cmd_opt = app.add_subcommand("optimal-c", "minimize MN(c) over a bracket");
    auto* op_n = cmd_opt->add_option("--n", n, "space dimension");
    auto* op_beta = cmd_opt->add_option("--beta", beta, "kernel exponent");
    auto* op_sigma = cmd_opt->add_option("--sigma", sigma, "weight parameter (default 1)");
    auto* op_b0 = cmd_opt->add_option("--b0", b0, "scale bound b0 (default 1)");
    auto* op_delta = cmd_opt->add_option("--delta", delta, "density parameter (derives l)");
    auto* op_l = cmd_opt->add_option("--l", l, "lattice degree (overrides --delta)");
    auto* op_d0 = cmd_opt->add_option("--d0", d0, "multiquadric prefactor constant");
    auto* op_cmin = cmd_opt->add_option("--c-min", c_min, "bracket start (default 1e-3)");
    auto* op_cmax = cmd_opt->add_option("--c-max", c_max, "bracket end (default 1e3)");
    auto* op_fmt = add_common(cmd_opt);

    CLI::App* cmd_verify = app.add_subcommand(
        "verify", "interpolate a Gaussian and compare the measured error with the bound");
    auto* ve_n = cmd_verify->add_option("--n", n, "space dimension");
    auto* ve_beta = cmd_verify->add_option("--beta", beta, "kernel exponent");
    auto* ve_sigma = cmd_verify->add_option("--sigma", sigma, "weight parameter (default 1)");
    auto* ve_b0 = cmd_verify->add_option("--b0", b0, "scale bound b0 (default 1)");
    auto* ve_delta = cmd_verify->add_option("--delta", delta, "density parameter");
    auto* ve_l = cmd_verify->add_option("--l", l, "lattice degree override");
    auto* ve_d0 = cmd_verify->add_option("--d0", d0, "multiquadric prefactor constant");
    auto* ve_a = cmd_verify->add_option("--a", a, "Gaussian decay rate (default 0.25)");
    auto* ve_c = cmd_verify->add_option("--c", c, "single shape parameter");
    auto* ve_cmin = cmd_verify->add_option("--c-min", c_min, "sweep start");
    auto* ve_cmax = cmd_verify->add_option("--c-max", c_max, "sweep end");
    auto* ve_points = cmd_verify->add_option("--points", points, "sweep size (default 20)");
    auto* ve_r = cmd_verify->add_option("--r", r, "simplex diameter override");
    auto* ve_probe =
        cmd_verify->add_option("--probe-multiplier", probe_multiplier,
                               "probe lattice degree = multiplier * l (default 4)");
    auto* ve_fmt = add_common(cmd_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Merger merger;
        if (!config_path.empty()) merger.file = load_config(config_path);

        if (app.got_subcommand(cmd_constants)) {
            merger.merge(co_n, "n", n);
            merger.merge(co_beta, "beta", beta);
            merger.merge(co_b0, "b0", b0);
            merger.merge(co_fmt, "format", format);
            if (!merger.supplied(co_fmt, "format")) format = "json";
            require(merger.supplied(co_n, "n"), "constants: --n is required");
            require(merger.supplied(co_beta, "beta"), "constants: --beta is required");

            const mqs::TheoryConstants tc = mqs::derive_constants(n, beta, b0);
            const std::vector<std::pair<std::string, std::string>> params{
                {"n", std::to_string(n)}, {"beta", format_g17(beta)}, {"b0", format_g17(b0)}};
            std::ostringstream os;
            if (format == "json") {
                ordered_json j;
                j["meta"] = meta_json("constants", params);
                j.update(constants_json(tc));
                os << j.dump(2) << "\n";
            } else {
                os << "# " << join_meta("constants", params) << "\n";
                os << "m,s,rho,delta0,case,C,delta_max,lambda_prime\n";
                os << tc.m << ',' << tc.s << ',' << format_g17(tc.rho) << ','
                   << format_g17(tc.delta0) << ',' << mqs::to_string(tc.label) << ','
                   << format_g17(tc.C) << ',' << format_g17(tc.delta_max) << ','
                   << format_g17(tc.lambda_prime) << "\n";
            }
            write_text(out_path, os.str());
            return 0;
        }

        if (app.got_subcommand(cmd_curve) || app.got_subcommand(cmd_opt)) {
            const bool is_curve = app.got_subcommand(cmd_curve);
            auto* o_n = is_curve ? cu_n : op_n;
            auto* o_beta = is_curve ? cu_beta : op_beta;
            auto* o_sigma = is_curve ? cu_sigma : op_sigma;
            auto* o_b0 = is_curve ? cu_b0 : op_b0;
            auto* o_delta = is_curve ? cu_delta : op_delta;
            auto* o_l = is_curve ? cu_l : op_l;
            auto* o_d0 = is_curve ? cu_d0 : op_d0;
            auto* o_cmin = is_curve ? cu_cmin : op_cmin;
            auto* o_cmax = is_curve ? cu_cmax : op_cmax;
            merger.merge(o_n, "n", n);
            merger.merge(o_beta, "beta", beta);
            merger.merge(o_sigma, "sigma", sigma);
            merger.merge(o_b0, "b0", b0);
            merger.merge(o_delta, "delta", delta);
            merger.merge(o_l, "l", l);
            merger.merge(o_d0, "d0", d0);
            merger.merge(o_cmin, "c-min", c_min);
            merger.merge(o_cmax, "c-max", c_max);
            merger.merge(is_curve ? cu_fmt : op_fmt, "format", format);
            if (!merger.supplied(is_curve ? cu_fmt : op_fmt, "format"))
                format = is_curve ? "csv" : "json";
            if (is_curve) merger.merge(cu_points, "points", points);

            require(merger.supplied(o_n, "n"), "--n is required");
            require(merger.supplied(o_beta, "beta"), "--beta is required");
            const bool have_l = merger.supplied(o_l, "l");
            const bool have_delta = merger.supplied(o_delta, "delta");
            require(have_l || have_delta, "provide --l or --delta");

            int degree = l;
            if (!have_l) {
                const mqs::TheoryConstants tc = mqs::derive_constants(n, beta, b0);
                degree = mqs::degree_range(tc.C, delta).l_min;
            }
            const mqs::MnCase mc = mqs::classify_case(n, beta, sigma, degree, d0);

            std::vector<std::pair<std::string, std::string>> params{
                {"n", std::to_string(n)},     {"beta", format_g17(beta)},
                {"sigma", format_g17(sigma)}, {"b0", format_g17(b0)},
                {"l", std::to_string(degree)}, {"d0", format_g17(d0)},
                {"case", mqs::to_string(mc.tag)}};
            if (have_delta) params.insert(params.begin() + 4, {"delta", format_g17(delta)});

            if (is_curve) {
                if (!merger.supplied(cu_cmin, "c-min")) c_min = 0.01;
                if (!merger.supplied(cu_cmax, "c-max")) c_max = 10.0;
                if (!merger.supplied(cu_points, "points")) points = 200;
                params.push_back({"c-min", format_g17(c_min)});
                params.push_back({"c-max", format_g17(c_max)});
                params.push_back({"points", std::to_string(points)});

                const mqs::MnCurve curve = mqs::mn_curve(mc, c_min, c_max, points);
                std::ostringstream os;
                if (format == "json") {
                    ordered_json j;
                    j["meta"] = meta_json("mn-curve", params);
                    ordered_json samples = ordered_json::array();
                    for (int i = 0; i < curve.count; ++i) {
                        ordered_json s;
                        s["c"] = curve.c[i];
                        s["mn"] = curve.mn(i);  // throws on linear-scale overflow
                        samples.push_back(s);
                    }
                    j["samples"] = samples;
                    os << j.dump(2) << "\n";
                } else {
                    os << "# " << join_meta("mn-curve", params) << "\n";
                    os << "c,mn\n";
                    for (int i = 0; i < curve.count; ++i)
                        os << format_g17(curve.c[i]) << ',' << format_g17(curve.mn(i)) << "\n";
                }
                write_text(out_path, os.str());
                return 0;
            }

            if (!merger.supplied(op_cmin, "c-min")) c_min = 1e-3;
            if (!merger.supplied(op_cmax, "c-max")) c_max = 1e3;
            params.push_back({"c-min", format_g17(c_min)});
            params.push_back({"c-max", format_g17(c_max)});

            const mqs::MnResult res = mqs::minimize_mn(mc, c_min, c_max);
            std::string message;
            switch (res.status) {
                case mqs::MnStatus::InteriorMin:
                    message = "interior minimum found";
                    break;
                case mqs::MnStatus::InfimumAtZero:
                    message = "MN(c) -> 0 as c -> 0+ (degree exponent 1+beta-n-4l > 0); the "
                              "infimum is not attained at any positive c";
                    break;
                case mqs::MnStatus::UnboundedWarning:
                    message = "grid argmin sits on the bracket edge; the bracket holds no "
                              "interior minimum";
                    break;
            }

            std::ostringstream os;
            if (format == "json") {
                ordered_json j;
                j["meta"] = meta_json("optimal-c", params);
                j["status"] = mqs::to_string(res.status);
                if (res.c_star)
                    j["c_star"] = *res.c_star;
                else
                    j["c_star"] = nullptr;
                j["mn"] = res.mn_at_c_star;
                j["log_mn"] = res.log_mn_at_c_star;
                j["bracket"] = {res.bracket_lo, res.bracket_hi};
                j["message"] = message;
                os << j.dump(2) << "\n";
            } else {
                os << "# " << join_meta("optimal-c", params) << "\n";
                os << "status,c_star,mn,log_mn,bracket_lo,bracket_hi\n";
                os << mqs::to_string(res.status) << ','
                   << (res.c_star ? format_g17(*res.c_star) : std::string()) << ','
                   << format_g17(res.mn_at_c_star) << ',' << format_g17(res.log_mn_at_c_star)
                   << ',' << format_g17(res.bracket_lo) << ',' << format_g17(res.bracket_hi)
                   << "\n";
            }
            write_text(out_path, os.str());
            if (res.status != mqs::MnStatus::InteriorMin) {
                std::cerr << "optimal-c: " << message << "\n";
                return 1;
            }
            return 0;
        }

        // verify
        merger.merge(ve_n, "n", n);
        merger.merge(ve_beta, "beta", beta);
        merger.merge(ve_sigma, "sigma", sigma);
        merger.merge(ve_b0, "b0", b0);
        merger.merge(ve_delta, "delta", delta);
        merger.merge(ve_l, "l", l);
        merger.merge(ve_d0, "d0", d0);
        merger.merge(ve_a, "a", a);
        merger.merge(ve_c, "c", c);
        merger.merge(ve_cmin, "c-min", c_min);
        merger.merge(ve_cmax, "c-max", c_max);
        merger.merge(ve_points, "points", points);
        merger.merge(ve_r, "r", r);
        merger.merge(ve_probe, "probe-multiplier", probe_multiplier);
        merger.merge(ve_fmt, "format", format);
        if (!merger.supplied(ve_fmt, "format")) format = "csv";

        require(merger.supplied(ve_n, "n"), "verify: --n is required");
        require(merger.supplied(ve_beta, "beta"), "verify: --beta is required");
        require(merger.supplied(ve_delta, "delta"), "verify: --delta is required");
        const bool single = merger.supplied(ve_c, "c");
        const bool grid = merger.supplied(ve_cmin, "c-min") || merger.supplied(ve_cmax, "c-max");
        require(single || grid, "verify: provide --c or --c-min/--c-max");
        require(!(single && grid), "verify: --c conflicts with --c-min/--c-max");

        mqs::ExperimentConfig cfg{};
        cfg.n = n;
        cfg.beta = beta;
        cfg.sigma = sigma;
        cfg.b0 = b0;
        cfg.delta = delta;
        cfg.a = a;
        cfg.d0 = d0;
        cfg.probe_multiplier = probe_multiplier;
        if (merger.supplied(ve_r, "r")) cfg.r_override = r;
        if (merger.supplied(ve_l, "l")) cfg.l_override = l;

        std::vector<double> c_values;
        if (single) {
            c_values.push_back(c);
        } else {
            if (!merger.supplied(ve_points, "points")) points = 20;
            c_values = mqs::log_grid(c_min, c_max, points);
        }

        const mqs::SweepResult sweep = mqs::sweep_c(cfg, c_values);
        const mqs::ExperimentReport& first = sweep.reports.front();

        std::vector<std::pair<std::string, std::string>> params{
            {"n", std::to_string(n)},       {"beta", format_g17(beta)},
            {"sigma", format_g17(sigma)},   {"b0", format_g17(b0)},
            {"delta", format_g17(delta)},   {"l", std::to_string(first.l)},
            {"r", format_g17(first.r)},     {"a", format_g17(a)},
            {"d0", format_g17(d0)},         {"probe-multiplier", std::to_string(probe_multiplier)}};
        if (single) {
            params.push_back({"c", format_g17(c)});
        } else {
            params.push_back({"c-min", format_g17(c_min)});
            params.push_back({"c-max", format_g17(c_max)});
            params.push_back({"points", std::to_string(points)});
        }

        std::ostringstream os;
        if (format == "json") {
            ordered_json j;
            j["meta"] = meta_json("verify", params);
            j["constants"] = constants_json(first.constants);
            ordered_json reports = ordered_json::array();
            for (const mqs::ExperimentReport& rep : sweep.reports) {
                ordered_json rj;
                rj["c"] = rep.c;
                rj["mn"] = rep.mn;
                rj["max_error"] = rep.max_error;
                rj["bound"] = rep.bound;
                rj["ratio"] = rep.ratio;
                rj["cond_estimate"] = rep.cond_estimate;
                rj["l"] = rep.l;
                rj["N"] = rep.N;
                rj["r"] = rep.r;
                rj["e_norm"] = rep.e_norm;
                rj["status"] = rep.status;
                rj["well_conditioned"] = rep.well_conditioned;
                reports.push_back(rj);
            }
            j["reports"] = reports;
            os << j.dump(2) << "\n";
        } else {
            mqs::write_sweep_csv(os, sweep.reports, join_meta("verify", params));
        }
        write_text(out_path, os.str());
        return 0;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mqs::unsupported_regime& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const mqs::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mqs::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
