// Command line front end: kernel audits, Whitney decompositions, seminorm
// estimates and the named experiment registry.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gagliardo/assumptions.hpp"
#include "gagliardo/domain.hpp"
#include "gagliardo/experiment.hpp"
#include "gagliardo/kernel.hpp"
#include "gagliardo/lemmas.hpp"
#include "gagliardo/seminorm.hpp"
#include "gagliardo/test_function.hpp"
#include "gagliardo/version.hpp"
#include "gagliardo/whitney.hpp"

namespace {

using namespace gagliardo;

KernelProfile make_profile(const std::string& variant, double s, double c, double gamma,
                           double beta) {
    if (variant == "power") return KernelProfile::power(s, c);
    if (variant == "log1p_power") return KernelProfile::log1p_power(gamma);
    if (variant == "constant_one") return KernelProfile::constant_one();
    if (variant == "inv_log_power") return KernelProfile::inv_log_power(beta);
    throw CLI::ValidationError("unknown profile variant: " + variant);
}

Domain make_domain(const std::string& name) {
    if (name == "interval") return Domain::interval(0.0, 1.0);
    if (name == "square") return Domain::box({{0.0, 1.0}, {0.0, 1.0}});
    if (name == "lshape") return Domain::l_shape();
    if (name == "strip1") return Domain::strip(1, 1);
    if (name == "strip2") return Domain::strip(1, 2);
    throw CLI::ValidationError("unknown domain: " + name);
}

TestFunction make_function(const std::string& name, double par) {
    if (name == "coordinate") return TestFunction::coordinate(static_cast<int>(par));
    if (name == "power_gamma") return TestFunction::power_gamma(par);
    if (name == "capped_reciprocal") return TestFunction::capped_reciprocal(par);
    if (name == "strip_ramp") return TestFunction::strip_ramp(par);
    if (name == "constant") return TestFunction::constant(par);
    if (name == "product") return TestFunction::coord_product();
    throw CLI::ValidationError("unknown function: " + name);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& kvs,
                                                const std::string& config_path) {
    std::map<std::string, std::string> params;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open config file: " + config_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            params[line.substr(0, eq)] = line.substr(eq + 1);
        }
    }
    for (const std::string& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--param expects key=value, got: " + kv);
        params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return params;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"full vs boundary-truncated Gagliardo seminorms for radial jump kernels"};
    app.set_version_flag("--version", gagliardo::version_string);
    app.require_subcommand(1);

    // ---- audit ----
    auto* audit = app.add_subcommand("audit", "check kernel assumptions and scaling indices");
    std::string a_variant = "power";
    double a_s = 0.5, a_c = 1.0, a_gamma = 0.5, a_beta = 1.0;
    int a_d = 1, a_kmax = 64;
    double a_p = 2.0, a_q = 2.0, a_diam = 1.0;
    std::string a_format = "json", a_out;
    audit->add_option("--variant", a_variant, "power|log1p_power|constant_one|inv_log_power");
    audit->add_option("--s", a_s, "power exponent");
    audit->add_option("--c", a_c, "power scale");
    audit->add_option("--gamma", a_gamma, "log1p exponent");
    audit->add_option("--beta", a_beta, "inverse-log exponent");
    audit->add_option("--d", a_d, "dimension");
    audit->add_option("--p", a_p);
    audit->add_option("--q", a_q);
    audit->add_option("--diam", a_diam, "domain diameter (inf for unbounded)");
    audit->add_option("--kmax", a_kmax, "series truncation");
    audit->add_option("--format", a_format, "json|csv");
    audit->add_option("--out", a_out, "output path (default stdout)");

    // ---- whitney ----
    auto* whitney = app.add_subcommand("whitney", "build and verify a Whitney decomposition");
    std::string w_domain = "square", w_out;
    int w_depth = 6;
    bool w_verify = false;
    whitney->add_option("--domain", w_domain, "interval|square|lshape|strip1");
    whitney->add_option("--depth", w_depth, "maximum refinement depth");
    whitney->add_flag("--verify", w_verify, "print the axiom violation counts");
    whitney->add_option("--out", w_out, "output path for the JSON-lines export");

    // ---- seminorm ----
    auto* semi = app.add_subcommand("seminorm", "estimate full and truncated seminorms");
    std::string s_function = "coordinate", s_domain = "interval", s_out;
    double s_fpar = 0.0, s_alpha = 1.0, s_p = 2.0, s_q = 2.0;
    bool s_flat = false;
    std::vector<double> s_thetas{0.5};
    semi->add_option("--function", s_function,
                     "coordinate|power_gamma|capped_reciprocal|strip_ramp|constant|product");
    semi->add_option("--fpar", s_fpar, "function parameter (gamma, n, axis, value)");
    semi->add_option("--domain", s_domain, "interval|square|strip1|strip2");
    semi->add_option("--alpha", s_alpha, "kernel order: K = |x-y|^(-d-alpha)");
    semi->add_flag("--flat", s_flat, "use the flat kernel K == 1");
    semi->add_option("--theta", s_thetas, "truncation radii fractions")->expected(-1);
    semi->add_option("--p", s_p);
    semi->add_option("--q", s_q);
    semi->add_option("--out", s_out, "output path (default stdout)");

    // ---- experiment ----
    auto* exper = app.add_subcommand("experiment", "run a named, reproducible experiment");
    std::string e_name, e_out, e_format = "csv", e_config;
    std::vector<std::string> e_params;
    std::uint64_t e_seed = 1;
    bool e_describe = false;
    exper->add_option("name", e_name, "experiment id (see `list`)");
    exper->add_option("--param", e_params, "key=value, repeatable")->expected(-1);
    exper->add_option("--config", e_config, "flat key=value parameter file");
    exper->add_option("--out", e_out, "output path (default stdout)");
    exper->add_option("--format", e_format, "csv|json");
    exper->add_option("--seed", e_seed, "seed for sampled experiments");
    exper->add_flag("--describe", e_describe, "print the parameter schema and claim");

    // ---- list ----
    auto* list = app.add_subcommand("list", "list the registered experiments");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*audit) {
            const KernelProfile prof = make_profile(a_variant, a_s, a_c, a_gamma, a_beta);
            const Kernel kern = Kernel::product(a_d, a_q, prof);
            const ExponentPair exps(a_p, a_q);
            const AssumptionReport rep = audit_kernel(kern, exps, a_diam, {}, a_kmax);
            write_output(a_out, a_format == "csv" ? rep.to_csv() : rep.to_json().dump(2) + "\n");
            return (rep.pass_a1 && rep.pass_a2 && rep.pass_a3) ? 0 : 2;
        }
        if (*whitney) {
            WhitneyParams params;
            params.max_depth = w_depth;
            if (w_domain == "strip1") params.window = Box{{-4.0, 0.0}, {4.0, 1.0}};
            const WhitneyDecomposition w = whitney_decompose(make_domain(w_domain), params);
            write_output(w_out, w.to_json_lines());
            if (w_verify) {
                const WhitneyViolations v = verify_whitney(w);
                std::cerr << "cubes=" << w.size() << " frontier=" << w.frontier_count()
                          << " violations=" << v.total() << "\n";
                return v.total() == 0 ? 0 : 2;
            }
            return 0;
        }
        if (*semi) {
            const Domain dom = make_domain(s_domain);
            const TestFunction f = make_function(s_function, s_fpar);
            const ExponentPair exps(s_p, s_q);
            const Kernel kern = s_flat ? Kernel::flat_one(dom.dimension())
                                       : Kernel::product(dom.dimension(), s_q,
                                                         KernelProfile::power(s_alpha / s_q));
            const SeminormPair pair = seminorm_pair(f, dom, kern, exps, s_thetas, {});
            nlohmann::json j;
            j["full"] = pair.full.to_json();
            j["thetas"] = pair.thetas;
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& t : pair.truncated) arr.push_back(t.to_json());
            j["truncated"] = arr;
            write_output(s_out, j.dump(2) + "\n");
            return pair.full.diverged ? 2 : 0;
        }
        if (*exper) {
            if (e_name.empty()) throw CLI::ValidationError("experiment: missing name");
            if (e_describe) {
                for (const ExperimentInfo& info : list_experiments()) {
                    if (info.name == e_name) {
                        std::cout << info.name << "\n  params: " << info.params_schema
                                  << "\n  checks: " << info.claim << "\n";
                        return 0;
                    }
                }
                throw std::invalid_argument("unknown experiment: " + e_name);
            }
            ExperimentSpec spec;
            spec.name = e_name;
            spec.seed = e_seed;
            spec.format = e_format;
            spec.params = parse_params(e_params, e_config);
            const ExperimentReport rep = run_experiment(spec);
            write_output(e_out, e_format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_csv());
            return rep.pass ? 0 : 2;
        }
        if (*list) {
            for (const ExperimentInfo& info : list_experiments())
                std::cout << info.name << "\t" << info.claim << "\n";
            return 0;
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
