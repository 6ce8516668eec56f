#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "unitdef/builtin_formulas.hpp"
#include "unitdef/experiments.hpp"

using namespace unitdef;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_internal = 3;

std::string slurp(std::string const & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int cmd_run(std::string const & experiment, std::string const & config_path, std::string const & out_path)
{
    json cfg = json::object();
    if (!config_path.empty()) cfg = read_json_file(config_path);
    if (!experiment.empty()) {
        if (cfg.contains("experiment") && cfg["experiment"] != experiment)
            throw config_error("experiment", "config names '" + cfg["experiment"].get<std::string>() +
                                                 "' but the command line names '" + experiment + "'");
        cfg["experiment"] = experiment;
    }
    json report = run_experiment(cfg);
    if (out_path.empty()) std::cout << canonical_dump(report);
    else emit_report(report, out_path);
    auto const & s = report.at("summary");
    std::cerr << report.at("experiment").get<std::string>() << ": " << s.at("passed") << "/" << s.at("checks")
              << " checks passed\n";
    return report_exit_code(report);
}

int cmd_verify(std::string const & path)
{
    json report = read_json_file(path);
    auto v = verify_report(report);
    for (auto const & p : v.problems) std::cout << "problem: " << p << "\n";
    std::cout << "re-verified " << v.verified << " of " << report.value("checks", json::array()).size()
              << " checks from embedded certificates\n";
    if (!v.ok) return 1;
    return report_exit_code(report);
}

int cmd_list()
{
    for (auto const & e : list_experiments()) {
        std::cout << e.name << "\n    " << e.description << "\n";
        if (!e.defaults.empty()) std::cout << "    defaults: " << e.defaults.dump() << "\n";
    }
    std::cout << "built-in formulas:";
    for (auto const & n : builtin_names()) std::cout << " " << n;
    std::cout << "\n";
    return exit_ok;
}

int cmd_eval(std::string const & formula_arg, std::string const & order_spec, std::vector<std::string> const & assigns,
             unsigned long unit_bound, unsigned long elem_bound, long d)
{
    formula_ast f;
    auto names = builtin_names();
    if (std::find(names.begin(), names.end(), formula_arg) != names.end()) f = builtin_by_name(formula_arg, d).ast();
    else f = parse(slurp(formula_arg));
    order_ptr ctx = parse_order_spec(order_spec);
    eval_env env{ctx, unit_group_of(ctx), unit_bound, elem_bound, {}};
    for (auto const & a : assigns) {
        auto eq = a.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("assignment '" + a + "' is not k=v");
        env.assignment[a.substr(0, eq)] = parse_element(ctx, a.substr(eq + 1));
    }
    for (auto const & v : f.free_vars)
        if (!env.assignment.count(v)) throw std::invalid_argument("free variable '" + v + "' is not assigned");
    auto r = eval_bounded(f, env);
    json out = to_json(r);
    out["formula"] = print(f);
    out["order"] = ctx->tag();
    std::cout << canonical_dump(out);
    return exit_ok;
}

}   // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"unitdef: exact experiments on units, definable subrings and bounded formulas"};
    app.require_subcommand(1);

    std::string experiment, config_path, out_path;
    auto * run = app.add_subcommand("run", "run a named experiment and emit its report");
    run->add_option("experiment", experiment, "experiment name (see list)");
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--out", out_path, "report path (default: stdout)");

    std::string report_path;
    auto * verify = app.add_subcommand("verify", "re-check a report from its embedded certificates");
    verify->add_option("report", report_path, "report file")->required();

    auto * list = app.add_subcommand("list", "list experiments and built-in formulas");

    std::string formula_arg, order_spec = "quadratic:-1";
    std::vector<std::string> assigns;
    unsigned long unit_bound = 1, elem_bound = 1;
    long d = 5;
    auto * eval = app.add_subcommand("eval", "evaluate a formula with bounded quantifiers");
    eval->add_option("--formula", formula_arg, "built-in name or formula file")->required();
    eval->add_option("--order", order_spec, "order spec, e.g. quadratic:-1 or quadratic:5:nonmaximal");
    eval->add_option("--assign", assigns, "free variable assignments k=v");
    eval->add_option("--unit-bound", unit_bound, "default exponent bound for Unit quantifiers");
    eval->add_option("--elem-bound", elem_bound, "default height bound for Elem quantifiers");
    eval->add_option("--d", d, "radicand for system_S and zk");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const & e) {
        return app.exit(e);
    } catch (CLI::ParseError const & e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*run) return cmd_run(experiment, config_path, out_path);
        if (*verify) return cmd_verify(report_path);
        if (*list) return cmd_list();
        if (*eval) return cmd_eval(formula_arg, order_spec, assigns, unit_bound, elem_bound, d);
    } catch (cap_exceeded const & e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return exit_internal;
    } catch (parse_error const & e) {
        std::cerr << "formula error: " << e.what() << "\n";
        return exit_usage;
    } catch (std::logic_error const & e) {
        /* invalid_argument and config_error derive from logic_error */
        if (dynamic_cast<std::invalid_argument const *>(&e) || dynamic_cast<std::domain_error const *>(&e)) {
            std::cerr << "error: " << e.what() << "\n";
            return exit_usage;
        }
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    } catch (std::exception const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
