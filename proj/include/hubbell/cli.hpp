// Command-line front end: single evaluations, F2 utilities, table
// reproduction and oracle cross-checks.  Results go to the out stream,
// diagnostics to the err stream.  Exit codes: 0 ok, 1 validation error,
// 2 not converged (value still printed), 3 table agreement shortfall.
#pragma once

#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hubbell/appell_f2.hpp"
#include "hubbell/hubbell.hpp"
#include "hubbell/quadrature.hpp"
#include "hubbell/tables.hpp"

namespace hubbell {

struct CliConfig {
    double tolerance = 1e-15;
    std::size_t max_terms = 10'000;
    double quad_tol = 1e-12;
    std::string output_format = "text";
    std::string method = "auto";

    SeriesControl series_control() const {
        return SeriesControl{tolerance, max_terms, 2};
    }
    QuadratureControl quadrature_control() const {
        return QuadratureControl{quad_tol, quad_tol, 60};
    }
};

namespace cli_detail {

inline void apply_env_tolerance(CliConfig& cfg, std::ostream& err) {
    const char* env = std::getenv("HUBBELL_TOLERANCE");
    if (!env) return;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && v < 1.0)
        cfg.tolerance = v;
    else
        err << "warning: ignoring invalid HUBBELL_TOLERANCE=\"" << env << "\"\n";
}

inline void print_warnings(unsigned bits, std::ostream& err) {
    if (bits) err << "warning: " << warning_text(bits) << "\n";
}

inline void print_eval(const HubbellParams& params, const EvalResult& r,
                       const std::string& format, std::ostream& out) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["a"] = params.a;
        j["b"] = params.b;
        j["p"] = params.p;
        j["lambda"] = params.lambda;
        j["alpha"] = params.alpha;
        j["beta"] = params.beta;
        j["gamma"] = params.gamma;
        j["sigma"] = params.sigma;
        j["value"] = r.value;
        j["terms_used"] = r.terms_used;
        j["est_error"] = r.est_error;
        j["converged"] = r.converged;
        j["method"] = method_name(r.method);
        out << j.dump() << "\n";
    } else if (format == "csv") {
        out << "a,b,p,lambda,alpha,beta,gamma,sigma,value,terms_used,est_error,converged,method\n"
            << detail::param_str(params.a) << "," << detail::param_str(params.b) << ","
            << detail::param_str(params.p) << "," << detail::param_str(params.lambda) << ","
            << detail::param_str(params.alpha) << "," << detail::param_str(params.beta) << ","
            << detail::param_str(params.gamma) << "," << detail::param_str(params.sigma) << ","
            << detail::value17(r.value) << "," << r.terms_used << ","
            << detail::fmt("%.3g", r.est_error) << "," << (r.converged ? "true" : "false")
            << "," << method_name(r.method) << "\n";
    } else {
        out << "value = " << detail::value16(r.value) << "\n"
            << "terms_used = " << r.terms_used << "\n"
            << "est_error = " << detail::fmt("%.3g", r.est_error) << "\n"
            << "method = " << method_name(r.method) << "\n";
    }
}

inline int run_eval(const HubbellParams& params, const CliConfig& cfg,
                    std::ostream& out, std::ostream& err) {
    if (cfg.method == "closed" &&
        !(params.lambda == 1.0 && params.alpha == 0.5 && params.beta == 0.5 &&
          params.gamma == 1.0)) {
        err << "error: method=closed requires (lambda, alpha, beta, gamma) = "
               "(1, 0.5, 0.5, 1)\n";
        return 1;
    }
    EvalResult r;
    try {
        if (cfg.method == "closed")
            r = eval_h_closed_half(params.a, params.b, params.p, params.sigma,
                                   cfg.series_control());
        else if (cfg.method == "quadrature")
            r = quad_h_general(params, cfg.quadrature_control());
        else
            r = eval_h_general(params, cfg.series_control());
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    print_warnings(r.warnings, err);
    print_eval(params, r, cfg.output_format, out);
    return r.converged ? 0 : 2;
}

inline int run_tables(const std::string& which, const std::string& data_path,
                      const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<TableId> ids;
    if (which == "all")
        ids = {TableId::T1, TableId::T2, TableId::T3};
    else if (auto id = parse_table_id(which))
        ids = {*id};
    else {
        err << "error: --which must be one of 1, 2, 3, all\n";
        return 1;
    }
    const auto format = parse_report_format(cfg.output_format);
    if (!format) {
        err << "error: unsupported format \"" << cfg.output_format << "\"\n";
        return 1;
    }
    std::vector<TableRow> rows;
    try {
        const auto dataset = load_published_rows(data_path);
        for (TableId id : ids) {
            auto part = run_table(dataset, id, cfg.series_control(),
                                  cfg.quadrature_control());
            rows.insert(rows.end(), part.begin(), part.end());
        }
        out << emit_report(rows, *format);
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    bool all_ok = true;
    for (const auto& row : rows)
        if (!row_meets_invariant(row)) {
            all_ok = false;
            err << "agreement shortfall: " << table_name(row.table)
                << " a=" << detail::param_str(row.inputs.a)
                << " b=" << detail::param_str(row.inputs.b)
                << " p=" << detail::param_str(row.inputs.p) << "\n";
        }
    return all_ok ? 0 : 3;
}

inline void print_f2(const char* label, const EvalResult& r,
                     const std::string& format, std::ostream& out) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["label"] = label;
        j["value"] = r.value;
        j["terms_used"] = r.terms_used;
        j["est_error"] = r.est_error;
        j["converged"] = r.converged;
        j["method"] = method_name(r.method);
        out << j.dump() << "\n";
    } else {
        out << label << " = " << detail::value16(r.value)
            << "  (terms_used=" << r.terms_used
            << ", est_error=" << detail::fmt("%.3g", r.est_error)
            << ", method=" << method_name(r.method) << ")\n";
    }
}

inline int run_f2(const F2Args& args, const std::string& f2_method, std::size_t n,
                  const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (f2_method == "series") {
            EvalResult r = f2_double_series(args, cfg.series_control());
            print_f2("F2", r, cfg.output_format, out);
            return r.converged ? 0 : 2;
        }
        if (f2_method == "reduce") {
            EvalResult r = f2_reduce_to_2f1(args, cfg.series_control());
            print_f2("F2", r, cfg.output_format, out);
            return r.converged ? 0 : 2;
        }
        // recurrence-check: left side via the double series at a2 - n,
        // right side via the recurrence combination.
        F2Args shifted = args;
        shifted.a2 = args.a2 - static_cast<double>(n);
        EvalResult lhs = f2_double_series(shifted, cfg.series_control());
        EvalResult rhs = f2_recurrence_step(args, n, cfg.series_control());
        print_f2("lhs", lhs, cfg.output_format, out);
        print_f2("rhs", rhs, cfg.output_format, out);
        out << "difference = " << detail::fmt("%.3g", lhs.value - rhs.value) << "\n";
        return (lhs.converged && rhs.converged) ? 0 : 2;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace cli_detail

#ifndef HUBBELL_DATA_FILE
#define HUBBELL_DATA_FILE "data/published_tables.txt"
#endif

/// Parse and run.  `args` holds the command line without the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{"generalized Hubbell rectangular-source integral calculator"};
    app.require_subcommand(1);

    CliConfig cfg;
    cli_detail::apply_env_tolerance(cfg, err);

    auto add_common = [&cfg](CLI::App* cmd) {
        cmd->add_option("--tolerance", cfg.tolerance,
                        "relative series tolerance")->check(CLI::Range(1e-300, 0.999));
        cmd->add_option("--max-terms", cfg.max_terms, "series term cap");
        cmd->add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance");
        cmd->add_option("--format", cfg.output_format, "text, json or csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
    };

    HubbellParams params;
    params.sigma = 1.0;
    CLI::App* eval = app.add_subcommand("eval", "evaluate H[a,b,p,lambda; alpha,beta,gamma]");
    eval->add_option("--a", params.a, "width ratio w/h")->required();
    eval->add_option("--b", params.b, "length ratio l/h")->required();
    eval->add_option("--p", params.p, "shift parameter")->required();
    eval->add_option("--lambda", params.lambda, "exponent lambda (default 0)");
    eval->add_option("--alpha", params.alpha, "alpha (default 1)");
    eval->add_option("--beta", params.beta, "beta (default 0.5)");
    eval->add_option("--gamma", params.gamma, "gamma (default 1.5)");
    eval->add_option("--sigma", params.sigma, "source strength (default 1)");
    eval->add_option("--method", cfg.method, "auto, sum, closed or quadrature")
        ->check(CLI::IsMember({"auto", "sum", "closed", "quadrature"}));
    add_common(eval);

    std::string which = "all";
    std::string data_path = HUBBELL_DATA_FILE;
    CLI::App* tables = app.add_subcommand("tables", "reproduce the published tables");
    tables->add_option("--which", which, "1, 2, 3 or all");
    tables->add_option("--data", data_path, "published-values fixture path");
    add_common(tables);

    F2Args f2args{};
    std::string f2_method = "series";
    std::size_t recurrence_n = 1;
    CLI::App* f2 = app.add_subcommand("f2", "Appell F2 utilities");
    f2->add_option("--sigma", f2args.sigma)->required();
    f2->add_option("--a1", f2args.a1)->required();
    f2->add_option("--a2", f2args.a2)->required();
    f2->add_option("--b1", f2args.b1)->required();
    f2->add_option("--b2", f2args.b2)->required();
    f2->add_option("--x", f2args.x)->required();
    f2->add_option("--y", f2args.y)->required();
    f2->add_option("--f2-method", f2_method, "series, reduce or recurrence-check")
        ->check(CLI::IsMember({"series", "reduce", "recurrence-check"}));
    f2->add_option("--n", recurrence_n, "shift for recurrence-check");
    add_common(f2);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (eval->parsed()) return cli_detail::run_eval(params, cfg, out, err);
    if (tables->parsed()) return cli_detail::run_tables(which, data_path, cfg, out, err);
    return cli_detail::run_f2(f2args, f2_method, recurrence_n, cfg, out, err);
}

} // namespace hubbell
