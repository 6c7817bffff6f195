#include "gv/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

#include "gv/report.hpp"

namespace gv::cli {

namespace {

std::pair<int, int> parse_int_pair(const std::string& text, const char* what) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw DomainError(std::string(what) + " expects the form A,B: " + text);
    try {
        return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw DomainError(std::string(what) + " expects two integers: " + text);
    }
}

struct OracleRunConfig {
    oracle::Assignment assignment;
    int samples = 10;
    long seed = 1;
    double tolerance = 1e-6;
};

OracleRunConfig load_oracle_config(const GrauertModel& m, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read oracle config: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DomainError("oracle config is not valid JSON: " + std::string(e.what()));
    }
    OracleRunConfig cfg;
    std::map<std::string, std::string> generators;
    if (j.contains("generators"))
        for (const auto& [name, value] : j.at("generators").items())
            generators[name] = value.get<std::string>();
    cfg.assignment = generators.empty() ? oracle::default_assignment(m)
                                        : oracle::parse_assignment(m, generators);
    cfg.samples = j.value("samples", cfg.samples);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.tolerance = j.value("tolerance", cfg.tolerance);
    return cfg;
}

void emit_report(const Certificate& cert, const std::string& format, const std::string& out_path,
                 std::ostream& out) {
    const std::string text = render_report(cert, report_format_from_name(format));
    out << text;
    if (!out_path.empty()) {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw DomainError("cannot write report to " + out_path);
        file << text;
    }
}

void print_stats(std::ostream& out, const char* name, const oracle::ResidualStats& s) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s max %.3e  mean %.3e  count %ld  tol %.0e  %s", name,
                  s.max_abs, s.mean, s.count, s.tolerance, s.pass ? "PASS" : "FAIL");
    out << line << "\n";
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"machine-checked verification of the Grauert-example line bundle"};
    app.require_subcommand(1);

    int charts = 3, genus = 2, deg_f = 1, order = 3;
    long seed = 1;
    double tol = 1e-6;
    std::string format = "md", out_path, oracle_config, pair_text, class_text, class2_text;
    long rr_deg = 1;

    auto* verify = app.add_subcommand("verify", "run the full verification pipeline");
    verify->add_option("--charts", charts, "number of charts (>= 3)");
    verify->add_option("--genus", genus, "genus of the base curve");
    verify->add_option("--degF", deg_f, "degree of F");
    verify->add_option("--order", order, "jet truncation order");
    verify->add_option("--format", format, "report format: json|md");
    verify->add_option("--out", out_path, "also write the report to this path");
    verify->add_option("--seed", seed, "oracle sampling seed");
    verify->add_option("--tol", tol, "truncation-bearing oracle tolerance");
    verify->add_option("--oracle-config", oracle_config, "oracle config JSON path");

    auto* expand = app.add_subcommand("expand", "print transition expansions for one pair");
    expand->add_option("--charts", charts, "number of charts (>= 3)");
    expand->add_option("--genus", genus, "genus of the base curve");
    expand->add_option("--degF", deg_f, "degree of F");
    expand->add_option("--order", order, "jet truncation order");
    expand->add_option("--pair", pair_text, "ordered chart pair J,K")->required();

    auto* isect = app.add_subcommand("intersect", "intersection number of two lattice classes");
    isect->add_option("--degF", deg_f, "degree of F");
    isect->add_option("--class", class_text, "first class A,B in the (Y, fiber) basis")
        ->required();
    isect->add_option("--class2", class2_text, "second class A,B")->required();

    auto* rr = app.add_subcommand("rr", "Riemann-Roch count and the h1 bound");
    rr->add_option("--genus", genus, "genus of the base curve");
    rr->add_option("--deg", rr_deg, "degree of the divisor");

    auto* orc = app.add_subcommand("oracle", "run the numeric cross-validation");
    orc->add_option("--charts", charts, "number of charts (>= 3)");
    orc->add_option("--genus", genus, "genus of the base curve");
    orc->add_option("--degF", deg_f, "degree of F");
    orc->add_option("--order", order, "jet truncation order");
    orc->add_option("--seed", seed, "sampling seed");
    orc->add_option("--tol", tol, "truncation-bearing tolerance");
    orc->add_option("--oracle-config", oracle_config, "oracle config JSON path");

    std::vector<const char*> argv;
    argv.push_back("grauert");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (app.got_subcommand(verify)) {
            VerifyOptions opts;
            opts.charts = charts;
            opts.genus = genus;
            opts.deg_f = deg_f;
            opts.order = order;
            opts.seed = seed;
            opts.tol_truncation = tol;
            if (!oracle_config.empty()) {
                const GrauertModel probe = build_model(charts, std::max(genus, 2), deg_f, order);
                OracleRunConfig cfg = load_oracle_config(probe, oracle_config);
                opts.assignment = std::move(cfg.assignment);
                opts.oracle_samples = cfg.samples;
                if (!verify->count("--seed")) opts.seed = cfg.seed;
                if (!verify->count("--tol")) opts.tol_truncation = cfg.tolerance;
            }
            const Certificate cert = run_verification(opts);
            emit_report(cert, format, out_path, out);
            return cert.passed() ? 0 : 1;
        }

        if (app.got_subcommand(expand)) {
            const auto [j, k] = parse_int_pair(pair_text, "--pair");
            const GrauertModel m = build_model(charts, genus, deg_f, order);
            if (j < 1 || j > charts || k < 1 || k > charts || j == k)
                throw DomainError("--pair must name two distinct charts in range");
            out << "theta_" << j << "(theta_" << k
                << ") = " << theta_transition(m, j, k).str() << "\n";
            out << "theta_" << k << "(theta_" << j
                << ") = " << theta_transition(m, k, j).str() << "\n";
            out << "p*F transition g(" << j << "," << k
                << ") = " << bundle_pullback_F(m).transition(j, k).str() << "\n";
            out << "[Y] transition g(" << j << "," << k
                << ") = " << bundle_divisor_Y(m).transition(j, k).str() << "\n";
            out << "L transition e_" << k << "/e_" << j
                << " = " << bundle_L(m).transition(j, k).str() << "\n";
            return 0;
        }

        if (app.got_subcommand(isect)) {
            const auto [a1, b1] = parse_int_pair(class_text, "--class");
            const auto [a2, b2] = parse_int_pair(class2_text, "--class2");
            out << intersect(NSClass{a1, b1}, NSClass{a2, b2}, deg_f) << "\n";
            return 0;
        }

        if (app.got_subcommand(rr)) {
            const long chi = euler_char(genus, rr_deg);
            out << "chi(O(D)) = deg D - g + 1 = " << rr_deg << " - " << genus
                << " + 1 = " << chi << "\n";
            const CertStep lemma = lemma_2_6(genus);
            for (const CertStep& s : lemma.substeps)
                out << "[" << status_name(s.status) << "] " << s.statement << "\n";
            out << (lemma.passed() ? "h1 >= h0 >= 1: H1(R, O_R(F)) != 0"
                                   : "inequality chain fails for g < 2")
                << "\n";
            return lemma.passed() ? 0 : 1;
        }

        if (app.got_subcommand(orc)) {
            const GrauertModel m = build_model(charts, genus, deg_f, order);
            OracleRunConfig cfg;
            if (!oracle_config.empty()) {
                cfg = load_oracle_config(m, oracle_config);
            } else {
                cfg.assignment = oracle::default_assignment(m);
            }
            if (orc->count("--seed")) cfg.seed = seed;
            if (orc->count("--tol")) cfg.tolerance = tol;
            const oracle::NumericModel nm =
                oracle::instantiate(m, cfg.assignment, cfg.samples, cfg.seed);
            const auto transitions = oracle::check_transitions(nm, cfg.tolerance);
            const auto u1 = oracle::check_u1_numeric(nm, cfg.tolerance);
            const auto cocycles = oracle::check_cocycles_numeric(nm, 1e-10);
            const auto derived = oracle::check_derived_consistency(nm, 1e-12);
            print_stats(out, "transitions", transitions);
            print_stats(out, "u1", u1);
            print_stats(out, "cocycles", cocycles);
            print_stats(out, "derived", derived);
            const bool pass = transitions.pass && u1.pass && cocycles.pass && derived.pass;
            out << (pass ? "PASS" : "FAIL") << "\n";
            return pass ? 0 : 1;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace gv::cli
