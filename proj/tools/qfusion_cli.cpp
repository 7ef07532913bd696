// Command-line frontend: emit constructed objects as machine-readable
// tables, run verification suites, and dump element-vs-CG tables.

#include "qfusion/emit.hpp"
#include "qfusion/fusion.hpp"
#include "qfusion/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

int write_out(const std::string& payload, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return 2;
    }
    f << payload;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicit quantum-group objects and their identity checks"};
    app.require_subcommand(1);
    app.fallthrough();

    qfusion::RunConfig cfg;
    std::string regime = "unit-circle";
    std::string format = "json";
    std::string out;
    double jmax = 4.0;

    app.add_option("--regime", regime, "unit-circle | real-q | classical")
        ->check(CLI::IsMember({"unit-circle", "real-q", "classical"}));
    app.add_option("--gamma", cfg.gamma, "deformation angle (unit-circle regime)");
    app.add_option("--q", cfg.q, "real deformation parameter (real-q regime)");
    app.add_option("--tol", cfg.tol, "identity-residual tolerance");
    app.add_option("--jmax", jmax, "model-space cutoff spin");
    app.add_option("--pgrid", cfg.pgrid, "weight-parameter sample grid")->delimiter(',');
    app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out, "output path ('-' for stdout)");

    auto* cmd_emit = app.add_subcommand("emit", "write one constructed object");
    std::string object;
    double p = 3.0;
    cmd_emit->add_option("object", object,
                         "R | Rdyn | F | chi | projectors | p-projectors | cg | p-cg | "
                         "Uhalf | U1 | L | detU")
        ->required();
    cmd_emit->add_option("--p", p, "weight parameter for p-dependent objects");

    auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    bool identity_twist = false;
    cmd_verify->add_option("suite", suite, "hopf | twisted | model | fusion | asymptotics | all");
    cmd_verify->add_flag("--identity-twist", identity_twist,
                         "debug: fuse with the identity in place of the twist");

    auto* cmd_table = app.add_subcommand("cgtable", "generating-matrix elements vs CG table");
    std::string aux = "1/2";
    cmd_table->add_option("aux", aux, "auxiliary spin: 1/2 | 1 | 3/2");

    CLI11_PARSE(app, argc, argv);

    cfg.jmax_twice = static_cast<int>(2.0 * jmax + 0.5);
    if (regime == "unit-circle") cfg.regime = qfusion::Regime::UnitCircle;
    if (regime == "real-q") cfg.regime = qfusion::Regime::RealQ;
    if (regime == "classical") cfg.regime = qfusion::Regime::Classical;
    if (const char* env = std::getenv("QFUSION_TOL")) cfg.tol = std::atof(env);

    try {
        if (*cmd_emit) {
            qfusion::EmitRequest req{object, p, format};
            return write_out(qfusion::emit_object(req, cfg), out);
        }
        if (*cmd_verify) {
            cfg.suite = suite;
            cfg.identity_twist = identity_twist;
            if (suite == "asymptotics" && cfg.regime != qfusion::Regime::RealQ) {
                std::cerr << "error: the asymptotics suite needs --regime real-q\n";
                return 2;
            }
            const qfusion::Report rep = qfusion::run_suite(cfg);
            const std::string payload = format == "csv" ? qfusion::render_report_csv(rep)
                                                        : qfusion::render_report_json(rep);
            const int wr = write_out(payload, out);
            if (wr != 0) return wr;
            if (!rep.errors.empty()) {
                for (const auto& e : rep.errors) std::cerr << "error: " << e << "\n";
                return 1;
            }
            return rep.all_pass() ? 0 : 1;
        }
        if (*cmd_table) {
            qfusion::Spin k;
            if (aux == "1/2")
                k = qfusion::Spin::half();
            else if (aux == "1")
                k = qfusion::Spin::one();
            else if (aux == "3/2")
                k = qfusion::Spin(3);
            else {
                std::cerr << "error: unknown auxiliary spin '" << aux << "'\n";
                return 2;
            }
            return write_out(qfusion::emit_cg_table(k, format, cfg), out);
        }
    } catch (const qfusion::ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qfusion::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
