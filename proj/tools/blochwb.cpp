#include <CLI11.hpp>
#include <json.hpp>

#include "bloch/certifier.hpp"
#include "bloch/config_complex.hpp"
#include "bloch/expr.hpp"
#include "bloch/json_io.hpp"
#include "bloch/milnor.hpp"
#include "bloch/suite.hpp"

#include <fstream>
#include <iostream>

using namespace bloch;
using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return json::parse(in);
}

Backend parse_backend(const std::string& s) {
    if (s == "rational") return Backend::rational;
    if (s == "tower") return Backend::tower;
    throw CLI::ValidationError("--backend", "expected 'rational' or 'tower'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for refined Bloch-group computations"};
    app.require_subcommand(1);

    std::string backend_name = "tower";
    int tower_depth = kDefaultTowerDepthCap;

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate an expression exactly");
    std::string expr_text;
    eval->add_option("expression", expr_text, "e.g. \"sqrt(2)*sqrt(2)\"")->required();
    eval->add_option("--tower-depth", tower_depth)->envname("TOWER_DEPTH");

    // certify
    auto* certify = app.add_subcommand("certify", "search and check a relation certificate");
    std::string tactic, x_text = "2", y_text = "3";
    int psi_index = 1;
    certify->add_option("tactic", tactic,
                        "psi-add | psi-swap | psi-order2 | psi-square | psi-double-square | "
                        "psi-vanish | trivial-action | c-constant | c-symmetric")
        ->required();
    certify->add_option("--i", psi_index, "which psi (1 or 2)");
    certify->add_option("--x", x_text, "expression for x");
    certify->add_option("--y", y_text, "expression for y");
    certify->add_option("--backend", backend_name)->envname("BACKEND");
    certify->add_option("--tower-depth", tower_depth)->envname("TOWER_DEPTH");

    // check-cert
    auto* check = app.add_subcommand("check-cert", "verify a claim/certificate pair");
    std::string claim_path, cert_path;
    check->add_option("claim", claim_path, "json file {\"label\", \"target\"}")->required();
    check->add_option("certificate", cert_path, "certificate json file")->required();
    check->add_option("--backend", backend_name)->envname("BACKEND");

    // canonicalize
    auto* canon = app.add_subcommand("canonicalize", "canonical form of a point tuple");
    std::string tuple_path;
    canon->add_option("tuple", tuple_path, "json array of points")->required();
    canon->add_option("--backend", backend_name)->envname("BACKEND");

    // d1
    auto* d1 = app.add_subcommand("d1", "induced differential on canonical forms");
    std::string module_path;
    d1->add_option("element", module_path, "json module element")->required();
    d1->add_option("--backend", backend_name)->envname("BACKEND");

    // km-reduce
    auto* kmr = app.add_subcommand("km-reduce", "mod-2 normal form of a Milnor symbol");
    std::string symbol_path;
    kmr->add_option("symbol", symbol_path, "json array of field elements")->required();

    // run-suite
    auto* suite = app.add_subcommand("run-suite", "re-verify every supported statement");
    RunConfig config;
    std::string format = "text";
    suite->add_option("--backend", backend_name)->envname("BACKEND");
    suite->add_option("--seed", config.seed)->envname("SEED");
    suite->add_option("--samples", config.samples)->envname("SAMPLES")
        ->check(CLI::PositiveNumber);
    suite->add_option("--pool-depth", config.pool_depth)->envname("POOL_DEPTH");
    suite->add_option("--tower-depth", config.tower_depth)->envname("TOWER_DEPTH");
    suite->add_option("--format", format, "text | json")->envname("FORMAT")
        ->check(CLI::IsMember({"text", "json"}));
    suite->add_option("--workers", config.workers)->envname("WORKERS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*eval) {
            std::cout << field_to_json(eval_expression(expr_text, tower_depth)).dump() << "\n";
            return 0;
        }
        if (*certify) {
            Backend backend = parse_backend(backend_name);
            TowerElement x = eval_expression(x_text, tower_depth);
            TowerElement y = eval_expression(y_text, tower_depth);
            TacticResult r;
            if (tactic == "psi-add") r = tactic_psi_additivity(psi_index, x, y, backend);
            else if (tactic == "psi-swap") r = tactic_psi_swap(psi_index, x, y, backend);
            else if (tactic == "psi-order2") r = tactic_psi_order2(psi_index, backend);
            else if (tactic == "psi-square") r = tactic_psi_square(psi_index, x, backend);
            else if (tactic == "psi-double-square") r = tactic_psi_double_square(psi_index, x, backend);
            else if (tactic == "psi-vanish") r = tactic_psi_vanish_positive(psi_index, x);
            else if (tactic == "trivial-action") r = tactic_trivial_action(x);
            else if (tactic == "c-constant") r = tactic_c_constant(x, y, backend);
            else if (tactic == "c-symmetric") r = tactic_c_symmetric(x, backend);
            else throw CLI::ValidationError("tactic", "unknown tactic '" + tactic + "'");
            std::cout << json{{"label", r.claim.label},
                              {"status", "PROVED"},
                              {"certificate", certificate_to_json(r.certificate, backend)}}
                             .dump(2)
                      << "\n";
            return 0;
        }
        if (*check) {
            Backend backend = parse_backend(backend_name);
            json cj = read_json_file(claim_path);
            IdentityClaim claim{rp_from_json(cj.at("target")),
                               cj.value("label", claim_path)};
            Certificate cert = certificate_from_json(read_json_file(cert_path), backend);
            bool ok = check_certificate(claim, cert, backend);
            std::cout << (ok ? "PROVED" : "FAIL") << "\n";
            return ok ? 0 : 1;
        }
        if (*canon) {
            Backend backend = parse_backend(backend_name);
            CanonicalForm f = canonicalize(tuple_from_json(read_json_file(tuple_path)), backend);
            json tuple = json::array();
            for (const auto& e : f.tuple.entries) tuple.push_back(field_to_json(e));
            std::cout << json{{"class", class_to_json(f.cls)}, {"tuple", std::move(tuple)}}.dump()
                      << "\n";
            return 0;
        }
        if (*d1) {
            Backend backend = parse_backend(backend_name);
            RFModuleElement e = rf_module_from_json(read_json_file(module_path));
            std::cout << rf_module_to_json(induced_d1(e, backend)).dump() << "\n";
            return 0;
        }
        if (*kmr) {
            Mod2NormalForm f = mod2_reduce(symbol_from_json(read_json_file(symbol_path)));
            std::cout << (f == Mod2NormalForm::ZERO ? "ZERO" : "MINUS_ONES") << "\n";
            return 0;
        }
        if (*suite) {
            config.backend = parse_backend(backend_name);
            SuiteReport report = run_suite(config);
            if (format == "json")
                std::cout << report_to_json(report).dump(2) << "\n";
            else
                std::cout << report_to_text(report);
            return report.ok() ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error at position " << e.position << ": " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "json error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
