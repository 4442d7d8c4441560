#include "qmod/catalog.hpp"
#include "qmod/congruence.hpp"
#include "qmod/dsl.hpp"
#include "qmod/hilbert.hpp"
#include "qmod/structure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using namespace qmod;

namespace {

int run_expand(const std::string& expr, const std::string& prec, bool as_json) {
    PuiseuxSeries s = dsl::evaluate_str(expr, parse_rational(prec));
    if (as_json)
        std::cout << s.to_json() << "\n";
    else
        std::cout << s.str(40) << "\n";
    return 0;
}

int run_verify_expr(const std::string& expr, std::optional<long> order) {
    auto sep = expr.find("==");
    if (sep == std::string::npos) {
        std::cerr << "verify --expr expects \"<lhs> == <rhs>\"\n";
        return 2;
    }
    IdentityRecord rec;
    rec.id = "(cli)";
    rec.anchor = "(cli)";
    rec.lhs = expr.substr(0, sep);
    rec.rhs = expr.substr(sep + 2);
    rec.denom = 1;
    if (order) rec.order = *order;
    VerificationReport rep = verify(rec);
    switch (rep.result) {
        case VerificationReport::Result::Pass:
        case VerificationReport::Result::PassConjecture:
            std::cout << "pass (order " << to_string(rep.order_used) << ")\n";
            return 0;
        case VerificationReport::Result::Fail:
            std::cout << "fail at q^" << to_string(rep.witness_exponent) << ": " << rep.lhs_coeff
                      << " vs " << rep.rhs_coeff << "\n";
            return 1;
        case VerificationReport::Result::Inconclusive:
            std::cerr << "inconclusive: " << rep.message << "\n";
            return 2;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-expansion identity verifier"};
    app.require_subcommand(1);

    auto* expand = app.add_subcommand("expand", "print the q-expansion of an expression");
    std::string expand_expr, expand_prec = "10";
    bool expand_json = false;
    expand->add_option("expr", expand_expr)->required();
    expand->add_option("--prec", expand_prec, "exponent bound (rational)");
    expand->add_flag("--json", expand_json);

    auto* verify_cmd = app.add_subcommand("verify", "verify one identity");
    std::string verify_id, verify_expr, verify_catalog;
    long verify_order = 0;
    verify_cmd->add_option("--id", verify_id, "catalog record id");
    verify_cmd->add_option("--expr", verify_expr, "\"<lhs> == <rhs>\"");
    verify_cmd->add_option("--prec", verify_order, "order in lattice slots");
    verify_cmd->add_option("--catalog", verify_catalog);

    auto* verify_all_cmd = app.add_subcommand("verify-all", "verify the whole catalog");
    std::string all_catalog;
    long jobs = 1, all_order = 0;
    bool all_timings = false;
    verify_all_cmd->add_option("--catalog", all_catalog);
    verify_all_cmd->add_option("--jobs", jobs);
    verify_all_cmd->add_option("--order", all_order, "override order (slots) for every record");
    verify_all_cmd->add_flag("--timings", all_timings);

    auto* dims = app.add_subcommand("dims", "congruence subgroup invariants and dimensions");
    std::string group = "gamma";
    long dims_n = 1, dims_m = 1, weight = 2;
    std::string gens_csv;
    dims->add_option("--group", group, "gamma0|gamma1|gamma|upper0|upper1|gammaG|intersect00");
    dims->add_option("--N", dims_n)->required();
    dims->add_option("--M", dims_m);
    dims->add_option("--gens", gens_csv, "comma-separated generators for gammaG");
    dims->add_option("--weight", weight);

    auto* hil = app.add_subcommand("hilbert", "expand a Hilbert series");
    std::string hseries, horder = "10";
    hil->add_option("--series", hseries)->required();
    hil->add_option("--order", horder);

    auto* structure = app.add_subcommand("structure", "verify structure claims");
    std::string claims_path, only_id, sprec;
    structure->add_option("--claims", claims_path);
    structure->add_option("--only", only_id);
    structure->add_option("--prec", sprec, "override rank series order (rational)");

    auto* cat = app.add_subcommand("catalog", "catalog utilities");
    auto* cat_list = cat->add_subcommand("list", "list records");
    std::string cat_path;
    cat_list->add_option("--catalog", cat_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (expand->parsed()) return run_expand(expand_expr, expand_prec, expand_json);

        if (verify_cmd->parsed()) {
            std::optional<long> order;
            if (verify_order > 0) order = verify_order;
            if (!verify_expr.empty()) return run_verify_expr(verify_expr, order);
            if (verify_id.empty()) {
                std::cerr << "verify needs --id or --expr\n";
                return 2;
            }
            auto records =
                load_catalog(verify_catalog.empty() ? default_catalog_path() : verify_catalog);
            for (const auto& r : records) {
                if (r.id != verify_id) continue;
                VerificationReport rep = verify(r, order);
                CatalogSummary sum;
                std::cout << report_to_json({rep}, sum) << "\n";
                return rep.result == VerificationReport::Result::Fail ? 1
                       : rep.result == VerificationReport::Result::Inconclusive ? 2 : 0;
            }
            std::cerr << "no record with id " << verify_id << "\n";
            return 2;
        }

        if (verify_all_cmd->parsed()) {
            auto records = load_catalog(all_catalog.empty() ? default_catalog_path() : all_catalog);
            std::optional<long> order;
            if (all_order > 0) order = all_order;
            auto [reports, summary] = verify_all(records, jobs, order);
            std::cout << report_to_json(reports, summary, all_timings) << "\n";
            return (summary.failed > 0 || summary.inconclusive > 0) ? 1 : 0;
        }

        if (dims->parsed()) {
            SubgroupSpec spec;
            std::vector<long> gens;
            if (!gens_csv.empty()) {
                std::stringstream ss(gens_csv);
                std::string item;
                while (std::getline(ss, item, ',')) gens.push_back(std::stol(item));
            }
            if (group == "gamma0") spec = SubgroupSpec::gamma0(dims_n);
            else if (group == "gamma1") spec = SubgroupSpec::gamma1(dims_n);
            else if (group == "gamma") spec = SubgroupSpec::gamma(dims_n);
            else if (group == "upper0") spec = SubgroupSpec::gamma_upper0(dims_n);
            else if (group == "upper1") spec = SubgroupSpec::gamma_upper1(dims_n);
            else if (group == "gammaG") spec = SubgroupSpec::gamma_g(dims_n, gens);
            else if (group == "intersect00") spec = SubgroupSpec::intersect00(dims_n, dims_m);
            else {
                std::cerr << "unknown group kind " << group << "\n";
                return 2;
            }
            Invariants inv = invariants(spec);
            Dimension dm = dim_modular(inv, weight);
            Dimension dc = dim_cusp(inv, weight);
            nlohmann::json j = {{"group", spec.str()},
                                {"d", inv.degree},
                                {"eps2", inv.eps2},
                                {"eps3", inv.eps3},
                                {"epsInfReg", inv.eps_inf_reg},
                                {"epsInfIrr", inv.eps_inf_irr},
                                {"genus", inv.genus},
                                {"minusOne", inv.minus_one},
                                {"weight", weight},
                                {"dimM", dm.value},
                                {"dimS", dc.value},
                                {"exact", !dm.lower_bound_only}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (hil->parsed()) {
            PuiseuxSeries s = hilbert_eval(hseries, parse_rational(horder));
            std::cout << s.str(200) << "\n";
            return 0;
        }

        if (structure->parsed()) {
            auto claims = load_claims(claims_path.empty() ? default_claims_path() : claims_path);
            bool any_bad = false;
            nlohmann::json out = nlohmann::json::array();
            for (auto& c : claims) {
                if (!only_id.empty() && c.id != only_id) continue;
                if (!sprec.empty()) c.order = parse_rational(sprec);
                auto reports = verify_claim(c);
                for (const auto& r : reports) {
                    nlohmann::json j;
                    j["claim"] = c.id;
                    j["weight"] = to_string(r.weight);
                    j["monomials"] = r.monomials;
                    j["rank"] = r.rank;
                    j["expected"] = r.expected;
                    switch (r.status) {
                        case RankReport::Status::Match: j["status"] = "match"; break;
                        case RankReport::Status::Deficient:
                            j["status"] = "deficient";
                            any_bad = true;
                            break;
                        case RankReport::Status::Overfull:
                            j["status"] = "overfull";
                            any_bad = true;
                            break;
                        case RankReport::Status::Insufficient:
                            j["status"] = "insufficient-precision";
                            any_bad = true;
                            break;
                        case RankReport::Status::Skipped: j["status"] = "skipped"; break;
                    }
                    if (!r.detail.empty()) j["detail"] = r.detail;
                    out.push_back(std::move(j));
                }
            }
            std::cout << out.dump(2) << "\n";
            return any_bad ? 1 : 0;
        }

        if (cat_list->parsed()) {
            auto records = load_catalog(cat_path.empty() ? default_catalog_path() : cat_path);
            for (const auto& r : records)
                std::cout << r.id << "\t" << r.tag << "\t" << r.anchor << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
