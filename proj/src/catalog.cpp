#include "qmod/catalog.hpp"

#include "qmod/dsl.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace qmod {

long default_order_slots() {
    if (const char* env = std::getenv("QMOD_DEFAULT_PREC")) {
        long v = std::atol(env);
        if (v >= 10) return v;
    }
    return 40;
}

std::string default_catalog_path() { return std::string(QMOD_DATA_DIR) + "/catalog.json"; }
std::string default_claims_path() { return std::string(QMOD_DATA_DIR) + "/claims.json"; }

std::vector<IdentityRecord> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    std::vector<IdentityRecord> out;
    for (const auto& j : doc) {
        IdentityRecord r;
        r.id = j.at("id").get<std::string>();
        r.anchor = j.value("anchor", std::string());
        r.lhs = j.at("lhs").get<std::string>();
        r.rhs = j.at("rhs").get<std::string>();
        r.denom = j.value("D", 1L);
        r.order = j.value("order", 0L);
        r.tag = j.value("tag", std::string("crosscheck"));
        if (r.anchor.empty()) throw std::runtime_error("record " + r.id + " is missing an anchor");
        out.push_back(std::move(r));
    }
    return out;
}

VerificationReport verify(const IdentityRecord& record, std::optional<long> order_override) {
    VerificationReport rep;
    rep.id = record.id;
    rep.tag = record.tag;
    long slots = order_override ? *order_override
                              : (record.order > 0 ? record.order : default_order_slots());
    Rational cutoff = make_rational(slots, record.denom);
    rep.order_used = cutoff;
    auto start = std::chrono::steady_clock::now();
    try {
        PuiseuxSeries lhs = dsl::evaluate_str(record.lhs, cutoff);
        PuiseuxSeries rhs = dsl::evaluate_str(record.rhs, cutoff);
        auto cmp = PuiseuxSeries::equal_to_precision(lhs, rhs, cutoff);
        switch (cmp.kind) {
            case PuiseuxSeries::Compare::Equal:
                rep.result = (record.tag == "conjecture") ? VerificationReport::Result::PassConjecture
                                                          : VerificationReport::Result::Pass;
                break;
            case PuiseuxSeries::Compare::Unequal:
                rep.result = VerificationReport::Result::Fail;
                rep.witness_exponent = cmp.exponent;
                rep.lhs_coeff = cmp.lhs.str();
                rep.rhs_coeff = cmp.rhs.str();
                break;
            case PuiseuxSeries::Compare::Inconclusive:
                rep.result = VerificationReport::Result::Inconclusive;
                rep.message = "available precision " + to_string(cmp.exponent);
                break;
        }
    } catch (const std::exception& e) {
        rep.result = VerificationReport::Result::Inconclusive;
        rep.message = e.what();
    }
    rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                     .count();
    return rep;
}

std::pair<std::vector<VerificationReport>, CatalogSummary> verify_all(
    const std::vector<IdentityRecord>& records, long jobs, std::optional<long> order_override) {
    std::vector<VerificationReport> reports(records.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= records.size()) return;
            reports[i] = verify(records[i], order_override);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (long t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::sort(reports.begin(), reports.end(),
              [](const VerificationReport& a, const VerificationReport& b) { return a.id < b.id; });
    CatalogSummary sum;
    sum.total = static_cast<long>(reports.size());
    for (const auto& r : reports) {
        switch (r.result) {
            case VerificationReport::Result::Pass:
                if (r.tag == "unresolved")
                    ++sum.unresolved;
                else
                    ++sum.passed;
                break;
            case VerificationReport::Result::PassConjecture: ++sum.conjecture_pass; break;
            case VerificationReport::Result::Fail:
                if (r.tag == "conjecture")
                    ++sum.conjecture_fail;
                else if (r.tag == "unresolved")
                    ++sum.unresolved;
                else
                    ++sum.failed;
                break;
            case VerificationReport::Result::Inconclusive: ++sum.inconclusive; break;
        }
    }
    return {reports, sum};
}

std::string report_to_json(const std::vector<VerificationReport>& reports,
                           const CatalogSummary& summary, bool with_timings) {
    nlohmann::json out;
    out["summary"] = {{"total", summary.total},
                      {"pass", summary.passed},
                      {"fail", summary.failed},
                      {"inconclusive", summary.inconclusive},
                      {"conjecture_pass", summary.conjecture_pass},
                      {"conjecture_fail", summary.conjecture_fail},
                      {"unresolved", summary.unresolved}};
    out["results"] = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["id"] = r.id;
        j["tag"] = r.tag;
        switch (r.result) {
            case VerificationReport::Result::Pass: j["result"] = "pass"; break;
            case VerificationReport::Result::PassConjecture: j["result"] = "pass-as-conjecture"; break;
            case VerificationReport::Result::Fail: j["result"] = "fail"; break;
            case VerificationReport::Result::Inconclusive: j["result"] = "inconclusive"; break;
        }
        j["order"] = to_string(r.order_used);
        if (r.result == VerificationReport::Result::Fail) {
            j["first_diff"] = to_string(r.witness_exponent);
            j["lhs"] = r.lhs_coeff;
            j["rhs"] = r.rhs_coeff;
        }
        if (!r.message.empty()) j["message"] = r.message;
        if (with_timings) j["ms"] = r.millis;
        out["results"].push_back(std::move(j));
    }
    return out.dump(2);
}

}  // namespace qmod
