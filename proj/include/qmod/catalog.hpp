#pragma once

#include "qmod/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qmod {

/// One catalog identity: two expression-language sides compared on the
/// q^{1/D} lattice up to `order` lattice slots.
struct IdentityRecord {
    std::string id;
    std::string anchor;   // coverage locator (family/statement tag)
    std::string lhs, rhs;
    long denom = 1;       // D of the identity's natural lattice
    long order = 0;       // slots; 0 means the default (40 or QMOD_DEFAULT_PREC)
    std::string tag;      // theorem | proposition | lemma | conjecture | crosscheck | unresolved
};

struct VerificationReport {
    std::string id;
    std::string tag;
    enum class Result { Pass, PassConjecture, Fail, Inconclusive } result;
    Rational order_used;       // exponent cutoff actually compared
    Rational witness_exponent; // first differing exponent on Fail
    std::string lhs_coeff, rhs_coeff;
    std::string message;       // diagnostics for Inconclusive
    double millis = 0;
};

struct CatalogSummary {
    long total = 0;
    long passed = 0;
    long failed = 0;
    long inconclusive = 0;
    long conjecture_pass = 0;
    long conjecture_fail = 0;
    long unresolved = 0;
};

long default_order_slots();

std::vector<IdentityRecord> load_catalog(const std::string& path);
std::string default_catalog_path();
std::string default_claims_path();

VerificationReport verify(const IdentityRecord& record,
                          std::optional<long> order_slots_override = {});

std::pair<std::vector<VerificationReport>, CatalogSummary> verify_all(
    const std::vector<IdentityRecord>& records, long jobs = 1,
    std::optional<long> order_slots_override = {});

std::string report_to_json(const std::vector<VerificationReport>& reports,
                           const CatalogSummary& summary, bool with_timings = false);

}  // namespace qmod
