#pragma once

#include "qmod/congruence.hpp"
#include "qmod/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qmod {

struct GeneratorSpec {
    std::string expr;
    Rational weight;
};

/// Where expected dimensions come from; the oracle side must stay independent
/// of the generator series whose ranks are being certified.
struct DimOracle {
    enum class Kind { Group, RationalWeight, Hilbert, Sequence };
    Kind kind = Kind::Group;
    SubgroupSpec group;
    long rw_level = 0;            // RationalWeight: level N
    std::string hilbert;          // Hilbert: series text
    std::vector<long> seq;        // Sequence: dims at weights step * i
    Rational step = Rational(1);

    std::optional<long> expected(const Rational& weight, const Rational& hilbert_order) const;
};

struct StructureClaim {
    enum class Type { PolynomialRing, FreeModule, CuspIdeal };
    std::string id;
    Type type = Type::PolynomialRing;
    std::vector<GeneratorSpec> generators;
    std::vector<GeneratorSpec> basis;       // free-module claims
    std::string cusp_generator;             // cusp-ideal claims
    Rational weight_shift = Rational(0);
    SubgroupSpec group;                     // cusp-ideal dimension source
    DimOracle oracle;
    std::vector<Rational> weights;
    Rational order = Rational(30);          // series precision for rank rows
    std::string note;
};

struct RankReport {
    Rational weight;
    long monomials = 0;
    long rank = 0;
    long expected = 0;
    enum class Status { Match, Deficient, Overfull, Insufficient, Skipped } status;
    std::string detail;
};

// Exact rank of the coefficient matrix of the rows over Q(zeta).
long series_rank(const std::vector<PuiseuxSeries>& rows, const Rational& cutoff);

std::vector<RankReport> verify_claim(const StructureClaim& claim);

std::vector<StructureClaim> load_claims(const std::string& path);

}  // namespace qmod
