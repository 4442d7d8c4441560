#pragma once

#include "qmod/rational.hpp"

#include <string>
#include <vector>

namespace qmod {

/// Congruence-subgroup descriptor. The level is the modulus the defining
/// congruences live at; invariants are computed from the image subgroup in
/// SL2(Z/level).
struct SubgroupSpec {
    enum class Kind {
        Gamma0,        // lower-left entry divisible by N
        GammaUpper0,   // upper-right entry divisible by N
        Gamma1,
        GammaUpper1,
        GammaFull,     // principal congruence subgroup
        GammaG,        // Gamma_G(N) for a subgroup G of the units
        Intersect00,   // Gamma_0(N) cap Gamma^0(M)
    };
    Kind kind = Kind::GammaFull;
    long n = 1;
    long m = 1;                  // second parameter for Intersect00
    std::vector<long> gens;      // generators of G for GammaG

    long level() const;
    std::string str() const;

    static SubgroupSpec gamma0(long n) { return {Kind::Gamma0, n, 1, {}}; }
    static SubgroupSpec gamma_upper0(long n) { return {Kind::GammaUpper0, n, 1, {}}; }
    static SubgroupSpec gamma1(long n) { return {Kind::Gamma1, n, 1, {}}; }
    static SubgroupSpec gamma_upper1(long n) { return {Kind::GammaUpper1, n, 1, {}}; }
    static SubgroupSpec gamma(long n) { return {Kind::GammaFull, n, 1, {}}; }
    static SubgroupSpec gamma_g(long n, std::vector<long> gens) {
        return {Kind::GammaG, n, 1, std::move(gens)};
    }
    static SubgroupSpec intersect00(long n, long m) { return {Kind::Intersect00, n, m, {}}; }
};

struct Invariants {
    long degree = 1;       // degree of X(Gamma) -> X(SL2(Z)), projective index
    long eps2 = 0;
    long eps3 = 0;
    long eps_inf_reg = 0;
    long eps_inf_irr = 0;
    long genus = 0;
    bool minus_one = true; // whether -I lies in the subgroup

    long eps_inf() const { return eps_inf_reg + eps_inf_irr; }
};

// Orbit counting over SL2(Z/level); level is capped (64 is plenty here).
Invariants invariants(const SubgroupSpec& spec);

struct Dimension {
    long value = 0;
    bool lower_bound_only = false;  // weight-1 case without the regular-cusp criterion
};

Dimension dim_modular(const SubgroupSpec& spec, long k);
Dimension dim_cusp(const SubgroupSpec& spec, long k);
Dimension dim_modular(const Invariants& inv, long k);
Dimension dim_cusp(const Invariants& inv, long k);

// (k(N-3)/48 - (N-6)/24) N^2 prod_{p|N}(1 - 1/p^2) for odd N > 3 and
// k > 4(N-6)/(N-3); the weight is k(N-3)/(2N). Throws if the result is not
// a non-negative integer.
long dim_rational_weight(long n, long k);

}  // namespace qmod
