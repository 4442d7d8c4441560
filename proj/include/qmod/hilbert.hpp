#pragma once

#include "qmod/series.hpp"

#include <string>
#include <vector>

namespace qmod {

/// Formal Hilbert series: a polynomial numerator with rational exponents over
/// a product of (1 - t^a) factors. Expansion is exact truncated division.
struct HilbertSeries {
    std::vector<std::pair<Rational, Rational>> numerator;  // (coefficient, exponent)
    std::vector<Rational> denominator;                     // factors 1 - t^a

    PuiseuxSeries expand(const Rational& order) const;
    Rational coefficient(const Rational& weight, const Rational& order) const;
};

// Evaluates a textual series in t, e.g. "(1+t^(1/2))^3/(1-t^(1/2))^2",
// truncated below `order`. Numerators and denominators may be arbitrary
// polynomial expressions with unit constant terms in the denominator.
PuiseuxSeries hilbert_eval(const std::string& text, const Rational& order);

}  // namespace qmod
