#pragma once

#include "condent/rational.hpp"

#include <vector>

namespace condent {

// Feasibility of { z >= 0 : A z = b } in exact arithmetic.
struct LpResult {
    bool feasible = false;
    std::vector<Rational> solution;  // basic feasible point when feasible
    std::vector<Rational> farkas;    // y with y^T A <= 0 and y^T b > 0 otherwise
    std::size_t pivots = 0;
};

LpResult phase_one(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b);

// Exact check of a Farkas certificate for the system above.
bool verify_farkas(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                   const std::vector<Rational>& y);

}  // namespace condent
