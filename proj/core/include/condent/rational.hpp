#pragma once

#include "condent/core.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace condent {

using Rational = mpq_class;

inline constexpr long kOracleDenominatorCap = 1'000'000;

// Closest fraction to x with denominator at most `cap` (continued-fraction
// convergents and the final semiconvergent).
Rational rationalize(double x, long cap = kOracleDenominatorCap);

std::string to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Rational total() const;
    Matrix to_double() const;
    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RationalMatrix rationalize(const JointDist& j, long cap = kOracleDenominatorCap);
RationalMatrix tensor(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace condent
