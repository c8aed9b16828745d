#pragma once

#include "condent/core.hpp"

#include <span>
#include <variant>
#include <vector>

namespace condent {

// All entropies are in bits. 0^alpha = 0 for alpha > 0.

ExtendedReal renyi(const ProbVec& p, ExtendedReal alpha);
ExtendedReal renyi_relative(const ProbVec& p, const ProbVec& r, ExtendedReal alpha);

// sum_k tau_k H_{alpha_k}(p) for a normalized vector with exact zeros.
double tau_entropy(std::span<const double> p, const DiscreteMeasure& tau);

double h_bulk(const JointDist& j, const BulkParam& param);
double h_zero(const JointDist& j, ExtendedReal alpha);
double h_neg_inf(const JointDist& j, const DiscreteMeasure& tau);
double h_pos_inf_zero(const JointDist& j);

// Bulk form with a signed, not necessarily normalized, combination of
// Renyi orders. Used for families outside the (t, tau) parameterization.
struct SignedAtom {
    ExtendedReal alpha;
    double weight;
    friend bool operator==(const SignedAtom&, const SignedAtom&) = default;
};
double h_signed(const JointDist& j, double t, std::span<const SignedAtom> atoms);

enum class NamedFamily { Hayashi, Arimoto, TwoParam, Cachin, RennerWolf, TanHayashi };

struct NamedSpec {
    NamedFamily name;
    double alpha = 0.0;
    double beta = 0.0;
    double a = 0.0;
    double b = 0.0;
    friend bool operator==(const NamedSpec&, const NamedSpec&) = default;
};

struct FamilyBulk {
    BulkParam param;
    friend bool operator==(const FamilyBulk&, const FamilyBulk&) = default;
};
struct FamilyZero {
    ExtendedReal alpha;
    friend bool operator==(const FamilyZero&, const FamilyZero&) = default;
};
struct FamilyNegInf {
    DiscreteMeasure tau;
    friend bool operator==(const FamilyNegInf&, const FamilyNegInf&) = default;
};
struct FamilyPosInfZero {
    friend bool operator==(const FamilyPosInfZero&, const FamilyPosInfZero&) = default;
};
struct FamilySigned {
    double t;
    std::vector<SignedAtom> atoms;
    friend bool operator==(const FamilySigned&, const FamilySigned&) = default;
};
struct FamilyNamed {
    NamedSpec spec;
    friend bool operator==(const FamilyNamed&, const FamilyNamed&) = default;
};

using EntropyFamily =
    std::variant<FamilyBulk, FamilyZero, FamilyNegInf, FamilyPosInfZero, FamilySigned, FamilyNamed>;

// Maps a named entropy to the family it belongs to; throws InvalidParams
// outside the supported parameter ranges.
EntropyFamily resolve(const NamedSpec& spec);
double h_named(const JointDist& j, const NamedSpec& spec);
double evaluate(const JointDist& j, const EntropyFamily& family);

struct MixtureComponent {
    double weight;
    EntropyFamily family;
};
using MixtureEntropy = std::vector<MixtureComponent>;

double h_mixture(const JointDist& j, const MixtureEntropy& mixture);

std::string_view named_family_name(NamedFamily f);

}  // namespace condent
