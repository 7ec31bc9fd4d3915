#pragma once

#include "cforge/derivations.hpp"

namespace cforge {

// One ansatz coefficient: coeff * d^d_exp * x^x_exp on (source -> target).
struct BasisRecord {
    std::string source, target;
    unsigned d_exp = 0, x_exp = 0;
    Rational coeff;
    bool operator==(const BasisRecord&) const = default;
};

using BasisMapData = std::vector<BasisRecord>;

// Serialized solution space. `pairs` is used instead of `maps` for the
// gctder pair predicate.
struct BasisFileData {
    int schema_version = 1;
    std::string algebra;
    std::string predicate;
    std::string parity; // "even" | "odd"
    unsigned degree_bound = 0;
    std::string variable = "x";
    bool is_pair_space = false;
    std::vector<BasisMapData> maps;
    std::vector<std::pair<BasisMapData, BasisMapData>> pairs;
};

BasisFileData basis_from_space(const MapSpace& space);
BasisFileData basis_from_pair_space(const PairSpace& space);

// Deterministic bytes: fixed key order, two-space indent, trailing newline.
std::string serialize_basis(const BasisFileData& data);
BasisFileData parse_basis(std::string_view json_text); // throws Error

// File-level space algebra. Works on the records alone (the gc bracket is
// map composition, so no algebra table is needed); generator parities are
// irrelevant, only the space parities enter the sign rule.
bool basis_compatible(const BasisFileData& a, const BasisFileData& b, std::string* why);
bool basis_equal_span(const BasisFileData& a, const BasisFileData& b);
BasisFileData basis_intersect(const BasisFileData& a, const BasisFileData& b);
BasisFileData basis_centralizer(const BasisFileData& a, const BasisFileData& b);

} // namespace cforge
