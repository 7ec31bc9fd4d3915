#pragma once

#include <map>

#include "cforge/conformal_map.hpp"

namespace cforge {

// A map block from a source file. Images live in the target algebra;
// conformal-map images may use the map variable x, plain module homs may
// not.
struct MapDef {
    std::string name;
    std::string source_alg, target_alg;
    Parity parity = Parity::even;
    std::vector<Element> images;
    bool uses_x = false;
};

struct SourceModel {
    std::vector<AlgebraPtr> algebras; // declaration order
    std::map<std::string, std::size_t> algebra_index;
    std::vector<MapDef> maps;
    std::map<std::string, std::size_t> map_index;

    AlgebraPtr algebra(const std::string& name) const;
    const MapDef& map(const std::string& name) const;

    bool operator==(const SourceModel& o) const;
};

// Grammar:
//   algebra NAME { generator NAME even|odd; bracket [g1, g2] = EXPR; ... }
//   map NAME : ALG -> ALG { g |-> EXPR; ... } parity even|odd;
// EXPR is polynomial arithmetic over rationals (3/2), indeterminates
// (d = the module generator, l = the bracket variable, x = the map
// variable) and generator names; juxtaposition multiplies. Unspecified
// bracket pairs are completed by skew-symmetry; conflicting duplicates,
// unknown generators and parity-inconsistent values are diagnostics.
// Throws ParseError with line/column; never returns a partial model.
SourceModel parse_source(std::string_view text);

ModuleHom to_module_hom(const SourceModel& model, const MapDef& def);
ConformalMap to_conformal_map(const SourceModel& model, const MapDef& def);

std::string print_algebra(const Algebra& a);
std::string print_model(const SourceModel& model);

} // namespace cforge
