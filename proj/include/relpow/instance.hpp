#pragma once

#include <string>

#include "relpow/resolvent.hpp"

namespace relpow {

struct Defaults {
  double tol_algebraic = 1e-8;
  double tol_quadrature = 1e-6;
  int grid_radial = 40;
  int grid_transverse = 9;
  unsigned seed = 20240915;
};

/// A problem instance: the relation, the regularizer C, the certified
/// region, and numeric defaults. JSON layout:
///   {"relation": {"n": int, "kind": "graph"|"matrix"|"pencil",
///                 "data": nested arrays of [re, im] pairs},
///    "C": rows of [re, im] pairs,
///    "region": {"mode": "H"|"HS", "alpha", "eps", "c", "d", "theta",
///               "lambda0": [re, im]},
///    "defaults": {...}}  (C, region, defaults optional)
struct ProblemSpec {
  LinearRelation relation;
  Mat C;
  RegionParams region;
  Defaults defaults;

  static ProblemSpec load(const std::string& path);
  static ProblemSpec parse(const std::string& json_text);
  std::string serialize() const;
  void save(const std::string& path) const;

  Mat c1() const { return build_c1(relation, C, region); }
};

} // namespace relpow
