#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "soliton/geometry.hpp"
#include "soliton/poly.hpp"

namespace soliton::sym {

/// One mechanically verified identity.  `normalization` records any
/// constant-factor adjustment applied before comparison ("" when the match
/// is verbatim): clearing denominators in different orders scales a
/// polynomial equation by a nonzero constant, so reports flag exactly what
/// was divided out.
struct Check {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
  std::string normalization;
};

struct ReplayReport {
  std::string title;
  std::vector<Check> checks;
  bool pass = true;

  void add(Check c) {
    pass = pass && c.pass;
    checks.push_back(std::move(c));
  }
};

/// Sum-of-two-planar-curves classification: builds the skew-translation
/// equation, divides by (1+g'^2)(1+c^2+f'^2), applies d/dx then d/dy,
/// clears the denominator and collects in f'.  Verifies the displayed
/// coefficients P4, P2 (at v1=0) and P1 (at v1=0, c=0).
ReplayReport replay_theorem1();

enum class T2Subcase { S1a, S1b, S2a, S2b, S2c, S2d };

/// Planar-plus-space-curve classification.  Every subcase first verifies
/// the four bracket formulas obtained from d/dx of the chart equation over
/// Q = 1+f'^2+h'^2, then replays that subcase's elimination to its decisive
/// coefficient.
ReplayReport replay_theorem2(T2Subcase subcase);

enum class T3Case { PrelimLinear, PrelimExponential, Case1, Case2 };

/// Product-surface classification: the two preliminary substitutions on the
/// product equation and the two integrated cases of the separated equation.
ReplayReport replay_theorem3(T3Case c);

ReplayReport replay_all_theorem2();

/// 3x3 Wronskian of three sampled functions at a common parameter: rows are
/// values, first and second derivatives.
double wronskian(const std::array<geom::FuncJet, 3>& jets);

/// Finite-difference variant for plain callables (central differences,
/// step h; accuracy is limited to roughly h^2 + eps/h^2).
double wronskian_fd(const std::array<std::function<double(double)>, 3>& fns, double s,
                    double h = 1e-4);

std::string transcript(const std::vector<ReplayReport>& reports);

}  // namespace soliton::sym
