#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "perbase/number_field.hpp"

namespace perbase {

enum class ModulusVerdict { Lt1, Eq1, Gt1EqBeta, Gt1Other };
enum class BaseLabel { Pisot, ComplexPisot, Salem, NegPisot, None };

std::string_view verdict_name(ModulusVerdict v);
std::string_view label_name(BaseLabel l);

struct ConjugateInfo {
  RootBox box;
  ModulusVerdict verdict;
  bool is_beta = false;
};

struct BaseClassification {
  bool is_algebraic_integer = false;
  bool is_rational = false;
  std::vector<ConjugateInfo> conjugates;
  BaseLabel label = BaseLabel::None;
  std::vector<unsigned> collapse_exponents;
  std::optional<int> unit_circle_count;
};

/// None unless the minimal polynomial is self-reciprocal; otherwise the
/// exact number of roots on the unit circle.
std::optional<int> unit_circle_conjugate(const Field& field);

BaseClassification classify_base(const Field& field, const BigRational& initial_eps = BigRational(1, 100));

struct WeakGreedyAdvisory {
  bool impossible = false;
  std::vector<std::string> reasons;
  std::string verdict() const { return impossible ? "impossible" : "not excluded"; }
};

WeakGreedyAdvisory weak_greedy_advisory(const Field& field);

}  // namespace perbase
