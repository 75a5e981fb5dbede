#pragma once

#include <optional>
#include <vector>

#include "perbase/classify.hpp"
#include "perbase/dynamics.hpp"
#include "perbase/laurent.hpp"
#include "perbase/parallel.hpp"

namespace perbase {

using IntMatrix = std::vector<std::vector<BigInt>>;

/// A with top row (a_{d-1}, ..., a_0) and subdiagonal a = a_d, for the
/// minimal polynomial written a_d x^d - a_{d-1} x^{d-1} - ... - a_0.
/// Satisfies A b = a beta b with b = (beta^{d-1}, ..., beta, 1).
struct CompanionMatrix {
  IntMatrix A;
  BigInt a;
  int d = 0;
};

CompanionMatrix companion_matrix(const Field& field);

constexpr long kDefaultMaxStates = 4000000;

struct Cycle {
  long m = 0;
  long l = 1;
};

/// Minimal m, then minimal l, with A^{m+l} = A^m (mod q).
Cycle find_cycle_mod(const CompanionMatrix& A, const BigInt& q, long max_states = kDefaultMaxStates);
/// Smallest multiple s of l with A^m (A^s - a^s I) = 0 (mod q).
long find_s(const CompanionMatrix& A, const BigInt& q, const Cycle& cycle);

/// 1/n in Z[beta, 1/beta], or nullopt when some prime of n fails the
/// divisibility criterion on the minimal polynomial coefficients.
std::optional<LaurentIntElement> invert_integer_thm_finite(const Field& field, const BigInt& n);

struct PipelineTrace {
  BigInt q, r = 1, qbar = 1;
  long k = 0;  // r | a^k
  Cycle cycle;
  long s = 0;
  IntMatrix Z;
  LaurentIntElement z;
  Representation result;
};

/// Eventually periodic representation of 1/q.
Representation invert_denominator(const Field& field, const BigInt& q, const ConversionRule* normalizer = nullptr,
                                  PipelineTrace* trace = nullptr, long max_states = kDefaultMaxStates);

struct RepresentOptions {
  const ConversionRule* normalizer = nullptr;
  const DigitSelector* selector = nullptr;
  long max_steps = kDefaultMaxSteps;
  long max_states = kDefaultMaxStates;
  const BaseClassification* classification = nullptr;  // computed when absent
};

Representation represent_field_element(const FieldElement& x, const RepresentOptions& options = {},
                                       PipelineTrace* trace = nullptr);

/// Prime factorization by trial division.
std::vector<std::pair<BigInt, unsigned>> factor_integer(const BigInt& n);

}  // namespace perbase
