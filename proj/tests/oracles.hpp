#pragma once

// Independent reference computations used by the tests. They share no code
// with the library beyond the exact number types.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <random>
#include <vector>

#include "perbase/bigint.hpp"

namespace oracle {

using perbase::BigInt;
using perbase::BigRational;

inline BigRational horner(const std::vector<long>& c, const BigRational& x) {
  BigRational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Bisection for a sign change of the polynomial (ascending coefficients)
/// on [lo, hi]; returns an interval of width <= eps containing a root.
inline std::pair<BigRational, BigRational> bisect(const std::vector<long>& c, BigRational lo, BigRational hi,
                                                  const BigRational& eps) {
  int slo = sgn(horner(c, lo));
  while (hi - lo > eps) {
    BigRational mid = (lo + hi) / 2;
    int sm = sgn(horner(c, mid));
    if (sm == 0) return {mid, mid};
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

/// Numeric roots via a companion matrix followed by Newton polishing in
/// long double.
inline std::vector<std::complex<long double>> numeric_roots(const std::vector<long>& c) {
  int d = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, d - 1) = -static_cast<double>(c[i]) / static_cast<double>(c[d]);
  for (int i = 1; i < d; ++i) m(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<std::complex<long double>> out;
  for (int i = 0; i < d; ++i) {
    std::complex<long double> z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    for (int it = 0; it < 20; ++it) {
      std::complex<long double> f = 0, df = 0;
      for (int k = d; k >= 0; --k) {
        df = df * z + f;
        f = f * z + static_cast<long double>(c[k]);
      }
      if (std::abs(df) == 0) break;
      z -= f / df;
    }
    out.push_back(z);
  }
  return out;
}

inline long double residual(const std::vector<long>& c, std::complex<long double> z) {
  std::complex<long double> f = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) f = f * z + static_cast<long double>(*it);
  return std::abs(f);
}

inline BigRational random_rational(std::mt19937_64& rng, long maxnum, long maxden) {
  std::uniform_int_distribution<long> num(-maxnum, maxnum), den(1, maxden);
  BigRational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

/// Base label computed from numeric roots only; residual_ok reports whether
/// every root has relative residual below 1e-12.
inline std::string numeric_label(const std::vector<long>& c, bool& residual_ok) {
  auto roots = numeric_roots(c);
  residual_ok = true;
  for (auto z : roots)
    residual_ok = residual_ok && residual(c, z) < 1e-12L * std::max<long double>(1, std::pow(std::abs(z), c.size()));
  std::size_t bi = 0;
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (std::abs(roots[i]) > std::abs(roots[bi]) + 1e-9L ||
        (std::abs(std::abs(roots[i]) - std::abs(roots[bi])) < 1e-9L && roots[i].real() > roots[bi].real() + 1e-9L) ||
        (std::abs(roots[i] - std::conj(roots[bi])) < 1e-9L && roots[i].imag() > 0))
      bi = i;
  auto beta = roots[bi];
  if (c.back() != 1) return "None";
  bool real = std::abs(beta.imag()) < 1e-9L;
  int lt = 0, eq = 0, n = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i == bi) continue;
    if (!real && std::abs(roots[i] - std::conj(beta)) < 1e-9L) continue;
    ++n;
    long double m = std::abs(roots[i]);
    if (m < 1 - 1e-9L) ++lt;
    else if (m < 1 + 1e-9L) ++eq;
  }
  if (real && beta.real() > 0) return lt == n ? "Pisot" : (lt + eq == n && eq > 0 ? "Salem" : "None");
  if (!real) return lt == n ? "ComplexPisot" : "None";
  return lt == n ? "NegPisot" : "None";
}

}  // namespace oracle
