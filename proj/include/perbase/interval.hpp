#pragma once

#include <algorithm>

#include "perbase/bigint.hpp"

namespace perbase {

/// Closed rational interval [lo, hi].
struct Interval {
  BigRational lo = 0, hi = 0;

  static Interval point(const BigRational& v) { return {v, v}; }
  BigRational width() const { return hi - lo; }
  BigRational mid() const { return (lo + hi) / 2; }
  bool contains(const BigRational& v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  /// +1 / -1 when the sign is decided, 0 when the interval meets zero.
  int sign() const { return lo > 0 ? 1 : (hi < 0 ? -1 : 0); }
  BigRational mag() const { return std::max(abs(lo), abs(hi)); }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
  friend Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
  friend Interval operator*(const Interval& a, const Interval& b) {
    BigRational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
  }
  friend Interval operator*(const BigRational& k, const Interval& a) {
    return k >= 0 ? Interval{k * a.lo, k * a.hi} : Interval{k * a.hi, k * a.lo};
  }
  Interval square() const {
    if (lo >= 0) return {lo * lo, hi * hi};
    if (hi <= 0) return {hi * hi, lo * lo};
    return {0, std::max(lo * lo, hi * hi)};
  }
  Interval rounded(unsigned bits) const { return {round_down(lo, bits), round_up(hi, bits)}; }
};

/// Rectangle in the complex plane.
struct CInterval {
  Interval re, im;

  friend CInterval operator+(const CInterval& a, const CInterval& b) { return {a.re + b.re, a.im + b.im}; }
  friend CInterval operator-(const CInterval& a, const CInterval& b) { return {a.re - b.re, a.im - b.im}; }
  friend CInterval operator*(const CInterval& a, const CInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CInterval operator*(const BigRational& k, const CInterval& a) { return {k * a.re, k * a.im}; }
  Interval norm2() const { return re.square() + im.square(); }
  BigRational size() const { return std::max(re.width(), im.width()); }
  bool contains(const CInterval& o) const { return re.contains(o.re) && im.contains(o.im); }
  CInterval rounded(unsigned bits) const { return {re.rounded(bits), im.rounded(bits)}; }
};

}  // namespace perbase
