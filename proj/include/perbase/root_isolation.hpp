#pragma once

#include <vector>

#include "perbase/int_poly.hpp"

namespace perbase {

/// Axis-parallel rectangle with rational corners that is certified to
/// contain exactly one root of its defining polynomial. Real roots carry a
/// degenerate imaginary range [0, 0].
struct RootBox {
  BigRational re_lo, re_hi, im_lo, im_hi;
  bool real = false;

  RatComplex center() const { return {(re_lo + re_hi) / 2, (im_lo + im_hi) / 2}; }
  BigRational width() const { return re_hi - re_lo; }
  BigRational height() const { return im_hi - im_lo; }
  BigRational size() const { return width() > height() ? width() : height(); }
  bool contains(const RatComplex& z) const {
    return re_lo <= z.re && z.re <= re_hi && im_lo <= z.im && z.im <= im_hi;
  }
  bool intersects(const RootBox& o) const {
    return !(o.re_hi < re_lo || re_hi < o.re_lo || o.im_hi < im_lo || im_hi < o.im_lo);
  }
  RootBox intersect(const RootBox& o) const;
  /// Upper bound on |z| over the box.
  BigRational modulus_upper(unsigned bits = 64) const;
  /// Lower bound on |z| over the box.
  BigRational modulus_lower(unsigned bits = 64) const;
  /// Exact bounds on |z|^2 over the box.
  BigRational modulus2_upper() const;
  BigRational modulus2_lower() const;
};

/// All complex roots of the squarefree polynomial f, as pairwise disjoint
/// certified boxes of size <= eps. Real roots come first (ascending), then
/// non-real roots ordered by real part, then imaginary part.
std::vector<RootBox> isolate_roots(const IntPoly& f, const BigRational& eps);

/// One refinement step: the result still isolates the same root and its
/// width and height are at most half of the input's.
RootBox refine(const IntPoly& f, const RootBox& box);

/// Refines until size() <= eps.
RootBox refine_to(const IntPoly& f, const RootBox& box, const BigRational& eps);

}  // namespace perbase
