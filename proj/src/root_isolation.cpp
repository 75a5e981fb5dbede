#include "perbase/root_isolation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

#include "perbase/error.hpp"

namespace perbase {

RootBox RootBox::intersect(const RootBox& o) const {
  RootBox r;
  r.re_lo = std::max(re_lo, o.re_lo);
  r.re_hi = std::min(re_hi, o.re_hi);
  r.im_lo = std::max(im_lo, o.im_lo);
  r.im_hi = std::min(im_hi, o.im_hi);
  r.real = real;
  return r;
}

namespace {

BigRational abs_max(const BigRational& a, const BigRational& b) {
  BigRational x = abs(a), y = abs(b);
  return x > y ? x : y;
}

BigRational interval_abs_min(const BigRational& lo, const BigRational& hi) {
  if (lo <= 0 && hi >= 0) return 0;
  return lo > 0 ? lo : BigRational(-hi);
}

}  // namespace

BigRational RootBox::modulus2_upper() const {
  BigRational x = abs_max(re_lo, re_hi), y = abs_max(im_lo, im_hi);
  return x * x + y * y;
}

BigRational RootBox::modulus2_lower() const {
  BigRational x = interval_abs_min(re_lo, re_hi), y = interval_abs_min(im_lo, im_hi);
  return x * x + y * y;
}

BigRational RootBox::modulus_upper(unsigned bits) const { return sqrt_upper(modulus2_upper(), bits); }
BigRational RootBox::modulus_lower(unsigned bits) const { return sqrt_lower(modulus2_lower(), bits); }

namespace {

RatComplex round_to(const RatComplex& z, unsigned bits) {
  BigInt scale = pow(BigInt(2), bits);
  auto rnd = [&](const BigRational& v) {
    BigRational s = v * BigRational(scale) + BigRational(1, 2);
    BigRational r(floor(s), scale);
    r.canonicalize();
    return r;
  };
  return {rnd(z.re), rnd(z.im)};
}

RatComplex from_double(std::complex<double> z) {
  return {BigRational(z.real()), BigRational(z.imag())};
}

std::vector<std::complex<double>> seed_roots(const IntPoly& f) {
  int d = f.degree();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  double lc = f.leading().get_d();
  for (int i = 0; i < d; ++i) companion(0, i) = -f.coeff(d - 1 - i).get_d() / lc;
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < d; ++i) out.push_back(solver.eigenvalues()[i]);
  return out;
}

struct Certificate {
  bool ok = false;
  std::vector<BigRational> radius;  // upper bounds
  std::vector<bool> real;
};

// Weierstrass inclusion: disks |z - z_i| <= d |W_i| with
// W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j)); pairwise disjoint disks
// each hold exactly one root.
Certificate certify(const IntPoly& f, const std::vector<RatComplex>& z, unsigned bits) {
  Certificate cert;
  int d = static_cast<int>(z.size());
  cert.radius.resize(d);
  cert.real.assign(d, false);
  for (int i = 0; i < d; ++i) {
    RatComplex den{BigRational(f.leading()), 0};
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      RatComplex diff = z[i] - z[j];
      if (diff.norm2() == 0) return cert;
      den = den * diff;
    }
    RatComplex w = f.eval(z[i]) / den;
    cert.radius[i] = sqrt_upper(w.norm2(), 2 * bits + 8) * d;
    if (cert.radius[i] == 0) cert.radius[i] = BigRational(1, pow(BigInt(2), 2 * bits + 8));
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      BigRational s = cert.radius[i] + cert.radius[j];
      if (!(s * s < (z[i] - z[j]).norm2())) return cert;
    }
    if (z[i].im == 0) {
      cert.real[i] = true;
    } else if (abs(z[i].im) <= cert.radius[i]) {
      return cert;  // realness undecided
    }
  }
  cert.ok = true;
  return cert;
}

void aberth_round(const IntPoly& f, std::vector<RatComplex>& z, unsigned bits) {
  IntPoly df = f.derivative();
  int d = static_cast<int>(z.size());
  for (int i = 0; i < d; ++i) {
    RatComplex fv = f.eval(z[i]);
    if (fv.norm2() == 0) continue;
    RatComplex dv = df.eval(z[i]);
    if (dv.norm2() == 0) continue;
    RatComplex n = fv / dv;
    RatComplex s;
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      RatComplex diff = z[i] - z[j];
      if (diff.norm2() == 0) continue;
      s = s + RatComplex{1, 0} / diff;
    }
    RatComplex denom = RatComplex{1, 0} - n * s;
    RatComplex step = denom.norm2() == 0 ? n : n / denom;
    z[i] = round_to(z[i] - step, bits);
  }
}

// Pairs non-real approximations with conjugates and snaps near-real ones.
void symmetrize(std::vector<RatComplex>& z, unsigned bits) {
  BigRational tol(1, pow(BigInt(2), bits / 2));
  std::vector<int> pos, neg;
  for (int i = 0; i < static_cast<int>(z.size()); ++i) {
    if (abs(z[i].im) <= tol) {
      z[i].im = 0;
    } else if (z[i].im > 0) {
      pos.push_back(i);
    } else {
      neg.push_back(i);
    }
  }
  if (pos.size() != neg.size()) return;
  std::vector<bool> used(neg.size(), false);
  for (int i : pos) {
    int best = -1;
    BigRational bestd;
    for (std::size_t k = 0; k < neg.size(); ++k) {
      if (used[k]) continue;
      BigRational dist = (z[i].conj() - z[neg[k]]).norm2();
      if (best < 0 || dist < bestd) {
        best = static_cast<int>(k);
        bestd = dist;
      }
    }
    used[best] = true;
    z[neg[best]] = z[i].conj();
  }
}

bool box_less(const RootBox& a, const RootBox& b) {
  if (a.real != b.real) return a.real;
  RatComplex ca = a.center(), cb = b.center();
  if (ca.re != cb.re) return ca.re < cb.re;
  return ca.im < cb.im;
}

}  // namespace

std::vector<RootBox> isolate_roots(const IntPoly& f, const BigRational& eps) {
  int d = f.degree();
  if (d < 1) fail(ErrorCode::InvalidArgument, "root isolation needs degree >= 1");
  if (!is_squarefree(f)) fail(ErrorCode::InvalidArgument, "root isolation needs a squarefree polynomial");
  if (d == 1) {
    BigRational r(-f.coeff(0), f.coeff(1));
    r.canonicalize();
    return {RootBox{r, r, 0, 0, true}};
  }
  std::vector<RatComplex> z;
  for (auto s : seed_roots(f)) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) s = {1.0, 0.5};
    z.push_back(from_double(s));
  }
  // Perturb exact duplicates so the iteration is well defined.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j)
      if (z[i] == z[j]) z[i].re += BigRational(i + 1, 1024);

  unsigned bits = 64;
  for (int round = 0; round < 400; ++round) {
    aberth_round(f, z, bits);
    std::vector<RatComplex> trial = z;
    symmetrize(trial, bits);
    Certificate cert = certify(f, trial, bits);
    if (cert.ok) {
      bool small = true;
      for (int i = 0; i < d; ++i)
        if (cert.radius[i] * 2 > eps) small = false;
      if (small) {
        std::vector<RootBox> boxes;
        for (int i = 0; i < d; ++i) {
          const auto& c = trial[i];
          const auto& r = cert.radius[i];
          if (cert.real[i]) {
            boxes.push_back(RootBox{c.re - r, c.re + r, 0, 0, true});
          } else {
            boxes.push_back(RootBox{c.re - r, c.re + r, c.im - r, c.im + r, false});
          }
        }
        std::sort(boxes.begin(), boxes.end(), box_less);
        return boxes;
      }
    }
    // Raise the working precision once the iteration has settled.
    if (cert.ok || round % 6 == 5) bits = std::min(bits * 2, 1u << 15);
  }
  fail(ErrorCode::InvalidArgument, "root isolation did not converge for " + f.to_string());
}

RootBox refine(const IntPoly& f, const RootBox& box) {
  if (box.real) {
    // Bisection keeps an exact sign change (the root is simple).
    BigRational lo = box.re_lo, hi = box.re_hi;
    if (lo == hi) return box;
    BigRational mid = (lo + hi) / 2;
    int sm = f.sign_at(mid);
    RootBox out = box;
    if (sm == 0) {
      out.re_lo = out.re_hi = mid;
      return out;
    }
    int sl = f.sign_at(lo);
    if (sl == 0) {
      out.re_lo = out.re_hi = lo;
      return out;
    }
    if (sl != sm) {
      out.re_hi = mid;
    } else {
      out.re_lo = mid;
    }
    return out;
  }
  BigRational target = box.size() / 4;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<RootBox> all = isolate_roots(f, target);
    const RootBox* hit = nullptr;
    int hits = 0;
    for (const auto& b : all) {
      if (b.intersects(box)) {
        hit = &b;
        ++hits;
      }
    }
    if (hits == 1) {
      if (hit->real) return RootBox{hit->re_lo, hit->re_hi, 0, 0, true};
      return box.intersect(*hit);
    }
    target /= 4;
  }
  fail(ErrorCode::InvalidArgument, "root box refinement stalled");
}

RootBox refine_to(const IntPoly& f, const RootBox& box, const BigRational& eps) {
  RootBox b = box;
  if (!b.real && b.size() > eps) {
    // Jump straight to the target size for complex roots.
    std::vector<RootBox> all = isolate_roots(f, eps / 2);
    std::vector<const RootBox*> hits;
    for (const auto& c : all)
      if (c.intersects(b)) hits.push_back(&c);
    if (hits.size() == 1) b = hits[0]->real ? *hits[0] : b.intersect(*hits[0]);
  }
  while (b.size() > eps) b = refine(f, b);
  return b;
}

}  // namespace perbase
