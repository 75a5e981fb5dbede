#include "perbase/classify.hpp"

#include <numeric>

#include "perbase/error.hpp"

namespace perbase {

std::string_view verdict_name(ModulusVerdict v) {
  switch (v) {
    case ModulusVerdict::Lt1: return "lt1";
    case ModulusVerdict::Eq1: return "eq1";
    case ModulusVerdict::Gt1EqBeta: return "gt1_eq_beta";
    case ModulusVerdict::Gt1Other: return "gt1_other";
  }
  return "?";
}

std::string_view label_name(BaseLabel l) {
  switch (l) {
    case BaseLabel::Pisot: return "Pisot";
    case BaseLabel::ComplexPisot: return "ComplexPisot";
    case BaseLabel::Salem: return "Salem";
    case BaseLabel::NegPisot: return "NegPisot";
    case BaseLabel::None: return "None";
  }
  return "?";
}

std::optional<int> unit_circle_conjugate(const Field& field) {
  const IntPoly& f = field->minpoly();
  if (!is_self_reciprocal(f)) return std::nullopt;
  int count = 0;
  if (f.eval(BigInt(1)) == 0) ++count;
  if (f.eval(BigInt(-1)) == 0) ++count;
  if (f.degree() % 2 == 0 && f.coeffs() == f.reversed().coeffs()) {
    IntPoly g = reciprocal_trace_poly(f);
    if (g.degree() >= 1) {
      SturmSequence sturm(g.primitive());
      int inside = sturm.count_roots(-2, 2);
      if (g.eval(BigInt(2)) == 0) --inside;
      count += 2 * inside;
    }
  }
  return count;
}

namespace {

BigRational tiny(unsigned bits) { return BigRational(1, pow(BigInt(2), bits)); }

RootBox shrink(const IntPoly& f, const RootBox& b) {
  BigRational target = b.size() / 65536;
  if (target == 0) return b;
  return refine_to(f, b, target);
}

bool overlaps(const RootBox& a, const RootBox& b) {
  return !(a.modulus2_upper() < b.modulus2_lower() || b.modulus2_upper() < a.modulus2_lower());
}

// Polynomial whose roots are all products r_i r_j of roots of f; |r|^2 is
// among them for every root r.
IntPoly product_polynomial(const IntPoly& f) {
  int d = f.degree();
  int n = d * d;
  std::vector<BigRational> p = power_sums(f, n), q(n);
  for (int k = 0; k < n; ++k) q[k] = p[k] * p[k];
  RatPoly g = from_power_sums(q);
  RatPoly sf = g;
  RatPoly dg;
  for (int i = 1; i < static_cast<int>(g.c.size()); ++i) dg.c.push_back(g.c[i] * i);
  dg.trim();
  RatPoly h = gcd(g, dg);
  if (h.degree() > 0) {
    RatPoly quo, rem;
    divmod(g, h, quo, rem);
    sf = quo;
  }
  return sf.to_primitive_int();
}

// Exact test |a| = |b| for two root boxes of f via the product polynomial.
bool equal_modulus_exact(const IntPoly& f, RootBox a, RootBox b) {
  IntPoly p = product_polynomial(f);
  SturmSequence sturm(p);
  while (true) {
    BigRational lo = a.modulus2_lower(), hi = a.modulus2_upper();
    if (sturm.count_roots(lo - tiny(600), hi) == 1 || lo == hi) break;
    a = shrink(f, a);
  }
  while (true) {
    if (b.modulus2_upper() < a.modulus2_lower() || a.modulus2_upper() < b.modulus2_lower()) return false;
    if (a.modulus2_lower() - tiny(600) < b.modulus2_lower() && b.modulus2_upper() <= a.modulus2_upper()) return true;
    b = shrink(f, b);
  }
}

BaseLabel label_from(const BaseClassification& c, const Field& field, bool allow_negative);

BaseClassification classify_impl(const Field& field, const BigRational& eps, bool allow_negative) {
  BaseClassification out;
  const IntPoly& f = field->minpoly();
  int d = f.degree();
  out.is_algebraic_integer = f.leading() == 1;
  out.is_rational = d == 1;
  out.unit_circle_count = unit_circle_conjugate(field);
  int on_circle = out.unit_circle_count.value_or(0);

  std::vector<RootBox> boxes = conjugate_boxes(field, eps);
  // Locate beta among the boxes.
  int beta = -1;
  for (RootBox bb = field->beta_box(eps);; bb = field->beta_box(bb.size() / 1024)) {
    std::vector<int> hits;
    for (int i = 0; i < d; ++i)
      if (boxes[i].intersects(bb)) hits.push_back(i);
    if (hits.size() == 1) {
      beta = hits[0];
      break;
    }
    for (int i : hits) boxes[i] = shrink(f, boxes[i]);
  }

  std::vector<int> verdict(d, -1);  // 0 lt1, 1 eq1, 2 gt1
  while (true) {
    std::vector<int> open;
    for (int i = 0; i < d; ++i) {
      if (verdict[i] >= 0) continue;
      if (boxes[i].modulus2_lower() > 1) {
        verdict[i] = 2;
      } else if (boxes[i].modulus2_upper() < 1) {
        verdict[i] = 0;
      } else {
        open.push_back(i);
      }
    }
    if (static_cast<int>(open.size()) == on_circle) {
      for (int i : open) verdict[i] = 1;
      break;
    }
    for (int i : open) boxes[i] = shrink(f, boxes[i]);
  }

  std::vector<ModulusVerdict> mv(d, ModulusVerdict::Lt1);
  for (int i = 0; i < d; ++i) {
    if (verdict[i] == 1) mv[i] = ModulusVerdict::Eq1;
    if (verdict[i] == 2) mv[i] = ModulusVerdict::Gt1Other;
  }
  mv[beta] = ModulusVerdict::Gt1EqBeta;

  std::vector<int> big;
  for (int i = 0; i < d; ++i)
    if (verdict[i] == 2 && i != beta) big.push_back(i);
  if (!big.empty()) {
    if (boxes[beta].real) {
      // All roots on the circle |z| = |beta| number exactly the gcd of the
      // exponents in the support of f.
      long m = 0;
      for (int i = 0; i <= d; ++i)
        if (f.coeff(i) != 0) m = std::gcd(m, static_cast<long>(i));
      while (true) {
        std::vector<int> cand;
        for (int i : big)
          if (overlaps(boxes[i], boxes[beta])) cand.push_back(i);
        if (static_cast<long>(cand.size()) + 1 == m) {
          for (int i : cand) mv[i] = ModulusVerdict::Gt1EqBeta;
          break;
        }
        for (int i : cand) boxes[i] = shrink(f, boxes[i]);
        boxes[beta] = shrink(f, boxes[beta]);
      }
    } else {
      for (int i : big) {
        RootBox a = boxes[beta], b = boxes[i];
        int decided = 0;
        while (a.size() > tiny(256) || b.size() > tiny(256)) {
          if (!overlaps(a, b)) {
            decided = -1;
            break;
          }
          a = shrink(f, a);
          b = shrink(f, b);
        }
        if (decided == 0 && !overlaps(a, b)) decided = -1;
        if (decided == 0) decided = equal_modulus_exact(f, a, b) ? 1 : -1;
        if (decided == 1) mv[i] = ModulusVerdict::Gt1EqBeta;
      }
    }
  }

  for (int i = 0; i < d; ++i) out.conjugates.push_back(ConjugateInfo{boxes[i], mv[i], i == beta});
  for (unsigned m = 2; m <= static_cast<unsigned>(d); ++m)
    if (minpoly_of_power(field, m).degree() < d) out.collapse_exponents.push_back(m);
  out.label = label_from(out, field, allow_negative);
  return out;
}

BaseLabel label_from(const BaseClassification& c, const Field& field, bool allow_negative) {
  if (!c.is_algebraic_integer) return BaseLabel::None;
  const ConjugateInfo* beta = nullptr;
  int lt1 = 0, eq1 = 0, others = 0;
  for (const auto& ci : c.conjugates) {
    if (ci.is_beta) {
      beta = &ci;
      continue;
    }
    ++others;
    if (ci.verdict == ModulusVerdict::Lt1) ++lt1;
    if (ci.verdict == ModulusVerdict::Eq1) ++eq1;
  }
  bool real = beta->box.real;
  bool positive = real && beta->box.re_lo > 0;
  if (real && positive) {
    if (lt1 == others) return BaseLabel::Pisot;
    if (lt1 + eq1 == others && eq1 > 0) return BaseLabel::Salem;
    return BaseLabel::None;
  }
  if (!real) {
    // The complex conjugate of beta is the one permitted exception.
    int complex_partner = 0;
    for (const auto& ci : c.conjugates)
      if (!ci.is_beta && ci.verdict == ModulusVerdict::Gt1EqBeta && !ci.box.real &&
          ci.box.intersects(RootBox{beta->box.re_lo, beta->box.re_hi, -beta->box.im_hi, -beta->box.im_lo, false}))
        ++complex_partner;
    if (complex_partner == 1 && lt1 == others - 1) return BaseLabel::ComplexPisot;
    return BaseLabel::None;
  }
  if (!allow_negative) return BaseLabel::None;
  RatComplex centre = beta->box.center();
  Field neg = make_field(field->minpoly().negated_argument(), RootHint{-centre.re, 0});
  BaseClassification cn = classify_impl(neg, BigRational(1, 100), false);
  return cn.label == BaseLabel::Pisot ? BaseLabel::NegPisot : BaseLabel::None;
}

}  // namespace

BaseClassification classify_base(const Field& field, const BigRational& initial_eps) {
  return classify_impl(field, initial_eps, true);
}

WeakGreedyAdvisory weak_greedy_advisory(const Field& field) {
  WeakGreedyAdvisory adv;
  BaseClassification c = classify_base(field);
  const ConjugateInfo* beta = nullptr;
  for (const auto& ci : c.conjugates)
    if (ci.is_beta) beta = &ci;
  bool real = beta->box.real;
  if (!c.is_algebraic_integer) {
    adv.impossible = true;
    adv.reasons.push_back("beta is not an algebraic integer");
  }
  for (const auto& ci : c.conjugates) {
    if (!ci.is_beta && ci.verdict == ModulusVerdict::Gt1Other) {
      adv.impossible = true;
      adv.reasons.push_back("a conjugate has modulus > 1 different from |beta|");
      break;
    }
  }
  if (real) {
    BaseLabel abs_label = c.label;
    if (beta->box.re_hi < 0) {
      RatComplex centre = beta->box.center();
      Field neg = make_field(field->minpoly().negated_argument(), RootHint{-centre.re, 0});
      abs_label = classify_base(neg).label;
    }
    if (abs_label != BaseLabel::Pisot && abs_label != BaseLabel::Salem) {
      adv.impossible = true;
      adv.reasons.push_back("|beta| is neither a Pisot nor a Salem number");
    }
    if (!c.collapse_exponents.empty()) {
      adv.impossible = true;
      adv.reasons.push_back("Q(beta^" + std::to_string(c.collapse_exponents.front()) + ") is a proper subfield");
    }
  }
  return adv;
}

}  // namespace perbase
