#include "perbase/dynamics.hpp"

#include <algorithm>
#include <unordered_map>

#include "perbase/error.hpp"

namespace perbase {

std::string_view selector_kind_name(SelectorKind k) {
  switch (k) {
    case SelectorKind::Greedy: return "greedy";
    case SelectorKind::Balanced: return "balanced";
    case SelectorKind::ItoSadahiro: return "itosadahiro";
    case SelectorKind::ThurstonDisk: return "thurston-disk";
    case SelectorKind::ThurstonPolygon: return "thurston-polygon";
  }
  return "?";
}

Alphabet DigitSelector::alphabet() const {
  Alphabet a;
  for (const auto& d : digits) a.digits.push_back(d.as_rational()->get_num());
  std::sort(a.digits.begin(), a.digits.end());
  return a;
}

namespace {

BigRational cross(const RatComplex& a, const RatComplex& b) { return a.re * b.im - a.im * b.re; }

// Oriented area test of z against the directed edge p -> q.
BigRational side(const RatComplex& p, const RatComplex& q, const RatComplex& z) { return cross(q - p, z - p); }

Polygon clip(const Polygon& poly, const RatComplex& p, const RatComplex& q, int keep) {
  // keep = +1 retains side >= 0, -1 retains side <= 0.
  Polygon out;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const RatComplex& a = poly[i];
    const RatComplex& b = poly[(i + 1) % n];
    BigRational sa = side(p, q, a) * keep, sb = side(p, q, b) * keep;
    if (sa >= 0) out.push_back(a);
    if ((sa > 0 && sb < 0) || (sa < 0 && sb > 0)) {
      BigRational t = sa / (sa - sb);
      out.push_back(RatComplex{a.re + t * (b.re - a.re), a.im + t * (b.im - a.im)});
    }
  }
  return out;
}

Polygon convex_hull(std::vector<RatComplex> pts) {
  std::sort(pts.begin(), pts.end(), [](const RatComplex& a, const RatComplex& b) {
    return a.re < b.re || (a.re == b.re && a.im < b.im);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  Polygon h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// Separating-axis test for two convex point sets (exact).
bool convex_disjoint(const Polygon& a, const Polygon& b) {
  auto separated_by = [](const Polygon& p, const Polygon& q) {
    std::size_t n = p.size();
    if (n < 2) return false;
    for (std::size_t i = 0; i < n; ++i) {
      const RatComplex& u = p[i];
      const RatComplex& v = p[(i + 1) % n];
      if (n == 2 && i == 1) break;
      BigRational own = 0;
      for (const auto& z : p) {
        BigRational s = side(u, v, z);
        if (s != 0) {
          own = s;
          break;
        }
      }
      bool all_out = true;
      for (const auto& z : q) {
        BigRational s = side(u, v, z);
        if (own >= 0 ? s >= 0 : s <= 0) {
          all_out = false;
          break;
        }
      }
      if (all_out) return true;
    }
    return false;
  };
  return separated_by(a, b) || separated_by(b, a);
}

Polygon rect_polygon(const CInterval& r) {
  return {RatComplex{r.re.lo, r.im.lo}, RatComplex{r.re.hi, r.im.lo}, RatComplex{r.re.hi, r.im.hi},
          RatComplex{r.re.lo, r.im.hi}};
}

CInterval point_interval(const RatComplex& z) { return {Interval::point(z.re), Interval::point(z.im)}; }

// Complex value of a field element: exact when possible, else a small box.
CInterval value_box(const FieldElement& x, unsigned bits = 64) {
  if (auto v = exact_value(x)) return point_interval(*v);
  return embed(x, BigRational(1, pow(BigInt(2), bits)));
}

enum class Tri { Inside, Outside, Unknown };

Tri rect_vs_region(const DigitSelector& sel, const CInterval& r) {
  if (sel.kind == SelectorKind::ThurstonDisk) {
    BigRational far = r.norm2().hi, r2 = sel.radius * sel.radius;
    if (far <= r2) return Tri::Inside;
    if (r.norm2().lo > r2) return Tri::Outside;
    return Tri::Unknown;
  }
  Polygon corners = rect_polygon(r);
  if (std::all_of(corners.begin(), corners.end(), [&](const RatComplex& z) { return polygon_contains(sel.polygon, z); }))
    return Tri::Inside;
  if (convex_disjoint(convex_hull(corners), sel.polygon)) return Tri::Outside;
  return Tri::Unknown;
}

bool point_in_complex_region(const DigitSelector& sel, const RatComplex& z, bool* boundary) {
  if (sel.kind == SelectorKind::ThurstonDisk) {
    BigRational n = z.norm2(), r2 = sel.radius * sel.radius;
    if (boundary) *boundary = n == r2;
    return n <= r2;
  }
  if (boundary) *boundary = polygon_on_boundary(sel.polygon, z);
  return polygon_contains(sel.polygon, z);
}

bool is_real_kind(SelectorKind k) {
  return k == SelectorKind::Greedy || k == SelectorKind::Balanced || k == SelectorKind::ItoSadahiro;
}

void sort_digits(std::vector<FieldElement>& digits) {
  std::vector<std::pair<RatComplex, FieldElement>> keyed;
  for (const auto& d : digits) {
    CInterval b = value_box(d);
    keyed.push_back({RatComplex{b.re.mid(), b.im.mid()}, d});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first.re < b.first.re || (a.first.re == b.first.re && a.first.im < b.first.im);
  });
  digits.clear();
  for (auto& [k, d] : keyed) digits.push_back(d);
}

BigRational min_nonzero_digit_modulus(const std::vector<FieldElement>& digits) {
  std::optional<BigRational> best;
  for (const auto& d : digits) {
    if (d.is_zero()) continue;
    BigRational m = sqrt_lower(value_box(d).norm2().lo, 32);
    if (!best || m < *best) best = m;
  }
  return best.value_or(BigRational(0));
}

BigRational upper_abs_beta(const Field& f) {
  if (auto b = f->exact_beta()) return sqrt_upper(b->norm2(), 32);
  return f->beta_box().modulus_upper(32);
}

CInterval beta_interval(const Field& f, unsigned bits) {
  if (auto b = f->exact_beta()) return point_interval(*b);
  RootBox bx = f->beta_box(BigRational(1, pow(BigInt(2), bits)));
  return {{bx.re_lo, bx.re_hi}, {bx.im_lo, bx.im_hi}};
}

CInterval cinv(const CInterval& z) {
  // Enclosure of 1/z for a box not containing 0.
  Interval n = z.norm2();
  if (n.lo <= 0) fail(ErrorCode::InvalidArgument, "interval inverse near zero");
  Interval inv{1 / n.hi, 1 / n.lo};
  return {z.re * inv, (-z.im) * inv};
}

void certify_coverage(const DigitSelector& sel) {
  const Field& f = sel.field;
  std::vector<CInterval> digit_boxes;
  bool exact = f->exact_beta().has_value();
  for (const auto& d : sel.digits) {
    digit_boxes.push_back(value_box(d, 96));
    if (!exact_value(d)) exact = false;
  }
  if (sel.kind == SelectorKind::ThurstonPolygon && exact) {
    RatComplex b = *f->exact_beta();
    Polygon target;
    for (const auto& v : sel.polygon) target.push_back(b * v);
    std::vector<Polygon> rest{convex_hull(target)};
    for (const auto& d : sel.digits) {
      RatComplex a = *exact_value(d);
      Polygon shifted;
      for (const auto& v : sel.polygon) shifted.push_back(v + a);
      std::vector<Polygon> next;
      for (const auto& piece : rest)
        for (auto& q : polygon_subtract(piece, shifted)) next.push_back(std::move(q));
      rest = std::move(next);
      if (rest.empty()) return;
    }
    if (!rest.empty()) fail(ErrorCode::CoverageFails, "beta * Omega is not covered by the digit translates of Omega");
    return;
  }
  // Cell subdivision over a bounding box of beta * Omega.
  CInterval bi = beta_interval(f, 96);
  CInterval binv = cinv(bi);
  CInterval start;
  if (sel.kind == SelectorKind::ThurstonDisk) {
    BigRational m = sel.radius * upper_abs_beta(f);
    start = {{-m, m}, {-m, m}};
  } else {
    bool init = false;
    for (const auto& v : sel.polygon) {
      CInterval w = bi * point_interval(v);
      if (!init) {
        start = w;
        init = true;
      } else {
        start.re = {std::min(start.re.lo, w.re.lo), std::max(start.re.hi, w.re.hi)};
        start.im = {std::min(start.im.lo, w.im.lo), std::max(start.im.hi, w.im.hi)};
      }
    }
  }
  std::vector<CInterval> stack{start};
  long budget = 1L << 16;
  while (!stack.empty()) {
    CInterval cell = stack.back();
    stack.pop_back();
    if (--budget < 0) fail(ErrorCode::CoverageFails, "coverage could not be certified within the cell budget");
    // Outside beta * Omega?
    CInterval pre;
    bool init = false;
    for (const auto& corner : rect_polygon(cell)) {
      CInterval w = binv * point_interval(corner);
      if (!init) {
        pre = w;
        init = true;
      } else {
        pre.re = {std::min(pre.re.lo, w.re.lo), std::max(pre.re.hi, w.re.hi)};
        pre.im = {std::min(pre.im.lo, w.im.lo), std::max(pre.im.hi, w.im.hi)};
      }
    }
    bool outside = false;
    if (sel.kind == SelectorKind::ThurstonDisk) {
      BigRational rb = sel.radius * upper_abs_beta(f);
      outside = cell.norm2().lo > rb * rb;
    } else if (exact) {
      Polygon img;
      RatComplex binv_exact = RatComplex{1, 0} / *f->exact_beta();
      for (const auto& corner : rect_polygon(cell)) img.push_back(binv_exact * corner);
      outside = convex_disjoint(convex_hull(img), sel.polygon);
    } else {
      outside = rect_vs_region(sel, pre) == Tri::Outside;
    }
    if (outside) continue;
    bool covered = false;
    for (const auto& a : digit_boxes) {
      CInterval shifted{{cell.re.lo - a.re.hi, cell.re.hi - a.re.lo}, {cell.im.lo - a.im.hi, cell.im.hi - a.im.lo}};
      if (rect_vs_region(sel, shifted) == Tri::Inside) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    if (exact) {
      // An exact witness point refutes coverage immediately.
      RatComplex mid{cell.re.mid(), cell.im.mid()};
      RatComplex pre_mid = RatComplex{1, 0} / *f->exact_beta() * mid;
      if (point_in_complex_region(sel, pre_mid, nullptr)) {
        bool hit = false;
        for (const auto& d : sel.digits)
          if (point_in_complex_region(sel, mid - *exact_value(d), nullptr)) {
            hit = true;
            break;
          }
        if (!hit) fail(ErrorCode::CoverageFails, "beta * Omega is not covered by the digit translates of Omega");
      }
    }
    BigRational mr = cell.re.mid(), mi = cell.im.mid();
    stack.push_back({{cell.re.lo, mr}, {cell.im.lo, mi}});
    stack.push_back({{mr, cell.re.hi}, {cell.im.lo, mi}});
    stack.push_back({{cell.re.lo, mr}, {mi, cell.im.hi}});
    stack.push_back({{mr, cell.re.hi}, {mi, cell.im.hi}});
  }
}

void require_real_positive(const Field& f) {
  if (!f->beta_is_real() || f->beta_box().re_lo < 0) fail(ErrorCode::NotRealBase, "selector needs a real base beta > 1");
}

}  // namespace

bool polygon_contains(const Polygon& p, const RatComplex& z) {
  std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    if (side(p[i], p[(i + 1) % n], z) < 0) return false;
  return true;
}

bool polygon_on_boundary(const Polygon& p, const RatComplex& z) {
  if (!polygon_contains(p, z)) return false;
  std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    if (side(p[i], p[(i + 1) % n], z) == 0) return true;
  return false;
}

BigRational polygon_area2(const Polygon& p) {
  BigRational a = 0;
  for (std::size_t i = 0; i < p.size(); ++i) a += cross(p[i], p[(i + 1) % p.size()]);
  return a;
}

std::vector<Polygon> polygon_subtract(const Polygon& p, const Polygon& q) {
  std::vector<Polygon> out;
  Polygon cur = p;
  std::size_t n = q.size();
  for (std::size_t i = 0; i < n && cur.size() >= 3; ++i) {
    Polygon outside = clip(cur, q[i], q[(i + 1) % n], -1);
    if (outside.size() >= 3 && polygon_area2(outside) > 0) out.push_back(outside);
    cur = clip(cur, q[i], q[(i + 1) % n], +1);
    if (cur.size() < 3 || polygon_area2(cur) == 0) break;
  }
  return out;
}

std::vector<FieldElement> integer_digits(const Field& field, const std::vector<long>& values) {
  std::vector<FieldElement> out;
  for (long v : values) out.push_back(FieldElement::from_rational(field, v));
  return out;
}

FieldElement gaussian_element(const Field& field, const BigRational& re, const BigRational& im) {
  FieldElement r = FieldElement::from_rational(field, re);
  if (im == 0) return r;
  const auto& b = field->exact_beta();
  if (!b || b->im == 0) fail(ErrorCode::InvalidArgument, "field does not expose i through a Gaussian-rational base");
  FieldElement i = BigRational(1) / b->im * (FieldElement::beta(field) - FieldElement::from_rational(field, b->re));
  return r + im * i;
}

DigitSelector greedy_selector(const Field& field) {
  require_real_positive(field);
  DigitSelector s;
  s.kind = SelectorKind::Greedy;
  s.field = field;
  FieldElement beta = FieldElement::beta(field);
  BigInt top = -floor_real(-beta);  // ceil
  for (BigInt a = 0; a < top; ++a) s.digits.push_back(FieldElement::from_rational(field, BigRational(a)));
  s.lo = FieldElement(field);
  s.hi = FieldElement::from_rational(field, 1);
  s.c = 1;
  return s;
}

DigitSelector balanced_selector(const Field& field) {
  require_real_positive(field);
  DigitSelector s;
  s.kind = SelectorKind::Balanced;
  s.field = field;
  // Digits attained by floor(beta x + 1/2) on [-1/2, 1/2): |a| < (beta + 1) / 2.
  FieldElement reach = BigRational(1, 2) * (FieldElement::beta(field) + FieldElement::from_rational(field, 1));
  BigInt hi = -floor_real(-reach) - 1;
  BigInt lo = -hi;
  for (BigInt a = lo; a <= hi; ++a) s.digits.push_back(FieldElement::from_rational(field, BigRational(a)));
  s.lo = FieldElement::from_rational(field, BigRational(-1, 2));
  s.hi = FieldElement::from_rational(field, BigRational(1, 2));
  s.c = BigRational(1, 2);
  return s;
}

DigitSelector ito_sadahiro_selector(const Field& field) {
  if (!field->beta_is_real() || field->beta_box().re_hi > 0)
    fail(ErrorCode::NotNegativeRealBase, "Ito-Sadahiro selector needs a negative real base");
  DigitSelector s;
  s.kind = SelectorKind::ItoSadahiro;
  s.field = field;
  FieldElement b = FieldElement::beta(field), one = FieldElement::from_rational(field, 1);
  FieldElement alpha = -b;
  BigInt top = floor_real(alpha);
  for (BigInt a = 0; a <= top; ++a) s.digits.push_back(FieldElement::from_rational(field, BigRational(a)));
  s.lo = -(alpha / (alpha + one));
  s.hi = s.lo + one;
  BigRational alpha_upper = -field->beta_box().re_lo;
  s.c = 1 / (alpha_upper + 1);
  return s;
}

namespace {

DigitSelector thurston_common(const Field& field, std::vector<FieldElement> digits) {
  if (field->beta_is_real()) fail(ErrorCode::InvalidArgument, "Thurston selectors need a non-real base");
  if (digits.empty()) fail(ErrorCode::InvalidArgument, "empty digit set");
  DigitSelector s;
  s.field = field;
  for (const auto& d : digits)
    if (!same_field(d.field(), field)) fail(ErrorCode::FieldMismatch, "digit from another field");
  sort_digits(digits);
  s.digits = digits;
  s.integer_digits = std::all_of(digits.begin(), digits.end(), [](const FieldElement& d) {
    auto r = d.as_rational();
    return r && r->get_den() == 1;
  });
  return s;
}

}  // namespace

DigitSelector thurston_disk_selector(const Field& field, const std::vector<FieldElement>& digits, const BigRational& radius) {
  if (radius <= 0) fail(ErrorCode::InvalidArgument, "disk radius must be positive");
  DigitSelector s = thurston_common(field, digits);
  s.kind = SelectorKind::ThurstonDisk;
  s.radius = radius;
  s.c = std::min<BigRational>(radius, min_nonzero_digit_modulus(s.digits) / 2);
  certify_coverage(s);
  return s;
}

DigitSelector thurston_polygon_selector(const Field& field, const std::vector<FieldElement>& digits, const Polygon& vertices) {
  DigitSelector s = thurston_common(field, digits);
  s.kind = SelectorKind::ThurstonPolygon;
  s.polygon = convex_hull(vertices);
  if (s.polygon.size() < 3) fail(ErrorCode::InvalidArgument, "polygon region needs three non-collinear vertices");
  RatComplex origin{0, 0};
  if (!polygon_contains(s.polygon, origin) || polygon_on_boundary(s.polygon, origin))
    fail(ErrorCode::InvalidArgument, "polygon region must contain 0 in its interior");
  BigRational inr;
  bool first = true;
  for (std::size_t i = 0; i < s.polygon.size(); ++i) {
    const RatComplex& p = s.polygon[i];
    const RatComplex& q = s.polygon[(i + 1) % s.polygon.size()];
    BigRational num = side(p, q, origin);
    BigRational dist = num / sqrt_upper((q - p).norm2(), 32);
    if (first || dist < inr) inr = dist;
    first = false;
  }
  s.c = std::min<BigRational>(inr, min_nonzero_digit_modulus(s.digits) / 2);
  certify_coverage(s);
  return s;
}

DigitSelector thurston_default_selector(const Field& field) {
  BigRational reach = upper_abs_beta(field) + 1;
  BigInt m = floor(reach);
  std::vector<FieldElement> digits;
  BigRational abs_beta_lower = field->exact_beta() ? sqrt_lower(field->exact_beta()->norm2(), 32)
                                                   : field->beta_box().modulus_lower(32);
  for (BigInt x = -m; x <= m; ++x) {
    for (BigInt y = -m; y <= m; ++y) {
      BigRational n2(x * x + y * y);
      // B(x + iy, 1) meets B(0, |beta|) iff |x + iy| < |beta| + 1.
      BigRational lim = abs_beta_lower + 1;
      if (n2 < lim * lim) digits.push_back(gaussian_element(field, BigRational(x), BigRational(y)));
    }
  }
  return thurston_disk_selector(field, digits, 1);
}

bool in_region(const DigitSelector& sel, const FieldElement& x, bool* ambiguous) {
  if (ambiguous) *ambiguous = false;
  if (is_real_kind(sel.kind)) return sign_real(x - sel.lo) >= 0 && sign_real(sel.hi - x) > 0;
  if (auto v = exact_value(x)) return point_in_complex_region(sel, *v, nullptr);
  for (unsigned bits = 32; bits <= 256; bits *= 2) {
    Tri t = rect_vs_region(sel, embed(x, BigRational(1, pow(BigInt(2), bits))));
    if (t == Tri::Inside) return true;
    if (t == Tri::Outside) return false;
  }
  if (ambiguous) *ambiguous = true;
  return true;
}

namespace {

std::size_t digit_index(const DigitSelector& sel, const BigInt& a) {
  for (std::size_t i = 0; i < sel.digits.size(); ++i)
    if (sel.digits[i].num()[0] == a && sel.digits[i].den() == 1 && sel.digits[i].as_rational()) return i;
  fail(ErrorCode::NotRepresentable, "digit " + to_string(a) + " outside the selector alphabet");
}

}  // namespace

DigitChoice select_digit(const DigitSelector& sel, const FieldElement& x) {
  const Field& f = sel.field;
  FieldElement bx = FieldElement::beta(f) * x;
  switch (sel.kind) {
    case SelectorKind::Greedy: return {digit_index(sel, floor_real(bx)), false};
    case SelectorKind::Balanced:
      return {digit_index(sel, floor_real(bx + FieldElement::from_rational(f, BigRational(1, 2)))), false};
    case SelectorKind::ItoSadahiro: return {digit_index(sel, floor_real(bx - sel.lo)), false};
    default: break;
  }
  std::optional<RatComplex> exact = exact_value(bx);
  bool exact_digits = exact.has_value();
  DigitChoice best;
  bool found = false;
  BigRational best_d;
  bool best_boundary = false;
  for (std::size_t i = 0; i < sel.digits.size(); ++i) {
    FieldElement w = bx - sel.digits[i];
    BigRational dist;
    bool boundary = false, amb = false;
    if (exact_digits) {
      auto wv = exact_value(w);
      if (!point_in_complex_region(sel, *wv, &boundary)) continue;
      dist = wv->norm2();
    } else {
      if (!in_region(sel, w, &amb)) continue;
      CInterval b = embed(w, BigRational(1, pow(BigInt(2), 64)));
      dist = RatComplex{b.re.mid(), b.im.mid()}.norm2();
      boundary = amb;
    }
    if (!found || dist < best_d) {
      found = true;
      best_d = dist;
      best = DigitChoice{i, amb};
      best_boundary = boundary;
    }
  }
  if (!found) fail(ErrorCode::CoverageFails, "no admissible digit for beta * x");
  best.ambiguous = best.ambiguous || best_boundary;
  return best;
}

ScaleResult scale_into_domain(const DigitSelector& sel, const FieldElement& x) {
  if (sel.kind == SelectorKind::Greedy && sign_real(x) < 0)
    fail(ErrorCode::NotRepresentable, "the greedy selector represents only nonnegative numbers");
  if (x.is_zero()) return {0, x};
  FieldElement inv = FieldElement::beta(sel.field).inverse();
  FieldElement y = x;
  for (long n = 0; n < 100000; ++n) {
    if (in_region(sel, y)) return {n, y};
    y = y * inv;
  }
  fail(ErrorCode::NotRepresentable, "could not scale " + x.to_string() + " into the selector region");
}

Representation orbit_periodize(const DigitSelector& sel, const FieldElement& x, long max_steps, OrbitTrace* trace) {
  if (!same_field(x.field(), sel.field)) fail(ErrorCode::FieldMismatch, "value and selector use different fields");
  if (trace) *trace = OrbitTrace{};
  if (x.is_zero()) return Representation{};
  ScaleResult sc = scale_into_domain(sel, x);
  if (trace) trace->n_scale = sc.n;
  FieldElement beta = FieldElement::beta(sel.field);
  std::unordered_map<FieldElement, long, FieldElementHash> seen;
  std::vector<std::size_t> digits;
  FieldElement t = sc.scaled;
  seen.emplace(t, 0);
  for (long k = 1; k <= max_steps; ++k) {
    DigitChoice ch = select_digit(sel, t);
    if (trace) trace->steps.push_back(OrbitStep{t, ch.index, ch.ambiguous});
    t = beta * t - sel.digits[ch.index];
    digits.push_back(ch.index);
    auto [it, inserted] = seen.emplace(t, k);
    if (inserted) continue;
    long j = it->second;
    if (trace) trace->repeat = std::make_pair(j, k);
    IndexRepresentation ir;
    ir.L = sc.n - 1;
    for (long i = 0; i < j; ++i) ir.preperiod.push_back(static_cast<int>(digits[i]));
    for (long i = j; i < k; ++i) ir.period.push_back(static_cast<int>(digits[i]));
    if (sel.integer_digits) {
      Representation r;
      r.L = ir.L;
      for (int i : ir.preperiod) r.preperiod.push_back(sel.digits[i].num()[0]);
      for (int i : ir.period) r.period.push_back(sel.digits[i].num()[0]);
      return canonicalize(r);
    }
    FieldAlphabet fa = FieldAlphabet::from_digits(sel.digits);
    if (fa.Q != 1) fail(ErrorCode::NotRepresentable, "field digits need a common denominator of 1 for integer output");
    return reduce_alphabet_to_integers(sel.field, fa, ir).rep;
  }
  fail(ErrorCode::NoRepeatWithinBudget, "no repeated remainder within " + std::to_string(max_steps) + " steps");
}

}  // namespace perbase
