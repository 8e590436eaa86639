#include "mrlrc/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace mrlrc {

namespace {

long long ceil_div_ll(long long x, long long y) { return (x + y - 1) / y; }

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  if (r.denominator() == 1) {
    os << r.numerator();
  } else {
    os << r.numerator() << "/" << r.denominator();
  }
  return os.str();
}

Rational rational_ceil(const Rational& r) {
  const long long num = r.numerator(), den = r.denominator();
  return Rational(num >= 0 ? ceil_div_ll(num, den) : -((-num) / den), 1);
}

}  // namespace

long long exponent_this_paper(std::uint32_t h, std::uint32_t a, std::uint32_t g) {
  return static_cast<long long>(h) + static_cast<long long>(g - 1) * a - ceil_div_ll(h, g);
}

BoundValue this_construction_bound(const CodeParams& p) {
  return BoundValue{"this construction", "n", Rational(exponent_this_paper(p.h, p.a, p.g)),
                    false, "here", ""};
}

BoundValue gg22_bound(const CodeParams& p) {
  const long long exp = std::min<long long>(p.h, static_cast<long long>(p.r) - p.a);
  return BoundValue{"skew polynomials", "max(n/r,r)", Rational(exp), false, "GG22", ""};
}

bool is_prime_power(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) {
      while (x % d == 0) x /= d;
      return x == 1;
    }
  }
  return true;  // prime
}

std::uint64_t smallest_prime_power_geq(std::uint64_t x) {
  std::uint64_t k = std::max<std::uint64_t>(x, 2);
  while (!is_prime_power(k)) ++k;
  return k;
}

std::vector<BoundValue> table1_bounds(const CodeParams& p) {
  std::vector<BoundValue> rows;
  if (p.h <= 1) {
    rows.push_back({"h<=1", "r", Rational(1), false, "BHH13", ""});
  }
  if (p.a == 1) {
    rows.push_back({"a=1", "n",
                    Rational(static_cast<long long>(p.h) - ceil_div_ll(p.h, p.g) + p.g - 1),
                    false, "HY16", ""});
  }
  if (p.a == 1 && p.g == 2 && p.h % 4 == 0) {
    rows.push_back({"a=1,g=2,h=0 mod 4", "n", Rational(p.h / 2), false, "HY16", ""});
  }
  if (p.h == 2) {
    rows.push_back({"h=2", "n", Rational(1), false, "GGY20", ""});
  }
  if (p.h == 3) {
    rows.push_back({"h=3", "n", Rational(3), false, "GGY20", ""});
  }
  if (p.h == 3 && p.a == 1 && p.r == 3) {
    rows.push_back({"h=3,a=1,r=3", "n", Rational(1), true, "GGY20", ""});
  }
  if (p.a == 1) {
    const std::uint64_t q0 = smallest_prime_power_geq(static_cast<std::uint64_t>(p.g) + 1);
    const Rational inner =
        Rational(std::min<long long>(p.h, static_cast<long long>(p.r) - 1)) *
        (Rational(1) - Rational(1, static_cast<long long>(q0)));
    rows.push_back({"a=1 (q0=" + std::to_string(q0) + ")", "n", rational_ceil(inner), false,
                    "GG22", ""});
  }
  return rows;
}

LowerBounds lower_bound_exponent(const CodeParams& p) {
  if (p.h < 2) {
    throw HNotApplicable("the field-size lower bound is stated for h >= 2");
  }
  const long long hg = ceil_div_ll(p.h, p.g);
  const long long num = std::min<long long>(p.a, static_cast<long long>(p.h) - 2 * hg);
  LowerBounds lb;
  lb.alpha = num <= 0 ? Rational(0) : Rational(num, hg);
  if (p.h % p.g == 0) {
    lb.g_divides_h = std::min(Rational(static_cast<long long>(p.a) * p.g, p.h),
                              Rational(static_cast<long long>(p.g) - 2));
  }
  return lb;
}

Comparison compare(const CodeParams& p) {
  Comparison cmp;
  cmp.params = p;
  cmp.upper_bounds.push_back(this_construction_bound(p));
  cmp.upper_bounds.push_back(gg22_bound(p));
  for (auto& row : table1_bounds(p)) cmp.upper_bounds.push_back(row);

  cmp.best_exponent = cmp.upper_bounds[0].exponent;
  for (const auto& b : cmp.upper_bounds) {
    cmp.best_exponent = std::min(cmp.best_exponent, b.exponent);
  }
  cmp.this_construction_best = cmp.upper_bounds[0].exponent == cmp.best_exponent;
  cmp.beats_gg22 = cmp.upper_bounds[0].exponent < cmp.upper_bounds[1].exponent;

  if (p.h >= 2) cmp.lower = lower_bound_exponent(p);

  if (p.a == 1) {
    const long long table_exp =
        static_cast<long long>(p.h) - ceil_div_ll(p.h, p.g) + p.g - 1;
    const long long intro_exp = static_cast<long long>(p.h) - ceil_div_ll(p.h, p.g) + 1;
    if (table_exp != intro_exp) {
      cmp.footnotes.push_back(
          "the HY16 a=1 bound is quoted both as n^" + std::to_string(intro_exp) + " and O(n)^" +
          std::to_string(table_exp) +
          " in the literature; they disagree for g > 2 and the table uses the latter");
    }
  }
  return cmp;
}

std::string format_comparison(const Comparison& cmp) {
  std::ostringstream os;
  const CodeParams& p = cmp.params;
  os << "field-size bounds for (n=" << p.n << ", r=" << p.r << ", h=" << p.h << ", a=" << p.a
     << ", g=" << p.g << ")\n";
  os << "exponents compared directly: with g constant, r and max(n/r,r) are Theta(n)\n\n";
  for (const auto& b : cmp.upper_bounds) {
    const bool best = b.exponent == cmp.best_exponent;
    os << (best ? "  * " : "    ");
    os << (b.tilde ? "~O(" : "O(") << b.base << ")^" << rational_str(b.exponent);
    os << "   [" << b.source << "] " << b.name;
    if (!b.note.empty()) os << "  (" << b.note << ")";
    os << "\n";
  }
  os << "\n  this construction " << (cmp.this_construction_best ? "matches the best" : "is beaten")
     << " among the applicable upper bounds";
  os << (cmp.beats_gg22 ? "; strictly better than GG22\n" : "; not better than GG22\n");
  if (cmp.lower) {
    os << "  lower bound: q >= Omega(n * r^" << rational_str(cmp.lower->alpha) << ")";
    if (cmp.lower->g_divides_h) {
      os << ", g | h form: q >= Omega(n * r^" << rational_str(*cmp.lower->g_divides_h) << ")";
    }
    os << "\n";
  } else {
    os << "  lower bound: stated only for h >= 2\n";
  }
  for (const auto& f : cmp.footnotes) os << "  note: " << f << "\n";
  return os.str();
}

std::string comparison_json(const Comparison& cmp) {
  nlohmann::json j;
  j["params"] = {{"n", cmp.params.n}, {"r", cmp.params.r}, {"h", cmp.params.h},
                 {"a", cmp.params.a}, {"g", cmp.params.g}};
  j["upper_bounds"] = nlohmann::json::array();
  for (const auto& b : cmp.upper_bounds) {
    j["upper_bounds"].push_back({{"name", b.name},
                                 {"base", b.base},
                                 {"exponent", rational_str(b.exponent)},
                                 {"tilde", b.tilde},
                                 {"source", b.source},
                                 {"best", b.exponent == cmp.best_exponent}});
  }
  j["best_exponent"] = rational_str(cmp.best_exponent);
  j["this_construction_best"] = cmp.this_construction_best;
  j["beats_gg22"] = cmp.beats_gg22;
  if (cmp.lower) {
    j["lower_bound"] = {{"alpha", rational_str(cmp.lower->alpha)}};
    if (cmp.lower->g_divides_h) {
      j["lower_bound"]["g_divides_h"] = rational_str(*cmp.lower->g_divides_h);
    }
  }
  j["footnotes"] = cmp.footnotes;
  return j.dump(2);
}

}  // namespace mrlrc
