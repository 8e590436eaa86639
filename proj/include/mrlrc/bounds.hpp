#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrlrc/construction.hpp"

namespace mrlrc {

/// Exact exponents; several published bounds have fractional intermediates.
using Rational = boost::rational<long long>;

/// One field-size upper bound O(base)^exponent, applicable to the given
/// parameters. Hidden constants are ignored everywhere: comparisons are by
/// exponent only, which is the right call in the constant-g regime where
/// r and max(n/r, r) are both Theta(n).
struct BoundValue {
  std::string name;
  std::string base;    // "n", "r" or "max(n/r,r)"
  Rational exponent;
  bool tilde = false;  // soft-O
  std::string source;  // literature tag
  std::string note;
};

/// h + (g-1)a - ceil(h/g): the exponent this construction achieves.
long long exponent_this_paper(std::uint32_t h, std::uint32_t a, std::uint32_t g);

BoundValue this_construction_bound(const CodeParams& params);

/// The skew-polynomial construction: (O(max{n/r, r}))^min{h, r-a}.
BoundValue gg22_bound(const CodeParams& params);

/// Every special-regime bound whose side condition the parameters satisfy.
std::vector<BoundValue> table1_bounds(const CodeParams& params);

bool is_prime_power(std::uint64_t x);
std::uint64_t smallest_prime_power_geq(std::uint64_t x);

/// Known lower bounds on the required field size, for h >= 2:
///   q >= Omega(n * r^alpha), alpha = min{a, h-2*ceil(h/g)} / ceil(h/g),
/// clamped at 0, plus the simplification min{ag/h, g-2} when g divides h.
struct LowerBounds {
  Rational alpha;
  std::optional<Rational> g_divides_h;
};

LowerBounds lower_bound_exponent(const CodeParams& params);  // throws HNotApplicable for h < 2

struct Comparison {
  CodeParams params;
  std::vector<BoundValue> upper_bounds;  // [0] this construction, [1] GG22, then table rows
  Rational best_exponent;
  bool this_construction_best = false;  // no applicable bound has a smaller exponent
  bool beats_gg22 = false;              // strictly smaller exponent than GG22
  std::optional<LowerBounds> lower;     // absent when h < 2
  std::vector<std::string> footnotes;
};

Comparison compare(const CodeParams& params);

std::string format_comparison(const Comparison& cmp);
std::string comparison_json(const Comparison& cmp);

}  // namespace mrlrc
