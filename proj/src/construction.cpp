#include "mrlrc/construction.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "mrlrc/rng.hpp"

namespace mrlrc {

namespace {
std::uint32_t ceil_div(std::uint32_t x, std::uint32_t y) { return (x + y - 1) / y; }
}  // namespace

FieldShape derive_field_shape(std::uint32_t n, std::uint32_t r, std::uint32_t h,
                              std::uint32_t a, std::uint32_t g) {
  if (g < 2) throw InvalidParams("need at least two local groups (g >= 2)");
  if (a < 1) throw InvalidParams("need at least one local parity per group (a >= 1)");
  if (h < 1) throw InvalidParams("need at least one global parity (h >= 1)");
  if (r < 1 || n != static_cast<std::uint64_t>(g) * r) {
    throw InvalidParams("code length mismatch: n must equal g*r, got n=" + std::to_string(n) +
                        ", g*r=" + std::to_string(static_cast<std::uint64_t>(g) * r));
  }
  const std::uint32_t t = a + ceil_div(h, g);
  if (t > r) {
    throw InvalidParams("group size too small: need r >= t = a + ceil(h/g) = " +
                        std::to_string(t) + ", got r = " + std::to_string(r));
  }
  FieldShape shape;
  shape.t = t;
  shape.m = h + g * a - t;
  shape.q = smallest_prime_geq(n);
  return shape;
}

CodeParams derive_params(std::uint32_t n, std::uint32_t r, std::uint32_t h,
                         std::uint32_t a, std::uint32_t g) {
  const FieldShape shape = derive_field_shape(n, r, h, a, g);
  if (n < g * a + h + 1) {
    throw InvalidParams("no information symbols: k = n - ga - h must be >= 1");
  }
  CodeParams p;
  p.n = n;
  p.r = r;
  p.h = h;
  p.a = a;
  p.g = g;
  p.t = shape.t;
  p.m = shape.m;
  p.k = n - g * a - h;
  p.q = shape.q;
  return p;
}

EvaluationPoints evaluation_points(const CodeParams& params) {
  EvaluationPoints pts;
  pts.x.assign(params.g, std::vector<std::uint64_t>(params.r));
  for (std::uint32_t i = 0; i < params.g; ++i) {
    for (std::uint32_t j = 0; j < params.r; ++j) {
      pts.x[i][j] = static_cast<std::uint64_t>(i) * params.r + j;
    }
  }
  return pts;
}

EvaluationPoints evaluation_points(const CodeParams& params, std::uint64_t shuffle_seed) {
  // Partial Fisher-Yates over [0, q) with a sparse view, so only O(n) memory
  // is touched even for large base fields.
  Rng rng(shuffle_seed);
  std::unordered_map<std::uint64_t, std::uint64_t> moved;
  auto look = [&](std::uint64_t idx) {
    auto it = moved.find(idx);
    return it == moved.end() ? idx : it->second;
  };
  EvaluationPoints pts;
  pts.x.assign(params.g, std::vector<std::uint64_t>(params.r));
  for (std::uint32_t i = 0; i < params.n; ++i) {
    const std::uint64_t j = i + rng.below(params.q - i);
    const std::uint64_t value = look(j);
    moved[j] = look(i);
    pts.x[i / params.r][i % params.r] = value;
  }
  return pts;
}

bool points_distinct(const EvaluationPoints& points) {
  std::vector<std::uint64_t> all;
  for (const auto& row : points.x) all.insert(all.end(), row.begin(), row.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

Matrix build_local_parity(const FieldPtr& base, const std::vector<std::uint64_t>& group_points,
                          std::uint32_t a) {
  std::vector<FieldElement> pts;
  pts.reserve(group_points.size());
  for (auto x : group_points) pts.push_back(base->from_base(x));
  return vandermonde(base, pts, 0, a);
}

FieldElement build_beta(const FieldPtr& ext, std::uint64_t x, std::uint32_t t) {
  Coeffs c(ext->degree());
  for (std::uint32_t l = 0; l < ext->degree(); ++l) {
    c[l] = ext->base_pow(x, t + l);
  }
  return ext->from_coords(std::move(c));
}

GlobalParity build_global_parity(const FieldPtr& base, const FieldPtr& ext,
                                 const std::vector<std::uint64_t>& group_points,
                                 const CodeParams& params) {
  GlobalParity out;
  std::vector<FieldElement> pts;
  pts.reserve(group_points.size());
  for (auto x : group_points) pts.push_back(base->from_base(x));
  out.vandermonde_rows = vandermonde(base, pts, params.a, params.t - params.a);
  out.betas.reserve(group_points.size());
  for (auto x : group_points) out.betas.push_back(build_beta(ext, x, params.t));
  out.gabidulin_rows = moore(ext, out.betas, params.h + params.a - params.t);
  return out;
}

Matrix assemble_H(const CodeParams& params, const FieldPtr& ext,
                  const std::vector<Matrix>& local,
                  const std::vector<Matrix>& vandermonde_rows,
                  const std::vector<Matrix>& gabidulin_rows) {
  const std::uint32_t rows = params.parity_rows();
  Matrix H(ext, rows, params.n);
  for (std::uint32_t i = 0; i < params.g; ++i) {
    const Matrix a_lift = local[i].lifted(ext);
    for (std::uint32_t u = 0; u < params.a; ++u) {
      for (std::uint32_t j = 0; j < params.r; ++j) {
        std::copy(a_lift.cell(u, j), a_lift.cell(u, j) + ext->degree(),
                  H.cell(i * params.a + u, i * params.r + j));
      }
    }
    const Matrix v_lift = vandermonde_rows[i].lifted(ext);
    for (std::uint32_t u = 0; u < params.t - params.a; ++u) {
      for (std::uint32_t j = 0; j < params.r; ++j) {
        std::copy(v_lift.cell(u, j), v_lift.cell(u, j) + ext->degree(),
                  H.cell(params.g * params.a + u, i * params.r + j));
      }
    }
    for (std::uint32_t u = 0; u < params.h + params.a - params.t; ++u) {
      for (std::uint32_t j = 0; j < params.r; ++j) {
        std::copy(gabidulin_rows[i].cell(u, j), gabidulin_rows[i].cell(u, j) + ext->degree(),
                  H.cell(params.g * params.a + (params.t - params.a) + u, i * params.r + j));
      }
    }
  }
  return H;
}

ParityCheck assemble_parity(const CodeParams& params, const EvaluationPoints& points) {
  if (points.x.size() != params.g) throw InvalidParams("point grid has wrong group count");
  for (const auto& row : points.x) {
    if (row.size() != params.r) throw InvalidParams("point grid has wrong group size");
  }
  ParityCheck pc;
  pc.params = params;
  pc.base = Field::prime(params.q);
  pc.ext = Field::extension(params.q, params.m);
  pc.points = points;
  for (std::uint32_t i = 0; i < params.g; ++i) {
    pc.local.push_back(build_local_parity(pc.base, points.x[i], params.a));
    GlobalParity gp = build_global_parity(pc.base, pc.ext, points.x[i], params);
    pc.vandermonde_rows.push_back(std::move(gp.vandermonde_rows));
    pc.gabidulin_rows.push_back(std::move(gp.gabidulin_rows));
    pc.betas.push_back(std::move(gp.betas));
  }
  pc.H = assemble_H(params, pc.ext, pc.local, pc.vandermonde_rows, pc.gabidulin_rows);
  return pc;
}

}  // namespace mrlrc
