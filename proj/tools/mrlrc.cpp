// mrlrc: construct, certify and use maximally recoverable local
// reconstruction codes over small fields.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mrlrc/bounds.hpp"
#include "mrlrc/descriptor.hpp"
#include "mrlrc/rng.hpp"
#include "mrlrc/verify.hpp"

namespace {

using namespace mrlrc;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitBudget = 2;
constexpr int kExitHash = 3;
constexpr int kExitBadInput = 4;

std::string u128_str(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string field_size_str(std::uint64_t q, std::uint32_t m) {
  unsigned __int128 v = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    if (v > (static_cast<unsigned __int128>(-1)) / q) {
      return std::to_string(q) + "^" + std::to_string(m);
    }
    v *= q;
  }
  return u128_str(v);
}

std::string pattern_str(const ErasurePattern& p) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < p.positions.size(); ++i) os << (i ? "," : "") << p.positions[i];
  os << "}";
  return os.str();
}

json report_to_json(const VerificationReport& rep) {
  json j;
  j["mode"] = rep.mode;
  j["total_patterns"] = rep.total_patterns;
  j["checked"] = rep.checked;
  j["failure_count"] = rep.failure_count;
  j["pass"] = rep.pass();
  j["elapsed_ms"] = rep.elapsed.count();
  if (rep.mode == "sampled") {
    j["seed"] = rep.seed;
    j["trials"] = rep.trials;
  }
  j["failures"] = json::array();
  for (std::size_t i = 0; i < rep.failures.size(); ++i) {
    json f;
    f["positions"] = rep.failures[i].positions;
    if (i < rep.notes.size() && !rep.notes[i].empty()) f["note"] = rep.notes[i];
    j["failures"].push_back(f);
  }
  return j;
}

std::uint64_t env_budget(std::uint64_t fallback) {
  const char* s = std::getenv("MRLRC_PATTERN_BUDGET");
  if (s == nullptr || *s == '\0') return fallback;
  return std::strtoull(s, nullptr, 10);
}

int cmd_construct(std::uint32_t n, std::uint32_t r, std::uint32_t h, std::uint32_t a,
                  std::uint32_t g, const std::string& out, bool emit_matrix,
                  std::int64_t shuffle_seed) {
  const CodeParams params = derive_params(n, r, h, a, g);
  const EvaluationPoints points =
      shuffle_seed >= 0 ? evaluation_points(params, static_cast<std::uint64_t>(shuffle_seed))
                        : evaluation_points(params);
  const MrLrcCode code = make_code(assemble_parity(params, points));
  const CodeDescriptor desc = make_descriptor(code, emit_matrix);
  save_descriptor(desc, out);
  std::cout << "constructed (n=" << n << ", r=" << r << ", h=" << h << ", a=" << a
            << ", g=" << g << ")\n"
            << "  t = " << params.t << ", m = " << params.m << ", q = " << params.q
            << ", k = " << params.k << "\n"
            << "  field size q^m = " << params.q << "^" << params.m << " = "
            << field_size_str(params.q, params.m) << "\n"
            << "  maximal erasure patterns: " << count_maximal_patterns(params) << "\n"
            << "  descriptor: " << out << " (sha256 " << desc.hash_hex.substr(0, 16) << "...)\n";
  return kExitOk;
}

int cmd_verify(const std::string& path, const std::string& mode, std::uint64_t trials,
               std::uint64_t seed, std::uint32_t jobs, bool force, std::uint64_t budget,
               const std::string& report_path) {
  CodeDescriptor desc;
  try {
    desc = load_descriptor(path, force);
  } catch (const HashMismatch& e) {
    std::cerr << "error: " << e.what() << "\n(use --force to verify anyway)\n";
    return kExitHash;
  }
  const ParityCheck parity = parity_from_descriptor(desc);

  VerifyOptions options;
  options.budget = budget;
  options.jobs = jobs;

  bool mds_ok = true;
  std::string mds_witness;
  if (mode != "sampled") {
    if (auto viol = find_local_mds_violation(parity)) {
      mds_ok = false;
      std::ostringstream os;
      os << "local MDS violated in group " << viol->first << ", columns {";
      for (std::size_t i = 0; i < viol->second.size(); ++i) {
        os << (i ? "," : "") << viol->second[i];
      }
      os << "}";
      mds_witness = os.str();
    }
  }

  VerificationReport rep;
  try {
    if (mode == "exhaustive") {
      rep = verify_mr_exhaustive(parity, options);
    } else if (mode == "structured") {
      rep = verify_mr_structured(parity, options);
    } else if (mode == "sampled") {
      rep = verify_mr_sampled(parity, trials, seed, options);
    } else {
      std::cerr << "error: unknown mode " << mode << "\n";
      return kExitBadInput;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  }

  const bool pass = rep.pass() && mds_ok;
  std::cout << "mode: " << rep.mode << "\n"
            << "maximal patterns: " << rep.total_patterns << ", checked: " << rep.checked
            << ", failures: " << rep.failure_count << ", elapsed: " << rep.elapsed.count()
            << " ms\n";
  if (!mds_ok) std::cout << "FAIL witness: " << mds_witness << "\n";
  if (!rep.pass()) {
    std::cout << "FAIL witness: pattern " << pattern_str(rep.failures.front());
    if (!rep.notes.empty() && !rep.notes.front().empty()) {
      std::cout << " (" << rep.notes.front() << ")";
    }
    std::cout << "\n";
  }
  std::cout << (pass ? "PASS" : "FAIL") << ": "
            << (pass ? "the code is maximally recoverable on every checked pattern"
                     : "the code is not a conforming maximally recoverable construction")
            << "\n";
  if (!report_path.empty()) {
    json j = report_to_json(rep);
    j["local_mds"] = mds_ok;
    if (!mds_ok) j["local_mds_witness"] = mds_witness;
    std::ofstream out(report_path, std::ios::binary);
    out << j.dump(2) << "\n";
  }
  return pass ? kExitOk : kExitFail;
}

int cmd_encode(const std::string& desc_path, const std::string& in, const std::string& out) {
  const CodeDescriptor desc = load_descriptor(desc_path);
  const MrLrcCode code = code_from_descriptor(desc);
  const auto message = read_symbols_text(in, code.parity.ext, code.parity.params.k);
  write_codeword(out, desc, encode(code, message));
  std::cout << "encoded " << message.size() << " symbols -> " << out << "\n";
  return kExitOk;
}

int cmd_decode(const std::string& desc_path, const std::string& in, const std::string& mask_path,
               const std::string& out, const std::string& message_out) {
  const CodeDescriptor desc = load_descriptor(desc_path);
  const MrLrcCode code = code_from_descriptor(desc);
  auto word = read_codeword(in, desc, code.parity.ext);
  const auto erased = mask_path.empty() ? std::vector<std::size_t>{}
                                        : read_mask(mask_path, desc.params.n);
  const ErasurePattern pattern = make_pattern(desc.params, erased);
  try {
    word = erasure_decode(code, std::move(word), pattern);
  } catch (const UncorrectablePattern& e) {
    std::cerr << "error: uncorrectable erasure pattern " << pattern_str(pattern) << ": "
              << e.what() << "\n";
    return kExitFail;
  } catch (const InconsistentWord& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  write_codeword(out, desc, word);
  if (!message_out.empty()) {
    std::vector<FieldElement> message;
    for (auto pos : code.info_positions) message.push_back(word[pos]);
    write_symbols_text(message_out, message);
  }
  std::cout << "decoded " << pattern.positions.size() << " erasures -> " << out << "\n";
  return kExitOk;
}

int cmd_repair(const std::string& desc_path, const std::string& in, const std::string& mask_path,
               std::uint32_t group, const std::string& out) {
  const CodeDescriptor desc = load_descriptor(desc_path);
  const MrLrcCode code = code_from_descriptor(desc);
  const auto word = read_codeword(in, desc, code.parity.ext);
  const auto erased = read_mask(mask_path, desc.params.n);
  LocalRepairResult result;
  try {
    result = local_repair(code, group, word, erased);
  } catch (const TooManyLocalErasures& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  std::cout << "repaired " << result.repaired.size() << " symbol(s) in group " << group
            << " reading " << result.reads.size() << " in-group symbols (r-a = "
            << desc.params.r - desc.params.a << ")\n";
  std::cout << "read positions:";
  for (auto pos : result.reads) std::cout << " " << pos;
  std::cout << "\n";
  if (!out.empty()) {
    std::ofstream os(out, std::ios::binary);
    for (const auto& [pos, value] : result.repaired) {
      os << pos << ":";
      for (auto c : value.coords()) os << " " << c;
      os << "\n";
    }
  }
  return kExitOk;
}

int cmd_compare(std::uint32_t n, std::uint32_t r, std::uint32_t h, std::uint32_t a,
                std::uint32_t g, bool as_json) {
  const CodeParams params = derive_params(n, r, h, a, g);
  const Comparison cmp = compare(params);
  std::cout << (as_json ? comparison_json(cmp) : format_comparison(cmp)) << "\n";
  return kExitOk;
}

int cmd_bench(const std::string& desc_path, const std::string& ops_csv, std::uint64_t iterations,
              std::uint64_t seed, const std::string& json_path) {
  const CodeDescriptor desc = load_descriptor(desc_path);
  const MrLrcCode code = code_from_descriptor(desc);
  const CodeParams& p = desc.params;

  std::vector<std::string> ops;
  {
    std::stringstream ss(ops_csv);
    std::string op;
    while (std::getline(ss, op, ',')) {
      if (op != "encode" && op != "decode" && op != "verify") {
        std::cerr << "error: unknown op " << op << "\n";
        return kExitBadInput;
      }
      ops.push_back(op);
    }
  }

  // Deterministic workload: messages and erasure patterns from the seed.
  Rng rng(seed);
  std::vector<std::vector<FieldElement>> messages;
  std::vector<ErasurePattern> patterns;
  std::string workload_bytes;
  if (iterations > 0) {
    for (std::uint64_t i = 0; i < iterations; ++i) {
      std::vector<FieldElement> msg;
      for (std::uint32_t s = 0; s < p.k; ++s) {
        Coeffs c(p.m);
        for (auto& v : c) {
          v = rng.below(p.q);
          workload_bytes += std::to_string(v);
          workload_bytes += ',';
        }
        msg.push_back(code.parity.ext->from_coords(std::move(c)));
      }
      messages.push_back(std::move(msg));
    }
    patterns = sample_maximal_patterns(p, iterations, seed ^ 0x9e3779b97f4a7c15ull);
    for (const auto& pat : patterns) {
      for (auto pos : pat.positions) {
        workload_bytes += std::to_string(pos);
        workload_bytes += ';';
      }
    }
  }
  const std::string digest = sha256_hex(workload_bytes);

  json out;
  out["iterations"] = iterations;
  out["seed"] = seed;
  out["workload_digest"] = digest;
  out["ops"] = json::array();
  std::cout << "bench: n=" << p.n << " k=" << p.k << " q^m=" << p.q << "^" << p.m
            << " iterations=" << iterations << " seed=" << seed << "\n";
  std::cout << "workload digest: " << digest << "\n";

  for (const auto& op : ops) {
    std::vector<double> micros;
    micros.reserve(iterations);
    double symbols = 0;
    for (std::uint64_t i = 0; i < iterations; ++i) {
      if (op == "encode") {
        const auto t0 = std::chrono::steady_clock::now();
        const auto word = encode(code, messages[i]);
        const auto t1 = std::chrono::steady_clock::now();
        micros.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
        symbols += static_cast<double>(word.size());
      } else if (op == "decode") {
        auto word = encode(code, messages[i]);
        for (auto pos : patterns[i].positions) word[pos] = code.parity.ext->zero();
        const auto t0 = std::chrono::steady_clock::now();
        word = erasure_decode(code, std::move(word), patterns[i]);
        const auto t1 = std::chrono::steady_clock::now();
        micros.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
        symbols += static_cast<double>(word.size());
      } else {
        const auto t0 = std::chrono::steady_clock::now();
        const bool ok =
            code.parity.H.select_columns(patterns[i].positions).rank() == p.parity_rows();
        const auto t1 = std::chrono::steady_clock::now();
        if (!ok) {
          std::cerr << "error: verification failed during bench\n";
          return kExitFail;
        }
        micros.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
        symbols += static_cast<double>(patterns[i].positions.size());
      }
    }
    std::sort(micros.begin(), micros.end());
    auto pct = [&](double q) {
      if (micros.empty()) return 0.0;
      return micros[static_cast<std::size_t>(q * static_cast<double>(micros.size() - 1))];
    };
    const double total_us =
        std::accumulate(micros.begin(), micros.end(), 0.0);
    const double throughput = total_us > 0 ? symbols / (total_us / 1e6) : 0.0;
    json op_json = {{"op", op},
                    {"count", micros.size()},
                    {"total_us", total_us},
                    {"symbols_per_s", throughput},
                    {"p50_us", pct(0.50)},
                    {"p90_us", pct(0.90)},
                    {"p99_us", pct(0.99)}};
    out["ops"].push_back(op_json);
    std::cout << "  " << op << ": count=" << micros.size() << " throughput=" << throughput
              << " symbols/s p50=" << pct(0.50) << "us p90=" << pct(0.90) << "us p99="
              << pct(0.99) << "us\n";
  }
  if (!json_path.empty()) {
    std::ofstream os(json_path, std::ios::binary);
    os << out.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximally recoverable local reconstruction codes over small fields"};
  app.require_subcommand(1);

  std::uint32_t n = 0, r = 0, h = 0, a = 0, g = 0, group = 0, jobs = 1;
  std::uint64_t trials = 100000, seed = 0, iterations = 1000;
  std::int64_t shuffle_seed = -1;
  std::uint64_t budget = env_budget(10'000'000);
  bool emit_matrix = false, force = false, as_json = false;
  std::string out = "code.json", mode = "exhaustive", desc_path, in_path, mask_path;
  std::string report_path, message_out, ops_csv = "encode,decode,verify";

  auto* construct = app.add_subcommand("construct", "derive parameters and emit a code descriptor");
  construct->add_option("N", n, "code length")->required();
  construct->add_option("R", r, "local group size")->required();
  construct->add_option("H", h, "global parities")->required();
  construct->add_option("A", a, "local parities per group")->required();
  construct->add_option("G", g, "local groups")->required();
  construct->add_option("-o,--out", out, "descriptor path");
  construct->add_flag("--emit-H", emit_matrix, "embed the full parity-check matrix");
  construct->add_option("--shuffle-seed", shuffle_seed,
                        "use a seeded shuffle of the evaluation points instead of canonical order");

  auto* verify = app.add_subcommand("verify", "certify maximal recoverability");
  verify->add_option("descriptor", desc_path)->required();
  verify->add_option("--mode", mode, "exhaustive | sampled | structured")
      ->check(CLI::IsMember({"exhaustive", "sampled", "structured"}));
  verify->add_option("--trials", trials, "samples in sampled mode");
  verify->add_option("--seed", seed, "seed in sampled mode");
  verify->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  verify->add_option("--budget", budget, "max patterns for exhaustive modes");
  verify->add_flag("--force", force, "proceed despite a descriptor hash mismatch");
  verify->add_option("--report", report_path, "write a JSON report here");

  auto* enc = app.add_subcommand("encode", "encode a message file");
  enc->add_option("descriptor", desc_path)->required();
  enc->add_option("--in", in_path, "message file: k lines of m coefficients")->required();
  enc->add_option("--out", out, "codeword file")->required();

  auto* dec = app.add_subcommand("decode", "recover erased symbols of a codeword");
  dec->add_option("descriptor", desc_path)->required();
  dec->add_option("--in", in_path, "codeword file")->required();
  dec->add_option("--mask", mask_path, "erasure mask: one line of 0/1");
  dec->add_option("--out", out, "recovered codeword file")->required();
  dec->add_option("--message-out", message_out, "also extract the message here");

  auto* rep = app.add_subcommand("repair", "repair erasures inside one local group");
  rep->add_option("descriptor", desc_path)->required();
  rep->add_option("--in", in_path, "codeword file")->required();
  rep->add_option("--mask", mask_path, "erasure mask (erasures must lie in the group)")->required();
  rep->add_option("--group", group, "group index")->required();
  rep->add_option("--out", out, "repaired symbols file");

  auto* cmp = app.add_subcommand("compare", "field-size bounds for the parameters");
  cmp->add_option("N", n)->required();
  cmp->add_option("R", r)->required();
  cmp->add_option("H", h)->required();
  cmp->add_option("A", a)->required();
  cmp->add_option("G", g)->required();
  cmp->add_flag("--json", as_json, "machine-readable output");

  auto* bench = app.add_subcommand("bench", "deterministic encode/decode/verify timings");
  bench->add_option("descriptor", desc_path)->required();
  bench->add_option("--ops", ops_csv, "comma-separated: encode,decode,verify");
  bench->add_option("--iterations", iterations);
  bench->add_option("--seed", seed);
  bench->add_option("--json", report_path, "write the timing report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (construct->parsed()) {
      return cmd_construct(n, r, h, a, g, out, emit_matrix, shuffle_seed);
    }
    if (verify->parsed()) {
      return cmd_verify(desc_path, mode, trials, seed, jobs, force, budget, report_path);
    }
    if (enc->parsed()) return cmd_encode(desc_path, in_path, out);
    if (dec->parsed()) return cmd_decode(desc_path, in_path, mask_path, out, message_out);
    if (rep->parsed()) return cmd_repair(desc_path, in_path, mask_path, group, out);
    if (cmp->parsed()) return cmd_compare(n, r, h, a, g, as_json);
    if (bench->parsed()) return cmd_bench(desc_path, ops_csv, iterations, seed, report_path);
  } catch (const HashMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitHash;
  } catch (const InvalidParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitOk;
}
