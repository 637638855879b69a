#pragma once

/**
 * @file benchcli.hpp
 * @brief Benchmark harness behind the oscquad_bench executable.
 *
 *   oscquad_bench eval     --problem ex51 --alpha 0.5 --w 100 --n 12 --s 0 --method levin
 *   oscquad_bench sweep-w  --problem ex52 --alpha -0.5 --w 100,1000,10000 --n 4 --s 0,1,2
 *   oscquad_bench sweep-n  --problem ex53a --alpha 0.5 --w 100 --n 4,6,8 --method levin,filon
 *   oscquad_bench compare  --problem ex54 --alpha -0.5 --w 1000 --n 16
 *
 * Needs CLI11.hpp and json.hpp on the include path.
 */

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "baselines.hpp"
#include "errors.hpp"
#include "problem.hpp"
#include "quadrature.hpp"
#include "result.hpp"

namespace oscquad::cli {

inline constexpr const char* kCsvHeader =
    "problem,method,kind,alpha,s,n,w,value_re,value_im,abs_err,rel_err,scaled_err,time_ns";

struct RunRecord {
  std::string problem;
  std::string method;
  std::string kind;
  double alpha = 0.0;
  int s = 0;
  int n = 0;
  double w = 0.0;
  double value_re = 0.0;
  double value_im = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double scaled_err = 0.0;
  std::int64_t time_ns = 1;

  bool operator==(const RunRecord&) const = default;
};

/// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// abs_err · |w|^{s+1+min(1+α,1)} / δ_α(|w|), the δ factor for the log kind only.
inline double scaled_error(double abs_err, double alpha, SingularityKind kind, int s, double w) {
  const double aw = std::abs(w);
  const double delta = kind == SingularityKind::AlgebraicLog ? delta_alpha(alpha, aw) : 1.0;
  return abs_err * std::pow(aw, asymptotic_order(alpha, s)) / delta;
}

/// Row-at-a-time CSV sink. The header goes out with the first row.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void write(const RunRecord& r) {
    if (!header_written_) {
      out_ << kCsvHeader << '\n';
      header_written_ = true;
    }
    out_ << r.problem << ',' << r.method << ',' << r.kind << ',' << format_double(r.alpha) << ',' << r.s << ','
         << r.n << ',' << format_double(r.w) << ',' << format_double(r.value_re) << ',' << format_double(r.value_im)
         << ',' << format_double(r.abs_err) << ',' << format_double(r.rel_err) << ',' << format_double(r.scaled_err)
         << ',' << r.time_ns << '\n';
    if (!out_) fail(ErrorKind::Io, "CSV sink write failed");
    ++rows_;
  }

  void flush() {
    out_.flush();
    if (!out_) fail(ErrorKind::Io, "CSV sink flush failed");
  }

  std::size_t rows() const { return rows_; }

 private:
  std::ostream& out_;
  bool header_written_ = false;
  std::size_t rows_ = 0;
};

inline void write_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  if (records.empty()) fail(ErrorKind::Parameter, "write_csv needs at least one record");
  CsvWriter w(out);
  for (const auto& r : records) w.write(r);
  w.flush();
}

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <class T>
T parse_number(const std::string& s, const char* what) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    fail(ErrorKind::Parameter, std::string("cannot parse ") + what + " from '" + s + "'");
  }
  return v;
}

}  // namespace detail

inline std::vector<RunRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) fail(ErrorKind::Parameter, "missing or unexpected CSV header");
  std::vector<RunRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split(line, ',');
    if (f.size() != 13) fail(ErrorKind::Parameter, "CSV row has " + std::to_string(f.size()) + " fields");
    RunRecord r;
    r.problem = f[0];
    r.method = f[1];
    r.kind = f[2];
    r.alpha = detail::parse_number<double>(f[3], "alpha");
    r.s = detail::parse_number<int>(f[4], "s");
    r.n = detail::parse_number<int>(f[5], "n");
    r.w = detail::parse_number<double>(f[6], "w");
    r.value_re = detail::parse_number<double>(f[7], "value_re");
    r.value_im = detail::parse_number<double>(f[8], "value_im");
    r.abs_err = detail::parse_number<double>(f[9], "abs_err");
    r.rel_err = detail::parse_number<double>(f[10], "rel_err");
    r.scaled_err = detail::parse_number<double>(f[11], "scaled_err");
    r.time_ns = detail::parse_number<std::int64_t>(f[12], "time_ns");
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reference values
// ---------------------------------------------------------------------------

struct Reference {
  Complex value;
  /// "oracle" below the oracle cap, "self" (Levin n=32, s=2) above it.
  std::string kind;
};

inline constexpr int kSelfReferenceN = 32;
inline constexpr int kSelfReferenceS = 2;

inline Reference reference_value(const ProblemSpec& p, const QuadOptions& opt = {}) {
  if (std::abs(p.w) * p.g_at_end() <= kOracleCap) return {reference_oracle(p).value, "oracle"};
  return {quad_levin(p, kSelfReferenceN, kSelfReferenceS, opt).value, "self"};
}

// ---------------------------------------------------------------------------
// Problem and method selection
// ---------------------------------------------------------------------------

struct ProblemArgs {
  std::string id = "ex51";
  double alpha = 0.5;
  double a = 1.0;
  std::string kind = "alg";
  std::vector<double> f_poly;
  std::vector<double> g_poly;
};

inline ProblemSpec build_problem(const ProblemArgs& pa, double w) {
  if (pa.f_poly.empty()) return builtin_problem(pa.id, pa.alpha, w);
  std::vector<Complex> fc(pa.f_poly.begin(), pa.f_poly.end());
  const std::vector<double> gc = pa.g_poly.empty() ? std::vector<double>{0.0, 1.0} : pa.g_poly;
  SingularityKind kind;
  if (pa.kind == "alg") {
    kind = SingularityKind::Algebraic;
  } else if (pa.kind == "log") {
    kind = SingularityKind::AlgebraicLog;
  } else {
    fail(ErrorKind::Parameter, "kind must be alg or log");
  }
  return make_problem("poly", Amplitude::polynomial(std::move(fc)), Oscillator::polynomial(gc), pa.a, pa.alpha, kind,
                      w);
}

/// "levin" follows the s-dispatch rule (physical for s = 0, frequency otherwise).
inline QuadratureResult evaluate(const ProblemSpec& p, const std::string& method, int n, int s,
                                 const QuadOptions& opt) {
  if (method == "levin") return quad_levin(p, n, s, opt);
  return compute(p, parse_method(method), n, s, opt);
}

// ---------------------------------------------------------------------------
// Parallel evaluation
// ---------------------------------------------------------------------------

/// fn(i) for i in [0, count) on up to `jobs` threads. Exceptions surface in index order.
template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct SweepPoint {
  std::string method;
  int s = 0;
  int n = 0;
  double w = 0.0;
};

struct SweepOptions {
  ProblemArgs problem;
  QuadOptions quad;
  int jobs = 1;
  /// Points evaluated between CSV flushes.
  std::size_t batch = 256;
};

/// Evaluate points in input order, streaming one CSV row per point.
inline void run_sweep(const std::vector<SweepPoint>& points, const SweepOptions& so, CsvWriter& csv,
                      std::ostream& log) {
  std::map<double, Reference> refs;
  for (std::size_t start = 0; start < points.size(); start += so.batch) {
    const std::size_t stop = std::min(points.size(), start + so.batch);

    std::vector<double> fresh;
    for (std::size_t i = start; i < stop; ++i) {
      if (!refs.count(points[i].w) && std::find(fresh.begin(), fresh.end(), points[i].w) == fresh.end()) {
        fresh.push_back(points[i].w);
      }
    }
    std::vector<Reference> fresh_refs(fresh.size());
    parallel_for(fresh.size(), so.jobs, [&](std::size_t i) {
      fresh_refs[i] = reference_value(build_problem(so.problem, fresh[i]), so.quad);
    });
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      log << "ref_kind=" << fresh_refs[i].kind << " w=" << format_double(fresh[i]) << '\n';
      refs.emplace(fresh[i], fresh_refs[i]);
    }

    std::vector<RunRecord> rows(stop - start);
    parallel_for(rows.size(), so.jobs, [&](std::size_t k) {
      const SweepPoint& pt = points[start + k];
      const ProblemSpec p = build_problem(so.problem, pt.w);
      const auto t0 = std::chrono::steady_clock::now();
      const QuadratureResult r = evaluate(p, pt.method, pt.n, pt.s, so.quad);
      const auto dt = std::chrono::steady_clock::now() - t0;
      const Complex ref = refs.at(pt.w).value;
      RunRecord& rec = rows[k];
      rec.problem = p.id;
      rec.method = pt.method;
      rec.kind = to_string(p.kind);
      rec.alpha = p.alpha;
      rec.s = pt.s;
      rec.n = pt.n;
      rec.w = pt.w;
      rec.value_re = r.value.real();
      rec.value_im = r.value.imag();
      rec.abs_err = std::abs(r.value - ref);
      rec.rel_err = std::abs(ref) > 0.0 ? rec.abs_err / std::abs(ref) : rec.abs_err;
      rec.scaled_err = scaled_error(rec.abs_err, p.alpha, p.kind, pt.s, pt.w);
      rec.time_ns = std::max<std::int64_t>(1, std::chrono::duration_cast<std::chrono::nanoseconds>(dt).count());
    });
    for (const auto& r : rows) csv.write(r);
    csv.flush();
  }
}

// ---------------------------------------------------------------------------
// Command line
// ---------------------------------------------------------------------------

inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parameter:
    case ErrorKind::InvalidOscillator:
    case ErrorKind::Domain: return 2;
    case ErrorKind::Capability:
    case ErrorKind::Refusal: return 3;
    case ErrorKind::Accuracy:
    case ErrorKind::DegenerateSystem:
    case ErrorKind::FormulaMismatch: return 4;
    case ErrorKind::Io: return 5;
  }
  return 1;
}

namespace detail {

inline std::vector<double> parse_doubles(const std::vector<std::string>& items, const char* what) {
  std::vector<double> out;
  for (const auto& s : items) {
    if (s.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) fail(ErrorKind::Parameter, std::string("bad ") + what + " value '" + s + "'");
    out.push_back(v);
  }
  return out;
}

inline int default_jobs() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace detail

inline int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oscillatory quadrature benchmark harness", "oscquad_bench"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  ProblemArgs pa;
  std::vector<std::string> w_items;
  std::vector<int> n_list{12};
  std::vector<int> s_list{0};
  std::vector<std::string> methods{"levin"};
  std::vector<std::string> f_poly_items, g_poly_items;
  std::string grid = "lobatto";
  double tsvd_threshold = TsvdOptions{}.threshold;
  bool tsvd_relative = TsvdOptions{}.relative;
  int jobs = detail::default_jobs();

  app.add_option("--problem", pa.id, "built-in problem id (ex51 ex52 ex53a ex53b ex54)");
  app.add_option("--alpha", pa.alpha, "singularity exponent, 0 < |alpha| < 1");
  app.add_option("--a", pa.a, "interval end for polynomial problems");
  app.add_option("--kind", pa.kind, "alg or log, for polynomial problems");
  app.add_option("--f-poly", f_poly_items, "amplitude coefficients c0,c1,... (user problem)")->delimiter(',');
  app.add_option("--g-poly", g_poly_items, "oscillator coefficients (default 0,1)")->delimiter(',');
  app.add_option("--w", w_items, "frequency list")->delimiter(',');
  app.add_option("--n", n_list, "node count list")->delimiter(',');
  app.add_option("--s", s_list, "asymptotic order list")->delimiter(',');
  app.add_option("--method", methods, "levin, levin-freq, filon, cmfp, oracle")->delimiter(',');
  app.add_option("--grid", grid, "frequency-space nodes: lobatto or radau");
  app.add_option("--tsvd-threshold", tsvd_threshold, "singular value cutoff");
  app.add_flag("--tsvd-relative,!--tsvd-absolute", tsvd_relative, "cutoff relative to the largest singular value");
  app.add_option("--jobs", jobs, "worker threads")->envname("OSCQUAD_JOBS")->check(CLI::PositiveNumber);

  auto* eval = app.add_subcommand("eval", "evaluate one integral, JSON output")->fallthrough();
  auto* sweep_w = app.add_subcommand("sweep-w", "sweep over frequencies, CSV output")->fallthrough();
  auto* sweep_n = app.add_subcommand("sweep-n", "sweep over node counts, CSV output")->fallthrough();
  auto* compare = app.add_subcommand("compare", "Levin, CMFP and the oracle side by side, CSV output")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    const std::vector<double> ws = detail::parse_doubles(w_items, "w");
    pa.f_poly = detail::parse_doubles(f_poly_items, "f-poly");
    pa.g_poly = detail::parse_doubles(g_poly_items, "g-poly");

    SweepOptions so;
    so.problem = pa;
    so.jobs = jobs;
    so.quad.tsvd.threshold = tsvd_threshold;
    so.quad.tsvd.relative = tsvd_relative;
    if (grid == "lobatto") {
      so.quad.frequency_grid = GridFamily::LobattoModified;
    } else if (grid == "radau") {
      so.quad.frequency_grid = GridFamily::RadauModified;
    } else {
      fail(ErrorKind::Parameter, "grid must be lobatto or radau");
    }
    if (ws.empty()) fail(ErrorKind::Parameter, "--w needs at least one frequency");
    if (n_list.empty() || s_list.empty() || methods.empty()) fail(ErrorKind::Parameter, "empty --n, --s or --method");

    if (eval->parsed()) {
      if (ws.size() != 1 || n_list.size() != 1 || s_list.size() != 1 || methods.size() != 1) {
        fail(ErrorKind::Parameter, "eval takes a single w, n, s and method");
      }
      const ProblemSpec p = build_problem(pa, ws[0]);
      const QuadratureResult r = evaluate(p, methods[0], n_list[0], s_list[0], so.quad);
      const auto& d = r.diagnostics;
      nlohmann::json j;
      j["problem"] = p.id;
      j["method"] = methods[0];
      j["kind"] = to_string(p.kind);
      j["alpha"] = p.alpha;
      j["w"] = ws[0];
      j["n"] = n_list[0];
      j["s"] = s_list[0];
      j["value_re"] = r.value.real();
      j["value_im"] = r.value.imag();
      j["diagnostics"] = {{"method", to_string(r.method)},
                          {"residual_norm", d.residual_norm},
                          {"tsvd_truncated", d.tsvd_truncated},
                          {"smallest_sv", d.smallest_sv},
                          {"interpolation_residual", d.interpolation_residual},
                          {"evaluations", d.evaluations},
                          {"note", d.note}};
      out << j.dump() << '\n';
      if (!out) fail(ErrorKind::Io, "output write failed");
      return 0;
    }

    std::vector<SweepPoint> points;
    if (compare->parsed()) {
      const bool linear = build_problem(pa, ws[0]).oscillator.linear;
      std::vector<std::string> cmp{"levin"};
      if (linear) cmp.push_back("cmfp");
      cmp.push_back("oracle");
      for (const auto& m : cmp) {
        for (int s : s_list) {
          for (int n : n_list) {
            for (double w : ws) {
              if (m == "oracle" && std::abs(w) * build_problem(pa, w).g_at_end() > kOracleCap) continue;
              points.push_back({m, s, n, w});
            }
          }
        }
      }
    } else {
      (void)sweep_w;
      (void)sweep_n;
      for (const auto& m : methods) {
        for (int s : s_list) {
          for (int n : n_list) {
            for (double w : ws) points.push_back({m, s, n, w});
          }
        }
      }
    }
    CsvWriter csv(out);
    run_sweep(points, so, csv, err);
    return 0;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace oscquad::cli
