// Copyright 2026 The ldp_relax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON experiment configuration. Every validation error names the line and
// JSON pointer of the offending value, e.g.
//
//   line 7: /schedule/stride: must be positive
//
// Schema (all sections optional; each subcommand checks what it needs):
//
//   {
//     "m": 5,
//     "counts": [100, 200, 300, 400, 500],
//     "schedule": {"kind": "explicit", "values": [0.1, 0.5, 1.0]}
//               | {"kind": "linear", "start": 0.1, "stop": 1.0, "stride": 0.1}
//               | {"kind": "noisy_sampling", "eps_alpha": 1.0,
//                  "eps_beta": 0.5, "rounds": 10},
//     "trials": 100,
//     "seed": 20240101,
//     "threads": 4,
//     "rappor": {"eps_alpha": 1.0, "eps_beta": 0.5, "k_max": 10},
//     "kernel_table": {"eps_grid": [0.1, 0.5, 1.0, 2.0, 10],
//                      "m_grid": [3, 4, 5]},
//     "audit": {"eps_values": [0.1, 0.5, 1.0, 2.0], "max_length": 4,
//               "m_values": [2, 3, 4], "priors": [[...], ...],
//               "noisy_sampling_k_max": 10}
//   }

#ifndef LDP_RELAX_CONFIG_HPP_
#define LDP_RELAX_CONFIG_HPP_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "nlohmann/json.hpp"
#include "ldp_relax/mechanism.hpp"
#include "ldp_relax/rappor.hpp"

namespace ldp_relax {

using Json = nlohmann::json;

// A parsed document plus the source line of every value, keyed by JSON
// pointer ("" is the root).
struct LocatedJson {
  Json doc;
  std::map<std::string, int> lines;

  int LineOf(std::string pointer) const {
    while (true) {
      if (auto it = lines.find(pointer); it != lines.end()) return it->second;
      if (pointer.empty()) return 1;
      pointer.resize(pointer.rfind('/'));
    }
  }

  absl::Status Error(const std::string& pointer, absl::string_view what) const {
    return absl::InvalidArgumentError(absl::StrCat(
        "line ", LineOf(pointer), ": ", pointer.empty() ? "/" : pointer, ": ",
        what));
  }
};

namespace internal {

struct SourcePosition {
  int line = 1;
  int token_line = 1;  // line of the last non-whitespace character read
};

// Forward iterator over the text that keeps SourcePosition current as the
// JSON lexer consumes characters.
class CountingIterator {
 public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator() = default;
  CountingIterator(const char* p, SourcePosition* pos) : p_(p), pos_(pos) {}

  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    if (*p_ == '\n') {
      ++pos_->line;
    } else if (!std::isspace(static_cast<unsigned char>(*p_))) {
      pos_->token_line = pos_->line;
    }
    ++p_;
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator copy = *this;
    ++*this;
    return copy;
  }
  friend bool operator==(const CountingIterator& a, const CountingIterator& b) {
    return a.p_ == b.p_;
  }

 private:
  const char* p_ = nullptr;
  SourcePosition* pos_ = nullptr;
};

inline std::string EscapePointerToken(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Builds the DOM through nlohmann's own SAX DOM builder while recording the
// pointer -> line map.
class LocatingSax {
 public:
  using number_integer_t = Json::number_integer_t;
  using number_unsigned_t = Json::number_unsigned_t;
  using number_float_t = Json::number_float_t;
  using string_t = Json::string_t;
  using binary_t = Json::binary_t;

  LocatingSax(LocatedJson& out, const SourcePosition& pos)
      : dom_(out.doc, /*allow_exceptions=*/false), out_(out), pos_(pos) {}

  bool null() { Value(); return dom_.null(); }
  bool boolean(bool v) { Value(); return dom_.boolean(v); }
  bool number_integer(number_integer_t v) { Value(); return dom_.number_integer(v); }
  bool number_unsigned(number_unsigned_t v) { Value(); return dom_.number_unsigned(v); }
  bool number_float(number_float_t v, const string_t& s) {
    Value();
    return dom_.number_float(v, s);
  }
  bool string(string_t& v) { Value(); return dom_.string(v); }
  bool binary(binary_t& v) { Value(); return dom_.binary(v); }

  bool start_object(std::size_t n) {
    frames_.push_back({Value(), true, 0, ""});
    return dom_.start_object(n);
  }
  bool key(string_t& k) {
    frames_.back().key = k;
    return dom_.key(k);
  }
  bool end_object() {
    frames_.pop_back();
    return dom_.end_object();
  }
  bool start_array(std::size_t n) {
    frames_.push_back({Value(), false, 0, ""});
    return dom_.start_array(n);
  }
  bool end_array() {
    frames_.pop_back();
    return dom_.end_array();
  }
  bool parse_error(std::size_t position, const std::string& token,
                   const nlohmann::detail::exception& ex) {
    error_ = absl::StrCat("line ", pos_.line, ": JSON syntax error near '",
                          token, "' (byte ", position, "): ", ex.what());
    return false;
  }

  const std::string& error() const { return error_; }

 private:
  struct Frame {
    std::string path;
    bool is_object;
    std::size_t next_index;
    std::string key;
  };

  // Path of the value that is about to start.
  std::string CurrentPath() {
    if (frames_.empty()) return "";
    Frame& f = frames_.back();
    if (f.is_object) return f.path + "/" + EscapePointerToken(f.key);
    return absl::StrCat(f.path, "/", f.next_index);
  }

  // Records the line of the value that is starting and returns its path.
  std::string Value() {
    std::string path = CurrentPath();
    out_.lines[path] = pos_.token_line;
    if (!frames_.empty() && !frames_.back().is_object) {
      ++frames_.back().next_index;
    }
    return path;
  }

  nlohmann::detail::json_sax_dom_parser<Json> dom_;
  LocatedJson& out_;
  const SourcePosition& pos_;
  std::vector<Frame> frames_;
  std::string error_;
};

}  // namespace internal

inline absl::StatusOr<LocatedJson> ParseLocatedJson(std::string_view text) {
  LocatedJson out;
  internal::SourcePosition pos;
  internal::LocatingSax sax(out, pos);
  const std::string owned(text);
  internal::CountingIterator first(owned.data(), &pos);
  internal::CountingIterator last(owned.data() + owned.size(), &pos);
  if (!Json::sax_parse(first, last, &sax)) {
    return absl::InvalidArgumentError(
        sax.error().empty() ? std::string("invalid JSON") : sax.error());
  }
  return out;
}

struct ScheduleSpec {
  enum class Kind { kExplicit, kLinear, kNoisySampling };
  Kind kind = Kind::kExplicit;
  std::vector<double> values;
  double start = 0.0;
  double stop = 0.0;
  double stride = 0.0;
  double eps_alpha = 0.0;
  double eps_beta = 0.0;
  std::int64_t rounds = 0;
};

struct RapporSpec {
  double eps_alpha = 1.0;
  double eps_beta = 0.5;
  std::int64_t k_max = 10;
};

struct KernelTableSpec {
  std::vector<double> eps_grid = {0.1, 0.5, 1.0, 2.0, 10.0};
  std::vector<int> m_grid = {3, 4, 5, 6, 7, 8, 9, 10};
};

struct AuditSpec {
  std::vector<double> eps_values = {0.1, 0.5, 1.0, 2.0};
  int max_length = 4;
  std::vector<int> m_values = {2, 3, 4};
  // Empty means a built-in set of uniform and skewed priors per m.
  std::vector<std::vector<double>> priors;
  std::int64_t noisy_sampling_k_max = 10;
};

struct ExperimentConfig {
  std::optional<int> m;
  std::vector<std::int64_t> counts;
  std::optional<ScheduleSpec> schedule;
  std::int64_t trials = 100;
  std::uint64_t seed = 1;
  int threads = 1;
  std::optional<RapporSpec> rappor;
  KernelTableSpec kernel_table;
  AuditSpec audit;
};

// Expands a schedule spec into privacy levels. Linear schedules are computed
// as start + i * stride with the last entry pinned to stop.
inline absl::StatusOr<std::vector<PrivacyLevel>> ExpandSchedule(
    const ScheduleSpec& spec) {
  std::vector<double> eps;
  switch (spec.kind) {
    case ScheduleSpec::Kind::kExplicit:
      eps = spec.values;
      break;
    case ScheduleSpec::Kind::kLinear: {
      if (!(spec.stride > 0.0) || !(spec.stop >= spec.start)) {
        return absl::InvalidArgumentError(
            "linear schedule needs stride > 0 and stop >= start");
      }
      const double steps = (spec.stop - spec.start) / spec.stride;
      const auto count = static_cast<std::int64_t>(std::llround(steps));
      if (std::abs(steps - count) > 1e-9 * std::max(1.0, steps)) {
        return absl::InvalidArgumentError(
            "linear schedule: (stop - start) must be a multiple of stride");
      }
      for (std::int64_t i = 0; i < count; ++i) {
        eps.push_back(spec.start + i * spec.stride);
      }
      eps.push_back(spec.stop);
      break;
    }
    case ScheduleSpec::Kind::kNoisySampling: {
      absl::StatusOr<PrivacyLevel> ea = PrivacyLevel::Create(spec.eps_alpha);
      if (!ea.ok()) return ea.status();
      absl::StatusOr<PrivacyLevel> eb = PrivacyLevel::Create(spec.eps_beta);
      if (!eb.ok()) return eb.status();
      const RapporParams params = RapporParams::FromEpsilons(*ea, *eb);
      if (spec.rounds < 1) {
        return absl::InvalidArgumentError("noisy_sampling needs rounds >= 1");
      }
      for (std::int64_t k = 1; k <= spec.rounds; ++k) {
        eps.push_back(EpsNoisySampling(k, params).value());
      }
      break;
    }
  }
  std::vector<PrivacyLevel> out;
  out.reserve(eps.size());
  for (double e : eps) {
    absl::StatusOr<PrivacyLevel> level = PrivacyLevel::Create(e);
    if (!level.ok()) return level.status();
    out.push_back(*level);
  }
  if (absl::Status s = ValidateSchedule(out); !s.ok()) return s;
  return out;
}

namespace internal {

// Small typed accessors that turn shape errors into located messages.
class ConfigReader {
 public:
  explicit ConfigReader(const LocatedJson& src) : src_(src) {}

  absl::Status Error(const std::string& ptr, absl::string_view what) const {
    return src_.Error(ptr, what);
  }

  absl::Status CheckKeys(const Json& obj, const std::string& ptr,
                         std::initializer_list<absl::string_view> allowed) const {
    if (!obj.is_object()) return Error(ptr, "must be an object");
    for (const auto& [key, value] : obj.items()) {
      bool known = false;
      for (absl::string_view a : allowed) known = known || a == key;
      if (!known) {
        return Error(ptr + "/" + EscapePointerToken(key),
                     absl::StrCat("unknown key '", key, "'"));
      }
    }
    return absl::OkStatus();
  }

  absl::StatusOr<double> Number(const Json& v, const std::string& ptr) const {
    if (!v.is_number()) return Error(ptr, "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) return Error(ptr, "must be finite");
    return d;
  }

  absl::StatusOr<double> Positive(const Json& v, const std::string& ptr) const {
    absl::StatusOr<double> d = Number(v, ptr);
    if (!d.ok()) return d;
    if (!(*d > 0.0)) return Error(ptr, "must be positive");
    return d;
  }

  absl::StatusOr<std::int64_t> Integer(const Json& v, const std::string& ptr,
                                       std::int64_t min_value) const {
    if (!v.is_number_integer()) return Error(ptr, "must be an integer");
    const auto i = v.get<std::int64_t>();
    if (i < min_value) {
      return Error(ptr, absl::StrCat("must be at least ", min_value));
    }
    return i;
  }

  template <typename T, typename F>
  absl::StatusOr<std::vector<T>> Array(const Json& v, const std::string& ptr,
                                       F element) const {
    if (!v.is_array()) return Error(ptr, "must be an array");
    if (v.empty()) return Error(ptr, "must not be empty");
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      absl::StatusOr<T> e = element(v[i], absl::StrCat(ptr, "/", i));
      if (!e.ok()) return e.status();
      out.push_back(*e);
    }
    return out;
  }

 private:
  const LocatedJson& src_;
};

#define LDP_RELAX_CONCAT_INNER(a, b) a##b
#define LDP_RELAX_CONCAT(a, b) LDP_RELAX_CONCAT_INNER(a, b)
#define LDP_RELAX_ASSIGN_OR_RETURN(lhs, expr) \
  LDP_RELAX_ASSIGN_OR_RETURN_IMPL(LDP_RELAX_CONCAT(_status_or_, __LINE__), lhs, expr)
#define LDP_RELAX_ASSIGN_OR_RETURN_IMPL(tmp, lhs, expr) \
  auto tmp = (expr);                                    \
  if (!tmp.ok()) return tmp.status();                   \
  lhs = *std::move(tmp)

inline absl::StatusOr<ScheduleSpec> ReadSchedule(const ConfigReader& r,
                                                 const Json& v) {
  const std::string ptr = "/schedule";
  if (!v.is_object()) return r.Error(ptr, "must be an object");
  if (!v.contains("kind") || !v["kind"].is_string()) {
    return r.Error(ptr, "needs a string 'kind'");
  }
  const std::string kind = v["kind"].get<std::string>();
  ScheduleSpec spec;
  auto positive = [&](const char* key) -> absl::StatusOr<double> {
    if (!v.contains(key)) return r.Error(ptr, absl::StrCat("missing '", key, "'"));
    return r.Positive(v[key], ptr + "/" + key);
  };
  if (kind == "explicit") {
    if (absl::Status s = r.CheckKeys(v, ptr, {"kind", "values"}); !s.ok()) return s;
    if (!v.contains("values")) return r.Error(ptr, "missing 'values'");
    spec.kind = ScheduleSpec::Kind::kExplicit;
    LDP_RELAX_ASSIGN_OR_RETURN(
        spec.values,
        r.Array<double>(v["values"], ptr + "/values",
                        [&](const Json& e, const std::string& p) {
                          return r.Positive(e, p);
                        }));
    for (std::size_t i = 1; i < spec.values.size(); ++i) {
      if (spec.values[i] < spec.values[i - 1]) {
        return r.Error(absl::StrCat(ptr, "/values/", i),
                       "schedule must be non-decreasing");
      }
    }
  } else if (kind == "linear") {
    if (absl::Status s = r.CheckKeys(v, ptr, {"kind", "start", "stop", "stride"});
        !s.ok()) {
      return s;
    }
    spec.kind = ScheduleSpec::Kind::kLinear;
    LDP_RELAX_ASSIGN_OR_RETURN(spec.start, positive("start"));
    LDP_RELAX_ASSIGN_OR_RETURN(spec.stop, positive("stop"));
    LDP_RELAX_ASSIGN_OR_RETURN(spec.stride, positive("stride"));
    if (spec.stop < spec.start) {
      return r.Error(ptr + "/stop", "must be at least start");
    }
  } else if (kind == "noisy_sampling") {
    if (absl::Status s = r.CheckKeys(
            v, ptr, {"kind", "eps_alpha", "eps_beta", "rounds"});
        !s.ok()) {
      return s;
    }
    spec.kind = ScheduleSpec::Kind::kNoisySampling;
    LDP_RELAX_ASSIGN_OR_RETURN(spec.eps_alpha, positive("eps_alpha"));
    LDP_RELAX_ASSIGN_OR_RETURN(spec.eps_beta, positive("eps_beta"));
    if (!v.contains("rounds")) return r.Error(ptr, "missing 'rounds'");
    LDP_RELAX_ASSIGN_OR_RETURN(spec.rounds,
                               r.Integer(v["rounds"], ptr + "/rounds", 1));
  } else {
    return r.Error(ptr + "/kind",
                   absl::StrCat("unknown schedule kind '", kind,
                                "' (explicit | linear | noisy_sampling)"));
  }
  if (absl::StatusOr<std::vector<PrivacyLevel>> expanded = ExpandSchedule(spec);
      !expanded.ok()) {
    return r.Error(ptr, expanded.status().message());
  }
  return spec;
}

}  // namespace internal

inline absl::StatusOr<ExperimentConfig> ParseExperimentConfig(
    std::string_view text) {
  absl::StatusOr<LocatedJson> src = ParseLocatedJson(text);
  if (!src.ok()) return src.status();
  const internal::ConfigReader r(*src);
  const Json& doc = src->doc;
  if (absl::Status s = r.CheckKeys(doc, "",
                                   {"m", "counts", "schedule", "trials", "seed",
                                    "threads", "rappor", "kernel_table",
                                    "audit"});
      !s.ok()) {
    return s;
  }

  ExperimentConfig cfg;
  if (doc.contains("m")) {
    LDP_RELAX_ASSIGN_OR_RETURN(const std::int64_t m,
                               r.Integer(doc["m"], "/m", 2));
    cfg.m = static_cast<int>(m);
  }
  if (doc.contains("counts")) {
    LDP_RELAX_ASSIGN_OR_RETURN(
        cfg.counts,
        r.Array<std::int64_t>(doc["counts"], "/counts",
                              [&](const Json& e, const std::string& p) {
                                return r.Integer(e, p, 1);
                              }));
    if (!cfg.m) return r.Error("/counts", "requires 'm'");
    if (static_cast<int>(cfg.counts.size()) != *cfg.m) {
      return r.Error("/counts",
                     absl::StrCat("has ", cfg.counts.size(),
                                  " entries but m = ", *cfg.m));
    }
  }
  if (doc.contains("schedule")) {
    LDP_RELAX_ASSIGN_OR_RETURN(cfg.schedule,
                               internal::ReadSchedule(r, doc["schedule"]));
  }
  if (doc.contains("trials")) {
    LDP_RELAX_ASSIGN_OR_RETURN(cfg.trials,
                               r.Integer(doc["trials"], "/trials", 1));
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) {
      return r.Error("/seed", "must be a non-negative integer");
    }
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("threads")) {
    LDP_RELAX_ASSIGN_OR_RETURN(const std::int64_t t,
                               r.Integer(doc["threads"], "/threads", 1));
    cfg.threads = static_cast<int>(t);
  }
  if (doc.contains("rappor")) {
    const Json& v = doc["rappor"];
    if (absl::Status s =
            r.CheckKeys(v, "/rappor", {"eps_alpha", "eps_beta", "k_max"});
        !s.ok()) {
      return s;
    }
    RapporSpec spec;
    if (v.contains("eps_alpha")) {
      LDP_RELAX_ASSIGN_OR_RETURN(spec.eps_alpha,
                                 r.Positive(v["eps_alpha"], "/rappor/eps_alpha"));
    }
    if (v.contains("eps_beta")) {
      LDP_RELAX_ASSIGN_OR_RETURN(spec.eps_beta,
                                 r.Positive(v["eps_beta"], "/rappor/eps_beta"));
    }
    if (v.contains("k_max")) {
      LDP_RELAX_ASSIGN_OR_RETURN(spec.k_max,
                                 r.Integer(v["k_max"], "/rappor/k_max", 1));
    }
    cfg.rappor = spec;
  }
  if (doc.contains("kernel_table")) {
    const Json& v = doc["kernel_table"];
    if (absl::Status s =
            r.CheckKeys(v, "/kernel_table", {"eps_grid", "m_grid"});
        !s.ok()) {
      return s;
    }
    if (v.contains("eps_grid")) {
      LDP_RELAX_ASSIGN_OR_RETURN(
          cfg.kernel_table.eps_grid,
          r.Array<double>(v["eps_grid"], "/kernel_table/eps_grid",
                          [&](const Json& e, const std::string& p) {
                            return r.Positive(e, p);
                          }));
      const auto& grid = cfg.kernel_table.eps_grid;
      for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] < grid[i - 1]) {
          return r.Error(absl::StrCat("/kernel_table/eps_grid/", i),
                         "must be non-decreasing");
        }
      }
    }
    if (v.contains("m_grid")) {
      LDP_RELAX_ASSIGN_OR_RETURN(
          cfg.kernel_table.m_grid,
          r.Array<int>(v["m_grid"], "/kernel_table/m_grid",
                       [&](const Json& e,
                           const std::string& p) -> absl::StatusOr<int> {
                         absl::StatusOr<std::int64_t> i = r.Integer(e, p, 2);
                         if (!i.ok()) return i.status();
                         return static_cast<int>(*i);
                       }));
    }
  }
  if (doc.contains("audit")) {
    const Json& v = doc["audit"];
    if (absl::Status s = r.CheckKeys(v, "/audit",
                                     {"eps_values", "max_length", "m_values",
                                      "priors", "noisy_sampling_k_max"});
        !s.ok()) {
      return s;
    }
    AuditSpec& a = cfg.audit;
    if (v.contains("eps_values")) {
      LDP_RELAX_ASSIGN_OR_RETURN(
          a.eps_values,
          r.Array<double>(v["eps_values"], "/audit/eps_values",
                          [&](const Json& e, const std::string& p) {
                            return r.Positive(e, p);
                          }));
    }
    if (v.contains("max_length")) {
      LDP_RELAX_ASSIGN_OR_RETURN(
          const std::int64_t len,
          r.Integer(v["max_length"], "/audit/max_length", 1));
      a.max_length = static_cast<int>(len);
    }
    if (v.contains("m_values")) {
      LDP_RELAX_ASSIGN_OR_RETURN(
          a.m_values,
          r.Array<int>(v["m_values"], "/audit/m_values",
                       [&](const Json& e,
                           const std::string& p) -> absl::StatusOr<int> {
                         absl::StatusOr<std::int64_t> i = r.Integer(e, p, 2);
                         if (!i.ok()) return i.status();
                         return static_cast<int>(*i);
                       }));
    }
    if (v.contains("priors")) {
      LDP_RELAX_ASSIGN_OR_RETURN(
          a.priors,
          r.Array<std::vector<double>>(
              v["priors"], "/audit/priors",
              [&](const Json& e, const std::string& p)
                  -> absl::StatusOr<std::vector<double>> {
                return r.Array<double>(
                    e, p, [&](const Json& q, const std::string& qp) {
                      return r.Number(q, qp);
                    });
              }));
    }
    if (v.contains("noisy_sampling_k_max")) {
      LDP_RELAX_ASSIGN_OR_RETURN(
          a.noisy_sampling_k_max,
          r.Integer(v["noisy_sampling_k_max"], "/audit/noisy_sampling_k_max",
                    1));
    }
  }
  return cfg;
}

#undef LDP_RELAX_ASSIGN_OR_RETURN_IMPL
#undef LDP_RELAX_ASSIGN_OR_RETURN
#undef LDP_RELAX_CONCAT
#undef LDP_RELAX_CONCAT_INNER

inline absl::StatusOr<ExperimentConfig> LoadExperimentConfig(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<ExperimentConfig> cfg = ParseExperimentConfig(buffer.str());
  if (!cfg.ok()) {
    return absl::Status(cfg.status().code(),
                        absl::StrCat(path, ": ", cfg.status().message()));
  }
  return cfg;
}

}  // namespace ldp_relax

#endif  // LDP_RELAX_CONFIG_HPP_
