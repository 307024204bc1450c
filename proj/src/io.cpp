#include "vma/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "vma/rng.hpp"

namespace vma {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const std::string& pointer) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(pointer + "/" + key, "missing field");
  return *it;
}

std::vector<double> number_array(const json& j, const std::string& pointer) {
  if (!j.is_array()) throw SchemaError(pointer, "expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number())
      throw SchemaError(pointer + "/" + std::to_string(k), "expected a number");
    out.push_back(j[k].get<double>());
  }
  return out;
}

}  // namespace

InstanceFile InstanceFile::parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaError("", "not valid JSON");
  if (!j.is_object()) throw SchemaError("", "expected a JSON object");

  InstanceFile f;
  const json& kind_field = require(j, "kind", "");
  if (!kind_field.is_string()) throw SchemaError("/kind", "expected a string");
  std::string kind = kind_field.get<std::string>();
  if (j.contains("id") && j["id"].is_string()) f.id = j["id"].get<std::string>();
  if (j.contains("seed") && j["seed"].is_number()) f.seed = j["seed"].get<std::uint64_t>();

  if (kind == "general") {
    f.kind = Kind::general;
    const json& outcomes = require(j, "outcomes", "");
    if (!outcomes.is_array() || outcomes.empty())
      throw SchemaError("/outcomes", "expected a non-empty array of labels");
    for (const auto& label : outcomes) {
      if (!label.is_string()) throw SchemaError("/outcomes", "labels must be strings");
      f.outcomes.labels.push_back(label.get<std::string>());
    }
    const json& values = require(j, "values", "");
    if (!values.is_array() || values.empty())
      throw SchemaError("/values", "expected a non-empty array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < values.size(); ++i)
      rows.push_back(number_array(values[i], "/values/" + std::to_string(i)));
    try {
      f.values = ValuationMatrix::from_rows(rows);
    } catch (const ValidationError& e) {
      throw SchemaError("/values", e.what());
    }
    if (f.values.outcomes() != f.outcomes.size())
      throw SchemaError("/values", "row length does not match the outcome count");
  } else if (kind == "slot") {
    f.kind = Kind::slot;
    f.slot.slot_effects = number_array(require(j, "alpha", ""), "/alpha");
    f.slot.ad_effects = number_array(require(j, "beta", ""), "/beta");
    f.slot.bids = number_array(require(j, "bids", ""), "/bids");
    if (j.contains("types")) f.slot.types = number_array(j["types"], "/types");
    try {
      f.slot.validate();
    } catch (const ValidationError& e) {
      throw SchemaError("/alpha", e.what());
    }
  } else {
    throw SchemaError("/kind", "must be \"general\" or \"slot\"");
  }
  return f;
}

std::string InstanceFile::serialize() const {
  json j;
  j["kind"] = kind == Kind::general ? "general" : "slot";
  j["id"] = id;
  j["seed"] = seed;
  if (kind == Kind::general) {
    j["outcomes"] = outcomes.labels;
    j["values"] = values.rows();
  } else {
    j["alpha"] = slot.slot_effects;
    j["beta"] = slot.ad_effects;
    j["bids"] = slot.bids;
    if (slot.types) j["types"] = *slot.types;
  }
  return j.dump();
}

std::vector<InstanceFile> parse_jsonl(std::istream& in) {
  std::vector<InstanceFile> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(InstanceFile::parse(line));
    } catch (const SchemaError& e) {
      throw SchemaError("line " + std::to_string(lineno) + e.pointer, e.detail);
    }
  }
  return out;
}

void write_jsonl(std::ostream& out, const std::vector<InstanceFile>& instances) {
  for (const auto& inst : instances) out << inst.serialize() << '\n';
}

namespace {

InstanceFile make_uniform_general(std::uint64_t seed, std::size_t index) {
  Rng rng(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
  InstanceFile f;
  f.kind = InstanceFile::Kind::general;
  f.id = "gen-" + std::to_string(index);
  f.seed = seed;
  std::size_t n = 2 + rng.below(4);  // bidders in [2, 5]
  std::size_t k = 2 + rng.below(4);  // outcomes in [2, 5]
  for (std::size_t o = 0; o < k; ++o) f.outcomes.labels.push_back("o" + std::to_string(o + 1));
  f.values = ValuationMatrix(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t o = 0; o < k; ++o) f.values(i, o) = rng.uniform(0.0, 10.0);
  return f;
}

InstanceFile make_slot_lognormal(std::uint64_t seed, std::size_t index,
                                 const GeneratorOptions& opts, bool oversubscribed) {
  Rng rng(seed ^ (0xBF58476D1CE4E5B9ULL * (index + 1)));
  InstanceFile f;
  f.kind = InstanceFile::Kind::slot;
  f.id = "slot-" + std::to_string(index);
  f.seed = seed;
  std::size_t m = 1 + rng.below(4);   // slots in [1, 4]
  // Oversubscribed keeps at least one bidder below the last slot.
  std::size_t n_lo = oversubscribed ? std::max<std::size_t>(3, m + 1) : 3;
  std::size_t n = n_lo + rng.below(13 - n_lo);  // bidders up to 12
  if (m > n) m = n;
  double effect = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    f.slot.slot_effects.push_back(effect);
    effect *= opts.alpha_ratio;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double score = rng.lognormal(0.0, opts.sigma);
    double beta = rng.lognormal(0.0, 0.25);
    f.slot.ad_effects.push_back(beta);
    f.slot.bids.push_back(score / beta);
  }
  return f;
}

}  // namespace

std::vector<InstanceFile> generate(const std::string& preset, std::size_t count,
                                   std::uint64_t seed, const GeneratorOptions& opts) {
  std::vector<InstanceFile> out;
  out.reserve(count);
  if (preset == "uniform-general") {
    for (std::size_t i = 0; i < count; ++i) out.push_back(make_uniform_general(seed, i));
  } else if (preset == "slot-lognormal") {
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(make_slot_lognormal(seed, i, opts, false));
  } else if (preset == "gemini-like") {
    // Half-ratio slot decay with at least one unseated bidder keeps every
    // per-slot term strictly below 2, so the certified fraction saturates
    // as gamma approaches 2.
    GeneratorOptions tuned = opts;
    tuned.alpha_ratio = 0.5;
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(make_slot_lognormal(seed, i, tuned, true));
  } else {
    throw ValidationError("unknown preset: " + preset);
  }
  return out;
}

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  char trailing = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &g.lo, &g.hi, &g.step, &trailing) != 3)
    throw ValidationError("grid must be lo:hi:step, got: " + text);
  if (!(g.step > 0.0) || g.hi < g.lo) throw ValidationError("invalid grid range: " + text);
  return g;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_deviation_csv(std::ostream& out, const std::vector<DeviationReport>& reports) {
  out << "bidder,truthful_value,truthful_payment,best_value,best_payment,"
         "profitable,tie_excluded,error_points,best_report\n";
  for (const auto& r : reports) {
    out << r.bidder << ',' << format_double(r.truthful.value) << ','
        << format_double(r.truthful.payment) << ',' << format_double(r.best.value) << ','
        << format_double(r.best.payment) << ',' << (r.profitable ? 1 : 0) << ','
        << r.tie_excluded << ',' << r.error_points << ',' << '"';
    for (std::size_t k = 0; k < r.best_report.size(); ++k)
      out << (k ? ";" : "") << format_double(r.best_report[k]);
    out << '"' << '\n';
  }
}

void write_curve_csv(std::ostream& out, const RobustnessReport& report) {
  out << "gamma,fraction,excluded_count\n";
  for (const auto& [gamma, fraction] : report.curve)
    out << format_double(gamma) << ',' << format_double(fraction) << ',' << report.excluded
        << '\n';
}

}  // namespace vma
