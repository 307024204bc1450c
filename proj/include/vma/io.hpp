#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vma/core.hpp"
#include "vma/robustness.hpp"
#include "vma/slot_auctions.hpp"
#include "vma/verify.hpp"

// Instance and dataset file formats plus the synthetic generators.
// Instances are JSON objects, datasets are JSON Lines, analysis outputs
// are CSV.

namespace vma {

// Parse failure with a JSON-pointer-style location of the offending field.
struct SchemaError : ValidationError {
  SchemaError(std::string where, std::string what_failed)
      : ValidationError(where.empty() ? what_failed : where + ": " + what_failed),
        pointer(std::move(where)),
        detail(std::move(what_failed)) {}
  std::string pointer;
  std::string detail;
};

struct InstanceFile {
  enum class Kind { general, slot };

  Kind kind = Kind::general;
  std::string id;
  std::uint64_t seed = 0;

  // kind == general
  OutcomeSpace outcomes;
  ValuationMatrix values;

  // kind == slot
  SlotAuctionInstance slot;

  static InstanceFile parse(const std::string& text);
  std::string serialize() const;  // single-line JSON, exact round-trip
};

// One instance per line.
std::vector<InstanceFile> parse_jsonl(std::istream& in);
void write_jsonl(std::ostream& out, const std::vector<InstanceFile>& instances);

struct GeneratorOptions {
  double sigma = 0.8;        // lognormal score spread (slot presets)
  double alpha_ratio = 0.6;  // geometric slot-effect decay (slot presets)
};

// Presets: "uniform-general" | "slot-lognormal" | "gemini-like".
// Deterministic given the seed.
std::vector<InstanceFile> generate(const std::string& preset, std::size_t count,
                                   std::uint64_t seed, const GeneratorOptions& opts = {});

// "lo:hi:step", inclusive of lo, exclusive of hi + step/2.
GridSpec parse_grid(const std::string& text);

void write_deviation_csv(std::ostream& out, const std::vector<DeviationReport>& reports);
void write_curve_csv(std::ostream& out, const RobustnessReport& report);

// %.17g rendering used by all CSV output.
std::string format_double(double x);

}  // namespace vma
