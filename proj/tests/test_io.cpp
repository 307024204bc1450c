#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "vma/general_auctions.hpp"
#include "vma/io.hpp"
#include "vma/robustness.hpp"

using namespace vma;
using namespace testsupport;

namespace {

const char* kExampleJson = R"({
  "kind": "general",
  "id": "example",
  "outcomes": ["o1", "o2", "o3"],
  "values": [[3, 3, 1], [0.5, 1, 1], [2, 1, 0], [0.5, 0.5, 0.5]]
})";

}  // namespace

TEST_CASE("parsing a general instance") {
  auto inst = InstanceFile::parse(kExampleJson);
  CHECK(inst.kind == InstanceFile::Kind::general);
  CHECK(inst.outcomes.labels == std::vector<std::string>{"o1", "o2", "o3"});
  CHECK(inst.values == example_matrix());
  auto result = generalized_gsp_v1(inst.values);
  CHECK(inst.outcomes.labels[result.outcome] == "o1");
}

TEST_CASE("schema violations carry a location") {
  CHECK_THROWS_AS(InstanceFile::parse("not json"), SchemaError);
  CHECK_THROWS_AS(InstanceFile::parse(R"({"kind":"general","outcomes":[],"values":[[1]]})"),
                  SchemaError);
  CHECK_THROWS_AS(
      InstanceFile::parse(R"({"kind":"general","outcomes":["a"],"values":[[1,2]]})"),
      SchemaError);
  try {
    InstanceFile::parse(R"({"kind":"slot","alpha":[0.5,1.0],"beta":[1,1],"bids":[1,2]})");
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("descending") != std::string::npos);
  }
  try {
    InstanceFile::parse(R"({"kind":"general","outcomes":["a"],"values":[["x"]]})");
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.pointer == "/values/0/0");
  }
}

TEST_CASE("serialize-parse round trip") {
  for (const char* preset : {"uniform-general", "slot-lognormal", "gemini-like"}) {
    auto instances = generate(preset, 25, 99);
    for (const auto& inst : instances) {
      auto back = InstanceFile::parse(inst.serialize());
      CHECK(back.serialize() == inst.serialize());
    }
  }
}

TEST_CASE("generation is deterministic and seed-sensitive") {
  std::ostringstream a, b, c;
  write_jsonl(a, generate("slot-lognormal", 50, 42));
  write_jsonl(b, generate("slot-lognormal", 50, 42));
  write_jsonl(c, generate("slot-lognormal", 50, 43));
  CHECK(a.str() == b.str());
  CHECK(a.str() != c.str());
  CHECK(generate("uniform-general", 0, 1).empty());
  CHECK_THROWS_AS(generate("nope", 1, 1), ValidationError);
}

TEST_CASE("generated instances are valid") {
  for (auto& inst : generate("slot-lognormal", 40, 7)) inst.slot.validate();
  for (auto& inst : generate("uniform-general", 40, 7)) inst.values.validate();
}

TEST_CASE("gemini-like saturates by gamma = 2") {
  auto files = generate("gemini-like", 300, 12345);
  std::vector<SlotAuctionInstance> dataset;
  for (auto& f : files) dataset.push_back(f.slot);
  auto report = gamma_curve(dataset, {1.0, 2.0, 3.0});
  CHECK(report.curve[0].second == 0.0);  // gamma* is always above 1 here
  CHECK(report.curve[1].second == 1.0);  // everything certified by gamma = 2
  CHECK(report.curve[2].second == 1.0);
}

TEST_CASE("grid strings") {
  auto g = parse_grid("0:3:0.05");
  CHECK(g.points().size() == 61);
  CHECK_THROWS_AS(parse_grid("1:0:0.05"), ValidationError);
  CHECK_THROWS_AS(parse_grid("oops"), ValidationError);
}

TEST_CASE("jsonl parsing reports the offending line") {
  std::istringstream in("{\"kind\":\"slot\",\"alpha\":[1.0],\"beta\":[1],\"bids\":[2]}\n"
                        "{\"kind\":\"nope\"}\n");
  try {
    parse_jsonl(in);
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("curve csv shape") {
  SlotAuctionInstance one_slot;
  one_slot.slot_effects = {1.0};
  one_slot.ad_effects = {1.0, 1.0};
  one_slot.bids = {10.0, 6.0};
  auto report = gamma_curve({one_slot}, GridSpec{0.0, 3.0, 0.05}.points());
  std::ostringstream out;
  write_curve_csv(out, report);
  std::string text = out.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 62);  // header + 61 rows
  CHECK(text.rfind("gamma,fraction,excluded_count", 0) == 0);
}
