#include <cmath>

#include "doctest.h"
#include "vma/core.hpp"
#include "vma/rng.hpp"

using namespace vma;

TEST_CASE("simple value maximizer prefers value over surplus") {
  auto m = PreferenceModel::simple_value_max();
  // 1000 clicks at $1 each beat 999 clicks for free.
  CHECK(prefer(m, {1000.0, 1000.0}, {999.0, 0.0}) == Pref::a_better);
  CHECK(prefer(m, {999.0, 0.0}, {1000.0, 1000.0}) == Pref::b_better);
  // Equal value: cheaper wins; identical bundles tie.
  CHECK(prefer(m, {5.0, 1.0}, {5.0, 2.0}) == Pref::a_better);
  CHECK(prefer(m, {5.0, 1.0}, {5.0, 1.0}) == Pref::tie);
  // Feasible beats infeasible regardless of value.
  CHECK(prefer(m, {1.0, 0.5}, {100.0, 101.0}) == Pref::a_better);
}

TEST_CASE("quasilinear compares surplus") {
  auto m = PreferenceModel::quasilinear();
  CHECK(prefer(m, {3.0, 1.0}, {2.0, 0.0}) == Pref::tie);
  CHECK(prefer(m, {3.0, 0.5}, {2.0, 0.0}) == Pref::a_better);
  CHECK(prefer(m, {3.0, 2.0}, {2.0, 0.0}) == Pref::b_better);
}

TEST_CASE("ROI value maximizer") {
  auto m = PreferenceModel::roi_value_max(1.0);
  // (10,6) misses ROI 1; (4,2) meets it exactly.
  CHECK(prefer(m, {10.0, 6.0}, {4.0, 2.0}) == Pref::b_better);
  CHECK(feasible(m, {10.0, 5.0}));
  CHECK(!feasible(PreferenceModel::roi_value_max(2.0), {10.0, 5.0}));
  CHECK(feasible(PreferenceModel::simple_value_max(), {5.0, 5.0}));
}

TEST_CASE("alpha-hybrid utility") {
  auto m = PreferenceModel::alpha_hybrid(2.0);
  // 9 - 4 = 5 beats 4 - 0 = 4.
  CHECK(prefer(m, {3.0, 2.0}, {2.0, 0.0}) == Pref::a_better);
  // alpha = 1 is quasilinear.
  CHECK(prefer(PreferenceModel::alpha_hybrid(1.0), {3.0, 1.0}, {2.0, 0.0}) == Pref::tie);
  // Large alpha follows the limit ordering.
  auto inf = PreferenceModel::alpha_hybrid(kInfinity);
  CHECK(prefer(inf, {10.0, 9.0}, {5.0, 0.0}) == Pref::a_better);
  CHECK(prefer(inf, {5.0, 5.0}, {3.0, 3.0}) == Pref::tie);  // both zero utility
}

TEST_CASE("roi_reduced_value") {
  CHECK(roi_reduced_value(10.0, 1.0) == doctest::Approx(5.0));
  CHECK(roi_reduced_value(12.0, 2.0) == doctest::Approx(4.0));
  CHECK(roi_reduced_value(7.0, 1e-9) == doctest::Approx(7.0));  // gamma -> 0 limit
}

TEST_CASE("model construction validates parameters") {
  CHECK_THROWS_AS(PreferenceModel::roi_value_max(0.0), ValidationError);
  CHECK_THROWS_AS(PreferenceModel::roi_value_max(-1.0), ValidationError);
  CHECK_THROWS_AS(PreferenceModel::alpha_hybrid(0.5), ValidationError);
}

namespace {

Bundle random_bundle(Rng& rng) { return {rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)}; }

Bundle random_ir_bundle(Rng& rng) {
  double v = rng.uniform(0.0, 10.0);
  return {v, rng.uniform(0.0, v)};
}

}  // namespace

TEST_CASE("prefer is a total preorder for each model") {
  std::vector<PreferenceModel> models = {
      PreferenceModel::quasilinear(), PreferenceModel::simple_value_max(),
      PreferenceModel::roi_value_max(1.5), PreferenceModel::alpha_hybrid(3.0),
      PreferenceModel::alpha_hybrid(kInfinity)};
  Rng rng(2024);
  for (const auto& model : models) {
    for (int trial = 0; trial < 2000; ++trial) {
      Bundle a = random_bundle(rng), b = random_bundle(rng), c = random_bundle(rng);
      CHECK(prefer(model, a, b) == flip(prefer(model, b, a)));
      // Transitivity of "at least as good".
      if (prefer(model, a, b) != Pref::b_better && prefer(model, b, c) != Pref::b_better)
        CHECK(prefer(model, a, c) != Pref::b_better);
    }
  }
}

TEST_CASE("alpha-hybrid is super-quasilinear on individually rational bundles") {
  Rng rng(7);
  for (double alpha : {1.0, 2.0, 5.0, 17.0, 64.0, kInfinity}) {
    auto model = PreferenceModel::alpha_hybrid(alpha);
    int checked = 0;
    while (checked < 2000) {
      Bundle a = random_ir_bundle(rng), b = random_ir_bundle(rng);
      if (!(a.value > b.value && a.value - a.payment >= b.value - b.payment)) continue;
      ++checked;
      CHECK(prefer(model, a, b) != Pref::b_better);
    }
  }
}

TEST_CASE("ROI preference between feasible bundles equals simple-VM on reduced values") {
  Rng rng(11);
  double gamma = 0.7;
  auto roi = PreferenceModel::roi_value_max(gamma);
  auto simple = PreferenceModel::simple_value_max();
  int checked = 0;
  while (checked < 2000) {
    Bundle a = random_bundle(rng), b = random_bundle(rng);
    if (!feasible(roi, a) || !feasible(roi, b)) continue;
    ++checked;
    Bundle ra{a.value / (1.0 + gamma), a.payment};
    Bundle rb{b.value / (1.0 + gamma), b.payment};
    CHECK(prefer(roi, a, b) == prefer(simple, ra, rb));
  }
}

TEST_CASE("alpha-hybrid at alpha=64 agrees with simple-VM on separated feasible pairs") {
  Rng rng(13);
  auto hybrid = PreferenceModel::alpha_hybrid(64.0);
  auto simple = PreferenceModel::simple_value_max();
  int checked = 0;
  while (checked < 2000) {
    Bundle a = random_ir_bundle(rng), b = random_ir_bundle(rng);
    double sep = 0.01;
    if (std::abs(a.value - b.value) < sep) continue;
    if (a.value - a.payment < sep || b.value - b.payment < sep) continue;
    ++checked;
    CHECK(prefer(hybrid, a, b) == prefer(simple, a, b));
  }
}
