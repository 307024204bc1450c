#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "vma/virtual_welfare.hpp"

using namespace vma;
using namespace testsupport;

TEST_CASE("invert_virtual closed forms and bisection") {
  CHECK(invert_virtual(VirtualValueFn::power(2.0), 9.0) == doctest::Approx(3.0));
  CHECK(invert_virtual(VirtualValueFn::identity(), 4.25) == doctest::Approx(4.25));

  // Bisection fallback against the known closed form exp(y) - 1.
  VirtualValueFn log_fn;
  log_fn.forward = [](double x) { return std::log1p(x); };
  log_fn.domain_lo = 0.0;
  log_fn.domain_hi = 1e3;
  CHECK(invert_virtual(log_fn, std::log(3.0)) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(invert_virtual(log_fn, 0.0) == doctest::Approx(0.0));

  // y below the range of a shifted function is not invertible, with or
  // without a closed-form inverse.
  VirtualValueFn shifted;
  shifted.forward = [](double x) { return x + 1.0; };
  shifted.domain_lo = 0.0;
  shifted.domain_hi = 10.0;
  CHECK_THROWS_AS(invert_virtual(shifted, 0.5), ValidationError);
  shifted.inverse = [](double y) { return y - 1.0; };
  CHECK_THROWS_AS(invert_virtual(shifted, 0.5), ValidationError);
  CHECK(invert_virtual(shifted, 3.0) == doctest::Approx(2.0));
}

TEST_CASE("identity virtual welfare reduces to the lexicographic mechanism") {
  auto values = example_matrix();
  std::vector<VirtualValueFn> phis(values.bidders(), VirtualValueFn::identity());
  auto result = virtual_welfare_run(values, phis);
  CHECK(result.outcome == 0);
  CHECK(result.payments == std::vector<double>{0.0, 0.0, 1.0, 0.0});
}

TEST_CASE("squared virtual values keep the example outcome and prices") {
  auto values = example_matrix();
  std::vector<VirtualValueFn> phis(values.bidders(), VirtualValueFn::power(2.0));
  auto result = virtual_welfare_run(values, phis);
  CHECK(result.outcome == 0);
  CHECK(result.payments[0] == doctest::Approx(0.0));
  CHECK(result.payments[1] == doctest::Approx(0.0));
  CHECK(result.payments[2] == doctest::Approx(1.0));  // sqrt(v_2(o_2)^2)
  CHECK(result.payments[3] == doctest::Approx(0.0));
}

TEST_CASE("positive scaling is payment-invariant") {
  auto values = example_matrix();
  std::vector<VirtualValueFn> identity(values.bidders(), VirtualValueFn::identity());
  std::vector<VirtualValueFn> doubled(values.bidders(), VirtualValueFn::scaled(2.0));
  auto base = virtual_welfare_run(values, identity);
  auto scaled = virtual_welfare_run(values, doubled);
  CHECK(base.outcome == scaled.outcome);
  for (std::size_t i = 0; i < base.payments.size(); ++i)
    CHECK(scaled.payments[i] == doctest::Approx(base.payments[i]));
}

TEST_CASE("virtual welfare validates inputs") {
  auto values = example_matrix();
  std::vector<VirtualValueFn> too_few(2, VirtualValueFn::identity());
  CHECK_THROWS_AS(virtual_welfare_run(values, too_few), ValidationError);

  VirtualValueFn narrow = VirtualValueFn::identity();
  narrow.domain_hi = 1.0;  // example values exceed the domain
  std::vector<VirtualValueFn> phis(values.bidders(), narrow);
  CHECK_THROWS_AS(virtual_welfare_run(values, phis), ValidationError);
}
