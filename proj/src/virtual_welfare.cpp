#include "vma/virtual_welfare.hpp"

#include <cmath>

namespace vma {

VirtualValueFn VirtualValueFn::identity() {
  return VirtualValueFn{[](double x) { return x; }, [](double y) { return y; }, 0.0, 1e12};
}

VirtualValueFn VirtualValueFn::power(double exponent) {
  if (!(exponent > 0.0)) throw ValidationError("power transform needs a positive exponent");
  return VirtualValueFn{[exponent](double x) { return std::pow(x, exponent); },
                        [exponent](double y) { return std::pow(y, 1.0 / exponent); }, 0.0,
                        1e12};
}

VirtualValueFn VirtualValueFn::scaled(double factor) {
  if (!(factor > 0.0)) throw ValidationError("scale transform needs a positive factor");
  return VirtualValueFn{[factor](double x) { return factor * x; },
                        [factor](double y) { return y / factor; }, 0.0, 1e12};
}

VirtualValueFn VirtualValueFn::log1p() {
  return VirtualValueFn{[](double x) { return std::log1p(x); },
                        [](double y) { return std::expm1(y); }, 0.0, 1e12};
}

VirtualValueFn VirtualValueFn::by_name(const std::string& name) {
  if (name == "identity") return identity();
  if (name == "square") return power(2.0);
  if (name == "log1p") return log1p();
  throw ValidationError("unknown virtual value function: " + name);
}

double invert_virtual(const VirtualValueFn& fn, double y) {
  if (!fn.forward) throw ValidationError("virtual value function has no forward map");
  double lo = fn.domain_lo;
  double hi = fn.domain_hi;
  double f_lo = fn.forward(lo);
  double f_hi = fn.forward(hi);
  if (y < f_lo || y > f_hi) throw ValidationError("virtual price not invertible");
  if (fn.inverse) {
    double x = (*fn.inverse)(y);
    double back = fn.forward(x);
    if (std::abs(back - y) > 1e-9 * std::max(1.0, std::abs(y)))
      throw InvariantError("supplied inverse disagrees with forward map");
    return x;
  }
  while (hi - lo > 1e-12) {
    double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;  // exhausted double precision
    if (fn.forward(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  return lo + (hi - lo) / 2.0;
}

AuctionResult virtual_welfare_run(const ValuationMatrix& values,
                                  const std::vector<VirtualValueFn>& phis) {
  if (values.empty()) throw ValidationError("no bidders/outcomes");
  if (phis.size() != values.bidders())
    throw ValidationError("need one virtual value function per bidder");
  values.validate();

  ValuationMatrix transformed(values.bidders(), values.outcomes());
  for (std::size_t i = 0; i < values.bidders(); ++i) {
    for (std::size_t o = 0; o < values.outcomes(); ++o) {
      double v = values(i, o);
      if (v < phis[i].domain_lo || v > phis[i].domain_hi)
        throw ValidationError("value outside virtual function domain");
      transformed(i, o) = phis[i].forward(v);
    }
  }

  auto alloc = lexi_allocate(transformed);
  std::vector<double> virtual_prices = lexi_payments(transformed, alloc.outcome);

  AuctionResult result;
  result.outcome = alloc.outcome;
  result.trace = std::move(alloc.trace);
  result.payments.resize(values.bidders());
  for (std::size_t i = 0; i < values.bidders(); ++i)
    result.payments[i] = invert_virtual(phis[i], virtual_prices[i]);
  return result;
}

}  // namespace vma
