#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "vma/core.hpp"
#include "vma/rng.hpp"
#include "vma/slot_auctions.hpp"

// Shared test data generators and independent brute-force oracles. The
// oracles deliberately avoid the library's allocation code paths.

namespace testsupport {

// The running example used across mechanism tests: three outcomes, four
// bidders, lexicographic winner o1 with payments (0, 0, 1, 0).
inline vma::ValuationMatrix example_matrix() {
  return vma::ValuationMatrix::from_rows({
      {3.0, 3.0, 1.0},
      {0.5, 1.0, 1.0},
      {2.0, 1.0, 0.0},
      {0.5, 0.5, 0.5},
  });
}

// Draws n*k values in [lo, hi] that are pairwise at least `gap` apart.
inline vma::ValuationMatrix separated_matrix(vma::Rng& rng, std::size_t n, std::size_t k,
                                             double lo, double hi, double gap) {
  std::vector<double> drawn;
  drawn.reserve(n * k);
  while (drawn.size() < n * k) {
    double x = rng.uniform(lo, hi);
    bool ok = true;
    for (double d : drawn)
      if (std::abs(x - d) < gap) {
        ok = false;
        break;
      }
    if (ok) drawn.push_back(x);
  }
  vma::ValuationMatrix m(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t o = 0; o < k; ++o) m(i, o) = drawn[i * k + o];
  return m;
}

// Slot instance with strictly descending slot effects and pairwise
// separated scores. Types are set equal to bids.
inline vma::SlotAuctionInstance separated_slot_instance(vma::Rng& rng, std::size_t max_n,
                                                        std::size_t max_m,
                                                        double score_gap = 0.05) {
  vma::SlotAuctionInstance inst;
  std::size_t n = 2 + rng.below(max_n - 1);
  std::size_t m = 1 + rng.below(max_m);
  if (m > n) m = n;
  double effect = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    inst.slot_effects.push_back(effect);
    effect *= rng.uniform(0.35, 0.65);
  }
  std::vector<double> scores;
  while (scores.size() < n) {
    double s = rng.uniform(0.5, 10.0);
    bool ok = true;
    for (double t : scores)
      if (std::abs(s - t) < score_gap) {
        ok = false;
        break;
      }
    if (ok) scores.push_back(s);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double beta = rng.uniform(0.5, 2.0);
    inst.ad_effects.push_back(beta);
    inst.bids.push_back(scores[i] / beta);
  }
  inst.types = inst.bids;
  return inst;
}

// Descending-sorted value vector of one outcome column.
inline std::vector<double> sorted_column(const vma::ValuationMatrix& v, std::size_t o) {
  std::vector<double> col(v.bidders());
  for (std::size_t i = 0; i < v.bidders(); ++i) col[i] = v(i, o);
  std::sort(col.begin(), col.end(), std::greater<double>());
  return col;
}

// Independent lexicographic-welfare oracle: argmax outcome by
// descending-sorted value vector, lowest index on ties.
inline std::size_t leximax_oracle(const vma::ValuationMatrix& v) {
  std::size_t best = 0;
  std::vector<double> best_col = sorted_column(v, 0);
  for (std::size_t o = 1; o < v.outcomes(); ++o) {
    std::vector<double> col = sorted_column(v, o);
    if (std::lexicographical_compare(best_col.begin(), best_col.end(), col.begin(),
                                     col.end())) {
      best = o;
      best_col = std::move(col);
    }
  }
  return best;
}

struct VcgResult {
  std::size_t outcome = 0;
  std::vector<double> payments;
};

// Textbook VCG by full enumeration: welfare-maximizing outcome, each bidder
// charged others' best-without-it minus others' value at the chosen outcome.
inline VcgResult vcg_oracle(const vma::ValuationMatrix& v) {
  auto welfare = [&](std::size_t o, std::size_t skip) {
    double sum = 0.0;
    for (std::size_t i = 0; i < v.bidders(); ++i)
      if (i != skip) sum += v(i, o);
    return sum;
  };
  const std::size_t none = v.bidders();
  VcgResult res;
  double best = -1.0;
  for (std::size_t o = 0; o < v.outcomes(); ++o) {
    double w = welfare(o, none);
    if (o == 0 || w > best) {
      best = w;
      res.outcome = o;
    }
  }
  res.payments.resize(v.bidders());
  for (std::size_t i = 0; i < v.bidders(); ++i) {
    double best_without = 0.0;
    for (std::size_t o = 0; o < v.outcomes(); ++o)
      best_without = std::max(best_without, welfare(o, i));
    res.payments[i] = best_without - welfare(res.outcome, i);
  }
  return res;
}

// Minimum bid (on a fine grid) for which the bidder keeps its GSP slot.
inline double gsp_min_keeping_bid(const vma::SlotAuctionInstance& inst, std::size_t bidder,
                                  double step = 0.001) {
  auto slot_at = [&](double bid) {
    vma::SlotAuctionInstance probe = inst;
    probe.bids[bidder] = bid;
    auto a = vma::gsp(probe);
    return a.slot_of[bidder];
  };
  auto target = slot_at(inst.bids[bidder]);
  double last = inst.bids[bidder];
  for (double b = inst.bids[bidder]; b >= 0.0; b -= step) {
    if (slot_at(b) != target) break;
    last = b;
  }
  return last;
}

}  // namespace testsupport
