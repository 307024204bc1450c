#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vma/core.hpp"

// General-domain auctions over an explicit finite outcome space:
// the lexicographic welfare mechanism for value maximizers, the
// L^alpha-welfare family it is the limit of, and L^alpha-affine maximizers.

namespace vma {

// One round of the lexicographic allocation: the bidder considered, the
// value it locked in, and the outcomes that survive its restriction.
struct LexiRound {
  std::size_t winner = 0;
  double value = 0.0;
  std::vector<std::size_t> surviving;
};

struct LexiTrace {
  std::vector<LexiRound> rounds;
  // Smallest gap among the comparisons that decided the run; 0 when some
  // decision was an exact tie. Used by the verifier as its tie probe.
  double decision_margin = 0.0;
};

struct LexiOutcome {
  std::size_t outcome = 0;
  LexiTrace trace;
};

struct AuctionResult {
  std::size_t outcome = 0;
  std::vector<double> payments;
  std::optional<LexiTrace> trace;
};

// Welfare-maximizing allocation for value maximizers: each round the
// unconsidered bidder with the largest achievable value over the surviving
// outcomes (ties to the lower bidder index) restricts the surviving set to
// the outcomes achieving that value; the lowest-index survivor wins.
LexiOutcome lexi_allocate(const ValuationMatrix& values);

// Externality payments for lexi_allocate: rerun without bidder i; among the
// bidders whose value differs between the two outcomes, charge the largest
// value obtained when i is absent (0 if nobody's value changes).
// `chosen` must equal lexi_allocate(values).outcome.
std::vector<double> lexi_payments(const ValuationMatrix& values, std::size_t chosen);

// argmax_o of the L^alpha norm of the value column (lowest index on ties).
// alpha = inf delegates to lexi_allocate.
std::size_t lp_allocate(const ValuationMatrix& values, double alpha);

// Externality payments p_i = (sum_{j != i} v_j(o_-i)^a - v_j(o*)^a)^(1/a);
// alpha = inf delegates to lexi_payments. Sums below -1e-12 indicate an
// allocation bug and throw; tiny negatives round to 0.
std::vector<double> lp_payments(const ValuationMatrix& values, double alpha,
                                std::size_t chosen);

// Single-bidder payment fast paths for the verifier. Callers must pass the
// outcome the corresponding allocator actually returned.
double lexi_payment_for(const ValuationMatrix& values, std::size_t chosen,
                        std::size_t bidder);
double lp_payment_for(const ValuationMatrix& values, double alpha, std::size_t chosen,
                      std::size_t bidder);

// Bidder weights, outcome offsets, and the norm exponent of an
// L^alpha-affine maximizer.
struct AffineParams {
  std::vector<double> weights;  // one per bidder, > 0
  std::vector<double> offsets;  // one per outcome, >= 0
  double alpha = 1.0;           // in [1, inf]
};

// argmax_o of (z(o)^a + sum_i (w_i v_i(o))^a)^(1/a), lowest index on ties.
std::size_t lp_affine_allocate(const ValuationMatrix& values, const AffineParams& params);

// Smallest gap between the top outcome score and the rest under the
// L^alpha objective (the mechanism's deciding comparison).
double lp_decision_margin(const ValuationMatrix& values, double alpha);

struct LpChoice {
  std::size_t outcome = 0;
  double margin = 0.0;
};

// Allocation and deciding margin in one pass.
LpChoice lp_allocate_with_margin(const ValuationMatrix& values, double alpha);

}  // namespace vma
