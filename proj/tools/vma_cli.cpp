// Command-line front end: run mechanisms on instance files, price slot
// auctions, verify incentives on a bid grid, compute ROI robustness curves,
// and generate synthetic datasets.
//
// Exit codes: 0 ok, 1 usage, 2 bad input, 3 profitable deviation found,
// 4 internal invariant breach.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vma/general_auctions.hpp"
#include "vma/io.hpp"
#include "vma/parallel.hpp"
#include "vma/robustness.hpp"
#include "vma/slot_auctions.hpp"
#include "vma/verify.hpp"
#include "vma/virtual_welfare.hpp"

namespace {

using nlohmann::json;
using namespace vma;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitDeviation = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

InstanceFile load_instance(const std::string& path) {
  return InstanceFile::parse(read_file(path));
}

std::vector<InstanceFile> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  return parse_jsonl(in);
}

double parse_alpha(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfinity;
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw ValidationError("alpha must be a number or \"inf\": " + text);
  }
}

void echo_config(const json& config) { std::cerr << config.dump() << '\n'; }

void emit(const json& out, const std::string& path) {
  if (path.empty()) {
    std::cout << out.dump() << '\n';
  } else {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write file: " + path);
    f << out.dump() << '\n';
  }
}

json result_json(const AuctionResult& result, const OutcomeSpace& outcomes) {
  json j;
  j["outcome"] = outcomes.labels[result.outcome];
  j["payments"] = result.payments;
  return j;
}

json assignment_json(const SlotAssignment& a) {
  json slots = json::array();
  for (const auto& s : a.slot_of) {
    if (s)
      slots.push_back(*s);
    else
      slots.push_back(nullptr);
  }
  json j;
  j["slot_of"] = slots;
  j["per_click_price"] = a.per_click_price;
  j["expected_payment"] = a.expected_payment;
  return j;
}

struct RunArgs {
  std::string mechanism;
  std::string instance_path;
  std::string alpha = "inf";
  std::string phi = "identity";
  std::vector<double> weights;
  std::vector<double> offsets;
  std::string out;
};

// "square" applies to every bidder; "identity,square,log1p" is per-bidder.
std::vector<VirtualValueFn> parse_phis(const std::string& spec_text, std::size_t bidders) {
  std::vector<VirtualValueFn> phis;
  std::stringstream ss(spec_text);
  std::string name;
  while (std::getline(ss, name, ',')) phis.push_back(VirtualValueFn::by_name(name));
  if (phis.size() == 1) phis.assign(bidders, phis.front());
  if (phis.size() != bidders)
    throw ValidationError("need one virtual value function per bidder");
  return phis;
}

int cmd_run(const RunArgs& args) {
  InstanceFile inst = load_instance(args.instance_path);
  double alpha = parse_alpha(args.alpha);
  echo_config(json{{"command", "run"},
                   {"mechanism", args.mechanism},
                   {"instance", args.instance_path},
                   {"alpha", args.alpha},
                   {"phi", args.phi}});

  const bool slot_mech = args.mechanism == "gsp" || args.mechanism == "ggsp-v2" ||
                         args.mechanism == "hybrid-gsp";
  if (slot_mech) {
    if (inst.kind != InstanceFile::Kind::slot)
      throw ValidationError(args.mechanism + " needs a slot instance");
    SlotAssignment a;
    if (args.mechanism == "gsp")
      a = gsp(inst.slot);
    else if (args.mechanism == "ggsp-v2")
      a = generalized_gsp_v2(inst.slot);
    else
      a = hybrid_gsp(inst.slot, alpha);
    emit(assignment_json(a), args.out);
    return kExitOk;
  }

  // General-domain mechanisms; ggsp-v1 also accepts slot instances by
  // expanding them to their matching outcome space.
  ValuationMatrix values;
  OutcomeSpace outcomes;
  if (inst.kind == InstanceFile::Kind::general) {
    values = inst.values;
    outcomes = inst.outcomes;
  } else if (args.mechanism == "ggsp-v1") {
    MatchingSpace space = matching_space(inst.slot);
    values = space.bid_values;
    outcomes = space.outcomes;
  } else {
    throw ValidationError(args.mechanism + " needs a general instance");
  }

  AuctionResult result;
  if (args.mechanism == "lexi" || args.mechanism == "ggsp-v1") {
    result = generalized_gsp_v1(values);
  } else if (args.mechanism == "lp") {
    result.outcome = lp_allocate(values, alpha);
    result.payments = lp_payments(values, alpha, result.outcome);
  } else if (args.mechanism == "lp-affine") {
    AffineParams params;
    params.alpha = alpha;
    params.weights =
        args.weights.empty() ? std::vector<double>(values.bidders(), 1.0) : args.weights;
    params.offsets =
        args.offsets.empty() ? std::vector<double>(values.outcomes(), 0.0) : args.offsets;
    result.outcome = lp_affine_allocate(values, params);
    result.payments.assign(values.bidders(), 0.0);  // allocation-only family
  } else if (args.mechanism == "virtual") {
    result = virtual_welfare_run(values, parse_phis(args.phi, values.bidders()));
  } else {
    throw ValidationError("unknown mechanism: " + args.mechanism);
  }
  emit(result_json(result, outcomes), args.out);
  return kExitOk;
}

struct PriceArgs {
  std::string instance_path;
  std::string mechanism = "ggsp-v2";
  std::string alpha = "inf";
  double type_grid = 0.0;
  std::string out;
};

int cmd_price(const PriceArgs& args) {
  InstanceFile inst = load_instance(args.instance_path);
  if (inst.kind != InstanceFile::Kind::slot)
    throw ValidationError("price needs a slot instance");
  echo_config(json{{"command", "price"},
                   {"mechanism", args.mechanism},
                   {"instance", args.instance_path},
                   {"alpha", args.alpha},
                   {"type_grid", args.type_grid}});

  SlotAssignment a;
  if (args.mechanism == "gsp") {
    a = gsp(inst.slot);
  } else if (args.mechanism == "ggsp-v2") {
    CriticalPriceOptions opts;
    if (args.type_grid > 0.0) opts.type_grid_step = args.type_grid;
    a = generalized_gsp_v2(inst.slot, opts);
  } else if (args.mechanism == "hybrid-gsp") {
    a = hybrid_gsp(inst.slot, parse_alpha(args.alpha));
  } else {
    throw ValidationError("price supports gsp, ggsp-v2, hybrid-gsp");
  }
  emit(assignment_json(a), args.out);
  return kExitOk;
}

struct VerifyArgs {
  std::string mechanism;
  std::string model = "simple-vm";
  std::string instance_path;
  std::string grid;
  std::string alpha = "inf";
  std::string phi = "identity";
  double model_alpha = 2.0;
  double gamma = 1.0;
  double eps = 1e-6;
  std::string out;
};

PreferenceModel model_from_name(const VerifyArgs& args) {
  if (args.model == "simple-vm") return PreferenceModel::simple_value_max();
  if (args.model == "quasilinear") return PreferenceModel::quasilinear();
  if (args.model == "roi-vm") return PreferenceModel::roi_value_max(args.gamma);
  if (args.model == "alpha-hybrid") return PreferenceModel::alpha_hybrid(args.model_alpha);
  throw ValidationError("unknown model: " + args.model);
}

int cmd_verify(const VerifyArgs& args) {
  InstanceFile inst = load_instance(args.instance_path);
  PreferenceModel model = model_from_name(args);
  Comparator cmp = comparator_for(model);
  double alpha = parse_alpha(args.alpha);

  // ROI value maximizers submit their willingness to pay.
  std::function<double(double)> report_map;
  if (model.kind() == PrefKind::roi_value_max) {
    double gamma = args.gamma;
    report_map = [gamma](double v) { return roi_reduced_value(v, gamma); };
  }

  std::vector<DeviationReport> reports;
  GridSpec grid;
  if (inst.kind == InstanceFile::Kind::slot) {
    double max_bid = *std::max_element(inst.slot.bids.begin(), inst.slot.bids.end());
    grid = args.grid.empty() ? GridSpec{0.0, 2.0 * max_bid, 0.05} : parse_grid(args.grid);
    SlotMechanism mech;
    if (args.mechanism == "gsp")
      mech = SlotMechanism::gsp();
    else if (args.mechanism == "hybrid-gsp")
      mech = SlotMechanism::hybrid(alpha);
    else
      throw ValidationError("slot instances support gsp or hybrid-gsp");
    reports = dsic_ae_check(mech, cmp, inst.slot, grid, args.eps, report_map);
  } else {
    double max_val = 0.0;
    for (std::size_t i = 0; i < inst.values.bidders(); ++i)
      for (std::size_t o = 0; o < inst.values.outcomes(); ++o)
        max_val = std::max(max_val, inst.values(i, o));
    grid = args.grid.empty() ? GridSpec{0.0, 2.0 * max_val, 0.05} : parse_grid(args.grid);
    GeneralMechanism mech;
    if (args.mechanism == "lexi" || args.mechanism == "ggsp-v1")
      mech = GeneralMechanism::lexi();
    else if (args.mechanism == "lp")
      mech = GeneralMechanism::lp(alpha);
    else if (args.mechanism == "virtual")
      mech = GeneralMechanism::virtual_welfare(
          parse_phis(args.phi, inst.values.bidders()));
    else
      throw ValidationError("general instances support lexi, ggsp-v1, lp, virtual");
    reports = dsic_ae_check(mech, cmp, inst.values, grid, args.eps, report_map);
  }

  echo_config(json{{"command", "verify"},
                   {"mechanism", args.mechanism},
                   {"model", model.name()},
                   {"instance", args.instance_path},
                   {"grid", json{{"lo", grid.lo}, {"hi", grid.hi}, {"step", grid.step}}},
                   {"eps", args.eps}});

  if (args.out.empty()) {
    write_deviation_csv(std::cout, reports);
  } else {
    std::ofstream f(args.out);
    if (!f) throw ValidationError("cannot write file: " + args.out);
    write_deviation_csv(f, reports);
  }
  return all_truthful(reports) ? kExitOk : kExitDeviation;
}

struct RobustnessArgs {
  std::string dataset_path;
  std::string gammas = "0:3:0.05";
  std::string out;
  std::string per_auction_out;
  std::size_t threads = 0;
};

int cmd_robustness(const RobustnessArgs& args) {
  std::vector<InstanceFile> files = load_dataset(args.dataset_path);
  std::vector<SlotAuctionInstance> dataset;
  dataset.reserve(files.size());
  for (const auto& f : files) {
    if (f.kind != InstanceFile::Kind::slot)
      throw ValidationError("robustness needs a slot dataset");
    dataset.push_back(f.slot);
  }
  GridSpec grid = parse_grid(args.gammas);
  echo_config(json{{"command", "robustness"},
                   {"dataset", args.dataset_path},
                   {"gammas", args.gammas},
                   {"threads", args.threads}});

  RobustnessReport report = gamma_curve(dataset, grid.points(), args.threads);

  if (args.out.empty()) {
    write_curve_csv(std::cout, report);
  } else {
    std::ofstream f(args.out);
    if (!f) throw ValidationError("cannot write file: " + args.out);
    write_curve_csv(f, report);
  }
  if (!args.per_auction_out.empty()) {
    std::ofstream f(args.per_auction_out);
    if (!f) throw ValidationError("cannot write file: " + args.per_auction_out);
    f << "auction,gamma_star\n";
    for (std::size_t i = 0; i < report.per_auction_gamma_star.size(); ++i) {
      double g = report.per_auction_gamma_star[i];
      f << files[i].id << ',' << (std::isnan(g) ? "excluded" : format_double(g)) << '\n';
    }
  }
  return kExitOk;
}

struct GenerateArgs {
  std::string preset;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  double sigma = 0.8;
  double ratio = 0.6;
  std::string out;
};

int cmd_generate(const GenerateArgs& args) {
  echo_config(json{{"command", "generate"},
                   {"preset", args.preset},
                   {"count", args.count},
                   {"seed", args.seed},
                   {"sigma", args.sigma},
                   {"ratio", args.ratio}});
  GeneratorOptions opts;
  opts.sigma = args.sigma;
  opts.alpha_ratio = args.ratio;
  std::vector<InstanceFile> instances = generate(args.preset, args.count, args.seed, opts);
  if (args.out.empty()) {
    write_jsonl(std::cout, instances);
  } else {
    std::ofstream f(args.out);
    if (!f) throw ValidationError("cannot write file: " + args.out);
    write_jsonl(f, instances);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Auctions for value-maximizing bidders"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a mechanism on an instance");
  run->add_option("--mechanism", run_args.mechanism,
                  "lexi|lp|lp-affine|virtual|gsp|ggsp-v1|ggsp-v2|hybrid-gsp")
      ->required();
  run->add_option("--instance", run_args.instance_path, "instance JSON file")->required();
  run->add_option("--alpha", run_args.alpha, "norm exponent, number or inf");
  run->add_option("--phi", run_args.phi,
                  "virtual value fn(s): identity|square|log1p, comma-separated per bidder");
  run->add_option("--weights", run_args.weights, "affine bidder weights");
  run->add_option("--offsets", run_args.offsets, "affine outcome offsets");
  run->add_option("--out", run_args.out, "write result JSON here instead of stdout");

  PriceArgs price_args;
  auto* price = app.add_subcommand("price", "Critical-value prices for a slot instance");
  price->add_option("--instance", price_args.instance_path)->required();
  price->add_option("--mechanism", price_args.mechanism, "gsp|ggsp-v2|hybrid-gsp");
  price->add_option("--alpha", price_args.alpha);
  price->add_option("--type-grid", price_args.type_grid,
                    "round critical bids up to this grid");
  price->add_option("--out", price_args.out);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Grid search for profitable deviations");
  verify->add_option("--mechanism", verify_args.mechanism)->required();
  verify->add_option("--model", verify_args.model,
                     "simple-vm|quasilinear|roi-vm|alpha-hybrid");
  verify->add_option("--instance", verify_args.instance_path)->required();
  verify->add_option("--grid", verify_args.grid, "lo:hi:step (default 0:2*max:0.05)");
  verify->add_option("--alpha", verify_args.alpha, "mechanism norm exponent");
  verify->add_option("--phi", verify_args.phi, "virtual value fn(s), comma-separated");
  verify->add_option("--model-alpha", verify_args.model_alpha, "alpha-hybrid exponent");
  verify->add_option("--gamma", verify_args.gamma, "ROI constraint for roi-vm");
  verify->add_option("--eps", verify_args.eps, "tie-exclusion margin");
  verify->add_option("--out", verify_args.out, "deviation report CSV");

  RobustnessArgs rob_args;
  auto* rob = app.add_subcommand("robustness", "Gamma curve over a slot dataset");
  rob->add_option("--dataset", rob_args.dataset_path, "JSON Lines file")->required();
  rob->add_option("--gammas", rob_args.gammas, "lo:hi:step");
  rob->add_option("--out", rob_args.out, "curve CSV");
  rob->add_option("--per-auction", rob_args.per_auction_out, "per-auction gamma* CSV");
  rob->add_option("--threads", rob_args.threads, "overrides VM_AUCTIONS_THREADS");

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "Write a synthetic dataset");
  gen->add_option("--preset", gen_args.preset, "uniform-general|slot-lognormal|gemini-like")
      ->required();
  gen->add_option("--count", gen_args.count)->required();
  gen->add_option("--seed", gen_args.seed);
  gen->add_option("--sigma", gen_args.sigma, "lognormal score spread");
  gen->add_option("--ratio", gen_args.ratio, "slot effect decay ratio");
  gen->add_option("--out", gen_args.out, "JSON Lines output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (price->parsed()) return cmd_price(price_args);
    if (verify->parsed()) return cmd_verify(verify_args);
    if (rob->parsed()) return cmd_robustness(rob_args);
    if (gen->parsed()) return cmd_generate(gen_args);
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
