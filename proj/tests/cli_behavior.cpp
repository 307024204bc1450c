// End-to-end checks of the CLI surface: subcommands, exit codes, and file
// outputs. Run with --cli <path-to-binary>.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string g_cli;
int g_failures = 0;

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  CmdResult res;
  std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int rc = pclose(pipe);
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

void expect(bool cond, const std::string& what) {
  if (!cond) {
    ++g_failures;
    std::cerr << "FAIL: " << what << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; i += 2)
    if (std::string(argv[i]) == "--cli") g_cli = argv[i + 1];
  if (g_cli.empty()) {
    std::cerr << "usage: cli_behavior --cli <path>\n";
    return 1;
  }

  fs::path dir = fs::temp_directory_path() / "vma-cli-behavior";
  fs::create_directories(dir);

  fs::path slot = dir / "slot.json";
  std::ofstream(slot) << R"({"kind":"slot","alpha":[1.0,0.5],"beta":[1,1,1],"bids":[10,6,4]})";
  fs::path adversarial = dir / "lp_trap.json";
  std::ofstream(adversarial)
      << R"({"kind":"general","outcomes":["a","b"],"values":[[5,2],[0,4]]})";
  fs::path broken = dir / "broken.json";
  std::ofstream(broken) << R"({"kind":"slot","alpha":[0.5,1.0],"beta":[1,1],"bids":[1,2]})";

  expect(run_cli("").exit_code == 1, "missing subcommand should exit 1");
  expect(run_cli("run --mechanism warp --instance " + slot.string()).exit_code == 2,
         "unknown mechanism should exit 2");
  expect(run_cli("run --mechanism gsp --instance " + broken.string()).exit_code == 2,
         "non-descending alpha should exit 2");
  expect(run_cli("generate --preset nope --count 1").exit_code == 2,
         "unknown preset should exit 2");

  expect(run_cli("run --mechanism gsp --instance " + slot.string()).exit_code == 0,
         "gsp run should exit 0");
  expect(run_cli("price --instance " + slot.string() + " --mechanism ggsp-v2").exit_code == 0,
         "price should exit 0");
  expect(run_cli("verify --mechanism gsp --model simple-vm --instance " +
                 slot.string()).exit_code == 0,
         "truthful verify should exit 0");
  expect(run_cli("verify --mechanism lp --alpha 2 --model quasilinear --instance " +
                 adversarial.string()).exit_code == 3,
         "found deviation should exit 3");

  fs::path general = dir / "example.json";
  std::ofstream(general)
      << R"({"kind":"general","outcomes":["o1","o2","o3"],)"
      << R"("values":[[3,3,1],[0.5,1,1],[2,1,0],[0.5,0.5,0.5]]})";
  auto virt = run_cli("run --mechanism virtual --phi square --instance " + general.string());
  expect(virt.exit_code == 0 && virt.out.find("\"o1\"") != std::string::npos,
         "virtual run should pick o1");
  expect(run_cli("verify --mechanism virtual --phi log1p --model simple-vm --instance " +
                 general.string() + " --grid 0:6:0.5").exit_code == 0,
         "virtual verify should exit 0");
  expect(run_cli("run --mechanism virtual --phi square,log1p --instance " +
                 general.string()).exit_code == 2,
         "phi count mismatch should exit 2");

  // ROI model with reduced-value bidding stays truthful under gsp.
  fs::path typed = dir / "typed.json";
  std::ofstream(typed)
      << R"({"kind":"slot","alpha":[1.0,0.5],"beta":[1,1,1],"bids":[10,6,4],)"
      << R"("types":[10,6,4]})";
  expect(run_cli("verify --mechanism gsp --model roi-vm --gamma 1 --instance " +
                 typed.string()).exit_code == 0,
         "roi-vm verify should exit 0");

  fs::path empty = dir / "empty.jsonl";
  expect(run_cli("generate --preset uniform-general --count 0 --out " +
                 empty.string()).exit_code == 0,
         "count=0 should exit 0");
  expect(fs::file_size(empty) == 0, "count=0 should write an empty file");

  // Dataset pipeline with a capped thread pool.
  fs::path data = dir / "data.jsonl";
  fs::path curve = dir / "curve.csv";
  expect(run_cli("generate --preset gemini-like --count 100 --seed 3 --out " +
                 data.string()).exit_code == 0,
         "generate should exit 0");
  std::string env_prefix = "VM_AUCTIONS_THREADS=1 ";
  CmdResult rob;
  {
    std::string cmd = env_prefix + g_cli + " robustness --dataset " + data.string() +
                      " --gammas 0:3:0.5 --out " + curve.string() + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    int rc = pipe ? pclose(pipe) : -1;
    rob.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  }
  expect(rob.exit_code == 0, "robustness should exit 0 under VM_AUCTIONS_THREADS=1");
  std::ifstream curve_in(curve);
  std::string header;
  std::getline(curve_in, header);
  expect(header == "gamma,fraction,excluded_count", "curve CSV header mismatch");

  if (g_failures == 0) std::puts("cli behavior: all checks passed");
  return g_failures;
}
