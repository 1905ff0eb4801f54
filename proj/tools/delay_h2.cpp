// delay-h2: command-line front end over the C interface.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "delayh2/delayh2.h"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct PlantDeleter {
  void operator()(dh2_plant* p) const { dh2_plant_free(p); }
};
struct PatternDeleter {
  void operator()(dh2_pattern* p) const { dh2_pattern_free(p); }
};
struct ResultDeleter {
  void operator()(dh2_result* r) const { dh2_result_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { dh2_string_free(s); }
};
using PlantPtr = std::unique_ptr<dh2_plant, PlantDeleter>;
using PatternPtr = std::unique_ptr<dh2_pattern, PatternDeleter>;
using ResultPtr = std::unique_ptr<dh2_result, ResultDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Thrown to unwind to main with an exit code; the message is already printed.
struct Exit {
  int code;
};

[[noreturn]] void die(dh2_status st, const std::string& context) {
  std::cerr << "delay-h2: " << context << ": " << dh2_last_error() << "\n";
  throw Exit{st == DH2_NUMERICAL_ERROR ? kExitNumerical : kExitValidation};
}

void check(dh2_status st, const std::string& context) {
  if (st != DH2_OK) die(st, context);
}

[[noreturn]] void usage_error(const std::string& msg) {
  std::cerr << "delay-h2: " << msg << "\n";
  throw Exit{kExitValidation};
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      usage_error("expected a comma-separated list of integers, got '" + text + "'");
    }
  }
  return out;
}

PlantPtr load_plant(const std::string& path) {
  dh2_plant* p = nullptr;
  check(dh2_plant_load(path.c_str(), &p), "plant '" + path + "'");
  return PlantPtr(p);
}

struct PatternArgs {
  std::string spec;
  int horizon = 1;
  std::string u_blocks;
  std::string y_blocks;
};

// Unit blocks by default: one player per control / measurement channel.
std::pair<std::vector<int>, std::vector<int>> partitions(const dh2_plant* plant,
                                                         const PatternArgs& args) {
  dh2_plant_info info{};
  check(dh2_plant_info_get(plant, &info), "plant");
  std::vector<int> u = args.u_blocks.empty() ? std::vector<int>(static_cast<size_t>(info.controls), 1)
                                             : parse_int_list(args.u_blocks);
  std::vector<int> y = args.y_blocks.empty()
                           ? std::vector<int>(static_cast<size_t>(info.measurements), 1)
                           : parse_int_list(args.y_blocks);
  return {u, y};
}

PatternPtr family_pattern(const dh2_plant* plant, const std::string& family, int horizon,
                          const PatternArgs& args) {
  const auto [u, y] = partitions(plant, args);
  dh2_pattern* p = nullptr;
  const dh2_status st =
      dh2_pattern_family(family.c_str(), horizon, u.data(), u.size(), y.data(), y.size(), &p);
  check(st, "pattern '" + family + "'");
  return PatternPtr(p);
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

PatternPtr load_pattern(const dh2_plant* plant, const PatternArgs& args) {
  if (file_exists(args.spec)) {
    dh2_pattern* p = nullptr;
    check(dh2_pattern_load(args.spec.c_str(), &p), "pattern '" + args.spec + "'");
    return PatternPtr(p);
  }
  return family_pattern(plant, args.spec, args.horizon, args);
}

// "M=60", "M=60,H=200", "60" or empty (defaults).
void parse_oracle(const std::string& text, dh2_report_options* opts) {
  opts->with_oracle = 1;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    const std::string key = eq == std::string::npos ? "M" : item.substr(0, eq);
    const std::string value = eq == std::string::npos ? item : item.substr(eq + 1);
    int v = 0;
    try {
      v = std::stoi(value);
    } catch (const std::exception&) {
      usage_error("bad --oracle value '" + text + "'");
    }
    if (key == "M") {
      opts->fir_length = v;
    } else if (key == "H") {
      opts->cost_horizon = v;
    } else {
      usage_error("unknown --oracle key '" + key + "'");
    }
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) usage_error("cannot write '" + path + "'");
  out << text;
}

std::string take(char* s) {
  StringPtr owner(s);
  return s == nullptr ? std::string() : std::string(s);
}

// --- synthesize -----------------------------------------------------------

struct SynthesizeArgs {
  std::string plant;
  PatternArgs pattern;
  bool oracle = false;
  std::string oracle_spec;
  uint64_t seed = 0;
  bool seed_set = false;
  int trials = 100;
  double tol = 1e-7;
  std::string out;
  bool timing = false;
};

int run_synthesize(const SynthesizeArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  PlantPtr plant = load_plant(args.plant);
  PatternPtr pattern = load_pattern(plant.get(), args.pattern);

  dh2_result* raw = nullptr;
  check(dh2_synthesize(plant.get(), pattern.get(), &raw), "synthesis");
  ResultPtr result(raw);

  dh2_report_options opts;
  dh2_report_options_init(&opts);
  opts.trials = args.trials;
  if (args.seed_set) opts.seed = args.seed;
  if (args.oracle) parse_oracle(args.oracle_spec, &opts);

  char* report = nullptr;
  char* full = nullptr;
  check(dh2_report(result.get(), &opts, &report, args.out.empty() ? nullptr : &full),
        "report");
  const std::string report_text = take(report);
  const std::string full_text = take(full);
  std::cout << report_text;
  if (!args.out.empty()) write_file(args.out, full_text);

  if (report_text.find("\"quadratically_invariant\": false") != std::string::npos) {
    std::cerr << "delay-h2: warning: the pattern is not quadratically invariant; the "
                 "recovered feedback K = Q(I+P22 Q)^-1 may violate the pattern\n";
  }
  if (args.timing) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "delay-h2: elapsed " << secs << " s\n";
  }
  return 0;
}

// --- sweep ----------------------------------------------------------------

struct SweepArgs {
  std::string plant;
  std::string families = "tri,di,low,pure-delay";
  std::string range = "1..8";
  PatternArgs pattern;
  std::string out;
  int jobs = 0;
};

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    usage_error("bad N range '" + text + "' (expected N or A..B)");
  }
}

struct SweepPoint {
  std::string family;
  int horizon;
  double norm = 0.0;
  dh2_status status = DH2_OK;
  std::string error;
};

void compute_point(const dh2_plant* plant, const std::vector<int>& u,
                   const std::vector<int>& y, SweepPoint* pt) {
  dh2_pattern* pattern = nullptr;
  pt->status = dh2_pattern_family(pt->family.c_str(), pt->horizon, u.data(), u.size(),
                                  y.data(), y.size(), &pattern);
  if (pt->status != DH2_OK) {
    pt->error = dh2_last_error();
    return;
  }
  PatternPtr owner(pattern);
  dh2_result* result = nullptr;
  pt->status = dh2_synthesize(plant, pattern, &result);
  if (pt->status != DH2_OK) {
    pt->error = dh2_last_error();
    return;
  }
  ResultPtr rowner(result);
  dh2_norms norms{};
  dh2_result_norms(result, &norms);
  pt->norm = norms.decentralized;
}

int run_sweep(const SweepArgs& args) {
  PlantPtr plant = load_plant(args.plant);
  const auto [lo, hi] = parse_range(args.range);
  if (lo < 1 || hi < lo) usage_error("N range must satisfy 1 <= A <= B");
  const auto [u, y] = partitions(plant.get(), args.pattern);

  std::vector<std::string> families;
  {
    std::stringstream ss(args.families);
    std::string f;
    while (std::getline(ss, f, ',')) {
      if (f != "tri" && f != "di" && f != "low" && f != "pure-delay") {
        usage_error("sweep family must be one of tri, di, low, pure-delay (got '" + f + "')");
      }
      families.push_back(f);
    }
  }

  std::vector<SweepPoint> points;
  for (const auto& f : families) {
    for (int n = lo; n <= hi; ++n) points.push_back({f, n});
  }

  // Points are independent; results are written back in input order.
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const size_t jobs = args.jobs > 0 ? static_cast<size_t>(args.jobs) : hw;
  for (size_t first = 0; first < points.size(); first += jobs) {
    std::vector<std::future<void>> batch;
    for (size_t i = first; i < std::min(points.size(), first + jobs); ++i) {
      batch.push_back(std::async(std::launch::async, compute_point, plant.get(),
                                 std::cref(u), std::cref(y), &points[i]));
    }
    for (auto& f : batch) f.get();
  }

  std::string csv = "family,N,norm\n";
  for (const SweepPoint& pt : points) {
    if (pt.status != DH2_OK) {
      std::cerr << "delay-h2: " << pt.family << " N=" << pt.horizon << ": " << pt.error << "\n";
      throw Exit{pt.status == DH2_NUMERICAL_ERROR ? kExitNumerical : kExitValidation};
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s,%d,%.12g\n", pt.family.c_str(), pt.horizon, pt.norm);
    csv += buf;
  }
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    write_file(args.out, csv);
  }
  return 0;
}

// --- check ----------------------------------------------------------------

struct CheckArgs {
  std::string plant;
  PatternArgs pattern;
  double perturb = 0.0;
  double tol = 1e-7;
  int trials = 100;
  uint64_t seed = 0;
  bool seed_set = false;
};

int run_check(const CheckArgs& args) {
  PlantPtr plant = load_plant(args.plant);
  PatternPtr pattern = load_pattern(plant.get(), args.pattern);
  dh2_check_options opts;
  dh2_check_options_init(&opts);
  opts.stationarity_tolerance = args.tol;
  opts.perturbation = args.perturb;
  opts.trials = args.trials;
  if (args.seed_set) opts.seed = args.seed;
  char* text = nullptr;
  int all_pass = 0;
  check(dh2_check(plant.get(), pattern.get(), &opts, &text, &all_pass), "check");
  std::cout << take(text);
  if (!all_pass) {
    std::cerr << "delay-h2: one or more invariants failed\n";
    return kExitCheckFailed;
  }
  return 0;
}

void add_pattern_options(CLI::App* cmd, PatternArgs* p, bool required = true) {
  auto* opt = cmd->add_option("--pattern", p->spec,
                              "pattern file, or a family: tri, di, low, pure-delay, full, "
                              "n-step, chain");
  if (required) opt->required();
  cmd->add_option("--N", p->horizon, "delay horizon for family patterns")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--u-blocks", p->u_blocks, "control block sizes, e.g. 1,1,1");
  cmd->add_option("--y-blocks", p->y_blocks, "measurement block sizes, e.g. 1,1,1");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized H2 model matching with delayed information sharing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dh2_version()));

  SynthesizeArgs syn;
  auto* cmd_syn = app.add_subcommand("synthesize", "synthesize the optimal controller");
  cmd_syn->add_option("--plant", syn.plant, "plant JSON file")->required();
  add_pattern_options(cmd_syn, &syn.pattern);
  auto* oracle_opt =
      cmd_syn->add_option("--oracle", syn.oracle_spec,
                          "also run the FIR oracle; optional value like M=60,H=200")
          ->expected(0, 1);
  auto* syn_seed = cmd_syn->add_option("--seed", syn.seed, "seed for random stationarity directions");
  cmd_syn->add_option("--trials", syn.trials, "number of stationarity directions")
      ->check(CLI::PositiveNumber);
  cmd_syn->add_option("--tol", syn.tol, "warn when the stationarity residual exceeds this");
  cmd_syn->add_option("--out", syn.out, "write report, Q* and V* to this JSON file");
  cmd_syn->add_flag("--timing", syn.timing, "print elapsed time to stderr");

  SweepArgs sw;
  auto* cmd_sweep = app.add_subcommand("sweep", "closed-loop norms over pattern families and N");
  cmd_sweep->add_option("--plant", sw.plant, "plant JSON file")->required();
  cmd_sweep->add_option("--family", sw.families, "comma list of tri, di, low, pure-delay");
  cmd_sweep->add_option("--N", sw.range, "N or A..B (default 1..8)");
  cmd_sweep->add_option("--u-blocks", sw.pattern.u_blocks, "control block sizes");
  cmd_sweep->add_option("--y-blocks", sw.pattern.y_blocks, "measurement block sizes");
  cmd_sweep->add_option("--out", sw.out, "write CSV here instead of stdout");
  cmd_sweep->add_option("--jobs", sw.jobs, "concurrent sweep points (default: cores)");

  CheckArgs chk;
  auto* cmd_check = app.add_subcommand("check", "run the invariant suite");
  cmd_check->add_option("--plant", chk.plant, "plant JSON file")->required();
  add_pattern_options(cmd_check, &chk.pattern);
  cmd_check->add_option("--perturb", chk.perturb,
                        "perturb Q* by this multiple of a feasible direction");
  cmd_check->add_option("--tol", chk.tol, "stationarity tolerance");
  cmd_check->add_option("--trials", chk.trials, "number of stationarity directions")
      ->check(CLI::PositiveNumber);
  auto* chk_seed = cmd_check->add_option("--seed", chk.seed, "seed for random directions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  syn.oracle = oracle_opt->count() > 0;
  syn.seed_set = syn_seed->count() > 0;
  chk.seed_set = chk_seed->count() > 0;

  try {
    if (*cmd_syn) return run_synthesize(syn);
    if (*cmd_sweep) return run_sweep(sw);
    if (*cmd_check) return run_check(chk);
  } catch (const Exit& e) {
    return e.code;
  }
  return 0;
}
