// teamdp — exact solver and certification harness for two-agent sequential
// team problems where agent 2's record is shared with agent 1.
//
// Subcommands:
//   validate   check a model file, list every violated invariant
//   solve      run the belief-space recursion, optionally write the policy
//   oracle     brute-force optimal cost by strategy enumeration
//   compare    solve + oracle, exit 0 iff the values agree exactly
//   simulate   Monte-Carlo rollout of a solved policy
//   battery    randomized compare sweep over seeded generated instances
//
// Exit codes: 0 success/match, 1 validation failure, 2 I/O failure,
// 3 resource bound exceeded, 4 solver/oracle mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "teamdp/dp.hpp"
#include "teamdp/errors.hpp"
#include "teamdp/model.hpp"
#include "teamdp/oracle.hpp"
#include "teamdp/rational.hpp"

using nlohmann::json;
using namespace teamdp;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIoFailure = 2;
constexpr int kResourceBound = 3;
constexpr int kMismatch = 4;

struct RunConfig {
  std::string model_path;
  std::string out_path;
  std::string policy_path;
  std::uint64_t seed = 1;
  long samples = 100000;
  long max_beliefs = 1'000'000;
  long max_prescriptions = 1'000'000;
  long max_profiles = 10'000'000;
  std::string format = "text";
  std::string dims = "2,2,2,2,2,2,2,2";
  int horizon = 1;
  int count = 1;
};

bool machine(const RunConfig& c) { return c.format == "json"; }

void emit(const RunConfig& c, const std::vector<std::string>& lines, const json& report) {
  if (machine(c)) {
    std::cout << report.dump(2) << "\n";
  } else {
    for (const std::string& line : lines) std::cout << line << "\n";
  }
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

SolverBounds bounds_of(const RunConfig& c) {
  SolverBounds b;
  b.max_beliefs = c.max_beliefs;
  b.max_prescriptions = c.max_prescriptions;
  return b;
}

InstanceDims parse_dims(const RunConfig& c) {
  std::vector<int> v;
  std::stringstream ss(c.dims);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(std::stoi(part));
  if (v.size() != 8)
    throw ValidationError("--dims wants 8 comma-separated sizes "
                          "(states,actions1,actions2,obs1,obs2,noise,noise1,noise2), got " +
                          std::to_string(v.size()));
  InstanceDims d;
  d.nx = v[0];
  d.nu1 = v[1];
  d.nu2 = v[2];
  d.ny1 = v[3];
  d.ny2 = v[4];
  d.nw = v[5];
  d.nv1 = v[6];
  d.nv2 = v[7];
  d.horizon = c.horizon;
  return d;
}

int cmd_validate(const RunConfig& c) {
  TeamModel m = load_model_unchecked(c.model_path);
  std::vector<std::string> violations = validate_model(m);
  std::vector<std::string> lines = {"model " + c.model_path};
  for (const std::string& v : violations) lines.push_back("violation: " + v);
  lines.push_back(violations.empty()
                      ? "valid"
                      : "invalid (" + std::to_string(violations.size()) + " violations)");
  emit(c, lines,
       {{"model", c.model_path}, {"valid", violations.empty()}, {"violations", violations}});
  return violations.empty() ? kOk : kInvalid;
}

int cmd_solve(const RunConfig& c) {
  TeamModel m = load_model(c.model_path);
  Solver solver(m, bounds_of(c));
  SolvedPolicy p = solver.solve();
  std::vector<std::string> lines = {"model " + c.model_path, "optimal cost " + p.value.str(),
                                    "beliefs expanded " + std::to_string(solver.beliefs_expanded())};
  json report = {{"model", c.model_path},
                 {"optimal_cost", p.value.str()},
                 {"beliefs_expanded", solver.beliefs_expanded()}};
  if (!c.out_path.empty()) {
    std::ofstream out(c.out_path, std::ios::binary);
    if (!out) throw IoError("cannot open output file '" + c.out_path + "'");
    out << serialize_policy(m, p);
    if (!out.flush()) throw IoError("cannot write output file '" + c.out_path + "'");
    lines.push_back("policy written " + c.out_path);
    report["policy_path"] = c.out_path;
  }
  emit(c, lines, report);
  return kOk;
}

int cmd_oracle(const RunConfig& c) {
  TeamModel m = load_model(c.model_path);
  OracleResult r = brute_force_optimal(m, c.max_profiles);
  emit(c,
       {"model " + c.model_path, "oracle cost " + r.value.str(),
        "profiles examined " + std::to_string(r.profiles_examined)},
       {{"model", c.model_path},
        {"oracle_cost", r.value.str()},
        {"profiles_examined", r.profiles_examined}});
  return kOk;
}

int cmd_compare(const RunConfig& c) {
  TeamModel m = load_model(c.model_path);
  SolvedPolicy p = Solver(m, bounds_of(c)).solve();
  OracleResult r = brute_force_optimal(m, c.max_profiles);
  bool match = p.value == r.value;
  emit(c,
       {"model " + c.model_path, "dp cost " + p.value.str(), "oracle cost " + r.value.str(),
        match ? "MATCH" : "MISMATCH"},
       {{"model", c.model_path},
        {"dp_cost", p.value.str()},
        {"oracle_cost", r.value.str()},
        {"match", match}});
  return match ? kOk : kMismatch;
}

int cmd_simulate(const RunConfig& c) {
  TeamModel m = load_model(c.model_path);
  SolvedPolicy p;
  if (c.policy_path.empty()) {
    p = Solver(m, bounds_of(c)).solve();
  } else {
    std::ifstream in(c.policy_path, std::ios::binary);
    if (!in) throw IoError("cannot open policy file '" + c.policy_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read policy file '" + c.policy_path + "'");
    p = parse_policy(m, buf.str());
  }
  SimResult r = simulate(m, p, c.samples, c.seed);
  emit(c,
       {"model " + c.model_path, "trajectories " + std::to_string(r.n),
        "mean " + fmt_double(r.mean), "stderr " + fmt_double(r.stderr_),
        "exact cost " + p.value.str()},
       {{"model", c.model_path},
        {"trajectories", r.n},
        {"mean", r.mean},
        {"stderr", r.stderr_},
        {"exact_cost", p.value.str()}});
  return kOk;
}

int cmd_battery(const RunConfig& c) {
  InstanceDims d = parse_dims(c);
  std::vector<std::string> lines;
  json runs = json::array();
  int matched = 0;
  for (int i = 0; i < c.count; ++i) {
    std::uint64_t seed = c.seed + static_cast<std::uint64_t>(i);
    TeamModel m = generate_random_instance(seed, d);
    SolvedPolicy p = Solver(m, bounds_of(c)).solve();
    OracleResult r = brute_force_optimal(m, c.max_profiles);
    bool match = p.value == r.value;
    matched += match ? 1 : 0;
    lines.push_back("seed " + std::to_string(seed) + " dims " + c.dims + " T " +
                    std::to_string(c.horizon) + " oracle " + r.value.str() + " dp " +
                    p.value.str() + " match " + (match ? "yes" : "no"));
    runs.push_back({{"seed", seed},
                    {"dims", c.dims},
                    {"horizon", c.horizon},
                    {"oracle_cost", r.value.str()},
                    {"dp_cost", p.value.str()},
                    {"match", match}});
  }
  lines.push_back("battery " + std::to_string(matched) + "/" + std::to_string(c.count) +
                  " match");
  emit(c, lines, {{"runs", runs}, {"matched", matched}, {"total", c.count}});
  return matched == c.count ? kOk : kMismatch;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResourceBound;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for two-agent sequential team problems with one-way sharing"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("--model", c.model_path, "model JSON file")->required();
  };
  auto add_bounds = [&](CLI::App* cmd) {
    cmd->add_option("--max-beliefs", c.max_beliefs, "solver belief-node budget")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-prescriptions", c.max_prescriptions,
                    "prescriptions enumerated per belief node")
        ->check(CLI::PositiveNumber);
  };
  auto add_profiles = [&](CLI::App* cmd) {
    cmd->add_option("--max-profiles", c.max_profiles, "oracle strategy-profile budget")
        ->check(CLI::PositiveNumber);
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", c.format, "text or json report")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* validate = app.add_subcommand("validate", "check a model file");
  add_model(validate);
  add_format(validate);

  CLI::App* solve = app.add_subcommand("solve", "compute the optimal team policy");
  add_model(solve);
  solve->add_option("--out", c.out_path, "write the policy file here");
  add_bounds(solve);
  add_format(solve);

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force optimal cost");
  add_model(oracle);
  add_profiles(oracle);
  add_format(oracle);

  CLI::App* compare = app.add_subcommand("compare", "check solver against brute force");
  add_model(compare);
  add_bounds(compare);
  add_profiles(compare);
  add_format(compare);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo rollout of a policy");
  add_model(simulate);
  simulate->add_option("--policy", c.policy_path,
                       "previously written policy file (default: solve in-process)");
  simulate->add_option("--samples", c.samples, "number of trajectories")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", c.seed, "simulation seed");
  add_bounds(simulate);
  add_format(simulate);

  CLI::App* battery = app.add_subcommand("battery", "randomized solver-vs-oracle sweep");
  battery->add_option("--dims", c.dims,
                      "sizes states,actions1,actions2,obs1,obs2,noise,noise1,noise2");
  battery->add_option("--horizon", c.horizon, "stages before the final one")
      ->check(CLI::NonNegativeNumber);
  battery->add_option("--count", c.count, "instances to generate")->check(CLI::PositiveNumber);
  battery->add_option("--seed", c.seed, "base seed; instance i uses seed+i");
  add_bounds(battery);
  add_profiles(battery);
  add_format(battery);

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return guarded([&] { return cmd_validate(c); });
  if (solve->parsed()) return guarded([&] { return cmd_solve(c); });
  if (oracle->parsed()) return guarded([&] { return cmd_oracle(c); });
  if (compare->parsed()) return guarded([&] { return cmd_compare(c); });
  if (simulate->parsed()) return guarded([&] { return cmd_simulate(c); });
  if (battery->parsed()) return guarded([&] { return cmd_battery(c); });
  return kInvalid;  // unreachable: require_subcommand(1)
}
