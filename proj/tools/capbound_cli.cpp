/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

// Command-line front end. Links only the C API of the capbound shared
// library; JSON/flag handling is local plumbing.

#include <capbound/capbound.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string load_channel_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw CLI::ValidationError("--channel", "cannot read " + arg.substr(1));
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
  return arg;
}

bool parse_grid(const std::string& grid, double& a, double& b, int& n) {
  return std::sscanf(grid.c_str(), "%lf:%lf:%d", &a, &b, &n) == 3;
}

int run_bound(const std::string& channel_arg, const std::string& measure, int ell,
              bool symmetric) {
  capbound_channel* ch = nullptr;
  if (capbound_channel_parse(load_channel_arg(channel_arg).c_str(), &ch) != CAPBOUND_OK) {
    std::cerr << "error: " << capbound_last_error() << "\n";
    return 1;
  }
  char* json = nullptr;
  capbound_status st =
      capbound_bound(ch, measure.c_str(), ell, symmetric ? 1 : 0, 0.0, &json);
  capbound_channel_free(ch);
  if (st != CAPBOUND_OK) {
    std::cerr << "error: " << capbound_last_error() << "\n";
    return st == CAPBOUND_ERR_INVALID_ARGUMENT || st == CAPBOUND_ERR_PARSE ? 1 : 2;
  }
  std::cout << json << "\n";
  auto parsed = nlohmann::json::parse(json);
  capbound_string_free(json);
  const std::string status = parsed.value("status", "solver_error");
  return (status == "optimal" || status == "near_optimal") ? 0 : 2;
}

int run_sweep(const std::string& preset, const std::string& channel_arg,
              const std::string& grid, const std::string& measure, int ell,
              bool symmetric, uint64_t seed, const std::string& out,
              const std::string& svg) {
  nlohmann::json config;
  if (!preset.empty()) {
    config["preset"] = preset;
  } else {
    if (channel_arg.empty()) {
      std::cerr << "error: sweep needs --preset or --channel\n";
      return 1;
    }
    config["channel"] = nlohmann::json::parse(load_channel_arg(channel_arg));
    double a = 0, b = 1;
    int n = 2;
    if (!grid.empty() && !parse_grid(grid, a, b, n)) {
      std::cerr << "error: --grid expects start:stop:count\n";
      return 1;
    }
    config["grid"] = {{"start", a}, {"stop", b}, {"count", n}};
    config["measure"] = measure;
    config["ell"] = ell;
    config["symmetric"] = symmetric;
  }
  config["seed"] = seed;
  capbound_status st = capbound_sweep_run(config.dump().c_str(), out.c_str(),
                                          svg.empty() ? nullptr : svg.c_str());
  if (st != CAPBOUND_OK) {
    std::cerr << "error: " << capbound_last_error() << "\n";
    return st == CAPBOUND_ERR_PARSE || st == CAPBOUND_ERR_INVALID_ARGUMENT ? 1 : 2;
  }
  std::cout << "wrote " << out;
  if (!svg.empty()) std::cout << " and " << svg;
  std::cout << "\n";
  return 0;
}

void log_line(const char* line, void*) { std::cout << line << "\n"; }

int run_verify(const std::string& suite, uint64_t seed) {
  int failures = 0;
  capbound_status st = capbound_verify_run(suite.c_str(), seed, log_line, nullptr,
                                           &failures);
  if (st != CAPBOUND_OK) {
    std::cerr << "error: " << capbound_last_error() << "\n";
    return 1;
  }
  std::cout << (failures == 0 ? "all properties passed" : "FAILURES: ")
            << (failures ? std::to_string(failures) : "") << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capbound: SDP upper bounds on classical capacities of "
               "bipartite quantum channels"};
  app.require_subcommand(1);

  std::string channel_arg, measure = "c_beta", grid, out, svg, preset, suite = "all";
  int ell = 4;
  bool symmetric = false;
  uint64_t seed = 0xC0FFEE;

  auto* bound = app.add_subcommand("bound", "compute one bound for one channel");
  bound->add_option("--channel", channel_arg, "channel spec JSON or @file")->required();
  bound->add_option("--measure", measure, "beta | c_beta | upsilon_geo");
  bound->add_option("--ell", ell, "Renyi order alpha = 1 + 2^-ell");
  bound->add_flag("--symmetric", symmetric, "use the bicovariant formulation");

  auto* sweep = app.add_subcommand("sweep", "sweep a channel parameter, emit CSV/SVG");
  sweep->add_option("--preset", preset, "fig4 | fig5 | fig6");
  sweep->add_option("--channel", channel_arg, "channel spec JSON or @file");
  sweep->add_option("--grid", grid, "start:stop:count");
  sweep->add_option("--measure", measure, "beta | c_beta | upsilon_geo");
  sweep->add_option("--ell", ell, "Renyi order alpha = 1 + 2^-ell");
  sweep->add_flag("--symmetric", symmetric, "use the bicovariant formulation");
  sweep->add_option("--seed", seed, "RNG seed recorded with the sweep");
  sweep->add_option("--out", out, "CSV output path")->required();
  sweep->add_option("--svg", svg, "optional SVG chart path");

  auto* verify = app.add_subcommand("verify", "run seeded property suites");
  verify->add_option("suite", suite,
                     "linalg|channels|divergences|sdp|bounds|symmetry|all");
  verify->add_option("--seed", seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bound->parsed()) return run_bound(channel_arg, measure, ell, symmetric);
    if (sweep->parsed())
      return run_sweep(preset, channel_arg, grid, measure, ell, symmetric, seed, out, svg);
    if (verify->parsed()) return run_verify(suite, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
