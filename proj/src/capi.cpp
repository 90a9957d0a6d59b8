/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "capbound/capbound.h"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "bounds.hpp"
#include "channels.hpp"
#include "sweep.hpp"
#include "symmetry.hpp"
#include "verify.hpp"

struct capbound_channel {
  capbound::channels::ChoiOperator choi;
};

namespace {

thread_local std::string g_last_error;

capbound_status fail(capbound_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

double env_gap_tol() {
  const char* v = std::getenv("CAPBOUND_SOLVER_TOL");
  if (!v) return 0.0;
  char* end = nullptr;
  double t = std::strtod(v, &end);
  if (end == v || t <= 0.0) return 0.0;
  return t;
}

}  // namespace

extern "C" {

const char* capbound_version(void) { return "0.1.0"; }

const char* capbound_last_error(void) { return g_last_error.c_str(); }

void capbound_string_free(char* s) { std::free(s); }

capbound_status capbound_channel_parse(const char* spec_json, capbound_channel** out) {
  if (!spec_json || !out) return fail(CAPBOUND_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    auto family = capbound::channels::parse_spec(spec_json);
    auto choi = capbound::channels::make(family);
    *out = new capbound_channel{std::move(choi)};
    return CAPBOUND_OK;
  } catch (const std::invalid_argument& e) {
    return fail(CAPBOUND_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(CAPBOUND_ERR_INTERNAL, e.what());
  }
}

void capbound_channel_free(capbound_channel* ch) { delete ch; }

capbound_status capbound_channel_describe(const capbound_channel* ch, char** json_out) {
  if (!ch || !json_out) return fail(CAPBOUND_ERR_INVALID_ARGUMENT, "null argument");
  try {
    nlohmann::json j;
    j["legs"] = nlohmann::json::array();
    for (const auto& leg : ch->choi.legs)
      j["legs"].push_back({leg.label, leg.dim,
                           leg.role == capbound::channels::LegRole::in ? "in" : "out"});
    j["dim_in"] = ch->choi.dim_in();
    j["dim_out"] = ch->choi.dim_out();
    j["is_cp"] = capbound::channels::is_cp(ch->choi);
    j["is_tp"] = capbound::channels::is_tp(ch->choi);
    j["is_cpptp"] = capbound::channels::is_cpptp(ch->choi);
    j["nonsignaling_a_to_b"] = capbound::channels::is_nonsignaling_a_to_b(ch->choi);
    *json_out = dup_string(j.dump());
    return CAPBOUND_OK;
  } catch (const std::exception& e) {
    return fail(CAPBOUND_ERR_INTERNAL, e.what());
  }
}

capbound_status capbound_bound(const capbound_channel* ch, const char* measure,
                               int ell, int symmetric, double gap_tol,
                               char** result_json) {
  if (!ch || !measure || !result_json)
    return fail(CAPBOUND_ERR_INVALID_ARGUMENT, "null argument");
  *result_json = nullptr;
  try {
    capbound::bounds::Options opts;
    double tol = gap_tol > 0.0 ? gap_tol : env_gap_tol();
    if (tol > 0.0) opts.solver.tol_gap = tol;
    const std::string m = measure;
    capbound::bounds::BoundResult res;
    if (m == "beta") {
      res = capbound::bounds::beta(ch->choi, opts);
    } else if (m == "c_beta") {
      res = capbound::bounds::c_beta(ch->choi, opts);
    } else if (m == "upsilon_geo") {
      if (ell < 1 || ell > 10)
        return fail(CAPBOUND_ERR_INVALID_ARGUMENT, "ell must be in [1,10]");
      if (symmetric) {
        auto group = capbound::symmetry::pauli_bicovariance(ch->choi);
        if (!group)
          return fail(CAPBOUND_ERR_INVALID_ARGUMENT,
                      "channel is not bicovariant with respect to the Pauli group");
        res = capbound::bounds::upsilon_geo_symmetric(ch->choi, ell, *group, opts);
      } else {
        res = capbound::bounds::upsilon_geo(ch->choi, ell, opts);
      }
    } else {
      return fail(CAPBOUND_ERR_INVALID_ARGUMENT, "unknown measure: " + m);
    }
    nlohmann::json j;
    j["measure"] = capbound::bounds::measure_name(res.measure);
    j["value_bits"] = res.value_bits;
    j["alpha"] = res.alpha;
    j["ell"] = res.ell;
    j["gap"] = res.gap;
    j["status"] = capbound::sdp::status_name(res.status);
    j["certified"] = res.certified;
    j["wall_ms"] = res.wall_ms;
    *result_json = dup_string(j.dump());
    return CAPBOUND_OK;
  } catch (const std::invalid_argument& e) {
    return fail(CAPBOUND_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(CAPBOUND_ERR_INTERNAL, e.what());
  }
}

capbound_status capbound_sweep_run(const char* config_json, const char* csv_path,
                                   const char* svg_path) {
  if (!config_json || !csv_path)
    return fail(CAPBOUND_ERR_INVALID_ARGUMENT, "null argument");
  try {
    auto config = capbound::sweep::config_from_json(config_json);
    if (config.gap_tol <= 0.0) config.gap_tol = env_gap_tol();
    auto rows = capbound::sweep::run(config);
    {
      std::ofstream csv(csv_path, std::ios::binary);
      if (!csv) return fail(CAPBOUND_ERR_IO, std::string("cannot open ") + csv_path);
      capbound::sweep::write_csv(rows, csv);
    }
    if (svg_path) {
      std::ofstream svg(svg_path, std::ios::binary);
      if (!svg) return fail(CAPBOUND_ERR_IO, std::string("cannot open ") + svg_path);
      capbound::sweep::write_svg(rows, svg);
    }
    return CAPBOUND_OK;
  } catch (const std::invalid_argument& e) {
    return fail(CAPBOUND_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(CAPBOUND_ERR_INTERNAL, e.what());
  }
}

capbound_status capbound_verify_run(const char* suite, uint64_t seed,
                                    capbound_log_fn log, void* user, int* failures) {
  if (!suite || !failures) return fail(CAPBOUND_ERR_INVALID_ARGUMENT, "null argument");
  try {
    *failures = capbound::verify::run_suite(suite, seed, [&](const std::string& line) {
      if (log) log(line.c_str(), user);
    });
    return CAPBOUND_OK;
  } catch (const std::invalid_argument& e) {
    return fail(CAPBOUND_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(CAPBOUND_ERR_INTERNAL, e.what());
  }
}

}  // extern "C"
