/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "channels.hpp"

// Parameter sweeps over channel families, emitting CSV tables and minimal SVG
// line charts. Grid points are independent work items; results are gathered
// and written in ascending parameter order, and the CSV is byte-stable for a
// fixed configuration and seed.

namespace capbound::sweep {

struct SweepConfig {
  channels::ChannelFamily family;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
  bounds::Measure measure = bounds::Measure::upsilon_geo;
  int ell = 4;
  bool symmetric = false;
  uint64_t seed = 0xC0FFEE;
  bool with_holevo_lower = false;  // extra closed-form series (fig6)
  double gap_tol = 0.0;            // 0: solver default
};

struct Row {
  double param = 0.0;
  double value_bits = 0.0;
  std::string measure;
  double alpha = 0.0;
  int ell = 0;
  std::string status;
  double gap = 0.0;
  long wall_ms = 0;
};

std::vector<Row> run(const SweepConfig& config);

// Columns: param,value_bits,measure,alpha,ell,status,gap,wall_ms. Numeric
// fields use %.10e; wall_ms is written as 0 to keep the bytes reproducible.
void write_csv(const std::vector<Row>& rows, std::ostream& os);

void write_svg(const std::vector<Row>& rows, std::ostream& os);

// fig4: partial swap, fig5: noisy CNOT (symmetric), fig6: depolarizing with
// the Holevo lower curve; all at d = 2, ell = 4, 41 grid points.
SweepConfig preset(const std::string& name);

std::string config_to_json(const SweepConfig& config);
SweepConfig config_from_json(const std::string& json_text);

}  // namespace capbound::sweep
