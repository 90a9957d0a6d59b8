/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "sweep.hpp"

using namespace capbound;
using namespace capbound::sweep;

TEST_CASE("grid rows are complete, ordered and byte-stable") {
  SweepConfig c;
  c.family = channels::ChannelFamily{channels::Kind::depolarizing, 2, 0.0};
  c.start = 0.0;
  c.stop = 1.0;
  c.count = 5;
  c.measure = bounds::Measure::upsilon_geo;
  c.ell = 2;
  auto rows = run(c);
  REQUIRE(rows.size() == 5);
  for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].param > rows[i - 1].param);
  for (const Row& r : rows) CHECK(r.status == "optimal");

  std::ostringstream a, b;
  write_csv(rows, a);
  auto rows2 = run(c);
  write_csv(rows2, b);
  CHECK(a.str() == b.str());

  std::istringstream lines(a.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "param,value_bits,measure,alpha,ell,status,gap,wall_ms");
}

TEST_CASE("failures are recorded per row without aborting the sweep") {
  // The partial swap is Pauli bicovariant only at the endpoints (identity
  // pair and full swap), so a symmetric sweep mixes successes and failures;
  // every grid point must still get its row.
  SweepConfig c;
  c.family = channels::ChannelFamily{channels::Kind::partial_swap, 2, 0.0};
  c.count = 3;
  c.measure = bounds::Measure::upsilon_geo;
  c.ell = 1;
  c.symmetric = true;
  auto rows = run(c);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].status == "optimal");
  CHECK(rows[1].status == "not_bicovariant");
  CHECK(rows[2].status == "optimal");
}

TEST_CASE("holevo series doubles the row count") {
  SweepConfig c = preset("fig6");
  c.count = 3;
  auto rows = run(c);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].measure == "upsilon_geo");
  CHECK(rows[1].measure == "holevo_lower");
  CHECK(rows[1].value_bits == doctest::Approx(1.0));
  // p = 1: lower bound is 1 - h2(1/2) = 0
  CHECK(rows[5].value_bits == doctest::Approx(0.0));
}

TEST_CASE("presets pin the figure configurations") {
  auto f4 = preset("fig4");
  CHECK(f4.family.kind == channels::Kind::partial_swap);
  CHECK(f4.count == 41);
  CHECK(f4.ell == 4);
  CHECK(!f4.symmetric);
  auto f5 = preset("fig5");
  CHECK(f5.family.kind == channels::Kind::noisy_cnot);
  CHECK(f5.symmetric);
  auto f6 = preset("fig6");
  CHECK(f6.family.kind == channels::Kind::depolarizing);
  CHECK(f6.with_holevo_lower);
  CHECK_THROWS_AS(preset("fig9"), std::invalid_argument);
}

TEST_CASE("config JSON round trip") {
  auto c = preset("fig4");
  c.count = 7;
  auto c2 = config_from_json(config_to_json(c));
  CHECK(c2.family.kind == channels::Kind::partial_swap);
  CHECK(c2.count == 7);
  CHECK(c2.ell == 4);
  CHECK(config_from_json(R"({"preset":"fig5"})").symmetric);
  CHECK_THROWS_AS(config_from_json("no json"), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(R"({"channel":{"kind":"identity","d":2},
                                       "grid":{"start":1,"stop":0,"count":4}})"),
                  std::invalid_argument);
}

TEST_CASE("svg output is a single self-contained chart") {
  SweepConfig c;
  c.family = channels::ChannelFamily{channels::Kind::depolarizing, 2, 0.0};
  c.count = 3;
  c.measure = bounds::Measure::c_beta;
  auto rows = run(c);
  std::ostringstream os;
  write_svg(rows, os);
  std::string svg = os.str();
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}
