/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "symmetry.hpp"

namespace capbound::sweep {

namespace {

Row evaluate_point(const SweepConfig& config, double param) {
  Row row;
  row.param = param;
  row.measure = bounds::measure_name(config.measure);
  row.ell = config.ell;
  try {
    channels::ChannelFamily fam = config.family;
    fam.p = param;
    channels::ChoiOperator choi = channels::make(fam);
    bounds::Options opts;
    if (config.gap_tol > 0.0) opts.solver.tol_gap = config.gap_tol;
    bounds::BoundResult res;
    switch (config.measure) {
      case bounds::Measure::beta:
        res = bounds::beta(choi, opts);
        break;
      case bounds::Measure::c_beta:
        res = bounds::c_beta(choi, opts);
        break;
      case bounds::Measure::upsilon_geo: {
        if (config.symmetric) {
          auto group = symmetry::pauli_bicovariance(choi);
          if (!group) {
            row.status = "not_bicovariant";
            return row;
          }
          res = bounds::upsilon_geo_symmetric(choi, config.ell, *group, opts);
        } else {
          res = bounds::upsilon_geo(choi, config.ell, opts);
        }
        break;
      }
      default:
        row.status = "unsupported_measure";
        return row;
    }
    row.value_bits = res.value_bits;
    row.alpha = res.alpha;
    row.gap = res.gap;
    row.status = sdp::status_name(res.status);
    row.wall_ms = res.wall_ms;
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

}  // namespace

std::vector<Row> run(const SweepConfig& config) {
  if (config.count < 2) throw std::invalid_argument("sweep: grid count must be >= 2");
  if (config.start > config.stop)
    throw std::invalid_argument("sweep: grid start must not exceed stop");
  std::vector<double> grid(config.count);
  for (int i = 0; i < config.count; ++i)
    grid[i] = config.start + (config.stop - config.start) * i / (config.count - 1);

  // Independent work pool over grid points; results merged by index.
  std::vector<Row> rows(config.count);
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, config.count);
  std::mutex mtx;
  int next = 0;
  auto worker = [&]() {
    for (;;) {
      int idx;
      {
        std::lock_guard<std::mutex> lock(mtx);
        if (next >= config.count) return;
        idx = next++;
      }
      rows[idx] = evaluate_point(config, grid[idx]);
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  if (config.with_holevo_lower) {
    std::vector<Row> merged;
    for (int i = 0; i < config.count; ++i) {
      merged.push_back(rows[i]);
      Row h;
      h.param = grid[i];
      h.value_bits = 1.0 - bounds::binary_entropy(grid[i] / 2.0);
      h.measure = "holevo_lower";
      h.status = "closed_form";
      merged.push_back(h);
    }
    return merged;
  }
  return rows;
}

void write_csv(const std::vector<Row>& rows, std::ostream& os) {
  os << "param,value_bits,measure,alpha,ell,status,gap,wall_ms\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.10e", v);
    return std::string(buf);
  };
  for (const Row& r : rows) {
    os << num(r.param) << ',' << num(r.value_bits) << ',' << r.measure << ','
       << num(r.alpha) << ',' << r.ell << ',' << r.status << ',' << num(r.gap)
       << ",0\n";
  }
}

void write_svg(const std::vector<Row>& rows, std::ostream& os) {
  const int width = 640, height = 420;
  const double ml = 70, mr = 20, mt = 20, mb = 50;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const Row& r : rows) {
    if (r.status != "optimal" && r.status != "near_optimal" && r.status != "closed_form")
      continue;
    if (first) {
      xmin = xmax = r.param;
      ymin = ymax = r.value_bits;
      first = false;
    }
    xmin = std::min(xmin, r.param);
    xmax = std::max(xmax, r.param);
    ymin = std::min(ymin, r.value_bits);
    ymax = std::max(ymax, r.value_bits);
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  ymin = std::min(ymin, 0.0);
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto py = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };
  char buf[128];
  auto fmt = [&](const char* f, double a, double b) {
    std::snprintf(buf, sizeof(buf), f, a, b);
    return std::string(buf);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  os << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
     << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
     << height - mb << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    double xv = xmin + (xmax - xmin) * t / 4.0;
    double yv = ymin + (ymax - ymin) * t / 4.0;
    os << "<text x=\"" << fmt("%.1f", px(xv), 0) << "\" y=\"" << height - mb + 18
       << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt("%.2f", xv, 0)
       << "</text>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << fmt("%.1f", py(yv) + 4, 0)
       << "\" font-size=\"11\" text-anchor=\"end\">" << fmt("%.2f", yv, 0)
       << "</text>\n";
  }
  os << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
     << "\" font-size=\"12\" text-anchor=\"middle\">channel parameter p</text>\n";
  os << "<text x=\"16\" y=\"" << (mt + height - mb) / 2
     << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << (mt + height - mb) / 2 << ")\">bound (bits)</text>\n";

  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::vector<std::string> series;
  for (const Row& r : rows)
    if (std::find(series.begin(), series.end(), r.measure) == series.end())
      series.push_back(r.measure);
  for (size_t s = 0; s < series.size(); ++s) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[s % 4]
       << "\" stroke-width=\"1.5\" points=\"";
    for (const Row& r : rows) {
      if (r.measure != series[s]) continue;
      if (r.status != "optimal" && r.status != "near_optimal" && r.status != "closed_form")
        continue;
      os << fmt("%.2f,%.2f ", px(r.param), py(r.value_bits));
    }
    os << "\"/>\n";
    os << "<text x=\"" << width - mr - 6 << "\" y=\"" << mt + 16 + 16 * s
       << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << colors[s % 4] << "\">"
       << series[s] << "</text>\n";
  }
  os << "</svg>\n";
}

SweepConfig preset(const std::string& name) {
  SweepConfig c;
  c.count = 41;
  c.ell = 4;
  c.measure = bounds::Measure::upsilon_geo;
  if (name == "fig4") {
    c.family = channels::ChannelFamily{channels::Kind::partial_swap, 2, 0.0};
  } else if (name == "fig5") {
    c.family = channels::ChannelFamily{channels::Kind::noisy_cnot, 2, 0.0};
    c.symmetric = true;
  } else if (name == "fig6") {
    c.family = channels::ChannelFamily{channels::Kind::depolarizing, 2, 0.0};
    c.with_holevo_lower = true;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return c;
}

std::string config_to_json(const SweepConfig& config) {
  nlohmann::json j;
  j["channel"] = {{"kind", channels::kind_name(config.family.kind)},
                  {"d", config.family.d},
                  {"p", config.family.p}};
  j["grid"] = {{"start", config.start}, {"stop", config.stop}, {"count", config.count}};
  j["measure"] = bounds::measure_name(config.measure);
  j["ell"] = config.ell;
  j["symmetric"] = config.symmetric;
  j["seed"] = config.seed;
  j["holevo_lower"] = config.with_holevo_lower;
  return j.dump();
}

SweepConfig config_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("sweep config: invalid JSON: ") + e.what());
  }
  SweepConfig c;
  if (j.contains("preset")) {
    c = preset(j["preset"].get<std::string>());
  } else {
    if (!j.contains("channel"))
      throw std::invalid_argument("sweep config: missing channel");
    c.family = channels::parse_spec(j["channel"].dump());
    if (c.family.kind == channels::Kind::from_choi ||
        c.family.kind == channels::Kind::from_kraus)
      throw std::invalid_argument("sweep config: sweeps need a parametric family");
  }
  if (j.contains("grid")) {
    c.start = j["grid"].value("start", 0.0);
    c.stop = j["grid"].value("stop", 1.0);
    c.count = j["grid"].value("count", 2);
  }
  if (j.contains("measure")) {
    const std::string m = j["measure"].get<std::string>();
    if (m == "beta") c.measure = bounds::Measure::beta;
    else if (m == "c_beta") c.measure = bounds::Measure::c_beta;
    else if (m == "upsilon_geo") c.measure = bounds::Measure::upsilon_geo;
    else throw std::invalid_argument("sweep config: unknown measure " + m);
  }
  c.ell = j.value("ell", c.ell);
  c.symmetric = j.value("symmetric", c.symmetric);
  c.seed = j.value("seed", c.seed);
  c.with_holevo_lower = j.value("holevo_lower", c.with_holevo_lower);
  c.gap_tol = j.value("gap_tol", c.gap_tol);
  if (c.count < 2 || c.start > c.stop)
    throw std::invalid_argument("sweep config: invalid grid");
  return c;
}

}  // namespace capbound::sweep
