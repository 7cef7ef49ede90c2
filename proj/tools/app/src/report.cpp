// Copyright 2026 The lpplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lpplab_app/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "lpplab/errors.hpp"
#include "lpplab/stats.hpp"

namespace lpp::app {
namespace {

using json = nlohmann::ordered_json;
constexpr int kResamples = 1000;

struct ScalingSpec {
  ExperimentKind kind;
  const char* estimate;
  double reference_exponent;
};

// Estimates fitted against n on log-log axes, with the exponent the model
// predicts for each.
constexpr ScalingSpec kScaling[] = {
    {ExperimentKind::kDisjoint, "mean_N", 0.0},
    {ExperimentKind::kCoalescence, "mean_M", 0.0},
    {ExperimentKind::kCoalescence, "mean_N_over_n", 0.0},
    {ExperimentKind::kCoalescence, "mean_pair_N_over_n", 0.0},
    {ExperimentKind::kMidpoint, "p_midpoint", -2.0 / 3.0},
    {ExperimentKind::kOriginHit, "p_origin_hit", -1.0 / 3.0},
    {ExperimentKind::kTf, "median_tf", 2.0 / 3.0},
};

struct TailSpec {
  ExperimentKind kind;
  const char* curve;
  Abscissa abscissa;
};

// Tail curves fitted as log p = a + c g(t).
constexpr TailSpec kTails[] = {
    {ExperimentKind::kDisjoint, "tail", Abscissa::kFourthRoot},
    {ExperimentKind::kCoalescence, "tail_M", Abscissa::kFourthRoot},
    {ExperimentKind::kTwRescaling, "abs_z_exceedance", Abscissa::kLinear},
    {ExperimentKind::kSegmentFluct, "sup_exceedance", Abscissa::kLinear},
    {ExperimentKind::kSegmentFluct, "inf_exceedance", Abscissa::kLinear},
    {ExperimentKind::kTf, "tf_exceedance", Abscissa::kLinear},
    {ExperimentKind::kTf, "X_L_exceedance", Abscissa::kLinear},
};

const char* abscissa_name(Abscissa a) {
  switch (a) {
    case Abscissa::kLinear: return "t";
    case Abscissa::kFourthRoot: return "t^(1/4)";
    case Abscissa::kSquare: return "t^2";
  }
  return "t";
}

double transform(Abscissa a, double t) {
  switch (a) {
    case Abscissa::kLinear: return t;
    case Abscissa::kFourthRoot: return std::pow(t, 0.25);
    case Abscissa::kSquare: return t * t;
  }
  return t;
}

// Global TF decays like exp(-c s^2); the other TF curves exponentially.
Abscissa tail_abscissa(const TailSpec& spec, const ExperimentResult& r) {
  if (spec.kind == ExperimentKind::kTf && r.config.params.mode == "global") {
    return Abscissa::kSquare;
  }
  return spec.abscissa;
}

const Estimate* find_estimate(const ScaleResult& s, std::string_view name) {
  for (const auto& e : s.estimates) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

json number(double x) {
  return std::isfinite(x) ? json(x) : json(nullptr);
}

json fit_json(const FitResult& f) {
  return json{{"slope", number(f.slope)},
              {"intercept", number(f.intercept)},
              {"ci95", {number(f.ci_low), number(f.ci_high)}},
              {"rms_residual", number(f.rms_residual)},
              {"points", f.points},
              {"dropped", f.dropped}};
}

// Scales grouped by variant, in first-appearance order.
std::vector<std::pair<std::string, std::vector<const ScaleResult*>>> by_variant(
    const ExperimentResult& r) {
  std::vector<std::pair<std::string, std::vector<const ScaleResult*>>> groups;
  for (const auto& s : r.scales) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == s.variant; });
    if (it == groups.end()) {
      groups.push_back({s.variant, {}});
      it = groups.end() - 1;
    }
    it->second.push_back(&s);
  }
  return groups;
}

struct ScalingFit {
  std::string estimate;
  std::string variant;
  double reference = 0.0;
  std::vector<double> n, value, se;
  std::optional<FitResult> fit;
  std::string skipped;
};

std::vector<ScalingFit> scaling_fits(const ExperimentResult& r) {
  std::vector<ScalingFit> out;
  for (const auto& spec : kScaling) {
    if (spec.kind != r.config.kind) continue;
    for (const auto& [variant, scales] : by_variant(r)) {
      ScalingFit f;
      f.estimate = spec.estimate;
      f.variant = variant;
      f.reference = spec.reference_exponent;
      bool positive = true;
      for (const ScaleResult* s : scales) {
        const Estimate* e = find_estimate(*s, spec.estimate);
        if (!e) continue;
        f.n.push_back(s->n);
        f.value.push_back(e->value);
        f.se.push_back(e->se);
        positive = positive && e->value > 0.0;
      }
      if (f.n.empty()) continue;
      if (f.n.size() < 3) {
        f.skipped = "fewer than 3 scales";
      } else if (!positive) {
        f.skipped = "nonpositive estimate";
      } else {
        f.fit = fit_loglog(f.n, f.value, kResamples, 1);
      }
      out.push_back(std::move(f));
    }
  }
  return out;
}

struct TailFit {
  const Curve* curve = nullptr;
  Abscissa abscissa = Abscissa::kLinear;
  std::optional<FitResult> fit;
  std::string skipped;
};

std::vector<TailFit> tail_fits(const ExperimentResult& r, const ScaleResult& s) {
  std::vector<TailFit> out;
  for (const auto& spec : kTails) {
    if (spec.kind != r.config.kind) continue;
    for (const auto& c : s.curves) {
      if (c.name != spec.curve) continue;
      TailFit t;
      t.curve = &c;
      t.abscissa = tail_abscissa(spec, r);
      const auto positive = std::count_if(c.p.begin(), c.p.end(), [](double p) { return p > 0; });
      if (positive < 3) {
        t.skipped = "fewer than 3 nonzero probabilities";
      } else {
        t.fit = fit_semilog(c.x, c.p, kResamples, t.abscissa, 1);
      }
      out.push_back(t);
    }
  }
  return out;
}

std::string unit_of(std::string_view name) {
  auto has = [&](std::string_view s) { return name.find(s) != std::string_view::npos; };
  if (name.rfind("p_", 0) == 0 || has("fraction") || has("exceedance") || has("tail") ||
      name == "hit" || name == "constrained_le_sup") {
    return "probability";
  }
  if (name == "random_infeasible" || name == "pairs") return "count";
  if (has("over_n") || has("scaled") || name == "z" || name == "z_bare" || has("mean_z") ||
      name == "sd_z" || has("sup") || has("inf") || name == "mean_pair_N_over_n") {
    return "rescaled";
  }
  if (name == "T" || has("center") || name == "scale" || name == "scale_bare" ||
      has("central") || has("random") || name == "unit") {
    return "weight";
  }
  if (has("tf") || has("X_L") || has("band") || name == "cell_width") return "sites";
  if (has("slope")) return "ratio";
  return "count";
}

// --- SVG -------------------------------------------------------------------

struct Series {
  std::string label;
  std::vector<double> x, y, err;
  bool line = false;
};

struct Panel {
  std::string title, xlabel, ylabel;
  bool logx = false, logy = false;
  std::vector<Series> series;
};

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string render(const std::vector<Panel>& panels, const std::string& heading) {
  constexpr double kW = 640, kH = 300, kLeft = 70, kRight = 170, kTop = 40, kBottom = 45;
  const double total_h = 30 + std::max<std::size_t>(panels.size(), 1) * kH;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\""
      << total_h << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"10\" y=\"18\" font-size=\"12\">" << escape_xml(heading) << "</text>\n";
  if (panels.empty()) {
    svg << "<text x=\"10\" y=\"40\">no plottable data</text>\n</svg>\n";
    return svg.str();
  }
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const Panel& p = panels[k];
    const double oy = 30 + k * kH;
    auto tx = [&](double v) { return p.logx ? std::log10(v) : v; };
    auto ty = [&](double v) { return p.logy ? std::log10(v) : v; };
    auto usable = [&](double x, double y) {
      return std::isfinite(x) && std::isfinite(y) && (!p.logx || x > 0) && (!p.logy || y > 0);
    };
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : p.series) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!usable(s.x[i], s.y[i])) continue;
        x0 = std::min(x0, tx(s.x[i]));
        x1 = std::max(x1, tx(s.x[i]));
        y0 = std::min(y0, ty(s.y[i]));
        y1 = std::max(y1, ty(s.y[i]));
      }
    }
    svg << "<text x=\"" << kLeft << "\" y=\"" << fmt(oy + 25) << "\" font-size=\"12\">"
        << escape_xml(p.title) << "</text>\n";
    const double px0 = kLeft, px1 = kW - kRight, py0 = oy + kH - kBottom, py1 = oy + kTop;
    svg << "<rect x=\"" << px0 << "\" y=\"" << fmt(py1) << "\" width=\"" << px1 - px0
        << "\" height=\"" << fmt(py0 - py1) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    if (!std::isfinite(x0)) {
      svg << "<text x=\"" << px0 + 10 << "\" y=\"" << fmt(py1 + 20)
          << "\">no plottable points</text>\n";
      continue;
    }
    if (x1 - x0 < 1e-12) { x0 -= 0.5; x1 += 0.5; }
    if (y1 - y0 < 1e-12) { y0 -= 0.5; y1 += 0.5; }
    const double padx = 0.05 * (x1 - x0), pady = 0.08 * (y1 - y0);
    x0 -= padx; x1 += padx; y0 -= pady; y1 += pady;
    auto sx = [&](double v) { return px0 + (tx(v) - x0) / (x1 - x0) * (px1 - px0); };
    auto sy = [&](double v) { return py0 - (ty(v) - y0) / (y1 - y0) * (py0 - py1); };
    for (int t = 0; t <= 4; ++t) {
      const double fx = x0 + (x1 - x0) * t / 4, fy = y0 + (y1 - y0) * t / 4;
      const double vx = p.logx ? std::pow(10.0, fx) : fx;
      const double vy = p.logy ? std::pow(10.0, fy) : fy;
      const double gx = px0 + (px1 - px0) * t / 4, gy = py0 - (py0 - py1) * t / 4;
      svg << "<text x=\"" << fmt(gx) << "\" y=\"" << fmt(py0 + 14)
          << "\" text-anchor=\"middle\">" << tick_text(vx) << "</text>\n";
      svg << "<text x=\"" << fmt(px0 - 4) << "\" y=\"" << fmt(gy + 4)
          << "\" text-anchor=\"end\">" << tick_text(vy) << "</text>\n";
    }
    svg << "<text x=\"" << fmt((px0 + px1) / 2) << "\" y=\"" << fmt(py0 + 32)
        << "\" text-anchor=\"middle\">" << escape_xml(p.xlabel)
        << (p.logx ? " (log)" : "") << "</text>\n";
    svg << "<text x=\"14\" y=\"" << fmt((py0 + py1) / 2) << "\" transform=\"rotate(-90 14 "
        << fmt((py0 + py1) / 2) << ")\" text-anchor=\"middle\">" << escape_xml(p.ylabel)
        << (p.logy ? " (log)" : "") << "</text>\n";
    for (std::size_t si = 0; si < p.series.size(); ++si) {
      const Series& s = p.series[si];
      const char* color = kColors[si % std::size(kColors)];
      if (s.line) {
        std::string pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          if (!usable(s.x[i], s.y[i])) continue;
          pts += fmt(sx(s.x[i])) + "," + fmt(sy(s.y[i])) + " ";
        }
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-dasharray=\"5,3\" points=\"" << pts << "\"/>\n";
      } else {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          if (!usable(s.x[i], s.y[i])) continue;
          const double cx = sx(s.x[i]), cy = sy(s.y[i]);
          if (i < s.err.size() && std::isfinite(s.err[i]) && s.err[i] > 0) {
            const double lo = s.y[i] - s.err[i], hi = s.y[i] + s.err[i];
            const double ylo = (!p.logy || lo > 0) ? std::min(py0, sy(lo)) : py0;
            const double yhi = std::max(py1, sy(hi));
            svg << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(ylo) << "\" x2=\"" << fmt(cx)
                << "\" y2=\"" << fmt(yhi) << "\" stroke=\"" << color << "\"/>\n";
          }
          svg << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy)
              << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
      }
      const double ly = py1 + 12 + 14 * static_cast<double>(si);
      svg << "<rect x=\"" << px1 + 10 << "\" y=\"" << fmt(ly - 8) << "\" width=\"10\" height=\""
          << (s.line ? 2 : 8) << "\" fill=\"" << color << "\"/>\n";
      svg << "<text x=\"" << px1 + 24 << "\" y=\"" << fmt(ly) << "\">" << escape_xml(s.label)
          << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string heading(const ExperimentResult& r, const Manifest& m) {
  return r.config.name + " (" + std::string(kind_name(r.config.kind)) + "), seed " +
         std::to_string(r.config.master_seed) + ", config " + m.config_hash.substr(0, 12);
}

std::string scale_label(const ScaleResult& s) {
  return "n=" + std::to_string(s.n) + (s.variant.empty() ? "" : " " + s.variant);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string number_text(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string results_csv(const ExperimentResult& r, const Manifest& m) {
  std::ostringstream out;
  out << "config_hash,master_seed,experiment,kind,n,variant,record,name,x,x_unit,value,"
         "value_unit,se\r\n";
  const std::string prefix = csv_field(m.config_hash) + "," +
                             std::to_string(r.config.master_seed) + "," +
                             csv_field(r.config.name) + "," +
                             std::string(kind_name(r.config.kind)) + ",";
  for (const auto& s : r.scales) {
    const std::string head = prefix + std::to_string(s.n) + "," + csv_field(s.variant) + ",";
    for (const auto& e : s.estimates) {
      out << head << "estimate," << csv_field(e.name) << ",,," << number_text(e.value) << ","
          << unit_of(e.name) << "," << number_text(e.se) << "\r\n";
    }
    for (const auto& c : s.curves) {
      for (std::size_t i = 0; i < c.x.size(); ++i) {
        out << head << "curve," << csv_field(c.name) << "," << number_text(c.x[i]) << ","
            << csv_field(c.abscissa) << "," << number_text(c.p[i]) << ",probability,"
            << number_text(c.se[i]) << "\r\n";
      }
    }
    for (const auto& smp : s.samples) {
      for (std::size_t i = 0; i < smp.values.size(); ++i) {
        out << head << "sample," << csv_field(smp.name) << "," << i << ",trial,"
            << number_text(smp.values[i]) << "," << unit_of(smp.name) << ",\r\n";
      }
    }
  }
  return out.str();
}

json experiment_summary(const ExperimentResult& r) {
  const ExperimentConfig& c = r.config;
  json params = json::object();
  for (const auto& [k, v] : param_values(c.kind, c.params)) params[k] = v;
  json scales = json::array();
  for (const auto& s : r.scales) {
    json est = json::object();
    for (const auto& e : s.estimates) est[e.name] = {{"value", number(e.value)}, {"se", number(e.se)}};
    json curves = json::array();
    for (const auto& cv : s.curves) {
      json xs = json::array(), ps = json::array(), ses = json::array();
      for (std::size_t i = 0; i < cv.x.size(); ++i) {
        xs.push_back(number(cv.x[i]));
        ps.push_back(number(cv.p[i]));
        ses.push_back(number(cv.se[i]));
      }
      curves.push_back({{"name", cv.name}, {"abscissa", cv.abscissa}, {"x", xs}, {"p", ps}, {"se", ses}});
    }
    json tails = json::array();
    for (const auto& t : tail_fits(r, s)) {
      json entry{{"curve", t.curve->name}, {"abscissa_transform", abscissa_name(t.abscissa)}};
      if (t.fit) {
        entry["rate"] = fit_json(*t.fit);
      } else {
        entry["skipped"] = t.skipped;
      }
      tails.push_back(entry);
    }
    scales.push_back({{"n", s.n},
                      {"variant", s.variant},
                      {"trials", s.trials},
                      {"excluded", s.excluded},
                      {"estimates", est},
                      {"curves", curves},
                      {"tail_fits", tails}});
  }
  json fits = json::array();
  for (const auto& f : scaling_fits(r)) {
    json entry{{"estimate", f.estimate}, {"variant", f.variant},
               {"reference_exponent", f.reference}, {"n", f.n}};
    if (f.fit) {
      entry["exponent"] = fit_json(*f.fit);
    } else {
      entry["skipped"] = f.skipped;
    }
    fits.push_back(entry);
  }
  json out{{"name", c.name},
           {"kind", std::string(kind_name(c.kind))},
           {"n", c.n_list},
           {"trials", c.trials},
           {"master_seed", c.master_seed},
           {"params", params},
           {"ties", r.ties},
           {"scales", scales},
           {"scaling_fits", fits}};
  if (c.kind == ExperimentKind::kTwRescaling) {
    json tw = json::array();
    try {
      const TWReference ref = TWReference::shipped();
      const double ref_sd = std::sqrt(ref.variance());
      for (const auto& s : r.scales) {
        const auto& z = s.sample("z").values;
        const auto& zb = s.sample("z_bare").values;
        const double sd = standard_error(z) * std::sqrt(static_cast<double>(z.size()));
        const double sd_bare = standard_error(zb) * std::sqrt(static_cast<double>(zb.size()));
        tw.push_back({{"n", s.n},
                      {"ks", number(ks_distance(z, ref))},
                      {"ks_bare_scale", number(ks_distance(zb, ref))},
                      {"mean_z", number(mean(z))},
                      {"reference_mean", ref.mean()},
                      {"mean_difference", number(mean(z) - ref.mean())},
                      {"sd_z", number(sd)},
                      {"reference_sd", ref_sd},
                      {"sd_ratio", number(sd / ref_sd)},
                      {"sd_ratio_bare_scale", number(sd_bare / ref_sd)}});
      }
      out["tracy_widom"] = tw;
    } catch (const std::exception& e) {
      out["tracy_widom"] = {{"error", e.what()}};
    }
  }
  return out;
}

std::string scaling_svg(const ExperimentResult& r, const Manifest& m) {
  std::vector<Panel> panels;
  for (const auto& f : scaling_fits(r)) {
    Panel p;
    p.title = f.estimate + (f.variant.empty() ? "" : " [" + f.variant + "]");
    p.xlabel = "n";
    p.ylabel = f.estimate;
    p.logx = p.logy = true;
    p.series.push_back({"estimate +/- se", f.n, f.value, f.se, false});
    if (f.fit) {
      Series line;
      char label[64];
      std::snprintf(label, sizeof label, "slope %.3f", f.fit->slope);
      line.label = label;
      line.line = true;
      for (double n : f.n) {
        line.x.push_back(n);
        line.y.push_back(std::exp(f.fit->intercept + f.fit->slope * std::log(n)));
      }
      p.series.push_back(line);
    }
    panels.push_back(std::move(p));
  }
  return render(panels, heading(r, m));
}

std::string tails_svg(const ExperimentResult& r, const Manifest& m) {
  std::map<std::string, Panel> by_curve;
  std::vector<std::string> order;
  for (const auto& s : r.scales) {
    for (const auto& t : tail_fits(r, s)) {
      const Curve& c = *t.curve;
      if (!by_curve.count(c.name)) {
        order.push_back(c.name);
        Panel& p = by_curve[c.name];
        p.title = c.name + " (fit against " + abscissa_name(t.abscissa) + ")";
        p.xlabel = c.abscissa;
        p.ylabel = "probability";
        p.logy = true;
      }
      Panel& p = by_curve[c.name];
      p.series.push_back({scale_label(s), c.x, c.p, c.se, false});
      if (t.fit) {
        Series line;
        char label[64];
        std::snprintf(label, sizeof label, "rate %.3f", t.fit->slope);
        line.label = label;
        line.line = true;
        for (double x : c.x) {
          line.x.push_back(x);
          line.y.push_back(std::exp(t.fit->intercept + t.fit->slope * transform(t.abscissa, x)));
        }
        p.series.push_back(line);
      }
    }
  }
  std::vector<Panel> panels;
  for (const auto& name : order) panels.push_back(by_curve[name]);
  return render(panels, heading(r, m));
}

std::vector<std::filesystem::path> write_outputs(const RunFile& run,
                                                 const std::vector<ExperimentResult>& results,
                                                 const std::filesystem::path& out) {
  std::filesystem::create_directories(out);
  const std::string hash = config_hash(run);
  std::vector<std::filesystem::path> written;
  json experiments = json::array();
  json timing = json::array();
  double total = 0.0;
  for (const auto& r : results) {
    const Manifest m{hash, r.config.master_seed, r.version};
    const auto base = out / r.config.name;
    write_file(base.string() + ".csv", results_csv(r, m));
    write_file(base.string() + "_scaling.svg", scaling_svg(r, m));
    write_file(base.string() + "_tails.svg", tails_svg(r, m));
    written.push_back(base.string() + ".csv");
    written.push_back(base.string() + "_scaling.svg");
    written.push_back(base.string() + "_tails.svg");
    experiments.push_back(experiment_summary(r));
    timing.push_back({{"name", r.config.name}, {"wall_seconds", r.wall_seconds}});
    total += r.wall_seconds;
  }
  const json summary{{"tool", "lpplab"},
                     {"version", library_version()},
                     {"config_hash", hash},
                     {"master_seed", run.master_seed},
                     {"config", canonical_text(run)},
                     {"experiments", experiments}};
  write_file(out / "summary.json", summary.dump(2) + "\n");
  written.push_back(out / "summary.json");
  const json timing_doc{{"config_hash", hash},
                        {"master_seed", run.master_seed},
                        {"workers", run.workers},
                        {"experiments", timing},
                        {"total_seconds", total}};
  write_file(out / "timing.json", timing_doc.dump(2) + "\n");
  written.push_back(out / "timing.json");
  return written;
}

}  // namespace lpp::app
