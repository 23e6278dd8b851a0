#pragma once

#include <json.hpp>

#include <cstdio>
#include <string>

#include "authcap/code.hpp"
#include "authcap/regions.hpp"

namespace authcap {

// Floats printed with 12 significant digits everywhere an output format is a
// contract (CSV columns, JSON values serialized as strings are not used; JSON
// numbers go through nlohmann's shortest round-trip form).
inline std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline nlohmann::json dist_to_json(const Dist& d) {
  return nlohmann::json{{"rows", {d.mass()}}};
}

inline nlohmann::json cond_to_json(const CondDist& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t u = 0; u < c.in_size(); ++u) rows.push_back(c.row(u).mass());
  return nlohmann::json{{"rows", rows}};
}

inline CondDist cond_from_json(const nlohmann::json& j) {
  if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].empty())
    throw std::invalid_argument("distribution JSON must hold a nonempty 'rows' array");
  const auto& rows = j["rows"];
  std::vector<Dist> out;
  for (const auto& row : rows) {
    std::vector<double> mass;
    for (const auto& v : row) mass.push_back(v.get<double>());
    out.emplace_back(std::move(mass));
  }
  return CondDist(std::move(out));
}

inline Dist dist_from_json(const nlohmann::json& j) {
  const CondDist c = cond_from_json(j);
  if (c.in_size() != 1)
    throw std::invalid_argument("expected a single-row distribution");
  return c.row(0);
}

inline ProjectionProblem problem_from_json(const nlohmann::json& j) {
  ProjectionProblem p;
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "both")
    p.mode = ProjectionProblem::Mode::BothMarginals;
  else if (mode == "single")
    p.mode = ProjectionProblem::Mode::OutputMarginal;
  else
    throw std::invalid_argument("mode must be 'both' or 'single'");
  p.reference = cond_from_json(j.at("reference"));
  p.rho = cond_from_json(j.at("rho"));
  p.sigma = dist_from_json(j.at("sigma"));
  p.target = cond_from_json(j.at("target"));
  return p;
}

inline nlohmann::json result_to_json(const ProjectionResult& r) {
  nlohmann::json j;
  j["value"] = std::isinf(r.value) ? nlohmann::json("inf") : nlohmann::json(r.value);
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  if (r.minimizer) j["minimizer"] = cond_to_json(*r.minimizer);
  return j;
}

inline nlohmann::json verdict_to_json(const RegionVerdict& v) {
  nlohmann::json slacks = nlohmann::json::array();
  for (const auto& s : v.slacks)
    slacks.push_back({{"constraint", s.constraint}, {"slack", s.slack}});
  return nlohmann::json{{"contained", v.contained}, {"slacks", slacks}};
}

// Curve CSV: header x,value,binding_constraint plus a comparison column when
// present. Cells for undefined values stay empty.
inline std::string curve_to_csv(const Curve& curve, bool compare) {
  std::string out = compare ? "x,value,binding_constraint,gungor\n"
                            : "x,value,binding_constraint\n";
  for (const auto& pt : curve) {
    out += format_sig(pt.x);
    out += ',';
    if (pt.value) out += format_sig(*pt.value);
    out += ',';
    out += pt.binding;
    if (compare) {
      out += ',';
      if (pt.gungor) out += format_sig(*pt.gungor);
    }
    out += '\n';
  }
  return out;
}

// Plain polyline plot with axes; no styling contract.
inline std::string curve_to_svg(const Curve& curve, const std::string& x_label) {
  const double w = 640, h = 420, ml = 60, mb = 40, mt = 16, mr = 16;
  double x_lo = kInf, x_hi = -kInf, y_hi = 1e-9;
  for (const auto& pt : curve) {
    x_lo = std::min(x_lo, pt.x);
    x_hi = std::max(x_hi, pt.x);
    if (pt.value) y_hi = std::max(y_hi, *pt.value);
    if (pt.gungor) y_hi = std::max(y_hi, *pt.gungor);
  }
  if (!(x_hi > x_lo)) {
    x_lo = 0.0;
    x_hi = 1.0;
  }
  auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (w - ml - mr); };
  auto py = [&](double y) { return h - mb - y / y_hi * (h - mb - mt); };

  std::string svg = "<svg xmlns='http://www.w3.org/2000/svg' width='" +
                    format_sig(w) + "' height='" + format_sig(h) + "'>\n";
  svg += "<line x1='" + format_sig(ml) + "' y1='" + format_sig(h - mb) + "' x2='" +
         format_sig(w - mr) + "' y2='" + format_sig(h - mb) + "' stroke='black'/>\n";
  svg += "<line x1='" + format_sig(ml) + "' y1='" + format_sig(mt) + "' x2='" +
         format_sig(ml) + "' y2='" + format_sig(h - mb) + "' stroke='black'/>\n";
  svg += "<text x='" + format_sig(w / 2) + "' y='" + format_sig(h - 8) + "'>" +
         x_label + "</text>\n";
  svg += "<text x='8' y='" + format_sig(h / 2) + "'>max alpha</text>\n";

  auto polyline = [&](bool gungor, const char* color) {
    std::string pts;
    for (const auto& pt : curve) {
      const auto& v = gungor ? pt.gungor : pt.value;
      if (!v) continue;
      pts += format_sig(px(pt.x)) + "," + format_sig(py(*v)) + " ";
    }
    if (pts.empty()) return std::string();
    return "<polyline fill='none' stroke='" + std::string(color) + "' points='" +
           pts + "'/>\n";
  };
  svg += polyline(false, "blue");
  svg += polyline(true, "red");
  svg += "</svg>\n";
  return svg;
}

// Codebook tables with the seed and parameters, enough to rebuild or audit.
inline nlohmann::json code_to_json(const TypeClassCode& code, std::uint64_t seed) {
  nlohmann::json j;
  j["seed"] = seed;
  j["params"] = {{"n", code.params.n},
                 {"m_hat", code.params.m_hat_count},
                 {"m_tilde", code.params.m_tilde_count},
                 {"keys", code.params.key_count},
                 {"tau_counts", code.params.tau.counts},
                 {"sigma_counts", code.params.sigma.counts},
                 {"sigma_in", code.params.sigma.in_size},
                 {"sigma_out", code.params.sigma.out_size},
                 {"rho_counts", code.params.rho.counts},
                 {"rho_in", code.params.rho.in_size},
                 {"rho_out", code.params.rho.out_size}};
  j["w"] = code.w;
  j["u"] = code.u;
  return j;
}

}  // namespace authcap
