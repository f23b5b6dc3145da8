#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace annuli {

json report_skeleton(const ExperimentConfig& cfg) {
  json rep;
  rep["experiment"] = cfg.experiment;
  json& c = rep["config"];
  c["alpha_name"] = cfg.alpha_name;
  c["alpha"] = cfg.alpha;
  c["T"] = cfg.T;
  c["L"] = cfg.L;
  c["M"] = cfg.resolved_M();
  c["window"] = cfg.window;
  c["n_samples"] = cfg.n_samples;
  c["seed"] = cfg.seed;
  rep["results"] = json::object();
  rep["checks"] = json::object();
  return rep;
}

bool finalize_report(json& report, const std::string& path) {
  bool pass = true;
  for (const auto& [name, ok] : report["checks"].items()) {
    (void)name;
    pass = pass && ok.is_boolean() && ok.get<bool>();
  }
  report["pass"] = pass;
  write_text_file(path, report.dump(2) + "\n");
  return pass;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

void write_samples_csv(const std::string& path,
                       const std::vector<Sample>& samples) {
  std::ostringstream out;
  out << "t,s_sharp,s_smooth\n";
  char buf[96];
  for (const Sample& s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,", s.t);
    out << buf;
    if (std::isnan(s.s_sharp)) out << ",";
    else {
      std::snprintf(buf, sizeof buf, "%.17g,", s.s_sharp);
      out << buf;
    }
    if (!std::isnan(s.s_smooth)) {
      std::snprintf(buf, sizeof buf, "%.17g", s.s_smooth);
      out << buf;
    }
    out << "\n";
  }
  write_text_file(path, out.str());
}

std::string histogram_svg(const std::vector<double>& values, double sigma,
                          int bins) {
  if (values.empty() || !(sigma > 0.0) || bins < 3)
    throw std::invalid_argument("histogram_svg: need values, sigma > 0, bins >= 3");
  const double lo = -4.0, hi = 4.0;
  double bw = (hi - lo) / bins;
  std::vector<double> count(bins, 0.0);
  for (double v : values) {
    double x = v / sigma;
    if (x < lo || x >= hi) continue;
    count[static_cast<int>((x - lo) / bw)] += 1.0;
  }
  // density normalization
  double n = static_cast<double>(values.size());
  double ymax = 0.45;  // slightly above the normal peak
  for (double& c : count) {
    c /= n * bw;
    ymax = std::max(ymax, c);
  }

  const double W = 640, H = 400, mx = 50, my = 30;
  auto px = [&](double x) { return mx + (x - lo) / (hi - lo) * (W - 2 * mx); };
  auto py = [&](double y) { return H - my - y / ymax * (H - 2 * my); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  char buf[256];
  for (int i = 0; i < bins; ++i) {
    double x0 = lo + i * bw;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                  "fill=\"#7aa6d6\" stroke=\"#3a6ea5\" stroke-width=\"0.5\"/>\n",
                  px(x0), py(count[i]), px(x0 + bw) - px(x0),
                  py(0.0) - py(count[i]));
    svg << buf;
  }
  svg << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" points=\"";
  for (int i = 0; i <= 200; ++i) {
    double x = lo + (hi - lo) * i / 200.0;
    double y = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
    svg << buf;
  }
  svg << "\"/>\n";
  // axis and tick labels
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                "stroke=\"black\"/>\n",
                px(lo), py(0.0), px(hi), py(0.0));
  svg << buf;
  for (int t = static_cast<int>(lo); t <= static_cast<int>(hi); ++t) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" "
                  "text-anchor=\"middle\">%d</text>\n",
                  px(t), py(0.0) + 16, t);
    svg << buf;
  }
  svg << "<text x=\"" << W / 2
      << "\" y=\"18\" font-size=\"13\" text-anchor=\"middle\">"
      << "normalized remainder vs standard normal</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace annuli
