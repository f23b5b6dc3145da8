#include "config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace annuli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool is_known_experiment(const std::string& e) {
  return e == "variance" || e == "moments" || e == "distribution" ||
         e == "unsmoothing" || e == "poisson_truncation" || e == "zeta_check" ||
         e == "dioph_scan" || e == "spectrum";
}

double parse_number(const std::string& v, const std::string& key) {
  std::size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for '" + key + "': " + v);
  }
  if (pos != v.size())
    throw std::invalid_argument("config: trailing junk in value for '" + key + "': " + v);
  return x;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

double alpha_preset(const std::string& name) {
  if (name == "e") return std::exp(1.0);
  if (name == "sqrt2") return std::sqrt(2.0);
  if (name == "two_pow_quarter") return std::pow(2.0, 0.25);
  if (name == "golden") return (1.0 + std::sqrt(5.0)) / 2.0;
  throw std::invalid_argument("config: unknown alpha preset '" + name + "'");
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip a comment; '#' inside a quoted value is part of the value
    std::size_t q1 = line.find('"');
    std::size_t q2 = q1 == std::string::npos ? std::string::npos : line.find('"', q1 + 1);
    std::size_t hash = line.find('#');
    while (hash != std::string::npos && q1 != std::string::npos &&
           q2 != std::string::npos && hash > q1 && hash < q2)
      hash = line.find('#', q2 + 1);
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    bool quoted = val.size() >= 2 && val.front() == '"' && val.back() == '"';
    if (quoted) val = val.substr(1, val.size() - 2);

    if (key == "experiment") {
      cfg.experiment = val;
    } else if (key == "alpha") {
      if (quoted || std::isalpha(static_cast<unsigned char>(val.empty() ? '0' : val[0]))) {
        cfg.alpha_name = val;
        cfg.alpha = alpha_preset(val);
      } else {
        cfg.alpha_name = "custom";
        cfg.alpha = parse_number(val, key);
      }
    } else if (key == "T") {
      cfg.T = parse_number(val, key);
    } else if (key == "L") {
      cfg.L = parse_number(val, key);
    } else if (key == "M") {
      cfg.M = parse_number(val, key);
    } else if (key == "window") {
      cfg.window = val;
    } else if (key == "n_samples") {
      cfg.n_samples = static_cast<int>(parse_number(val, key));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_number(val, key));
    } else if (key == "out_dir") {
      cfg.out_dir = val;
    } else if (key == "write_samples") {
      if (val == "true") cfg.write_samples = true;
      else if (val == "false") cfg.write_samples = false;
      else throw std::invalid_argument("config: write_samples must be true/false");
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  if (cfg.M < 0.0) cfg.M = cfg.L * cfg.L * cfg.L;  // materialize the default
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::string emit_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "experiment = \"" << cfg.experiment << "\"\n";
  if (cfg.alpha_name != "custom")
    out << "alpha = \"" << cfg.alpha_name << "\"\n";
  else
    out << "alpha = " << fmt_double(cfg.alpha) << "\n";
  out << "T = " << fmt_double(cfg.T) << "\n";
  out << "L = " << fmt_double(cfg.L) << "\n";
  out << "M = " << fmt_double(cfg.resolved_M()) << "\n";
  out << "window = \"" << cfg.window << "\"\n";
  out << "n_samples = " << cfg.n_samples << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "out_dir = \"" << cfg.out_dir << "\"\n";
  out << "write_samples = " << (cfg.write_samples ? "true" : "false") << "\n";
  return out.str();
}

void validate_config(const ExperimentConfig& cfg) {
  if (!is_known_experiment(cfg.experiment))
    throw std::invalid_argument("config: unknown experiment '" + cfg.experiment + "'");
  if (!(cfg.alpha > 0.0)) throw std::invalid_argument("config: alpha must be > 0");
  if (!(cfg.T > 0.0)) throw std::invalid_argument("config: T must be > 0");
  if (!(cfg.L > 0.0)) throw std::invalid_argument("config: L must be > 0");
  if (!(cfg.resolved_M() > 0.0)) throw std::invalid_argument("config: M must be > 0");
  if (cfg.window != "smooth_gaussian" && cfg.window != "indicator_1_2")
    throw std::invalid_argument("config: window must be smooth_gaussian or indicator_1_2");
  if (cfg.n_samples < 1)
    throw std::invalid_argument("config: n_samples must be >= 1");
}

}  // namespace annuli
