#include "diffopt/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "diffopt/format.hpp"
#include "diffopt/star.hpp"

namespace diffopt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

class ExpressionParser {
 public:
  explicit ExpressionParser(const std::string& text) : s_(text) {}

  double parse() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("bad number \"" + s_ + "\": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }
  double term() {
    double v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        v /= unary();
      } else {
        return v;
      }
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }
  double primary() {
    skip();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (s_.compare(pos_, 4, "sqrt") == 0) {
      pos_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      if (v < 0) fail("sqrt of a negative number");
      return std::sqrt(v);
    }
    double v = 0.0;
    const auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (res.ec != std::errc()) fail("expected a number at position " + std::to_string(pos_));
    pos_ = static_cast<std::size_t>(res.ptr - s_.data());
    return v;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

// Splits on `sep` outside parentheses.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

Eigen::VectorXd parse_vector(const std::string& key, const std::string& value) {
  const auto parts = split_top(value, ',');
  Eigen::VectorXd v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw ConfigError(key + ": empty component");
    v[static_cast<Eigen::Index>(i)] = evaluate_expression(parts[i]);
  }
  return v;
}

long parse_integer(const std::string& key, const std::string& value) {
  const double v = evaluate_expression(value);
  if (v != std::floor(v) || std::abs(v) > 1e15) throw ConfigError(key + " must be an integer");
  return static_cast<long>(v);
}

using Entries = std::map<std::string, std::string>;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "space.type",          "space.generators",   "space.dimension",
      "objective.type",      "objective.target",   "optimizer.x0",
      "optimizer.step",      "optimizer.t",        "optimizer.alpha",
      "optimizer.sigma",     "optimizer.rho",      "optimizer.max_backtracks",
      "optimizer.grad_tol",  "optimizer.objective_tol", "optimizer.max_iters",
      "optimizer.origin_snap", "output.trace_path", "output.format",
      "output.plot_path",    "output.rounding",
  };
  return keys;
}

Entries read_entries(const std::string& text) {
  Entries out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().count(key)) {
      throw ConfigError("line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
    if (!out.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(number) + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

std::optional<std::string> take(Entries& e, const std::string& key) {
  const auto it = e.find(key);
  if (it == e.end()) return std::nullopt;
  std::string v = it->second;
  e.erase(it);
  return v;
}

std::string require_key(Entries& e, const std::string& key) {
  auto v = take(e, key);
  if (!v) throw ConfigError("missing required key '" + key + "'");
  return *v;
}

double number_or(Entries& e, const std::string& key, double fallback) {
  const auto v = take(e, key);
  return v ? evaluate_expression(*v) : fallback;
}

std::shared_ptr<const StarSpace> build_star(const ExperimentConfig& cfg) {
  try {
    if (cfg.space == SpaceKind::kCross) return std::make_shared<const CrossSpace>();
    return std::make_shared<const StarSpace>(cfg.generators);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("space.generators: ") + e.what());
  }
}

std::string generator_ids(const IterateRow& row) {
  std::string out;
  for (const auto& [label, c] : row.gradient) {
    if (!out.empty()) out += ';';
    out += std::to_string(label + 1);
  }
  return out;
}

std::string gradient_coefficients(const IterateRow& row, int decimals) {
  std::string out;
  for (const auto& [label, c] : row.gradient) {
    if (!out.empty()) out += ';';
    out += format_rounded(c, decimals);
  }
  return out;
}

bool has_step(const IterateRow& row) { return !std::isnan(row.step); }

}  // namespace

double evaluate_expression(const std::string& text) {
  return ExpressionParser(trim(text)).parse();
}

ExperimentConfig parse_config(const std::string& text) {
  Entries e = read_entries(text);
  ExperimentConfig cfg;

  const std::string space = require_key(e, "space.type");
  if (space == "star") {
    cfg.space = SpaceKind::kStar;
    for (const auto& item : split_top(require_key(e, "space.generators"), ';')) {
      const Eigen::VectorXd v = parse_vector("space.generators", item);
      if (v.size() != 2) throw ConfigError("space.generators: each generator needs 2 components");
      if (v.norm() == 0.0) throw ConfigError("space.generators: zero generator");
      cfg.generators.emplace_back(v.normalized());
    }
  } else if (space == "cross") {
    cfg.space = SpaceKind::kCross;
  } else if (space == "euclidean") {
    cfg.space = SpaceKind::kEuclidean;
    const long n = parse_integer("space.dimension", require_key(e, "space.dimension"));
    if (n < 1) throw ConfigError("space.dimension must be >= 1");
    cfg.dimension = static_cast<int>(n);
  } else {
    throw ConfigError("space.type must be star, cross or euclidean; got '" + space + "'");
  }
  if (cfg.space != SpaceKind::kStar && e.count("space.generators")) {
    throw ConfigError("space.generators only applies to space.type = star");
  }
  if (cfg.space != SpaceKind::kEuclidean && e.count("space.dimension")) {
    throw ConfigError("space.dimension only applies to space.type = euclidean");
  }

  const std::string objective = require_key(e, "objective.type");
  if (objective == "star_target") {
    cfg.objective = ObjectiveKind::kStarTarget;
    if (cfg.space == SpaceKind::kEuclidean) {
      throw ConfigError("objective star_target needs a star or cross space");
    }
    cfg.target = parse_vector("objective.target", require_key(e, "objective.target"));
  } else if (objective == "quadratic") {
    cfg.objective = ObjectiveKind::kQuadratic;
    if (cfg.space != SpaceKind::kEuclidean) {
      throw ConfigError("objective quadratic needs a euclidean space");
    }
  } else if (objective == "custom") {
    throw ConfigError("custom objectives are disabled");
  } else {
    throw ConfigError("objective.type must be star_target or quadratic; got '" + objective + "'");
  }
  if (cfg.objective != ObjectiveKind::kStarTarget && e.count("objective.target")) {
    throw ConfigError("objective.target only applies to objective.type = star_target");
  }

  cfg.x0 = parse_vector("optimizer.x0", require_key(e, "optimizer.x0"));

  const std::string step = take(e, "optimizer.step").value_or("armijo");
  const bool is_armijo = step == "armijo";
  if (step == "constant") {
    cfg.optimizer.step = ConstantStep{number_or(e, "optimizer.t", 1.0)};
  } else if (is_armijo) {
    ArmijoStep a;
    a.initial = number_or(e, "optimizer.alpha", a.initial);
    a.sigma = number_or(e, "optimizer.sigma", a.sigma);
    a.rho = number_or(e, "optimizer.rho", a.rho);
    if (auto v = take(e, "optimizer.max_backtracks")) {
      a.max_backtracks = static_cast<int>(parse_integer("optimizer.max_backtracks", *v));
    }
    cfg.optimizer.step = a;
  } else if (step == "exact") {
    cfg.optimizer.step = ExactLineStep{};
  } else {
    throw ConfigError("optimizer.step must be constant, armijo or exact; got '" + step + "'");
  }
  for (const char* key : {"optimizer.t", "optimizer.alpha", "optimizer.sigma", "optimizer.rho",
                          "optimizer.max_backtracks"}) {
    if (e.count(key)) throw ConfigError(std::string(key) + " does not apply to step " + step);
  }

  auto& stop = cfg.optimizer.stop;
  stop.grad_norm_tol = number_or(e, "optimizer.grad_tol", stop.grad_norm_tol);
  stop.objective_tol = number_or(e, "optimizer.objective_tol", stop.objective_tol);
  if (auto v = take(e, "optimizer.max_iters")) {
    const long n = parse_integer("optimizer.max_iters", *v);
    if (n < 1) throw ConfigError("optimizer.max_iters must be >= 1");
    stop.max_iters = static_cast<std::size_t>(n);
  }
  cfg.optimizer.origin_snap = number_or(e, "optimizer.origin_snap", cfg.optimizer.origin_snap);
  cfg.optimizer.validate();

  cfg.trace_path = take(e, "output.trace_path").value_or("");
  const std::string format = take(e, "output.format").value_or("csv");
  if (format == "csv") {
    cfg.format = TraceFormat::kCsv;
  } else if (format == "json") {
    cfg.format = TraceFormat::kJson;
  } else {
    throw ConfigError("output.format must be csv or json; got '" + format + "'");
  }
  cfg.plot_path = take(e, "output.plot_path").value_or("");
  if (auto v = take(e, "output.rounding")) {
    const long d = parse_integer("output.rounding", *v);
    if (d < 0 || d > 17) throw ConfigError("output.rounding must lie in [0,17]");
    cfg.rounding = static_cast<int>(d);
  }

  // Geometry checks once everything is parsed.
  if (cfg.space == SpaceKind::kEuclidean) {
    if (cfg.x0.size() != cfg.dimension) {
      throw ConfigError("optimizer.x0 must have " + std::to_string(cfg.dimension) + " components");
    }
    if (!cfg.plot_path.empty() && cfg.dimension != 2) {
      throw ConfigError("output.plot_path needs a planar space");
    }
  } else {
    const auto star = build_star(cfg);
    if (cfg.target.size() != 2 || !star->contains(cfg.target)) {
      throw ConfigError("objective.target " + to_string(cfg.target) + " is not on the " +
                        star->name());
    }
    if (cfg.x0.size() != 2 || !star->contains(cfg.x0)) {
      throw ConfigError("optimizer.x0 " + to_string(cfg.x0) + " is not on the " + star->name());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

bool ExperimentResult::runtime_error() const {
  return trace.status == DescentStatus::kUndefinedGradient ||
         trace.status == DescentStatus::kLineSearchFailure;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult result;
  if (cfg.space == SpaceKind::kEuclidean) {
    result.trace = steepest_descent(euclidean_quadratic_problem(cfg.dimension), cfg.x0,
                                    cfg.optimizer);
    if (cfg.dimension == 2) {
      result.segments = {Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
    }
    return result;
  }
  const auto star = build_star(cfg);
  const StarObjective f(star, cfg.target);
  result.trace = steepest_descent(star_problem(f), cfg.x0, cfg.optimizer);
  for (std::size_t i = 0; i < star->size(); ++i) result.segments.push_back(star->generator(i));
  return result;
}

void write_csv(std::ostream& out, const IterateTrace& trace, int decimals) {
  const auto n = trace.rows.empty() ? 2 : trace.rows.front().x.size();
  out << "iter";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x" << i + 1;
  out << ",f,grad_coeff,generator,step\n";
  for (const auto& row : trace.rows) {
    out << row.k;
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_rounded(row.x[i], decimals);
    out << ',' << format_rounded(row.f, decimals);
    if (has_step(row)) {
      out << ',' << gradient_coefficients(row, decimals) << ',' << generator_ids(row) << ','
          << format_rounded(row.step, decimals);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const IterateTrace& trace, int decimals) {
  using nlohmann::ordered_json;
  auto num = [decimals](double v) { return round_half_away(v, decimals); };
  ordered_json doc;
  doc["schema"] = 1;
  doc["status"] = to_string(trace.status);
  doc["message"] = trace.message;
  doc["iterations"] = trace.iterations();
  ordered_json rows = ordered_json::array();
  for (const auto& row : trace.rows) {
    ordered_json r;
    r["iter"] = row.k;
    for (Eigen::Index i = 0; i < row.x.size(); ++i) r["x" + std::to_string(i + 1)] = num(row.x[i]);
    r["f"] = num(row.f);
    ordered_json coeffs = ordered_json::array(), ids = ordered_json::array();
    if (has_step(row)) {
      for (const auto& [label, c] : row.gradient) {
        coeffs.push_back(num(c));
        ids.push_back(label + 1);
      }
    }
    r["grad_coeff"] = coeffs;
    r["generator"] = ids;
    r["step"] = has_step(row) ? ordered_json(num(row.step)) : ordered_json(nullptr);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void write_plot(std::ostream& out, const std::vector<Eigen::Vector2d>& generators,
                const IterateTrace& trace, int decimals) {
  out << "kind,id,x1,x2\n";
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Eigen::Vector2d& v = generators[i];
    const double t = 4.0 / v.cwiseAbs().maxCoeff();
    for (double s : {-t, t}) {
      out << "segment," << i + 1 << ',' << format_rounded(s * v[0], decimals) << ','
          << format_rounded(s * v[1], decimals) << '\n';
    }
  }
  for (const auto& row : trace.rows) {
    out << "iterate," << row.k << ',' << format_rounded(row.x[0], decimals) << ','
        << format_rounded(row.x[1], decimals) << '\n';
  }
}

}  // namespace diffopt
