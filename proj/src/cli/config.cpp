#include "semilag/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string_view>
#include <variant>

#include <fmt/format.h>

#include "semilag/problems.hpp"

namespace semilag::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) {
      break;
    }
    s.remove_prefix(comma + 1);
  }
  return out;
}

/// Location of the line being parsed, for diagnostics.
struct Where {
  const std::string& source;
  int line;
  std::string_view section;
  std::string_view key;

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError(fmt::format("{}:{}: [{}] {}: {}", source, line, section, key, why));
  }
};

int parse_int(std::string_view text, const Where& where) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    where.fail(fmt::format("expected an integer, got '{}'", text));
  }
  return value;
}

int parse_positive_int(std::string_view text, const Where& where) {
  const int value = parse_int(text, where);
  if (value <= 0) {
    where.fail(fmt::format("must be positive, got {}", value));
  }
  return value;
}

double parse_double(std::string_view text, const Where& where) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    where.fail(fmt::format("expected a number, got '{}'", text));
  }
  return value;
}

/// Decimal or p/q fraction.
double parse_quantity(std::string_view text, const Where& where) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return parse_double(text, where);
  }
  const double num = parse_double(trim(text.substr(0, slash)), where);
  const double den = parse_double(trim(text.substr(slash + 1)), where);
  if (den == 0.0) {
    where.fail(fmt::format("zero denominator in '{}'", text));
  }
  return num / den;
}

bool parse_bool(std::string_view text, const Where& where) {
  if (text == "true" || text == "yes" || text == "1") {
    return true;
  }
  if (text == "false" || text == "no" || text == "0") {
    return false;
  }
  where.fail(fmt::format("expected true or false, got '{}'", text));
}

MethodKind parse_method_name(std::string_view text, const Where& where) {
  if (auto kind = parse_method(text)) {
    return *kind;
  }
  where.fail(fmt::format("unknown method '{}'; valid methods: {}", text, method_list()));
}

void assign(RunConfig& cfg, const Where& where, std::string_view value) {
  const std::string_view s = where.section;
  const std::string_view k = where.key;
  if (s == "problem" && k == "id") {
    cfg.problem_id = std::string(value);
  } else if (s == "method" && k == "kind") {
    cfg.method = parse_method_name(value, where);
  } else if (s == "method" && k == "interp_order") {
    const int p = parse_int(value, where);
    if (p < InterpOrder::kMin || p > InterpOrder::kMax) {
      where.fail(fmt::format("must be in [1, 4], got {}", p));
    }
    cfg.interp_order = p;
  } else if (s == "method" && k == "iterations") {
    cfg.iterations = parse_positive_int(value, where);
  } else if (s == "grid" && k == "M") {
    cfg.cells = parse_positive_int(value, where);
  } else if (s == "grid" && k == "Mx") {
    cfg.cells_x = parse_positive_int(value, where);
  } else if (s == "grid" && k == "My") {
    cfg.cells_y = parse_positive_int(value, where);
  } else if (s == "time" && k == "T") {
    const double t = parse_quantity(value, where);
    if (!(t > 0.0)) {
      where.fail("must be positive");
    }
    cfg.final_time = t;
  } else if (s == "time" && k == "N") {
    cfg.steps = parse_positive_int(value, where);
  } else if (s == "output" && k == "dir") {
    if (value.empty()) {
      where.fail("empty path");
    }
    cfg.output_dir = std::string(value);
  } else if (s == "output" && k == "residual_series") {
    cfg.residual_series = parse_bool(value, where);
  } else if (s == "output" && k == "final_field") {
    cfg.final_field = parse_bool(value, where);
  } else if (s == "order_study" && k == "methods") {
    cfg.study_methods.clear();
    for (auto item : split_list(value)) {
      cfg.study_methods.push_back(parse_method_name(item, where));
    }
  } else if (s == "order_study" && k == "taus") {
    cfg.study_taus.clear();
    for (auto item : split_list(value)) {
      const double tau = parse_quantity(item, where);
      if (!(tau > 0.0)) {
        where.fail(fmt::format("tau must be positive, got '{}'", item));
      }
      if (!cfg.study_taus.empty() && !(tau < cfg.study_taus.back())) {
        where.fail("tau list must be strictly decreasing");
      }
      cfg.study_taus.push_back(tau);
    }
  } else if (s == "order_study" && k == "h_ratio") {
    const double r = parse_quantity(value, where);
    if (!(r > 0.0)) {
      where.fail("must be positive");
    }
    cfg.h_ratio = r;
  } else {
    where.fail("unknown key");
  }
}

} // namespace

MethodConfig RunConfig::method_config(MethodKind kind) const {
  MethodConfig mc = MethodConfig::defaults(kind);
  if (interp_order) {
    mc.order = InterpOrder(*interp_order);
  }
  mc.iterations = iterations;
  return mc;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(fmt::format("{}:{}: unterminated section header", source, line_no));
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "problem" && section != "method" && section != "grid" && section != "time" &&
          section != "output" && section != "order_study") {
        throw ConfigError(fmt::format("{}:{}: unknown section [{}]", source, line_no, section));
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("{}:{}: expected 'key = value'", source, line_no));
    }
    if (section.empty()) {
      throw ConfigError(fmt::format("{}:{}: key outside of any section", source, line_no));
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const Where where{source, line_no, section, key};
    if (value.empty()) {
      where.fail("missing value");
    }
    assign(cfg, where, value);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  }
  return parse_config(in, path.string());
}

namespace {

int problem_dimensions(const std::string& id) {
  for (const auto& entry : registered_problems()) {
    if (entry.id == id) {
      return entry.dimensions;
    }
  }
  std::string ids;
  for (const auto& entry : registered_problems()) {
    ids += ids.empty() ? "" : ", ";
    ids += entry.id;
  }
  if (id.empty()) {
    throw ConfigError(fmt::format("[problem] id: missing; registered problems: {}", ids));
  }
  throw ConfigError(fmt::format("[problem] id: unknown problem '{}'; registered problems: {}", id,
                                ids));
}

void check_method(const RunConfig& cfg, MethodKind kind) {
  try {
    cfg.method_config(kind).validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("[method] interp_order: {}", e.what()));
  }
}

} // namespace

void validate_for_run(const RunConfig& cfg) {
  const int dims = problem_dimensions(cfg.problem_id);
  if (!cfg.method) {
    throw ConfigError(fmt::format("[method] kind: missing; valid methods: {}", method_list()));
  }
  check_method(cfg, *cfg.method);
  if (dims == 1 && cfg.cells <= 0) {
    throw ConfigError("[grid] M: missing for a 1D problem");
  }
  if (dims == 2 && (cfg.cells_x <= 0 || cfg.cells_y <= 0)) {
    throw ConfigError("[grid] Mx, My: both required for a 2D problem");
  }
  if (!cfg.final_time) {
    throw ConfigError("[time] T: missing");
  }
  if (cfg.steps <= 0) {
    throw ConfigError("[time] N: missing");
  }
}

void validate_for_study(const RunConfig& cfg) {
  problem_dimensions(cfg.problem_id);
  if (cfg.study_methods.empty() && !cfg.method) {
    throw ConfigError(fmt::format(
        "[order_study] methods: missing (and no [method] kind); valid methods: {}",
        method_list()));
  }
  for (MethodKind kind : cfg.study_methods) {
    check_method(cfg, kind);
  }
  if (cfg.study_methods.empty()) {
    check_method(cfg, *cfg.method);
  }
  if (cfg.study_taus.size() < 3) {
    throw ConfigError(fmt::format("[order_study] taus: need at least 3 values, got {}",
                                  cfg.study_taus.size()));
  }
  if (!cfg.final_time) {
    throw ConfigError("[time] T: missing");
  }
}

std::string describe(const RunConfig& cfg) {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  line("problem", cfg.problem_id);
  line("method", cfg.method ? std::string(method_name(*cfg.method)) : "");
  line("interp_order", cfg.interp_order ? std::to_string(*cfg.interp_order) : "default");
  line("iterations", std::to_string(cfg.iterations));
  line("M", std::to_string(cfg.cells));
  line("Mx", std::to_string(cfg.cells_x));
  line("My", std::to_string(cfg.cells_y));
  line("T", cfg.final_time ? fmt::format("{:.17g}", *cfg.final_time) : "");
  line("N", std::to_string(cfg.steps));
  line("output_dir", cfg.output_dir.string());
  line("residual_series", cfg.residual_series ? "true" : "false");
  line("final_field", cfg.final_field ? "true" : "false");
  std::string methods;
  for (MethodKind kind : cfg.study_methods) {
    methods += methods.empty() ? "" : ",";
    methods += method_name(kind);
  }
  line("study_methods", methods);
  std::string taus;
  for (double tau : cfg.study_taus) {
    taus += taus.empty() ? "" : ",";
    taus += fmt::format("{:.17g}", tau);
  }
  line("study_taus", taus);
  line("h_ratio", cfg.h_ratio ? fmt::format("{:.17g}", *cfg.h_ratio) : "default");
  return out;
}

} // namespace semilag::cli
