#include "krpt/cli/config_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "krpt/cli/csv.hpp"
#include "krpt/core/errors.hpp"

namespace krpt::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  std::ostringstream msg;
  msg << "invalid value '" << value << "' for " << key;
  throw Error(ErrorCode::InvalidConfig, msg.str());
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T result{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, result);
  if (ec != std::errc() || ptr != end) bad_value(key, value);
  return result;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "diffusion", "rate_constant", "c0",   "omega",          "dim",      "n_delta",
      "n_gaussian", "dt",           "t_final", "seed", "n_realizations", "boundary"};
  return keys;
}

void apply_setting(SimConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  if (value.empty()) bad_value(key, value);
  if (key == "diffusion") {
    c.diffusion = parse_number<double>(key, value);
  } else if (key == "rate_constant") {
    c.rate_constant = parse_number<double>(key, value);
  } else if (key == "c0") {
    c.c0 = parse_number<double>(key, value);
  } else if (key == "omega") {
    c.omega = parse_number<double>(key, value);
  } else if (key == "dim") {
    c.dim = parse_number<int>(key, value);
  } else if (key == "n_delta") {
    c.n_delta = parse_number<std::size_t>(key, value);
  } else if (key == "n_gaussian") {
    c.n_gaussian = parse_number<std::size_t>(key, value);
  } else if (key == "dt") {
    c.dt = parse_number<double>(key, value);
  } else if (key == "t_final") {
    c.t_final = parse_number<double>(key, value);
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "n_realizations") {
    c.n_realizations = parse_number<std::size_t>(key, value);
  } else if (key == "boundary") {
    const auto boundary = parse_boundary(value);
    if (!boundary) bad_value(key, value);
    c.boundary = *boundary;
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown config key '" + std::string(key) + "'");
  }
}

void apply_override(SimConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::InvalidConfig,
                "override '" + std::string(assignment) + "' is not of the form key=value");
  }
  apply_setting(config, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

SimConfig parse_config_text(std::string_view text, SimConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    try {
      if (eq == std::string_view::npos) {
        throw Error(ErrorCode::InvalidConfig, "expected key = value");
      }
      apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "line " << line_no << ": " << e.detail();
      throw Error(ErrorCode::InvalidConfig, msg.str());
    }
  }
  return base;
}

SimConfig load_config(const std::filesystem::path& path, SimConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config_text(text.str(), base);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidConfig, path.string() + ": " + e.detail());
  }
}

std::vector<std::string> format_config(const SimConfig& c) {
  auto line = [](const char* key, const std::string& value) {
    return std::string(key) + " = " + value;
  };
  return {
      line("diffusion", format_number(c.diffusion)),
      line("rate_constant", format_number(c.rate_constant)),
      line("c0", format_number(c.c0)),
      line("omega", format_number(c.omega)),
      line("dim", std::to_string(c.dim)),
      line("n_delta", std::to_string(c.n_delta)),
      line("n_gaussian", std::to_string(c.n_gaussian)),
      line("dt", format_number(c.dt)),
      line("t_final", format_number(c.t_final)),
      line("seed", std::to_string(c.seed)),
      line("n_realizations", std::to_string(c.n_realizations)),
      line("boundary", std::string(to_string(c.boundary))),
  };
}

}  // namespace krpt::cli
