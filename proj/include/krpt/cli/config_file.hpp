#ifndef KRPT_CLI_CONFIG_FILE_HPP
#define KRPT_CLI_CONFIG_FILE_HPP

/**
 * @file config_file.hpp
 * @brief Flat `key = value` configuration files.
 *
 * Keys are the SimConfig field names (diffusion, rate_constant, c0, omega,
 * dim, n_delta, n_gaussian, dt, t_final, seed, n_realizations, boundary).
 * Text after `#` is ignored, as are blank lines. Later assignments win.
 */

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "krpt/core/config.hpp"

namespace krpt::cli {

/// All recognised keys, in SimConfig declaration order.
const std::vector<std::string>& config_keys();

/// Sets one field; throws Error(InvalidConfig) for an unknown key or malformed value.
void apply_setting(SimConfig& config, std::string_view key, std::string_view value);

/// Applies a `key=value` override as given on the command line.
void apply_override(SimConfig& config, std::string_view assignment);

/// Parses file text on top of `base`; errors name the offending line.
SimConfig parse_config_text(std::string_view text, SimConfig base = {});

/// Reads and parses a file; throws Error(Io) naming the path when it cannot be read.
SimConfig load_config(const std::filesystem::path& path, SimConfig base = {});

/// One `key = value` line per field, doubles at 17 significant digits; parses back exactly.
std::vector<std::string> format_config(const SimConfig& config);

}  // namespace krpt::cli

#endif  // KRPT_CLI_CONFIG_FILE_HPP
