#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpp/params.hpp"

namespace kpp::cli {

enum class Command { Bounds, Verify, Wave, Simulate, Certify, Boundary };

std::optional<Command> parse_command(std::string_view name);
const char* command_name(Command cmd);

struct RunConfig {
    std::optional<Command> command;
    double c = 2.0;
    double tau = 1.5;

    // bounds, verify
    double x_min = -5.0;
    double x_max = 10.0;
    std::size_t x_points = 401;
    std::vector<double> c_values{2.0, 2.5, 3.0, 5.0, 10.0};
    std::vector<double> tau_values{1.1, 1.25, 1.4, 1.5};
    double tol = 1e-9;

    // quadrature
    double quad_abs_tol = 1e-12;
    double quad_rel_tol = 1e-10;
    int quad_max_subdivisions = 64;

    // wave, certify
    double left_length = 60.0;
    std::optional<double> right_length;
    std::optional<double> step;
    int steps_per_delay = 64;
    double newton_tol = 1e-10;
    int max_iterations = 50;
    double slack = 1e-6;
    double noise_floor = 1e-9;
    double tail_threshold = 1e-3;
    std::size_t f_iterations = 50;

    // simulate
    double pde_length = 700.0;
    double pde_dx = 0.1;
    double t_end = 300.0;
    double sample_interval = 0.5;

    // boundary
    std::vector<double> boundary_c{2.0, 2.5, 3.0, 5.0, 10.0, 20.0, 50.0, 100.0};

    std::filesystem::path output_dir = "out";
    bool emit_svg = false;

    ModelParams params() const { return {c, tau}; }
};

/// Sets one key. Throws ParseError (carrying `line`) for unknown keys or
/// values that do not parse.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line = 0);

/// `key = value` per line; `#` starts a comment. Throws ParseError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Range checks that do not depend on the command's computation. Throws
/// DomainError or PreconditionError.
void validate(const RunConfig& cfg);

std::vector<std::string> known_keys();

}  // namespace kpp::cli
