#include "config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "kpp/errors.hpp"

namespace kpp::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct BadValue {
    std::string what;
};

double to_double(std::string_view s) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw BadValue{"expected a number, got '" + std::string(s) + "'"};
    }
    return v;
}

long to_integer(std::string_view s) {
    s = trim(s);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw BadValue{"expected an integer, got '" + std::string(s) + "'"};
    }
    return v;
}

std::size_t to_count(std::string_view s) {
    const long v = to_integer(s);
    if (v < 1) throw BadValue{"expected a positive integer, got '" + std::string(trim(s)) + "'"};
    return static_cast<std::size_t>(v);
}

bool to_bool(std::string_view s) {
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw BadValue{"expected a boolean, got '" + std::string(s) + "'"};
}

std::vector<double> to_list(std::string_view s) {
    std::vector<double> out;
    while (true) {
        const auto comma = s.find(',');
        out.push_back(to_double(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"command",
         [](RunConfig& c, std::string_view v) {
             const auto cmd = parse_command(trim(v));
             if (!cmd) throw BadValue{"unknown command '" + std::string(trim(v)) + "'"};
             c.command = cmd;
         }},
        {"c", [](RunConfig& c, std::string_view v) { c.c = to_double(v); }},
        {"tau", [](RunConfig& c, std::string_view v) { c.tau = to_double(v); }},
        {"x_min", [](RunConfig& c, std::string_view v) { c.x_min = to_double(v); }},
        {"x_max", [](RunConfig& c, std::string_view v) { c.x_max = to_double(v); }},
        {"x_points", [](RunConfig& c, std::string_view v) { c.x_points = to_count(v); }},
        {"c_values", [](RunConfig& c, std::string_view v) { c.c_values = to_list(v); }},
        {"tau_values", [](RunConfig& c, std::string_view v) { c.tau_values = to_list(v); }},
        {"tol", [](RunConfig& c, std::string_view v) { c.tol = to_double(v); }},
        {"quad_abs_tol", [](RunConfig& c, std::string_view v) { c.quad_abs_tol = to_double(v); }},
        {"quad_rel_tol", [](RunConfig& c, std::string_view v) { c.quad_rel_tol = to_double(v); }},
        {"quad_max_subdivisions",
         [](RunConfig& c, std::string_view v) { c.quad_max_subdivisions = static_cast<int>(to_count(v)); }},
        {"left_length", [](RunConfig& c, std::string_view v) { c.left_length = to_double(v); }},
        {"right_length", [](RunConfig& c, std::string_view v) { c.right_length = to_double(v); }},
        {"step", [](RunConfig& c, std::string_view v) { c.step = to_double(v); }},
        {"steps_per_delay",
         [](RunConfig& c, std::string_view v) { c.steps_per_delay = static_cast<int>(to_count(v)); }},
        {"newton_tol", [](RunConfig& c, std::string_view v) { c.newton_tol = to_double(v); }},
        {"max_iterations",
         [](RunConfig& c, std::string_view v) { c.max_iterations = static_cast<int>(to_count(v)); }},
        {"slack", [](RunConfig& c, std::string_view v) { c.slack = to_double(v); }},
        {"noise_floor", [](RunConfig& c, std::string_view v) { c.noise_floor = to_double(v); }},
        {"tail_threshold", [](RunConfig& c, std::string_view v) { c.tail_threshold = to_double(v); }},
        {"f_iterations", [](RunConfig& c, std::string_view v) { c.f_iterations = to_count(v); }},
        {"pde_length", [](RunConfig& c, std::string_view v) { c.pde_length = to_double(v); }},
        {"pde_dx", [](RunConfig& c, std::string_view v) { c.pde_dx = to_double(v); }},
        {"t_end", [](RunConfig& c, std::string_view v) { c.t_end = to_double(v); }},
        {"sample_interval", [](RunConfig& c, std::string_view v) { c.sample_interval = to_double(v); }},
        {"boundary_c", [](RunConfig& c, std::string_view v) { c.boundary_c = to_list(v); }},
        {"output_dir", [](RunConfig& c, std::string_view v) { c.output_dir = std::string(trim(v)); }},
        {"svg", [](RunConfig& c, std::string_view v) { c.emit_svg = to_bool(v); }},
    };
    return table;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    if (name == "bounds") return Command::Bounds;
    if (name == "verify") return Command::Verify;
    if (name == "wave") return Command::Wave;
    if (name == "simulate") return Command::Simulate;
    if (name == "certify") return Command::Certify;
    if (name == "boundary") return Command::Boundary;
    return std::nullopt;
}

const char* command_name(Command cmd) {
    switch (cmd) {
        case Command::Bounds: return "bounds";
        case Command::Verify: return "verify";
        case Command::Wave: return "wave";
        case Command::Simulate: return "simulate";
        case Command::Certify: return "certify";
        case Command::Boundary: return "boundary";
    }
    return "?";
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line) {
    const auto& table = setters();
    const auto it = table.find(trim(key));
    if (it == table.end()) throw ParseError(line, "unknown key '" + std::string(trim(key)) + "'");
    try {
        it->second(cfg, value);
    } catch (const BadValue& e) {
        throw ParseError(line, std::string(trim(key)) + ": " + e.what);
    }
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos || trim(line.substr(0, eq)).empty()) {
            throw ParseError(line_no, "expected 'key = value', got '" + std::string(line) + "'");
        }
        apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1), line_no);
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate(const RunConfig& cfg) {
    require(cfg.command.has_value(), "no command given");
    switch (*cfg.command) {
        case Command::Verify:
            require(!cfg.c_values.empty() && !cfg.tau_values.empty(), "c_values and tau_values must be non-empty");
            for (double c : cfg.c_values) {
                for (double t : cfg.tau_values) ModelParams(c, t).require_bounding_tau();
            }
            break;
        case Command::Boundary:
            require(!cfg.boundary_c.empty(), "boundary_c must be non-empty");
            for (double c : cfg.boundary_c) ModelParams(c, 0.0);
            break;
        case Command::Bounds:
            cfg.params().require_bounding_tau();
            break;
        default:
            (void)cfg.params();
    }
    require(cfg.x_max > cfg.x_min && cfg.x_points >= 2, "x grid needs x_max > x_min and x_points >= 2");
    require(cfg.tol > 0.0 && cfg.slack > 0.0 && cfg.noise_floor > 0.0, "tolerances must be positive");
    require(cfg.quad_abs_tol > 0.0 && cfg.quad_rel_tol > 0.0, "quadrature tolerances must be positive");
    require(cfg.left_length > 0.0 && cfg.newton_tol > 0.0, "left_length and newton_tol must be positive");
    require(!cfg.right_length || *cfg.right_length > 0.0, "right_length must be positive");
    require(!cfg.step || *cfg.step > 0.0, "step must be positive");
    require(cfg.pde_dx > 0.0 && cfg.t_end > 0.0 && cfg.sample_interval > 0.0, "simulation sizes must be positive");
}

std::vector<std::string> known_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, _] : setters()) keys.push_back(k);
    return keys;
}

}  // namespace kpp::cli
