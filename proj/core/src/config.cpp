#include "otd/io/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "otd/errors.hpp"

namespace otd {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw config_error("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& key, const std::string& v, std::size_t line) {
    double out = 0.0;
    const char* b = v.data();
    const char* e = v.data() + v.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || p != e) fail(line, key + ": expected a number, got '" + v + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v, std::size_t line) {
    std::uint64_t out = 0;
    const char* b = v.data();
    const char* e = v.data() + v.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || p != e)
        fail(line, key + ": expected a non-negative integer, got '" + v + "'");
    return out;
}

void require(bool ok, const std::string& key, const char* what, std::size_t line) {
    if (!ok) fail(line, key + ": " + what);
}

std::string format_double(double v) {
    char buf[64];
    // shortest representation that round-trips
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[64];
        std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
        std::sscanf(shorter, "%lf", &back);
        if (back == v) return shorter;
    }
    return std::string(buf, std::size_t(n));
}

}  // namespace

RunConfig default_config(const std::string& model) {
    RunConfig c;
    c.model = model;
    if (model == "prototype") {
        c.r = 1;
        c.t_end = 1000.0;
        c.emit_dt = 0.1;
        c.reorth_dt = 1.0;
        // The z = 0 plane is invariant for the prototype's state and tangent
        // dynamics, and axis-aligned floating point preserves it to roundoff
        // relative to z itself. A mode started in that plane therefore never
        // detects the transverse instability without a seed; this floor is
        // what any computation with broadband numerical noise provides. The
        // reorientation onset moves ~11 time units per decade of floor.
        c.mode_noise = 1e-4;
        c.rel_tol = 1e-8;
        c.abs_tol = 1e-8;
        c.integrator = "rk54";
    } else if (model == "kolmogorov") {
        c.r = 8;
        c.t_end = 600.0;
        c.emit_dt = 0.2;
        c.reorth_dt = 1.0;
        c.rel_tol = 1e-5;
        c.abs_tol = 1e-5;
        c.integrator = "rk54";
    } else if (model == "mnls") {
        c.r = 1;
        c.t_end = 1000.0;
        c.emit_dt = 0.5;
        c.reorth_dt = 0.5;
        c.integrator = "etd2";
        c.etd_dt = 0.025;
    } else {
        throw config_error("unknown model '" + model + "' (expected prototype|kolmogorov|mnls)");
    }
    return c;
}

RunConfig parse_config(const std::string& text) {
    struct Entry {
        std::size_t line;
        std::string key, value;
    };
    std::vector<Entry> entries;
    std::set<std::string> seen;
    std::string model;
    std::size_t model_line = 0;

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (value.empty()) fail(line_no, key + ": empty value");
        if (!seen.insert(key).second) fail(line_no, "duplicate key '" + key + "'");
        if (key == "model") {
            model = value;
            model_line = line_no;
        } else {
            entries.push_back({line_no, key, value});
        }
    }

    RunConfig c;
    try {
        c = default_config(model.empty() ? "prototype" : model);
    } catch (const config_error& e) {
        throw config_error("config line " + std::to_string(model_line) + ": " + e.what());
    }

    for (const auto& [line, key, value] : entries) {
        if (key == "r") {
            c.r = parse_u64(key, value, line);
            require(c.r >= 1, key, "must be >= 1", line);
        } else if (key == "seed") {
            c.seed = parse_u64(key, value, line);
        } else if (key == "t_end") {
            c.t_end = parse_double(key, value, line);
            require(c.t_end > 0.0, key, "must be positive", line);
        } else if (key == "t_record_from") {
            c.t_record_from = parse_double(key, value, line);
            require(c.t_record_from >= 0.0, key, "must be non-negative", line);
        } else if (key == "emit_dt") {
            c.emit_dt = parse_double(key, value, line);
            require(c.emit_dt > 0.0, key, "must be positive", line);
        } else if (key == "snapshot_dt") {
            c.snapshot_dt = parse_double(key, value, line);
            require(c.snapshot_dt >= 0.0, key, "must be non-negative", line);
        } else if (key == "reorth_dt") {
            c.reorth_dt = parse_double(key, value, line);
            require(c.reorth_dt > 0.0, key, "must be positive", line);
        } else if (key == "mode_noise") {
            c.mode_noise = parse_double(key, value, line);
            require(c.mode_noise >= 0.0, key, "must be non-negative", line);
        } else if (key == "rel_tol") {
            c.rel_tol = parse_double(key, value, line);
            require(c.rel_tol > 0.0, key, "must be positive", line);
        } else if (key == "abs_tol") {
            c.abs_tol = parse_double(key, value, line);
            require(c.abs_tol > 0.0, key, "must be positive", line);
        } else if (key == "integrator") {
            require(value == "rk54" || value == "etd2", key, "must be rk54 or etd2", line);
            c.integrator = value;
        } else if (key == "etd_dt") {
            c.etd_dt = parse_double(key, value, line);
            require(c.etd_dt > 0.0, key, "must be positive", line);
        } else if (key == "out") {
            c.out = value;
        } else if (key == "alpha") {
            c.alpha = parse_double(key, value, line);
            require(c.alpha > 0.0, key, "must be positive", line);
        } else if (key == "omega") {
            c.omega = parse_double(key, value, line);
            require(c.omega > 0.0, key, "must be positive", line);
        } else if (key == "lambda") {
            c.lambda = parse_double(key, value, line);
            require(c.lambda > 0.0, key, "must be positive", line);
        } else if (key == "beta") {
            c.beta = parse_double(key, value, line);
            require(c.beta > 0.0, key, "must be positive", line);
        } else if (key == "grid_n") {
            c.grid_n = parse_u64(key, value, line);
            require(c.grid_n >= 8 && c.grid_n % 2 == 0, key, "must be even and >= 8", line);
        } else if (key == "Re") {
            c.Re = parse_double(key, value, line);
            require(c.Re > 0.0, key, "must be positive", line);
        } else if (key == "forcing_n") {
            const std::uint64_t v = parse_u64(key, value, line);
            require(v >= 1, key, "must be >= 1", line);
            c.forcing_n = int(v);
        } else if (key == "energy0") {
            c.energy0 = parse_double(key, value, line);
            require(c.energy0 > 0.0, key, "must be positive", line);
        } else if (key == "n_modes") {
            c.n_modes = parse_u64(key, value, line);
            require(c.n_modes >= 8 && c.n_modes % 2 == 0, key, "must be even and >= 8", line);
        } else if (key == "length") {
            c.length = parse_double(key, value, line);
            require(c.length > 0.0, key, "must be positive", line);
        } else if (key == "eps") {
            c.eps = parse_double(key, value, line);
            require(c.eps > 0.0, key, "must be positive", line);
        } else if (key == "sigma") {
            c.sigma = parse_double(key, value, line);
            require(c.sigma > 0.0, key, "must be positive", line);
        } else {
            fail(line, "unknown key '" + key + "'");
        }
    }

    // Cross-field constraints that only make sense once everything is read.
    if (c.integrator == "etd2" && c.model != "mnls")
        throw config_error("integrator etd2 requires a stiff linear part: only model mnls");
    if (c.snapshot_dt > 0.0) {
        const double ratio = c.snapshot_dt / c.emit_dt;
        if (std::abs(ratio - std::round(ratio)) > 1e-9)
            throw config_error("snapshot_dt must be a multiple of emit_dt");
    }
    if (std::size_t(c.forcing_n) > c.grid_n / 6)
        throw config_error("forcing_n must be <= grid_n/6 so the forcing survives dealiasing");
    return c;
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    out << "model = " << c.model << "\n";
    out << "r = " << c.r << "\n";
    out << "seed = " << c.seed << "\n";
    out << "t_end = " << format_double(c.t_end) << "\n";
    out << "t_record_from = " << format_double(c.t_record_from) << "\n";
    out << "emit_dt = " << format_double(c.emit_dt) << "\n";
    out << "snapshot_dt = " << format_double(c.snapshot_dt) << "\n";
    out << "reorth_dt = " << format_double(c.reorth_dt) << "\n";
    out << "mode_noise = " << format_double(c.mode_noise) << "\n";
    out << "rel_tol = " << format_double(c.rel_tol) << "\n";
    out << "abs_tol = " << format_double(c.abs_tol) << "\n";
    out << "integrator = " << c.integrator << "\n";
    out << "etd_dt = " << format_double(c.etd_dt) << "\n";
    out << "out = " << c.out << "\n";
    out << "alpha = " << format_double(c.alpha) << "\n";
    out << "omega = " << format_double(c.omega) << "\n";
    out << "lambda = " << format_double(c.lambda) << "\n";
    out << "beta = " << format_double(c.beta) << "\n";
    out << "grid_n = " << c.grid_n << "\n";
    out << "Re = " << format_double(c.Re) << "\n";
    out << "forcing_n = " << c.forcing_n << "\n";
    out << "energy0 = " << format_double(c.energy0) << "\n";
    out << "n_modes = " << c.n_modes << "\n";
    out << "length = " << format_double(c.length) << "\n";
    out << "eps = " << format_double(c.eps) << "\n";
    out << "sigma = " << format_double(c.sigma) << "\n";
    return out.str();
}

}  // namespace otd
