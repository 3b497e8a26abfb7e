#include "ghostlab/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "ghostlab/errors.hpp"

namespace ghostlab {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

/// Strict full-token parse; `what` names the offender in the error message.
double parse_double(const std::string& tok, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || tok.empty() || errno == ERANGE)
        throw ConfigError("bad numeric value '" + tok + "' for " + what);
    return v;
}

std::int64_t parse_int(const std::string& tok, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size() || tok.empty() || errno == ERANGE)
        throw ConfigError("bad integer value '" + tok + "' for " + what);
    return v;
}

std::pair<WaveVector, Complex> parse_mode_line(const std::vector<std::string>& toks,
                                               const std::string& key) {
    if (toks.size() != 5)
        throw ConfigError("key '" + key + "' expects: " + key + " k1 k2 re im");
    WaveVector k{int(parse_int(toks[1], key + " k1")), int(parse_int(toks[2], key + " k2"))};
    Complex a(parse_double(toks[3], key + " re"), parse_double(toks[4], key + " im"));
    return {k, a};
}

}  // namespace

std::string format_float(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

std::string format_int(std::int64_t v) { return std::to_string(v); }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os.write(content.data(), std::streamsize(content.size()));
    os.flush();
    if (!os) throw IoError("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << is.rdbuf();
    if (is.bad()) throw IoError("read from '" + path + "' failed");
    return os.str();
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw IoError("cannot create directory '" + path + "': " + ec.message());
}

std::string field_to_text(const SpectralField& u) {
    std::ostringstream os;
    os << "# scalar amplitudes: k1 k2 re im\n";
    os << "radius_sq " << u.radius_sq() << "\n";
    ScalarAmplitudeField a = u.to_scalar();
    for (const auto& [k, amp] : a.amplitudes()) {
        if (!(k.k1 > 0 || (k.k1 == 0 && k.k2 > 0))) continue;
        os << k.k1 << " " << k.k2 << " " << format_float(amp.real()) << " "
           << format_float(amp.imag()) << "\n";
    }
    return os.str();
}

SpectralField field_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::int64_t radius_sq = -1;
    std::vector<std::pair<WaveVector, Complex>> entries;
    while (std::getline(is, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::vector<std::string> toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "radius_sq") {
            if (toks.size() != 2) throw IoError("malformed radius_sq line in field text");
            radius_sq = parse_int(toks[1], "radius_sq");
            continue;
        }
        if (toks.size() != 4) throw IoError("malformed amplitude line in field text: '" + line + "'");
        WaveVector k{int(parse_int(toks[0], "k1")), int(parse_int(toks[1], "k2"))};
        entries.emplace_back(k, Complex(parse_double(toks[2], "re"), parse_double(toks[3], "im")));
    }
    if (radius_sq < 0) throw IoError("field text is missing the radius_sq line");
    return SpectralField::from_scalar(ScalarAmplitudeField::make(entries), radius_sq);
}

void save_field(const SpectralField& u, const std::string& path) {
    write_text_file(path, field_to_text(u));
}

SpectralField load_field(const std::string& path) { return field_from_text(read_text_file(path)); }

RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::vector<std::string> toks = split_ws(line);
        if (toks.empty()) continue;
        const std::string& key = toks[0];
        const std::string where = "key '" + key + "' (line " + std::to_string(lineno) + ")";

        bool repeatable = key == "force_pattern" || key == "u0";
        if (!repeatable && cfg.present.count(key))
            throw ConfigError("duplicate " + where);

        auto one_double = [&](double& slot) {
            if (toks.size() != 2) throw ConfigError(where + " expects a single value");
            slot = parse_double(toks[1], where);
        };
        auto one_int = [&](auto& slot, std::int64_t lo) {
            if (toks.size() != 2) throw ConfigError(where + " expects a single value");
            std::int64_t v = parse_int(toks[1], where);
            if (v < lo)
                throw ConfigError(where + " must be >= " + std::to_string(lo));
            slot = static_cast<std::remove_reference_t<decltype(slot)>>(v);
        };
        auto int_list = [&](std::vector<std::int64_t>& slot) {
            if (toks.size() < 2) throw ConfigError(where + " expects at least one value");
            slot.clear();
            for (std::size_t i = 1; i < toks.size(); ++i) {
                std::int64_t v = parse_int(toks[i], where);
                if (v <= 0) throw ConfigError(where + " entries must be positive");
                slot.push_back(v);
            }
        };

        if (key == "lambda") {
            one_double(cfg.lambda);
            if (!(cfg.lambda > 0)) throw ConfigError(where + " must be positive");
        } else if (key == "G") {
            one_double(cfg.G);
            if (!(cfg.G > 0)) throw ConfigError(where + " must be positive");
        } else if (key == "shells") {
            int_list(cfg.shells);
        } else if (key == "force_pattern") {
            cfg.force_pattern.push_back(parse_mode_line(toks, key));
        } else if (key == "u0") {
            cfg.u0.push_back(parse_mode_line(toks, key));
        } else if (key == "u0_scale") {
            one_double(cfg.u0_scale);
            if (cfg.u0_scale < 0) throw ConfigError(where + " must be nonnegative");
        } else if (key == "dt") {
            one_double(cfg.dt);
            if (!(cfg.dt > 0)) throw ConfigError(where + " must be positive");
        } else if (key == "T") {
            one_double(cfg.T);
            if (!(cfg.T > 0)) throw ConfigError(where + " must be positive");
        } else if (key == "sample_every") {
            one_int(cfg.sample_every, 1);
        } else if (key == "eps_eta") {
            one_double(cfg.eps_eta);
            if (!(cfg.eps_eta > 0)) throw ConfigError(where + " must be positive");
        } else if (key == "eps_chained") {
            one_double(cfg.eps_chained);
            if (!(cfg.eps_chained > 0)) throw ConfigError(where + " must be positive");
        } else if (key == "c_bg") {
            one_double(cfg.c_bg);
            if (!(cfg.c_bg > 0)) throw ConfigError(where + " must be positive");
        } else if (key == "mu_plus") {
            int_list(cfg.mu_plus);
        } else if (key == "e_grid_n") {
            one_int(cfg.e_grid_n, 2);
        } else if (key == "mode") {
            if (toks.size() != 2 || (toks[1] != "galerkin" && toks[1] != "ball"))
                throw ConfigError(where + " must be 'galerkin' or 'ball'");
            cfg.mode = toks[1];
        } else if (key == "radius_sq") {
            one_int(cfg.radius_sq, 1);
        } else if (key == "ensemble") {
            one_int(cfg.ensemble, 1);
        } else if (key == "hold_state") {
            if (toks.size() != 2 || (toks[1] != "0" && toks[1] != "1"))
                throw ConfigError(where + " must be 0 or 1");
            cfg.hold_state = toks[1] == "1";
        } else if (key == "samples") {
            one_int(cfg.samples, 1);
        } else {
            throw ConfigError("unknown " + where);
        }
        cfg.present.insert(key);
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::string text = read_text_file(path);
    try {
        return parse_run_config(text);
    } catch (const ConfigError& err) {
        std::string w = err.what();
        std::string prefix = std::string(errc_name(errc::config_error)) + ": ";
        if (w.rfind(prefix, 0) == 0) w = w.substr(prefix.size());
        throw ConfigError(w + " in '" + path + "'");
    }
}

TableWriter::TableWriter(const std::vector<std::string>& columns) : columns_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ += " ";
        out_ += columns[i];
    }
    out_ += "\n";
}

void TableWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw IoError("table row has " + std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(columns_));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ += " ";
        out_ += cells[i];
    }
    out_ += "\n";
}

}  // namespace ghostlab
