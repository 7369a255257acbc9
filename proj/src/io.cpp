#include "besov/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <unistd.h>

#include "besov/error.hpp"
#include "besov/format.hpp"

namespace besov {

namespace {

using nlohmann::json;

std::string quoted(const std::string& s) { return json(s).dump(); }

// JSON numbers cannot carry infinities; those are written as the string "inf".
std::string number(double v) { return std::isinf(v) ? quoted(format_double(v)) : format_double(v); }

void write_values(std::ostringstream& os, std::span<const Complex> values) {
    os << "\"values\":[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ',';
        os << '[' << format_double(values[i].real()) << ',' << format_double(values[i].imag()) << ']';
    }
    os << ']';
}

Axes read_axes(const json& doc) {
    if (!doc.contains("axes") || !doc["axes"].is_array()) throw InputError("grid file: missing \"axes\" array");
    Axes axes;
    for (const auto& a : doc["axes"]) axes.emplace_back(a.at("L").get<double>(), a.at("N").get<std::size_t>());
    if (doc.contains("layout") && doc["layout"] != "row-major") throw InputError("grid file: layout must be row-major");
    return axes;
}

std::vector<Complex> read_values(const json& doc) {
    if (!doc.contains("values") || !doc["values"].is_array()) throw InputError("grid file: missing \"values\" array");
    std::vector<Complex> values;
    values.reserve(doc["values"].size());
    for (const auto& v : doc["values"]) {
        if (!v.is_array() || v.size() != 2) throw InputError("grid file: each value must be [re, im]");
        values.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    return values;
}

json parse(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string grid_to_json(const GridFunction& f, const std::string& digest) {
    std::ostringstream os;
    os << "{\"axes\":[";
    for (std::size_t j = 0; j < f.dim(); ++j) {
        if (j) os << ',';
        os << "{\"L\":" << format_double(f.axes()[j].half_width()) << ",\"N\":" << f.axes()[j].points() << '}';
    }
    os << "],\"layout\":\"row-major\",";
    write_values(os, f.values());
    os << ",\"label\":" << quoted(f.label());
    if (!digest.empty()) os << ",\"config_digest\":" << quoted(digest);
    os << "}\n";
    return os.str();
}

GridFunction grid_from_json(std::string_view text) {
    const json doc = parse(text);
    try {
        if (doc.contains("domain") && doc["domain"] == "frequency") {
            throw InputError("expected a grid file, got a spectrum file");
        }
        return GridFunction(read_axes(doc), read_values(doc), doc.value("label", std::string{}));
    } catch (const json::exception& e) {
        throw InputError(std::string("grid file: ") + e.what());
    }
}

std::string spectrum_to_json(const SpectrumFunction& s, const std::string& digest) {
    std::ostringstream os;
    os << "{\"domain\":\"frequency\",\"axes\":[";
    for (std::size_t j = 0; j < s.dim(); ++j) {
        if (j) os << ',';
        os << "{\"L\":" << format_double(s.axes()[j].half_width()) << ",\"N\":" << s.axes()[j].points()
           << ",\"delta_lambda\":" << format_double(s.delta_lambda(j)) << '}';
    }
    os << "],\"layout\":\"row-major\",\"index_origin\":\"centered\",";
    write_values(os, s.coeffs());
    os << ",\"label\":" << quoted(s.label());
    if (!digest.empty()) os << ",\"config_digest\":" << quoted(digest);
    os << "}\n";
    return os.str();
}

SpectrumFunction spectrum_from_json(std::string_view text) {
    const json doc = parse(text);
    try {
        if (doc.value("domain", std::string{}) != "frequency") throw InputError("spectrum file: domain must be frequency");
        return SpectrumFunction(read_axes(doc), read_values(doc), doc.value("label", std::string{}));
    } catch (const json::exception& e) {
        throw InputError(std::string("spectrum file: ") + e.what());
    }
}

std::string besov_norm_to_json(const BesovNormResult& result, const std::string& digest) {
    std::ostringstream os;
    os << "{\"norm\":" << number(result.norm) << ",\"terms\":[";
    for (std::size_t i = 0; i < result.terms.size(); ++i) {
        const auto& t = result.terms[i];
        if (i) os << ',';
        os << "{\"s\":" << t.s << ",\"lp\":" << number(t.lp) << ",\"weighted\":" << number(t.weighted) << '}';
    }
    os << "],\"truncation_warning\":" << (result.truncation_warning ? "true" : "false");
    if (!digest.empty()) os << ",\"config_digest\":" << quoted(digest);
    os << "}\n";
    return os.str();
}

std::string rate_report_csv(const RateReport& report) {
    double mean_n = 0.0;
    double mean_y = 0.0;
    for (const auto& e : report.entries) {
        mean_n += e.n;
        mean_y += std::log2(e.error);
    }
    mean_n /= static_cast<double>(report.entries.size());
    mean_y /= static_cast<double>(report.entries.size());
    std::ostringstream os;
    os << "# config_digest=" << report.config_digest << "\n";
    os << "n,error,log2_error,predicted_log2\n";
    for (const auto& e : report.entries) {
        const double predicted = mean_y + report.predicted_slope * (e.n - mean_n);
        os << e.n << ',' << format_double(e.error) << ',' << format_double(std::log2(e.error)) << ','
           << format_double(predicted) << '\n';
    }
    return os.str();
}

std::string rate_report_json(const RateReport& report, const std::string& timestamp) {
    std::ostringstream os;
    os << "{\"config_digest\":" << quoted(report.config_digest) << ",\"r\":[" << format_list(report.sv.r())
       << "],\"g\":" << format_double(report.sv.g()) << ",\"a\":[" << format_list(report.sv.a())
       << "],\"b\":" << format_double(report.sv.b()) << ",\"p\":" << number(report.p)
       << ",\"theta\":" << number(report.theta) << ",\"normalize_theta\":" << number(report.normalize_theta)
       << ",\"entries\":[";
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        const auto& e = report.entries[i];
        if (i) os << ',';
        os << "{\"n\":" << e.n << ",\"error\":" << format_double(e.error) << ",\"N\":[";
        for (std::size_t j = 0; j < e.points.size(); ++j) os << (j ? "," : "") << e.points[j];
        os << "],\"besov_norm\":" << format_double(e.besov_norm) << ",\"cutoff\":" << e.cutoff_used
           << ",\"nyquist_warning\":" << (e.nyquist_warning ? "true" : "false")
           << ",\"edge_on_grid\":" << (e.edge_on_grid ? "true" : "false") << '}';
    }
    os << "],\"fitted_slope\":" << format_double(report.fitted_slope)
       << ",\"fitted_intercept\":" << format_double(report.fitted_intercept)
       << ",\"predicted_slope\":" << format_double(report.predicted_slope)
       << ",\"residual_rms\":" << format_double(report.residual_rms);
    if (!timestamp.empty()) os << ",\"timestamp\":" << quoted(timestamp);
    os << "}\n";
    return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw InputError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw InputError("cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

std::map<std::string, std::string> parse_key_value(std::string_view text) {
    std::map<std::string, std::string> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InputError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        out[trim(std::string_view(line).substr(0, eq))] = trim(std::string_view(line).substr(eq + 1));
    }
    return out;
}

std::string config_digest(const std::map<std::string, std::string>& config) {
    std::string canonical;
    for (const auto& [k, v] : config) canonical += k + "=" + v + "\n";
    return fnv1a64_hex(canonical);
}

}  // namespace besov
