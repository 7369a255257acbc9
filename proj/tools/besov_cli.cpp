// besov: command-line front end for the anisotropic section / Besov-norm library.
//
// Every subcommand takes its inputs as flags; `--config FILE` supplies defaults as
// key=value lines using the flag names, and explicit flags win. Usage errors exit 2,
// numerical precondition failures exit 1.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "besov/anisotropy.hpp"
#include "besov/error.hpp"
#include "besov/experiments.hpp"
#include "besov/extremal.hpp"
#include "besov/format.hpp"
#include "besov/io.hpp"
#include "besov/lattice.hpp"
#include "besov/spectral.hpp"
#include "besov/verify.hpp"

namespace {

using namespace besov;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_real(const std::string& key, const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "infinity") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::logic_error&) {
        throw UsageError("--" + key + ": not a number: '" + text + "'");
    }
}

long parse_int(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::logic_error&) {
        throw UsageError("--" + key + ": not an integer: '" + text + "'");
    }
}

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    if (out.empty()) out.push_back(text);
    return out;
}

std::vector<double> parse_reals(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& s : split(text)) out.push_back(parse_real(key, s));
    return out;
}

// Per-axis list, or a single value broadcast to `dim` axes.
template <class T, class Parse>
std::vector<T> per_axis(const std::string& key, const std::string& text, std::size_t dim, Parse parse) {
    std::vector<T> out;
    for (const auto& s : split(text)) out.push_back(static_cast<T>(parse(key, s)));
    if (out.size() == 1 && dim > 1) out.assign(dim, out.front());
    if (out.size() != dim) {
        throw UsageError("--" + key + ": expected 1 or " + std::to_string(dim) + " values, got " +
                         std::to_string(out.size()));
    }
    return out;
}

Axes make_axes(const std::vector<double>& L, const std::vector<long>& N) {
    Axes axes;
    for (std::size_t j = 0; j < L.size(); ++j) {
        if (N[j] <= 0) throw UsageError("--N: point counts must be positive");
        axes.emplace_back(L[j], static_cast<std::size_t>(N[j]));
    }
    return axes;
}

// Flag values as strings; the digest is taken over these, so the config file and the
// command line are interchangeable.
struct Inputs {
    std::map<std::string, std::string> values;

    bool has(const std::string& k) const { return values.count(k) != 0; }
    const std::string& get(const std::string& k) const {
        const auto it = values.find(k);
        if (it == values.end()) throw UsageError("missing required option --" + k);
        return it->second;
    }
    std::string get_or(const std::string& k, const std::string& fallback) const {
        return has(k) ? get(k) : fallback;
    }
    double real(const std::string& k) const { return parse_real(k, get(k)); }
    double real_or(const std::string& k, double fallback) const { return has(k) ? real(k) : fallback; }
    long integer(const std::string& k) const { return parse_int(k, get(k)); }
    long integer_or(const std::string& k, long fallback) const { return has(k) ? integer(k) : fallback; }
    std::vector<double> reals(const std::string& k) const { return parse_reals(k, get(k)); }
    Axes axes(std::size_t dim) const {
        return make_axes(per_axis<double>("L", get("L"), dim, parse_real),
                         per_axis<long>("N", get("N"), dim, parse_int));
    }

    std::string digest(const std::string& command) const {
        std::map<std::string, std::string> canon{{"command", command}};
        for (const auto& [k, v] : values) {
            if (k != "out" && k != "json" && k != "config") canon[k] = v;
        }
        return config_digest(canon);
    }
};

void emit(const Inputs& in, const std::string& content) {
    if (in.has("out")) {
        write_file_atomic(in.get("out"), content);
    } else {
        std::cout << content;
    }
}

GridFunction load_grid(const Inputs& in) { return grid_from_json(read_text_file(in.get("in"))); }

SmoothnessVector load_r(const Inputs& in) { return SmoothnessVector(in.reals("r")); }

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int cmd_gen_extremal(const Inputs& in) {
    const SmoothnessVector sv = load_r(in);
    const ExtremalSpec spec(sv, static_cast<int>(in.integer("n")), in.real_or("p", 2.0), in.real_or("c1", 1.0));
    const Axes axes = in.axes(sv.dim());
    const std::string kind = in.get_or("kind", "F");
    if (kind != "F" && kind != "g1") throw UsageError("--kind must be F or g1");
    const GridFunction f = kind == "F" ? gen_F(spec, axes) : gen_g1(spec, axes);
    emit(in, grid_to_json(f, in.digest("gen-extremal")));
    return 0;
}

int cmd_section(const Inputs& in) {
    const GridFunction f = load_grid(in);
    const auto sigma = per_axis<double>("sigma", in.get("sigma"), f.dim(), parse_real);
    emit(in, grid_to_json(fourier_section(f, FrequencyBox(sigma)), in.digest("section")));
    return 0;
}

int default_cutoff(const Inputs& in, const SmoothnessVector& sv, const Axes& axes) {
    if (in.has("cutoff")) return static_cast<int>(in.integer("cutoff"));
    const int admissible = max_admissible_level(sv, axes);
    if (admissible < 0) throw NyquistError("grid too coarse: a_j^0 = 1 must satisfy 1 <= pi/h_j on every axis");
    return admissible;
}

int cmd_decompose(const Inputs& in) {
    const GridFunction f = load_grid(in);
    const SmoothnessVector sv = load_r(in);
    const LayerDecomposition dec = layer_decompose(f, sv, default_cutoff(in, sv, f.axes()));
    std::string out = "{\"config_digest\":\"" + in.digest("decompose") + "\",\"cutoff\":" +
                      std::to_string(dec.cutoff) + ",\"layers\":[";
    for (std::size_t s = 0; s < dec.layers.size(); ++s) {
        std::string layer = grid_to_json(dec.layers[s]);
        if (!layer.empty() && layer.back() == '\n') layer.pop_back();
        out += (s ? "," : "") + layer;
    }
    out += "]}\n";
    emit(in, out);
    return 0;
}

int cmd_norm(const Inputs& in) {
    const GridFunction f = load_grid(in);
    const double p = in.real("p");
    const double v = norm(f, p);
    emit(in, "{\"p\":" + (std::isinf(p) ? std::string("\"inf\"") : format_double(p)) + ",\"norm\":" +
                 format_double(v) + ",\"config_digest\":\"" + in.digest("norm") + "\"}\n");
    return 0;
}

int cmd_besov_norm(const Inputs& in) {
    const GridFunction f = load_grid(in);
    const SmoothnessVector sv = load_r(in);
    const BesovNormResult res =
        besov_norm(f, sv, in.real("p"), in.real_or("theta", 1.0), default_cutoff(in, sv, f.axes()));
    if (res.truncation_warning) std::cerr << "warning: last weighted term exceeds 10% of the norm; raise --cutoff\n";
    emit(in, besov_norm_to_json(res, in.digest("besov-norm")));
    return 0;
}

int cmd_approx_error(const Inputs& in) {
    const GridFunction f = load_grid(in);
    const SmoothnessVector sv = load_r(in);
    const int n = static_cast<int>(in.integer("n"));
    emit(in, "{\"n\":" + std::to_string(n) + ",\"error\":" + format_double(approx_error(f, sv, n)) +
                 ",\"config_digest\":\"" + in.digest("approx-error") + "\"}\n");
    return 0;
}

int cmd_rate(const Inputs& in) {
    RateOptions o;
    o.r = in.reals("r");
    o.p = in.real("p");
    o.theta = in.real_or("theta", 1.0);
    o.n_min = static_cast<int>(in.integer_or("n-min", 2));
    o.n_max = static_cast<int>(in.integer_or("n-max", 6));
    o.c1 = in.real_or("c1", 1.0);
    o.normalize_theta = in.real_or("normalize-theta", 1.0);
    if (in.has("cutoff")) o.cutoff = static_cast<int>(in.integer("cutoff"));
    const std::size_t d = o.r.size();
    o.policy.half_width = per_axis<double>("L", in.get("L"), d, parse_real);
    for (long n : per_axis<long>("N", in.get("N"), d, parse_int)) {
        if (n <= 0) throw UsageError("--N: point counts must be positive");
        o.policy.base_points.push_back(static_cast<std::size_t>(n));
    }
    if (in.has("samples-per-period")) o.policy.samples_per_period = in.real("samples-per-period");

    const RateReport rep = rate_experiment(o);
    for (const auto& e : rep.entries) {
        if (e.nyquist_warning) std::cerr << "warning: n=" << e.n << " is Nyquist-tight; excluded from the fit\n";
        if (e.edge_on_grid) std::cerr << "warning: n=" << e.n << " has a band edge on a frequency node\n";
    }
    emit(in, rate_report_csv(rep));
    std::string sidecar = in.get_or("json", in.has("out") ? in.get("out") + ".json" : "");
    if (!sidecar.empty()) write_file_atomic(sidecar, rate_report_json(rep, utc_timestamp()));
    std::cerr << "fitted slope " << format_double(rep.fitted_slope) << ", predicted "
              << format_double(rep.predicted_slope) << "\n";
    return 0;
}

int cmd_verify(const Inputs& in) {
    const bool quick = in.get_or("quick", "false") == "true";
    bool all = true;
    for (const auto& c : run_verification(quick)) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << c.detail << "\n";
        all = all && c.passed;
    }
    return all ? 0 : 1;
}

struct Command {
    const char* name;
    const char* help;
    std::vector<std::string> keys;
    int (*run)(const Inputs&);
};

const std::vector<Command>& commands() {
    static const std::vector<Command> list{
        {"gen-extremal", "Sample the witness F_n or g1 on a grid",
         {"r", "n", "p", "c1", "kind", "L", "N", "out"}, cmd_gen_extremal},
        {"section", "Apply the Fourier section with box half-widths --sigma", {"in", "sigma", "out"}, cmd_section},
        {"decompose", "Split a grid function into a-layers 0..cutoff", {"in", "r", "cutoff", "out"}, cmd_decompose},
        {"norm", "Lp norm of a grid function", {"in", "p", "out"}, cmd_norm},
        {"besov-norm", "Layered Besov norm", {"in", "r", "p", "theta", "cutoff", "out"}, cmd_besov_norm},
        {"approx-error", "sup-norm error of the section of level n-1", {"in", "r", "n", "out"}, cmd_approx_error},
        {"rate", "Rate experiment over n-min..n-max",
         {"r", "p", "theta", "n-min", "n-max", "L", "N", "c1", "normalize-theta", "cutoff", "samples-per-period",
          "out", "json"},
         cmd_rate},
        {"verify", "Run the invariant suite", {"quick"}, cmd_verify},
    };
    return list;
}

const char* key_help(const std::string& k) {
    static const std::map<std::string, const char*> help{
        {"r", "smoothness vector, comma separated"},
        {"n", "level"},
        {"p", "Lebesgue exponent (real or inf)"},
        {"theta", "Besov fine index (real or inf)"},
        {"c1", "witness amplitude constant"},
        {"kind", "F or g1"},
        {"L", "half-width, one value or per axis"},
        {"N", "points per axis (power of two), one value or per axis"},
        {"sigma", "section half-widths, one value or per axis"},
        {"cutoff", "highest layer index"},
        {"n-min", "first level"},
        {"n-max", "last level"},
        {"normalize-theta", "fine index of the Besov norm used to normalize the witness"},
        {"samples-per-period", "grid nodes per period of the top frequency"},
        {"in", "input grid JSON"},
        {"out", "output path (stdout if omitted)"},
        {"json", "JSON sidecar path (default: <out>.json)"},
    };
    const auto it = help.find(k);
    return it == help.end() ? "" : it->second;
}

int run(int argc, char** argv) {
    CLI::App app{"Anisotropic Fourier sections, Besov norms and rate experiments"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value file supplying defaults for the flags");

    std::map<std::string, std::map<std::string, std::string>> raw;
    std::map<std::string, bool> quick_flag;
    std::map<std::string, CLI::App*> subs;
    for (const auto& c : commands()) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        subs[c.name] = sub;
        for (const auto& k : c.keys) {
            if (k == "quick") {
                sub->add_flag("--quick", quick_flag[c.name], "cheap structural checks only");
            } else {
                sub->add_option("--" + k, raw[c.name][k], key_help(k));
            }
        }
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (const auto& c : commands()) {
        CLI::App* sub = subs[c.name];
        if (!sub->parsed()) continue;
        Inputs in;
        if (!config_path.empty()) {
            const std::set<std::string> known(c.keys.begin(), c.keys.end());
            for (const auto& [k, v] : parse_key_value(read_text_file(config_path))) {
                if (!known.count(k)) throw UsageError("config file: unknown key '" + k + "' for " + c.name);
                in.values[k] = v;
            }
        }
        for (const auto& k : c.keys) {
            if (k == "quick") {
                if (quick_flag[c.name]) in.values[k] = "true";
            } else if (sub->count("--" + k) > 0) {
                in.values[k] = raw[c.name][k];
            }
        }
        return c.run(in);
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const besov::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
