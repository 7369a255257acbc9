#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "besov/anisotropy.hpp"
#include "besov/experiments.hpp"
#include "besov/lattice.hpp"
#include "besov/spectral.hpp"

namespace besov {

// Grid file:
//   {"axes":[{"L":float,"N":int},...],"layout":"row-major","values":[[re,im],...],"label":string}
// Spectrum file adds "domain":"frequency" and "delta_lambda" per axis; values are in
// centered frequency order. Floats are written with 17 significant digits. An optional
// "config_digest" string is appended when given.
std::string grid_to_json(const GridFunction& f, const std::string& config_digest = {});
GridFunction grid_from_json(std::string_view text);

std::string spectrum_to_json(const SpectrumFunction& s, const std::string& config_digest = {});
SpectrumFunction spectrum_from_json(std::string_view text);

std::string besov_norm_to_json(const BesovNormResult& result, const std::string& config_digest = {});

/// CSV: "# config_digest=<hex>" line, then header n,error,log2_error,predicted_log2.
std::string rate_report_csv(const RateReport& report);
/// Full report; `timestamp` is the only field outside the digest.
std::string rate_report_json(const RateReport& report, const std::string& timestamp = {});

std::string read_text_file(const std::filesystem::path& path);
/// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Flat key=value text ('#' starts a comment line). Keys and values are trimmed.
std::map<std::string, std::string> parse_key_value(std::string_view text);

/// Digest of "key=value\n" lines in key order.
std::string config_digest(const std::map<std::string, std::string>& config);

}  // namespace besov
