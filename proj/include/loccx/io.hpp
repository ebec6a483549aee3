#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "loccx/applications.hpp"
#include "loccx/faithful.hpp"
#include "loccx/spectra.hpp"

namespace loccx::io {

/// A state as given on input: either its Schmidt spectrum directly or a full
/// amplitude matrix that still has to be decomposed.
///
///   {"schmidt": [p1, p2, ...]}
///   {"amplitudes": [[[re, im], ...], ...]}   row-major n x n
///
/// Amplitude entries may also be plain real numbers. An optional "label"
/// string is carried through.
struct StateSpec {
  std::variant<SchmidtSpectrum, BipartiteState> source;
  std::optional<std::string> label;

  bool from_amplitudes() const noexcept { return source.index() == 1; }
};

/// Throws ValidationError unless exactly one of "schmidt" / "amplitudes" is present
/// and it describes a valid state.
StateSpec parse_state(const nlohmann::json& j);
StateSpec parse_state_text(std::string_view text);

/// Accepts inline JSON (anything starting with '{') or a path to a JSON file.
/// Throws IoError if the file cannot be read.
StateSpec load_state(const std::string& arg);

/// Spectrum of the state; runs the SVD only for amplitude input.
SchmidtSpectrum spectrum_of(const StateSpec& spec);

/// Amplitude matrix of the state, zero-padded to n x n. Spectra map to the
/// Schmidt-diagonal state.
BipartiteState state_of(const StateSpec& spec, std::size_t n);

nlohmann::json to_json(const SchmidtSpectrum& s);
nlohmann::json to_json(const Staircase& stairs);

/// {"f_opt", "xi", "trace_distance", "p_conclusive", "deterministic", "segments"}.
nlohmann::json to_json(const TransformReport& report);
nlohmann::json to_json(const CatalysisReport& report);

/// Header plus numeric rows.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// RFC 4180 text: CRLF line breaks, quoted header fields where needed and
/// numbers printed with 12 significant digits.
std::string format_csv(const CsvTable& table);

/// Writes format_csv(table) to path; throws IoError on failure.
void emit_csv(const CsvTable& table, const std::filesystem::path& path);

} // namespace loccx::io
