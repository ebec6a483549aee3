#include "loccx/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "loccx/error.hpp"

namespace loccx::io {

namespace {

std::complex<double> parse_amplitude(const nlohmann::json& e) {
  if (e.is_number())
    return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw ValidationError("amplitude entries must be numbers or [re, im] pairs");
}

Eigen::MatrixXcd parse_matrix(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty())
    throw ValidationError("\"amplitudes\" must be a non-empty array of rows");
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = static_cast<Eigen::Index>(rows[0].is_array() ? rows[0].size() : 0);
  Eigen::MatrixXcd m(n_rows, n_cols);
  for (Eigen::Index i = 0; i < n_rows; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols)
      throw DimensionError("amplitude rows have unequal lengths");
    for (Eigen::Index j = 0; j < n_cols; ++j)
      m(i, j) = parse_amplitude(row[static_cast<std::size_t>(j)]);
  }
  return m;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string quote_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos)
    return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

StateSpec parse_state(const nlohmann::json& j) {
  if (!j.is_object())
    throw ValidationError("state must be a JSON object");
  const bool has_schmidt = j.contains("schmidt");
  const bool has_amplitudes = j.contains("amplitudes");
  if (has_schmidt == has_amplitudes)
    throw ValidationError("state needs exactly one of \"schmidt\" or \"amplitudes\"");

  std::optional<std::string> label;
  if (j.contains("label")) {
    if (!j["label"].is_string())
      throw ValidationError("\"label\" must be a string");
    label = j["label"].get<std::string>();
  }

  if (has_schmidt) {
    const auto& arr = j["schmidt"];
    if (!arr.is_array())
      throw ValidationError("\"schmidt\" must be an array of numbers");
    std::vector<double> probs;
    for (const auto& v : arr) {
      if (!v.is_number())
        throw ValidationError("\"schmidt\" must be an array of numbers");
      probs.push_back(v.get<double>());
    }
    return {SchmidtSpectrum(std::move(probs)), label};
  }
  return {BipartiteState(parse_matrix(j["amplitudes"])), label};
}

StateSpec parse_state_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return parse_state(j);
}

StateSpec load_state(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{')
    return parse_state_text(arg);
  std::ifstream in(arg);
  if (!in)
    throw IoError("cannot read state file '" + arg + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state_text(buf.str());
}

SchmidtSpectrum spectrum_of(const StateSpec& spec) {
  if (const auto* s = std::get_if<SchmidtSpectrum>(&spec.source))
    return *s;
  return schmidt_spectrum(std::get<BipartiteState>(spec.source));
}

BipartiteState state_of(const StateSpec& spec, std::size_t n) {
  if (const auto* s = std::get_if<SchmidtSpectrum>(&spec.source))
    return BipartiteState::diagonal(s->padded(n));
  const auto& amps = std::get<BipartiteState>(spec.source).amplitudes();
  if (static_cast<std::size_t>(amps.rows()) > n)
    throw DimensionError("cannot shrink an amplitude matrix");
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m.topLeftCorner(amps.rows(), amps.cols()) = amps;
  return BipartiteState(std::move(m));
}

nlohmann::json to_json(const SchmidtSpectrum& s) { return {{"schmidt", s.values()}}; }

nlohmann::json to_json(const Staircase& stairs) {
  auto segs = nlohmann::json::array();
  for (const auto& seg : stairs.segments)
    segs.push_back({{"l", seg.first}, {"r", seg.ratio}, {"A", seg.source_mass},
                    {"B", seg.target_mass}});
  return segs;
}

nlohmann::json to_json(const TransformReport& report) {
  return {{"f_opt", report.f_opt},
          {"xi", report.xi.values()},
          {"trace_distance", report.trace_distance},
          {"p_conclusive", report.conclusive_p},
          {"deterministic", report.deterministic},
          {"segments", to_json(report.staircase)}};
}

nlohmann::json to_json(const CatalysisReport& report) {
  return {{"convertible_bare", report.convertible_bare},
          {"convertible_with_catalyst", report.convertible_with_catalyst},
          {"trace_distance_bare", report.trace_distance_bare},
          {"trace_distance_catalyzed", report.trace_distance_catalyzed},
          {"delta_T", report.delta_t},
          {"noise_threshold", report.noise_threshold}};
}

std::string format_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += quote_field(table.header[i]);
  }
  out += "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

void emit_csv(const CsvTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out << format_csv(table);
  if (!out)
    throw IoError("failed writing '" + path.string() + "'");
}

} // namespace loccx::io
