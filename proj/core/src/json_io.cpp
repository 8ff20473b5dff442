/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "memchan/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace memchan::jsonio {

using nlohmann::json;

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw parse_error("invalid JSON");
  }
  return j;
}

const json& require(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw parse_error(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

Eigen::Index require_index(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw parse_error(std::string("field \"") + key +
                      "\" must be a positive integer");
  }
  return static_cast<Eigen::Index>(v.get<long long>());
}

double number_or_string(const json& v, const char* key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return std::stod(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw parse_error(std::string("field \"") + key + "\" is not numeric");
}

Cmat matrix_from(const json& j) {
  if (!j.is_object()) throw parse_error("matrix must be an object");
  const Eigen::Index rows = require_index(j, "rows");
  const Eigen::Index cols = require_index(j, "cols");
  const json& data = require(j, "data");
  if (!data.is_array() ||
      data.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols)) {
    throw parse_error("matrix data length must equal rows*cols");
  }
  Cmat m(rows, cols);
  Eigen::Index idx = 0;
  for (const json& entry : data) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number()) {
      throw parse_error("matrix entries must be [re, im] number pairs");
    }
    m(idx / cols, idx % cols) =
        complexd(entry[0].get<double>(), entry[1].get<double>());
    ++idx;
  }
  return m;
}

json matrix_to(const Cmat& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      data.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

KrausChannel channel_from(const json& j) {
  const Eigen::Index dim = require_index(j, "dim");
  const json& kraus = require(j, "kraus");
  if (!kraus.is_array() || kraus.empty()) {
    throw parse_error("channel \"kraus\" must be a nonempty array");
  }
  std::vector<Cmat> ops;
  for (const json& k : kraus) {
    ops.push_back(matrix_from(k));
  }
  return KrausChannel(dim, std::move(ops));
}

json channel_to(const KrausChannel& ch) {
  json kraus = json::array();
  for (const Cmat& k : ch.kraus()) {
    kraus.push_back(matrix_to(k));
  }
  return json{{"dim", ch.dim()}, {"kraus", std::move(kraus)}};
}

MemoryDevice device_from(const json& j) {
  const Eigen::Index dm = require_index(j, "dim_m");
  const Eigen::Index ds = require_index(j, "dim_s");
  return MemoryDevice(UnitaryOperator(matrix_from(require(j, "unitary"))),
                      ProductSpace(dm, ds),
                      DensityOperator(matrix_from(require(j, "memory"))));
}

json device_to(const MemoryDevice& dev) {
  return json{{"dim_m", dev.dim_memory()},
              {"dim_s", dev.dim_system()},
              {"unitary", matrix_to(dev.unitary().matrix())},
              {"memory", matrix_to(dev.memory().matrix())}};
}

void add_echo(json& j, const CommandEcho& echo) {
  j["command"] = echo.command;
  j["seed"] = echo.seed;
}

json strings(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(format_real(v));
  return arr;
}

json tomography_to(const TomographyResult& r) {
  json bloch_map = json::array();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      bloch_map.push_back(format_real(r.bloch_map(i, j)));
    }
  }
  json shift = json::array();
  for (int i = 0; i < 3; ++i) shift.push_back(format_real(r.bloch_shift(i)));

  json out{
      {"strategy",
       json{{"kind", r.strategy.kind == ProbeStrategy::Kind::sequential
                         ? "sequential"
                         : "randomized"},
            {"shots_per_probe", r.strategy.shots_per_probe},
            {"seed", r.strategy.seed}}},
      {"mode", r.mode == TomographyMode::exact ? "exact" : "sampled"},
      {"bloch_map", std::move(bloch_map)},
      {"bloch_shift", std::move(shift)},
      {"cp", r.cp},
      {"projected", r.projected},
      {"dist_to_identity", format_real(r.dist_to_identity)},
      {"dist_to_depolarizing", format_real(r.dist_to_depolarizing)},
  };
  out["estimated"] = r.estimated ? channel_to(*r.estimated) : json(nullptr);
  return out;
}

}  // namespace

Cmat parse_matrix(const std::string& text) {
  return matrix_from(parse_text(text));
}

KrausChannel parse_channel(const std::string& text) {
  return channel_from(parse_text(text));
}

MemoryDevice parse_device(const std::string& text) {
  return device_from(parse_text(text));
}

RandomUnitarySpec parse_random_unitary_spec(const std::string& text) {
  const json j = parse_text(text);
  const json& probs = require(j, "probs");
  const json& unitaries = require(j, "unitaries");
  if (!probs.is_array() || !unitaries.is_array()) {
    throw parse_error("spec \"probs\" and \"unitaries\" must be arrays");
  }
  std::vector<double> p;
  for (const json& v : probs) p.push_back(number_or_string(v, "probs"));
  std::vector<UnitaryOperator> u;
  for (const json& m : unitaries) u.emplace_back(matrix_from(m));
  return RandomUnitarySpec(std::move(p), std::move(u));
}

std::optional<Cmat> parse_spec_memory(const std::string& text) {
  const json j = parse_text(text);
  const auto it = j.find("memory");
  if (it == j.end() || it->is_null()) return std::nullopt;
  return matrix_from(*it);
}

UsageTranscript parse_transcript(const std::string& text) {
  const json j = parse_text(text);
  UsageTranscript t;
  t.dim_memory = require_index(j, "dim_m");
  t.dim_system = require_index(j, "dim_s");
  const json& steps = require(j, "steps");
  if (!steps.is_array() || steps.empty()) {
    throw parse_error("transcript \"steps\" must be a nonempty array");
  }
  bool first = true;
  for (const json& step : steps) {
    if (first) {
      t.memory_states.emplace_back(matrix_from(require(step, "memory_before")));
      t.memory_entropies.push_back(
          number_or_string(require(step, "memory_entropy_before"),
                           "memory_entropy_before"));
      first = false;
    }
    t.inputs.emplace_back(matrix_from(require(step, "input")));
    t.outputs.emplace_back(matrix_from(require(step, "output")));
    t.memory_states.emplace_back(matrix_from(require(step, "memory_after")));
    t.input_entropies.push_back(
        number_or_string(require(step, "input_entropy"), "input_entropy"));
    t.output_entropies.push_back(
        number_or_string(require(step, "output_entropy"), "output_entropy"));
    t.memory_entropies.push_back(number_or_string(
        require(step, "memory_entropy_after"), "memory_entropy_after"));
  }
  return t;
}

std::string matrix_json(const Cmat& m) { return matrix_to(m).dump(2); }

std::string channel_json(const KrausChannel& ch) {
  return channel_to(ch).dump(2);
}

std::string device_json(const MemoryDevice& dev, const CommandEcho* echo) {
  json j = device_to(dev);
  if (echo) add_echo(j, *echo);
  return j.dump(2);
}

std::string transcript_json(const UsageTranscript& t, const CommandEcho* echo) {
  const std::vector<double> drift = transcript_channel_drift(t);
  json steps = json::array();
  for (size_t k = 0; k < t.inputs.size(); ++k) {
    json step{
        {"step", k + 1},
        {"input", matrix_to(t.inputs[k].matrix())},
        {"output", matrix_to(t.outputs[k].matrix())},
        {"memory_before", matrix_to(t.memory_states[k].matrix())},
        {"memory_after", matrix_to(t.memory_states[k + 1].matrix())},
        {"input_entropy", format_real(t.input_entropies[k])},
        {"output_entropy", format_real(t.output_entropies[k])},
        {"memory_entropy_before", format_real(t.memory_entropies[k])},
        {"memory_entropy_after", format_real(t.memory_entropies[k + 1])},
    };
    if (!drift.empty()) {
      step["choi_distance_to_first"] = format_real(drift[k]);
    }
    steps.push_back(std::move(step));
  }
  json j{{"dim_m", t.dim_memory}, {"dim_s", t.dim_system},
         {"steps", std::move(steps)}};
  if (echo) add_echo(j, *echo);
  return j.dump(2);
}

std::string repeatability_report_json(const RepeatabilityReport& report,
                                      const CommandEcho& echo) {
  json j{
      {"n_requested", report.n_requested},
      {"max_choi_deviation", format_real(report.max_choi_deviation)},
      {"first_deviating_step", report.first_deviating_step
                                   ? json(*report.first_deviating_step)
                                   : json(nullptr)},
      {"per_step_deviation", strings(report.per_step_deviation)},
      {"threshold", format_real(report.threshold)},
  };
  add_echo(j, echo);
  return j.dump(2);
}

std::string bound_report_json(const BoundReport& report,
                              const CommandEcho& echo) {
  json j{
      {"delta_at_mixture", format_real(report.delta_at_mixture)},
      {"delta_max_estimate", format_real(report.delta_max_estimate)},
      {"mem_dim", report.mem_dim},
      {"n_max_mixture",
       report.n_max_mixture ? json(*report.n_max_mixture) : json("unbounded")},
      {"n_max_estimate", report.n_max_estimate ? json(*report.n_max_estimate)
                                               : json("unbounded")},
      {"mixture_tie", report.mixture_tie},
      {"estimate_tie", report.estimate_tie},
      {"delta_max_is_lower_bound", report.delta_max_is_lower_bound},
  };
  add_echo(j, echo);
  return j.dump(2);
}

std::string entropy_chain_report_json(const EntropyChainReport& report,
                                      const CommandEcho& echo) {
  json j{
      {"steps", report.steps},
      {"bound_bits", format_real(report.bound_bits)},
      {"accumulated_deficit", strings(report.accumulated_deficit)},
      {"memory_entropy_gain", strings(report.memory_entropy_gain)},
      {"violated_prefix", report.violated_prefix ? json(*report.violated_prefix)
                                                 : json(nullptr)},
      {"passed", report.passed},
      {"slack", format_real(report.slack)},
  };
  add_echo(j, echo);
  return j.dump(2);
}

std::string tomography_result_json(const TomographyResult& result) {
  return tomography_to(result).dump(2);
}

std::string strategy_comparison_json(const StrategyComparison& cmp,
                                     const CommandEcho& echo) {
  json j{
      {"sequential", tomography_to(cmp.sequential)},
      {"randomized", tomography_to(cmp.randomized)},
      {"inter_estimate_distance", format_real(cmp.inter_estimate_distance)},
  };
  add_echo(j, echo);
  return j.dump(2);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw parse_error("cannot open file: " + path);
  }
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw error("cannot write file: " + path);
  }
  out << text;
}

}  // namespace memchan::jsonio
