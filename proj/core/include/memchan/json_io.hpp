/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MEMCHAN_JSON_IO_HPP
#define MEMCHAN_JSON_IO_HPP

#include <string>

#include "memchan/repeatability.hpp"
#include "memchan/tomography.hpp"

// JSON schemas for all file- and CLI-facing data:
//   matrix      {"rows": n, "cols": n, "data": [[re, im], ...]}   (row-major)
//   channel     {"dim": d, "kraus": [matrix, ...]}
//   device      {"dim_m": m, "dim_s": s, "unitary": matrix, "memory": matrix}
//   spec        {"probs": [p_j, ...], "unitaries": [matrix, ...],
//                "memory": matrix (optional coherent override)}
//   transcript  {"dim_m", "dim_s", "steps": [{input, output, memory_before,
//                memory_after, entropies..., choi_distance_to_first}, ...]}
// Report scalars are serialized as decimal strings with 12 significant
// digits so outputs are byte-stable; matrix entries stay JSON numbers.
// Parsers ignore unknown keys (command echoes round-trip through them).

namespace memchan::jsonio {

struct parse_error : error {
  using error::error;
};

// 12-significant-digit decimal string for report scalars.
std::string format_real(double v);

//------------------------------------------------------------------------------
// Parsing
//------------------------------------------------------------------------------

Cmat parse_matrix(const std::string& text);
KrausChannel parse_channel(const std::string& text);
MemoryDevice parse_device(const std::string& text);
RandomUnitarySpec parse_random_unitary_spec(const std::string& text);
// The optional "memory" field of a spec file (coherent memory override).
std::optional<Cmat> parse_spec_memory(const std::string& text);
UsageTranscript parse_transcript(const std::string& text);

//------------------------------------------------------------------------------
// Serialization
//------------------------------------------------------------------------------

// CLI outputs carry the command name and the seed that produced them.
struct CommandEcho {
  std::string command;
  uint64_t seed = 0;
};

std::string matrix_json(const Cmat& m);
std::string channel_json(const KrausChannel& ch);
std::string device_json(const MemoryDevice& dev,
                        const CommandEcho* echo = nullptr);
std::string transcript_json(const UsageTranscript& t,
                            const CommandEcho* echo = nullptr);

std::string repeatability_report_json(const RepeatabilityReport& report,
                                      const CommandEcho& echo);
std::string bound_report_json(const BoundReport& report,
                              const CommandEcho& echo);
std::string entropy_chain_report_json(const EntropyChainReport& report,
                                      const CommandEcho& echo);
std::string tomography_result_json(const TomographyResult& result);
std::string strategy_comparison_json(const StrategyComparison& cmp,
                                     const CommandEcho& echo);

//------------------------------------------------------------------------------
// File helpers
//------------------------------------------------------------------------------

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace memchan::jsonio

#endif  // MEMCHAN_JSON_IO_HPP
