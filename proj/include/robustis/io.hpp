#pragma once

// Text formats: edge and row streams, CSV transcripts, JSON reports.

#include <iosfwd>
#include <json.hpp>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "robustis/game.hpp"
#include "robustis/hypergraph.hpp"
#include "robustis/sparsify.hpp"
#include "robustis/subspace.hpp"

namespace robustis {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the line.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Shortest-exact text for a double (%.17g).
std::string format_double(double v);

/// One edge per line as whitespace-separated vertex ids; blank lines and
/// lines starting with '#' are skipped.
std::vector<std::vector<Vertex>> read_edge_stream(std::istream& in);

/// One row per line of integers, all rows the same length. If `d` is 0 the
/// first row fixes it.
std::vector<IntRow> read_row_stream(std::istream& in, std::size_t d = 0);

inline constexpr const char* kTranscriptHeader =
    "trial_id,t,x,p,coin,x_tilde,true_sum,estimate,rel_error";

/// CSV rows for one game; rel_error is empty while the true sum is 0.
void write_transcript_csv(std::ostream& out, std::uint64_t trial_id, const GameTranscript& tr);

Json to_json(const SamplerConfig& config);
Json to_json(const TrialStats& stats);
Json to_json(const Sparsifier& sparsifier);
Json to_json(const VerificationReport& report);
Json to_json(const SizeAudit& audit);
Json to_json(const EmbedParams& params);
Json to_json(const EmbedTranscript& transcript, const WeightedRowSet& kept);
Json to_json(const EmbeddingReport& report);
Json to_json(const SensitivityAudit& audit);

/// Inverse of to_json(Sparsifier); throws std::invalid_argument on a bad document.
Sparsifier sparsifier_from_json(const Json& doc);

/// Rebuilds the kept-row set and parameters from to_json(EmbedTranscript, ...).
struct EmbeddingDocument {
  EmbedParams params;
  double rho = 0.0;
  double lambda = 0.0;
  std::vector<KeptRow> kept;
  std::vector<EmbedStep> steps;  // empty when the document has none
};
EmbeddingDocument embedding_from_json(const Json& doc);
WeightedRowSet to_row_set(const EmbeddingDocument& doc);

}  // namespace robustis
