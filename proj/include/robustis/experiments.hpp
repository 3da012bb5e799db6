#pragma once

// Multi-trial runners for the hypergraph and subspace families. Trial i
// seeds the sampler with derive_seed(master, i) and any adversary with
// derive_seed(~master, i); results come back in trial order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "robustis/io.hpp"
#include "robustis/sparsify.hpp"
#include "robustis/subspace.hpp"

namespace robustis {

struct HypergraphExperiment {
  std::size_t n = 8;
  double epsilon = 0.25;
  double k1 = kDefaultSparsifyK1;
  /// Fixed edge stream; when empty the adversary generates m edges.
  std::vector<std::vector<Vertex>> stream;
  std::string adversary = "random";
  std::size_t m = 200;
  std::size_t min_size = 2;
  std::size_t max_size = 4;
  std::optional<CutFamily> verify;
  bool audit = false;
  double c_size = 1.0;

  void validate() const;
};

struct HypergraphTrial {
  std::uint64_t trial_id = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<Vertex>> stream;
  SparsifyResult result;
  std::optional<VerificationReport> verification;
  std::optional<SizeAudit> audit;

  bool pass() const;
};

std::vector<HypergraphTrial> run_hypergraph_trials(const HypergraphExperiment& exp,
                                                   std::uint64_t n_trials, unsigned jobs,
                                                   std::uint64_t master_seed);

struct SubspaceExperiment {
  EmbedParams params;
  /// Fixed row stream; when empty the adversary generates n rows.
  std::vector<IntRow> rows;
  std::string adversary = "uniform";
  std::size_t n = 400;
  bool verify = false;
  VerifyOptions verify_options;
  bool audit = false;
  double c_audit = 4.0;

  void validate() const;
};

struct SubspaceTrial {
  std::uint64_t trial_id = 0;
  std::uint64_t seed = 0;
  EmbedTranscript transcript;
  std::vector<KeptRow> kept;
  std::optional<EmbeddingReport> verification;
  std::optional<SensitivityAudit> audit;

  bool pass() const;
};

std::vector<SubspaceTrial> run_subspace_trials(const SubspaceExperiment& exp,
                                               std::uint64_t n_trials, unsigned jobs,
                                               std::uint64_t master_seed);

Json to_json(const HypergraphExperiment& exp);
Json to_json(const HypergraphTrial& trial, bool include_stream);
Json to_json(const SubspaceExperiment& exp);
Json to_json(const SubspaceTrial& trial, bool include_rows);

}  // namespace robustis
