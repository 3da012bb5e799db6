#include "robustis/experiments.hpp"

#include <stdexcept>

#include "robustis/parallel.hpp"
#include "robustis/rng.hpp"

namespace robustis {

void HypergraphExperiment::validate() const {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
  if (!(k1 > 0.0)) throw std::invalid_argument("k1 must be positive");
  if (stream.empty()) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (min_size < 2 || min_size > max_size || max_size > n) {
      throw std::invalid_argument("edge sizes must satisfy 2 <= min-size <= max-size <= n");
    }
  }
}

bool HypergraphTrial::pass() const {
  return (!verification || verification->pass()) && (!audit || audit->pass());
}

std::vector<HypergraphTrial> run_hypergraph_trials(const HypergraphExperiment& exp,
                                                   std::uint64_t n_trials, unsigned jobs,
                                                   std::uint64_t master_seed) {
  exp.validate();
  if (n_trials < 1) throw std::invalid_argument("trials must be >= 1");
  return ordered_parallel_map<HypergraphTrial>(n_trials, jobs, [&](std::uint64_t i) {
    HypergraphTrial t;
    t.trial_id = i;
    t.seed = derive_seed(master_seed, i);
    if (exp.stream.empty()) {
      auto adv = make_edge_adversary(exp.adversary, exp.n, exp.min_size, exp.max_size,
                                     derive_seed(~master_seed, i));
      t.result = run_edge_game(*adv, exp.n, exp.m, exp.epsilon, exp.k1, t.seed);
      for (const auto& e : t.result.input.edges()) t.stream.push_back(e.vertices);
    } else {
      t.stream = exp.stream;
      t.result = stream_sparsify(t.stream, exp.n, exp.epsilon, exp.k1, Rng(t.seed));
    }
    if (exp.verify) {
      t.verification = verify_sparsifier(t.result.input, t.result.sparsifier.as_hypergraph(),
                                         exp.epsilon, *exp.verify);
    }
    if (exp.audit) {
      t.audit = size_audit(t.result.sparsifier, exp.n, t.stream.size(), exp.epsilon, exp.c_size);
    }
    return t;
  });
}

void SubspaceExperiment::validate() const {
  params.validate();
  if (rows.empty() && n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(c_audit > 0.0)) throw std::invalid_argument("c-audit must be positive");
}

bool SubspaceTrial::pass() const {
  return (!verification || verification->pass) && (!audit || audit->pass());
}

std::vector<SubspaceTrial> run_subspace_trials(const SubspaceExperiment& exp,
                                               std::uint64_t n_trials, unsigned jobs,
                                               std::uint64_t master_seed) {
  exp.validate();
  if (n_trials < 1) throw std::invalid_argument("trials must be >= 1");
  return ordered_parallel_map<SubspaceTrial>(n_trials, jobs, [&](std::uint64_t i) {
    SubspaceTrial t;
    t.trial_id = i;
    t.seed = derive_seed(master_seed, i);
    auto res = [&] {
      if (!exp.rows.empty()) return stream_embed(exp.rows, exp.params, Rng(t.seed));
      auto adv = make_row_adversary(exp.adversary, exp.params.d, exp.params.entry_bound,
                                    derive_seed(~master_seed, i));
      return run_row_game(*adv, exp.n, exp.params, t.seed);
    }();
    if (exp.verify) {
      t.verification = verify_embedding(res.transcript.rows, res.kept, exp.params.p,
                                        exp.params.epsilon, exp.verify_options);
    }
    if (exp.audit) t.audit = sensitivity_sum_audit(res.transcript, exp.c_audit);
    t.kept.assign(res.kept.rows().begin(), res.kept.rows().end());
    t.transcript = std::move(res.transcript);
    return t;
  });
}

Json to_json(const HypergraphExperiment& exp) {
  Json j{{"n", exp.n}, {"eps", exp.epsilon}, {"k1", exp.k1}};
  if (exp.stream.empty()) {
    j["adversary"] = exp.adversary;
    j["m"] = exp.m;
    j["min_size"] = exp.min_size;
    j["max_size"] = exp.max_size;
  } else {
    j["m"] = exp.stream.size();
    j["stream"] = exp.stream;
  }
  if (exp.verify) {
    j["verify"] = exp.verify->ks.empty() ? Json("all-cuts") : Json(exp.verify->ks);
  }
  j["audit"] = exp.audit;
  j["c_size"] = exp.c_size;
  return j;
}

Json to_json(const HypergraphTrial& t, bool include_stream) {
  Json j{{"trial_id", t.trial_id}, {"seed", t.seed}};
  if (include_stream) j["stream"] = t.stream;
  j["sparsifier"] = to_json(t.result.sparsifier);
  if (t.verification) j["verification"] = to_json(*t.verification);
  if (t.audit) j["audits"] = to_json(*t.audit);
  j["pass"] = t.pass();
  return j;
}

Json to_json(const SubspaceExperiment& exp) {
  Json j = to_json(exp.params);
  if (exp.rows.empty()) {
    j["adversary"] = exp.adversary;
    j["n"] = exp.n;
  } else {
    j["n"] = exp.rows.size();
  }
  j["verify"] = exp.verify;
  j["audit"] = exp.audit;
  j["c_audit"] = exp.c_audit;
  return j;
}

Json to_json(const SubspaceTrial& t, bool include_rows) {
  Json j{{"trial_id", t.trial_id}, {"seed", t.seed}};
  if (include_rows) j["rows"] = t.transcript.rows;
  WeightedRowSet set(t.transcript.params.d, t.transcript.params.p, t.transcript.rho,
                     t.transcript.lambda, t.transcript.params.span_test);
  for (const auto& k : t.kept) set.add(k);
  j["embedding"] = to_json(t.transcript, set);
  if (t.verification) j["verification"] = to_json(*t.verification);
  if (t.audit) j["audits"] = to_json(*t.audit);
  j["pass"] = t.pass();
  return j;
}

}  // namespace robustis
