// Python bindings for the robustis library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "robustis/experiments.hpp"
#include "robustis/game.hpp"
#include "robustis/io.hpp"
#include "robustis/sampler.hpp"
#include "robustis/sparsify.hpp"
#include "robustis/strength.hpp"
#include "robustis/subspace.hpp"

namespace py = pybind11;
using namespace robustis;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_python(const py::object& o) {
  return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Hypergraph build_hypergraph(std::size_t n, const std::vector<std::vector<Vertex>>& edges,
                            const std::optional<std::vector<double>>& weights) {
  if (weights && weights->size() != edges.size()) {
    throw std::invalid_argument("weights and edges differ in length");
  }
  Hypergraph h(n);
  for (std::size_t i = 0; i < edges.size(); ++i) h.add_edge(edges[i], weights ? (*weights)[i] : 1.0);
  return h;
}

WeightedRowSet build_row_set(const std::vector<IntRow>& rows, const std::vector<double>& probs,
                             double lambda, double p_norm) {
  if (rows.empty()) throw std::invalid_argument("need at least one kept row");
  if (rows.size() != probs.size()) throw std::invalid_argument("rows and probs differ in length");
  WeightedRowSet set(rows[0].size(), p_norm, 1.0, lambda);
  for (std::size_t i = 0; i < rows.size(); ++i) set.add({rows[i], probs[i], 1.0, i});
  return set;
}

std::optional<CutFamily> cut_family(const std::string& s) {
  if (s == "none") return std::nullopt;
  if (s == "two-cuts") return CutFamily::two_cuts();
  if (s == "all-cuts") return CutFamily::all();
  throw std::invalid_argument("cuts must be none, two-cuts or all-cuts");
}

}  // namespace

PYBIND11_MODULE(_robustis, m) {
  m.doc() = "Online importance sampling: sum estimation, hypergraph sparsification, subspace embeddings";

  m.def("splitmix64", [](std::uint64_t x) { return splitmix64(x); });
  m.def("derive_seed", [](std::uint64_t master, std::uint64_t index) { return derive_seed(master, index); });
  m.def("amplification_param", &amplification_param, py::arg("epsilon"), py::arg("delta"),
        py::arg("delta_cap"), py::arg("const_c") = 3.0);

  py::class_<SamplerConfig>(m, "SamplerConfig")
      .def(py::init([](double epsilon, double delta, double delta_cap, double const_c, std::optional<double> amp) {
             auto c = SamplerConfig::from_params(epsilon, delta, delta_cap, const_c);
             return amp ? c.with_amp(*amp) : c;
           }),
           py::arg("epsilon") = 0.2, py::arg("delta") = 0.1, py::arg("delta_cap") = 1e6, py::arg("const_c") = 3.0,
           py::arg("amp") = py::none())
      .def_readonly("epsilon", &SamplerConfig::epsilon)
      .def_readonly("delta", &SamplerConfig::delta)
      .def_readonly("delta_cap", &SamplerConfig::delta_cap)
      .def_readonly("amp", &SamplerConfig::amp)
      .def_readonly("const_c", &SamplerConfig::const_c);

  py::class_<StepRecord>(m, "StepRecord")
      .def_readonly("x", &StepRecord::x)
      .def_readonly("p", &StepRecord::p)
      .def_readonly("coin", &StepRecord::coin)
      .def_readonly("x_tilde", &StepRecord::x_tilde)
      .def("expected_representative", &expected_representative)
      .def("variance", &representative_variance);

  py::class_<OnlineSampler>(m, "OnlineSampler")
      .def(py::init<SamplerConfig, std::uint64_t>(), py::arg("config"), py::arg("seed"))
      .def("push", &OnlineSampler::push, py::arg("x"), py::arg("p") = py::none())
      .def_property_readonly("estimate", &OnlineSampler::estimate)
      .def_property_readonly("true_sum", [](const OnlineSampler& s) { return s.state().true_sum; })
      .def_property_readonly("sample_count", [](const OnlineSampler& s) { return s.state().sample_count; });

  m.def("strategy_names", &strategy_names);
  m.def(
      "run_sum_game",
      [](const std::string& strategy, const SamplerConfig& config, std::uint64_t horizon, std::uint64_t trials,
         unsigned jobs, std::uint64_t seed) {
        const auto stats = [&] {
          py::gil_scoped_release release;
          return run_trials(strategy_factory(strategy), config, horizon, trials, jobs, seed, false);
        }();
        return to_python(to_json(stats));
      },
      py::arg("strategy"), py::arg("config"), py::arg("horizon") = 2000, py::arg("trials") = 1, py::arg("jobs") = 1,
      py::arg("seed") = 0);

  m.def(
      "min_normalized_cut",
      [](std::size_t n, const std::vector<std::vector<Vertex>>& edges, std::optional<std::vector<double>> weights) {
        const auto cut = min_normalized_cut(build_hypergraph(n, edges, weights));
        return py::make_tuple(cut.lambda, cut.witness.blocks());
      },
      py::arg("n"), py::arg("edges"), py::arg("weights") = py::none());
  m.def(
      "strength",
      [](std::size_t n, const std::vector<std::vector<Vertex>>& edges, const std::vector<Vertex>& edge,
         std::optional<std::vector<double>> weights) {
        return strength(make_edge(edge, n), build_hypergraph(n, edges, weights));
      },
      py::arg("n"), py::arg("edges"), py::arg("edge"), py::arg("weights") = py::none());
  m.def("sparsifier_rho", &sparsifier_rho, py::arg("k1"), py::arg("epsilon"), py::arg("n"));
  m.def(
      "sparsify",
      [](std::size_t n, const std::vector<std::vector<Vertex>>& edges, double epsilon, double k1,
         std::uint64_t seed, const std::string& cuts, bool audit) {
        HypergraphExperiment exp;
        exp.n = n;
        exp.epsilon = epsilon;
        exp.k1 = k1;
        exp.stream = edges;
        exp.verify = cut_family(cuts);
        exp.audit = audit;
        return to_python(to_json(run_hypergraph_trials(exp, 1, 1, seed).at(0), true));
      },
      py::arg("n"), py::arg("edges"), py::arg("epsilon") = 0.25, py::arg("k1") = kDefaultSparsifyK1,
      py::arg("seed") = 0, py::arg("cuts") = "none", py::arg("audit") = false);
  m.def(
      "verify_sparsifier",
      [](const py::object& sparsifier, const std::vector<std::vector<Vertex>>& edges, double epsilon,
         const std::string& cuts) {
        const auto s = sparsifier_from_json(from_python(sparsifier));
        const auto family = cut_family(cuts).value_or(CutFamily::all());
        return to_python(to_json(verify_sparsifier(build_hypergraph(s.n, edges, std::nullopt), s.as_hypergraph(),
                                                   epsilon, family)));
      },
      py::arg("sparsifier"), py::arg("edges"), py::arg("epsilon") = 0.25, py::arg("cuts") = "all-cuts");

  m.def(
      "ridge_leverage",
      [](const std::vector<IntRow>& kept, const std::vector<double>& probs, const IntRow& a, double lambda) {
        return ridge_leverage(a, build_row_set(kept, probs, lambda, 2.0));
      },
      py::arg("kept"), py::arg("probs"), py::arg("a"), py::arg("lam"));
  m.def(
      "online_sensitivity",
      [](const std::vector<IntRow>& kept, const std::vector<double>& probs, const IntRow& a, double lambda,
         double p) { return online_sensitivity(a, build_row_set(kept, probs, lambda, p)); },
      py::arg("kept"), py::arg("probs"), py::arg("a"), py::arg("lam"), py::arg("p") = 2.0);
  m.def("ridge_lambda", &ridge_lambda, py::arg("n_bound"), py::arg("entry_bound"), py::arg("p"), py::arg("d"));
  m.def("embed_rho", &embed_rho, py::arg("k1"), py::arg("epsilon"), py::arg("d"), py::arg("kappa_ol_bound"),
        py::arg("n_bound"));
  m.def(
      "embed",
      [](const std::vector<IntRow>& rows, double p, double epsilon, double kappa_ol_bound, double k1,
         std::int64_t entry_bound, std::optional<std::size_t> n_bound, std::uint64_t seed, bool verify,
         bool audit) {
        if (rows.empty()) throw std::invalid_argument("need at least one row");
        SubspaceExperiment exp;
        exp.params.d = rows[0].size();
        exp.params.p = p;
        exp.params.epsilon = epsilon;
        exp.params.kappa_ol_bound = kappa_ol_bound;
        exp.params.k1 = k1;
        exp.params.entry_bound = entry_bound;
        exp.params.n_bound = n_bound.value_or(rows.size());
        exp.rows = rows;
        exp.verify = verify;
        exp.audit = audit;
        return to_python(to_json(run_subspace_trials(exp, 1, 1, seed).at(0), true));
      },
      py::arg("rows"), py::arg("p") = 2.0, py::arg("epsilon") = 0.25, py::arg("kappa_ol_bound") = 1e4,
      py::arg("k1") = 1.0, py::arg("entry_bound") = 100, py::arg("n_bound") = py::none(), py::arg("seed") = 0,
      py::arg("verify") = false, py::arg("audit") = false);
  m.def(
      "online_condition_number",
      [](const std::vector<IntRow>& rows) {
        if (rows.empty()) throw std::invalid_argument("need at least one row");
        return online_condition_number(rows, rows[0].size());
      },
      py::arg("rows"));
}
