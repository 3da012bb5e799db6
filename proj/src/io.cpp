#include "robustis/io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace robustis {

namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename Int>
std::vector<Int> parse_ints(const std::string& line, std::size_t lineno) {
  std::vector<Int> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError(lineno, "not an integer: '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

template <typename Fn>
void for_each_data_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty() || s[0] == '#') continue;
    fn(s, lineno);
  }
}

Json partition_json(const Partition& p) {
  Json blocks = Json::array();
  for (const auto& b : p.blocks()) blocks.push_back(b);
  return blocks;
}

const char* span_test_name(SpanTest t) { return t == SpanTest::exact ? "exact" : "residual"; }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::vector<Vertex>> read_edge_stream(std::istream& in) {
  std::vector<std::vector<Vertex>> edges;
  for_each_data_line(in, [&](const std::string& s, std::size_t lineno) {
    auto e = parse_ints<Vertex>(s, lineno);
    if (e.size() < 2) throw ParseError(lineno, "an edge needs at least 2 vertices");
    edges.push_back(std::move(e));
  });
  return edges;
}

std::vector<IntRow> read_row_stream(std::istream& in, std::size_t d) {
  std::vector<IntRow> rows;
  for_each_data_line(in, [&](const std::string& s, std::size_t lineno) {
    auto r = parse_ints<std::int64_t>(s, lineno);
    if (d == 0) d = r.size();
    if (r.size() != d) {
      throw ParseError(lineno, "expected " + std::to_string(d) + " entries, got " +
                                   std::to_string(r.size()));
    }
    rows.push_back(std::move(r));
  });
  return rows;
}

void write_transcript_csv(std::ostream& out, std::uint64_t trial_id, const GameTranscript& tr) {
  std::uint64_t t = 0;
  for (const auto& r : tr.rounds) {
    ++t;
    out << trial_id << ',' << t << ',' << format_double(r.step.x) << ','
        << format_double(r.step.p) << ',' << (r.step.coin ? 1 : 0) << ','
        << format_double(r.step.x_tilde) << ',' << format_double(r.true_sum) << ','
        << format_double(r.estimate) << ',';
    if (r.true_sum > 0.0) out << format_double(relative_error(r.estimate, r.true_sum));
    out << '\n';
  }
}

Json to_json(const SamplerConfig& c) {
  return Json{{"epsilon", c.epsilon},
              {"delta", c.delta},
              {"delta_cap", c.delta_cap},
              {"amp", c.amp},
              {"const_c", c.const_c}};
}

Json to_json(const TrialStats& s) {
  Json config = to_json(s.config);
  config["strategy"] = s.strategy;
  config["horizon"] = s.horizon;
  config["seed"] = s.master_seed;
  return Json{{"win_rate", s.win_rate},
              {"n_trials", s.n_trials},
              {"max_rel_error", s.max_rel_error},
              {"mean_samples", s.mean_samples},
              {"max_samples", s.max_samples},
              {"config", std::move(config)}};
}

Json to_json(const Sparsifier& sp) {
  Json kept = Json::array();
  for (const auto& k : sp.kept) {
    kept.push_back(Json{{"edge", k.edge.vertices},
                        {"weight", k.edge.weight},
                        {"p", k.p},
                        {"strength", k.strength},
                        {"arrival", k.arrival}});
  }
  return Json{{"n", sp.n}, {"rho", sp.rho}, {"kept", std::move(kept)}};
}

Sparsifier sparsifier_from_json(const Json& doc) {
  try {
    Sparsifier sp;
    sp.n = doc.at("n").get<std::size_t>();
    sp.rho = doc.at("rho").get<double>();
    for (const auto& k : doc.at("kept")) {
      KeptEdge ke;
      ke.p = k.at("p").get<double>();
      ke.edge = make_edge(k.at("edge").get<std::vector<Vertex>>(), sp.n, k.at("weight").get<double>());
      ke.strength = k.value("strength", 0.0);
      ke.arrival = k.value("arrival", std::uint64_t{0});
      sp.kept.push_back(std::move(ke));
    }
    return sp;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad sparsifier document: ") + e.what());
  }
}

Json to_json(const VerificationReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back(Json{{"partition", partition_json(v.partition)}, {"ratio", v.ratio}});
  }
  return Json{{"partitions_checked", r.partitions_checked},
              {"worst_ratio_low", r.worst_ratio_low},
              {"worst_ratio_high", r.worst_ratio_high},
              {"violation_count", r.violation_count},
              {"violations", std::move(violations)},
              {"pass", r.pass()}};
}

Json to_json(const SizeAudit& a) {
  Json layers = Json::array();
  for (const auto& l : a.layers) {
    layers.push_back(Json{{"kappa", l.kappa}, {"weight", l.weight}, {"bound", l.bound}, {"ok", l.ok}});
  }
  return Json{{"kept", a.kept},
              {"total_weight", a.total_weight},
              {"weight_bound", a.weight_bound},
              {"weight_ok", a.weight_ok},
              {"kappa_star", a.kappa_star},
              {"layers", std::move(layers)},
              {"layers_ok", a.layers_ok},
              {"c_size", a.c_size},
              {"size_bound", a.size_bound},
              {"size_ok", a.size_ok},
              {"pass", a.pass()}};
}

Json to_json(const EmbedParams& p) {
  return Json{{"d", p.d},
              {"p", p.p},
              {"epsilon", p.epsilon},
              {"kappa_ol_bound", p.kappa_ol_bound},
              {"k1", p.k1},
              {"entry_bound", p.entry_bound},
              {"n_bound", p.n_bound},
              {"span_test", span_test_name(p.span_test)}};
}

Json to_json(const EmbedTranscript& tr, const WeightedRowSet& kept) {
  Json rows = Json::array();
  for (const auto& k : kept.rows()) {
    rows.push_back(Json{{"row", k.row},
                        {"p", k.prob},
                        {"s_prime", k.s_prime},
                        {"weight", k.weight()},
                        {"index", k.index}});
  }
  double s_sum = 0.0;
  Json steps = Json::array();
  for (const auto& s : tr.steps) {
    s_sum += s.s_prime;
    steps.push_back(Json{{"s_prime", s.s_prime}, {"p", s.p}, {"coin", s.coin}});
  }
  return Json{{"params", to_json(tr.params)},
              {"rho", tr.rho},
              {"lambda", tr.lambda},
              {"n_rows", tr.rows.size()},
              {"sensitivity_sum", s_sum},
              {"kept", std::move(rows)},
              {"steps", std::move(steps)}};
}

EmbeddingDocument embedding_from_json(const Json& doc) {
  try {
    EmbeddingDocument out;
    const auto& p = doc.at("params");
    out.params.d = p.at("d").get<std::size_t>();
    out.params.p = p.at("p").get<double>();
    out.params.epsilon = p.at("epsilon").get<double>();
    out.params.kappa_ol_bound = p.value("kappa_ol_bound", out.params.kappa_ol_bound);
    out.params.k1 = p.value("k1", out.params.k1);
    out.params.entry_bound = p.value("entry_bound", out.params.entry_bound);
    out.params.n_bound = p.value("n_bound", out.params.n_bound);
    out.params.span_test =
        p.value("span_test", std::string("exact")) == "residual" ? SpanTest::residual : SpanTest::exact;
    out.rho = doc.at("rho").get<double>();
    out.lambda = doc.at("lambda").get<double>();
    for (const auto& k : doc.at("kept")) {
      KeptRow kr;
      kr.row = k.at("row").get<IntRow>();
      kr.prob = k.at("p").get<double>();
      kr.s_prime = k.value("s_prime", 1.0);
      kr.index = k.value("index", std::uint64_t{0});
      out.kept.push_back(std::move(kr));
    }
    if (doc.contains("steps")) {
      std::uint64_t i = 0;
      for (const auto& st : doc.at("steps")) {
        EmbedStep es;
        es.index = i++;
        es.s_prime = st.at("s_prime").get<double>();
        es.p = st.at("p").get<double>();
        es.coin = st.at("coin").get<bool>();
        out.steps.push_back(es);
      }
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad embedding document: ") + e.what());
  }
}

WeightedRowSet to_row_set(const EmbeddingDocument& doc) {
  WeightedRowSet set(doc.params.d, doc.params.p, doc.rho, doc.lambda, doc.params.span_test);
  for (const auto& k : doc.kept) set.add(k);
  return set;
}

Json to_json(const EmbeddingReport& r) {
  return Json{{"mode", r.mode},
              {"directions_tested", r.directions_tested},
              {"worst_ratio_low", r.worst_low},
              {"worst_ratio_high", r.worst_high},
              {"eigenvalues", r.eigenvalues},
              {"pass", r.pass}};
}

Json to_json(const SensitivityAudit& a) {
  return Json{{"sensitivity_sum", a.sensitivity_sum},
              {"kept", a.kept},
              {"rho", a.rho},
              {"kept_bound", a.kept_bound},
              {"kept_ok", a.kept_ok},
              {"kappa_ol", a.kappa_ol},
              {"c_audit", a.c_audit},
              {"sum_bound", a.sum_bound},
              {"sum_ok", a.sum_ok},
              {"pass", a.pass()}};
}

}  // namespace robustis
