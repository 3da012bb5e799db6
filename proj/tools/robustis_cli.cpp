// robustis: command-line front end for the sum game, hypergraph
// sparsification and subspace embedding experiments.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "robustis/errors.hpp"
#include "robustis/experiments.hpp"
#include "robustis/game.hpp"
#include "robustis/io.hpp"

namespace {

using namespace robustis;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

struct Common {
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  unsigned jobs = 1;
  std::string out = "-";
  std::string format = "json";
  std::string config;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app->add_option("--trials", c.trials, "Number of independent trials")->capture_default_str();
  app->add_option("--jobs", c.jobs, "Worker threads")->capture_default_str();
  app->add_option("--out", c.out, "Output path, - for stdout")->capture_default_str();
  app->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app->add_option("--config", c.config, "Flat JSON file of flag values (flags win)");
}

void validate_common(const Common& c) {
  if (c.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  if (c.jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
}

void emit(const std::string& text, const std::string& path) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

template <typename Fn>
auto with_input(const std::string& path, Fn&& fn) {
  if (path == "-") return fn(std::cin);
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  return fn(f);
}

// Picks trial `index` out of a multi-trial CLI report; other documents pass through.
const Json& select_trial(const Json& doc, std::size_t index) {
  if (!doc.contains("trials")) return doc;
  const auto& trials = doc.at("trials");
  if (index >= trials.size()) throw std::invalid_argument("document has no trial " + std::to_string(index));
  return trials.at(index);
}

const Json& field_or_self(const Json& doc, const char* key) {
  return doc.contains(key) ? doc.at(key) : doc;
}

std::optional<CutFamily> parse_cut_family(const std::string& s) {
  if (s == "none") return std::nullopt;
  if (s == "two-cuts") return CutFamily::two_cuts();
  return CutFamily::all();
}

SpanTest parse_span_test(const std::string& s) {
  return s == "residual" ? SpanTest::residual : SpanTest::exact;
}

int fail(const std::string& criterion) {
  std::cerr << "acceptance failed: " << criterion << "\n";
  return kExitFail;
}

// ---------------------------------------------------------------------------

struct SumGameArgs {
  Common common;
  std::string strategy = "ones";
  double eps = 0.2;
  double delta = 0.1;
  double delta_cap = 1e6;
  double const_c = 3.0;
  std::optional<double> amp;
  std::uint64_t horizon = 2000;
  std::optional<double> min_win_rate;
  std::string transcripts;
};

int run_sum_game(const SumGameArgs& a) {
  validate_common(a.common);
  const auto names = strategy_names();
  if (std::find(names.begin(), names.end(), a.strategy) == names.end()) {
    throw std::invalid_argument("unknown strategy '" + a.strategy + "'");
  }
  if (a.horizon < 1) throw std::invalid_argument("--horizon must be >= 1");
  auto config = SamplerConfig::from_params(a.eps, a.delta, a.delta_cap, a.const_c);
  if (a.amp) config = config.with_amp(*a.amp);
  const double threshold = a.min_win_rate.value_or(1.0 - a.delta - 0.025);

  const bool want_transcripts = a.common.format == "csv" || !a.transcripts.empty();
  const auto stats = run_trials(strategy_factory(a.strategy), config, a.horizon, a.common.trials,
                                a.common.jobs, a.common.seed, want_transcripts);
  std::string csv;
  if (want_transcripts) {
    std::ostringstream os;
    os << kTranscriptHeader << "\n";
    for (std::size_t i = 0; i < stats.transcripts.size(); ++i) write_transcript_csv(os, i, stats.transcripts[i]);
    csv = os.str();
  }
  if (!a.transcripts.empty()) emit(csv, a.transcripts);

  Json report = to_json(stats);
  report["acceptance"] = Json{{"min_win_rate", threshold}, {"pass", stats.win_rate >= threshold}};
  emit(a.common.format == "csv" ? csv : dump(report), a.common.out);
  if (stats.win_rate < threshold) {
    return fail("win_rate " + format_double(stats.win_rate) + " < " + format_double(threshold));
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------

struct HypergraphArgs {
  Common common;
  std::size_t n = 8;
  std::string stream;
  std::string adversary = "random";
  std::size_t m = 200;
  std::size_t min_size = 2;
  std::size_t max_size = 4;
  double eps = 0.25;
  double k1 = kDefaultSparsifyK1;
  std::string verify = "none";
  bool audit = false;
  double c_size = 1.0;
  double max_violation_fraction = 0.05;
};

int run_hypergraph(const HypergraphArgs& a) {
  validate_common(a.common);
  HypergraphExperiment exp;
  exp.n = a.n;
  exp.epsilon = a.eps;
  exp.k1 = a.k1;
  exp.adversary = a.adversary;
  exp.m = a.m;
  exp.min_size = a.min_size;
  exp.max_size = a.max_size;
  exp.verify = parse_cut_family(a.verify);
  exp.audit = a.audit;
  exp.c_size = a.c_size;
  if (!a.stream.empty()) {
    exp.stream = with_input(a.stream, [](std::istream& in) { return read_edge_stream(in); });
    if (exp.stream.empty()) throw std::invalid_argument("edge stream is empty");
    for (const auto& e : exp.stream) make_edge(e, exp.n);
  }
  const auto trials = run_hypergraph_trials(exp, a.common.trials, a.common.jobs, a.common.seed);

  std::uint64_t violating = 0;
  bool audits_pass = true;
  for (const auto& t : trials) {
    if (t.verification && !t.verification->pass()) ++violating;
    if (t.audit && !t.audit->pass()) audits_pass = false;
  }
  const double fraction = static_cast<double>(violating) / static_cast<double>(trials.size());
  const bool verify_ok = !exp.verify || fraction <= a.max_violation_fraction;

  if (a.common.format == "csv") {
    std::ostringstream os;
    os << "trial_id,arrival,strength,p,coin\n";
    for (const auto& t : trials) {
      for (const auto& d : t.result.decisions) {
        os << t.trial_id << ',' << d.arrival << ',' << format_double(d.strength) << ','
           << format_double(d.p) << ',' << (d.coin ? 1 : 0) << '\n';
      }
    }
    emit(os.str(), a.common.out);
  } else {
    Json report{{"config", to_json(exp)}, {"master_seed", a.common.seed}};
    Json list = Json::array();
    for (const auto& t : trials) list.push_back(to_json(t, exp.stream.empty()));
    report["trials"] = std::move(list);
    Json summary{{"n_trials", trials.size()}};
    if (exp.verify) {
      summary["violation_fraction"] = fraction;
      summary["max_violation_fraction"] = a.max_violation_fraction;
    }
    if (exp.audit) summary["audits_pass"] = audits_pass;
    summary["pass"] = verify_ok && audits_pass;
    report["summary"] = std::move(summary);
    emit(dump(report), a.common.out);
  }
  if (!verify_ok) {
    return fail("cut violation fraction " + format_double(fraction) + " > " +
                format_double(a.max_violation_fraction));
  }
  if (!audits_pass) return fail("size audit");
  return kExitPass;
}

// ---------------------------------------------------------------------------

struct SubspaceArgs {
  Common common;
  std::size_t d = 0;
  std::string rows;
  std::string adversary = "uniform";
  std::size_t n = 400;
  double p = 2.0;
  double eps = 0.25;
  double kappa = 1e4;
  double k1 = 1.0;
  std::int64_t entry_bound = 100;
  std::size_t n_bound = 0;
  std::string span_test = "exact";
  bool verify = false;
  bool net = false;
  double resolution = 0.0;
  std::uint64_t max_net_points = 2'000'000;
  bool audit = false;
  double c_audit = 4.0;
  double min_pass_rate = 0.9;
};

int run_subspace(const SubspaceArgs& a) {
  validate_common(a.common);
  SubspaceExperiment exp;
  if (!a.rows.empty()) {
    exp.rows = with_input(a.rows, [&](std::istream& in) { return read_row_stream(in, a.d); });
    if (exp.rows.empty()) throw std::invalid_argument("row stream is empty");
  }
  exp.params.d = a.d != 0 ? a.d : (exp.rows.empty() ? 0 : exp.rows.front().size());
  if (exp.params.d == 0) throw std::invalid_argument("--d is required without --rows");
  exp.params.p = a.p;
  exp.params.epsilon = a.eps;
  exp.params.kappa_ol_bound = a.kappa;
  exp.params.k1 = a.k1;
  exp.params.entry_bound = a.entry_bound;
  exp.params.n_bound = a.n_bound != 0 ? a.n_bound : (exp.rows.empty() ? a.n : exp.rows.size());
  exp.params.span_test = parse_span_test(a.span_test);
  exp.adversary = a.adversary;
  exp.n = a.n;
  exp.verify = a.verify;
  exp.verify_options.force_net = a.net;
  exp.verify_options.net_resolution = a.resolution;
  exp.verify_options.max_net_points = a.max_net_points;
  exp.audit = a.audit;
  exp.c_audit = a.c_audit;
  const auto trials = run_subspace_trials(exp, a.common.trials, a.common.jobs, a.common.seed);

  std::uint64_t passing = 0;
  bool audits_pass = true;
  for (const auto& t : trials) {
    if (t.verification && t.verification->pass) ++passing;
    if (t.audit && !t.audit->pass()) audits_pass = false;
  }
  const double rate = static_cast<double>(passing) / static_cast<double>(trials.size());
  const bool verify_ok = !exp.verify || rate >= a.min_pass_rate;

  if (a.common.format == "csv") {
    std::ostringstream os;
    os << "trial_id,index,s_prime,p,coin\n";
    for (const auto& t : trials) {
      for (const auto& s : t.transcript.steps) {
        os << t.trial_id << ',' << s.index << ',' << format_double(s.s_prime) << ','
           << format_double(s.p) << ',' << (s.coin ? 1 : 0) << '\n';
      }
    }
    emit(os.str(), a.common.out);
  } else {
    Json report{{"config", to_json(exp)}, {"master_seed", a.common.seed}};
    Json list = Json::array();
    for (const auto& t : trials) list.push_back(to_json(t, exp.rows.empty()));
    report["trials"] = std::move(list);
    Json summary{{"n_trials", trials.size()}};
    if (exp.verify) {
      summary["pass_rate"] = rate;
      summary["min_pass_rate"] = a.min_pass_rate;
    }
    if (exp.audit) summary["audits_pass"] = audits_pass;
    summary["pass"] = verify_ok && audits_pass;
    report["summary"] = std::move(summary);
    emit(dump(report), a.common.out);
  }
  if (!verify_ok) {
    return fail("embedding pass rate " + format_double(rate) + " < " + format_double(a.min_pass_rate));
  }
  if (!audits_pass) return fail("sensitivity audit");
  return kExitPass;
}

// ---------------------------------------------------------------------------

struct HypergraphDocArgs {
  Common common;
  std::string sparsifier;
  std::string stream;
  std::size_t trial = 0;
  double eps = 0.25;
  std::string cuts = "all-cuts";
  double c_size = 1.0;
};

struct LoadedHypergraph {
  Sparsifier sparsifier;
  Hypergraph input{0};
};

LoadedHypergraph load_hypergraph(const HypergraphDocArgs& a) {
  const Json doc = read_json(a.sparsifier);
  const Json& trial = select_trial(doc, a.trial);
  LoadedHypergraph out;
  out.sparsifier = sparsifier_from_json(field_or_self(trial, "sparsifier"));
  std::vector<std::vector<Vertex>> edges;
  if (!a.stream.empty()) {
    edges = with_input(a.stream, [](std::istream& in) { return read_edge_stream(in); });
  } else if (trial.contains("stream")) {
    edges = trial.at("stream").get<std::vector<std::vector<Vertex>>>();
  } else if (doc.contains("config") && doc.at("config").contains("stream")) {
    edges = doc.at("config").at("stream").get<std::vector<std::vector<Vertex>>>();
  } else {
    throw std::invalid_argument("--stream is required when the document has no stream");
  }
  out.input = Hypergraph(out.sparsifier.n);
  for (auto& e : edges) out.input.add_edge(std::move(e));
  return out;
}

int verify_hypergraph(const HypergraphDocArgs& a) {
  validate_common(a.common);
  const auto h = load_hypergraph(a);
  const auto family = parse_cut_family(a.cuts).value_or(CutFamily::all());
  const auto report = verify_sparsifier(h.input, h.sparsifier.as_hypergraph(), a.eps, family);
  const auto audit = size_audit(h.sparsifier, h.sparsifier.n, h.input.num_edges(), a.eps, a.c_size);
  Json j = to_json(report);
  j["audits"] = to_json(audit);
  emit(dump(j), a.common.out);
  return report.pass() ? kExitPass : fail("cut violations: " + std::to_string(report.violation_count));
}

int audit_hypergraph(const HypergraphDocArgs& a) {
  validate_common(a.common);
  const auto h = load_hypergraph(a);
  const auto audit = size_audit(h.sparsifier, h.sparsifier.n, h.input.num_edges(), a.eps, a.c_size);
  emit(dump(to_json(audit)), a.common.out);
  return audit.pass() ? kExitPass : fail("size audit");
}

struct SubspaceDocArgs {
  Common common;
  std::string embedding;
  std::string rows;
  std::size_t trial = 0;
  std::optional<double> eps;
  bool net = false;
  double resolution = 0.0;
  std::uint64_t max_net_points = 2'000'000;
  double c_audit = 4.0;
};

struct LoadedEmbedding {
  EmbeddingDocument doc;
  std::vector<IntRow> rows;
};

LoadedEmbedding load_embedding(const SubspaceDocArgs& a) {
  const Json doc = read_json(a.embedding);
  const Json& trial = select_trial(doc, a.trial);
  LoadedEmbedding out;
  out.doc = embedding_from_json(field_or_self(trial, "embedding"));
  if (!a.rows.empty()) {
    out.rows = with_input(a.rows, [&](std::istream& in) { return read_row_stream(in, out.doc.params.d); });
  } else if (trial.contains("rows")) {
    out.rows = trial.at("rows").get<std::vector<IntRow>>();
  } else {
    throw std::invalid_argument("--rows is required when the document has no rows");
  }
  return out;
}

int verify_subspace(const SubspaceDocArgs& a) {
  validate_common(a.common);
  const auto e = load_embedding(a);
  VerifyOptions opts;
  opts.force_net = a.net;
  opts.net_resolution = a.resolution;
  opts.max_net_points = a.max_net_points;
  const double eps = a.eps.value_or(e.doc.params.epsilon);
  const auto report = verify_embedding(e.rows, to_row_set(e.doc), e.doc.params.p, eps, opts);
  emit(dump(to_json(report)), a.common.out);
  return report.pass ? kExitPass : fail("embedding ratios outside [1-eps, 1+eps]");
}

int audit_subspace(const SubspaceDocArgs& a) {
  validate_common(a.common);
  const auto e = load_embedding(a);
  if (e.doc.steps.size() != e.rows.size()) {
    throw std::invalid_argument("document steps do not match the row stream");
  }
  EmbedTranscript tr;
  tr.params = e.doc.params;
  tr.rho = e.doc.rho;
  tr.lambda = e.doc.lambda;
  tr.rows = e.rows;
  tr.steps = e.doc.steps;
  const auto audit = sensitivity_sum_audit(tr, a.c_audit);
  emit(dump(to_json(audit)), a.common.out);
  return audit.pass() ? kExitPass : fail("sensitivity audit");
}

// ---------------------------------------------------------------------------

std::string config_value(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

// Appends --key=value for every config-file entry whose flag is absent.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  const Json doc = read_json(path);
  if (!doc.is_object()) throw std::invalid_argument(path + ": config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "config") continue;
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& s) {
      return s == flag || s.rfind(flag + "=", 0) == 0;
    });
    if (given || value.is_null()) continue;
    if (value.is_object()) throw std::invalid_argument(path + ": config must be flat (key '" + key + "')");
    if (value.is_array()) {
      for (const auto& v : value) args.push_back(flag + "=" + config_value(v));
    } else {
      args.push_back(flag + "=" + config_value(value));
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online importance sampling experiments", "robustis"};
  app.require_subcommand(1);

  SumGameArgs sg;
  auto* sum = app.add_subcommand("sum-game", "Adversary vs sampler game for sum estimation");
  add_common(sum, sg.common);
  sum->add_option("--strategy", sg.strategy, "ones, geometric, p-one, max-greedy, ratio-greedy, error-chaser")
      ->capture_default_str();
  sum->add_option("--eps", sg.eps)->capture_default_str();
  sum->add_option("--delta", sg.delta)->capture_default_str();
  sum->add_option("--delta-cap", sg.delta_cap, "Bound on (sum)/x1")->capture_default_str();
  sum->add_option("--const-c", sg.const_c)->capture_default_str();
  sum->add_option("--amp", sg.amp, "Override the amplification parameter");
  sum->add_option("--horizon", sg.horizon, "Rounds per game")->capture_default_str();
  sum->add_option("--min-win-rate", sg.min_win_rate, "Pass threshold (default 1 - delta - 0.025)");
  sum->add_option("--transcripts", sg.transcripts, "Also write CSV transcripts here");

  HypergraphArgs hg;
  auto* hyper = app.add_subcommand("hypergraph", "Streaming hypergraph cut sparsification");
  add_common(hyper, hg.common);
  hyper->add_option("--n", hg.n, "Number of vertices")->capture_default_str();
  hyper->add_option("--stream", hg.stream, "Edge stream file (- for stdin)");
  hyper->add_option("--adversary", hg.adversary)
      ->check(CLI::IsMember({"random", "reinsert"}))
      ->capture_default_str();
  hyper->add_option("--m", hg.m, "Edges per generated stream")->capture_default_str();
  hyper->add_option("--min-size", hg.min_size)->capture_default_str();
  hyper->add_option("--max-size", hg.max_size)->capture_default_str();
  hyper->add_option("--eps", hg.eps)->capture_default_str();
  hyper->add_option("--k1", hg.k1)->capture_default_str();
  hyper->add_option("--verify", hg.verify)
      ->check(CLI::IsMember({"none", "two-cuts", "all-cuts"}))
      ->capture_default_str();
  hyper->add_flag("--audit", hg.audit, "Run the size audits");
  hyper->add_option("--c-size", hg.c_size)->capture_default_str();
  hyper->add_option("--max-violation-fraction", hg.max_violation_fraction)->capture_default_str();

  SubspaceArgs ss;
  auto* sub = app.add_subcommand("subspace", "Online row sampling for subspace embeddings");
  add_common(sub, ss.common);
  sub->add_option("--d", ss.d, "Row dimension");
  sub->add_option("--rows", ss.rows, "Row stream file (- for stdin)");
  sub->add_option("--adversary", ss.adversary)
      ->check(CLI::IsMember({"uniform", "gaussian", "resubmit"}))
      ->capture_default_str();
  sub->add_option("--n", ss.n, "Rows per generated stream")->capture_default_str();
  sub->add_option("--p", ss.p)->capture_default_str();
  sub->add_option("--eps", ss.eps)->capture_default_str();
  sub->add_option("--kappa", ss.kappa, "Online condition number bound")->capture_default_str();
  sub->add_option("--k1", ss.k1)->capture_default_str();
  sub->add_option("--entry-bound", ss.entry_bound)->capture_default_str();
  sub->add_option("--n-bound", ss.n_bound, "Stream length bound (default: stream length)");
  sub->add_option("--span-test", ss.span_test)
      ->check(CLI::IsMember({"exact", "residual"}))
      ->capture_default_str();
  sub->add_flag("--verify", ss.verify, "Verify each embedding");
  sub->add_flag("--net", ss.net, "Verify on a direction net even for p = 2");
  sub->add_option("--resolution", ss.resolution, "Net spacing (default eps / kappa_ol)");
  sub->add_option("--max-net-points", ss.max_net_points)->capture_default_str();
  sub->add_flag("--audit", ss.audit, "Run the sensitivity audit");
  sub->add_option("--c-audit", ss.c_audit)->capture_default_str();
  sub->add_option("--min-pass-rate", ss.min_pass_rate)->capture_default_str();

  HypergraphDocArgs vh, ah;
  SubspaceDocArgs vs, as;
  auto* verify = app.add_subcommand("verify", "Check a stored sparsifier or embedding");
  verify->require_subcommand(1);
  auto* audit = app.add_subcommand("audit", "Size audits of a stored sparsifier or embedding");
  audit->require_subcommand(1);

  auto hyper_doc = [](CLI::App* app, HypergraphDocArgs& a, bool with_cuts) {
    add_common(app, a.common);
    app->add_option("--sparsifier", a.sparsifier, "Sparsifier JSON or hypergraph report")->required();
    app->add_option("--stream", a.stream, "Edge stream (default: the stream stored in the report)");
    app->add_option("--trial", a.trial, "Trial index within a report")->capture_default_str();
    app->add_option("--eps", a.eps)->capture_default_str();
    app->add_option("--c-size", a.c_size)->capture_default_str();
    if (with_cuts) {
      app->add_option("--cuts", a.cuts)->check(CLI::IsMember({"two-cuts", "all-cuts"}))->capture_default_str();
    }
  };
  auto sub_doc = [](CLI::App* app, SubspaceDocArgs& a, bool verify_opts) {
    add_common(app, a.common);
    app->add_option("--embedding", a.embedding, "Embedding JSON or subspace report")->required();
    app->add_option("--rows", a.rows, "Row stream (default: the rows stored in the report)");
    app->add_option("--trial", a.trial, "Trial index within a report")->capture_default_str();
    if (verify_opts) {
      app->add_option("--eps", a.eps, "Default: the document's eps");
      app->add_flag("--net", a.net);
      app->add_option("--resolution", a.resolution);
      app->add_option("--max-net-points", a.max_net_points)->capture_default_str();
    } else {
      app->add_option("--c-audit", a.c_audit)->capture_default_str();
    }
  };
  auto* vhyper = verify->add_subcommand("hypergraph", "All-partition cut check");
  hyper_doc(vhyper, vh, true);
  auto* vsub = verify->add_subcommand("subspace", "Pencil or net check");
  sub_doc(vsub, vs, true);
  auto* ahyper = audit->add_subcommand("hypergraph", "Weight, layer and size audits");
  hyper_doc(ahyper, ah, false);
  auto* asub = audit->add_subcommand("subspace", "Sensitivity-sum audit");
  sub_doc(asub, as, false);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (sum->parsed()) return run_sum_game(sg);
    if (hyper->parsed()) return run_hypergraph(hg);
    if (sub->parsed()) return run_subspace(ss);
    if (vhyper->parsed()) return verify_hypergraph(vh);
    if (vsub->parsed()) return verify_subspace(vs);
    if (ahyper->parsed()) return audit_hypergraph(ah);
    if (asub->parsed()) return audit_subspace(as);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
