#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "mcns/evaluation.hpp"
#include "mcns/theory.hpp"
#include "mcns/training.hpp"
#include "synth.hpp"

namespace mcns::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// Thrown for semantically invalid flag combinations discovered after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainOptions {
  std::string edges;
  std::string partition;
  bool directed = false;
  bool contrast = false;
  std::string encoder = "lookup";
  std::string mode = "dual";
  std::size_t sage_layers = 2;
  std::size_t sage_sample = 10;
  std::string sampler = "mcns";
  std::string loop = "auto";
  std::string loss = "auto";
  std::string positive = "walk";
  std::size_t window = 5;
  std::size_t walk_length = 40;
  SamplerParams sp;
  TrainConfig tc;
  bool early_stop = false;
  std::optional<std::size_t> fold;
  std::size_t parts = 11;
  std::uint64_t split_seed = 7;
  std::optional<double> lp_holdout;
  std::string out;
};

struct EvalOptions {
  std::string emb;
  std::string test;
  std::string split;
  std::string labels;
  std::string edges;
  std::string partition;
  std::string M = "ALL";
  std::vector<std::size_t> ks{10, 30};
  double train_ratio = 0.5;
  std::uint64_t seed = 1;
  std::string out;
};

struct SynthOptions {
  std::size_t n = 10;
  std::size_t m = 2;
  std::size_t left = 10;
  std::size_t right = 10;
  double p = 0.2;
  std::uint64_t seed = 1;
  std::string out;
};

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) return;
  if (!fs::is_regular_file(path)) throw DataError(what + " not found: " + path);
}

std::string context_path_for(const std::string& emb) {
  fs::path p(emb);
  return (p.parent_path() / (p.stem().string() + ".context" + p.extension().string())).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write " + path);
  f << text;
}

void write_partition(const Graph& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write " + path);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) == 0) continue;  // isolated nodes are absent from the edge file
    f << g.name(v) << '\t' << (g.side(v) == Side::U ? "U" : "I") << '\n';
  }
}

void write_pairs(const Graph& g, const std::vector<Edge>& pairs, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write " + path);
  for (const auto& [a, b] : pairs) f << g.name(a) << '\t' << g.name(b) << '\n';
}

json report_json(const MetricsReport& r) {
  json j;
  j["metrics"] = r.metrics;
  j["counts"] = r.counts;
  j["config"] = r.config;
  j["seed"] = r.seed;
  return j;
}

// ---- train -------------------------------------------------------------------

json train_config_json(const TrainOptions& o, const std::string& loop, LossKind loss) {
  json c;
  c["edges"] = o.edges;
  c["partition"] = o.partition;
  c["directed"] = o.directed;
  c["contrast"] = o.contrast;
  c["encoder"] = o.encoder;
  c["mode"] = o.mode;
  c["sage_layers"] = o.sage_layers;
  c["sage_sample"] = o.sage_sample;
  c["sampler"] = o.sampler;
  c["loop"] = loop;
  c["loss"] = to_string(loss);
  c["positive"] = o.positive;
  c["window"] = o.window;
  c["walk_length"] = o.walk_length;
  c["beta"] = o.sp.beta;
  c["alpha"] = o.sp.mcns.alpha;
  c["epsilon"] = o.sp.mcns.epsilon;
  c["k_local"] = o.sp.mcns.k_local;
  c["warmup"] = o.sp.mcns.warmup;
  c["dns_candidates"] = o.sp.dns_candidates;
  c["warp_max_tries"] = o.sp.warp_max_tries;
  c["warp_margin"] = o.sp.warp_margin;
  c["exclude_neighbors"] = o.sp.exclude_neighbors;
  c["lr"] = o.tc.learning_rate;
  c["dim"] = o.tc.dim;
  c["gamma"] = o.tc.margin;
  c["batch_size"] = o.tc.batch_size;
  c["k"] = o.tc.negatives;
  c["epochs"] = o.tc.epochs;
  c["seed"] = o.tc.seed;
  c["workers"] = o.tc.workers;
  c["literal_updates"] = o.tc.literal_updates;
  c["patience"] = o.tc.patience;
  c["early_stop"] = o.early_stop;
  c["fold"] = o.fold ? json(*o.fold) : json(nullptr);
  c["parts"] = o.parts;
  c["split_seed"] = o.split_seed;
  c["lp_holdout"] = o.lp_holdout ? json(*o.lp_holdout) : json(nullptr);
  c["out"] = o.out;
  return c;
}

int cmd_train(const TrainOptions& o, std::ostream& out) {
  require_file(o.edges, "edge file");
  require_file(o.partition, "partition file");

  Graph full = load_edge_list(o.edges, o.directed,
                              o.partition.empty() ? std::nullopt : std::optional<std::string>(o.partition));
  if (o.contrast) full = to_bipartite_contrast(full);
  if (o.fold && o.lp_holdout) throw UsageError("--fold and --lp-holdout are mutually exclusive");

  fs::create_directories(o.out);
  const fs::path dir(o.out);

  Graph train = full;
  std::vector<Edge> validation;
  if (o.fold) {
    EdgeFold f = make_edge_fold(full, *o.fold, o.split_seed, o.parts);
    write_pairs(full, f.test, (dir / "test.tsv").string());
    write_pairs(full, f.validation, (dir / "validation.tsv").string());
    validation = std::move(f.validation);
    train = std::move(f.train);
  } else if (o.lp_holdout) {
    LinkSplit s = split_link_prediction(full, *o.lp_holdout, o.split_seed);
    json j;
    auto names = [&](const std::vector<Edge>& es) {
      json arr = json::array();
      for (const auto& [a, b] : es) arr.push_back({full.name(a), full.name(b)});
      return arr;
    };
    j["test_pos"] = names(s.test_pos);
    j["test_neg"] = names(s.test_neg);
    j["requested_fraction"] = s.requested_fraction;
    j["achieved_fraction"] = s.achieved_fraction;
    write_text((dir / "split.json").string(), j.dump(1) + "\n");
    train = std::move(s.residual);
  }
  write_edge_list(train, (dir / "train.edges").string());
  if (train.is_bipartite()) write_partition(train, (dir / "train.parts").string());

  std::unique_ptr<Encoder> enc;
  if (o.encoder == "lookup") {
    enc = std::make_unique<LookupEncoder>(init_lookup(train.num_nodes(), o.tc.dim,
                                                      o.mode == "dual" ? EmbeddingMode::dual : EmbeddingMode::unique,
                                                      derive_seed(o.tc.seed, 0xe1)));
  } else {
    if (o.sage_layers < 1 || o.sage_layers > 2) throw UsageError("--sage-layers must be 1 or 2");
    std::vector<std::size_t> dims(o.sage_layers, o.tc.dim);
    enc = std::make_unique<SageEncoder>(init_sage(train, o.tc.dim, dims, o.sage_sample, derive_seed(o.tc.seed, 0xe2)));
  }

  const std::string loop = o.loop != "auto" ? o.loop : o.sampler == "mcns" ? "dfs" : "nce";
  const LossKind loss = o.loss != "auto" ? *parse_loss_kind(o.loss) : loop == "dfs" ? LossKind::hinge : LossKind::nce;
  TrainConfig tc = o.tc;
  tc.loss = loss;

  PositiveSampler positives(train, o.positive == "walk" ? PositiveKind::walk_window : PositiveKind::direct_edge,
                            o.window, o.walk_length);
  SamplerParams sp = o.sp;
  sp.kind = *parse_sampler_kind(o.sampler);
  auto negatives = make_negative_sampler(train, sp, derive_seed(tc.seed, 0x3c));

  ValidationFn validate;
  if (o.early_stop) {
    if (validation.empty()) throw UsageError("--early-stop needs --fold (the validation slice)");
    validate = [&](const Encoder& e) {
      RecommendationOptions ro;
      ro.ks = {10};
      return eval_recommendation(e, validation, train, ro).metrics.at("mrr");
    };
  }

  TrainResult result = loop == "dfs" ? train_dfs_order(train, *enc, positives, *negatives, tc, validate)
                                     : train_sampled_nce(train, *enc, positives, *negatives, tc, validate);

  const auto names = train.names();
  write_embeddings((dir / "emb.txt").string(), names, enc->table(Role::central));
  auto* lookup = dynamic_cast<LookupEncoder*>(enc.get());
  if (lookup && lookup->mode() == EmbeddingMode::dual) {
    write_embeddings((dir / "emb.context.txt").string(), names, enc->table(Role::context));
  }
  write_loss_csv((dir / "loss.csv").string(), result.trace);

  json meta;
  meta["config"] = train_config_json(o, loop, loss);
  meta["seed"] = tc.seed;
  meta["epoch"] = result.best_epoch;
  meta["epochs_run"] = result.trace.size();
  meta["stopped_early"] = result.stopped_early;
  meta["nodes"] = train.num_nodes();
  meta["train_edges"] = train.num_edges();
  if (!result.trace.empty()) {
    const auto& last = result.trace.back();
    meta["final_loss"] = last.loss;
    meta["final_accept_rate"] = last.accept_rate ? json(*last.accept_rate) : json(nullptr);
    std::size_t skipped = 0, failed = 0;
    for (const auto& s : result.trace) {
      skipped += s.skipped_pairs;
      failed += s.failed_draws;
    }
    meta["skipped_pairs"] = skipped;
    meta["failed_draws"] = failed;
  }
  write_text((dir / "meta.json").string(), meta.dump(2) + "\n");
  out << "trained " << result.trace.size() << " epochs; outputs in " << o.out << "\n";
  return kExitOk;
}

// ---- eval ----------------------------------------------------------------------

struct LoadedEmbeddings {
  EmbeddingFile central;
  std::optional<EmbeddingFile> context;
  std::unordered_map<std::string, NodeId> index;
};

LoadedEmbeddings load_embeddings(const std::string& path) {
  require_file(path, "embedding file");
  LoadedEmbeddings e{read_embeddings(path), std::nullopt, {}};
  const std::string ctx = context_path_for(path);
  if (fs::is_regular_file(ctx)) {
    e.context = read_embeddings(ctx);
    if (e.context->names != e.central.names || e.context->table.cols() != e.central.table.cols()) {
      throw DataError("context embeddings do not match " + path);
    }
  }
  for (std::size_t i = 0; i < e.central.names.size(); ++i) e.index.emplace(e.central.names[i], static_cast<NodeId>(i));
  return e;
}

NodeId lookup_name(const LoadedEmbeddings& e, const std::string& name) {
  auto it = e.index.find(name);
  if (it == e.index.end()) throw DataError("node '" + name + "' has no embedding");
  return it->second;
}

// Encoder over the embedding file's own row order.
LookupEncoder encoder_in_file_order(const LoadedEmbeddings& e) {
  std::optional<Matrix> ctx;
  if (e.context) ctx = e.context->table;
  return LookupEncoder(e.central.table, std::move(ctx));
}

// Encoder whose row v holds the embedding of g.name(v).
LookupEncoder encoder_in_graph_order(const LoadedEmbeddings& e, const Graph& g) {
  const std::size_t d = e.central.table.cols();
  Matrix c(g.num_nodes(), d);
  std::optional<Matrix> x;
  if (e.context) x = Matrix(g.num_nodes(), d);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const NodeId r = lookup_name(e, g.name(v));
    std::copy_n(e.central.table.row(r).begin(), d, c.row(v).begin());
    if (x) std::copy_n(e.context->table.row(r).begin(), d, x->row(v).begin());
  }
  return LookupEncoder(std::move(c), std::move(x));
}

std::vector<std::pair<std::string, std::string>> read_name_pairs(const std::string& path) {
  require_file(path, "pair file");
  std::ifstream f(path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!(ss >> a >> b)) throw ParseError(path + ":" + std::to_string(lineno) + ": expected 'u<TAB>v'", lineno);
    out.emplace_back(a, b);
  }
  return out;
}

std::string sibling(const std::string& emb, const std::string& name) {
  return (fs::path(emb).parent_path() / name).string();
}

int emit_report(const MetricsReport& rep, const std::string& path, std::ostream& out) {
  const std::string text = report_json(rep).dump(2) + "\n";
  out << text;
  if (!path.empty()) write_text(path, text);
  return kExitOk;
}

int cmd_eval_rec(const EvalOptions& o, std::ostream& out) {
  const auto emb = load_embeddings(o.emb);
  const std::string edges = o.edges.empty() ? sibling(o.emb, "train.edges") : o.edges;
  std::string parts = o.partition;
  if (parts.empty() && fs::is_regular_file(sibling(o.emb, "train.parts"))) parts = sibling(o.emb, "train.parts");
  require_file(edges, "training edge file");
  const Graph train = load_edge_list(edges, false, parts.empty() ? std::nullopt : std::optional<std::string>(parts));
  const LookupEncoder enc = encoder_in_graph_order(emb, train);

  std::unordered_map<std::string, NodeId> by_name;
  for (NodeId v = 0; v < train.num_nodes(); ++v) by_name.emplace(train.name(v), v);
  std::vector<Edge> pairs;
  std::size_t unknown = 0;
  for (const auto& [a, b] : read_name_pairs(o.test)) {
    auto ia = by_name.find(a), ib = by_name.find(b);
    if (ia == by_name.end() || ib == by_name.end()) {
      ++unknown;  // cold node: no training edge, nothing to rank against
      continue;
    }
    pairs.emplace_back(ia->second, ib->second);
  }
  if (pairs.empty()) throw DataError("no usable test pairs in " + o.test);

  RecommendationOptions ro;
  ro.ks = o.ks;
  ro.seed = o.seed;
  if (o.M != "ALL" && o.M != "all") {
    try {
      ro.M = std::stoull(o.M);
    } catch (const std::exception&) {
      throw UsageError("--M must be a count or ALL");
    }
  }
  MetricsReport rep = eval_recommendation(enc, pairs, train, ro);
  rep.counts["skipped_cold_pairs"] = unknown;
  rep.config["emb"] = o.emb;
  rep.config["test"] = o.test;
  return emit_report(rep, o.out.empty() ? sibling(o.emb, "metrics.json") : o.out, out);
}

int cmd_eval_lp(const EvalOptions& o, std::ostream& out) {
  const auto emb = load_embeddings(o.emb);
  require_file(o.split, "split file");
  std::ifstream f(o.split);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw DataError("malformed split file " + o.split + ": " + e.what());
  }
  LinkSplit split;
  auto pairs = [&](const char* key) {
    std::vector<Edge> es;
    if (!j.contains(key)) throw DataError(std::string("split file lacks '") + key + "'");
    for (const auto& p : j.at(key)) {
      es.emplace_back(lookup_name(emb, p.at(0).get<std::string>()), lookup_name(emb, p.at(1).get<std::string>()));
    }
    return es;
  };
  split.test_pos = pairs("test_pos");
  split.test_neg = pairs("test_neg");
  const LookupEncoder enc = encoder_in_file_order(emb);
  MetricsReport rep = eval_link_prediction(enc, split);
  rep.config["emb"] = o.emb;
  rep.config["split"] = o.split;
  return emit_report(rep, o.out.empty() ? sibling(o.emb, "metrics.json") : o.out, out);
}

int cmd_eval_cls(const EvalOptions& o, std::ostream& out) {
  const auto emb = load_embeddings(o.emb);
  require_file(o.labels, "label file");
  Graph holder = Graph::from_edges(emb.central.names.size(), {});
  holder.set_names(emb.central.names);
  const LabelSet labels = load_labels(o.labels, holder);
  MetricsReport rep =
      eval_classification(emb.central.table, labels.node_labels, labels.label_names.size(), o.train_ratio, o.seed);
  rep.config["emb"] = o.emb;
  rep.config["labels"] = o.labels;
  return emit_report(rep, o.out.empty() ? sibling(o.emb, "metrics.json") : o.out, out);
}

// ---- verify-theory ---------------------------------------------------------------

int cmd_verify_theory(const TheoryOptions& opt, const std::string& path, std::ostream& out) {
  if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  const TheoryReport rep = verify_theory(opt);
  json j;
  j["options"] = {{"T", opt.T}, {"trials", opt.trials}, {"seed", opt.seed}, {"alpha", opt.alpha},
                  {"pairs", opt.random_pairs}};
  j["checks"] = json::array();
  for (const auto& c : rep.checks) {
    j["checks"].push_back(
        {{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}, {"tolerance", c.tolerance}, {"detail", c.detail}});
  }
  j["all_pass"] = rep.all_pass();
  const std::string text = j.dump(2) + "\n";
  out << text;
  if (!path.empty()) write_text(path, text);
  return rep.all_pass() ? kExitOk : kExitData;
}

// ---- synth -------------------------------------------------------------------------

int cmd_synth(const std::string& kind, const SynthOptions& o, std::ostream& out) {
  std::ostringstream text;
  std::string parts;
  if (kind == "bipartite") {
    const auto b = synth_bipartite(o.left, o.right, o.p, o.seed);
    for (const auto& [a, c] : b.edges) text << 'u' << a << "\ti" << c << '\n';
    std::ostringstream ps;
    for (std::size_t a = 0; a < b.left; ++a) ps << 'u' << a << "\tU\n";
    for (std::size_t c = 0; c < b.right; ++c) ps << 'i' << c << "\tI\n";
    parts = ps.str();
  } else {
    std::vector<Edge> edges = kind == "ba" ? synth_ba(o.n, o.m, o.seed) : kind == "path" ? synth_path(o.n) : synth_star(o.n);
    for (const auto& [a, b] : edges) text << a << '\t' << b << '\n';
  }
  if (o.out.empty()) {
    out << text.str();
  } else {
    write_text(o.out, text.str());
    if (!parts.empty()) write_text(o.out + ".parts", parts);
  }
  return kExitOk;
}

// ---- option wiring --------------------------------------------------------------

template <typename T>
CLI::Option* positive(CLI::App* app, const std::string& name, T& value, const std::string& help) {
  return app->add_option(name, value, help)->capture_default_str()->check(CLI::PositiveNumber);
}

void add_train_options(CLI::App* t, TrainOptions& o) {
  t->add_option("--edges", o.edges, "Edge list (src dst [weight])")->required();
  t->add_option("--partition", o.partition, "Bipartite partition file (node U|I)");
  t->add_flag("--directed", o.directed, "Treat the edge list as directed");
  t->add_flag("--contrast", o.contrast, "Train on the central/context split graph");
  t->add_option("--encoder", o.encoder, "lookup or sage")->check(CLI::IsMember({"lookup", "sage"}))->capture_default_str();
  t->add_option("--mode", o.mode, "Lookup tables: dual or unique")->check(CLI::IsMember({"dual", "unique"}))->capture_default_str();
  positive(t, "--sage-layers", o.sage_layers, "Mean-aggregator layers (1 or 2)");
  positive(t, "--sage-sample", o.sage_sample, "Neighbors sampled per node and layer");
  t->add_option("--sampler", o.sampler, "Negative sampler")->check(CLI::IsMember(sampler_names()))->capture_default_str();
  t->add_option("--loop", o.loop, "auto, dfs (DFS-order chain reuse) or nce (degree-proportional batches)")
      ->check(CLI::IsMember({"auto", "dfs", "nce"}))
      ->capture_default_str();
  t->add_option("--loss", o.loss, "auto, hinge or nce")->check(CLI::IsMember({"auto", "hinge", "nce"}))->capture_default_str();
  t->add_option("--positive", o.positive, "Positive sampler: walk or edge")->check(CLI::IsMember({"walk", "edge"}))->capture_default_str();
  positive(t, "--window", o.window, "Walk co-occurrence window");
  t->add_option("--walk-length", o.walk_length, "Random walk length")->check(CLI::Range(2, 100000))->capture_default_str();
  t->add_option("--beta", o.sp.beta, "Degree exponent for degree_power")->capture_default_str();
  t->add_option("--alpha", o.sp.mcns.alpha, "MCNS target exponent, in (0, 1)")->capture_default_str();
  positive(t, "--epsilon", o.sp.mcns.epsilon, "MCNS score clamp");
  t->add_option("--k-local", o.sp.mcns.k_local, "Local proposal list size")->capture_default_str();
  t->add_option("--warmup", o.sp.mcns.warmup, "Chain warm-up steps per pass")->capture_default_str();
  positive(t, "--dns-candidates", o.sp.dns_candidates, "Candidates per DNS / inverse DNS draw");
  positive(t, "--warp-max-tries", o.sp.warp_max_tries, "WARP rejection limit");
  t->add_option("--warp-margin", o.sp.warp_margin, "WARP violation margin")->capture_default_str();
  t->add_flag("--exclude-neighbors", o.sp.exclude_neighbors, "Never draw a central's neighbors as negatives");
  t->add_option("--lr", o.tc.learning_rate, "Adam learning rate")->check(CLI::NonNegativeNumber)->capture_default_str();
  positive(t, "--dim", o.tc.dim, "Embedding dimension");
  t->add_option("--gamma", o.tc.margin, "Hinge margin")->check(CLI::NonNegativeNumber)->capture_default_str();
  positive(t, "--batch-size", o.tc.batch_size, "Centrals per optimizer step (nce loop)");
  positive(t, "--k", o.tc.negatives, "Negatives per positive");
  positive(t, "--epochs", o.tc.epochs, "Training epochs");
  t->add_option("--seed", o.tc.seed, "Random seed")->capture_default_str();
  positive(t, "--workers", o.tc.workers, "Producer threads (1 is deterministic)");
  t->add_flag("--literal-updates", o.tc.literal_updates, "Optimizer step after every negative");
  t->add_flag("--early-stop", o.early_stop, "Stop on validation MRR (needs --fold)");
  positive(t, "--patience", o.tc.patience, "Early stopping patience in epochs");
  t->add_option("--fold", o.fold, "Hold out edge slice i for testing (slice parts-1 validates)");
  t->add_option("--parts", o.parts, "Number of edge slices for --fold")->check(CLI::Range(3, 1000))->capture_default_str();
  t->add_option("--split-seed", o.split_seed, "Seed of the fold / link split")->capture_default_str();
  t->add_option("--lp-holdout", o.lp_holdout, "Link prediction: fraction of edges held out")->check(CLI::Range(0.0, 1.0));
  t->add_option("--out", o.out, "Output directory")->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph embedding training with negative sampling"};
  app.name("mcns");
  app.set_config("--config", "", "INI file of key = value defaults (flags override)");
  app.require_subcommand(1);

  TrainOptions train;
  auto* t = app.add_subcommand("train", "Train embeddings");
  add_train_options(t, train);

  EvalOptions ev;
  auto* e = app.add_subcommand("eval", "Evaluate embeddings");
  e->require_subcommand(1);
  auto* rec = e->add_subcommand("rec", "Recommendation: MRR and Hits@k");
  auto* lp = e->add_subcommand("lp", "Link prediction: AUC");
  auto* cls = e->add_subcommand("cls", "Multi-label node classification: Micro/Macro-F1");
  for (auto* sub : {rec, lp, cls}) {
    sub->add_option("--emb", ev.emb, "Embedding file (emb.txt)")->required();
    sub->add_option("--seed", ev.seed, "Random seed")->capture_default_str();
    sub->add_option("--out", ev.out, "Metrics JSON path (default: metrics.json next to --emb)");
  }
  rec->add_option("--test", ev.test, "Test pairs, one 'user<TAB>item' per line")->required();
  rec->add_option("--edges", ev.edges, "Training edges (default: train.edges next to --emb)");
  rec->add_option("--partition", ev.partition, "Training partition (default: train.parts next to --emb)");
  rec->add_option("--M", ev.M, "Sampled candidates per pair, or ALL")->capture_default_str();
  rec->add_option("--k", ev.ks, "Hits@k cutoffs")->delimiter(',')->check(CLI::PositiveNumber);
  lp->add_option("--split", ev.split, "split.json written by train --lp-holdout")->required();
  cls->add_option("--labels", ev.labels, "node<TAB>label1,label2 lines")->required();
  cls->add_option("--train-ratio", ev.train_ratio, "Fraction of labeled nodes used for training")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  TheoryOptions th;
  std::string theory_out;
  auto* v = app.add_subcommand("verify-theory", "Numerical checks of optimal logits, risk and the sub-linear rule");
  positive(v, "--T", th.T, "Positive samples per fit");
  positive(v, "--trials", th.trials, "Refits per risk estimate");
  v->add_option("--seed", th.seed, "Random seed")->capture_default_str();
  v->add_option("--alpha", th.alpha, "Sub-linear exponent, in (0, 1)")->capture_default_str();
  positive(v, "--pairs", th.random_pairs, "Random categorical pairs for the minimizer check");
  v->add_option("--out", theory_out, "Also write the JSON report here");

  SynthOptions sy;
  std::string synth_kind;
  auto* s = app.add_subcommand("synth", "Write a synthetic edge list");
  s->add_option("kind", synth_kind, "ba, path, star or bipartite")
      ->required()
      ->check(CLI::IsMember({"ba", "path", "star", "bipartite"}));
  s->add_option("--n", sy.n, "Node count (ba, path, star)")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 31))->capture_default_str();
  positive(s, "--m", sy.m, "Edges per new node (ba)");
  positive(s, "--left", sy.left, "U-side nodes (bipartite)");
  positive(s, "--right", sy.right, "I-side nodes (bipartite)");
  s->add_option("--p", sy.p, "Edge probability (bipartite)")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  s->add_option("--seed", sy.seed, "Random seed")->capture_default_str();
  s->add_option("--out", sy.out, "Output file (default stdout); bipartite also writes <out>.parts");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex, out, err);
    return kExitUsage;
  }

  try {
    if (t->parsed()) return cmd_train(train, out);
    if (rec->parsed()) return cmd_eval_rec(ev, out);
    if (lp->parsed()) return cmd_eval_lp(ev, out);
    if (cls->parsed()) return cmd_eval_cls(ev, out);
    if (v->parsed()) return cmd_verify_theory(th, theory_out, out);
    if (s->parsed()) return cmd_synth(synth_kind, sy, out);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const ArgumentError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace mcns::cli
