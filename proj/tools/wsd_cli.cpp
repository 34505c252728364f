#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wsd/disambiguator.hpp"
#include "wsd/ingest.hpp"
#include "wsd/kb_graph.hpp"
#include "wsd/lexicon.hpp"
#include "wsd/pipeline.hpp"
#include "wsd/scorer.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

std::ifstream open_input(const std::string& path, const std::string& hint) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path + (hint.empty() ? "" : " (" + hint + ")"));
  return is;
}

std::ofstream open_output(const std::string& path) {
  if (auto dir = std::filesystem::path(path).parent_path(); !dir.empty()) std::filesystem::create_directories(dir);
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  return os;
}

wsd::Graph load_graph(const std::string& path, wsd::GraphStats* stats = nullptr) {
  auto is = open_input(path, "build it with scripts/reproduce.sh or point --graph at a relation file");
  auto [g, s] = wsd::load_relations(is);
  if (stats) *stats = s;
  return std::move(g);
}

wsd::Dictionary load_dict(const std::string& path) {
  auto is = open_input(path, "build it with the mkdict command or scripts/reproduce.sh");
  return wsd::Dictionary::load(is);
}

std::vector<wsd::Document> load_corpus(const std::string& path) {
  auto is = open_input(path, "build it with the convert command or scripts/reproduce.sh");
  return wsd::parse_corpus(is);
}

struct CommonFlags {
  std::string graph_path, dict_path, corpus_path;
  wsd::WsdConfig cfg;
  int workers = 1;
  std::string algorithm = "ppr_w2w";
  std::string subgraph_rank = "personalized";
  double early_exit = -1.0;
  bool include_target = false;
  bool dangling_uniform = false;
  bool start_uniform = false;
  bool previous_first = false;

  void add_resource_flags(CLI::App* cmd) {
    cmd->add_option("--graph", graph_path, "knowledge-base relation file")->required();
    cmd->add_option("--dict", dict_path, "sense dictionary file")->required();
    cmd->add_option("--corpus", corpus_path, "corpus file")->required();
  }

  void add_config_flags(CLI::App* cmd) {
    cmd->add_option("--algorithm", algorithm, "ppr, ppr_w2w or dfs")->check(CLI::IsMember({"ppr", "ppr_w2w", "dfs"}))
        ->capture_default_str();
    cmd->add_flag("--freq,!--no-freq", cfg.use_frequencies, "use sense frequencies")->capture_default_str();
    cmd->add_option("--lambda", cfg.lambda, "frequency weight in the final combination")->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--min-context", cfg.min_context_words, "context extension threshold, 0 = single sentence")
        ->capture_default_str();
    cmd->add_option("--damping", cfg.power.damping, "random-walk damping factor")->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--iterations", cfg.power.max_iterations, "power-method iterations")->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-path-length", cfg.max_path_length, "dfs subgraph path-length bound")->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--workers", workers, "parallel worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    // Sensitivity switches; defaults are the reference behavior.
    cmd->add_option("--early-exit", early_exit, "stop when the L1 step delta drops below this (default: off)");
    cmd->add_option("--subgraph-rank", subgraph_rank, "dfs ranking mode: personalized or standard")
        ->check(CLI::IsMember({"personalized", "standard"}))->capture_default_str();
    cmd->add_flag("--include-target", include_target, "ppr_w2w: keep the target token in its own teleport vector");
    cmd->add_flag("--no-freq-teleport{false}", cfg.freq_teleport, "do not apply frequencies to the teleport vector");
    cmd->add_flag("--no-freq-combine{false}", cfg.freq_combine, "do not apply frequencies to the final combination");
    cmd->add_flag("--count-all-tokens", cfg.count_all_tokens, "count every token toward --min-context");
    cmd->add_flag("--extend-previous-first", previous_first, "grow context toward earlier sentences first");
    cmd->add_flag("--dangling-uniform", dangling_uniform, "spread dangling mass uniformly instead of via teleport");
    cmd->add_flag("--start-uniform", start_uniform, "start iteration from the uniform vector");
  }

  wsd::WsdConfig resolve() {
    cfg.algorithm = *wsd::algorithm_from_name(algorithm);
    cfg.subgraph_rank = subgraph_rank == "standard" ? wsd::SubgraphRank::standard : wsd::SubgraphRank::personalized;
    if (early_exit >= 0.0) cfg.power.early_exit_l1 = early_exit;
    cfg.exclude_target = !include_target;
    cfg.power.dangling_to_teleport = !dangling_uniform;
    cfg.power.start_from_teleport = !start_uniform;
    return cfg;
  }
};

wsd::ProgressFn stderr_progress(const std::string& label) {
  return [label, last = std::size_t{0}](std::size_t done, std::size_t total) mutable {
    std::size_t step = std::max<std::size_t>(1, total / 20);
    if (done != total && done / step == last) return;
    last = done / step;
    std::cerr << label << ": " << done << '/' << total << " sentences\n";
  };
}

std::string display_subset(const std::string& label) {
  if (label == "senseval2") return "S2";
  if (label == "senseval3") return "S3";
  if (label == "semeval2007") return "S07";
  if (label == "semeval2013") return "S13";
  if (label == "semeval2015") return "S15";
  return label;
}

std::vector<std::string> ordered_subsets(const wsd::GoldKey& gold) {
  static const std::vector<std::string> canonical = {"senseval2", "senseval3", "semeval2007", "semeval2013",
                                                     "semeval2015"};
  auto labels = gold.subsets();
  std::vector<std::string> out;
  for (const std::string& c : canonical)
    if (std::find(labels.begin(), labels.end(), c) != labels.end()) out.push_back(c);
  for (const std::string& l : labels)
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  return out;
}

void print_f1_row(std::ostream& os, const std::string& name, const wsd::ScoreReport& report,
                  const std::vector<std::string>& subsets) {
  os << std::left << std::setw(14) << name << std::right << std::fixed << std::setprecision(1) << std::setw(6)
     << 100.0 * report.overall.f1();
  for (const std::string& s : subsets) {
    auto it = report.by_subset.find(s);
    os << std::setw(6) << (it == report.by_subset.end() ? 0.0 : 100.0 * it->second.f1());
  }
  os << '\n';
}

void print_f1_header(std::ostream& os, const std::vector<std::string>& subsets) {
  os << std::left << std::setw(14) << "" << std::right << std::setw(6) << "All";
  for (const std::string& s : subsets) os << std::setw(6) << display_subset(s);
  os << '\n';
}

std::vector<wsd::KeyLine> predictions_to_key_lines(const std::vector<wsd::Prediction>& preds,
                                                   const std::optional<wsd::SenseIndex>& idx) {
  if (!idx) {
    std::vector<wsd::KeyLine> lines;
    lines.reserve(preds.size());
    for (const wsd::Prediction& p : preds) {
      wsd::KeyLine kl;
      kl.instance_id = p.instance_id;
      for (const wsd::ScoredSense& s : p.ranked) kl.keys.push_back(s.concept);
      lines.push_back(std::move(kl));
    }
    return lines;
  }
  std::size_t dropped = 0;
  auto lines = wsd::predictions_to_sense_keys(preds, *idx, &dropped);
  if (dropped > 0) std::cerr << "[W] " << dropped << " predictions had no sense key for their lemma and were dropped\n";
  return lines;
}

int cmd_run(CommonFlags& flags, const std::string& out_path, const std::string& sense_index_path,
            const std::string& keys_out) {
  wsd::WsdConfig cfg = flags.resolve();
  wsd::Graph graph = load_graph(flags.graph_path);
  wsd::Dictionary dict = load_dict(flags.dict_path);
  auto docs = load_corpus(flags.corpus_path);

  auto predictions = wsd::run_batch(graph, dict, docs, cfg, flags.workers, stderr_progress("run"));
  {
    auto os = open_output(out_path);
    wsd::write_predictions(predictions, os);
  }

  std::vector<wsd::ManifestInput> inputs = {{"graph", flags.graph_path},
                                            {"dict", flags.dict_path},
                                            {"corpus", flags.corpus_path}};
  auto manifest = wsd::manifest_json("run", cfg, flags.workers, inputs, predictions.size());
  auto manifest_os = open_output(out_path + ".manifest.json");
  manifest_os << manifest << '\n';

  if (!sense_index_path.empty()) {
    auto idx_is = open_input(sense_index_path, "WordNet index.sense");
    auto idx = wsd::SenseIndex::load(idx_is);
    std::size_t dropped = 0;
    auto keys = wsd::predictions_to_sense_keys(predictions, idx, &dropped);
    auto os = open_output(keys_out.empty() ? out_path + ".keys" : keys_out);
    wsd::write_key_file(keys, os);
    if (dropped > 0) std::cerr << "[W] " << dropped << " predictions had no sense key for their lemma\n";
  }
  std::cerr << "wrote " << predictions.size() << " predictions to " << out_path << '\n';
  return 0;
}

int cmd_mfs(const std::string& dict_path, const std::string& corpus_path, const std::string& out_path,
            const std::string& gold_path) {
  wsd::Dictionary dict = load_dict(dict_path);
  auto docs = load_corpus(corpus_path);
  auto predictions = wsd::mfs_batch(dict, docs);
  {
    auto os = open_output(out_path);
    wsd::write_predictions(predictions, os);
  }
  std::cerr << "wrote " << predictions.size() << " predictions to " << out_path << '\n';
  if (!gold_path.empty()) {
    auto gold_is = open_input(gold_path, "gold key file");
    auto gold = wsd::GoldKey::from_lines(wsd::load_key_file(gold_is));
    std::vector<wsd::KeyLine> lines;
    for (const wsd::Prediction& p : predictions) {
      wsd::KeyLine kl;
      kl.instance_id = p.instance_id;
      for (const wsd::ScoredSense& s : p.ranked) kl.keys.push_back(s.concept);
      lines.push_back(std::move(kl));
    }
    wsd::print_report(wsd::score(lines, gold), std::cout);
  }
  return 0;
}

int cmd_score(const std::string& gold_path, const std::string& pred_path, const std::string& json_path) {
  auto gold_is = open_input(gold_path, "gold key file");
  auto gold = wsd::GoldKey::from_lines(wsd::load_key_file(gold_is));
  auto pred_is = open_input(pred_path, "prediction key file");
  auto preds = wsd::load_key_file(pred_is);
  auto report = wsd::score(preds, gold);
  wsd::print_report(report, std::cout);
  if (!json_path.empty()) {
    auto os = open_output(json_path);
    os << wsd::report_to_json(report) << '\n';
  }
  return 0;
}

int cmd_convert(const std::string& xml_path, const std::string& out_path, const std::string& gold_path) {
  auto xml_is = open_input(xml_path, "unified dataset *.data.xml");
  auto docs = wsd::parse_unified_xml(xml_is);
  {
    auto os = open_output(out_path);
    wsd::write_corpus(docs, os);
  }
  std::size_t instances = wsd::count_instances(docs);
  std::cout << "documents: " << docs.size() << "\ninstances: " << instances << '\n';

  if (!gold_path.empty()) {
    auto gold_is = open_input(gold_path, "gold key file");
    auto gold_lines = wsd::load_key_file(gold_is);
    std::unordered_set<std::string> corpus_ids;
    for (const auto& doc : docs)
      for (const auto& sent : doc.sentences)
        for (const auto& tok : sent.tokens)
          if (tok.instance_id) corpus_ids.insert(*tok.instance_id);
    std::size_t missing = 0;
    for (const auto& kl : gold_lines)
      if (!corpus_ids.contains(kl.instance_id)) ++missing;
    if (missing > 0) {
      std::cerr << "[E] " << missing << " gold instances missing from the converted corpus\n";
      return 1;
    }
    std::cout << "gold coverage: all " << gold_lines.size() << " gold instances present\n";
  }
  return 0;
}

int cmd_mkdict(const std::string& sense_index_path, const std::string& out_path) {
  auto idx_is = open_input(sense_index_path, "WordNet index.sense");
  auto idx = wsd::SenseIndex::load(idx_is);
  auto os = open_output(out_path);
  idx.write_dictionary(os);
  std::cerr << "wrote dictionary from " << idx.size() << " sense keys to " << out_path << '\n';
  return 0;
}

int cmd_stats(const std::string& graph_path) {
  wsd::GraphStats stats;
  wsd::Graph g = load_graph(graph_path, &stats);
  std::cout << "vertices:          " << stats.vertex_count << '\n'
            << "directed edges:    " << stats.edge_count << '\n'
            << "dangling vertices: " << stats.dangling_count << '\n'
            << "merged duplicates: " << stats.duplicate_merged_count << '\n'
            << "self loops:        " << stats.self_loop_count << '\n'
            << "unknown keys:      " << stats.unknown_key_count << '\n';
  return 0;
}

struct AblationCell {
  wsd::Algorithm algorithm;
  bool use_frequencies;
  int min_context;
};

std::string cell_name(const AblationCell& cell) {
  std::string name{wsd::algorithm_name(cell.algorithm)};
  if (!cell.use_frequencies) name += "_nf";
  name += cell.min_context == 0 ? ".single" : ".extended";
  return name;
}

int cmd_ablate(CommonFlags& flags, const std::string& gold_path, const std::string& out_dir,
               const std::string& sense_index_path, const std::string& json_path) {
  wsd::WsdConfig base = flags.resolve();
  wsd::Graph graph = load_graph(flags.graph_path);
  wsd::Dictionary dict = load_dict(flags.dict_path);
  auto docs = load_corpus(flags.corpus_path);
  auto gold_is = open_input(gold_path, "gold key file");
  auto gold = wsd::GoldKey::from_lines(wsd::load_key_file(gold_is));

  std::optional<wsd::SenseIndex> idx;
  if (!sense_index_path.empty()) {
    auto idx_is = open_input(sense_index_path, "WordNet index.sense");
    idx = wsd::SenseIndex::load(idx_is);
  }

  const int extended = base.min_context_words > 0 ? base.min_context_words : 20;
  std::vector<AblationCell> cells;
  for (int context : {0, extended})
    for (bool freq : {true, false})
      for (wsd::Algorithm algo : {wsd::Algorithm::ppr_w2w, wsd::Algorithm::ppr, wsd::Algorithm::dfs})
        cells.push_back(AblationCell{algo, freq, context});

  auto subsets = ordered_subsets(gold);
  nlohmann::json results;
  std::map<std::string, wsd::ScoreReport> reports;
  for (const AblationCell& cell : cells) {
    wsd::WsdConfig cfg = base;
    cfg.algorithm = cell.algorithm;
    cfg.use_frequencies = cell.use_frequencies;
    cfg.min_context_words = cell.min_context;
    std::string name = cell_name(cell);
    auto predictions = wsd::run_batch(graph, dict, docs, cfg, flags.workers, stderr_progress(name));
    if (!out_dir.empty()) {
      auto os = open_output(out_dir + "/" + name + ".pred");
      wsd::write_predictions(predictions, os);
    }
    auto report = wsd::score(predictions_to_key_lines(predictions, idx), gold);
    results[name] = nlohmann::json::parse(wsd::report_to_json(report));
    reports[name] = report;
  }

  for (int context : {0, extended}) {
    std::cout << (context == 0 ? "\nSingle context sentence\n" : "\nExtended context (>= " + std::to_string(extended) + " words)\n");
    print_f1_header(std::cout, subsets);
    for (bool freq : {true, false})
      for (wsd::Algorithm algo : {wsd::Algorithm::ppr_w2w, wsd::Algorithm::ppr, wsd::Algorithm::dfs}) {
        std::string name = cell_name(AblationCell{algo, freq, context});
        std::string row{wsd::algorithm_name(algo)};
        if (!freq) row += "_nf";
        print_f1_row(std::cout, row, reports.at(name), subsets);
      }
  }

  if (!json_path.empty()) {
    auto os = open_output(json_path);
    os << results.dump(2) << '\n';
  }
  return 0;
}

int cmd_sweep(CommonFlags& flags, const std::string& gold_path, const std::string& sense_index_path,
              std::vector<double> lambdas, const std::string& json_path) {
  wsd::WsdConfig base = flags.resolve();
  wsd::Graph graph = load_graph(flags.graph_path);
  wsd::Dictionary dict = load_dict(flags.dict_path);
  auto docs = load_corpus(flags.corpus_path);
  auto gold_is = open_input(gold_path, "gold key file");
  auto gold = wsd::GoldKey::from_lines(wsd::load_key_file(gold_is));

  std::optional<wsd::SenseIndex> idx;
  if (!sense_index_path.empty()) {
    auto idx_is = open_input(sense_index_path, "WordNet index.sense");
    idx = wsd::SenseIndex::load(idx_is);
  }

  if (lambdas.empty())
    for (int i = 1; i <= 9; ++i) lambdas.push_back(0.1 * i);

  auto subsets = ordered_subsets(gold);
  std::cout << "lambda sweep, algorithm=" << wsd::algorithm_name(base.algorithm) << "\n";
  print_f1_header(std::cout, subsets);
  nlohmann::json results = nlohmann::json::array();
  for (double lambda : lambdas) {
    wsd::WsdConfig cfg = base;
    cfg.lambda = lambda;
    auto predictions = wsd::run_batch(graph, dict, docs, cfg, flags.workers, {});
    auto report = wsd::score(predictions_to_key_lines(predictions, idx), gold);
    std::ostringstream name;
    name << "lambda=" << std::setprecision(3) << lambda;
    print_f1_row(std::cout, name.str(), report, subsets);
    auto entry = nlohmann::json::parse(wsd::report_to_json(report));
    entry["lambda"] = lambda;
    results.push_back(std::move(entry));
  }
  if (!json_path.empty()) {
    auto os = open_output(json_path);
    os << results.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-based word sense disambiguation by personalized PageRank"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "read options from an INI/TOML file (flags win)");
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string run_out, run_sense_index, run_keys_out;
  auto* run = app.add_subcommand("run", "disambiguate a corpus and write predictions");
  run_flags.add_resource_flags(run);
  run_flags.add_config_flags(run);
  run->add_option("--out", run_out, "prediction output file")->required();
  run->add_option("--sense-index", run_sense_index, "WordNet index.sense for key-space output");
  run->add_option("--keys-out", run_keys_out, "sense-key prediction output (default: <out>.keys)");

  CommonFlags ablate_flags;
  std::string ablate_gold, ablate_out_dir, ablate_sense_index, ablate_json;
  auto* ablate = app.add_subcommand("ablate", "run the algorithm x frequency x context matrix and score each cell");
  ablate_flags.add_resource_flags(ablate);
  ablate_flags.add_config_flags(ablate);
  ablate->add_option("--gold", ablate_gold, "gold key file")->required();
  ablate->add_option("--out-dir", ablate_out_dir, "directory for per-cell prediction files");
  ablate->add_option("--sense-index", ablate_sense_index, "map predictions to sense keys before scoring");
  ablate->add_option("--json", ablate_json, "machine-readable report path");

  CommonFlags sweep_flags;
  std::string sweep_gold, sweep_sense_index, sweep_json;
  std::vector<double> sweep_lambdas;
  auto* sweep = app.add_subcommand("sweep", "score a lambda sweep of the final combination");
  sweep_flags.add_resource_flags(sweep);
  sweep_flags.add_config_flags(sweep);
  sweep->add_option("--gold", sweep_gold, "gold key file")->required();
  sweep->add_option("--sense-index", sweep_sense_index, "map predictions to sense keys before scoring");
  sweep->add_option("--lambdas", sweep_lambdas, "lambda values (default 0.1..0.9)");
  sweep->add_option("--json", sweep_json, "machine-readable report path");

  std::string score_gold, score_pred, score_json;
  auto* score = app.add_subcommand("score", "score a prediction key file against gold keys");
  score->add_option("--gold", score_gold, "gold key file")->required();
  score->add_option("--pred", score_pred, "prediction key file")->required();
  score->add_option("--json", score_json, "machine-readable report path");

  std::string mfs_dict, mfs_corpus, mfs_out, mfs_gold;
  auto* mfs = app.add_subcommand("mfs", "most-frequent-sense baseline");
  mfs->add_option("--dict", mfs_dict, "sense dictionary file")->required();
  mfs->add_option("--corpus", mfs_corpus, "corpus file")->required();
  mfs->add_option("--out", mfs_out, "prediction output file")->required();
  mfs->add_option("--gold", mfs_gold, "score against this gold key file (concept space)");

  std::string convert_xml, convert_out, convert_gold;
  auto* convert = app.add_subcommand("convert", "convert unified-framework XML to the corpus format");
  convert->add_option("--xml", convert_xml, "unified *.data.xml")->required();
  convert->add_option("--out", convert_out, "corpus output file")->required();
  convert->add_option("--gold", convert_gold, "validate instance coverage against this gold key file");

  std::string mkdict_index, mkdict_out;
  auto* mkdict = app.add_subcommand("mkdict", "build a dictionary file from WordNet index.sense");
  mkdict->add_option("--sense-index", mkdict_index, "WordNet index.sense")->required();
  mkdict->add_option("--out", mkdict_out, "dictionary output file")->required();

  std::string stats_graph;
  auto* stats = app.add_subcommand("stats", "load a relation file and print graph statistics");
  stats->add_option("--graph", stats_graph, "knowledge-base relation file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_flags, run_out, run_sense_index, run_keys_out);
    if (ablate->parsed()) return cmd_ablate(ablate_flags, ablate_gold, ablate_out_dir, ablate_sense_index, ablate_json);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, sweep_gold, sweep_sense_index, sweep_lambdas, sweep_json);
    if (score->parsed()) return cmd_score(score_gold, score_pred, score_json);
    if (mfs->parsed()) return cmd_mfs(mfs_dict, mfs_corpus, mfs_out, mfs_gold);
    if (convert->parsed()) return cmd_convert(convert_xml, convert_out, convert_gold);
    if (mkdict->parsed()) return cmd_mkdict(mkdict_index, mkdict_out);
    if (stats->parsed()) return cmd_stats(stats_graph);
  } catch (const std::exception& e) {
    std::cerr << "[E] " << e.what() << '\n';
    return 1;
  }
  return 0;
}
