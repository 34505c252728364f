#include "wsd/disambiguator.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace wsd {

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  if (name == "ppr") return Algorithm::ppr;
  if (name == "ppr_w2w") return Algorithm::ppr_w2w;
  if (name == "dfs") return Algorithm::dfs;
  return std::nullopt;
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::ppr: return "ppr";
    case Algorithm::ppr_w2w: return "ppr_w2w";
    case Algorithm::dfs: return "dfs";
  }
  return "?";
}

std::optional<Personalization> build_personalization(const ContextWindow& window, const Dictionary& dict,
                                                     const Graph& g, bool use_frequencies,
                                                     std::optional<std::size_t> exclude_token) {
  struct Contributor {
    std::size_t token;
    const std::vector<SenseEntry>* senses;
  };
  std::vector<Contributor> contributors;
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (exclude_token && *exclude_token == i) continue;
    const auto* senses = dict.find(window.token(i).headword());
    if (senses) contributors.push_back(Contributor{i, senses});
  }
  if (contributors.empty()) return std::nullopt;

  const double word_mass = 1.0 / static_cast<double>(contributors.size());
  std::map<VertexIndex, double> mass;
  for (const Contributor& c : contributors) {
    std::vector<double> split;
    if (use_frequencies) {
      split = *dict.smoothed_distribution(window.token(c.token).headword());
    } else {
      split.assign(c.senses->size(), 1.0 / static_cast<double>(c.senses->size()));
    }
    for (std::size_t s = 0; s < c.senses->size(); ++s) {
      auto v = g.find_vertex((*c.senses)[s].concept);
      if (!v) continue;  // dictionary-only concept: no walk mass
      mass[*v] += word_mass * split[s];
    }
  }

  double total = 0.0;
  for (const auto& [v, m] : mass) total += m;
  if (total == 0.0) return std::nullopt;

  Personalization p;
  p.entries.reserve(mass.size());
  for (const auto& [v, m] : mass) p.entries.emplace_back(v, m / total);
  return p;
}

std::vector<ScoredSense> combine_scores(std::span<const SenseEntry> candidates, std::span<const double> walk,
                                        std::span<const double> freq, bool use_frequencies, double lambda) {
  if (candidates.empty()) throw std::invalid_argument("combine_scores: no candidates");
  const std::size_t k = candidates.size();

  double walk_total = 0.0;
  for (double w : walk) walk_total += w;
  std::vector<double> walk_norm(k);
  for (std::size_t i = 0; i < k; ++i)
    walk_norm[i] = walk_total == 0.0 ? 1.0 / static_cast<double>(k) : walk[i] / walk_total;

  std::vector<ScoredSense> ranked;
  ranked.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    double score = use_frequencies ? lambda * freq[i] + (1.0 - lambda) * walk_norm[i] : walk_norm[i];
    ranked.push_back(ScoredSense{candidates[i].concept, score});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const ScoredSense& a, const ScoredSense& b) { return a.score > b.score; });
  return ranked;
}

namespace {

struct TargetRef {
  std::size_t window_pos;                  // index into window.content
  const std::vector<SenseEntry>* senses;   // dictionary entry (non-null)
};

std::vector<TargetRef> collect_targets(const ContextWindow& window, const Dictionary& dict) {
  std::vector<TargetRef> targets;
  for (std::size_t i = 0; i < window.size(); ++i) {
    const Token& tok = window.token(i);
    if (!tok.instance_id || !window.in_target_sentence(i)) continue;
    const auto* senses = dict.find(tok.headword());
    if (!senses) continue;  // out of vocabulary: no prediction
    targets.push_back(TargetRef{i, senses});
  }
  return targets;
}

Prediction make_prediction(const Token& tok, std::vector<ScoredSense> ranked) {
  Prediction p;
  p.instance_id = *tok.instance_id;
  p.headword = tok.headword();
  p.concept = ranked.front().concept;
  p.score = ranked.front().score;
  p.ranked = std::move(ranked);
  return p;
}

// Scores a target against a rank vector; lookup maps a concept id to its
// walk probability (0 when absent).
template <typename WalkLookup>
Prediction predict_target(const ContextWindow& window, const Dictionary& dict, const TargetRef& target,
                          const WsdConfig& cfg, WalkLookup&& lookup) {
  const Token& tok = window.token(target.window_pos);
  const auto& senses = *target.senses;
  std::vector<double> walk(senses.size());
  for (std::size_t i = 0; i < senses.size(); ++i) walk[i] = lookup(senses[i].concept);
  std::vector<double> freq;
  if (cfg.combine_frequencies()) freq = *dict.smoothed_distribution(tok.headword());
  return make_prediction(tok, combine_scores(senses, walk, freq, cfg.combine_frequencies(), cfg.lambda));
}

// No usable context. With frequencies the sense priors still rank the
// candidates; without them only a monosemous target is decidable.
std::optional<Prediction> predict_without_context(const ContextWindow& window, const Dictionary& dict,
                                                  const TargetRef& target, const WsdConfig& cfg) {
  const Token& tok = window.token(target.window_pos);
  const auto& senses = *target.senses;
  if (cfg.use_frequencies) {
    auto freq = *dict.smoothed_distribution(tok.headword());
    std::vector<ScoredSense> ranked;
    ranked.reserve(senses.size());
    for (std::size_t i = 0; i < senses.size(); ++i) ranked.push_back(ScoredSense{senses[i].concept, freq[i]});
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const ScoredSense& a, const ScoredSense& b) { return a.score > b.score; });
    return make_prediction(tok, std::move(ranked));
  }
  if (senses.size() == 1) return make_prediction(tok, {ScoredSense{senses[0].concept, 1.0}});
  return std::nullopt;
}

std::vector<Prediction> run_ppr(const ContextWindow& window, const Graph& g, const Dictionary& dict,
                                const WsdConfig& cfg, const std::vector<TargetRef>& targets) {
  std::vector<Prediction> out;
  auto pers = build_personalization(window, dict, g, cfg.teleport_frequencies());
  if (!pers) {
    for (const TargetRef& t : targets)
      if (auto p = predict_without_context(window, dict, t, cfg)) out.push_back(std::move(*p));
    return out;
  }
  RankVector ranks = personalized_pagerank(g, *pers, cfg.power);
  for (const TargetRef& t : targets) {
    out.push_back(predict_target(window, dict, t, cfg, [&](const std::string& concept) {
      auto v = g.find_vertex(concept);
      return v ? ranks.probabilities[*v] : 0.0;
    }));
  }
  return out;
}

std::vector<Prediction> run_ppr_w2w(const ContextWindow& window, const Graph& g, const Dictionary& dict,
                                    const WsdConfig& cfg, const std::vector<TargetRef>& targets) {
  std::vector<Prediction> out;
  for (const TargetRef& t : targets) {
    std::optional<std::size_t> exclude;
    if (cfg.exclude_target) exclude = t.window_pos;
    auto pers = build_personalization(window, dict, g, cfg.teleport_frequencies(), exclude);
    if (!pers) {
      if (auto p = predict_without_context(window, dict, t, cfg)) out.push_back(std::move(*p));
      continue;
    }
    RankVector ranks = personalized_pagerank(g, *pers, cfg.power);
    out.push_back(predict_target(window, dict, t, cfg, [&](const std::string& concept) {
      auto v = g.find_vertex(concept);
      return v ? ranks.probabilities[*v] : 0.0;
    }));
  }
  return out;
}

std::vector<Prediction> run_dfs(const ContextWindow& window, const Graph& g, const Dictionary& dict,
                                const WsdConfig& cfg, const std::vector<TargetRef>& targets) {
  SubgraphSpec spec;
  spec.max_path_length = cfg.max_path_length;
  std::unordered_map<std::string, std::size_t> word_of;
  for (std::size_t i = 0; i < window.size(); ++i) {
    std::string headword = window.token(i).headword();
    if (word_of.contains(headword)) continue;
    const auto* senses = dict.find(headword);
    if (!senses) continue;
    word_of.emplace(std::move(headword), spec.seed_groups.size());
    auto& group = spec.seed_groups.emplace_back();
    group.reserve(senses->size());
    for (const SenseEntry& e : *senses) group.push_back(e.concept);
  }
  if (spec.seed_groups.empty()) return {};

  SubgraphResult sub;
  try {
    sub = extract_subgraph(g, spec);
  } catch (const std::runtime_error&) {
    return {};  // no seed present in the graph: nothing to rank
  }

  RankVector ranks;
  if (cfg.subgraph_rank == SubgraphRank::personalized) {
    auto full = build_personalization(window, dict, g, cfg.teleport_frequencies());
    if (!full) return {};
    Personalization restricted;
    double total = 0.0;
    for (const auto& [v, m] : full->entries) {
      auto sv = sub.graph.find_vertex(g.vertex_id(v));
      if (!sv) continue;
      restricted.entries.emplace_back(*sv, m);
      total += m;
    }
    if (restricted.entries.empty()) return {};
    for (auto& [sv, m] : restricted.entries) m /= total;
    ranks = personalized_pagerank(sub.graph, restricted, cfg.power);
  } else {
    ranks = standard_pagerank(sub.graph, cfg.power);
  }

  std::vector<Prediction> out;
  for (const TargetRef& t : targets) {
    out.push_back(predict_target(window, dict, t, cfg, [&](const std::string& concept) {
      auto v = sub.graph.find_vertex(concept);
      return v ? ranks.probabilities[*v] : 0.0;
    }));
  }
  return out;
}

}  // namespace

std::vector<Prediction> disambiguate(const ContextWindow& window, const Graph& g, const Dictionary& dict,
                                     const WsdConfig& cfg) {
  auto targets = collect_targets(window, dict);
  if (targets.empty()) return {};
  switch (cfg.algorithm) {
    case Algorithm::ppr: return run_ppr(window, g, dict, cfg, targets);
    case Algorithm::ppr_w2w: return run_ppr_w2w(window, g, dict, cfg, targets);
    case Algorithm::dfs: return run_dfs(window, g, dict, cfg, targets);
  }
  return {};
}

void write_predictions(std::span<const Prediction> predictions, std::ostream& os) {
  for (const Prediction& p : predictions) {
    os << p.instance_id;
    for (const ScoredSense& s : p.ranked) os << ' ' << s.concept;
    os << '\n';
  }
}

}  // namespace wsd
