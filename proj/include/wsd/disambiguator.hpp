#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsd/corpus.hpp"
#include "wsd/kb_graph.hpp"
#include "wsd/lexicon.hpp"
#include "wsd/pagerank.hpp"
#include "wsd/subgraph.hpp"

namespace wsd {

enum class Algorithm { ppr, ppr_w2w, dfs };
enum class SubgraphRank { personalized, standard };

std::optional<Algorithm> algorithm_from_name(std::string_view name);
std::string_view algorithm_name(Algorithm a);

struct WsdConfig {
  Algorithm algorithm = Algorithm::ppr_w2w;
  bool use_frequencies = true;
  // Frequencies enter twice: into the teleport vector and into the final
  // combination. Each application can be ablated separately.
  bool freq_teleport = true;
  bool freq_combine = true;
  double lambda = 0.5;         // weight of the frequency term in the final combination
  int min_context_words = 20;  // 0 = single-sentence context
  bool count_all_tokens = false;
  bool exclude_target = true;  // ppr_w2w: drop the target token from its own teleport vector
  PowerParams power;
  int max_path_length = 6;
  SubgraphRank subgraph_rank = SubgraphRank::personalized;

  bool teleport_frequencies() const { return use_frequencies && freq_teleport; }
  bool combine_frequencies() const { return use_frequencies && freq_combine; }
};

struct ScoredSense {
  std::string concept;
  double score;
};

struct Prediction {
  std::string instance_id;
  std::string headword;
  std::string concept;  // top-ranked sense
  double score = 0.0;
  std::vector<ScoredSense> ranked;  // all candidates, best first
};

/// Teleport vector for a context window: every in-vocabulary content token
/// (minus the excluded one) receives word mass 1/|W|, split across its
/// senses by the smoothed frequency distribution (uniformly when
/// use_frequencies is off). Senses absent from the graph are dropped and the
/// vector renormalized. nullopt when no mass survives ("no context").
std::optional<Personalization> build_personalization(const ContextWindow& window, const Dictionary& dict,
                                                     const Graph& g, bool use_frequencies,
                                                     std::optional<std::size_t> exclude_token = std::nullopt);

/// Final per-candidate scores: walk mass renormalized over the candidates
/// (uniform when all-zero), then lambda*freq + (1-lambda)*walk when
/// use_frequencies, walk alone otherwise. Ranked best-first, ties keep
/// dictionary order.
std::vector<ScoredSense> combine_scores(std::span<const SenseEntry> candidates, std::span<const double> walk,
                                        std::span<const double> freq, bool use_frequencies, double lambda);

/// Runs the configured algorithm over one context window and returns
/// predictions for the target-sentence instances, in token order.
/// Out-of-vocabulary targets yield no prediction.
std::vector<Prediction> disambiguate(const ContextWindow& window, const Graph& g, const Dictionary& dict,
                                     const WsdConfig& cfg);

/// One line per prediction: `<instance_id> <concept> [...]` best first.
void write_predictions(std::span<const Prediction> predictions, std::ostream& os);

}  // namespace wsd
