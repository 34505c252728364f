#include "wsd/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <openssl/evp.h>

#include "json.hpp"

namespace wsd {

namespace {

struct Job {
  std::size_t doc;
  std::size_t sentence;
};

std::vector<Job> collect_jobs(std::span<const Document> docs) {
  std::vector<Job> jobs;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (std::size_t s = 0; s < docs[d].sentences.size(); ++s) {
      const Sentence& sent = docs[d].sentences[s];
      if (std::any_of(sent.tokens.begin(), sent.tokens.end(), [](const Token& t) { return t.instance_id.has_value(); }))
        jobs.push_back(Job{d, s});
    }
  }
  return jobs;
}

}  // namespace

std::vector<Prediction> run_batch(const Graph& g, const Dictionary& dict, std::span<const Document> docs,
                                  const WsdConfig& cfg, int workers, const ProgressFn& progress) {
  if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
  const std::vector<Job> jobs = collect_jobs(docs);
  std::vector<std::vector<Prediction>> per_job(jobs.size());

  WindowOptions window_options;
  window_options.min_words = cfg.min_context_words;
  window_options.count_all_tokens = cfg.count_all_tokens;

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto work = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        ContextWindow window = extend_window(docs[jobs[i].doc], jobs[i].sentence, window_options);
        per_job[i] = disambiguate(window, g, dict, cfg);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
      std::size_t finished = done.fetch_add(1) + 1;
      if (progress) progress(finished, jobs.size());
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Prediction> merged;
  for (auto& chunk : per_job)
    for (Prediction& p : chunk) merged.push_back(std::move(p));
  std::sort(merged.begin(), merged.end(),
            [](const Prediction& a, const Prediction& b) { return a.instance_id < b.instance_id; });
  return merged;
}

std::vector<Prediction> mfs_batch(const Dictionary& dict, std::span<const Document> docs) {
  std::vector<Prediction> out;
  for (const Document& doc : docs) {
    for (const Sentence& sent : doc.sentences) {
      for (const Token& tok : sent.tokens) {
        if (!tok.instance_id) continue;
        std::string headword = tok.headword();
        auto freq = dict.smoothed_distribution(headword);
        if (!freq) continue;  // out of vocabulary
        const auto& senses = *dict.find(headword);
        std::vector<ScoredSense> ranked;
        ranked.reserve(senses.size());
        for (std::size_t i = 0; i < senses.size(); ++i) ranked.push_back(ScoredSense{senses[i].concept, (*freq)[i]});
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const ScoredSense& a, const ScoredSense& b) { return a.score > b.score; });
        Prediction p;
        p.instance_id = *tok.instance_id;
        p.headword = std::move(headword);
        p.concept = ranked.front().concept;
        p.score = ranked.front().score;
        p.ranked = std::move(ranked);
        out.push_back(std::move(p));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Prediction& a, const Prediction& b) { return a.instance_id < b.instance_id; });
  return out;
}

std::string sha256_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "' for checksumming");

  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (is) {
    is.read(buf, sizeof buf);
    if (is.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(is.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);

  static const char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string manifest_json(const std::string& command, const WsdConfig& cfg, int workers,
                          std::span<const ManifestInput> inputs, std::size_t prediction_count) {
  nlohmann::json j;
  j["command"] = command;
  j["parameters"] = {
      {"algorithm", std::string(algorithm_name(cfg.algorithm))},
      {"use_frequencies", cfg.use_frequencies},
      {"freq_teleport", cfg.freq_teleport},
      {"freq_combine", cfg.freq_combine},
      {"lambda", cfg.lambda},
      {"min_context_words", cfg.min_context_words},
      {"count_all_tokens", cfg.count_all_tokens},
      {"exclude_target", cfg.exclude_target},
      {"damping", cfg.power.damping},
      {"iterations", cfg.power.max_iterations},
      {"early_exit_l1", cfg.power.early_exit_l1 ? nlohmann::json(*cfg.power.early_exit_l1) : nlohmann::json()},
      {"dangling_to_teleport", cfg.power.dangling_to_teleport},
      {"start_from_teleport", cfg.power.start_from_teleport},
      {"max_path_length", cfg.max_path_length},
      {"subgraph_rank", cfg.subgraph_rank == SubgraphRank::personalized ? "personalized" : "standard"},
  };
  j["workers"] = workers;
  j["inputs"] = nlohmann::json::array();
  for (const ManifestInput& in : inputs)
    j["inputs"].push_back({{"role", in.role}, {"path", in.path}, {"sha256", sha256_file(in.path)}});
  j["prediction_count"] = prediction_count;
  return j.dump(2);
}

}  // namespace wsd
