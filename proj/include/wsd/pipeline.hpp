#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wsd/corpus.hpp"
#include "wsd/disambiguator.hpp"
#include "wsd/kb_graph.hpp"
#include "wsd/lexicon.hpp"

namespace wsd {

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Disambiguates every target sentence of the corpus with `workers` threads.
/// Sentences are independent work units; the result is sorted by instance id,
/// so output is identical for any worker count.
std::vector<Prediction> run_batch(const Graph& g, const Dictionary& dict, std::span<const Document> docs,
                                  const WsdConfig& cfg, int workers = 1, const ProgressFn& progress = {});

/// Most-frequent-sense baseline over all corpus instances.
std::vector<Prediction> mfs_batch(const Dictionary& dict, std::span<const Document> docs);

/// Hex SHA-256 of a file's contents.
std::string sha256_file(const std::string& path);

struct ManifestInput {
  std::string role;  // graph | dict | corpus | ...
  std::string path;
};

/// Run manifest: effective parameters plus input checksums; the manifest
/// fully determines the prediction file.
std::string manifest_json(const std::string& command, const WsdConfig& cfg, int workers,
                          std::span<const ManifestInput> inputs, std::size_t prediction_count);

}  // namespace wsd
