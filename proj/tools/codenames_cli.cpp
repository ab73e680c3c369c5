// Copyright 2026 The bayescodenames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line entry point: simulate, precompute, replay, serve and
// generate-synthetic.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "codenames/harness.hpp"
#include "codenames/service.hpp"
#include "codenames/synthetic.hpp"

namespace cn = codenames;

namespace {

int simulate(const std::string& config_path, int workers, int games, long long seed,
             const std::string& output) {
  auto config = cn::load_config(config_path);
  if (workers > 0) config.workers = workers;
  if (games > 0) config.games = games;
  if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
  if (!output.empty()) config.output = output;
  auto library = cn::build_library(config);
  auto result = cn::run_matrix(config, *library);
  auto csv = cn::to_csv(result.rows, config.timing);
  auto table = cn::render_table(result.rows, config.in_distribution);
  if (config.output.empty()) {
    std::cout << csv;
  } else {
    std::ofstream(config.output) << csv;
  }
  if (!config.table.empty()) std::ofstream(config.table) << table;
  std::cerr << table;
  return 0;
}

std::vector<std::string> read_words(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cn::Error("cannot open " + path);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) {
    for (char& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(w);
  }
  return out;
}

int precompute(const std::string& embedding_path, std::string name, std::string cache_dir,
               const std::string& words_path, int neighbors, int samples,
               const std::vector<double>& sigmas, std::uint64_t voronoi_seed, int pool,
               bool normalize) {
  if (cache_dir.empty()) {
    const char* env = std::getenv(cn::kCacheDirEnv);
    if (!env) throw cn::Error(std::string("no --cache-dir and ") + cn::kCacheDirEnv + " is unset");
    cache_dir = env;
  }
  std::filesystem::create_directories(cache_dir);
  if (name.empty()) name = std::filesystem::path(embedding_path).stem().string();
  auto table = std::make_shared<const cn::EmbeddingTable>(
      cn::load_embeddings(embedding_path, normalize, name));
  std::vector<cn::WordId> queries;
  if (!words_path.empty()) {
    for (const auto& w : read_words(words_path)) {
      if (auto id = table->find(w)) queries.push_back(*id);
    }
  }
  auto index = std::make_shared<const cn::NeighborIndex>(
      cn::NeighborIndex::build(*table, neighbors, queries));
  auto index_path = std::filesystem::path(cache_dir) /
                    ("neighbors_" + name + "_k" + std::to_string(neighbors) + ".txt");
  index->save(*table, index_path);
  std::cerr << "wrote " << index_path.string() << " (" << index->size() << " lists)\n";

  // Voronoi rows are needed for every word a level-0 spymaster could say:
  // the neighbours of the board words.
  std::set<cn::WordId> intended;
  for (cn::WordId q : queries.empty() ? std::vector<cn::WordId>{} : queries) {
    for (const auto& n : *index->find(q)) intended.insert(n.word);
  }
  if (queries.empty()) {
    for (std::size_t i = 0; i < table->size(); ++i) intended.insert(static_cast<cn::WordId>(i));
  }
  std::vector<cn::WordId> rows(intended.begin(), intended.end());
  for (double sigma : sigmas) {
    cn::VoronoiEstimator est(table, index, {name, sigma, samples, voronoi_seed, pool});
    est.precompute(rows);
    auto cache = est.export_cache();
    auto path = std::filesystem::path(cache_dir) / cache.file_name();
    cache.save(path);
    std::cerr << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
  }
  return 0;
}

int replay(const std::string& transcript_path, const std::string& config_path) {
  auto config = cn::load_config(config_path);
  auto library = cn::build_library(config);
  auto pool = cn::config_word_pool(config, *library);
  auto report = cn::replay(cn::Transcript::load(transcript_path), *library, pool);
  if (report.ok) {
    std::cout << "replay ok\n";
    return 0;
  }
  std::cout << "divergence at event " << report.first_difference << "\n  recorded: "
            << report.expected << "\n  replayed: " << report.actual << '\n';
  return 1;
}

int serve(const std::string& config_path, const std::string& host, int port, int idle) {
  auto config = cn::load_config(config_path);
  std::shared_ptr<const cn::ModelLibrary> library = cn::build_library(config);
  auto pool = cn::config_word_pool(config, *library);
  cn::ServiceOptions options;
  options.rules = config.rules;
  options.idle_timeout = std::chrono::seconds(idle);
  cn::PlayService service(library, pool, options);
  std::cerr << "listening on " << host << ':' << port << '\n';
  cn::serve(service, host, port);
  return 0;
}

int generate(cn::SyntheticOptions options, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const auto& table : cn::synthetic_family(options)) {
    auto path = std::filesystem::path(out_dir) / (table.name() + ".txt");
    cn::write_embeddings(table, path);
    std::cerr << "wrote " << path.string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian Codenames agents: experiments, caches, replay and play service"};
  app.require_subcommand(1);

  std::string config_path, output;
  int workers = 0, games = 0;
  long long seed = -1;
  auto* sim = app.add_subcommand("simulate", "run every pairing of a config");
  sim->add_option("--config", config_path, "experiment config")->required()->check(CLI::ExistingFile);
  sim->add_option("--workers", workers, "override worker count");
  sim->add_option("--games", games, "override games per pairing");
  sim->add_option("--seed", seed, "override master seed");
  sim->add_option("--output", output, "override CSV path");

  std::string embedding_path, name, cache_dir, words_path;
  int neighbors = 300, samples = 1000, pool = 500;
  std::vector<double> sigmas{1.0};
  std::uint64_t voronoi_seed = 0;
  bool raw = false;
  auto* pre = app.add_subcommand("precompute", "write neighbour and Voronoi caches");
  pre->add_option("embedding", embedding_path, "embedding text file")->required()->check(CLI::ExistingFile);
  pre->add_option("--name", name, "embedding name (default: file stem)");
  pre->add_option("--cache-dir", cache_dir, std::string("output directory (default: $") + cn::kCacheDirEnv + ")");
  pre->add_option("--words", words_path, "board word list");
  pre->add_option("--neighbors", neighbors, "neighbours per word")->capture_default_str();
  pre->add_option("--samples", samples, "Monte-Carlo samples per Voronoi row")->capture_default_str();
  pre->add_option("--sigma", sigmas, "noise levels")->capture_default_str();
  pre->add_option("--voronoi-seed", voronoi_seed, "Voronoi seed")->capture_default_str();
  pre->add_option("--pool", pool, "Voronoi neighbour pool size")->capture_default_str();
  pre->add_flag("--raw", raw, "do not unit-normalize vectors");

  std::string transcript_path;
  auto* rep = app.add_subcommand("replay", "re-run a transcript and check it event by event");
  rep->add_option("transcript", transcript_path, "transcript file")->required()->check(CLI::ExistingFile);
  rep->add_option("--config", config_path, "config the game was played under")->required();

  std::string host = "127.0.0.1";
  int port = 8080, idle = 3600;
  auto* srv = app.add_subcommand("serve", "serve the HTTP/JSON play API");
  srv->add_option("--config", config_path, "config naming embeddings and board")->required();
  srv->add_option("--host", host)->capture_default_str();
  srv->add_option("--port", port)->capture_default_str();
  srv->add_option("--idle-timeout", idle, "seconds before an idle session expires")->capture_default_str();

  cn::SyntheticOptions syn;
  std::string out_dir = ".";
  auto* gen = app.add_subcommand("generate-synthetic", "write a planted-cluster embedding family");
  gen->add_option("--out-dir", out_dir)->capture_default_str();
  gen->add_option("--prefix", syn.prefix)->capture_default_str();
  gen->add_option("--count", syn.count)->capture_default_str();
  gen->add_option("--vocab", syn.vocab)->capture_default_str();
  gen->add_option("--dim", syn.dim)->capture_default_str();
  gen->add_option("--topics", syn.topics)->capture_default_str();
  gen->add_option("--center-scale", syn.center_scale)->capture_default_str();
  gen->add_option("--word-spread", syn.word_spread)->capture_default_str();
  gen->add_option("--distortion", syn.distortion)->capture_default_str();
  gen->add_flag("--disjoint", syn.disjoint);
  gen->add_option("--seed", syn.seed)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*sim) return simulate(config_path, workers, games, seed, output);
    if (*pre) {
      return precompute(embedding_path, name, cache_dir, words_path, neighbors, samples, sigmas,
                        voronoi_seed, pool, !raw);
    }
    if (*rep) return replay(transcript_path, config_path);
    if (*srv) return serve(config_path, host, port, idle);
    if (*gen) {
      // Written vectors are raw; the loader normalizes.
      syn.normalize = false;
      return generate(syn, out_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
