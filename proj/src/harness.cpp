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

#include "codenames/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace codenames {

namespace {

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::string format_number(double x) {
  std::ostringstream out;
  out << std::setprecision(12) << x;
  return out.str();
}

std::string fixed(double x, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << x;
  return out.str();
}

}  // namespace

std::string Environment::label() const {
  if (!stochastic) return "deterministic";
  return "stochastic:" + format_number(sigma) + ":" +
         (channel == Channel::SnapNoise ? "snap_noise" : "clue_vector_noise");
}

Environment parse_environment(std::string_view text) {
  if (text == "deterministic") return {};
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(':', start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() < 2 || parts.size() > 3 || parts[0] != "stochastic") {
    throw Error("bad environment '" + std::string(text) +
                "': expected deterministic or stochastic:<sigma>[:channel]");
  }
  Environment env;
  env.stochastic = true;
  auto& s = parts[1];
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), env.sigma);
  if (ec != std::errc() || ptr != s.data() + s.size() || env.sigma < 0.0) {
    throw Error("bad environment noise '" + s + "'");
  }
  if (parts.size() == 3) {
    if (parts[2] == "snap_noise") {
      env.channel = Channel::SnapNoise;
    } else if (parts[2] != "clue_vector_noise") {
      throw Error("unknown channel '" + parts[2] + "'");
    }
  }
  return env;
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(std::string("config: ") + e.what());
  }
  auto resolve = [&](const std::string& p) -> std::filesystem::path {
    if (p.empty()) return {};
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };

  ExperimentConfig c;
  try {
    if (auto e = tree.get_child_optional("experiment")) {
      c.seed = e->get<std::uint64_t>("seed", c.seed);
      c.games = e->get<int>("games", c.games);
      c.workers = e->get<int>("workers", c.workers);
      c.shared_boards = e->get<bool>("shared_boards", c.shared_boards);
      c.timing = e->get<bool>("timing", c.timing);
      c.output = resolve(e->get<std::string>("output", ""));
      c.table = resolve(e->get<std::string>("table", ""));
      c.transcripts = resolve(e->get<std::string>("transcripts", ""));
      c.in_distribution = tokens(e->get<std::string>("in_distribution", ""));
    }
    if (auto b = tree.get_child_optional("board")) {
      auto& comp = c.rules.composition;
      comp.red = b->get<int>("red", comp.red);
      comp.blue = b->get<int>("blue", comp.blue);
      comp.bystander = b->get<int>("bystander", comp.bystander);
      comp.assassin = b->get<int>("assassin", comp.assassin);
      c.rules.board_size = b->get<int>("size", comp.total());
      c.rules.turn_limit = b->get<int>("turn_limit", c.rules.turn_limit);
      c.board_words = resolve(b->get<std::string>("words", ""));
    }
    if (auto e = tree.get_child_optional("embeddings")) {
      for (const auto& [name, value] : *e) c.embeddings[name] = resolve(value.data());
    }
    if (auto s = tree.get_child_optional("synthetic")) {
      SyntheticOptions o;
      o.prefix = s->get<std::string>("prefix", o.prefix);
      o.count = s->get<int>("count", o.count);
      o.vocab = s->get<int>("vocab", o.vocab);
      o.dim = s->get<int>("dim", o.dim);
      o.topics = s->get<int>("topics", o.topics);
      o.center_scale = s->get<double>("center_scale", o.center_scale);
      o.word_spread = s->get<double>("word_spread", o.word_spread);
      o.distortion = s->get<double>("distortion", o.distortion);
      o.disjoint = s->get<bool>("disjoint", o.disjoint);
      o.normalize = s->get<bool>("normalize", o.normalize);
      o.seed = s->get<std::uint64_t>("seed", o.seed);
      c.synthetic = o;
    }
    if (auto a = tree.get_child_optional("agents")) {
      c.spymasters = tokens(a->get<std::string>("spymasters", ""));
      c.guessers = tokens(a->get<std::string>("guessers", ""));
    }
    if (auto e = tree.get_child_optional("environment")) {
      c.environments.clear();
      for (const auto& t : tokens(e->get<std::string>("environments", "deterministic"))) {
        c.environments.push_back(parse_environment(t));
      }
    }
    if (const char* dir = std::getenv(kCacheDirEnv)) c.library.cache_dir = dir;
    if (auto l = tree.get_child_optional("library")) {
      c.library.neighbors = l->get<int>("neighbors", c.library.neighbors);
      c.library.voronoi_pool = l->get<int>("voronoi_pool", c.library.voronoi_pool);
      c.library.voronoi_seed = l->get<std::uint64_t>("voronoi_seed", c.library.voronoi_seed);
      c.library.normalize = l->get<bool>("normalize", c.library.normalize);
      if (auto dir = l->get_optional<std::string>("cache_dir")) c.library.cache_dir = resolve(*dir);
    }
  } catch (const pt::ptree_error& e) {
    throw Error(std::string("config: ") + e.what());
  }

  if (c.games < 1) throw Error("config: games must be >= 1");
  if (c.workers < 1) throw Error("config: workers must be >= 1");
  if (c.spymasters.empty() || c.guessers.empty()) {
    throw Error("config: [agents] needs at least one spymaster and one guesser");
  }
  if (c.environments.empty()) throw Error("config: no environments");
  for (const auto& s : c.spymasters) parse_agent_spec(s);
  for (const auto& s : c.guessers) parse_agent_spec(s);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  return parse_config(in, path.parent_path());
}

namespace {

std::vector<std::string> read_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open word list " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = tokens(line);
    if (t.empty()) continue;
    std::string w = line.substr(line.find_first_not_of(" \t"));
    while (!w.empty() && std::isspace(static_cast<unsigned char>(w.back()))) w.pop_back();
    std::transform(w.begin(), w.end(), w.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    out.push_back(w);
  }
  return out;
}

std::set<std::string> referenced_embeddings(const ExperimentConfig& config) {
  std::set<std::string> names;
  for (const auto& list : {config.spymasters, config.guessers}) {
    for (const auto& s : list) {
      for (const auto& m : parse_agent_spec(s).models) names.insert(m);
    }
  }
  return names;
}

}  // namespace

std::shared_ptr<ModelLibrary> build_library(const ExperimentConfig& config) {
  LibraryOptions options = config.library;
  if (!config.board_words.empty()) options.board_words = read_word_list(config.board_words);
  auto library = std::make_shared<ModelLibrary>(options);
  const auto wanted = referenced_embeddings(config);
  if (config.synthetic) {
    for (auto& table : synthetic_family(*config.synthetic)) {
      if (wanted.contains(table.name())) {
        library->add(std::make_shared<const EmbeddingTable>(std::move(table)));
      }
    }
  }
  for (const auto& [name, path] : config.embeddings) {
    if (!wanted.contains(name)) continue;
    if (library->has(name)) throw Error("embedding '" + name + "' defined twice");
    library->add(std::make_shared<const EmbeddingTable>(
        load_embeddings(path, options.normalize, name)));
  }
  for (const auto& name : wanted) {
    if (!library->has(name)) throw Error("config: embedding '" + name + "' is not defined");
  }
  return library;
}

std::vector<std::string> config_word_pool(const ExperimentConfig& config,
                                          const ModelLibrary& library) {
  auto names = referenced_embeddings(config);
  std::vector<std::string> list(names.begin(), names.end());
  auto pool = library.word_pool(list);
  if (static_cast<int>(pool.size()) < config.rules.board_size) {
    throw Error("vocabulary too small for a board: " + std::to_string(pool.size()) +
                " usable words, need " + std::to_string(config.rules.board_size));
  }
  return pool;
}

GameSeeds game_seeds(std::uint64_t master, const std::string& spymaster,
                     const std::string& guesser, const Environment& env, int index,
                     bool shared_boards) {
  const auto i = static_cast<std::uint64_t>(index);
  const std::string pairing = spymaster + "|" + guesser + "|" + env.label();
  GameSeeds s;
  s.board = shared_boards ? derive_seed(master, "board", i) : derive_seed(master, "board", pairing, i);
  s.spymaster = derive_seed(master, pairing, "spymaster", i);
  s.guesser = derive_seed(master, pairing, "guesser", i);
  s.channel = derive_seed(master, pairing, "channel", i);
  return s;
}

namespace {

// Perturb-then-snap: the spymaster's clue vector plus noise, read back as the
// nearest non-board word of the spymaster's vocabulary.
Clue snap_channel(const PartnerModel& speaker, const BoardView& view, const Clue& clue,
                  double sigma, Rng& rng) {
  const auto& table = *speaker.embedding;
  auto id = table.find(clue.word);
  if (!id || sigma == 0.0) return clue;
  Vector noisy = table.project(perturb(table.raw_vector(*id), sigma, rng));
  std::unordered_set<WordId> board;
  for (const auto& w : view.words) {
    if (auto b = table.find(w)) board.insert(*b);
  }
  auto best = speaker.index ? nearest_words(table, *speaker.index, *id, noisy, 1, board)
                            : nearest_words(table, noisy, 1, board);
  if (best.empty()) return clue;
  return {table.word(best.front().word), clue.number};
}

void write_meta(Transcript& t, const AgentSpec& sm, const AgentSpec& g, const Environment& env,
                const GameRules& rules, const GameSeeds& seeds) {
  t.meta["spymaster"] = sm.text;
  t.meta["guesser"] = g.text;
  t.meta["environment"] = env.label();
  t.meta["seed_board"] = std::to_string(seeds.board);
  t.meta["seed_spymaster"] = std::to_string(seeds.spymaster);
  t.meta["seed_guesser"] = std::to_string(seeds.guesser);
  t.meta["seed_channel"] = std::to_string(seeds.channel);
  const auto& c = rules.composition;
  t.meta["composition"] = std::to_string(c.red) + "," + std::to_string(c.blue) + "," +
                          std::to_string(c.bystander) + "," + std::to_string(c.assassin);
  t.meta["board_size"] = std::to_string(rules.board_size);
  t.meta["turn_limit"] = std::to_string(rules.turn_limit);
}

}  // namespace

GameRecord play_game(const ModelLibrary& library, const AgentSpec& sm_spec,
                     const AgentSpec& g_spec, const Environment& env, const GameRules& rules,
                     std::span<const std::string> pool, const GameSeeds& seeds) {
  auto start = std::chrono::steady_clock::now();
  GameRecord record;
  write_meta(record.transcript, sm_spec, g_spec, env, rules, seeds);

  Rng board_rng(seeds.board);
  auto [world, view] = new_game(pool, rules, board_rng);
  record.transcript.board(view, world);
  auto spymaster = library.make_spymaster(sm_spec, seeds.spymaster);
  auto guesser = library.make_guesser(g_spec, seeds.guesser);
  Rng channel_rng(seeds.channel);

  try {
    while (!is_terminal(view)) {
      Clue clue = spymaster->give_clue(world, view);
      record.transcript.clue(clue);
      validate_clue(view, clue);

      ReceivedClue received{clue, 0.0, &channel_rng};
      if (env.stochastic && env.channel == Channel::SnapNoise) {
        received.clue = snap_channel(spymaster->semantics(), view, clue, env.sigma, channel_rng);
        if (received.clue.word != clue.word) record.transcript.channel(received.clue.word);
      } else if (env.stochastic) {
        received.vector_noise = env.sigma;
      }

      GuessSequence guess = guesser->guess(view, received);
      validate_guess(view, received.clue, guess);
      auto result = resolve_turn(world, view, received.clue, guess);
      for (std::size_t i = 0; i < result.observed.size(); ++i) {
        record.transcript.reveal(view, result.observed[i]);
        guesser->observe_reveal(static_cast<int>(i), result.observed[i]);
      }
      spymaster->observe_turn(clue, result.observed);
      record.spymaster_beliefs.push_back(spymaster->beliefs());
    }
    record.outcome = game_outcome(view);
    record.transcript.end(record.outcome);
  } catch (const IllegalAction& e) {
    record.invalid = true;
    record.diagnostic = e.rule() + ": " + e.what();
    record.transcript.invalid(record.diagnostic);
  }
  record.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

ResultRow summarize(const std::string& spymaster, const std::string& guesser,
                    const std::string& environment, std::span<const GameRecord> games) {
  ResultRow row{spymaster, guesser, environment};
  double score = 0.0, turns = 0.0;
  for (const auto& g : games) {
    row.seconds += g.seconds;
    if (g.invalid) {
      ++row.invalid;
      continue;
    }
    ++row.games;
    row.wins += g.outcome.win ? 1 : 0;
    score += g.outcome.score;
    turns += g.outcome.turns;
  }
  if (row.games > 0) {
    row.win_rate = static_cast<double>(row.wins) / row.games;
    row.mean_score = score / row.games;
    row.mean_turns = turns / row.games;
  }
  return row;
}

namespace {

struct Pairing {
  AgentSpec spymaster;
  AgentSpec guesser;
  Environment env;
};

// Plays every (pairing, game) task on a shared pool; slot order is fixed, so
// the output does not depend on scheduling.
std::vector<std::vector<GameRecord>> play_all(const ExperimentConfig& config,
                                              const ModelLibrary& library,
                                              const std::vector<Pairing>& pairings) {
  const auto pool = config_word_pool(config, library);
  const std::size_t games = static_cast<std::size_t>(config.games);
  std::vector<std::vector<GameRecord>> out(pairings.size(), std::vector<GameRecord>(games));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  const std::size_t total = pairings.size() * games;

  auto work = [&] {
    while (true) {
      std::size_t task = next.fetch_add(1);
      if (task >= total) return;
      const auto& p = pairings[task / games];
      const int index = static_cast<int>(task % games);
      try {
        auto seeds = game_seeds(config.seed, p.spymaster.text, p.guesser.text, p.env, index,
                                config.shared_boards);
        auto record =
            play_game(library, p.spymaster, p.guesser, p.env, config.rules, pool, seeds);
        record.transcript.meta["game"] = std::to_string(index);
        out[task / games][static_cast<std::size_t>(index)] = std::move(record);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(total);
      }
    }
  };
  const int threads = std::max(1, std::min<int>(config.workers, static_cast<int>(total)));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool_threads;
    for (int i = 0; i < threads; ++i) pool_threads.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  if (!config.transcripts.empty()) {
    std::filesystem::create_directories(config.transcripts);
    for (std::size_t p = 0; p < out.size(); ++p) {
      for (std::size_t g = 0; g < games; ++g) {
        auto name = "pairing" + std::to_string(p) + "_game" + std::to_string(g) + ".txt";
        out[p][g].transcript.save(config.transcripts / name);
      }
    }
  }
  return out;
}

}  // namespace

PairingResult run_pairing(const ExperimentConfig& config, const ModelLibrary& library,
                          const std::string& spymaster, const std::string& guesser,
                          const Environment& env) {
  std::vector<Pairing> pairings{{parse_agent_spec(spymaster), parse_agent_spec(guesser), env}};
  auto games = play_all(config, library, pairings);
  PairingResult result;
  result.row = summarize(spymaster, guesser, env.label(), games.front());
  result.games = std::move(games.front());
  return result;
}

MatrixResult run_matrix(const ExperimentConfig& config, const ModelLibrary& library) {
  std::vector<Pairing> pairings;
  for (const auto& env : config.environments) {
    for (const auto& sm : config.spymasters) {
      for (const auto& g : config.guessers) {
        pairings.push_back({parse_agent_spec(sm), parse_agent_spec(g), env});
      }
    }
  }
  MatrixResult result;
  result.games = play_all(config, library, pairings);
  for (std::size_t i = 0; i < pairings.size(); ++i) {
    result.rows.push_back(summarize(pairings[i].spymaster.text, pairings[i].guesser.text,
                                    pairings[i].env.label(), result.games[i]));
  }
  return result;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(std::span<const ResultRow> rows, bool timing) {
  std::string out =
      "spymaster,guesser,environment,games,wins,win_rate,mean_score,mean_turns,invalid,seconds\n";
  for (const auto& r : rows) {
    out += csv_field(r.spymaster) + ',' + csv_field(r.guesser) + ',' + csv_field(r.environment) +
           ',' + std::to_string(r.games) + ',' + std::to_string(r.wins) + ',' +
           fixed(r.win_rate, 4) + ',' + fixed(r.mean_score, 4) + ',' + fixed(r.mean_turns, 4) +
           ',' + std::to_string(r.invalid) + ',' + fixed(timing ? r.seconds : 0.0, 3) + '\n';
  }
  return out;
}

std::string render_table(std::span<const ResultRow> rows,
                         std::span<const std::string> in_distribution) {
  std::vector<std::string> envs, spymasters, guessers;
  auto add_unique = [](std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  };
  for (const auto& r : rows) {
    add_unique(envs, r.environment);
    add_unique(spymasters, r.spymaster);
    add_unique(guessers, r.guesser);
  }
  const std::set<std::string> inside(in_distribution.begin(), in_distribution.end());
  std::vector<std::string> in_group, out_group;
  for (const auto& g : guessers) {
    auto models = parse_agent_spec(g).models;
    bool in = !inside.empty() && std::all_of(models.begin(), models.end(),
                                             [&](const auto& m) { return inside.contains(m); });
    (in || inside.empty() ? in_group : out_group).push_back(g);
  }

  auto lookup = [&](const std::string& env, const std::string& sm,
                    const std::string& g) -> const ResultRow* {
    for (const auto& r : rows) {
      if (r.environment == env && r.spymaster == sm && r.guesser == g) return &r;
    }
    return nullptr;
  };

  std::ostringstream out;
  for (const auto& env : envs) {
    std::vector<std::string> header{"spymaster"};
    std::vector<std::vector<std::string>> body;
    auto add_group = [&](const std::vector<std::string>& group, const std::string& tag) {
      if (group.empty()) return;
      for (const auto& g : group) header.push_back(g);
      header.push_back(tag + " avg");
    };
    const std::string in_tag = inside.empty() ? "all" : "in";
    add_group(in_group, in_tag);
    add_group(out_group, "out");
    for (const auto& sm : spymasters) {
      std::vector<std::string> line{sm};
      auto fill = [&](const std::vector<std::string>& group) {
        if (group.empty()) return;
        double sum = 0.0;
        int n = 0;
        for (const auto& g : group) {
          const auto* r = lookup(env, sm, g);
          line.push_back(r ? fixed(r->win_rate, 3) : "-");
          if (r) {
            sum += r->win_rate;
            ++n;
          }
        }
        line.push_back(n ? fixed(sum / n, 3) : "-");
      };
      fill(in_group);
      fill(out_group);
      body.push_back(std::move(line));
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
      width[i] = header[i].size();
      for (const auto& line : body) width[i] = std::max(width[i], line[i].size());
    }
    out << "environment: " << env << '\n';
    auto emit = [&](const std::vector<std::string>& line) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (i) out << "  ";
        if (i == 0) {
          out << std::left << std::setw(static_cast<int>(width[i])) << line[i];
        } else {
          out << std::right << std::setw(static_cast<int>(width[i])) << line[i];
        }
      }
      out << '\n';
    };
    emit(header);
    for (const auto& line : body) emit(line);
    out << '\n';
  }
  return out.str();
}

namespace {

Interval percentile_interval(std::vector<double> stats, double estimate, double level) {
  std::sort(stats.begin(), stats.end());
  const double alpha = (1.0 - level) / 2.0;
  auto at = [&](double q) {
    double pos = q * static_cast<double>(stats.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    auto hi = static_cast<std::size_t>(std::ceil(pos));
    return stats[lo] + (stats[hi] - stats[lo]) * (pos - static_cast<double>(lo));
  };
  return {estimate, at(alpha), at(1.0 - alpha)};
}

}  // namespace

Interval paired_bootstrap(std::span<const double> a, std::span<const double> b, int resamples,
                          std::uint64_t seed, double level) {
  if (a.size() != b.size() || a.empty()) throw Error("paired_bootstrap: need equal, non-empty samples");
  if (resamples < 1) throw Error("paired_bootstrap: resamples must be >= 1");
  const std::size_t n = a.size();
  double estimate = 0.0;
  for (std::size_t i = 0; i < n; ++i) estimate += a[i] - b[i];
  estimate /= static_cast<double>(n);
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> stats(static_cast<std::size_t>(resamples));
  for (auto& s : stats) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto j = pick(rng);
      sum += a[j] - b[j];
    }
    s = sum / static_cast<double>(n);
  }
  return percentile_interval(std::move(stats), estimate, level);
}

Interval bootstrap_mean(std::span<const double> a, int resamples, std::uint64_t seed,
                        double level) {
  std::vector<double> zeros(a.size(), 0.0);
  return paired_bootstrap(a, zeros, resamples, seed, level);
}

ReplayReport replay(const Transcript& recorded, const ModelLibrary& library,
                    std::span<const std::string> pool) {
  auto field = [&](const std::string& key) -> const std::string& {
    auto it = recorded.meta.find(key);
    if (it == recorded.meta.end()) throw Error("transcript lacks GAME field '" + key + "'");
    return it->second;
  };
  auto number = [&](const std::string& key) { return std::stoull(field(key)); };

  GameSeeds seeds{number("seed_board"), number("seed_spymaster"), number("seed_guesser"),
                  number("seed_channel")};
  GameRules rules;
  {
    std::vector<int> counts;
    std::istringstream in(field("composition"));
    std::string part;
    while (std::getline(in, part, ',')) counts.push_back(std::stoi(part));
    if (counts.size() != 4) throw Error("transcript: bad composition field");
    rules.composition = {counts[0], counts[1], counts[2], counts[3]};
  }
  rules.board_size = static_cast<int>(number("board_size"));
  rules.turn_limit = static_cast<int>(number("turn_limit"));

  auto again = play_game(library, parse_agent_spec(field("spymaster")),
                         parse_agent_spec(field("guesser")),
                         parse_environment(field("environment")), rules, pool, seeds);
  ReplayReport report;
  const auto& want = recorded.events;
  const auto& got = again.transcript.events;
  for (std::size_t i = 0; i < std::max(want.size(), got.size()); ++i) {
    std::string w = i < want.size() ? want[i] : "<missing>";
    std::string g = i < got.size() ? got[i] : "<missing>";
    if (w != g) {
      report.ok = false;
      report.first_difference = i;
      report.expected = w;
      report.actual = g;
      break;
    }
  }
  return report;
}

}  // namespace codenames
