// SPDX-License-Identifier: MIT
#include "tenx/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>

#include "json.hpp"
#include "tenx/bounds.hpp"
#include "tenx/constructions.hpp"
#include "tenx/tensor_io.hpp"

namespace tenx {

namespace {

constexpr double kTieTolerance = 1e-9;
constexpr double kPolishMargin = 1e-3;
constexpr std::size_t kMaxWitnesses = 64;
constexpr std::size_t kMaxGroupSize = 2'000'000;

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  return (a > max - b) ? max : a + b;
}

/// C(n, k), saturating at uint64 max.  C(n, i) is integral at every step,
/// so the running product divides exactly.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = result * factor / i;
  }
  return result;
}

/// n!, saturating just past kMaxGroupSize so callers can reject.
std::size_t factorial_size(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (f > kMaxGroupSize) return kMaxGroupSize + 1;
    f *= i;
  }
  return f;
}

std::vector<std::vector<std::size_t>> permutations_of(std::size_t n) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return perms;
}

/// Cell-permutation tables for a symmetry group acting on a shape's cells.
struct GroupTables {
  std::vector<std::vector<std::uint32_t>> maps;
};

/// Group generated by per-mode slice permutations and transposes of
/// equal-dimension modes.  Throws when larger than kMaxGroupSize.
GroupTables general_group_tables(const Shape& shape) {
  const std::size_t d = shape.size();
  const std::size_t n_cells = cell_count(shape);

  std::size_t group_size = 1;
  for (std::size_t n : shape) {
    const std::size_t f = factorial_size(n);
    if (f > kMaxGroupSize || group_size > kMaxGroupSize / f) {
      throw std::invalid_argument("canonical_form: orbit group too large");
    }
    group_size *= f;
  }

  std::vector<std::vector<std::size_t>> mode_perms;
  std::vector<std::size_t> tau(d);
  std::iota(tau.begin(), tau.end(), 0);
  do {
    bool ok = true;
    for (std::size_t k = 0; k < d; ++k) ok &= shape[tau[k]] == shape[k];
    if (ok) mode_perms.push_back(tau);
  } while (std::next_permutation(tau.begin(), tau.end()));
  if (group_size > kMaxGroupSize / mode_perms.size()) {
    throw std::invalid_argument("canonical_form: orbit group too large");
  }

  std::vector<std::vector<std::vector<std::size_t>>> slice_perms(d);
  for (std::size_t k = 0; k < d; ++k) slice_perms[k] = permutations_of(shape[k]);

  GroupTables tables;
  std::vector<std::size_t> choice(d, 0);
  Index image(d);
  for (const auto& mode_perm : mode_perms) {
    std::fill(choice.begin(), choice.end(), 0);
    while (true) {
      std::vector<std::uint32_t> map(n_cells);
      for_each_index(shape, [&](std::size_t flat, const Index& idx) {
        for (std::size_t k = 0; k < d; ++k) {
          image[k] = slice_perms[k][choice[k]][idx[mode_perm[k]]];
        }
        std::size_t target = 0;
        for (std::size_t k = 0; k < d; ++k) target = target * shape[k] + image[k];
        map[flat] = static_cast<std::uint32_t>(target);
      });
      tables.maps.push_back(std::move(map));
      std::size_t k = 0;
      while (k < d && choice[k] + 1 == slice_perms[k].size()) choice[k++] = 0;
      if (k == d) break;
      ++choice[k];
    }
  }
  return tables;
}

/// Simultaneous slice permutations (same permutation in every mode) of a
/// cube; the part of the group acting faithfully on symmetric tensors.
GroupTables diagonal_group_tables(const Shape& shape) {
  const std::size_t d = shape.size();
  const std::size_t n = shape.front();
  const std::size_t n_cells = cell_count(shape);
  if (factorial_size(n) > kMaxGroupSize) {
    throw std::invalid_argument("search: orbit group too large");
  }
  GroupTables tables;
  for (const auto& perm : permutations_of(n)) {
    std::vector<std::uint32_t> map(n_cells);
    for_each_index(shape, [&](std::size_t flat, const Index& idx) {
      std::size_t target = 0;
      for (std::size_t k = 0; k < d; ++k) target = target * n + perm[idx[k]];
      map[flat] = static_cast<std::uint32_t>(target);
    });
    tables.maps.push_back(std::move(map));
  }
  return tables;
}

/// Masks use bit (cells - 1 - cell), so integer order on masks equals
/// lexicographic order on the cell-0-first bit string.
std::uint64_t mask_bit(std::size_t n_cells, std::size_t cell) {
  return std::uint64_t{1} << (n_cells - 1 - cell);
}

std::uint64_t cells_to_mask(std::size_t n_cells, const std::vector<std::uint32_t>& cells) {
  std::uint64_t mask = 0;
  for (std::uint32_t cell : cells) mask |= mask_bit(n_cells, cell);
  return mask;
}

/// True when no group image of the mask is lexicographically smaller.
bool mask_is_canonical(std::uint64_t mask, std::size_t n_cells,
                       const std::vector<std::uint32_t>& cells, const GroupTables& group) {
  for (const auto& map : group.maps) {
    std::uint64_t image = 0;
    for (std::uint32_t cell : cells) image |= mask_bit(n_cells, map[cell]);
    if (image < mask) return false;
  }
  return true;
}

DenseTensor tensor_from_cells(const Shape& shape, const std::vector<std::uint32_t>& cells) {
  DenseTensor t(shape);
  for (std::uint32_t cell : cells) t[cell] = 1.0;
  return t;
}

std::vector<Index> cells_to_indices(const Shape& shape, const std::vector<std::uint32_t>& cells) {
  const std::size_t d = shape.size();
  std::vector<Index> indices;
  indices.reserve(cells.size());
  Index idx(d);
  for (std::uint32_t cell : cells) {
    std::size_t rest = cell;
    for (std::size_t k = d; k-- > 0;) {
      idx[k] = rest % shape[k];
      rest /= shape[k];
    }
    indices.push_back(idx);
  }
  return indices;
}

/// Largest number of ones sharing a single fiber (all coordinates equal
/// except one mode); the spectral norm is at least sqrt of this.
std::size_t max_fiber_ones(const Shape& shape, const std::vector<Index>& indices) {
  const std::size_t d = shape.size();
  std::size_t best = 1;
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < indices.size(); ++i) {
      std::size_t count = 1;
      for (std::size_t j = i + 1; j < indices.size(); ++j) {
        bool same = true;
        for (std::size_t m = 0; m < d; ++m) {
          if (m != k && indices[i][m] != indices[j][m]) {
            same = false;
            break;
          }
        }
        count += same ? 1 : 0;
      }
      best = std::max(best, count);
    }
  }
  return best;
}

bool has_empty_slice(const Shape& shape, const std::vector<Index>& indices) {
  const std::size_t d = shape.size();
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<char> seen(shape[k], 0);
    for (const Index& idx : indices) seen[idx[k]] = 1;
    for (char s : seen) {
      if (!s) return true;
    }
  }
  return false;
}

/// Orbits of cells under all coordinate permutations of a cube, each
/// sorted, ordered by smallest cell; the building blocks of symmetric
/// zero-one tensors.
std::vector<std::vector<std::uint32_t>> symmetric_orbits(const Shape& shape) {
  const std::size_t d = shape.size();
  const std::size_t n_cells = cell_count(shape);
  std::vector<char> visited(n_cells, 0);
  std::vector<std::vector<std::uint32_t>> orbits;
  const auto perms = permutations_of(d);
  for_each_index(shape, [&](std::size_t flat, const Index& idx) {
    if (visited[flat]) return;
    std::vector<std::uint32_t> orbit;
    for (const auto& perm : perms) {
      std::size_t target = 0;
      for (std::size_t k = 0; k < d; ++k) target = target * shape[k] + idx[perm[k]];
      if (!visited[target]) {
        visited[target] = 1;
        orbit.push_back(static_cast<std::uint32_t>(target));
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  });
  return orbits;
}

struct BestState {
  double ratio = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, std::vector<std::uint32_t>>> witnesses;
};

void record_candidate(BestState& best, double value, const std::vector<std::uint32_t>& cells) {
  if (value < best.ratio - kTieTolerance) {
    best.ratio = value;
    best.witnesses.clear();
    best.witnesses.emplace_back(value, cells);
  } else if (value <= best.ratio + kTieTolerance) {
    best.ratio = std::min(best.ratio, value);
    if (best.witnesses.size() < kMaxWitnesses) best.witnesses.emplace_back(value, cells);
  }
}

void drop_stale_witnesses(BestState& best) {
  std::erase_if(best.witnesses,
                [&](const auto& w) { return w.first > best.ratio + kTieTolerance; });
}

struct CheckpointData {
  std::size_t completed_ones = 0;
  BestState best;
  std::uint64_t explored = 0;
  std::uint64_t pruned = 0;
};

nlohmann::json config_fingerprint(const SearchConfig& cfg) {
  nlohmann::json j;
  j["shape"] = cfg.shape;
  j["symmetric"] = cfg.symmetric;
  j["max_ones"] = cfg.max_ones ? static_cast<std::int64_t>(*cfg.max_ones) : -1;
  j["canonicalize"] = cfg.canonicalize;
  return j;
}

void save_checkpoint(const SearchConfig& cfg, const CheckpointData& data) {
  if (cfg.checkpoint_path.empty()) return;
  nlohmann::json j;
  j["config"] = config_fingerprint(cfg);
  j["completed_ones"] = data.completed_ones;
  j["best_ratio"] = data.best.ratio;
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& [value, cells] : data.best.witnesses) {
    witnesses.push_back({{"ratio", value}, {"cells", cells}});
  }
  j["witnesses"] = std::move(witnesses);
  j["explored"] = data.explored;
  j["pruned"] = data.pruned;
  std::ofstream out(cfg.checkpoint_path);
  if (!out) {
    throw std::runtime_error("search: cannot write checkpoint file " + cfg.checkpoint_path);
  }
  out << j.dump(2) << '\n';
}

/// Loads a checkpoint matching this configuration; returns nothing on a
/// missing, unreadable, or mismatched file (the search then starts fresh).
std::optional<CheckpointData> load_checkpoint(const SearchConfig& cfg) {
  if (cfg.checkpoint_path.empty()) return std::nullopt;
  std::ifstream in(cfg.checkpoint_path);
  if (!in) return std::nullopt;
  try {
    nlohmann::json j;
    in >> j;
    if (j.at("config") != config_fingerprint(cfg)) return std::nullopt;
    CheckpointData data;
    data.completed_ones = j.at("completed_ones").get<std::size_t>();
    data.best.ratio = j.at("best_ratio").get<double>();
    for (const auto& w : j.at("witnesses")) {
      data.best.witnesses.emplace_back(w.at("ratio").get<double>(),
                                       w.at("cells").get<std::vector<std::uint32_t>>());
    }
    data.explored = j.at("explored").get<std::uint64_t>();
    data.pruned = j.at("pruned").get<std::uint64_t>();
    return data;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

/// Evaluates the survivors of one ones-level: cheap 16-start estimates for
/// everyone (parallelizable), then in fixed order a 256-start polish for
/// those within kPolishMargin of the running best.
void evaluate_survivors(const Shape& shape,
                        const std::vector<std::vector<std::uint32_t>>& survivors,
                        const SearchConfig& cfg, BestState& best, std::uint64_t& explored) {
  if (survivors.empty()) return;
  EstimatorConfig inner = cfg.estimator;
  inner.starts = 16;
  inner.nonnegative_mode = true;
  inner.jobs = 1;
  EstimatorConfig polish = cfg.estimator;
  polish.starts = std::max<std::size_t>(polish.starts, 256);
  polish.nonnegative_mode = true;
  polish.jobs = 1;

  std::vector<double> inner_ratio(survivors.size());
  const std::size_t workers =
      std::min<std::size_t>(std::max<std::size_t>(cfg.parallelism, 1), survivors.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      inner_ratio[i] = ratio(tensor_from_cells(shape, survivors[i]), inner);
    }
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        for (std::size_t i = w; i < survivors.size(); i += workers) {
          inner_ratio[i] = ratio(tensor_from_cells(shape, survivors[i]), inner);
        }
      });
    }
    for (auto& t : threads) t.join();
  }

  for (std::size_t i = 0; i < survivors.size(); ++i) {
    ++explored;
    // Estimates only under-approximate the true ratio, so a value already
    // above the margin can never improve on the best.
    if (inner_ratio[i] > best.ratio + kPolishMargin) continue;
    const double polished = ratio(tensor_from_cells(shape, survivors[i]), polish);
    record_candidate(best, polished, survivors[i]);
  }
}

}  // namespace

DenseTensor canonical_form(const DenseTensor& t) {
  if (!is_zero_one(t)) {
    throw std::invalid_argument("canonical_form: tensor must be zero-one");
  }
  const GroupTables group = general_group_tables(t.shape());
  const std::size_t n_cells = t.size();
  std::vector<std::uint32_t> cells;
  for (std::size_t flat = 0; flat < n_cells; ++flat) {
    if (t[flat] == 1.0) cells.push_back(static_cast<std::uint32_t>(flat));
  }
  // Bit strings held as byte vectors so shapes beyond 64 cells work too.
  std::vector<char> best_bits(n_cells, 0);
  for (std::uint32_t cell : cells) best_bits[cell] = 1;
  std::vector<char> image(n_cells);
  for (const auto& map : group.maps) {
    std::fill(image.begin(), image.end(), 0);
    for (std::uint32_t cell : cells) image[map[cell]] = 1;
    if (std::lexicographical_compare(image.begin(), image.end(), best_bits.begin(),
                                     best_bits.end())) {
      best_bits = image;
    }
  }
  DenseTensor result(t.shape());
  for (std::size_t flat = 0; flat < n_cells; ++flat) {
    if (best_bits[flat]) result[flat] = 1.0;
  }
  return result;
}

SearchResult search_min_ratio(const SearchConfig& cfg) {
  const auto start_time = std::chrono::steady_clock::now();
  const std::size_t n_cells = cell_count(cfg.shape);
  for (std::size_t n : cfg.shape) {
    if (n < 2) throw std::invalid_argument("search: every dimension must be >= 2");
  }
  if (cfg.symmetric) {
    for (std::size_t n : cfg.shape) {
      if (n != cfg.shape.front()) {
        throw std::invalid_argument("search: symmetric search needs a cubical shape");
      }
    }
  }
  if (n_cells > 64) {
    throw std::invalid_argument("search: more than 64 cells; enumeration uses 64-bit masks");
  }
  if (!cfg.symmetric && n_cells > 30 && !cfg.max_ones) {
    throw std::invalid_argument(
        "search: over 30 cells the full enumeration needs a max_ones cap");
  }
  if (cfg.max_ones && *cfg.max_ones == 0) {
    throw std::invalid_argument("search: max_ones must be at least 1");
  }

  GroupTables group;
  if (cfg.canonicalize) {
    group = cfg.symmetric ? diagonal_group_tables(cfg.shape)
                          : general_group_tables(cfg.shape);
  }
  const std::vector<std::vector<std::uint32_t>> orbits =
      cfg.symmetric ? symmetric_orbits(cfg.shape)
                    : std::vector<std::vector<std::uint32_t>>{};
  std::vector<std::size_t> orbit_suffix_size(orbits.size() + 1, 0);
  for (std::size_t i = orbits.size(); i-- > 0;) {
    orbit_suffix_size[i] = orbit_suffix_size[i + 1] + orbits[i].size();
  }

  BestState best;
  std::uint64_t explored = 0;
  std::uint64_t pruned = 0;
  std::size_t start_level = 1;
  if (const auto checkpoint = load_checkpoint(cfg)) {
    best = checkpoint->best;
    explored = checkpoint->explored;
    pruned = checkpoint->pruned;
    start_level = checkpoint->completed_ones + 1;
  }

  const double total_cells = static_cast<double>(n_cells);
  const std::size_t max_dim = *std::max_element(cfg.shape.begin(), cfg.shape.end());
  const std::size_t level_cap = cfg.max_ones ? std::min(*cfg.max_ones, n_cells) : n_cells;
  SearchResult result;
  result.complete = true;
  result.ones_examined = start_level > 1 ? start_level - 1 : 0;

  auto consider = [&](const std::vector<std::uint32_t>& cells,
                      std::vector<std::vector<std::uint32_t>>& survivors) {
    const double m = static_cast<double>(cells.size());
    const std::vector<Index> indices = cells_to_indices(cfg.shape, cells);
    const std::size_t fiber = max_fiber_ones(cfg.shape, indices);
    if (std::sqrt(static_cast<double>(fiber) / m) > best.ratio + kTieTolerance) {
      pruned = saturating_add(pruned, 1);
      return;
    }
    if (has_empty_slice(cfg.shape, indices)) {
      pruned = saturating_add(pruned, 1);
      return;
    }
    if (cfg.canonicalize &&
        !mask_is_canonical(cells_to_mask(n_cells, cells), n_cells, cells, group)) {
      pruned = saturating_add(pruned, 1);
      return;
    }
    survivors.push_back(cells);
  };

  for (std::size_t level = start_level; level <= n_cells; ++level) {
    const double m = static_cast<double>(level);
    if (level > level_cap) {
      // The cap stopped us; the run is still complete if no heavier tensor
      // could have tied the best anyway.
      result.complete = std::sqrt(m / total_cells) > best.ratio + kTieTolerance;
      break;
    }
    if (std::sqrt(m / total_cells) > best.ratio + kTieTolerance) {
      break;  // sum bound: every tensor this heavy or heavier ranks worse
    }
    if (level < max_dim || 1.0 / std::sqrt(m) > best.ratio + kTieTolerance) {
      // Too few ones to cover the largest mode's slices, or too light to
      // tie the best (single-entry bound).
      pruned = saturating_add(pruned, binomial(n_cells, level));
      continue;
    }

    std::vector<std::vector<std::uint32_t>> survivors;
    if (!cfg.symmetric) {
      std::vector<std::uint32_t> cells(level);
      std::iota(cells.begin(), cells.end(), 0);
      bool done = false;
      while (!done) {
        consider(cells, survivors);
        done = true;
        for (std::size_t j = level; j-- > 0;) {
          if (cells[j] < n_cells - level + j) {
            ++cells[j];
            for (std::size_t i = j + 1; i < level; ++i) cells[i] = cells[i - 1] + 1;
            done = false;
            break;
          }
        }
      }
    } else {
      std::vector<std::uint32_t> cells;
      auto dfs = [&](auto&& self, std::size_t idx, std::size_t remaining) -> void {
        if (remaining == 0) {
          std::vector<std::uint32_t> sorted_cells = cells;
          std::sort(sorted_cells.begin(), sorted_cells.end());
          consider(sorted_cells, survivors);
          return;
        }
        if (idx == orbits.size() || orbit_suffix_size[idx] < remaining) return;
        if (orbits[idx].size() <= remaining) {
          cells.insert(cells.end(), orbits[idx].begin(), orbits[idx].end());
          self(self, idx + 1, remaining - orbits[idx].size());
          cells.resize(cells.size() - orbits[idx].size());
        }
        self(self, idx + 1, remaining);
      };
      dfs(dfs, 0, level);
    }

    evaluate_survivors(cfg.shape, survivors, cfg, best, explored);
    drop_stale_witnesses(best);
    result.ones_examined = level;
    CheckpointData data;
    data.completed_ones = level;
    data.best = best;
    data.explored = explored;
    data.pruned = pruned;
    save_checkpoint(cfg, data);
  }

  drop_stale_witnesses(best);
  result.best_ratio = best.ratio;
  for (const auto& [value, cells] : best.witnesses) {
    result.witnesses.push_back(tensor_from_cells(cfg.shape, cells));
  }
  result.explored = explored;
  result.pruned = pruned;
  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return result;
}

std::vector<TableRowReport> verify_tables(const EstimatorConfig& estimator) {
  struct RowSpec {
    const char* label;
    Shape shape;
    bool symmetric;
    std::vector<Index> ones;  // 1-based, as published
    double table_value;
    double reference_value;
  };
  const std::vector<RowSpec> rows = {
      {"2,2,2", {2, 2, 2}, false, {{1, 1, 2}, {1, 2, 1}, {2, 1, 1}}, 0.667, 2.0 / 3.0},
      {"2,2,3", {2, 2, 3}, false, {{1, 1, 1}, {2, 1, 2}, {2, 2, 3}}, 0.577, 1.0 / std::sqrt(3.0)},
      {"2,2,4", {2, 2, 4}, false, {{1, 1, 1}, {1, 2, 3}, {2, 1, 2}, {2, 2, 4}}, 0.500, 0.5},
      {"2,3,3", {2, 3, 3}, false, {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}}, 0.500, 0.5},
      {"2,3,4", {2, 3, 4}, false, {{1, 1, 4}, {1, 3, 2}, {2, 1, 3}, {2, 2, 2}}, 0.500, 0.5},
      {"2,4,4",
       {2, 4, 4},
       false,
       {{1, 1, 3}, {1, 2, 1}, {1, 4, 2}, {2, 1, 4}, {2, 3, 1}},
       0.447,
       1.0 / std::sqrt(5.0)},
      {"3,3,3",
       {3, 3, 3},
       false,
       {{1, 1, 3}, {1, 2, 1}, {2, 2, 2}, {3, 1, 2}, {3, 3, 1}},
       0.469,
       0.468851012268},
      {"3,3,4",
       {3, 3, 4},
       false,
       {{1, 2, 2}, {1, 3, 1}, {2, 1, 1}, {2, 2, 4}, {3, 1, 2}, {3, 3, 3}},
       0.436,
       0.436435780472},
      {"3,4,4",
       {3, 4, 4},
       false,
       {{1, 1, 3}, {1, 2, 4}, {2, 1, 2}, {2, 4, 1}, {3, 2, 2}, {3, 3, 1}},
       0.408,
       1.0 / std::sqrt(6.0)},
      {"4,4,4",
       {4, 4, 4},
       false,
       {{1, 1, 1}, {1, 2, 3}, {2, 3, 1}, {2, 4, 3}, {3, 1, 2}, {3, 2, 4}, {4, 3, 2}, {4, 4, 4}},
       0.354,
       1.0 / std::sqrt(8.0)},
      {"sym n=2", {2, 2, 2}, true, {{1, 1, 2}, {1, 2, 1}, {2, 1, 1}}, 0.667, 2.0 / 3.0},
      {"sym n=3",
       {3, 3, 3},
       true,
       {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}},
       0.471,
       std::sqrt(2.0) / 3.0},
      {"sym n=4",
       {4, 4, 4},
       true,
       {{1, 2, 3},
        {1, 3, 2},
        {2, 1, 3},
        {2, 3, 1},
        {3, 1, 2},
        {3, 2, 1},
        {3, 4, 4},
        {4, 3, 4},
        {4, 4, 3}},
       0.385,
       2.0 / (3.0 * std::sqrt(3.0))},
  };

  EstimatorConfig cfg = estimator;
  cfg.nonnegative_mode = true;
  std::vector<TableRowReport> reports;
  reports.reserve(rows.size());
  for (const RowSpec& row : rows) {
    TableRowReport report;
    report.label = row.label;
    report.shape = row.shape;
    report.symmetric = row.symmetric;
    DenseTensor witness(row.shape);
    for (const Index& one : row.ones) {
      Index zero_based(one.size());
      for (std::size_t k = 0; k < one.size(); ++k) zero_based[k] = one[k] - 1;
      report.ones.push_back(zero_based);
      witness.at(zero_based) = 1.0;
    }
    report.table_value = row.table_value;
    report.reference_value = row.reference_value;
    report.witness_ratio = ratio(witness, cfg);
    if (row.symmetric) {
      report.lower_bound =
          phi_bounds_sym(row.shape.front(), row.shape.size(), Field::nonnegative).lower;
    } else {
      SpaceSpec space;
      space.shape = row.shape;
      space.field = Field::nonnegative;
      report.lower_bound = phi_bounds(space).lower;
    }
    report.pass = std::abs(report.witness_ratio - report.reference_value) <= 1e-6 &&
                  std::llround(report.witness_ratio * 1000.0) ==
                      std::llround(report.table_value * 1000.0);
    reports.push_back(std::move(report));
  }
  return reports;
}

ConjectureReport check_conjecture2(std::size_t n, const EstimatorConfig& estimator) {
  if (n < 2) {
    throw std::invalid_argument("check_conjecture2: n must be at least 2");
  }
  const std::vector<std::size_t> primes = prime_factorize(n).primes;
  Shape shape(primes.begin(), primes.end());
  shape.insert(shape.end(), primes.begin(), primes.end());
  const std::size_t n_cells = cell_count(shape);
  if (n_cells > 100) {
    throw std::invalid_argument("check_conjecture2: doubled shape exceeds 100 cells");
  }
  const std::size_t d = shape.size();

  ConjectureReport report;
  report.n = n;
  report.shape = shape;
  report.candidates = binomial(n_cells, n);

  // Evenly spread means exactly n / dim ones in every slice.
  std::vector<std::size_t> quota(d);
  for (std::size_t k = 0; k < d; ++k) quota[k] = n / shape[k];

  std::vector<Index> cell_index(n_cells);
  {
    const DenseTensor probe(shape);
    for (std::size_t flat = 0; flat < n_cells; ++flat) {
      cell_index[flat] = probe.multi_index(flat);
    }
  }
  // suffix[k][s][p] = number of cells >= p lying in slice s of mode k.
  std::vector<std::vector<std::vector<std::size_t>>> suffix(d);
  for (std::size_t k = 0; k < d; ++k) {
    suffix[k].assign(shape[k], std::vector<std::size_t>(n_cells + 1, 0));
    for (std::size_t p = n_cells; p-- > 0;) {
      for (std::size_t s = 0; s < shape[k]; ++s) {
        suffix[k][s][p] = suffix[k][s][p + 1] + (cell_index[p][k] == s ? 1 : 0);
      }
    }
  }

  EstimatorConfig cfg = estimator;
  cfg.nonnegative_mode = true;

  std::vector<std::vector<std::size_t>> counts(d);
  for (std::size_t k = 0; k < d; ++k) counts[k].assign(shape[k], 0);
  std::vector<std::uint32_t> cells;

  auto classify = [&]() {
    ++report.evenly_passed;
    const DenseTensor t = tensor_from_cells(shape, cells);
    if (is_permutation_unfolding(t)) {
      ++report.unfolding;
      return;
    }
    const SpectralEstimate estimate = spectral_norm_estimate(t, cfg);
    if (estimate.value >= 1.0 + 1e-6) {
      ++report.excluded;
      if (report.min_excluded_estimate == 0.0 ||
          estimate.value < report.min_excluded_estimate) {
        report.min_excluded_estimate = estimate.value;
      }
    } else {
      ++report.indeterminate;
    }
  };

  auto feasible = [&](std::size_t next_cell) {
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t s = 0; s < shape[k]; ++s) {
        if (quota[k] - counts[k][s] > suffix[k][s][next_cell]) return false;
      }
    }
    return true;
  };

  auto dfs = [&](auto&& self, std::size_t next_cell, std::size_t remaining) -> void {
    if (remaining == 0) {
      classify();
      return;
    }
    if (next_cell >= n_cells || !feasible(next_cell)) return;
    const Index& idx = cell_index[next_cell];
    bool fits = true;
    for (std::size_t k = 0; k < d; ++k) fits &= counts[k][idx[k]] < quota[k];
    if (fits) {
      for (std::size_t k = 0; k < d; ++k) ++counts[k][idx[k]];
      cells.push_back(static_cast<std::uint32_t>(next_cell));
      self(self, next_cell + 1, remaining - 1);
      cells.pop_back();
      for (std::size_t k = 0; k < d; ++k) --counts[k][idx[k]];
    }
    self(self, next_cell + 1, remaining);
  };
  dfs(dfs, 0, n);
  return report;
}

}  // namespace tenx
