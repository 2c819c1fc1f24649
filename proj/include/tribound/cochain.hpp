#pragma once

// Cochains f: Z(n)^3 -> Z, their coboundary, and the iterated sumsets
// Delta_m(f) = m-fold sums of +-Im(delta f).

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <fcntl.h>
#include <unistd.h>

#include <json.hpp>

#include "tribound/coloring.hpp"
#include "tribound/errors.hpp"
#include "tribound/poly.hpp"
#include "tribound/util.hpp"

namespace tribound {

/// Raised when f(x, y, y) != 0 for some x, y.
class SharpConditionError : public DomainError {
 public:
  explicit SharpConditionError(std::array<int, 3> counterexample)
      : DomainError("condition (#) fails: f(" + std::to_string(counterexample[0]) + "," +
                    std::to_string(counterexample[1]) + "," + std::to_string(counterexample[2]) + ") != 0"),
        counterexample_(counterexample) {}
  const std::array<int, 3>& counterexample() const { return counterexample_; }

 private:
  std::array<int, 3> counterexample_;
};

/// First (x, y, y) in lexicographic order with a non-zero value, if any.
inline std::optional<std::array<int, 3>> sharp_counterexample(const PolyExpr& expr, Modulus n) {
  for (int x = 0; x < n.value(); ++x)
    for (int y = 0; y < n.value(); ++y)
      if (expr.evaluate(x, y, y) != 0) return std::array<int, 3>{x, y, y};
  return std::nullopt;
}

inline bool check_sharp(const PolyExpr& expr, Modulus n) { return !sharp_counterexample(expr, n).has_value(); }

/// f evaluated on the representatives {0, ..., n-1} as plain integers.
class CochainFn {
 public:
  CochainFn(PolyExpr expr, Modulus n, std::string source = {})
      : expr_(std::move(expr)), n_(n), source_(std::move(source)) {
    if (source_.empty()) source_ = to_string(expr_);
    canonical_ = canonical_string(expr_);
    const int m = n_.value();
    table_.resize(static_cast<std::size_t>(m) * m * m);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        for (int z = 0; z < m; ++z) table_[index(x, y, z)] = detail::narrow(expr_.evaluate(x, y, z));
    if (auto bad = sharp_counterexample(expr_, n_)) throw SharpConditionError(*bad);
  }

  static CochainFn parse(std::string_view text, Modulus n) { return CochainFn(parse_poly(text), n, std::string(text)); }

  Int operator()(int x, int y, int z) const { return table_[index(x, y, z)]; }
  Int evaluate_fresh(int x, int y, int z) const { return detail::narrow(expr_.evaluate(x, y, z)); }

  Modulus modulus() const { return n_; }
  int n() const { return n_.value(); }
  const PolyExpr& expr() const { return expr_; }
  const std::string& source() const { return source_; }
  const std::string& canonical() const { return canonical_; }

 private:
  std::size_t index(int x, int y, int z) const {
    const auto m = static_cast<std::size_t>(n_.value());
    return (static_cast<std::size_t>(x) * m + static_cast<std::size_t>(y)) * m + static_cast<std::size_t>(z);
  }

  PolyExpr expr_;
  Modulus n_;
  std::string source_;
  std::string canonical_;
  std::vector<Int> table_;
};

inline Int eval_f(const CochainFn& f, int x, int y, int z) {
  const Modulus n = f.modulus();
  if (!n.contains(x) || !n.contains(y) || !n.contains(z)) throw DomainError("argument outside Z(n)");
  return f(x, y, z);
}

/// (delta f)(x,y,z,w) = f(x,z,w) - f(x,y,w) + f(x,y,z)
///                    - f(x*y,z,w) + f(x*z,y*z,w) - f(x*w,y*w,z*w)
inline Int delta_f(const CochainFn& f, int x, int y, int z, int w) {
  const Modulus n = f.modulus();
  if (!n.contains(x) || !n.contains(y) || !n.contains(z) || !n.contains(w))
    throw DomainError("argument outside Z(n)");
  auto s = [n](int a, int b) { return quandle_star(a, b, n); };
  Wide v = 0;
  v += f(x, z, w);
  v -= f(x, y, w);
  v += f(x, y, z);
  v -= f(s(x, y), z, w);
  v += f(s(x, z), s(y, z), w);
  v -= f(s(x, w), s(y, w), s(z, w));
  return detail::narrow(v);
}

/// Im(delta f) over all n^4 tuples, sorted and deduplicated.
inline std::vector<Int> image_delta(const CochainFn& f) {
  const int n = f.n();
  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) out.push_back(delta_f(f, x, y, z, w));
  sort_unique(out);
  return out;
}

inline constexpr std::size_t kDefaultLevelCap = 10'000'000;

/// {a + b : a in lhs, b in rhs} for sorted sets, as a sorted set.
///
/// Sums are produced one shift block at a time and merged into the
/// accumulator, so memory stays near the size of the result.
inline std::vector<Int> sumset(const std::vector<Int>& lhs, const std::vector<Int>& rhs,
                               std::size_t cap = kDefaultLevelCap) {
  std::vector<Int> acc;
  if (lhs.empty() || rhs.empty()) return acc;
  const std::size_t block = std::max<std::size_t>(1, (1u << 22) / lhs.size());
  std::vector<Int> chunk;
  std::vector<Int> merged;
  for (std::size_t start = 0; start < rhs.size(); start += block) {
    const std::size_t stop = std::min(rhs.size(), start + block);
    chunk.clear();
    for (std::size_t j = start; j < stop; ++j)
      for (Int a : lhs) chunk.push_back(detail::add(a, rhs[j]));
    sort_unique(chunk);
    merged.clear();
    merged.reserve(acc.size() + chunk.size());
    std::set_union(acc.begin(), acc.end(), chunk.begin(), chunk.end(), std::back_inserter(merged));
    acc.swap(merged);
    if (acc.size() > cap)
      throw CapExceeded("sumset has more than " + std::to_string(cap) + " elements");
  }
  return acc;
}

/// Im(delta f) and the levels Delta_0 = {0}, Delta_m = Delta_{m-1} + (+-Im).
/// Levels are added on demand by extend().
class DeltaReach {
 public:
  explicit DeltaReach(const CochainFn& f, std::size_t cap = kDefaultLevelCap)
      : n_(f.n()), canonical_(f.canonical()), cap_(cap) {
    im_delta_ = image_delta(f);
    signed_image_ = symmetric_closure(im_delta_);
    levels_.push_back({0});
  }

  DeltaReach(int n, std::string canonical, std::vector<Int> im_delta, std::vector<std::vector<Int>> levels,
             std::size_t cap = kDefaultLevelCap)
      : n_(n), canonical_(std::move(canonical)), cap_(cap), im_delta_(std::move(im_delta)), levels_(std::move(levels)) {
    signed_image_ = symmetric_closure(im_delta_);
    if (levels_.empty()) levels_.push_back({0});
  }

  /// Ensures levels 0..max_m exist; returns true if new levels were computed.
  bool extend(int max_m) {
    bool grew = false;
    while (static_cast<int>(levels_.size()) <= max_m) {
      levels_.push_back(sumset(levels_.back(), signed_image_, cap_));
      grew = true;
    }
    return grew;
  }

  const std::vector<Int>& level(int m) {
    extend(m);
    return levels_[m];
  }

  int n() const { return n_; }
  const std::string& canonical() const { return canonical_; }
  std::size_t cap() const { return cap_; }
  const std::vector<Int>& im_delta() const { return im_delta_; }
  const std::vector<Int>& signed_image() const { return signed_image_; }
  const std::vector<std::vector<Int>>& levels() const { return levels_; }
  int max_level() const { return static_cast<int>(levels_.size()) - 1; }

 private:
  int n_;
  std::string canonical_;
  std::size_t cap_;
  std::vector<Int> im_delta_;
  std::vector<Int> signed_image_;
  std::vector<std::vector<Int>> levels_;
};

inline DeltaReach delta_reach(const CochainFn& f, int max_m, std::size_t cap = kDefaultLevelCap) {
  if (max_m < 0) throw DomainError("level count must be non-negative");
  DeltaReach r(f, cap);
  r.extend(max_m);
  return r;
}

inline nlohmann::json to_json(const DeltaReach& r) {
  return {{"n", r.n()}, {"f", r.canonical()}, {"im_delta", r.im_delta()}, {"delta_levels", r.levels()}};
}

inline DeltaReach delta_reach_from_json(const nlohmann::json& j, std::size_t cap = kDefaultLevelCap) {
  try {
    return DeltaReach(j.at("n").get<int>(), j.at("f").get<std::string>(), j.at("im_delta").get<std::vector<Int>>(),
                      j.at("delta_levels").get<std::vector<std::vector<Int>>>(), cap);
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("delta cache schema: ") + e.what());
  }
}

/// DeltaReach objects keyed by (n, canonical f), optionally persisted as
/// JSON files in a directory. Thread-safe.
class DeltaCache {
 public:
  DeltaCache() = default;
  explicit DeltaCache(std::filesystem::path dir, std::size_t cap = kDefaultLevelCap) : dir_(std::move(dir)), cap_(cap) {}
  explicit DeltaCache(std::size_t cap) : cap_(cap) {}

  struct Stats {
    int hits = 0;    // levels served without computing
    int misses = 0;  // requests that computed at least one level or the image
  };

  /// Levels 0..max_m for f, computing and persisting only what is missing.
  DeltaReach& get(const CochainFn& f, int max_m) {
    std::lock_guard lock(mutex_);
    const Key key{f.n(), f.canonical()};
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      std::unique_ptr<DeltaReach> loaded = load(f);
      bool fresh = false;
      if (!loaded) {
        loaded = std::make_unique<DeltaReach>(f, cap_);
        fresh = true;
      }
      it = entries_.emplace(key, std::move(loaded)).first;
      const bool grew = it->second->extend(max_m);
      if (fresh || grew) {
        ++stats_.misses;
        store(*it->second);
      } else {
        ++stats_.hits;
      }
      return *it->second;
    }
    if (it->second->extend(max_m)) {
      ++stats_.misses;
      store(*it->second);
    } else {
      ++stats_.hits;
    }
    return *it->second;
  }

  std::optional<std::filesystem::path> file_for(const CochainFn& f) const {
    if (!dir_) return std::nullopt;
    return *dir_ / ("delta_n" + std::to_string(f.n()) + "_" + hex64(fnv1a64(f.canonical())) + ".json");
  }

  Stats stats() const {
    std::lock_guard lock(mutex_);
    return stats_;
  }

 private:
  using Key = std::pair<int, std::string>;

  std::unique_ptr<DeltaReach> load(const CochainFn& f) const {
    const auto path = file_for(f);
    if (!path || !std::filesystem::exists(*path)) return nullptr;
    std::ifstream in(*path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception&) {
      return nullptr;  // unreadable cache files are recomputed
    }
    auto r = std::make_unique<DeltaReach>(delta_reach_from_json(j, cap_));
    if (r->n() != f.n() || r->canonical() != f.canonical()) return nullptr;
    return r;
  }

  // Writes via a temporary file and rename; an exclusive lock file keeps
  // concurrent writers out. If the lock is held the write is skipped.
  void store(const DeltaReach& r) const {
    if (!dir_) return;
    std::filesystem::create_directories(*dir_);
    const auto path = *dir_ / ("delta_n" + std::to_string(r.n()) + "_" + hex64(fnv1a64(r.canonical())) + ".json");
    const auto lock_path = path.string() + ".lock";
    const int fd = ::open(lock_path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) return;
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << to_json(r).dump();
    }
    std::filesystem::rename(tmp, path);
    ::close(fd);
    std::filesystem::remove(lock_path);
  }

  std::optional<std::filesystem::path> dir_;
  std::size_t cap_ = kDefaultLevelCap;
  mutable std::mutex mutex_;
  std::map<Key, std::unique_ptr<DeltaReach>> entries_;
  Stats stats_;
};

inline nlohmann::json to_json(const CochainFn& f) {
  return {{"n", f.n()}, {"f", f.source()}, {"canonical", f.canonical()}};
}

}  // namespace tribound
