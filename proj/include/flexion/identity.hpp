#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "flexion/bimould.hpp"

namespace flexion {

struct ResampleExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxResamples = 64;

// SplitMix64 step; used to derive independent per-point seeds.
inline std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t point_seed(std::uint64_t seed, int r, int index, int attempt) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  for (std::uint64_t x : {std::uint64_t(r), std::uint64_t(index), std::uint64_t(attempt)}) {
    s = h ^ x;
    h = splitmix64(s);
  }
  return h;
}

// Uniform element of [0, p) from raw mt19937_64 output by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t p) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % p);
  std::uint64_t x;
  do x = g();
  while (x >= limit);
  return x % p;
}

// 2r coordinates (u1, v1, ..., ur, vr) of sample point (r, index, attempt).
inline std::vector<std::uint64_t> sample_point(std::uint64_t seed, int r, int index, int attempt, std::uint64_t p) {
  std::mt19937_64 g(point_seed(seed, r, index, attempt));
  std::vector<std::uint64_t> pt(2 * static_cast<std::size_t>(r));
  for (auto& x : pt) x = uniform_below(g, p);
  return pt;
}

inline Word<Fp> word_at(const std::vector<std::uint64_t>& pt, std::uint64_t p) {
  Word<Fp> w;
  for (std::size_t i = 0; i + 1 < pt.size(); i += 2) w.push_back({Fp(pt[i], p), Fp(pt[i + 1], p)});
  return w;
}

inline std::string value_string(const RatFun& x) { return x.canonical_string(); }
inline std::string value_string(const Fp& x) { return std::to_string(x.value()); }
template <class V>
std::string value_string(const Dual<V>& x) {
  return "(" + value_string(x.a) + ") + (" + value_string(x.b) + ")*eps";
}

struct Witness {
  int r = 0;
  std::vector<std::uint64_t> point;  // empty for the exact backend
  std::string lhs, rhs;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Strategy {
  int points = 16;
  std::uint64_t seed = 1;
  // When set, only the focus length is tested, and evaluation backends use
  // only the focus point. Used to replay witnesses.
  std::optional<Witness> focus;
};

struct LengthResult {
  int r;
  int evaluated;
  int mismatches;
};

struct IdentityResult {
  bool pass = true;
  std::optional<Witness> witness;
  std::vector<LengthResult> per_length;

  void merge(const IdentityResult& o) {
    if (!o.pass && pass) witness = o.witness;
    pass = pass && o.pass;
    for (const auto& l : o.per_length) {
      bool found = false;
      for (auto& m : per_length)
        if (m.r == l.r) {
          m.evaluated += l.evaluated;
          m.mismatches += l.mismatches;
          found = true;
        }
      if (!found) per_length.push_back(l);
    }
  }
};

// For each length r in [lo, hi], asks `pairs` for (lhs, rhs) values at a
// sample word of length r and compares them. Symbolic backends use the
// generic word once; evaluation backends use `points` seeded samples,
// resampling on poles.
template <class T>
IdentityResult test_words(int lo, int hi, const typename T::Ctx& ctx, const Strategy& s,
                          const std::function<std::vector<std::pair<typename T::Val, typename T::Val>>(
                              const Word<typename T::Lin>&)>& pairs) {
  IdentityResult res;
  for (int r = lo; r <= hi; ++r) {
    if (s.focus && s.focus->r != r) continue;
    LengthResult lr{r, 0, 0};
    auto record = [&](const auto& vals, const std::vector<std::uint64_t>& pt) {
      for (const auto& [a, b] : vals) {
        ++lr.evaluated;
        if (a == b) continue;
        ++lr.mismatches;
        if (res.pass) res.witness = Witness{r, pt, value_string(a), value_string(b)};
        res.pass = false;
      }
    };
    if constexpr (T::kSymbolic) {
      (void)ctx;
      (void)s;
      record(pairs(generic_word(r)), {});
    } else if (s.focus) {
      try {
        record(pairs(word_at(s.focus->point, ctx.p)), s.focus->point);
      } catch (const DivisionByZero&) {
        // a pole here means this identity was resampled away from the point
      }
    } else {
      const int n = r == 0 ? 1 : s.points;
      for (int k = 0; k < n; ++k) {
        int attempt = 0;
        while (true) {
          auto pt = sample_point(s.seed, r, k, attempt, ctx.p);
          try {
            auto vals = pairs(word_at(pt, ctx.p));
            record(vals, pt);
            break;
          } catch (const DivisionByZero&) {
            if (++attempt > kMaxResamples)
              throw ResampleExhausted("no pole-free sample point at length " + std::to_string(r));
          }
        }
      }
    }
    res.per_length.push_back(lr);
  }
  return res;
}

template <class T>
IdentityResult identity_test(const Bimould<T>& lhs, const Bimould<T>& rhs, const Strategy& s = {}, int lo = 0) {
  require_same_trunc(lhs, rhs);
  using V = typename T::Val;
  return test_words<T>(lo, lhs.trunc(), lhs.ctx(), s, [&](const Word<typename T::Lin>& w) {
    return std::vector<std::pair<V, V>>{{lhs(w), rhs(w)}};
  });
}

// Replays an evaluation witness: true iff the mismatch reproduces.
template <class T>
bool replay(const Bimould<T>& lhs, const Bimould<T>& rhs, const Witness& w) {
  static_assert(!T::kSymbolic);
  auto word = word_at(w.point, lhs.ctx().p);
  return value_string(lhs(word)) == w.lhs && value_string(rhs(word)) == w.rhs && !(lhs(word) == rhs(word));
}

// ------------------------------------------------------------------ shuffles

using IndexWord = std::vector<int>;

// All shuffles of a and b, with multiplicity.
std::vector<IndexWord> shuffle(const IndexWord& a, const IndexWord& b);

// A(x sh y) = A(x) A(y) (symmetral) or = 0 (alternal) for all nonempty x, y
// with |x| + |y| <= max_total.
template <class T>
IdentityResult shuffle_test(const Bimould<T>& a, bool symmetral, int max_total, const Strategy& s = {}) {
  using V = typename T::Val;
  using W = Word<typename T::Lin>;
  return test_words<T>(2, max_total, a.ctx(), s, [&](const W& w) {
    std::vector<std::pair<V, V>> out;
    const int n = static_cast<int>(w.size());
    for (int p = 1; p < n; ++p) {
      IndexWord x, y;
      for (int i = 0; i < p; ++i) x.push_back(i);
      for (int i = p; i < n; ++i) y.push_back(i);
      V lhs = a.constant(0);
      for (const auto& sh : shuffle(x, y)) {
        W word;
        for (int i : sh) word.push_back(w[i]);
        lhs += a(word);
      }
      V rhs = symmetral ? a(slice(w, 0, p)) * a(slice(w, p, n)) : a.constant(0);
      out.emplace_back(std::move(lhs), std::move(rhs));
    }
    return out;
  });
}

template <class T>
IdentityResult is_symmetral(const Bimould<T>& a, int max_total, const Strategy& s = {}) {
  return shuffle_test(a, true, max_total, s);
}
template <class T>
IdentityResult is_alternal(const Bimould<T>& a, int max_total, const Strategy& s = {}) {
  return shuffle_test(a, false, max_total, s);
}

// (id + push + ... + push^r)(A) = 0 at every length 1 <= r <= trunc.
template <class T>
IdentityResult is_push_neutral(const Bimould<T>& a, const Strategy& s = {}) {
  using V = typename T::Val;
  std::vector<Bimould<T>> powers{a};
  for (int i = 1; i <= a.trunc(); ++i) powers.push_back(push(powers.back()));
  return test_words<T>(1, a.trunc(), a.ctx(), s, [&](const Word<typename T::Lin>& w) {
    V sum = a.constant(0);
    for (std::size_t i = 0; i <= w.size(); ++i) sum += powers[i](w);
    return std::vector<std::pair<V, V>>{{sum, a.constant(0)}};
  });
}

}  // namespace flexion
