#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "flexion/ratfun.hpp"

namespace flexion {

struct ClassError : std::logic_error {
  using std::logic_error::logic_error;
};

template <class Lin>
struct Letter {
  Lin u, v;
  friend bool operator==(const Letter& a, const Letter& b) { return a.u == b.u && a.v == b.v; }
};
template <class Lin>
using Word = std::vector<Letter<Lin>>;

template <class Lin>
Word<Lin> slice(const Word<Lin>& w, std::size_t lo, std::size_t hi) {
  return Word<Lin>(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
}

template <class Lin>
Word<Lin> concat(Word<Lin> a, const Word<Lin>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// ----------------------------------------------------------------- backends

// Symbolic: letters are linear forms, values are rational functions.
struct Exact {
  using Lin = LinearForm;
  using Val = RatFun;
  using Leaf = RatFun;
  struct Ctx {};
  static constexpr bool kSymbolic = true;
  static constexpr const char* kName = "exact";

  static Val constant(const Ctx&, const Rational& q) { return RatFun(q); }
  static Leaf compile(const Ctx&, const RatFun& f) { return f; }
  static Val leaf(const Ctx&, const Leaf& f, const Word<Lin>&) { return f; }  // generic word only
  static Val substitute(const Val& x, const Word<Lin>& w);
  static bool is_zero(const Val& x) { return x.is_zero(); }
};

struct DualExact {
  using Lin = LinearForm;
  using Val = Dual<RatFun>;
  using Leaf = RatFun;
  struct Ctx {};
  static constexpr bool kSymbolic = true;
  static constexpr const char* kName = "exact";

  static Val constant(const Ctx&, const Rational& q) { return {RatFun(q), RatFun()}; }
  static Leaf compile(const Ctx&, const RatFun& f) { return f; }
  static Val leaf(const Ctx&, const Leaf& f, const Word<Lin>&) { return {f, RatFun()}; }
  static Val substitute(const Val& x, const Word<Lin>& w) {
    return {Exact::substitute(x.a, w), Exact::substitute(x.b, w)};
  }
  static bool is_zero(const Val& x) { return x.a.is_zero() && x.b.is_zero(); }
  static Val eps(const Val& x) { return {RatFun(), x.a}; }
};

// Prime field evaluation: letters and values are elements of Z/pZ.
struct Eval {
  using Lin = Fp;
  using Val = Fp;
  using Leaf = FpEvaluator;
  struct Ctx {
    std::uint64_t p;
  };
  static constexpr bool kSymbolic = false;
  static constexpr const char* kName = "eval";

  static Val constant(const Ctx& c, const Rational& q) { return Fp::from_rational(q, c.p); }
  static Leaf compile(const Ctx& c, const RatFun& f) { return FpEvaluator(f, c.p); }
  static Val leaf(const Ctx& c, const Leaf& f, const Word<Lin>& w);
  static bool is_zero(const Val& x) { return x.is_zero(); }
};

struct DualEval {
  using Lin = Fp;
  using Val = Dual<Fp>;
  using Leaf = FpEvaluator;
  using Ctx = Eval::Ctx;
  static constexpr bool kSymbolic = false;
  static constexpr const char* kName = "eval";

  static Val constant(const Ctx& c, const Rational& q) { return {Eval::constant(c, q), Fp(0, c.p)}; }
  static Leaf compile(const Ctx& c, const RatFun& f) { return FpEvaluator(f, c.p); }
  static Val leaf(const Ctx& c, const Leaf& f, const Word<Lin>& w) {
    return {Eval::leaf(c, f, w), Fp(0, c.p)};
  }
  static bool is_zero(const Val& x) { return x.a.is_zero() && x.b.is_zero(); }
  static Val eps(const Val& x) { return {Fp(0, x.a.modulus()), x.a}; }
};

// --------------------------------------------------------------------- nodes

std::size_t letter_hash(const LinearForm& x);
std::size_t letter_hash(const Fp& x);

template <class Lin>
struct WordHash {
  std::size_t operator()(const Word<Lin>& w) const {
    std::size_t h = w.size();
    for (const auto& l : w) {
      h = h * 0x9E3779B97F4A7C15ull + letter_hash(l.u);
      h = h * 0x9E3779B97F4A7C15ull + letter_hash(l.v);
    }
    return h;
  }
};

Word<LinearForm> generic_word(int r);
bool is_generic(const Word<LinearForm>& w);

// A bimould component table evaluated on demand and memoized per word.
// In the symbolic backends only the generic word (u1,v1)...(ur,vr) is ever
// computed; every other word is a linear substitution of it.
template <class T>
class Node {
 public:
  using Lin = typename T::Lin;
  using Val = typename T::Val;
  using W = Word<Lin>;
  using Fn = std::function<Val(const Node&, const W&)>;

  Node(int trunc, typename T::Ctx ctx, Fn fn) : trunc_(trunc), ctx_(ctx), fn_(std::move(fn)) {}

  int trunc() const { return trunc_; }
  const typename T::Ctx& ctx() const { return ctx_; }

  const Val& at(const W& w) const {
    if (static_cast<int>(w.size()) > trunc_)
      throw std::out_of_range("word longer than truncation " + std::to_string(trunc_));
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    if constexpr (T::kSymbolic) {
      if (!w.empty() && !is_generic(w)) {
        Val g = at(generic_word(static_cast<int>(w.size())));
        return memo_.emplace(w, T::substitute(g, w)).first->second;
      }
    }
    Val v = fn_(*this, w);
    return memo_.emplace(w, std::move(v)).first->second;
  }

  void clear() const { memo_.clear(); }

 private:
  int trunc_;
  typename T::Ctx ctx_;
  Fn fn_;
  mutable std::unordered_map<W, Val, WordHash<Lin>> memo_;
};

template <class T>
class Bimould {
 public:
  using Lin = typename T::Lin;
  using Val = typename T::Val;
  using W = Word<Lin>;
  using Ctx = typename T::Ctx;

  Bimould() = default;
  explicit Bimould(std::shared_ptr<const Node<T>> n) : node_(std::move(n)) {}
  Bimould(int trunc, Ctx ctx, typename Node<T>::Fn fn)
      : node_(std::make_shared<const Node<T>>(trunc, ctx, std::move(fn))) {}

  const Val& operator()(const W& w) const { return node_->at(w); }
  const Val& at0() const { return node_->at(W{}); }
  int trunc() const { return node_->trunc(); }
  const Ctx& ctx() const { return node_->ctx(); }
  Val constant(const Rational& q) const { return T::constant(ctx(), q); }
  bool valid() const { return static_cast<bool>(node_); }

 private:
  std::shared_ptr<const Node<T>> node_;
};

// Component r of a symbolic bimould as a function of u1..ur, v1..vr.
RatFun component(const Bimould<Exact>& a, int r);

enum class MuClass { GroupLike, LieLike, General };

template <class T>
MuClass mu_class(const Bimould<T>& a) {
  const auto& x = a.at0();
  if (T::is_zero(x)) return MuClass::LieLike;
  if (x == a.constant(1)) return MuClass::GroupLike;
  return MuClass::General;
}

template <class T>
void require_class(const Bimould<T>& a, MuClass c, const char* op) {
  if (mu_class(a) != c)
    throw ClassError(std::string(op) + ": argument must have A(empty) = " + (c == MuClass::GroupLike ? "1" : "0"));
}

template <class T>
void require_same_trunc(const Bimould<T>& a, const Bimould<T>& b) {
  if (a.trunc() != b.trunc()) throw std::invalid_argument("bimoulds have different truncations");
}

// ----------------------------------------------------------- flexion markers

enum class Mark { UpperLeft, UpperRight, LowerLeft, LowerRight };

// UpperLeft/LowerLeft: (context, target) = (alpha, beta), result is beta marked.
// UpperRight/LowerRight: (target, context) = (alpha, beta), result is alpha marked.
template <class Lin>
Word<Lin> flexion_mark(Mark side, const Word<Lin>& first, const Word<Lin>& second) {
  const bool left = side == Mark::UpperLeft || side == Mark::LowerLeft;
  const Word<Lin>& ctx = left ? first : second;
  Word<Lin> t = left ? second : first;
  if (t.empty() || ctx.empty()) return t;
  switch (side) {
    case Mark::UpperLeft:
      for (const auto& l : ctx) t.front().u += l.u;
      break;
    case Mark::UpperRight:
      for (const auto& l : ctx) t.back().u += l.u;
      break;
    case Mark::LowerLeft:
      for (auto& l : t) l.v -= ctx.back().v;
      break;
    case Mark::LowerRight:
      for (auto& l : t) l.v -= ctx.front().v;
      break;
  }
  return t;
}

// ---------------------------------------------------------------- operations

template <class T>
Bimould<T> from_components(const typename T::Ctx& ctx, const std::vector<RatFun>& comps);
template <class T>
Bimould<T> constant_bimould(const typename T::Ctx& ctx, int trunc, const Rational& c);
template <class T>
Bimould<T> one(const typename T::Ctx& ctx, int trunc) {
  return constant_bimould<T>(ctx, trunc, Rational(1));
}

template <class T>
Bimould<T> operator+(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> operator-(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> operator-(const Bimould<T>& a);
template <class T>
Bimould<T> operator*(const Rational& q, const Bimould<T>& a);

template <class T>
Bimould<T> neg(const Bimould<T>& a);
template <class T>
Bimould<T> anti(const Bimould<T>& a);
template <class T>
Bimould<T> pari(const Bimould<T>& a);
template <class T>
Bimould<T> pus(const Bimould<T>& a);
template <class T>
Bimould<T> push(const Bimould<T>& a);
template <class T>
Bimould<T> mantar(const Bimould<T>& a);
template <class T>
Bimould<T> swap(const Bimould<T>& a);
template <class T>
Bimould<T> gantar(const Bimould<T>& a);

template <class T>
Bimould<T> mu(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> lu(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> invmu(const Bimould<T>& a);
template <class T>
Bimould<T> leng(const Bimould<T>& a, int r);
template <class T>
Bimould<T> der(const Bimould<T>& a);
template <class T>
Bimould<T> gepar(const Bimould<T>& a);
// Same components, lower truncation.
template <class T>
Bimould<T> truncate(const Bimould<T>& a, int trunc);

// A + eps*B style lift: the eps-part of the result is the value part of a.
template <class T>
Bimould<T> eps_times(const Bimould<T>& a);

std::vector<RatFun> random_components(std::uint64_t seed, int trunc, MuClass cls, int degree_bound);
template <class T>
Bimould<T> random_bimould(const typename T::Ctx& ctx, std::uint64_t seed, int trunc, MuClass cls,
                          int degree_bound) {
  return from_components<T>(ctx, random_components(seed, trunc, cls, degree_bound));
}

}  // namespace flexion
