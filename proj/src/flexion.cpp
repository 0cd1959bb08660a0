#include "flexion/flexion.hpp"

#include <functional>

namespace flexion {

namespace {

template <class T>
using WordOf = Word<typename T::Lin>;

template <class Lin>
Lin sum_u(const Word<Lin>& w, std::size_t lo, std::size_t hi) {
  Lin s = w[lo].u;
  for (std::size_t i = lo + 1; i < hi; ++i) s += w[i].u;
  return s;
}

// Lower-marked pieces shared by both gaxit forms:
//   l(lo, c)  = A1(w[lo..c) with every v shifted by -v of w[c])
//   rt(c, hi) = A2(w(c..hi) with every v shifted by -v of w[c])
template <class T>
struct MarkedTables {
  using Val = typename T::Val;
  std::size_t r;
  std::vector<Val> left, right;

  template <class F1, class F2>
  MarkedTables(const WordOf<T>& w, const F1& a1, const F2& a2) : r(w.size()), left(r * r), right(r * (r + 1)) {
    for (std::size_t c = 0; c < r; ++c) {
      for (std::size_t lo = 0; lo <= c; ++lo) {
        auto x = slice(w, lo, c);
        for (auto& l : x) l.v -= w[c].v;
        left[lo * r + c] = a1(x);
      }
      for (std::size_t hi = c + 1; hi <= r; ++hi) {
        auto x = slice(w, c + 1, hi);
        for (auto& l : x) l.v -= w[c].v;
        right[c * (r + 1) + hi] = a2(x);
      }
    }
  }
  const Val& l(std::size_t lo, std::size_t c) const { return left[lo * r + c]; }
  const Val& rt(std::size_t c, std::size_t hi) const { return right[c * (r + 1) + hi]; }
};

// gaxit(A1, A2)(B) at a nonempty word. With skip_top the term B(w) itself
// (all centers / a single full block) is left out.
template <class T, class F1, class F2, class FB>
typename T::Val gaxit_value(const WordOf<T>& w, const F1& a1, const F2& a2, const FB& b, GaxitForm form,
                            bool skip_top, const typename T::Ctx& ctx) {
  using Val = typename T::Val;
  const std::size_t r = w.size();
  MarkedTables<T> tab(w, a1, a2);
  Val total = T::constant(ctx, 0);
  WordOf<T> bw;
  bw.reserve(r);

  if (form == GaxitForm::Sigma) {
    // Consecutive blocks A_j w_c C_j covering w, one center per block.
    std::function<void(std::size_t, const Val&)> rec = [&](std::size_t lo, const Val& weight) {
      if (lo == r) {
        if (!(skip_top && bw.size() == r)) total += b(bw) * weight;
        return;
      }
      for (std::size_t hi = lo + 1; hi <= r; ++hi) {
        auto u = sum_u(w, lo, hi);
        for (std::size_t c = lo; c < hi; ++c) {
          Val wt = weight * tab.l(lo, c) * tab.rt(c, hi);
          if (T::is_zero(wt)) continue;
          bw.push_back({u, w[c].v});
          rec(hi, wt);
          bw.pop_back();
        }
      }
    };
    rec(0, T::constant(ctx, 1));
    return total;
  }

  // Blocks (a_i; b_i; c_i) with b_i nonempty and c_i a_{i+1} nonempty.
  std::function<void(std::size_t, bool, const Val&)> rec = [&](std::size_t pos, bool need_a, const Val& weight) {
    for (std::size_t blo = pos + (need_a ? 1 : 0); blo < r; ++blo) {
      Val wa = weight * tab.l(pos, blo);
      if (T::is_zero(wa)) continue;
      for (std::size_t bhi = blo + 1; bhi <= r; ++bhi) {
        WordOf<T> mid = slice(w, blo, bhi);
        if (blo > pos) mid.front().u += sum_u(w, pos, blo);
        for (std::size_t chi = bhi; chi <= r; ++chi) {
          Val wt = wa * tab.rt(bhi - 1, chi);
          if (T::is_zero(wt)) continue;
          WordOf<T> piece = mid;
          if (chi > bhi) piece.back().u += sum_u(w, bhi, chi);
          bw.insert(bw.end(), piece.begin(), piece.end());
          if (chi == r) {
            if (!(skip_top && bw.size() == r)) total += b(bw) * wt;
          } else {
            rec(chi, chi == bhi, wt);
          }
          bw.resize(bw.size() - piece.size());
        }
      }
    }
  };
  rec(0, false, T::constant(ctx, 1));
  return total;
}

template <class T>
auto evaluator(const Bimould<T>& a) {
  return [a](const WordOf<T>& x) -> const typename T::Val& { return a(x); };
}

template <class T>
Bimould<T> trivial_like(const Bimould<T>& a) {
  return one<T>(a.ctx(), a.trunc());
}

}  // namespace

// --------------------------------------------------------- derivation family

template <class T>
Bimould<T> amit(const Bimould<T>& a, const Bimould<T>& b) {
  require_class(a, MuClass::LieLike, "amit");
  require_same_trunc(a, b);
  return Bimould<T>(a.trunc(), a.ctx(), [a, b](const Node<T>&, const WordOf<T>& w) {
    const std::size_t r = w.size();
    auto s = a.constant(0);
    // w = x y z with y, z nonempty: B(x (y-marked z)) A(y marked by z)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) {
        auto y = slice(w, i, j);
        auto z = slice(w, j, r);
        auto bx = concat(slice(w, 0, i), flexion_mark(Mark::UpperLeft, y, z));
        s += b(bx) * a(flexion_mark(Mark::LowerRight, y, z));
      }
    return s;
  });
}

template <class T>
Bimould<T> anit(const Bimould<T>& a, const Bimould<T>& b) {
  require_class(a, MuClass::LieLike, "anit");
  require_same_trunc(a, b);
  return Bimould<T>(a.trunc(), a.ctx(), [a, b](const Node<T>&, const WordOf<T>& w) {
    const std::size_t r = w.size();
    auto s = a.constant(0);
    // w = x y z with x, y nonempty: B((x marked by y) z) A(y marked by x)
    for (std::size_t i = 1; i < r; ++i)
      for (std::size_t j = i + 1; j <= r; ++j) {
        auto x = slice(w, 0, i);
        auto y = slice(w, i, j);
        auto bx = concat(flexion_mark(Mark::UpperRight, x, y), slice(w, j, r));
        s += b(bx) * a(flexion_mark(Mark::LowerLeft, x, y));
      }
    return s;
  });
}

template <class T>
Bimould<T> axit(const Bimould<T>& a, const Bimould<T>& a2, const Bimould<T>& b) {
  return amit(a, b) + anit(a2, b);
}

template <class T>
Bimould<T> arit(const Bimould<T>& a, const Bimould<T>& b) {
  return amit(a, b) - anit(a, b);
}

template <class T>
Bimould<T> irat(const Bimould<T>& a, const Bimould<T>& b) {
  return axit(a, -push(a), b);
}

template <class T>
Bimould<T> iwat(const Bimould<T>& a, const Bimould<T>& b) {
  return axit(a, anti(a), b);
}

template <class T>
Bimould<T> preari(const Bimould<T>& a, const Bimould<T>& b) {
  return arit(b, a) + mu(a, b);
}

template <class T>
Bimould<T> ari(const Bimould<T>& a, const Bimould<T>& b) {
  require_class(a, MuClass::LieLike, "ari");
  return preari(a, b) - preari(b, a);
}

// -------------------------------------------------------------- group family

template <class T>
Bimould<T> gaxit(const Bimould<T>& a1, const Bimould<T>& a2, const Bimould<T>& b, GaxitForm form) {
  require_class(a1, MuClass::GroupLike, "gaxit");
  require_class(a2, MuClass::GroupLike, "gaxit");
  require_same_trunc(a1, a2);
  require_same_trunc(a1, b);
  return Bimould<T>(b.trunc(), b.ctx(), [a1, a2, b, form](const Node<T>& self, const WordOf<T>& w) {
    if (w.empty()) return b.at0();
    return gaxit_value<T>(w, evaluator(a1), evaluator(a2), evaluator(b), form, false, self.ctx());
  });
}

template <class T>
OpPair<T> gaxi(const OpPair<T>& pa, const OpPair<T>& pb) {
  return {mu(gaxit(pb, pa.first), pb.first), mu(pb.second, gaxit(pb, pa.second))};
}

template <class T>
Bimould<T> gamit(const Bimould<T>& a, const Bimould<T>& b) {
  return gaxit(a, trivial_like(a), b);
}

template <class T>
Bimould<T> ganit(const Bimould<T>& a, const Bimould<T>& b) {
  return gaxit(trivial_like(a), a, b);
}

template <class T>
Bimould<T> garit(const Bimould<T>& a, const Bimould<T>& b) {
  return gaxit(a, invmu(a), b);
}

template <class T>
Bimould<T> girat(const Bimould<T>& a, const Bimould<T>& b) {
  return gaxit(a, push(swap(invmu(swap(a)))), b);
}

template <class T>
Bimould<T> giwat(const Bimould<T>& a, const Bimould<T>& b) {
  return gaxit(a, anti(a), b);
}

template <class T>
Bimould<T> gari(const Bimould<T>& a, const Bimould<T>& b) {
  return mu(garit(b, a), b);
}

template <class T>
Bimould<T> gami(const Bimould<T>& a, const Bimould<T>& b) {
  return mu(gamit(b, a), b);
}

template <class T>
Bimould<T> gani(const Bimould<T>& a, const Bimould<T>& b) {
  return mu(b, ganit(b, a));
}

namespace {

// Solves P(X, A) = 1 length by length, where P(X, A) = mu(G, A) (right = true)
// or mu(A, G) (right = false) with G = gaxit(A1, A2)(X). The top-length part of
// P(X, A)(w) is X(w), so X(w) = -(everything else).
template <class T>
Bimould<T> group_inverse(const Bimould<T>& a, const Bimould<T>& a1, const Bimould<T>& a2, bool right) {
  using Val = typename T::Val;
  using Memo = std::unordered_map<WordOf<T>, Val, WordHash<typename T::Lin>>;
  auto memo = std::make_shared<Memo>();
  return Bimould<T>(a.trunc(), a.ctx(), [a, a1, a2, right, memo](const Node<T>& self, const WordOf<T>& w) {
    if (w.empty()) return a.constant(1);
    auto x = [&self](const WordOf<T>& v) -> const Val& { return self.at(v); };
    auto g = [&](const WordOf<T>& v) -> Val {
      if (v.empty()) return self.at(v);
      if (auto it = memo->find(v); it != memo->end()) return it->second;
      Val out = gaxit_value<T>(v, evaluator(a1), evaluator(a2), x, GaxitForm::Sigma, false, self.ctx());
      return memo->emplace(v, out).first->second;
    };
    const std::size_t r = w.size();
    Val s = gaxit_value<T>(w, evaluator(a1), evaluator(a2), x, GaxitForm::Sigma, true, self.ctx());
    if (right) {
      for (std::size_t i = 0; i < r; ++i) s += g(slice(w, 0, i)) * a(slice(w, i, r));
    } else {
      for (std::size_t i = 1; i <= r; ++i) s += a(slice(w, 0, i)) * g(slice(w, i, r));
    }
    return -s;
  });
}

}  // namespace

template <class T>
Bimould<T> invgari(const Bimould<T>& a) {
  require_class(a, MuClass::GroupLike, "invgari");
  return group_inverse(a, a, invmu(a), true);
}

template <class T>
Bimould<T> invgami(const Bimould<T>& a) {
  require_class(a, MuClass::GroupLike, "invgami");
  return group_inverse(a, a, trivial_like(a), true);
}

template <class T>
Bimould<T> invgani(const Bimould<T>& a) {
  require_class(a, MuClass::GroupLike, "invgani");
  return group_inverse(a, trivial_like(a), a, false);
}

template <class T>
Bimould<T> expari(const Bimould<T>& a) {
  require_class(a, MuClass::LieLike, "expari");
  Bimould<T> sum = trivial_like(a);
  Bimould<T> p = a;
  mpz_class fact = 1;
  for (int n = 1; n <= a.trunc(); ++n) {
    fact *= n;
    if (n > 1) p = preari(p, a);
    sum = sum + Rational(mpz_class(1), fact) * p;
  }
  return sum;
}

// ------------------------------------------------------------- combinators

template <class T>
Bimould<T> fragari(const Bimould<T>& a, const Bimould<T>& b) {
  return gari(a, invgari(b));
}

template <class T>
Bimould<T> gira(const Bimould<T>& a, const Bimould<T>& b) {
  return swap(gari(swap(a), swap(b)));
}

template <class T>
Bimould<T> invgira(const Bimould<T>& a) {
  return swap(invgari(swap(a)));
}

template <class T>
Bimould<T> fragira(const Bimould<T>& a, const Bimould<T>& b) {
  return swap(fragari(swap(a), swap(b)));
}

template <class T>
Bimould<T> ras(const Bimould<T>& b) {
  return invgari(swap(invgari(swap(b))));
}

template <class T>
Bimould<T> rash(const Bimould<T>& b) {
  return mu(push(swap(invmu(swap(b)))), b);
}

template <class T>
Bimould<T> crash(const Bimould<T>& b) {
  auto ib = invgari(swap(b));
  return mu(push(swap(invmu(ib))), swap(ib));
}

template <class T>
Bimould<T> slash(const Bimould<T>& a) {
  return gari(neg(a), invgari(a));
}

#define FLEXION_INSTANTIATE(T)                                                                  \
  template Bimould<T> amit(const Bimould<T>&, const Bimould<T>&);                              \
  template Bimould<T> anit(const Bimould<T>&, const Bimould<T>&);                              \
  template Bimould<T> axit(const Bimould<T>&, const Bimould<T>&, const Bimould<T>&);           \
  template Bimould<T> arit(const Bimould<T>&, const Bimould<T>&);                              \
  template Bimould<T> irat(const Bimould<T>&, const Bimould<T>&);                              \
  template Bimould<T> iwat(const Bimould<T>&, const Bimould<T>&);                              \
  template Bimould<T> preari(const Bimould<T>&, const Bimould<T>&);                            \
  template Bimould<T> ari(const Bimould<T>&, const Bimould<T>&);                               \
  template Bimould<T> gaxit(const Bimould<T>&, const Bimould<T>&, const Bimould<T>&, GaxitForm); \
  template OpPair<T> gaxi(const OpPair<T>&, const OpPair<T>&);                                 \
  template Bimould<T> gamit(const Bimould<T>&, const Bimould<T>&);                             \
  template Bimould<T> ganit(const Bimould<T>&, const Bimould<T>&);                             \
  template Bimould<T> garit(const Bimould<T>&, const Bimould<T>&);                             \
  template Bimould<T> girat(const Bimould<T>&, const Bimould<T>&);                             \
  template Bimould<T> giwat(const Bimould<T>&, const Bimould<T>&);                             \
  template Bimould<T> gari(const Bimould<T>&, const Bimould<T>&);                              \
  template Bimould<T> gami(const Bimould<T>&, const Bimould<T>&);                              \
  template Bimould<T> gani(const Bimould<T>&, const Bimould<T>&);                              \
  template Bimould<T> invgari(const Bimould<T>&);                                              \
  template Bimould<T> invgami(const Bimould<T>&);                                              \
  template Bimould<T> invgani(const Bimould<T>&);                                              \
  template Bimould<T> expari(const Bimould<T>&);                                               \
  template Bimould<T> fragari(const Bimould<T>&, const Bimould<T>&);                           \
  template Bimould<T> gira(const Bimould<T>&, const Bimould<T>&);                              \
  template Bimould<T> invgira(const Bimould<T>&);                                              \
  template Bimould<T> fragira(const Bimould<T>&, const Bimould<T>&);                           \
  template Bimould<T> ras(const Bimould<T>&);                                                  \
  template Bimould<T> rash(const Bimould<T>&);                                                 \
  template Bimould<T> crash(const Bimould<T>&);                                                \
  template Bimould<T> slash(const Bimould<T>&);

FLEXION_INSTANTIATE(Exact)
FLEXION_INSTANTIATE(DualExact)
FLEXION_INSTANTIATE(Eval)
FLEXION_INSTANTIATE(DualEval)

}  // namespace flexion
