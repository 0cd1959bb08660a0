#include "flexion/bimould.hpp"

#include <algorithm>
#include <random>

namespace flexion {

RatFun Exact::substitute(const Val& x, const Word<Lin>& w) {
  std::vector<LinearForm> args(2 * w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    args[2 * i] = w[i].u;
    args[2 * i + 1] = w[i].v;
  }
  return x.substitute_linear(args);
}

Fp Eval::leaf(const Ctx&, const Leaf& f, const Word<Lin>& w) {
  Fp pt[kMaxVars];
  for (std::size_t i = 0; i < w.size(); ++i) {
    pt[2 * i] = w[i].u;
    pt[2 * i + 1] = w[i].v;
  }
  return f(pt);
}

std::size_t letter_hash(const LinearForm& x) { return x.hash(); }
std::size_t letter_hash(const Fp& x) { return static_cast<std::size_t>(x.value() * 0xBF58476D1CE4E5B9ull); }

Word<LinearForm> generic_word(int r) {
  Word<LinearForm> w;
  for (int i = 1; i <= r; ++i) w.push_back({LinearForm::u(i), LinearForm::v(i)});
  return w;
}

bool is_generic(const Word<LinearForm>& w) {
  static const Word<LinearForm> full = generic_word(kMaxLength);
  if (w.size() > full.size()) return false;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!(w[i] == full[i])) return false;
  return true;
}

RatFun component(const Bimould<Exact>& a, int r) { return a(generic_word(r)); }

namespace {

template <class T>
typename T::Val zero_of(const Bimould<T>& a) {
  return a.constant(0);
}

template <class Lin>
Lin sum_u(const Word<Lin>& w, std::size_t lo, std::size_t hi) {
  Lin s = w[lo].u;
  for (std::size_t i = lo + 1; i < hi; ++i) s += w[i].u;
  return s;
}

// Bimould obtained by re-indexing the argument word and multiplying by a sign.
template <class T, class F>
Bimould<T> reindexed(const Bimould<T>& a, F f) {
  return Bimould<T>(a.trunc(), a.ctx(), [a, f](const Node<T>&, const Word<typename T::Lin>& w) {
    return f(a, w);
  });
}

}  // namespace

template <class T>
Bimould<T> from_components(const typename T::Ctx& ctx, const std::vector<RatFun>& comps) {
  if (comps.empty()) throw std::invalid_argument("bimould needs at least component 0");
  if (!comps[0].primitive_numerator().is_constant() || !comps[0].denominator_factors().empty())
    throw std::invalid_argument("component 0 must be a scalar");
  const int trunc = static_cast<int>(comps.size()) - 1;
  if (trunc > kMaxLength) throw std::invalid_argument("truncation exceeds maximum length");
  for (int r = 1; r <= trunc; ++r)
    if (comps[r].max_var() >= 2 * r)
      throw std::invalid_argument("component " + std::to_string(r) + " uses variables beyond length " +
                                  std::to_string(r));
  std::vector<typename T::Leaf> leaves;
  for (const auto& c : comps) leaves.push_back(T::compile(ctx, c));
  auto c0 = T::constant(ctx, comps[0].scale());
  auto shared = std::make_shared<std::vector<typename T::Leaf>>(std::move(leaves));
  return Bimould<T>(trunc, ctx, [shared, c0](const Node<T>& self, const Word<typename T::Lin>& w) {
    if (w.empty()) return c0;
    return T::leaf(self.ctx(), (*shared)[w.size()], w);
  });
}

template <class T>
Bimould<T> constant_bimould(const typename T::Ctx& ctx, int trunc, const Rational& c) {
  auto c0 = T::constant(ctx, c);
  auto z = T::constant(ctx, 0);
  return Bimould<T>(trunc, ctx, [c0, z](const Node<T>&, const Word<typename T::Lin>& w) {
    return w.empty() ? c0 : z;
  });
}

template <class T>
Bimould<T> operator+(const Bimould<T>& a, const Bimould<T>& b) {
  require_same_trunc(a, b);
  return Bimould<T>(a.trunc(), a.ctx(), [a, b](const Node<T>&, const auto& w) { return a(w) + b(w); });
}

template <class T>
Bimould<T> operator-(const Bimould<T>& a, const Bimould<T>& b) {
  require_same_trunc(a, b);
  return Bimould<T>(a.trunc(), a.ctx(), [a, b](const Node<T>&, const auto& w) { return a(w) - b(w); });
}

template <class T>
Bimould<T> operator-(const Bimould<T>& a) {
  return Bimould<T>(a.trunc(), a.ctx(), [a](const Node<T>&, const auto& w) { return -a(w); });
}

template <class T>
Bimould<T> operator*(const Rational& q, const Bimould<T>& a) {
  auto c = a.constant(q);
  return Bimould<T>(a.trunc(), a.ctx(), [a, c](const Node<T>&, const auto& w) { return c * a(w); });
}

template <class T>
Bimould<T> neg(const Bimould<T>& a) {
  return reindexed(a, [](const Bimould<T>& x, auto w) {
    for (auto& l : w) {
      l.u = -l.u;
      l.v = -l.v;
    }
    return x(w);
  });
}

template <class T>
Bimould<T> anti(const Bimould<T>& a) {
  return reindexed(a, [](const Bimould<T>& x, auto w) {
    std::reverse(w.begin(), w.end());
    return x(w);
  });
}

template <class T>
Bimould<T> pari(const Bimould<T>& a) {
  return reindexed(a, [](const Bimould<T>& x, const auto& w) {
    return w.size() % 2 ? -x(w) : x(w);
  });
}

template <class T>
Bimould<T> pus(const Bimould<T>& a) {
  return reindexed(a, [](const Bimould<T>& x, auto w) {
    if (!w.empty()) std::rotate(w.rbegin(), w.rbegin() + 1, w.rend());
    return x(w);
  });
}

template <class T>
Bimould<T> push(const Bimould<T>& a) {
  return reindexed(a, [](const Bimould<T>& x, const auto& w) {
    const std::size_t r = w.size();
    if (r == 0) return x(w);
    auto out = w;
    out[0] = {-sum_u(w, 0, r), -w[r - 1].v};
    for (std::size_t j = 1; j < r; ++j) out[j] = {w[j - 1].u, w[j - 1].v - w[r - 1].v};
    return x(out);
  });
}

template <class T>
Bimould<T> mantar(const Bimould<T>& a) {
  return reindexed(a, [](const Bimould<T>& x, auto w) {
    std::reverse(w.begin(), w.end());
    return w.size() % 2 ? x(w) : -x(w);
  });
}

template <class T>
Bimould<T> swap(const Bimould<T>& a) {
  return reindexed(a, [](const Bimould<T>& x, const auto& w) {
    const std::size_t r = w.size();
    auto out = w;
    auto acc = r ? w[0].u : typename T::Lin{};
    // new v_j = u_1 + ... + u_{r+1-j}; fill from the back
    for (std::size_t j = r; j-- > 0;) {
      out[j].v = acc;
      if (r - j < r) acc += w[r - j].u;
    }
    for (std::size_t j = 0; j < r; ++j) {
      out[j].u = w[r - 1 - j].v;
      if (j > 0) out[j].u -= w[r - j].v;
    }
    return x(out);
  });
}

template <class T>
Bimould<T> mu(const Bimould<T>& a, const Bimould<T>& b) {
  require_same_trunc(a, b);
  return Bimould<T>(a.trunc(), a.ctx(), [a, b](const Node<T>&, const auto& w) {
    auto s = zero_of(a);
    for (std::size_t i = 0; i <= w.size(); ++i) s += a(slice(w, 0, i)) * b(slice(w, i, w.size()));
    return s;
  });
}

template <class T>
Bimould<T> lu(const Bimould<T>& a, const Bimould<T>& b) {
  return mu(a, b) - mu(b, a);
}

template <class T>
Bimould<T> invmu(const Bimould<T>& a) {
  require_class(a, MuClass::GroupLike, "invmu");
  return Bimould<T>(a.trunc(), a.ctx(), [a](const Node<T>& self, const auto& w) {
    if (w.empty()) return a.constant(1);
    auto s = zero_of(a);
    for (std::size_t k = 1; k <= w.size(); ++k) s -= a(slice(w, 0, k)) * self.at(slice(w, k, w.size()));
    return s;
  });
}

template <class T>
Bimould<T> gantar(const Bimould<T>& a) {
  require_class(a, MuClass::GroupLike, "gantar");
  return invmu(pari(anti(a)));
}

template <class T>
Bimould<T> leng(const Bimould<T>& a, int r) {
  if (r < 0 || r > a.trunc()) throw std::out_of_range("leng: length outside truncation");
  auto z = zero_of(a);
  return reindexed(a, [r, z](const Bimould<T>& x, const auto& w) {
    return static_cast<int>(w.size()) == r ? x(w) : z;
  });
}

template <class T>
Bimould<T> der(const Bimould<T>& a) {
  return reindexed(a, [](const Bimould<T>& x, const auto& w) {
    return x.constant(Rational(static_cast<long>(w.size()))) * x(w);
  });
}

template <class T>
Bimould<T> gepar(const Bimould<T>& a) {
  auto s = swap(a);
  return mu(anti(s), s);
}

template <class T>
Bimould<T> truncate(const Bimould<T>& a, int trunc) {
  if (trunc > a.trunc()) throw std::out_of_range("truncate: cannot raise truncation");
  return Bimould<T>(trunc, a.ctx(), [a](const Node<T>&, const auto& w) { return a(w); });
}

template <class T>
Bimould<T> eps_times(const Bimould<T>& a) {
  if constexpr (requires(const typename T::Val& v) { T::eps(v); }) {
    return reindexed(a, [](const Bimould<T>& x, const auto& w) { return T::eps(x(w)); });
  } else {
    throw std::logic_error("eps_times needs a dual-number backend");
  }
}

std::vector<RatFun> random_components(std::uint64_t seed, int trunc, MuClass cls, int degree_bound) {
  std::mt19937_64 gen(seed);
  auto pick = [&gen](std::uint64_t n) { return static_cast<int>(gen() % n); };
  auto coeff = [&]() {
    int c = 0;
    while (c == 0) c = pick(19) - 9;
    return c;
  };
  std::vector<RatFun> comps;
  switch (cls) {
    case MuClass::GroupLike:
      comps.emplace_back(1);
      break;
    case MuClass::LieLike:
      comps.emplace_back(0);
      break;
    case MuClass::General:
      comps.emplace_back(coeff());
      break;
  }
  for (int r = 1; r <= trunc; ++r) {
    std::vector<Polynomial::Term> terms;
    for (int t = 0; t < 3; ++t) {
      Polynomial::Term term;
      int d = pick(static_cast<std::uint64_t>(degree_bound) + 1);
      for (int i = 0; i < d; ++i) ++term.m.e[pick(2 * static_cast<std::uint64_t>(r))];
      term.c = coeff();
      terms.push_back(std::move(term));
    }
    comps.emplace_back(Polynomial::from_terms(std::move(terms)));
  }
  return comps;
}

#define FLEXION_INSTANTIATE(T)                                                                  \
  template Bimould<T> from_components<T>(const T::Ctx&, const std::vector<RatFun>&);           \
  template Bimould<T> constant_bimould<T>(const T::Ctx&, int, const Rational&);                \
  template Bimould<T> operator+ <T>(const Bimould<T>&, const Bimould<T>&);                      \
  template Bimould<T> operator- <T>(const Bimould<T>&, const Bimould<T>&);                      \
  template Bimould<T> operator- <T>(const Bimould<T>&);                                         \
  template Bimould<T> operator* <T>(const Rational&, const Bimould<T>&);                        \
  template Bimould<T> neg(const Bimould<T>&);                                                   \
  template Bimould<T> anti(const Bimould<T>&);                                                  \
  template Bimould<T> pari(const Bimould<T>&);                                                  \
  template Bimould<T> pus(const Bimould<T>&);                                                   \
  template Bimould<T> push(const Bimould<T>&);                                                  \
  template Bimould<T> mantar(const Bimould<T>&);                                                \
  template Bimould<T> swap(const Bimould<T>&);                                                  \
  template Bimould<T> gantar(const Bimould<T>&);                                                \
  template Bimould<T> mu(const Bimould<T>&, const Bimould<T>&);                                 \
  template Bimould<T> lu(const Bimould<T>&, const Bimould<T>&);                                 \
  template Bimould<T> invmu(const Bimould<T>&);                                                 \
  template Bimould<T> leng(const Bimould<T>&, int);                                             \
  template Bimould<T> der(const Bimould<T>&);                                                   \
  template Bimould<T> gepar(const Bimould<T>&);                                                 \
  template Bimould<T> truncate(const Bimould<T>&, int);                                         \
  template Bimould<T> eps_times(const Bimould<T>&);

FLEXION_INSTANTIATE(Exact)
FLEXION_INSTANTIATE(DualExact)
FLEXION_INSTANTIATE(Eval)
FLEXION_INSTANTIATE(DualEval)

}  // namespace flexion
