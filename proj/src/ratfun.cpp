#include "flexion/ratfun.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace flexion {

// ---------------------------------------------------------------- Monomial

int Monomial::degree() const {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

std::string Monomial::str() const {
  std::string out;
  for (int k = 0; k < kMaxVars; ++k) {
    if (!e[k]) continue;
    if (!out.empty()) out += '*';
    out += VarIndex::from_flat(k).name();
    if (e[k] > 1) out += '^' + std::to_string(e[k]);
  }
  return out.empty() ? "1" : out;
}

bool mono_before(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return std::memcmp(a.e.data(), b.e.data(), kMaxVars) > 0;
}

std::size_t MonoHash::operator()(const Monomial& m) const {
  std::uint64_t w[2];
  std::memcpy(w, m.e.data(), sizeof(w));
  std::uint64_t h = w[0] * 0x9E3779B97F4A7C15ull ^ (w[1] + 0x632BE59BD9B4E019ull + (w[0] << 6));
  h ^= h >> 31;
  return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull);
}

namespace {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int k = 0; k < kMaxVars; ++k) {
    int s = a.e[k] + b.e[k];
    if (s > 255) throw std::overflow_error("monomial exponent overflow");
    r.e[k] = static_cast<std::uint8_t>(s);
  }
  return r;
}

bool mono_divides(const Monomial& a, const Monomial& b) {  // a | b
  for (int k = 0; k < kMaxVars; ++k)
    if (a.e[k] > b.e[k]) return false;
  return true;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (int k = 0; k < kMaxVars; ++k) r.e[k] = static_cast<std::uint8_t>(b.e[k] - a.e[k]);
  return r;
}

using TermMap = std::unordered_map<Monomial, mpz_class, MonoHash>;

std::vector<Polynomial::Term> drain(TermMap& acc) {
  std::vector<Polynomial::Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.push_back({m, std::move(c)});
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return mono_before(x.m, y.m); });
  return out;
}

int poly_cmp(const Polynomial& a, const Polynomial& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (!(x[i].m == y[i].m)) return mono_before(x[i].m, y[i].m) ? -1 : 1;
    int c = cmp(x[i].c, y[i].c);
    if (c) return c > 0 ? -1 : 1;
  }
  if (x.size() != y.size()) return x.size() > y.size() ? -1 : 1;
  return 0;
}

std::uint64_t mod_ui(const mpz_class& c, std::uint64_t p) {
  return mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p));
}

}  // namespace

// -------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(const mpz_class& c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(int k) {
  Polynomial p;
  Term t;
  t.m.e[k] = 1;
  t.c = 1;
  p.terms_.push_back(std::move(t));
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  TermMap acc;
  for (auto& t : terms) acc[t.m] += t.c;
  Polynomial p;
  p.terms_ = drain(acc);
  return p;
}

bool Polynomial::is_linear() const {
  if (terms_.empty()) return false;
  for (const auto& t : terms_)
    if (t.m.degree() != 1) return false;
  return true;
}

int Polynomial::degree_in(int k) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.m.e[k]);
  return d;
}

int Polynomial::max_var() const {
  int mv = -1;
  for (const auto& t : terms_)
    for (int k = kMaxVars - 1; k > mv; --k)
      if (t.m.e[k]) {
        mv = k;
        break;
      }
  return mv;
}

mpz_class Polynomial::content() const {
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

Polynomial& Polynomial::operator*=(const mpz_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.c *= c;
  return *this;
}

Polynomial Polynomial::divided_by(const mpz_class& c) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  r.terms_.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && mono_before(x[i].m, y[j].m))) {
      r.terms_.push_back(x[i++]);
    } else if (i == x.size() || mono_before(y[j].m, x[i].m)) {
      r.terms_.push_back(y[j++]);
    } else {
      mpz_class c = x[i].c + y[j].c;
      if (c != 0) r.terms_.push_back({x[i].m, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1 && a.terms_[0].m.is_one()) return Polynomial(b) *= a.terms_[0].c;
  if (b.terms_.size() == 1 && b.terms_[0].m.is_one()) return Polynomial(a) *= b.terms_[0].c;
  TermMap acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) acc[mono_mul(s.m, t.m)] += s.c * t.c;
  Polynomial r;
  r.terms_ = drain(acc);
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) { return poly_cmp(a, b) == 0; }

Polynomial Polynomial::normalized(mpz_class* unit) const {
  if (is_zero()) {
    if (unit) *unit = 0;
    return {};
  }
  mpz_class g = content();
  if (leading_coeff() < 0) g = -g;
  if (unit) *unit = g;
  return g == 1 ? *this : divided_by(g);
}

Fp Polynomial::eval(const std::vector<Fp>& point) const {
  const std::uint64_t p = point.empty() ? default_prime() : point[0].modulus();
  Fp sum(0, p);
  for (const auto& t : terms_) {
    Fp term(mod_ui(t.c, p), p);
    for (int k = 0; k < kMaxVars; ++k)
      if (t.m.e[k]) term *= point.at(k).pow(t.m.e[k]);
    sum += term;
  }
  return sum;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
  Rational sum;
  for (const auto& t : terms_) {
    Rational term(t.c);
    for (int k = 0; k < kMaxVars; ++k)
      for (int i = 0; i < t.m.e[k]; ++i) term *= point.at(k);
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::substitute(const std::vector<LinearForm>& args) const {
  std::vector<std::vector<Polynomial>> pw(kMaxVars);
  auto power = [&](int k, int e) -> const Polynomial& {
    auto& tab = pw[k];
    if (tab.empty()) {
      tab.push_back(Polynomial::constant(1));
      tab.push_back(args.at(k).to_polynomial());
    }
    while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * tab[1]);
    return tab[e];
  };
  TermMap acc;
  for (const auto& t : terms_) {
    Polynomial prod = Polynomial::constant(t.c);
    for (int k = 0; k < kMaxVars; ++k)
      if (t.m.e[k]) prod = prod * power(k, t.m.e[k]);
    for (const auto& s : prod.terms_) acc[s.m] += s.c;
  }
  Polynomial r;
  r.terms_ = drain(acc);
  return r;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    mpz_class a = abs(t.c);
    if (first) {
      if (t.c < 0) out += '-';
    } else {
      out += t.c < 0 ? " - " : " + ";
    }
    first = false;
    if (t.m.is_one()) {
      out += a.get_str();
    } else {
      if (a != 1) out += a.get_str() + "*";
      out += t.m.str();
    }
  }
  return out;
}

bool divide_exact(const Polynomial& a, const Polynomial& b, Polynomial* q) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by 0");
  std::vector<Polynomial::Term> qt;
  if (b.is_constant()) {
    const mpz_class& c = b.leading_coeff();
    for (const auto& t : a.terms()) {
      if (!mpz_divisible_p(t.c.get_mpz_t(), c.get_mpz_t())) return false;
      qt.push_back({t.m, t.c / c});
    }
    if (q) *q = Polynomial::from_terms(std::move(qt));
    return true;
  }
  std::map<Monomial, mpz_class, MonoOrder> rem;
  for (const auto& t : a.terms()) rem.emplace(t.m, t.c);
  const auto& lead = b.terms().front();
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!mono_divides(lead.m, it->first)) return false;
    if (!mpz_divisible_p(it->second.get_mpz_t(), lead.c.get_mpz_t())) return false;
    Monomial m = mono_div(it->first, lead.m);
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), it->second.get_mpz_t(), lead.c.get_mpz_t());
    rem.erase(it);
    for (std::size_t i = 1; i < b.terms().size(); ++i) {
      const auto& t = b.terms()[i];
      auto [pos, fresh] = rem.try_emplace(mono_mul(m, t.m));
      pos->second -= c * t.c;
      if (pos->second == 0) rem.erase(pos);
    }
    qt.push_back({m, std::move(c)});
  }
  // Quotient terms were produced in decreasing order.
  if (q) *q = Polynomial::from_terms(std::move(qt));
  return true;
}

// --------------------------------------------------------------------- gcd

namespace {

using Uni = std::vector<Polynomial>;  // coefficient of x^d at index d

Uni to_uni(const Polynomial& p, int x) {
  Uni out(p.degree_in(x) + 1);
  std::vector<std::vector<Polynomial::Term>> parts(out.size());
  for (const auto& t : p.terms()) {
    Polynomial::Term s = t;
    int d = s.m.e[x];
    s.m.e[x] = 0;
    parts[d].push_back(std::move(s));
  }
  for (std::size_t d = 0; d < out.size(); ++d) out[d] = Polynomial::from_terms(std::move(parts[d]));
  return out;
}

Polynomial from_uni(const Uni& u, int x) {
  std::vector<Polynomial::Term> terms;
  for (std::size_t d = 0; d < u.size(); ++d)
    for (auto t : u[d].terms()) {
      t.m.e[x] = static_cast<std::uint8_t>(d);
      terms.push_back(std::move(t));
    }
  return Polynomial::from_terms(std::move(terms));
}

void trim(Uni& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Polynomial uni_content(const Uni& u) {
  Polynomial g;
  for (const auto& c : u) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

Uni uni_div(const Uni& u, const Polynomial& c) {
  Uni out;
  for (const auto& a : u) {
    Polynomial q;
    if (!divide_exact(a, c, &q)) throw std::logic_error("content does not divide");
    out.push_back(std::move(q));
  }
  return out;
}

Uni uni_primpart(Uni u) {
  trim(u);
  if (u.empty()) return u;
  Polynomial c = uni_content(u);
  if (!(c.is_constant() && c.leading_coeff() == 1)) u = uni_div(u, c);
  if (u.back().leading_coeff() < 0)
    for (auto& a : u) a = -a;
  return u;
}

Uni prem(Uni a, const Uni& b) {
  const std::size_t db = b.size() - 1;
  const Polynomial& lb = b.back();
  trim(a);
  while (!a.empty() && a.size() - 1 >= db) {
    Polynomial la = a.back();
    std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] = a[i + shift] - la * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  if (a.is_constant() || b.is_constant()) {
    mpz_class g;
    mpz_class ca = a.content(), cb = b.content();
    mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    return Polynomial::constant(g);
  }
  int x = std::max(a.max_var(), b.max_var());
  if (a.degree_in(x) == 0) return gcd(a, uni_content(to_uni(b, x)));
  if (b.degree_in(x) == 0) return gcd(uni_content(to_uni(a, x)), b);
  Uni ua = to_uni(a, x), ub = to_uni(b, x);
  Polynomial ca = uni_content(ua), cb = uni_content(ub);
  Polynomial c = gcd(ca, cb);
  Uni pa = uni_primpart(ua), pb = uni_primpart(ub);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  while (true) {
    if (pb.empty()) break;
    if (pb.size() == 1) {
      pa = Uni{Polynomial::constant(1)};
      break;
    }
    Uni r = prem(pa, pb);
    pa = std::move(pb);
    pb = uni_primpart(std::move(r));
  }
  pa = uni_primpart(pa);
  return (c * from_uni(pa, x)).normalized();
}

// -------------------------------------------------------------- LinearForm

LinearForm LinearForm::var(int k) {
  LinearForm f;
  f.c_[k] = 1;
  return f;
}

bool LinearForm::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](auto x) { return x == 0; });
}

LinearForm LinearForm::operator-() const {
  LinearForm r;
  for (int k = 0; k < kMaxVars; ++k) r.c_[k] = -c_[k];
  return r;
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  for (int k = 0; k < kMaxVars; ++k) c_[k] += o.c_[k];
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
  for (int k = 0; k < kMaxVars; ++k) c_[k] -= o.c_[k];
  return *this;
}

Polynomial LinearForm::to_polynomial() const {
  std::vector<Polynomial::Term> terms;
  for (int k = 0; k < kMaxVars; ++k) {
    if (!c_[k]) continue;
    Polynomial::Term t;
    t.m.e[k] = 1;
    t.c = static_cast<long>(c_[k]);
    terms.push_back(std::move(t));
  }
  return Polynomial::from_terms(std::move(terms));
}

std::size_t LinearForm::hash() const {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (auto x : c_) {
    h ^= static_cast<std::uint64_t>(x);
    h *= 0x100000001B3ull;
  }
  return static_cast<std::size_t>(h);
}

std::string LinearForm::str() const { return to_polynomial().str(); }

// ------------------------------------------------------------------ RatFun

namespace {

// Cheap necessary condition for a linear form f to divide q: q vanishes on
// a pseudo-random point of the hyperplane f = 0 (mod p).
bool may_vanish_on(const Polynomial& q, const Polynomial& f) {
  constexpr std::uint64_t p = kMersenne61;
  int pivot = -1;
  for (const auto& t : f.terms())
    for (int k = 0; k < kMaxVars; ++k)
      if (t.m.e[k]) pivot = k;  // pick the last variable present
  std::vector<Fp> pt(kMaxVars, Fp(0, p));
  std::uint64_t s = 0x243F6A8885A308D3ull;
  for (int k = 0; k < kMaxVars; ++k) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    pt[k] = Fp(s % p, p);
  }
  Fp rest(0, p), a(0, p);
  for (const auto& t : f.terms()) {
    int k = 0;
    while (!t.m.e[k]) ++k;
    Fp c = Fp::from_rational(Rational(t.c), p);
    if (k == pivot) a = c;
    else rest += c * pt[k];
  }
  pt[pivot] = -rest / a;
  return q.eval(pt).is_zero();
}

bool linear_divides(const Polynomial& f, const Polynomial& q, Polynomial* quot) {
  if (q.is_zero()) {
    if (quot) *quot = Polynomial();
    return true;
  }
  if (q.total_degree() < 1) return false;
  if (!may_vanish_on(q, f)) return false;
  return divide_exact(q, f, quot);
}

// gcd(f, p) using the linear-factor shortcuts.
Polynomial related_gcd(const Polynomial& f, const Polynomial& p) {
  if (f == p) return f;
  bool lf = f.is_linear(), lp = p.is_linear();
  if (lf && lp) return Polynomial::constant(1);
  if (lf) return linear_divides(f, p, nullptr) ? f : Polynomial::constant(1);
  if (lp) return linear_divides(p, f, nullptr) ? p : Polynomial::constant(1);
  return gcd(f, p);
}

Polynomial quotient(const Polynomial& a, const Polynomial& b) {
  Polynomial q;
  if (!divide_exact(a, b, &q)) throw std::logic_error("expected exact division");
  return q.normalized();
}

void add_factor(std::vector<RatFun::Factor>& list, const Polynomial& p, int e) {
  if (p.is_constant() || e == 0) return;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Polynomial& f = list[i].first;
    if (f == p) {
      list[i].second += e;
      return;
    }
    if (f.is_linear() && p.is_linear()) continue;
    Polynomial g = related_gcd(f, p);
    if (g.is_constant()) continue;
    Polynomial fo = f;
    int ef = list[i].second;
    list.erase(list.begin() + static_cast<std::ptrdiff_t>(i));
    Polynomial fq = quotient(fo, g), pq = quotient(p, g);
    add_factor(list, g, ef + e);
    add_factor(list, fq, ef);
    add_factor(list, pq, e);
    return;
  }
  list.push_back({p, e});
}

// Multiplicity of basis element q in f.
int multiplicity(const Polynomial& q, Polynomial f) {
  if (q == f) return 1;
  if (f.is_linear()) return 0;
  int k = 0;
  Polynomial next;
  while (q.is_linear() ? linear_divides(q, f, &next) : divide_exact(f, q, &next)) {
    ++k;
    f = std::move(next);
    if (f.is_constant()) break;
  }
  return k;
}

Polynomial power(const Polynomial& p, int e) {
  Polynomial r = Polynomial::constant(1);
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

void sort_factors(std::vector<RatFun::Factor>& den) {
  std::sort(den.begin(), den.end(), [](const auto& x, const auto& y) { return poly_cmp(x.first, y.first) < 0; });
}

}  // namespace

RatFun::RatFun(const Rational& q) : scale_(q) {
  if (!q.is_zero()) num_ = Polynomial::constant(1);
}

RatFun::RatFun(const Polynomial& p) {
  if (p.is_zero()) return;
  mpz_class unit;
  num_ = p.normalized(&unit);
  scale_ = Rational(unit);
}

RatFun RatFun::fraction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DivisionByZero("zero denominator");
  return RatFun(num) * RatFun(den).inv();
}

Polynomial RatFun::numerator() const {
  if (is_zero()) return {};
  return Polynomial(num_) *= scale_.num();
}

Polynomial RatFun::denominator() const {
  Polynomial d = Polynomial::constant(is_zero() ? mpz_class(1) : scale_.den());
  for (const auto& [f, e] : den_) d = d * power(f, e);
  return d;
}

std::string RatFun::canonical_string() const {
  if (is_zero()) return "0";
  Polynomial n = numerator(), d = denominator();
  if (d.is_constant() && d.leading_coeff() == 1) return n.str();
  std::string ns = n.terms().size() > 1 ? "(" + n.str() + ")" : n.str();
  return ns + " / (" + d.str() + ")";
}

std::string RatFun::factored_string() const {
  if (is_zero()) return "0";
  std::string out = scale_.str();
  if (!num_.is_constant()) out += " * (" + num_.str() + ")";
  for (const auto& [f, e] : den_) out += " / (" + f.str() + ")" + (e > 1 ? "^" + std::to_string(e) : "");
  return out;
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.scale_ = -r.scale_;
  return r;
}

RatFun RatFun::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  RatFun r;
  r.scale_ = scale_.inv();
  r.num_ = Polynomial::constant(1);
  for (const auto& [f, e] : den_) r.num_ = r.num_ * power(f, e);
  if (!num_.is_constant()) r.den_.push_back({num_, 1});
  r.reduce();
  return r;
}

void RatFun::reduce() {
  if (num_.is_zero() || scale_.is_zero()) {
    *this = RatFun();
    return;
  }
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i < den_.size() && !again; ++i) {
      auto& [f, e] = den_[i];
      if (f.is_linear()) {
        Polynomial q;
        while (e > 0 && linear_divides(f, num_, &q)) {
          num_ = std::move(q);
          --e;
        }
        continue;
      }
      while (e > 0) {
        Polynomial g = gcd(num_, f);
        if (g.is_constant()) break;
        if (g == f) {
          num_ = quotient(num_, f);
          --e;
          continue;
        }
        // f splits: refine the factor list and start over.
        Polynomial fo = f;
        int eo = e;
        den_.erase(den_.begin() + static_cast<std::ptrdiff_t>(i));
        add_factor(den_, g, eo);
        add_factor(den_, quotient(fo, g), eo);
        again = true;
        break;
      }
    }
  }
  std::erase_if(den_, [](const Factor& x) { return x.second == 0; });
  mpz_class unit;
  num_ = num_.normalized(&unit);
  scale_ *= Rational(unit);
  sort_factors(den_);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RatFun r;
  r.scale_ = a.scale_ * b.scale_;
  r.num_ = a.num_ * b.num_;
  r.den_ = a.den_;
  for (const auto& [f, e] : b.den_) add_factor(r.den_, f, e);
  r.reduce();
  return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::vector<RatFun::Factor> basis;
  for (const auto& [f, e] : a.den_) add_factor(basis, f, 1);
  for (const auto& [f, e] : b.den_) add_factor(basis, f, 1);
  const std::size_t n = basis.size();
  std::vector<int> ea(n, 0), eb(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [f, e] : a.den_) ea[i] += e * multiplicity(basis[i].first, f);
    for (const auto& [f, e] : b.den_) eb[i] += e * multiplicity(basis[i].first, f);
  }
  Polynomial na = a.num_, nb = b.num_;
  RatFun r;
  for (std::size_t i = 0; i < n; ++i) {
    int l = std::max(ea[i], eb[i]);
    if (l > ea[i]) na = na * power(basis[i].first, l - ea[i]);
    if (l > eb[i]) nb = nb * power(basis[i].first, l - eb[i]);
    r.den_.push_back({basis[i].first, l});
  }
  na *= a.scale_.num() * b.scale_.den();
  nb *= b.scale_.num() * a.scale_.den();
  r.num_ = na + nb;
  if (r.num_.is_zero()) return {};
  r.scale_ = Rational(mpz_class(1), a.scale_.den() * b.scale_.den());
  r.reduce();
  return r;
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

bool operator==(const RatFun& a, const RatFun& b) {
  if (a.scale_ == b.scale_ && a.num_ == b.num_ && a.den_.size() == b.den_.size()) {
    bool same = true;
    for (std::size_t i = 0; i < a.den_.size() && same; ++i)
      same = a.den_[i].second == b.den_[i].second && a.den_[i].first == b.den_[i].first;
    if (same) return true;
  }
  return (a - b).is_zero();
}

int RatFun::max_var() const {
  int mv = num_.max_var();
  for (const auto& [f, e] : den_) mv = std::max(mv, f.max_var());
  return mv;
}

RatFun RatFun::substitute_linear(const std::vector<LinearForm>& args) const {
  if (is_zero()) return {};
  if (static_cast<int>(args.size()) <= max_var())
    throw std::invalid_argument("substitute_linear: too few arguments");
  RatFun r;
  r.scale_ = scale_;
  r.num_ = num_.substitute(args);
  if (r.num_.is_zero()) {
    for (const auto& [f, e] : den_)
      if (f.substitute(args).is_zero()) throw SubstitutionCollapse("denominator vanishes under substitution");
    return {};
  }
  for (const auto& [f, e] : den_) {
    Polynomial g;
    if (f.is_linear()) {
      LinearForm lf;
      for (const auto& t : f.terms()) {
        int k = 0;
        while (!t.m.e[k]) ++k;
        long c = t.c.get_si();
        for (long i = 0; i < std::abs(c); ++i) lf += c > 0 ? args[k] : -args[k];
      }
      g = lf.to_polynomial();
    } else {
      g = f.substitute(args);
    }
    if (g.is_zero()) throw SubstitutionCollapse("denominator vanishes under substitution");
    mpz_class unit;
    g = g.normalized(&unit);
    Rational u(unit);
    for (int i = 0; i < e; ++i) r.scale_ /= u;
    if (g.is_constant()) continue;
    add_factor(r.den_, g, e);
  }
  r.reduce();
  return r;
}

Fp RatFun::eval(const std::vector<Fp>& point) const {
  const std::uint64_t p = point.empty() ? default_prime() : point[0].modulus();
  if (is_zero()) return Fp(0, p);
  Fp den(1, p);
  for (const auto& [f, e] : den_) den *= f.eval(point).pow(static_cast<std::uint64_t>(e));
  if (den.is_zero()) throw DivisionByZero("pole hit");
  return Fp::from_rational(scale_, p) * num_.eval(point) / den;
}

Rational RatFun::eval(const std::vector<Rational>& point) const {
  if (is_zero()) return {};
  Rational den(1);
  for (const auto& [f, e] : den_) {
    Rational v = f.eval(point);
    for (int i = 0; i < e; ++i) den *= v;
  }
  if (den.is_zero()) throw DivisionByZero("pole hit");
  return scale_ * num_.eval(point) / den;
}

// ------------------------------------------------------------------ parser

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  RatFun ratfun() {
    Polynomial n = group();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      Polynomial d = group();
      finish();
      return RatFun::fraction(n, d);
    }
    finish();
    return RatFun(n);
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse rational function '" + s_ + "': " + what + " at offset " +
                                std::to_string(pos_));
  }
  void finish() {
    skip();
    if (pos_ != s_.size()) fail("trailing input");
  }
  Polynomial group() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      Polynomial p = poly();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    return poly();
  }
  Polynomial poly() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    Polynomial acc = term();
    if (neg) acc = -acc;
    while (true) {
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
      bool minus = s_[pos_++] == '-';
      Polynomial t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }
  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '*') break;
      ++pos_;
      acc = acc * factor();
    }
    return acc;
  }
  long integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(s_.substr(start, pos_ - start));
  }
  Polynomial factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = poly();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Polynomial::constant(mpz_class(s_.substr(start, pos_ - start)));
    }
    if (c == 'u' || c == 'v') {
      ++pos_;
      long i = integer();
      if (i < 1 || i > kMaxLength) fail("variable index out of range");
      Polynomial x = Polynomial::variable(c == 'u' ? u_var(static_cast<int>(i)) : v_var(static_cast<int>(i)));
      skip();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        skip();
        long e = integer();
        Polynomial r = Polynomial::constant(1);
        for (long k = 0; k < e; ++k) r = r * x;
        return r;
      }
      return x;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFun RatFun::parse(const std::string& text) { return Parser(text).ratfun(); }

// ------------------------------------------------------------- FpEvaluator

FpEvaluator::Poly FpEvaluator::compile(const Polynomial& q, std::uint64_t p) {
  Poly out;
  out.nvars = q.max_var() + 1;
  for (const auto& t : q.terms()) out.terms.push_back({mod_ui(t.c, p), t.m});
  return out;
}

FpEvaluator::FpEvaluator(const RatFun& f, std::uint64_t p) : p_(p), scale_(Fp::from_rational(f.scale(), p)) {
  num_ = compile(f.primitive_numerator(), p);
  for (const auto& [g, e] : f.denominator_factors()) den_.push_back({compile(g, p), e});
}

Fp FpEvaluator::eval(const Poly& q, const Fp* point) const {
  Fp sum(0, p_);
  for (const auto& [c, m] : q.terms) {
    Fp t(c, p_);
    for (int k = 0; k < q.nvars; ++k)
      for (int i = 0; i < m.e[k]; ++i) t *= point[k];
    sum += t;
  }
  return sum;
}

Fp FpEvaluator::operator()(const Fp* point) const {
  if (scale_.is_zero() || num_.terms.empty()) return Fp(0, p_);
  Fp den(1, p_);
  for (const auto& [g, e] : den_) den *= eval(g, point).pow(static_cast<std::uint64_t>(e));
  if (den.is_zero()) throw DivisionByZero("pole hit");
  return scale_ * eval(num_, point) / den;
}

}  // namespace flexion
