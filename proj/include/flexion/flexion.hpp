#pragma once

#include "flexion/bimould.hpp"

namespace flexion {

// Operators written op(A)(B) mathematically take the operator argument
// first here: amit(A, B) is amit(A) applied to B.

template <class T>
Bimould<T> amit(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> anit(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> axit(const Bimould<T>& a, const Bimould<T>& a2, const Bimould<T>& b);
template <class T>
Bimould<T> arit(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> irat(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> iwat(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> preari(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> ari(const Bimould<T>& a, const Bimould<T>& b);

enum class GaxitForm { Sigma, Blocks };

template <class T>
struct OpPair {
  Bimould<T> first, second;
};

template <class T>
Bimould<T> gaxit(const Bimould<T>& a1, const Bimould<T>& a2, const Bimould<T>& b, GaxitForm form = GaxitForm::Sigma);
template <class T>
Bimould<T> gaxit(const OpPair<T>& p, const Bimould<T>& b, GaxitForm form = GaxitForm::Sigma) {
  return gaxit(p.first, p.second, b, form);
}
template <class T>
OpPair<T> gaxi(const OpPair<T>& pa, const OpPair<T>& pb);

template <class T>
Bimould<T> gamit(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> ganit(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> garit(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> girat(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> giwat(const Bimould<T>& a, const Bimould<T>& b);

template <class T>
Bimould<T> gari(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> gami(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> gani(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> invgari(const Bimould<T>& a);
template <class T>
Bimould<T> invgami(const Bimould<T>& a);
template <class T>
Bimould<T> invgani(const Bimould<T>& a);

template <class T>
Bimould<T> expari(const Bimould<T>& a);

template <class T>
Bimould<T> fragari(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> gira(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> invgira(const Bimould<T>& a);
template <class T>
Bimould<T> fragira(const Bimould<T>& a, const Bimould<T>& b);
template <class T>
Bimould<T> ras(const Bimould<T>& b);
template <class T>
Bimould<T> rash(const Bimould<T>& b);
template <class T>
Bimould<T> crash(const Bimould<T>& b);
template <class T>
Bimould<T> slash(const Bimould<T>& a);

}  // namespace flexion
