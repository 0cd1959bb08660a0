#include "flexion/identity.hpp"

namespace flexion {

std::vector<IndexWord> shuffle(const IndexWord& a, const IndexWord& b) {
  if (a.empty()) return {b};
  if (b.empty()) return {a};
  std::vector<IndexWord> out;
  IndexWord at(a.begin() + 1, a.end()), bt(b.begin() + 1, b.end());
  for (auto s : shuffle(at, b)) {
    s.insert(s.begin(), a.front());
    out.push_back(std::move(s));
  }
  for (auto s : shuffle(a, bt)) {
    s.insert(s.begin(), b.front());
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace flexion
