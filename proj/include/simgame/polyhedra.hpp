#pragma once

#include <cstdint>
#include <vector>

#include "linalg.hpp"

namespace simgame {

// Fixed-width bitset sized at runtime, used for constraint zero sets.
class Bits {
 public:
  explicit Bits(size_t n = 0) : words_((n + 63) / 64, 0) {}

  void set(size_t i) { words_[i / 64] |= uint64_t(1) << (i % 64); }
  bool test(size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }

  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }

  size_t count() const {
    size_t c = 0;
    for (auto w : words_) c += static_cast<size_t>(__builtin_popcountll(w));
    return c;
  }

  bool contains(const Bits& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if ((o.words_[i] & ~words_[i]) != 0) return false;
    return true;
  }

  bool operator==(const Bits& o) const { return words_ == o.words_; }

 private:
  std::vector<uint64_t> words_;
};

struct ConeRay {
  IntVector v;
  Bits zeros;  // indices of constraints holding with equality
};

// Extreme rays of the pointed cone { z in R^dim : z >= 0, a_k · z >= 0 for all k }
// by the double description method with the combinatorial adjacency test.
// Constraint indices: 0..dim-1 are the orthant, dim.. are the extra rows.
inline std::vector<ConeRay> orthant_cone_rays(size_t dim, const IntMatrix& extra) {
  const size_t total = dim + extra.size();
  std::vector<ConeRay> rays;
  for (size_t i = 0; i < dim; ++i) {
    ConeRay r{IntVector(dim, mpz_class(0)), Bits(total)};
    r.v[i] = 1;
    for (size_t j = 0; j < dim; ++j)
      if (j != i) r.zeros.set(j);
    rays.push_back(std::move(r));
  }

  std::vector<int> sign;
  for (size_t k = 0; k < extra.size(); ++k) {
    const IntVector& a = extra[k];
    const size_t idx = dim + k;
    std::vector<mpz_class> val(rays.size());
    sign.assign(rays.size(), 0);
    for (size_t r = 0; r < rays.size(); ++r) {
      mpz_class acc = 0;
      for (size_t j = 0; j < dim; ++j)
        if (a[j] != 0 && rays[r].v[j] != 0) acc += a[j] * rays[r].v[j];
      sign[r] = sgn(acc);
      val[r] = std::move(acc);
    }
    std::vector<size_t> pos, neg;
    for (size_t r = 0; r < rays.size(); ++r) {
      if (sign[r] > 0) pos.push_back(r);
      if (sign[r] < 0) neg.push_back(r);
    }
    std::vector<ConeRay> next;
    if (!neg.empty()) {
      for (size_t p : pos) {
        for (size_t n : neg) {
          Bits common = rays[p].zeros & rays[n].zeros;
          if (common.count() + 2 < dim) continue;
          bool adjacent = true;
          for (size_t r = 0; r < rays.size() && adjacent; ++r)
            if (r != p && r != n && rays[r].zeros.contains(common)) adjacent = false;
          if (!adjacent) continue;
          ConeRay nr{IntVector(dim), common};
          for (size_t j = 0; j < dim; ++j) nr.v[j] = val[p] * rays[n].v[j] - val[n] * rays[p].v[j];
          normalize_gcd(nr.v);
          nr.zeros.set(idx);
          next.push_back(std::move(nr));
        }
      }
    }
    std::vector<ConeRay> kept;
    for (size_t r = 0; r < rays.size(); ++r) {
      if (sign[r] < 0) continue;
      if (sign[r] == 0) rays[r].zeros.set(idx);
      kept.push_back(std::move(rays[r]));
    }
    for (auto& r : next) kept.push_back(std::move(r));
    rays = std::move(kept);
  }
  return rays;
}

}  // namespace simgame
