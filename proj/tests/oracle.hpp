#pragma once

// Test-only brute-force oracles. They use the textbook formulas directly
// (long double products, unsorted sums) and share no code with the library.

#include <algorithm>
#include <cmath>
#include <vector>

#include "fuzzydecide/fuzzy_number.hpp"

namespace oracle {

inline long double nth_root_of_product(const std::vector<long double>& v) {
  long double p = 1.0L;
  for (auto x : v) p *= x;
  return std::pow(p, 1.0L / static_cast<long double>(v.size()));
}

inline long double delphi_score(const std::vector<fuzzydecide::Tfn>& opinions) {
  long double lo = opinions[0].l, hi = opinions[0].u;
  std::vector<long double> mids;
  for (const auto& o : opinions) {
    lo = std::min<long double>(lo, o.l);
    hi = std::max<long double>(hi, o.u);
    mids.push_back(o.m);
  }
  return (lo + nth_root_of_product(mids) + hi) / 3.0L;
}

// Buckley weights straight from a dense row-major matrix.
inline std::vector<long double> buckley_normalized(const std::vector<fuzzydecide::Tfn>& cells, std::size_t n) {
  std::vector<long double> rl(n), rm(n), ru(n);
  long double tl = 0, tm = 0, tu = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long double> a, b, c;
    for (std::size_t j = 0; j < n; ++j) {
      a.push_back(cells[i * n + j].l);
      b.push_back(cells[i * n + j].m);
      c.push_back(cells[i * n + j].u);
    }
    rl[i] = nth_root_of_product(a);
    rm[i] = nth_root_of_product(b);
    ru[i] = nth_root_of_product(c);
    tl += rl[i];
    tm += rm[i];
    tu += ru[i];
  }
  std::vector<long double> avg(n);
  long double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    avg[i] = (rl[i] / tu + rm[i] / tm + ru[i] / tl) / 3.0L;
    sum += avg[i];
  }
  for (auto& x : avg) x /= sum;
  return avg;
}

}  // namespace oracle
