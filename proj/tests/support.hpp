#pragma once

#include <random>
#include <vector>

#include "meander/params.hpp"

namespace meander::test {

inline ModelParams params(int n, double eps1, double eps2, std::vector<double> a1, std::vector<double> a2, double b1,
                          double b2 = 0.0) {
  ModelParams p = make_params(n);
  p.eps1 = eps1;
  p.eps2 = eps2;
  if (!a1.empty()) p.a1 = std::move(a1);
  if (!a2.empty()) p.a2 = std::move(a2);
  p.b1 = b1;
  p.b2 = b2;
  return p;
}

// n=5, eps = -4i, A = 7i, B = 3.
inline ModelParams three_root_quintic() { return params(5, 0, -4, {}, {7}, 3); }

// n=6 Hamiltonian field with two rings of centers.
inline ModelParams two_ring_n6() { return params(6, 0, 1, {}, {-1, 0.1}, 0.06); }

inline ModelParams random_params(std::mt19937_64& rng, int n, bool hamiltonian) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ModelParams p = make_params(n);
  p.eps2 = u(rng);
  p.eps1 = hamiltonian ? 0.0 : 0.1 * u(rng);
  for (int k = 0; k < p.s(); ++k) {
    p.a2[k] = u(rng);
    p.a1[k] = hamiltonian ? 0.0 : 0.1 * u(rng);
  }
  p.b1 = u(rng);
  p.b2 = u(rng);
  return p;
}

}  // namespace meander::test
