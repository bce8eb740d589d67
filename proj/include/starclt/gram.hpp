#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "starclt/errors.hpp"
#include "starclt/group_algebra.hpp"
#include "starclt/permutation.hpp"

namespace starclt {

inline std::vector<Permutation> symmetric_group(unsigned n) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{1});
  std::vector<Permutation> elements;
  do {
    std::vector<Permutation::Mapping> table;
    for (Point x = 1; x <= n; ++x) table.emplace_back(x, images[x - 1]);
    elements.push_back(Permutation::from_mapping(std::move(table)));
  } while (std::next_permutation(images.begin(), images.end()));
  return elements;
}

/// G_n = [phi_q(sigma^{-1} tau)] over S_n, entries computed exactly then rounded.
inline Eigen::MatrixXd gram_matrix(unsigned n, const CharacterParameter& q) {
  if (n == 0 || n > 4) throw InvalidArgument("gram matrix supported for 1 <= n <= 4");
  auto group = symmetric_group(n);
  const auto size = static_cast<Eigen::Index>(group.size());
  Eigen::MatrixXd g(size, size);
  for (Eigen::Index r = 0; r < size; ++r) {
    for (Eigen::Index c = 0; c < size; ++c) {
      g(r, c) = to_double(phi(group[r].inverse() * group[c], q));
    }
  }
  return g;
}

inline double gram_min_eigenvalue(unsigned n, const CharacterParameter& q) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram_matrix(n, q), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

/// True when every eigenvalue of G_n is >= -tolerance.
inline bool gram_psd_check(unsigned n, const CharacterParameter& q, double tolerance = 1e-9) {
  return gram_min_eigenvalue(n, q) >= -tolerance;
}

}  // namespace starclt
