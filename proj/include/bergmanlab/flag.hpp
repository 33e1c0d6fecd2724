#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "bergmanlab/geometry.hpp"

namespace bergmanlab::flag {

using Int = long long;

/// Weight in fundamental-weight coordinates together with its realization
/// vector in the standard e-basis, scaled by rank+1 to stay integral.
struct Weight {
  std::vector<Int> fund;
  std::vector<Int> realization_scaled;

  bool operator==(const Weight& o) const { return fund == o.fund; }
};

struct WeylElement {
  std::vector<int> word;   // simple reflection indices; matrices act right-to-left
  Eigen::MatrixXi matrix;  // action on fundamental coordinates
  int length = 0;
};

/// Type A_{n-1} root system in the standard realization e_i - e_{i+1},
/// exact integer arithmetic; the Weyl group is enumerated at construction.
class RootSystem {
 public:
  static RootSystem typeA(int rank);

  int rank() const { return rank_; }
  const Eigen::MatrixXi& cartan() const { return cartan_; }
  /// Positive roots in simple-root coordinates, {e_i - e_j : i < j}.
  const std::vector<std::vector<int>>& positive_roots() const { return positive_; }
  const std::vector<std::vector<int>>& positive_roots_realization() const { return realization_; }
  const std::vector<WeylElement>& weyl_group() const { return weyl_; }
  Weight rho() const;

  Weight weight(const std::vector<Int>& fund) const;
  /// <lambda, alpha> with the coroot normalization; exact integer.
  Int pairing(const Weight& lambda, const std::vector<int>& root_simple) const;
  Weight apply(const WeylElement& w, const Weight& lambda) const;
  Weight apply_word(const std::vector<int>& word, const Weight& lambda) const;
  WeylElement from_word(const std::vector<int>& word) const;
  WeylElement inverse(const WeylElement& w) const;
  Weight root_as_weight(const std::vector<int>& root_simple) const;

  /// Count of positive roots sent to negative ones.
  int length_of(const Eigen::MatrixXi& action_on_fund) const;

 private:
  int rank_ = 0;
  Eigen::MatrixXi cartan_;
  std::vector<std::vector<int>> positive_;
  std::vector<std::vector<int>> realization_;
  std::vector<WeylElement> weyl_;
};

/// Number of positive roots pairing strictly negatively with lambda;
/// throws for wall weights, naming the offending root.
int index_of_weight(const RootSystem& rs, const Weight& lambda);

bool is_regular(const RootSystem& rs, const Weight& lambda);
bool is_dominant(const RootSystem& rs, const Weight& lambda);

struct DominantResult {
  WeylElement w;
  Weight dominant;
};
/// Minimal-length Weyl element moving lambda to the dominant chamber.
DominantResult to_dominant(const RootSystem& rs, const Weight& lambda);

Int weyl_dim(const RootSystem& rs, const Weight& lambda);

struct BottResult {
  Int value = 0;
  bool wall = false;      // lambda + rho lies on a wall (vanishing case)
  int shifted_index = -1; // index of lambda + rho when regular
};
/// Cohomology dimension in degree q via the dominant conjugate of
/// lambda + rho; zero off the matching index. The signed Euler identity
/// (-1)^q dim = prod <lambda+rho, alpha> / <rho, alpha> is enforced.
BottResult bott_dim(const RootSystem& rs, const Weight& lambda, int q);

struct TwistResult {
  Weight weight;                       // sum of negative-pairing positive roots
  std::vector<int> negative_first;     // positive-root ordering used (indices)
};
/// The twist weight sum_{i <= q} alpha_i = rho - w^{-1}(rho); both routes are
/// computed and must agree exactly.
TwistResult kx_minus_weight(const RootSystem& rs, const Weight& lambda);

/// Signature of diag(<lambda, alpha>) over the positive roots.
geometry::Signature curvature_index_of_weight(const RootSystem& rs, const Weight& lambda);

/// Bihomogeneous monomial count of bidegree (m, n) on the SU(3) quadric flag,
/// computed literally as dim(m, n) - dim(m-1, n-1).
Int monomial_count_su3_flag(int m, int n);

struct SerreRow {
  int k = 0;
  bool skipped = false;   // wall at this k
  Int lhs = 0;            // degree-q dimension via the shifted-weight chamber
  Int rhs = 0;            // twisted section count via the lambda chamber
  bool equal = false;
};
struct SerreReport {
  int q = -1;
  std::vector<int> word;  // w for lambda itself
  std::vector<SerreRow> rows;
  int k0 = -1;            // smallest k from which every tested k agrees
};
SerreReport serre_duality_check(const RootSystem& rs, const Weight& lambda,
                                const std::vector<int>& k_values);

}  // namespace bergmanlab::flag
