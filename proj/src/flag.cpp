#include "bergmanlab/flag.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <stdexcept>

namespace bergmanlab::flag {

namespace {

using BigInt = boost::multiprecision::cpp_int;

std::vector<int> reflect_root(const Eigen::MatrixXi& cartan, const std::vector<int>& root, int i) {
  // s_i(alpha) = alpha - (sum_j C_{ij} c_j) alpha_i in simple coordinates
  int pair = 0;
  for (int j = 0; j < cartan.cols(); ++j) pair += cartan(i, j) * root[j];
  std::vector<int> out = root;
  out[i] -= pair;
  return out;
}

bool root_negative(const std::vector<int>& root) {
  for (int c : root)
    if (c > 0) return false;
  for (int c : root)
    if (c < 0) return true;
  return false;
}

struct MatrixLess {
  bool operator()(const Eigen::MatrixXi& a, const Eigen::MatrixXi& b) const {
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
    return false;
  }
};

}  // namespace

RootSystem RootSystem::typeA(int rank) {
  if (rank < 1 || rank > 7) throw std::invalid_argument("supported ranks: 1..7");
  RootSystem rs;
  rs.rank_ = rank;
  rs.cartan_ = Eigen::MatrixXi::Zero(rank, rank);
  for (int i = 0; i < rank; ++i) {
    rs.cartan_(i, i) = 2;
    if (i + 1 < rank) {
      rs.cartan_(i, i + 1) = -1;
      rs.cartan_(i + 1, i) = -1;
    }
  }
  // positive roots e_i - e_j (i < j) = alpha_i + ... + alpha_{j-1}
  const int n = rank + 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<int> simple(rank, 0);
      for (int t = i; t < j; ++t) simple[t] = 1;
      rs.positive_.push_back(simple);
      std::vector<int> real(n, 0);
      real[i] = 1;
      real[j] = -1;
      rs.realization_.push_back(real);
    }
  // enumerate the Weyl group breadth-first; BFS depths are minimal lengths
  std::vector<Eigen::MatrixXi> gens;
  for (int i = 0; i < rank; ++i) {
    Eigen::MatrixXi S = Eigen::MatrixXi::Identity(rank, rank);
    for (int j = 0; j < rank; ++j) S(j, i) -= rs.cartan_(j, i);
    gens.push_back(S);
  }
  std::map<Eigen::MatrixXi, int, MatrixLess> seen;
  WeylElement id;
  id.word = {};
  id.matrix = Eigen::MatrixXi::Identity(rank, rank);
  id.length = 0;
  rs.weyl_.push_back(id);
  seen.emplace(id.matrix, 0);
  size_t head = 0;
  while (head < rs.weyl_.size()) {
    const WeylElement cur = rs.weyl_[head++];
    for (int i = 0; i < rank; ++i) {
      Eigen::MatrixXi m = gens[i] * cur.matrix;
      if (seen.count(m)) continue;
      WeylElement next;
      next.word = cur.word;
      next.word.insert(next.word.begin(), i);
      next.matrix = m;
      next.length = rs.length_of(m);
      seen.emplace(m, 1);
      rs.weyl_.push_back(next);
    }
  }
  return rs;
}

Weight RootSystem::weight(const std::vector<Int>& fund) const {
  if (static_cast<int>(fund.size()) != rank_) throw std::invalid_argument("weight rank mismatch");
  Weight w;
  w.fund = fund;
  const int n = rank_ + 1;
  w.realization_scaled.assign(n, 0);
  // n * varpi_i has e-coordinates (n - i) on the first i slots and -i after
  for (int i = 1; i <= rank_; ++i) {
    const Int m = fund[i - 1];
    if (m == 0) continue;
    for (int t = 0; t < n; ++t) w.realization_scaled[t] += m * (t < i ? n - i : -i);
  }
  return w;
}

Weight RootSystem::rho() const { return weight(std::vector<Int>(rank_, 1)); }

Int RootSystem::pairing(const Weight& lambda, const std::vector<int>& root_simple) const {
  Int acc = 0;
  for (int i = 0; i < rank_; ++i) acc += lambda.fund[i] * root_simple[i];
  return acc;
}

Weight RootSystem::apply(const WeylElement& w, const Weight& lambda) const {
  std::vector<Int> out(rank_, 0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out[i] += static_cast<Int>(w.matrix(i, j)) * lambda.fund[j];
  return weight(out);
}

Weight RootSystem::apply_word(const std::vector<int>& word, const Weight& lambda) const {
  return apply(from_word(word), lambda);
}

WeylElement RootSystem::from_word(const std::vector<int>& word) const {
  WeylElement w;
  w.word = word;
  w.matrix = Eigen::MatrixXi::Identity(rank_, rank_);
  for (int i : word) {
    Eigen::MatrixXi S = Eigen::MatrixXi::Identity(rank_, rank_);
    for (int j = 0; j < rank_; ++j) S(j, i) -= cartan_(j, i);
    w.matrix = w.matrix * S;
  }
  w.length = length_of(w.matrix);
  return w;
}

WeylElement RootSystem::inverse(const WeylElement& w) const {
  std::vector<int> rev(w.word.rbegin(), w.word.rend());
  return from_word(rev);
}

Weight RootSystem::root_as_weight(const std::vector<int>& root_simple) const {
  std::vector<Int> fund(rank_, 0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) fund[i] += static_cast<Int>(cartan_(i, j)) * root_simple[j];
  return weight(fund);
}

int RootSystem::length_of(const Eigen::MatrixXi& action) const {
  // count positive roots sent to negative ones, acting in simple coordinates
  // through the contragredient action on the root lattice
  int count = 0;
  for (const auto& root : positive_) {
    // express w(alpha) in fundamental coordinates, then back to simple ones:
    // fund(alpha) = C * simple(alpha); the action is linear on fund coords.
    Eigen::VectorXi fund(rank_);
    for (int i = 0; i < rank_; ++i) {
      int v = 0;
      for (int j = 0; j < rank_; ++j) v += cartan_(i, j) * root[j];
      fund(i) = v;
    }
    const Eigen::VectorXi moved = action * fund;
    // solve C * simple = moved over the integers (C is unimodular-solvable here)
    Eigen::MatrixXd Cd = cartan_.cast<double>();
    Eigen::VectorXd s = Cd.fullPivLu().solve(moved.cast<double>());
    std::vector<int> simple(rank_);
    for (int i = 0; i < rank_; ++i) simple[i] = static_cast<int>(std::lround(s(i)));
    if (root_negative(simple)) ++count;
  }
  return count;
}

int index_of_weight(const RootSystem& rs, const Weight& lambda) {
  int idx = 0;
  for (size_t r = 0; r < rs.positive_roots().size(); ++r) {
    const Int p = rs.pairing(lambda, rs.positive_roots()[r]);
    if (p == 0)
      throw std::invalid_argument("irregular weight: zero pairing with positive root #" +
                                  std::to_string(r));
    if (p < 0) ++idx;
  }
  return idx;
}

bool is_regular(const RootSystem& rs, const Weight& lambda) {
  for (const auto& root : rs.positive_roots())
    if (rs.pairing(lambda, root) == 0) return false;
  return true;
}

bool is_dominant(const RootSystem& rs, const Weight& lambda) {
  for (Int m : lambda.fund)
    if (m < 0) return false;
  return true;
}

DominantResult to_dominant(const RootSystem& rs, const Weight& lambda) {
  if (!is_regular(rs, lambda)) throw std::invalid_argument("irregular weight");
  Weight cur = lambda;
  std::vector<int> word;
  int guard = 0;
  while (!is_dominant(rs, cur)) {
    if (++guard > 10000) throw std::runtime_error("dominance iteration failed");
    for (int i = 0; i < rs.rank(); ++i) {
      if (cur.fund[i] < 0) {
        cur = rs.apply_word({i}, cur);
        word.insert(word.begin(), i);
        break;
      }
    }
  }
  DominantResult out;
  out.w = rs.from_word(word);
  out.dominant = cur;
  return out;
}

Int weyl_dim(const RootSystem& rs, const Weight& lambda) {
  if (!is_dominant(rs, lambda)) throw std::invalid_argument("weyl_dim needs a dominant weight");
  const Weight shifted = rs.weight([&] {
    std::vector<Int> v = lambda.fund;
    for (auto& x : v) x += 1;
    return v;
  }());
  const Weight rho = rs.rho();
  BigInt num = 1, den = 1;
  for (const auto& root : rs.positive_roots()) {
    num *= BigInt(rs.pairing(shifted, root));
    den *= BigInt(rs.pairing(rho, root));
  }
  const BigInt q = num / den;
  if (q * den != num) throw std::runtime_error("Weyl dimension is not an integer");
  return static_cast<Int>(q);
}

BottResult bott_dim(const RootSystem& rs, const Weight& lambda, int q) {
  BottResult out;
  std::vector<Int> sh = lambda.fund;
  for (auto& v : sh) v += 1;
  const Weight shifted = rs.weight(sh);
  if (!is_regular(rs, shifted)) {
    out.wall = true;
    out.value = 0;
    return out;
  }
  out.shifted_index = index_of_weight(rs, shifted);
  if (out.shifted_index != q) {
    out.value = 0;
    return out;
  }
  const DominantResult dom = to_dominant(rs, shifted);
  std::vector<Int> mu = dom.dominant.fund;
  for (auto& v : mu) v -= 1;
  out.value = weyl_dim(rs, rs.weight(mu));
  // signed Euler identity: prod <lambda+rho, a> / <rho, a> = (-1)^q dim
  const Weight rho = rs.rho();
  BigInt num = 1, den = 1;
  for (const auto& root : rs.positive_roots()) {
    num *= BigInt(rs.pairing(shifted, root));
    den *= BigInt(rs.pairing(rho, root));
  }
  const BigInt signed_dim = BigInt(out.value) * ((q % 2 == 0) ? 1 : -1);
  if (num != signed_dim * den) throw std::runtime_error("signed Euler identity violated");
  return out;
}

TwistResult kx_minus_weight(const RootSystem& rs, const Weight& lambda) {
  if (!is_regular(rs, lambda)) throw std::invalid_argument("irregular weight");
  TwistResult out;
  std::vector<int> negs, pos;
  for (int r = 0; r < static_cast<int>(rs.positive_roots().size()); ++r) {
    if (rs.pairing(lambda, rs.positive_roots()[r]) < 0) negs.push_back(r);
    else pos.push_back(r);
  }
  out.negative_first = negs;
  out.negative_first.insert(out.negative_first.end(), pos.begin(), pos.end());
  std::vector<Int> fund(rs.rank(), 0);
  for (int r : negs) {
    const Weight alpha = rs.root_as_weight(rs.positive_roots()[r]);
    for (int i = 0; i < rs.rank(); ++i) fund[i] += alpha.fund[i];
  }
  out.weight = rs.weight(fund);
  // independent route: rho - w^{-1}(rho) with w the dominance element
  const DominantResult dom = to_dominant(rs, lambda);
  const Weight rho = rs.rho();
  const Weight winv_rho = rs.apply(rs.inverse(dom.w), rho);
  for (int i = 0; i < rs.rank(); ++i)
    if (out.weight.fund[i] != rho.fund[i] - winv_rho.fund[i])
      throw std::runtime_error("twist weight routes disagree");
  return out;
}

geometry::Signature curvature_index_of_weight(const RootSystem& rs, const Weight& lambda) {
  geometry::Signature s;
  for (const auto& root : rs.positive_roots()) {
    const Int p = rs.pairing(lambda, root);
    if (p == 0) throw std::invalid_argument("irregular weight");
    s.eigenvalues.push_back(static_cast<double>(p));
    if (p > 0) ++s.n_plus;
    else ++s.n_minus;
  }
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<double>());
  return s;
}

Int monomial_count_su3_flag(int m, int n) {
  auto dim = [](int a, int b) -> Int {
    if (a < 0 || b < 0) return 0;
    return static_cast<Int>(a + 2) * (a + 1) / 2 * ((static_cast<Int>(b + 2)) * (b + 1) / 2);
  };
  return dim(m, n) - dim(m - 1, n - 1);
}

SerreReport serre_duality_check(const RootSystem& rs, const Weight& lambda,
                                const std::vector<int>& k_values) {
  SerreReport rep;
  rep.q = index_of_weight(rs, lambda);
  const DominantResult base = to_dominant(rs, lambda);
  rep.word = base.w.word;
  const Weight rho = rs.rho();
  for (int k : k_values) {
    SerreRow row;
    row.k = k;
    std::vector<Int> kf(lambda.fund);
    for (auto& v : kf) v *= k;
    const Weight klambda = rs.weight(kf);
    std::vector<Int> shf(kf);
    for (auto& v : shf) v += 1;
    if (!is_regular(rs, rs.weight(shf))) {
      row.skipped = true;
      rep.rows.push_back(row);
      continue;
    }
    row.lhs = bott_dim(rs, klambda, rep.q).value;
    // twisted route through the chamber of lambda itself:
    // dim H^0(G/B_w, L_{k lambda + rho - w^{-1} rho}) = weyl_dim(w(k lambda + rho) - rho)
    const DominantResult domk = to_dominant(rs, klambda);
    const Weight moved = rs.apply(domk.w, rs.weight(shf));
    std::vector<Int> mu = moved.fund;
    for (auto& v : mu) v -= 1;
    bool dominant = true;
    for (Int v : mu)
      if (v < 0) dominant = false;
    row.rhs = dominant ? weyl_dim(rs, rs.weight(mu)) : 0;
    row.equal = row.lhs == row.rhs;
    rep.rows.push_back(row);
  }
  rep.k0 = -1;
  for (int i = static_cast<int>(rep.rows.size()) - 1; i >= 0; --i) {
    if (rep.rows[i].skipped) continue;
    if (!rep.rows[i].equal) break;
    rep.k0 = rep.rows[i].k;
  }
  return rep;
}

}  // namespace bergmanlab::flag
