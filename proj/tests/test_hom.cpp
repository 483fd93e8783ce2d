#include "qsuper/hom.hpp"
#include "qsuper/queer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace qsuper;

namespace {

LieModule direct_sum(const LieModule& a, const LieModule& b) {
  std::size_t e = a.carrier.even_dim + b.carrier.even_dim;
  std::size_t n = a.dim() + b.dim();
  // even part of a, even part of b, odd part of a, odd part of b
  std::vector<std::size_t> pa(a.dim()), pb(b.dim());
  std::size_t next = 0;
  for (std::size_t k = 0; k < a.carrier.even_dim; ++k) pa[k] = next++;
  for (std::size_t k = 0; k < b.carrier.even_dim; ++k) pb[k] = next++;
  for (std::size_t k = a.carrier.even_dim; k < a.dim(); ++k) pa[k] = next++;
  for (std::size_t k = b.carrier.even_dim; k < b.dim(); ++k) pb[k] = next++;
  LieModule out{GradedSpace(e, n - e), {}, a.parities, {}};
  if (!a.weights.empty() && !b.weights.empty()) {
    out.weights.resize(n);
    for (std::size_t k = 0; k < a.dim(); ++k) out.weights[pa[k]] = a.weights[k];
    for (std::size_t k = 0; k < b.dim(); ++k) out.weights[pb[k]] = b.weights[k];
  }
  for (std::size_t g = 0; g < a.action.size(); ++g) {
    SparseMatrix m(n, n);
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (const auto& [c, v] : a.action[g].row(r)) m.push(pa[r], pa[c], v);
    for (std::size_t r = 0; r < b.dim(); ++r)
      for (const auto& [c, v] : b.action[g].row(r)) m.push(pb[r], pb[c], v);
    m.normalize();
    out.action.push_back(std::move(m));
  }
  return out;
}

// Conjugates the module by a parity-preserving permutation of its basis.
LieModule permuted(const LieModule& a, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> perm(a.dim());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  std::shuffle(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(a.carrier.even_dim), rng);
  std::shuffle(perm.begin() + static_cast<std::ptrdiff_t>(a.carrier.even_dim), perm.end(), rng);
  LieModule out{a.carrier, {}, a.parities, {}};
  if (!a.weights.empty()) {
    out.weights.resize(a.dim());
    for (std::size_t k = 0; k < a.dim(); ++k) out.weights[perm[k]] = a.weights[k];
  }
  for (const auto& act : a.action) {
    SparseMatrix m(a.dim(), a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (const auto& [c, v] : act.row(r)) m.push(perm[r], perm[c], v);
    m.normalize();
    out.action.push_back(std::move(m));
  }
  return out;
}

LieModule without_weights(LieModule m) {
  m.weights.clear();
  return m;
}

}  // namespace

TEST(Hom, MatchesDenseCommutant) {
  QueerAlgebra q(2);
  LieModule adj = adjoint_module(q.lie());
  ASSERT_FALSE(adj.weights.empty());
  for (int p : {0, 1}) {
    std::size_t dense = commutant(adj.action, adj.parities, adj.carrier, p).size();
    EXPECT_EQ(hom_space(adj, adj, p).size(), dense) << p;
    EXPECT_EQ(hom_space(without_weights(adj), without_weights(adj), p).size(), dense) << p;
  }
  LieModule nat = from_assoc_module(natural_module_Q(2));
  for (int p : {0, 1})
    EXPECT_EQ(hom_space(nat, nat, p).size(), commutant(nat.action, nat.parities, nat.carrier, p).size());
}

TEST(Hom, OddEndomorphismOfQueerModule) {
  LieModule nat = from_assoc_module(natural_module_Q(1));
  auto odd = hom_space(nat, nat, 1);
  ASSERT_EQ(odd.size(), 1u);
  EXPECT_EQ(intertwiner_failures(nat, nat, odd[0], 1), 0u);
}

TEST(Hom, DirectSums) {
  QueerAlgebra q(2);
  LieModule adj = adjoint_module(q.lie());
  LieModule two = direct_sum(adj, adj);
  EXPECT_EQ(two.representation_failures(q.lie()), 0u);
  auto homs = hom_space(two, two, 0);
  EXPECT_EQ(homs.size(), 4u * hom_space(adj, adj, 0).size());
  for (const auto& t : homs) EXPECT_EQ(intertwiner_failures(two, two, t, 0), 0u);
  EXPECT_EQ(hom_space(adj, two, 0).size(), 2u * hom_space(adj, adj, 0).size());
}

TEST(Hom, PermutedBasisIsIsomorphic) {
  QueerAlgebra q(2);
  LieModule adj = adjoint_module(q.lie());
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    LieModule other = permuted(adj, seed);
    EXPECT_EQ(other.representation_failures(q.lie()), 0u);
    IsoResult r = is_isomorphic(adj, other);
    ASSERT_TRUE(r.isomorphic);
    EXPECT_EQ(intertwiner_failures(adj, other, r.witness, r.parity), 0u);
  }
  LieModule nat = from_assoc_module(natural_module_Q(3));
  EXPECT_TRUE(is_isomorphic(nat, permuted(nat, 9)).isomorphic);
}

TEST(Hom, NonIsomorphic) {
  QueerAlgebra q(2);
  LieModule adj = adjoint_module(q.lie());
  LieModule triv{GradedSpace(1, 0), std::vector<SparseMatrix>(q.dim(), SparseMatrix(1, 1)), q.lie().space().parities(),
                 {}};
  EXPECT_TRUE(hom_space(adj, triv, 0).empty());
  EXPECT_TRUE(hom_space(triv, adj, 0).empty());
  EXPECT_FALSE(is_isomorphic(adj, triv).isomorphic);
}
