// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion runs under a wall-clock budget; exceeding it is a failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "panmagic/panmagic.hpp"

using namespace panmagic;

namespace {

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok)
    throw Failure{what};
}

std::vector<SquareMatrix> matrices_of(const std::vector<Permutation>& ps) {
  std::vector<SquareMatrix> out;
  for (const auto& p : ps)
    out.push_back(perm_matrix(p));
  return out;
}

// ---------------------------------------------------------------------------

std::string enumeration_counts() {
  require(count_panmagic(1) == 1, "|Pi_1| != 1");
  for (int n : {2, 3, 4, 6, 8, 9, 10, 12})
    require(enumerate_panmagic(n).empty(), "Pi_" + std::to_string(n) + " is not empty");

  std::vector<Permutation> lambda5;
  for (long a : {2L, 3L})
    for (long c = 0; c < 5; ++c)
      lambda5.push_back(affine_perm({a, c}, 5));
  std::sort(lambda5.begin(), lambda5.end());
  require(enumerate_panmagic(5) == lambda5, "Pi_5 differs from {2x+c} u {3x+d}");

  for (auto [n, expected] : {std::pair{7, 28u}, std::pair{11, 88u}}) {
    const auto all = enumerate_panmagic(n);
    require(all.size() == expected, "|Pi_" + std::to_string(n) + "| = " + std::to_string(all.size()));
    for (const auto& p : all)
      require(is_affine(p).has_value(), "non-affine element of Pi_" + std::to_string(n));
    require(enumerate_affine_panmagic(n).size() == expected, "|Lambda_" + std::to_string(n) + "| mismatch");
  }

  const auto pi13 = enumerate_panmagic(13);
  const auto lambda13 = enumerate_affine_panmagic(13);
  require(lambda13.size() == 130, "|Lambda_13| = " + std::to_string(lambda13.size()));
  std::size_t nonaffine = 0;
  for (const auto& p : pi13)
    if (!is_affine(p))
      ++nonaffine;
  for (const auto& s : lambda13)
    require(std::binary_search(pi13.begin(), pi13.end(), affine_perm(s, 13)), "Lambda_13 not inside Pi_13");
  require(nonaffine > 0, "Pi_13 = Lambda_13");
  return "|Pi_13| = " + std::to_string(pi13.size()) + ", " + std::to_string(nonaffine) + " non-affine";
}

std::string order5_round_trip() {
  std::mt19937_64 rng(20260101);
  const auto verts = matrices_of(order5_vertices());
  auto check = [](const SquareMatrix& a, const std::string& label) {
    const DecompositionResult d = decompose5(a);
    Scalar sum = 0;
    for (const auto& t : d.terms) {
      require(t.coeff >= 0, label + ": negative coefficient");
      require(is_panmagic_perm(t.perm).has_value(), label + ": term is not panmagic");
      sum += t.coeff;
    }
    require(sum == 1, label + ": coefficients sum to " + to_string(sum));
    require(d.reconstruct(5) == a, label + ": reconstruction differs");
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = oracle::random_convex_weights(rng, verts.size());
    SquareMatrix a(5);
    for (std::size_t k = 0; k < verts.size(); ++k)
      a += w[k] * verts[k];
    check(a, "random instance " + std::to_string(trial));
  }
  for (const char* name : {"uniform5", "perm2x_5", "magic60"})
    check(fixture(name), name);
  return "200 random + 3 fixtures, zero residual";
}

std::string spanning_rank() {
  const SpanRank s = span_rank_check();
  require(s.vertex_rank == s.pan_dimension,
          "rank " + std::to_string(s.vertex_rank) + " vs dimension " + std::to_string(s.pan_dimension));
  return "rank = dim = " + std::to_string(s.vertex_rank);
}

std::string seven_by_seven() {
  const SquareMatrix a = fixture("lemma41_7");
  require(static_cast<bool>(check_panstochastic(a)), "fixture is not panstochastic");
  const MembershipResult m = membership(a, matrices_of(enumerate_panmagic(7)));
  require(!m.feasible, "membership against Pi_7 is feasible");
  const auto c = non_decomp_certificate(a);
  require(c.has_value(), "no certificate");
  return "LP infeasible (" + std::to_string(m.pivots) + " pivots), certificate at (" + std::to_string(c->row) + "," +
         std::to_string(c->column) + ")";
}

std::string counterexample_family() {
  int certified = 0, uniform = 0;
  for (int n = 2; n <= 49; ++n) {
    if (n == 5)
      continue;
    const std::string tag = "n = " + std::to_string(n);
    const SquareMatrix a = counterexample(n);
    require(a.order() == n, tag + ": wrong order");
    require(static_cast<bool>(check_panstochastic(a)), tag + ": not panstochastic");
    if (gcd(n, 6) == 1) {
      const auto c = non_decomp_certificate(a);
      require(c.has_value(), tag + ": no certificate");
      require(a(c->row, c->column) > 0, tag + ": certified entry is zero");
      require(!find_covering_perm(a, c->row, c->column).witness, tag + ": certified entry is coverable");
      ++certified;
    } else {
      if (n <= 12)
        require(enumerate_panmagic(n).empty(), tag + ": panmagic permutations exist");
      else
        require(enumerate_affine_panmagic(n).empty(), tag + ": affine panmagic permutations exist");
      ++uniform;
    }
  }

  const SquareMatrix t = fixture("thm12_25");
  const auto c = non_decomp_certificate(t);
  require(c && c->row == 2 && c->column == 0, "25 x 25 certificate is not at entry (2,0)");
  const CoverResult r = find_covering_perm(t, 2, 0, true);
  require(!r.witness, "entry (2,0) of the 25 x 25 fixture is coverable");
  std::set<std::pair<int, int>> forced;
  const SearchEvent* conflict = nullptr;
  for (const auto& e : r.trace) {
    if (e.kind == SearchEvent::Kind::Forced)
      forced.emplace(e.column, e.row);
    if (e.kind == SearchEvent::Kind::Conflict && !conflict)
      conflict = &e;
  }
  for (auto [j, i] : {std::pair{13, 18}, std::pair{21, 4}, std::pair{8, 17}})
    require(forced.count({j, i}) == 1, "trace lacks forced pi(" + std::to_string(j) + ") = " + std::to_string(i));
  require(conflict && conflict->detail.find("up-diagonal 0") != std::string::npos,
          "trace does not end on the up-diagonal 0 clash");
  return std::to_string(certified) + " certified, " + std::to_string(uniform) + " with no panmagic permutations";
}

// Random element of Pan(m, Q) with magic number mu, built from panmagic
// permutation matrices and, for m >= 7, the magic-number-0 correction block.
SquareMatrix random_panmagic(std::mt19937_64& rng, int m, const Scalar& mu) {
  static const std::vector<Permutation> p5 = enumerate_panmagic(5), p7 = enumerate_panmagic(7);
  if (m == 1)
    return SquareMatrix(1, mu);
  const auto& pool = m == 5 ? p5 : p7;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  SquareMatrix a(m);
  Scalar sum = 0;
  for (int k = 0; k < 3; ++k) {
    const Scalar c = oracle::random_rational(rng);
    a += c * perm_matrix(pool[pick(rng)]);
    sum += c;
  }
  a += (mu - sum) * perm_matrix(pool[pick(rng)]);
  if (m >= 7)
    a += oracle::random_rational(rng) * lemma41_correction(m);
  return a;
}

std::string product_theorems() {
  std::mt19937_64 rng(20260102);
  const int orders[] = {1, 5, 7};
  static const std::vector<Permutation> p5 = enumerate_panmagic(5), p7 = enumerate_panmagic(7);
  auto panmagic_pool = [&](int m) -> const std::vector<Permutation>& { return m == 5 ? p5 : p7; };
  auto pick_from = [&](const std::vector<Permutation>& pool) {
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  };

  for (int trial = 0; trial < 100; ++trial) {
    // Wreath of equal-mu panmagic blocks with a panmagic outer matrix.
    const int m = orders[trial % 3], n = orders[(trial / 3) % 3];
    const Scalar mu_a = oracle::random_rational(rng), mu_b = oracle::random_rational(rng);
    std::vector<SquareMatrix> blocks;
    for (int s = 0; s < n; ++s)
      blocks.push_back(random_panmagic(rng, m, mu_a));
    const MagicReport r = check_panmagic(wreath_matrices(blocks, random_panmagic(rng, n, mu_b)));
    require(r.panmagic() && r.mu() == mu_a * mu_b, "wreath magic number is not multiplicative");
  }
  for (int trial = 0; trial < 100; ++trial) {
    // Wreath of permutations with a panmagic outer permutation: panmagic
    // exactly when every inner permutation is.
    const int m = trial % 2 ? 5 : 7, n = trial % 4 < 2 ? 5 : 7;
    const Permutation rho = pick_from(panmagic_pool(n));
    std::vector<Permutation> lambdas;
    bool all_panmagic = true;
    for (int s = 0; s < n; ++s) {
      const bool bad = trial % 2 == 0 && std::bernoulli_distribution(0.15)(rng);
      lambdas.push_back(bad ? oracle::random_permutation(rng, m) : pick_from(panmagic_pool(m)));
      all_panmagic = all_panmagic && is_panmagic_perm(lambdas.back()).has_value();
    }
    require(is_panmagic_perm(wreath_perms(lambdas, rho)).has_value() == all_panmagic,
            "wreath of permutations disagrees with its factors");
  }
  for (int trial = 0; trial < 100; ++trial) {
    // Kronecker products of panmagic matrices.
    const int m = orders[trial % 3], n = orders[(trial / 3) % 3];
    const Scalar mu_a = oracle::random_rational(rng), mu_b = oracle::random_rational(rng);
    const MagicReport r = check_panmagic(kronecker(random_panmagic(rng, m, mu_a), random_panmagic(rng, n, mu_b)));
    require(r.panmagic() && r.mu() == mu_a * mu_b, "Kronecker product is not panmagic");
  }
  for (int trial = 0; trial < 100; ++trial) {
    // Kronecker products of panmagic permutations.
    const Permutation l = pick_from(panmagic_pool(trial % 2 ? 5 : 7)), r = pick_from(panmagic_pool(trial % 3 ? 5 : 7));
    std::vector<Permutation> lambdas(r.degree(), l);
    const Permutation w = wreath_perms(lambdas, r);
    require(is_panmagic_perm(w).has_value(), "Kronecker product of permutations is not panmagic");
    require(perm_matrix(w) == kronecker(perm_matrix(l), perm_matrix(r)), "permutation product differs from matrices");
  }
  for (int trial = 0; trial < 100; ++trial) {
    // Factor a permutation inside supp(A x P_rho) back into blocks inside supp A.
    const int m = trial % 2 ? 5 : 7, n = trial % 3 ? 5 : 7;
    const Permutation rho = pick_from(panmagic_pool(n));
    const Permutation u = pick_from(panmagic_pool(m)), v = pick_from(panmagic_pool(m));
    const SquareMatrix a = make_scalar(1, 2) * (perm_matrix(u) + perm_matrix(v));
    std::vector<Permutation> lambdas;
    for (int s = 0; s < n; ++s)
      lambdas.push_back(std::bernoulli_distribution(0.5)(rng) ? u : v);
    const Permutation p = wreath_perms(lambdas, rho);
    require(support_subset(perm_matrix(p), kronecker(a, perm_matrix(rho))), "constructed permutation leaves support");
    const auto got = factor_through_support(p, a, rho);
    require(got == lambdas, "factorization does not recover the blocks");
    for (const auto& l : got)
      require(support_subset(perm_matrix(l), a), "recovered block leaves supp A");
  }
  return "5 x 100 instances";
}

std::string affine_criterion() {
  std::size_t checked = 0;
  for (int n = 1; n <= 50; ++n)
    for (long a = 0; a < n; ++a) {
      if (gcd(a, n) != 1)
        continue;
      const bool predicted = gcd(a * (a - 1) * (a + 1), n) == 1;
      require(is_affine_panmagic({a, 0}, n) == predicted, "arithmetic criterion disagrees at n = " + std::to_string(n));
      for (long b = 0; b < n; ++b) {
        const Permutation p = affine_perm({a, b}, n);
        require(is_panmagic_perm(p).has_value() == predicted, "n = " + std::to_string(n) + ", a = " +
                                                                  std::to_string(a) + ", b = " + std::to_string(b));
        require(oracle::panmagic_by_diagonals(p) == predicted, "diagonal oracle disagrees");
        ++checked;
      }
    }
  return std::to_string(checked) + " affine maps";
}

std::string piecewise_construction() {
  for (auto [n, p] : {std::pair{25, 5}, std::pair{35, 5}, std::pair{35, 7}, std::pair{49, 7}}) {
    const Permutation pi = nonaffine_piecewise(n, p);
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(p) + ")";
    require(is_panmagic_perm(pi).has_value(), tag + " not panmagic");
    require(!is_affine(pi), tag + " is affine");
  }
  return "4 instances";
}

struct Criterion {
  const char* id;
  const char* title;
  double limit_seconds;
  std::function<std::string()> body;
};

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "enumeration counts and affine structure", 60, enumeration_counts},
      {"AC2", "order-5 decomposition round trip", 10, order5_round_trip},
      {"AC3", "order-5 spanning rank", 1, spanning_rank},
      {"AC4", "7 x 7 matrix: LP infeasible and certified", 10, seven_by_seven},
      {"AC5", "counterexample family up to n = 49", 300, counterexample_family},
      {"AC6", "product theorems, property-based", 60, product_theorems},
      {"AC7", "affine panmagic criterion for n <= 50", 30, affine_criterion},
      {"AC8", "non-affine piecewise construction", 5, piecewise_construction},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.body();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && secs > c.limit_seconds) {
      ok = false;
      detail += " (over time budget)";
    }
    failed += ok ? 0 : 1;
    std::printf("[%s] %s %s: %s (%.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", c.id, c.title, detail.c_str(), secs,
                c.limit_seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
