#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "satset/bounds.hpp"

using namespace satset;
using namespace satset::bounds;

namespace {

// f_q(k) as a reduced int64 fraction, reducing after every factor.
std::pair<long long, long long> small_fq(long long q, long long k) {
  long long num = 1, den = 1;
  for (long long i = 2; i <= k; ++i) {
    const long long a = q * (q + 1) - i * (q - 1), b = q * (q + 1);
    num *= a;
    den *= b;
    const long long g = std::gcd(num, den);
    num /= g;
    den /= g;
  }
  return {num, den};
}

}  // namespace

TEST(Bounds, StepProductSmallValues) {
  EXPECT_EQ(f_q(7, 2), Rational(11, 14));
  EXPECT_EQ(f_q(7, 3), Rational(209, 392));
  EXPECT_EQ(f_q(7, 1), Rational(1));
  EXPECT_EQ(f_q(7, 0), Rational(1));
  for (long long q : {3, 4, 5, 7, 8, 9, 11, 13})
    for (long long k = 0; k < 6; ++k) {
      const auto [n, d] = small_fq(q, k);
      EXPECT_EQ(f_q(q, k), Rational(n, d)) << "q=" << q << " k=" << k;
    }
  EXPECT_THROW(f_q(1, 3), DomainError);
}

TEST(Bounds, StepProductNonPositiveFactor) {
  // q(q+1) - i(q-1) hits zero at q=3, i=6.
  EXPECT_THROW(f_q(3, 6), NonPositiveFactor);
  EXPECT_NO_THROW(f_q(3, 5));
}

TEST(Bounds, StepProductIsDecreasing) {
  for (std::uint64_t q : {17u, 64u, 101u})
    for (std::uint64_t k = 2; k + 4 < q; ++k) ASSERT_LT(f_q(q, k), f_q(q, k - 1));
}

TEST(Bounds, ExponentialEstimate) {
  // k = 2 sits just above the estimate; larger k fall below it.
  EXPECT_FALSE(fq_exponential_check(7, 2));
  EXPECT_TRUE(fq_exponential_check(101, 10));
  EXPECT_TRUE(fq_exponential_check(101, 96));
  EXPECT_THROW(fq_exponential_check(7, 3), ConditionViolated);
  EXPECT_THROW(fq_exponential_check(17, 1), DomainError);
}

TEST(Bounds, Upsilon) {
  EXPECT_NEAR(double(upsilon(9)), 12.5894041024673, 1e-9);
  EXPECT_NEAR(double(upsilon(919)), 152.298837431099, 1e-9);
  EXPECT_THROW(upsilon(1), DomainError);
  EXPECT_THROW(upsilon(0.5L), DomainError);
  EXPECT_THROW(upsilon(1.2L), DomainError);
}

TEST(Bounds, ThresholdAndGeneralBound) {
  EXPECT_NEAR(double(xi_star(9)), 2.33697140756172, 1e-10);
  const auto kt = k_threshold(9, xi_star(9));
  EXPECT_TRUE(kt.in_domain);
  EXPECT_EQ(kt.k, 9u);
  EXPECT_NEAR(double(general_bound(9, 9)), 14.1290641531612, 1e-9);
  EXPECT_THROW(general_bound(9, 0.5L), DomainError);
  EXPECT_THROW(general_bound(9, 82), DomainError);
  EXPECT_THROW(k_threshold(9, 0.5L), DomainError);
  EXPECT_FALSE(k_threshold(9, 82).in_domain);
  // xi = q^2 needs no greedy steps.
  EXPECT_EQ(k_threshold(9, 81).k, 0u);
  EXPECT_NEAR(double(general_bound(9, 81)), 81.0 / 2 + 3, 1e-12);
}

TEST(Bounds, GeneralBoundAtOptimumIsUpsilon) {
  for (double q : {5.0, 9.0, 17.0, 128.0, 919.0, 65536.0, 1e6})
    EXPECT_NEAR(double(general_bound(q, xi_star(q))), double(upsilon(q)), 1e-9 * q) << q;
}

TEST(Bounds, GeneralBoundNearItsMinimumAtOptimum) {
  // xi_star comes from an approximate minimization; it lands within 0.1% of the true minimum.
  for (double q : {64.0, 512.0, 4096.0}) {
    const double star = double(xi_star(q));
    const double at = double(general_bound(q, star));
    double best = at;
    for (double xi = 1; xi <= 4 * star; xi += 0.05) best = std::min(best, double(general_bound(q, xi)));
    EXPECT_LE(at - best, 1e-3 * at) << q;
  }
}

TEST(Bounds, LemmaCheck) {
  const auto lc = lemma_threshold_check(101, std::sqrt(101.0L));
  EXPECT_TRUE(lc.applicable);
  EXPECT_TRUE(lc.holds);
  EXPECT_FALSE(lemma_threshold_check(9, 1).applicable);
  // Independent evaluation in long double of q^2 f_q(k) at the threshold.
  for (std::uint64_t q : {49u, 101u, 256u, 997u}) {
    const auto lcq = lemma_threshold_check(q, 1);
    ASSERT_TRUE(lcq.applicable);
    long double prod = (long double)(q) * q;
    for (std::uint64_t i = 2; i <= lcq.k; ++i)
      prod *= 1 - (long double)(i) * (q - 1) / ((long double)(q) * (q + 1));
    EXPECT_EQ(lcq.holds, prod <= 1 + 1e-12L) << q;
  }
}

TEST(Bounds, ComparisonBounds) {
  const auto b = comparison_bounds(101);
  const double lq = std::log(101.0);
  EXPECT_NEAR(double(b.bst), 3 * std::sqrt(2.0) * std::sqrt(101 * lq), 1e-9);
  EXPECT_NEAR(double(b.bdgmp), 2 * std::sqrt(102 * std::log(102.0)) + 2, 1e-9);
  EXPECT_NEAR(double(b.nagy_finite), std::sqrt(3 * 101 * lq) + std::sqrt(101.0) / 2 + 2, 1e-9);
  EXPECT_NEAR(double(b.trivial_lower), std::sqrt(202.0) + 1, 1e-12);
  ASSERT_TRUE(b.arc_search.has_value());
  EXPECT_NEAR(double(*b.arc_search), 0.998 * std::sqrt(3 * 101 * lq), 1e-9);
  EXPECT_FALSE(comparison_bounds(5).arc_search.has_value());
  EXPECT_FALSE(comparison_bounds(301817).arc_search.has_value());
  EXPECT_NEAR(double(*comparison_bounds(200000).arc_search), 1.05 * std::sqrt(3 * 200000 * std::log(200000.0)), 1e-6);
  EXPECT_GT(b.upsilon, b.nagy_finite);  // upsilon only wins for larger q
  EXPECT_LT(comparison_bounds(1009).upsilon, comparison_bounds(1009).nagy_finite);
  EXPECT_GT(b.upsilon, b.trivial_lower);
}

TEST(Bounds, DeltaProperties) {
  std::vector<Real> grid;
  for (Real q = 919; q <= 1e6; q *= 1.5L) grid.push_back(q);
  const auto rep = delta_properties(grid);
  EXPECT_TRUE(rep.positive_from_919);
  EXPECT_TRUE(rep.ratio_increasing);
  EXPECT_TRUE(rep.ratio_below_half);
  EXPECT_FALSE(rep.first_nonpositive.has_value());
  EXPECT_NEAR(double(delta(1e6) / 1e3), 0.16457, 1e-4);
  // Small orders are not covered by the claim.
  const std::vector<Real> small{9, 17};
  EXPECT_LT(delta(9), 0);
  EXPECT_TRUE(delta_properties(small).positive_from_919);
}

TEST(Bounds, GiuliettiBranches) {
  EXPECT_NEAR(double(giulietti_branch_i(2, 4, 1)), 18.0, 1e-12);
  EXPECT_NEAR(double(giulietti_phi(1, 2, 1)), 11.0, 1e-12);
  EXPECT_NEAR(double(giulietti_phi(1, 2, 2)), 14.0 + 1.0 / 7, 1e-12);
  EXPECT_NEAR(double(giulietti_branch_ii(2, 2, 1)), 6.0, 1e-12);
  EXPECT_NEAR(double(giulietti_branch_iii(2, 3, 1)), 11.0, 1e-12);
  EXPECT_THROW(giulietti_branch_i(2, 1, 1), BranchInapplicable);
  EXPECT_THROW(giulietti_branch_i(4, 2, 1), BranchInapplicable);
  EXPECT_THROW(giulietti_branch_ii(2, 3, 1), BranchInapplicable);
  EXPECT_THROW(giulietti_phi(1, 2, 4), BranchInapplicable);

  const auto rep = giulietti_bounds(2, 4, 1, 1);
  EXPECT_TRUE(rep.branch_i.has_value());
  EXPECT_FALSE(rep.branch_ii.has_value());
  EXPECT_FALSE(rep.branch_iii.has_value());
  EXPECT_EQ(rep.inapplicable.size(), 2u);
  EXPECT_FALSE(giulietti_best(7).has_value());
  EXPECT_NEAR(double(*giulietti_best(8)), 10.0, 1e-12);  // branch (i), t = 1: 16/2 + 1 + 1
}

TEST(Bounds, SpaceBounds) {
  const auto s = space_bounds(4, 81);
  ASSERT_TRUE(s.even_general.has_value());
  EXPECT_NEAR(double(*s.upper()), double(upsilon(81)) * 81 + 2, 1e-9);
  const auto s8 = space_bounds(8, 81);
  ASSERT_TRUE(s8.even_special.has_value());
  EXPECT_NEAR(double(*s8.upper()), double(upsilon(81)) * std::pow(81.0, 3) + 2 * 81 * 81 + 81 + 1, 1e-3);
  const auto odd = space_bounds(3, 7);
  EXPECT_NEAR(double(*odd.odd), 2 * 7 + 1, 1e-12);
  EXPECT_NEAR(double(odd.trivial_lower), std::sqrt(2.0) * 7, 1e-9);
  EXPECT_NEAR(double(*space_bounds(5, 7).odd), 2 * 49 + 7, 1e-12);

  try {
    space_bounds(4, 9);
    FAIL() << "expected BranchInapplicable";
  } catch (const BranchInapplicable& e) {
    EXPECT_NE(std::string(e.what()).find("q >= 79"), std::string::npos);
  }
  EXPECT_THROW(space_bounds(3, 9), BranchInapplicable);
  EXPECT_THROW(space_bounds(7, 128), BranchInapplicable);
  EXPECT_NO_THROW(space_bounds(6, 128));
}

TEST(Bounds, ReportAndCsv) {
  const auto rep = make_bound_report(81);
  EXPECT_NEAR(double(rep.xi), double(xi_star(81)), 1e-15);
  EXPECT_NEAR(double(rep.values.at("general_phi")), double(rep.values.at("upsilon")), 1e-9);
  EXPECT_TRUE(rep.values.count("giulietti"));
  EXPECT_TRUE(rep.values.count("space_N4"));
  EXPECT_FALSE(make_bound_report(17).values.count("space_N4"));

  std::ostringstream os;
  const std::vector<std::uint32_t> qs{17, 19};
  bounds_table(qs, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8);
  }
  EXPECT_EQ(rows, 2);

  std::ostringstream empty;
  bounds_table({}, empty);
  EXPECT_EQ(empty.str(), std::string(kCsvHeader) + "\n");
}
