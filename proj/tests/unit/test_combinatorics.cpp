#include "bernpos/combinatorics.hpp"
#include "exact_oracles.hpp"

#include <doctest.h>

#include <random>

using namespace bernpos;

TEST_SUITE("combinatorics") {
  TEST_CASE("binomial small and boundary values") {
    CHECK(binomial(4, 2) == 6);
    for (int n = 0; n <= 30; ++n) {
      CHECK(binomial(n, 0) == 1);
      CHECK(binomial(n, n) == 1);
    }
    CHECK_THROWS_AS(binomial(3, 4), std::domain_error);
    CHECK_THROWS_AS(binomial(3, -1), std::domain_error);
  }

  TEST_CASE("binomial agrees with Pascal triangle") {
    CHECK(binomial(60, 30) == BigInt("118264581564861424"));
    CHECK(oracles::pascal(60, 30) == BigInt("118264581564861424"));
    for (int n = 0; n <= 80; n += 7)
      for (int k = 0; k <= n; ++k) REQUIRE(binomial(n, k) == oracles::pascal(n, k));
  }

  TEST_CASE("binomial_real relative accuracy") {
    for (int n : {10, 60, 200, 1000})
      for (int k : {0, 1, n / 3, n / 2, n}) {
        const double exact = binomial(n, k).convert_to<double>();
        CHECK(binomial_real(n, k) == doctest::Approx(exact).epsilon(1e-13));
      }
  }

  TEST_CASE("multinomial") {
    CHECK(multinomial(MultiIndex{1, 1}) == 2);
    CHECK(multinomial(MultiIndex{7}) == 1);
    CHECK(multinomial(MultiIndex{2, 1, 1}) == 12);
    CHECK(multinomial(MultiIndex{0, 0}) == 1);
  }

  TEST_CASE("multinomial property: sum over order slice is d^r") {
    for (int d = 1; d <= 4; ++d)
      for (int r = 0; r <= 6; ++r) {
        BigInt sum = 0;
        for (const auto& i : order_slice(d, r)) sum += multinomial(i);
        BigInt want = 1;
        for (int k = 0; k < r; ++k) want *= d;
        CHECK(sum == want);
      }
  }

  TEST_CASE("lattice enumeration is row-major") {
    const auto l11 = lattice(DegreeVector{1, 1});
    REQUIRE(l11.size() == 4);
    CHECK(l11[0] == MultiIndex{0, 0});
    CHECK(l11[1] == MultiIndex{0, 1});
    CHECK(l11[2] == MultiIndex{1, 0});
    CHECK(l11[3] == MultiIndex{1, 1});

    const auto l2 = lattice(DegreeVector{2});
    REQUIRE(l2.size() == 3);
    CHECK(l2[2] == MultiIndex{2});

    const DegreeVector n23{2, 3};
    const auto l23 = lattice(n23);
    CHECK(l23.size() == 12);
    CHECK(l23.front() == MultiIndex{0, 0});
    CHECK(l23.back() == MultiIndex{2, 3});
    for (std::size_t k = 0; k < l23.size(); ++k) CHECK(lattice_offset(n23.entries(), l23[k].entries()) == k);
  }

  TEST_CASE("order_slice") {
    const auto s = order_slice(2, 2);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == MultiIndex{0, 2});
    CHECK(s[1] == MultiIndex{1, 1});
    CHECK(s[2] == MultiIndex{2, 0});
    const auto s1 = order_slice(1, 5);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0] == MultiIndex{5});
    CHECK(order_slice(3, 2).size() == 6);
    for (int d = 1; d <= 4; ++d)
      for (int r = 0; r <= 5; ++r) {
        const auto sl = order_slice(d, r);
        CHECK(BigInt(sl.size()) == binomial(r + d - 1, d - 1));
        for (const auto& i : sl) CHECK(i.order() == r);
      }
  }

  TEST_CASE("taxicab norm") {
    CHECK(taxicab(std::vector<double>{0.3, -0.2}) == doctest::Approx(0.5));
    CHECK(taxicab(std::vector<double>{0.0, 0.0, 0.0}) == 0.0);
    CHECK(taxicab(std::vector<double>{1, 1, 1}) == 3.0);
  }

  TEST_CASE("index types reject invalid entries") {
    CHECK_THROWS(MultiIndex{1, -1});
    CHECK_THROWS(DegreeVector{0, 2});
    CHECK(DegreeVector{3, 4}.lattice_size() == 20);
    CHECK(DegreeVector{3, 4}.plus(2) == DegreeVector{5, 6});
    CHECK((MultiIndex{1, 2} + MultiIndex{3, 0}) == MultiIndex{4, 2});
  }
}
