#include <doctest.h>

#include <random>

#include "coa/class_vector.hpp"
#include "test_util.hpp"

using namespace coa;

namespace {

ClassVector cv(std::initializer_list<double> vals) {
  ClassVector out = ClassVector::zero(static_cast<int>(vals.size()));
  int k = 1;
  for (double v : vals) out += ClassVector::unit(static_cast<int>(vals.size()), k++, v);
  return out;
}

const OrderMode kPaper{ClassCompare::PaperWorstClass, Accumulation::Count};
const OrderMode kRevlex{ClassCompare::ReverseLex, Accumulation::Count};

}  // namespace

TEST_CASE("cv_add componentwise with TOP absorption") {
  CHECK(cv_equal(cv({1, 0, 0}) + cv({0, 2, 0}), cv({1, 2, 0}), kPaper));
  const ClassVector x = cv({3, 1, 2});
  CHECK(cv_equal(x + ClassVector::zero(3), x, kRevlex));
  CHECK((ClassVector::top(3) + cv({1, 0, 0})).is_top());
  CHECK((cv({1, 0, 0}) + ClassVector::top(3)).is_top());
}

TEST_CASE("worst_class") {
  CHECK(cv({0, 0, 0}).worst_class() == 0);
  CHECK(cv({2, 0, 0}).worst_class() == 1);
  CHECK(cv({0, 1, 4}).worst_class() == 3);
}

TEST_CASE("cv_compare examples in both modes") {
  CHECK(cv_less(cv({1, 0, 0}), cv({0, 1, 0}), kPaper));
  CHECK(cv_less(cv({1, 0, 0}), cv({0, 1, 0}), kRevlex));
  CHECK(cv_less(cv({5, 0, 1}), cv({0, 0, 2}), kPaper));
  CHECK(cv_less(cv({5, 0, 1}), cv({0, 0, 2}), kRevlex));
  // Lower-class multiplicities are invisible to the worst-class order but
  // break the tie under reverse lexicographic comparison.
  CHECK(cv_equal(cv({3, 1, 0}), cv({7, 1, 0}), kPaper));
  CHECK(cv_less(cv({3, 1, 0}), cv({7, 1, 0}), kRevlex));
  CHECK(cv_compare(cv({7, 1, 0}), cv({3, 1, 0}), kRevlex) == std::strong_ordering::greater);
}

TEST_CASE("TOP compares greater than every finite vector and equal to itself") {
  for (const OrderMode& m : {kPaper, kRevlex}) {
    CHECK(cv_less(cv({9, 9, 9}), ClassVector::top(3), m));
    CHECK(cv_equal(ClassVector::top(3), ClassVector::top(3), m));
    CHECK(cv_compare(ClassVector::top(3), cv({0, 0, 0}), m) ==
          std::strong_ordering::greater);
  }
}

TEST_CASE("cv_compare is a total order (random vectors, L<=5)") {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> len(1, 5);
  for (const OrderMode& m : {kPaper, kRevlex}) {
    for (int it = 0; it < 2000; ++it) {
      const int L = len(rng);
      auto pick = [&](void) -> ClassVector {
        std::uniform_int_distribution<int> top(0, 9);
        if (top(rng) == 0) return ClassVector::top(L);
        return testutil::random_class_vector(rng, L, 3);
      };
      const ClassVector a = pick(), b = pick(), c = pick();
      // antisymmetry / totality
      const auto ab = cv_compare(a, b, m);
      const auto ba = cv_compare(b, a, m);
      CHECK((ab == std::strong_ordering::equal) == (ba == std::strong_ordering::equal));
      if (ab == std::strong_ordering::less)
        CHECK(ba == std::strong_ordering::greater);
      // transitivity of <=
      if (cv_leq(a, b, m) && cv_leq(b, c, m)) CHECK(cv_leq(a, c, m));
      // reflexivity
      CHECK(cv_equal(a, a, m));
    }
  }
}

TEST_CASE("adding a common finite vector preserves order of worst classes (restricted)") {
  // The worst-class order is translation-invariant whenever the added vector
  // does not introduce a class above both operands' worst classes.
  std::mt19937 rng(202);
  for (int it = 0; it < 2000; ++it) {
    const ClassVector a = testutil::random_class_vector(rng, 4, 3);
    const ClassVector b = testutil::random_class_vector(rng, 4, 3);
    const ClassVector d = testutil::random_class_vector(rng, 4, 3);
    const int cap = std::max(a.worst_class(), b.worst_class());
    if (d.worst_class() > cap) continue;
    const auto before = cv_compare(a, b, kPaper);
    if (before == std::strong_ordering::equal)
      CHECK(cv_equal(a + d, b + d, kPaper));
    // Strict order may collapse to equality but never reverse.
    else if (before == std::strong_ordering::less)
      CHECK(cv_leq(a + d, b + d, kPaper));
    // reverse_lex is fully translation invariant.
    CHECK(cv_compare(a + d, b + d, kRevlex) == cv_compare(a, b, kRevlex));
  }
}

TEST_CASE("reverse_lex refines the worst-class order") {
  std::mt19937 rng(303);
  for (int it = 0; it < 3000; ++it) {
    const ClassVector a = testutil::random_class_vector(rng, 5, 4);
    const ClassVector b = testutil::random_class_vector(rng, 5, 4);
    if (cv_less(a, b, kPaper)) CHECK(cv_less(a, b, kRevlex));
    if (cv_equal(a, b, kRevlex)) CHECK(cv_equal(a, b, kPaper));
  }
}

TEST_CASE("key_compare lexicographic over the four keys") {
  QueueKey a, b;
  a.k1 = cv({1, 0, 0});
  b.k1 = cv({0, 1, 0});
  a.k3 = 100.0;
  b.k3 = 1.0;
  CHECK(key_compare(a, b, kPaper) == std::strong_ordering::less);

  a.k1 = b.k1 = cv({0, 1, 0});
  a.k2 = b.k2 = cv({0, 1, 0});
  a.k3 = 3.0;
  b.k3 = 4.0;
  CHECK(key_compare(a, b, kPaper) == std::strong_ordering::less);

  b.k3 = 3.0;
  a.k4 = 1.0;
  b.k4 = 2.0;
  CHECK(key_compare(a, b, kPaper) == std::strong_ordering::less);

  b.k4 = 1.0 + kKeyTolerance / 2;  // inside the tolerance band
  CHECK(key_compare(a, b, kPaper) == std::strong_ordering::equal);
}

TEST_CASE("to_string renders integers in count mode") {
  CHECK(cv({2, 0, 1}).to_string(Accumulation::Count) == "[2,0,1]");
  CHECK(ClassVector::top(3).to_string(Accumulation::Count) == "[TOP]");
}
