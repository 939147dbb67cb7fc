#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "hecke/cartan_types.hpp"
#include "hecke/coxeter.hpp"

using namespace hecke;

namespace {

std::unique_ptr<CoxeterGroup> make(const std::string& type) {
  NamedType nt = named_type(type);
  return std::make_unique<CoxeterGroup>(nt.cartan, nt.names);
}

// Oracle for type A_{n-1}: permutations, length = inversion count.
struct Perm {
  std::vector<int> p;
  explicit Perm(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  void apply_right(int i) { std::swap(p[i], p[i + 1]); }
  int inversions() const {
    int c = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) c += p[i] > p[j];
    return c;
  }
};

Word random_word(std::mt19937& rng, std::size_t rank, std::size_t len) {
  std::uniform_int_distribution<int> d(0, static_cast<int>(rank) - 1);
  Word w(len);
  for (auto& g : w) g = static_cast<Generator>(d(rng));
  return w;
}

// every word of length len
std::vector<Word> all_words(std::size_t rank, std::size_t len) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Word> next;
    for (const Word& w : out)
      for (std::size_t s = 0; s < rank; ++s) {
        Word x = w;
        x.push_back(static_cast<Generator>(s));
        next.push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST(Cartan, BraidOrders) {
  EXPECT_EQ(named_type("A2").cartan.braid_order(0, 1), 3);
  EXPECT_EQ(named_type("B2").cartan.braid_order(0, 1), 4);
  EXPECT_EQ(named_type("G2").cartan.braid_order(0, 1), 6);
}

TEST(Cartan, RejectsBadMatrices) {
  EXPECT_THROW(CartanMatrix({{2, 1}, {-1, 2}}), std::invalid_argument);
  EXPECT_THROW(CartanMatrix({{2, 0}, {-1, 2}}), std::invalid_argument);
  EXPECT_THROW(CartanMatrix({{1, 0}, {0, 2}}), std::invalid_argument);
}

TEST(NormalForm, TrivialExamples) {
  auto w = make("A2");
  EXPECT_EQ(w->normal_form(Word{0, 0}).length(), 0u);
  EXPECT_EQ(w->normal_form(Word{1, 0}).normal_form(), (Word{1, 0}));
  CoxeterGroup commuting(CartanMatrix({{2, 0}, {0, 2}}));
  EXPECT_EQ(commuting.normal_form(Word{0, 1, 0}).normal_form(), (Word{1}));
  EXPECT_THROW((void)w->normal_form(Word{5}), std::invalid_argument);
}

TEST(NormalForm, LexLeastAndCanonical) {
  auto w = make("A2");
  // sts = tst, lex-least is sts
  EXPECT_EQ(w->normal_form(Word{1, 0, 1}).normal_form(), (Word{0, 1, 0}));
  auto b = make("B3");
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    Word word = random_word(rng, 3, 10);
    CoxeterElement x = b->normal_form(word);
    // canonicity: every reduced word normalizes to the same element
    for (const Word& r : b->reduced_expressions(b->id(x))) {
      EXPECT_EQ(b->normal_form(r), x);
      EXPECT_LE(x.normal_form(), r);
    }
  }
}

TEST(Length, MatchesPermutationInversions) {
  auto w = make("A4");
  std::mt19937 rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    Word word = random_word(rng, 4, 14);
    Perm p(5);
    for (Generator g : word) p.apply_right(g);
    EXPECT_EQ(static_cast<int>(w->normal_form(word).length()), p.inversions());
  }
}

TEST(Multiply, Basics) {
  auto w = make("A2");
  CoxeterElement s = w->normal_form(Word{0}), t = w->normal_form(Word{1}), e = w->normal_form(Word{});
  EXPECT_EQ(w->multiply(s, e), s);
  EXPECT_EQ(w->multiply(s, s), e);
  EXPECT_EQ(w->multiply(s, t).length(), 2u);
  auto other = make("A2");
  EXPECT_THROW((void)w->multiply(s, other->normal_form(Word{0})), std::invalid_argument);
}

TEST(GroupOrder, FiniteTypes) {
  std::map<std::string, std::size_t> orders = {{"A1", 2},  {"A2", 6},   {"A3", 24}, {"A4", 120}, {"B2", 8},
                                               {"B3", 48}, {"C3", 48},  {"G2", 12}, {"D4", 192}, {"F4", 1152}};
  for (const auto& [name, order] : orders) {
    auto w = make(name);
    auto w0 = w->longest_element();
    ASSERT_TRUE(w0) << name;
    EXPECT_EQ(w->enumerate(w->length(*w0)).size(), order) << name;
  }
  EXPECT_FALSE(make("C~2")->longest_element());
}

TEST(Bruhat, Examples) {
  auto w = make("A2");
  ElementId s = w->from_word(Word{0}), t = w->from_word(Word{1}), sts = w->from_word(Word{0, 1, 0});
  EXPECT_TRUE(w->bruhat_leq(w->identity(), sts));
  EXPECT_FALSE(w->bruhat_leq(s, t));
  EXPECT_TRUE(w->bruhat_leq(s, sts));
}

// Oracle: subword containment in a reduced word of x.
TEST(Bruhat, AgreesWithSubwordsAndIsPartialOrder) {
  for (std::string type : {"B3", "A3", "C~2"}) {
    auto w = make(type);
    auto elems = w->enumerate(type == "C~2" ? 5 : 9);
    std::set<std::pair<ElementId, ElementId>> leq;
    for (ElementId x : elems) {
      const Word& r = w->word(x);
      std::set<ElementId> below;
      for (Mask m = 0; m < (Mask{1} << r.size()); ++m) {
        Word sub;
        for (std::size_t i = 0; i < r.size(); ++i)
          if ((m >> i) & 1U) sub.push_back(r[i]);
        below.insert(w->from_word(sub));
      }
      for (ElementId y : elems) {
        bool expect = below.count(y) > 0;
        ASSERT_EQ(w->bruhat_leq(y, x), expect) << type << " " << w->format(y) << " <= " << w->format(x);
        if (expect) leq.insert({y, x});
      }
    }
    for (auto [y, x] : leq) {
      if (y != x) EXPECT_FALSE(leq.count({x, y}));
    }
    // transitivity on a sample
    for (auto [a, b] : leq)
      for (ElementId c : elems)
        if (leq.count({b, c})) {
          EXPECT_TRUE(leq.count({a, c}));
        }
  }
}

// Oracle: exhaustive search over all words of length l(x).
TEST(ReducedExpressions, ExhaustiveSearch) {
  {
    auto a2 = make("A2");
    auto r = a2->reduced_expressions(a2->from_word(Word{0, 1, 0}));
    EXPECT_EQ(r, (std::set<Word>{{0, 1, 0}, {1, 0, 1}}));
    EXPECT_EQ(a2->reduced_expressions(a2->identity()), (std::set<Word>{Word{}}));
    auto b2 = make("B2");
    EXPECT_EQ(b2->reduced_expressions(b2->from_word(Word{0, 1, 0})), (std::set<Word>{{0, 1, 0}}));
  }
  for (std::string type : {"A3", "B3", "C~2"}) {
    auto w = make(type);
    std::map<ElementId, std::set<Word>> by_element;
    for (std::size_t len = 0; len <= 6; ++len)
      for (const Word& word : all_words(3, len)) {
        ElementId x = w->from_word(word);
        if (w->length(x) == static_cast<int>(len)) by_element[x].insert(word);
      }
    for (const auto& [x, words] : by_element) {
      EXPECT_EQ(w->reduced_expressions(x), words) << type << " " << w->format(x);
      for (const Word& r : words) EXPECT_EQ(w->from_word(r), x);
    }
  }
}

TEST(Subexpressions, Examples) {
  auto w = make("A2");
  auto one = w->subexpressions(Word{0});
  ASSERT_EQ(one.size(), 2u);
  EXPECT_EQ(one[1].endpoint, w->from_word(Word{0}));
  EXPECT_EQ(one[1].defect, 0);
  EXPECT_EQ(one[0].endpoint, w->identity());
  EXPECT_EQ(one[0].defect, 1);
  auto two = w->subexpressions(Word{0, 0});
  // mask (1,0): bit 0 set
  EXPECT_EQ(two[1].endpoint, w->from_word(Word{0}));
  EXPECT_EQ(two[1].defect, -1);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Word word = random_word(rng, 2, 7);
    auto subs = w->subexpressions(word);
    EXPECT_EQ(subs.size(), std::size_t{1} << word.size());
    ElementId x = w->from_word(word);
    if (w->length(x) == static_cast<int>(word.size())) {
      EXPECT_EQ(subs.back().endpoint, x);
      EXPECT_EQ(subs.back().defect, 0);
    }
  }
  EXPECT_THROW((void)w->subexpressions(Word(25, 0)), ResourceLimitError);
}

TEST(Parabolic, Examples) {
  auto a2 = make("A2");
  auto pd = a2->parabolic_data({0, 1}, 10);
  ASSERT_TRUE(pd.longest);
  EXPECT_EQ(a2->length(*pd.longest), 3);
  auto empty = a2->parabolic_data({}, 10);
  EXPECT_EQ(*empty.longest, a2->identity());
  EXPECT_EQ(empty.min_reps.size(), 6u);

  auto b2 = make("B2");
  auto pb = b2->parabolic_data({0}, 3);
  EXPECT_EQ(*pb.longest, b2->from_word(Word{0}));
  std::vector<std::string> reps;
  for (ElementId x : pb.min_reps) reps.push_back(b2->format(x));
  EXPECT_EQ(reps, (std::vector<std::string>{"e", "t", "st", "tst"}));
  for (ElementId x : pb.min_reps) EXPECT_GT(b2->length(b2->right_multiply(x, 0)), b2->length(x));

  auto affine = make("C~2");
  auto pa = affine->parabolic_data({1, 2}, 6);
  ASSERT_TRUE(pa.longest);
  EXPECT_EQ(affine->length(*pa.longest), 4);
  EXPECT_FALSE(affine->parabolic_data({0, 1, 2}, 2).longest);
}
