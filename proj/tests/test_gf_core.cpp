#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracle.hpp"
#include "permrf/gf_core.hpp"

using namespace permrf;

namespace {

template <class Fn>
void expect_errc(Errc code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << errc_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

std::vector<std::uint32_t> digits(std::uint64_t k, std::uint64_t base, unsigned len) {
  std::vector<std::uint32_t> d(len);
  for (auto& x : d) {
    x = static_cast<std::uint32_t>(k % base);
    k /= base;
  }
  return d;
}

}  // namespace

TEST(Tower, CanonicalModuli) {
  EXPECT_EQ(make_tower(2, 1, 2)->modulus_h(), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(make_tower(3, 1, 2)->modulus_h(), (std::vector<std::uint32_t>{1, 0, 1}));
  EXPECT_EQ(make_tower(2, 1, 3)->modulus_h(), (std::vector<std::uint32_t>{1, 1, 0, 1}));
  EXPECT_EQ(make_tower(3, 1, 3)->modulus_h(), (std::vector<std::uint32_t>{1, 2, 0, 1}));
  EXPECT_EQ(make_tower(2, 2, 2)->modulus_g(), (std::vector<std::uint32_t>{1, 1, 1}));
}

TEST(Tower, CanonicalModulusIsFirstIrreducible) {
  for (const auto& s : oracle::small_towers()) {
    auto t = make_tower(s);
    if (t->size() > 256) continue;
    oracle::NaiveField field(*t);
    ASSERT_TRUE(field.base_is_field()) << s.to_string();
    ASSERT_TRUE(field.is_field()) << s.to_string();
    const auto& h = t->modulus_h();
    std::uint64_t rank = 0;
    for (unsigned i = s.n; i-- > 0;) rank = rank * t->q() + h[i];
    for (std::uint64_t k = 0; k < rank; ++k) {
      auto cand = digits(k, t->q(), s.n);
      cand.push_back(1);
      oracle::NaiveField other(t->p(), t->m(), t->n(), t->modulus_g(), cand);
      EXPECT_FALSE(other.is_field()) << s.to_string() << " candidate " << k;
    }
  }
}

TEST(Tower, Errors) {
  expect_errc(Errc::not_prime, [] { make_tower(4, 1, 2); });
  expect_errc(Errc::degree_zero, [] { make_tower(3, 1, 0); });
  expect_errc(Errc::size_budget_exceeded, [] { make_tower(2, 1, 25); });
  TowerOptions small;
  small.size_budget = 100;
  expect_errc(Errc::size_budget_exceeded, [&] { make_tower(11, 1, 2, small); });
  TowerOptions reducible;
  reducible.modulus_h = {1, 0, 1};  // v^2 + 1 = (v+1)^2 over F_2
  expect_errc(Errc::not_irreducible, [&] { make_tower(2, 1, 2, reducible); });
  expect_errc(Errc::usage, [] { parse_field_spec("3:2"); });
  expect_errc(Errc::usage, [] { parse_field_spec("3^x:2"); });
  EXPECT_EQ(parse_field_spec("3^2:2"), (FieldSpec{3, 2, 2}));
  EXPECT_EQ(parse_field_spec("3^2:2").to_string(), "3^2:2");
  EXPECT_EQ(prime_power_spec(9, 3), (FieldSpec{3, 2, 3}));
  expect_errc(Errc::not_prime, [] { prime_power_spec(12, 2); });
}

TEST(Tower, UserModulus) {
  TowerOptions opts;
  opts.modulus_h = {1, 0, 1, 1};  // v^3 + v^2 + 1
  auto t = make_tower(2, 1, 3, opts);
  EXPECT_EQ(t->modulus_h(), (std::vector<std::uint32_t>{1, 0, 1, 1}));
  TowerOptions implicit;
  implicit.modulus_h = {1, 0, 1};
  EXPECT_EQ(make_tower(2, 1, 3, implicit)->modulus_h(), t->modulus_h());
  oracle::NaiveField field(*t);
  for (std::uint64_t a = 0; a < 8; ++a) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      EXPECT_EQ((t->decode(a) * t->decode(b)).encode(), field.mul(a, b));
    }
  }
}

TEST(Arithmetic, SmallExamples) {
  auto f4 = make_tower(2, 1, 2);
  const Element u = f4->generator();
  EXPECT_EQ(u * u, u + f4->one());
  EXPECT_EQ(inverse(u), u + f4->one());
  EXPECT_EQ(frobenius(u, 1), u + f4->one());
  EXPECT_EQ(trace(u), f4->one());
  EXPECT_EQ(norm(u), f4->one());

  auto f4b = make_tower(2, 2, 1);
  const Element ub = f4b->decode(2, Level::base);
  EXPECT_EQ((ub * ub).encode(), 3u);

  auto f9 = make_tower(3, 1, 2);
  const Element t = f9->decode(3);
  const Element two = f9->decode(2);
  EXPECT_EQ(t * t, two);
  EXPECT_EQ(inverse(t + two), t + f9->one());
  EXPECT_EQ(inverse(f9->one()), f9->one());
  EXPECT_EQ(frobenius(t, 1), two * t);
  EXPECT_TRUE(trace(t).is_zero());
  EXPECT_EQ(norm(t), f9->one());
  EXPECT_EQ(t + f9->zero(), t);
  EXPECT_TRUE(norm(f9->zero()).is_zero());
  EXPECT_FALSE(is_in_subfield(t, 1));
  EXPECT_TRUE(is_in_subfield(f9->one(), 1));
  EXPECT_TRUE(is_in_subfield(f9->one(), 2));
  expect_errc(Errc::division_by_zero, [&] { inverse(f9->zero()); });
}

TEST(Arithmetic, BaseFieldFixedAndTraceIsNTimes) {
  auto tw = make_tower(3, 2, 3);
  for (const auto& a : tw->base_field_elements()) {
    for (unsigned i = 0; i < 3; ++i) EXPECT_EQ(frobenius(a, i), a);
    EXPECT_EQ(trace(a), a + a + a);
    EXPECT_EQ(norm(a), a * a * a);
  }
}

TEST(Encoding, Examples) {
  auto f9 = make_tower(3, 1, 2);
  EXPECT_EQ(f9->generator().encode(), 3u);
  EXPECT_EQ(f9->decode(3), f9->generator());
  auto f8 = make_tower(2, 1, 3);
  const Element t = f8->generator();
  EXPECT_EQ((t * t + f8->one()).encode(), 5u);
  for (auto level : {Level::prime, Level::base, Level::top}) {
    EXPECT_EQ(f8->decode(0, level).encode(), 0u);
    EXPECT_TRUE(f8->zero(level).is_zero());
  }
  auto tw = make_tower(2, 2, 2);
  for (std::uint64_t k = 0; k < tw->size(); ++k) EXPECT_EQ(tw->decode(k).encode(), k);
  for (std::uint32_t k = 0; k < tw->q(); ++k) EXPECT_EQ(tw->from_base(k).encode(), k);
  expect_errc(Errc::out_of_range, [&] { tw->decode(16); });
  expect_errc(Errc::level_mismatch, [&] { tw->decode(1, Level::base) + tw->one(); });
  auto other = make_tower(2, 2, 2);
  expect_errc(Errc::tower_mismatch, [&] { tw->one() * other->one(); });
}

TEST(Encoding, EmbedKeepsEncoding) {
  auto tw = make_tower(3, 2, 2);
  for (std::uint64_t k = 0; k < tw->q(); ++k) {
    const Element b = tw->decode(k, Level::base);
    EXPECT_EQ(tw->embed(b).encode(), k);
    EXPECT_TRUE(tw->in_base_field(tw->embed(b)));
    EXPECT_EQ(tw->to_base(tw->embed(b)), k);
  }
  for (std::uint64_t k = 0; k < tw->p(); ++k) {
    EXPECT_EQ(tw->embed(tw->decode(k, Level::prime)).encode(), k);
  }
}

TEST(Subfield, RelativeTraceLandsInSubfield) {
  auto tw = make_tower(2, 1, 4);
  std::map<std::uint64_t, int> fiber;
  for (std::uint64_t k = 0; k < tw->size(); ++k) {
    const Element a = tw->decode(k);
    const Element r = trace_rel(a, 4, 2);
    EXPECT_TRUE(is_in_subfield(r, 2));
    EXPECT_EQ(trace_rel(r, 2, 1), trace(a));
    ++fiber[r.encode()];
  }
  EXPECT_EQ(fiber.size(), 4u);
  for (auto& [enc, count] : fiber) EXPECT_EQ(count, 4);
  expect_errc(Errc::non_divisor_degrees, [&] { trace_rel(tw->one(), 4, 3); });
  expect_errc(Errc::not_in_subfield, [&] { trace_rel(tw->generator(), 2, 1); });
}

// Library arithmetic against schoolbook reference arithmetic on the same moduli.
TEST(Arithmetic, MatchesNaiveField) {
  std::mt19937_64 rng(7);
  for (const auto& s : oracle::small_towers()) {
    auto tw = make_tower(s);
    oracle::NaiveField ref(*tw);
    const std::uint64_t N = tw->size();
    const bool all_pairs = N <= 64;
    const std::uint64_t pairs = all_pairs ? N * N : 4000;
    for (std::uint64_t i = 0; i < pairs; ++i) {
      const std::uint64_t a = all_pairs ? i / N : rng() % N;
      const std::uint64_t b = all_pairs ? i % N : rng() % N;
      const Element x = tw->decode(a), y = tw->decode(b);
      ASSERT_EQ((x + y).encode(), ref.add(a, b)) << s.to_string();
      ASSERT_EQ((x - y).encode(), ref.sub(a, b)) << s.to_string();
      ASSERT_EQ((x * y).encode(), ref.mul(a, b)) << s.to_string();
    }
    const std::uint64_t singles = N <= 1024 ? N : 500;
    for (std::uint64_t i = 0; i < singles; ++i) {
      const std::uint64_t a = N <= 1024 ? i : rng() % N;
      const Element x = tw->decode(a);
      ASSERT_EQ((-x).encode(), ref.neg(a));
      ASSERT_EQ(trace(x).encode(), ref.trace(a)) << s.to_string() << " a=" << a;
      ASSERT_EQ(norm(x).encode(), ref.norm(a)) << s.to_string() << " a=" << a;
      ASSERT_EQ(frobenius(x, 1).encode(), ref.frob(a, 1));
      ASSERT_EQ(pow(x, 5).encode(), ref.pow(a, 5));
      if (a != 0) ASSERT_EQ(inverse(x).encode(), ref.inv(a));
    }
  }
}

TEST(Algebra, FrobeniusTraceNormLaws) {
  std::mt19937_64 rng(11);
  for (const auto& s : oracle::small_towers()) {
    auto tw = make_tower(s);
    const unsigned n = tw->n();
    const std::uint64_t N = tw->size();
    std::map<std::uint64_t, std::uint64_t> trace_hits;
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(N, 1024); ++i) {
      const Element x = tw->decode(N <= 1024 ? i : rng() % N);
      const Element y = tw->decode(rng() % N);
      for (unsigned k = 0; k < n; ++k) {
        ASSERT_EQ(frobenius(x * y, k), frobenius(x, k) * frobenius(y, k));
        ASSERT_EQ(frobenius(x + y, k), frobenius(x, k) + frobenius(y, k));
      }
      ASSERT_EQ(frobenius(x, n), x);
      ASSERT_EQ(frobenius(frobenius(x, 1), n - 1), x);
      ASSERT_TRUE(tw->in_base_field(trace(x)));
      ASSERT_TRUE(tw->in_base_field(norm(x)));
      ASSERT_EQ(trace(x + y), trace(x) + trace(y));
      ASSERT_EQ(norm(x * y), norm(x) * norm(y));
      ASSERT_EQ(tw->trace_base(x), tw->to_base(trace(x)));
      if (!x.is_zero()) ASSERT_EQ(x * inverse(x), tw->one());
      if (N <= 1024) ++trace_hits[trace(x).encode()];
    }
    if (N <= 1024) {
      ASSERT_EQ(trace_hits.size(), tw->q()) << s.to_string();
      for (auto& [v, count] : trace_hits) ASSERT_EQ(count, N / tw->q());
    }
  }
}

TEST(DualBasis, Examples) {
  auto f4 = make_tower(2, 1, 2);
  const Element u = f4->generator();
  const std::vector<Element> basis{f4->one(), u};
  const auto dual = dual_basis(basis);
  ASSERT_EQ(dual.size(), 2u);
  EXPECT_EQ(dual[0], f4->one() + u);
  EXPECT_EQ(dual[1], f4->one());
  const std::vector<Element> dependent{u, u};
  expect_errc(Errc::not_a_basis, [&] { dual_basis(dependent); });
}

TEST(DualBasis, ReconstructsEveryElement) {
  std::mt19937_64 rng(3);
  for (const auto& s : oracle::small_towers()) {
    auto tw = make_tower(s);
    const unsigned n = tw->n();
    std::vector<Element> basis;
    // A random basis: retry until the Gram matrix is invertible.
    for (;;) {
      basis.clear();
      for (unsigned i = 0; i < n; ++i) basis.push_back(tw->decode(rng() % tw->size()));
      try {
        const auto dual = dual_basis(basis);
        for (unsigned i = 0; i < n; ++i) {
          for (unsigned j = 0; j < n; ++j) {
            ASSERT_EQ(trace(dual[i] * basis[j]), i == j ? tw->one() : tw->zero());
          }
        }
        for (int k = 0; k < 50; ++k) {
          const Element x = tw->decode(rng() % tw->size());
          Element sum = tw->zero();
          for (unsigned i = 0; i < n; ++i) sum += dual[i] * trace(basis[i] * x);
          ASSERT_EQ(sum, x);
        }
        break;
      } catch (const Error& e) {
        ASSERT_EQ(e.code(), Errc::not_a_basis);
      }
    }
  }
}

TEST(DualBasis, SelfDualIffOrthonormal) {
  auto tw = make_tower(2, 1, 3);
  // Enumerate every ordered basis of F_8/F_2 and compare the two conditions.
  int self_dual = 0;
  for (std::uint64_t a = 1; a < 8; ++a) {
    for (std::uint64_t b = 1; b < 8; ++b) {
      for (std::uint64_t c = 1; c < 8; ++c) {
        const std::vector<Element> basis{tw->decode(a), tw->decode(b), tw->decode(c)};
        if ((a ^ b ^ c) == 0 || a == b || b == c || a == c) continue;
        const auto dual = dual_basis(basis);
        bool orthonormal = true;
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            orthonormal = orthonormal && trace(basis[i] * basis[j]) == (i == j ? tw->one() : tw->zero());
          }
        }
        EXPECT_EQ(dual == basis, orthonormal);
        self_dual += orthonormal;
      }
    }
  }
  EXPECT_GT(self_dual, 0);
}

TEST(BasisDet, F8Example) {
  auto f8 = make_tower(2, 1, 3);
  const Element t = f8->generator();
  // Coordinates of 1, t^2+t, t^3 = t+1: (1,0,0), (0,1,1), (1,1,0) with determinant 1.
  EXPECT_EQ(basis_coordinate_det_b(t), f8->one());
  EXPECT_FALSE(basis_det_b(t).is_zero());
  EXPECT_EQ(basis_det_b(t), basis_det_closed_form(t));
  expect_errc(Errc::b_in_base_field, [&] { basis_det_b(f8->one()); });
  expect_errc(Errc::unsupported_degree, [] { basis_det_b(make_tower(3, 1, 2)->generator()); });
}

// Conjugate determinant computed from scratch by cofactor expansion in the naive field.
TEST(BasisDet, AgreesWithNaiveDeterminant) {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    auto tw = make_tower(prime_power_spec(q, 3));
    oracle::NaiveField f(*tw);
    for (std::uint64_t b = tw->q(); b < tw->size(); ++b) {
      const std::uint64_t w[3] = {1, f.add(f.frob(b, 1), b), f.mul(f.frob(b, 1), b)};
      std::uint64_t m[3][3];
      for (unsigned i = 0; i < 3; ++i) {
        for (unsigned j = 0; j < 3; ++j) m[i][j] = f.frob(w[j], i);
      }
      const auto minor = [&](int r1, int r2, int c1, int c2) {
        return f.sub(f.mul(m[r1][c1], m[r2][c2]), f.mul(m[r1][c2], m[r2][c1]));
      };
      std::uint64_t det = f.mul(m[0][0], minor(1, 2, 1, 2));
      det = f.sub(det, f.mul(m[0][1], minor(1, 2, 0, 2)));
      det = f.add(det, f.mul(m[0][2], minor(1, 2, 0, 1)));
      const Element eb = tw->decode(b);
      EXPECT_EQ(basis_det_b(eb).encode(), det) << "q=" << q << " b=" << b;
      EXPECT_NE(det, 0u);
      EXPECT_LT(det, q);
      EXPECT_NE(basis_coordinate_det_b(eb).encode(), 0u);
    }
  }
}

TEST(Render, Polynomials) {
  auto f9 = make_tower(3, 1, 2);
  EXPECT_EQ(f9->render(f9->decode(0)), "0");
  EXPECT_EQ(f9->render(f9->decode(5)), "v+2");
  auto f16 = make_tower(2, 2, 2);
  EXPECT_EQ(f16->render_base(3), "u+1");
}
