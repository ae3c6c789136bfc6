#include <doctest.h>

#include "icregion/channel.hpp"
#include "icregion/coding.hpp"
#include "icregion/coefficients.hpp"
#include "icregion/errors.hpp"
#include "icregion/fm.hpp"
#include "icregion/search.hpp"
#include "oracle.hpp"

using namespace icr;
using enum Var;

namespace {

SweepConfig sweep(Family f, std::size_t q = 2) {
  SweepConfig cfg;
  cfg.family = f;
  cfg.card.q = q;
  cfg.samples = 1000;
  cfg.seed = 99;
  return cfg;
}

DiscreteIC flip(double p) { return builtin_channel("symmetric-flip", std::vector<double>{p}); }

CodingSpec copy_spec() {
  CodingSpec s;
  s.family = Family::HK;
  s.card = {1, 2, 1, 2, 1, 2, 2};
  s.q_dist = {1};
  for (int i : {1, 2}) {
    s.sender(i).w_given_q = {1};
    s.sender(i).u_given_q = {0.5, 0.5};
    s.sender(i).encoder = {0, 1};
  }
  return s;
}

// HOD spec with U1 = W1 uniform
CodingSpec hod_copy_spec() {
  CodingSpec s;
  s.family = Family::HOD;
  s.card = {1, 2, 2, 2, 2, 2, 2};
  s.q_dist = {1};
  s.s1.w_given_q = {0.5, 0.5};
  s.s1.u_given_qw = {1, 0, 0, 1};
  s.s1.encoder = {0, 0, 1, 1};
  s.s2.w_given_q = {0.5, 0.5};
  s.s2.u_given_qw = {0.5, 0.5, 0.5, 0.5};
  s.s2.encoder = {0, 1, 1, 0};
  return s;
}

void check_close(const SymbolValues& got, const SymbolValues& want, double tol) {
  for (const auto& [k, v] : want) {
    INFO(k);
    REQUIRE(got.count(k) == 1);
    CHECK(std::abs(got.at(k) - v) <= tol);
  }
}

}  // namespace

TEST_SUITE("region-eval") {
  TEST_CASE("copy channel with empty common parts") {
    const auto c = eval_hk(assemble_joint(copy_spec(), builtin_channel("clean")));
    for (double v : {c.a1, c.d1, c.e1, c.g1, c.a2, c.d2, c.e2, c.g2})
      CHECK(v == doctest::Approx(1.0));
    for (double v : {c.b1, c.c1, c.f1, c.b2, c.c2, c.f2}) CHECK(v == doctest::Approx(0.0));
  }

  TEST_CASE("useless channel gives all zero terms") {
    const auto useless = DiscreteIC(2, 2, 2, 2, std::vector<double>(16, 0.25));
    for (std::size_t i = 0; i < 5; ++i) {
      const auto s = sample_spec(sweep(Family::HK), i);
      for (const auto& [k, v] : eval_hk(assemble_joint(s, useless)).symbols())
        CHECK(std::abs(v) <= 1e-12);
    }
  }

  TEST_CASE("HK terms match the oracle on symmetric-flip(0.1)") {
    const auto ch = flip(0.1);
    for (std::size_t i = 0; i < 30; ++i) {
      const auto s = sample_spec(sweep(Family::HK), i);
      const auto o = oracle::hk(oracle::assemble(s, ch));
      check_close(eval_hk(assemble_joint(s, ch)).symbols(), o.symbols(), 1e-9);
    }
  }

  TEST_CASE("CMG terms") {
    // X independent of W, uniform, clean channel
    CodingSpec s;
    s.family = Family::CMG;
    s.card = {1, 1, 2, 1, 2, 2, 2};
    s.q_dist = {1};
    for (int i : {1, 2}) {
      s.sender(i).w_given_q = {0.5, 0.5};
      s.sender(i).x_given_qw = {0.5, 0.5, 0.5, 0.5};
    }
    auto c = eval_cmg(assemble_joint(s, builtin_channel("clean")));
    CHECK(c.A1 == doctest::Approx(1.0));
    CHECK(c.D1 == doctest::Approx(1.0));
    CHECK(c.A2 == doctest::Approx(1.0));
    CHECK(c.D2 == doctest::Approx(1.0));

    // X a function of W
    s.s1.x_given_qw = {1, 0, 0, 1};
    c = eval_cmg(assemble_joint(s, builtin_channel("clean")));
    CHECK(c.A1 == doctest::Approx(0.0));
    CHECK(c.D1 == doctest::Approx(1.0));

    const auto ch = flip(0.15);
    for (std::size_t i = 0; i < 30; ++i) {
      const auto r = sample_spec(sweep(Family::CMG), i);
      check_close(eval_cmg(assemble_joint(r, ch)).symbols(),
                  oracle::cmg(oracle::assemble(r, ch)).symbols(), 1e-9);
    }
  }

  TEST_CASE("missing variables are argument errors") {
    const JointPMF p({{Q, 1}, {Y1, 2}}, {0.5, 0.5});
    CHECK_THROWS_AS(eval_hk(p), ArgumentError);
    CHECK_THROWS_AS(eval_cmg(p), ArgumentError);
    CHECK_THROWS_AS(eval_hodtani(p), ArgumentError);
  }

  TEST_CASE("Hodtani terms on HK joints equal the HK terms") {
    const auto ch = builtin_channel("xor-interference");
    for (std::size_t i = 0; i < 20; ++i) {
      const auto j = assemble_joint(sample_spec(sweep(Family::HK), i), ch);
      const auto hk = eval_hk(j);
      const auto hod = eval_hodtani(j);
      CHECK(std::abs(hod.rho1) <= 1e-12);
      CHECK(std::abs(hod.rho2) <= 1e-12);
      CHECK(hod.B1 == doctest::Approx(hk.b1).epsilon(1e-12));
      CHECK(hod.C2 == doctest::Approx(hk.c2).epsilon(1e-12));
      CHECK(hod.F1 == doctest::Approx(hk.f1).epsilon(1e-12));
      const auto ap = appendix_consistency(j);
      CHECK(ap.pass);
      CHECK(ap.max_residual <= 1e-12);
    }
  }

  TEST_CASE("U1 = W1 gives rho1 = H(W1|Q)") {
    const auto j = assemble_joint(hod_copy_spec(), builtin_channel("clean"));
    const auto h = eval_hodtani(j);
    CHECK(h.rho1 == doctest::Approx(entropy(j.pmf, {W1, Q}) - entropy(j.pmf, {Q})));
    CHECK(h.rho1 == doctest::Approx(1.0));
    CHECK(h.rho2 == doctest::Approx(0.0));
    const auto hk = eval_hk(j);
    CHECK(h.C1 - hk.c1 == doctest::Approx(1.0));
  }

  TEST_CASE("Hodtani identities against independently recomputed terms") {
    const auto ch = flip(0.1);
    for (std::size_t i = 0; i < 30; ++i) {
      const auto s = sample_spec(sweep(Family::HOD), i);
      const auto pmf = oracle::assemble(s, ch);
      const auto o = oracle::hk(pmf);
      const double r1 = oracle::rho(pmf, 1), r2 = oracle::rho(pmf, 2);
      const auto h = eval_hodtani(assemble_joint(s, ch));
      CHECK(std::abs(h.B1 - o.b1 - r1) <= 1e-9);
      CHECK(std::abs(h.C1 - o.c1 - r1) <= 1e-9);
      CHECK(std::abs(h.F1 - o.f1 - r1) <= 1e-9);
      CHECK(std::abs(h.B2 - o.b2 - r2) <= 1e-9);
      CHECK(std::abs(h.C2 - o.c2 - r2) <= 1e-9);
      CHECK(std::abs(h.F2 - o.f2 - r2) <= 1e-9);
      CHECK(std::abs(h.a1 - o.a1) <= 1e-9);
      CHECK(std::abs(h.g2 - o.g2) <= 1e-9);
      CHECK(h.rho1 >= -1e-10);
    }
  }

  TEST_CASE("add_correlation") {
    HKCoefficients hk;
    hk.b1 = 0.1;
    hk.c1 = 0.2;
    hk.f1 = 0.3;
    hk.b2 = 0.4;
    const auto h = add_correlation(hk, 0.5, 0.25);
    CHECK(h.B1 == doctest::Approx(0.6));
    CHECK(h.C1 == doctest::Approx(0.7));
    CHECK(h.F1 == doctest::Approx(0.8));
    CHECK(h.B2 == doctest::Approx(0.65));
    CHECK(h.C2 == doctest::Approx(0.25));
  }

  TEST_CASE("appendix bookkeeping") {
    const auto ch = flip(0.05);
    for (std::size_t i = 0; i < 30; ++i) {
      const auto j = assemble_joint(sample_spec(sweep(Family::HOD), i), ch);
      const auto ap = appendix_consistency(j);
      CHECK(ap.pass);
      CHECK(ap.max_residual <= 1e-9);
    }
    // first row exceeds a1 by exactly rho1
    const auto j = assemble_joint(hod_copy_spec(), flip(0.1));
    const auto rows = binning_decoding_bounds(j.pmf, 1);
    const auto h = eval_hodtani(j);
    REQUIRE(h.rho1 > 0.5);
    CHECK(rows[0] - h.a1 == doctest::Approx(h.rho1).epsilon(1e-12));
    CHECK(rows[1] == doctest::Approx(h.B1).epsilon(1e-12));
    CHECK(rows[3] - h.rho1 == doctest::Approx(h.d1).epsilon(1e-12));
  }

  TEST_CASE("binning budget") {
    const auto b = tight_binning(0.3, 0.2);
    CHECK(b.s_small == doctest::Approx(0.5));
    CHECK(b.satisfied());
    BinningBudget loose{0.4, 0.3, 0.2};
    CHECK_FALSE(loose.satisfied());
  }

  TEST_CASE("bundle JSON carries every symbol") {
    const auto j = assemble_joint(hod_copy_spec(), builtin_channel("clean"));
    const auto text = to_json(eval_hodtani(j));
    for (const char* k : {"\"a1\"", "\"B1\"", "\"F2\"", "\"rho1\"", "\"rho2\""})
      CHECK(text.find(k) != std::string::npos);
  }

  TEST_CASE("structural relations hold numerically on random joints") {
    const auto ch = flip(0.1);
    const auto xr = builtin_channel("xor-interference");
    for (Family f : {Family::HK, Family::CMG, Family::HOD}) {
      const auto side = structural_relations(f);
      CHECK(side.size() > 0);
      for (std::size_t i = 0; i < 60; ++i) {
        const auto s = sample_spec(sweep(f), i);
        const auto values = region_symbols(s, i % 2 ? ch : xr);
        for (const auto& rel : side.rows()) {
          INFO(family_name(f), " ", rel.to_string());
          CHECK(rel.slack().evaluate(values) >= -1e-9);
        }
        if (f == Family::HK) {
          const auto exch = exchange_relations();
          for (const auto& rel : exch.rows())
            CHECK(rel.slack().evaluate(values) >= -1e-9);
        }
      }
    }
  }
}
