#include <doctest.h>

#include <random>

#include "icregion/channel.hpp"
#include "icregion/coding.hpp"
#include "icregion/coefficients.hpp"
#include "icregion/errors.hpp"
#include "icregion/search.hpp"
#include "oracle.hpp"

using namespace icr;
using enum Var;

namespace {

const char* kIdentityChannel = R"({"nx1":2,"nx2":2,"ny1":2,"ny2":2,
  "p":[1,0,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,1]})";

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

SweepConfig sweep(Family f, std::size_t q = 2, std::uint64_t seed = 1) {
  SweepConfig cfg;
  cfg.family = f;
  cfg.card.q = q;
  cfg.samples = 1000;
  cfg.seed = seed;
  return cfg;
}

double max_entry_gap(const JointPMF& a, const JointPMF& b) {
  // entries of b looked up by a's axis names, so axis order may differ
  REQUIRE(a.size() == b.size());
  double worst = 0;
  std::vector<std::size_t> idx_b(b.axes().size());
  for (std::size_t f = 0; f < a.size(); ++f) {
    const auto idx = oracle::decode(a, f);
    for (std::size_t k = 0; k < a.axes().size(); ++k) idx_b[b.axis_of(a.axes()[k].name)] = idx[k];
    worst = std::max(worst, std::abs(a.probs()[f] - b.at(idx_b)));
  }
  return worst;
}

}  // namespace

TEST_SUITE("channel") {
  TEST_CASE("identity document loads") {
    const auto ch = load_channel(kIdentityChannel);
    CHECK(ch.nx1() == 2);
    CHECK(ch(1, 0, 1, 0) == 1.0);
    CHECK(ch(1, 0, 0, 1) == 0.0);
  }

  TEST_CASE("row sum error names the row") {
    const char* bad = R"({"nx1":2,"nx2":2,"ny1":2,"ny2":2,
      "p":[1,0,0,0, 0,0.9,0,0, 0,0,1,0, 0,0,0,1]})";
    try {
      load_channel(bad);
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("(x1=0, x2=1)") != std::string::npos);
    }
    CHECK_THROWS_AS(load_channel(R"({"nx1":2,"nx2":2,"ny1":2,"ny2":2,"p":[1,0]})"),
                    ValidationError);
    CHECK_THROWS_AS(load_channel("{not json"), ParseError);
    CHECK_THROWS_AS(load_channel(R"({"nx1":2,"nx2":2,"ny1":2,"p":[]})"), ParseError);
    CHECK_THROWS_AS(load_channel(R"({"nx1":1,"nx2":1,"ny1":2,"ny2":1,"p":[1.5,-0.5]})"),
                    ValidationError);
  }

  TEST_CASE("builtin channels") {
    const auto clean = builtin_channel("clean");
    for (std::size_t x1 = 0; x1 < 2; ++x1)
      for (std::size_t x2 = 0; x2 < 2; ++x2) {
        int ones = 0;
        for (std::size_t y1 = 0; y1 < 2; ++y1)
          for (std::size_t y2 = 0; y2 < 2; ++y2) ones += clean(x1, x2, y1, y2) == 1.0;
        CHECK(ones == 1);
        CHECK(clean(x1, x2, x1, x2) == 1.0);
      }
    const double zero = 0.0;
    const auto flip0 = builtin_channel("symmetric-flip", std::span(&zero, 1));
    CHECK(flip0.to_json() == clean.to_json());
    const auto xr = builtin_channel("xor-interference");
    CHECK(xr(1, 1, 0, 0) == 1.0);
    CHECK(xr(1, 0, 1, 1) == 1.0);

    CHECK_THROWS_AS(builtin_channel("bogus"), ArgumentError);
    const double big = 0.7;
    CHECK_THROWS_AS(builtin_channel("symmetric-flip", std::span(&big, 1)), ArgumentError);
    CHECK_THROWS_AS(builtin_channel("symmetric-flip"), ArgumentError);
  }

  TEST_CASE("xor interference hides X1 from Y1 under uniform inputs") {
    CodingSpec s = copy_spec();
    const auto j = assemble_joint(s, builtin_channel("xor-interference"));
    CHECK(cmi(j.pmf, {Y1}, {X1}) == doctest::Approx(0.0));
    CHECK(oracle::cmi(j.pmf, {Y1}, {X1}) == doctest::Approx(0.0));
    CHECK(cmi(j.pmf, {Y1}, {X1}, {X2}) == doctest::Approx(1.0));
  }

  TEST_CASE("to_json round trips") {
    const double p = 0.1;
    const auto ch = builtin_channel("symmetric-flip", std::span(&p, 1));
    CHECK(load_channel(ch.to_json()).to_json() == ch.to_json());
  }
}

TEST_SUITE("coding") {
  TEST_CASE("copy construction gives Y = U = X uniform") {
    const auto j = assemble_joint(copy_spec(), builtin_channel("clean"));
    CHECK(j.pmf.variables() == VarSet{Q, U1, W1, U2, W2, X1, X2, Y1, Y2});
    CHECK(entropy(j.pmf, {Y1}) == doctest::Approx(1.0));
    CHECK(entropy(j.pmf, {U1, X1, Y1}) == doctest::Approx(1.0));
    CHECK(entropy(j.pmf, {U1, U2, X1, X2, Y1, Y2}) == doctest::Approx(2.0));
  }

  TEST_CASE("alphabet mismatch is an argument error") {
    CodingSpec s = copy_spec();
    const auto ch = DiscreteIC(3, 2, 2, 2, std::vector<double>(24, 0.25));
    CHECK_THROWS_AS(assemble_joint(s, ch), ArgumentError);
  }

  TEST_CASE("validation names the offending table") {
    CodingSpec s = copy_spec();
    s.s1.u_given_q = {0.5, 0.4};
    try {
      s.validate();
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("u1_given_q") != std::string::npos);
    }
    s = copy_spec();
    s.s2.encoder = {0, 2};
    CHECK_THROWS_AS(s.validate(), ValidationError);
  }

  TEST_CASE("spec JSON round trips for every family") {
    for (Family f : {Family::HK, Family::CMG, Family::HOD}) {
      const auto s = sample_spec(sweep(f), 4);
      const auto back = load_spec(s.to_json());
      CHECK(back.to_json() == s.to_json());
      CHECK(back.hash() == s.hash());
    }
    CHECK_THROWS_AS(load_spec(R"({"family":"XY","card":{}})"), ParseError);
    CHECK_THROWS_AS(load_spec(R"({"family":"HK"})"), ParseError);
  }

  TEST_CASE("assembled joints match the nested-loop oracle") {
    const double p = 0.1;
    const auto ch = builtin_channel("symmetric-flip", std::span(&p, 1));
    for (Family f : {Family::HK, Family::CMG, Family::HOD}) {
      for (std::size_t i = 0; i < 20; ++i) {
        const auto s = sample_spec(sweep(f), i);
        const auto j = assemble_joint(s, ch);
        const auto o = oracle::assemble(s, ch);
        CHECK(max_entry_gap(o, j.pmf) <= 1e-12);
      }
    }
  }

  TEST_CASE("HOD spec with u independent of w equals the HK joint") {
    const auto ch = builtin_channel("xor-interference");
    for (std::size_t i = 0; i < 10; ++i) {
      const auto hk = sample_spec(sweep(Family::HK), i);
      const auto hod = hod_embedding_of_hk(hk);
      CHECK(hod.family == Family::HOD);
      CHECK(max_entry_gap(assemble_joint(hk, ch).pmf, assemble_joint(hod, ch).pmf) <= 1e-12);
    }
  }

  TEST_CASE("factorization checks") {
    const auto ch = builtin_channel("clean");
    for (Family f : {Family::HK, Family::CMG, Family::HOD}) {
      for (std::size_t i = 0; i < 10; ++i)
        CHECK(validate_factorization(assemble_joint(sample_spec(sweep(f), i), ch)).pass);
    }

    // U1 = U2 couples the senders
    std::vector<double> p(4, 0.0);
    p[0] = 0.5;
    p[3] = 0.5;
    const JointPMF coupled({{Q, 1}, {U1, 2}, {W1, 1}, {U2, 2}, {W2, 1}}, p);
    const auto r = validate_factorization(coupled, Family::HK);
    CHECK_FALSE(r.pass);
    CHECK(r.cross_residual > 0.1);
  }

  TEST_CASE("HOD within-sender residual is the dependence of U1 and W1") {
    const auto ch = builtin_channel("clean");
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < 20; ++i) {
      const auto s = sample_spec(sweep(Family::HOD), i);
      const auto j = assemble_joint(s, ch);
      const auto r = validate_factorization(j.pmf, Family::HK);
      // direct marginal computation from the spec tables
      const auto& c = s.card;
      double worst = 0;
      for (int snd : {1, 2}) {
        const auto& sp = s.sender(snd);
        const std::size_t nu = s.nu(snd), nw = s.nw(snd);
        for (std::size_t q = 0; q < c.q; ++q)
          for (std::size_t u = 0; u < nu; ++u) {
            double pu = 0;
            for (std::size_t w = 0; w < nw; ++w)
              pu += sp.w_given_q[q * nw + w] * sp.u_given_qw[(q * nw + w) * nu + u];
            for (std::size_t w = 0; w < nw; ++w) {
              const double puw = sp.w_given_q[q * nw + w] * sp.u_given_qw[(q * nw + w) * nu + u];
              worst = std::max(worst, std::abs(puw - pu * sp.w_given_q[q * nw + w]));
            }
          }
      }
      CHECK(r.within_residual == doctest::Approx(worst).epsilon(1e-9));
      if (oracle::rho(j.pmf, 1) > 1e-6) {
        ++nonzero;
        CHECK(r.within_residual > 0);
        CHECK_FALSE(r.pass);
      }
    }
    CHECK(nonzero > 0);
  }

  TEST_CASE("CMG projection of an HK spec") {
    const auto ch = builtin_channel("symmetric-flip", std::vector<double>{0.2});
    for (std::size_t i = 0; i < 20; ++i) {
      const auto hk = sample_spec(sweep(Family::HK), i);
      const auto cmg = cmg_projection_of_hk(hk);
      const auto full = assemble_joint(hk, ch);
      const auto proj = assemble_joint(cmg, ch);
      const auto m = marginalize(full.pmf, {Q, W1, W2, X1, X2, Y1, Y2});
      CHECK(max_entry_gap(m, proj.pmf) <= 1e-12);
    }

    CodingSpec s = copy_spec();
    auto cmg = cmg_projection_of_hk(s);
    CHECK(cmg.s1.x_given_qw[0] == doctest::Approx(0.5));
    CHECK(cmg.s1.x_given_qw[1] == doctest::Approx(0.5));

    // encoder ignoring u: x1 = w1
    s.card.w1 = 2;
    s.s1.w_given_q = {0.3, 0.7};
    s.s1.encoder = {0, 1, 0, 1};
    cmg = cmg_projection_of_hk(s);
    CHECK(cmg.s1.x_given_qw == std::vector<double>{1, 0, 0, 1});

    CHECK_THROWS_AS(cmg_projection_of_hk(cmg), ArgumentError);
  }
}
