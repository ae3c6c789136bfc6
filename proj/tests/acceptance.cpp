// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <fmt/format.h>
#include <omp.h>

#include <chrono>
#include <functional>
#include <random>

#include "bundles.hpp"
#include "icregion/compare.hpp"
#include "icregion/fm.hpp"
#include "icregion/kernels.hpp"
#include "icregion/polygon.hpp"
#include "icregion/search.hpp"
#include "oracle.hpp"

using namespace icr;

namespace {

constexpr std::size_t kSpecs = 500;
constexpr std::size_t kJoints = 1000;
constexpr std::size_t kBundles = 50;
constexpr std::int64_t kGrid = 64;  // [0, 4] at step 1/16
constexpr std::size_t kSweep = 2000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<CodingSpec> specs(Family f, std::uint64_t seed) {
  SweepConfig cfg;
  cfg.family = f;
  cfg.card.q = 2;
  cfg.samples = kSpecs;
  cfg.seed = seed;
  std::vector<CodingSpec> out;
  for (std::size_t i = 0; i < kSpecs; ++i) out.push_back(sample_spec(cfg, i));
  return out;
}

// Alternates between the xor-interference and a noisy channel.
DiscreteIC channel_for(std::size_t i) {
  return i % 2 ? builtin_channel("xor-interference")
               : builtin_channel("symmetric-flip", std::vector<double>{0.1});
}

InequalitySystem project_quad(const std::string& label) {
  return project(named_system(label), split_variables(), rate_split(),
                 {structural_relations(family_of_system(label)), Pruning::Full})
      .system;
}

Outcome ac1() {
  const auto t0 = Clock::now();
  const auto got = project_quad("HK-quad");
  InequalitySystem want = named_system("HK-R");
  const auto r10 = parse_inequality("2*R1 + R2 <= 2*a1 + e2 + f2");
  const auto r11 = parse_inequality("R1 + 2*R2 <= 2*a2 + e1 + f1");
  want.push_back(r10);
  want.push_back(r11);
  const bool same = got.same_set(want);

  const auto c10 = certificate(r10, parse_system("R1 <= a1 + c2\nR1 + R2 <= a1 + g2"),
                               parse_system("c2 + g2 <= e2 + f2"));
  const auto c11 = certificate(r11, parse_system("R2 <= a2 + c1\nR1 + R2 <= a2 + g1"),
                               parse_system("c1 + g1 <= e1 + f1"));
  auto unit = [](const std::optional<Certificate>& c) {
    return c && c->generator_weights == std::vector<Rational>{1, 1} &&
           c->side_weights == std::vector<Rational>{1};
  };
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = same && unit(c10) && unit(c11) && secs < 1.0;
  o.detail = fmt::format("{} rows, set match {}, certificates {}/{}, {:.3f} s", got.size(), same,
                         unit(c10), unit(c11), secs);
  return o;
}

Outcome ac2() {
  const bool cmg = project_quad("CMG-quad").same_set(named_system("CMG-R"));
  const bool hod = project_quad("HOD-quad").same_set(named_system("HOD-R"));
  const auto renamed = rename_symbols(named_system("HK-R-modified"), {{"f1", "F1"}, {"f2", "F2"}});
  const bool remark = project_quad("HOD-quad-modified").same_set(renamed);

  // the four T-only CMG rows follow from the other rows of CMG-quad
  const auto quad = named_system("CMG-quad");
  const auto side = structural_relations(Family::CMG);
  std::size_t dominated = 0;
  for (const char* text : {"T1 <= D1", "T2 <= D2", "T1 + T2 <= G1", "T1 + T2 <= G2"}) {
    const auto row = parse_inequality(text).normalized();
    InequalitySystem others;
    for (const auto& r : quad.rows())
      if (!(r.normalized() == row)) others.push_back(r);
    dominated += others.size() + 1 == quad.size() && certificate(row, others, side).has_value();
  }
  Outcome o;
  o.pass = cmg && hod && remark && dominated == 4;
  o.detail = fmt::format("CMG-R {}, HOD-R {}, modified HOD {}, dominated CMG rows {}/4", cmg, hod,
                         remark, dominated);
  return o;
}

Outcome ac3() {
  const auto t0 = Clock::now();
  double worst = 0, min_rho = 0;
  const auto list = specs(Family::HOD, 31);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto ch = channel_for(i);
    const auto h = eval_hodtani(assemble_joint(list[i], ch));
    const auto pmf = oracle::assemble(list[i], ch);
    const auto o = oracle::hk(pmf);
    const double r1 = oracle::rho(pmf, 1), r2 = oracle::rho(pmf, 2);
    for (double d : {h.B1 - o.b1 - r1, h.C1 - o.c1 - r1, h.F1 - o.f1 - r1, h.B2 - o.b2 - r2,
                     h.C2 - o.c2 - r2, h.F2 - o.f2 - r2})
      worst = std::max(worst, std::abs(d));
    min_rho = std::min({min_rho, h.rho1, h.rho2});
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = worst <= 1e-9 && min_rho >= -1e-10 && secs < 60;
  o.detail = fmt::format("{} HOD specs, max identity residual {:.2e}, min rho {:.2e}, {:.1f} s",
                         list.size(), worst, min_rho, secs);
  return o;
}

Outcome ac4() {
  double max_rho = 0, max_gap = 0;
  std::size_t unequal = 0;
  const auto list = specs(Family::HK, 41);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto ch = channel_for(i);
    const auto j = assemble_joint(list[i], ch);
    const auto hod = eval_hodtani(j);
    max_rho = std::max({max_rho, hod.rho1, hod.rho2});
    const auto a = instantiate(named_system("HOD-R"), hod.symbols());
    const auto b = instantiate(named_system("HK-R"), eval_hk(j).symbols());
    const auto ab = subset(a, b, kRegionEqualTolerance);
    const auto ba = subset(b, a, kRegionEqualTolerance);
    max_gap = std::max({max_gap, ab.max_violation, ba.max_violation});
    unequal += !(ab.holds && ba.holds);
  }
  Outcome o;
  o.pass = max_rho <= 1e-9 && unequal == 0;
  o.detail = fmt::format("{} HK specs, max rho {:.2e}, unequal polygons {}, max gap {:.2e}",
                         list.size(), max_rho, unequal, max_gap);
  return o;
}

Outcome ac5() {
  const auto list = specs(Family::HK, 51);
  ComparisonReport all;
  for (std::size_t i = 0; i < list.size(); ++i)
    all.merge(check_order_relations(list[i], channel_for(i), i));
  double worst = 0;
  std::size_t failures = 0;
  for (const auto& c : all.checks) {
    worst = std::max(worst, c.max_residual);
    failures += c.failures;
  }
  const bool complete = all.find("superposition-order.g2>=G2") &&
                        all.find("superposition-equality.a1=A1") &&
                        all.find("cross-term-bound.c1<=e1") && all.find("exchange.c2+g2<=e2+f2");
  Outcome o;
  o.pass = complete && failures == 0 && worst <= 1e-9;
  o.detail = fmt::format("{} HK specs, {} checks, failures {}, max residual {:.2e}", list.size(),
                         all.checks.size(), failures, worst);
  return o;
}

Outcome ac6() {
  const auto list = specs(Family::HOD, 61);
  double worst = 0;
  for (std::size_t i = 0; i < list.size(); ++i)
    worst = std::max(worst, appendix_consistency(assemble_joint(list[i], channel_for(i))).max_residual);
  Outcome o;
  o.pass = worst <= 1e-9;
  o.detail = fmt::format("{} HOD specs, max residual {:.2e}", list.size(), worst);
  return o;
}

Outcome ac7() {
  using enum Var;
  std::mt19937_64 rng(71);
  double worst = 0, chain = 0, lowest = 0;
  for (std::size_t t = 0; t < kJoints; ++t) {
    const std::size_t n = 2 + t % 4;  // 2..5 binary variables
    const auto p = oracle::random_joint(rng, n, 2, t % 3 == 0 ? 0.3 : 0.0);
    std::vector<Var> vars;
    for (std::size_t k = 0; k < n; ++k) vars.push_back(static_cast<Var>(k));
    const VarSet a{vars[0]}, b{vars[1]};
    VarSet c;
    for (std::size_t k = 2; k < n; ++k) c = c | VarSet{vars[k]};
    worst = std::max(worst, std::abs(cmi(p, a, b, c) - oracle::cmi(p, a, b, c)));
    lowest = std::min(lowest, cmi_unclamped(p, a, b, c));
    if (n >= 4) {
      // I(Y; UW | Q) = I(Y; W | Q) + I(Y; U | W Q)
      const VarSet q{vars[0]}, u{vars[1]}, w{vars[2]}, y{vars[3]};
      const double lhs = cmi(p, y, u | w, q);
      const double rhs = cmi(p, y, w, q) + cmi(p, y, u, w | q);
      chain = std::max(chain, std::abs(lhs - rhs));
    }
  }
  Outcome o;
  o.pass = worst <= 1e-9 && chain <= 1e-9 && lowest >= -1e-10;
  o.detail = fmt::format("{} joints, max oracle gap {:.2e}, max chain-rule gap {:.2e}, min cmi {:.2e}",
                         kJoints, worst, chain, lowest);
  return o;
}

Outcome ac8() {
  const auto t0 = Clock::now();
  const std::vector<std::string> labels = {"HK-quad", "HK-quad-modified", "CMG-quad", "HOD-quad",
                                           "HOD-quad-modified"};
  std::map<std::string, InequalitySystem> projected;
  for (const auto& l : labels) projected[l] = project_quad(l);
  std::mt19937_64 rng(81);
  std::size_t disagreements = 0, points = 0, feasible = 0;
  for (std::size_t t = 0; t < kBundles; ++t) {
    const auto& label = labels[t % labels.size()];
    const auto v = bundles::random_bundle(family_of_system(label), rng);
    const auto split = integer_rows(named_system(label), split_variables(), v);
    const auto proj = integer_rows(projected[label], {"R1", "R2"}, v);
    const auto g = par::grid_compare(split, proj, kGrid);
    disagreements += g.disagreements;
    points += g.points;
    feasible += g.feasible;
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = disagreements == 0 && secs < 300;
  o.detail = fmt::format("{} bundles, {} grid points ({} feasible), disagreements {}, {:.1f} s",
                         kBundles, points, feasible, disagreements, secs);
  return o;
}

SweepConfig xor_sweep(Family f, const std::string& system = "", bool embed = false) {
  SweepConfig cfg;
  cfg.family = f;
  cfg.system = system;
  cfg.embed_hk = embed;
  cfg.samples = kSweep;
  cfg.seed = 9;
  cfg.channel = builtin_channel("xor-interference");
  return cfg;
}

Outcome ac9() {
  const auto hod = xor_sweep(Family::HOD, "", true);
  const auto hk = xor_sweep(Family::HK);
  const auto compact = xor_sweep(Family::CMG, "CMG-R-compact");
  const auto cmg = xor_sweep(Family::CMG);

  const auto hod_vs_hk = compare_unions(hod, hk);
  const auto compact_vs_cmg = compare_unions(compact, cmg);

  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const std::string one = union_frontier(hod).to_csv() + union_frontier(compact).to_csv();
  omp_set_num_threads(4);
  const std::string four = union_frontier(hod).to_csv() + union_frontier(compact).to_csv();
  omp_set_num_threads(saved);
  const std::string again = union_frontier(hod).to_csv() + union_frontier(compact).to_csv();
  const bool deterministic = one == four && one == again;

  Outcome o;
  o.pass = hod_vs_hk.excess_b_over_a <= 1e-7 && compact_vs_cmg.excess_b_over_a <= 1e-7 &&
           deterministic;
  o.detail = fmt::format(
      "HK beyond HOD {:.2e}, HOD beyond HK {:.2e}, CMG beyond compact {:.2e}, "
      "byte-identical across runs and 1/4 threads {}",
      hod_vs_hk.excess_b_over_a, hod_vs_hk.excess_a_over_b, compact_vs_cmg.excess_b_over_a,
      deterministic);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}};
  bool all = true;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    all = all && o.pass;
    fmt::print("{} {}  {}\n", name, o.pass ? "PASS" : "FAIL", o.detail);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
