// icregion: evaluate, project, compare and sweep interference-channel rate regions.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "icregion/channel.hpp"
#include "icregion/coding.hpp"
#include "icregion/coefficients.hpp"
#include "icregion/compare.hpp"
#include "icregion/errors.hpp"
#include "icregion/fm.hpp"
#include "icregion/manifest.hpp"
#include "icregion/polygon.hpp"
#include "icregion/search.hpp"
#include "json.hpp"

using namespace icr;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitCheckFailed = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& flag, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("{}: cannot open '{}'", flag, path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  std::string text;
  ManifestInput input;
};

Loaded load_input(const std::string& flag, const std::string& path) {
  Loaded l;
  l.text = read_file(flag, path);
  l.input = {path, fnv1a64(l.text)};
  return l;
}

// File path or builtin:NAME[:p]
std::pair<DiscreteIC, ManifestInput> resolve_channel(const std::string& ref) {
  if (ref.rfind("builtin:", 0) == 0) {
    std::string rest = ref.substr(8);
    std::vector<double> params;
    if (auto colon = rest.find(':'); colon != std::string::npos) {
      try {
        params.push_back(std::stod(rest.substr(colon + 1)));
      } catch (const std::exception&) {
        throw ArgumentError("--channel: bad parameter in '" + ref + "'");
      }
      rest.resize(colon);
    }
    auto ch = builtin_channel(rest, params);
    return {ch, {ref, fnv1a64(ch.to_json())}};
  }
  auto l = load_input("--channel", ref);
  try {
    return {load_channel(l.text), l.input};
  } catch (const std::exception& e) {
    throw ValidationError(fmt::format("--channel '{}': {}", ref, e.what()));
  }
}

CodingSpec resolve_spec(const std::string& path, RunManifest& m) {
  auto l = load_input("--spec", path);
  m.inputs.push_back(l.input);
  try {
    return load_spec(l.text);
  } catch (const std::exception& e) {
    throw ValidationError(fmt::format("--spec '{}': {}", path, e.what()));
  }
}

void emit(const std::string& out_path, const std::string& body) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError(fmt::format("--out: cannot write '{}'", out_path));
  out << body;
}

struct Common {
  std::string out;
  std::string format;
  bool stamp = false;
};

RunManifest start_manifest(const std::vector<std::string>& args, const Common& c) {
  RunManifest m;
  for (std::size_t i = 0; i < args.size(); ++i) m.command += (i ? " " : "") + args[i];
  if (c.stamp) m.wall_time = utc_now();
  return m;
}

ojson symbols_json(const SymbolValues& values, const std::vector<std::string>& order) {
  ojson j;
  for (const auto& k : order) j[k] = values.at(k);
  return j;
}

std::vector<std::string> symbol_order(Family f) {
  switch (f) {
    case Family::HK:
      return {"a1", "b1", "c1", "d1", "e1", "f1", "g1", "a2", "b2", "c2", "d2", "e2", "f2", "g2"};
    case Family::CMG:
      return {"A1", "D1", "E1", "G1", "A2", "D2", "E2", "G2"};
    case Family::HOD:
      return {"a1", "B1", "C1", "d1", "e1", "F1", "g1", "a2", "B2", "C2", "d2", "e2", "F2",
              "g2", "rho1", "rho2"};
  }
  return {};
}

// ---- eval ----------------------------------------------------------------

int run_eval(const std::vector<std::string>& args, const Common& c, const std::string& spec_path,
             const std::string& channel_ref) {
  RunManifest m = start_manifest(args, c);
  const CodingSpec spec = resolve_spec(spec_path, m);
  auto [ch, ch_input] = resolve_channel(channel_ref);
  m.inputs.push_back(ch_input);
  const auto joint = assemble_joint(spec, ch);
  const auto fact = validate_factorization(joint);
  const SymbolValues values = region_symbols(spec, ch);
  const auto order = symbol_order(spec.family);

  if (c.format == "text") {
    std::string out = m.to_comment("# ");
    out += fmt::format("# family: {}\n", family_name(spec.family));
    for (const auto& k : order) out += fmt::format("{} = {}\n", k, values.at(k));
    emit(c.out, out);
  } else {
    ojson j;
    j["manifest"] = ojson::parse(m.to_json());
    j["family"] = std::string(family_name(spec.family));
    j["spec_hash"] = fmt::format("{:016x}", spec.hash());
    j["channel_hash"] = fmt::format("{:016x}", fnv1a64(ch.to_json()));
    j["coefficients"] = symbols_json(values, order);
    j["factorization"] = {{"cross_residual", fact.cross_residual},
                          {"within_residual", fact.within_residual},
                          {"pass", fact.pass}};
    emit(c.out, j.dump(2) + "\n");
  }
  return fact.pass ? kExitOk : kExitCheckFailed;
}

// ---- derive --------------------------------------------------------------

int run_derive(const std::vector<std::string>& args, const Common& c, const std::string& label,
               const std::string& to) {
  if (to != "R") throw ArgumentError("--to: only the rate pair projection 'R' is supported");
  RunManifest m = start_manifest(args, c);
  const InequalitySystem sys = named_system(label);
  const Family family = family_of_system(label);
  const bool quad = label.find("-quad") != std::string::npos;

  InequalitySystem result = sys;
  std::vector<std::string> notes(sys.size());
  std::size_t raw = sys.size();
  if (quad) {
    const InequalitySystem side = structural_relations(family);
    const auto proj = project(sys, split_variables(), rate_split(), {side, Pruning::Full});
    result = proj.system;
    raw = proj.raw_rows;
    notes.assign(result.size(), "");
    if (family == Family::HK) {
      const InequalitySystem exch = exchange_relations();
      InequalitySystem extended = side;
      for (const auto& r : exch.rows()) extended.push_back(r);
      for (std::size_t i = 0; i < result.size(); ++i) {
        std::vector<LinearInequality> others;
        for (std::size_t k = 0; k < result.size(); ++k)
          if (k != i) others.push_back(result.rows()[k]);
        auto cert = certificate(result.rows()[i], InequalitySystem(others), extended);
        if (!cert) continue;
        std::string used;
        for (std::size_t k = 0; k < exch.size(); ++k) {
          if (cert->side_weights[side.size() + k] != 0)
            used += (used.empty() ? "" : ", ") + exch.rows()[k].to_string();
        }
        notes[i] = "redundant given " + (used.empty() ? std::string("the remaining rows") : used);
      }
    }
  }

  if (c.format == "json") {
    ojson j;
    j["manifest"] = ojson::parse(m.to_json());
    j["system"] = label;
    j["raw_rows"] = raw;
    j["rows"] = ojson::array();
    for (std::size_t i = 0; i < result.size(); ++i) {
      ojson r;
      r["inequality"] = result.rows()[i].to_string();
      if (!notes[i].empty()) r["conditional"] = notes[i];
      j["rows"].push_back(r);
    }
    emit(c.out, j.dump(2) + "\n");
  } else {
    std::string out = m.to_comment("# ");
    out += fmt::format("# system: {}{}\n", label, quad ? " projected onto (R1, R2)" : "");
    for (std::size_t i = 0; i < result.size(); ++i) {
      out += result.rows()[i].to_string();
      if (!notes[i].empty()) out += "  # " + notes[i];
      out += "\n";
    }
    emit(c.out, out);
  }
  return kExitOk;
}

// ---- compare -------------------------------------------------------------

int run_compare(const std::vector<std::string>& args, const Common& c, const std::string& suite,
                const std::vector<std::string>& spec_paths, const std::string& channel_ref,
                std::uint64_t seed, std::size_t n, std::size_t q,
                std::optional<std::size_t> fault) {
  RunManifest m = start_manifest(args, c);
  auto [ch, ch_input] = resolve_channel(channel_ref);
  m.inputs.push_back(ch_input);
  m.seed = seed;

  std::vector<CodingSpec> specs;
  for (const auto& p : spec_paths) specs.push_back(resolve_spec(p, m));
  std::vector<Family> families;
  if (suite == "full") {
    families = {Family::HK, Family::HOD, Family::CMG};
  } else if (suite == "hk") {
    families = {Family::HK};
  } else if (suite == "hod") {
    families = {Family::HOD};
  } else if (suite == "cmg") {
    families = {Family::CMG};
  } else if (suite != "none") {
    throw ArgumentError("--suite: expected full, hk, hod, cmg or none");
  }
  for (Family f : families) {
    SweepConfig cfg;
    cfg.family = f;
    cfg.card.q = q;
    cfg.card.x1 = ch.nx1();
    cfg.card.x2 = ch.nx2();
    cfg.samples = n;
    cfg.seed = seed;
    cfg.channel = ch;
    cfg.validate();
    for (std::size_t i = 0; i < n; ++i) specs.push_back(sample_spec(cfg, i));
  }

  Tamper tamper;
  if (fault) {
    tamper = [at = *fault](std::size_t index, HKCoefficients& hk) {
      if (index == at) hk.b1 += 0.1;
    };
  }
  const ComparisonReport report = run_suite(specs, ch, tamper);
  if (c.format == "json") {
    emit(c.out, report.to_json(m.to_json()));
  } else {
    emit(c.out, m.to_comment("# ") + fmt::format("# specs: {}\n", specs.size()) + report.to_table());
  }
  return report.pass() ? kExitOk : kExitCheckFailed;
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
  std::string family = "HK";
  std::string system;
  std::string against_family;
  std::string against_system;
  std::string channel;
  std::uint64_t seed = 0;
  std::size_t n = 200;
  std::size_t q = 1;
  double concentration = 1.0;
  bool embed_hk = false;
};

SweepConfig make_sweep(const SweepArgs& a, const std::string& family, const std::string& system,
                       const DiscreteIC& ch, bool embed) {
  SweepConfig cfg;
  cfg.family = parse_family(family);
  cfg.system = system;
  cfg.card.q = a.q;
  cfg.card.x1 = ch.nx1();
  cfg.card.x2 = ch.nx2();
  cfg.samples = a.n;
  cfg.seed = a.seed;
  cfg.concentration = a.concentration;
  cfg.channel = ch;
  cfg.embed_hk = embed;
  cfg.validate();
  return cfg;
}

int run_sweep(const std::vector<std::string>& args, const Common& c, const SweepArgs& a) {
  RunManifest m = start_manifest(args, c);
  auto [ch, ch_input] = resolve_channel(a.channel);
  m.inputs.push_back(ch_input);
  m.seed = a.seed;

  const SweepConfig main = make_sweep(a, a.family, a.system, ch, a.embed_hk);
  const bool paired = !a.against_family.empty() || !a.against_system.empty();
  const Frontier fa = union_frontier(main);
  std::optional<SweepConfig> other;
  std::optional<UnionComparison> cmp;
  if (paired) {
    other = make_sweep(a, a.against_family.empty() ? a.family : a.against_family,
                       a.against_system, ch, false);
    cmp = compare_frontiers(fa, union_frontier(*other));
  }

  const std::string name_a = fmt::format("{} {}", family_name(main.family), main.region_label());
  const std::string name_b =
      other ? fmt::format("{} {}", family_name(other->family), other->region_label()) : "";

  if (c.format == "svg") {
    std::vector<SvgLayer> layers = {{fa.vertices, false, "#1f77b4", name_a}};
    if (cmp) layers.push_back({cmp->b.vertices, false, "#d62728", name_b});
    emit(c.out, render_svg(layers, m.to_comment("")));
  } else if (c.format == "json") {
    ojson j;
    j["manifest"] = ojson::parse(m.to_json());
    auto frontier_json = [](const std::string& name, const Frontier& f) {
      ojson o;
      o["region"] = name;
      o["area"] = f.area();
      o["vertices"] = ojson::array();
      for (std::size_t i = 0; i < f.vertices.size(); ++i)
        o["vertices"].push_back({{"R1", f.vertices[i].r1},
                                 {"R2", f.vertices[i].r2},
                                 {"spec_hash", fmt::format("{:016x}", f.spec_hash[i])}});
      return o;
    };
    j["frontiers"] = ojson::array({frontier_json(name_a, fa)});
    if (cmp) {
      j["frontiers"].push_back(frontier_json(name_b, cmp->b));
      j["comparison"] = {{"excess_first_over_second", cmp->excess_a_over_b},
                         {"excess_second_over_first", cmp->excess_b_over_a},
                         {"max_gap", cmp->max_gap},
                         {"gap_point", {cmp->gap_point.r1, cmp->gap_point.r2}},
                         {"gap_spec_hash", fmt::format("{:016x}", cmp->gap_spec_hash)}};
    }
    emit(c.out, j.dump(2) + "\n");
  } else {
    std::string out = m.to_comment("# ");
    out += "frontier,R1,R2,spec_hash\n";
    auto rows = [&out](const std::string& name, const Frontier& f) {
      for (std::size_t i = 0; i < f.vertices.size(); ++i)
        out += fmt::format("{},{},{},{:016x}\n", name, f.vertices[i].r1, f.vertices[i].r2,
                           f.spec_hash[i]);
    };
    rows(name_a, fa);
    if (cmp) rows(name_b, cmp->b);
    emit(c.out, out);
  }
  return kExitOk;
}

// ---- plot ----------------------------------------------------------------

SymbolValues coefficients_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("--coefficients: ") + e.what());
  }
  if (j.contains("coefficients")) j = j["coefficients"];
  if (!j.is_object()) throw ParseError("--coefficients: expected a JSON object of symbol values");
  SymbolValues v;
  for (const auto& [k, val] : j.items()) {
    if (val.is_number()) v[k] = val.get<double>();
  }
  return v;
}

int run_plot(const std::vector<std::string>& args, const Common& c, const std::string& label,
             const std::string& coef_path, const std::string& spec_path,
             const std::string& channel_ref) {
  RunManifest m = start_manifest(args, c);
  SymbolValues values;
  if (!coef_path.empty()) {
    auto l = load_input("--coefficients", coef_path);
    m.inputs.push_back(l.input);
    values = coefficients_from_json(l.text);
  } else {
    if (spec_path.empty() || channel_ref.empty())
      throw ArgumentError("plot needs --coefficients, or --spec together with --channel");
    const CodingSpec spec = resolve_spec(spec_path, m);
    auto [ch, ch_input] = resolve_channel(channel_ref);
    m.inputs.push_back(ch_input);
    values = region_symbols(spec, ch);
  }
  const auto poly = instantiate(named_system(label), values);
  const auto verts = vertices(poly);
  if (c.format == "csv") {
    emit(c.out, vertices_csv(verts, m.to_comment("# ")));
  } else if (c.format == "json") {
    ojson j;
    j["manifest"] = ojson::parse(m.to_json());
    j["system"] = label;
    j["area"] = shoelace(verts);
    j["vertices"] = ojson::array();
    for (const auto& v : verts) j["vertices"].push_back({v.r1, v.r2});
    emit(c.out, j.dump(2) + "\n");
  } else {
    emit(c.out, render_svg({{verts, true, "#1f77b4", label}}, m.to_comment("")));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  CLI::App app{"Evaluate, project and compare interference-channel rate regions", "icregion"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto add_common = [](CLI::App* sub, Common& c, const std::string& default_format,
                       std::vector<std::string> formats) {
    c.format = default_format;
    sub->add_option("--out", c.out, "Output file (default stdout)");
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    sub->add_flag("--stamp", c.stamp, "Record wall time in the manifest");
  };
  Common ce, cd, cc, cs, cp;

  std::string spec_path, channel_ref, system_label, to = "R", coef_path, suite = "full";
  std::vector<std::string> spec_paths;
  std::uint64_t seed = 0;
  std::size_t n = 100, q = 1;

  auto* eval = app.add_subcommand("eval", "Coefficient bundle of a spec on a channel");
  eval->add_option("--spec", spec_path, "Coding spec JSON")->required();
  eval->add_option("--channel", channel_ref, "Channel JSON or builtin:NAME[:p]")->required();

  auto* derive = app.add_subcommand("derive", "Project a named system onto (R1, R2)");
  derive->add_option("--system", system_label, "Named system label")->required();
  derive->add_option("--to", to, "Target variables")->capture_default_str();

  auto* compare = app.add_subcommand("compare", "Run the comparison suite");
  compare->add_option("--suite", suite, "full, hk, hod, cmg or none")->capture_default_str();
  compare->add_option("--spec", spec_paths, "Extra spec files to check");
  compare->add_option("--channel", channel_ref, "Channel JSON or builtin:NAME[:p]")->required();
  compare->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  compare->add_option("--n", n, "Random specs per family")->capture_default_str();
  compare->add_option("--q", q, "Cardinality of Q")->check(CLI::Range(1, 4))->capture_default_str();
  std::optional<std::size_t> fault;
  compare->add_option("--inject-fault", fault, "Test mode: add 0.1 to b1 of spec INDEX");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Union frontier of sampled polygons");
  sweep->add_option("--family", sw.family, "HK, CMG or HOD")->capture_default_str();
  sweep->add_option("--system", sw.system, "Rate region label (default: the family's)");
  sweep->add_option("--against-family", sw.against_family, "Second sweep family");
  sweep->add_option("--against-system", sw.against_system, "Second sweep region label");
  sweep->add_option("--channel", sw.channel, "Channel JSON or builtin:NAME[:p]")->required();
  sweep->add_option("--seed", sw.seed, "Sampling seed")->capture_default_str();
  sweep->add_option("--n", sw.n, "Samples")->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--q", sw.q, "Cardinality of Q")->check(CLI::Range(1, 4))->capture_default_str();
  sweep->add_option("--concentration", sw.concentration, "Dirichlet parameter")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_flag("--embed-hk", sw.embed_hk, "HOD sweep also covers the HK samples");

  auto* plot = app.add_subcommand("plot", "Polygon of a named system");
  plot->add_option("--system", system_label, "Named rate region label")->required();
  plot->add_option("--coefficients", coef_path, "Coefficient JSON (e.g. eval output)");
  plot->add_option("--spec", spec_path, "Coding spec JSON");
  plot->add_option("--channel", channel_ref, "Channel JSON or builtin:NAME[:p]");

  add_common(eval, ce, "json", {"json", "text"});
  add_common(derive, cd, "text", {"text", "json"});
  add_common(compare, cc, "text", {"text", "json"});
  add_common(sweep, cs, "csv", {"csv", "svg", "json"});
  add_common(plot, cp, "svg", {"svg", "csv", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*eval) return run_eval(args, ce, spec_path, channel_ref);
    if (*derive) return run_derive(args, cd, system_label, to);
    if (*compare) return run_compare(args, cc, suite, spec_paths, channel_ref, seed, n, q, fault);
    if (*sweep) return run_sweep(args, cs, sw);
    if (*plot) return run_plot(args, cp, system_label, coef_path, spec_path, channel_ref);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
