// Command-line front end: build families (from files or the builtin
// gallery), run the verification suites, measure and integrate elements,
// expand against the Haar system, build representations, and emit reports.
//
// Exit codes: 0 all requested checks pass, 1 some check failed, 2 bad
// input/config, 3 enumeration budget exceeded, 4 I/O failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mal/budget.hpp"
#include "mal/crushed.hpp"
#include "mal/error.hpp"
#include "mal/examples.hpp"
#include "mal/family.hpp"
#include "mal/free_element.hpp"
#include "mal/haar.hpp"
#include "mal/integrate.hpp"
#include "mal/represent.hpp"
#include "mal/serialize.hpp"
#include "mal/step.hpp"

namespace {

using nlohmann::json;

struct Options {
  std::string family_path;
  std::string example;
  std::string element_path;
  std::string out;
  std::string format = "json";
  std::string tolerance = "1/1048576";
  std::string gamma = "1/3";
  std::uint64_t seed = 0;
  std::uint32_t depth = 0;  // 0: pick min(size, 8)
  std::uint32_t n = 8;
  std::uint32_t points = 4;
  std::uint32_t stage = 6;
  std::uint32_t haar_depth = 0;
  std::uint32_t chain_length = 20;
  std::uint32_t max_order = 4;
  std::uint32_t csv_level = 0;
};

mal::Family load_family(const Options& opt) {
  if (!opt.family_path.empty())
    return mal::family_from_json(mal::parse_json(mal::read_text_file(opt.family_path)));
  if (!opt.example.empty()) {
    mal::ExampleParams params;
    params.n = opt.n;
    params.points = opt.points;
    return mal::example_family(opt.example, params);
  }
  mal::fail(mal::Errc::parse_error, "no family source: pass --family PATH or --example NAME");
}

std::uint32_t pick_depth(const Options& opt, const mal::Family& fam) {
  if (opt.depth > 0) return opt.depth;
  return fam.size() < 8 ? fam.size() : 8;
}

json sign_vector_json(const mal::SignVector& sv) {
  json j;
  j["indices"] = sv.indices;
  std::string signs;
  for (std::size_t p = 0; p < sv.indices.size(); ++p)
    signs.push_back((sv.plus_mask >> p) & 1 ? '+' : '-');
  j["signs"] = signs;
  return j;
}

json trace_json(const mal::VanishingTrace& tr) {
  json j;
  j["path"] = sign_vector_json(tr.path);
  json measures = json::array();
  for (const auto& m : tr.measures) measures.push_back(mal::quad_text(m));
  j["measures"] = std::move(measures);
  if (tr.positive_floor)
    j["positive_floor"] = mal::quad_text(*tr.positive_floor);
  return j;
}

json property_report_json(const mal::PropertyReport& rep) {
  json j;
  j["depth"] = rep.depth;
  j["r1"]["pass"] = rep.r1_pass;
  if (rep.r1_witness) j["r1"]["witness"] = sign_vector_json(*rep.r1_witness);
  json paths = json::array();
  for (const auto& tr : rep.r2_paths) paths.push_back(trace_json(tr));
  j["r2"]["paths"] = std::move(paths);
  j["r2"]["flagged"] = rep.r2_flagged();
  json independents = json::array();
  for (const auto& [index, ok] : rep.r3) independents.push_back(json::array({index, ok}));
  j["r3"]["independent"] = std::move(independents);
  j["r3"]["pass"] = rep.r3_pass();
  j["r4"]["probed"] = rep.r4_probed;
  j["r4"]["covered"] = rep.r4_covered;
  j["notes"] = rep.notes;
  j["all_pass"] = rep.all_pass();
  return j;
}

void render_text(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      render_text(value, prefix.empty() ? key : prefix + "." + key, os);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& value : j) render_text(value, prefix + "[" + std::to_string(i++) + "]", os);
    if (j.empty()) os << prefix << ": []\n";
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Options& opt, const json& body) {
  std::string text;
  if (opt.format == "text") {
    std::ostringstream os;
    render_text(body, "", os);
    text = os.str();
  } else {
    text = mal::json_text(body);
  }
  if (opt.out.empty())
    std::cout << text;
  else
    mal::write_text_file(opt.out, text);
}

int cmd_verify(const Options& opt) {
  mal::Family fam = load_family(opt);
  std::uint32_t depth = pick_depth(opt, fam);
  mal::PropertyReport rep = mal::check_family(fam, depth, opt.seed);
  json body = mal::report_envelope("verify");
  body["seed"] = opt.seed;
  body["report"] = property_report_json(rep);
  emit(opt, body);
  return rep.all_pass() ? 0 : 1;
}

int cmd_measure(const Options& opt) {
  mal::Family fam = load_family(opt);
  mal::MeasureContext ctx(fam);
  json body = mal::report_envelope("measure");
  if (!opt.element_path.empty()) {
    mal::AlgebraElement x = mal::element_from_json(mal::parse_json(mal::read_text_file(opt.element_path)));
    body["measure"] = mal::rational_text(ctx.measure(x));
  } else {
    body["unit"] = mal::rational_text(ctx.measure(fam.unit));
    json gens = json::array();
    for (std::uint32_t i = 1; i <= fam.size(); ++i)
      gens.push_back(mal::rational_text(ctx.measure(fam.generator(i))));
    body["generators"] = std::move(gens);
  }
  emit(opt, body);
  return 0;
}

json haar_table_json(const mal::Family& fam, std::uint32_t depth, bool& orthogonal) {
  const std::uint64_t count = std::uint64_t{1} << depth;
  std::vector<mal::StepElement> system;
  system.reserve(count);
  for (std::uint64_t i = 1; i <= count; ++i)
    system.push_back(mal::haar_element(fam.unit, fam, i));
  orthogonal = true;
  json rows = json::array();
  for (std::uint64_t i = 0; i < count; ++i) {
    json row;
    row["index"] = i + 1;
    row["self_inner"] = mal::rational_text(mal::haar_inner(system[i], system[i], fam));
    bool clean = true;
    for (std::uint64_t j = 1; j < count; ++j) {  // base index 1 is the constant, skipped
      if (j == i) continue;
      if (mal::haar_inner(system[i], system[j], fam) != 0) clean = false;
    }
    if (i >= 1) {
      row["orthogonal_to_rest"] = clean;
      if (!clean) orthogonal = false;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_haar(const Options& opt) {
  mal::Family fam = load_family(opt);
  std::uint32_t depth = opt.haar_depth > 0 ? opt.haar_depth : (fam.size() < 4 ? fam.size() : 4);
  json body = mal::report_envelope("haar");
  body["depth"] = depth;
  int code = 0;
  if (!opt.element_path.empty()) {
    mal::StepElement x = mal::step_from_json(mal::parse_json(mal::read_text_file(opt.element_path)));
    mal::HaarExpansion exp = mal::haar_expand(x, fam, depth);
    json coeffs = json::array();
    for (const auto& a : exp.coefficients) coeffs.push_back(mal::rational_text(a));
    body["coefficients"] = std::move(coeffs);
    body["residual_zero"] = exp.residual.is_zero();
    if (!exp.residual.is_zero()) body["residual"] = mal::step_to_json(exp.residual);
  } else {
    bool orthogonal = false;
    body["table"] = haar_table_json(fam, depth, orthogonal);
    body["orthogonal"] = orthogonal;
    code = orthogonal ? 0 : 1;
  }
  emit(opt, body);
  return code;
}

int cmd_integrate(const Options& opt) {
  mal::Family fam = load_family(opt);
  if (opt.element_path.empty())
    mal::fail(mal::Errc::parse_error, "integrate needs --element PATH with a step element record");
  mal::StepElement x = mal::step_from_json(mal::parse_json(mal::read_text_file(opt.element_path)));
  mal::Rational tol = mal::parse_rational(opt.tolerance);
  mal::MeasureContext ctx(fam);
  json body = mal::report_envelope("integrate");
  body["integral"] = mal::integral_to_json(mal::integrate_simple(x, ctx));
  body["bounded"] = mal::integral_to_json(mal::integrate_bounded(x, ctx, tol));
  body["l1_norm"] = mal::integral_to_json(mal::l1_norm(x, ctx));
  emit(opt, body);
  return 0;
}

int cmd_represent(const Options& opt) {
  mal::Family fam = load_family(opt);
  std::uint32_t depth = pick_depth(opt, fam);
  std::vector<mal::SignedFragment> system = mal::rademacher_system(fam.unit, fam);
  mal::ConditionReport conditions = mal::verify_representation_conditions(system, depth);
  json body = mal::report_envelope("represent");
  json cond;
  cond["depth"] = conditions.depth;
  cond["abs_is_unit"] = conditions.abs_is_unit;
  cond["meets_nonzero"] = conditions.meets_nonzero.pass;
  if (conditions.meets_nonzero.witness)
    cond["zero_meet"] = sign_vector_json(*conditions.meets_nonzero.witness);
  json traces = json::array();
  for (const auto& tr : conditions.traces) traces.push_back(trace_json(tr));
  cond["traces"] = std::move(traces);
  cond["traces_pass"] = conditions.traces_pass();
  json minimality = json::array();
  for (const auto& [index, ok] : conditions.minimality) minimality.push_back(json::array({index, ok}));
  cond["minimality"] = std::move(minimality);
  cond["minimality_pass"] = conditions.minimality_pass();
  cond["notes"] = conditions.notes;
  body["conditions"] = std::move(cond);

  bool pass = conditions.all_pass();
  if (conditions.abs_is_unit && conditions.meets_nonzero.pass) {
    mal::Representation rep = mal::build_representation(system, depth);
    std::uint32_t order = opt.max_order < depth ? opt.max_order : depth;
    mal::IndependenceCertificate cert = mal::independence_certificate(rep.space, order);
    body["space"] = mal::prob_space_to_json(rep.space);
    body["independence"]["max_order"] = order;
    body["independence"]["cylinders_checked"] = cert.cylinders_checked;
    body["independence"]["pass"] = cert.pass;
    pass = pass && cert.pass;
  }
  emit(opt, body);
  return pass ? 0 : 1;
}

int cmd_examples(const Options& opt) {
  json body = mal::report_envelope("examples");
  body["families"] = mal::example_names();
  body["report_only"] = json::array({"crushed", "nonsigma"});
  emit(opt, body);
  return 0;
}

int report_crushed(const Options& opt) {
  mal::Rational gamma = mal::parse_rational(opt.gamma);
  mal::CrushedStage st = mal::crushed_extension_stage(gamma, opt.stage);
  mal::CrushedReport rep = mal::verify_crushed_stage(st);
  mal::Family extended = mal::crushed_extended_family(st);
  mal::R1Result r1 = mal::check_pre_rademacher(extended, st.stage + 1);
  json body = mal::report_envelope("report");
  body["crushed"] = mal::crushed_to_json(st, rep);
  body["extended_family"]["generators"] = extended.size();
  body["extended_family"]["particles_nonzero"] = r1.pass;
  body["extended_family"]["particles_checked"] = r1.checked;
  emit(opt, body);
  return rep.all_pass() && r1.pass ? 0 : 1;
}

int report_nonsigma(const Options& opt) {
  std::vector<mal::DyadicSet> chain = mal::non_sigma_chain(opt.chain_length);
  json rows = json::array();
  bool all_above_half = true;
  const mal::Rational half(1, 2);
  for (std::size_t t = 0; t < chain.size(); ++t) {
    mal::Rational mu = chain[t].lebesgue().to_rational();
    mal::Rational bound = mal::non_sigma_ledger_bound(static_cast<std::uint32_t>(t) + 1);
    json row;
    row["t"] = t + 1;
    row["measure"] = mal::rational_text(mu);
    row["ledger_bound"] = mal::rational_text(bound);
    row["bound_holds"] = mu >= bound;
    row["above_half"] = mu > half;
    if (!(mu > half && mu >= bound)) all_above_half = false;
    rows.push_back(std::move(row));
  }
  json body = mal::report_envelope("report");
  body["nonsigma"]["chain"] = std::move(rows);
  body["nonsigma"]["all_above_half"] = all_above_half;
  emit(opt, body);
  return all_above_half ? 0 : 1;
}

int cmd_report(const Options& opt) {
  if (opt.example == "crushed") return report_crushed(opt);
  if (opt.example == "nonsigma") return report_nonsigma(opt);
  mal::Family fam = load_family(opt);
  std::uint32_t depth = pick_depth(opt, fam);
  json body = mal::report_envelope("report");
  body["seed"] = opt.seed;
  body["report"] = property_report_json(mal::check_family(fam, depth, opt.seed));
  mal::MeasureContext ctx(fam);
  json gens = json::array();
  for (std::uint32_t i = 1; i <= fam.size(); ++i)
    gens.push_back(mal::rational_text(ctx.measure(fam.generator(i))));
  body["generator_measures"] = std::move(gens);
  bool pass = body["report"]["all_pass"].get<bool>();
  if (opt.haar_depth > 0) {
    bool orthogonal = false;
    body["haar_table"] = haar_table_json(fam, opt.haar_depth, orthogonal);
    body["haar_orthogonal"] = orthogonal;
    pass = pass && orthogonal;
  }
  if (!opt.element_path.empty() && opt.csv_level > 0) {
    mal::StepElement x = mal::step_from_json(mal::parse_json(mal::read_text_file(opt.element_path)));
    std::string csv = mal::step_to_csv(x, opt.csv_level);
    if (opt.out.empty()) {
      body["csv"] = csv;
    } else {
      mal::write_text_file(opt.out + ".csv", csv);
      body["csv_path"] = opt.out + ".csv";
    }
  }
  emit(opt, body);
  return pass ? 0 : 1;
}

int run(const std::string& command, const Options& opt) {
  if (command == "verify") return cmd_verify(opt);
  if (command == "measure") return cmd_measure(opt);
  if (command == "haar") return cmd_haar(opt);
  if (command == "integrate") return cmd_integrate(opt);
  if (command == "represent") return cmd_represent(opt);
  if (command == "examples") return cmd_examples(opt);
  return cmd_report(opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"measurable-algebra toolkit"};
  app.require_subcommand(1);

  Options opt;
  std::vector<CLI::App*> subs;
  for (const char* name : {"verify", "measure", "haar", "integrate", "represent", "examples", "report"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--family", opt.family_path, "family record (json file)");
    sub->add_option("--example", opt.example, "builtin example name");
    sub->add_option("--element", opt.element_path, "element record (json file)");
    sub->add_option("--depth", opt.depth, "verification depth")->check(CLI::Range(1, 20));
    sub->add_option("--seed", opt.seed, "seed for randomized sweeps (default 0)");
    sub->add_option("--tolerance", opt.tolerance, "tolerance for enclosures (rational)");
    sub->add_option("--out", opt.out, "output path (default stdout)");
    sub->add_option("--format", opt.format, "json|text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--n", opt.n, "generator count for builtin examples");
    sub->add_option("--points", opt.points, "universe size for the mixed example");
    sub->add_option("--gamma", opt.gamma, "target measure for the crushed report (rational in (0,1))");
    sub->add_option("--stage", opt.stage, "stage for the crushed report")->check(CLI::Range(1, 12));
    sub->add_option("--haar-depth", opt.haar_depth, "haar table/expansion depth")->check(CLI::Range(1, 16));
    sub->add_option("--m", opt.chain_length, "chain length for the nonsigma report")->check(CLI::Range(1, 20));
    sub->add_option("--max-order", opt.max_order, "independence cylinder order cap");
    sub->add_option("--csv-level", opt.csv_level, "dyadic grid level for csv emission")->check(CLI::Range(1, 20));
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (CLI::App* sub : subs)
      if (sub->parsed()) return run(sub->get_name(), opt);
    return 2;
  } catch (const mal::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case mal::Errc::budget_exceeded:
        return 3;
      case mal::Errc::io_error:
        return 4;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
