#include "mal/serialize.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <variant>
#include <vector>

#include "mal/budget.hpp"
#include "mal/error.hpp"
#include "mal/interval_set.hpp"

namespace mal {

namespace {

using nlohmann::json;

json element_record(const AlgebraElement& x) {
  json j;
  j["kind"] = algebra_kind(x);
  if (const auto* d = std::get_if<DyadicSet>(&x)) {
    j["level"] = d->level();
    j["mask"] = d->mask_hex();
  } else if (const auto* iv = std::get_if<IntervalSet>(&x)) {
    json list = json::array();
    for (const auto& i : iv->intervals()) {
      json rec;
      rec["lo"] = quad_text(i.lo);
      rec["hi"] = quad_text(i.hi);
      list.push_back(std::move(rec));
    }
    j["ivals"] = std::move(list);
  } else if (const auto* f = std::get_if<FiniteSubset>(&x)) {
    j["universe"] = f->universe;
    json members = json::array();
    for (std::uint32_t p = 0; p < f->universe; ++p)
      if ((f->bits >> p) & 1) members.push_back(p);
    j["members"] = std::move(members);
  } else {
    const auto& pair = std::get<PairElement>(x);
    j["left"] = element_record(pair.left());
    j["right"] = element_record(pair.right());
  }
  return j;
}

AlgebraElement element_parse(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "dyadic")
    return DyadicSet::from_mask_hex(j.at("level").get<std::uint32_t>(), j.at("mask").get<std::string>());
  if (kind == "interval") {
    std::vector<Interval> ivals;
    for (const auto& rec : j.at("ivals"))
      ivals.push_back({parse_quad(rec.at("lo").get<std::string>()), parse_quad(rec.at("hi").get<std::string>())});
    return IntervalSet::from_intervals(std::move(ivals));
  }
  if (kind == "finite") {
    FiniteSubset s = FiniteSubset::empty(j.at("universe").get<std::uint32_t>());
    for (const auto& m : j.at("members")) {
      std::uint32_t p = m.get<std::uint32_t>();
      if (p >= s.universe) fail(Errc::parse_error, "finite member outside the universe");
      s.bits |= std::uint64_t{1} << p;
    }
    return s;
  }
  if (kind == "pair")
    return PairElement::of(element_parse(j.at("left")), element_parse(j.at("right")));
  fail(Errc::parse_error, "unknown element kind: " + kind);
}

}  // namespace

nlohmann::json element_to_json(const AlgebraElement& x) { return element_record(x); }

AlgebraElement element_from_json(const nlohmann::json& j) {
  try {
    return element_parse(j);
  } catch (const json::exception& ex) {
    fail(Errc::parse_error, std::string("malformed element record: ") + ex.what());
  }
}

nlohmann::json family_to_json(const Family& fam) {
  json j;
  j["algebra"] = algebra_kind(fam.unit);
  j["unit"] = element_record(fam.unit);
  json gens = json::array();
  for (const auto& g : fam.generators) gens.push_back(element_record(g));
  j["generators"] = std::move(gens);
  return j;
}

Family family_from_json(const nlohmann::json& j) {
  try {
    AlgebraElement unit = element_parse(j.at("unit"));
    std::vector<AlgebraElement> gens;
    for (const auto& g : j.at("generators")) gens.push_back(element_parse(g));
    return Family::on(std::move(unit), std::move(gens));
  } catch (const json::exception& ex) {
    fail(Errc::parse_error, std::string("malformed family record: ") + ex.what());
  }
}

nlohmann::json step_to_json(const StepElement& x) {
  json j;
  j["unit"] = element_record(x.unit());
  json terms = json::array();
  for (const auto& t : x.terms()) {
    json entry = json::array();
    entry.push_back(rational_text(t.coeff));
    entry.push_back(element_record(t.fragment));
    terms.push_back(std::move(entry));
  }
  j["terms"] = std::move(terms);
  return j;
}

StepElement step_from_json(const nlohmann::json& j) {
  try {
    AlgebraElement unit = element_parse(j.at("unit"));
    std::vector<StepTerm> terms;
    for (const auto& entry : j.at("terms")) {
      if (!entry.is_array() || entry.size() != 2) fail(Errc::parse_error, "step term must be [coefficient, element]");
      terms.push_back({parse_rational(entry[0].get<std::string>()), element_parse(entry[1])});
    }
    return StepElement(std::move(unit), std::move(terms));
  } catch (const json::exception& ex) {
    fail(Errc::parse_error, std::string("malformed step record: ") + ex.what());
  }
}

nlohmann::json integral_to_json(const IntegralValue& v) {
  json j;
  j["value"] = rational_text(v.value);
  j["decimal"] = decimal_text(v.value, 12);
  j["lo"] = rational_text(v.lo);
  j["hi"] = rational_text(v.hi);
  return j;
}

nlohmann::json prob_space_to_json(const FiniteProbSpace& space) {
  json j;
  j["depth"] = space.depth;
  j["outcomes"] = space.outcomes;
  json probs = json::array();
  for (const auto& p : space.probabilities) probs.push_back(dyadic_text(p));
  j["probabilities"] = std::move(probs);
  j["variables"] = space.variables;
  return j;
}

nlohmann::json crushed_to_json(const CrushedStage& st, const CrushedReport& rep) {
  json j;
  j["stage"] = st.stage;
  j["gamma"] = rational_text(st.gamma);
  j["r0"] = element_record(AlgebraElement(st.r0));
  auto set_list = [](const std::vector<DyadicSet>& sets) {
    json list = json::array();
    for (const auto& s : sets) {
      json rec;
      rec["set"] = element_record(AlgebraElement(s));
      rec["measure"] = dyadic_text(s.lebesgue());
      list.push_back(std::move(rec));
    }
    return list;
  };
  j["a_sets"] = set_list(st.a_sets);
  j["b_sets"] = set_list(st.b_sets);
  j["fillers"] = set_list(st.fillers);
  j["r0_measure"] = rational_text(rep.r0_measure);
  j["gamma_gap"] = rational_text(rep.gamma_gap);
  json checks;
  checks["sets_disjoint"] = rep.sets_disjoint;
  checks["ledger_bounds"] = rep.ledger_bounds;
  checks["stage_cantor"] = rep.stage_cantor;
  checks["avoids_interval"] = rep.avoids_interval;
  checks["two_sided"] = rep.two_sided;
  checks["measure_close"] = rep.measure_close;
  j["checks"] = std::move(checks);
  return j;
}

nlohmann::json report_envelope(const std::string& command) {
  json j;
  j["schema"] = "mal-report/1";
  j["command"] = command;
  return j;
}

std::string step_to_csv(const StepElement& x, std::uint32_t level) {
  const auto* unit = std::get_if<DyadicSet>(&x.unit());
  if (!unit) fail(Errc::bad_element, "csv emission needs the dyadic carrier");
  check_budget(std::uint64_t{1} << level, "csv grid");
  std::ostringstream out;
  out << "cell_lo,cell_hi,value\n";
  const BigInt den = pow2(level);
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << level); ++c) {
    DyadicSet cell = DyadicSet::cell(level, c);
    DyadicSet inside = meet(cell, *unit);
    if (inside.is_empty()) continue;
    if (!(inside == cell)) fail(Errc::not_in_algebra, "grid level too coarse for the unit");
    Rational value(0);
    for (const auto& t : x.terms()) {
      const auto& frag = std::get<DyadicSet>(t.fragment);
      if (leq(cell, frag)) {
        value = t.coeff;
        break;
      }
      if (!meet(cell, frag).is_empty())
        fail(Errc::not_in_algebra, "grid level too coarse for this element");
    }
    out << rational_text(make_rational(BigInt(c), den)) << ','
        << rational_text(make_rational(BigInt(c) + 1, den)) << ',' << rational_text(value) << '\n';
  }
  return out.str();
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::parse_error, "malformed json");
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot open for writing: " + path);
  out << content;
  if (!out) fail(Errc::io_error, "write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace mal
