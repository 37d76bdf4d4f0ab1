#include "commands.hpp"

#include "flipbench/chamber.hpp"
#include "flipbench/error.hpp"
#include "flipbench/flips.hpp"
#include "flipbench/moufang.hpp"
#include "flipbench/norms.hpp"
#include "flipbench/skewfield.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

namespace flipbench::cli {

namespace {

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::vector<GroupMode> modes_of(const std::string& group) {
  if (group == "both") return {GroupMode::SL, GroupMode::PSL};
  return {parse_group_mode(group)};
}

void require_group_order(const RunConfig& cfg, std::uint64_t q) {
  const std::uint64_t order = group_order(q, GroupMode::SL);
  if (order > cfg.max_group_order)
    throw Error(ErrorCode::size_limit, "|SL2(F_" + std::to_string(q) + ")| = " + std::to_string(order) +
                                           " exceeds --max-group-order " + std::to_string(cfg.max_group_order));
}

/// --q, else --max-q, else the command default; every q must be a prime power <= bound.
std::vector<std::uint32_t> q_range(const RunConfig& cfg, std::uint32_t fallback, std::uint32_t bound) {
  std::vector<std::uint32_t> qs;
  if (cfg.q) {
    if (prime_power_decomposition(*cfg.q).first == 0)
      throw Error(ErrorCode::invalid_argument, std::to_string(*cfg.q) + " is not a prime power");
    qs = {*cfg.q};
  } else if (cfg.max_q) {
    qs = prime_powers_up_to(*cfg.max_q);
  } else {
    qs = {fallback};
  }
  if (qs.empty()) throw Error(ErrorCode::invalid_argument, "empty q range");
  if (qs.back() > bound)
    throw Error(ErrorCode::size_limit, cfg.command + " supports q <= " + std::to_string(bound));
  for (auto q : qs) require_group_order(cfg, q);
  return qs;
}

/// The requested automorphism if it is valid for f, otherwise every involutive one.
/// With an explicit --sigma, fields it does not apply to are skipped in sweeps.
std::vector<FieldAut> sigmas_for(const RunConfig& cfg, const GaloisField& f, bool single_field) {
  if (!cfg.sigma) return involutive_automorphisms(f);
  try {
    return {validate_aut(f, FieldAut::parse(*cfg.sigma))};
  } catch (const Error&) {
    if (single_field) throw;
    return {};
  }
}

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  void stamp(Json& j) const {
    if (!enabled_) return;
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    j["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

Json verdict_json(Tri t, std::string_view method) { return {{"value", to_string(t)}, {"method", method}}; }

std::string describe(const GaloisField& f, const PredictedFlip& p) {
  const std::string x = p.sigma.is_identity() ? "x" : p.sigma.to_string() + "(x)";
  return f.format(p.eps) + "*" + x;
}

Json summary(std::size_t records, std::size_t disagreements) {
  return {{"records", records},
          {"disagreements", disagreements},
          {"exit_code", static_cast<int>(disagreements == 0 ? Exit::ok : Exit::disagreement)}};
}

// ---------------------------------------------------------------------------

Json field_check_finite(const RunConfig& cfg, Json& records) {
  std::size_t disagreements = 0;
  const std::vector<std::uint32_t> qs = q_range(cfg, 7, 31);
  std::vector<std::shared_ptr<const GaloisField>> fields;
  if (cfg.field) {
    fields.push_back(std::get<std::shared_ptr<const GaloisField>>(make_field(FieldSpec::parse(*cfg.field))));
    require_group_order(cfg, fields.back()->order());
  } else {
    for (auto q : qs) fields.push_back(galois_field(q));
  }
  for (const auto& f : fields) {
    const auto sl = enumerate_group(*f, GroupMode::SL);
    for (const FieldAut& sigma : sigmas_for(cfg, *f, fields.size() == 1)) {
      for (GroupMode mode : modes_of(cfg.group)) {
        const Stopwatch clock(cfg.timing);
        const PairCheck pc = iwasawa_pair_check(*f, sigma, mode);
        const Flip<GFElem> theta(f->one(), sigma);
        const Transitivity oracle = is_transitive(theta, mode, Method::brute_force, &sl);
        const bool agree = pc.verdict == to_tri(oracle.transitive);
        if (!agree) ++disagreements;
        Json r;
        r["field"] = f->spec_string();
        r["q"] = f->order();
        r["sigma"] = sigma.to_string();
        r["mode"] = to_string(mode);
        r["verdict"] = verdict_json(pc.verdict, pc.method);
        r["minus_one_is_norm"] = pc.minus_one_is_norm;
        r["norms_closed"] = to_string(pc.norms_closed);
        r["counterexample"] = pc.counterexample ? Json((*pc.counterexample)[2]) : Json(nullptr);
        r["counterexample_terms"] = pc.counterexample ? Json(*pc.counterexample) : Json(nullptr);
        r["oracle"] = {{"value", to_string(to_tri(oracle.transitive))},
                       {"method", to_string(Method::brute_force)},
                       {"orbits", oracle.orbits.size()},
                       {"centralizer_order", oracle.centralizer_order}};
        r["agreement"] = agree;
        clock.stamp(r);
        records.push_back(std::move(r));
      }
    }
  }
  return summary(records.size(), disagreements);
}

Json field_check_infinite(const RunConfig& cfg, const FieldSpec& spec, Json& records) {
  const AnyField field = make_field(spec);
  const bool rational = std::holds_alternative<RationalField>(field);
  const FieldAut sigma = cfg.sigma ? FieldAut::parse(*cfg.sigma)
                                   : (rational ? FieldAut::identity() : FieldAut::conjugation());
  for (GroupMode mode : modes_of(cfg.group)) {
    const Stopwatch clock(cfg.timing);
    const PairCheck pc = rational ? iwasawa_pair_check(std::get<RationalField>(field), sigma, mode)
                                  : iwasawa_pair_check(std::get<QuadraticField>(field), sigma, mode);
    Json r;
    r["field"] = spec.to_string();
    r["sigma"] = sigma.to_string();
    r["mode"] = to_string(mode);
    r["verdict"] = verdict_json(pc.verdict, pc.method);
    r["minus_one_is_norm"] = pc.minus_one_is_norm;
    r["minus_one_witness"] = opt(pc.minus_one_witness);
    r["norms_closed"] = to_string(pc.norms_closed);
    r["counterexample"] = pc.counterexample ? Json((*pc.counterexample)[2]) : Json(nullptr);
    r["counterexample_terms"] = pc.counterexample ? Json(*pc.counterexample) : Json(nullptr);
    r["oracle"] = nullptr;
    r["agreement"] = nullptr;
    clock.stamp(r);
    records.push_back(std::move(r));
  }
  return summary(records.size(), 0);
}

Json cmd_field_check(const RunConfig& cfg, Json& records) {
  if (cfg.field) {
    const FieldSpec spec = FieldSpec::parse(*cfg.field);
    if (!spec.is_finite()) return field_check_infinite(cfg, spec, records);
  }
  return field_check_finite(cfg, records);
}

Json cmd_flip_sweep(const RunConfig& cfg, Json& records) {
  std::size_t disagreements = 0, transitive = 0;
  for (auto q : q_range(cfg, 7, 31)) {
    const auto f = galois_field(q);
    const auto sl = enumerate_group(*f, GroupMode::SL);
    const auto allowed = sigmas_for(cfg, *f, cfg.q.has_value());
    const std::uint32_t delta = cfg.delta ? f->parse(*cfg.delta).index : 0;
    for (const Flip<GFElem>& theta : all_flips(*f)) {
      if (std::find(allowed.begin(), allowed.end(), theta.sigma()) == allowed.end()) continue;
      if (cfg.delta && theta.delta().index != delta) continue;
      for (GroupMode mode : modes_of(cfg.group)) {
        const Stopwatch clock(cfg.timing);
        const Tri criterion = criterion_verdict(*f, theta.delta(), theta.sigma(), mode);
        const Transitivity oracle = is_transitive(theta, mode, Method::brute_force, &sl);
        const bool agree = criterion == to_tri(oracle.transitive);
        if (!agree) ++disagreements;
        if (oracle.transitive) ++transitive;
        Json r;
        r["q"] = q;
        r["delta"] = f->format(theta.delta());
        r["sigma"] = theta.sigma().to_string();
        r["mode"] = to_string(mode);
        r["criterion"] = verdict_json(criterion, to_string(Method::formula));
        r["oracle"] = {{"value", to_string(to_tri(oracle.transitive))},
                       {"method", to_string(Method::brute_force)},
                       {"orbits", oracle.orbits.size()},
                       {"centralizer_order", oracle.centralizer_order}};
        r["agreement"] = agree;
        clock.stamp(r);
        records.push_back(std::move(r));
      }
    }
  }
  Json s = summary(records.size(), disagreements);
  s["transitive"] = transitive;
  return s;
}

Json cmd_moufang(const RunConfig& cfg, Json& records) {
  std::shared_ptr<const GaloisField> f;
  if (cfg.moufang_set) {
    f = parse_moufang_spec(*cfg.moufang_set);
  } else {
    f = galois_field(q_range(cfg, 7, 32).front());
  }
  require_group_order(cfg, f->order());
  std::size_t failures = 0;
  const MoufangSet m = moufang_of_field(*f);

  {
    const Stopwatch clock(cfg.timing);
    const AxiomReport ax = verify_moufang_axioms(m);
    Json r = {{"check", "moufang_axioms"},
              {"passed", ax.ok()},
              {"method", "exhaustive"},
              {"fixes_point", ax.fixes_point},
              {"regular", ax.regular},
              {"permutes_root_groups", ax.permutes_root_groups}};
    if (!ax.ok()) ++failures;
    clock.stamp(r);
    records.push_back(std::move(r));
  }
  {
    const Stopwatch clock(cfg.timing);
    const ObviousFlip ob = obvious_flip_transitive(m);
    const Transitivity flips_side =
        is_transitive(Flip<GFElem>(f->one(), FieldAut::identity()), GroupMode::PSL, Method::formula);
    const bool agree = ob.transitive == flips_side.transitive && ob.orbits.size() == flips_side.orbits.size();
    if (!agree) ++failures;
    Json r = {{"check", "obvious_flip"},
              {"passed", agree},
              {"method", "exhaustive"},
              {"transitive", ob.transitive},
              {"fixed_point", ob.fixed_point ? Json(m.format(*ob.fixed_point)) : Json(nullptr)},
              {"orbits", ob.orbits.size()},
              {"centralizer_order", ob.centralizer_order},
              {"group_order", ob.group_order},
              {"flips_orbits", flips_side.orbits.size()},
              {"agreement", agree}};
    clock.stamp(r);
    records.push_back(std::move(r));
  }
  if (cfg.verify_all) {
    const Stopwatch clock(cfg.timing);
    const IdentitySuite suite = verify_identities(*f);
    for (const IdentityCheck& c : suite.checks) {
      if (!c.passed) ++failures;
      records.push_back({{"check", c.name},
                         {"passed", c.passed},
                         {"method", "exhaustive"},
                         {"cases", c.cases},
                         {"counterexample", opt(c.counterexample)}});
    }
    if (cfg.timing) clock.stamp(records.back());
  }
  Json s = summary(records.size(), failures);
  s["field"] = f->spec_string();
  return s;
}

Json cmd_classify(const RunConfig& cfg, Json& records) {
  std::size_t disagreements = 0;
  for (auto q : q_range(cfg, 9, 16)) {
    const Stopwatch clock(cfg.timing);
    const auto f = galois_field(q);
    const Classification c = classify_additive_flips(*f);
    const FlipClassificationM cm = classify_flips_commutative(*f);
    std::vector<std::string> predicted, observed, observed_m;
    for (const auto& p : c.predicted) predicted.push_back(describe(*f, p));
    for (const auto& o : c.observed) observed.push_back(o.to_string());
    for (const auto& o : cm.observed) observed_m.push_back(o.to_string());
    std::sort(observed.begin(), observed.end());
    std::sort(observed_m.begin(), observed_m.end());
    const bool agree = c.match && cm.match && observed == observed_m;
    if (!agree) ++disagreements;
    Json r = {{"q", q},
              {"candidates", c.candidates},
              {"predicted", predicted},
              {"observed", observed},
              {"match", {{"value", c.match}, {"method", "sl2-spanning-tree"}}},
              {"moufang_match", {{"value", cm.match}, {"method", "phi-tau-involution"}}},
              {"agreement", agree}};
    clock.stamp(r);
    records.push_back(std::move(r));
  }
  return summary(records.size(), disagreements);
}

Json pass_json(std::string_view name, const PassCount& p) {
  return {{"check", name}, {"passed", p.passed}, {"total", p.total}, {"ok", p.all()}};
}

Json cmd_quat(const RunConfig& cfg, Json& records) {
  if (cfg.samples == 0 || cfg.samples > 1000000)
    throw Error(ErrorCode::size_limit, "--samples must lie in 1..1000000");
  const auto alg = QuaternionAlgebra::parse(cfg.quat);
  const Stopwatch clock(cfg.timing);
  const QuaternionSuite s = run_quaternion_suite(alg, cfg.samples, cfg.seed);
  records.push_back(pass_json("nrd_multiplicative", s.nrd_multiplicative));
  records.push_back(pass_json("dieudonne_multiplicative", s.det_multiplicative));
  records.push_back(pass_json("dieudonne_scaling", s.det_scaling));
  records.push_back(pass_json("membership_iff_commuting", s.membership_iff_commuting));
  records.push_back(pass_json("witness_verified", s.witness_verified));
  records.push_back(pass_json("witness_matches_condition", s.witness_matches_condition));
  records.push_back(pass_json("hand_cases", s.hand_cases));
  records.push_back(pass_json("moufang_pointwise", s.moufang_pointwise));
  clock.stamp(records.back());

  Json out = summary(records.size(), s.ok() ? 0 : 1);
  out["algebra"] = s.algebra;
  out["division_guaranteed"] = alg->division_guaranteed;
  out["members_sampled"] = s.members_sampled;
  out["witnesses"] = {{"verified", s.witness_verified.passed},
                      {"no_witness", s.witness_no},
                      {"search_exhausted", s.witness_exhausted}};
  if (alg == QuaternionAlgebra::hamilton()) {
    Json examples = Json::array();
    for (const char* text : {"i", "1+i", "2i"}) {
      const ConditionReport c = condition_1_plus_a2(parse_quaternion(alg, text));
      examples.push_back({{"q", text},
                          {"one_plus_q_squared", to_string(c.value)},
                          {"nrd", to_string(c.nrd)},
                          {"verdict", to_string(c.verdict)}});
    }
    out["condition_examples"] = std::move(examples);
  }
  return out;
}

Json cmd_product_demo(const RunConfig& cfg, Json& records) {
  const std::uint32_t q = q_range(cfg, 7, 11).front();
  const Stopwatch clock(cfg.timing);
  const ProductDemo d = product_demo(q);
  Json panels = Json::array();
  for (const PanelReport& p : d.local.panels)
    panels.push_back({{"relation", p.relation},
                      {"panel_size", p.panel_size},
                      {"stabilizer_order", p.stabilizer_order},
                      {"transitive", p.transitive}});
  Json r;
  r["q"] = q;
  r["expected_positive"] = d.expected_positive;
  r["status"] = !d.as_expected() ? "unexpected" : (d.expected_positive ? "pass" : "expected-negative");
  r["chambers"] = d.chambers;
  r["k_order"] = d.k_order;
  r["fixed_group_is_k_times_k"] = d.fixed_group_is_k_times_k;
  r["connected"] = d.connected;
  r["local_to_global"] = {{"local_ok", d.local.local_ok},
                          {"global_transitive", d.local.global_transitive},
                          {"group_order", d.local.group_order},
                          {"panels", panels},
                          {"method", "closure-filtration"}};
  r["orbits_agree"] = d.orbits_agree;
  r["iwasawa_failures"] = d.iwasawa_failures;
  r["iwasawa_count_ok"] = d.iwasawa_count_ok;
  r["converse_ok"] = d.converse_ok;
  clock.stamp(r);
  records.push_back(std::move(r));
  return summary(1, d.as_expected() ? 0 : 1);
}

bool in_centralizer(const Flip<GFElem>& theta, const Mat2<GFElem>& k, GroupMode mode) {
  const Mat2<GFElem> t = apply_flip(theta, k);
  return t == k || (mode == GroupMode::PSL && t == -k);
}

Json cmd_factorize(const RunConfig& cfg, Json& records) {
  const std::uint32_t q = q_range(cfg, 7, 31).front();
  const auto f = galois_field(q);
  const FieldAut sigma = validate_aut(*f, FieldAut::parse(cfg.sigma.value_or("id")));
  const Flip<GFElem> theta(f->parse(cfg.delta.value_or("1")), sigma);
  std::size_t disagreements = 0;
  for (GroupMode mode : modes_of(cfg.group)) {
    const Stopwatch clock(cfg.timing);
    const Tri criterion = criterion_verdict(*f, theta.delta(), sigma, mode);
    std::vector<Mat2<GFElem>> targets;
    if (cfg.matrix) {
      Mat2<GFElem> g = parse_matrix<GFElem>(*cfg.matrix, [&](std::string_view s) { return f->parse(s); });
      if (!is_sl2(g)) throw Error(ErrorCode::invalid_argument, "matrix is not in SL2");
      targets.push_back(mode == GroupMode::PSL ? psl_canonical(g) : g);
    } else {
      targets = enumerate_group(*f, mode);
    }
    std::size_t factorized = 0, recompose_failures = 0;
    std::optional<std::string> first_failure;
    Json single;
    for (const auto& g : targets) {
      try {
        const IwasawaFactors<GFElem> kb = iwasawa_factorize(g, theta, mode);
        const bool ok = kb.k * kb.b == g && is_upper(kb.b) && in_centralizer(theta, kb.k, mode);
        if (ok) {
          ++factorized;
        } else {
          ++recompose_failures;
        }
        if (cfg.matrix)
          single = {{"g", to_string(g)}, {"k", to_string(kb.k)}, {"b", to_string(kb.b)}, {"recomposes", ok}};
      } catch (const Error& e) {
        if (e.code() != ErrorCode::no_such_x) throw;
        if (!first_failure) first_failure = to_string(g);
        if (cfg.matrix) single = {{"g", to_string(g)}, {"error", to_string(e.code())}};
      }
    }
    const bool all = factorized == targets.size();
    // A factorization of every element must happen exactly when the criterion says yes.
    const bool agree = recompose_failures == 0 && (cfg.matrix ? (all || criterion != Tri::yes)
                                                              : all == (criterion == Tri::yes));
    if (!agree) ++disagreements;
    Json r;
    r["q"] = q;
    r["delta"] = f->format(theta.delta());
    r["sigma"] = sigma.to_string();
    r["mode"] = to_string(mode);
    r["criterion"] = verdict_json(criterion, to_string(Method::formula));
    r["elements"] = targets.size();
    r["factorized"] = factorized;
    r["recompose_failures"] = recompose_failures;
    r["first_failure"] = opt(first_failure);
    if (cfg.matrix) r["factorization"] = single;
    r["agreement"] = agree;
    clock.stamp(r);
    records.push_back(std::move(r));
  }
  return summary(records.size(), disagreements);
}

using Command = Json (*)(const RunConfig&, Json&);

Command command_for(const std::string& name) {
  if (name == "field-check") return cmd_field_check;
  if (name == "flip-sweep") return cmd_flip_sweep;
  if (name == "moufang") return cmd_moufang;
  if (name == "classify") return cmd_classify;
  if (name == "quat") return cmd_quat;
  if (name == "product-demo") return cmd_product_demo;
  if (name == "factorize") return cmd_factorize;
  throw Error(ErrorCode::invalid_argument, "unknown command '" + name + "'");
}

void scalar_line(std::ostringstream& out, const Json& obj) {
  bool first = true;
  for (const auto& [key, value] : obj.items()) {
    if (value.is_structured()) {
      if (value.is_object() && value.contains("value")) {
        out << (first ? "" : " ") << key << "=" << value["value"].dump();
        first = false;
      }
      continue;
    }
    out << (first ? "" : " ") << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump());
    first = false;
  }
}

}  // namespace

Json config_json(const RunConfig& cfg) {
  return {{"command", cfg.command},
          {"field", opt(cfg.field)},
          {"q", opt(cfg.q)},
          {"max_q", opt(cfg.max_q)},
          {"sigma", opt(cfg.sigma)},
          {"delta", opt(cfg.delta)},
          {"group", cfg.group},
          {"seed", cfg.seed},
          {"samples", cfg.samples},
          {"quat", cfg.quat},
          {"moufang_set", opt(cfg.moufang_set)},
          {"verify_all", cfg.verify_all},
          {"matrix", opt(cfg.matrix)},
          {"max_group_order", cfg.max_group_order},
          {"timing", cfg.timing}};
}

std::string config_key(const RunConfig& cfg) {
  const std::string text = config_json(cfg).dump() + "#schema=" + std::to_string(schema_version);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json run(const RunConfig& cfg) {
  const Command cmd = command_for(cfg.command);
  Json report;
  report["schema_version"] = schema_version;
  report["command"] = cfg.command;
  report["config"] = config_json(cfg);
  Json records = Json::array();
  const Stopwatch clock(cfg.timing);
  Json s = cmd(cfg, records);
  clock.stamp(s);
  report["records"] = std::move(records);
  report["summary"] = std::move(s);
  return report;
}

std::string text_summary(const Json& report) {
  std::ostringstream out;
  const Json& s = report.at("summary");
  const int code = s.at("exit_code").get<int>();
  out << report.at("command").get<std::string>() << ": " << (code == 0 ? "ok" : "DISAGREEMENT") << " ("
      << s.at("records").get<std::size_t>() << " records, " << s.at("disagreements").get<std::size_t>()
      << " disagreements)\n";
  for (const Json& r : report.at("records")) {
    out << "  ";
    scalar_line(out, r);
    out << "\n";
  }
  return out.str();
}

}  // namespace flipbench::cli
