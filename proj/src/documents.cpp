#include "cohlab/io/documents.hpp"

#include <fstream>
#include <sstream>

#include "cohlab/constructions/cohesive.hpp"
#include "cohlab/constructions/coding.hpp"
#include "cohlab/constructions/generic_path.hpp"
#include "cohlab/constructions/inversion.hpp"
#include "cohlab/constructions/pipeline.hpp"
#include "cohlab/constructions/superlow.hpp"
#include "cohlab/constructions/triangle.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/pairing.hpp"
#include "cohlab/sets/reduction.hpp"
#include "cohlab/vm/godel.hpp"

namespace cohlab::io {

namespace {

std::string bits_to_text(const std::vector<u8>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (u8 b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<u8> text_to_bits(const std::string& s) {
  std::vector<u8> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw Error("bit string must contain only 0s and 1s");
    bits.push_back(c == '1' ? 1 : 0);
  }
  return bits;
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw Error(std::string("missing field '") + name + "'");
  return *it;
}

}  // namespace

std::string digest(const json& doc) {
  std::string dump = doc.dump();
  u64 h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a64-" << std::hex << h;
  return os.str();
}

json oracle_to_json(const sets::Oracle& o) {
  json j;
  switch (o.kind()) {
    case sets::Oracle::Kind::Table: {
      j["kind"] = "table";
      json entries = json::array();
      for (auto& [x, b] : o.table_entries()) entries.push_back({x, b ? 1 : 0});
      j["entries"] = entries;
      j["default"] = o.table_default() ? 1 : 0;
      break;
    }
    case sets::Oracle::Kind::Program:
      j["kind"] = "program";
      j["program"] = vm::pretty_print(o.backing_program());
      j["base"] = oracle_to_json(o.base());
      j["stepBudget"] = o.step_budget();
      break;
    case sets::Oracle::Kind::Join:
      j["kind"] = "join";
      j["left"] = oracle_to_json(o.left());
      j["right"] = oracle_to_json(o.right());
      break;
    case sets::Oracle::Kind::CappedJump:
      j["kind"] = "cappedJump";
      j["base"] = oracle_to_json(o.base());
      j["cap"] = o.jump_cap();
      break;
  }
  return j;
}

sets::Oracle oracle_from_json(const json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "table") {
    std::map<u64, bool> entries;
    for (auto& e : field(j, "entries")) entries[e.at(0).get<u64>()] = e.at(1).get<int>() != 0;
    return sets::Oracle::table(std::move(entries), field(j, "default").get<int>() != 0);
  }
  if (kind == "program") {
    return sets::Oracle::program(vm::parse_program(field(j, "program").get<std::string>()),
                                 oracle_from_json(field(j, "base")),
                                 field(j, "stepBudget").get<u64>());
  }
  if (kind == "join") {
    return sets::Oracle::join(oracle_from_json(field(j, "left")),
                              oracle_from_json(field(j, "right")));
  }
  if (kind == "cappedJump") {
    return sets::Oracle::capped_jump(oracle_from_json(field(j, "base")),
                                     field(j, "cap").get<u64>());
  }
  throw Error("unknown oracle kind '" + kind + "'");
}

json family_to_json(const trees::UniformFamily& f) {
  json j;
  if (f.is_program_backed()) {
    j["kind"] = "program";
    j["program"] = vm::pretty_print(f.backing_program());
    j["base"] = oracle_to_json(f.backing_env());
    j["stepBudget"] = f.backing_budget();
    j["count"] = f.count();
    return j;
  }
  if (f.is_grid()) {
    j["kind"] = "grid";
    j["count"] = f.count();
    j["width"] = f.grid_width();
    j["bits"] = bits_to_text(f.grid_bits());
    return j;
  }
  throw Error("family backing is not serializable");
}

trees::UniformFamily family_from_json(const json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "program") {
    return trees::UniformFamily::from_program(
        vm::parse_program(field(j, "program").get<std::string>()),
        oracle_from_json(field(j, "base")), field(j, "stepBudget").get<u64>(),
        field(j, "count").get<u64>());
  }
  if (kind == "grid") {
    return trees::UniformFamily::from_grid(field(j, "count").get<u64>(),
                                           field(j, "width").get<u64>(),
                                           text_to_bits(field(j, "bits").get<std::string>()));
  }
  throw Error("unknown family kind '" + kind + "'");
}

json approx_to_json(const sets::ApproxSet& a) {
  if (!a.is_program_backed()) throw Error("approximation backing is not serializable");
  json j;
  j["kind"] = "program";
  j["program"] = vm::pretty_print(a.backing_program());
  j["base"] = oracle_to_json(a.backing_env());
  j["stepBudget"] = a.backing_budget();
  if (a.has_modulus()) j["modulus"] = *a.modulus_at(0);
  return j;
}

sets::ApproxSet approx_from_json(const json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "program") {
    auto a = sets::ApproxSet::from_program(
        vm::parse_program(field(j, "program").get<std::string>()),
        oracle_from_json(field(j, "base")), field(j, "stepBudget").get<u64>());
    if (j.contains("modulus")) return a.with_modulus(j["modulus"].get<u64>());
    return a;
  }
  if (kind == "grid") {
    auto a = sets::ApproxSet::from_grid(field(j, "width").get<u64>(),
                                        field(j, "stages").get<u64>(),
                                        text_to_bits(field(j, "bits").get<std::string>()));
    if (j.contains("modulus")) return a.with_modulus(j["modulus"].get<u64>());
    return a;
  }
  throw Error("unknown approximation kind '" + kind + "'");
}

sets::ApproxSet approx_for_family(const json& j, const trees::UniformFamily& fam) {
  if (field(j, "kind").get<std::string>() == "familyPath") {
    return trees::path_approx_from_family(fam, field(j, "witnessBound").get<u64>(),
                                          field(j, "depth").get<u64>());
  }
  return approx_from_json(j);
}

json tree_to_json(const trees::TruncatedTree& t) {
  json j;
  if (t.is_program_backed()) {
    j["kind"] = "program";
    j["program"] = vm::pretty_print(t.backing_program());
    j["base"] = oracle_to_json(t.backing_env());
    j["stepBudget"] = t.backing_budget();
  } else if (t.is_explicit()) {
    j["kind"] = "nodes";
    j["nodes"] = t.explicit_nodes();
  } else {
    throw Error("tree backing is not serializable");
  }
  j["depth"] = t.depth();
  if (t.has_stages()) {
    json stages = json::array();
    for (u64 s = 0; s < t.stage_count(); ++s) stages.push_back(t.stage(s).codes());
    j["stages"] = stages;
  }
  return j;
}

trees::TruncatedTree tree_from_json(const json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  u64 depth = field(j, "depth").get<u64>();
  trees::TruncatedTree t;
  if (kind == "program") {
    t = trees::TruncatedTree::from_program(
        vm::parse_program(field(j, "program").get<std::string>()),
        oracle_from_json(field(j, "base")), field(j, "stepBudget").get<u64>(), depth);
  } else if (kind == "nodes") {
    t = trees::TruncatedTree::from_nodes(field(j, "nodes").get<std::vector<u64>>(),
                                         depth);
  } else {
    throw Error("unknown tree kind '" + kind + "'");
  }
  if (j.contains("stages")) {
    std::vector<trees::TreeSnapshot> snaps;
    for (auto& st : j["stages"])
      snaps.emplace_back(st.get<std::vector<u64>>(), depth);
    t = t.with_stage_snapshots(std::move(snaps));
  }
  return t;
}

json reduction_to_json(const sets::WttReduction& r) {
  return json{{"program", vm::pretty_print(r.program)},
              {"boundProgram", vm::pretty_print(r.bound_program)},
              {"boundEvalBudget", r.bound_eval_budget}};
}

sets::WttReduction reduction_from_json(const json& j) {
  sets::WttReduction r;
  r.program = vm::parse_program(field(j, "program").get<std::string>());
  r.bound_program = vm::parse_program(field(j, "boundProgram").get<std::string>());
  if (j.contains("boundEvalBudget")) r.bound_eval_budget = j["boundEvalBudget"].get<u64>();
  return r;
}

json enum_set_doc(const vm::Program& semidecider, const sets::Oracle& base,
                  u64 universe_cap) {
  return json{{"kind", "semidecider"},
              {"program", vm::pretty_print(semidecider)},
              {"base", oracle_to_json(base)},
              {"universeCap", universe_cap}};
}

sets::EnumSet enum_set_from_json(const json& j) {
  if (field(j, "kind").get<std::string>() != "semidecider")
    throw Error("unknown enumerable-set kind");
  return sets::enumerated_set(vm::parse_program(field(j, "program").get<std::string>()),
                              oracle_from_json(field(j, "base")),
                              field(j, "universeCap").get<u64>());
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << doc.dump(2) << "\n";
}

json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void validate_instance(const json& doc) {
  if (!doc.is_object()) throw Error("instance is not an object");
  if (field(doc, "schemaVersion").get<int>() != kSchemaVersion)
    throw Error("unsupported schema version");
  std::string kind = field(doc, "kind").get<std::string>();
  field(doc, "name");
  const json& p = field(doc, "payload");
  if (kind == "cohesive") {
    auto fam = family_from_json(field(p, "family"));
    approx_for_family(field(p, "f"), fam);
    field(p, "count");
    field(p, "searchBound");
    field(p, "horizon");
  } else if (kind == "triangle") {
    tree_from_json(field(p, "tree"));
    field(p, "searchBound");
  } else if (kind == "superlow") {
    tree_from_json(field(p, "tree"));
    oracle_from_json(field(p, "base"));
    for (auto& f : field(p, "formulas")) vm::parse_program(f.get<std::string>());
    field(p, "formulaStepCap");
    field(p, "annotated");
  } else if (kind == "inversion") {
    oracle_from_json(field(p, "a"));
    oracle_from_json(field(p, "c"));
    field(p, "budgets");
    field(p, "codedRange");
  } else if (kind == "post") {
    vm::parse_program(field(p, "psi").get<std::string>());
    oracle_from_json(field(p, "env"));
    field(p, "stepBudget");
    field(p, "xRange");
    field(p, "quantRange");
    field(p, "jumpCap");
  } else if (kind == "regularize") {
    oracle_from_json(field(p, "c"));
    field(p, "anchors");
  } else if (kind == "spector") {
    for (auto& s : field(p, "sets")) oracle_from_json(s);
    field(p, "q");
    field(p, "colBound");
    field(p, "stageBudget");
    field(p, "extLen");
  } else if (kind == "pipeline") {
    oracle_from_json(field(p, "start"));
    for (auto& ts : field(p, "treeSpecs")) {
      vm::parse_program(field(ts, "treeProgram").get<std::string>());
      field(ts, "depth");
    }
  } else {
    throw Error("unknown instance kind '" + kind + "'");
  }
}

json load_instance(const std::string& path) {
  json doc = read_json(path);
  validate_instance(doc);
  return doc;
}

namespace {

using namespace cohlab::constructions;

json inversion_budgets_to_json(const InversionBudgets& b) {
  return json{{"stages", b.stages},
              {"widthCap", b.sigma_width_cap},
              {"extLenCap", b.ext_len_cap},
              {"timeCap", b.time_cap}};
}

InversionBudgets inversion_budgets_from_json(const json& j) {
  InversionBudgets b;
  b.stages = field(j, "stages").get<u64>();
  b.sigma_width_cap = field(j, "widthCap").get<u64>();
  b.ext_len_cap = field(j, "extLenCap").get<u64>();
  b.time_cap = field(j, "timeCap").get<u64>();
  return b;
}

json inversion_transcript_to_json(const InversionTranscript& tr) {
  json stages = json::array();
  for (const auto& st : tr.stages) {
    json witnesses = json::array();
    for (const auto& w : st.witnesses)
      witnesses.push_back({{"e", w.e}, {"window", w.window}, {"steps", w.steps}});
    stages.push_back({{"stage", st.stage},
                      {"strategyB", st.strategy_b},
                      {"success", st.success},
                      {"widthCapped", st.width_capped},
                      {"foundSigma", st.found_sigma},
                      {"cBlock", st.c_block},
                      {"sigmaAfter", st.sigma_after},
                      {"tauAfter", st.tau_after},
                      {"witnesses", witnesses}});
  }
  return json{{"stages", stages},
              {"bPrefix", tr.b_prefix.text()},
              {"tau", bits_to_text(tr.tau)},
              {"jumpGuess", bits_to_text(tr.jump_guess)},
              {"budgets", inversion_budgets_to_json(tr.budgets)}};
}

InversionTranscript inversion_transcript_from_json(const json& j) {
  InversionTranscript tr;
  for (auto& st : field(j, "stages")) {
    InversionStage s;
    s.stage = field(st, "stage").get<u64>();
    s.strategy_b = field(st, "strategyB").get<bool>();
    s.success = field(st, "success").get<bool>();
    s.width_capped = field(st, "widthCapped").get<bool>();
    s.found_sigma = field(st, "foundSigma").get<std::string>();
    s.c_block = field(st, "cBlock").get<std::string>();
    s.sigma_after = field(st, "sigmaAfter").get<std::string>();
    s.tau_after = field(st, "tauAfter").get<std::string>();
    for (auto& w : field(st, "witnesses")) {
      s.witnesses.push_back(InversionWitness{field(w, "e").get<u64>(),
                                             field(w, "window").get<std::string>(),
                                             field(w, "steps").get<u64>()});
    }
    tr.stages.push_back(std::move(s));
  }
  tr.b_prefix = trees::BinaryString::from_text(field(j, "bPrefix").get<std::string>());
  tr.tau = text_to_bits(field(j, "tau").get<std::string>());
  tr.jump_guess = text_to_bits(field(j, "jumpGuess").get<std::string>());
  tr.budgets = inversion_budgets_from_json(field(j, "budgets"));
  return tr;
}

json forcing_transcript_to_json(const ForcingTranscript& tr) {
  json decisions = json::array();
  for (const auto& d : tr.decisions) {
    decisions.push_back({{"e", d.e},
                         {"forcedDivergent", d.forced_divergent},
                         {"jumpBit", d.jump_bit},
                         {"branch", d.branch.text()},
                         {"nodesAfter", d.nodes_after}});
  }
  json queries = json::array();
  for (const auto& q : tr.queries)
    queries.push_back({{"e", q.e}, {"viable", q.divergence_class_viable}});
  return json{{"decisions", decisions},
              {"queries", queries},
              {"pathPrefix", tr.path_prefix.text()},
              {"jumpTable", bits_to_text(tr.jump_table)},
              {"formulaStepCap", tr.formula_step_cap}};
}

ForcingTranscript forcing_transcript_from_json(const json& j) {
  ForcingTranscript tr;
  for (auto& d : field(j, "decisions")) {
    ForcingDecision fd;
    fd.e = field(d, "e").get<u64>();
    fd.forced_divergent = field(d, "forcedDivergent").get<bool>();
    fd.jump_bit = field(d, "jumpBit").get<u8>();
    fd.branch = trees::BinaryString::from_text(field(d, "branch").get<std::string>());
    fd.nodes_after = field(d, "nodesAfter").get<u64>();
    tr.decisions.push_back(std::move(fd));
  }
  for (auto& q : field(j, "queries"))
    tr.queries.push_back(
        ForcingQuery{field(q, "e").get<u64>(), field(q, "viable").get<bool>()});
  tr.path_prefix =
      trees::BinaryString::from_text(field(j, "pathPrefix").get<std::string>());
  tr.jump_table = text_to_bits(field(j, "jumpTable").get<std::string>());
  tr.formula_step_cap = field(j, "formulaStepCap").get<u64>();
  return tr;
}

json path_result_to_json(const GenericPathResult& r) {
  json decisions = json::array();
  for (const auto& d : r.decisions) {
    decisions.push_back({{"index", d.index},
                         {"argument", d.argument},
                         {"intersected", d.intersected},
                         {"prefixAfter", d.prefix_after.text()},
                         {"nodesAfter", d.nodes_after}});
  }
  return json{{"pathPrefix", r.path_prefix.text()},
              {"decisions", decisions},
              {"formulaStepCap", r.formula_step_cap}};
}

json spector_to_json(const SpectorResult& r) {
  json decided = json::array();
  for (auto& [pos, bit] : r.decided) decided.push_back({pos, bit});
  json blocking = json::array();
  for (const auto& b : r.blocking_log) {
    blocking.push_back({{"stage", b.stage},
                        {"positions", b.positions},
                        {"chosenBits", bits_to_text(b.chosen_bits)},
                        {"convergent", b.convergent},
                        {"searchSpace", b.search_space}});
  }
  return json{{"decided", decided},       {"thresholds", r.thresholds},
              {"blocking", blocking},     {"q", r.q},
              {"colBound", r.col_bound},  {"stageBudget", r.stage_budget},
              {"extLen", r.ext_len}};
}

SpectorResult spector_from_json(const json& j) {
  SpectorResult r;
  for (auto& d : field(j, "decided"))
    r.decided[d.at(0).get<u64>()] = d.at(1).get<u8>();
  r.thresholds = field(j, "thresholds").get<std::vector<u64>>();
  for (auto& b : field(j, "blocking")) {
    SpectorBlocking blk;
    blk.stage = field(b, "stage").get<u64>();
    blk.positions = field(b, "positions").get<std::vector<u64>>();
    blk.chosen_bits = text_to_bits(field(b, "chosenBits").get<std::string>());
    blk.convergent = field(b, "convergent").get<std::vector<u64>>();
    blk.search_space = field(b, "searchSpace").get<u64>();
    r.blocking_log.push_back(std::move(blk));
  }
  r.q = field(j, "q").get<std::vector<u64>>();
  r.col_bound = field(j, "colBound").get<u64>();
  r.stage_budget = field(j, "stageBudget").get<u64>();
  r.ext_len = field(j, "extLen").get<u64>();
  return r;
}

std::vector<PathForcingFormula> path_formulas_from_json(const json& j) {
  std::vector<PathForcingFormula> out;
  for (auto& f : j) {
    out.push_back(PathForcingFormula{
        vm::parse_program(field(f, "program").get<std::string>()),
        field(f, "argument").get<u64>()});
  }
  return out;
}

PipelineTreeSpec tree_spec_from_json(const json& j) {
  PipelineTreeSpec spec;
  spec.tree_program = vm::parse_program(field(j, "treeProgram").get<std::string>());
  spec.depth = field(j, "depth").get<u64>();
  if (j.contains("formulas")) spec.formulas = path_formulas_from_json(j["formulas"]);
  spec.jump_cap = field(j, "jumpCap").get<u64>();
  spec.tree_step_budget = field(j, "treeStepBudget").get<u64>();
  spec.formula_step_cap = field(j, "formulaStepCap").get<u64>();
  spec.inversion = inversion_budgets_from_json(field(j, "inversion"));
  return spec;
}

}  // namespace

json run_instance(const json& instance, const std::string& instance_path) {
  validate_instance(instance);
  std::string kind = instance["kind"].get<std::string>();
  const json& p = instance["payload"];
  json payload;

  if (kind == "cohesive") {
    auto fam = family_from_json(p["family"]);
    auto f = approx_for_family(p["f"], fam);
    auto out = cohesive_from_path(fam, f, p["count"].get<u64>(),
                                  p["searchBound"].get<u64>());
    json log = json::array();
    for (const auto& st : out.per_stage_log)
      log.push_back({{"stage", st.stage},
                     {"chosen", st.chosen},
                     {"pattern", bits_to_text(st.pattern)}});
    payload = json{{"elements", out.elements}, {"perStageLog", log}};
  } else if (kind == "triangle") {
    auto tree = tree_from_json(p["tree"]);
    verify::TriangleBudgets b;
    b.search_bound = p["searchBound"].get<u64>();
    if (p.contains("extraElements")) b.extra_elements = p["extraElements"].get<u64>();
    auto rt = verify::roundtrip_triangle(tree, b);
    if (!rt.verdict.valid)
      throw Error("triangle roundtrip failed: " + rt.verdict.reason);
    json chain = json::array();
    for (const auto& s : rt.chain) chain.push_back(s.text());
    payload = json{{"cohesiveElements", rt.cohesive_elements}, {"chain", chain}};
  } else if (kind == "superlow") {
    auto tree = tree_from_json(p["tree"]);
    auto base = oracle_from_json(p["base"]);
    std::vector<vm::Program> formulas;
    for (auto& f : p["formulas"]) formulas.push_back(vm::parse_program(f.get<std::string>()));
    auto tr = superlow_basis(tree, formulas, base, p["formulaStepCap"].get<u64>());
    payload = forcing_transcript_to_json(tr);
  } else if (kind == "inversion") {
    auto a = oracle_from_json(p["a"]);
    auto c = oracle_from_json(p["c"]);
    auto tr = friedberg_invert(a, c, inversion_budgets_from_json(p["budgets"]));
    payload = inversion_transcript_to_json(tr);
  } else if (kind == "post") {
    auto env = oracle_from_json(p["env"]);
    auto psi = vm::parse_program(p["psi"].get<std::string>());
    auto desc = sets::Sigma2Descriptor::from_program(psi, env, p["stepBudget"].get<u64>(),
                                                     p["xRange"].get<u64>(),
                                                     p["quantRange"].get<u64>());
    auto red = sets::post_reduce(desc, p["jumpCap"].get<u64>());
    std::vector<u8> members, brute;
    for (u64 x = 0; x < desc.x_range(); ++x) {
      members.push_back(red.member(x) ? 1 : 0);
      brute.push_back(desc.brute_force_member(x) ? 1 : 0);
    }
    json keyed = json::array();
    for (auto& [k, b] : red.keyed_jump_view.table_entries())
      keyed.push_back({k, b ? 1 : 0});
    json indices = json::array();
    for (auto& row : red.searcher_indices) {
      json r = json::array();
      for (auto& idx : row) r.push_back(idx.str());
      indices.push_back(r);
    }
    payload = json{{"members", bits_to_text(members)},
                   {"bruteForce", bits_to_text(brute)},
                   {"keyed", keyed},
                   {"searcherIndices", indices}};
  } else if (kind == "regularize") {
    auto c = oracle_from_json(p["c"]);
    std::vector<std::pair<u64, u64>> anchors;
    for (auto& a : p["anchors"]) anchors.emplace_back(a.at(0).get<u64>(), a.at(1).get<u64>());
    auto reg = regularize(c, anchors);
    json comps = json::array();
    for (auto& c3 : reg.components) comps.push_back({c3[0], c3[1], c3[2]});
    payload = json{{"triples", reg.triples}, {"components", comps}};
  } else if (kind == "spector") {
    std::vector<sets::Oracle> sets_coded;
    for (auto& s : p["sets"]) sets_coded.push_back(oracle_from_json(s));
    auto r = spector_code(sets_coded, p["q"].get<std::vector<u64>>(),
                          p["colBound"].get<u64>(), p["stageBudget"].get<u64>(),
                          p["extLen"].get<u64>());
    payload = spector_to_json(r);
  } else if (kind == "pipeline") {
    auto start = oracle_from_json(p["start"]);
    std::vector<PipelineTreeSpec> specs;
    for (auto& ts : p["treeSpecs"]) specs.push_back(tree_spec_from_json(ts));
    auto chain = ideal_pipeline(start, specs);
    json links = json::array();
    for (const auto& link : chain.links) {
      links.push_back({{"path", path_result_to_json(link.path)},
                       {"inversion", inversion_transcript_to_json(link.inversion)},
                       {"nextTopPrefix", bits_to_text(link.next_top_prefix)}});
    }
    // An aborted chain still serializes, with the partial links and the
    // reason; callers decide how to report it.
    payload = json{{"completed", chain.completed},
                   {"abortReason", chain.abort_reason},
                   {"links", links}};
  } else {
    throw Error("unknown instance kind '" + kind + "'");
  }

  return json{{"schemaVersion", kSchemaVersion},
              {"kind", kind},
              {"instanceName", instance["name"]},
              {"instancePath", instance_path},
              {"instanceDigest", digest(instance)},
              {"payload", payload}};
}

verify::Verdict verify_certificate(const json& certificate, const json& instance) {
  using verify::Verdict;
  if (field(certificate, "schemaVersion").get<int>() != kSchemaVersion)
    return Verdict::fail("unsupported certificate schema version");
  if (field(certificate, "instanceDigest").get<std::string>() != digest(instance))
    return Verdict::fail("certificate digest does not match the instance");
  std::string kind = field(certificate, "kind").get<std::string>();
  if (kind != field(instance, "kind").get<std::string>())
    return Verdict::fail("certificate and instance kinds differ");
  const json& p = field(instance, "payload");
  const json& cp = field(certificate, "payload");

  if (kind == "cohesive") {
    auto fam = family_from_json(p["family"]);
    auto f = approx_for_family(p["f"], fam);
    auto elements = field(cp, "elements").get<std::vector<u64>>();
    if (elements.size() != p["count"].get<u64>())
      return Verdict::fail("element count disagrees with the instance");
    auto chk = verify::check_cohesive(elements, fam, p["horizon"].get<u64>());
    if (!chk.verdict.valid) return chk.verdict;
    return verify::check_least_rule(elements, fam, f);
  }
  if (kind == "triangle") {
    auto tree = tree_from_json(p["tree"]);
    verify::TriangleBudgets b;
    b.search_bound = p["searchBound"].get<u64>();
    if (p.contains("extraElements")) b.extra_elements = p["extraElements"].get<u64>();
    auto rt = verify::roundtrip_triangle(tree, b);
    if (!rt.verdict.valid) return rt.verdict;
    json chain = json::array();
    for (const auto& s : rt.chain) chain.push_back(s.text());
    if (field(cp, "chain") != chain)
      return Verdict::fail("chain disagrees with the recomputed roundtrip");
    if (field(cp, "cohesiveElements").get<std::vector<u64>>() != rt.cohesive_elements)
      return Verdict::fail("cohesive elements disagree with the recomputed roundtrip");
    // Disjointness of the two classification sides, brute-forced.
    auto [a0, a1] = constructions::sigma2_from_tree(tree);
    for (u64 x = 0; x < a0.x_range(); ++x)
      if (a0.brute_force_member(x) && a1.brute_force_member(x))
        return Verdict::fail("classification sides intersect at " + std::to_string(x));
    return Verdict::ok();
  }
  if (kind == "superlow") {
    auto tree = tree_from_json(p["tree"]);
    auto base = oracle_from_json(p["base"]);
    std::vector<vm::Program> formulas;
    for (auto& f : p["formulas"]) formulas.push_back(vm::parse_program(f.get<std::string>()));
    auto tr = forcing_transcript_from_json(cp);
    auto chk = verify::check_superlow(tr, tree, formulas, base,
                                      p["annotated"].get<std::vector<u64>>());
    return chk.verdict;
  }
  if (kind == "inversion") {
    auto a = oracle_from_json(p["a"]);
    auto c = oracle_from_json(p["c"]);
    auto tr = inversion_transcript_from_json(cp);
    auto chk = verify::check_inversion(tr, a);
    if (!chk.verdict.valid) return chk.verdict;
    u64 range = p["codedRange"].get<u64>();
    if (chk.decoded_c.size() < range)
      return Verdict::fail("decoded fragment shorter than the coded range");
    for (u64 k = 0; k < range; ++k)
      if ((chk.decoded_c[k] != 0) != c.contains(k))
        return Verdict::fail("decoded fragment disagrees with C at " + std::to_string(k));
    return Verdict::ok();
  }
  if (kind == "post") {
    auto env = oracle_from_json(p["env"]);
    auto psi = vm::parse_program(p["psi"].get<std::string>());
    auto desc = sets::Sigma2Descriptor::from_program(psi, env, p["stepBudget"].get<u64>(),
                                                     p["xRange"].get<u64>(),
                                                     p["quantRange"].get<u64>());
    auto members = text_to_bits(field(cp, "members").get<std::string>());
    auto brute_claimed = text_to_bits(field(cp, "bruteForce").get<std::string>());
    if (members.size() != desc.x_range() || brute_claimed.size() != desc.x_range())
      return Verdict::fail("bit rows do not match the declared range");
    for (u64 x = 0; x < desc.x_range(); ++x) {
      bool brute = desc.brute_force_member(x);
      if ((brute_claimed[x] != 0) != brute)
        return Verdict::fail("brute-force row wrong at " + std::to_string(x));
      if ((members[x] != 0) != brute)
        return Verdict::fail("reduced evaluation disagrees with brute force at " +
                             std::to_string(x));
    }
    // Re-decide every searcher index against the jump of the environment.
    u64 jump_cap = p["jumpCap"].get<u64>();
    const json& keyed = field(cp, "keyed");
    std::map<u64, bool> keyed_bits;
    for (auto& kb : keyed) keyed_bits[kb.at(0).get<u64>()] = kb.at(1).get<int>() != 0;
    const json& indices = field(cp, "searcherIndices");
    if (indices.size() != desc.x_range())
      return Verdict::fail("searcher index table has the wrong shape");
    for (u64 x = 0; x < desc.x_range(); ++x) {
      if (indices[x].size() != desc.quant_range())
        return Verdict::fail("searcher index table has the wrong shape");
      for (u64 y1 = 0; y1 < desc.quant_range(); ++y1) {
        Nat idx(indices[x][y1].get<std::string>());
        auto d = sets::decide_halting(idx, env, jump_cap);
        if (d.status == sets::HaltStatus::Unknown)
          return Verdict::fail("searcher halting undecided at cap");
        bool bit = d.status == sets::HaltStatus::Halts;
        auto it = keyed_bits.find(pair_u64(x, y1));
        if (it == keyed_bits.end() || it->second != bit)
          return Verdict::fail("keyed jump view wrong at (" + std::to_string(x) + ", " +
                               std::to_string(y1) + ")");
      }
    }
    return Verdict::ok();
  }
  if (kind == "regularize") {
    auto c = oracle_from_json(p["c"]);
    auto triples = field(cp, "triples").get<std::vector<u64>>();
    constructions::RegularizedSet reg;
    reg.triples = triples;
    for (size_t i = 1; i < triples.size(); ++i)
      if (triples[i] <= triples[i - 1])
        return Verdict::fail("triple codes not strictly increasing");
    for (auto& a : p["anchors"]) {
      u64 point = a.at(0).get<u64>();
      auto decoded = constructions::regular_decode(reg, point);
      if (!decoded) return Verdict::fail("no triple codes anchor " + std::to_string(point));
      if (*decoded != c.contains(point))
        return Verdict::fail("decode disagrees with C at " + std::to_string(point));
    }
    return Verdict::ok();
  }
  if (kind == "spector") {
    std::vector<sets::Oracle> sets_coded;
    for (auto& s : p["sets"]) sets_coded.push_back(oracle_from_json(s));
    auto r = spector_from_json(cp);
    if (r.q != p["q"].get<std::vector<u64>>() ||
        r.col_bound != p["colBound"].get<u64>() ||
        r.stage_budget != p["stageBudget"].get<u64>() ||
        r.ext_len != p["extLen"].get<u64>())
      return Verdict::fail("certificate parameters disagree with the instance");
    return verify::check_spector(r, sets_coded).verdict;
  }
  if (kind == "pipeline") {
    auto start = oracle_from_json(p["start"]);
    if (!field(cp, "completed").get<bool>()) return Verdict::fail("chain is incomplete");
    const json& links = field(cp, "links");
    if (links.size() != p["treeSpecs"].size())
      return Verdict::fail("link count disagrees with the spec list");
    sets::Oracle top = start;
    for (size_t i = 0; i < links.size(); ++i) {
      auto spec = tree_spec_from_json(p["treeSpecs"][i]);
      const json& link = links[i];
      // Path: prefix chain inside the tree seen through the top's capped jump.
      sets::Oracle jump_view = sets::Oracle::capped_jump(top, spec.jump_cap);
      auto tree = trees::TruncatedTree::from_program(spec.tree_program, jump_view,
                                                     spec.tree_step_budget, spec.depth);
      auto snap = tree.materialize();
      auto prefix = trees::BinaryString::from_text(
          field(field(link, "path"), "pathPrefix").get<std::string>());
      std::vector<trees::BinaryString> chain;
      for (size_t l = 0; l <= prefix.length(); ++l) chain.push_back(prefix.prefix(l));
      auto pv = verify::check_path(chain, snap);
      if (!pv.valid) return Verdict::fail("link " + std::to_string(i) + ": " + pv.reason);

      auto tr = inversion_transcript_from_json(field(link, "inversion"));
      auto chk = verify::check_inversion(tr, top);
      if (!chk.verdict.valid)
        return Verdict::fail("link " + std::to_string(i) + ": " + chk.verdict.reason);
      if (chk.decoded_c.size() < prefix.length())
        return Verdict::fail("link " + std::to_string(i) + ": fragment too short");
      for (size_t k = 0; k < prefix.length(); ++k)
        if (chk.decoded_c[k] != prefix.bit(k))
          return Verdict::fail("link " + std::to_string(i) +
                               ": fragment disagrees with the path");
      auto top_bits = text_to_bits(field(link, "nextTopPrefix").get<std::string>());
      std::map<u64, bool> t;
      for (size_t k = 0; k < top_bits.size(); ++k) t[k] = top_bits[k] != 0;
      top = sets::Oracle::join(top, sets::Oracle::table(std::move(t), false));
    }
    return Verdict::ok();
  }
  return Verdict::fail("unknown certificate kind '" + kind + "'");
}

std::string trace_certificate(const json& certificate) {
  std::string kind = field(certificate, "kind").get<std::string>();
  const json& cp = field(certificate, "payload");
  std::ostringstream os;
  if (kind == "inversion") {
    for (auto& st : field(cp, "stages")) {
      u64 stage = field(st, "stage").get<u64>();
      bool b = field(st, "strategyB").get<bool>();
      os << "stage " << stage << "  "
         << (b ? "Strategy B" : "Strategy (A+B)'") << ": ";
      if (b) {
        if (field(st, "success").get<bool>())
          os << "committed " << field(st, "foundSigma").get<std::string>()
             << " and coded block " << field(st, "cBlock").get<std::string>();
        else if (field(st, "widthCapped").get<bool>())
          os << "no commitment (width cap bound the search)";
        else
          os << "no commitment";
      } else {
        os << "claim string -> " << field(st, "tauAfter").get<std::string>();
      }
      os << "\n";
    }
  } else if (kind == "superlow") {
    for (auto& d : field(cp, "decisions")) {
      os << "e=" << field(d, "e").get<u64>() << "  "
         << (field(d, "forcedDivergent").get<bool>() ? "kept divergence class"
                                                     : "divergence class not viable")
         << " (jump bit " << static_cast<int>(field(d, "jumpBit").get<u8>())
         << "), prefix -> " << field(d, "branch").get<std::string>() << "\n";
    }
  } else if (kind == "cohesive") {
    for (auto& st : field(cp, "perStageLog")) {
      os << "stage " << field(st, "stage").get<u64>() << "  chose "
         << field(st, "chosen").get<u64>() << " under pattern "
         << field(st, "pattern").get<std::string>() << "\n";
    }
  } else if (kind == "spector") {
    for (auto& b : field(cp, "blocking")) {
      os << "stage " << field(b, "stage").get<u64>() << "  blocking bits "
         << field(b, "chosenBits").get<std::string>() << ", convergent below the row bound: "
         << field(b, "convergent").get<std::vector<u64>>().size() << "\n";
    }
  } else if (kind == "pipeline") {
    const json& links = field(cp, "links");
    for (size_t i = 0; i < links.size(); ++i) {
      os << "iteration " << i << "  path "
         << field(field(links[i], "path"), "pathPrefix").get<std::string>()
         << ", coded into the next top\n";
    }
  } else {
    throw Error("certificate kind '" + kind + "' has no transcript");
  }
  return os.str();
}

}  // namespace cohlab::io
