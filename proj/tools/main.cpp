// Command-line front end: run constructions on instance documents, verify
// certificates, execute the pipeline, and print stage narratives.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "cohlab/catalog.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/io/documents.hpp"

namespace fs = std::filesystem;
using cohlab::io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConstruction = 2;
constexpr int kExitInvalid = 3;

struct Overrides {
  std::optional<cohlab::u64> budget_steps;
  std::optional<cohlab::u64> depth;
  std::optional<cohlab::u64> horizon;
  std::optional<cohlab::u64> witness_bound;
  std::optional<cohlab::u64> stages;
};

void apply_overrides(json& instance, const Overrides& ov) {
  json& p = instance["payload"];
  auto set_if_present = [&](json& obj, const char* key, cohlab::u64 v) {
    if (obj.contains(key)) obj[key] = v;
  };
  if (ov.budget_steps) {
    for (const char* key : {"stepBudget", "formulaStepCap", "stageBudget", "jumpCap"})
      set_if_present(p, key, *ov.budget_steps);
  }
  if (ov.horizon) set_if_present(p, "horizon", *ov.horizon);
  if (ov.witness_bound) {
    set_if_present(p, "witnessBound", *ov.witness_bound);
    if (p.contains("f") && p["f"].is_object())
      set_if_present(p["f"], "witnessBound", *ov.witness_bound);
  }
  if (ov.depth && p.contains("tree") && p["tree"].contains("kind") &&
      p["tree"]["kind"] == "program")
    p["tree"]["depth"] = *ov.depth;
  if (ov.stages && p.contains("budgets")) p["budgets"]["stages"] = *ov.stages;
}

std::string default_cert_path(const std::string& instance_path) {
  fs::path p(instance_path);
  p.replace_extension(".cert.json");
  return p.string();
}

int cmd_run(const std::string& kind, const std::string& instance_path,
            const std::string& out, const Overrides& ov) {
  json instance;
  try {
    instance = cohlab::io::load_instance(instance_path);
    if (instance["kind"].get<std::string>() != kind) {
      std::cerr << "instance kind is '" << instance["kind"].get<std::string>()
                << "', not '" << kind << "'\n";
      return kExitUsage;
    }
    apply_overrides(instance, ov);
  } catch (const std::exception& e) {
    std::cerr << "instance error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    json cert = cohlab::io::run_instance(instance, instance_path);
    std::string path = out.empty() ? default_cert_path(instance_path) : out;
    cohlab::io::write_json(path, cert);
    if (kind == "pipeline" && !cert["payload"]["completed"].get<bool>()) {
      std::cerr << "pipeline aborted: "
                << cert["payload"]["abortReason"].get<std::string>()
                << " (partial chain written to " << path << ")\n";
      return kExitConstruction;
    }
    std::cout << "certificate written to " << path << "\n";
    return kExitOk;
  } catch (const cohlab::Error& e) {
    std::cerr << "construction failed (" << kind << "): " << e.what() << "\n";
    return kExitConstruction;
  }
}

int cmd_verify(const std::string& cert_path, const std::string& out) {
  json cert, instance;
  try {
    cert = cohlab::io::read_json(cert_path);
    fs::path stored(cert.at("instancePath").get<std::string>());
    // The instance usually sits beside the certificate; fall back through
    // the stored path as written and its basename.
    fs::path cert_dir = fs::path(cert_path).parent_path();
    std::vector<fs::path> candidates;
    if (stored.is_absolute()) {
      candidates = {stored};
    } else {
      candidates = {cert_dir / stored, stored, cert_dir / stored.filename()};
    }
    fs::path found;
    for (const auto& c : candidates) {
      if (fs::exists(c)) {
        found = c;
        break;
      }
    }
    if (found.empty()) throw cohlab::Error("instance " + stored.string() + " not found");
    instance = cohlab::io::load_instance(found.string());
  } catch (const std::exception& e) {
    std::cerr << "cannot load certificate or instance: " << e.what() << "\n";
    return kExitUsage;
  }
  cohlab::verify::Verdict v;
  try {
    v = cohlab::io::verify_certificate(cert, instance);
  } catch (const cohlab::Error& e) {
    v = cohlab::verify::Verdict::fail(std::string("checker error: ") + e.what());
  }
  json verdict{{"schemaVersion", cohlab::io::kSchemaVersion},
               {"kind", cert.value("kind", "")},
               {"certificate", cert_path},
               {"valid", v.valid},
               {"reason", v.reason}};
  std::string path = out.empty() ? cert_path + ".verdict.json" : out;
  cohlab::io::write_json(path, verdict);
  if (v.valid) {
    std::cout << "valid\n";
    return kExitOk;
  }
  std::cout << "invalid: " << v.reason << "\n";
  return kExitInvalid;
}

int cmd_pipeline(const std::string& instance_path, const std::string& out) {
  json instance;
  try {
    instance = cohlab::io::load_instance(instance_path);
    if (instance["kind"] != "pipeline") {
      std::cerr << "not a pipeline instance\n";
      return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "instance error: " << e.what() << "\n";
    return kExitUsage;
  }
  fs::path dir = out.empty() ? fs::path(instance_path).parent_path() /
                                   (instance["name"].get<std::string>() + "_chain")
                             : fs::path(out);
  try {
    json cert = cohlab::io::run_instance(instance, instance_path);
    fs::create_directories(dir);
    cohlab::io::write_json((dir / "summary.cert.json").string(), cert);
    bool completed = cert["payload"]["completed"].get<bool>();
    const json& links = cert["payload"]["links"];
    json top = instance["payload"]["start"];
    for (size_t i = 0; i < links.size(); ++i) {
      fs::path sub = dir / ("iteration_" + std::to_string(i));
      fs::create_directories(sub);
      cohlab::io::write_json((sub / "oracle.json").string(), top);
      cohlab::io::write_json((sub / "link.json").string(), links[i]);
      json entries = json::array();
      const std::string bits = links[i]["nextTopPrefix"].get<std::string>();
      for (size_t k = 0; k < bits.size(); ++k)
        entries.push_back({k, bits[k] == '1' ? 1 : 0});
      top = json{{"kind", "join"},
                 {"left", top},
                 {"right", json{{"kind", "table"}, {"entries", entries}, {"default", 0}}}};
    }
    if (!completed) {
      std::cerr << "pipeline aborted: "
                << cert["payload"]["abortReason"].get<std::string>()
                << " (partial chain written to " << dir.string() << ")\n";
      return kExitConstruction;
    }
    std::cout << "chain written to " << dir.string() << "\n";
    return kExitOk;
  } catch (const cohlab::Error& e) {
    std::cerr << "pipeline failed: " << e.what() << "\n";
    return kExitConstruction;
  }
}

int cmd_trace(const std::string& cert_path) {
  try {
    json cert = cohlab::io::read_json(cert_path);
    std::cout << cohlab::io::trace_certificate(cert);
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "trace error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_catalog_list() {
  for (const auto& entry : cohlab::catalog::instances()) {
    std::cout << entry.name << "  (" << entry.instance["kind"].get<std::string>()
              << ")\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for effective constructions over the naturals"};
  app.require_subcommand(1);

  Overrides ov;
  std::string kind, instance_path, cert_path, out;

  auto* run = app.add_subcommand("run", "run a construction on an instance document");
  run->add_option("kind", kind, "instance kind")->required();
  run->add_option("instance", instance_path, "instance JSON path")->required();
  run->add_option("--out", out, "certificate output path");
  run->add_option("--budget-steps", ov.budget_steps, "override step budgets");
  run->add_option("--depth", ov.depth, "override tree depth (program trees)");
  run->add_option("--horizon", ov.horizon, "override the horizon");
  run->add_option("--witness-bound", ov.witness_bound, "override the witness bound");
  run->add_option("--stages", ov.stages, "override the stage budget");

  auto* verify = app.add_subcommand("verify", "re-validate a certificate");
  verify->add_option("certificate", cert_path, "certificate JSON path")->required();
  verify->add_option("--out", out, "verdict output path");

  auto* pipeline = app.add_subcommand("pipeline", "run an iteration chain");
  pipeline->add_option("instance", instance_path, "pipeline instance path")->required();
  pipeline->add_option("--out", out, "chain output directory");

  auto* trace = app.add_subcommand("trace", "print a certificate's stage narrative");
  trace->add_option("certificate", cert_path, "certificate JSON path")->required();

  app.add_subcommand("catalog-list", "list the bundled instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (run->parsed()) return cmd_run(kind, instance_path, out, ov);
  if (verify->parsed()) return cmd_verify(cert_path, out);
  if (pipeline->parsed()) return cmd_pipeline(instance_path, out);
  if (trace->parsed()) return cmd_trace(cert_path);
  return cmd_catalog_list();
}
