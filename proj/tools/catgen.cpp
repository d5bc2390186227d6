// Writes the bundled instance catalog (and the tampered certificates used as
// negative controls) into a directory. Rerunning reproduces the files byte
// for byte.

#include <filesystem>
#include <functional>
#include <iostream>

#include "cohlab/catalog.hpp"
#include "cohlab/io/documents.hpp"
#include "cohlab/pairing.hpp"

namespace fs = std::filesystem;
using cohlab::io::json;

namespace {

void tamper_and_write(const fs::path& dir, const std::string& name,
                      const std::function<void(json&)>& tamper) {
  fs::path instance_path = dir / (name + ".json");
  json instance = cohlab::io::load_instance(instance_path.string());
  json cert = cohlab::io::run_instance(instance, name + ".json");
  tamper(cert["payload"]);
  cohlab::io::write_json((dir / (name + ".tampered.cert.json")).string(), cert);
  std::cout << "tampered certificate: " << name << "\n";
}

char flip(char c) { return c == '0' ? '1' : '0'; }

}  // namespace

int main(int argc, char** argv) {
  fs::path dir = argc > 1 ? argv[1] : "catalog";
  fs::create_directories(dir);

  for (const auto& entry : cohlab::catalog::instances()) {
    cohlab::io::write_json((dir / (entry.name + ".json")).string(), entry.instance);
  }
  std::cout << "instances written to " << dir.string() << "\n";

  tamper_and_write(dir, "cohesive_trivial_full", [](json& p) {
    auto elements = p["elements"].get<std::vector<cohlab::u64>>();
    elements[1] += 1;
    p["elements"] = elements;
  });
  tamper_and_write(dir, "triangle_spine_000000", [](json& p) {
    std::string s = p["chain"][3].get<std::string>();
    s.back() = flip(s.back());
    p["chain"][3] = s;
  });
  tamper_and_write(dir, "superlow_full_path_bits", [](json& p) {
    std::string t = p["jumpTable"].get<std::string>();
    t[0] = flip(t[0]);
    p["jumpTable"] = t;
  });
  tamper_and_write(dir, "inversion_empty_evens", [](json& p) {
    std::string b = p["bPrefix"].get<std::string>();
    b.back() = flip(b.back());
    p["bPrefix"] = b;
  });
  tamper_and_write(dir, "post_y1_ge_x", [](json& p) {
    std::string m = p["members"].get<std::string>();
    m[0] = flip(m[0]);
    p["members"] = m;
  });
  tamper_and_write(dir, "regularize_random_0", [](json& p) {
    auto triples = p["triples"].get<std::vector<cohlab::u64>>();
    triples[0] = triples[1];
    p["triples"] = triples;
  });
  tamper_and_write(dir, "spector_evens_empty", [](json& p) {
    // Flip a decided bit in the first coded row, above any threshold.
    for (auto& d : p["decided"]) {
      auto [x, y] = cohlab::unpair_u64(d.at(0).get<cohlab::u64>());
      if (y == 0 && x >= 32) {
        d[1] = d.at(1).get<int>() == 0 ? 1 : 0;
        break;
      }
    }
  });
  tamper_and_write(dir, "pipeline_two_trees", [](json& p) {
    std::string s = p["links"][0]["path"]["pathPrefix"].get<std::string>();
    s[0] = flip(s[0]);
    p["links"][0]["path"]["pathPrefix"] = s;
  });
  return 0;
}
