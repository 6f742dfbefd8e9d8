#include "report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "voa/serialize.hpp"

namespace voa::cli {

using nlohmann::json;

Record Record::exact_check(std::string name, std::string identity, bool pass) {
  Record r;
  r.name = std::move(name);
  r.identity = std::move(identity);
  r.pass = pass;
  r.exact = true;
  return r;
}

Record Record::numeric_check(std::string name, std::string identity, double residual, double tolerance,
                             bool pass_extra) {
  Record r;
  r.name = std::move(name);
  r.identity = std::move(identity);
  r.exact = false;
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = std::isfinite(residual) && residual <= tolerance && pass_extra;
  return r;
}

std::vector<Record> run_tasks(const std::vector<Task>& tasks, int threads, bool timings) {
  std::vector<std::vector<Record>> out(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < tasks.size(); i = next++) {
      auto t0 = std::chrono::steady_clock::now();
      out[i] = tasks[i]();
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      if (timings)
        for (auto& r : out[i]) r.runtime_ms = ms / double(std::max<size_t>(1, out[i].size()));
    }
  };
  const int n = std::max(1, std::min<int>(threads, int(tasks.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<Record> all;
  for (auto& v : out)
    for (auto& r : v) all.push_back(std::move(r));
  std::stable_sort(all.begin(), all.end(), [](const Record& a, const Record& b) { return a.name < b.name; });
  return all;
}

json report_json(const VOAModel& model, const std::string& suite, std::uint64_t seed,
                 const std::vector<Record>& records, bool timings) {
  json doc;
  doc["tool_version"] = kToolVersion;
  doc["model_fingerprint"] = model_fingerprint(model);
  doc["seed"] = seed;
  doc["suite"] = suite;
  json recs = json::array();
  int passed = 0;
  for (const auto& r : records) {
    json j;
    j["name"] = r.name;
    j["identity"] = r.identity;
    j["window"] = r.window;
    j["verdict"] = r.pass ? "pass" : "fail";
    if (r.exact) {
      j["exact"] = true;
    } else {
      j["residual"] = r.residual;
      j["tolerance"] = r.tolerance;
    }
    if (!r.details.empty()) j["details"] = r.details;
    if (timings) j["runtime_ms"] = r.runtime_ms;
    recs.push_back(j);
    passed += r.pass;
  }
  doc["records"] = recs;
  doc["summary"] = {{"passed", passed}, {"failed", int(records.size()) - passed}};
  return doc;
}

bool all_pass(const std::vector<Record>& records) {
  return std::all_of(records.begin(), records.end(), [](const Record& r) { return r.pass; });
}

GradedVector resolve_field(const VOAModel& model, const std::string& name) {
  if (name == "nu" || name == "conformal") return model.conformal_vector();
  for (const auto& g : model.generators())
    if (g.name == name) return g.vector;
  for (int l = 0; l <= model.cutoff(); ++l)
    for (int i = 0; i < model.dim(l); ++i)
      if (model.labels(l)[i] == name) return model.basis_vector(l, i);
  throw InputError("unknown field '" + name + "'");
}

}  // namespace voa::cli
