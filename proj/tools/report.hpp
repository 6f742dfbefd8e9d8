#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "voa/model.hpp"
#include "voa/smeared.hpp"

namespace voa::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct Record {
  std::string name;
  std::string identity;
  nlohmann::json window = nlohmann::json::object();
  bool pass = false;
  bool exact = true;
  double residual = 0;
  double tolerance = 0;
  nlohmann::json details = nlohmann::json::object();
  double runtime_ms = 0;

  static Record exact_check(std::string name, std::string identity, bool pass);
  static Record numeric_check(std::string name, std::string identity, double residual, double tolerance,
                              bool pass_extra = true);
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  bool timings = false;
  int window = 256;
  int n_max = 200;
  int max_level = -1;   // axioms sweep, -1 for the whole window
  std::optional<std::string> field;
};

using Task = std::function<std::vector<Record>()>;

// runs tasks on `threads` workers; output sorted by record name
std::vector<Record> run_tasks(const std::vector<Task>& tasks, int threads, bool timings);

nlohmann::json report_json(const VOAModel& model, const std::string& suite, std::uint64_t seed,
                           const std::vector<Record>& records, bool timings);

bool all_pass(const std::vector<Record>& records);

std::vector<Task> axioms_suite(const VOAModel& model, const SuiteOptions& opt);
std::vector<Task> unitarity_suite(const VOAModel& model, const SuiteOptions& opt);
std::vector<Task> subalgebra_suite(const VOAModel& model, const SuiteOptions& opt,
                                   const std::vector<GradedVector>& generators);
std::vector<Task> smeared_suite(const VOAModel& model, const SuiteOptions& opt);

// generator name, "nu", or a basis label
GradedVector resolve_field(const VOAModel& model, const std::string& name);
// --field if given, else the first quasi-primary generator
GradedVector default_field(const VOAModel& model, const SuiteOptions& opt);
// vacuum plus the first basis vector of every nonempty level
GradedVector wightman_probe(const VOAModel& model);

Record smear_adjoint_record(const VOAModel& m, const GradedVector& a, const TestFunction& f);
Record smear_rotation_record(const VOAModel& m, const GradedVector& a, const TestFunction& f, double t);
Record smear_energy_record(const VOAModel& m, const GradedVector& a, const TestFunction& f, std::uint64_t seed);
// also reruns at twice the window and requires r(2W) <= 2 r(W)
Record smear_wightman_record(const VOAModel& m, const GradedVector& a, const TestFunction& f, const GradedVector& b,
                             const TestFunction& g, const GradedVector& c);
Record smear_symplectic_record(int d, double norm_a, const std::vector<std::pair<TestFunction, TestFunction>>& pairs);
// residual at n_max, improvement against n_max / 2 must be >= 4
Record smear_bw_record(int d, const TestFunction& f, int n_max);

}  // namespace voa::cli
