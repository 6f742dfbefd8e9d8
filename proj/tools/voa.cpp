#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <numbers>

#include "report.hpp"
#include "voa/models.hpp"
#include "voa/serialize.hpp"
#include "voa/smeared.hpp"
#include "voa/subalgebra.hpp"
#include "voa/unitarity.hpp"

using namespace voa;
using namespace voa::cli;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0, kExitFail = 1, kExitInput = 2;

struct Globals {
  std::uint64_t seed = 0;
  int threads = 1;
  bool timings = false;
  std::string out;
};

void emit(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-")
    std::cout << bytes;
  else
    write_file(path, bytes);
}

// "0", "0.3", "pi", "2pi", "3*pi/4", "pi/2"
double parse_angle(std::string t) {
  double den = 1;
  if (auto slash = t.find('/'); slash != std::string::npos) {
    den = std::stod(t.substr(slash + 1));
    t = t.substr(0, slash);
  }
  double v;
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
    std::string k = t.substr(0, t.size() - 2);
    if (!k.empty() && k.back() == '*') k.pop_back();
    v = (k.empty() ? 1.0 : k == "-" ? -1.0 : std::stod(k)) * std::numbers::pi;
  } else {
    v = std::stod(t);
  }
  return v / den;
}

TestFunction parse_function(const std::string& spec, int window) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw InputError("function spec must look like kind:args");
  std::string kind = spec.substr(0, colon), args = spec.substr(colon + 1);
  try {
    if (kind == "bump") {
      auto comma = args.find(',');
      if (comma == std::string::npos) throw InputError("bump needs two endpoints");
      return TestFunction::bump(parse_angle(args.substr(0, comma)), parse_angle(args.substr(comma + 1)), window);
    }
    if (kind == "mode") return TestFunction::single_mode(std::stoi(args), window);
    if (kind == "cos") return TestFunction::cosine(std::stoi(args), window);
    if (kind == "sin") return TestFunction::sine(std::stoi(args), window);
  } catch (const std::logic_error&) {
    throw InputError("bad function arguments '" + args + "'");
  }
  throw InputError("unknown function kind '" + kind + "'");
}

GradedVector parse_vector_item(const VOAModel& m, const json& item) {
  if (item.is_string()) return resolve_field(m, item.get<std::string>());
  return vector_from_json(item, m.cutoff());
}

std::vector<GradedVector> read_generators(const VOAModel& m, const std::string& path) {
  if (path.empty()) return {};
  json doc = json::parse(read_file(path));
  const json& arr = doc.is_object() ? doc.at("generators") : doc;
  std::vector<GradedVector> out;
  for (const auto& it : arr) out.push_back(parse_vector_item(m, it));
  return out;
}

LevelwiseMap parse_group_element(const VOAModel& m, const json& e) {
  if (e.contains("zero_mode_exp")) {
    const json& z = e["zero_mode_exp"];
    Scalar t = z.contains("t") ? scalar_from_json(z["t"]) : Scalar(1);
    return zero_mode_exponential(m, parse_vector_item(m, z.at("field")), t);
  }
  if (e.contains("generator_images")) {
    std::vector<GradedVector> imgs;
    for (const auto& it : e["generator_images"]) imgs.push_back(parse_vector_item(m, it));
    return automorphism_from_generators(m, imgs);
  }
  if (e.contains("matrices")) {
    LevelwiseMap g;
    for (const auto& lev : e["matrices"]) {
      std::vector<Vec> rows;
      for (const auto& r : lev) {
        Vec row;
        for (const auto& x : r) row.push_back(scalar_from_json(x));
        rows.push_back(row);
      }
      size_t n = rows.empty() ? 0 : rows[0].size();
      g.levels.push_back(Matrix::from_rows(rows, n));
    }
    if (int(g.levels.size()) != m.cutoff() + 1) throw InputError("one matrix per level required");
    for (int l = 0; l <= m.cutoff(); ++l)
      if (int(g.levels[l].rows()) != m.dim(l) || int(g.levels[l].cols()) != m.dim(l))
        throw InputError("matrix size does not match level " + std::to_string(l));
    return g;
  }
  if (e.contains("product")) {
    const json& fs = e["product"];
    if (!fs.is_array() || fs.empty()) throw InputError("product needs a nonempty list");
    LevelwiseMap g = parse_group_element(m, fs[0]);
    for (size_t i = 1; i < fs.size(); ++i) g = compose(g, parse_group_element(m, fs[i]));
    return g;
  }
  throw InputError("unknown group element kind");
}

std::vector<LevelwiseMap> read_group(const VOAModel& m, const std::string& path) {
  json doc = json::parse(read_file(path));
  const json& arr = doc.is_object() ? doc.at("group") : doc;
  std::vector<LevelwiseMap> out;
  for (const auto& e : arr) out.push_back(parse_group_element(m, e));
  return out;
}

json subalgebra_json(const Subalgebra& w) {
  json basis = json::array();
  for (const auto& lev : w.basis) {
    json rows = json::array();
    for (const auto& r : lev) {
      json row = json::array();
      for (const auto& x : r) row.push_back(scalar_json(x));
      rows.push_back(row);
    }
    basis.push_back(rows);
  }
  json doc = {{"parent_fingerprint", model_fingerprint(*w.parent)},
              {"level_dims", w.level_dims()},
              {"window_limited", w.window_limited},
              {"skipped_products", w.skipped},
              {"basis", basis}};
  if (!w.window_note.empty()) doc["window_note"] = w.window_note;
  return doc;
}

json verify_json(const SubalgebraReport& r) {
  json j = {{"ok", r.ok()},
            {"closed", r.closed},
            {"theta_invariant", r.theta_invariant},
            {"l1_invariant", r.l1_invariant},
            {"lminus1_invariant", r.lminus1_invariant},
            {"projection_idempotent", r.projection_idempotent},
            {"projection_selfadjoint", r.projection_selfadjoint},
            {"commutes_with_virasoro", r.commutes_with_virasoro},
            {"commutes_with_theta", r.commutes_with_theta},
            {"compresses_fields", r.compresses_fields},
            {"checks", r.checks}};
  if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
  return j;
}

int finish_report(const VOAModel& m, const std::string& suite, const Globals& g, const std::vector<Record>& recs) {
  emit(g.out, canonical_dump(report_json(m, suite, g.seed, recs, g.timings)));
  int failed = 0;
  for (const auto& r : recs)
    if (!r.pass) {
      ++failed;
      std::cerr << "FAIL " << r.name << "\n";
    }
  std::cerr << recs.size() - failed << " passed, " << failed << " failed\n";
  return failed ? kExitFail : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated vertex operator algebras: build models and verify identities"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed for random sampling")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for independent checks")->check(CLI::PositiveNumber);
  app.add_option("--out,--report", g.out, "output file (stdout when omitted)");
  app.add_flag("--timings", g.timings, "add runtime_ms to report records");

  // build
  auto* build = app.add_subcommand("build", "construct a truncated model");
  build->fallthrough();
  std::string family, c_text = "1/2", left_path, right_path;
  int k = 1, two_n = 2, cutoff = 6;
  build->add_option("family", family, "virasoro|heisenberg|sl2|lattice|tensor")->required();
  build->add_option("--c", c_text, "central charge (p/q)");
  build->add_option("--k", k, "sl2 level");
  build->add_option("--two-n", two_n, "lattice norm (a|a)");
  build->add_option("--cutoff", cutoff, "top level kept");
  build->add_option("--left", left_path, "tensor: left model file");
  build->add_option("--right", right_path, "tensor: right model file");

  // check
  auto* check = app.add_subcommand("check", "run a verification suite");
  check->fallthrough();
  std::string suite, model_path, gens_path;
  std::optional<std::string> field;
  SuiteOptions opt;
  check->add_option("suite", suite, "axioms|unitarity|subalgebra|smeared")->required();
  check->add_option("--model", model_path, "model file")->required();
  check->add_option("--generators", gens_path, "subalgebra generators file");
  check->add_option("--window", opt.window, "Fourier window")->capture_default_str();
  check->add_option("--nmax", opt.n_max, "descendant truncation for the reflection check")->capture_default_str();
  check->add_option("--max-level", opt.max_level, "top level of the Borcherds sweep");
  check->add_option("--field", field, "field for the smeared suite");

  // character
  auto* chr = app.add_subcommand("character", "graded dimension as a q-series");
  chr->fallthrough();
  int max_power = -1;
  bool as_json = false;
  chr->add_option("--model", model_path, "model file")->required();
  chr->add_option("--max", max_power, "highest power printed");
  chr->add_flag("--json", as_json, "JSON output");

  // subalgebra
  auto* sub = app.add_subcommand("subalgebra", "closure, coset or fixed points");
  sub->fallthrough();
  std::string op = "close";
  sub->add_option("--model", model_path, "model file")->required();
  sub->add_option("--generators", gens_path, "generators or group file")->required();
  sub->add_option("--op", op, "close|coset|fixed")->check(CLI::IsMember({"close", "coset", "fixed"}));

  // smear
  auto* smear = app.add_subcommand("smear", "one smeared-field check");
  smear->fallthrough();
  std::string fspec = "bump:0,pi", fspec2, check_name, field2;
  int window = 256, n_max = 200;
  smear->add_option("--model", model_path, "model file")->required();
  smear->add_option("--field", field, "field (generator, nu or basis label)");
  smear->add_option("--field2", field2, "second field for wightman");
  smear->add_option("--function", fspec, "bump:a,b | mode:n | cos:k | sin:k")->capture_default_str();
  smear->add_option("--function2", fspec2, "second test function");
  smear->add_option("--check", check_name, "adjoint|ebound|wightman|bw|symplectic")
      ->required()
      ->check(CLI::IsMember({"adjoint", "ebound", "wightman", "bw", "symplectic"}));
  smear->add_option("--window", window, "Fourier window")->capture_default_str();
  smear->add_option("--nmax", n_max, "truncation for bw")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*build) {
      VOAModel m = [&]() -> VOAModel {
        if (family == "virasoro") return build_virasoro(Scalar::parse(c_text), cutoff);
        if (family == "heisenberg") return build_heisenberg(cutoff);
        if (family == "sl2") return build_affine_sl2(k, cutoff);
        if (family == "lattice") return build_lattice_rank1(two_n, cutoff);
        if (family == "tensor") {
          if (left_path.empty() || right_path.empty()) throw InputError("tensor needs --left and --right");
          return tensor_product(load_model(left_path), load_model(right_path));
        }
        throw InputError("unknown model '" + family + "'");
      }();
      emit(g.out, canonical_dump(model_to_json(m)));
      std::cerr << m.name() << " level_dims " << json(m.level_dims()).dump() << "\n";
      return kExitPass;
    }

    VOAModel m = load_model(model_path);
    opt.seed = g.seed;
    opt.threads = g.threads;
    opt.timings = g.timings;
    opt.field = field;

    if (*check) {
      std::vector<Task> tasks;
      if (suite == "axioms")
        tasks = axioms_suite(m, opt);
      else if (suite == "unitarity")
        tasks = unitarity_suite(m, opt);
      else if (suite == "subalgebra")
        tasks = subalgebra_suite(m, opt, read_generators(m, gens_path));
      else if (suite == "smeared")
        tasks = smeared_suite(m, opt);
      else
        throw InputError("unknown suite '" + suite + "'");
      return finish_report(m, suite, g, run_tasks(tasks, g.threads, g.timings));
    }

    if (*chr) {
      Character ch = character(m);
      if (as_json) {
        std::vector<long long> coeffs = ch.coefficients;
        if (max_power >= 0 && int(coeffs.size()) > max_power + 1) coeffs.resize(max_power + 1);
        emit(g.out, canonical_dump({{"model_fingerprint", model_fingerprint(m)},
                                    {"coefficients", coeffs},
                                    {"series", ch.q_series(max_power)}}));
      } else {
        emit(g.out, ch.q_series(max_power) + "\n");
      }
      return kExitPass;
    }

    if (*sub) {
      Subalgebra w;
      json doc;
      if (op == "fixed") {
        w = fixed_point_subalgebra(m, read_group(m, gens_path));
      } else {
        Subalgebra closure = close_unitary_subalgebra(m, read_generators(m, gens_path));
        if (op == "coset") {
          w = coset_subalgebra(closure);
          CosetSplit cs = coset_split(closure, w);
          doc["split"] = {{"c_w", cs.w.c_w.str()},
                          {"c_wc", cs.wc.c_w.str()},
                          {"sum_exact", cs.sum_exact},
                          {"central_charges_add", cs.central_charges_add},
                          {"spectra_nonnegative", cs.spectra_nonnegative}};
          doc["generated"] = subalgebra_json(closure);
        } else {
          w = closure;
        }
      }
      SubalgebraReport vr = verify_subalgebra(w);
      doc.update(subalgebra_json(w));
      doc["op"] = op;
      doc["tool_version"] = kToolVersion;
      doc["verify"] = verify_json(vr);
      ProjectedConformal pc = projected_conformal_vector(w);
      doc["c_w"] = pc.c_w.str();
      emit(g.out, canonical_dump(doc));
      std::cerr << op << " level_dims " << json(w.level_dims()).dump() << (vr.ok() ? "" : " (verification failed)")
                << "\n";
      return vr.ok() ? kExitPass : kExitFail;
    }

    if (*smear) {
      if (window < 1) throw InputError("window must be positive");
      TestFunction f = parse_function(fspec, window);
      std::vector<Record> recs;
      if (check_name == "bw" || check_name == "symplectic") {
        GradedVector a = default_field(m, opt);
        if (a.is_zero() || !is_quasi_primary(m, a)) throw InputError("field must be a nonzero quasi-primary");
        const int d = *a.weight();
        if (check_name == "bw") {
          recs.push_back(smear_bw_record(d, f, n_max));
        } else {
          if (fspec2.empty()) throw InputError("symplectic needs --function2");
          double na = bilinear(*a.block(d), m.gram(d), *a.block(d)).to_double();
          recs.push_back(smear_symplectic_record(d, na, {{f, parse_function(fspec2, window)}}));
        }
      } else {
        GradedVector a = default_field(m, opt);
        if (check_name == "adjoint") {
          recs.push_back(smear_adjoint_record(m, a, f));
          recs.push_back(smear_rotation_record(m, a, f, 0.7));
        } else if (check_name == "ebound") {
          recs.push_back(smear_energy_record(m, a, f, g.seed));
        } else {
          if (fspec2.empty()) throw InputError("wightman needs --function2");
          GradedVector b = field2.empty() ? a : resolve_field(m, field2);
          recs.push_back(smear_wightman_record(m, a, f, b, parse_function(fspec2, window), wightman_probe(m)));
        }
      }
      return finish_report(m, "smear." + check_name, g, recs);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
