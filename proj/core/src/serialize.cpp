#include "voa/serialize.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace voa {

using nlohmann::json;

namespace {

void emit(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        emit(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        emit(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      double v = j.get<double>();
      if (std::isnan(v)) {
        out += "\"nan\"";
      } else if (std::isinf(v)) {
        out += v > 0 ? "\"inf\"" : "\"-inf\"";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        std::string s(buf);
        if (s.find_first_of(".eE") == std::string::npos) s += ".0";
        out += s;
      }
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string canonical_dump(const json& j) {
  std::string out;
  emit(j, out);
  out += '\n';
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

json scalar_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  throw InputError("scalar must be a \"p/q\" string");
}

json vector_json(const GradedVector& v) {
  json arr = json::array();
  for (const auto& [l, c] : v.blocks()) {
    json coords = json::array();
    for (const auto& x : c) coords.push_back(scalar_json(x));
    arr.push_back(json::array({l, coords}));
  }
  return arr;
}

GradedVector vector_from_json(const json& j, int cutoff) {
  GradedVector v(cutoff);
  if (!j.is_array()) throw InputError("graded vector must be an array of [level, coords]");
  for (const auto& blk : j) {
    if (!blk.is_array() || blk.size() != 2) throw InputError("bad graded vector block");
    int l = blk[0].get<int>();
    Vec c;
    for (const auto& x : blk[1]) c.push_back(scalar_from_json(x));
    if (l < 0 || l > cutoff) throw InputError("graded vector level outside cutoff");
    v.set(l, std::move(c));
  }
  return v;
}

namespace {

json model_body(const VOAModel& m) {
  const int L = m.cutoff();
  json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["name"] = m.name();
  doc["cutoff"] = L;
  doc["central_charge"] = scalar_json(m.central_charge());
  doc["level_dims"] = m.level_dims();
  json labels = json::array();
  json gram = json::array();
  for (int l = 0; l <= L; ++l) {
    labels.push_back(m.labels(l));
    json g = json::array();
    const Matrix& G = m.gram(l);
    for (size_t i = 0; i < G.rows(); ++i) {
      json row = json::array();
      for (size_t j = 0; j < G.cols(); ++j) row.push_back(scalar_json(G(i, j)));
      g.push_back(row);
    }
    gram.push_back(g);
  }
  doc["basis_labels"] = labels;
  doc["gram"] = gram;
  json structure = json::array();
  for (int a = 0; a < m.total_dim(); ++a) {
    int da = m.weight_of(a);
    for (int s = 0; s <= L; ++s) {
      for (int t = 0; t <= L; ++t) {
        long q = da + s - t - 1;
        SparseMatrix mt = m.data().modes[a][s][t].transpose();
        for (size_t j = 0; j < mt.rows(); ++j) {
          if (mt.row(j).empty()) continue;
          json coords = json::array();
          for (const auto& [i, x] : mt.row(j)) coords.push_back(json::array({i, scalar_json(x)}));
          structure.push_back(json::array({a, q, m.offset(s) + int(j), coords}));
        }
      }
    }
  }
  doc["structure"] = structure;
  doc["conformal_vector"] = vector_json(m.conformal_vector());
  doc["metadata"] = m.metadata();
  json gens = json::array();
  for (const auto& g : m.generators()) gens.push_back({{"name", g.name}, {"vector", vector_json(g.vector)}});
  doc["generators"] = gens;
  json cons = json::array();
  for (const auto& c : m.constructions()) {
    json x;
    switch (c.kind) {
      case Construction::Kind::Vacuum:
        x["kind"] = "vacuum";
        break;
      case Construction::Kind::Generator:
        x["kind"] = "generator";
        x["generator"] = c.generator;
        break;
      case Construction::Kind::Product:
        x["kind"] = "product";
        x["left"] = vector_json(c.left);
        x["q"] = c.q;
        x["right"] = vector_json(c.right);
        break;
    }
    cons.push_back(x);
  }
  doc["constructions"] = cons;
  return doc;
}

}  // namespace

std::string model_fingerprint(const VOAModel& model) { return sha256_hex(canonical_dump(model_body(model))); }

json model_to_json(const VOAModel& model) {
  json doc = model_body(model);
  doc["fingerprint"] = sha256_hex(canonical_dump(doc));
  return doc;
}

VOAModel model_from_json(const json& doc_in) {
  try {
    if (!doc_in.is_object()) throw InputError("model document must be an object");
    json doc = doc_in;
    if (!doc.contains("fingerprint")) throw InputError("model document has no fingerprint");
    std::string fp = doc["fingerprint"].get<std::string>();
    doc.erase("fingerprint");
    if (sha256_hex(canonical_dump(doc)) != fp) throw InputError("fingerprint mismatch");
    if (doc.at("format_version").get<int>() != kModelFormatVersion) throw InputError("unsupported format_version");

    ModelData md;
    md.name = doc.at("name").get<std::string>();
    md.cutoff = doc.at("cutoff").get<int>();
    const int L = md.cutoff;
    md.central_charge = scalar_from_json(doc.at("central_charge"));
    auto dims = doc.at("level_dims").get<std::vector<int>>();
    if (int(dims.size()) != L + 1) throw InputError("level_dims length mismatch");
    md.labels = doc.at("basis_labels").get<std::vector<std::vector<std::string>>>();
    for (const auto& g : doc.at("gram")) {
      size_t n = g.size();
      Matrix G(n, n);
      for (size_t i = 0; i < n; ++i) {
        if (g[i].size() != n) throw InputError("gram row length mismatch");
        for (size_t j = 0; j < n; ++j) G(i, j) = scalar_from_json(g[i][j]);
      }
      md.gram.push_back(std::move(G));
    }
    std::vector<int> offsets{0};
    for (int d : dims) offsets.push_back(offsets.back() + d);
    auto level_of = [&](int g) {
      if (g < 0 || g >= offsets.back()) throw InputError("basis index out of range");
      int l = 0;
      while (offsets[l + 1] <= g) ++l;
      return l;
    };
    const int total = offsets.back();
    std::vector<std::vector<std::vector<std::vector<std::tuple<size_t, size_t, Scalar>>>>> trip(
        total, std::vector<std::vector<std::vector<std::tuple<size_t, size_t, Scalar>>>>(
                   L + 1, std::vector<std::vector<std::tuple<size_t, size_t, Scalar>>>(L + 1)));
    for (const auto& e : doc.at("structure")) {
      int a = e.at(0).get<int>();
      long q = e.at(1).get<long>();
      int b = e.at(2).get<int>();
      int da = level_of(a), s = level_of(b);
      int t = int(da + s - q - 1);
      if (t < 0 || t > L) throw InputError("structure entry outside window");
      for (const auto& c : e.at(3)) {
        size_t i = c.at(0).get<size_t>();
        if (int(i) >= dims[t]) throw InputError("structure coordinate out of range");
        trip[a][s][t].emplace_back(i, size_t(b - offsets[s]), scalar_from_json(c.at(1)));
      }
    }
    md.modes.resize(total);
    for (int a = 0; a < total; ++a) {
      md.modes[a].resize(L + 1);
      for (int s = 0; s <= L; ++s)
        for (int t = 0; t <= L; ++t)
          md.modes[a][s].push_back(SparseMatrix::from_triplets(dims[t], dims[s], trip[a][s][t]));
    }
    md.conformal_vector = vector_from_json(doc.at("conformal_vector"), L);
    md.metadata = doc.at("metadata").get<std::map<std::string, std::string>>();
    for (const auto& g : doc.at("generators"))
      md.generators.push_back({g.at("name").get<std::string>(), vector_from_json(g.at("vector"), L)});
    for (const auto& x : doc.at("constructions")) {
      Construction c;
      std::string kind = x.at("kind").get<std::string>();
      if (kind == "vacuum") {
        c.kind = Construction::Kind::Vacuum;
      } else if (kind == "generator") {
        c.kind = Construction::Kind::Generator;
        c.generator = x.at("generator").get<int>();
      } else if (kind == "product") {
        c.kind = Construction::Kind::Product;
        c.left = vector_from_json(x.at("left"), L);
        c.q = x.at("q").get<long>();
        c.right = vector_from_json(x.at("right"), L);
      } else {
        throw InputError("unknown construction kind");
      }
      md.constructions.push_back(std::move(c));
    }
    return VOAModel(std::move(md));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("malformed model document: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << bytes;
}

void save_model(const VOAModel& model, const std::string& path) { write_file(path, canonical_dump(model_to_json(model))); }

VOAModel load_model(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError("corrupt model file: " + std::string(e.what()));
  }
  return model_from_json(doc);
}

}  // namespace voa
