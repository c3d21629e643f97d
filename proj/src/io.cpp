#include "tropispec/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tropispec {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("malformed JSON input");
  return j;
}

double number_at(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
  return j.get<double>();
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ConeMatrix load_matrix_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw InputError("matrix JSON: expected an object");
  if (!j.contains("semiring") || !j["semiring"].is_string())
    throw InputError("matrix JSON: missing \"semiring\"");
  const Semiring sr = semiring_from_string(j["semiring"].get<std::string>());
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw InputError("matrix JSON: missing integer \"n\"");
  const int n = j["n"].get<int>();
  if (n < 1) throw InputError("matrix JSON: n must be >= 1");
  if (!j.contains("rows") || !j["rows"].is_array() || static_cast<int>(j["rows"].size()) != n)
    throw InputError("matrix JSON: \"rows\" must be an array of n rows");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j["rows"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw InputError("matrix JSON: matrix must be square");
    std::vector<double> r;
    for (const auto& v : row) {
      const double x = number_at(v, "matrix entry");
      if (!std::isfinite(x)) throw InputError("matrix JSON: entries must be finite");
      if (x < 0.0) throw InputError("matrix JSON: entries must be >= 0");
      r.push_back(x);
    }
    rows.push_back(std::move(r));
  }
  return ConeMatrix(rows, sr);
}

ConeMatrix load_matrix_file(const std::string& path) { return load_matrix_json(read_file(path)); }

PosPolynomial load_poly_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw InputError("polynomial JSON: expected {\"coeffs\":[...]}");
  std::vector<double> c;
  for (const auto& v : j["coeffs"]) c.push_back(number_at(v, "coefficient"));
  return PosPolynomial(std::move(c));
}

PosPolynomial parse_poly_list(const std::string& list) {
  std::vector<double> c;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t pos = 0;
      const double v = std::stod(tok, &pos);
      while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
      if (pos != tok.size()) throw InputError("");
      c.push_back(v);
    } catch (...) {
      throw InputError("polynomial list: cannot parse \"" + tok + "\"");
    }
  }
  if (c.empty()) throw InputError("polynomial list: empty");
  return PosPolynomial(std::move(c));
}

KernelSpec load_kernel_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw InputError("kernel JSON: expected an object");
  KernelSpec spec;
  if (!j.contains("a")) throw InputError("kernel JSON: missing \"a\"");
  spec.a = number_at(j["a"], "a");
  if (!j.contains("family") || !j["family"].is_object() || !j["family"].contains("kind"))
    throw InputError("kernel JSON: missing \"family\" with \"kind\"");
  const json& fam = j["family"];
  const std::string kind = fam["kind"].get<std::string>();
  if (kind == "constant") {
    spec.family = KernelSpec::Family::Constant;
    spec.c = number_at(fam.at("c"), "family.c");
  } else if (kind == "product") {
    spec.family = KernelSpec::Family::Product;
    spec.p = number_at(fam.at("p"), "family.p");
    spec.q = number_at(fam.at("q"), "family.q");
    spec.c = fam.contains("c") ? number_at(fam["c"], "family.c") : 1.0;
  } else if (kind == "bump") {
    spec.family = KernelSpec::Family::Bump;
    spec.w = number_at(fam.at("w"), "family.w");
    spec.c = fam.contains("c") ? number_at(fam["c"], "family.c") : 1.0;
  } else if (kind == "table") {
    spec.family = KernelSpec::Family::Table;
    if (!fam.contains("values") || !fam["values"].is_array())
      throw InputError("kernel JSON: table family needs \"values\"");
    for (const auto& row : fam["values"]) {
      std::vector<double> r;
      for (const auto& v : row) r.push_back(number_at(v, "table value"));
      spec.table.push_back(std::move(r));
    }
  } else {
    throw InputError("kernel JSON: unknown family kind \"" + kind + "\"");
  }
  auto edge = [&](const char* name) {
    BandEdge e;
    if (j.contains(name)) {
      const json& je = j[name];
      if (!je.is_object()) throw InputError(std::string("kernel JSON: ") + name + " must be an object");
      if (je.contains("c0")) e.c0 = number_at(je["c0"], "band c0");
      if (je.contains("c1")) e.c1 = number_at(je["c1"], "band c1");
    }
    return e;
  };
  spec.alpha = edge("alpha");
  if (j.contains("beta"))
    spec.beta = edge("beta");
  else
    spec.beta = BandEdge{spec.a, 0.0};
  spec.validate();
  return spec;
}

KernelSpec load_kernel_file(const std::string& path) { return load_kernel_json(read_file(path)); }

EnsembleConfig load_ensemble_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw InputError("ensemble JSON: expected an object");
  EnsembleConfig cfg;
  auto range = [&](const char* name, int& lo, int& hi) {
    if (!j.contains(name)) return;
    const json& r = j[name];
    if (!r.is_array() || r.size() != 2) throw InputError(std::string("ensemble JSON: ") + name + " must be [lo, hi]");
    lo = r[0].get<int>();
    hi = r[1].get<int>();
  };
  if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
  if (j.contains("seed")) cfg.masterSeed = j["seed"].get<std::uint64_t>();
  range("n", cfg.nMin, cfg.nMax);
  range("m", cfg.mMin, cfg.mMax);
  range("degree", cfg.degMin, cfg.degMax);
  range("grid_rows", cfg.gridRowsMin, cfg.gridRowsMax);
  if (j.contains("entry")) {
    const json& e = j["entry"];
    if (e.contains("low")) cfg.entry.low = number_at(e["low"], "entry.low");
    if (e.contains("high")) cfg.entry.high = number_at(e["high"], "entry.high");
    if (e.contains("p_zero")) cfg.entry.pZero = number_at(e["p_zero"], "entry.p_zero");
  }
  return cfg;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonWriter::separate() {
  if (pendingKey_) {
    pendingKey_ = false;
    return;
  }
  if (!stack_.empty()) {
    if (!first_.back()) s_ += ',';
    first_.back() = false;
  }
}

JsonWriter& JsonWriter::obj_open() {
  separate();
  s_ += '{';
  stack_.push_back('{');
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::obj_close() {
  s_ += '}';
  stack_.pop_back();
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::arr_open() {
  separate();
  s_ += '[';
  stack_.push_back('[');
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::arr_close() {
  s_ += ']';
  stack_.pop_back();
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  if (!first_.back()) s_ += ',';
  first_.back() = false;
  s_ += '"';
  s_ += k;
  s_ += "\":";
  pendingKey_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separate();
  s_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) {
  separate();
  s_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  separate();
  s_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separate();
  s_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  separate();
  s_ += '"';
  for (char c : v) {
    if (c == '"' || c == '\\') s_ += '\\';
    s_ += c;
  }
  s_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

}  // namespace tropispec
