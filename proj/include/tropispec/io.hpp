#pragma once

#include <string>
#include <vector>

#include "tropispec/core.hpp"
#include "tropispec/hadamard.hpp"
#include "tropispec/kernel.hpp"
#include "tropispec/maxpoly.hpp"

namespace tropispec {

// Matrix JSON: {"semiring":"max-times"|"plus-times","n":<int>,"rows":[[...],...]}
// Rejects negatives, NaN, non-square input.
ConeMatrix load_matrix_json(const std::string& text);
ConeMatrix load_matrix_file(const std::string& path);

// Polynomial JSON: {"coeffs":[a0,a1,...]}; CLI form "a0,a1,...".
PosPolynomial load_poly_json(const std::string& text);
PosPolynomial parse_poly_list(const std::string& list);

KernelSpec load_kernel_json(const std::string& text);
KernelSpec load_kernel_file(const std::string& path);

EnsembleConfig load_ensemble_json(const std::string& text);

std::string read_file(const std::string& path);

// 17 significant digits; infinities serialize as quoted strings so the
// output stays valid JSON.
std::string format_double(double v);

// Minimal deterministic JSON emitter (insertion order preserved).
class JsonWriter {
 public:
  JsonWriter& obj_open();
  JsonWriter& obj_close();
  JsonWriter& arr_open();
  JsonWriter& arr_close();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  const std::string& str() const { return s_; }

 private:
  void separate();
  std::string s_;
  std::vector<char> stack_;  // '{' or '['
  std::vector<bool> first_;
  bool pendingKey_ = false;
};

}  // namespace tropispec
