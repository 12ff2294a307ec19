// Copyright 2026 The tokrep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "tokrep/rng.hpp"

namespace tokrep::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Tensor {
  Matrix value;
  Matrix grad;

  Tensor() = default;
  Tensor(Eigen::Index rows, Eigen::Index cols)
      : value(Matrix::Zero(rows, cols)), grad(Matrix::Zero(rows, cols)) {}

  Eigen::Index rows() const { return value.rows(); }
  Eigen::Index cols() const { return value.cols(); }
  void zero_grad() { grad.setZero(value.rows(), value.cols()); }
};

struct InitPolicy {
  enum class Kind { Zero, Uniform, Constant, ConstantRows };
  Kind kind = Kind::Zero;
  double a = 0.0;  // Uniform: low; Constant: value
  double b = 0.0;  // Uniform: high
  Eigen::Index row_begin = 0, row_end = 0;  // ConstantRows: rows set to a

  static InitPolicy zero() { return {}; }
  static InitPolicy uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
  static InitPolicy constant(double v) { return {Kind::Constant, v}; }
  /// Zero everywhere except rows [begin, end), which hold \p v.
  static InitPolicy constant_rows(Eigen::Index begin, Eigen::Index end, double v) {
    return {Kind::ConstantRows, v, 0.0, begin, end};
  }
};

/// Named parameters. Iteration and initialization follow name order, so a
/// seed fully determines the initial values.
class ParamStore {
 public:
  Tensor& add(const std::string& name, Eigen::Index rows, Eigen::Index cols,
              InitPolicy policy = InitPolicy::zero());
  Tensor& get(const std::string& name);
  const Tensor& get(const std::string& name) const;
  bool contains(const std::string& name) const { return params_.count(name) != 0; }
  const InitPolicy& policy(const std::string& name) const { return policies_.at(name); }

  std::vector<std::string> names() const;
  std::map<std::string, Tensor>& all() { return params_; }
  const std::map<std::string, Tensor>& all() const { return params_; }

  /// Draws initial values for every parameter.
  void initialize(Rng& rng);
  void zero_grad();
  /// Plain SGD over the named parameters (all when empty).
  void sgd_step(double learning_rate, const std::vector<std::string>& only = {});
  std::size_t parameter_count() const;

  /// Copies values (not gradients) from \p other for every shared name.
  void copy_values_from(const ParamStore& other);
  bool values_equal(const ParamStore& other) const;

 private:
  std::map<std::string, Tensor> params_;
  std::map<std::string, InitPolicy> policies_;
};

/// Component-wise clamp of every gradient into [lo, hi].
void clip_gradients(ParamStore& store, double lo, double hi);

/// Checkpoint JSON: {"format", "version", "config_hash", "params": {name:
/// {"shape": [r, c], "values": [...column-major...]}}}.
nlohmann::ordered_json checkpoint_json(const ParamStore& store, const std::string& config_hash);
/// Restores values into \p store. Shapes must match already-registered
/// parameters when \p require_known is set; otherwise parameters are created.
std::string load_checkpoint(const nlohmann::json& j, ParamStore& store, bool require_known = true);

}  // namespace tokrep::nn
