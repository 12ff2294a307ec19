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
#include "tokrep/nn/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "tokrep/error.hpp"

namespace tokrep::nn {

Tensor& ParamStore::add(const std::string& name, Eigen::Index rows, Eigen::Index cols,
                        InitPolicy policy) {
  if (params_.count(name)) throw std::invalid_argument("duplicate parameter " + name);
  policies_[name] = policy;
  return params_.emplace(name, Tensor(rows, cols)).first->second;
}

Tensor& ParamStore::get(const std::string& name) {
  auto it = params_.find(name);
  if (it == params_.end()) throw std::out_of_range("unknown parameter " + name);
  return it->second;
}

const Tensor& ParamStore::get(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw std::out_of_range("unknown parameter " + name);
  return it->second;
}

std::vector<std::string> ParamStore::names() const {
  std::vector<std::string> out;
  for (const auto& [name, t] : params_) out.push_back(name);
  return out;
}

void ParamStore::initialize(Rng& rng) {
  for (auto& [name, t] : params_) {
    const InitPolicy& p = policies_.at(name);
    switch (p.kind) {
      case InitPolicy::Kind::Zero:
        t.value.setZero();
        break;
      case InitPolicy::Kind::Constant:
        t.value.setConstant(p.a);
        break;
      case InitPolicy::Kind::ConstantRows:
        t.value.setZero();
        t.value.middleRows(p.row_begin, p.row_end - p.row_begin).setConstant(p.a);
        break;
      case InitPolicy::Kind::Uniform:
        // column-major fill order, fixed by the loop rather than by Eigen
        for (Eigen::Index c = 0; c < t.cols(); ++c) {
          for (Eigen::Index r = 0; r < t.rows(); ++r) t.value(r, c) = rng.uniform(p.a, p.b);
        }
        break;
    }
    t.zero_grad();
  }
}

void ParamStore::zero_grad() {
  for (auto& [name, t] : params_) t.grad.setZero();
}

void ParamStore::sgd_step(double learning_rate, const std::vector<std::string>& only) {
  if (only.empty()) {
    for (auto& [name, t] : params_) t.value.noalias() -= learning_rate * t.grad;
    return;
  }
  for (const auto& name : only) {
    Tensor& t = get(name);
    t.value.noalias() -= learning_rate * t.grad;
  }
}

std::size_t ParamStore::parameter_count() const {
  std::size_t n = 0;
  for (const auto& [name, t] : params_) n += static_cast<std::size_t>(t.value.size());
  return n;
}

void ParamStore::copy_values_from(const ParamStore& other) {
  for (auto& [name, t] : params_) {
    auto it = other.params_.find(name);
    if (it != other.params_.end()) t.value = it->second.value;
  }
}

bool ParamStore::values_equal(const ParamStore& other) const {
  if (params_.size() != other.params_.size()) return false;
  for (const auto& [name, t] : params_) {
    auto it = other.params_.find(name);
    if (it == other.params_.end()) return false;
    const Matrix& o = it->second.value;
    if (o.rows() != t.rows() || o.cols() != t.cols()) return false;
    if (!std::equal(t.value.data(), t.value.data() + t.value.size(), o.data())) return false;
  }
  return true;
}

void clip_gradients(ParamStore& store, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("clip bounds must satisfy lo < hi");
  for (auto& [name, t] : store.all()) t.grad = t.grad.cwiseMax(lo).cwiseMin(hi);
}

nlohmann::ordered_json checkpoint_json(const ParamStore& store, const std::string& config_hash) {
  nlohmann::ordered_json j;
  j["format"] = "tokrep-checkpoint";
  j["version"] = 1;
  j["config_hash"] = config_hash;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [name, t] : store.all()) {
    nlohmann::ordered_json p;
    p["shape"] = {t.rows(), t.cols()};
    p["values"] = std::vector<double>(t.value.data(), t.value.data() + t.value.size());
    params[name] = std::move(p);
  }
  j["params"] = std::move(params);
  return j;
}

std::string load_checkpoint(const nlohmann::json& j, ParamStore& store, bool require_known) {
  try {
    if (j.at("format") != "tokrep-checkpoint" || j.at("version") != 1) {
      throw DataError("unsupported checkpoint format");
    }
    for (const auto& [name, p] : j.at("params").items()) {
      const auto shape = p.at("shape").get<std::vector<Eigen::Index>>();
      const auto values = p.at("values").get<std::vector<double>>();
      if (shape.size() != 2 || static_cast<Eigen::Index>(values.size()) != shape[0] * shape[1]) {
        throw DataError("checkpoint parameter " + name + " has inconsistent shape");
      }
      if (!store.contains(name)) {
        if (require_known) throw DataError("checkpoint has unexpected parameter " + name);
        store.add(name, shape[0], shape[1]);
      }
      Tensor& t = store.get(name);
      if (t.rows() != shape[0] || t.cols() != shape[1]) {
        throw DataError("checkpoint parameter " + name + " has the wrong shape");
      }
      t.value = Eigen::Map<const Matrix>(values.data(), shape[0], shape[1]);
      if (!t.value.allFinite()) throw DataError("checkpoint parameter " + name + " is not finite");
    }
    for (const auto& name : store.names()) {
      if (!j.at("params").contains(name)) throw DataError("checkpoint lacks parameter " + name);
    }
    return j.at("config_hash").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed checkpoint: ") + e.what());
  }
}

}  // namespace tokrep::nn
