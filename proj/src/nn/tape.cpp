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
#include "tokrep/nn/tape.hpp"

#include <cmath>
#include <stdexcept>

#include "tokrep/nn/softmax.hpp"

namespace tokrep::nn {

namespace {

void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string("shape mismatch in ") + op);
  }
}

}  // namespace

Var Tape::push(Matrix value, bool requires_grad, std::function<void(Tape&, const Node&)> back) {
  Node n;
  n.value = std::move(value);
  n.requires_grad = requires_grad;
  if (requires_grad) n.back = std::move(back);
  nodes_.push_back(std::move(n));
  return Var{nodes_.size() - 1};
}

Var Tape::constant(Matrix value) { return push(std::move(value), false, nullptr); }

Var Tape::param(Tensor& t) {
  auto it = param_nodes_.find(&t);
  if (it != param_nodes_.end()) return Var{it->second};
  Node n;
  n.param = &t;
  n.requires_grad = true;
  nodes_.push_back(std::move(n));
  param_nodes_[&t] = nodes_.size() - 1;
  return Var{nodes_.size() - 1};
}

Var Tape::embedding(Tensor& table, Eigen::Index col) {
  if (col < 0 || col >= table.cols()) throw std::out_of_range("embedding id out of range");
  Node n;
  n.value = table.value.col(col);
  n.param = &table;
  n.embed_col = col;
  n.requires_grad = true;
  nodes_.push_back(std::move(n));
  return Var{nodes_.size() - 1};
}

const Matrix& Tape::value(Var v) const {
  const Node& n = nodes_.at(v.id);
  if (n.param && n.embed_col < 0) return n.param->value;
  return n.value;
}

Var Tape::matmul(Var a, Var b) {
  if (value(a).cols() != value(b).rows()) throw std::invalid_argument("shape mismatch in matmul");
  Matrix out = value(a) * value(b);
  return push(std::move(out), needs(a) || needs(b), [a, b](Tape& t, const Node& n) {
    if (t.needs(a)) t.grad_mut(a).noalias() += n.grad * t.value(b).transpose();
    if (t.needs(b)) t.grad_mut(b).noalias() += t.value(a).transpose() * n.grad;
  });
}

Var Tape::matmul_transposed(Var a, Var b) {
  if (value(a).rows() != value(b).rows()) {
    throw std::invalid_argument("shape mismatch in matmul_transposed");
  }
  Matrix out = value(a).transpose() * value(b);
  return push(std::move(out), needs(a) || needs(b), [a, b](Tape& t, const Node& n) {
    if (t.needs(a)) t.grad_mut(a).noalias() += t.value(b) * n.grad.transpose();
    if (t.needs(b)) t.grad_mut(b).noalias() += t.value(a) * n.grad;
  });
}

Var Tape::add(Var a, Var b) {
  check_same_shape(value(a), value(b), "add");
  Matrix out = value(a) + value(b);
  return push(std::move(out), needs(a) || needs(b), [a, b](Tape& t, const Node& n) {
    if (t.needs(a)) t.grad_mut(a) += n.grad;
    if (t.needs(b)) t.grad_mut(b) += n.grad;
  });
}

Var Tape::add_column(Var m, Var v) {
  if (value(v).cols() != 1 || value(v).rows() != value(m).rows()) {
    throw std::invalid_argument("shape mismatch in add_column");
  }
  Matrix out = value(m).colwise() + value(v).col(0);
  return push(std::move(out), needs(m) || needs(v), [m, v](Tape& t, const Node& n) {
    if (t.needs(m)) t.grad_mut(m) += n.grad;
    if (t.needs(v)) t.grad_mut(v) += n.grad.rowwise().sum();
  });
}

Var Tape::mul(Var a, Var b) {
  check_same_shape(value(a), value(b), "mul");
  Matrix out = value(a).cwiseProduct(value(b));
  return push(std::move(out), needs(a) || needs(b), [a, b](Tape& t, const Node& n) {
    if (t.needs(a)) t.grad_mut(a) += n.grad.cwiseProduct(t.value(b));
    if (t.needs(b)) t.grad_mut(b) += n.grad.cwiseProduct(t.value(a));
  });
}

Var Tape::scale(Var a, double c) {
  Matrix out = c * value(a);
  return push(std::move(out), needs(a), [a, c](Tape& t, const Node& n) {
    t.grad_mut(a) += c * n.grad;
  });
}

Var Tape::sigmoid(Var a) {
  Matrix out = value(a).unaryExpr([](double x) { return logistic(x); });
  return push(std::move(out), needs(a), [a](Tape& t, const Node& n) {
    t.grad_mut(a).array() += n.grad.array() * n.value.array() * (1.0 - n.value.array());
  });
}

Var Tape::tanh(Var a) {
  Matrix out = value(a).array().tanh().matrix();
  return push(std::move(out), needs(a), [a](Tape& t, const Node& n) {
    t.grad_mut(a).array() += n.grad.array() * (1.0 - n.value.array().square());
  });
}

Var Tape::rows(Var a, Eigen::Index begin, Eigen::Index count) {
  if (begin < 0 || count < 0 || begin + count > value(a).rows()) {
    throw std::out_of_range("row slice out of range");
  }
  Matrix out = value(a).middleRows(begin, count);
  return push(std::move(out), needs(a), [a, begin, count](Tape& t, const Node& n) {
    t.grad_mut(a).middleRows(begin, count) += n.grad;
  });
}

Var Tape::column(Var a, Eigen::Index col) {
  if (col < 0 || col >= value(a).cols()) throw std::out_of_range("column out of range");
  Matrix out = value(a).col(col);
  return push(std::move(out), needs(a), [a, col](Tape& t, const Node& n) {
    t.grad_mut(a).col(col) += n.grad;
  });
}

Var Tape::concat_rows(std::span<const Var> parts) {
  if (parts.empty()) throw std::invalid_argument("concat of nothing");
  Eigen::Index total = 0;
  const Eigen::Index cols = value(parts[0]).cols();
  bool req = false;
  for (Var p : parts) {
    if (value(p).cols() != cols) throw std::invalid_argument("shape mismatch in concat_rows");
    total += value(p).rows();
    req = req || needs(p);
  }
  Matrix out(total, cols);
  Eigen::Index at = 0;
  for (Var p : parts) {
    out.middleRows(at, value(p).rows()) = value(p);
    at += value(p).rows();
  }
  std::vector<Var> keep(parts.begin(), parts.end());
  return push(std::move(out), req, [keep](Tape& t, const Node& n) {
    Eigen::Index at = 0;
    for (Var p : keep) {
      const Eigen::Index r = t.value(p).rows();
      if (t.needs(p)) t.grad_mut(p) += n.grad.middleRows(at, r);
      at += r;
    }
  });
}

Var Tape::concat_columns(std::span<const Var> parts) {
  if (parts.empty()) throw std::invalid_argument("concat of nothing");
  Eigen::Index total = 0;
  const Eigen::Index rows = value(parts[0]).rows();
  bool req = false;
  for (Var p : parts) {
    if (value(p).rows() != rows) throw std::invalid_argument("shape mismatch in concat_columns");
    total += value(p).cols();
    req = req || needs(p);
  }
  Matrix out(rows, total);
  Eigen::Index at = 0;
  for (Var p : parts) {
    out.middleCols(at, value(p).cols()) = value(p);
    at += value(p).cols();
  }
  std::vector<Var> keep(parts.begin(), parts.end());
  return push(std::move(out), req, [keep](Tape& t, const Node& n) {
    Eigen::Index at = 0;
    for (Var p : keep) {
      const Eigen::Index c = t.value(p).cols();
      if (t.needs(p)) t.grad_mut(p) += n.grad.middleCols(at, c);
      at += c;
    }
  });
}

Var Tape::dot(Var a, Var b) {
  check_same_shape(value(a), value(b), "dot");
  Matrix out(1, 1);
  out(0, 0) = value(a).cwiseProduct(value(b)).sum();
  return push(std::move(out), needs(a) || needs(b), [a, b](Tape& t, const Node& n) {
    const double g = n.grad(0, 0);
    if (t.needs(a)) t.grad_mut(a) += g * t.value(b);
    if (t.needs(b)) t.grad_mut(b) += g * t.value(a);
  });
}

Var Tape::bilinear(Var a, Var m, Var b) {
  const Matrix& av = value(a);
  const Matrix& mv = value(m);
  const Matrix& bv = value(b);
  if (av.cols() != 1 || bv.cols() != 1 || mv.rows() != av.rows() || mv.cols() != bv.rows()) {
    throw std::invalid_argument("shape mismatch in bilinear");
  }
  Matrix out(1, 1);
  out(0, 0) = av.col(0).dot(mv * bv.col(0));
  return push(std::move(out), needs(a) || needs(m) || needs(b), [a, m, b](Tape& t, const Node& n) {
    const double g = n.grad(0, 0);
    const Matrix& av = t.value(a);
    const Matrix& mv = t.value(m);
    const Matrix& bv = t.value(b);
    if (t.needs(a)) t.grad_mut(a).noalias() += g * (mv * bv);
    if (t.needs(m)) t.grad_mut(m).noalias() += g * (av * bv.transpose());
    if (t.needs(b)) t.grad_mut(b).noalias() += g * (mv.transpose() * av);
  });
}

Var Tape::sum(std::span<const Var> scalars) {
  Matrix out = Matrix::Zero(1, 1);
  bool req = false;
  for (Var s : scalars) {
    if (value(s).size() != 1) throw std::invalid_argument("sum expects scalars");
    out(0, 0) += value(s)(0, 0);
    req = req || needs(s);
  }
  std::vector<Var> keep(scalars.begin(), scalars.end());
  return push(std::move(out), req, [keep](Tape& t, const Node& n) {
    for (Var s : keep) {
      if (t.needs(s)) t.grad_mut(s)(0, 0) += n.grad(0, 0);
    }
  });
}

Var Tape::softmax_cross_entropy(Var logits, const Vector& target) {
  const Matrix& z = value(logits);
  if (z.cols() != 1 || z.rows() != target.size()) {
    throw std::invalid_argument("shape mismatch in softmax_cross_entropy");
  }
  const CrossEntropy ce = nn::softmax_cross_entropy(z.col(0), target);
  Matrix out(1, 1);
  out(0, 0) = ce.loss;
  Matrix g = ce.gradient;
  return push(std::move(out), needs(logits), [logits, g](Tape& t, const Node& n) {
    t.grad_mut(logits) += n.grad(0, 0) * g;
  });
}

void Tape::backward(Var target) {
  if (value(target).size() != 1) throw std::invalid_argument("backward target must be a scalar");
  for (auto& n : nodes_) {
    if (!n.requires_grad) continue;
    const Matrix& v = (n.param && n.embed_col < 0) ? n.param->value : n.value;
    n.grad.setZero(v.rows(), v.cols());
  }
  if (!nodes_[target.id].requires_grad) return;
  nodes_[target.id].grad(0, 0) = 1.0;
  for (std::size_t i = target.id + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.requires_grad) continue;
    if (n.back) {
      n.back(*this, n);
    } else if (n.param) {
      if (n.embed_col >= 0) {
        n.param->grad.col(n.embed_col) += n.grad;
      } else {
        n.param->grad += n.grad;
      }
    }
  }
}

}  // namespace tokrep::nn
