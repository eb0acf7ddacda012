// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/nn/tape.h"

#include "dereverb/common/error.h"

namespace dereverb::nn {

const Tensor& Var::value() const { return tape->value(id); }

Var Tape::Constant(Tensor value) {
  nodes_.push_back(Node{std::move(value), {}, false, false, {}});
  return Var{this, static_cast<int>(nodes_.size()) - 1};
}

Var Tape::Input(Tensor value) {
  nodes_.push_back(Node{std::move(value), {}, false, true, {}});
  return Var{this, static_cast<int>(nodes_.size()) - 1};
}

Var Tape::Param(const Parameter& param) {
  for (const auto& [p, id] : bindings_) {
    if (p == &param) return Var{this, id};
  }
  Var v = Input(param.value);
  bindings_.emplace_back(&param, v.id);
  return v;
}

Var Tape::Record(Tensor value, std::vector<int> inputs, BackwardFn backward) {
  bool needs = false;
  for (int id : inputs) needs = needs || nodes_[id].requires_grad;
  nodes_.push_back(Node{std::move(value), {}, false, needs,
                        needs ? std::move(backward) : BackwardFn{}});
  return Var{this, static_cast<int>(nodes_.size()) - 1};
}

Tensor* Tape::grad_slot(int id) {
  Node& node = nodes_[id];
  if (!node.requires_grad) return nullptr;
  if (!node.has_grad) {
    node.grad = Tensor(node.value.shape());
    node.has_grad = true;
  }
  return &node.grad;
}

void Tape::Backward(Var loss) {
  if (loss.tape != this) {
    Fail(ErrorCode::kInvalidArgument, "loss belongs to another tape");
  }
  if (nodes_[loss.id].value.size() != 1) {
    Fail(ErrorCode::kNotScalarLoss,
         "loss has shape " + ShapeString(nodes_[loss.id].value.shape()));
  }
  Tensor* seed = grad_slot(loss.id);
  if (seed == nullptr) return;  // loss does not depend on anything trainable
  (*seed)[0] = 1.0;
  for (int id = loss.id; id >= 0; --id) {
    Node& node = nodes_[id];
    if (!node.has_grad || !node.backward) continue;
    // Interior gradients are released once propagated; only leaves keep
    // theirs. Inputs always precede the node, so no slot aliases this one.
    const Tensor grad_out = std::move(node.grad);
    node.has_grad = false;
    node.backward(*this, grad_out, node.value);
  }
}

Tensor Tape::grad(Var v) const {
  const Node& node = nodes_[v.id];
  return node.has_grad ? node.grad : Tensor(node.value.shape());
}

Gradients Tape::ParamGradients(const ParameterStore& store) const {
  Gradients grads = ZeroGradients(store);
  for (const auto& [param, id] : bindings_) {
    long index = store.IndexOf(param);
    if (index < 0 || !nodes_[id].has_grad) continue;
    grads[index] = nodes_[id].grad;
  }
  return grads;
}

}  // namespace dereverb::nn
