// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_NN_TAPE_H_
#define DEREVERB_NN_TAPE_H_

#include <deque>
#include <functional>
#include <utility>
#include <vector>

#include "dereverb/nn/parameter.h"
#include "dereverb/nn/tensor.h"

namespace dereverb::nn {

class Tape;

// Handle to a value recorded on a Tape.
struct Var {
  Tape* tape = nullptr;
  int id = -1;

  bool valid() const { return tape != nullptr && id >= 0; }
  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }
};

// Reverse-mode record. Nodes are appended in evaluation order, which is a
// topological order, so Backward is a single reverse sweep.
class Tape {
 public:
  // Called once during Backward with the node's accumulated output gradient
  // and its forward value; adds into the gradients of the node's inputs.
  using BackwardFn = std::function<void(Tape& tape, const Tensor& grad_out,
                                        const Tensor& out)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Leaf that receives no gradient.
  Var Constant(Tensor value);
  // Leaf bound to a parameter; its gradient is reported by ParamGradients.
  // Binding the same parameter twice returns the same node.
  Var Param(const Parameter& param);
  // Leaf that receives a gradient but is not a parameter.
  Var Input(Tensor value);

  Var Record(Tensor value, std::vector<int> inputs, BackwardFn backward);

  const Tensor& value(int id) const { return nodes_[id].value; }
  bool requires_grad(int id) const { return nodes_[id].requires_grad; }

  // Gradient slot of node `id`, allocated (zeroed) on first use, or nullptr
  // when the node does not require a gradient.
  Tensor* grad_slot(int id);

  // Throws NotScalarLoss unless `loss` holds exactly one element.
  void Backward(Var loss);

  // Gradient of a leaf (Param/Input) after Backward; zeros when nothing
  // flowed into it. Interior nodes release their gradients during Backward.
  Tensor grad(Var v) const;

  // Gradients for every parameter of `store`, in store order. Parameters
  // not bound on this tape get zero gradients.
  Gradients ParamGradients(const ParameterStore& store) const;

  size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    bool has_grad = false;
    bool requires_grad = false;
    BackwardFn backward;
  };

  std::deque<Node> nodes_;  // stable references across Record
  std::vector<std::pair<const Parameter*, int>> bindings_;
};

}  // namespace dereverb::nn

#endif  // DEREVERB_NN_TAPE_H_
