// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_NN_PARAMETER_H_
#define DEREVERB_NN_PARAMETER_H_

#include <deque>
#include <string>
#include <vector>

#include "dereverb/nn/tensor.h"

namespace dereverb::nn {

struct Parameter {
  std::string name;
  Tensor value;

  bool operator==(const Parameter&) const = default;
};

// Ordered collection of named parameters. Addresses are stable for the
// lifetime of the store, so tapes may hold pointers into it.
class ParameterStore {
 public:
  Parameter& Add(std::string name, Tensor value);

  size_t size() const { return params_.size(); }
  Parameter& operator[](size_t i) { return params_[i]; }
  const Parameter& operator[](size_t i) const { return params_[i]; }

  // Throws InvalidArgument for unknown names.
  Parameter& Get(const std::string& name);
  const Parameter& Get(const std::string& name) const;
  // Index of `p` within the store, or -1.
  long IndexOf(const Parameter* p) const;

  size_t TotalElements() const;

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

 private:
  std::deque<Parameter> params_;
};

// Per-parameter gradients aligned with a store's order.
using Gradients = std::vector<Tensor>;

Gradients ZeroGradients(const ParameterStore& store);

}  // namespace dereverb::nn

#endif  // DEREVERB_NN_PARAMETER_H_
