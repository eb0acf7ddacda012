// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/nn/parameter.h"

#include <utility>

#include "dereverb/common/error.h"

namespace dereverb::nn {

Parameter& ParameterStore::Add(std::string name, Tensor value) {
  for (const auto& p : params_) {
    if (p.name == name) {
      Fail(ErrorCode::kInvalidArgument, "duplicate parameter " + name);
    }
  }
  params_.push_back(Parameter{std::move(name), std::move(value)});
  return params_.back();
}

Parameter& ParameterStore::Get(const std::string& name) {
  for (auto& p : params_) {
    if (p.name == name) return p;
  }
  Fail(ErrorCode::kInvalidArgument, "no parameter named " + name);
}

const Parameter& ParameterStore::Get(const std::string& name) const {
  return const_cast<ParameterStore*>(this)->Get(name);
}

long ParameterStore::IndexOf(const Parameter* p) const {
  for (size_t i = 0; i < params_.size(); ++i) {
    if (&params_[i] == p) return static_cast<long>(i);
  }
  return -1;
}

size_t ParameterStore::TotalElements() const {
  size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

Gradients ZeroGradients(const ParameterStore& store) {
  Gradients g;
  g.reserve(store.size());
  for (const auto& p : store) g.emplace_back(p.value.shape());
  return g;
}

}  // namespace dereverb::nn
