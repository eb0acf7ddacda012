// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/train/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "dereverb/common/error.h"

namespace dereverb::train {
namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

constexpr char kMagic[4] = {'D', 'R', 'V', 'B'};

class Writer {
 public:
  template <typename T>
  void Put(T v) {
    char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    buf_.insert(buf_.end(), b, b + sizeof(T));
  }
  void PutString(const std::string& s) {
    Put<uint64_t>(s.size());
    buf_.insert(buf_.end(), s.begin(), s.end());
  }
  void PutBytes(const char* p, size_t n) { buf_.insert(buf_.end(), p, p + n); }
  const std::vector<char>& buf() const { return buf_; }

 private:
  std::vector<char> buf_;
};

class Reader {
 public:
  explicit Reader(std::vector<char> buf) : buf_(std::move(buf)) {}

  template <typename T>
  T Get() {
    T v;
    std::memcpy(&v, Take(sizeof(T)), sizeof(T));
    return v;
  }
  std::string GetString() {
    const uint64_t n = Get<uint64_t>();
    if (n > buf_.size()) throw ParseError(0, "checkpoint: bad string length");
    const char* p = Take(n);
    return std::string(p, n);
  }
  bool done() const { return pos_ == buf_.size(); }

 private:
  const char* Take(size_t n) {
    if (n > buf_.size() - pos_) throw ParseError(0, "checkpoint: truncated");
    const char* p = buf_.data() + pos_;
    pos_ += n;
    return p;
  }

  std::vector<char> buf_;
  size_t pos_ = 0;
};

void PutTensorF64(Writer& w, const nn::Tensor& t) {
  for (double v : t.values()) w.Put<double>(v);
}

nn::Tensor GetTensorF64(Reader& r, const nn::Shape& shape) {
  nn::Tensor t(shape);
  for (double& v : t.values()) v = r.Get<double>();
  return t;
}

}  // namespace

void RoundToStorage(nn::ParameterStore& params) {
  for (auto& p : params) {
    for (double& v : p.value.values()) v = static_cast<float>(v);
  }
}

void SaveCheckpoint(const Checkpoint& c, const std::filesystem::path& path) {
  if (c.adam.m.size() != c.params.size() || c.adam.v.size() != c.params.size()) {
    Fail(ErrorCode::kShapeMismatch, "checkpoint: optimizer state does not match parameters");
  }
  Writer w;
  w.PutBytes(kMagic, 4);
  w.Put<uint32_t>(kCheckpointVersion);
  w.Put<uint32_t>(static_cast<uint32_t>(c.kind));
  w.PutString(c.config.dump());
  w.Put<uint32_t>(static_cast<uint32_t>(c.params.size()));
  for (const auto& p : c.params) {
    w.Put<uint32_t>(static_cast<uint32_t>(p.name.size()));
    w.PutBytes(p.name.data(), p.name.size());
    w.Put<uint32_t>(static_cast<uint32_t>(p.value.rank()));
    for (size_t d : p.value.shape()) w.Put<uint64_t>(d);
    for (double v : p.value.values()) w.Put<float>(static_cast<float>(v));
  }
  w.Put<int64_t>(c.adam.step);
  for (size_t i = 0; i < c.params.size(); ++i) {
    PutTensorF64(w, c.adam.m[i]);
    PutTensorF64(w, c.adam.v[i]);
  }
  w.Put<double>(c.lr);
  w.Put<int64_t>(c.epoch);
  w.PutString(c.rng_state);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIoFailure, "cannot write " + path.string());
  out.write(w.buf().data(), static_cast<std::streamsize>(w.buf().size()));
  if (!out) Fail(ErrorCode::kIoFailure, "write failed: " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::vector<char> buf((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
  if (buf.size() < 8 || std::memcmp(buf.data(), kMagic, 4) != 0) {
    throw ParseError(0, path.string() + ": not a checkpoint (bad magic)");
  }
  Reader r(std::move(buf));
  r.Get<uint32_t>();
  const uint32_t version = r.Get<uint32_t>();
  if (version != kCheckpointVersion) {
    Fail(ErrorCode::kVersionMismatch,
         path.string() + ": checkpoint version " + std::to_string(version));
  }
  Checkpoint c;
  const uint32_t kind = r.Get<uint32_t>();
  if (kind > static_cast<uint32_t>(models::ModelKind::kJoint)) {
    throw ParseError(0, "checkpoint: unknown model kind");
  }
  c.kind = static_cast<models::ModelKind>(kind);
  c.config = nlohmann::json::parse(r.GetString(), nullptr, false);
  if (c.config.is_discarded()) throw ParseError(0, "checkpoint: bad config JSON");
  const uint32_t count = r.Get<uint32_t>();
  for (uint32_t i = 0; i < count; ++i) {
    nn::Parameter p;
    const uint32_t name_len = r.Get<uint32_t>();
    for (uint32_t k = 0; k < name_len; ++k) p.name.push_back(r.Get<char>());
    const uint32_t rank = r.Get<uint32_t>();
    if (rank > 8) throw ParseError(0, "checkpoint: bad tensor rank");
    nn::Shape shape(rank);
    size_t elements = 1;
    for (auto& d : shape) {
      d = r.Get<uint64_t>();
      if (d > (size_t{1} << 32)) throw ParseError(0, "checkpoint: bad tensor shape");
      elements *= d;
    }
    if (elements > (size_t{1} << 32)) throw ParseError(0, "checkpoint: bad tensor shape");
    p.value = nn::Tensor(shape);
    for (double& v : p.value.values()) v = r.Get<float>();
    c.params.push_back(std::move(p));
  }
  c.adam.step = r.Get<int64_t>();
  for (const auto& p : c.params) {
    c.adam.m.push_back(GetTensorF64(r, p.value.shape()));
    c.adam.v.push_back(GetTensorF64(r, p.value.shape()));
  }
  c.lr = r.Get<double>();
  c.epoch = r.Get<int64_t>();
  c.rng_state = r.GetString();
  if (!r.done()) throw ParseError(0, "checkpoint: trailing bytes");
  return c;
}

std::unique_ptr<models::Model> RestoreModel(const Checkpoint& c) {
  std::unique_ptr<models::Model> model = models::MakeModel(c.kind, c.config, 0);
  nn::ParameterStore& store = model->params();
  if (store.size() != c.params.size()) {
    throw ParseError(0, "checkpoint has " + std::to_string(c.params.size()) +
                            " parameters, model expects " +
                            std::to_string(store.size()));
  }
  for (size_t i = 0; i < store.size(); ++i) {
    if (store[i].name != c.params[i].name ||
        store[i].value.shape() != c.params[i].value.shape()) {
      throw ParseError(0, "checkpoint parameter '" + c.params[i].name +
                              "' does not match model parameter '" +
                              store[i].name + "'");
    }
    store[i].value = c.params[i].value;
  }
  return model;
}

}  // namespace dereverb::train
