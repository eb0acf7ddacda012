// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/corpus/example.h"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "dereverb/common/error.h"

namespace dereverb::corpus {
namespace {

static_assert(std::endian::native == std::endian::little,
              "cache I/O assumes a little-endian host");

constexpr char kMagic[4] = {'D', 'R', 'V', 'B'};

void PutU32(std::vector<char>& buf, uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  buf.insert(buf.end(), b, b + 4);
}

void PutF32(std::vector<char>& buf, double v) {
  const float f = static_cast<float>(v);
  char b[4];
  std::memcpy(b, &f, 4);
  buf.insert(buf.end(), b, b + 4);
}

void PutArray(std::vector<char>& buf, const Array2D& a) {
  for (double v : a.data()) PutF32(buf, v);
}

class Reader {
 public:
  Reader(const std::vector<char>& buf, const std::string& path)
      : buf_(buf), path_(path) {}

  uint32_t U32() {
    uint32_t v;
    std::memcpy(&v, Take(4), 4);
    return v;
  }
  double F32() {
    float f;
    std::memcpy(&f, Take(4), 4);
    return f;
  }
  Array2D Array(size_t rows, size_t cols) {
    Array2D a(rows, cols);
    for (double& v : a.data()) v = F32();
    return a;
  }
  bool done() const { return pos_ == buf_.size(); }

 private:
  const char* Take(size_t n) {
    if (pos_ + n > buf_.size()) {
      throw ParseError(0, path_ + ": truncated example cache");
    }
    const char* p = buf_.data() + pos_;
    pos_ += n;
    return p;
  }

  const std::vector<char>& buf_;
  const std::string& path_;
  size_t pos_ = 0;
};

void CheckShape(const Array2D& a, const Array2D& ref, const char* what) {
  if (a.rows() != ref.rows() || a.cols() != ref.cols()) {
    Fail(ErrorCode::kShapeMismatch,
         std::string("example ") + what + " shape differs from the input");
  }
}

}  // namespace

void SaveExample(const TrainingExample& ex, const std::string& path) {
  CheckShape(ex.dry_target_logmag, ex.input_logmag, "dry target");
  std::vector<char> buf;
  buf.insert(buf.end(), kMagic, kMagic + 4);
  PutU32(buf, kCacheVersion);
  for (const Array2D* a :
       {&ex.input_logmag, &ex.rir_target_mag, &ex.reverb_target_mag}) {
    PutU32(buf, static_cast<uint32_t>(a->rows()));
    PutU32(buf, static_cast<uint32_t>(a->cols()));
  }
  PutArray(buf, ex.input_logmag);
  PutArray(buf, ex.dry_target_logmag);
  PutArray(buf, ex.rir_target_mag);
  PutArray(buf, ex.reverb_target_mag);
  for (double s : {ex.input_scale, ex.dry_scale, ex.rir_scale, ex.reverb_scale}) {
    PutF32(buf, s);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIoFailure, "cannot write " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) Fail(ErrorCode::kIoFailure, "write failed: " + path);
}

TrainingExample LoadExample(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIoFailure, "cannot open " + path);
  const std::vector<char> buf((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
  if (buf.size() < 8 || std::memcmp(buf.data(), kMagic, 4) != 0) {
    throw ParseError(0, path + ": not an example cache (bad magic)");
  }
  Reader r(buf, path);
  r.U32();
  const uint32_t version = r.U32();
  if (version != kCacheVersion) {
    Fail(ErrorCode::kVersionMismatch,
         path + ": cache version " + std::to_string(version));
  }
  std::array<uint32_t, 6> dims;
  for (auto& d : dims) d = r.U32();
  TrainingExample ex;
  ex.input_logmag = r.Array(dims[0], dims[1]);
  ex.dry_target_logmag = r.Array(dims[0], dims[1]);
  ex.rir_target_mag = r.Array(dims[2], dims[3]);
  ex.reverb_target_mag = r.Array(dims[4], dims[5]);
  ex.input_scale = r.F32();
  ex.dry_scale = r.F32();
  ex.rir_scale = r.F32();
  ex.reverb_scale = r.F32();
  if (!r.done()) throw ParseError(0, path + ": trailing bytes in example cache");
  return ex;
}

TrainingExample RoundToStorage(const TrainingExample& ex) {
  auto round = [](double v) { return static_cast<double>(static_cast<float>(v)); };
  TrainingExample out = ex;
  for (Array2D* a : {&out.input_logmag, &out.dry_target_logmag,
                     &out.rir_target_mag, &out.reverb_target_mag}) {
    for (double& v : a->data()) v = round(v);
  }
  for (double* s : {&out.input_scale, &out.dry_scale, &out.rir_scale,
                    &out.reverb_scale}) {
    *s = round(*s);
  }
  return out;
}

}  // namespace dereverb::corpus
