// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

// Convolution layers over [T x F x C] activations. Channels are the
// innermost axis, so every inner loop runs over a contiguous channel row.

#include <algorithm>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dereverb/common/error.h"
#include "dereverb/nn/ops.h"

namespace dereverb::nn {
namespace {

struct AxisGeometry {
  size_t in = 0;
  size_t out = 0;
  size_t pad_before = 0;
};

AxisGeometry ResolveAxis(size_t in, size_t k, size_t stride, Padding padding,
                         const char* axis) {
  if (stride == 0) Fail(ErrorCode::kInvalidArgument, "stride must be >= 1");
  AxisGeometry g;
  g.in = in;
  if (padding == Padding::kValid) {
    if (k > in) {
      Fail(ErrorCode::kShapeMismatch, std::string("Conv2d: kernel extent ") +
                                          std::to_string(k) + " exceeds " +
                                          axis + " extent " +
                                          std::to_string(in));
    }
    g.out = (in - k) / stride + 1;
  } else {
    g.out = (in + stride - 1) / stride;
    const size_t needed = (g.out - 1) * stride + k;
    g.pad_before = needed > in ? (needed - in) / 2 : 0;
  }
  return g;
}

void CheckKernel(const Tensor& x, const Tensor& k, size_t cin_axis,
                 const char* op) {
  if (x.rank() != 3 || k.rank() != 4 || k.dim(cin_axis) != x.dim(2)) {
    Fail(ErrorCode::kShapeMismatch, std::string(op) + ": input " +
                                        ShapeString(x.shape()) + ", kernel " +
                                        ShapeString(k.shape()));
  }
}

void CheckBias(const Var& bias, size_t channels, const char* op) {
  if (!bias.valid()) return;
  const Tensor& b = bias.value();
  if (b.rank() != 1 || b.dim(0) != channels) {
    Fail(ErrorCode::kShapeMismatch, std::string(op) + ": bias " +
                                        ShapeString(b.shape()) + " for " +
                                        std::to_string(channels) + " channels");
  }
}

// Row-major matrix views. Activations at a fixed time index are a
// [F x C] matrix; a frequency stride s is an outer stride of s*C.
using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>;
using ConstView = Eigen::Map<const RowMat, 0, Eigen::OuterStride<>>;
using View = Eigen::Map<RowMat, 0, Eigen::OuterStride<>>;

ConstView CView(const double* p, size_t rows, size_t cols, size_t stride) {
  return ConstView(p, static_cast<Eigen::Index>(rows),
                   static_cast<Eigen::Index>(cols),
                   Eigen::OuterStride<>(static_cast<Eigen::Index>(stride)));
}

View MView(double* p, size_t rows, size_t cols, size_t stride) {
  return View(p, static_cast<Eigen::Index>(rows),
              static_cast<Eigen::Index>(cols),
              Eigen::OuterStride<>(static_cast<Eigen::Index>(stride)));
}

// Output positions [begin, end) along one axis whose input index
// o*stride + tap - pad lands inside [0, in).
struct Span {
  size_t begin = 0;
  size_t end = 0;
};

Span ValidOutputs(const AxisGeometry& g, size_t stride, size_t tap) {
  const long pad = static_cast<long>(g.pad_before);
  const long s = static_cast<long>(stride);
  const long first = static_cast<long>(tap) - pad;  // input index at o = 0
  long lo = first >= 0 ? 0 : (-first + s - 1) / s;
  long hi_excl = static_cast<long>(g.in) - first <= 0
                     ? 0
                     : (static_cast<long>(g.in) - 1 - first) / s + 1;
  hi_excl = std::min<long>(hi_excl, static_cast<long>(g.out));
  if (hi_excl < lo) hi_excl = lo;
  return {static_cast<size_t>(lo), static_cast<size_t>(hi_excl)};
}

}  // namespace

Var Conv2d(Var input, Var kernel, Var bias, const Conv2dOptions& options) {
  if (!input.valid() || !kernel.valid() || input.tape != kernel.tape) {
    Fail(ErrorCode::kInvalidArgument, "Conv2d: operands on different tapes");
  }
  Tape& tape = *input.tape;
  const Tensor& x = input.value();
  const Tensor& k = kernel.value();
  CheckKernel(x, k, 2, "Conv2d");
  const size_t kt = k.dim(0), kf = k.dim(1), cin = k.dim(2), cout = k.dim(3);
  CheckBias(bias, cout, "Conv2d");
  const AxisGeometry gt =
      ResolveAxis(x.dim(0), kt, options.stride_t, options.padding, "time");
  const AxisGeometry gf =
      ResolveAxis(x.dim(1), kf, options.stride_f, options.padding, "frequency");
  const size_t st = options.stride_t, sf = options.stride_f;

  // For each output frame and kernel tap (i, j) the contribution is one
  // matrix product: [fo-range x Cin] * [Cin x Cout].
  auto for_each_block = [=](auto&& fn) {
    struct Block {
      size_t xoff, yrow, koff, rows;
    };
    std::vector<Block> whole;
    for (size_t i = 0; i < kt; ++i) {
      const Span ts = ValidOutputs(gt, st, i);
      for (size_t j = 0; j < kf; ++j) {
        const Span fs = ValidOutputs(gf, sf, j);
        if (fs.begin >= fs.end) continue;
        const size_t fi = fs.begin * sf + j - gf.pad_before;
        if (st == 1 && sf == 1 && fs.begin == 0 && fs.end == gf.out &&
            gf.out == gf.in) {
          // Whole frames line up: the tap is one product over a contiguous
          // run of output rows.
          const size_t ti = ts.begin + i - gt.pad_before;
          whole.push_back({ti * gf.in * cin, ts.begin * gf.out,
                           (i * kf + j) * cin * cout,
                           (ts.end - ts.begin) * gf.out});
          continue;
        }
        for (size_t to = ts.begin; to < ts.end; ++to) {
          const size_t ti = to * st + i - gt.pad_before;
          fn((ti * gf.in + fi) * cin, (to * gf.out + fs.begin) * cout,
             (i * kf + j) * cin * cout, fs.end - fs.begin);
        }
      }
    }
    // Output rows in cache-sized chunks, every tap per chunk, so each
    // chunk is accumulated while it stays resident.
    constexpr size_t kChunkRows = 256;
    const size_t total_rows = gt.out * gf.out;
    for (size_t lo = 0; !whole.empty() && lo < total_rows; lo += kChunkRows) {
      const size_t hi = std::min(lo + kChunkRows, total_rows);
      for (const Block& b : whole) {
        const size_t from = std::max(lo, b.yrow);
        const size_t to = std::min(hi, b.yrow + b.rows);
        if (from >= to) continue;
        fn(b.xoff + (from - b.yrow) * cin, from * cout, b.koff, to - from);
      }
    }
  };

  Tensor y({gt.out, gf.out, cout});
  if (bias.valid()) {
    const double* b = bias.value().data();
    for (size_t p = 0; p < gt.out * gf.out; ++p) {
      std::copy(b, b + cout, y.data() + p * cout);
    }
  }
  for_each_block([&](size_t xoff, size_t yoff, size_t koff, size_t rows) {
    MView(y.data() + yoff, rows, cout, cout).noalias() +=
        CView(x.data() + xoff, rows, cin, sf * cin) *
        CView(k.data() + koff, cin, cout, cout);
  });

  std::vector<int> ids = {input.id, kernel.id};
  if (bias.valid()) ids.push_back(bias.id);
  const int xi = input.id, ki = kernel.id, bi = bias.valid() ? bias.id : -1;
  return tape.Record(
      std::move(y), ids,
      [xi, ki, bi, cin, cout, sf, for_each_block](Tape& t, const Tensor& g,
                                                  const Tensor&) {
        const double* xd = t.value(xi).data();
        const double* kd = t.value(ki).data();
        Tensor* gx = t.grad_slot(xi);
        Tensor* gk = t.grad_slot(ki);
        if (bi >= 0) {
          if (Tensor* gb = t.grad_slot(bi)) {
            MView(gb->data(), 1, cout, cout).noalias() +=
                CView(g.data(), g.size() / cout, cout, cout).colwise().sum();
          }
        }
        for_each_block([&](size_t xoff, size_t yoff, size_t koff, size_t rows) {
          const ConstView go = CView(g.data() + yoff, rows, cout, cout);
          if (gx) {
            MView(gx->data() + xoff, rows, cin, sf * cin).noalias() +=
                go * CView(kd + koff, cin, cout, cout).transpose();
          }
          if (gk) {
            MView(gk->data() + koff, cin, cout, cout).noalias() +=
                CView(xd + xoff, rows, cin, sf * cin).transpose() * go;
          }
        });
      });
}

Var Conv2dTransposed(Var input, Var kernel, Var bias, size_t stride_t,
                     size_t stride_f) {
  if (!input.valid() || !kernel.valid() || input.tape != kernel.tape) {
    Fail(ErrorCode::kInvalidArgument,
         "Conv2dTransposed: operands on different tapes");
  }
  if (stride_t == 0 || stride_f == 0) {
    Fail(ErrorCode::kInvalidArgument, "stride must be >= 1");
  }
  Tape& tape = *input.tape;
  const Tensor& x = input.value();
  const Tensor& k = kernel.value();
  // kernel [kT x kF x Cin x Cout]: maps input channels (Cout) back to Cin.
  CheckKernel(x, k, 3, "Conv2dTransposed");
  const size_t kt = k.dim(0), kf = k.dim(1), co_n = k.dim(2), ci_n = k.dim(3);
  CheckBias(bias, co_n, "Conv2dTransposed");
  const size_t tin = x.dim(0), fin = x.dim(1);
  const size_t tout = (tin - 1) * stride_t + kt;
  const size_t fout = (fin - 1) * stride_f + kf;

  // Input frame t and tap (i, j) scatter [F x Cout] * [Cout x Cin]^T into
  // output frame t*stride_t + i, bins j, j + stride_f, ...
  auto for_each_block = [=](auto&& fn) {
    for (size_t t = 0; t < tin; ++t) {
      for (size_t i = 0; i < kt; ++i) {
        for (size_t j = 0; j < kf; ++j) {
          fn(t * fin * ci_n, ((t * stride_t + i) * fout + j) * co_n,
             (i * kf + j) * co_n * ci_n);
        }
      }
    }
  };

  Tensor y({tout, fout, co_n});
  if (bias.valid()) {
    const double* b = bias.value().data();
    for (size_t p = 0; p < tout * fout; ++p) {
      std::copy(b, b + co_n, y.data() + p * co_n);
    }
  }
  for_each_block([&](size_t xoff, size_t yoff, size_t koff) {
    MView(y.data() + yoff, fin, co_n, stride_f * co_n).noalias() +=
        CView(x.data() + xoff, fin, ci_n, ci_n) *
        CView(k.data() + koff, co_n, ci_n, ci_n).transpose();
  });

  std::vector<int> ids = {input.id, kernel.id};
  if (bias.valid()) ids.push_back(bias.id);
  const int xi = input.id, ki = kernel.id, bi = bias.valid() ? bias.id : -1;
  return tape.Record(
      std::move(y), ids,
      [xi, ki, bi, fin, co_n, ci_n, stride_f, for_each_block](
          Tape& t, const Tensor& g, const Tensor&) {
        const double* xd = t.value(xi).data();
        const double* kd = t.value(ki).data();
        Tensor* gx = t.grad_slot(xi);
        Tensor* gk = t.grad_slot(ki);
        if (bi >= 0) {
          if (Tensor* gb = t.grad_slot(bi)) {
            MView(gb->data(), 1, co_n, co_n).noalias() +=
                CView(g.data(), g.size() / co_n, co_n, co_n).colwise().sum();
          }
        }
        for_each_block([&](size_t xoff, size_t yoff, size_t koff) {
          const ConstView go =
              CView(g.data() + yoff, fin, co_n, stride_f * co_n);
          if (gx) {
            MView(gx->data() + xoff, fin, ci_n, ci_n).noalias() +=
                go * CView(kd + koff, co_n, ci_n, ci_n);
          }
          if (gk) {
            MView(gk->data() + koff, co_n, ci_n, ci_n).noalias() +=
                go.transpose() * CView(xd + xoff, fin, ci_n, ci_n);
          }
        });
      });
}

}  // namespace dereverb::nn
