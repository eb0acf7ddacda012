// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/nn/ops.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "dereverb/common/error.h"

namespace dereverb::nn {
namespace {

Tape& SameTape(Var a, Var b) {
  if (!a.valid() || !b.valid() || a.tape != b.tape) {
    Fail(ErrorCode::kInvalidArgument, "operands are not on the same tape");
  }
  return *a.tape;
}

void CheckSameShape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    Fail(ErrorCode::kShapeMismatch, std::string(op) + ": " +
                                        ShapeString(a.shape()) + " vs " +
                                        ShapeString(b.shape()));
  }
}

void CheckRank(const Tensor& t, size_t rank, const char* op) {
  if (t.rank() != rank) {
    Fail(ErrorCode::kShapeMismatch, std::string(op) + ": expected rank " +
                                        std::to_string(rank) + ", got " +
                                        ShapeString(t.shape()));
  }
}

// y = f(x) elementwise; `deriv(x, y)` is dy/dx.
template <typename Fwd, typename Deriv>
Var Unary(Var x, Fwd fwd, Deriv deriv) {
  const Tensor& xv = x.value();
  Tensor y(xv.shape());
  for (size_t i = 0; i < y.size(); ++i) y[i] = fwd(xv[i]);
  const int xid = x.id;
  return x.tape->Record(
      std::move(y), {xid}, [xid, deriv](Tape& t, const Tensor& g,
                                        const Tensor& out) {
        Tensor* gx = t.grad_slot(xid);
        const Tensor& xs = t.value(xid);
        for (size_t i = 0; i < g.size(); ++i) {
          (*gx)[i] += g[i] * deriv(xs[i], out[i]);
        }
      });
}

// c = a * b for row-major a [n x k], b [k x m], accumulating into c.
void GemmAcc(const double* a, const double* b, double* c, size_t n, size_t k,
             size_t m) {
  for (size_t i = 0; i < n; ++i) {
    double* ci = c + i * m;
    for (size_t p = 0; p < k; ++p) {
      const double av = a[i * k + p];
      if (av == 0.0) continue;
      const double* bp = b + p * m;
      for (size_t j = 0; j < m; ++j) ci[j] += av * bp[j];
    }
  }
}

}  // namespace

Var Add(Var a, Var b) {
  Tape& tape = SameTape(a, b);
  CheckSameShape(a.value(), b.value(), "Add");
  Tensor y = a.value();
  const Tensor& bv = b.value();
  for (size_t i = 0; i < y.size(); ++i) y[i] += bv[i];
  const int ai = a.id, bi = b.id;
  return tape.Record(std::move(y), {ai, bi},
                     [ai, bi](Tape& t, const Tensor& g, const Tensor&) {
                       for (int id : {ai, bi}) {
                         if (Tensor* s = t.grad_slot(id)) {
                           for (size_t i = 0; i < g.size(); ++i) (*s)[i] += g[i];
                         }
                       }
                     });
}

Var Sub(Var a, Var b) {
  Tape& tape = SameTape(a, b);
  CheckSameShape(a.value(), b.value(), "Sub");
  Tensor y = a.value();
  const Tensor& bv = b.value();
  for (size_t i = 0; i < y.size(); ++i) y[i] -= bv[i];
  const int ai = a.id, bi = b.id;
  return tape.Record(std::move(y), {ai, bi},
                     [ai, bi](Tape& t, const Tensor& g, const Tensor&) {
                       if (Tensor* s = t.grad_slot(ai)) {
                         for (size_t i = 0; i < g.size(); ++i) (*s)[i] += g[i];
                       }
                       if (Tensor* s = t.grad_slot(bi)) {
                         for (size_t i = 0; i < g.size(); ++i) (*s)[i] -= g[i];
                       }
                     });
}

Var Mul(Var a, Var b) {
  Tape& tape = SameTape(a, b);
  CheckSameShape(a.value(), b.value(), "Mul");
  Tensor y = a.value();
  const Tensor& bv = b.value();
  for (size_t i = 0; i < y.size(); ++i) y[i] *= bv[i];
  const int ai = a.id, bi = b.id;
  return tape.Record(std::move(y), {ai, bi},
                     [ai, bi](Tape& t, const Tensor& g, const Tensor&) {
                       const Tensor& av = t.value(ai);
                       const Tensor& bv = t.value(bi);
                       if (Tensor* s = t.grad_slot(ai)) {
                         for (size_t i = 0; i < g.size(); ++i) {
                           (*s)[i] += g[i] * bv[i];
                         }
                       }
                       if (Tensor* s = t.grad_slot(bi)) {
                         for (size_t i = 0; i < g.size(); ++i) {
                           (*s)[i] += g[i] * av[i];
                         }
                       }
                     });
}

Var Scale(Var a, double c) {
  return Unary(
      a, [c](double x) { return c * x; },
      [c](double, double) { return c; });
}

Var Sigmoid(Var x) {
  return Unary(
      x,
      [](double v) {
        if (v >= 0) return 1.0 / (1.0 + std::exp(-v));
        const double e = std::exp(v);
        return e / (1.0 + e);
      },
      [](double, double y) { return y * (1.0 - y); });
}

Var Tanh(Var x) {
  return Unary(
      x, [](double v) { return std::tanh(v); },
      [](double, double y) { return 1.0 - y * y; });
}

Var Exp(Var x) {
  return Unary(
      x, [](double v) { return std::exp(v); },
      [](double, double y) { return y; });
}

Var Elu(Var x) {
  return Unary(
      x, [](double v) { return v > 0.0 ? v : std::expm1(v); },
      [](double v, double y) { return v > 0.0 ? 1.0 : y + 1.0; });
}

Var Relu(Var x) {
  return Unary(
      x, [](double v) { return v > 0.0 ? v : 0.0; },
      [](double v, double) { return v > 0.0 ? 1.0 : 0.0; });
}

Var AddBias(Var x, Var bias) {
  Tape& tape = SameTape(x, bias);
  const Tensor& xv = x.value();
  const Tensor& bv = bias.value();
  if (bv.rank() != 1 || xv.rank() == 0 || xv.shape().back() != bv.dim(0)) {
    Fail(ErrorCode::kShapeMismatch, "AddBias: " + ShapeString(xv.shape()) +
                                        " + " + ShapeString(bv.shape()));
  }
  const size_t c = bv.size();
  Tensor y = xv;
  for (size_t i = 0; i < y.size(); ++i) y[i] += bv[i % c];
  const int xi = x.id, bi = bias.id;
  return tape.Record(std::move(y), {xi, bi},
                     [xi, bi, c](Tape& t, const Tensor& g, const Tensor&) {
                       if (Tensor* s = t.grad_slot(xi)) {
                         for (size_t i = 0; i < g.size(); ++i) (*s)[i] += g[i];
                       }
                       if (Tensor* s = t.grad_slot(bi)) {
                         for (size_t i = 0; i < g.size(); ++i) {
                           (*s)[i % c] += g[i];
                         }
                       }
                     });
}

Var MatMul(Var a, Var b) {
  Tape& tape = SameTape(a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  CheckRank(av, 2, "MatMul");
  CheckRank(bv, 2, "MatMul");
  const size_t n = av.dim(0), k = av.dim(1), m = bv.dim(1);
  if (bv.dim(0) != k) {
    Fail(ErrorCode::kShapeMismatch, "MatMul: " + ShapeString(av.shape()) +
                                        " x " + ShapeString(bv.shape()));
  }
  Tensor y({n, m});
  GemmAcc(av.data(), bv.data(), y.data(), n, k, m);
  const int ai = a.id, bi = b.id;
  return tape.Record(
      std::move(y), {ai, bi},
      [ai, bi, n, k, m](Tape& t, const Tensor& g, const Tensor&) {
        const Tensor& av = t.value(ai);
        const Tensor& bv = t.value(bi);
        if (Tensor* ga = t.grad_slot(ai)) {
          // ga[i, p] += sum_j g[i, j] * b[p, j]
          for (size_t i = 0; i < n; ++i) {
            const double* gi = g.data() + i * m;
            for (size_t p = 0; p < k; ++p) {
              const double* bp = bv.data() + p * m;
              double acc = 0.0;
              for (size_t j = 0; j < m; ++j) acc += gi[j] * bp[j];
              (*ga)[i * k + p] += acc;
            }
          }
        }
        if (Tensor* gb = t.grad_slot(bi)) {
          // gb[p, j] += sum_i a[i, p] * g[i, j]
          for (size_t i = 0; i < n; ++i) {
            const double* gi = g.data() + i * m;
            for (size_t p = 0; p < k; ++p) {
              const double ap = av[i * k + p];
              if (ap == 0.0) continue;
              double* row = gb->data() + p * m;
              for (size_t j = 0; j < m; ++j) row[j] += ap * gi[j];
            }
          }
        }
      });
}

Var Linear(Var x, Var w, Var b) { return AddBias(MatMul(x, w), b); }

Var Sum(Var x) {
  double s = 0.0;
  for (double v : x.value().values()) s += v;
  const int xi = x.id;
  return x.tape->Record(Tensor::Scalar(s), {xi},
                        [xi](Tape& t, const Tensor& g, const Tensor&) {
                          Tensor* s = t.grad_slot(xi);
                          for (double& v : s->values()) v += g[0];
                        });
}

Var Mse(Var a, Var b) {
  Tape& tape = SameTape(a, b);
  CheckSameShape(a.value(), b.value(), "Mse");
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  const double n = static_cast<double>(av.size());
  double acc = 0.0;
  for (size_t i = 0; i < av.size(); ++i) {
    const double d = av[i] - bv[i];
    acc += d * d;
  }
  const int ai = a.id, bi = b.id;
  return tape.Record(
      Tensor::Scalar(acc / n), {ai, bi},
      [ai, bi, n](Tape& t, const Tensor& g, const Tensor&) {
        const Tensor& av = t.value(ai);
        const Tensor& bv = t.value(bi);
        const double c = 2.0 * g[0] / n;
        Tensor* ga = t.grad_slot(ai);
        Tensor* gb = t.grad_slot(bi);
        for (size_t i = 0; i < av.size(); ++i) {
          const double d = c * (av[i] - bv[i]);
          if (ga) (*ga)[i] += d;
          if (gb) (*gb)[i] -= d;
        }
      });
}

Var Reshape(Var x, Shape shape) {
  Tensor y = x.value().Reshaped(std::move(shape));
  const int xi = x.id;
  return x.tape->Record(std::move(y), {xi},
                        [xi](Tape& t, const Tensor& g, const Tensor&) {
                          Tensor* s = t.grad_slot(xi);
                          for (size_t i = 0; i < g.size(); ++i) (*s)[i] += g[i];
                        });
}

Var Transpose(Var x) {
  const Tensor& xv = x.value();
  CheckRank(xv, 2, "Transpose");
  const size_t n = xv.dim(0), m = xv.dim(1);
  Tensor y({m, n});
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) y[j * n + i] = xv[i * m + j];
  }
  const int xi = x.id;
  return x.tape->Record(std::move(y), {xi},
                        [xi, n, m](Tape& t, const Tensor& g, const Tensor&) {
                          Tensor* s = t.grad_slot(xi);
                          for (size_t i = 0; i < n; ++i) {
                            for (size_t j = 0; j < m; ++j) {
                              (*s)[i * m + j] += g[j * n + i];
                            }
                          }
                        });
}

Var ConcatLast(std::span<const Var> parts) {
  if (parts.empty()) Fail(ErrorCode::kInvalidArgument, "ConcatLast: no parts");
  Tape& tape = *parts[0].tape;
  Shape lead = parts[0].shape();
  if (lead.empty()) Fail(ErrorCode::kShapeMismatch, "ConcatLast: rank 0");
  lead.pop_back();
  const size_t rows = NumElements(lead);
  std::vector<size_t> widths;
  std::vector<int> ids;
  size_t total = 0;
  for (const Var& p : parts) {
    SameTape(parts[0], p);
    Shape s = p.shape();
    const size_t w = s.empty() ? 0 : s.back();
    if (!s.empty()) s.pop_back();
    if (s != lead) {
      Fail(ErrorCode::kShapeMismatch,
           "ConcatLast: leading extents differ: " + ShapeString(p.shape()));
    }
    widths.push_back(w);
    ids.push_back(p.id);
    total += w;
  }
  Shape out_shape = lead;
  out_shape.push_back(total);
  Tensor y(out_shape);
  size_t offset = 0;
  for (size_t k = 0; k < parts.size(); ++k) {
    const Tensor& pv = parts[k].value();
    for (size_t r = 0; r < rows; ++r) {
      std::copy_n(pv.data() + r * widths[k], widths[k],
                  y.data() + r * total + offset);
    }
    offset += widths[k];
  }
  return tape.Record(
      std::move(y), ids,
      [ids, widths, rows, total](Tape& t, const Tensor& g, const Tensor&) {
        size_t offset = 0;
        for (size_t k = 0; k < ids.size(); ++k) {
          if (Tensor* s = t.grad_slot(ids[k])) {
            for (size_t r = 0; r < rows; ++r) {
              for (size_t c = 0; c < widths[k]; ++c) {
                (*s)[r * widths[k] + c] += g[r * total + offset + c];
              }
            }
          }
          offset += widths[k];
        }
      });
}

Var ConcatLast(Var a, Var b) {
  const Var parts[] = {a, b};
  return ConcatLast(parts);
}

Var Row(Var x, size_t i) {
  const Tensor& xv = x.value();
  CheckRank(xv, 2, "Row");
  const size_t m = xv.dim(1);
  if (i >= xv.dim(0)) Fail(ErrorCode::kShapeMismatch, "Row: index out of range");
  Tensor y({1, m});
  std::copy_n(xv.data() + i * m, m, y.data());
  const int xi = x.id;
  return x.tape->Record(std::move(y), {xi},
                        [xi, i, m](Tape& t, const Tensor& g, const Tensor&) {
                          Tensor* s = t.grad_slot(xi);
                          for (size_t j = 0; j < m; ++j) (*s)[i * m + j] += g[j];
                        });
}

Var SliceCols(Var x, size_t begin, size_t end) {
  const Tensor& xv = x.value();
  CheckRank(xv, 2, "SliceCols");
  const size_t n = xv.dim(0), m = xv.dim(1);
  if (begin >= end || end > m) {
    Fail(ErrorCode::kShapeMismatch, "SliceCols: bad range");
  }
  const size_t w = end - begin;
  Tensor y({n, w});
  for (size_t r = 0; r < n; ++r) {
    std::copy_n(xv.data() + r * m + begin, w, y.data() + r * w);
  }
  const int xi = x.id;
  return x.tape->Record(
      std::move(y), {xi},
      [xi, n, m, w, begin](Tape& t, const Tensor& g, const Tensor&) {
        Tensor* s = t.grad_slot(xi);
        for (size_t r = 0; r < n; ++r) {
          for (size_t c = 0; c < w; ++c) (*s)[r * m + begin + c] += g[r * w + c];
        }
      });
}

Var StackRows(std::span<const Var> rows) {
  if (rows.empty()) Fail(ErrorCode::kInvalidArgument, "StackRows: no rows");
  Tape& tape = *rows[0].tape;
  const size_t m = rows[0].value().size();
  std::vector<int> ids;
  Tensor y({rows.size(), m});
  for (size_t r = 0; r < rows.size(); ++r) {
    SameTape(rows[0], rows[r]);
    const Tensor& v = rows[r].value();
    if (v.rank() != 2 || v.dim(0) != 1 || v.dim(1) != m) {
      Fail(ErrorCode::kShapeMismatch, "StackRows: expected [1x" +
                                          std::to_string(m) + "], got " +
                                          ShapeString(v.shape()));
    }
    std::copy_n(v.data(), m, y.data() + r * m);
    ids.push_back(rows[r].id);
  }
  return tape.Record(std::move(y), ids,
                     [ids, m](Tape& t, const Tensor& g, const Tensor&) {
                       for (size_t r = 0; r < ids.size(); ++r) {
                         if (Tensor* s = t.grad_slot(ids[r])) {
                           for (size_t j = 0; j < m; ++j) {
                             (*s)[j] += g[r * m + j];
                           }
                         }
                       }
                     });
}

Var PadTF(Var x, size_t t_before, size_t t_after, size_t f_before,
          size_t f_after) {
  const Tensor& xv = x.value();
  CheckRank(xv, 3, "PadTF");
  const size_t T = xv.dim(0), F = xv.dim(1), C = xv.dim(2);
  const size_t T2 = T + t_before + t_after, F2 = F + f_before + f_after;
  Tensor y({T2, F2, C});
  for (size_t t = 0; t < T; ++t) {
    for (size_t f = 0; f < F; ++f) {
      std::copy_n(xv.data() + (t * F + f) * C, C,
                  y.data() + ((t + t_before) * F2 + f + f_before) * C);
    }
  }
  const int xi = x.id;
  return x.tape->Record(
      std::move(y), {xi},
      [xi, T, F, C, F2, t_before, f_before](Tape& t, const Tensor& g,
                                            const Tensor&) {
        Tensor* s = t.grad_slot(xi);
        for (size_t tt = 0; tt < T; ++tt) {
          for (size_t f = 0; f < F; ++f) {
            const double* src =
                g.data() + ((tt + t_before) * F2 + f + f_before) * C;
            double* dst = s->data() + (tt * F + f) * C;
            for (size_t c = 0; c < C; ++c) dst[c] += src[c];
          }
        }
      });
}

Var CropTF(Var x, size_t t_begin, size_t t_len, size_t f_begin, size_t f_len) {
  const Tensor& xv = x.value();
  CheckRank(xv, 3, "CropTF");
  const size_t F = xv.dim(1), C = xv.dim(2);
  if (t_begin + t_len > xv.dim(0) || f_begin + f_len > F) {
    Fail(ErrorCode::kShapeMismatch, "CropTF: window exceeds " +
                                        ShapeString(xv.shape()));
  }
  Tensor y({t_len, f_len, C});
  for (size_t t = 0; t < t_len; ++t) {
    for (size_t f = 0; f < f_len; ++f) {
      std::copy_n(xv.data() + ((t + t_begin) * F + f + f_begin) * C, C,
                  y.data() + (t * f_len + f) * C);
    }
  }
  const int xi = x.id;
  return x.tape->Record(
      std::move(y), {xi},
      [xi, F, C, t_begin, t_len, f_begin, f_len](Tape& t, const Tensor& g,
                                                 const Tensor&) {
        Tensor* s = t.grad_slot(xi);
        for (size_t tt = 0; tt < t_len; ++tt) {
          for (size_t f = 0; f < f_len; ++f) {
            const double* src = g.data() + (tt * f_len + f) * C;
            double* dst = s->data() + ((tt + t_begin) * F + f + f_begin) * C;
            for (size_t c = 0; c < C; ++c) dst[c] += src[c];
          }
        }
      });
}

Var CausalColumnConv(Var kernel, Var signal) {
  Tape& tape = SameTape(kernel, signal);
  const Tensor& kv = kernel.value();
  const Tensor& sv = signal.value();
  CheckRank(kv, 2, "CausalColumnConv");
  CheckRank(sv, 2, "CausalColumnConv");
  const size_t K = kv.dim(0), T = sv.dim(0), F = sv.dim(1);
  if (kv.dim(1) != F) {
    Fail(ErrorCode::kShapeMismatch, "CausalColumnConv: kernel " +
                                        ShapeString(kv.shape()) + " vs signal " +
                                        ShapeString(sv.shape()));
  }
  Tensor y({T, F});
  for (size_t t = 0; t < T; ++t) {
    double* out = y.data() + t * F;
    const size_t taps = std::min(t + 1, K);
    for (size_t tau = 0; tau < taps; ++tau) {
      const double* k = kv.data() + tau * F;
      const double* s = sv.data() + (t - tau) * F;
      for (size_t f = 0; f < F; ++f) out[f] += k[f] * s[f];
    }
  }
  const int ki = kernel.id, si = signal.id;
  return tape.Record(
      std::move(y), {ki, si},
      [ki, si, K, T, F](Tape& t, const Tensor& g, const Tensor&) {
        const Tensor& kv = t.value(ki);
        const Tensor& sv = t.value(si);
        Tensor* gk = t.grad_slot(ki);
        Tensor* gs = t.grad_slot(si);
        for (size_t tt = 0; tt < T; ++tt) {
          const double* go = g.data() + tt * F;
          const size_t taps = std::min(tt + 1, K);
          for (size_t tau = 0; tau < taps; ++tau) {
            const size_t src = (tt - tau) * F;
            if (gk) {
              double* dk = gk->data() + tau * F;
              for (size_t f = 0; f < F; ++f) dk[f] += go[f] * sv[src + f];
            }
            if (gs) {
              double* ds = gs->data() + src;
              const double* k = kv.data() + tau * F;
              for (size_t f = 0; f < F; ++f) ds[f] += go[f] * k[f];
            }
          }
        }
      });
}

}  // namespace dereverb::nn
