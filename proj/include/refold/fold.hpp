#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>

#include "refold/error.hpp"
#include "refold/matrix.hpp"

namespace refold {

/// Element-wise folding maps. abs, sqr and cos_abs fold the axis once at the
/// origin; cos and sin fold it many times; tanh only squashes.
enum class FoldOp { abs, sqr, cos_abs, cos, sin, tanh };

inline constexpr std::array<FoldOp, 6> kAllFoldOps = {FoldOp::abs, FoldOp::sqr, FoldOp::cos_abs,
                                                      FoldOp::cos, FoldOp::sin, FoldOp::tanh};

inline constexpr std::string_view to_string(FoldOp op) noexcept {
  switch (op) {
    case FoldOp::abs: return "abs";
    case FoldOp::sqr: return "sqr";
    case FoldOp::cos_abs: return "cos_abs";
    case FoldOp::cos: return "cos";
    case FoldOp::sin: return "sin";
    case FoldOp::tanh: return "tanh";
  }
  return "abs";
}

inline FoldOp parse_fold_op(std::string_view name) {
  for (FoldOp op : kAllFoldOps) {
    if (name == to_string(op)) return op;
  }
  if (name == "cos-abs") return FoldOp::cos_abs;
  fail(ErrorKind::config, "unknown fold operation '" + std::string(name) +
                              "' (expected abs, sqr, cos_abs, cos, sin or tanh)");
}

inline double fold_value(FoldOp op, double x) noexcept {
  switch (op) {
    case FoldOp::abs: return std::fabs(x);
    case FoldOp::sqr: return x * x;
    // cos on the closed interval [-1, 1], abs outside; discontinuous at +-1.
    case FoldOp::cos_abs: return (x >= -1.0 && x <= 1.0) ? std::cos(x) : std::fabs(x);
    case FoldOp::cos: return std::cos(x);
    case FoldOp::sin: return std::sin(x);
    case FoldOp::tanh: return std::tanh(x);
  }
  return x;
}

inline void fold_in_place(FoldOp op, std::span<double> values) noexcept {
  for (double& v : values) v = fold_value(op, v);
}

inline Sample fold_apply(FoldOp op, std::span<const double> x) {
  Sample out(x.begin(), x.end());
  for (std::size_t d = 0; d < out.size(); ++d) {
    if (!std::isfinite(out[d])) {
      fail(ErrorKind::invalid_input, "fold input has a non-finite value at index " + std::to_string(d));
    }
    out[d] = fold_value(op, out[d]);
  }
  return out;
}

}  // namespace refold
