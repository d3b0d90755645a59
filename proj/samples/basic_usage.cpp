// Train on synthetic target data, then classify an inlier and a far outlier.

#include <iostream>

#include "refold/refold.hpp"

int main() {
  using namespace refold;

  const Matrix targets = synthetic_normal(500, 3, 7);
  const RefModel model = train_ref(targets);  // abs folding, J = 101

  const Sample inlier{0.1, -0.3, 0.2};
  const Sample outlier{6.0, -5.0, 7.0};
  for (const auto& y : {inlier, outlier}) {
    const auto p = classify(y, model);  // L1/D distance, T = 1
    std::cout << "score " << p.score << " -> " << to_string(p.label) << "\n";
  }

  std::cout << serialize_model(model.truncated(2));
  return 0;
}
