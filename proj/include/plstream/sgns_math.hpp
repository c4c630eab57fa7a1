#ifndef PLSTREAM_SGNS_MATH_HPP
#define PLSTREAM_SGNS_MATH_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace pls::sgns {

template <class S>
S sigmoid(S x) {
  return S(1) / (S(1) + std::exp(-x));
}

template <class S>
S dot(std::span<const S> a, std::span<const S> b) {
  S acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// Negative log-likelihood of one (center, positive context, negatives)
/// triple: -log s(u.v+) - sum_i log s(-u.v_i).
template <class S>
S pair_loss(std::span<const S> center, std::span<const S> positive,
            std::span<const std::span<const S>> negatives) {
  S loss = -std::log(sigmoid(dot(center, positive)));
  for (const auto& neg : negatives) loss += -std::log(sigmoid(-dot(center, neg)));
  return loss;
}

/// Analytic gradients of pair_loss w.r.t. every parameter.
/// grad_center has center.size() entries; grad_contexts holds the positive
/// context gradient first, then one per negative.
template <class S>
void pair_gradients(std::span<const S> center, std::span<const S> positive,
                    std::span<const std::span<const S>> negatives,
                    std::vector<S>& grad_center,
                    std::vector<std::vector<S>>& grad_contexts) {
  const std::size_t d = center.size();
  grad_center.assign(d, S(0));
  grad_contexts.assign(negatives.size() + 1, std::vector<S>(d, S(0)));

  const S gp = sigmoid(dot(center, positive)) - S(1); // dL/d(u.v+)
  for (std::size_t i = 0; i < d; ++i) {
    grad_center[i] += gp * positive[i];
    grad_contexts[0][i] = gp * center[i];
  }
  for (std::size_t n = 0; n < negatives.size(); ++n) {
    const S gn = sigmoid(dot(center, negatives[n])); // dL/d(u.v-)
    for (std::size_t i = 0; i < d; ++i) {
      grad_center[i] += gn * negatives[n][i];
      grad_contexts[n + 1][i] = gn * center[i];
    }
  }
}

/// One SGD step on a (center, context, negatives) triple, in place.
/// Returns the pre-update loss.
template <class S>
S pair_update(std::span<S> center, std::span<S> positive,
              std::span<std::span<S>> negatives, S lr) {
  const std::size_t d = center.size();
  thread_local std::vector<S> center_grad;
  center_grad.assign(d, S(0));

  const S sp = sigmoid(dot<S>(center, positive));
  const S gp = (S(1) - sp) * lr;
  S loss = -std::log(sp);
  for (std::size_t i = 0; i < d; ++i) {
    center_grad[i] += gp * positive[i];
    positive[i] += gp * center[i];
  }
  for (auto& neg : negatives) {
    const S sn = sigmoid(dot<S>(center, neg));
    loss += -std::log(S(1) - sn);
    const S gn = -sn * lr;
    for (std::size_t i = 0; i < d; ++i) {
      center_grad[i] += gn * neg[i];
      neg[i] += gn * center[i];
    }
  }
  for (std::size_t i = 0; i < d; ++i) center[i] += center_grad[i];
  return loss;
}

} // namespace pls::sgns

#endif
