#include "csreg/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace csreg {

namespace {

double sign_nonzero(double x) { return x < 0.0 ? -1.0 : 1.0; }

std::vector<double> distinct_magnitudes_descending(const DenseVector& w) {
  std::vector<double> mags;
  mags.reserve(size_t(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    double m = std::abs(w(i));
    if (m > 0.0) mags.push_back(m);
  }
  std::sort(mags.begin(), mags.end(), std::greater<>());
  mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
  return mags;
}

QuantResult ternary_result(const DenseVector& w, double threshold) {
  QuantResult out;
  out.threshold = threshold;
  out.levels = DenseVector::Zero(w.size());
  double sum = 0.0;
  int count = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (std::abs(w(i)) >= threshold) {
      sum += std::abs(w(i));
      ++count;
    }
  }
  out.scale = count > 0 ? sum / double(count) : 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (std::abs(w(i)) >= threshold) out.levels(i) = out.scale * sign_nonzero(w(i));
  }
  out.objective = (w - out.levels).squaredNorm();
  return out;
}

}  // namespace

QuantResult binarize(const DenseVector& w) {
  if (w.size() == 0) throw std::invalid_argument("binarize: empty input");
  QuantResult out;
  out.scale = w.lpNorm<1>() / double(w.size());
  out.threshold = 0.0;
  out.levels.resize(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) out.levels(i) = out.scale * sign_nonzero(w(i));
  out.objective = (w - out.levels).squaredNorm();
  return out;
}

QuantResult ternarize(const DenseVector& w) {
  if (w.size() == 0) throw std::invalid_argument("ternarize: empty input");
  std::vector<double> mags = distinct_magnitudes_descending(w);
  if (mags.empty()) throw std::invalid_argument("ternarize: all-zero input");
  // ||w - levels||^2 = ||w||^2 - (sum of kept magnitudes)^2 / count, so the
  // best threshold maximizes that ratio. Scanning magnitudes in descending
  // order keeps the running sum and count incremental; strict improvement
  // keeps the first (largest) threshold on ties.
  std::vector<double> sorted_all;
  sorted_all.reserve(size_t(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) sorted_all.push_back(std::abs(w(i)));
  std::sort(sorted_all.begin(), sorted_all.end(), std::greater<>());

  double best_score = -1.0, best_threshold = mags.front();
  double running = 0.0;
  size_t consumed = 0;
  for (double tau : mags) {
    while (consumed < sorted_all.size() && sorted_all[consumed] >= tau) {
      running += sorted_all[consumed];
      ++consumed;
    }
    double score = running * running / double(consumed);
    if (score > best_score) {
      best_score = score;
      best_threshold = tau;
    }
  }
  return ternary_result(w, best_threshold);
}

QuantResult ternarize_oracle(const DenseVector& w) {
  if (w.size() == 0) throw std::invalid_argument("ternarize_oracle: empty input");
  std::vector<double> mags = distinct_magnitudes_descending(w);
  if (mags.empty()) throw std::invalid_argument("ternarize_oracle: all-zero input");
  QuantResult best = ternary_result(w, mags.front());
  for (size_t j = 1; j < mags.size(); ++j) {
    QuantResult cand = ternary_result(w, mags[j]);
    if (cand.objective < best.objective) best = cand;
  }
  return best;
}

}  // namespace csreg
