// Copyright 2026 The tvgames Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tvg/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tvg {

bool all_finite(const Vec& v) { return v.allFinite(); }
bool all_finite(const Mat& m) { return m.allFinite(); }

Vec project_simplex(const Vec& v) {
  const int d = static_cast<int>(v.size());
  if (d == 0) throw std::invalid_argument("project_simplex: empty vector");
  if (!v.allFinite()) {
    throw std::invalid_argument("project_simplex: non-finite entry in input");
  }
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&v](int a, int b) { return v[a] > v[b]; });
  double cumsum = 0.0;
  double theta = 0.0;
  for (int k = 0; k < d; ++k) {
    cumsum += v[order[k]];
    const double t = (cumsum - 1.0) / (k + 1);
    if (v[order[k]] - t > 0.0) theta = t;
  }
  Vec x = (v.array() - theta).max(0.0).matrix();
  // Absorb rounding so the invariant holds to 1e-12 even for large inputs.
  const double s = x.sum();
  if (s > 0.0 && std::abs(s - 1.0) > 1e-15) x /= s;
  return x;
}

bool is_simplex_point(const Vec& x, double tol) {
  if (x.size() == 0 || !x.allFinite()) return false;
  if (x.minCoeff() < -tol) return false;
  return std::abs(x.sum() - 1.0) <= tol;
}

void check_simplex_point(const Vec& x, double tol, const std::string& what) {
  if (!is_simplex_point(x, tol)) {
    std::ostringstream msg;
    msg << what << " is not a probability vector (size " << x.size() << ")";
    throw std::invalid_argument(msg.str());
  }
}

Vec uniform_point(int d) {
  if (d < 1) throw std::invalid_argument("uniform_point: d must be >= 1");
  return Vec::Constant(d, 1.0 / d);
}

Vec vertex(int d, int a) {
  if (a < 0 || a >= d) throw std::out_of_range("vertex: index out of range");
  Vec e = Vec::Zero(d);
  e[a] = 1.0;
  return e;
}

namespace {

double power_iteration(const Mat& A, Vec v, double tol) {
  v.normalize();
  double prev = -1.0;
  double rho = 0.0;
  for (int k = 0; k < kSpectralMaxIters; ++k) {
    Vec Av = A * v;
    rho = Av.squaredNorm();
    if (rho == 0.0) return 0.0;
    Vec w = A.transpose() * Av;
    const double wn = w.norm();
    if (wn == 0.0) return rho;
    v = w / wn;
    if (k >= 1 && std::abs(rho - prev) < tol * rho) break;
    prev = rho;
  }
  return rho;
}

}  // namespace

double spectral_norm(const Mat& A, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_norm: tol must be > 0");
  if (!A.allFinite()) throw std::invalid_argument("spectral_norm: non-finite entry");
  if (A.size() == 0 || A.isZero(0.0)) return 0.0;
  const int n = static_cast<int>(A.cols());
  double best = power_iteration(A, Vec::Ones(n), tol);
  Vec alt(n);
  for (int j = 0; j < n; ++j) {
    const double g = std::fmod(0.5 + 0.6180339887498949 * (j + 1), 1.0);
    alt[j] = 1.0 + g;
  }
  best = std::max(best, power_iteration(A, alt, tol));
  return std::sqrt(best);
}

std::string to_string(Regularizer r) {
  return r == Regularizer::kEuclidean ? "euclidean" : "entropy";
}

Regularizer regularizer_from_string(const std::string& s) {
  if (s == "euclidean") return Regularizer::kEuclidean;
  if (s == "entropy" || s == "negative-entropy") return Regularizer::kNegativeEntropy;
  throw std::invalid_argument("unknown regularizer: " + s);
}

double bregman(Regularizer reg, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("bregman: size mismatch");
  if (reg == Regularizer::kEuclidean) return 0.5 * (a - b).squaredNorm();
  double total = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    if (b[i] <= 0.0) {
      throw std::invalid_argument(
          "bregman: entropy divergence undefined for zero coordinate in b");
    }
    if (a[i] > 0.0) total += a[i] * std::log(a[i] / b[i]);
  }
  return total;
}

Vec prox_step(Regularizer reg, const Vec& center, const Vec& g, double eta) {
  if (center.size() != g.size()) throw std::invalid_argument("prox_step: size mismatch");
  if (!g.allFinite()) throw std::invalid_argument("prox_step: non-finite gradient");
  if (reg == Regularizer::kEuclidean) return project_simplex(center + eta * g);
  Vec logits(center.size());
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < center.size(); ++i) {
    logits[i] = center[i] > 0.0 ? std::log(center[i]) + eta * g[i]
                                : -std::numeric_limits<double>::infinity();
    top = std::max(top, logits[i]);
  }
  Vec x = (logits.array() - top).exp().matrix();
  return x / x.sum();
}

double simplex_diameter(int d) { return d >= 2 ? std::sqrt(2.0) : 0.0; }

double product_diameter(const std::vector<int>& dims) {
  double s = 0.0;
  for (int d : dims) s += simplex_diameter(d) * simplex_diameter(d);
  return std::sqrt(s);
}

double product_max_norm(const std::vector<int>& dims) {
  return std::sqrt(static_cast<double>(dims.size()));
}

double primal_norm(Regularizer reg, const Vec& v) {
  return reg == Regularizer::kEuclidean ? v.norm() : v.lpNorm<1>();
}

double dual_norm(Regularizer reg, const Vec& v) {
  return reg == Regularizer::kEuclidean ? v.norm() : v.lpNorm<Eigen::Infinity>();
}

}  // namespace tvg
