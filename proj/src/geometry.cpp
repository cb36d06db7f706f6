#include "gsimplex/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace gsimplex {

namespace {

constexpr double kDegenerateGramDet = 1e-24;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// sqrt(det(A^T A)) for a d x l matrix of spanning vectors, with columns
// normalized by the largest column norm so the degeneracy threshold is
// scale free.
double gram_volume(const Eigen::MatrixXd& a) {
  const int l = static_cast<int>(a.cols());
  double max_norm = 0.0;
  for (int j = 0; j < l; ++j) {
    max_norm = std::max(max_norm, a.col(j).norm());
  }
  if (max_norm == 0.0) return 0.0;
  const Eigen::MatrixXd b = a / max_norm;
  const Eigen::MatrixXd gram = b.transpose() * b;
  double det = gram.determinant();
  if (det < kDegenerateGramDet) return 0.0;
  return std::pow(max_norm, l) * std::sqrt(det);
}

}  // namespace

int SimplexVertices::ambient_dimension() const {
  if (vertices.empty()) return 0;
  return static_cast<int>(vertices.front().size());
}

int SimplexVertices::order() const { return static_cast<int>(vertices.size()) - 1; }

void SimplexVertices::validate() const {
  if (vertices.size() < 2) {
    throw std::invalid_argument("SimplexVertices: need at least 2 vertices");
  }
  const int d = ambient_dimension();
  if (d < 1) {
    throw std::invalid_argument("SimplexVertices: ambient dimension must be >= 1");
  }
  if (order() > d) {
    throw std::invalid_argument("SimplexVertices: simplex order l must satisfy l <= d");
  }
  for (const Point& v : vertices) {
    if (static_cast<int>(v.size()) != d) {
      throw std::invalid_argument("SimplexVertices: dimension mismatch among vertices");
    }
    if (!v.allFinite()) {
      throw std::invalid_argument("SimplexVertices: non-finite coordinate");
    }
  }
}

WeightVector::WeightVector(std::vector<double> sigmas) : sigmas_(std::move(sigmas)) {
  if (sigmas_.size() < 2) {
    throw std::invalid_argument("WeightVector: need at least 2 weights");
  }
  for (double s : sigmas_) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument("WeightVector: sigmas must be positive");
    }
  }
}

SubspaceBasis::SubspaceBasis(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
  if (basis_.rows() < 1 || basis_.cols() < 1 || basis_.cols() > basis_.rows()) {
    throw std::invalid_argument("SubspaceBasis: need d x l matrix with 1 <= l <= d");
  }
  const Eigen::MatrixXd gram = basis_.transpose() * basis_;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(basis_.cols(), basis_.cols());
  if ((gram - id).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("SubspaceBasis: columns are not orthonormal");
  }
}

double simplex_volume(const SimplexVertices& s) {
  s.validate();
  const int d = s.ambient_dimension();
  const int l = s.order();
  Eigen::MatrixXd edges(d, l);
  for (int j = 0; j < l; ++j) {
    edges.col(j) = s.vertices[j + 1] - s.vertices[0];
  }
  return gram_volume(edges) / factorial(l);
}

double parallelotope_volume(const std::vector<Point>& vectors) {
  if (vectors.empty()) {
    throw std::invalid_argument("parallelotope_volume: need at least one vector");
  }
  const int d = static_cast<int>(vectors.front().size());
  const int l = static_cast<int>(vectors.size());
  if (l > d) {
    throw std::invalid_argument("parallelotope_volume: more vectors than dimensions");
  }
  Eigen::MatrixXd a(d, l);
  for (int j = 0; j < l; ++j) {
    if (static_cast<int>(vectors[j].size()) != d) {
      throw std::invalid_argument("parallelotope_volume: dimension mismatch");
    }
    a.col(j) = vectors[j];
  }
  return gram_volume(a);
}

double scale_coefficient(const WeightVector& w) {
  double prod = 1.0;
  double inv_sq_sum = 0.0;
  for (double s : w.sigmas()) {
    prod *= s;
    inv_sq_sum += 1.0 / (s * s);
  }
  return prod * std::sqrt(inv_sq_sum);
}

Eigen::MatrixXd covariance_matrix(const WeightVector& w) {
  const int d = w.order();
  const std::vector<double>& s = w.sigmas();
  const double s0_sq = s[0] * s[0];
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(d, d, s0_sq);
  for (int i = 0; i < d; ++i) {
    m(i, i) += s[i + 1] * s[i + 1];
  }
  return m;
}

double covariance_det_closed_form(const WeightVector& w) {
  double prod_sq = 1.0;
  double inv_sq_sum = 0.0;
  for (double s : w.sigmas()) {
    prod_sq *= s * s;
    inv_sq_sum += 1.0 / (s * s);
  }
  return prod_sq * inv_sq_sum;
}

double projection_restriction_determinant(const SubspaceBasis& b, int l) {
  if (b.subspace_dimension() != l) {
    throw std::invalid_argument(
        "projection_restriction_determinant: basis must have exactly l columns");
  }
  if (l > b.ambient_dimension()) {
    throw std::invalid_argument("projection_restriction_determinant: l exceeds dimension");
  }
  const double det = std::abs(b.matrix().topRows(l).determinant());
  return std::min(det, 1.0);
}

double sphere_surface_constant(int j) {
  if (j < 1) {
    throw std::invalid_argument("sphere_surface_constant: j must be >= 1");
  }
  constexpr double kPi = 3.14159265358979323846;
  return 2.0 * std::pow(kPi, 0.5 * j) / std::tgamma(0.5 * j);
}

double bp_constant(int d, int k) {
  if (k < 1 || k > d) {
    throw std::invalid_argument("bp_constant: require 1 <= k <= d");
  }
  double log_sum = 0.0;
  for (int i = d - k + 1; i <= d; ++i) {
    log_sum += std::log(sphere_surface_constant(i));
  }
  for (int i = 1; i <= k; ++i) {
    log_sum -= std::log(sphere_surface_constant(i));
  }
  return std::exp(log_sum);
}

}  // namespace gsimplex
