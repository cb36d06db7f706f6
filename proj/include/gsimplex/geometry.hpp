#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gsimplex {

using Point = Eigen::VectorXd;

/// Vertices of an l-simplex embedded in R^d. When includes_origin is set,
/// vertex 0 is the fixed origin (and must be the zero vector).
struct SimplexVertices {
  std::vector<Point> vertices;
  bool includes_origin = false;

  int ambient_dimension() const;
  int order() const;  // l = number of vertices - 1
  void validate() const;
};

/// Positive vertex weights sigma_0, ..., sigma_l.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> sigmas);

  const std::vector<double>& sigmas() const { return sigmas_; }
  std::size_t count() const { return sigmas_.size(); }
  int order() const { return static_cast<int>(sigmas_.size()) - 1; }  // l

 private:
  std::vector<double> sigmas_;
};

/// d x l matrix with orthonormal columns spanning an l-dimensional subspace.
class SubspaceBasis {
 public:
  explicit SubspaceBasis(Eigen::MatrixXd basis);

  const Eigen::MatrixXd& matrix() const { return basis_; }
  int ambient_dimension() const { return static_cast<int>(basis_.rows()); }
  int subspace_dimension() const { return static_cast<int>(basis_.cols()); }

 private:
  Eigen::MatrixXd basis_;
};

/// l-dimensional Lebesgue volume of conv(vertices); 0 for affinely
/// dependent vertices.
double simplex_volume(const SimplexVertices& s);

/// Volume of the parallelotope spanned by the given vectors.
/// Equals l! * simplex_volume of the simplex (0, v_1, ..., v_l).
double parallelotope_volume(const std::vector<Point>& vectors);

/// sigma_0...sigma_l * sqrt(sum_i 1/sigma_i^2).
double scale_coefficient(const WeightVector& w);

/// Covariance matrix of the edge-difference columns for the full-dimensional
/// case (w has d+1 entries): M[i][j] = sigma_i sigma_j delta_ij + sigma_0^2.
Eigen::MatrixXd covariance_matrix(const WeightVector& w);

/// Closed form det M = sigma_0^2 ... sigma_d^2 * sum_k 1/sigma_k^2.
double covariance_det_closed_form(const WeightVector& w);

/// |det| of the first l rows of the basis matrix: the volume-scaling factor
/// of the coordinate projection onto span(e_1..e_l) restricted to span(b).
double projection_restriction_determinant(const SubspaceBasis& b, int l);

/// Surface area of the unit sphere in R^j: omega_j = 2 pi^{j/2} / Gamma(j/2).
double sphere_surface_constant(int j);

/// b_{d,k} = prod_{i=d-k+1}^{d} omega_i / prod_{i=1}^{k} omega_i.
double bp_constant(int d, int k);

}  // namespace gsimplex
