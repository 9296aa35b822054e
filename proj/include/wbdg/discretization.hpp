#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "basis.hpp"
#include "mesh.hpp"
#include "quadrature.hpp"

namespace wbdg {

// Mesh + basis + (2k+1)^Dim Gauss rule with tabulated basis values at volume
// and face points. Weights are normalized: volume weights and the weights of
// each face sum to 1. Faces are f = 2*d + side (side 0: lower, normal -e_d).
// Face points are ordered by the tangential coordinate, so the two cells that
// share a face see the same point sequence.
template <int Dim>
class Discretization {
 public:
  Discretization(const Mesh<Dim>& mesh, int degree, int line_points = -1)
      : mesh_(mesh), basis_(degree), line_(gauss_legendre(line_points > 0 ? line_points : 2 * degree + 1)) {
    nm_ = basis_.size();
    int m = line_.size();
    if constexpr (Dim == 1) {
      for (int i = 0; i < m; ++i) {
        vol_ref_.push_back({line_.nodes[i]});
        vol_w_.push_back(0.5 * line_.weights[i]);
      }
      nfp_ = 1;
      face_w_ = {1.0};
      face_ref_ = {{-1.0}, {1.0}};
    } else {
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) {
          vol_ref_.push_back({line_.nodes[i], line_.nodes[j]});
          vol_w_.push_back(0.25 * line_.weights[i] * line_.weights[j]);
        }
      nfp_ = m;
      for (int p = 0; p < m; ++p) face_w_.push_back(0.5 * line_.weights[p]);
      for (int f = 0; f < 4; ++f) {
        int d = f / 2;
        double s = (f % 2 == 0) ? -1.0 : 1.0;
        for (int p = 0; p < m; ++p) {
          Point<Dim> xi;
          xi[d] = s;
          xi[1 - d] = line_.nodes[p];
          face_ref_.push_back(xi);
        }
      }
    }
    nq_ = static_cast<int>(vol_ref_.size());
    phi_.resize(nq_ * nm_);
    dphi_.resize(Dim * nq_ * nm_);
    for (int q = 0; q < nq_; ++q)
      for (int l = 0; l < nm_; ++l) {
        phi_[q * nm_ + l] = basis_.value(l, vol_ref_[q]);
        for (int d = 0; d < Dim; ++d)
          dphi_[(d * nq_ + q) * nm_ + l] = basis_.derivative(l, vol_ref_[q], d);
      }
    face_phi_.resize(face_ref_.size() * nm_);
    for (std::size_t p = 0; p < face_ref_.size(); ++p)
      for (int l = 0; l < nm_; ++l) face_phi_[p * nm_ + l] = basis_.value(l, face_ref_[p]);
  }

  const Mesh<Dim>& mesh() const { return mesh_; }
  const Basis<Dim>& basis() const { return basis_; }
  int degree() const { return basis_.degree(); }
  int modes() const { return nm_; }
  int cells() const { return mesh_.cells(); }
  int vol_points() const { return nq_; }
  int face_points() const { return nfp_; }
  static constexpr int faces() { return 2 * Dim; }

  const Point<Dim>& vol_ref(int q) const { return vol_ref_[q]; }
  double vol_weight(int q) const { return vol_w_[q]; }
  double face_weight(int p) const { return face_w_[p]; }
  const Point<Dim>& face_ref(int f, int p) const { return face_ref_[f * nfp_ + p]; }

  // basis value / reference derivative / face value tables
  const double* phi(int q) const { return &phi_[q * nm_]; }
  const double* dphi(int d, int q) const { return &dphi_[(d * nq_ + q) * nm_]; }
  const double* face_phi(int f, int p) const { return &face_phi_[(f * nfp_ + p) * nm_]; }

  Point<Dim> vol_point(int cell, int q) const { return mesh_.to_physical(cell, vol_ref_[q]); }
  Point<Dim> face_point(int cell, int f, int p) const {
    return mesh_.to_physical(cell, face_ref(f, p));
  }

  // L2 projection of f onto P^k on one cell; out has modes() entries.
  template <class F>
  void project(int cell, F&& f, double* out) const {
    for (int l = 0; l < nm_; ++l) out[l] = 0.0;
    for (int q = 0; q < nq_; ++q) {
      double v = f(vol_point(cell, q));
      double w = vol_w_[q] * v;
      const double* ph = phi(q);
      for (int l = 0; l < nm_; ++l) out[l] += w * ph[l];
    }
  }

  double eval_vol(const double* coeffs, int q) const {
    const double* ph = phi(q);
    double s = 0.0;
    for (int l = 0; l < nm_; ++l) s += coeffs[l] * ph[l];
    return s;
  }
  double eval_face(const double* coeffs, int f, int p) const {
    const double* ph = face_phi(f, p);
    double s = 0.0;
    for (int l = 0; l < nm_; ++l) s += coeffs[l] * ph[l];
    return s;
  }
  double eval_ref(const double* coeffs, const Point<Dim>& xi) const {
    double s = 0.0;
    for (int l = 0; l < nm_; ++l) s += coeffs[l] * basis_.value(l, xi);
    return s;
  }
  // Polynomial of one cell at a physical point; ContractError if outside.
  double eval_at(const double* coeffs, int cell, const Point<Dim>& x) const {
    return eval_ref(coeffs, mesh_.to_reference(cell, x));
  }
  // One-sided traces at every face point, ordered [f][p].
  std::vector<double> boundary_traces(const double* coeffs) const {
    std::vector<double> out;
    for (int f = 0; f < faces(); ++f)
      for (int p = 0; p < nfp_; ++p) out.push_back(eval_face(coeffs, f, p));
    return out;
  }

 private:
  Mesh<Dim> mesh_;
  Basis<Dim> basis_;
  Quadrature line_;
  int nm_ = 0, nq_ = 0, nfp_ = 0;
  std::vector<Point<Dim>> vol_ref_, face_ref_;
  std::vector<double> vol_w_, face_w_;
  std::vector<double> phi_, dphi_, face_phi_;
};

template <int Dim>
using DiscretizationPtr = std::shared_ptr<const Discretization<Dim>>;

template <int Dim>
DiscretizationPtr<Dim> make_discretization(const Mesh<Dim>& mesh, int degree) {
  return std::make_shared<const Discretization<Dim>>(mesh, degree);
}

}  // namespace wbdg
