#include "tfs/frame.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "tfs/kernels.hpp"

namespace tfs {

Frame real_frame(const Eigen::MatrixXd& columns, bool unit_norm) {
  Frame F;
  F.field = Field::Real;
  F.n = static_cast<int>(columns.rows());
  F.unit_norm = unit_norm;
  F.vectors = columns.cast<cd>();
  validate_frame(F);
  return F;
}

Frame complex_frame(const Eigen::MatrixXcd& columns, bool unit_norm) {
  Frame F;
  F.field = Field::Complex;
  F.n = static_cast<int>(columns.rows());
  F.unit_norm = unit_norm;
  F.vectors = columns;
  validate_frame(F);
  return F;
}

void validate_frame(const Frame& F, const Config& cfg) {
  if (F.n < 2)
    throw Error(Errc::InvalidFrame, "ambient dimension must be at least 2, got " +
                                        std::to_string(F.n));
  if (F.vectors.rows() != F.n)
    throw Error(Errc::InvalidFrame, "vector storage has " +
                                        std::to_string(F.vectors.rows()) +
                                        " rows but n = " + std::to_string(F.n));
  if (F.k() < 1) throw Error(Errc::InvalidFrame, "frame has no vectors");
  for (int i = 0; i < F.k(); ++i) {
    for (int l = 0; l < F.n; ++l) {
      const cd v = F.vectors(l, i);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(Errc::InvalidFrame, "non-finite entry in vector " + std::to_string(i + 1));
      if (F.field == Field::Real && v.imag() != 0.0)
        throw Error(Errc::InvalidFrame,
                    "real frame carries a nonzero imaginary part in vector " +
                        std::to_string(i + 1));
    }
    if (F.unit_norm) {
      const double nm = F.vectors.col(i).norm();
      if (std::abs(nm - 1.0) > cfg.tol_unit)
        throw Error(Errc::InvalidFrame, "vector " + std::to_string(i + 1) +
                                            " claims unit norm but ||f|| = " +
                                            std::to_string(nm));
    }
  }
}

FrameOperator frame_operator(const Frame& F, const Config& cfg) {
  validate_frame(F, cfg);
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(F.k());
  Eigen::MatrixXcd S = kernels::frame_operator(F.vectors, w, cfg.exec);
  S = 0.5 * (S + S.adjoint()).eval();  // exact Hermitian symmetry
  return {F.field, std::move(S)};
}

Gramian gramian(const Frame& F, const Config& cfg) {
  validate_frame(F, cfg);
  Eigen::MatrixXcd G = kernels::gramian(F.vectors, cfg.exec);
  G = 0.5 * (G + G.adjoint()).eval();
  return {F.field, std::move(G)};
}

TightnessReport check_tight(const Frame& F, const Config& cfg) {
  const FrameOperator S = frame_operator(F, cfg);
  TightnessReport rep;
  rep.lambda = S.matrix.trace().real() / F.n;
  Eigen::MatrixXcd R = S.matrix;
  for (int i = 0; i < F.n; ++i) R(i, i) -= rep.lambda;
  rep.residual = R.norm();
  rep.is_tight = rep.residual <= cfg.tol_tight * std::max(1.0, rep.lambda);
  // Rank of the (Hermitian PSD) frame operator decides frame-ness.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S.matrix, Eigen::EigenvaluesOnly);
  const double lmax = es.eigenvalues().maxCoeff();
  rep.is_frame = es.eigenvalues().minCoeff() > cfg.tol_rank * std::max(1.0, lmax);
  return rep;
}

Frame scale_frame(const Frame& F, const Eigen::VectorXd& c, const Config& cfg) {
  validate_frame(F, cfg);
  if (c.size() != F.k())
    throw Error(Errc::LengthMismatch, "frame has " + std::to_string(F.k()) +
                                          " vectors but " + std::to_string(c.size()) +
                                          " coefficients were given");
  bool all_one = true;
  for (int i = 0; i < c.size(); ++i) {
    if (!std::isfinite(c(i)) || c(i) < 0.0)
      throw Error(Errc::NegativeCoefficient,
                  "coefficient " + std::to_string(i + 1) + " = " + std::to_string(c(i)));
    if (c(i) != 1.0) all_one = false;
  }
  Frame out = F;
  out.unit_norm = F.unit_norm && all_one;
  for (int i = 0; i < F.k(); ++i) out.vectors.col(i) *= c(i);
  return out;
}

}  // namespace tfs
