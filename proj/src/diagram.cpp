#include "tfs/diagram.hpp"

#include <cmath>
#include <string>

#include "tfs/kernels.hpp"

namespace tfs {

namespace {

void require_dim(int n) {
  if (n < 2)
    throw Error(Errc::DimensionTooSmall,
                "diagram vectors need n >= 2, got n = " + std::to_string(n));
}

}  // namespace

DiagramVector diagram_vector(const Eigen::VectorXcd& f, Field field, const Config&) {
  const int n = static_cast<int>(f.size());
  require_dim(n);
  const kernels::PairTable pt = kernels::pair_table(n);
  const int np = pt.count();
  const double inv = 1.0 / std::sqrt(n - 1.0);

  DiagramVector out;
  out.field = field;
  out.n = n;
  out.data.resize(field == Field::Real ? 2 * np : 3 * np);

  for (int p = 0; p < np; ++p) {
    const int a = pt.a[p], b = pt.b[p];
    out.data(p) = cd((std::norm(f(a)) - std::norm(f(b))) * inv, 0.0);
  }
  if (field == Field::Real) {
    const double scale = std::sqrt(2.0 * n) * inv;
    for (int p = 0; p < np; ++p) {
      const int a = pt.a[p], b = pt.b[p];
      out.data(np + p) = cd(f(a).real() * f(b).real() * scale, 0.0);
    }
  } else {
    const double scale = std::sqrt(static_cast<double>(n)) * inv;
    for (int p = 0; p < np; ++p) {
      const int a = pt.a[p], b = pt.b[p];
      out.data(np + 2 * p) = f(a) * std::conj(f(b)) * scale;
      out.data(np + 2 * p + 1) = std::conj(f(a)) * f(b) * scale;
    }
  }
  return out;
}

double diagram_inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g, Field,
                     const Config&) {
  const int n = static_cast<int>(f.size());
  require_dim(n);
  if (g.size() != n)
    throw Error(Errc::DimensionMismatch, "diagram_inner arguments have sizes " +
                                             std::to_string(f.size()) + " and " +
                                             std::to_string(g.size()));
  const double ip2 = std::norm(inner(f, g));
  return (n * ip2 - f.squaredNorm() * g.squaredNorm()) / (n - 1.0);
}

DiagramGramian diagram_gramian(const Frame& F, const Config& cfg) {
  validate_frame(F, cfg);
  require_dim(F.n);
  if (!F.unit_norm)
    throw Error(Errc::NotUnitNorm, "diagram Gramian is defined for unit-norm frames");
  return {kernels::diagram_gramian(F.vectors, F.n, cfg.exec)};
}

DiagramVector diagram_sum(const Frame& F, const Eigen::VectorXd& w, const Config& cfg) {
  validate_frame(F, cfg);
  require_dim(F.n);
  if (w.size() != F.k())
    throw Error(Errc::LengthMismatch, "frame has " + std::to_string(F.k()) +
                                          " vectors but " + std::to_string(w.size()) +
                                          " weights were given");
  for (int i = 0; i < w.size(); ++i)
    if (!std::isfinite(w(i)) || w(i) < 0.0)
      throw Error(Errc::NegativeCoefficient,
                  "weight " + std::to_string(i + 1) + " = " + std::to_string(w(i)));
  DiagramVector out;
  out.field = F.field;
  out.n = F.n;
  out.data = kernels::diagram_sum(F.vectors, F.field, w, cfg.exec);
  return out;
}

DiagramVector diagram_sum(const Frame& F, const Config& cfg) {
  return diagram_sum(F, Eigen::VectorXd::Ones(F.k()), cfg);
}

bool is_tight_by_diagram(const Frame& F, const Config& cfg) {
  const DiagramVector s = diagram_sum(F, cfg);
  const double total = F.vectors.squaredNorm();  // sum of ||f_i||^2
  if (total == 0.0)
    throw Error(Errc::AllZeroFrame, "tightness of the all-zero sequence is undefined");
  return s.data.norm() <= cfg.tol_tight * total;
}

}  // namespace tfs
