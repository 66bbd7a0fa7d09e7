#include "salc/system.hpp"

#include <cmath>

namespace salc {

NoiseSpec NoiseSpec::zero_noise(int dim) {
  NoiseSpec s;
  s.kind = NoiseKind::zero;
  s.dim = dim;
  return s;
}

NoiseSpec NoiseSpec::gaussian(Matrix covariance) {
  NoiseSpec s;
  s.kind = NoiseKind::gaussian;
  s.dim = covariance.rows();
  s.covariance = std::move(covariance);
  s.validate();
  return s;
}

NoiseSpec NoiseSpec::uniform_ball(int dim, double bound) {
  NoiseSpec s;
  s.kind = NoiseKind::uniform_ball;
  s.dim = dim;
  s.bound = bound;
  s.validate();
  return s;
}

Matrix NoiseSpec::effective_covariance() const {
  switch (kind) {
    case NoiseKind::zero:
      return Matrix(dim, dim);
    case NoiseKind::gaussian:
      return covariance;
    case NoiseKind::uniform_ball: {
      Matrix c(dim, dim);
      const double v = bound * bound / (dim + 2);
      for (int i = 0; i < dim; ++i) c(i, i) = v;
      return c;
    }
  }
  return Matrix(dim, dim);
}

void NoiseSpec::validate() const {
  if (dim <= 0) throw std::invalid_argument("NoiseSpec: dimension must be positive");
  if (kind == NoiseKind::gaussian) {
    if (covariance.rows() != dim || covariance.cols() != dim)
      throw std::invalid_argument("NoiseSpec: covariance shape mismatch");
  }
  if (kind == NoiseKind::uniform_ball && bound < 0.0)
    throw std::invalid_argument("NoiseSpec: negative ball radius");
}

NoiseSampler::NoiseSampler(const NoiseSpec& spec) : spec_(spec) {
  spec_.validate();
  if (spec_.kind == NoiseKind::gaussian) {
    bool all_zero = true;
    for (double e : spec_.covariance.entries())
      if (e != 0.0) all_zero = false;
    if (!all_zero) chol_ = cholesky(spec_.covariance);
  }
}

Vector NoiseSampler::sample(Rng& rng) const {
  switch (spec_.kind) {
    case NoiseKind::zero:
      return Vector(spec_.dim, 0.0);
    case NoiseKind::gaussian: {
      if (chol_.empty()) return Vector(spec_.dim, 0.0);
      Vector z(spec_.dim);
      for (double& e : z) e = rng.next_gaussian();
      return chol_ * z;
    }
    case NoiseKind::uniform_ball: {
      Vector d(spec_.dim);
      double n2 = 0.0;
      do {
        for (double& e : d) e = rng.next_gaussian();
        n2 = dot(d, d);
      } while (n2 == 0.0);
      const double radius = spec_.bound * std::pow(rng.next_double(), 1.0 / spec_.dim);
      return (radius / std::sqrt(n2)) * d;
    }
  }
  return Vector(spec_.dim, 0.0);
}

Vector sample_noise(const NoiseSpec& spec, Rng& rng) { return NoiseSampler(spec).sample(rng); }

void PlantConfig::validate() const {
  if (A.rows() != A.cols()) throw std::invalid_argument("PlantConfig: A must be square");
  if (B.rows() != A.rows()) throw std::invalid_argument("PlantConfig: B row count must match A");
  if (kappa < 1 || kappa > n()) throw std::invalid_argument("PlantConfig: kappa must be in [1, n]");
  if (!(u_max > 0.0)) throw std::invalid_argument("PlantConfig: u_max must be positive");
  if (!(c_level >= 0.0 && c_level < u_max))
    throw std::invalid_argument("PlantConfig: c_level must lie in [0, u_max)");
  if (static_cast<int>(x0.size()) != n()) throw std::invalid_argument("PlantConfig: x0 dimension mismatch");
  if (disturbance.dim != n()) throw std::invalid_argument("PlantConfig: disturbance dimension mismatch");
  if (excitation.dim != m()) throw std::invalid_argument("PlantConfig: excitation dimension mismatch");
  if (excitation.kind == NoiseKind::uniform_ball && excitation.bound > c_level + 1e-12)
    throw std::invalid_argument("PlantConfig: excitation bound exceeds c_level");
  if (excitation.kind == NoiseKind::gaussian)
    throw std::invalid_argument("PlantConfig: excitation must have bounded support");
  if (disturbance.kind == NoiseKind::uniform_ball)
    throw std::invalid_argument("PlantConfig: disturbance must be zero or gaussian");
}

Matrix reachability_matrix(const Matrix& A, const Matrix& B, int kappa) {
  if (A.rows() != A.cols()) throw std::invalid_argument("reachability_matrix: A must be square");
  if (B.rows() != A.rows()) throw std::invalid_argument("reachability_matrix: B row count must match A");
  if (kappa < 1) throw std::invalid_argument("reachability_matrix: kappa must be >= 1");
  std::vector<Matrix> blocks;
  blocks.reserve(kappa);
  Matrix pow = B;
  for (int i = 0; i < kappa; ++i) {
    blocks.push_back(pow);
    if (i + 1 < kappa) pow = A * pow;
  }
  return hcat(blocks);
}

ReachabilityCheck is_reachable(const Matrix& A, const Matrix& B, int kappa) {
  const Matrix r = reachability_matrix(A, B, kappa);
  if (r.rows() > r.cols()) return {false, 0.0};
  const Svd d = svd(r);
  const double smin = d.sigma[static_cast<size_t>(r.rows()) - 1];
  const double threshold = 1e-8 * std::max(1.0, d.sigma.front());
  return {smin > threshold, smin};
}

Vector plant_step(const Matrix& A, const Matrix& B, const Vector& x, const Vector& u, const Vector& w) {
  Vector out = A * x;
  const Vector bu = B * u;
  if (out.size() != bu.size() || out.size() != w.size())
    throw std::invalid_argument("plant_step: dimension mismatch");
  for (size_t i = 0; i < out.size(); ++i) out[i] += bu[i] + w[i];
  return out;
}

SubsampledContext build_subsampled_context(const PlantConfig& cfg) {
  cfg.validate();
  const ReachabilityCheck rc = is_reachable(cfg.A, cfg.B, cfg.kappa);
  if (!rc.reachable) throw std::invalid_argument("build_subsampled_context: (A, B) is not kappa-step reachable");
  SubsampledContext ctx;
  ctx.kappa = cfg.kappa;
  ctx.r_star = reachability_matrix(cfg.A, cfg.B, cfg.kappa);
  ctx.a_pow_kappa = matrix_power(cfg.A, cfg.kappa);
  std::vector<Matrix> blocks;
  Matrix pow = Matrix::identity(cfg.n());
  for (int i = 0; i < cfg.kappa; ++i) {
    blocks.push_back(pow);
    if (i + 1 < cfg.kappa) pow = cfg.A * pow;
  }
  ctx.w_stack_map = hcat(blocks);
  ctx.norm_r = spectral_norm(ctx.r_star);
  ctx.norm_r_pinv = spectral_norm(pinv(ctx.r_star));
  return ctx;
}

namespace {
Vector stack_apply(const Matrix& map, const std::vector<Vector>& block, int kappa, const char* what) {
  if (static_cast<int>(block.size()) != kappa) throw std::invalid_argument(std::string(what) + ": wrong block shape");
  const int each = map.cols() / kappa;
  Vector stacked;
  stacked.reserve(map.cols());
  for (const Vector& v : block) {
    if (static_cast<int>(v.size()) != each) throw std::invalid_argument(std::string(what) + ": wrong block shape");
    stacked.insert(stacked.end(), v.begin(), v.end());
  }
  return map * stacked;
}
}  // namespace

Vector aggregate_disturbance(const SubsampledContext& ctx, const std::vector<Vector>& w_block) {
  return stack_apply(ctx.w_stack_map, w_block, ctx.kappa, "aggregate_disturbance");
}

Vector aggregate_excitation(const SubsampledContext& ctx, const std::vector<Vector>& v_block) {
  return stack_apply(ctx.r_star, v_block, ctx.kappa, "aggregate_excitation");
}

}  // namespace salc
