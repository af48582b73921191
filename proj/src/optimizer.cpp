#include "fermiloss/optimizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>

#include "fermiloss/linalg.hpp"
#include "fermiloss/onebody.hpp"
#include "fermiloss/parallel.hpp"
#include "fermiloss/random.hpp"

namespace fermiloss {

std::string to_string(Scope scope) { return scope == Scope::Sp ? "sp" : "qsp"; }

Scope parse_scope(std::string_view text) {
  if (text == "sp") return Scope::Sp;
  if (text == "qsp") return Scope::Qsp;
  throw ValidationError("unknown scope '" + std::string(text) + "' (expected sp or qsp)");
}

void OptimizerConfig::validate() const {
  require(restarts >= 1, "restarts must be >= 1");
  require(max_iterations >= 0, "max iterations must be >= 0");
  require(tolerance > 0.0, "tolerance must be positive");
  require(initial_step > 0.0 && step_floor > 0.0, "step sizes must be positive");
  require(shrink > 0.0 && shrink < 1.0, "shrink factor must lie in (0, 1)");
  require(armijo > 0.0 && armijo < 1.0, "Armijo factor must lie in (0, 1)");
}

namespace {

// Sector blocks of an annihilator: lower = a[Sbar, S], upper = a[S, Sbar],
// where Sbar is the opposite-parity sector (or the whole space).
struct ModeBlocks {
  std::vector<CMatrix> lower;
  std::vector<CMatrix> upper;
};

class LossModel {
 public:
  LossModel(const CMatrix& rho, const FockSpace& space, const EntropyFunctional& f)
      : rho_(rho), space_(space), f_(f) {
    require(rho.rows() == space.dim() && rho.cols() == space.dim(),
            "state dimension does not match the Fock space");
    const std::uint32_t full = std::uint32_t{1} << space.modes();
    if (space.is_full()) {
      for (std::uint32_t b = 0; b < full; ++b) {
        in_.push_back(b);
        out_.push_back(b);
      }
    } else {
      in_ = space.basis();
      for (std::uint32_t b = 0; b < full; ++b)
        if (space.index_of(b) < 0) out_.push_back(b);
    }
    base_entropy_ = entropy_of_state(rho, f);
    c_blocks_ = blocks(BogoliubovTransform::identity(space.modes()));
  }

  struct Point {
    double value = 0.0;
    ModeBlocks a;
    std::vector<HermitianEigen> post;
  };

  Point evaluate(const BogoliubovTransform& w, bool keep) const {
    Point p;
    p.a = blocks(w);
    double total = 0.0;
    for (std::size_t k = 0; k < p.a.lower.size(); ++k) {
      const CMatrix occ = p.a.lower[k].adjoint() * p.a.lower[k];
      // rho'(k) = P rho P + (1 - P) rho (1 - P) = rho - P rho - rho P + 2 P rho P
      const CMatrix pr = occ * rho_;
      CMatrix rk = rho_ - pr - pr.adjoint() + 2.0 * pr * occ;
      rk = hermitian_part(rk);
      HermitianEigen eig = keep ? eigh(rk) : HermitianEigen{eigenvalues_descending(rk), {}};
      total += entropy_of_spectrum(eig.values, f_) - base_entropy_;
      if (keep) p.post.push_back(std::move(eig));
    }
    p.value = total;
    return p;
  }

  // X_ij = Tr(K b_i^dag b_j) and Y_ij = Tr(K b_i^dag b_j^dag) for mode blocks b.
  void moments(const CMatrix& k, const ModeBlocks& b, CMatrix& x, CMatrix& y) const {
    const int n = space_.modes();
    std::vector<CMatrix> p(n), q(n);
    for (int j = 0; j < n; ++j) {
      p[j] = b.lower[j] * k;
      q[j] = b.upper[j].adjoint() * k;
    }
    x.resize(n, n);
    y.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        x(i, j) = (b.lower[i].conjugate().cwiseProduct(p[j])).sum();
        y(i, j) = (b.lower[i].conjugate().cwiseProduct(q[j])).sum();
      }
  }

  // K = [rho, sum_k f'(rho'(k))].
  CMatrix commutator_k(const Point& p) const {
    const Eigen::Index d = rho_.rows();
    CMatrix fsum = CMatrix::Zero(d, d);
    for (const auto& eig : p.post) {
      RVector g(eig.values.size());
      for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = functional_derivative(f_, eig.values(i));
      fsum += eig.vectors * g.asDiagonal() * eig.vectors.adjoint();
    }
    return rho_ * fsum - fsum * rho_;
  }

  LossGradient gradient(const Point& p, Scope scope, double* residual) const {
    const CMatrix k = commutator_k(p);
    CMatrix x, y;
    moments(k, c_blocks_, x, y);
    LossGradient g;
    g.h = (kI * x).conjugate();
    g.h = 0.5 * (g.h + g.h.adjoint()).eval();
    if (scope == Scope::Qsp) {
      g.delta = (kI * y).conjugate();
      g.delta = 0.5 * (g.delta - g.delta.transpose()).eval();
    } else {
      g.delta = CMatrix::Zero(g.h.rows(), g.h.cols());
    }
    if (residual) {
      CMatrix xa, ya;
      moments(k, p.a, xa, ya);
      double r = 0.0;
      for (Eigen::Index i = 0; i < xa.rows(); ++i)
        for (Eigen::Index j = 0; j < xa.cols(); ++j) {
          if (i == j) continue;
          r = std::max(r, std::abs(xa(i, j)));
          if (scope == Scope::Qsp) r = std::max(r, std::abs(ya(i, j)));
        }
      *residual = r;
    }
    return g;
  }

 private:
  ModeBlocks blocks(const BogoliubovTransform& w) const {
    const auto full = quasiparticle_annihilators(space_.modes(), w);
    ModeBlocks b;
    const auto ni = static_cast<Eigen::Index>(in_.size());
    const auto no = static_cast<Eigen::Index>(out_.size());
    for (const auto& a : full) {
      CMatrix lower(no, ni), upper(ni, no);
      for (Eigen::Index j = 0; j < ni; ++j)
        for (Eigen::Index i = 0; i < no; ++i) lower(i, j) = a(out_[i], in_[j]);
      for (Eigen::Index j = 0; j < no; ++j)
        for (Eigen::Index i = 0; i < ni; ++i) upper(i, j) = a(in_[i], out_[j]);
      b.lower.push_back(std::move(lower));
      b.upper.push_back(std::move(upper));
    }
    return b;
  }

  CMatrix rho_;
  FockSpace space_;
  EntropyFunctional f_;
  std::vector<std::uint32_t> in_, out_;
  double base_entropy_ = 0.0;
  ModeBlocks c_blocks_;
};

// Nearest transform with exact unitarity, via the polar factor of U (scope
// sp) or of the Majorana rotation.
BogoliubovTransform reorthonormalize(const BogoliubovTransform& w) {
  if (w.V.cwiseAbs().maxCoeff() == 0.0) {
    Eigen::JacobiSVD<CMatrix> svd(w.U, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return BogoliubovTransform::from_unitary(svd.matrixU() * svd.matrixV().adjoint());
  }
  const RMatrix o = to_majorana_rotation(w);
  Eigen::JacobiSVD<RMatrix> svd(o, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return from_majorana_rotation(svd.matrixU() * svd.matrixV().transpose());
}

// Window of the non-monotone Armijo test.
constexpr std::size_t kMemory = 10;

struct Descent {
  BogoliubovTransform W;
  double objective = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

Descent descend(const LossModel& model, BogoliubovTransform w, const OptimizerConfig& cfg) {
  Descent out;
  auto point = model.evaluate(w, true);
  double residual = 0.0;
  LossGradient g = model.gradient(point, cfg.scope, &residual);
  double step = cfg.initial_step;
  const double step_cap = 1e3 * cfg.initial_step;
  std::deque<double> history{point.value};
  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    if (residual <= cfg.tolerance) break;
    const double g2 = g.norm_squared();
    const OneBodyGenerator dir{-g.h, -g.delta};
    double t = step;
    bool accepted = false;
    BogoliubovTransform trial;
    LossModel::Point trial_point;
    LossGradient trial_g;
    double trial_residual = 0.0;
    while (t >= cfg.step_floor) {
      trial = retract(w, dir, t);
      trial_point = model.evaluate(trial, true);
      const double drop = point.value - trial_point.value;
      const double reference = *std::max_element(history.begin(), history.end());
      if (reference - trial_point.value >= cfg.armijo * t * g2) {
        trial_g = model.gradient(trial_point, cfg.scope, &trial_residual);
        accepted = true;
        break;
      }
      // Below roundoff the function values cannot rank the points; fall back
      // to the residual.
      if (std::abs(drop) <= 1e-13 * std::max(1.0, std::abs(point.value))) {
        trial_g = model.gradient(trial_point, cfg.scope, &trial_residual);
        if (trial_residual < residual) {
          accepted = true;
          break;
        }
      }
      t *= cfg.shrink;
    }
    if (!accepted) break;
    // Barzilai-Borwein trial step for the next iteration.
    const CMatrix yh = trial_g.h - g.h;
    const CMatrix yd = trial_g.delta - g.delta;
    const double sy = -t * ((g.h.conjugate().cwiseProduct(yh)).sum().real() +
                            (g.delta.conjugate().cwiseProduct(yd)).sum().real());
    const double ss = t * t * g2;
    step = sy > 0.0 ? std::min(ss / sy, step_cap) : std::min(2.0 * t, step_cap);
    w = (it + 1) % 50 == 0 ? reorthonormalize(trial) : trial;
    if ((it + 1) % 50 == 0) {
      trial_point = model.evaluate(w, true);
      trial_g = model.gradient(trial_point, cfg.scope, &trial_residual);
    }
    history.push_back(trial_point.value);
    if (history.size() > kMemory) history.pop_front();
    point = std::move(trial_point);
    g = std::move(trial_g);
    residual = trial_residual;
  }
  out.W = w;
  out.objective = point.value;
  out.residual = residual;
  out.iterations = it;
  out.converged = residual <= cfg.tolerance;
  return out;
}

std::vector<BogoliubovTransform> canonical_starts(const CMatrix& rho, const FockSpace& space,
                                                  Scope scope) {
  const auto summary = one_body_summary(rho, space);
  std::vector<BogoliubovTransform> starts{BogoliubovTransform::identity(space.modes()),
                                          diagonalize_sp(summary)};
  if (scope == Scope::Qsp) starts.push_back(diagonalize_qsp(summary).W);
  return starts;
}

BogoliubovTransform random_transform(int n, Scope scope, Rng& rng) {
  if (scope == Scope::Sp) return BogoliubovTransform::from_unitary(haar_unitary(n, rng));
  return from_majorana_rotation(haar_orthogonal(2 * n, rng));
}

}  // namespace

LossGradient loss_gradient(const CMatrix& rho, const FockSpace& space,
                           const BogoliubovTransform& w, const EntropyFunctional& f) {
  require(f.is_trace_form(), "loss_gradient requires a trace-form entropy");
  const LossModel model(rho, space, f);
  return model.gradient(model.evaluate(w, true), Scope::Qsp, nullptr);
}

double directional_derivative(const LossGradient& g, const OneBodyGenerator& direction) {
  return (g.h.conjugate().cwiseProduct(direction.h)).sum().real() +
         (g.delta.conjugate().cwiseProduct(direction.delta)).sum().real();
}

BogoliubovTransform retract(const BogoliubovTransform& w, const OneBodyGenerator& direction,
                            double eps) {
  require(direction.modes() == w.modes(), "generator does not match the transform");
  if (direction.delta.cwiseAbs().maxCoeff() == 0.0 && w.V.cwiseAbs().maxCoeff() == 0.0) {
    // exp(-i eps calH) is block diagonal with upper block exp(-i eps h).
    direction.validate();
    return BogoliubovTransform::from_unitary(exp_i_hermitian(direction.h, -eps) * w.U);
  }
  return compose(from_generator(direction, -eps), w);
}

StationarityResidual stationarity_residual(const CMatrix& rho, const FockSpace& space,
                                           const BogoliubovTransform& w,
                                           const EntropyFunctional& f, Scope scope) {
  require(f.is_trace_form(), "stationarity residuals require a trace-form entropy");
  const int n = space.modes();
  const auto a = quasiparticle_annihilators(n, w);
  const CMatrix id = CMatrix::Identity(space.dim(), space.dim());
  std::vector<CMatrix> fk;
  for (int k = 0; k < n; ++k) {
    const CMatrix pi = space.restrict(CMatrix(a[k].adjoint() * a[k]));
    const CMatrix post = hermitian_part(pi * rho * pi + (id - pi) * rho * (id - pi));
    fk.push_back(hermitian_function(post, [&](double p) { return functional_derivative(f, p); }));
  }
  StationarityResidual r;
  if (scope == Scope::Qsp) r.pair = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      if (k == l) continue;
      const CMatrix fs = fk[k] + fk[l];
      const CMatrix hop = space.restrict(CMatrix(a[k].adjoint() * a[l]));
      r.sp = std::max(r.sp, std::abs((rho * commutator(fs, hop)).trace()));
      if (scope == Scope::Qsp) {
        const CMatrix pair = space.restrict(CMatrix(a[k].adjoint() * a[l].adjoint()));
        r.pair = std::max(*r.pair, std::abs((rho * commutator(fs, pair)).trace()));
      }
    }
  return r;
}

OptimizationResult minimize(const CMatrix& rho, const FockSpace& space,
                            const EntropyFunctional& f, const OptimizerConfig& cfg) {
  cfg.validate();
  const EntropyFunctional objective = optimization_functional(f);
  const LossModel model(rho, space, objective);

  auto starts = canonical_starts(rho, space, cfg.scope);
  starts.resize(std::min<std::size_t>(starts.size(), cfg.restarts));
  for (int r = static_cast<int>(starts.size()); r < cfg.restarts; ++r) {
    Rng rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(r));
    starts.push_back(random_transform(space.modes(), cfg.scope, rng));
  }

  std::vector<Descent> runs(starts.size());
  parallel_for(starts.size(), cfg.workers,
               [&](std::size_t r) { runs[r] = descend(model, starts[r], cfg); });

  OptimizationResult result;
  result.restarts = static_cast<int>(runs.size());
  std::size_t best = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    result.restart_values.push_back(runs[r].objective);
    if (runs[r].objective < runs[best].objective) best = r;
  }
  const Descent& winner = runs[best];
  result.best_restart = static_cast<int>(best);
  result.W = winner.W;
  result.iterations = winner.iterations;
  result.converged = winner.converged;
  result.value = objective.kind == f.kind && objective.q == f.q
                     ? winner.objective
                     : LossModel(rho, space, f).evaluate(winner.W, false).value;
  const auto residual = stationarity_residual(rho, space, winner.W, objective, cfg.scope);
  result.residual_sp = residual.sp;
  result.residual_pair = residual.pair;
  return result;
}

double brute_force_min(const CMatrix& rho, const FockSpace& space, const EntropyFunctional& f,
                       Scope scope, std::size_t samples, std::uint64_t seed, int workers) {
  const LossModel model(rho, space, f);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : canonical_starts(rho, space, scope))
    best = std::min(best, model.evaluate(w, false).value);

  constexpr std::size_t kChunk = 1024;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> chunk_best(chunks, std::numeric_limits<double>::infinity());
  parallel_for(chunks, workers, [&](std::size_t c) {
    Rng rng = trial_rng(seed, c);
    const std::size_t end = std::min(samples, (c + 1) * kChunk);
    for (std::size_t s = c * kChunk; s < end; ++s)
      chunk_best[c] = std::min(chunk_best[c],
                               model.evaluate(random_transform(space.modes(), scope, rng), false).value);
  });
  for (double v : chunk_best) best = std::min(best, v);
  return best;
}

}  // namespace fermiloss
