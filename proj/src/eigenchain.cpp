#include "nilharm/eigenchain.hpp"

#include <algorithm>
#include <cmath>

#include "nilharm/errors.hpp"
#include "nilharm/hermite.hpp"
#include "nilharm/invariant_ops.hpp"
#include "nilharm/quadrature.hpp"
#include "nilharm/rng.hpp"
#include "nilharm/symplectic.hpp"

namespace nilharm {

double bump_value(const BumpSpec& spec, const Eigen::VectorXd& lambda) {
  if (lambda.size() != spec.center.size())
    throw std::invalid_argument("bump_value: dimension mismatch");
  if (!(spec.radius > 0.0)) throw std::invalid_argument("bump_value: radius must be positive");
  if (spec.order < 1) throw std::invalid_argument("bump_value: order must be >= 1");
  const double u2 = ((lambda - spec.center) / spec.radius).squaredNorm();
  if (u2 >= 1.0) return 0.0;
  return std::pow(1.0 - u2, spec.order);
}

namespace {

double ipow(double base, int e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  double out = 1.0;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

Eigen::VectorXd lambda_tilde(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda,
                             const MultiIndex& alpha) {
  const SymplecticFrame f = frame(a, lambda);
  if (static_cast<int>(alpha.size()) != f.n())
    throw std::invalid_argument("lambda_tilde: alpha must have n entries");
  double s = 0.0;
  for (int j = 0; j < f.n(); ++j) s += (2.0 * alpha[j] + 1.0) * f.d[j];
  const Eigen::VectorXd lt = lambda * (lambda.norm() / s);

  // Consistency of the rescaling, via a second frame call at the result:
  // (2 alpha + 1) . d(lt) = |lambda| and the inverse relation recover
  // lambda.  Failures indicate a broken homogeneity of d along the ray.
  const SymplecticFrame ft = frame(a, lt);
  double st = 0.0;
  for (int j = 0; j < ft.n(); ++j) st += (2.0 * alpha[j] + 1.0) * ft.d[j];
  const double scale = 1.0 + lambda.norm();
  if (std::abs(st - lambda.norm()) > 1e-10 * scale ||
      (lt * (st / lt.norm()) - lambda).norm() > 1e-10 * scale)
    throw std::runtime_error("lambda_tilde: rescaling identities violated");
  return lt;
}

struct HLambda::Data {
  Eigen::VectorXd lambda;
  Eigen::VectorXd lt;
  Eigen::VectorXd dtil;
  SymplecticFrame frame;
  MultiIndex alpha;
  double eigenvalue = 0.0;
};

HLambda::HLambda(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda, const MultiIndex& alpha) {
  auto d = std::make_shared<Data>();
  d->lambda = lambda;
  d->frame = nilharm::frame(a, lambda);
  if (static_cast<int>(alpha.size()) != d->frame.n())
    throw std::invalid_argument("HLambda: alpha must have n entries");
  d->alpha = alpha;
  double s = 0.0;
  for (int j = 0; j < d->frame.n(); ++j) s += (2.0 * alpha[j] + 1.0) * d->frame.d[j];
  // Scaling the functional scales d linearly and keeps the frame, so the
  // frame is computed once at lambda and d is rescaled in place.
  const double c = lambda.norm() / s;
  d->lt = c * lambda;
  d->dtil = c * d->frame.d;
  d->eigenvalue = -lambda.norm();
  data_ = std::move(d);
}

std::complex<double> HLambda::phi_part(const Eigen::VectorXd& v) const {
  const Data& d = *data_;
  const Eigen::VectorXd x = d.frame.X.transpose() * v;
  const Eigen::VectorXd y = d.frame.Y.transpose() * v;
  Eigen::VectorXcd z(x.size());
  for (int j = 0; j < x.size(); ++j) z[j] = std::complex<double>(x[j], y[j]);
  return special_hermite_diag(d.alpha, z, d.dtil);
}

std::complex<double> HLambda::operator()(const GroupElement& g) const {
  return phi_part(g.v) * std::polar(1.0, data_->lt.dot(g.z));
}

const Eigen::VectorXd& HLambda::lambda() const { return data_->lambda; }
const Eigen::VectorXd& HLambda::lambda_tilde() const { return data_->lt; }
const Eigen::VectorXd& HLambda::d_tilde() const { return data_->dtil; }
const SymplecticFrame& HLambda::frame() const { return data_->frame; }
double HLambda::eigenvalue() const { return data_->eigenvalue; }

PointEvaluator h_lambda(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda,
                        const MultiIndex& alpha) {
  HLambda h(a, lambda, alpha);
  return [h](const GroupElement& g) { return h(g); };
}

PointEvaluator build_chain(const TwoStepAlgebra& a, const ChainSpec& spec, int k) {
  // An empty spec is the zero chain: every f_k vanishes identically.
  struct Piece {
    HLambda h;
    std::complex<double> weight;
  };
  auto pieces = std::make_shared<std::vector<Piece>>();
  pieces->reserve(spec.terms.size());
  for (const auto& term : spec.terms) {
    HLambda h(a, term.lambda, term.alpha);
    pieces->push_back({std::move(h), term.coeff * ipow(-term.lambda.norm(), k)});
  }
  return [pieces](const GroupElement& g) {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& p : *pieces) acc += p.weight * p.h(g);
    return acc;
  };
}

std::vector<PointEvaluator> build_chain(const TwoStepAlgebra& a, const ChainSpec& spec, int k_lo,
                                        int k_hi) {
  if (k_lo > k_hi) throw std::invalid_argument("build_chain: empty k range");
  std::vector<PointEvaluator> out;
  out.reserve(k_hi - k_lo + 1);
  for (int k = k_lo; k <= k_hi; ++k) out.push_back(build_chain(a, spec, k));
  return out;
}

ChainResidual chain_relation_check(const TwoStepAlgebra& a, const ChainSpec& spec, int k,
                                   int n_points, std::uint64_t seed, double box_v, double box_z,
                                   double step) {
  const PointEvaluator fk = build_chain(a, spec, k);
  const PointEvaluator fk1 = build_chain(a, spec, k + 1);
  std::mt19937_64 rng(seed);
  ChainResidual out;
  for (int p = 0; p < n_points; ++p) {
    GroupElement g{random_vector(rng, a.m(), -box_v, box_v),
                   random_vector(rng, a.k(), -box_z, box_z)};
    const std::complex<double> lhs = sublaplacian_apply(a, fk, g, step);
    const std::complex<double> rhs = fk1(g);
    out.max_residual = std::max(out.max_residual, std::abs(lhs - rhs));
    out.max_ref = std::max(out.max_ref, std::abs(rhs));
  }
  return out;
}

double sup_norm_estimate(const TwoStepAlgebra& a, const PointEvaluator& f, double box_v,
                         double box_z, std::uint64_t seed, int samples, int refine_sweeps) {
  std::mt19937_64 rng(seed);
  const int m = a.m(), k = a.k();
  GroupElement best{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(k)};
  double best_val = std::abs(f(best));
  for (int s = 0; s < samples; ++s) {
    GroupElement g{random_vector(rng, m, -box_v, box_v), random_vector(rng, k, -box_z, box_z)};
    const double val = std::abs(f(g));
    if (val > best_val) {
      best_val = val;
      best = g;
    }
  }
  // Coordinate descent with shrinking steps around the best sample.
  double step_v = box_v / 4.0, step_z = box_z / 4.0;
  for (int sweep = 0; sweep < refine_sweeps; ++sweep) {
    for (int i = 0; i < m + k; ++i) {
      const bool horizontal = i < m;
      const double st = horizontal ? step_v : step_z;
      for (const double dir : {st, -st}) {
        GroupElement cand = best;
        if (horizontal)
          cand.v[i] += dir;
        else
          cand.z[i - m] += dir;
        const double val = std::abs(f(cand));
        if (val > best_val) {
          best_val = val;
          best = cand;
        }
      }
    }
    step_v *= 0.7;
    step_z *= 0.7;
  }
  return best_val;
}

namespace {

// Shared workhorse: tensor trapezoid nodes of a bump box with nonzero bump
// weight, each carrying an HLambda.
struct SmearNode {
  HLambda h;
  double weight;  // quadrature weight x bump value(s)
};

std::vector<SmearNode> smear_nodes(const TwoStepAlgebra& a, const MultiIndex& alpha,
                                   const BumpSpec& phi, const BumpSpec* psi, int nodes_per_axis) {
  if (phi.center.size() != a.k())
    throw std::invalid_argument("bump center must have k components");
  const TrapezoidRule rule = trapezoid(phi.radius, nodes_per_axis);
  const int k = a.k();
  long total = 1;
  for (int ax = 0; ax < k; ++ax) total *= nodes_per_axis;
  std::vector<SmearNode> out;
  Eigen::VectorXd lambda(k);
  for (long i = 0; i < total; ++i) {
    long rem = i;
    double w = 1.0;
    for (int ax = k - 1; ax >= 0; --ax) {
      const int q = static_cast<int>(rem % nodes_per_axis);
      rem /= nodes_per_axis;
      lambda[ax] = phi.center[ax] + rule.nodes[q];
      w *= rule.weights[q];
    }
    double density = bump_value(phi, lambda);
    if (psi) density *= bump_value(*psi, lambda);
    if (density == 0.0) continue;
    out.push_back({HLambda(a, lambda, alpha), w * density});
  }
  if (out.empty()) throw std::invalid_argument("bump quadrature has no interior nodes");
  return out;
}

}  // namespace

PointEvaluator build_F_alpha(const TwoStepAlgebra& a, const MultiIndex& alpha,
                             const BumpSpec& phi, int lambda_nodes) {
  auto nodes = std::make_shared<std::vector<SmearNode>>(
      smear_nodes(a, alpha, phi, nullptr, lambda_nodes));
  // Cache of the v-dependent factors for the most recent v; reused across
  // the central coordinates when callers sweep t for fixed v.
  struct Cache {
    Eigen::VectorXd v;
    std::vector<std::complex<double>> parts;
    bool valid = false;
  };
  auto cache = std::make_shared<Cache>();
  return [nodes, cache](const GroupElement& g) {
    if (!cache->valid || cache->v.size() != g.v.size() || cache->v != g.v) {
      cache->parts.resize(nodes->size());
      for (size_t i = 0; i < nodes->size(); ++i)
        cache->parts[i] = (*nodes)[i].weight * (*nodes)[i].h.phi_part(g.v);
      cache->v = g.v;
      cache->valid = true;
    }
    std::complex<double> acc{0.0, 0.0};
    for (size_t i = 0; i < nodes->size(); ++i)
      acc += cache->parts[i] * std::polar(1.0, (*nodes)[i].h.lambda_tilde().dot(g.z));
    return acc;
  };
}

ProbeResult concentration_probe(const TwoStepAlgebra& a, const ChainSpec& spec,
                                const BumpSpec& phi, const BumpSpec& psi, int l_max,
                                std::vector<double> windows, const ProbeSettings& settings) {
  if (spec.terms.empty()) throw std::invalid_argument("concentration_probe: empty chain");
  if (windows.empty()) throw std::invalid_argument("concentration_probe: need window radii");
  std::sort(windows.begin(), windows.end());
  const int m = a.m(), k = a.k();

  // All kernel terms: the smeared pairing field K uses phi * psi.
  const MultiIndex& alpha = spec.terms.front().alpha;
  const std::vector<SmearNode> kernel = smear_nodes(a, alpha, phi, &psi, settings.lambda_nodes);

  // Chain pieces with their (-|lambda|)^l factored out per l later.
  std::vector<HLambda> terms;
  terms.reserve(spec.terms.size());
  for (const auto& t : spec.terms) terms.emplace_back(a, t.lambda, t.alpha);

  // t-lattice: multiples of t_spacing up to the largest window.
  const double r_max = windows.back();
  const int j_max = static_cast<int>(std::round(r_max / settings.t_spacing));
  const int t_points = 2 * j_max + 1;
  long t_total = 1;
  for (int ax = 0; ax < k; ++ax) t_total *= t_points;

  const GridSpec v_grid = GridSpec::uniform(m, settings.v_box, settings.v_points);
  const long v_total = v_grid.size();

  ProbeResult result;
  result.windows = windows;
  result.pairings.assign(windows.size(),
                         std::vector<std::complex<double>>(l_max + 1, {0.0, 0.0}));

  double kernel_max = 0.0, kernel_edge = 0.0;
  Eigen::ArrayXi vidx;
  std::vector<std::complex<double>> kernel_parts(kernel.size());
  std::vector<std::complex<double>> term_parts(terms.size());
  std::vector<std::complex<double>> fl(l_max + 1);
  Eigen::VectorXd tvec(k);
  Eigen::ArrayXi tj(k);

  for (long iv = 0; iv < v_total; ++iv) {
    const Eigen::VectorXd v = v_grid.point(iv);
    v_grid.unflatten(iv, vidx);
    double wv = 1.0;
    bool v_edge = false;
    for (int ax = 0; ax < m; ++ax) {
      const bool boundary = vidx[ax] == 0 || vidx[ax] == v_grid.points[ax] - 1;
      wv *= boundary ? 0.5 * v_grid.spacing(ax) : v_grid.spacing(ax);
      v_edge = v_edge || boundary;
    }
    for (size_t i = 0; i < kernel.size(); ++i)
      kernel_parts[i] = kernel[i].weight * kernel[i].h.phi_part(v);
    for (size_t i = 0; i < terms.size(); ++i)
      term_parts[i] = spec.terms[i].coeff * terms[i].phi_part(v);

    for (long it = 0; it < t_total; ++it) {
      long rem = it;
      int linf = 0;
      for (int ax = k - 1; ax >= 0; --ax) {
        const int q = static_cast<int>(rem % t_points);
        rem /= t_points;
        tj[ax] = q - j_max;
        linf = std::max(linf, std::abs(q - j_max));
        tvec[ax] = (q - j_max) * settings.t_spacing;
      }
      std::complex<double> kval{0.0, 0.0};
      for (size_t i = 0; i < kernel.size(); ++i)
        kval += kernel_parts[i] * std::polar(1.0, kernel[i].h.lambda_tilde().dot(tvec));
      const double kmag = std::abs(kval);
      kernel_max = std::max(kernel_max, kmag);
      if (v_edge) kernel_edge = std::max(kernel_edge, kmag);

      // f_l at (v, t) for every l: each term contributes its value times
      // the running power (-|lambda|)^l.
      std::fill(fl.begin(), fl.end(), std::complex<double>{0.0, 0.0});
      for (size_t i = 0; i < terms.size(); ++i) {
        const std::complex<double> base =
            term_parts[i] * std::polar(1.0, terms[i].lambda_tilde().dot(tvec));
        const double ev = -spec.terms[i].lambda.norm();
        double pw = 1.0;
        for (int l = 0; l <= l_max; ++l) {
          fl[l] += base * pw;
          pw *= ev;
        }
      }

      for (size_t w = 0; w < windows.size(); ++w) {
        const int jw = static_cast<int>(std::round(windows[w] / settings.t_spacing));
        if (linf > jw) continue;
        double wt = wv;
        for (int ax = 0; ax < k; ++ax) {
          const bool boundary = std::abs(tj[ax]) == jw;
          wt *= boundary ? 0.5 * settings.t_spacing : settings.t_spacing;
        }
        for (int l = 0; l <= l_max; ++l) result.pairings[w][l] += wt * fl[l] * kval;
      }
    }
  }
  if (kernel_edge > 1e-6 * kernel_max)
    throw TruncationError("concentration_probe: kernel has not decayed at the v-box edge");

  for (size_t w = 0; w < windows.size(); ++w) {
    double log_acc = 0.0;
    int count = 0;
    for (int l = 0; l < l_max; ++l) {
      const double num = std::abs(result.pairings[w][l + 1]);
      const double den = std::abs(result.pairings[w][l]);
      if (den > 0.0 && num > 0.0) {
        log_acc += std::log(num / den);
        ++count;
      }
    }
    result.ratios.push_back(count > 0 ? std::exp(log_acc / count) : 0.0);
  }
  return result;
}

}  // namespace nilharm
