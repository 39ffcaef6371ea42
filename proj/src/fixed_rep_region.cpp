#include "rdc/fixed_rep_region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "rdc/errors.hpp"
#include "rdc/parallel.hpp"
#include "rdc/simplex.hpp"
#include "rdc/transport.hpp"

namespace rdc {

namespace {

constexpr std::size_t kDecoderBudget = 1000000;

// Label uncertainty of a partition of Z: cells[z] assigns letter z to one of
// `n_cells` groups; returns sum over groups of p(group) * H(S | group).
double partition_class_loss(const FixedRepresentation& rep,
                            const std::vector<std::size_t>& cells,
                            std::size_t n_cells) {
  const std::size_t m = rep.src.m();
  std::vector<std::vector<double>> rows(n_cells, std::vector<double>(m, 0.0));
  for (std::size_t z = 0; z < rep.z_count(); ++z)
    for (std::size_t s = 0; s < m; ++s) rows[cells[z]][s] += rep.joint_zs[z][s];
  double c = 0.0;
  for (std::size_t a = 0; a < n_cells; ++a) {
    double p = 0.0;
    for (std::size_t s = 0; s < m; ++s) p += rows[a][s];
    if (p <= 0.0) continue;
    for (std::size_t s = 0; s < m; ++s) {
      const double v = rows[a][s];
      if (v > 0.0) c += v * std::log(p / v);
    }
  }
  return c;
}

std::size_t decoder_space(const FixedRepresentation& rep) {
  const std::size_t k = rep.src.k();
  std::size_t total = 1;
  for (std::size_t z = 0; z < rep.z_count(); ++z) {
    if (total > kDecoderBudget / k + 1) {
      char buf[120];
      std::snprintf(buf, sizeof buf,
                    "decoder enumeration: %zu^%zu decoders exceed the budget "
                    "of %zu",
                    k, rep.z_count(), kDecoderBudget);
      throw DecoderSpaceTooLarge(buf);
    }
    total *= k;
  }
  if (total > kDecoderBudget) {
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "decoder enumeration: %zu decoders exceed the budget of %zu",
                  total, kDecoderBudget);
    throw DecoderSpaceTooLarge(buf);
  }
  return total;
}

// Decoder id encoding: digit z in base k selects the image of letter z.
void decode_id(std::size_t id, std::size_t k, std::vector<std::size_t>& g) {
  for (std::size_t z = 0; z < g.size(); ++z) {
    g[z] = id % k;
    id /= k;
  }
}

struct ScoredDecoder {
  double d = 0.0;
  double c = 0.0;
  std::size_t id = 0;
};

// Lower-left staircase of a point cloud: sort by (d, c, id) and keep points
// that strictly improve the label uncertainty.
std::vector<ScoredDecoder> pareto_filter(std::vector<ScoredDecoder> pts) {
  std::sort(pts.begin(), pts.end(), [](const ScoredDecoder& a, const ScoredDecoder& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.c != b.c) return a.c < b.c;
    return a.id < b.id;
  });
  std::vector<ScoredDecoder> keep;
  double best_c = std::numeric_limits<double>::infinity();
  for (const ScoredDecoder& p : pts) {
    if (p.c < best_c) {
      keep.push_back(p);
      best_c = p.c;
    }
  }
  return keep;
}

}  // namespace

std::vector<double> charged_entropies(const FixedRepresentation& rep) {
  const std::size_t n = rep.src.n();
  const std::size_t m = rep.src.m();
  std::vector<double> column_entropy(n);
  std::vector<double> col(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < m; ++s) col[s] = rep.src.t[s][i];
    column_entropy[i] = entropy(col);
  }
  std::vector<double> h(rep.src.k());
  for (std::size_t a = 0; a < h.size(); ++a) {
    std::size_t best = 0;
    double best_dist = std::abs(rep.src.values[0] - rep.src.reconstruction_values[a]);
    for (std::size_t i = 1; i < n; ++i) {
      const double dist =
          std::abs(rep.src.values[i] - rep.src.reconstruction_values[a]);
      if (dist < best_dist) {
        best = i;
        best_dist = dist;
      }
    }
    h[a] = column_entropy[best];
  }
  return h;
}

void FixedRepresentation::finalize() {
  src.finalize();
  const std::size_t n = src.n();
  const std::size_t m = src.m();
  const std::size_t k = src.k();
  const std::size_t nz = channel.size();
  if (nz == 0) throw ConfigError("FixedRepresentation: empty channel");
  for (const std::vector<double>& row : channel) {
    if (row.size() != n)
      throw ConfigError("FixedRepresentation: channel rows must have one entry "
                        "per source letter");
    for (double v : row)
      if (v < -1e-12)
        throw ConfigError("FixedRepresentation: negative channel entry");
  }
  for (std::size_t i = 0; i < n; ++i) {
    double col = 0.0;
    for (std::size_t z = 0; z < nz; ++z) col += channel[z][i];
    if (std::abs(col - 1.0) > 1e-9) {
      char buf[120];
      std::snprintf(buf, sizeof buf,
                    "FixedRepresentation: channel column %zu sums to %.17g",
                    i, col);
      throw ConfigError(buf);
    }
    for (std::size_t z = 0; z < nz; ++z)
      channel[z][i] = std::max(0.0, channel[z][i]) / col;
  }

  p_z.assign(nz, 0.0);
  posterior.assign(nz, std::vector<double>(n, 0.0));
  joint_zs.assign(nz, std::vector<double>(m, 0.0));
  for (std::size_t z = 0; z < nz; ++z) {
    for (std::size_t i = 0; i < n; ++i) p_z[z] += channel[z][i] * src.q[i];
    if (p_z[z] > 0.0)
      for (std::size_t i = 0; i < n; ++i)
        posterior[z][i] = channel[z][i] * src.q[i] / p_z[z];
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t i = 0; i < n; ++i)
        joint_zs[z][s] += channel[z][i] * src.q[i] * src.t[s][i];
  }

  mean_distortion.assign(nz, std::vector<double>(k, 0.0));
  for (std::size_t z = 0; z < nz; ++z)
    for (std::size_t a = 0; a < k; ++a) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        d += posterior[z][i] * src.distortion[i][a];
      mean_distortion[z][a] = d;
    }

  mmse_values.assign(nz, 0.0);
  for (std::size_t z = 0; z < nz; ++z)
    for (std::size_t i = 0; i < n; ++i)
      mmse_values[z] += posterior[z][i] * src.values[i];
  mmse_distortion = 0.0;
  for (std::size_t z = 0; z < nz; ++z) {
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = src.values[i] - mmse_values[z];
      d += posterior[z][i] * (diff * diff);
    }
    mmse_distortion += p_z[z] * d;
  }
}

RegionPoint evaluate_decoder(const FixedRepresentation& rep,
                             const std::vector<std::size_t>& g) {
  if (g.size() != rep.z_count())
    throw ConfigError("evaluate_decoder: decoder must map every letter of Z");
  for (std::size_t a : g)
    if (a >= rep.src.k())
      throw ConfigError("evaluate_decoder: reconstruction index out of range");
  RegionPoint pt;
  for (std::size_t z = 0; z < rep.z_count(); ++z)
    pt.d += rep.p_z[z] * rep.mean_distortion[z][g[z]];
  pt.c = partition_class_loss(rep, g, rep.src.k());
  return pt;
}

std::pair<RegionPoint, RegionPoint> extreme_points(const FixedRepresentation& rep) {
  const std::size_t nz = rep.z_count();
  const std::size_t k = rep.src.k();

  // Anchor a: conditional-mean reconstruction. Letters of Z with equal
  // conditional means collapse to one output point; the group index is the
  // first letter attaining the value.
  std::vector<std::size_t> group(nz, 0);
  std::vector<double> seen;
  for (std::size_t z = 0; z < nz; ++z) {
    std::size_t idx = seen.size();
    for (std::size_t j = 0; j < seen.size(); ++j)
      if (seen[j] == rep.mmse_values[z]) {
        idx = j;
        break;
      }
    if (idx == seen.size()) seen.push_back(rep.mmse_values[z]);
    group[z] = idx;
  }
  RegionPoint a;
  a.d = rep.mmse_distortion;
  a.c = partition_class_loss(rep, group, seen.size());

  // Anchor b: the deterministic decoder of minimal label uncertainty.
  const std::size_t total = decoder_space(rep);
  std::vector<std::size_t> g(nz), best_g(nz, 0);
  double best_c = std::numeric_limits<double>::infinity();
  for (std::size_t id = 0; id < total; ++id) {
    decode_id(id, k, g);
    const double c = partition_class_loss(rep, g, k);
    if (c < best_c) {
      best_c = c;
      best_g = g;
    }
  }
  DiscreteDistribution from{rep.mmse_values, rep.p_z};
  DiscreteDistribution to;
  to.support = rep.src.reconstruction_values;
  to.weights.assign(k, 0.0);
  for (std::size_t z = 0; z < nz; ++z) to.weights[best_g[z]] += rep.p_z[z];
  RegionPoint b;
  b.c = best_c;
  b.d = rep.mmse_distortion + w2_discrete(from, to).cost;
  return {a, b};
}

double outer_bound_at(const FixedRepresentation& rep, double C) {
  const std::size_t nz = rep.z_count();
  const std::size_t k = rep.src.k();
  const std::vector<double> h = charged_entropies(rep);
  const double h_min = *std::min_element(h.begin(), h.end());
  if (C < h_min - 1e-12) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "outer_bound_at: classification level %.17g nats is below "
                  "the smallest charged letter entropy %.17g",
                  C, h_min);
    throw InfeasibleClassificationLevel(buf);
  }

  // Transport LP over couplings gamma[z][a]: rows 0..nz-1 fix the source
  // marginal at p_z, row nz caps the charged entropy of the output at C via
  // a slack column.
  const std::size_t m = nz + 1;
  std::vector<std::vector<double>> cols;
  std::vector<double> costs;
  cols.reserve(nz * k + 1);
  for (std::size_t z = 0; z < nz; ++z)
    for (std::size_t a = 0; a < k; ++a) {
      std::vector<double> col(m, 0.0);
      col[z] = 1.0;
      col[nz] = h[a];
      cols.push_back(std::move(col));
      const double diff = rep.mmse_values[z] - rep.src.reconstruction_values[a];
      costs.push_back(diff * diff);
    }
  std::vector<double> slack(m, 0.0);
  slack[nz] = 1.0;
  cols.push_back(std::move(slack));
  costs.push_back(0.0);

  std::vector<double> b = rep.p_z;
  b.push_back(std::max(C, h_min));

  DenseColumns oracle(std::move(cols), std::move(costs));
  const SimplexSolution sol = solve_lp(oracle, b);
  if (sol.status != SimplexSolution::Status::Optimal)
    throw InternalError("outer_bound_at: transport program reported infeasible");
  return rep.mmse_distortion + std::max(0.0, sol.objective);
}

std::vector<RegionPoint> outer_bound_curve(const FixedRepresentation& rep,
                                           const std::vector<double>& c_grid) {
  if (c_grid.empty())
    throw ConfigError("outer_bound_curve: empty classification grid");
  std::vector<RegionPoint> out;
  out.reserve(c_grid.size());
  for (double c : c_grid) out.push_back({outer_bound_at(rep, c), c});
  return out;
}

bool convention_sound(const FixedRepresentation& rep) {
  const std::vector<double> h = charged_entropies(rep);
  const double h_max = *std::max_element(h.begin(), h.end());
  double z_min = std::numeric_limits<double>::infinity();
  const std::size_t m = rep.src.m();
  std::vector<double> label(m);
  for (std::size_t z = 0; z < rep.z_count(); ++z) {
    if (rep.p_z[z] <= 0.0) continue;
    std::fill(label.begin(), label.end(), 0.0);
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t i = 0; i < rep.src.n(); ++i)
        label[s] += rep.src.t[s][i] * rep.posterior[z][i];
    z_min = std::min(z_min, entropy(label));
  }
  return h_max <= z_min;
}

std::vector<RegionPoint> decoder_oracle(const FixedRepresentation& rep,
                                        int stochastic_grid) {
  if (stochastic_grid < 1)
    throw ConfigError("decoder_oracle: stochastic_grid must be >= 1");
  const std::size_t total = decoder_space(rep);
  const std::size_t nz = rep.z_count();
  const std::size_t k = rep.src.k();
  const std::size_t m = rep.src.m();

  std::vector<ScoredDecoder> scored(total);
  parallel_for(std::size_t{0}, total, [&](std::size_t id) {
    std::vector<std::size_t> g(nz);
    decode_id(id, k, g);
    double d = 0.0;
    for (std::size_t z = 0; z < nz; ++z)
      d += rep.p_z[z] * rep.mean_distortion[z][g[z]];
    scored[id] = {d, partition_class_loss(rep, g, k), id};
  });

  std::vector<ScoredDecoder> frontier = pareto_filter(std::move(scored));

  // Stochastic decoders: mix the kernels of adjacent frontier decoders.
  // Distortion mixes linearly; the label uncertainty of the mixed output is
  // computed exactly from the blended joint.
  std::vector<ScoredDecoder> enriched = frontier;
  std::vector<std::size_t> g1(nz), g2(nz);
  std::vector<std::vector<double>> rows(k, std::vector<double>(m));
  for (std::size_t p = 0; p + 1 < frontier.size(); ++p) {
    decode_id(frontier[p].id, k, g1);
    decode_id(frontier[p + 1].id, k, g2);
    for (int t = 1; t < stochastic_grid; ++t) {
      const double lam = static_cast<double>(t) / stochastic_grid;
      ScoredDecoder mix;
      mix.d = (1.0 - lam) * frontier[p].d + lam * frontier[p + 1].d;
      mix.id = frontier[p].id;
      for (auto& row : rows) std::fill(row.begin(), row.end(), 0.0);
      for (std::size_t z = 0; z < nz; ++z)
        for (std::size_t s = 0; s < m; ++s) {
          rows[g1[z]][s] += (1.0 - lam) * rep.joint_zs[z][s];
          rows[g2[z]][s] += lam * rep.joint_zs[z][s];
        }
      double c = 0.0;
      for (std::size_t a = 0; a < k; ++a) {
        double pa = 0.0;
        for (std::size_t s = 0; s < m; ++s) pa += rows[a][s];
        if (pa <= 0.0) continue;
        for (std::size_t s = 0; s < m; ++s)
          if (rows[a][s] > 0.0) c += rows[a][s] * std::log(pa / rows[a][s]);
      }
      mix.c = c;
      enriched.push_back(mix);
    }
  }

  std::vector<ScoredDecoder> final_frontier = pareto_filter(std::move(enriched));
  std::vector<RegionPoint> out;
  out.reserve(final_frontier.size());
  for (const ScoredDecoder& p : final_frontier) out.push_back({p.d, p.c});
  return out;
}

std::pair<double, double> gap_lower_bounds(double sigma2_x, double sigma2_xhat3,
                                           double d1) {
  if (!(sigma2_x > 0.0))
    throw NonPositiveVariance("gap_lower_bounds: sigma2_x must be positive");
  if (sigma2_xhat3 < 0.0)
    throw NegativeVariance("gap_lower_bounds: sigma2_xhat3 must be nonnegative");
  if (!(d1 >= 0.0) || d1 > sigma2_x) {
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "gap_lower_bounds: d1=%.17g outside [0, sigma2_x=%.17g]", d1,
                  sigma2_x);
    throw D1OutOfRange(buf);
  }
  const double core = sigma2_x + sigma2_xhat3 -
                      2.0 * std::sqrt(sigma2_xhat3) * std::sqrt(sigma2_x - d1);
  const double gap = core - 2.0 * d1;
  const double ratio =
      d1 == 0.0 ? std::numeric_limits<double>::infinity() : core / (2.0 * d1);
  return {gap, ratio};
}

RegionEstimate estimate_region(const FixedRepresentation& rep,
                               const std::vector<double>& c_grid,
                               int stochastic_grid) {
  RegionEstimate est;
  est.inner_points = decoder_oracle(rep, stochastic_grid);
  est.outer_curve = outer_bound_curve(rep, c_grid);
  const auto [a, b] = extreme_points(rep);
  est.extreme_a = a;
  est.extreme_b = b;
  est.convention_ok = convention_sound(rep);
  return est;
}

}  // namespace rdc
