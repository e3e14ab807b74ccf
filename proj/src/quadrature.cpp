#include "superform/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace superform {

Rule1D gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw std::invalid_argument("quadrature order must be positive");
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n, symmetric nodes
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[i] = x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = -x;
    rule.weights[n - 1 - i] = w;
  }
  // map [-1,1] -> [lo,hi]
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = mid - half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

Rule1D periodic_uniform(int n, double lo, double hi) {
  Rule1D rule;
  const double h = (hi - lo) / n;
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(lo + (i + 0.5) * h);
    rule.weights.push_back(h);
  }
  return rule;
}

Rule1D simpson(int n, double lo, double hi) {
  if (n < 3) n = 3;
  if (n % 2 == 0) ++n;  // odd node count
  Rule1D rule;
  const double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(lo + i * h);
    double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    rule.weights.push_back(w * h / 3.0);
  }
  return rule;
}

std::vector<QuadNode> tensor_rule(const std::vector<Rule1D>& axes) {
  const int d = static_cast<int>(axes.size());
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.nodes.size();
  std::vector<QuadNode> nodes;
  nodes.reserve(total);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t c = 0; c < total; ++c) {
    QuadNode q;
    q.x = Vec(d);
    q.w = 1.0;
    for (int k = 0; k < d; ++k) {
      q.x[k] = axes[k].nodes[idx[k]];
      q.w *= axes[k].weights[idx[k]];
    }
    nodes.push_back(std::move(q));
    for (int k = d - 1; k >= 0; --k) {
      if (++idx[k] < axes[k].nodes.size()) break;
      idx[k] = 0;
    }
  }
  return nodes;
}

std::vector<QuadNode> box_rule(const Vec& lo, const Vec& hi, int nodes_per_axis) {
  std::vector<Rule1D> axes;
  for (int k = 0; k < lo.size(); ++k)
    axes.push_back(gauss_legendre(nodes_per_axis, lo[k], hi[k]));
  return tensor_rule(axes);
}

std::vector<QuadNode> ball_rule(const Vec& center, double radius, int order) {
  const int n = static_cast<int>(center.size());
  std::vector<QuadNode> nodes;
  if (n == 1) {
    Rule1D r = gauss_legendre(order, center[0] - radius, center[0] + radius);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      QuadNode q;
      q.x = Vec::Constant(1, r.nodes[i]);
      q.w = r.weights[i];
      nodes.push_back(q);
    }
  } else if (n == 2) {
    const Rule1D rr = gauss_legendre(order, 0.0, radius);
    const Rule1D rt = periodic_uniform(2 * order, 0.0, 2.0 * M_PI);
    for (std::size_t i = 0; i < rr.nodes.size(); ++i)
      for (std::size_t j = 0; j < rt.nodes.size(); ++j) {
        QuadNode q;
        q.x = Vec(2);
        q.x[0] = center[0] + rr.nodes[i] * std::cos(rt.nodes[j]);
        q.x[1] = center[1] + rr.nodes[i] * std::sin(rt.nodes[j]);
        q.w = rr.weights[i] * rt.weights[j] * rr.nodes[i];
        nodes.push_back(std::move(q));
      }
  } else if (n == 3) {
    const Rule1D rr = gauss_legendre(order, 0.0, radius);
    const Rule1D rth = gauss_legendre(order, 0.0, M_PI);
    const Rule1D rph = periodic_uniform(2 * order, 0.0, 2.0 * M_PI);
    for (std::size_t i = 0; i < rr.nodes.size(); ++i)
      for (std::size_t j = 0; j < rth.nodes.size(); ++j)
        for (std::size_t k = 0; k < rph.nodes.size(); ++k) {
          const double r = rr.nodes[i], th = rth.nodes[j], ph = rph.nodes[k];
          QuadNode q;
          q.x = Vec(3);
          q.x[0] = center[0] + r * std::sin(th) * std::cos(ph);
          q.x[1] = center[1] + r * std::sin(th) * std::sin(ph);
          q.x[2] = center[2] + r * std::cos(th);
          q.w = rr.weights[i] * rth.weights[j] * rph.weights[k] * r * r * std::sin(th);
          nodes.push_back(std::move(q));
        }
  } else {
    throw std::invalid_argument("ball quadrature implemented for n <= 3");
  }
  return nodes;
}

namespace {
std::atomic<int> g_threads{1};
}

int active_threads() { return g_threads.load(); }
void set_active_threads(int k) { g_threads.store(std::max(1, k)); }

double parallel_sum(std::size_t count, const std::function<double(std::size_t)>& f,
                    int threads) {
  constexpr std::size_t kBlock = 512;  // reduction granularity, thread-agnostic
  const std::size_t nblocks = (count + kBlock - 1) / kBlock;
  std::vector<double> block_sums(nblocks, 0.0);
  auto run_block = [&](std::size_t b) {
    double s = 0.0;
    const std::size_t end = std::min(count, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) s += f(i);
    block_sums[b] = s;
  };
  if (threads <= 1 || nblocks <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1))
        run_block(b);
    };
    std::vector<std::thread> pool;
    const int k = std::min<std::size_t>(threads, nblocks);
    pool.reserve(k);
    for (int t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  double total = 0.0;
  for (double s : block_sums) total += s;  // fixed order
  return total;
}

double superintegrate(const FormEvaluator& f, const std::vector<QuadNode>& rule) {
  return parallel_sum(
      rule.size(),
      [&](std::size_t i) { return rule[i].w * berezin_top(f(rule[i].x)); },
      active_threads());
}

double superintegrate_box(const FormEvaluator& f, const Vec& lo, const Vec& hi,
                          int nodes_per_axis) {
  return superintegrate(f, box_rule(lo, hi, nodes_per_axis));
}

double superintegrate_ball(const FormEvaluator& f, const Vec& center,
                           double radius, int order) {
  return superintegrate(f, ball_rule(center, radius, order));
}

}  // namespace superform
