#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "ukm/error.hpp"
#include "ukm/instances.hpp"
#include "ukm/metric_io.hpp"

namespace ukm {

std::string to_string(InstanceFamily family) {
  switch (family) {
    case InstanceFamily::hidden_cluster: return "hidden-cluster";
    case InstanceFamily::far_group: return "far-group";
    case InstanceFamily::gaussian_mixture: return "gaussian-mixture";
    case InstanceFamily::graph_random: return "graph-random";
  }
  return "unknown";
}

InstanceFamily parse_instance_family(const std::string& name) {
  if (name == "hidden-cluster") return InstanceFamily::hidden_cluster;
  if (name == "far-group") return InstanceFamily::far_group;
  if (name == "gaussian-mixture") return InstanceFamily::gaussian_mixture;
  if (name == "graph-random") return InstanceFamily::graph_random;
  fail(ErrorCode::invalid_input, "unknown instance family '" + name + "'");
}

namespace {

Dataset line_dataset(const std::vector<double>& values) {
  return Dataset(std::make_shared<EuclideanSpace>(1, values.size(), values));
}

}  // namespace

Instance gen_hidden_cluster(std::size_t n, double beta, int t, std::uint64_t seed) {
  require(beta > 0.0 && beta <= 1.0, "beta must lie in (0, 1]");
  require(t == 1 || t == 2, "t must be 1 or 2");
  require(static_cast<double>(n) >= 10.0 / beta, "n must be at least 10 / beta");
  const double exact = beta * static_cast<double>(n) / 2.0;
  const auto m = static_cast<std::size_t>(std::floor(exact));
  require(m >= 1, "beta * n / 2 must be at least 1");

  std::vector<PointId> ids(n);
  std::iota(ids.begin(), ids.end(), PointId{0});
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<PointId> marked(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(m));
  std::sort(marked.begin(), marked.end());

  std::vector<double> values(n, 0.0);
  for (PointId id : marked) values[id] = static_cast<double>(t);

  InstanceDescriptor desc{InstanceFamily::hidden_cluster,
                          {{"n", double(n)}, {"beta", beta}, {"t", double(t)},
                           {"cluster_size", double(m)}},
                          seed, ""};
  if (static_cast<double>(m) != exact) {
    std::ostringstream note;
    note << "beta*n/2 = " << exact << " rounded down to " << m;
    desc.notes = note.str();
  }
  return {line_dataset(values), std::move(desc), std::move(marked)};
}

Instance gen_far_group(std::size_t n, std::size_t f, double w, std::uint64_t seed) {
  require(f >= 3, "f must be at least 3");
  require(2 * f < n, "f must be smaller than n / 2");
  require(w >= 100.0 * static_cast<double>(n), "w must be at least 100 n");
  const double exact = static_cast<double>(n) / (1.01 * static_cast<double>(f));
  const auto far = static_cast<std::size_t>(std::floor(exact));
  require(far >= 1, "n / (1.01 f) must be at least 1");

  const std::size_t total = 3 * n + far;
  std::vector<double> groups;
  groups.reserve(total);
  groups.insert(groups.end(), n, 0.0);
  groups.insert(groups.end(), n, 1.0);
  groups.insert(groups.end(), n, w);
  groups.insert(groups.end(), far, w + static_cast<double>(f));

  std::vector<PointId> perm(total);
  std::iota(perm.begin(), perm.end(), PointId{0});
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> values(total);
  std::vector<PointId> marked;
  for (std::size_t i = 0; i < total; ++i) {
    values[i] = groups[perm[i]];
    if (perm[i] >= 3 * n) marked.push_back(static_cast<PointId>(i));
  }

  std::ostringstream note;
  note << "far group n/(1.01 f) = " << exact << " rounded down to " << far;
  InstanceDescriptor desc{InstanceFamily::far_group,
                          {{"n", double(n)}, {"f", double(f)}, {"w", w},
                           {"far_count", double(far)},
                           {"optimal_cost", double(far) * double(f)}},
                          seed, note.str()};
  return {line_dataset(values), std::move(desc), std::move(marked)};
}

Instance gen_gaussian_mixture(std::size_t k, std::size_t per_cluster, std::size_t dim,
                              double separation, double spread, std::uint64_t seed) {
  require(k >= 1 && per_cluster >= 1 && dim >= 1, "k, per_cluster and dim must be positive");
  require(separation > 0.0, "separation must be positive");
  require(spread >= 0.0, "spread must be nonnegative");

  std::size_t side = 1;
  while (std::pow(static_cast<double>(side), static_cast<double>(dim)) < static_cast<double>(k)) {
    ++side;
  }
  const std::size_t n = k * per_cluster;
  std::vector<double> coords(dim * n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> center(dim);
    std::size_t code = c;
    for (std::size_t d = 0; d < dim; ++d) {
      center[d] = separation * static_cast<double>(code % side);
      code /= side;
    }
    for (std::size_t p = 0; p < per_cluster; ++p) {
      const std::size_t i = c * per_cluster + p;
      for (std::size_t d = 0; d < dim; ++d) {
        coords[d * n + i] = center[d] + spread * noise(rng);
      }
    }
  }
  InstanceDescriptor desc{InstanceFamily::gaussian_mixture,
                          {{"k", double(k)}, {"per_cluster", double(per_cluster)},
                           {"dim", double(dim)}, {"separation", separation},
                           {"spread", spread}},
                          seed, ""};
  return {Dataset(std::make_shared<EuclideanSpace>(dim, n, std::move(coords))),
          std::move(desc), {}};
}

Instance gen_graph_random(std::size_t num_vertices, std::size_t num_edges, double wmax,
                          std::uint64_t seed) {
  const std::size_t nv = num_vertices;
  require(nv >= 2, "graph needs at least two vertices");
  require(num_edges + 1 >= nv, "need at least nv - 1 edges");
  require(num_edges <= nv * (nv - 1) / 2, "more edges than vertex pairs");
  require(wmax > 0.0 && std::isfinite(wmax), "wmax must be positive");

  // Weight grid: unit * j for j in [1, jmax], unit a power of two.
  const double unit = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(wmax))) - 20);
  const auto jmax = static_cast<std::uint64_t>(std::floor(wmax / unit));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> step(1, jmax);
  auto weight = [&] { return unit * static_cast<double>(step(rng)); };

  std::vector<PointId> perm(nv);
  std::iota(perm.begin(), perm.end(), PointId{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  edges.reserve(num_edges);
  std::set<std::pair<PointId, PointId>> present;
  auto add = [&](PointId a, PointId b) {
    edges.push_back({a, b, weight()});
    present.emplace(std::min(a, b), std::max(a, b));
  };
  for (std::size_t i = 1; i < nv; ++i) {
    const std::size_t parent = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
    add(perm[i], perm[parent]);
  }
  std::uniform_int_distribution<PointId> vertex(0, static_cast<PointId>(nv - 1));
  if (num_edges - edges.size() > (nv * (nv - 1) / 2 - edges.size()) / 2) {
    // Dense request: enumerate missing pairs instead of rejection sampling.
    std::vector<std::pair<PointId, PointId>> missing;
    for (PointId a = 0; a < nv; ++a) {
      for (PointId b = a + 1; b < nv; ++b) {
        if (!present.count({a, b})) missing.emplace_back(a, b);
      }
    }
    std::shuffle(missing.begin(), missing.end(), rng);
    for (std::size_t i = 0; edges.size() < num_edges; ++i) add(missing[i].first, missing[i].second);
  } else {
    while (edges.size() < num_edges) {
      const PointId a = vertex(rng), b = vertex(rng);
      if (a == b || present.count({std::min(a, b), std::max(a, b)})) continue;
      add(a, b);
    }
  }
  InstanceDescriptor desc{InstanceFamily::graph_random,
                          {{"nv", double(nv)}, {"ne", double(num_edges)}, {"wmax", wmax}},
                          seed, ""};
  return {Dataset(std::make_shared<GraphSpace>(nv, edges)), std::move(desc), {}};
}

void write_instance(std::ostream& out, const Instance& instance) {
  const auto& m = instance.data.metric();
  if (const auto* e = dynamic_cast<const EuclideanSpace*>(&m)) {
    write_euclidean_csv(out, *e);
  } else if (const auto* g = dynamic_cast<const GraphSpace*>(&m)) {
    write_edge_list(out, *g);
  } else if (const auto* x = dynamic_cast<const MatrixSpace*>(&m)) {
    write_distance_matrix(out, *x);
  } else {
    fail(ErrorCode::invalid_input, "instance backend cannot be serialized");
  }
}

}  // namespace ukm
