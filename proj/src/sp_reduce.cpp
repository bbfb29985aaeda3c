#include "negpt/sp_reduce.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "negpt/rules.hpp"

namespace negpt::sp {

QNGraph QNGraph::chain(int n_links, double chi) {
  QNGraph g;
  g.node_count = n_links + 1;
  for (int i = 0; i < n_links; ++i) g.links.push_back({i, i + 1, chi});
  g.source = {0};
  g.target = {n_links};
  return g;
}

QNGraph QNGraph::bundle(int n_links, double chi) {
  QNGraph g;
  g.node_count = 2;
  for (int i = 0; i < n_links; ++i) g.links.push_back({0, 1, chi});
  g.source = {0};
  g.target = {1};
  return g;
}

QNGraph QNGraph::parse_edge_list(std::istream& in) {
  QNGraph g;
  std::string line;
  int max_node = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "S:" || head == "T:") {
      auto& set = head == "S:" ? g.source : g.target;
      int n;
      while (ls >> n) {
        set.push_back(n);
        max_node = std::max(max_node, n);
      }
    } else {
      QNGraph::Link l;
      l.u = std::stoi(head);
      if (!(ls >> l.v >> l.chi))
        throw std::runtime_error("edge list: expected `u v chi` on line: " + line);
      g.links.push_back(l);
      max_node = std::max({max_node, l.u, l.v});
    }
  }
  g.node_count = max_node + 1;
  if (g.source.empty() || g.target.empty())
    throw std::runtime_error("edge list: missing S: or T: header");
  return g;
}

QNGraph QNGraph::parse_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  QNGraph g;
  int max_node = -1;
  for (const auto& l : j.at("links")) {
    QNGraph::Link link{l.at(0).get<int>(), l.at(1).get<int>(), l.at(2).get<double>()};
    g.links.push_back(link);
    max_node = std::max({max_node, link.u, link.v});
  }
  for (const auto& n : j.at("source")) g.source.push_back(n.get<int>());
  for (const auto& n : j.at("target")) g.target.push_back(n.get<int>());
  for (int n : g.source) max_node = std::max(max_node, n);
  for (int n : g.target) max_node = std::max(max_node, n);
  g.node_count = max_node + 1;
  return g;
}

namespace {

struct WorkGraph {
  std::vector<QNGraph::Link> links;
  int s = 0;
  int t = 1;
};

// Collapse the source set into node id s and the target set into t.
WorkGraph prepare(const QNGraph& g) {
  std::map<int, int> remap;
  const int s_id = 0, t_id = 1;
  for (int n : g.source) remap[n] = s_id;
  for (int n : g.target) {
    if (remap.count(n)) throw std::domain_error("source and target sets must be disjoint");
    remap[n] = t_id;
  }
  int next = 2;
  WorkGraph w;
  for (const auto& l : g.links) {
    if (!(l.chi >= 0.0 && l.chi <= 1.0))
      throw std::domain_error("link weight outside [0,1]");
    for (int n : {l.u, l.v})
      if (!remap.count(n)) remap[n] = next++;
    int u = remap[l.u], v = remap[l.v];
    if (u == v) continue;  // internal to a terminal set
    w.links.push_back({u, v, l.chi});
  }
  return w;
}

}  // namespace

double reduce_series_parallel(const QNGraph& g) {
  WorkGraph w = prepare(g);
  auto& links = w.links;

  bool changed = true;
  while (changed) {
    changed = false;

    // Parallel merge: links sharing an unordered endpoint pair.
    std::map<std::pair<int, int>, std::vector<std::size_t>> by_pair;
    for (std::size_t i = 0; i < links.size(); ++i) {
      auto key = std::minmax(links[i].u, links[i].v);
      by_pair[{key.first, key.second}].push_back(i);
    }
    std::vector<bool> drop(links.size(), false);
    for (auto& [pair, idxs] : by_pair) {
      if (idxs.size() < 2) continue;
      std::vector<double> chis;
      for (auto i : idxs) chis.push_back(links[i].chi);
      links[idxs[0]].chi = rules::parallel_combine(chis);
      for (std::size_t j = 1; j < idxs.size(); ++j) drop[idxs[j]] = true;
      changed = true;
    }
    if (changed) {
      std::vector<QNGraph::Link> kept;
      for (std::size_t i = 0; i < links.size(); ++i)
        if (!drop[i]) kept.push_back(links[i]);
      links = std::move(kept);
      continue;
    }

    // Degree census over interior nodes.
    std::map<int, std::vector<std::size_t>> incident;
    for (std::size_t i = 0; i < links.size(); ++i) {
      incident[links[i].u].push_back(i);
      incident[links[i].v].push_back(i);
    }

    for (auto& [node, idxs] : incident) {
      if (node == w.s || node == w.t) continue;
      if (idxs.size() == 1) {
        // Dangling interior node carries no S-T path.
        links.erase(links.begin() + static_cast<std::ptrdiff_t>(idxs[0]));
        changed = true;
        break;
      }
      if (idxs.size() == 2) {
        const auto& a = links[idxs[0]];
        const auto& b = links[idxs[1]];
        const int end_a = a.u == node ? a.v : a.u;
        const int end_b = b.u == node ? b.v : b.u;
        const double chis[] = {a.chi, b.chi};
        QNGraph::Link merged{end_a, end_b, rules::series_combine(chis)};
        auto hi = std::max(idxs[0], idxs[1]);
        auto lo = std::min(idxs[0], idxs[1]);
        links.erase(links.begin() + static_cast<std::ptrdiff_t>(hi));
        links.erase(links.begin() + static_cast<std::ptrdiff_t>(lo));
        links.push_back(merged);
        changed = true;
        break;
      }
    }
  }

  if (links.size() == 1 &&
      std::minmax(links[0].u, links[0].v) == std::minmax(w.s, w.t))
    return links[0].chi;

  std::ostringstream msg;
  msg << "graph is not series-parallel reducible between S and T; stuck with "
      << links.size() << " links:";
  for (const auto& l : links) msg << " (" << l.u << "," << l.v << ")";
  throw IrreducibleError(msg.str());
}

namespace {

// Cubic in Y = xi^2 defining the Y-Delta weight, W = chi^4.
double cubic(double y, double w_inv) { return ((y - 1.0) * y - w_inv) * y + 1.0; }

double bisect_cubic(double lo, double hi, double w_inv) {
  double flo = cubic(lo, w_inv);
  const double span = hi - lo;
  for (int i = 0; i < 200 && hi - lo > 1e-17 * span; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = cubic(mid, w_inv);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double y_delta(double chi) {
  if (!(chi >= 0.0 && chi <= 1.0)) throw std::domain_error("y_delta: chi outside [0,1]");
  if (chi == 0.0) return 0.0;  // continuity limit
  if (chi == 1.0) return 1.0;
  const double w = std::pow(chi, 4);
  const double w_inv = 1.0 / w;
  // Trigonometric root Y3 of Y^3 - Y^2 - Y/W + 1 = 0.
  const double s = std::sqrt(1.0 + 3.0 * w_inv);
  double arg = 0.5 * (-9.0 * w_inv + 25.0) / (s * s * s);
  arg = std::clamp(arg, -1.0, 1.0);
  const double theta = std::acos(arg);
  double y3 = (1.0 + 2.0 * s * std::cos((theta + M_PI) / 3.0)) / 3.0;
  // The closed form cancels badly for small W. Near the root the cubic
  // slope is about -1/W, so a residual of r leaves an error of r*W in Y;
  // refine on the bracketing interval [0, W] unless that error is tiny.
  if (std::abs(cubic(y3, w_inv)) > 1e-15 * w_inv || !(y3 >= 0.0 && y3 <= w))
    y3 = bisect_cubic(0.0, w, w_inv);
  return std::sqrt(y3);
}

double delta_y(double chi) {
  if (!(chi >= 0.0 && chi <= 1.0)) throw std::domain_error("delta_y: chi outside [0,1]");
  if (chi == 0.0) return 0.0;
  if (chi == 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (y_delta(mid) < chi)
      lo = mid;
    else
      hi = mid;
  }
  const double d = 0.5 * (lo + hi);
  if (std::abs(y_delta(d) - chi) > 1e-9)
    throw std::domain_error("delta_y: chi outside the range of y");
  return d;
}

double bridge_value(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw std::domain_error("bridge_value: arguments outside [0,1]");
  const double x2 = x * x, y2 = y * y;
  const double inner = x2 * y2 - y2 + 1.0;
  const double denom = std::sqrt(x2 * x2 + (1.0 - y2) * (inner * inner - x2 * x2));
  if (denom == 0.0) return 0.0;
  return x2 / denom;
}

double wheatstone_sponge(double chi) { return bridge_value(chi, y_delta(chi)); }

double kelvin_sponge(double chi) {
  return bridge_value(chi, y_delta(chi * delta_y(chi)));
}

}  // namespace negpt::sp
