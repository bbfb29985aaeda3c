#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace negpt::sp {

/// Weighted multigraph with designated source/target node sets.
struct QNGraph {
  struct Link {
    int u = 0;
    int v = 0;
    double chi = 0.0;
  };
  int node_count = 0;
  std::vector<Link> links;
  std::vector<int> source;
  std::vector<int> target;

  static QNGraph chain(int n_links, double chi);
  static QNGraph bundle(int n_links, double chi);

  /// Parses the edge-list format: `S:`/`T:` header lines with node ids,
  /// then one `u v chi` line per link. Node ids are nonnegative integers.
  static QNGraph parse_edge_list(std::istream& in);
  /// Parses {"links": [[u,v,chi],...], "source": [...], "target": [...]}.
  static QNGraph parse_json(const std::string& text);
};

/// Thrown when iterated series/parallel moves get stuck before reaching a
/// single S-T link; the message describes the blocking subgraph.
struct IrreducibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reduces g to a single S-T link by iterated parallel merges and
/// degree-2 series contractions; returns its ratio negativity.
double reduce_series_parallel(const QNGraph& g);

/// Y-Delta transform weight: xi = sqrt(Y3), Y3 the root of
/// Y^3 - Y^2 - Y/W + 1 = 0 in [0, W], W = chi^4.
double y_delta(double chi);

/// Numeric inverse of y_delta on [0,1].
double delta_y(double chi);

/// Closed-form bridge combination b(x, y).
double bridge_value(double x, double y);

double wheatstone_sponge(double chi);
double kelvin_sponge(double chi);

}  // namespace negpt::sp
