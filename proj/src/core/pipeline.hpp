#pragma once

#include <optional>
#include <vector>

#include "core/clumping.hpp"
#include "core/domain.hpp"
#include "core/dyadic.hpp"
#include "core/graph.hpp"
#include "core/gridfactor.hpp"
#include "core/indexing.hpp"
#include "core/treefactor.hpp"

namespace ppf {

struct BuildOptions {
  std::size_t k0 = 2;
  std::optional<double> net_unit;
  int grid_dim = 2;
  std::vector<int> schedule;
  bool allow_remainder = false;
};

// index -> nets -> Voronoi clumping -> tree
struct TreeArtifacts {
  IndexAssignment index;
  NetHierarchy nets;
  Clumping clumping;
  FactorGraph tree;
};

TreeArtifacts build_tree_artifacts(const PointConfig& config, const BuildOptions& options = {});

PathFactor build_path(const TreeArtifacts& tree);

DyadicResult build_dyadic(const TreeArtifacts& tree, const BuildOptions& options = {});

// Tree artifacts followed by the unscheduled dyadic clumping and the grid.
struct GridArtifacts {
  TreeArtifacts tree;
  DyadicResult dyadic;
  GridEmbedding grid;
};

GridArtifacts build_grid_artifacts(const PointConfig& config, const BuildOptions& options = {});

}  // namespace ppf
