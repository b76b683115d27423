#include "core/pipeline.hpp"

#include "core/error.hpp"

namespace ppf {

TreeArtifacts build_tree_artifacts(const PointConfig& config, const BuildOptions& options) {
  TreeArtifacts out;
  out.index = build_index(config, options.k0);
  out.nets = build_nets(config, out.index, options.net_unit);
  out.clumping = build_voronoi_clumping(config, out.nets, out.index);
  out.tree = tree_from_clumping(out.clumping, out.index);
  return out;
}

PathFactor build_path(const TreeArtifacts& tree) { return path_from_tree(tree.tree, tree.index); }

DyadicResult build_dyadic(const TreeArtifacts& tree, const BuildOptions& options) {
  return dyadic_clumping(tree.tree, tree.index, {options.schedule, options.allow_remainder});
}

GridArtifacts build_grid_artifacts(const PointConfig& config, const BuildOptions& options) {
  if (options.grid_dim < 1) throw Error(ErrorCode::kDimensionMismatch, "grid dimension must be >= 1");
  GridArtifacts out;
  out.tree = build_tree_artifacts(config, options);
  out.dyadic = dyadic_clumping(out.tree.tree, out.tree.index, {});
  out.grid = grid_factor(out.dyadic.clumping, out.tree.index, options.grid_dim);
  return out;
}

}  // namespace ppf
