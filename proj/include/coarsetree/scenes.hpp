#pragma once

#include "coarsetree/free_group.hpp"
#include "coarsetree/tree_of_spaces.hpp"

namespace coarsetree::scenes {

TreeOfSpaces single_vertex(MetricGraph fibre);
// base path 0..length, every fibre and edge space a copy of `fibre`, identity incidence
TreeOfSpaces constant_bundle(int length, const MetricGraph& fibre);
// base path 0..levels, X_i a unit path with base_width*2^i edges; X_[i,i+1] = X_i, j -> j and j -> 2j
TreeOfSpaces doubling_bundle(int levels, int base_width);
// fibres P2, P1, point, point
TreeOfSpaces contracting_bundle();
// base path with `edges` edges, C6 fibres, point edge spaces from vertex 3 of X_i to vertex 0 of X_{i+1}
TreeOfSpaces acylindrical_chain(int edges);
// C12 fibres over any base tree; the k-th incident edge of v (by neighbour id) attaches at 4k
TreeOfSpaces acylindrical_tree(const BaseTree& base);
// star with centre 0 and three leaves; P8 centre fibre, P1 edge spaces attached at 0-1, 4-5 and 7-8
TreeOfSpaces separated_tripod();
// base path 0..length, rows x cols grid fibres, identity incidence
TreeOfSpaces grid_bundle(int rows, int cols, int length);
// two base vertices, F_2 balls of radius `radius`, edge space the ball of radius `edge_radius`
// included in X_0 and mapped by f into X_1
TreeOfSpaces f2_ball_scene(const FreeGroupAutomorphism& f, int radius = 3, int edge_radius = 1);
// spine 0..n-1 with C8 fibres and point edge spaces (vertex 0 of X_i to vertex 4 of X_{i+1});
// each spine vertex carries a pendant vertex with fibre P1 glued along a weight-4 edge space onto 2,6
TreeOfSpaces caterpillar(int spine);
std::vector<int> caterpillar_spine(int spine);

// vertex sets g<x> of a Cayley ball (labels are words), x = generator index; cosets below min_size are skipped
std::vector<std::vector<Vid>> cyclic_coset_segments(const MetricGraph& ball, int generator, std::size_t min_size = 2);

}  // namespace coarsetree::scenes
