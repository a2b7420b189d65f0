"""One memory image, many continuations: depths of every node, and a global min cut."""
from streambounds.algorithms import tree_depth_processor, weighted_st_mincut_processor
from streambounds.generators import deferred_leaf_tree, random_connected_graph
from streambounds.graph_oracles import StaticGraph, global_min_cut
from streambounds.reductions import forked_st_cuts, fork_replay_depth_extraction

tree, v, parent = deferred_leaf_tree(15, seed=2)
print("withheld leaf", v, "parent", parent)
depths = fork_replay_depth_extraction(tree, v, tree_depth_processor)
print({u: depths[u] for u in sorted(depths)})

# %% attach fresh nodes to x and to each other node in turn
g = random_connected_graph(10, 0.3, seed=5)
cuts = forked_st_cuts(g, 0, weighted_st_mincut_processor)
print("forked cut values", cuts)
print("min over forks", min(cuts.values()), "oracle", global_min_cut(StaticGraph.from_stream(g)))
