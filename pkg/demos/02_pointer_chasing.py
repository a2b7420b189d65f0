"""Pointer chasing turned into a tree, and the tree-depth processor used as a protocol."""
from streambounds.algorithms import tree_depth_processor
from streambounds.comm_problems import eval_pointer_chase, gen_random
from streambounds.graph_oracles import StaticGraph, bfs_depths
from streambounds.reductions import build_pc_tree, decode_pc_depth, simulate_pc_protocol

inst = gen_random("pc", m=5, q=3, seed=11)
for j, f in enumerate(inst.tables, 1):
    print(f"player {j}: f = {f.img}")
print("chase value:", eval_pointer_chase(inst))

# %% the tree: one layer per function, plus a spine hanging off the last layer
g = build_pc_tree(inst)
print("nodes", g.stream.n, "edges", len(g.stream.edges), "players", g.players)
depth = bfs_depths(StaticGraph.from_stream(g.stream), g.terminals["N"])
d = depth[g.terminals["n1"]]
print("depth of n1 =", d, "-> decodes to", decode_pc_depth(d, inst.q, inst.m))

# %% each player feeds its edges, then hands the memory image to the next
run = simulate_pc_protocol(inst, tree_depth_processor)
print("protocol answer", run.answer, "referee", run.referee)
print("handoffs", run.handoffs, "bits per handoff", run.transcript_bits)
print("total communication", run.comm_bits)
