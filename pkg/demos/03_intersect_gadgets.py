"""Set chasing on two sides; three gadgets whose answers all flip with the intersection."""
import networkx as nx

from streambounds.algorithms import negcycle_processor, scc_same_processor, weighted_st_mincut_processor
from streambounds.comm_problems import eval_intersect, gen_random
from streambounds.reductions import Variant, build_intersect_graph, simulate_intersect_protocol

factories = {Variant.CUT: weighted_st_mincut_processor,
             Variant.NEGCYCLE: negcycle_processor,
             Variant.SCC: scc_same_processor}

for seed in range(12):
    inst = gen_random("intersect", m=4, q=2, density=0.35, seed=seed)
    answers = {v.value: int(simulate_intersect_protocol(inst, f, v).answer)
               for v, f in factories.items()}
    print(f"seed {seed}: intersect={int(eval_intersect(inst))}", answers)

# %% drop the closing edge and what remains is acyclic
g = build_intersect_graph(gen_random("intersect", 4, 2, 0.5, seed=1), "scc")
G = nx.DiGraph([(t.u, t.v) for t in g.stream.edges[:-1]])
print("acyclic without the closing edge:", nx.is_directed_acyclic_graph(G))
