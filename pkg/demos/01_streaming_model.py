"""A processor reads one token at a time; its memory image is a bit string we can measure."""
import io

from streambounds import dumps_stream, loads_stream, run_stream
from streambounds.algorithms import tree_depth_processor
from streambounds.generators import random_tree

# a random rooted tree on 12 nodes, queried at one node
s = random_tree(12, seed=3)
print(dumps_stream(s))

# the text format round-trips
assert loads_stream(dumps_stream(s)) == s

# feed it, checking the state size after every token
answer, peak = run_stream(tree_depth_processor(), s)
print("depth of", s.query[0], "=", answer, "peak state bits =", peak)

# the memory image can be cut mid-stream and resumed elsewhere
proc = tree_depth_processor().init(s.n, query=s.query, root=s.root)
tokens = list(s.tape())
half = len(tokens) // 2
for tok in tokens[:half]:
    proc.feed(tok)
t = proc.snapshot()
print("transcript after", half, "tokens:", t.bit_len, "bits")

other = tree_depth_processor().restore(t)
for tok in tokens[half:]:
    other.feed(tok)
print("resumed answer:", other.finish())
