"""Counting cliques and reading off joints.

A joint is a bundle of (r+1)-cliques sharing one edge; js is the largest bundle.

Run: python demos/02_cliques_and_joints.py
"""

from spectral_stability import clique_stats, complete_multipartite, count_cliques, random_graph_gnp, turan_graph

# %% Complete graph: every edge of K_6 lies in C(4,1) = 4 triangles.
k6 = complete_multipartite([1] * 6)
st = clique_stats(k6, 3)
print(f"K_6: {st.total} triangles, joint size {st.joints}")

# %% A Turan graph T_r(n) has no (r+1)-clique, so its joints are empty.
t = turan_graph(15, 3)
print(f"T_3(15): k_4 = {count_cliques(t, 4)}, k_3 = {count_cliques(t, 3)}")

# %% Add a single edge inside a part: every K_4 now goes through it.
t_plus = t.with_edges([(0, 1)])
st = clique_stats(t_plus, 4)
print(f"T_3(15) + edge (0,1): k_4 = {st.total}, joint at (0,1) = {st.edge_support[(0, 1)]}")

# %% Random graphs: the heaviest edges.
g = random_graph_gnp(40, 0.4, seed=3)
st = clique_stats(g, 3)
top = sorted(st.edge_support.items(), key=lambda kv: -kv[1])[:5]
print(f"\nG(40, 0.4): {st.total} triangles; heaviest edges {top}")
