"""Regenerate the bundled graph6 corpora.

Graphs are built by vertex augmentation: every graph on n vertices arises
from some graph on n - 1 vertices by adding a vertex with a chosen
neighbourhood.  Isomorphs are removed with nauty canonical labels
(pynauty), and each graph is written in canonical labelling.

    python3 tools/gen_corpus.py [--out src/arboricity/data]

Needs ``pip install pynauty``; the package itself does not.
"""

from __future__ import annotations

import argparse
import sys
from itertools import combinations
from pathlib import Path

import pynauty

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from arboricity.graph import Graph, to_graph6  # noqa: E402


def _canon(n: int, adj: list[set[int]]) -> tuple[bytes, tuple]:
    pg = pynauty.Graph(n, adjacency_dict={v: sorted(adj[v]) for v in range(n)})
    lab = pynauty.canon_label(pg)
    pos = {old: new for new, old in enumerate(lab)}
    edges = tuple(sorted(tuple(sorted((pos[u], pos[v]))) for u in range(n) for v in adj[u] if u < v))
    return pynauty.certificate(pg), edges


def all_graphs(n_max: int, max_edges: dict[int, int] | None = None) -> dict[int, list[tuple]]:
    """Unlabelled graphs on 1..n_max vertices as canonical edge tuples.

    ``max_edges[n]`` optionally caps the edge count at order ``n``.  Caps
    are safe because deleting a vertex never adds edges.
    """
    max_edges = max_edges or {}
    levels = {1: [()]}
    for n in range(2, n_max + 1):
        cap = max_edges.get(n)
        seen: dict[bytes, tuple] = {}
        for edges in levels[n - 1]:
            m = len(edges)
            if cap is not None and m > cap:
                continue
            room = n - 1 if cap is None else min(n - 1, cap - m)
            for size in range(room + 1):
                for nbrs in combinations(range(n - 1), size):
                    adj = [set() for _ in range(n)]
                    for u, v in edges:
                        adj[u].add(v)
                        adj[v].add(u)
                    for u in nbrs:
                        adj[u].add(n - 1)
                        adj[n - 1].add(u)
                    cert, canon = _canon(n, adj)
                    seen.setdefault(cert, canon)
        levels[n] = sorted(seen.values(), key=lambda e: (len(e), e))
        print(f"n={n}: {len(levels[n])} graphs", file=sys.stderr)
    return levels


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "src" / "arboricity" / "data"))
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    # every graph on <= 8 vertices; at 9 vertices only those with <= 14 edges
    levels = all_graphs(9, max_edges={9: 14})
    with open(out / "connected_upto8.g6", "w") as fh:
        for n in range(1, 9):
            for edges in levels[n]:
                g = Graph(n, edges)
                if g.is_connected():
                    fh.write(to_graph6(g) + "\n")
    with open(out / "connected9_sparse.g6", "w") as fh:
        for edges in levels[9]:
            g = Graph(9, edges)
            if g.is_connected():
                fh.write(to_graph6(g) + "\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
