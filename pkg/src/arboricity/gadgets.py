"""Fixed host graphs carrying the two reducible configurations, plus labellers
that recover the role names (v, u_i, u'_i, x, y, ...) from any host graph.

Kind ``"A"``: a degree-9 centre ``v`` with seven degree-two neighbours
``u_1..u_7`` (far ends ``u'_i``) and two more neighbours ``x``, ``y``.

Kind ``"B"``: a degree-3 vertex ``v`` with neighbours ``v_1``, ``v_2``, ``z``;
each ``v_i`` has degree five with degree-two neighbours ``u_i``, ``w_i``
(far ends ``u'_i``, ``w'_i``) and two further neighbours ``x_i``, ``y_i``.

Both hosts are planar, connected, of girth five, with average degree below
10/3.  Their layouts are hand-fixed, never randomized.
"""

from __future__ import annotations

from .graph import ConfigurationWitness, Graph

__all__ = ["gadget_graph", "label_config_a", "label_config_b", "WitnessError"]


class WitnessError(ValueError):
    """The requested vertices do not form the configuration."""


def _gadget_a() -> tuple[Graph, ConfigurationWitness]:
    v = 0
    u = list(range(1, 8))
    up = list(range(8, 15))
    x, y, a, b, c, d = 15, 16, 17, 18, 19, 20
    edges = [(v, ui) for ui in u] + [(v, x), (v, y)]
    edges += list(zip(u, up))
    edges += [(up[i], up[i + 1]) for i in range(6)]
    # two 5-cycles through v on the x/y side: v-x-a-b-y and v-x-c-d-y
    edges += [(x, a), (x, c), (y, b), (y, d), (a, b), (c, d)]
    edges += [(a, up[0]), (b, up[6])]
    g = Graph(21, edges)
    return g, label_config_a(g, v)


def _gadget_b() -> tuple[Graph, ConfigurationWitness]:
    v, v1, v2, z = 0, 1, 2, 3
    edges = [(v, v1), (v, v2), (v, z)]
    nxt = 4
    for vi in (v1, v2):
        u, w, up, wp, x, y, p, q, r, t, k = range(nxt, nxt + 11)
        nxt += 11
        edges += [(vi, u), (vi, w), (vi, x), (vi, y), (u, up), (w, wp)]
        edges += [(x, p), (p, q), (q, y)]  # 5-cycle v_i x p q y
        edges += [(up, wp)]  # 5-cycle v_i u u' w' w
        edges += [(x, r), (r, up)]  # 5-cycle v_i x r u' u
        edges += [(y, t), (t, wp)]  # 5-cycle v_i y t w' w
        edges += [(p, k), (k, z)]  # long cycles through v and z
    g = Graph(nxt, edges)
    return g, label_config_b(g, v, v1, v2)


def gadget_graph(kind: str) -> tuple[Graph, ConfigurationWitness]:
    kind = kind.upper()
    if kind == "A":
        return _gadget_a()
    if kind == "B":
        return _gadget_b()
    raise ValueError(f"unknown gadget kind {kind!r}; expected 'A' or 'B'")


def _other_end(g: Graph, u: int, near: int) -> int:
    (far,) = g.adj[u] - {near}
    return far


def label_config_a(g: Graph, v: int) -> ConfigurationWitness:
    """Label ``v``'s neighbourhood for the degree-two extension.

    Up to seven degree-two neighbours become ``u_i``; at most two other
    neighbours may remain (``x``, ``y``; missing ones are ``None``).
    """
    nbrs = sorted(g.adj[v])
    twos = [u for u in nbrs if g.degree(u) == 2]
    if not twos:
        raise WitnessError(f"vertex {v} has no degree-two neighbour")
    if g.degree(v) > 9:
        raise WitnessError(f"vertex {v} has degree {g.degree(v)} > 9")
    u = twos[:7]
    rest = [w for w in nbrs if w not in u]
    if len(rest) > 2:
        raise WitnessError(f"vertex {v} keeps {len(rest)} > 2 neighbours outside the u_i")
    up = [_other_end(g, ui, v) for ui in u]
    for ui, far in zip(u, up):
        if far in u:
            raise WitnessError(f"u-neighbours {ui} and {far} are adjacent")
    rest += [None] * (2 - len(rest))
    return ConfigurationWitness(
        "effective-degree-two",
        {"v": v, "u": tuple(u), "u_prime": tuple(up), "x": rest[0], "y": rest[1]},
    )


def label_config_b(g: Graph, v: int, v1: int, v2: int) -> ConfigurationWitness:
    """Label the configuration around a degree-3 vertex ``v`` and two of its
    neighbours ``v1``, ``v2`` of degree 3..5.

    For each ``v_i`` the degree-two neighbours (at most two) become
    ``u_i``, ``w_i`` and the remaining neighbours other than ``v`` (at most
    two) become ``x_i``, ``y_i``.  Absent roles are ``None``.
    """
    if g.degree(v) != 3:
        raise WitnessError(f"vertex {v} has degree {g.degree(v)}, expected 3")
    if v1 == v2 or not (g.has_edge(v, v1) and g.has_edge(v, v2)):
        raise WitnessError("v1 and v2 must be distinct neighbours of v")
    if g.has_edge(v1, v2):
        raise WitnessError("v1 and v2 are adjacent")
    (z,) = g.adj[v] - {v1, v2}
    roles = {"v": v, "v1": v1, "v2": v2, "z": z, "light": (v1, v2)}
    cols = {key: [] for key in ("u", "u_prime", "w", "w_prime", "x", "y")}
    for vi in (v1, v2):
        if not 3 <= g.degree(vi) <= 5:
            raise WitnessError(f"vertex {vi} has degree {g.degree(vi)}, expected 3..5")
        nbrs = sorted(g.adj[vi] - {v})
        twos = [u for u in nbrs if g.degree(u) == 2]
        rest = [u for u in nbrs if g.degree(u) != 2]
        if len(twos) > 2 or len(rest) > 2:
            raise WitnessError(f"vertex {vi} does not match the pattern (degree-two: {twos}, other: {rest})")
        twos += [None] * (2 - len(twos))
        rest += [None] * (2 - len(rest))
        for key, val in zip(("u", "w"), twos):
            cols[key].append(val)
            cols[key + "_prime"].append(None if val is None else _other_end(g, val, vi))
        cols["x"].append(rest[0])
        cols["y"].append(rest[1])
    inner = {v, v1, v2}
    for key in ("u_prime", "w_prime"):
        if any(p in inner for p in cols[key] if p is not None):
            raise WitnessError(f"a {key} vertex lies inside the configuration")
    side1 = {cols["u"][0], cols["w"][0]} - {None}
    side2 = {cols["u"][1], cols["w"][1]} - {None}
    if side1 & side2:
        raise WitnessError("v1 and v2 share a degree-two neighbour")
    roles.update({k: tuple(vals) for k, vals in cols.items()})
    return ConfigurationWitness("degree-three-two-light", roles)
