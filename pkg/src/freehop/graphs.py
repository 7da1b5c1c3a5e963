"""Bicoloured graphs and trees indexed by hyperedges.

A graph on white vertices 1..n (stored 0-indexed) is the multiset of its
hyperedges; a hyperedge is the multiset of white vertices a black vertex
connects to, stored as a sorted tuple.  Isomorphism with white labels fixed
is plain multiset equality, so enumeration canonicalizes by sorting.

The automorphism order factorizes over edge permutations fixing the
structure: repeated hyperedges can be swapped and, within one hyperedge,
parallel edges to the same white vertex can be swapped:

    #Aut = prod_{distinct J} m_J! * prod_I prod_i f_I(i)!
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import factorial


Hyperedge = tuple[int, ...]  # sorted, possibly with repeats


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Hyperedge, ...]  # sorted multiset
    special: int = -1  # index into edges of the special vertex, or -1

    def aut_order(self) -> int:
        counts: dict[Hyperedge, int] = {}
        for k, e in enumerate(self.edges):
            if k == self.special:
                continue  # the special vertex is distinguishable
            counts[e] = counts.get(e, 0) + 1
        a = 1
        for m in counts.values():
            a *= factorial(m)
        for k, e in enumerate(self.edges):
            mult: dict[int, int] = {}
            for i in e:
                mult[i] = mult.get(i, 0) + 1
            for f in mult.values():
                a *= factorial(f)
        return a

    def valencies(self) -> tuple[int, ...]:
        val = [0] * self.n
        for e in self.edges:
            for i in e:
                val[i] += 1
        return tuple(val)

    def excess(self) -> int:
        """sum_I (#I - 1) - (n - 1); zero exactly for trees."""
        return sum(len(e) - 1 for e in self.edges) - (self.n - 1)

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            for i in e[1:]:
                ri, r0 = find(i), find(e[0])
                if ri != r0:
                    parent[max(ri, r0)] = min(ri, r0)
        return len({find(x) for x in range(self.n)}) == 1


def _hyperedge_pool(n: int, max_size: int, min_size: int = 2) -> list[Hyperedge]:
    pool = []
    for size in range(min_size, max_size + 1):
        pool.extend(combinations_with_replacement(range(n), size))
    return pool


def enumerate_graphs(n: int, excess_bound: int) -> list[Graph]:
    """All connected bicoloured graphs with sum_I (#I - 1) <= n-1+excess,
    hyperedges of size >= 2, each isomorphism class once.

    For n = 1 the edgeless one-vertex graph is included (it is connected).

    >>> [g.edges for g in enumerate_graphs(1, 1)]
    [(), ((0, 0),)]
    >>> g = enumerate_graphs(1, 1)[1]
    >>> g.aut_order()
    2
    """
    budget = n - 1 + excess_bound
    pool = _hyperedge_pool(n, max_size=budget + 1)
    out = []

    def rec(start: int, chosen: list[Hyperedge], used: int):
        g = Graph(n, tuple(chosen))
        if (chosen or n == 1) and g.is_connected():
            out.append(g)
        for k in range(start, len(pool)):
            cost = len(pool[k]) - 1
            if used + cost <= budget:
                chosen.append(pool[k])
                rec(k, chosen, used + cost)
                chosen.pop()

    rec(0, [], 0)
    return out


def enumerate_trees(n: int, valencies: tuple[int, ...]) -> list[Graph]:
    """Trees in G_{0,n} with prescribed white valencies (r_i + 1 each);
    hyperedges are plain subsets of size >= 2, excess 0, connected.

    >>> sum(len(enumerate_trees(3, (a + 1, b + 1, c + 1)))
    ...     for a in range(3) for b in range(3) for c in range(3)
    ...     if True) >= 4
    True
    """
    pool = [e for e in _hyperedge_pool(n, max_size=n) if len(set(e)) == len(e)]
    out = []

    def rec(start: int, chosen: list[Hyperedge], deg: list[int]):
        if all(d == v for d, v in zip(deg, valencies)):
            g = Graph(n, tuple(chosen))
            if g.excess() == 0 and g.is_connected():
                out.append(g)
        for k in range(start, len(pool)):
            e = pool[k]
            if all(deg[i] + e.count(i) <= valencies[i] for i in set(e)):
                chosen.append(e)
                for i in e:
                    deg[i] += 1
                rec(k, chosen, deg)
                for i in e:
                    deg[i] -= 1
                chosen.pop()

    if n == 1:
        if valencies == (0,):
            out.append(Graph(1, ()))
        return out
    rec(0, [], [0] * n)
    return out


def enumerate_leaf_trees(n: int, valencies: tuple[int, ...]) -> list[tuple[Graph, tuple[int, ...]]]:
    """Trees of T_n(r+1): a base tree from G_{0,n} plus univalent black
    vertices; returns (base graph, leaf counts per white vertex).  The
    automorphism order is prod_i leaves_i!.
    """
    out = []
    if n == 1:
        # the unique base is the bare vertex; all valency goes to leaves
        out.append((Graph(1, ()), (valencies[0],)))
        return out
    for base_val in _sub_valencies(valencies, minimum=1):
        for g in enumerate_trees(n, base_val):
            leaves = tuple(v - b for v, b in zip(valencies, base_val))
            out.append((g, leaves))
    return out


def _sub_valencies(valencies: tuple[int, ...], minimum: int):
    """All componentwise valency vectors between minimum and the target."""
    if not valencies:
        yield ()
        return
    first, rest = valencies[0], valencies[1:]
    for v in range(minimum, first + 1):
        for tail in _sub_valencies(rest, minimum):
            yield (v,) + tail


def enumerate_special_trees(n: int, valencies: tuple[int, ...]) -> list[Graph]:
    """Trees of G'_{0,n}(r+1): one designated special black vertex, which
    may be univalent; all other hyperedges have size >= 2.
    """
    out = []
    # special vertex of size >= 1; remaining edges form a forest such that
    # the whole graph is a tree with the prescribed valencies
    pool = [e for e in _hyperedge_pool(n, max_size=n, min_size=1) if len(set(e)) == len(e)]
    for sp in pool:
        if any(valencies[i] < 1 for i in sp):
            continue
        rest_val = list(valencies)
        for i in sp:
            rest_val[i] -= 1
        restpool = [e for e in _hyperedge_pool(n, max_size=n) if len(set(e)) == len(e)]

        def rec(start: int, chosen: list[Hyperedge], deg: list[int]):
            if all(d == v for d, v in zip(deg, rest_val)):
                g = Graph(n, tuple([sp] + chosen), special=0)
                # tree condition: #black + n - #edges = 1, i.e.
                # sum_I (#I - 1) = n - 1 including the special vertex
                if sum(len(e) - 1 for e in g.edges) == n - 1 and g.is_connected():
                    out.append(g)
            for k in range(start, len(restpool)):
                e = restpool[k]
                if all(deg[i] + e.count(i) <= rest_val[i] for i in set(e)):
                    chosen.append(e)
                    for i in e:
                        deg[i] += 1
                    rec(k, chosen, deg)
                    for i in e:
                        deg[i] -= 1
                    chosen.pop()

        rec(0, [], [0] * n)
    return out


def enumerate_special_leaf_trees(n: int, valencies: tuple[int, ...]):
    """T'_n(r+1): special trees plus non-special univalent black vertices;
    returns (graph with special index 0, leaf counts); Aut = prod leaves_i!.
    """
    out = []
    for base_val in _sub_valencies(valencies, minimum=0):
        for g in enumerate_special_trees(n, base_val):
            leaves = tuple(v - b for v, b in zip(valencies, base_val))
            out.append((g, leaves))
    return out
