"""Graph planarity by path addition (Demoucron, Malgrange and Pertuiset).

A graph is planar iff each of its biconnected blocks is.  For a block we
embed a cycle and then repeatedly embed a path of some fragment into a
face that contains all of the fragment's contact vertices, always
preferring a fragment with a single admissible face.  A fragment without
any admissible face proves non-planarity.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable


def _adjacency(edges):
    adj: dict = {}
    for u, v in edges:
        if u == v:
            continue
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def biconnected_blocks(adj: dict) -> list:
    """Edge sets of the biconnected components (Hopcroft-Tarjan)."""
    index: dict = {}
    low: dict = {}
    blocks = []
    stack: list = []
    counter = [0]

    def visit(v, parent):
        index[v] = low[v] = counter[0]
        counter[0] += 1
        for w in sorted(adj[v]):
            if w not in index:
                stack.append((v, w))
                visit(w, v)
                low[v] = min(low[v], low[w])
                if low[w] >= index[v]:
                    block = set()
                    while True:
                        e = stack.pop()
                        block.add(frozenset(e))
                        if e == (v, w):
                            break
                    blocks.append(block)
            elif w != parent and index[w] < index[v]:
                stack.append((v, w))
                low[v] = min(low[v], index[w])

    for v in sorted(adj):
        if v not in index:
            visit(v, None)
    return blocks


def _find_cycle(adj):
    start = min(adj)
    parent = {start: None}
    stack = [(start, iter(sorted(adj[start])))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if w not in parent:
                parent[w] = v
                stack.append((w, iter(sorted(adj[w]))))
                break
            if w != parent[v]:
                # back edge v-w closes a cycle along the tree path
                cycle = [v]
                while cycle[-1] != w:
                    cycle.append(parent[cycle[-1]])
                return cycle
        else:
            stack.pop()
    return None


def _fragments(adj, hv, he):
    frags = []
    for u in sorted(hv):
        for w in sorted(adj[u]):
            if w in hv and u < w and frozenset((u, w)) not in he:
                frags.append((frozenset((u, w)), frozenset()))
    seen = set()
    for s in sorted(adj):
        if s in hv or s in seen:
            continue
        inner = {s}
        contacts = set()
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w in hv:
                    contacts.add(w)
                elif w not in inner:
                    inner.add(w)
                    queue.append(w)
        seen |= inner
        frags.append((frozenset(contacts), frozenset(inner)))
    return frags


def _fragment_path(adj, contacts, inner):
    if not inner:
        u, w = sorted(contacts)
        return [u, w]
    u = min(contacts)
    starts = sorted(v for v in inner if u in adj[v])
    parent = {v: None for v in starts}
    queue = deque(starts)
    while queue:
        v = queue.popleft()
        ends = sorted(w for w in adj[v] if w in contacts and w != u)
        if ends:
            path = [v]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return [ends[0]] + path + [u]
        for w in sorted(adj[v]):
            if w in inner and w not in parent:
                parent[w] = v
                queue.append(w)
    raise AssertionError("fragment of a biconnected block has fewer than two contacts")


def _block_is_planar(adj):
    nv = len(adj)
    ne = sum(len(s) for s in adj.values()) // 2
    if ne < 9 or nv < 5:
        return True
    if ne > 3 * nv - 6:
        return False
    cycle = _find_cycle(adj)
    hv = set(cycle)
    he = {frozenset((cycle[i], cycle[(i + 1) % len(cycle)])) for i in range(len(cycle))}
    faces = [list(cycle), list(cycle)]
    while len(he) < ne:
        frags = _fragments(adj, hv, he)
        choice = None
        for contacts, inner in frags:
            admissible = [i for i, f in enumerate(faces) if contacts <= set(f)]
            if not admissible:
                return False
            if choice is None or len(admissible) == 1 and len(choice[2]) > 1:
                choice = (contacts, inner, admissible)
        contacts, inner, admissible = choice
        path = _fragment_path(adj, contacts, inner)
        face = faces.pop(admissible[0])
        i, j = face.index(path[0]), face.index(path[-1])
        k = len(face)
        forward_ij = [face[(i + s) % k] for s in range((j - i) % k + 1)]
        forward_ji = [face[(j + s) % k] for s in range((i - j) % k + 1)]
        interior = path[1:-1]
        faces.append(forward_ij + interior[::-1])
        faces.append(forward_ji + interior)
        hv.update(path)
        he.update(frozenset((path[s], path[s + 1])) for s in range(len(path) - 1))
    return True


def is_planar_graph(edges: Iterable[tuple]) -> bool:
    """Planarity of the simple undirected graph with the given edges."""
    adj = _adjacency(edges)
    if not adj:
        return True
    for block in biconnected_blocks(adj):
        if not _block_is_planar(_adjacency(tuple(e) for e in block)):
            return False
    return True
