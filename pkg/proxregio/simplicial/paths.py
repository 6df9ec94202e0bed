from __future__ import annotations

from collections import deque

from shapely import STRtree

from proxregio.geometry.measures import contact
from proxregio.geometry.primitives import Region
from proxregio.geometry.scene import Scene
from proxregio.simplicial.complex import SimplicialComplex


def path_connected(a: Region, b: Region, scene: Scene) -> list[str] | None:
    """Shortest chain of pairwise strongly near scene regions from a to b."""
    scene.require(a, b)
    if a.id == b.id:
        return [a.id]

    regions = scene.regions
    tree = STRtree([r.geometry for r in regions])

    previous: dict[str, str | None] = {a.id: None}
    queue = deque([a])
    while queue:
        current = queue.popleft()
        for n in sorted(tree.query(current.geometry, predicate="intersects")):
            other = regions[int(n)]
            if other.id in previous:
                continue
            if contact(current.geometry, other.geometry, scene.epsilon) is None:
                continue
            previous[other.id] = current.id
            if other.id == b.id:
                chain = [b.id]
                while previous[chain[-1]] is not None:
                    chain.append(previous[chain[-1]])
                return chain[::-1]
            queue.append(other)
    return None


def skeleton_components(c: SimplicialComplex) -> list[frozenset[str]]:
    """Connected components of the 1-skeleton, each a set of vertex ids."""
    neighbours: dict[str, set[str]] = {v: set() for v in c.vertices}
    for edge in c.edges:
        u, v = edge.vertices
        neighbours[u].add(v)
        neighbours[v].add(u)

    seen: set[str] = set()
    components = []
    for root in sorted(neighbours):
        if root in seen:
            continue
        component = {root}
        queue = deque([root])
        while queue:
            for other in sorted(neighbours[queue.popleft()] - component):
                component.add(other)
                queue.append(other)
        seen |= component
        components.append(frozenset(component))
    return components


def complex_connected(c: SimplicialComplex) -> bool:
    return len(skeleton_components(c)) == 1


def is_cycle(c: SimplicialComplex) -> bool:
    """Whether the 1-skeleton is a single closed polygon through every vertex."""
    if len(c.vertices) < 3 or len(c.edges) != len(c.vertices):
        return False
    degree = {v: 0 for v in c.vertices}
    for edge in c.edges:
        for v in edge.vertices:
            degree[v] += 1
    return all(d == 2 for d in degree.values()) and complex_connected(c)
