"""Cluster topology, named-data caches and request resolution.

Flooding is modelled by its outcome only: the nearest caching cluster (fewest
inter-cluster links, lowest id on ties) serves the request. A request served
from its own cluster counts as one hop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx

from .errors import ContentNotFoundError, DomainError, GeometryError, UnknownClusterError


@dataclass(frozen=True)
class Cluster:
    id: int
    cache: frozenset[str] = frozenset()
    d_f: int = 2


@dataclass(frozen=True)
class NdoRequest:
    name: str
    origin_cluster: int

    def __post_init__(self):
        if not self.name:
            raise DomainError("NDO name must be non-empty")


@dataclass(frozen=True)
class ClusterTopology:
    clusters: tuple[Cluster, ...]
    edges: tuple[tuple[int, int], ...] | None = None
    hop_distance_km: float = 100.0
    L_BS_km: float = 10.0
    bs_per_cluster: int = 20
    origin_server: int | None = None
    graph: nx.Graph = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.clusters:
            raise DomainError("topology needs at least one cluster")
        ids = [c.id for c in self.clusters]
        if len(set(ids)) != len(ids):
            raise DomainError("cluster ids must be unique")
        if not (self.hop_distance_km > 0 and self.L_BS_km > 0):
            raise GeometryError("distances must be positive")
        g = nx.Graph()
        g.add_nodes_from(sorted(ids))
        if self.edges is None:
            order = sorted(ids)
            g.add_edges_from(zip(order, order[1:]))
        else:
            for u, v in self.edges:
                if u not in g or v not in g:
                    raise UnknownClusterError(f"edge ({u}, {v}) names an unknown cluster")
                g.add_edge(u, v)
        if self.origin_server is not None and self.origin_server not in g:
            raise UnknownClusterError(f"origin server {self.origin_server} is not a cluster")
        object.__setattr__(self, "graph", g)

    @classmethod
    def chain(cls, n: int, caches: dict[int, Iterable[str]] | None = None, **kw) -> "ClusterTopology":
        caches = caches or {}
        clusters = tuple(Cluster(i, frozenset(caches.get(i, ()))) for i in range(n))
        return cls(clusters=clusters, **kw)

    def cluster(self, cluster_id: int) -> Cluster:
        for c in self.clusters:
            if c.id == cluster_id:
                return c
        raise UnknownClusterError(f"unknown cluster {cluster_id}")

    def route(self, src: int, dst: int) -> list[int]:
        """Clusters on a shortest src -> dst route, both ends included."""
        self.cluster(src), self.cluster(dst)
        try:
            return nx.shortest_path(self.graph, src, dst)
        except nx.NetworkXNoPath:
            raise ContentNotFoundError(f"cluster {dst} unreachable from {src}") from None


def cache_lookup(topology: ClusterTopology, cluster_id: int, name: str) -> bool:
    return name in topology.cluster(cluster_id).cache


def flood_resolve(topology: ClusterTopology, request: NdoRequest) -> tuple[int, int]:
    """(hops, source cluster) of the nearest cached copy."""
    origin = request.origin_cluster
    topology.cluster(origin)
    dist = nx.single_source_shortest_path_length(topology.graph, origin)
    best = None
    for c in topology.clusters:
        if request.name in c.cache and c.id in dist:
            key = (dist[c.id], c.id)
            if best is None or key < best:
                best = key
    if best is None:
        raise ContentNotFoundError(f"{request.name!r} is not cached in any reachable cluster")
    return best[0] + 1, best[1]


def ip_baseline_resolve(topology: ClusterTopology, request: NdoRequest) -> tuple[int, int]:
    """(hops, server) when every request goes to the fixed origin server."""
    if topology.origin_server is None:
        raise DomainError("IP baseline needs an origin server")
    route = topology.route(request.origin_cluster, topology.origin_server)
    return len(route), topology.origin_server


def path_length(hops: int, hop_distance_km: float = 100.0, L_BS_km: float = 10.0) -> float:
    """Inter-cluster trunk length in km; the cluster-to-BS tail is added in the span."""
    if hops < 1:
        raise DomainError("hops must be >= 1")
    return (hops - 1) * hop_distance_km
