import pytest
from hypothesis import given
from hypothesis import strategies as st

from cran_ee.errors import ContentNotFoundError, DomainError, UnknownClusterError
from cran_ee.icn import (
    Cluster,
    ClusterTopology,
    NdoRequest,
    cache_lookup,
    flood_resolve,
    ip_baseline_resolve,
    path_length,
)


@pytest.fixture
def chain():
    return ClusterTopology.chain(5, caches={0: ["a"], 1: ["b"], 3: ["c"], 4: ["c"]}, origin_server=4)


def test_cache_lookup(chain):
    assert cache_lookup(chain, 0, "a")
    assert not cache_lookup(chain, 2, "a")
    with pytest.raises(UnknownClusterError):
        cache_lookup(chain, 9, "a")


class TestFlood:
    def test_local(self, chain):
        assert flood_resolve(chain, NdoRequest("a", 0)) == (1, 0)

    def test_neighbor(self, chain):
        assert flood_resolve(chain, NdoRequest("b", 0)) == (2, 1)

    def test_nearest_copy(self, chain):
        assert flood_resolve(chain, NdoRequest("c", 0)) == (4, 3)

    def test_not_found(self, chain):
        with pytest.raises(ContentNotFoundError):
            flood_resolve(chain, NdoRequest("zzz", 0))

    def test_tie_breaks_on_lowest_id(self):
        topo = ClusterTopology(
            clusters=(Cluster(0), Cluster(5, frozenset({"x"})), Cluster(2, frozenset({"x"}))),
            edges=((0, 5), (0, 2)),
        )
        assert flood_resolve(topo, NdoRequest("x", 0)) == (2, 2)

    def test_unreachable_copy(self):
        topo = ClusterTopology(clusters=(Cluster(0), Cluster(1, frozenset({"x"}))), edges=())
        with pytest.raises(ContentNotFoundError):
            flood_resolve(topo, NdoRequest("x", 0))


class TestIpBaseline:
    def test_server_is_serving_cluster(self):
        topo = ClusterTopology.chain(3, origin_server=0)
        assert ip_baseline_resolve(topo, NdoRequest("a", 0)) == (1, 0)

    def test_three_clusters_away(self):
        topo = ClusterTopology.chain(4, origin_server=3)
        assert ip_baseline_resolve(topo, NdoRequest("a", 0)) == (4, 3)

    def test_ignores_local_cache(self, chain):
        cached = ip_baseline_resolve(chain, NdoRequest("a", 0))
        uncached = ip_baseline_resolve(chain, NdoRequest("nothing", 0))
        assert cached == uncached == (5, 4)

    def test_needs_server(self):
        with pytest.raises(DomainError):
            ip_baseline_resolve(ClusterTopology.chain(2), NdoRequest("a", 0))


@pytest.mark.parametrize("hops,L", [(1, 0), (2, 100), (4, 300)])
def test_path_length(hops, L):
    assert path_length(hops, 100, 10) == L


def test_path_length_rejects_zero():
    with pytest.raises(DomainError):
        path_length(0)


@given(st.integers(1, 50))
def test_path_length_increasing(h):
    assert path_length(h + 1) > path_length(h)


def test_topology_validation():
    with pytest.raises(DomainError):
        ClusterTopology(clusters=())
    with pytest.raises(DomainError):
        ClusterTopology(clusters=(Cluster(1), Cluster(1)))
    with pytest.raises(UnknownClusterError):
        ClusterTopology(clusters=(Cluster(1),), edges=((1, 2),))
    with pytest.raises(DomainError):
        NdoRequest("", 0)


@given(
    n=st.integers(1, 12),
    placement=st.dictionaries(st.integers(0, 11), st.sampled_from(["x", "y"]), max_size=6),
    origin=st.integers(0, 11),
    server=st.integers(0, 11),
)
def test_icn_never_worse_than_ip(n, placement, origin, server):
    origin, server = origin % n, server % n
    caches = {c % n: [name] for c, name in placement.items()}
    caches.setdefault(server, [])
    caches[server] = list(caches[server]) + ["x", "y"]
    topo = ClusterTopology.chain(n, caches=caches, origin_server=server)
    for name in ("x", "y"):
        req = NdoRequest(name, origin)
        icn = flood_resolve(topo, req)
        assert icn[0] <= ip_baseline_resolve(topo, req)[0]
        assert flood_resolve(topo, req) == icn
