import pytest

from cran_ee.config import SimConfig, parse_config
from cran_ee.errors import ConfigNotFoundError, ConfigParseError, ConfigValidationError


def write(tmp_path, text):
    p = tmp_path / "cfg.toml"
    p.write_text(text)
    return p


def test_empty_file_gives_defaults(tmp_path):
    cfg = parse_config(write(tmp_path, ""))
    assert cfg == SimConfig()
    w, d = cfg.wireless, cfg.wired
    assert (w.P_mr, w.M, w.B_ccs, w.peak_bandwidth_hz) == (480.0, 200, 5e6, 200e6)
    assert (d.port_power, d.P_edfa_per_gbps, d.oxc_base, d.oxc_per_degree) == (400.0, 4.0, 150.0, 135.0)
    assert (d.G, d.atten_db_per_km, d.L_edfa) == (0.99, 0.3, 80.0)


def test_m_not_above_k(tmp_path):
    with pytest.raises(ConfigValidationError, match="M=42"):
        parse_config(write(tmp_path, "[wireless]\nM = 42\nue_per_bs = 42\n"))


def test_unknown_key_named(tmp_path):
    with pytest.raises(ConfigValidationError, match="'foo'"):
        parse_config(write(tmp_path, "[wired]\nfoo = 1\n"))


def test_unknown_section(tmp_path):
    with pytest.raises(ConfigValidationError, match="'bar'"):
        parse_config(write(tmp_path, "[bar]\nx = 1\n"))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigNotFoundError):
        parse_config(tmp_path / "nope.toml")


def test_parse_error(tmp_path):
    with pytest.raises(ConfigParseError):
        parse_config(write(tmp_path, "[wireless\nM = "))


@pytest.mark.parametrize(
    "text",
    [
        "[wireless]\nP_bs = -1\n",
        "[wired]\nhop_distance_km = 0\n",
        "[wireless]\nM = 'many'\n",
        "[transition]\nC1 = 0\n",
        "[topology]\norigin_server = 99\n",
    ],
)
def test_validation_rejects(tmp_path, text):
    with pytest.raises(ConfigValidationError):
        parse_config(write(tmp_path, text))


def test_topology_section(tmp_path):
    text = """
[topology]
serving_cluster = 1
origin_server = 2
catalog = ["a", "b"]
edges = [[1, 2], [2, 3]]

[[topology.clusters]]
id = 1
cache = ["a"]
d_f = 4

[[topology.clusters]]
id = 2

[[topology.clusters]]
id = 3
cache = ["b"]
"""
    cfg = parse_config(write(tmp_path, text))
    topo = cfg.build_topology()
    assert topo.cluster(1).d_f == 4 and topo.cluster(2).d_f == 2
    assert topo.route(1, 3) == [1, 2, 3]


def test_cluster_unknown_key(tmp_path):
    text = "[[topology.clusters]]\nid = 0\nsize = 3\n"
    with pytest.raises(ConfigValidationError, match="'size'"):
        parse_config(write(tmp_path, text))


def test_shipped_default_matches_builtin():
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "configs" / "default.toml"
    assert parse_config(path) == SimConfig()
