import io

import pytest
from hypothesis import HealthCheck, settings

import commnet as cn

from . import brute

settings.register_profile(
    "ci",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def micro_stream():
    stream, report = cn.parse_edge_log(io.BytesIO(brute.log_bytes()))
    assert report.accepted == len(brute.RAW_ROWS)
    return stream


@pytest.fixture(scope="session")
def micro_snapshots(micro_stream):
    snaps = cn.build_snapshots(micro_stream)
    assert len(snaps) == brute.N_DAYS
    return snaps


@pytest.fixture(scope="session")
def micro_aggregate(micro_snapshots):
    return cn.aggregate(micro_snapshots)
