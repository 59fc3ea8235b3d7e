"""All fixtures automatically available for testing"""

import pytest

from index_jump.base.ellipsoid_spec import EllipsoidSpec
from index_jump.base.orbit_record import OrbitRecord
from index_jump.ellipsoid import default_sq_radii, ellipsoid_system, planted_hyperbolic
from index_jump.system_io import emit_system
from tests.utils.test_utils import make_record, n1, r_rat, worked_record


@pytest.fixture
def worked() -> OrbitRecord:
    """i1 = 1, N1(1, 1) <> D(2)."""

    return worked_record()


@pytest.fixture
def quarter_rotation() -> OrbitRecord:
    """i1 = 1, R(pi/2): i(y, m) = 2E(m/4) - 1 and mean index 1/2."""

    return make_record(1, r_rat(1, 2))


@pytest.fixture
def circle() -> OrbitRecord:
    """Planar orbit i1 = 1, N1(1, 1): i(y, m) = 2m - 1."""

    return make_record(1, n1())


@pytest.fixture(scope="session")
def ellipsoid_specs() -> dict[int, EllipsoidSpec]:
    """Ellipsoids with squared radii sqrt2, sqrt3, sqrt5, sqrt7 for n = 1..4."""

    return {n: EllipsoidSpec.from_tokens(default_sq_radii(n)) for n in range(1, 5)}


@pytest.fixture(scope="session")
def ellipsoids(ellipsoid_specs) -> dict[int, list[OrbitRecord]]:
    return {n: ellipsoid_system(spec) for n, spec in ellipsoid_specs.items()}


@pytest.fixture
def planted() -> dict[int, list[OrbitRecord]]:
    return {n: planted_hyperbolic(n) for n in (2, 3)}


@pytest.fixture
def system_file(tmp_path, ellipsoids):
    """System JSON file of the n = 2 ellipsoid."""

    file_path = tmp_path / "system.json"
    file_path.write_text(emit_system(ellipsoids[2], 2, "ellipsoid"), encoding="utf-8")

    return file_path
