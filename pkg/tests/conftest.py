import time
import warnings
from types import SimpleNamespace

import pytest

from drgmotion import graphs as gr
from drgmotion.arrays import FamilyTag, SphereOrderWarning


@pytest.fixture(autouse=True)
def _quiet_sphere_order():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SphereOrderWarning)
        yield


@pytest.fixture(scope="session")
def petersen():
    return gr.petersen_graph()


@pytest.fixture(scope="session")
def q3():
    return gr.build_family(FamilyTag.hamming(3, 2))


@pytest.fixture(scope="session")
def j63():
    return gr.build_family(FamilyTag.johnson(6, 3))


@pytest.fixture(scope="session")
def h33():
    return gr.build_family(FamilyTag.hamming(3, 3))


@pytest.fixture(scope="session")
def catalog_run():
    """Full catalog build and run, timed once per session."""
    from drgmotion.catalog import build_catalog, run_catalog

    t0 = time.perf_counter()
    entries = build_catalog()
    result = run_catalog(entries)
    return SimpleNamespace(entries=entries, result=result, seconds=time.perf_counter() - t0)
