import pytest

from kronlef import cache


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", default=False,
                     help="also run the full-length reproduction runs")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip = pytest.mark.skip(reason="needs --long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True, scope="session")
def _session_cache(tmp_path_factory):
    # one cache per session: shared within the run, never touches the working tree
    mp = pytest.MonkeyPatch()
    mp.setenv(cache.ENV_VAR, str(tmp_path_factory.mktemp("kron-cache")))
    cache.reset_default_caches()
    yield
    mp.undo()
    cache.reset_default_caches()


@pytest.fixture
def long_run(request):
    return request.config.getoption("--long")
