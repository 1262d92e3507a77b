import os
import pathlib

import pytest


@pytest.fixture(scope="session")
def data_dir():
    return pathlib.Path(os.environ.get("LOGOMETRE_TEST_DATA", pathlib.Path(__file__).parent.parent / "data"))
