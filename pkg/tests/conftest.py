from pathlib import Path

import pytest

from escbias.dataset import load_dataset

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def dataset():
    return load_dataset(DATA_DIR)
