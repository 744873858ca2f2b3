from pathlib import Path
from typing import Tuple

from pydantic import BaseModel

from dgmodcat.system.constants import DEFAULT_DEGREE_BOUND, DEFAULT_HOMOLOGY_DEGREES, DEFAULT_LENGTH_BOUND
from dgmodcat.system.default_paths import GOLDEN_FOLDER_PATH


class ComputationParams(BaseModel):
    num_processes: int = 1
    use_tqdm: bool = False


class SearchParams(BaseModel):
    degree_bound: int = DEFAULT_DEGREE_BOUND
    length_bound: int = DEFAULT_LENGTH_BOUND


class SuiteParams(ComputationParams):
    homology_degrees: Tuple[int, ...] = DEFAULT_HOMOLOGY_DEGREES
    golden_dir: Path = GOLDEN_FOLDER_PATH
    search: SearchParams = SearchParams()
