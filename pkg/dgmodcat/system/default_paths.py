from datetime import datetime
from pathlib import Path
from typing import Optional

from dgmodcat import __package_name__

BASE_FOLDER_NAME = f"{__package_name__}_data"
LOGS_INFO_AND_SETTINGS_FOLDER_NAME = "logs_info_and_settings"
LOG_FILE_FOLDER_NAME = "logs"
GOLDEN_FOLDER_PATH = Path(__file__).parent.parent / "instances" / "golden"
GOLDEN_SEPARATOR = "__"


def get_base_folder_path(home: Optional[Path] = None) -> Path:
    base_folder = Path(home or Path.home()) / BASE_FOLDER_NAME
    base_folder.mkdir(exist_ok=True, parents=True)
    return base_folder


def get_log_file_path(home: Optional[Path] = None, moment: Optional[datetime] = None) -> Path:
    folder = get_base_folder_path(home) / LOGS_INFO_AND_SETTINGS_FOLDER_NAME / LOG_FILE_FOLDER_NAME
    folder.mkdir(exist_ok=True, parents=True)
    return folder / create_log_file_name(moment)


def create_log_file_name(moment: Optional[datetime] = None) -> str:
    """log_<local ISO timestamp with UTC offset>.log with ':' and '.' replaced so every OS accepts it."""
    stamp = (moment or datetime.now()).astimezone().isoformat(timespec="milliseconds")
    return "log_" + stamp.replace(":", "_").replace(".", "ms") + ".log"


def get_golden_file_path(corpus_name: str, golden_dir: Path = GOLDEN_FOLDER_PATH) -> Path:
    """
    Golden flag file of a corpus; "ring/dual_numbers_F2" lives at golden/ring__dual_numbers_F2.json
    """
    return Path(golden_dir) / (corpus_name.replace("/", GOLDEN_SEPARATOR) + ".json")
