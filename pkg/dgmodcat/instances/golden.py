import json
import logging
from pathlib import Path
from typing import Dict, Optional

from dgmodcat.duality.dualizability import is_dualizable
from dgmodcat.ext.presentation import is_acyclic
from dgmodcat.limits.semifree import recognize_fg_semifree
from dgmodcat.module_category.dg_module import DGModule
from dgmodcat.system.constants import FORMAT_VERSION
from dgmodcat.system.default_paths import GOLDEN_FOLDER_PATH, get_golden_file_path
from dgmodcat.system.exceptions import DocumentFormatError
from dgmodcat.system.params import SearchParams

logger = logging.getLogger(__name__)

FLAG_NAMES = ("acyclic", "dualizable", "semi_free")

Flags = Dict[str, bool]


def compute_flags(module: DGModule, search: Optional[SearchParams] = None) -> Flags:
    search = search or SearchParams()
    return {
        "acyclic": is_acyclic(module),
        "dualizable": is_dualizable(module).dualizable,
        "semi_free": recognize_fg_semifree(module, search.degree_bound, search.length_bound) is not None,
    }


def golden_text(corpus_name: str, flags: Dict[str, Flags]) -> str:
    document = {"corpus": corpus_name, "format_version": FORMAT_VERSION, "members": flags}
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_golden(corpus_name: str, golden_dir: Path = GOLDEN_FOLDER_PATH) -> Dict[str, Flags]:
    path = get_golden_file_path(corpus_name, golden_dir)
    document = json.loads(path.read_text(encoding="utf-8"))
    if document.get("corpus") != corpus_name or not isinstance(document.get("members"), dict):
        logger.error(f"Golden file {path} does not describe {corpus_name}")
        raise DocumentFormatError(f"Golden file {path} does not describe corpus {corpus_name!r}")
    return document["members"]


def write_golden(corpus_name: str, flags: Dict[str, Flags], golden_dir: Path = GOLDEN_FOLDER_PATH) -> Path:
    path = get_golden_file_path(corpus_name, golden_dir)
    path.parent.mkdir(exist_ok=True, parents=True)
    path.write_text(golden_text(corpus_name, flags), encoding="utf-8")
    logger.info(f"Froze {len(flags)} members of {corpus_name} to {path}")
    return path
