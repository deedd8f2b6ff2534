import os
import logging
from pathlib import Path
from typing import List, Optional, Tuple

from config import config
from models import ChevalleyTable
from table_parser import parse_table

logging.basicConfig(level=config.LOG_LEVEL)
logger = logging.getLogger(__name__)

BUNDLED_PREFIX = "bundled:"
DATASET_SUFFIX = ".txt"


class DatasetNotFoundError(FileNotFoundError):
    """Raised for unknown bundled names and unreadable paths"""
    pass


class DatasetHandler:
    """Handler for bundled Chevalley tables and tables on disk"""

    def __init__(self, datasets_path: Optional[str] = None):
        """Point the handler at a dataset directory"""
        self.datasets_path = Path(datasets_path or config.DATASETS_PATH)
        if not self.datasets_path.is_dir():
            logger.warning(f"Dataset directory {self.datasets_path} does not exist")

    def list_datasets(self) -> List[str]:
        """
        List bundled dataset names

        Returns:
            Sorted names, usable as bundled:NAME
        """
        if not self.datasets_path.is_dir():
            return []
        return sorted(
            path.stem for path in self.datasets_path.iterdir()
            if path.suffix == DATASET_SUFFIX and path.is_file()
        )

    def count_datasets(self) -> int:
        return len(self.list_datasets())

    def bundled_path(self, name: str) -> Path:
        path = self.datasets_path / f"{name}{DATASET_SUFFIX}"
        if not path.is_file():
            available = ", ".join(self.list_datasets()) or "none"
            raise DatasetNotFoundError(f"Unknown bundled dataset '{name}' (available: {available})")
        return path

    def read_source(self, source: str) -> Tuple[str, str]:
        """
        Read a table from 'bundled:NAME' or a file path

        Args:
            source: bundled:NAME or a filesystem path

        Returns:
            (label, file text)
        """
        if source.startswith(BUNDLED_PREFIX):
            name = source[len(BUNDLED_PREFIX):]
            path = self.bundled_path(name)
            label = name
        else:
            path = Path(source)
            label = path.stem
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise DatasetNotFoundError(f"Cannot read table '{source}': {e}") from e
        logger.info(f"Read table source {source}")
        return label, text

    def load_table(self, source: str) -> Tuple[str, ChevalleyTable]:
        """
        Read and parse a table

        Args:
            source: bundled:NAME or a filesystem path

        Returns:
            (label, parsed ChevalleyTable)
        """
        label, text = self.read_source(source)
        return label, parse_table(text)

    def dump(self, name: str, output_dir: str) -> Path:
        """
        Copy a bundled table to disk

        Args:
            name: Bundled dataset name
            output_dir: Destination directory, created if needed

        Returns:
            Path of the written file
        """
        source_path = self.bundled_path(name)
        os.makedirs(output_dir, exist_ok=True)
        destination = Path(output_dir) / source_path.name
        destination.write_text(source_path.read_text(encoding="utf-8"), encoding="utf-8")
        logger.info(f"Dumped dataset {name} to {destination}")
        return destination
