import csv
import json
from pathlib import Path
from typing import Any, Optional, Sequence

from pydantic import BaseModel

from config.settings import settings
from src.utils.helpers import to_jsonable
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


class ReportStore:
    """Writes suite reports as JSON and weight tables as CSV."""

    def __init__(self, storage_dir: str | Path = settings.report_dir) -> None:
        self.storage_dir = Path(storage_dir)
        self.storage_dir.mkdir(parents=True, exist_ok=True)
        logger.info(f"Report directory set to: {self.storage_dir}")

    def save_json(self, filename: str, payload: BaseModel | dict) -> Path:
        """
        Save a report as indented JSON.

        Args:
            filename: Target file name inside the report directory
            payload: A pydantic report model or an already plain dict

        Returns:
            Path to saved file

        Raises:
            IOError: If file cannot be written
        """
        filepath = self.storage_dir / filename
        if isinstance(payload, BaseModel):
            text = payload.model_dump_json(indent=2)
        else:
            text = json.dumps(to_jsonable(payload), indent=2)

        try:
            filepath.write_text(text, encoding="utf-8")
            logger.info(f"Saved report to: {filepath} ({len(text)} bytes)")
            return filepath
        except Exception as e:
            logger.error(f"Failed to save report to {filepath}: {e}")
            raise IOError(f"Failed to save report: {e}") from e

    def save_csv(self, filename: str, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> Path:
        """
        Save a table with a header row.

        Raises:
            IOError: If file cannot be written
        """
        filepath = self.storage_dir / filename
        try:
            with filepath.open("w", newline="", encoding="utf-8") as handle:
                writer = csv.writer(handle)
                writer.writerow(header)
                writer.writerows(rows)
            logger.info(f"Saved table to: {filepath} ({len(rows)} rows)")
            return filepath
        except Exception as e:
            logger.error(f"Failed to save table to {filepath}: {e}")
            raise IOError(f"Failed to save table: {e}") from e

    def load_json(self, filename: str) -> Optional[dict]:
        """Load a saved report, or None if it is missing or unreadable."""
        filepath = self.storage_dir / filename

        if not filepath.exists():
            logger.warning(f"File not found: {filepath}")
            return None

        try:
            return json.loads(filepath.read_text(encoding="utf-8"))
        except Exception as e:
            logger.error(f"Failed to load report from {filepath}: {e}")
            return None

    def exists(self, filename: str) -> bool:
        return (self.storage_dir / filename).exists()

    def list_files(self) -> list[Path]:
        return sorted(self.storage_dir.glob("*.json")) + sorted(self.storage_dir.glob("*.csv"))

    def get_file_count(self) -> int:
        return len(self.list_files())
