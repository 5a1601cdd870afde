"""JSON-based structured logger for pipeline run events."""

import json
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any


class LogLevel(str, Enum):
    INFO = "INFO"
    ERROR = "ERROR"
    WARNING = "WARNING"


class StructuredLogger:
    """JSON-lines logger: one object per event, never written into the output directory."""

    def __init__(self, log_dir: str | Path = ".biblioscope/logs"):
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)

        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.log_file = self.log_dir / f"{timestamp}.log"

    def log(self, level: LogLevel, **data: Any) -> None:
        entry = {
            "timestamp": datetime.now().isoformat(),
            "level": level.value,
            **data,
        }

        with open(self.log_file, "a") as f:
            f.write(json.dumps(entry, default=str) + "\n")

    def log_stage_start(self, stage: str, **details: Any) -> None:
        self.log(LogLevel.INFO, event="stage_start", stage=stage, **details)

    def log_stage_complete(self, stage: str, duration_ms: float, **details: Any) -> None:
        self.log(
            LogLevel.INFO,
            event="stage_complete",
            stage=stage,
            status="complete",
            duration_ms=duration_ms,
            **details,
        )

    def log_stage_error(self, stage: str, error_type: str, error_message: str) -> None:
        self.log(
            LogLevel.ERROR,
            event="stage_error",
            stage=stage,
            status="failed",
            error_type=error_type,
            error_message=error_message,
        )

    def log_file_written(self, stage: str, path: str, size_bytes: int) -> None:
        self.log(
            LogLevel.INFO,
            event="file_written",
            stage=stage,
            path=path,
            size_bytes=size_bytes,
        )

    def log_warning(self, stage: str, message: str) -> None:
        self.log(LogLevel.WARNING, event="warning", stage=stage, message=message)

    def log_run_complete(self, command: str, files_written: int, duration_s: float, exit_code: int) -> None:
        self.log(
            LogLevel.INFO if exit_code == 0 else LogLevel.ERROR,
            event="run_complete",
            command=command,
            files_written=files_written,
            duration_s=duration_s,
            exit_code=exit_code,
        )
