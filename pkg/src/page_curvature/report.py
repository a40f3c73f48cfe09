"""
Run configuration, check records and report files.

Classes:
    Tolerances: Thresholds of the asserted checks
    RunConfig: Metric selector, scan settings, tolerances and output options
    CheckResult: One asserted or recorded check
    RunReport: Checks, scan results and notes of one command
"""

import csv
import dataclasses
import json
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

import numpy as np
from numpy.typing import NDArray

from page_curvature.catalog import CatalogEntry, metric_from_name
from page_curvature.errors import ConfigError, ParameterRangeError
from page_curvature.logging import logger
from page_curvature.scan import ScanConfig

REPORT_VERSION = "1.0"
SUPPORTED_FORMATS = ("json", "csv")


@dataclass
class Tolerances:
    einstein: float = 1e-5
    scalar_spread: float = 1e-6
    structure: float = 1e-9
    weyl_pattern: float = 1e-6
    complex_structure: float = 1e-8
    kahler_identity: float = 1e-6
    kahler_violation: float = 1e-3
    conformal: float = 1e-4
    weitzenbock: float = 1e-5
    normal_curvature: float = 1e-8
    holonomy: float = 1e-6
    parallel_defect: float = 1e-5
    noise_ratio: float = 100.0

    def validate(self) -> bool:
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if not value > 0:
                raise ConfigError(f"Tolerance '{f.name}' must be positive, got {value}")
        return True


@dataclass
class RunConfig:
    """Everything a command needs; `from_file` accepts TOML or JSON."""

    metric: str = "page"
    a: Optional[float] = None
    output_dir: str = "curvature_out"
    formats: list[str] = field(default_factory=lambda: list(SUPPORTED_FORMATS))
    scan: ScanConfig = field(default_factory=ScanConfig)
    tolerances: Tolerances = field(default_factory=Tolerances)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        data = dict(data)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {sorted(unknown)}")
        scan = ScanConfig.from_dict(data.pop("scan", {}))
        tolerance_data = data.pop("tolerances", {})
        unknown = set(tolerance_data) - {f.name for f in dataclasses.fields(Tolerances)}
        if unknown:
            raise ConfigError(f"Unknown tolerance keys: {sorted(unknown)}")
        return cls(scan=scan, tolerances=Tolerances(**tolerance_data), **data)

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        """Load a configuration from a .toml or .json file."""
        try:
            if Path(path).suffix == ".json":
                with open(path, encoding="utf-8") as f:
                    data = json.load(f)
            else:
                with open(path, "rb") as f:
                    data = tomllib.load(f)
            return cls.from_dict(data)
        except Exception as e:
            raise ConfigError(f"Failed to load configuration from {path}: {str(e)}")

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def validate(self) -> bool:
        """Check formats, tolerances, scan settings and that the metric resolves."""
        unsupported = set(self.formats) - set(SUPPORTED_FORMATS)
        if unsupported:
            raise ConfigError(f"Unsupported output formats {sorted(unsupported)}, expected {SUPPORTED_FORMATS}")
        if not self.output_dir:
            raise ConfigError("Output directory must be specified")
        self.tolerances.validate()
        self.scan.validate()
        self.entry()
        return True

    def entry(self) -> CatalogEntry:
        try:
            return metric_from_name(self.metric, self.a, self.scan.margin)
        except ParameterRangeError as e:
            raise ConfigError(str(e)) from e


@dataclass
class CheckResult:
    name: str
    kind: str
    passed: bool
    value: Any = None
    tolerance: Optional[float] = None
    location: Optional[dict[str, Any]] = None
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind,
            "passed": self.passed,
            "value": self.value,
            "tolerance": self.tolerance,
            "location": self.location,
            "detail": self.detail,
        }


@dataclass
class FieldTable:
    """Per-grid-point values destined for field_<name>.csv."""

    name: str
    coordinate_names: tuple[str, ...]
    points: NDArray[np.float64]
    values: NDArray[np.float64]


@dataclass
class RunReport:
    command: str
    metric: str
    config: dict[str, Any] = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)
    results: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    tables: list[FieldTable] = field(default_factory=list)
    wall_clock: float = 0.0
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def require(
        self,
        name: str,
        passed: bool,
        value: Any = None,
        tolerance: Optional[float] = None,
        location: Optional[dict[str, Any]] = None,
        detail: str = "",
    ) -> CheckResult:
        """Add an asserted check; failures decide the exit code."""
        check = CheckResult(name, "assert", bool(passed), value, tolerance, location, detail)
        self.checks.append(check)
        if not check.passed:
            logger.warning(f"Check '{name}' failed: value {value} (tolerance {tolerance}) at {location} {detail}")
        return check

    def record(
        self,
        name: str,
        passed: bool,
        value: Any = None,
        tolerance: Optional[float] = None,
        location: Optional[dict[str, Any]] = None,
        detail: str = "",
    ) -> CheckResult:
        """Add an informational check; it never changes the exit code."""
        check = CheckResult(name, "record", bool(passed), value, tolerance, location, detail)
        self.checks.append(check)
        return check

    def add_tables(self, source: Any) -> None:
        """Collect the per-point fields of a scan or estimate report."""
        if getattr(source, "points", None) is None:
            return
        for name, values in source.fields.items():
            self.tables.append(FieldTable(name, source.coordinate_names, source.points, values))

    def merge(self, other: "RunReport") -> None:
        """Fold a sub-command report into this one, prefixing its check names."""
        for check in other.checks:
            self.checks.append(dataclasses.replace(check, name=f"{other.command}/{check.name}"))
        self.results[other.command] = other.results
        self.notes.extend(other.notes)
        self.tables.extend(other.tables)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks if check.kind == "assert")

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": REPORT_VERSION,
            "command": self.command,
            "metric": self.metric,
            "config": self.config,
            "checks": [check.to_dict() for check in self.checks],
            "results": self.results,
            "notes": self.notes,
            "timing": {"wall_clock": self.wall_clock, "timestamp": self.timestamp},
        }


def make_json_safe(obj: Any) -> Any:
    """Convert numpy scalars and arrays, tuples and paths into plain JSON types."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        obj = dataclasses.asdict(obj)
    if isinstance(obj, dict):
        return {str(k): make_json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [make_json_safe(v) for v in obj]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (np.integer, np.floating)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return make_json_safe(obj.tolist())
    if isinstance(obj, Path):
        return str(obj)
    return obj


def write_field_csv(table: FieldTable, path: Path) -> None:
    """Header row: coordinates then value; rows in grid order."""
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow([*table.coordinate_names, "value"])
        for point, value in zip(table.points, table.values):
            writer.writerow([repr(float(c)) for c in point] + [repr(float(value))])


def write_report(report: RunReport, cfg: RunConfig) -> list[Path]:
    """
    Write report.json and, when requested, one CSV per field table.

    Args:
        report: Report to write
        cfg: Run configuration naming the output directory and formats

    Returns:
        Paths of the written files

    Raises:
        OSError: If the directory or a file cannot be written; the message names the path
    """
    out_dir = Path(cfg.output_dir)
    written: list[Path] = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OSError(f"Cannot create output directory {out_dir}: {e}") from e

    if "json" in cfg.formats:
        path = out_dir / "report.json"
        try:
            with path.open("w", encoding="utf-8") as f:
                json.dump(make_json_safe(report.to_dict()), f, ensure_ascii=False, indent=2)
        except OSError as e:
            raise OSError(f"Cannot write report to {path}: {e}") from e
        written.append(path)

    if "csv" in cfg.formats:
        for table in report.tables:
            path = out_dir / f"field_{table.name}.csv"
            try:
                write_field_csv(table, path)
            except OSError as e:
                raise OSError(f"Cannot write field table to {path}: {e}") from e
            written.append(path)

    logger.info(f"Wrote {len(written)} file(s) to {out_dir}")
    return written
