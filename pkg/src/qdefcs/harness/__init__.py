"""Grid scans, serialization and the verification suite."""
from .rowio import SCHEMA, rows_from_csv, rows_from_json, rows_to_csv, rows_to_json
from .scan import GridRow, Observable, ScanConfig, certified_report, scan_t, scan_z
from .verify import Profile, VerifyReport, verify

__all__ = [
    "SCHEMA", "GridRow", "Observable", "Profile", "ScanConfig", "VerifyReport",
    "certified_report", "rows_from_csv", "rows_from_json", "rows_to_csv", "rows_to_json",
    "scan_t", "scan_z", "verify",
]
