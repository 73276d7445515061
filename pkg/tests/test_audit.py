"""
Tests for audit logging functionality.
"""

import json
from pathlib import Path

from spectral_workbench.audit import (
    AuditLogger,
    configure_audit_logging,
    get_audit_logger,
)


def read_entries(log_file):
    return [json.loads(line) for line in Path(log_file).read_text().splitlines()]


class TestAuditLogger:
    """Test audit logger functionality."""

    def test_audit_logger_initialization(self, tmp_path):
        """Test audit logger initializes correctly."""
        log_file = tmp_path / "logs" / "audit.log"
        logger = AuditLogger(str(log_file))

        assert logger.log_file == Path(log_file)
        assert log_file.parent.is_dir()

    def test_default_location(self, tmp_path):
        """Test that the default log lives under ~/.specwb."""
        logger = AuditLogger()

        assert logger.log_file == tmp_path / ".specwb" / "audit.log"

    def test_log_run_started(self, tmp_path):
        """Test logging run started event."""
        log_file = tmp_path / "audit.log"
        logger = AuditLogger(str(log_file))

        logger.log_run_started("run123", "audit", claims=["C1", "C6"], caps={"max_ring": 8})

        entry = read_entries(log_file)[-1]
        assert entry["event_type"] == "run_started"
        assert entry["run_id"] == "run123"
        assert entry["claims"] == ["C1", "C6"]
        assert entry["caps"] == {"max_ring": 8}
        assert entry["timestamp"].endswith("Z")

    def test_log_run_completed(self, tmp_path):
        """Test logging run completion with refutations."""
        log_file = tmp_path / "audit.log"
        logger = AuditLogger(str(log_file))

        logger.log_run_completed("run123", instances=40, refuted=1, duration_seconds=2.5)

        entry = read_entries(log_file)[-1]
        assert entry["event_type"] == "run_completed"
        assert "40 instances, 1 refuted" in entry["message"]
        assert entry["truncated"] is False

    def test_log_claim_refuted(self, tmp_path):
        """Test logging a refutation with its witness."""
        log_file = tmp_path / "audit.log"
        logger = AuditLogger(str(log_file))

        logger.log_claim_refuted("run123", "C1", "ab" * 32, witness={"ideal": [0, 1]})

        entry = read_entries(log_file)[-1]
        assert entry["event_type"] == "claim_refuted"
        assert entry["message"] == "Claim C1 refuted on instance abababababab"
        assert entry["witness"] == {"ideal": [0, 1]}

    def test_log_hunt_finding(self, tmp_path):
        """Test logging a hunt finding."""
        log_file = tmp_path / "audit.log"
        logger = AuditLogger(str(log_file))

        logger.log_hunt_finding("run123", "wcn-vs-cn", "V", detail={"shape": "V"})

        entry = read_entries(log_file)[-1]
        assert entry["event_type"] == "hunt_finding"
        assert entry["hunt"] == "wcn-vs-cn"

    def test_log_cap_refused(self, tmp_path):
        """Test logging a refused input."""
        log_file = tmp_path / "audit.log"
        logger = AuditLogger(str(log_file))

        logger.log_cap_refused("ring", 40, 16)

        entry = read_entries(log_file)[-1]
        assert entry["event_type"] == "cap_refused"
        assert entry["message"] == "Refused ring of size 40 (cap 16)"

    def test_log_config_changed(self, tmp_path):
        """Test logging configuration change."""
        log_file = tmp_path / "audit.log"
        logger = AuditLogger(str(log_file))

        logger.log_config_changed("max_ring", old_value=16, new_value=8)

        entry = read_entries(log_file)[-1]
        assert entry["event_type"] == "config_changed"
        assert entry["old_value"] == 16
        assert entry["new_value"] == 8

    def test_log_validation_error_truncates_value(self, tmp_path):
        """Test that long invalid values are shortened."""
        log_file = tmp_path / "audit.log"
        logger = AuditLogger(str(log_file))

        logger.log_validation_error("claims", "C" * 300, "Invalid claim id")

        entry = read_entries(log_file)[-1]
        assert len(entry["invalid_value"]) == 103
        assert entry["invalid_value"].endswith("...")

    def test_sanitize_home_and_long_lists(self, tmp_path):
        """Test that paths lose the home directory and lists are cut."""
        logger = AuditLogger(str(tmp_path / "audit.log"))

        assert logger._sanitize_value(str(tmp_path / "ring.txt")) == "~/ring.txt"
        cut = logger._sanitize_value(list(range(100)))
        assert len(cut) == 65
        assert cut[-1] == "..."
        assert logger._sanitize_value([1, 2]) == [1, 2]

    def test_human_readable_format(self, tmp_path):
        """Test the non-JSON line format."""
        log_file = tmp_path / "audit.log"
        logger = AuditLogger(str(log_file), json_format=False)

        logger.log_file_error("read", "ring.txt", "boom")

        line = log_file.read_text().strip()
        assert "file_error: File read error: boom" in line
        assert '"operation": "read"' in line


class TestGlobalLogger:
    """Test the module level logger."""

    def test_get_audit_logger_singleton(self, tmp_path):
        """Test that get_audit_logger returns the configured instance."""
        configured = configure_audit_logging(enabled=True, log_file=tmp_path / "other.log")

        assert get_audit_logger() is configured
        assert get_audit_logger() is get_audit_logger()

    def test_disabled(self):
        """Test that disabling removes the logger."""
        assert configure_audit_logging(enabled=False) is None
        assert get_audit_logger(enabled=False) is None
