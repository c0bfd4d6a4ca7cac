"""Report documents: one record per requested check, serialised deterministically."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

REPORT_VERSION = 1


@dataclass
class Report:
    scene: str
    records: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r["ok"] for r in self.records)

    def summary(self) -> dict[str, int]:
        return {"total": len(self.records), "ok": sum(r["ok"] for r in self.records),
                "not_ok": sum(not r["ok"] for r in self.records)}

    def to_json(self) -> dict:
        return {"version": REPORT_VERSION, "scene": self.scene, "records": self.records,
                "summary": self.summary()}

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        return cls(data["scene"], list(data["records"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def write(self, path: Path) -> None:
        path.write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def read(cls, path: Path) -> "Report":
        return cls.from_json(json.loads(path.read_text(encoding="utf-8")))
