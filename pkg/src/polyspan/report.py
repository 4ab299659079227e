"""Verdict records shared by the checkers and the command line."""
from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Verdict:
    law: str
    inputs: list
    ok: bool
    witness: object = None

    def to_json(self) -> dict:
        out = {"law": self.law, "inputs": self.inputs, "verdict": "pass" if self.ok else "fail"}
        if not self.ok and self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    verdicts: list = field(default_factory=list)
    redrawn: int = 0

    def add(self, law: str, inputs, ok: bool, witness=None) -> Verdict:
        v = Verdict(law, list(inputs), bool(ok), witness)
        self.verdicts.append(v)
        return v

    def extend(self, other: "Report") -> "Report":
        self.verdicts.extend(other.verdicts)
        self.redrawn += other.redrawn
        return self

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    def failures(self) -> list:
        return [v for v in self.verdicts if not v.ok]

    def laws(self) -> set:
        return {v.law for v in self.verdicts}

    def lines(self) -> list[str]:
        return [json.dumps(v.to_json(), sort_keys=True, default=str) for v in self.verdicts]

    def __len__(self):
        return len(self.verdicts)
