"""Tiny pass/fail report structure shared by the axiom checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool
    witness: Optional[str] = None

    def render(self) -> str:
        line = f"AXIOM {self.name} {'PASS' if self.passed else 'FAIL'}"
        if self.witness:
            line += f" [{self.witness}]"
        return line


@dataclass
class AxiomReport:
    results: List[AxiomResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Optional[str] = None) -> None:
        self.results.append(AxiomResult(name, passed, witness))

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def render_lines(self) -> List[str]:
        return [r.render() for r in self.results]
