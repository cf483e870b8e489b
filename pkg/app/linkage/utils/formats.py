"""
Plain-text formats for terminal pairs, paths and benchmark records.

    pairs file   one pair per line, "x y" in decimal
    paths file   one path per line, vertex ids separated by single spaces
    bench report header line, then one tab-separated record per trial
"""
import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import InputError
from .models import Path

logger = logging.getLogger(__name__)

_PAIR_PATTERN = re.compile(r"^(\d+) (\d+)$")
_PATH_PATTERN = re.compile(r"^\d+( \d+)*$")

REPORT_FIELDS = ("suite", "n", "k", "seed", "stage_outcomes", "runtime_ms")
REPORT_HEADER = "# " + " ".join(REPORT_FIELDS)


def _lines(text: str) -> List[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def parse_pairs(text: str) -> List[Tuple[int, int]]:
    """
    Parse a pairs file.

    Raises:
        InputError: naming the first malformed line (1-based).
    """
    pairs = []
    for number, line in enumerate(_lines(text), start=1):
        match = _PAIR_PATTERN.match(line)
        if not match:
            raise InputError(f"pairs line {number}: expected 'x y', got {line!r}")
        pairs.append((int(match.group(1)), int(match.group(2))))
    if not pairs:
        raise InputError("pairs file is empty")
    return pairs


def format_pairs(pairs: Sequence[Tuple[int, int]]) -> str:
    return "".join(f"{x} {y}\n" for x, y in pairs)


def parse_paths(text: str) -> List[Path]:
    """Parse a paths file; the vertex sequences are not checked against any tournament."""
    paths = []
    for number, line in enumerate(_lines(text), start=1):
        if not _PATH_PATTERN.match(line):
            raise InputError(f"paths line {number}: expected space-separated ids, got {line!r}")
        paths.append(Path(tuple(int(v) for v in line.split(" "))))
    return paths


def format_paths(paths: Sequence[Path]) -> str:
    return "".join(f"{path}\n" for path in paths)


@dataclass(frozen=True)
class BenchRecord:
    """
    Outcome of one benchmark trial.

    Attributes:
        suite: Suite name
        n: Vertex count
        k: Number of terminal pairs
        seed: Trial seed (before degree-floor resampling)
        stage_outcomes: (stage, succeeded) in pipeline order, up to the first failure
        runtime_ms: Wall-clock time, None when timing is suppressed
    """
    suite: str
    n: int
    k: int
    seed: int
    stage_outcomes: Tuple[Tuple[str, bool], ...]
    runtime_ms: Optional[int] = None

    @property
    def succeeded(self) -> bool:
        return bool(self.stage_outcomes) and all(ok for _, ok in self.stage_outcomes)

    def outcome_text(self) -> str:
        return ",".join(f"{stage}:{'ok' if ok else 'FAIL'}" for stage, ok in self.stage_outcomes)

    def to_line(self, timing: bool = True) -> str:
        runtime = str(self.runtime_ms) if timing and self.runtime_ms is not None else "-"
        fields = (self.suite, str(self.n), str(self.k), str(self.seed), self.outcome_text(), runtime)
        return "\t".join(fields)

    @classmethod
    def from_line(cls, line: str) -> "BenchRecord":
        fields = line.split("\t")
        if len(fields) != len(REPORT_FIELDS):
            raise InputError(f"bench record has {len(fields)} fields, expected {len(REPORT_FIELDS)}")
        suite, n, k, seed, outcomes, runtime = fields
        stage_outcomes = []
        for item in filter(None, outcomes.split(",")):
            stage, _, verdict = item.partition(":")
            stage_outcomes.append((stage, verdict == "ok"))
        return cls(
            suite=suite,
            n=int(n),
            k=int(k),
            seed=int(seed),
            stage_outcomes=tuple(stage_outcomes),
            runtime_ms=None if runtime == "-" else int(runtime),
        )


def format_report(records: Sequence[BenchRecord], timing: bool = True) -> str:
    lines = [REPORT_HEADER, *(record.to_line(timing) for record in records)]
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> List[BenchRecord]:
    lines = _lines(text)
    if not lines or lines[0] != REPORT_HEADER:
        raise InputError("bench report must start with the header line")
    return [BenchRecord.from_line(line) for line in lines[1:]]
