"""Differential corpus: interpreter as oracle, graph reducer as subject.

A corpus directory holds ``NAME.mlc`` sources, each with a ``NAME.expect``
sidecar. The first line of the sidecar is one of::

    value <printed value>     the oracle prints this; if it is ground the
                              reducer must print the same
    error <tag>               the oracle fails with this error tag
    alpha <expression>        the reduced graph is alpha-equal to the
                              reduced graph of <expression>

An optional further line ``fuel N`` overrides the oracle's fuel.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from mulambda import interp, ir
from mulambda._deep import call_deep
from mulambda.errors import MuLambdaError
from mulambda.rewrite import DagContext, reduce


@dataclass(frozen=True)
class CorpusEntry:
    source: Path
    kind: str
    expected: str
    fuel: int | None = None

    @property
    def name(self):
        return self.source.stem


@dataclass(frozen=True)
class EntryResult:
    entry: CorpusEntry
    status: str  # "pass", "fail" or "non-ground"
    detail: str

    def line(self):
        return f"{self.status.upper():<10} {self.entry.name}: {self.detail}"


@dataclass
class Report:
    results: list[EntryResult]

    def count(self, status):
        return sum(1 for r in self.results if r.status == status)

    @property
    def failed(self):
        return self.count("fail") > 0

    def summary(self):
        return (f"total={len(self.results)} pass={self.count('pass')} "
                f"fail={self.count('fail')} non-ground={self.count('non-ground')}")


def load_entry(source: Path) -> CorpusEntry:
    sidecar = source.with_suffix(".expect")
    lines = [line.strip() for line in sidecar.read_text(encoding="utf-8").splitlines() if line.strip()]
    if not lines:
        raise ValueError(f"{sidecar}: empty expectation")
    kind, _, expected = lines[0].partition(" ")
    if kind not in ("value", "error", "alpha"):
        raise ValueError(f"{sidecar}: unknown expectation {kind!r}")
    fuel = None
    for line in lines[1:]:
        key, _, rest = line.partition(" ")
        if key != "fuel":
            raise ValueError(f"{sidecar}: unknown directive {key!r}")
        fuel = int(rest)
    return CorpusEntry(source, kind, expected.strip(), fuel)


def load_corpus(directory) -> list[CorpusEntry]:
    return [load_entry(path) for path in sorted(Path(directory).glob("*.mlc"))]


def reduce_text(text: str, ctx: DagContext | None = None) -> ir.Node:
    ctx = ctx or DagContext()
    return reduce(ctx, ir.compile_text(text))


def check_entry(entry: CorpusEntry, fuel: int = interp.DEFAULT_FUEL) -> EntryResult:
    text = entry.source.read_text(encoding="utf-8")
    try:
        oracle = interp.run(text, entry.fuel if entry.fuel is not None else fuel)
    except MuLambdaError as exc:
        if entry.kind == "error" and exc.tag == entry.expected:
            return EntryResult(entry, "pass", f"oracle error {exc.tag}")
        return EntryResult(entry, "fail", f"oracle error {exc.tag}: {exc}")
    if entry.kind == "error":
        return EntryResult(entry, "fail", f"expected error {entry.expected}, oracle gave {interp.show(oracle)}")

    try:
        subject = reduce_text(text)
        if entry.kind == "alpha":
            target = reduce_text(entry.expected)
            if ir.alpha_equal(subject, target):
                return EntryResult(entry, "pass", f"alpha-equal to {entry.expected}")
            return EntryResult(entry, "fail", f"not alpha-equal to {entry.expected}")
    except MuLambdaError as exc:
        return EntryResult(entry, "fail", f"reducer error {exc.tag}: {exc}")

    printed = interp.show(oracle)
    if printed != entry.expected:
        return EntryResult(entry, "fail", f"oracle printed {printed}, expected {entry.expected}")
    if not interp.is_ground(oracle):
        return EntryResult(entry, "non-ground", f"oracle {printed}, reducer {ir.show(subject)}")
    if ir.show(subject) != printed:
        return EntryResult(entry, "fail", f"reducer printed {ir.show(subject)}, oracle {printed}")
    return EntryResult(entry, "pass", printed)


def diff_corpus(directory, fuel: int = interp.DEFAULT_FUEL) -> Report:
    return Report([call_deep(check_entry, entry, fuel) for entry in load_corpus(directory)])

