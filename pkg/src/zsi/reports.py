"""Suite execution, machine-readable reports, and the on-disk result cache.

Reports are deterministic: for a fixed configuration the JSON payload is
byte-identical across runs, with the wall time segregated in a sidecar
field that comparison mode ignores.  Everything serialized is an exact
integer, string, bool, or nested containers of those; fractions appear
as {"num": ..., "den": ...} objects.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import __version__
from .engine import IndexCertificate, index_certificate
from .normalform import CLOSED_FORM_CASES, closed_form_witness
from .residues import ResidueSequence, primes_between
from .suites import (
    SMALL_PRIME_INDEX2_TABLE,
    SMALL_PRIME_RANGE,
    AuditRow,
    audit_cases,
    classify,
    expected_small_prime_families,
    high_multiplicity_sweep,
    special_family,
    special_family_certificate,
    verify_unique_family,
)

SUITES = ("prop21", "prop22", "prop23", "lemma24", "theorem", "audit")
SUITE_MIN_PRIME = {
    "prop21": 5,
    "prop22": 5,
    "prop23": 5,
    "lemma24": 5,
    "theorem": 31,
    "audit": 31,
}
SUITE_MAX_PRIME = {"prop23": SMALL_PRIME_RANGE[1]}

ENV_CACHE_DIR = "ZSI_CACHE_DIR"
DEFAULT_CACHE_DIR = ".zsi-cache"

STATUS_PASS = "pass"
STATUS_FAIL = "fail"


class ConfigError(Exception):
    """Invalid run configuration; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    """A verification run: suites crossed with the primes in a range."""

    prime_range: tuple[int, int]
    suites: tuple[str, ...]
    jobs: int = 1
    output_format: str = "json"
    cache_dir: str = DEFAULT_CACHE_DIR
    fail_fast: bool = False
    force: bool = False

    def __post_init__(self) -> None:
        lo, hi = self.prime_range
        if lo > hi:
            raise ConfigError(f"empty prime range {lo}..{hi}")
        if not self.suites:
            raise ConfigError("no suites selected")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suites {unknown}; choose from {list(SUITES)}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be at least 1, got {self.jobs}")
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"output format must be json or csv, got {self.output_format!r}")

    def selected_primes(self) -> list[int]:
        return primes_between(*self.prime_range)


def validate_config(config: RunConfig) -> list[int]:
    """Expand and vet the prime range against every selected suite.

    Raises ConfigError when the range holds no primes, or holds a prime a
    suite cannot accept (below its hypothesis, or outside the tabulated
    range for the small-prime classification).
    """
    primes = config.selected_primes()
    if not primes:
        raise ConfigError(f"no primes in range {config.prime_range[0]}..{config.prime_range[1]}")
    for suite in config.suites:
        minimum = SUITE_MIN_PRIME[suite]
        too_small = [p for p in primes if p < minimum]
        if too_small:
            raise ConfigError(f"suite {suite} requires primes >= {minimum}; range includes {too_small}")
        maximum = SUITE_MAX_PRIME.get(suite)
        if maximum is not None:
            too_big = [p for p in primes if p > maximum]
            if too_big:
                raise ConfigError(f"suite {suite} is tabulated only up to {maximum}; range includes {too_big}")
    return primes


@dataclass(frozen=True)
class SuiteReport:
    """Outcome of one (suite, prime) task."""

    suite: str
    prime: int
    status: str
    payload: dict
    wall_time_ms: int
    version: str = __version__

    @property
    def passed(self) -> bool:
        return self.status != STATUS_FAIL


def _fraction_dict(value: Fraction) -> dict:
    return {"num": value.numerator, "den": value.denominator}


def _sequence_dict(seq: ResidueSequence) -> dict:
    return {"order": seq.order.n, "entries": list(seq.entries)}


def _certificate_dict(cert: IndexCertificate) -> dict:
    return {
        "multiplier": cert.best_multiplier,
        "norm": cert.best_norm,
        "index": _fraction_dict(cert.index_value),
    }


def _run_prop21(p: int) -> tuple[str, dict]:
    checked, violations = high_multiplicity_sweep(p)
    payload = {
        "checked": checked,
        "violations": [
            {**_sequence_dict(seq), "index": _fraction_dict(cert.index_value)}
            for seq, cert in violations
        ],
    }
    if violations:
        payload["counterexample"] = _sequence_dict(violations[0][0])
        return STATUS_FAIL, payload
    return STATUS_PASS, payload


def _run_prop22(p: int) -> tuple[str, dict]:
    cert = special_family_certificate(p)
    seq = special_family(p)
    payload = {
        "family": list(seq.entries[2:]),
        "certificate": _certificate_dict(cert),
    }
    if cert.best_norm != 2 * p:
        payload["counterexample"] = _sequence_dict(seq)
        return STATUS_FAIL, payload
    return STATUS_PASS, payload


def _run_prop23(p: int) -> tuple[str, dict]:
    record = classify(p)
    expected = expected_small_prime_families(p)
    computed = record.families
    missing = [list(f) for f in expected if f not in computed]
    unexpected = [list(f) for f in computed if f not in expected]
    payload = {
        "computed": [list(f) for f in computed],
        "expected": [list(f) for f in expected],
        "missing": missing,
        "unexpected": unexpected,
        "orbit_classes": [list(e) for e in record.orbit_representatives()],
    }
    if missing or unexpected:
        bad = (unexpected or missing)[0]
        payload["counterexample"] = {"order": p, "entries": [1, 1] + list(bad)}
        return STATUS_FAIL, payload
    return STATUS_PASS, payload


def _run_lemma24(p: int) -> tuple[str, dict]:
    cases = []
    failed = None
    for case in sorted(CLOSED_FORM_CASES):
        _, threshold = CLOSED_FORM_CASES[case]
        if p <= threshold:
            continue
        a, b, c = case
        m, t = closed_form_witness(case, p)
        seq = ResidueSequence.of((1, 1, c, p - b, p - a), p)
        cert = index_certificate(seq)
        entry = {
            "shape": list(case),
            "divisor": CLOSED_FORM_CASES[case][0],
            "multiplier": m,
            "remainder": t,
            "certificate": _certificate_dict(cert),
        }
        cases.append(entry)
        if cert.best_norm != p and failed is None:
            failed = seq
    payload: dict = {"cases": cases}
    if failed is not None:
        payload["counterexample"] = _sequence_dict(failed)
        return STATUS_FAIL, payload
    if not cases:
        return "skipped(no-applicable-cases)", payload
    return STATUS_PASS, payload


def _witness_dict(row: AuditRow) -> dict | None:
    if row.witness.found is None:
        return None
    k, m = row.witness.found
    return {"k": k, "m": m}


def _audit_row_dict(row: AuditRow) -> dict:
    a, b, c = row.triple
    return {
        "a": a,
        "b": b,
        "c": c,
        "entries": [1, 1, c, row.p - b, row.p - a],
        "k1": row.k1,
        "m1": row.witness.m1,
        "bucket": row.bucket,
        "witness": _witness_dict(row),
        "certificate": _certificate_dict(row.certificate),
        "ok": row.ok,
        "note": row.note,
    }


def _run_audit(p: int) -> tuple[str, dict]:
    rows = audit_cases(p)
    counts: dict[str, int] = {}
    for row in rows:
        counts[row.bucket] = counts.get(row.bucket, 0) + 1
    bad = [row for row in rows if not row.ok]
    payload = {
        "rows": [_audit_row_dict(row) for row in rows],
        "bucket_counts": counts,
        "counterexamples": [_audit_row_dict(row) for row in bad],
    }
    if bad:
        payload["counterexample"] = {"order": p, "entries": _audit_row_dict(bad[0])["entries"]}
        return STATUS_FAIL, payload
    return STATUS_PASS, payload


def _run_theorem(p: int) -> tuple[str, dict]:
    chk = verify_unique_family(p)
    payload = {
        "families": [list(f) for f in chk.families],
        "expected_family": list(chk.expected_family),
        "pair_sequences": chk.pair_count,
        "triple_sequences": chk.triple_count,
        "index_range_ok": chk.index_range_ok,
        "high_multiplicity_ok": chk.high_multiplicity_ok,
    }
    if not chk.passed:
        assert chk.counterexample is not None
        payload["counterexample"] = _sequence_dict(chk.counterexample)
        return STATUS_FAIL, payload
    return STATUS_PASS, payload


_SUITE_RUNNERS: dict[str, Callable[[int], tuple[str, dict]]] = {
    "prop21": _run_prop21,
    "prop22": _run_prop22,
    "prop23": _run_prop23,
    "lemma24": _run_lemma24,
    "theorem": _run_theorem,
    "audit": _run_audit,
}


def execute_suite(suite: str, prime: int) -> SuiteReport:
    """Run one (suite, prime) task and time it."""
    started = time.monotonic_ns()
    status, payload = _SUITE_RUNNERS[suite](prime)
    elapsed_ms = (time.monotonic_ns() - started) // 1_000_000
    return SuiteReport(suite=suite, prime=prime, status=status, payload=payload, wall_time_ms=elapsed_ms)


def _execute_task(task: tuple[str, int]) -> SuiteReport:
    return execute_suite(*task)


# ---------------------------------------------------------------------------
# Rendering

def report_dict(report: SuiteReport, include_timing: bool = True) -> dict:
    data = {
        "suite": report.suite,
        "prime": report.prime,
        "status": report.status,
        "version": report.version,
        "payload": report.payload,
    }
    if include_timing:
        data["wall_time_ms"] = report.wall_time_ms
    return data


def report_json(report: SuiteReport) -> str:
    return json.dumps(report_dict(report), sort_keys=True, indent=2) + "\n"


def canonical_json(report: SuiteReport) -> str:
    """Comparison form: the sidecar wall time is excluded."""
    return json.dumps(report_dict(report, include_timing=False), sort_keys=True, indent=2) + "\n"


def _triple_label(values) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def csv_records(report: SuiteReport) -> list[tuple[str, str]]:
    """(family_or_bucket, detail) pairs mirroring the JSON payload records."""
    payload = report.payload
    suite = report.suite
    records: list[tuple[str, str]] = []
    if suite == "prop21":
        records.append(("h3-sweep", f"checked={payload['checked']} violations={len(payload['violations'])}"))
        for violation in payload["violations"]:
            records.append(
                (_triple_label(violation["entries"]), f"index={violation['index']['num']}/{violation['index']['den']}")
            )
    elif suite == "prop22":
        cert = payload["certificate"]
        records.append(
            (
                _triple_label(payload["family"]),
                f"index={cert['index']['num']}/{cert['index']['den']} multiplier={cert['multiplier']}",
            )
        )
    elif suite == "prop23":
        expected = [tuple(f) for f in payload["expected"]]
        for family in payload["computed"]:
            detail = "expected" if tuple(family) in expected else "unexpected"
            records.append((_triple_label(family), detail))
        for family in payload["missing"]:
            records.append((_triple_label(family), "missing"))
    elif suite == "lemma24":
        for case in payload["cases"]:
            cert = case["certificate"]
            records.append(
                (
                    _triple_label(case["shape"]),
                    f"m={case['multiplier']} t={case['remainder']} norm={cert['norm']}",
                )
            )
    elif suite == "theorem":
        for family in payload["families"]:
            records.append((_triple_label(family), "index=2"))
        records.append(
            (
                "summary",
                f"pairs={payload['pair_sequences']} triples={payload['triple_sequences']}",
            )
        )
    elif suite == "audit":
        for row in payload["rows"]:
            witness = row["witness"]
            witness_text = f"{witness['k']},{witness['m']}" if witness else "none"
            records.append(
                (
                    row["bucket"],
                    f"a={row['a']} b={row['b']} c={row['c']} k1={row['k1']}"
                    f" witness={witness_text} norm={row['certificate']['norm']}",
                )
            )
    if not records:
        records.append(("summary", "no records"))
    return records


def csv_lines(reports: list[SuiteReport]) -> list[str]:
    import csv as _csv
    import io

    buffer = io.StringIO()
    writer = _csv.writer(buffer, lineterminator="\n")
    writer.writerow(["suite", "prime", "status", "family_or_bucket", "detail"])
    for report in reports:
        for bucket, detail in csv_records(report):
            writer.writerow([report.suite, report.prime, report.status, bucket, detail])
    return buffer.getvalue().splitlines()


# ---------------------------------------------------------------------------
# Cache

def report_path(cache_dir: str | Path, suite: str, prime: int) -> Path:
    return Path(cache_dir) / f"{suite}_p{prime}.json"


def store_report(report: SuiteReport, cache_dir: str | Path) -> Path:
    """Write the report file atomically (temp file, then rename)."""
    path = report_path(cache_dir, report.suite, report.prime)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f"{path.name}.tmp-{os.getpid()}")
    tmp.write_text(report_json(report), encoding="utf-8")
    os.replace(tmp, path)
    return path


def load_cached(cache_dir: str | Path, suite: str, prime: int) -> SuiteReport | None:
    """Load a cached report; stale versions and malformed files read as misses."""
    path = report_path(cache_dir, suite, prime)
    if not path.is_file():
        return None
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return None
    if not isinstance(data, dict) or data.get("version") != __version__:
        return None
    if data.get("suite") != suite or data.get("prime") != prime:
        return None
    status = data.get("status")
    payload = data.get("payload")
    if not isinstance(status, str) or not isinstance(payload, dict):
        return None
    return SuiteReport(
        suite=suite,
        prime=prime,
        status=status,
        payload=payload,
        wall_time_ms=int(data.get("wall_time_ms", 0)),
    )


# ---------------------------------------------------------------------------
# Coordinator

def _suite_sort_key(task: tuple[str, int]) -> tuple[int, int]:
    return (SUITES.index(task[0]), task[1])


def run_config(config: RunConfig, log: Callable[[str], None] | None = None) -> tuple[int, list[SuiteReport]]:
    """Run every (suite, prime) task, reusing cached passes unless forced.

    Returns (exit_code, reports) with the reports sorted by suite then
    prime.  Exit code 0 means every executed task passed or was skipped;
    a failing task makes it 1.  Workers share nothing; each computed
    report is written to the cache directory atomically.
    """
    primes = validate_config(config)
    emit = log or (lambda _line: None)
    tasks = sorted(((suite, p) for suite in dict.fromkeys(config.suites) for p in primes), key=_suite_sort_key)

    reports: dict[tuple[str, int], SuiteReport] = {}
    to_run: list[tuple[str, int]] = []
    for task in tasks:
        cached = None if config.force else load_cached(config.cache_dir, *task)
        if cached is not None and cached.passed:
            reports[task] = cached
            emit(f"[{task[0]} p={task[1]}] {cached.status} (cached)")
        else:
            to_run.append(task)

    failed = False
    if config.jobs == 1 or len(to_run) <= 1:
        for task in to_run:
            report = _execute_task(task)
            reports[task] = report
            store_report(report, config.cache_dir)
            emit(f"[{report.suite} p={report.prime}] {report.status} ({report.wall_time_ms} ms)")
            if not report.passed:
                failed = True
                if config.fail_fast:
                    break
    elif to_run:
        workers = min(config.jobs, len(to_run))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(_execute_task, task): task for task in to_run}
            for future in as_completed(futures):
                report = future.result()
                task = futures[future]
                reports[task] = report
                store_report(report, config.cache_dir)
                emit(f"[{report.suite} p={report.prime}] {report.status} ({report.wall_time_ms} ms)")
                if not report.passed:
                    failed = True
                    if config.fail_fast:
                        for other in futures:
                            other.cancel()
                        break

    failed = failed or any(not r.passed for r in reports.values())
    ordered = [reports[task] for task in tasks if task in reports]
    return (1 if failed else 0), ordered
