"""Core audit orchestration layer.

This module runs the claim catalog over a corpus and runs the hunters for
the open questions. It is UI-agnostic: progress and status go through
optional callbacks, and results come back as an ``AuditReport`` that the
CLI renders or writes as JSON lines.

Audits fan (claim, instance) tasks out to a process pool when more than
one worker is configured; results are merged back in submission order so
reports do not depend on scheduling.
"""

import itertools
import logging
import time
import uuid
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .audit import AuditLogger, get_audit_logger
from .claims import (
    CATALOG,
    CLAIM_IDS,
    ClaimError,
    ClaimInstance,
    NestedTriple,
    VerdictStatus,
    check_claim,
    get_claim,
)
from .config import Config, Limits
from .corpus import Corpus, CorpusSpec
from .density import dense, weak_cn_wrt
from .formats import describe_instance, dump_poset, instance_digest
from .toolkits import DirectToolkit
from .topology import (
    SpectralSpace,
    is_cn_chain,
    is_completely_normal_topological,
    is_pm,
    is_weak_cn,
    isomorphic_posets,
    lambda_poset,
    space_from_ring,
    subspace,
    v_poset,
)
from .utils import bits, is_subset, write_jsonl
from .validation import CapExceededError

logger = logging.getLogger(__name__)

BATCH_SIZE = 64

# Record status for instances skipped by a size cap; neither evidence nor vacuity.
CAPPED = "capped"


@dataclass
class ProgressUpdate:
    """Progress information for UI updates.

    Attributes:
        step: Current step number, one per claim or hunt stage
        total_steps: Total number of steps
        message: Description of current step
        current: Tasks finished within the step
        total: Tasks in the step, 0 when not known in advance
        percent: Completion percentage of the whole run (0-100)
    """

    step: int
    total_steps: int
    message: str
    current: int = 0
    total: int = 0
    percent: float = 0.0


@dataclass
class AuditReport:
    """Result of an audit or a hunt.

    Attributes:
        kind: "audit" or the hunt name
        records: One dict per evaluated task, in a stable order
        tallies: Per claim (or hunt stage) status counts
        refutations: Records of refuted claims
        findings: Separating examples found by hunters
        instances: Number of evaluated tasks
        truncated: True when the time budget stopped the run early
        elapsed_ms: Wall time, when timings are recorded
        notes: Free-text remarks for the summary
    """

    kind: str
    records: List[Dict[str, Any]] = field(default_factory=list)
    tallies: Dict[str, Counter] = field(default_factory=dict)
    refutations: List[Dict[str, Any]] = field(default_factory=list)
    findings: List[Dict[str, Any]] = field(default_factory=list)
    instances: int = 0
    truncated: bool = False
    elapsed_ms: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    def count(self, key: str, status: str) -> None:
        self.tallies.setdefault(key, Counter())[status] += 1

    @property
    def theorem_refuted(self) -> bool:
        """True when a proved claim was refuted.

        Consistency claims (C21) and hunt findings never count.
        """
        return any(not CATALOG[r["claim"]].consistency for r in self.refutations)

    @property
    def inconsistencies(self) -> List[Dict[str, Any]]:
        """Refutations of consistency claims, where two predicates disagree."""
        return [r for r in self.refutations if CATALOG[r["claim"]].consistency]

    def summary(self) -> Dict[str, Any]:
        out = {
            "summary": True,
            "kind": self.kind,
            "tallies": {k: dict(sorted(v.items())) for k, v in self.tallies.items()},
            "refutations": self.refutations,
            "findings": self.findings,
            "instances": self.instances,
            "truncated": self.truncated,
        }
        if self.notes:
            out["notes"] = self.notes
        if self.elapsed_ms is not None:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def lines(self) -> Iterator[Dict[str, Any]]:
        yield from self.records
        yield self.summary()

    def write(self, path: Path) -> Path:
        return write_jsonl(path, self.lines())


def _evaluate(task: Tuple[str, Any], limits: Limits, record_timings: bool) -> Dict[str, Any]:
    """Check one (claim, instance) task and flatten the verdict into a report record."""
    claim_id, instance = task
    record = {
        "claim": claim_id,
        "instance": describe_instance(instance),
        "instance_digest": instance_digest(instance),
    }
    try:
        verdict = check_claim(ClaimInstance(claim_id, instance), limits)
    except CapExceededError as e:
        record.update(
            status=CAPPED, witness=None, note=str(e), capped=True,
            cap_refused={"kind": e.kind, "size": e.size, "cap": e.cap},
        )
        return record

    record["status"] = verdict.status.value
    record["witness"] = verdict.witness
    if verdict.note:
        record["note"] = verdict.note
    if record_timings and verdict.elapsed_ms is not None:
        record["elapsed_ms"] = verdict.elapsed_ms
    return record


def _evaluate_batch(batch: List[Tuple[str, Any]], limits: Limits, record_timings: bool) -> List[Dict[str, Any]]:
    return [_evaluate(task, limits, record_timings) for task in batch]


def _batches(tasks: Iterable[Tuple[str, Any]], size: int) -> Iterator[List[Tuple[str, Any]]]:
    iterator = iter(tasks)
    while True:
        batch = list(itertools.islice(iterator, size))
        if not batch:
            return
        yield batch


class AuditEngine:
    """Audit and hunt orchestration with UI callbacks.

    Example:
        >>> engine = AuditEngine(progress_callback=lambda u: print(u.message))
        >>> report = engine.run_audit(CorpusSpec(), ["C6"])
        >>> report.theorem_refuted
        False
    """

    def __init__(
        self,
        config: Optional[Config] = None,
        progress_callback: Optional[Callable[[ProgressUpdate], None]] = None,
        status_callback: Optional[Callable[[str], None]] = None,
        audit_logger: Optional[AuditLogger] = None,
    ):
        """Initialize the engine.

        Args:
            config: Loaded configuration; defaults are used when None
            progress_callback: Called with ProgressUpdate for each progress change
            status_callback: Called with status message strings
            audit_logger: Structured audit log; the global one when None
        """
        self.config = config or Config.load()
        self.progress_callback = progress_callback
        self.status_callback = status_callback
        self.audit_logger = audit_logger or get_audit_logger(
            enabled=self.config.get("enable_audit_logging", True)
        )
        self.workers = int(self.config.get("workers", 1))
        self.time_budget = float(self.config.get("time_budget_seconds", 600))
        self.record_timings = bool(self.config.get("record_timings", True))

        self._cancelled = False
        self._start_time = 0.0
        self._run_id = ""

    def cancel(self):
        """Request cancellation of the current run."""
        self._cancelled = True

    def _report_progress(self, update: ProgressUpdate):
        if self.progress_callback:
            self.progress_callback(update)

    def _report_status(self, message: str):
        if self.status_callback:
            self.status_callback(message)

    def _begin(self, command: str, spec: CorpusSpec, claims: Optional[Sequence[str]] = None) -> None:
        self._start_time = time.monotonic()
        self._cancelled = False
        self._run_id = uuid.uuid4().hex[:12]
        if self.audit_logger:
            self.audit_logger.log_run_started(
                self._run_id, command, claims=list(claims) if claims else None,
                caps=spec.limits.to_dict(), workers=self.workers,
            )

    def _finish(self, report: AuditReport) -> AuditReport:
        duration = time.monotonic() - self._start_time
        if self.record_timings:
            report.elapsed_ms = round(duration * 1000.0, 3)
        if self.audit_logger:
            self.audit_logger.log_run_completed(
                self._run_id, report.instances, len(report.refutations), duration, report.truncated
            )
        return report

    def _over_budget(self) -> bool:
        return time.monotonic() - self._start_time > self.time_budget

    def _finding(self, report: AuditReport, hunt: str, label: str, detail: Dict[str, Any]) -> None:
        report.findings.append(detail)
        if self.audit_logger:
            self.audit_logger.log_hunt_finding(self._run_id, hunt, label, detail)

    # Audit

    def run_audit(self, spec: CorpusSpec, claims: Sequence[str] = CLAIM_IDS) -> AuditReport:
        """Check every selected claim on every instance of the corpus.

        Args:
            spec: Corpus to run over
            claims: Claim ids, in the order they should run

        Returns:
            AuditReport; ``truncated`` is set when the time budget ran out

        Raises:
            UnknownClaimError: If a claim id is not in the catalog
            CorpusError: If a family breaks a cap
            ClaimError: If a refutation fails to re-validate
        """
        selected = [get_claim(c) for c in claims]
        corpus = Corpus(spec)
        report = AuditReport(kind="audit")
        self._begin("audit", spec, [c.claim_id for c in selected])

        executor = ProcessPoolExecutor(max_workers=self.workers) if self.workers > 1 else None
        try:
            for step, claim in enumerate(selected, start=1):
                if self._cancelled or report.truncated:
                    break
                self._report_progress(ProgressUpdate(
                    step=step, total_steps=len(selected),
                    message=f"Checking {claim.claim_id}",
                    percent=(step - 1) / len(selected) * 100,
                ))
                report.tallies.setdefault(claim.claim_id, Counter())
                tasks = ((claim.claim_id, instance) for instance in corpus.instances_for(claim))
                done = 0
                for records in self._run_batches(tasks, spec.limits, executor):
                    for record in records:
                        self._absorb(report, record)
                    done += len(records)
                    self._report_progress(ProgressUpdate(
                        step=step, total_steps=len(selected),
                        message=f"Checking {claim.claim_id}", current=done,
                        percent=(step - 1) / len(selected) * 100,
                    ))
                    if self._cancelled:
                        break
                    if self._over_budget():
                        report.truncated = True
                        pending = len(selected) - step
                        self._report_status(f"Time budget exhausted during {claim.claim_id}")
                        if self.audit_logger:
                            self.audit_logger.log_run_truncated(self._run_id, self.time_budget, pending)
                        break
        finally:
            if executor is not None:
                executor.shutdown(cancel_futures=True)

        if corpus.incomplete:
            report.notes.append(
                "subring lists may be incomplete for: " + ", ".join(sorted(set(corpus.incomplete)))
            )
        return self._finish(report)

    def _run_batches(self, tasks: Iterable[Tuple[str, Any]], limits: Limits,
                     executor: Optional[ProcessPoolExecutor]) -> Iterator[List[Dict[str, Any]]]:
        if executor is None:
            for batch in _batches(tasks, BATCH_SIZE):
                yield _evaluate_batch(batch, limits, self.record_timings)
            return

        # One round of futures per worker count, merged in submission order.
        for round_ in _batches(_batches(tasks, BATCH_SIZE), self.workers):
            futures = [executor.submit(_evaluate_batch, b, limits, self.record_timings) for b in round_]
            for future in futures:
                yield future.result()

    def _absorb(self, report: AuditReport, record: Dict[str, Any]) -> None:
        report.records.append(record)
        report.instances += 1
        report.count(record["claim"], record["status"])
        if record["status"] == VerdictStatus.REFUTED.value:
            report.refutations.append(record)
            logger.error("%s refuted on %s", record["claim"], record["instance"])
            if self.audit_logger:
                self.audit_logger.log_claim_refuted(
                    self._run_id, record["claim"], record["instance_digest"], record["witness"]
                )
        if record.get("capped"):
            logger.warning("%s skipped on %s: %s", record["claim"], record["instance"], record["note"])
            if self.audit_logger:
                refused = record["cap_refused"]
                self.audit_logger.log_cap_refused(refused["kind"], refused["size"], refused["cap"])

    # Hunts

    def hunt_intermediate_density(self, spec: CorpusSpec) -> AuditReport:
        """
        For A dense in B and every subring C with A in C in B, test A dense in C.

        A counterexample is re-derived with the direct toolkit before it is
        reported. Chains with A not dense in B are counted as skipped.
        """
        hunt = "intermediate-density"
        corpus = Corpus(spec)
        report = AuditReport(kind=hunt)
        self._begin(hunt, spec)
        direct = DirectToolkit(spec.limits)
        rings = list(corpus.rings())

        for step, ring in enumerate(rings, start=1):
            if self._cancelled:
                break
            if self._over_budget():
                report.truncated = True
                break
            self._report_progress(ProgressUpdate(
                step=step, total_steps=len(rings), message=f"Chains in {ring.name}",
                percent=(step - 1) / len(rings) * 100,
            ))
            subs = corpus.subrings(ring)
            for inner in subs:
                if not dense(inner):
                    report.count(hunt, "skipped")
                    continue
                for middle in subs:
                    if not is_subset(inner.member, middle.member):
                        continue
                    chain = NestedTriple(ring, middle.member, inner.member)
                    report.instances += 1
                    if dense(chain.inner_in_middle):
                        report.count(hunt, "dense")
                        continue
                    if not direct.dense(chain.inner_pair) or direct.dense(chain.inner_in_middle):
                        raise ClaimError(f"intermediate density counterexample on {ring.name} did not re-validate")
                    report.count(hunt, "counterexample")
                    detail = {
                        "hunt": hunt,
                        "instance": describe_instance(chain),
                        "instance_digest": instance_digest(chain),
                        "ambient": ring.name,
                        "middle": bits(middle.member),
                        "inner": bits(inner.member),
                    }
                    report.records.append(detail)
                    self._finding(report, hunt, detail["instance"], detail)

        if not report.findings and not report.truncated:
            report.notes.append("no counterexample up to the corpus caps")
        return self._finish(report)

    def hunt_wcn_vs_cn(self, spec: CorpusSpec) -> AuditReport:
        """
        Compare weak complete normality with the chain form of complete
        normality, on ring spectra and on posets.

        Ring spectra of finite rings are antichains, so both predicates hold
        there. Posets separating them are listed, one finding per
        isomorphism class, with the V and Lambda shapes labelled.
        """
        hunt = "wcn-vs-cn"
        corpus = Corpus(spec)
        report = AuditReport(kind=hunt)
        self._begin(hunt, spec)

        for ring in corpus.rings():
            s = space_from_ring(ring, spec.limits.lattice_cap)
            weak, chain = is_weak_cn(s), is_cn_chain(s)
            report.instances += 1
            report.count("rings", "agree" if weak == chain else "separate")
            if weak != chain:
                self._finding(report, hunt, ring.name, {"hunt": hunt, "ring": ring.name, "weak_cn": weak, "cn_chain": chain})
        report.notes.append("finite ring spectra are antichains: weak CN and CN both hold on every ring")

        classes: List[Tuple[SpectralSpace, Dict[str, Any]]] = []
        named = {"V": v_poset(), "Lambda": lambda_poset()}
        for s in corpus.posets():
            if self._cancelled:
                break
            if self._over_budget():
                report.truncated = True
                break
            report.instances += 1
            weak, chain = is_weak_cn(s), is_cn_chain(s)
            if weak == chain:
                report.count("posets", "agree")
                continue
            direction = "weak_cn_not_cn" if weak else "cn_not_weak_cn"
            report.count("posets", direction)
            values = {
                "weak_cn": weak,
                "cn_chain": chain,
                "cn_topological": is_completely_normal_topological(s, spec.limits.complete_normality_cap),
                "pm": is_pm(s),
            }
            report.records.append({
                "hunt": hunt, "poset": s.name, "instance_digest": instance_digest(s),
                "relations": s.relations(), "direction": direction, **values,
            })
            for rep, detail in classes:
                if detail["direction"] == direction and isomorphic_posets(rep, s):
                    detail["labeled_copies"] += 1
                    break
            else:
                label = next((k for k, p in named.items() if isomorphic_posets(p, s)), None)
                detail = {
                    "hunt": hunt, "direction": direction, "poset": dump_poset(s),
                    "points": s.size, "shape": label, "labeled_copies": 1, **values,
                }
                classes.append((s, detail))

        for s, detail in classes:
            self._finding(report, hunt, s.name, detail)
        return self._finish(report)

    def hunt_dense_vs_wcn(self, spec: CorpusSpec) -> AuditReport:
        """
        Look for dense subrings that are not weakly CN relative to their
        ambient ring, then for the poset analogue: subposets T containing
        every minimal point of S (the dense-image embeddings) whose maximal
        points have incomparable images with a common upper bound in S.

        Poset findings are labelled as such and are never ring refutations.
        """
        hunt = "dense-vs-wcn"
        corpus = Corpus(spec)
        report = AuditReport(kind=hunt)
        self._begin(hunt, spec)

        for pair in corpus.pairs():
            if self._over_budget():
                report.truncated = True
                break
            if not dense(pair):
                continue
            report.instances += 1
            if weak_cn_wrt(pair, spec.limits.lattice_cap):
                report.count("ring_pairs", "weak_cn")
                continue
            report.count("ring_pairs", "not_weak_cn")
            self._finding(report, hunt, describe_instance(pair), {
                "hunt": hunt, "level": "ring", "instance": describe_instance(pair),
                "instance_digest": instance_digest(pair),
            })

        classes: List[Tuple[nx.DiGraph, Dict[str, Any]]] = []
        for s in corpus.posets():
            if self._cancelled or report.truncated:
                break
            if self._over_budget():
                report.truncated = True
                break
            for mask in range(1, s.full_mask + 1):
                if not is_subset(s.minimal_mask, mask):
                    continue
                report.instances += 1
                clash = _poset_wcn_clash(s, mask)
                if clash is None:
                    report.count("subposets", "weak_cn")
                    continue
                report.count("subposets", "not_weak_cn")
                graph = s.to_digraph()
                nx.set_node_attributes(graph, {i: bool(mask >> i & 1) for i in range(s.size)}, "kept")
                if any(nx.is_isomorphic(g, graph, node_match=lambda a, b: a["kept"] == b["kept"])
                       for g, _ in classes):
                    continue
                shape = "Lambda" if isomorphic_posets(s, lambda_poset()) else None
                classes.append((graph, {
                    "hunt": hunt, "level": "poset", "poset": dump_poset(s),
                    "subposet": bits(mask), "maximal_pair": list(clash), "shape": shape,
                }))

        for _, detail in classes:
            self._finding(report, hunt, detail["poset"].splitlines()[0], detail)
        return self._finish(report)


def _poset_wcn_clash(s: SpectralSpace, mask: int) -> Optional[Tuple[int, int]]:
    """First pair of maximal points of the subposet on mask that are incomparable in s yet share an upper bound."""
    sub = subspace(s, mask)
    points = bits(mask)
    maxima = [points[i] for i in bits(sub.maximal_mask)]
    for a, b in itertools.combinations(maxima, 2):
        if not s.comparable(a, b) and s.up[a] & s.up[b]:
            return a, b
    return None


def run_audit(spec: CorpusSpec, claims: Sequence[str] = CLAIM_IDS, config: Optional[Config] = None) -> AuditReport:
    return AuditEngine(config).run_audit(spec, claims)


def hunt_intermediate_density(spec: CorpusSpec, config: Optional[Config] = None) -> AuditReport:
    return AuditEngine(config).hunt_intermediate_density(spec)


def hunt_wcn_vs_cn(spec: CorpusSpec, config: Optional[Config] = None) -> AuditReport:
    return AuditEngine(config).hunt_wcn_vs_cn(spec)


def hunt_dense_vs_wcn(spec: CorpusSpec, config: Optional[Config] = None) -> AuditReport:
    return AuditEngine(config).hunt_dense_vs_wcn(spec)
