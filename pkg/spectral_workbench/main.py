"""Command-line interface for the spectral workbench."""

import functools
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.progress import BarColumn, Progress, SpinnerColumn, TaskProgressColumn, TextColumn
from rich.table import Table

# Fix Windows console encoding for Unicode characters
if sys.platform == "win32":
    if hasattr(sys.stdout, 'reconfigure'):
        sys.stdout.reconfigure(encoding='utf-8')
    if hasattr(sys.stderr, 'reconfigure'):
        sys.stderr.reconfigure(encoding='utf-8')
    # Set console mode for ANSI escape codes
    os.system('')

from spectral_workbench import __version__
from spectral_workbench.audit import configure_audit_logging
from spectral_workbench.claims import CATALOG, CLAIM_IDS, ClaimError, UnknownClaimError
from spectral_workbench.config import Config, ConfigError, load_config
from spectral_workbench.core import CAPPED, AuditEngine, AuditReport, ProgressUpdate
from spectral_workbench.corpus import CorpusError, CorpusSpec
from spectral_workbench.density import DensityError, DensityMode, is_dense, pair_contraction
from spectral_workbench.formats import FormatError, load_elements, load_ring
from spectral_workbench.ideals import (
    IdealError,
    jacobson,
    maximal_spectrum,
    minimal_spectrum,
    nilradical,
    spectrum,
)
from spectral_workbench.rings import RingError, SubringPair
from spectral_workbench.topology import (
    TopologyError,
    enumerate_posets,
    is_cn_chain,
    is_completely_normal_topological,
    is_normal_topological,
    is_pm,
    is_weak_cn,
    map_props,
    max_is_t2,
    space_from_ring,
)
from spectral_workbench.utils import format_duration, get_env_or_default, mask_from
from spectral_workbench.validation import (
    CapExceededError,
    CapValidator,
    ClaimValidator,
    PathValidator,
    ValidationError,
)


# Exit codes
EXIT_SUCCESS = 0
EXIT_CONFIG_ERROR = 1
EXIT_INPUT_ERROR = 2
EXIT_CAP_EXCEEDED = 3
EXIT_THEOREM_REFUTED = 4
EXIT_UNEXPECTED = 5
EXIT_USER_CANCEL = 130

HUNTS = ("intermediate-density", "wcn-vs-cn", "dense-vs-wcn")

POSET_PREDICATES = ("pm", "cn", "cn-chain", "wcn", "normal")

INPUT_ERRORS = (
    FormatError,
    ValidationError,
    RingError,
    IdealError,
    TopologyError,
    DensityError,
    UnknownClaimError,
)


@dataclass
class CliState:
    """Settings shared by every subcommand."""

    config: Config
    verbose: bool = False
    quiet: bool = False
    json_output: bool = False
    console: Console = field(default_factory=Console)
    err_console: Console = field(default_factory=lambda: Console(stderr=True))

    @property
    def interactive(self) -> bool:
        return not (self.quiet or self.json_output)

    def log(self, message: str = "", err: bool = False) -> None:
        """Print a message unless in quiet or JSON mode."""
        if self.interactive:
            (self.err_console if err else self.console).print(message)

    def emit(self, payload: Dict[str, Any]) -> None:
        click.echo(json.dumps(payload, indent=2))

    def fail(self, message: str, code: int) -> None:
        _fail(message, code, quiet=self.quiet, json_output=self.json_output)

    def apply_overrides(self, overrides: Dict[str, Any]) -> None:
        """Apply CLI values over the config file, then re-validate."""
        for key, value in self.config.merge_with_cli_args(overrides).items():
            if value != self.config.get(key):
                self.config.set(key, value)
        self.config.validate()


def _fail(message: str, code: int, quiet: bool = False, json_output: bool = False) -> None:
    if json_output:
        click.echo(json.dumps({"error": message, "exit_code": code}))
    elif not quiet:
        Console(stderr=True).print(f"[red]✗ {message}[/red]")
    sys.exit(code)


def _exit_code_for(error: Exception) -> int:
    if isinstance(error, (ConfigError, CorpusError)):
        return EXIT_CONFIG_ERROR
    if isinstance(error, CapExceededError):
        return EXIT_CAP_EXCEEDED
    if isinstance(error, INPUT_ERRORS):
        return EXIT_INPUT_ERROR
    return EXIT_UNEXPECTED


def guarded(command: Callable) -> Callable:
    """Map workbench exceptions raised by a subcommand to exit codes."""

    @functools.wraps(command)
    def wrapper(state: CliState, *args, **kwargs):
        try:
            return command(state, *args, **kwargs)
        except KeyboardInterrupt:
            state.fail("Cancelled by user", EXIT_USER_CANCEL)
        except (ConfigError, CorpusError, CapExceededError, *INPUT_ERRORS) as e:
            state.fail(str(e), _exit_code_for(e))
        except ClaimError as e:
            # A refutation that does not replay under direct computation is a bug.
            state.fail(f"Claim check failed: {e}", EXIT_UNEXPECTED)
        except OSError as e:
            state.fail(f"File error: {e}", EXIT_INPUT_ERROR)
        except Exception as e:
            if state.verbose:
                state.err_console.print_exception()
            state.fail(f"Unexpected error: {e}", EXIT_UNEXPECTED)

    return wrapper


def _setup_logging(verbose: bool, quiet: bool) -> None:
    level = logging.DEBUG if verbose else logging.ERROR if quiet else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


class ProgressRenderer:
    """Rich progress bars fed by engine ProgressUpdate callbacks, one bar per step."""

    def __init__(self, state: CliState):
        self.state = state
        self.progress = Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TaskProgressColumn(),
            TextColumn("{task.completed} done"),
            console=state.err_console,
            disable=not state.interactive,
        )
        self._step = 0
        self._done = 0
        self._task = None

    def __enter__(self) -> "ProgressRenderer":
        self.progress.start()
        return self

    def __exit__(self, *exc_info) -> None:
        self._close_task()
        self.progress.stop()

    def _close_task(self) -> None:
        if self._task is not None:
            finished = max(self._done, 1)
            self.progress.update(self._task, total=finished, completed=finished)

    def on_progress(self, update: ProgressUpdate) -> None:
        if update.step != self._step:
            self._close_task()
            self._step = update.step
            self._done = 0
            label = f"[cyan]{update.message}[/cyan] ({update.step}/{update.total_steps})"
            # Corpus streams are lazy, so most steps have no known total.
            self._task = self.progress.add_task(label, total=update.total or None)
        self._done = update.current
        self.progress.update(self._task, completed=update.current)

    def on_status(self, message: str) -> None:
        if self.state.verbose and self.state.interactive:
            self.progress.console.print(f"  {message}")


def _run_engine(state: CliState, run: Callable[[AuditEngine], AuditReport]) -> AuditReport:
    with ProgressRenderer(state) as renderer:
        engine = AuditEngine(
            state.config,
            progress_callback=renderer.on_progress,
            status_callback=renderer.on_status,
        )
        try:
            return run(engine)
        except KeyboardInterrupt:
            engine.cancel()
            raise


def _write_report(state: CliState, report: AuditReport, out: Optional[str]) -> Optional[Path]:
    target = out or get_env_or_default("SPECWB_REPORT")
    if not target:
        return None
    path = report.write(PathValidator.validate_output_file(target))
    state.log(f"Report written to {path}")
    return path


def _render_notes(state: CliState, report: AuditReport) -> None:
    if report.truncated:
        state.log("[yellow]⚠️  Time budget exhausted: the report is partial[/yellow]")
    for note in report.notes:
        state.log(f"[dim]{note}[/dim]")
    if report.elapsed_ms is not None:
        state.log(f"Elapsed: {format_duration(report.elapsed_ms / 1000.0)}")


@click.group()
@click.version_option(__version__, prog_name="specwb")
@click.option(
    "--config",
    "-c",
    default=None,
    type=click.Path(dir_okay=False),
    help="Path to YAML configuration file",
)
@click.option("--verbose", "-v", is_flag=True, help="Show detailed progress and debug logging")
@click.option("--quiet", "-q", is_flag=True, help="Suppress all non-error output")
@click.option("--json-output", is_flag=True, help="Print machine-readable JSON")
@click.pass_context
def cli(ctx: click.Context, config: Optional[str], verbose: bool, quiet: bool, json_output: bool):
    """
    Verification workbench for dense subrings and spectral topology.

    Checks the claim catalog over a corpus of finite commutative rings and
    posets, and hunts for counterexamples to the open questions.

    Example:

        specwb audit --claims C1,C6 --max-ring 12 --out report.jsonl
    """
    _setup_logging(verbose, quiet)
    try:
        cfg = load_config(config)
    except ConfigError as e:
        _fail(f"Configuration error: {e}", EXIT_CONFIG_ERROR, quiet=quiet, json_output=json_output)
        return

    configure_audit_logging(
        enabled=cfg.get("enable_audit_logging", True),
        log_file=cfg.get("audit_log_file"),
    )
    state = CliState(cfg, verbose=verbose or cfg.get("verbose", False), quiet=quiet, json_output=json_output)
    if state.verbose:
        state.log(f"Loaded configuration from: {cfg.config_file or 'defaults'}")
    ctx.obj = state


pass_state = click.make_pass_decorator(CliState)


@cli.command()
@click.option("--claims", default="all", show_default=True, help="Comma separated claim ids or 'all'")
@click.option("--max-ring", type=int, default=None, help="Largest ring size in the corpus")
@click.option("--max-poset", type=int, default=None, help="Largest poset size in the corpus")
@click.option("--workers", "-w", type=int, default=None, help="Worker processes")
@click.option("--out", "-o", default=None, help="Write the JSON lines report here")
@click.option("--seed", type=int, default=None, help="Shuffle the ring order (0 keeps it)")
@click.option("--time-budget", type=int, default=None, help="Stop scheduling after this many seconds")
@pass_state
@guarded
def audit(state: CliState, claims: str, max_ring: Optional[int], max_poset: Optional[int],
          workers: Optional[int], out: Optional[str], seed: Optional[int], time_budget: Optional[int]):
    """Check the claim catalog over the corpus."""
    selected = ClaimValidator.parse_claim_list(claims, CLAIM_IDS)
    state.apply_overrides({
        "max_ring": max_ring,
        "max_poset": max_poset,
        "workers": workers,
        "seed": seed,
        "time_budget_seconds": time_budget,
    })
    spec = CorpusSpec.from_config(state.config)

    if state.verbose:
        state.log(f"specwb v{__version__}")
        state.log(f"Claims: {', '.join(selected)}")
        state.log(f"Caps: {spec.limits.to_dict()}")

    report = _run_engine(state, lambda engine: engine.run_audit(spec, selected))
    _write_report(state, report, out)
    code = EXIT_THEOREM_REFUTED if report.theorem_refuted else EXIT_SUCCESS

    if state.json_output:
        state.emit({**report.summary(), "exit_code": code})
        sys.exit(code)

    table = Table(title=f"Audit over {report.instances} instances")
    table.add_column("Claim", style="bold")
    table.add_column("Title")
    table.add_column("verified", justify="right", style="green")
    table.add_column("refuted", justify="right", style="red")
    table.add_column("inapplicable", justify="right", style="dim")
    table.add_column("capped", justify="right", style="yellow")
    for claim_id in selected:
        tally = report.tallies.get(claim_id)
        if tally is None:
            continue
        table.add_row(
            claim_id, CATALOG[claim_id].title,
            str(tally["verified"]), str(tally["refuted"]), str(tally["inapplicable"]), str(tally[CAPPED]),
        )
    if state.interactive:
        state.console.print(table)

    for record in report.refutations[:10]:
        state.log(f"[red]✗ {record['claim']} refuted on {record['instance']}: {record['witness']}[/red]")
    if len(report.refutations) > 10:
        state.log(f"  ... and {len(report.refutations) - 10} more")
    if report.inconsistencies:
        state.log(f"[yellow]⚠ {len(report.inconsistencies)} predicate inconsistencies (C21)[/yellow]")
    if not report.refutations:
        state.log("[green]✓ No claim refuted[/green]")
    _render_notes(state, report)
    sys.exit(code)


@cli.command("spectrum")
@click.option("--ring", "ring_path", required=True, help="Ring file")
@pass_state
@guarded
def spectrum_command(state: CliState, ring_path: str):
    """List the prime ideals of a ring."""
    ring = load_ring(ring_path)
    cap = state.config.limits.lattice_cap
    primes = spectrum(ring, cap)
    maximal = {p.members for p in maximal_spectrum(ring, cap)}
    minimal = {p.members for p in minimal_spectrum(ring, cap)}
    space = space_from_ring(ring, cap)
    facts = {
        "nilradical": nilradical(ring).elements(),
        "jacobson": jacobson(ring, cap).elements(),
        "pm": is_pm(space),
        "max_is_t2": max_is_t2(space),
    }

    if state.json_output:
        state.emit({
            "ring": ring.name,
            "size": ring.size,
            "primes": [
                {"elements": p.elements(), "maximal": p.members in maximal, "minimal": p.members in minimal}
                for p in primes
            ],
            **facts,
        })
        return

    table = Table(title=f"Spec {ring.name} ({ring.size} elements)")
    table.add_column("#", justify="right")
    table.add_column("Prime ideal")
    table.add_column("maximal", justify="center")
    table.add_column("minimal", justify="center")
    for i, p in enumerate(primes):
        table.add_row(
            str(i), "{" + ", ".join(str(e) for e in p.elements()) + "}",
            "✓" if p.members in maximal else "", "✓" if p.members in minimal else "",
        )
    if state.interactive:
        state.console.print(table)
    state.log(f"Nilradical: {facts['nilradical']}")
    state.log(f"Jacobson radical: {facts['jacobson']}")
    state.log(f"pm: {facts['pm']}   max T2: {facts['max_is_t2']}")


@cli.command()
@click.option("--ambient", required=True, help="Ring file of the ambient ring B")
@click.option("--subring", "subring_path", required=True, help="Element list of the subring A")
@click.option(
    "--mode",
    type=click.Choice([m.value for m in DensityMode]),
    default=None,
    help="Scan every ideal (definition) or primes only",
)
@pass_state
@guarded
def dense(state: CliState, ambient: str, subring_path: str, mode: Optional[str]):
    """Decide whether a subring is dense in its ambient ring."""
    ring = load_ring(ambient)
    elements = load_elements(subring_path, ring.size)
    pair = SubringPair(ring, mask_from(elements))
    mode = mode or state.config.get("density_mode", "definition")
    cap = state.config.limits.lattice_cap

    report = is_dense(pair, mode, cap)
    props = map_props(pair_contraction(pair, cap))
    payload = {
        "ambient": ring.name,
        "subring": list(pair.to_ambient),
        "mode": report.mode.value,
        "dense": report.dense,
        "witness_fail": report.failure_witness(),
        "contraction_injective": props.injective,
        "contraction_open": props.open,
    }

    if state.json_output:
        state.emit(payload)
        return

    if report.dense:
        state.log(f"[green]✓ {list(pair.to_ambient)} is dense in {ring.name}[/green] ({report.mode.value} mode)")
    else:
        witness = report.failure_witness()
        state.log(f"[yellow]✗ {list(pair.to_ambient)} is not dense in {ring.name}[/yellow] ({report.mode.value} mode)")
        state.log(f"  No a outside rad(I) with a*{witness['b']} in the subring, for I = {witness['ideal']}")
    state.log(f"Contraction injective: {props.injective}   open onto image: {props.open}")


@cli.command()
@click.argument("name", type=click.Choice(HUNTS))
@click.option("--max-ring", type=int, default=None, help="Largest ring size to search")
@click.option("--max-poset", type=int, default=None, help="Largest poset size to search")
@click.option("--out", "-o", default=None, help="Write the JSON lines report here")
@pass_state
@guarded
def hunt(state: CliState, name: str, max_ring: Optional[int], max_poset: Optional[int], out: Optional[str]):
    """
    Search for counterexamples to an open question.

    A finding is not a failure: the command exits 0 and highlights it.
    """
    state.apply_overrides({"max_ring": max_ring, "max_poset": max_poset})
    spec = CorpusSpec.from_config(state.config)
    runners = {
        "intermediate-density": lambda engine: engine.hunt_intermediate_density(spec),
        "wcn-vs-cn": lambda engine: engine.hunt_wcn_vs_cn(spec),
        "dense-vs-wcn": lambda engine: engine.hunt_dense_vs_wcn(spec),
    }
    report = _run_engine(state, runners[name])
    _write_report(state, report, out)

    if state.json_output:
        state.emit({**report.summary(), "exit_code": EXIT_SUCCESS})
        return

    state.log(f"Hunt {name}: {report.instances} instances examined")
    for key, tally in report.tallies.items():
        state.log(f"  {key}: " + ", ".join(f"{status}={n}" for status, n in sorted(tally.items())))
    if report.findings:
        state.log(f"[bold yellow]★ {len(report.findings)} finding(s)[/bold yellow]")
        for finding in report.findings:
            state.log(_describe_finding(finding))
    else:
        state.log("No separating example found")
    _render_notes(state, report)


def _describe_finding(finding: Dict[str, Any]) -> str:
    if "poset" in finding:
        head = finding["poset"].splitlines()[0]
        shape = f" ({finding['shape']})" if finding.get("shape") else ""
        extra = {k: v for k, v in finding.items() if k not in ("hunt", "poset")}
        return f"  [yellow]{head}{shape}[/yellow] {extra}"
    return f"  [yellow]{finding.get('instance') or finding.get('ring')}[/yellow]"


@cli.command()
@click.option("--n", "points", type=int, required=True, help="Number of points")
@click.option(
    "--predicates",
    default="pm,cn,wcn",
    show_default=True,
    help=f"Comma separated predicates from {', '.join(POSET_PREDICATES)}",
)
@click.option("--list", "list_posets", is_flag=True, help="Show every poset, not only the counts")
@pass_state
@guarded
def posets(state: CliState, points: int, predicates: str, list_posets: bool):
    """Evaluate predicates over every labeled poset on n points."""
    limits = state.config.limits
    CapValidator.check("poset", points, limits.poset_enum_cap)
    chosen = _parse_predicates(predicates)
    tests: Dict[str, Callable] = {
        "pm": is_pm,
        "cn": lambda s: is_completely_normal_topological(s, limits.complete_normality_cap),
        "cn-chain": is_cn_chain,
        "wcn": is_weak_cn,
        "normal": lambda s: is_normal_topological(s, limits.complete_normality_cap),
    }

    counts = {p: 0 for p in chosen}
    rows: List[Dict[str, Any]] = []
    total = 0
    for s in enumerate_posets(points, limits.poset_enum_cap):
        total += 1
        values = {p: tests[p](s) for p in chosen}
        for p, value in values.items():
            counts[p] += value
        if list_posets:
            rows.append({"poset": s.name, "relations": s.relations(), **values})

    if state.json_output:
        payload: Dict[str, Any] = {"n": points, "posets": total, "counts": counts}
        if list_posets:
            payload["items"] = rows
        state.emit(payload)
        return

    if list_posets:
        table = Table(title=f"Labeled posets on {points} points")
        table.add_column("Poset")
        table.add_column("Relations")
        for p in chosen:
            table.add_column(p, justify="center")
        for row in rows:
            table.add_row(row["poset"], str(row["relations"]), *("✓" if row[p] else "" for p in chosen))
        if state.interactive:
            state.console.print(table)

    summary = Table(title=f"{total} labeled posets on {points} points")
    summary.add_column("Predicate")
    summary.add_column("holds", justify="right")
    for p in chosen:
        summary.add_row(p, str(counts[p]))
    if state.interactive:
        state.console.print(summary)


def _parse_predicates(selection: str) -> List[str]:
    chosen = [p.strip().lower() for p in selection.split(",") if p.strip()]
    unknown = [p for p in chosen if p not in POSET_PREDICATES]
    if not chosen or unknown:
        raise ValidationError(
            f"Unknown predicate(s) {unknown or selection!r}; choose from {', '.join(POSET_PREDICATES)}"
        )
    return list(dict.fromkeys(chosen))


@cli.command("claims")
@pass_state
@guarded
def claims_command(state: CliState):
    """List the claim catalog."""
    if state.json_output:
        state.emit({
            "claims": [
                {
                    "id": c.claim_id,
                    "title": c.title,
                    "instances": [k.value for k in c.kinds],
                    "consistency": c.consistency,
                }
                for c in (CATALOG[i] for i in CLAIM_IDS)
            ]
        })
        return

    table = Table(title=f"{len(CLAIM_IDS)} claims")
    table.add_column("Id", style="bold")
    table.add_column("Title")
    table.add_column("Instances")
    for claim_id in CLAIM_IDS:
        claim = CATALOG[claim_id]
        title = claim.title + (" [dim](consistency)[/dim]" if claim.consistency else "")
        table.add_row(claim_id, title, ", ".join(k.value for k in claim.kinds))
    if state.interactive:
        state.console.print(table)


if __name__ == "__main__":
    cli()
