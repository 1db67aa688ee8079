"""Command-line driver.

Subcommands mirror the library workflows: ``search`` runs the full
table-to-report pipeline, ``demo-grover`` runs plain searches and iteration
sweeps, ``emit-circuit`` exports circuit text, and ``noise-sim`` runs the
Monte-Carlo error model. Exit codes: 0 success, 2 input parse error
(dataset, circuit text, noise profile), 3 configuration error, 4 internal
error.
"""
from __future__ import annotations

import os
import sys
from dataclasses import dataclass

import click

from hepgrover import report as report_mod
from hepgrover.dataset import parse_dataset
from hepgrover.encoding import DEFAULT_THRESHOLD, group_circuits, search_database
from hepgrover.errors import (
    CircuitTextError,
    ConfigError,
    DatasetError,
    HepgroverError,
    NoiseProfileError,
)
from hepgrover.grover import (
    GroverProblem,
    build_grover,
    optimal_iterations,
    run_grover,
    success_probability_analytic,
)
from hepgrover.noise import bundled_profile, gate_count_report, load_profile, noisy_run
from hepgrover.qasm import circuit_to_text, emit_circuit_text
from hepgrover.statevector import basis_label

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CONFIG = 3
EXIT_INTERNAL = 4

DEFAULT_SHOTS = 8192


@dataclass
class RunConfig:
    """Configuration of one ``search`` invocation."""

    dataset: str
    scheme: int
    shots: int = DEFAULT_SHOTS
    seed: int = 0
    threshold: float = DEFAULT_THRESHOLD
    noise_profile: str | None = None
    output: str = "search_report.jsonl"
    emit_circuit: str | None = None
    mev_to_gev: bool = False
    plot: str | None = None

    def validate(self) -> None:
        if self.scheme not in (1, 2):
            raise ConfigError(f"scheme must be 1 or 2, got {self.scheme}")
        if self.shots < 1:
            raise ConfigError(f"shots must be >= 1, got {self.shots}")
        if not 0 < self.threshold <= 1:
            raise ConfigError(f"threshold must be in (0, 1], got {self.threshold}")


def _resolve_profile(spec: str):
    if os.path.exists(spec):
        return load_profile(spec)
    return bundled_profile(spec)


def run_search_command(config: RunConfig) -> int:
    """Search a lepton table and write the structured report."""
    config.validate()
    records = parse_dataset(config.dataset, mev_to_gev=config.mev_to_gev)
    profile = _resolve_profile(config.noise_profile) if config.noise_profile else None

    reports = search_database(
        records,
        scheme=config.scheme,
        shots=config.shots,
        seed=config.seed,
        noise=profile,
        threshold=config.threshold,
    )

    for rep in reports:
        tag = f"group {rep.group_id}"
        if rep.occurrence is not None:
            tag += f" (hit {rep.occurrence})"
        click.echo(f"== {tag} ==")
        click.echo(report_mod.render_histogram(rep.counts, 5, rep.shots))
        if rep.selections:
            for sel in rep.selections:
                click.echo(
                    f"selected row {sel.row}: event {sel.event_id}, "
                    f"pt {sel.pt:.3f} GeV (fraction {sel.fraction:.4f})"
                )
        else:
            click.echo(
                f"no selection; peak |{basis_label(rep.peak_state, 5)}> "
                f"at fraction {rep.peak_fraction:.4f}"
                + (" (below threshold)" if rep.peak_fraction < rep.threshold else "")
            )
        if rep.multi_hit:
            click.echo("note: group holds several instance-3 rows (multi-hit)")
        click.echo("")

    report_mod.write_reports(reports, config.output)
    click.echo(f"report written to {config.output}")

    if config.emit_circuit:
        stem, ext = os.path.splitext(config.emit_circuit)
        ext = ext or ".qasm"
        for group, occurrence, circuit, _ in group_circuits(records, config.scheme):
            suffix = f"_g{group.group_id}"
            if occurrence is not None:
                suffix += f"_h{occurrence}"
            target = f"{stem}{suffix}{ext}"
            emit_circuit_text(circuit, target)
            click.echo(f"circuit written to {target}")

    if config.plot:
        chosen = next((r for r in reports if r.selections), reports[0] if reports else None)
        if chosen is not None:
            report_mod.save_histogram_svg(
                chosen.counts, 5, chosen.shots, config.plot,
                title=f"group {chosen.group_id}",
            )
            click.echo(f"histogram plot written to {config.plot}")
    return EXIT_OK


def demo_grover_command(n, marked, iterations, shots, seed, sweep=None,
                        out=None, plot=None) -> int:
    """Run a plain search, or sweep the iteration count and emit curve data."""
    marked = sorted(set(marked))
    if sweep is not None:
        if not marked:
            raise ConfigError("iteration sweep needs at least one marked state")
        rows = []
        for k in range(sweep + 1):
            analytic = success_probability_analytic(n, len(marked), k)
            outcome = run_grover(GroverProblem(n, frozenset(marked), k), shots, seed)
            rows.append((k, analytic, outcome.success_probability))
        click.echo(f"{'k':>3} {'analytic':>10} {'simulated':>10}")
        for k, analytic, simulated in rows:
            click.echo(f"{k:>3} {analytic:>10.6f} {simulated:>10.6f}")
        if out:
            import csv as _csv
            import io

            buf = io.StringIO()
            writer = _csv.writer(buf)
            writer.writerow(["iterations", "analytic_probability", "simulated_probability"])
            writer.writerows(rows)
            report_mod.write_text_atomic(out, buf.getvalue())
            click.echo(f"curve data written to {out}")
        return EXIT_OK

    if iterations is None:
        iterations = optimal_iterations(n, len(marked)) if marked else 1
    outcome = run_grover(GroverProblem(n, frozenset(marked), iterations), shots, seed)
    click.echo(
        f"n={n} marked={marked} iterations={iterations} "
        f"success probability {outcome.success_probability:.6f}"
    )
    click.echo(report_mod.render_histogram(outcome.counts, n, shots))
    if out:
        import csv as _csv
        import io
        from hepgrover.statevector import probabilities

        probs = probabilities(outcome.final_state)
        buf = io.StringIO()
        writer = _csv.writer(buf)
        writer.writerow(["state", "probability", "count"])
        for state in range(1 << n):
            writer.writerow(
                [basis_label(state, n), repr(float(probs[state])),
                 outcome.counts.get(state, 0)]
            )
        report_mod.write_text_atomic(out, buf.getvalue())
        click.echo(f"histogram data written to {out}")
    if plot:
        report_mod.save_histogram_svg(outcome.counts, n, shots, plot,
                                      title=f"n={n}, k={iterations}")
        click.echo(f"histogram plot written to {plot}")
    return EXIT_OK


def _circuit_from_flags(n, marked, iterations, dataset, scheme, group, occurrence,
                        mev_to_gev=False, circuit_path=None):
    if circuit_path is not None:
        from hepgrover.qasm import parse_circuit_text

        circuit = parse_circuit_text(circuit_path)
        return circuit, frozenset(sorted(set(marked)))
    if dataset is not None:
        if scheme is None:
            raise ConfigError("--scheme is required with --dataset")
        records = parse_dataset(dataset, mev_to_gev=mev_to_gev)
        entries = list(group_circuits(records, scheme))
        wanted = [
            (g, occ, circ, marked_set)
            for g, occ, circ, marked_set in entries
            if g.group_id == group and (occurrence is None or occ == occurrence)
        ]
        if not wanted:
            raise ConfigError(f"no circuit for group {group}"
                              + (f" occurrence {occurrence}" if occurrence is not None else ""))
        _, _, circuit, marked_set = wanted[0]
        return circuit, marked_set
    if n is None:
        raise ConfigError("pass --n, --dataset/--scheme/--group, or --circuit")
    marked = sorted(set(marked))
    if iterations is None:
        iterations = optimal_iterations(n, len(marked)) if marked else 1
    circuit = build_grover(GroverProblem(n, frozenset(marked), iterations))
    return circuit, frozenset(marked)


@click.group()
def cli():
    """Grover-search state-vector toolkit for four-lepton event selection."""


@cli.command("search")
@click.option("--dataset", required=True, type=click.Path(), help="Lepton table (CSV).")
@click.option("--scheme", required=True, type=click.IntRange(1, 2),
              help="Encoding scheme: 1 (groups of 4) or 2 (groups of 8).")
@click.option("--shots", default=DEFAULT_SHOTS, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--threshold", default=DEFAULT_THRESHOLD, show_default=True, type=float,
              help="Reporting threshold on measured fraction.")
@click.option("--noise", "noise_profile", default=None,
              help="Noise profile: bundled name (ideal, vigo_like, melbourne_like) or JSON path.")
@click.option("--out", "output", default="search_report.jsonl", show_default=True,
              type=click.Path(), help="Structured report path (JSON lines).")
@click.option("--emit-circuit", default=None, type=click.Path(),
              help="Also write each group's circuit text next to this path.")
@click.option("--mev", "mev_to_gev", is_flag=True, help="Convert lep_pt from MeV to GeV.")
@click.option("--plot", default=None, type=click.Path(),
              help="Save a histogram plot (SVG/PNG by extension).")
def search_cmd(dataset, scheme, shots, seed, threshold, noise_profile, output,
               emit_circuit, mev_to_gev, plot):
    """Search a lepton table for four-lepton events."""
    config = RunConfig(
        dataset=dataset, scheme=scheme, shots=shots, seed=seed,
        threshold=threshold, noise_profile=noise_profile, output=output,
        emit_circuit=emit_circuit, mev_to_gev=mev_to_gev, plot=plot,
    )
    run_search_command(config)


@cli.command("demo-grover")
@click.option("--n", required=True, type=int, help="Search register width in qubits.")
@click.option("--marked", multiple=True, type=int, help="Marked basis-state index (repeatable).")
@click.option("--iterations", default=None, type=int,
              help="Iteration count (default: analytic optimum).")
@click.option("--shots", default=DEFAULT_SHOTS, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--sweep", default=None, type=int, metavar="KMAX",
              help="Sweep iterations 0..KMAX and print the probability curve.")
@click.option("--out", default=None, type=click.Path(), help="Write CSV data here.")
@click.option("--plot", default=None, type=click.Path(), help="Save a histogram plot.")
def demo_grover_cmd(n, marked, iterations, shots, seed, sweep, out, plot):
    """Run a plain Grover search demo."""
    if shots < 1:
        raise ConfigError(f"shots must be >= 1, got {shots}")
    demo_grover_command(n, marked, iterations, shots, seed, sweep=sweep,
                        out=out, plot=plot)


@cli.command("emit-circuit")
@click.option("--n", default=None, type=int, help="Search register width in qubits.")
@click.option("--marked", multiple=True, type=int)
@click.option("--iterations", default=None, type=int)
@click.option("--dataset", default=None, type=click.Path())
@click.option("--scheme", default=None, type=click.IntRange(1, 2))
@click.option("--group", default=0, show_default=True, type=int)
@click.option("--occurrence", default=None, type=int)
@click.option("--mev", "mev_to_gev", is_flag=True)
@click.option("--out", default=None, type=click.Path(),
              help="Output path (default: print to stdout).")
def emit_circuit_cmd(n, marked, iterations, dataset, scheme, group, occurrence,
                     mev_to_gev, out):
    """Export a circuit as quantum-assembly text."""
    circuit, _ = _circuit_from_flags(n, marked, iterations, dataset, scheme,
                                     group, occurrence, mev_to_gev)
    if out:
        emit_circuit_text(circuit, out)
        click.echo(f"circuit written to {out}")
    else:
        click.echo(circuit_to_text(circuit), nl=False)


@cli.command("noise-sim")
@click.option("--noise", "noise_profile", required=True,
              help="Noise profile: bundled name or JSON path.")
@click.option("--n", default=None, type=int)
@click.option("--marked", multiple=True, type=int)
@click.option("--iterations", default=None, type=int)
@click.option("--dataset", default=None, type=click.Path())
@click.option("--scheme", default=None, type=click.IntRange(1, 2))
@click.option("--group", default=0, show_default=True, type=int)
@click.option("--occurrence", default=None, type=int)
@click.option("--mev", "mev_to_gev", is_flag=True)
@click.option("--circuit", "circuit_path", default=None, type=click.Path(),
              help="Run a circuit text file instead of building one.")
@click.option("--shots", default=DEFAULT_SHOTS, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", default=None, type=click.Path(), help="Write JSON results here.")
@click.option("--plot", default=None, type=click.Path(), help="Save a histogram plot.")
def noise_sim_cmd(noise_profile, n, marked, iterations, dataset, scheme, group,
                  occurrence, mev_to_gev, circuit_path, shots, seed, out, plot):
    """Run a circuit under Monte-Carlo gate-error injection."""
    if shots < 1:
        raise ConfigError(f"shots must be >= 1, got {shots}")
    profile = _resolve_profile(noise_profile)
    circuit, marked_set = _circuit_from_flags(n, marked, iterations, dataset, scheme,
                                              group, occurrence, mev_to_gev,
                                              circuit_path=circuit_path)
    budget = gate_count_report(circuit, profile)
    result = noisy_run(circuit, marked_set, profile, shots, seed)
    click.echo(f"profile: {profile.label or noise_profile}")
    click.echo(
        f"gates: {budget.single_qubit} single, {budget.two_qubit} two-qubit, "
        f"{budget.multi_qubit} multi-qubit; survival estimate {budget.survival:.4f}"
    )
    click.echo(f"marked fraction: {result.marked_fraction:.6f} over {result.trajectories} shots")
    click.echo(report_mod.render_histogram(result.counts, circuit.num_qubits, shots))
    if out:
        import json

        payload = {
            "profile": profile.label or str(noise_profile),
            "shots": shots,
            "seed": seed,
            "marked_fraction": result.marked_fraction,
            "survival_estimate": budget.survival,
            "counts": {
                basis_label(s, circuit.num_qubits): c
                for s, c in sorted(result.counts.items())
            },
        }
        report_mod.write_text_atomic(out, json.dumps(payload, sort_keys=True, indent=2) + "\n")
        click.echo(f"results written to {out}")
    if plot:
        report_mod.save_histogram_svg(result.counts, circuit.num_qubits, shots, plot,
                                      title=profile.label or str(noise_profile))
        click.echo(f"histogram plot written to {plot}")


def main(argv=None) -> int:
    """Invoke the CLI and map exceptions onto documented exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return EXIT_OK
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_CONFIG
    except click.ClickException as exc:
        exc.show()
        return EXIT_INTERNAL
    except click.exceptions.Abort:
        return EXIT_INTERNAL
    except (DatasetError, CircuitTextError, NoiseProfileError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_PARSE
    except ConfigError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_CONFIG
    except HepgroverError as exc:
        click.echo(f"internal error: {exc}", err=True)
        return EXIT_INTERNAL
    except Exception as exc:  # pragma: no cover - last-resort guard
        click.echo(f"internal error: {exc}", err=True)
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
