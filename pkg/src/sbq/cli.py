"""``sbq`` command line: run verification experiments from an INI-style config.

Config layout::

    [run]
    seed = 7

    [invert-l2 circle]      ; first word names the experiment, rest is a label
    model = circle
    t = 0.1
    n_terms = 5

Exit status: 0 all checks pass, 1 a check failed, 2 config error,
3 missing model capability, 4 numerical non-convergence.
"""
from datetime import datetime, timezone
import logging
from pathlib import Path
import platform
import re
import sys

import click
import numpy as np
import scipy

from . import __version__
from .exceptions import CapabilityError, ConfigError, NonConvergenceError, RadiusError
from .experiments import CATALOGUE, EXPERIMENTS, Section, run_experiment

log = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_CAPABILITY, EXIT_NONCONVERGENCE = 0, 1, 2, 3, 4

_KEY_RE = re.compile(r"^([A-Za-z_][\w.\-]*)\s*=\s*(.*)$")


def parse_config(text):
    """Parse the config text into ``(run_options, [Section, ...])``.

    Raises :class:`ConfigError` with 1-based line and column on malformed input.
    """
    run_opts = {}
    sections = []
    current = None
    current_vals = current_lines = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ConfigError("section header missing ']'", lineno, len(line) + 1)
            header = stripped[1:-1].strip()
            if not header:
                raise ConfigError("empty section header", lineno, indent + 2)
            if header in seen:
                raise ConfigError(f"duplicate section [{header}]", lineno, indent + 1)
            seen.add(header)
            if header != "run" and header.split()[0] not in EXPERIMENTS:
                raise ConfigError(f"unknown experiment {header.split()[0]!r}", lineno, indent + 2)
            current_vals, current_lines = {}, {}
            current = (header, current_vals, current_lines, lineno)
            if header == "run":
                current_vals = run_opts
                current = None
            else:
                sections.append(current)
            continue
        m = _KEY_RE.match(stripped)
        if not m:
            raise ConfigError("expected 'key = value'", lineno, indent + 1)
        if current_vals is None:
            raise ConfigError("key outside of any section", lineno, indent + 1)
        key, value = m.group(1), m.group(2).strip()
        if key in current_vals:
            raise ConfigError(f"duplicate key {key!r}", lineno, indent + 1)
        current_vals[key] = value
        current_lines[key] = (lineno, indent + 1 + stripped.index("=") + 1)
    if not sections:
        raise ConfigError("no experiment sections", 1, 1)
    return run_opts, [Section(*s) for s in sections]


def _safe_name(label):
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", label).strip("_") or "experiment"


def _gnuplot_script(csv_name, columns):
    plots = ", ".join(
        f"'{csv_name}' using 1:{i + 1} with linespoints title '{c}'"
        for i, c in enumerate(columns[1:], start=1))
    return ("set datafile separator ','\nset datafile commentschars '#'\n"
            f"set key autotitle columnhead\nset xlabel '{columns[0]}'\nplot {plots}\n")


@click.group()
@click.version_option(__version__, prog_name="sbq")
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def main(verbose):
    """Segal-Bargmann transform verification harness."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")


@main.command("list")
def list_experiments():
    """Print the experiment catalogue."""
    for name, (desc, theorem) in CATALOGUE.items():
        click.echo(f"{name:<18} {desc}  [{theorem}]")


@main.command()
@click.argument("config", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path),
              default=None, help="Output directory (default: alongside the config).")
@click.option("--seed", type=int, default=None, help="Override the RNG seed.")
@click.option("--tol", type=float, default=None, help="Override every check tolerance.")
@click.option("--reproducible", is_flag=True, help="Omit the timestamp metadata line.")
@click.option("--emit-gnuplot-script", "gnuplot", is_flag=True,
              help="Also write a gnuplot script per CSV.")
def run(config, out_dir, seed, tol, reproducible, gnuplot):
    """Run every experiment in CONFIG, writing CSVs and summary.txt."""
    try:
        text = config.read_text()
    except OSError as exc:
        click.echo(f"error: cannot read config: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    try:
        run_opts, sections = parse_config(text)
        if seed is None:
            seed = int(run_opts.get("seed", "0"))
    except ConfigError as exc:
        click.echo(f"config error: {config}: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    except ValueError:
        click.echo(f"config error: {config}: [run] seed must be an integer", err=True)
        sys.exit(EXIT_CONFIG)

    out_dir = out_dir or config.parent
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = [f"sbq {__version__} config={config.name} seed={seed}"]
    all_ok = True
    for i, sec in enumerate(sections):
        # independent, reproducible stream per experiment
        rng = np.random.default_rng([seed, i])
        log.info("running [%s]", sec.header)
        try:
            result, checks = run_experiment(sec, rng, tol)
        except ConfigError as exc:
            click.echo(f"config error: {config}: {exc}", err=True)
            sys.exit(EXIT_CONFIG)
        except (CapabilityError, RadiusError) as exc:
            click.echo(f"capability error in [{sec.header}]: {exc}", err=True)
            sys.exit(EXIT_CAPABILITY)
        except NonConvergenceError as exc:
            click.echo(f"non-convergence in [{sec.header}]: {exc}", err=True)
            sys.exit(EXIT_NONCONVERGENCE)
        comments = [f"experiment = {sec.header}", f"seed = {seed}",
                    f"config = {' '.join(f'{k}={v}' for k, v in sorted(sec.values.items()))}",
                    f"versions = sbq {__version__}, numpy {np.__version__}, "
                    f"scipy {scipy.__version__}, python {platform.python_version()}"]
        if not reproducible:
            comments.append(f"timestamp = {datetime.now(timezone.utc).isoformat()}")
        name = _safe_name(sec.header.replace(" ", "_"))
        csv_path = out_dir / f"{name}.csv"
        csv_path.write_text(result.to_csv(comments))
        if gnuplot:
            (out_dir / f"{name}.gp").write_text(_gnuplot_script(csv_path.name, result.columns))
        summary.append(f"[{sec.header}] -> {csv_path.name}")
        for c in checks:
            summary.append("  " + c.line())
            all_ok &= c.passed
    summary.append("ALL CHECKS PASSED" if all_ok else "SOME CHECKS FAILED")
    report = "\n".join(summary) + "\n"
    (out_dir / "summary.txt").write_text(report)
    click.echo(report, nl=False)
    sys.exit(EXIT_OK if all_ok else EXIT_FAILED)


if __name__ == "__main__":
    main()
