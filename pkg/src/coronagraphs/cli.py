"""Command-line surface: generate, stats, spectrum, verify.

Outputs are deterministic: rerunning an invocation produces byte-identical
files.  Exit codes: 0 success, 2 config error, 3 verification failure,
4 resource cap or overflow.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import oracle, spectral, structural
from .distributions import cumulative_series, fit_power_law, series_to_csv
from .graph import (
    CapExceededError,
    CoronaPlan,
    CountOverflowError,
    DEFAULT_NODE_CAP,
    EdgeListError,
    SeedDescriptor,
    corona_iterate,
    write_edge_list,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VERIFY = 3
EXIT_CAP = 4

BETWEENNESS_CAP = 10_000

KINDS = (spectral.ADJACENCY, spectral.LAPLACIAN, spectral.SIGNLESS)


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: str
    m: int
    format: str
    kind: str | None = None
    out: str | None = None
    betweenness: bool = False
    tolerance: float = 1e-8
    node_cap: int = DEFAULT_NODE_CAP
    force: bool = False

    def canonical(self) -> str:
        """Normalized flag string; parsing it reproduces this config."""
        parts = [self.command, "--seed", self.seed, "--m", str(self.m)]
        if self.kind is not None:
            parts += ["--kind", self.kind]
        parts += ["--format", self.format]
        if self.out is not None:
            parts += ["--out", self.out]
        if self.betweenness:
            parts.append("--betweenness")
        parts += ["--tolerance", repr(self.tolerance),
                  "--node-cap", str(self.node_cap)]
        if self.force:
            parts.append("--force")
        return " ".join(parts)

    @classmethod
    def from_argv(cls, argv) -> "RunConfig":
        ns = _build_parser().parse_args(argv)
        return cls(command=ns.command, seed=ns.seed, m=ns.m, format=ns.format,
                   kind=getattr(ns, "kind", None), out=ns.out,
                   betweenness=getattr(ns, "betweenness", False),
                   tolerance=ns.tolerance, node_cap=ns.node_cap, force=ns.force)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coronagraphs",
        description="Generate corona graphs and analyze their structure and spectra.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", required=True,
                       help="seed spec kind:param, e.g. complete:3 or file:g.edges")
        p.add_argument("--m", type=int, required=True,
                       help="number of corona iterations")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--tolerance", type=float, default=1e-8)
        p.add_argument("--node-cap", dest="node_cap", type=int,
                       default=DEFAULT_NODE_CAP)
        p.add_argument("--force", action="store_true",
                       help="override the betweenness size guard")

    p = sub.add_parser("generate", help="materialize the edge list of G^(m)")
    common(p)
    p.add_argument("--format", choices=["edges"], default="edges")

    p = sub.add_parser("stats", help="structural report: counts, degrees, diameter")
    common(p)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--betweenness", action="store_true",
                   help="include exact betweenness and its power-law fit")

    p = sub.add_parser("spectrum", help="closed-form spectrum where supported")
    common(p)
    p.add_argument("--kind", choices=list(KINDS), required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("verify", help="closed form vs dense eigensolver")
    common(p)
    p.add_argument("--kind", choices=list(KINDS), required=True)
    p.add_argument("--format", choices=["json"], default="json")

    return parser


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _plan(cfg: RunConfig) -> CoronaPlan:
    seed = SeedDescriptor.from_spec(cfg.seed)
    if not seed.connected:
        print(f"warning: seed {cfg.seed} is disconnected; "
              "the corona graphs will be disconnected too", file=sys.stderr)
    return CoronaPlan(seed=seed, m=cfg.m, node_cap=cfg.node_cap)


def cmd_generate(cfg: RunConfig) -> int:
    plan = _plan(cfg)
    g = corona_iterate(plan)
    print(f"seed={cfg.seed} m={cfg.m} "
          f"predicted_nodes={plan.predicted_nodes} actual_nodes={g.node_count} "
          f"predicted_edges={plan.predicted_edges} actual_edges={g.edge_count}")
    if cfg.out is not None:
        write_edge_list(g, cfg.out)
    else:
        lines = [f"# n={g.node_count}"]
        lines += [f"{u} {v}" for u, v in g.edge_array()]
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_stats(cfg: RunConfig) -> int:
    plan = _plan(cfg)
    g = corona_iterate(plan)
    seed_g = plan.seed.graph

    degrees = structural.degree_histogram(g)
    cumulative = cumulative_series(degrees)
    report = {
        "schema": 1,
        "command": "stats",
        "seed": cfg.seed,
        "m": cfg.m,
        "nodes": g.node_count,
        "edges": g.edge_count,
        "average_degree": {
            "measured": structural.average_degree(g),
            "limit": structural.average_degree_limit(seed_g.node_count,
                                                     seed_g.edge_count),
        },
        "density": structural.density(g) if g.node_count >= 2 else None,
    }
    if plan.seed.connected:
        d0 = structural.diameter_measured(seed_g)
        report["diameter"] = {
            "measured": structural.diameter_measured(g),
            "formula": structural.diameter_formula(d0, cfg.m),
        }
    else:
        report["diameter"] = {"measured": None, "formula": None,
                              "disconnected": True}
    report["degree_distribution"] = [[v, p] for v, p in degrees.points]
    report["cumulative_degree_distribution"] = [[v, p] for v, p in cumulative.points]

    b = None
    if cfg.betweenness:
        if g.node_count > BETWEENNESS_CAP and not cfg.force:
            raise CapExceededError(
                f"betweenness on {g.node_count} nodes exceeds the guard of "
                f"{BETWEENNESS_CAP}; pass --force to run anyway")
        b = structural.betweenness_exact(g)
        series = structural.betweenness_series(b)
        fit = fit_power_law(series)
        report["betweenness"] = {
            "gamma": fit.gamma,
            "intercept": fit.intercept,
            "r_squared": fit.r_squared,
            "fit_range": list(fit.fit_range),
            "series": [[v, p] for v, p in series.points],
        }

    if cfg.format == "csv":
        if b is not None:
            _emit(cfg, structural.betweenness_to_csv(b))
        else:
            _emit(cfg, series_to_csv(degrees))
    else:
        _emit(cfg, json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def _oracle_spectrum(g, kind: str) -> spectral.Spectrum:
    vals = oracle.sym_eigenvalues(oracle.build_matrix(g, kind))
    return spectral.make_spectrum(kind, [(float(v), 1) for v in vals],
                                  level=0, provenance="oracle")


def cmd_spectrum(cfg: RunConfig) -> int:
    plan = _plan(cfg)
    discrepancies: list[spectral.CubicDiscrepancy] = []
    notice = None
    try:
        spectrum = spectral.closed_form_spectrum(plan.seed.graph, cfg.kind, cfg.m,
                                                 discrepancies)
    except ValueError as exc:
        spectrum = None
        notice = str(exc)
    if spectrum is None:
        if notice is None:
            notice = (f"no closed form for kind={cfg.kind} with seed "
                      f"{cfg.seed}; falling back to the dense eigensolver")
        g = corona_iterate(plan)
        if g.node_count > oracle.DEFAULT_ORACLE_CAP:
            raise CapExceededError(
                f"oracle fallback needs <= {oracle.DEFAULT_ORACLE_CAP} nodes")
        s = _oracle_spectrum(g, cfg.kind)
        spectrum = spectral.Spectrum(kind=s.kind, entries=s.entries, level=cfg.m,
                                     provenance="oracle")
    payload = {
        "schema": 1,
        "command": "spectrum",
        "seed": cfg.seed,
        "kind": cfg.kind,
        "m": cfg.m,
        "closed_form": spectrum.provenance == "closed_form",
        "notice": notice,
        "spectrum": spectral.spectrum_to_json(spectrum, plan.n),
        "discrepancies": [d.to_dict() for d in discrepancies],
    }
    if cfg.format == "csv":
        lines = ["value,multiplicity"]
        lines += [f"{v!r},{w}" for v, w in spectrum.entries]
        _emit(cfg, "\n".join(lines) + "\n")
    else:
        _emit(cfg, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    plan = _plan(cfg)
    discrepancies: list[spectral.CubicDiscrepancy] = []
    closed = spectral.closed_form_spectrum(plan.seed.graph, cfg.kind, cfg.m,
                                           discrepancies)
    if closed is None:
        print(f"error: no closed form to verify for kind={cfg.kind} with "
              f"seed {cfg.seed}", file=sys.stderr)
        return EXIT_CONFIG
    g = corona_iterate(plan)
    if g.node_count > oracle.DEFAULT_ORACLE_CAP:
        raise CapExceededError(
            f"verification needs <= {oracle.DEFAULT_ORACLE_CAP} nodes, "
            f"got {g.node_count}")
    numeric = oracle.sym_eigenvalues(oracle.build_matrix(g, cfg.kind))
    match = oracle.compare_spectra(closed, numeric, tol=cfg.tolerance)

    residual_max = 0.0
    if (cfg.kind == spectral.ADJACENCY and cfg.m == 1
            and spectral.regular_degree(plan.seed.graph) is not None):
        residual_max = spectral.eigenpair_residual_max(plan.seed.graph)

    report = {
        "schema": 1,
        "command": "verify",
        "seed": cfg.seed,
        "kind": cfg.kind,
        "m": cfg.m,
        "tolerance": cfg.tolerance,
        "passed": bool(match.passed),
        "max_abs_delta": match.max_abs_delta,
        "mean_abs_delta": match.mean_abs_delta,
        "count_mismatched": match.count_mismatched,
        "residual_max": residual_max,
        "discrepancies": [d.to_dict() for d in discrepancies],
    }
    _emit(cfg, json.dumps(report, indent=2) + "\n")
    return EXIT_OK if match.passed else EXIT_VERIFY


_COMMANDS = {
    "generate": cmd_generate,
    "stats": cmd_stats,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    try:
        cfg = RunConfig.from_argv(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return _COMMANDS[cfg.command](cfg)
    except (CapExceededError, CountOverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (EdgeListError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
