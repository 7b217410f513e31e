"""Command-line front end: ``pauliscope graph | verify | report``.

Exit codes: 0 when everything checks out, 1 on a verification mismatch,
2 on a usage or configuration error.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import __version__
from .claims import SCOPES, Claim, run_claims
from .graph import invariants
from .operators import (
    DEFAULT_VERTEX_CAP,
    PauliError,
    SUPPORTED_DIMENSIONS,
    adjacency_json,
    build_pauli_graph,
    render_tables,
)
from .polar import PolarError, block_structure
from .search import SearchLimitError
from .spectral import SPECTRUM_CAP, spectrum, verify_srg

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
FORMATS = ("json", "csv", "dot", "text")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    d: int = 2
    n: int = 2
    fmt: str = "text"
    table: str = "commutation"
    blocks: bool = False
    scope: str = "all"
    out: str | None = None
    threads: int = 1
    cap_vertices: int = DEFAULT_VERTEX_CAP

    def __post_init__(self):
        if self.threads < 1:
            raise UsageError("--threads must be positive")
        if self.cap_vertices < 1:
            raise UsageError("--cap-vertices must be positive")
        if self.command == "graph":
            if self.d not in SUPPORTED_DIMENSIONS:
                raise UsageError(f"--d must be one of {SUPPORTED_DIMENSIONS}")
            if self.n < 1:
                raise UsageError("--n must be at least 1")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pauliscope", description="Pauli graphs of qudits and their finite geometry.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file (UTF-8) instead of stdout")
    common.add_argument("--threads", type=_positive_int, help="worker threads (default: $PAULISCOPE_THREADS or 1)")
    common.add_argument("--cap-vertices", type=_positive_int, default=DEFAULT_VERTEX_CAP, help="largest graph to build")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", parents=[common], help="emit a Pauli graph or its tables")
    g.add_argument("--d", type=int, default=2, help="local dimension (2 or 3)")
    g.add_argument("--n", type=int, default=2, help="number of qudits")
    g.add_argument("--format", dest="fmt", choices=FORMATS, default="text")
    g.add_argument("--table", choices=("commutation", "products"), default="commutation", help="which table --format csv emits")
    g.add_argument("--blocks", action="store_true", help="report the O/A/Â block structure (qubits only)")

    v = sub.add_parser("verify", parents=[common], help="recompute published claims")
    v.add_argument("--scope", choices=SCOPES + ("all",), default="all")

    sub.add_parser("report", parents=[common], help="regenerate all tables and spectra in one document")
    return parser


def _threads(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("PAULISCOPE_THREADS")
    if env is None or env == "":
        return 1
    try:
        count = int(env)
    except ValueError:
        raise UsageError(f"PAULISCOPE_THREADS is not an integer: {env!r}")
    if count < 1:
        raise UsageError("PAULISCOPE_THREADS must be positive")
    return count


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        d=getattr(args, "d", 2),
        n=getattr(args, "n", 2),
        fmt=getattr(args, "fmt", "text"),
        table=getattr(args, "table", "commutation"),
        blocks=getattr(args, "blocks", False),
        scope=getattr(args, "scope", "all"),
        out=args.out,
        threads=_threads(args.threads),
        cap_vertices=args.cap_vertices,
    )


# ---------------------------------------------------------------------------
# graph


def _graph_text(cfg: RunConfig) -> str:
    g = build_pauli_graph(cfg.d, cfg.n, vertex_cap=cfg.cap_vertices)
    inv = invariants(g)
    lines = [
        f"P[{cfg.d},{cfg.n}]",
        f"vertices: {inv.v}",
        f"edges: {inv.e}",
        f"degrees: {sorted(set(inv.degrees))}",
        f"diameter: {inv.diameter}",
        f"girth: {inv.girth}",
    ]
    if g.v <= SPECTRUM_CAP:
        lines.append(f"spectrum: {spectrum(g)}")
        check = verify_srg(g)
        lines.append(f"strongly regular: {check.params if check.strongly_regular else 'no (' + check.reason + ')'}")
    return "\n".join(lines) + "\n"


def _blocks_text(cfg: RunConfig) -> tuple[str, bool]:
    if cfg.d != 2:
        raise UsageError("--blocks applies to qubits (--d 2) only")
    rep = block_structure(cfg.n)
    out = [
        f"P[2,{cfg.n}] without the reference triple, blocks of size {rep.block_size}",
        rep.grid(),
        f"diagonal blocks equal P[2,{cfg.n - 1}]: {'yes' if rep.diagonal_is_parent else 'no'}",
        f"A = O + identity: {'yes' if rep.a_is_o_plus_identity else 'no'}",
        f"pattern O/A/A/A, A/O/Â/Â, A/Â/O/Â, A/Â/Â/O: {'yes' if rep.pattern_ok else 'no'}",
    ]
    return "\n".join(out) + "\n", rep.ok


def cmd_graph(cfg: RunConfig) -> tuple[str, int]:
    if cfg.blocks:
        text, ok = _blocks_text(cfg)
        return text, EXIT_OK if ok else EXIT_MISMATCH
    if cfg.fmt == "csv":
        products, commutation = render_tables(cfg.d, cfg.n)
        return (commutation if cfg.table == "commutation" else products), EXIT_OK
    if cfg.fmt == "json":
        build_pauli_graph(cfg.d, cfg.n, vertex_cap=cfg.cap_vertices)
        return adjacency_json(cfg.d, cfg.n) + "\n", EXIT_OK
    if cfg.fmt == "dot":
        g = build_pauli_graph(cfg.d, cfg.n, vertex_cap=cfg.cap_vertices)
        return g.to_dot(f"P_{cfg.d}_{cfg.n}"), EXIT_OK
    return _graph_text(cfg), EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _summary(claims: list[Claim]) -> str:
    counts = {k: sum(c.status == k for c in claims) for k in ("PASS", "FAIL", "FLAG", "SKIP")}
    return "{} claims: {PASS} pass, {FAIL} fail, {FLAG} flagged, {SKIP} skipped".format(len(claims), **counts)


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    scopes = SCOPES if cfg.scope == "all" else (cfg.scope,)
    claims = run_claims(scopes, threads=cfg.threads, cap_vertices=cfg.cap_vertices)
    text = "\n".join(c.line() for c in claims) + "\n" + _summary(claims) + "\n"
    return text, EXIT_MISMATCH if any(c.failed for c in claims) else EXIT_OK


# ---------------------------------------------------------------------------
# report


def _section(title: str, body: str) -> str:
    return f"## {title}\n\n{body.rstrip()}\n"


def _grid(rows: list[list[str]]) -> str:
    width = max(len(x) for r in rows for x in r)
    return "\n".join(" ".join(x.rjust(width) for x in r) for r in rows)


def cmd_report(cfg: RunConfig) -> tuple[str, int]:
    from . import polar, qutrit, ringline
    from .claims import SRG_ROWS, TWO_QUBIT_INVARIANTS, TWO_QUBIT_SUBSETS
    from .graph import VertexSet, girth, induced_subgraph
    from .search import chromatic_number
    from .spectral import pg_params_for_qudits, srg_multiplicities

    parts = ["# pauliscope report", "Values marked [computed] are derived here; [listed] values are the published ones they are compared with."]

    products, commutation = render_tables(2, 2)
    parts.append(_section("Two-qubit products [computed]", "```\n" + products + "```"))
    parts.append(_section("Two-qubit commutation [computed]", "```\n" + commutation + "```"))

    blocks = []
    for N in (2, 3):
        rep = polar.block_structure(N)
        blocks.append(f"N={N}, blocks of size {rep.block_size} [computed]\n{rep.grid()}\nA = O + identity: {'yes' if rep.a_is_o_plus_identity else 'no'}")
    parts.append(_section("Block structure after removing the reference triple", "\n\n".join(blocks)))

    g = build_pauli_graph(2, 2)
    rows = [["graph", "v", "e", "spectrum", "girth", "chromatic"]]
    for name, members in TWO_QUBIT_SUBSETS.items():
        h = g if members is None else induced_subgraph(g, VertexSet.of(g, members))
        gi = girth(h)
        listed_girth = TWO_QUBIT_INVARIANTS[name][3]
        note = f" (listed {listed_girth}, flagged)" if gi != listed_girth else ""
        rows.append([name, str(h.v), str(h.e), str(spectrum(h)), f"{gi}{note}", str(chromatic_number(h))])
    table = "\n".join(" | ".join(r) for r in rows)
    parts.append(_section("Two-qubit invariants [computed]", table))

    ring_rows = [f"{r.ring}: {r.points} points, {r.hyperplane}, neighbor graph {'isomorphic' if r.isomorphic else 'NOT isomorphic'}" for r in ringline.subring_lines_as_hyperplanes()]
    line = ringline.projective_line()
    ring_rows.append(f"M2(Z2): {len(line.points)} points: " + " ".join(map(str, line.points)))
    split = ringline.pg32_line_phases()
    real = sum(ln.mu % 2 == 0 for ln in split)
    ring_rows.append(f"PG(3,2): {real} lines with mu = +-1, {len(split) - real} lines with mu = +-i")
    parts.append(_section("Ring lines and hyperplanes [computed]", "\n".join(ring_rows)))

    m3 = polar.m3_and_mermin_blocks(3)
    sub = [f"{k}: {v.spectrum}" for k, v in m3.items()]
    parts.append(_section("Three-qubit blocks [computed; E taken as I x MS]", "\n".join(sub)))

    srg_rows = [["N", "v", "L", "generators", "D", "r", "l", "lambda", "mu", "s", "t", "alpha", "f", "g"]]
    for N in (2, 3, 4):
        if 4**N - 1 > cfg.cap_vertices:
            continue
        gN = build_pauli_graph(2, N)
        p = verify_srg(gN).params
        e = srg_multiplicities(p)
        pg = pg_params_for_qudits(2, N)
        srg_rows.append([str(x) for x in (N, p.v, pg.lines, polar.generator_count_formula(N), p.D, e.r, e.l, p.lam, p.mu, pg.s, pg.t, pg.alpha, e.f, e.g)])
    srg_text = "\n".join(" | ".join(r) for r in srg_rows)
    srg_text += "\n" + "\n".join(str(verify_srg(build_pauli_graph(2, N)).params) for N in (2, 3, 4) if 4**N - 1 <= cfg.cap_vertices)
    parts.append(_section("N-qubit strongly regular parameters [computed]", srg_text))

    spectra = [f"P[2,{N}]: {spectrum(build_pauli_graph(2, N))}" for N in (2, 3, 4) if 4**N - 1 <= cfg.cap_vertices]
    p9 = qutrit.p9_analysis()
    spectra.append(f"P[3,2]: {p9.spectrum}")
    spectra.append(f"W9: {qutrit.dual_analysis().spectrum}")
    parts.append(_section("Spectra [computed]", "\n".join(spectra)))

    tri = qutrit.w9_tripartite()
    q = [f"{name} = {{{', '.join(qutrit.sorted_labels(s))}}}" for name, s in qutrit.MCS_LIST.items()]
    if tri:
        q.append(f"tripartite: ovoid {tri.ovoid}; cocliques {tri.cocliques}; triangles {tri.triangles}")
    parts.append(_section("Two-qutrit maximal commuting sets [listed, verified]", "\n".join(q)))

    claims = run_claims(SCOPES, threads=cfg.threads, cap_vertices=cfg.cap_vertices)
    flagged = [c.line() for c in claims if c.status == "FLAG"]
    parts.append(_section("Discrepancies (reported, not failed)", "\n".join(flagged) or "none"))
    parts.append(_section("Verification", "\n".join(c.line() for c in claims) + "\n" + _summary(claims)))
    text = "\n\n".join(parts) + "\n"
    return text, EXIT_MISMATCH if any(c.failed for c in claims) else EXIT_OK


COMMANDS = {"graph": cmd_graph, "verify": cmd_verify, "report": cmd_report}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        text, code = COMMANDS[cfg.command](cfg)
    except (UsageError, PauliError, PolarError, SearchLimitError) as exc:
        print(f"pauliscope: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
