"""Registry of published facts, each recomputed and compared.

A claim in the discrepancy category records a published value that the
mathematics does not support (or that is underspecified). It is shown with
status FLAG when it disagrees and never counts as a failure.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .graph import (
    VertexSet,
    complement,
    complete_graph,
    girth,
    induced_subgraph,
    line_graph,
    petersen_graph,
)
from .operators import build_pauli_graph, format_product, from_label, multiply
from .search import all_min_vertex_covers, chromatic_number, is_isomorphic, max_independent_sets, min_vertex_cover
from .spectral import (
    Spectrum,
    pg_params_for_qudits,
    spectrum,
    spectrum_of,
    srg_multiplicities,
    verify_srg,
)

SCOPES = ("two-qubit", "n-qubit", "ringline", "qutrit")


@dataclass(frozen=True)
class Claim:
    scope: str
    name: str
    expected: str
    computed: str
    passed: bool
    discrepancy: bool = False
    skipped: bool = False

    @property
    def status(self) -> str:
        if self.skipped:
            return "SKIP"
        if self.passed:
            return "PASS"
        return "FLAG" if self.discrepancy else "FAIL"

    @property
    def failed(self) -> bool:
        return self.status == "FAIL"

    def line(self) -> str:
        return f"{self.status:4}  [{self.scope}] {self.name}: expected {self.expected}; computed {self.computed}"


def _claim(scope, name, expected, computed, passed=None, discrepancy=False) -> Claim:
    expected, computed = str(expected), str(computed)
    if passed is None:
        passed = expected == computed
    return Claim(scope, name, expected, computed, bool(passed), discrepancy)


def _skip(scope, name, why) -> Claim:
    return Claim(scope, name, "-", why, True, skipped=True)


def _spec(entries: dict) -> Spectrum:
    return spectrum_of(entries)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _set(values) -> str:
    return "{" + ",".join(map(str, sorted(values))) + "}"


# ---------------------------------------------------------------------------
# Two qubits


TWO_QUBIT_SUBSETS = {
    "P[2,2]": None,
    "PG=MVC": ["3", "a", "4", "5", "b", "7", "8", "c", "10", "11"],
    "MS": [str(k) for k in range(4, 13)],
    "BP": ["1", "2", "3", "a", "b", "c"],
    "FP": ["1", "2", "3", "a", "4", "5", "6"],
    "CB": ["b", "7", "8", "9", "c", "10", "11", "12"],
}

# v, e, spectrum, girth, chromatic number as printed
TWO_QUBIT_INVARIANTS = {
    "P[2,2]": (15, 45, {-3: 5, 1: 9, 6: 1}, 3, 4),
    "PG=MVC": (10, 15, {-2: 4, 1: 5, 3: 1}, 5, 3),
    "MS": (9, 18, {-2: 4, 1: 4, 4: 1}, 3, 3),
    "BP": (6, 9, {-3: 1, 0: 4, 3: 1}, 4, 2),
    "FP": (7, 9, {-2: 1, -1: 3, 1: 2, 3: 1}, 3, 3),
    "CB": (8, 12, {-3: 1, -1: 3, 1: 3, 3: 1}, 3, 2),
}
PRINTED_TYPOS = {("CB", "girth")}


def two_qubit_claims() -> list[Claim]:
    from . import quadrangle as qd

    s = "two-qubit"
    out = []
    for x, y, want in (("1", "2", "i3"), ("4", "8", "-12"), ("8", "10", "6"), ("1", "a", "4")):
        out.append(_claim(s, f"product {x}.{y}", want, format_product(multiply(from_label(x), from_label(y)))))
    g = build_pauli_graph(2, 2)
    for name, members in TWO_QUBIT_SUBSETS.items():
        h = g if members is None else induced_subgraph(g, VertexSet.of(g, members))
        v, e, spec, gi, kappa = TWO_QUBIT_INVARIANTS[name]
        out.append(_claim(s, f"{name} vertices", v, h.v))
        out.append(_claim(s, f"{name} edges", e, h.e))
        sp = spectrum(h)
        out.append(_claim(s, f"{name} spectrum", _spec(spec), sp, sp == spec))
        typo = (name, "girth") in PRINTED_TYPOS
        out.append(_claim(s, f"{name} girth", gi, girth(h), discrepancy=typo))
        out.append(_claim(s, f"{name} chromatic number", kappa, chromatic_number(h)))
    mvc = min_vertex_cover(g).subgraph
    out.append(_claim(s, "P[2,2] is the complement of L(K6)", "yes", _yes(is_isomorphic(g, complement(line_graph(complete_graph(6))))[0])))
    out.append(_claim(s, "minimum vertex cover of P[2,2] is the Petersen graph", "yes", _yes(is_isomorphic(mvc, petersen_graph())[0])))
    k7 = complement(line_graph(complete_graph(7)))
    covers = all_min_vertex_covers(k7)
    hit = any(is_isomorphic(induced_subgraph(k7, c), g)[0] for c in covers)
    out.append(_claim(s, "some minimum vertex cover of the complement of L(K7) is P[2,2]", "yes", _yes(hit)))

    geom = qd.w2_from_graph(g)
    out.append(_claim(s, "W(2) lines", 15, len(geom.lines)))
    census = qd.hyperplane_census(geom)
    out.append(_claim(s, "hyperplanes perp-set/grid/ovoid", "15/10/6", f"{census.get('perp-set', 0)}/{census.get('grid', 0)}/{census.get('ovoid', 0)}"))
    out.append(_claim(s, "spreads", 6, len(qd.spreads(geom))))
    ov = {tuple(h.points) for h in qd.classify_hyperplanes(geom) if h.kind == "ovoid"}
    mis = {tuple(w.sorted()) for w in max_independent_sets(g, enumerate_all=True).witnesses}
    out.append(_claim(s, "ovoids are the maximum independent sets", "yes", _yes(ov == mis and len(ov) == 6)))
    for trio, want in ((("b", "5", "11"), 3), (("1", "6", "12"), 1)):
        t = qd.triad(geom, [geom.index(x) for x in trio])
        out.append(_claim(s, f"centers of triad {{{','.join(trio)}}}", want, len(t.centers)))
    for mode in ("fano_cube", "mermin_bipartite", "ovoid_petersen"):
        f = qd.factorize(g, mode)
        out.append(_claim(s, f"factorization {mode}", "holds", "holds" if f.ok else f"fails {f.checks}"))
    cert = qd.mermin_certificate([str(k) for k in range(4, 13)], geom)
    out.append(_claim(s, "Mermin square lines with product -I/+I", "3/3", f"{cert.negative}/{cert.positive}"))
    out.append(_claim(s, "Mermin square overall sign", -1, cert.overall_sign))
    out.append(_claim(s, "Mermin square is polarized", "yes", _yes(cert.polarized)))
    pg_labels = TWO_QUBIT_SUBSETS["PG=MVC"]
    desargues = qd.non_commuting_product_triples(pg_labels)
    out.append(_claim(s, "complement of Petersen with non-commuting triples is (10_3)", "yes", _yes(qd.verify_configuration(pg_labels, desargues, 10, 10, 3, 3))))
    ms = TWO_QUBIT_SUBSETS["MS"]
    out.append(_claim(s, "Mermin square is a (9_2,6_3) configuration", "yes", _yes(qd.verify_configuration(ms, qd.grid_lines(geom, ms), 9, 6, 2, 3))))
    msg = induced_subgraph(g, VertexSet.of(g, ms))
    out.append(_claim(s, "Mermin square is self-complementary", "yes", _yes(is_isomorphic(msg, complement(msg))[0])))
    entangled = sum(qd.line_basis_entanglement(geom.names(line)) == "entangled" for line in geom.lines)
    out.append(_claim(s, "W(2) lines carrying an entangled basis", 6, entangled))
    return out


# ---------------------------------------------------------------------------
# N qubits

# N: (v, L, D, r, l, lambda, mu, s, t, alpha) as printed
SRG_ROWS = {
    2: (15, 15, 6, 1, -3, 1, 3, 2, 2, 1),
    3: (63, 45, 30, 3, -5, 13, 15, 6, 4, 3),
    4: (255, 153, 126, 7, -9, 61, 63, 14, 8, 7),
}
GENERATOR_COUNTS = {2: 15, 3: 135, 4: 2295}
MULTIPLICITIES = {2: (9, 5), 3: (35, 27)}


def n_qubit_claims(cap_vertices: int | None = None, max_rank: int = 4) -> list[Claim]:
    from . import polar

    s = "n-qubit"
    out = []
    for N in range(2, max_rank + 1):
        v = 4**N - 1
        if cap_vertices is not None and v > cap_vertices:
            out.append(_skip(s, f"N={N}", f"{v} vertices exceed the cap {cap_vertices}"))
            continue
        g = build_pauli_graph(2, N)
        laws = polar.verify_counting_laws(N, check_spread=N <= 3)
        out.append(_claim(s, f"N={N} points", v, len(polar.symplectic_space(N).points)))
        out.append(_claim(s, f"N={N} non-commuting partners per operator", 2 ** (2 * N - 1), sorted({g.v - 1 - d for d in g.degrees()})[0]))
        out.append(_claim(s, f"N={N} counting laws", "hold", "hold" if laws.ok else str(laws)))
        gens = polar.generators(N)
        out.append(_claim(s, f"N={N} generators", GENERATOR_COUNTS[N], len(gens)))
        out.append(_claim(s, f"N={N} generator count formula", polar.generator_count_formula(N), len(gens)))
        out.append(_claim(s, f"N={N} generators are the maximal cliques", "yes", _yes(polar.generators_match_cliques(N))))
        if N <= 3:
            spread = polar.find_spread(N)
            out.append(_claim(s, f"N={N} spread size", 2**N + 1, len(spread) if polar.is_spread(N, spread) else "invalid"))
        row = SRG_ROWS[N]
        check = verify_srg(g)
        p = check.params
        out.append(_claim(s, f"N={N} strongly regular", f"srg({row[0]}, {row[2]}, {row[5]}, {row[6]})", p if p else check.reason))
        if p:
            e = srg_multiplicities(p)
            out.append(_claim(s, f"N={N} restricted eigenvalues r, l", (row[3], row[4]), (e.r, e.l)))
            if N in MULTIPLICITIES:
                out.append(_claim(s, f"N={N} multiplicities f, g", MULTIPLICITIES[N], (e.f, e.g)))
        pg = pg_params_for_qudits(2, N)
        out.append(_claim(s, f"N={N} partial geometry s, t, alpha", row[7:], (pg.s, pg.t, pg.alpha)))
        out.append(_claim(s, f"N={N} partial-geometry line count", row[1], pg.lines))
        out.append(
            _claim(
                s,
                f"N={N} printed line count against generator count",
                row[1],
                len(gens),
                discrepancy=True,
            )
        )
        if N == 3:
            sp = spectrum(g)
            want = {-5: 27, 3: 35, 30: 1}
            out.append(_claim(s, "N=3 spectrum", _spec(want), sp, sp == want))
        rep = polar.block_structure(N)
        out.append(_claim(s, f"N={N} O/A/Â block pattern", "holds", "holds" if rep.pattern_ok else rep.grid()))
        out.append(_claim(s, f"N={N} diagonal blocks are P[2,{N - 1}]", "yes", _yes(rep.diagonal_is_parent)))
        out.append(_claim(s, f"N={N} A = O + identity", "yes", _yes(rep.a_is_o_plus_identity)))
        if N == 3:
            out.append(
                _claim(
                    s,
                    "N=3 A block as O joined with an 8x8 unit matrix",
                    "A = O joined with I_8",
                    f"A = O + I_{rep.block_size}",
                    passed=rep.block_size == 8,
                    discrepancy=True,
                )
            )
    if max_rank >= 3 and (cap_vertices is None or cap_vertices >= 63):
        out.extend(_three_qubit_blocks(s))
    return out


_BLOCK_SPECTRA = {
    "M3": {-5: 10, -3: 9, -2: 2, 1: 5, 3: 18, 22: 1},
    "MSx2": {-3: 4, -1: 8, 0: 1, 3: 4, 8: 1},
    "MSx3": {-3: 12, 0: 6, 3: 8, 12: 1},
}


def _e_spectra() -> dict[str, Spectrum]:
    from .spectral import QuadraticPair

    return {
        "E+MS": Spectrum({-3: 4, -1: 9, 3: 4, 9: 1}),
        "E+2MS": Spectrum({-3: 12, 0: 5, 3: 8}, {QuadraticPair.from_monic(12, -18): 1}),
        "E+3MS": Spectrum({-5: 4, -3: 12, 0: 2, 1: 4, 3: 12}, {QuadraticPair.from_monic(16, -27): 1}),
    }


def _three_qubit_blocks(s: str) -> list[Claim]:
    from . import polar

    blocks = polar.m3_and_mermin_blocks(3)
    out = [_claim(s, "M3 degrees", "{22}", _set(blocks["M3"].degrees))]
    for key, want in _BLOCK_SPECTRA.items():
        sp = blocks[key].spectrum
        out.append(_claim(s, f"{key} spectrum", _spec(want), sp, sp == want))
    for key, want in _e_spectra().items():
        sp = blocks[key].spectrum
        out.append(_claim(s, f"{key} spectrum (E taken as I x MS)", want, sp, sp == want, discrepancy=True))
    return out


# ---------------------------------------------------------------------------
# Ring line


def ringline_claims() -> list[Claim]:
    from . import ringline as rl

    s = "ringline"
    out = []
    ring = rl.build_ring(rl.FULL)
    out.append(_claim(s, "units of M2(Z2)", "1',2',9',11',12',13'", ",".join(map(str, ring.units))))
    out.append(_claim(s, "zero-divisors of M2(Z2)", 10, len(ring.zero_divisors)))
    for name, want in (("M2(Z2)", 35), ("F4", 5), ("Z2[x]/x^2", 6), ("Z2xZ2", 9)):
        out.append(_claim(s, f"points on the line over {name}", want, len(rl.projective_line(name).points)))
    listed = (
        "(1',1') (1',2') (1',9') (1',11') (1',12') (1',13') "
        "(1',0') (1',3') (1',4') (1',5') (1',6') (1',7') (1',8') (1',10') (1',14') (1',15') "
        "(0',1') (3',1') (4',1') (5',1') (6',1') (7',1') (8',1') (10',1') (14',1') (15',1') "
        "(3',4') (3',10') (3',14') (5',4') (5',10') (5',14') (6',4') (6',10') (6',14')"
    )
    out.append(_claim(s, "point representatives", listed, " ".join(map(str, rl.projective_line().points))))
    split = rl.bp_ms_from_reference_pair()
    out.append(_claim(s, "distant to both references", "(1',1') (1',2') (1',9') (1',11') (1',12') (1',13')", " ".join(map(str, split.distant_to_both))))
    out.append(
        _claim(
            s,
            "neighbor to both references",
            "(3',4') (3',10') (3',14') (5',4') (5',10') (5',14') (6',4') (6',10') (6',14')",
            " ".join(map(str, split.neighbor_to_both)),
        )
    )
    out.append(_claim(s, "distant-to-both neighbor graph matches BP", "yes", _yes(split.bp_ok)))
    out.append(_claim(s, "neighbor-to-both graph matches MS", "yes", _yes(split.ms_ok)))
    out.append(_claim(s, "MS rows share a coordinate", "yes", _yes(split.polarized)))
    out.append(_claim(s, "the fifteen points reproduce P[2,2]", "yes", _yes(split.w2_ok)))
    for row in rl.subring_lines_as_hyperplanes():
        out.append(_claim(s, f"line over {row.ring} matches {row.hyperplane}", f"{row.expected_points} points, isomorphic", f"{row.points} points, {'isomorphic' if row.isomorphic else 'not isomorphic'}"))
    lines = rl.pg32_line_phases()
    real = [ln for ln in lines if ln.mu % 2 == 0]
    out.append(_claim(s, "PG(3,2) lines with mu = +-1 / +-i", "15/20", f"{len(real)}/{len(lines) - len(real)}"))
    out.append(_claim(s, "mu = +-1 exactly on isotropic lines", "yes", _yes(all((ln.mu % 2 == 0) == ln.isotropic for ln in lines))))
    return out


# ---------------------------------------------------------------------------
# Two qutrits


def qutrit_claims() -> list[Claim]:
    from . import qutrit as qt

    s = "qutrit"
    out = []
    p9 = qt.p9_analysis()
    out.append(_claim(s, "P[3,2] degrees", "{25}", _set(p9.degrees)))
    want = {-7: 15, -1: 40, 5: 24, 25: 1}
    out.append(_claim(s, "P[3,2] spectrum", _spec(want), p9.spectrum, p9.spectrum == want))
    out.append(_claim(s, "P[3,2] strongly regular", "no", _yes(p9.srg.strongly_regular)))
    mcs = qt.enumerate_mcs()
    out.append(_claim(s, "maximal commuting sets of size 8", 40, sum(len(x) == 8 for x in mcs.enumerated)))
    out.append(_claim(s, "maximal commuting sets equal the listed ones", "yes", "yes" if mcs.ok else "; ".join(mcs.differences()) or "no"))
    dual = qt.dual_analysis()
    out.append(_claim(s, "W9 strongly regular", "srg(40, 12, 2, 4)", dual.srg.params or dual.srg.reason))
    want = {-4: 15, 2: 24, 12: 1}
    out.append(_claim(s, "W9 spectrum", _spec(want), dual.spectrum, dual.spectrum == want))
    out.append(_claim(s, "W9 lines recovered as a GQ(3,3)", "40 lines of 4, 4 per point", f"{dual.lines} lines of {sorted(dual.points_per_line)}, {sorted(dual.lines_per_point)} per point", dual.ok))
    hyp = qt.w9_hyperplanes()
    out.append(_claim(s, "L, M, N, P sets form a 4x4 grid", "yes", _yes(hyp.grid_ok)))
    out.append(_claim(s, "X sets form an 8-coclique", "yes", _yes(hyp.coclique_ok)))
    out.append(_claim(s, "Y and Z sets form a 4-cube", "yes", _yes(hyp.hypercube_ok)))
    out.append(_claim(s, "W9 independence number", 10, hyp.independence_number))
    out.append(_claim(s, "listed ovoid is a maximum independent set", "yes", _yes(hyp.listed_ovoid_ok)))
    out.append(_claim(s, "every ovoid is a spread of P[3,2]", "yes", _yes(hyp.ovoids_are_spreads)))
    out.append(_claim(s, "perp-set 1+12+27 with three ovoids through the reference", "every vertex", "every vertex" if all(hyp.perp_ok.values()) else "fails"))
    tri = qt.w9_tripartite()
    out.append(_claim(s, "tripartite partition", "(10, 9, 9, 3, 3, 3, 3)", tri.sizes if tri else "not found", bool(tri and tri.ok)))
    return out


GROUPS: dict[str, Callable[..., list[Claim]]] = {
    "two-qubit": two_qubit_claims,
    "n-qubit": n_qubit_claims,
    "ringline": ringline_claims,
    "qutrit": qutrit_claims,
}


def run_claims(scopes=SCOPES, threads: int = 1, cap_vertices: int | None = None) -> list[Claim]:
    """Evaluate claim groups, possibly in parallel; output order follows ``scopes``."""

    def run(scope: str) -> list[Claim]:
        if scope == "n-qubit":
            return n_qubit_claims(cap_vertices)
        return GROUPS[scope]()

    if threads <= 1:
        results = [run(sc) for sc in scopes]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, scopes))
    return [c for group in results for c in group]
