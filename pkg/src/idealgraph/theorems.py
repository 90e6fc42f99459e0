"""Formula-versus-oracle verification of the closed-form results.

Each ring spec gets a :class:`VerificationReport`: every invariant is
computed exhaustively from the graph, every closed form is evaluated where
its hypotheses hold, and the two are compared.  A spec outside every
hypothesis is reported as out of scope, never as a failure.
"""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from itertools import combinations, product
from typing import Callable, Iterable, Iterator

from .errors import BudgetExceededError, SpecOutOfTheoremScopeError
from .graph import IdealGraph, build_graph, diameter, is_connected
from .metric import (
    DEFAULT_BUDGET,
    is_resolving,
    metric_dimension_exact,
    predicted_basis,
    predicted_metric_dimension,
)
from .ring import Family, RingSpec, comparable, complement, is_in_m, render_ideal
from .strong import (
    DEFAULT_MIS_BUDGET,
    DEFAULT_ORACLE_CAP,
    build_srg_definitional,
    build_srg_structural,
    independence_number,
    is_complete,
    is_independent,
    is_vertex_cover,
    predicted_beta,
    predicted_max_independent_set,
    predicted_sdim,
    predicted_srg_order,
    srg_structure,
    strong_metric_dimension_oracle,
)

log = logging.getLogger(__name__)

OUT_OF_SCOPE = "out-of-scope"
SKIPPED = "skipped"

PASS = "PASS"
FAIL = "FAIL"
NO_CLAIM = "OUT-OF-SCOPE"


@dataclass
class VerificationReport:
    spec: str
    chain_lengths: list[int]
    vertex_count: int
    connected: bool
    diameter: int | str = OUT_OF_SCOPE
    dim_oracle: int | str = OUT_OF_SCOPE
    dim_basis: list[str] | str = OUT_OF_SCOPE
    dim_predicted: int | str = OUT_OF_SCOPE
    basis_witness_valid: bool | str = OUT_OF_SCOPE
    srg_vertex_count: int | str = OUT_OF_SCOPE
    srg_structural_matches: bool | str = OUT_OF_SCOPE
    beta_oracle: int | str = OUT_OF_SCOPE
    beta_predicted: int | str = OUT_OF_SCOPE
    mis_witness_valid: bool | str = OUT_OF_SCOPE
    sdim_reduction: int | str = OUT_OF_SCOPE
    sdim_oracle: int | str = OUT_OF_SCOPE
    sdim_predicted: int | str = OUT_OF_SCOPE
    k2_count: int | str = OUT_OF_SCOPE
    h_connected: bool | None | str = OUT_OF_SCOPE
    srg_components: list[int] | str = OUT_OF_SCOPE
    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    elapsed: dict[str, float] = field(default_factory=dict)
    status: str = NO_CLAIM

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> VerificationReport:
        return cls(**json.loads(text))


def _compare(report: VerificationReport, name: str, oracle, predicted) -> None:
    if isinstance(oracle, int) and isinstance(predicted, int):
        report.checks[name] = oracle == predicted


def _distance3_fields(graph: IdealGraph) -> bool:
    dist = graph.distances.finite
    spec = graph.spec
    for u, v in combinations(range(len(graph)), 2):
        is_comp = graph.vertices[v] == complement(spec, graph.vertices[u])
        if (dist[u, v] == 3) != is_comp:
            return False
    return True


def _distance3_pir(graph: IdealGraph) -> bool:
    dist = graph.distances.finite
    spec = graph.spec
    for u, v in combinations(range(len(graph)), 2):
        a, b = graph.vertices[u], graph.vertices[v]
        expected = is_in_m(spec, a) and is_in_m(spec, b) and a == complement(spec, b)
        if (dist[u, v] == 3) != expected:
            return False
    return True


def _complement_symmetry(graph: IdealGraph) -> bool:
    spec = graph.spec
    ms = [v for v in graph.vertices if is_in_m(spec, v)]
    for a, b in combinations(ms, 2):
        if comparable(a, complement(spec, b)) != comparable(b, complement(spec, a)):
            return False
    return True


def _h_plus_k2(report, n_fields: int) -> bool:
    """``H + n K2`` with ``H`` connected (possibly empty, possibly itself a K2)."""
    rest = report.h_vertices > 0
    if rest and not report.h_connected:
        return False
    total = report.k2_count + (1 if rest else 0)
    return report.k2_count >= n_fields and total in (n_fields, n_fields + 1)


def _stage(report: VerificationReport, name: str, fn: Callable[[], None]) -> None:
    start = time.perf_counter()
    try:
        fn()
    except BudgetExceededError as exc:
        log.info("%s: stage %s skipped (%s)", report.spec, name, exc)
        report.skipped.append(name)
    finally:
        report.elapsed[name] = round(time.perf_counter() - start, 6)


def verify_spec(
    spec: RingSpec,
    budget: int = DEFAULT_BUDGET,
    mis_budget: int = DEFAULT_MIS_BUDGET,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
) -> VerificationReport:
    """Compute every invariant by exhaustive search and compare it with the closed forms."""
    start = time.perf_counter()
    graph = build_graph(spec)
    connected = is_connected(graph) and len(graph) > 0
    report = VerificationReport(
        spec=str(spec),
        chain_lengths=list(spec.chain_lengths),
        vertex_count=len(graph),
        connected=connected,
    )
    report.elapsed["graph"] = round(time.perf_counter() - start, 6)
    if not connected:
        report.status = NO_CLAIM
        return report

    family = spec.family
    report.diameter = diameter(graph)
    report.checks["diameter_at_most_3"] = report.diameter <= 3
    if family is Family.FIELDS:
        report.checks["diameter_3"] = report.diameter == 3
        report.checks["distance3_iff_complement"] = _distance3_fields(graph)
    elif family is Family.PIR:
        report.checks["distance3_iff_complement_in_m"] = _distance3_pir(graph)
    if family is not None:
        report.checks["complement_adjacency_symmetric"] = _complement_symmetry(graph)

    def metric_stage():
        result = metric_dimension_exact(graph, budget)
        report.dim_oracle = result.dimension
        report.dim_basis = [render_ideal(spec, graph.vertices[i]) for i in result.basis]
        report.checks["vertex_count_bound"] = len(graph) <= 3**result.dimension + result.dimension

    _stage(report, "dim_oracle", metric_stage)
    try:
        report.dim_predicted = predicted_metric_dimension(spec)
        witness = [graph.index[v] for v in predicted_basis(spec)]
        report.basis_witness_valid = len(witness) == report.dim_predicted and is_resolving(
            witness, graph.distances
        )
    except SpecOutOfTheoremScopeError:
        pass
    _compare(report, "dim", report.dim_oracle, report.dim_predicted)
    if isinstance(report.basis_witness_valid, bool):
        report.checks["basis_witness"] = report.basis_witness_valid

    t = time.perf_counter()
    srg = build_srg_definitional(graph)
    report.srg_vertex_count = len(srg)
    structure = srg_structure(srg)
    report.k2_count = structure.k2_count
    report.h_connected = structure.h_connected
    report.srg_components = structure.component_sizes
    if family is not None:
        report.srg_structural_matches = build_srg_structural(spec, graph).same_as(srg)
        report.checks["srg_structural"] = report.srg_structural_matches
        report.checks["srg_order"] = len(srg) == predicted_srg_order(spec)
        if family is Family.PIR:
            if spec.chain_lengths == (1, 1):
                report.checks["srg_k3_k2_k2"] = structure.component_sizes == [3, 2, 2] and all(
                    is_complete(srg, c) for c in structure.components
                )
            else:
                report.checks["srg_connected"] = len(structure.components) == 1
        else:
            report.checks["srg_h_plus_k2"] = _h_plus_k2(structure, spec.num_fields)
    report.elapsed["srg"] = round(time.perf_counter() - t, 6)

    def strong_stage():
        beta, independent = independence_number(srg, mis_budget)
        report.beta_oracle = beta
        report.sdim_reduction = len(srg) - beta
        cover = set(srg.vertices) - set(independent)
        report.checks["gallai"] = (
            is_independent(srg, independent)
            and is_vertex_cover(srg, cover)
            and len(cover) + beta == len(srg)
        )

    _stage(report, "beta", strong_stage)

    if len(graph) <= oracle_cap:

        def oracle_stage():
            report.sdim_oracle = strong_metric_dimension_oracle(graph, cap=oracle_cap)[0]

        _stage(report, "sdim_oracle", oracle_stage)
        _compare(report, "sdim_reduction_vs_oracle", report.sdim_oracle, report.sdim_reduction)
    else:
        report.sdim_oracle = SKIPPED

    if family is not None:
        report.beta_predicted = predicted_beta(spec)
        report.sdim_predicted = predicted_sdim(spec)
        witness = [graph.index[v] for v in predicted_max_independent_set(spec)]
        report.mis_witness_valid = len(witness) == report.beta_predicted and is_independent(srg, witness)
        report.checks["mis_witness"] = report.mis_witness_valid
        _compare(report, "beta", report.beta_oracle, report.beta_predicted)
        _compare(report, "sdim", report.sdim_reduction, report.sdim_predicted)

    report.failures = sorted(name for name, ok in report.checks.items() if not ok)
    has_claims = family is not None or report.dim_predicted != OUT_OF_SCOPE
    if report.failures:
        report.status = FAIL
    elif has_claims:
        report.status = PASS
    else:
        report.status = NO_CLAIM
    report.elapsed["total"] = round(time.perf_counter() - start, 6)
    return report


# -- sweeps ------------------------------------------------------------------


@dataclass(frozen=True)
class SweepGrid:
    """Parameter ranges of a verification sweep.

    Field products use ``3..max_fields`` fields; chain-ring products use
    ``2..max_components`` components with chain lengths ``1..max_chain``;
    mixed products use ``1..mixed_max_components`` chain rings with lengths
    ``1..mixed_max_chain`` and ``1..mixed_max_fields`` fields.  ``extra``
    specs are appended verbatim.
    """

    max_fields: int = 5
    max_components: int = 3
    max_chain: int = 3
    mixed_max_components: int = 2
    mixed_max_fields: int = 3
    mixed_max_chain: int = 2
    extra: tuple[tuple[int, ...], ...] = ()

    def specs(self) -> list[RingSpec]:
        out: list[tuple[int, ...]] = []
        out += [(0,) * n for n in range(3, self.max_fields + 1)]
        for m in range(2, self.max_components + 1):
            out += product(range(1, self.max_chain + 1), repeat=m)
        for m in range(1, self.mixed_max_components + 1):
            for chains in product(range(1, self.mixed_max_chain + 1), repeat=m):
                out += [chains + (0,) * n for n in range(1, self.mixed_max_fields + 1)]
        out += list(self.extra)
        seen = dict.fromkeys(tuple(s) for s in out)
        return [RingSpec(s) for s in seen]


@dataclass
class SweepSummary:
    total: int
    passed: int
    failed: int
    no_claim: int
    failing_specs: list[str]

    def line(self) -> str:
        return (
            f"sweep: {self.total} specs, {self.passed} PASS, {self.failed} FAIL, "
            f"{self.no_claim} out of scope"
        )


def iter_sweep(specs: Iterable[RingSpec], jobs: int = 1, **kwargs) -> Iterator[VerificationReport]:
    """Yield one report per spec, in input order.

    With ``jobs > 1`` the specs are verified in worker processes; the
    reports still come back in input order.
    """
    specs = list(specs)
    if jobs <= 1:
        for spec in specs:
            log.info("verifying %s", spec)
            yield verify_spec(spec, **kwargs)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(partial(verify_spec, **kwargs), specs)


def sweep(
    grid: SweepGrid | Iterable[RingSpec] = SweepGrid(), jobs: int = 1, **kwargs
) -> list[VerificationReport]:
    specs = grid.specs() if isinstance(grid, SweepGrid) else list(grid)
    return list(iter_sweep(specs, jobs=jobs, **kwargs))


def summarize(reports: Iterable[VerificationReport]) -> SweepSummary:
    reports = list(reports)
    return SweepSummary(
        total=len(reports),
        passed=sum(r.status == PASS for r in reports),
        failed=sum(r.status == FAIL for r in reports),
        no_claim=sum(r.status == NO_CLAIM for r in reports),
        failing_specs=[r.spec for r in reports if r.status == FAIL],
    )


_TABLE_COLUMNS = [
    ("spec", "spec"),
    ("|V|", "vertex_count"),
    ("diam", "diameter"),
    ("dim", "dim_oracle"),
    ("dim*", "dim_predicted"),
    ("|SRG|", "srg_vertex_count"),
    ("beta", "beta_oracle"),
    ("beta*", "beta_predicted"),
    ("sdim", "sdim_reduction"),
    ("sdim*", "sdim_predicted"),
    ("status", "status"),
]


def _cell(value) -> str:
    if value == OUT_OF_SCOPE:
        return "-"
    if value == SKIPPED:
        return "skip"
    return str(value)


def format_table(reports: Iterable[VerificationReport]) -> str:
    """Fixed-width table; starred columns are closed-form predictions."""
    rows = [[h for h, _ in _TABLE_COLUMNS]]
    for r in reports:
        row = [_cell(getattr(r, attr)) for _, attr in _TABLE_COLUMNS]
        if r.failures:
            row[-1] += " (" + ", ".join(r.failures) + ")"
        rows.append(row)
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]) - 1)]
    lines = []
    for row in rows:
        cells = [c.ljust(w) for c, w in zip(row, widths)] + [row[-1]]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)
