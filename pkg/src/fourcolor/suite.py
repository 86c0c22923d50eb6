"""The acceptance-criteria suite behind `fourcolor suite` and the test module.

Every criterion is deterministic (fixed seeds) and self-contained; each
returns pass/fail plus a human-readable detail string. Sizes and tolerances
are pinned here and nowhere else.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .approx import approx_color, chordal_color, is_chordal
from .coloring import color_fallback, four_color, verify_coloring
from .graph import Graph, bits, connected_components, induced_subgraph
from .lab import (
    GeneratorConfig,
    clique_number,
    construction,
    enumerate_class_members,
    exact_chromatic,
    generate,
    generate_chordal,
    wagon_bound_check,
)
from .patterns import find_induced
from .reduction import reduce_to_core
from .structure import (
    c5_partition,
    check_c5_properties,
    check_h1_properties,
    check_h2_properties,
    select_best_h1,
    select_best_h2,
)


@dataclass(frozen=True)
class CriterionResult:
    cid: str
    description: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.cid} {self.description}: {status} ({self.detail}; {self.seconds:.1f}s)"

    def porcelain(self) -> str:
        return (
            f"criterion={self.cid} passed={str(self.passed).lower()} "
            f"seconds={self.seconds:.1f} detail={self.detail.replace(' ', '_')}"
        )


def _find_odd_hole(g: Graph) -> tuple[int, ...] | None:
    """Induced odd cycle of length >= 5, by exhaustive subset search."""
    for length in range(5, g.n + 1, 2):
        for sub in combinations(range(g.n), length):
            mask = 0
            for v in sub:
                mask |= 1 << v
            if any((g.rows[v] & mask).bit_count() != 2 for v in sub):
                continue
            # 2-regular induced subgraph: a single cycle iff connected
            seen = 1 << sub[0]
            stack = [sub[0]]
            while stack:
                v = stack.pop()
                grow = g.rows[v] & mask & ~seen
                seen |= grow
                stack.extend(bits(grow))
            if seen == mask:
                return sub
    return None


def _core_component_with(g: Graph, pattern: str) -> Graph | None:
    core, _ = reduce_to_core(g)
    for comp in connected_components(core):
        sub, _ = induced_subgraph(core, comp)
        if find_induced(sub, pattern) is not None:
            return sub
    return None


# -- criteria -------------------------------------------------------------------


def crit_extremal() -> tuple[bool, str]:
    notes = []
    for name in ("W5", "C7-complement"):
        g = construction(name)
        col, _ = four_color(g)
        if verify_coloring(g, col) is not None or col.k != 4:
            return False, f"{name}: pipeline gave k={col.k}"
        chi, _ = exact_chromatic(g)
        if chi != 4:
            return False, f"{name}: oracle gave chi={chi}"
        notes.append(f"{name} k=4 chi=4")
    return True, "; ".join(notes)


def _mixed_configs(count: int):
    methods = (
        "auto",
        "incremental",
        "incremental:C5",
        "incremental:H1",
        "incremental:H2",
        "planted:C5",
        "planted:W5",
        "planted:H2",
        "planted:H1",
    )
    for i in range(count):
        n = 5 + (i * 7) % 36
        method = methods[i % len(methods)]
        if method.startswith("planted") and n > 18:
            n = 8 + i % 11
        if method.startswith("incremental:") and n < 8:
            n = 8
        if i % 25 == 24:
            sizes = tuple(1 + (i // 25 + j) % 3 for j in range(5))
            yield GeneratorConfig(
                n=sum(sizes), seed=i, method=f"C5-blowup({','.join(map(str, sizes))})"
            )
            continue
        yield GeneratorConfig(n=n, seed=i, p=0.2 + 0.05 * (i % 8), method=method)


def crit_pipeline_soundness() -> tuple[bool, str]:
    cases = {}
    for cfg in _mixed_configs(1000):
        g = generate(cfg)
        try:
            col, trace = four_color(g)
        except Exception as exc:  # any raise is a failure, per the criterion
            return False, f"seed={cfg.seed} method={cfg.method}: {exc!r}"
        if verify_coloring(g, col) is not None or col.k > 4:
            return False, f"seed={cfg.seed}: improper or k={col.k}"
        for rec in trace.records:
            cases[rec.lemma] = cases.get(rec.lemma, 0) + 1
    spread = ",".join(f"{k}:{v}" for k, v in sorted(cases.items()))
    return True, f"1000 instances proper with k<=4 ({spread})"


def crit_oracle_chi_bound() -> tuple[bool, str]:
    total = 0
    for n in range(1, 8):
        for g in enumerate_class_members(n):
            chi, _ = exact_chromatic(g)
            if chi > 4:
                return False, f"exhaustive n={n}: chi={chi}"
            total += 1
    sampled = 0
    for seed in range(500):
        cfg = GeneratorConfig(
            n=8 + seed % 5, seed=10_000 + seed, p=0.25 + 0.05 * (seed % 6), method="incremental"
        )
        g = generate(cfg)
        chi, _ = exact_chromatic(g)
        if chi > 4:
            return False, f"sampled seed={cfg.seed}: chi={chi}"
        sampled += 1
    return True, f"{total} exhaustive (n<=7) + {sampled} sampled members all have chi<=4"


def crit_c5_structure() -> tuple[bool, str]:
    done = 0
    for seed in range(500):
        cfg = GeneratorConfig(
            n=8 + seed % 13, seed=20_000 + seed, p=0.25 + 0.05 * (seed % 6), method="incremental:C5"
        )
        g = generate(cfg)
        witness = find_induced(g, "C5")
        if witness is None:
            return False, f"seed={cfg.seed}: seeded five-cycle vanished"
        report = check_c5_properties(g, c5_partition(g, witness))
        if not report.ok:
            bad = report.failures()[0]
            return False, f"seed={cfg.seed}: {bad.prop} fails at {bad.counterexample}"
        done += 1
    return True, f"{done} anchored members pass all thirteen properties"


def crit_anchor_structure() -> tuple[bool, str]:
    done_h1 = 0
    seed = 0
    while done_h1 < 200 and seed < 1000:
        cfg = GeneratorConfig(
            n=9 + seed % 6, seed=30_000 + seed, p=0.22 + 0.04 * (seed % 5), method="incremental:H1"
        )
        seed += 1
        sub = _core_component_with(generate(cfg), "H1")
        if sub is None:
            continue
        _, part = select_best_h1(sub)
        report = check_h1_properties(sub, part)
        if not report.ok:
            bad = report.failures()[0]
            return False, f"ring seed={cfg.seed}: {bad.prop} fails at {bad.counterexample}"
        if part.Z:
            return False, f"ring seed={cfg.seed}: Z nonempty on a reduced core"
        done_h1 += 1
    if done_h1 < 200:
        return False, f"only {done_h1} ring-anchored cores found"
    done_h2 = 0
    seed = 0
    while done_h2 < 200 and seed < 3000:
        cfg = GeneratorConfig(
            n=12 + seed % 5,
            seed=40_000 + seed,
            p=0.4 + 0.05 * (seed % 4),
            method="incremental:H2-core" if seed % 2 else "incremental:H2",
        )
        seed += 1
        sub = _core_component_with(generate(cfg), "H2")
        if sub is None or find_induced(sub, "H1") is not None:
            continue
        best = select_best_h2(sub)
        witness, part = best
        report = check_h2_properties(sub, part, witness.vertices[5])
        if not report.ok:
            bad = report.failures()[0]
            return False, f"apex seed={cfg.seed}: {bad.prop} fails at {bad.counterexample}"
        done_h2 += 1
    if done_h2 < 200:
        return False, f"only {done_h2} apex-anchored cores found"
    return True, f"{done_h1} ring + {done_h2} apex anchored cores pass all properties"


def crit_reduction_chi() -> tuple[bool, str]:
    import random

    rng = random.Random(1234)
    for trial in range(10_000):
        n = 1 + trial % 10
        p = 0.1 + 0.08 * (trial % 10)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = Graph.from_edges(n, edges)
        core, _ = reduce_to_core(g)
        if exact_chromatic(core)[0] != exact_chromatic(g)[0]:
            return False, f"trial={trial}: core changed the chromatic number"
    return True, "10000 random graphs keep their chromatic number under reduction"


def crit_approx_ratio() -> tuple[bool, str]:
    for seed in range(200):
        cfg = GeneratorConfig(n=4 + seed % 9, seed=50_000 + seed, p=0.3 + 0.05 * (seed % 6), cls="4p1c4-free")
        g = generate(cfg)
        res = approx_color(g)
        if verify_coloring(g, res.coloring) is not None:
            return False, f"seed={cfg.seed}: improper coloring"
        chi, _ = exact_chromatic(g)
        if not chi <= res.coloring.k <= 2 * chi:
            return False, f"seed={cfg.seed}: k={res.coloring.k} outside [{chi}, {2 * chi}]"
        for a, b in res.pairing:
            sub, _ = induced_subgraph(g, res.cover[a - 1] | res.cover[b - 1])
            if is_chordal(sub) is not None:
                return False, f"seed={cfg.seed}: clique pair {(a, b)} not chordal"
    return True, "200 instances within factor two, all clique pairs chordal"


def crit_chordal_machinery() -> tuple[bool, str]:
    for seed in range(200):
        n = 2 + seed % 11
        g = generate_chordal(n, 0.3 + 0.05 * (seed % 8), 60_000 + seed)
        if is_chordal(g) is not None:
            return False, f"seed={seed}: construction not chordal"
        col = chordal_color(g)
        if verify_coloring(g, col) is not None:
            return False, f"seed={seed}: improper greedy coloring"
        chi, _ = exact_chromatic(g)
        omega = clique_number(g)
        if not col.k == chi == omega:
            return False, f"seed={seed}: k={col.k} chi={chi} omega={omega}"
    return True, "200 chordal graphs colored optimally at the clique number"


def crit_wagon_bound() -> tuple[bool, str]:
    for seed in range(300):
        cfg = GeneratorConfig(
            n=4 + seed % 9, seed=70_000 + seed, p=0.3 + 0.06 * (seed % 7), cls="2p2-free"
        )
        g = generate(cfg)
        res = wagon_bound_check(g)
        if not res.ok:
            return False, f"seed={cfg.seed}: chi={res.chi} > bound={res.bound}"
    return True, "300 instances satisfy chi <= (omega+1 choose 2)"


def crit_fallback_justification() -> tuple[bool, str]:
    checked = 0
    for n in range(1, 8):
        for g in enumerate_class_members(n):
            if find_induced(g, "C5") is not None:
                continue
            if _find_odd_hole(g) is not None:
                return False, f"exhaustive n={n}: odd hole in a five-cycle-free member"
            col = color_fallback(g)
            if verify_coloring(g, col) is not None or col.k > 4:
                return False, f"exhaustive n={n}: fallback failed"
            checked += 1
    sampled = 0
    for seed in range(500):
        cfg = GeneratorConfig(
            n=8 + seed % 3, seed=10_000 + seed, p=0.25 + 0.05 * (seed % 6), method="incremental"
        )
        g = generate(cfg)
        if find_induced(g, "C5") is not None:
            continue
        if _find_odd_hole(g) is not None:
            return False, f"sampled seed={cfg.seed}: odd hole in a five-cycle-free member"
        col = color_fallback(g)
        if verify_coloring(g, col) is not None or col.k > 4:
            return False, f"sampled seed={cfg.seed}: fallback failed"
        sampled += 1
    return True, f"{checked} exhaustive + {sampled} sampled five-cycle-free members: no odd holes, fallback k<=4"


CRITERIA: tuple[tuple[str, str, Callable[[], tuple[bool, str]]], ...] = (
    ("A1", "extremal tightness", crit_extremal),
    ("A2", "pipeline soundness on 1000 members", crit_pipeline_soundness),
    ("A3", "oracle chromatic bound", crit_oracle_chi_bound),
    ("A4", "five-cycle partition properties", crit_c5_structure),
    ("A5", "ring and apex anchor properties", crit_anchor_structure),
    ("A6", "reduction preserves chromatic number", crit_reduction_chi),
    ("A7", "factor-two approximation", crit_approx_ratio),
    ("A8", "chordal coloring machinery", crit_chordal_machinery),
    ("A9", "Wagon bound", crit_wagon_bound),
    ("A10", "fallback justification", crit_fallback_justification),
)


def run_one(cid: str) -> CriterionResult:
    for c, desc, fn in CRITERIA:
        if c == cid:
            start = time.perf_counter()
            try:
                passed, detail = fn()
            except Exception as exc:  # surface crashes as failures, not aborts
                passed, detail = False, f"raised {exc!r}"
            return CriterionResult(c, desc, passed, detail, time.perf_counter() - start)
    raise KeyError(f"unknown criterion {cid!r}")


def run(only=None, out=None, porcelain: bool = False) -> list[CriterionResult]:
    out = out or sys.stdout
    wanted = [c for c, _, _ in CRITERIA] if not only else list(only)
    results = []
    for cid in wanted:
        res = run_one(cid)
        print(res.porcelain() if porcelain else res.line(), file=out, flush=True)
        results.append(res)
    if not porcelain:
        status = "all passed" if all(r.passed for r in results) else "FAILURES PRESENT"
        print(f"{len(results)} criteria: {status}", file=out)
    return results
