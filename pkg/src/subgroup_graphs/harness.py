"""Seeded randomized property harness producing a deterministic JSON report."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .compression import COMPRESSED, NOT_COMPRESSED, best_transversal, brute_force_transversal_count, is_compressed
from .core_graph import Alphabet, LabeledGraph, core, gauss_bonnet_check, rank, reduced_rank
from .echelon import generalized_echelon_certificate
from .essential import DEFAULT_EDGE_CAP, injective_maximal_essential, is_essential_set
from .generators import random_core_graph, random_generators, random_subgroup_graph
from .inertness import CERTIFIED, certify_inert
from .io import dumps, graph_to_dict
from .ordering import verify_bridge_certificate
from .pullback import bound_report, fiber_product, intersection_rank
from .stallings import canonical_bytes, fold_all, fold_all_stepwise, wedge_of_cycles

SCHEMA_VERSION = 1

SUITES = (
    "bounds",
    "compressed-pool",
    "echelon-soundness",
    "essential-injectivity",
    "folding-confluence",
    "inert-soundness",
)
# suites whose violations contradict a theorem (or a construction guarantee)
THEOREM_SUITES = frozenset(SUITES)


@dataclass
class HarnessConfig:
    seed: int = 0
    trials: int = 100
    max_edges: int = 8
    alphabet_size: int = 2
    suites: tuple = SUITES
    opponents: int = 20

    def validate(self):
        if self.trials < 0 or self.max_edges < 1 or self.alphabet_size < 1 or self.opponents < 0:
            raise ValueError("trials, opponents must be >= 0; max_edges, alphabet_size >= 1")
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ValueError(f"unknown suites: {sorted(unknown)}")


@dataclass
class SuiteTally:
    counters: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    def bump(self, key: str, by: int = 1):
        self.counters[key] = self.counters.get(key, 0) + by

    def as_dict(self) -> dict:
        return {
            "counters": dict(sorted(self.counters.items())),
            "violations": self.violations,
            "witnesses": self.witnesses,
        }


def _gb(g: LabeledGraph, tally: SuiteTally):
    """Combinatorial Gauss-Bonnet, asserted on every graph the harness builds."""
    tally.bump("gauss_bonnet_checks")
    if not gauss_bonnet_check(g):
        raise AssertionError(f"Gauss-Bonnet fails on {dumps(graph_to_dict(g))}")


def _opponent(rng: random.Random, alphabet: Alphabet, tally: SuiteTally) -> LabeledGraph:
    k = random_subgroup_graph(rng, alphabet)
    _gb(k, tally)
    return k


def _check_against_opponents(h, rng, cfg, tally, tag):
    for _ in range(cfg.opponents):
        k = _opponent(rng, h.alphabet, tally)
        ri, rk = intersection_rank(h, k), rank(k)
        tally.bump("comparisons")
        if ri > rk:
            tally.violations.append({"kind": tag, "h": graph_to_dict(h), "k": graph_to_dict(k),
                                     "rank_intersection": ri, "rank_k": rk})


def suite_folding_confluence(rng, cfg, tally):
    alphabet = Alphabet.standard(cfg.alphabet_size)
    for _ in range(cfg.trials):
        gens = random_generators(rng, alphabet.size, 4, 6)
        w = wedge_of_cycles(gens, alphabet)
        _gb(w, tally)
        a = fold_all(w)
        b, events = fold_all_stepwise(w, random.Random(rng.random()))
        _gb(a, tally)
        _gb(b, tally)
        tally.bump("trials")
        tally.bump("fold_events", len(events))
        if canonical_bytes(a) != canonical_bytes(b):
            tally.violations.append({"kind": "fold_order_dependence",
                                     "gens": [w_.format(alphabet) for w_ in gens]})


def suite_bounds(rng, cfg, tally):
    alphabet = Alphabet.standard(cfg.alphabet_size)
    for _ in range(cfg.trials):
        h = random_subgroup_graph(rng, alphabet)
        k = random_subgroup_graph(rng, alphabet)
        _gb(h, tally)
        _gb(k, tally)
        _gb(fiber_product(h, k).graph, tally)
        rep = bound_report(h, k)
        tally.bump("trials")
        if rep.actual:
            tally.bump("nontrivial_intersections")
        if not rep.all_satisfied:
            tally.violations.append({"kind": "bound", "h": graph_to_dict(h), "k": graph_to_dict(k),
                                     "report": rep.as_dict()})


def _inert_candidate(rng, alphabet, cfg):
    if rng.random() < 0.5:
        return random_subgroup_graph(rng, alphabet)
    return random_core_graph(rng, alphabet, max_edges=cfg.max_edges)


def suite_inert_soundness(rng, cfg, tally):
    alphabet = Alphabet.standard(cfg.alphabet_size)
    for _ in range(cfg.trials):
        h = _inert_candidate(rng, alphabet, cfg)
        tally.bump("trials")
        if h is None:
            continue
        _gb(h, tally)
        if certify_inert(h).status != CERTIFIED:
            continue
        tally.bump("certified")
        _check_against_opponents(h, rng, cfg, tally, "certified_inert_exceeded")


def _pool_core(rng, alphabet, cfg, cap):
    h = random_core_graph(rng, alphabet, max_edges=min(cfg.max_edges, cap), min_rank=2)
    return h


def suite_echelon_soundness(rng, cfg, tally):
    alphabet = Alphabet.standard(cfg.alphabet_size)
    for _ in range(cfg.trials):
        h = _pool_core(rng, alphabet, cfg, DEFAULT_EDGE_CAP)
        tally.bump("trials")
        if h is None:
            continue
        _gb(h, tally)
        cert = generalized_echelon_certificate(h)
        if rank(h) == 2:
            tally.bump("rank_two")
            if cert is None:
                tally.violations.append({"kind": "rank_two_without_certificate", "h": graph_to_dict(h)})
        if cert is None:
            continue
        tally.bump("certified")
        if not verify_bridge_certificate(h, cert):
            tally.violations.append({"kind": "bridge_certificate", "h": graph_to_dict(h)})
        _check_against_opponents(h, rng, cfg, tally, "generalized_echelon_exceeded")


def _compressed_sample(rng, alphabet, cfg, tally):
    h = random_core_graph(rng, alphabet, max_edges=min(cfg.max_edges, 8), min_rank=2)
    if h is None:
        return None, None
    _gb(h, tally)
    v = is_compressed(h, budget_edges=8)
    tally.bump(v.status)
    if v.status == NOT_COMPRESSED:
        _gb(v.witness.target, tally)
        if not v.witness.verify():
            tally.violations.append({"kind": "bad_quotient_witness", "h": graph_to_dict(h)})
    return h, v


def suite_compressed_pool(rng, cfg, tally):
    alphabet = Alphabet.standard(cfg.alphabet_size)
    for _ in range(cfg.trials):
        h, v = _compressed_sample(rng, alphabet, cfg, tally)
        tally.bump("trials")
        if h is None or v.status != COMPRESSED:
            continue
        _, count = best_transversal(h)
        if count != brute_force_transversal_count(h):
            tally.violations.append({"kind": "transversal_search", "h": graph_to_dict(h)})
        if rank(h) > 1 and count < rank(h):
            tally.violations.append({"kind": "transversal_below_rank", "h": graph_to_dict(h),
                                     "labels": count, "rank": rank(h)})


def suite_essential_injectivity(rng, cfg, tally):
    alphabet = Alphabet.standard(cfg.alphabet_size)
    for _ in range(cfg.trials):
        h, v = _compressed_sample(rng, alphabet, cfg, tally)
        tally.bump("trials")
        if h is None:
            continue
        # both essential-set algorithms on a few random subsets; disagreement raises
        ids = [e.id for e in h.edges]
        for _ in range(4):
            subset = [e for e in ids if rng.random() < 0.3]
            is_essential_set(h, subset)
            tally.bump("subset_checks")
        if v.status != COMPRESSED:
            continue
        if injective_maximal_essential(h) is None:
            tally.violations.append({"kind": "no_injective_essential_set", "h": graph_to_dict(h)})


RUNNERS: dict = {
    "bounds": suite_bounds,
    "compressed-pool": suite_compressed_pool,
    "echelon-soundness": suite_echelon_soundness,
    "essential-injectivity": suite_essential_injectivity,
    "folding-confluence": suite_folding_confluence,
    "inert-soundness": suite_inert_soundness,
}


def run_harness(cfg: HarnessConfig) -> dict:
    """Run the selected suites; each gets its own generator derived from the seed and suite name."""
    cfg.validate()
    suites = {}
    for name in sorted(set(cfg.suites)):
        tally = SuiteTally()
        if cfg.trials:
            RUNNERS[name](random.Random(f"{cfg.seed}:{name}"), cfg, tally)
        suites[name] = tally.as_dict()
    return {
        "schema_version": SCHEMA_VERSION,
        "config": {"seed": cfg.seed, "trials": cfg.trials, "max_edges": cfg.max_edges,
                   "alphabet_size": cfg.alphabet_size, "opponents": cfg.opponents,
                   "suites": sorted(set(cfg.suites))},
        "suites": suites,
        "total_violations": sum(len(s["violations"]) for s in suites.values()),
    }


def report_bytes(report: dict) -> bytes:
    return (dumps(report) + "\n").encode()
