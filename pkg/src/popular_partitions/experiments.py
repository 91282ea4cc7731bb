"""Replays the checkable claims about the reduced games on concrete formulas."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .io import format_rational, serialize_qdnf
from .model import Kind, Partition, partition_utility
from .popularity import _map, popularity_margin
from .qsat import QDnfInstance, assignments, certified_assignments, eval_dnf
from .reductions import (
    ReductionArtifact, Role, RoleKind as K, build_challenger, build_pistar,
    conformance_mismatches, extract_assignment, reduce,
)

MAX_LISTED_FAILURES = 20


@dataclass
class Check:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    # offending inputs, one dict per failure, enough to replay it
    failures: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {"name": self.name, "status": "pass" if self.passed else "fail", "details": self.details}
        if self.failures:
            out["failures"] = self.failures
        return out


@dataclass
class ExperimentReport:
    checks: list[Check]
    instance: dict
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self, include_timing: bool = False) -> dict:
        out = {"instance": self.instance, "checks": [c.as_dict() for c in self.checks]}
        if include_timing:
            out["timing"] = self.timing
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.as_dict(include_timing), indent=2, sort_keys=True) + "\n"

    def render(self) -> str:
        lines = []
        for c in self.checks:
            summary = ", ".join(f"{k}={v}" for k, v in c.details.items())
            lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {summary}")
            for f in c.failures:
                lines.append("    " + json.dumps(f, sort_keys=True))
        lines.append(f"overall: {'pass' if self.passed else 'fail'}")
        return "\n".join(lines) + "\n"


def _bits(tau) -> str:
    return "".join("1" if b else "0" for b in tau)


def _labels(p: Partition) -> list[int]:
    return list(p.labels())


def _check(name: str, failures: list[dict], **details) -> Check:
    return Check(name, not failures, details, failures[:MAX_LISTED_FAILURES])


def random_challenger(rng: random.Random, base: Partition) -> Partition:
    """Either a uniformly labelled partition or a few random moves away from ``base``."""
    n = base.n_agents
    if rng.random() < 0.5:
        k = rng.randint(1, n)
        return Partition.from_labels([rng.randrange(k) for _ in range(n)])
    labels = list(base.labels())
    for _ in range(rng.randint(1, 6)):
        a = rng.randrange(n)
        labels[a] = max(labels) + 1 if rng.random() < 0.3 else labels[rng.randrange(n)]
    return Partition.from_labels(labels)


def lemma_groups(artifact: ReductionArtifact) -> dict[str, list[list[int]]]:
    """Agent sets on which pistar never loses, whatever the challenger."""
    at = artifact.__getitem__
    n, m = artifact.params.n, artifact.params.m
    fhg = artifact.params.kind is Kind.FRACTIONAL
    y_kinds = (K.Y_LIT, K.Y_PRIME, K.Y_DOUBLE_PRIME) if fhg else (K.Y_LIT, K.Y_PRIME)
    x_kinds = (K.X_T, K.X_F, K.X_F_PRIME) if fhg else (K.X_T, K.X_F)
    groups = {
        "y-group-margin": [[at(Role(k, y, neg)) for k in y_kinds]
                           for y in range(n) for neg in (False, True)],
        "x-group-margin": [[at(Role(K.X_LIT, x, False)), at(Role(K.X_LIT, x, True))]
                           + [at(Role(k, x)) for k in x_kinds] for x in range(n)],
    }
    if fhg:
        groups["clause-star-margin"] = [
            [at(Role(K.CLAUSE, c)), at(Role(K.R, c))] + [at(Role(K.LEAF, c, leaf=i)) for i in range(1, 7)]
            for c in range(m)
        ]
    return groups


def role_census(kind: Kind, n: int, m: int) -> dict[str, int]:
    """Number of agents of each role that the constructions create."""
    if kind is Kind.ADDITIVELY_SEPARABLE:
        counts = {K.X_LIT: 2 * n, K.X_T: n, K.X_F: n, K.Y_LIT: 2 * n, K.Y_PRIME: 2 * n,
                  K.CLAUSE: m, K.C_PRIME: m - 1, K.T1: 2 * n + m, K.T2: 2 * n + m,
                  K.B1: 1, K.B2: 1}
    else:
        counts = {K.X_LIT: 2 * n, K.X_T: n, K.X_F: n, K.X_F_PRIME: n, K.Y_LIT: 2 * n,
                  K.Y_PRIME: 2 * n, K.Y_DOUBLE_PRIME: 2 * n, K.CLAUSE: m, K.R: m,
                  K.LEAF: 6 * m, K.J: 1, K.J_PRIME: 1, K.J_DOUBLE_PRIME: 1}
    return {k.value: v for k, v in counts.items()}


def _anchor_expectations(artifact: ReductionArtifact) -> list[tuple[str, list[int], Fraction]]:
    n, m = artifact.params.n, artifact.params.m
    if artifact.params.kind is Kind.ADDITIVELY_SEPARABLE:
        return [
            ("u_b1", [artifact[Role(K.B1)]], Fraction(2 * n + m)),
            ("u_c'", artifact.agents_of(K.C_PRIME), Fraction(m)),
        ]
    leaves6 = [artifact[Role(K.LEAF, c, leaf=6)] for c in range(m)]
    return [
        ("u_j", [artifact[Role(K.J)]], Fraction(2 * n + m - 1, 2 * n + m)),
        ("u_a_c", artifact.agents_of(K.CLAUSE), Fraction(1)),
        ("u_l6", leaves6, Fraction(3, 8)),
    ]


def lemma_suite(
    model: str,
    instance: QDnfInstance,
    seed: int = 0,
    samples: int = 1000,
    workers: int = 1,
    artifact: ReductionArtifact | None = None,
) -> ExperimentReport:
    """Run every structural and margin check on the reduction of ``instance``.

    ``samples`` random challengers are drawn per truth assignment of X for
    the group-margin checks.  Passing ``artifact`` audits a prebuilt (possibly
    tampered) game instead of a fresh reduction.
    """
    clock: dict[str, float] = {}

    def timed(key: str, fn: Callable):
        t0 = time.perf_counter()
        out = fn()
        clock[key] = time.perf_counter() - t0
        return out

    artifact = artifact or reduce(instance, model)
    game = artifact.game
    n, m = instance.n, instance.m
    kind = artifact.params.kind
    certified = certified_assignments(instance)
    all_tau = list(assignments(n))
    checks: list[Check] = []

    census = {k.value: len(artifact.agents_of(k)) for k in K if artifact.agents_of(k)}
    want = role_census(kind, n, m)
    checks.append(_check(
        "role-census",
        [{"role": r, "expected": want.get(r, 0), "actual": census.get(r, 0)}
         for r in sorted(set(want) | set(census)) if want.get(r, 0) != census.get(r, 0)],
        agents=game.n_agents, expected_agents=sum(want.values()),
    ))

    mismatches = timed("table-conformance", lambda: conformance_mismatches(artifact))
    checks.append(_check(
        "table-conformance",
        [{"cell": [mm.row, mm.col], "roles": [mm.row_role, mm.col_role],
          "expected": format_rational(mm.expected), "actual": format_rational(mm.actual)}
         for mm in mismatches],
        cells=game.n_agents * (game.n_agents - 1), mismatches=len(mismatches),
    ))

    if kind is Kind.FRACTIONAL:
        low = min(min(row) for row in game.valuations)
        checks.append(_check("nonnegativity", [] if low >= 0 else [{"min": format_rational(low)}],
                             min_value=format_rational(low)))

    pistars = {tau: build_pistar(artifact, tau) for tau in all_tau}

    anchor_fail, anchor_count = [], 0
    for tau, ps in pistars.items():
        if extract_assignment(artifact, ps) != tau:
            anchor_fail.append({"tau_x": _bits(tau), "what": "assignment round trip"})
        for label, agents, want in _anchor_expectations(artifact):
            for a in agents:
                anchor_count += 1
                got = partition_utility(game, ps, a)
                if got != want:
                    anchor_fail.append({"tau_x": _bits(tau), "agent": a, "anchor": label,
                                        "expected": format_rational(want), "actual": format_rational(got)})
    checks.append(_check("pistar-anchors", anchor_fail, values_checked=anchor_count))

    def dichotomy(tau_x):
        rows = []
        for tau_y in all_tau:
            ch = build_challenger(artifact, pistars[tau_x], tau_y)
            mg = popularity_margin(game, pistars[tau_x], ch)
            rows.append((tau_x, tau_y, eval_dnf(instance, tau_x, tau_y), mg.margin, ch))
        return rows

    results = [r for chunk in timed("challenger-dichotomy", lambda: _map(dichotomy, all_tau, workers))
               for r in chunk]
    size_s = 2 * n + m + 1
    d_fail, s_fail = [], []
    false_cases = certified_cases = 0
    j = artifact[Role(K.J)] if kind is Kind.FRACTIONAL else None
    anchor = j if j is not None else artifact[Role(K.B1)]
    for tau_x, tau_y, psi, margin, ch in results:
        ok = margin >= 0 if psi else margin == -1
        false_cases += not psi
        certified_cases += tau_x in certified
        if not ok:
            d_fail.append({"tau_x": _bits(tau_x), "tau_y": _bits(tau_y), "psi": psi,
                           "margin": margin, "challenger": _labels(ch)})
        new_block = ch.block_of(anchor)
        problems = []
        if len(new_block) != size_s:
            problems.append(f"|S|={len(new_block)}")
        if kind is Kind.FRACTIONAL:
            if partition_utility(game, ch, j) != Fraction(2 * n + m, 2 * n + m + 1):
                problems.append("u_j(challenger)")
            ys = artifact.agents_of(K.Y_LIT)
            if popularity_margin(game, pistars[tau_x], ch, ys).indifferent != len(ys):
                problems.append("Y agents not indifferent")
        if problems:
            s_fail.append({"tau_x": _bits(tau_x), "tau_y": _bits(tau_y), "problems": problems})
    checks.append(_check(
        "challenger-dichotomy", d_fail, cases=len(results), psi_false_cases=false_cases,
        certified_tau_x=[_bits(t) for t in certified], certified_cases=certified_cases,
    ))
    checks.append(_check("challenger-structure", s_fail, cases=len(results), coalition_size=size_s))

    groups = lemma_groups(artifact)

    def sample(idx_tau):
        idx, tau = idx_tau
        rng = random.Random(f"{seed}:{idx}")
        ps = pistars[tau]
        bad = {name: [] for name in groups}
        for s in range(samples):
            ch = random_challenger(rng, ps)
            for name, sets in groups.items():
                for g in sets:
                    if popularity_margin(game, ps, ch, g).margin < 0:
                        bad[name].append({"tau_x": _bits(tau), "seed": seed, "sample": s,
                                          "group": g, "challenger": _labels(ch)})
        return bad

    sampled = timed("group-margins", lambda: _map(sample, list(enumerate(all_tau)), workers))
    for name, sets in groups.items():
        fails = [f for bad in sampled for f in bad[name]]
        checks.append(_check(name, fails, groups=len(sets), samples=samples * len(all_tau)))

    summary = {"model": kind.value, "n": n, "m": m, "agents": game.n_agents,
               "formula": serialize_qdnf(instance).strip().splitlines(),
               "params": artifact.params.as_dict()}
    return ExperimentReport(checks, summary, clock)
