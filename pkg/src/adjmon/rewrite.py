"""The rewrite relation on words: redexes, steps, traces, normal forms.

Every redex is a two-letter factor.  The seven rule cases are:

    EpsEps            eps_i eps_j  ->  eps_{j-1} eps_i     (j > i)
    EtaEta            eta_j eta_i  ->  eta_i eta_{j-1}     (j > i)
    EpsEta_JGtIPlus1  eps_i eta_j  ->  eta_{j-1} eps_i     (j > i+1)
    EpsEta_IGtJ       eps_i eta_j  ->  eta_j eps_{i-1}     (i > j)
    EpsEta_IEqJPos    eps_i eta_i  ->  eps_{i-1} eta_i     (i > 0)
    EpsEta_JEqIPlus1  eps_i eta_{i+1}  ->  eps_i eta_i
    EpsEta_Zero       eps_0 eta_0  ->  1

The five eps-eta conditions partition all index pairs, so each factor
matches at most one rule.  Every step lowers ``degree`` by exactly 1
(EpsEta_Zero: by 2), which bounds all reduction sequences.  A word is
normal iff it is an eta block with non-decreasing indices followed by an
eps block with non-increasing indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import pairwise

from .words import EPS, ETA, Generator, Word, eps, eta


class RuleCase(str, Enum):
    EPS_EPS = "EpsEps"
    ETA_ETA = "EtaEta"
    EPS_ETA_FAR = "EpsEta_JGtIPlus1"
    EPS_ETA_PAST = "EpsEta_IGtJ"
    EPS_ETA_EQUAL = "EpsEta_IEqJPos"
    EPS_ETA_NEXT = "EpsEta_JEqIPlus1"
    EPS_ETA_ZERO = "EpsEta_Zero"

    def __str__(self) -> str:  # tag as it appears in traces and reports
        return self.value


@dataclass(frozen=True)
class RuleInstance:
    """A concrete two-letter left-hand side and its right-hand side."""

    case: RuleCase
    lhs: Word
    rhs: Word


def match_rule(x: Generator, y: Generator) -> RuleInstance | None:
    """The unique rule whose left-hand side is the factor ``x y``, if any."""
    if x.kind == EPS:
        i = x.index
        if y.kind == EPS:
            j = y.index
            if j > i:
                return RuleInstance(RuleCase.EPS_EPS, (x, y), (eps(j - 1), eps(i)))
            return None
        j = y.index
        if j > i + 1:
            return RuleInstance(RuleCase.EPS_ETA_FAR, (x, y), (eta(j - 1), eps(i)))
        if i > j:
            return RuleInstance(RuleCase.EPS_ETA_PAST, (x, y), (eta(j), eps(i - 1)))
        if i == j:
            if i == 0:
                return RuleInstance(RuleCase.EPS_ETA_ZERO, (x, y), ())
            return RuleInstance(RuleCase.EPS_ETA_EQUAL, (x, y), (eps(i - 1), eta(i)))
        # j == i + 1
        return RuleInstance(RuleCase.EPS_ETA_NEXT, (x, y), (eps(i), eta(i)))
    if y.kind == ETA:
        j, i = x.index, y.index
        if j > i:
            return RuleInstance(RuleCase.ETA_ETA, (x, y), (eta(i), eta(j - 1)))
        return None
    return None  # an eta followed by an eps is never a redex


def redexes(w: Word) -> list[tuple[int, RuleInstance]]:
    """All redex positions of w with their rule instances, left to right."""
    out = []
    for p in range(len(w) - 1):
        rule = match_rule(w[p], w[p + 1])
        if rule is not None:
            out.append((p, rule))
    return out


class NotARedexError(ValueError):
    pass


def apply(w: Word, position: int) -> Word:
    """Rewrite the two-letter factor at ``position``; degree drops."""
    if not 0 <= position <= len(w) - 2:
        raise NotARedexError(f"position {position} out of range for a word of length {len(w)}")
    rule = match_rule(w[position], w[position + 1])
    if rule is None:
        raise NotARedexError(f"no rule matches at position {position}")
    return w[:position] + rule.rhs + w[position + 2 :]


@dataclass(frozen=True)
class Step:
    position: int
    rule: RuleInstance
    before: Word
    after: Word


@dataclass(frozen=True)
class Trace:
    """A reduction sequence; each step starts where the previous ended."""

    start: Word
    steps: tuple[Step, ...]

    @property
    def end(self) -> Word:
        return self.steps[-1].after if self.steps else self.start


def normalize(w: Word) -> Word:
    """Reduce the leftmost redex until none remains.

    After a rewrite at p the leftmost redex of the result is at p-1 or
    later, so the scan resumes there instead of from the front.
    """
    letters = list(w)
    p = 0
    while p < len(letters) - 1:
        rule = match_rule(letters[p], letters[p + 1])
        if rule is None:
            p += 1
        else:
            letters[p : p + 2] = rule.rhs
            p = max(p - 1, 0)
    return tuple(letters)


def normalize_trace(w: Word) -> Trace:
    """Like :func:`normalize` but recording every step."""
    steps: list[Step] = []
    letters = list(w)
    p = 0
    while p < len(letters) - 1:
        rule = match_rule(letters[p], letters[p + 1])
        if rule is None:
            p += 1
            continue
        before = tuple(letters)
        letters[p : p + 2] = rule.rhs
        steps.append(Step(p, rule, before, tuple(letters)))
        p = max(p - 1, 0)
    return Trace(w, tuple(steps))


def is_normal(w: Word) -> bool:
    """True iff w contains no redex."""
    return all(match_rule(x, y) is None for x, y in pairwise(w))


def is_canonical_shape(w: Word) -> bool:
    """Shape test for normal forms, independent of the rule table:
    an eta block with non-decreasing indices, then an eps block with
    non-increasing indices.
    """
    split = len(w)
    for p, g in enumerate(w):
        if g.kind == EPS:
            split = p
            break
    etas, epss = w[:split], w[split:]
    if any(g.kind != EPS for g in epss):
        return False
    if any(a.index > b.index for a, b in pairwise(etas)):
        return False
    return all(a.index >= b.index for a, b in pairwise(epss))


@dataclass(frozen=True)
class ReductionGraph:
    """All words reachable from ``root`` by single steps (nodes deduplicated)."""

    root: Word
    successors: dict[Word, tuple[Word, ...]]

    @property
    def nodes(self) -> set[Word]:
        return set(self.successors)

    @property
    def edges(self) -> set[tuple[Word, Word]]:
        return {(u, v) for u, vs in self.successors.items() for v in vs}

    @property
    def sinks(self) -> set[Word]:
        return {u for u, vs in self.successors.items() if not vs}

    def longest_chain(self) -> int:
        """Length of the longest reduction sequence from the root."""
        depth: dict[Word, int] = {}

        def visit(u: Word) -> int:
            if u not in depth:
                vs = self.successors[u]
                depth[u] = 1 + max(map(visit, vs)) if vs else 0
            return depth[u]

        return visit(self.root)


def reduction_graph(w: Word) -> ReductionGraph:
    """Exhaustive expansion of every reduction from w (finite: degree drops)."""
    successors: dict[Word, tuple[Word, ...]] = {}
    queue = deque([w])
    while queue:
        u = queue.popleft()
        if u in successors:
            continue
        nexts: list[Word] = []
        for p, rule in redexes(u):
            v = u[:p] + rule.rhs + u[p + 2 :]
            if v not in nexts:
                nexts.append(v)
        successors[u] = tuple(nexts)
        queue.extend(v for v in nexts if v not in successors)
    return ReductionGraph(w, successors)
