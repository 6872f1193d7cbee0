"""
Channel assignment solver.

Covering the complete graph K_n with bicliques is the planning problem: each
conjugate pair k is one biclique, its +k holders on one side and its -k
holders on the other. Split pairs allow up to four users per side, unsplit
pairs exactly one.

Two strategies are used:
    - exact branch-and-bound for small networks (n <= exact_limit), minimising
      (max channel copies per user, conjugate pairs used) lexicographically
    - a group construction for larger networks, tightened by a seeded local
      search

Usage:
    assignment = solve_assignment(users, conjugate_pairs(grid, excluded=[3]))
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from src.core.grid import (
    DEFAULT_GRID,
    ConjugatePair,
    GridConfig,
    LogicalChannel,
    conjugate_pairs,
    validate_lc,
)
from src.core.topology.links import verify_full_mesh
from src.core.topology.models import SPLIT_FANOUT, ChannelAssignment, Grant, Link, User

LOGGER = logging.getLogger(__name__)

DEFAULT_EXACT_LIMIT = 5
MAX_SEARCH_ROUNDS = 200

Block = Tuple[FrozenSet[str], FrozenSet[str]]
Edge = Tuple[str, str]


class InfeasibleAssignmentError(RuntimeError):
    """No full-mesh assignment fits the available conjugate pairs."""

    def __init__(self, message: str, uncovered: Sequence[Link], partial: ChannelAssignment):
        super().__init__(message)
        self.uncovered = sorted(uncovered)
        self.partial = partial


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _user_ids(users: Iterable[Union[User, str]]) -> List[str]:
    ids = [u.id if isinstance(u, User) else str(u) for u in users]
    if len(set(ids)) != len(ids):
        raise ValueError("Duplicate user ids in solver input")
    return sorted(ids)


def _all_edges(ids: Sequence[str]) -> Set[Edge]:
    return set(itertools.combinations(sorted(ids), 2))


def _block_edges(block: Block) -> Set[Edge]:
    plus, minus = block
    return {(a, b) if a < b else (b, a) for a in plus for b in minus if a != b}


def _is_multi(block: Block) -> bool:
    return len(block[0]) > 1 or len(block[1]) > 1


def _covered(blocks: Sequence[Block]) -> Set[Edge]:
    edges: Set[Edge] = set()
    for block in blocks:
        edges |= _block_edges(block)
    return edges


def _degrees(blocks: Sequence[Block], ids: Sequence[str]) -> Dict[str, int]:
    degree = {u: 0 for u in ids}
    for plus, minus in blocks:
        for u in plus | minus:
            degree[u] += 1
    return degree


def _objective_key(blocks: Sequence[Block], ids: Sequence[str]) -> Tuple[int, int, int]:
    degree = _degrees(blocks, ids)
    return max(degree.values(), default=0), len(blocks), sum(degree.values())


def _block_sort_key(block: Block) -> Tuple[int, Tuple[str, ...], Tuple[str, ...]]:
    plus, minus = block
    return -(len(plus) * len(minus)), tuple(sorted(plus)), tuple(sorted(minus))


def _split_available(
    grid: GridConfig,
    available: Optional[Iterable[ConjugatePair]],
    excluded: Optional[Iterable[Union[LogicalChannel, int]]],
) -> Tuple[List[int], List[int]]:
    """Usable pair indices, as (split, unsplit) lists sorted by k."""
    allowed = {p.k for p in conjugate_pairs(grid, excluded=excluded)}
    if available is not None:
        requested = set()
        for pair in available:
            k = pair.k if isinstance(pair, ConjugatePair) else abs(int(pair))
            validate_lc(k, grid)
            requested.add(k)
        allowed &= requested
    split = sorted(k for k in allowed if k >= grid.split_threshold)
    unsplit = sorted(k for k in allowed if k < grid.split_threshold)
    return split, unsplit


# ---------------------------------------------------------------------------
# Exact search
# ---------------------------------------------------------------------------


class _ExactSearch:
    """Depth-first search for the fewest blocks with at most ``max_copies`` per user."""

    def __init__(self, n: int, max_copies: int, n_split: int, max_blocks: int):
        self.n = n
        self.max_copies = max_copies
        self.n_split = n_split
        self.best: Optional[List[Tuple[FrozenSet[int], FrozenSet[int]]]] = None
        self.best_size = max_blocks + 1
        self.nodes = 0
        self._multi_cover = max(
            (p * min(SPLIT_FANOUT, n - p) for p in range(1, min(SPLIT_FANOUT, n - 1) + 1)),
            default=1,
        )

    def run(self) -> Optional[List[Tuple[FrozenSet[int], FrozenSet[int]]]]:
        uncovered = frozenset(itertools.combinations(range(self.n), 2))
        self._dfs(uncovered, [0] * self.n, [], 0)
        return self.best

    def _lower_bound(self, uncovered: FrozenSet[Tuple[int, int]], n_multi: int) -> int:
        cover = self._multi_cover if n_multi < self.n_split else 1
        return math.ceil(len(uncovered) / cover)

    def _dfs(self, uncovered, degree, blocks, n_multi) -> None:
        self.nodes += 1
        if not uncovered:
            if len(blocks) < self.best_size:
                self.best = list(blocks)
                self.best_size = len(blocks)
            return
        if len(blocks) + self._lower_bound(uncovered, n_multi) >= self.best_size:
            return

        pending = [0] * self.n
        for a, b in uncovered:
            pending[a] += 1
            pending[b] += 1
        for x in range(self.n):
            reach = min(SPLIT_FANOUT, self.n - 1)
            if pending[x] and math.ceil(pending[x] / reach) > self.max_copies - degree[x]:
                return

        u, v = min(uncovered)
        for plus, minus, newly in self._candidates(u, v, uncovered, degree, n_multi):
            multi = len(plus) > 1 or len(minus) > 1
            for x in plus | minus:
                degree[x] += 1
            blocks.append((plus, minus))
            self._dfs(uncovered - newly, degree, blocks, n_multi + int(multi))
            blocks.pop()
            for x in plus | minus:
                degree[x] -= 1

    def _candidates(self, u, v, uncovered, degree, n_multi):
        others = [x for x in range(self.n) if x not in (u, v) and degree[x] < self.max_copies]
        options = []
        for placement in itertools.product((0, 1, 2), repeat=len(others)):
            plus = {u} | {x for x, side in zip(others, placement) if side == 1}
            minus = {v} | {x for x, side in zip(others, placement) if side == 2}
            if len(plus) > SPLIT_FANOUT or len(minus) > SPLIT_FANOUT:
                continue
            if (len(plus) > 1 or len(minus) > 1) and n_multi >= self.n_split:
                continue
            newly = frozenset(
                e for e in uncovered
                if (e[0] in plus and e[1] in minus) or (e[0] in minus and e[1] in plus)
            )
            # A member adding no new link is dominated by the block without it
            touched = {x for e in newly for x in e}
            if touched != plus | minus:
                continue
            options.append((frozenset(plus), frozenset(minus), newly))
        options.sort(key=lambda o: (-len(o[2]), sorted(o[0]), sorted(o[1])))
        return options


def _exact_blocks(ids: Sequence[str], n_split: int, n_unsplit: int) -> Optional[List[Block]]:
    n = len(ids)
    if n < 2:
        return []
    if n_split + n_unsplit == 0:
        return None
    for max_copies in range(1, n):
        search = _ExactSearch(n, max_copies, n_split, n_split + n_unsplit)
        found = search.run()
        LOGGER.debug(
            "Exact search with <= %d copies per user: %d nodes, %s",
            max_copies, search.nodes, "found" if found is not None else "infeasible",
        )
        if found is not None:
            return [
                (frozenset(ids[i] for i in plus), frozenset(ids[i] for i in minus))
                for plus, minus in found
            ]
    return None


# ---------------------------------------------------------------------------
# Group construction and local search
# ---------------------------------------------------------------------------


def _group_blocks(ids: Sequence[str]) -> List[Block]:
    """Cover K_n with inter-group bicliques plus bit-level splits inside each group."""
    groups = [list(ids[i:i + SPLIT_FANOUT]) for i in range(0, len(ids), SPLIT_FANOUT)]

    inter = [
        (frozenset(groups[i]), frozenset(groups[j]))
        for i, j in itertools.combinations(range(len(groups)), 2)
    ]

    # intra[level] holds one block per group at that bit level
    intra: Dict[int, List[Block]] = {}
    for group in groups:
        levels = math.ceil(math.log2(len(group))) if len(group) > 1 else 0
        for level in range(levels):
            plus = frozenset(u for i, u in enumerate(group) if not (i >> level) & 1)
            minus = frozenset(u for i, u in enumerate(group) if (i >> level) & 1)
            if plus and minus:
                intra.setdefault(level, []).append((plus, minus))

    return inter + _pack(block for level in sorted(intra) for block in intra[level])


def _pack(blocks: Iterable[Block]) -> List[Block]:
    """First-fit packing of disjoint bicliques into shared pairs."""
    packed: List[Block] = []
    for plus, minus in blocks:
        for i, (p, m) in enumerate(packed):
            members = p | m
            if plus & members or minus & members:
                continue
            if len(p | plus) <= SPLIT_FANOUT and len(m | minus) <= SPLIT_FANOUT:
                packed[i] = (p | plus, m | minus)
                break
        else:
            packed.append((plus, minus))
    return packed


def _greedy_patch(blocks: List[Block], ids: Sequence[str]) -> List[Block]:
    """Cover anything still missing with one single-link block per edge."""
    missing = sorted(_all_edges(ids) - _covered(blocks))
    return blocks + [(frozenset([a]), frozenset([b])) for a, b in missing]


def _moves(blocks: List[Block], ids: Sequence[str]) -> Iterable[List[Block]]:
    degree = _degrees(blocks, ids)
    heaviest = max(degree.values(), default=0)

    for i in range(len(blocks)):
        yield blocks[:i] + blocks[i + 1:]

    for i, (plus, minus) in enumerate(blocks):
        for user in sorted(plus | minus):
            reduced = (plus - {user}, minus - {user})
            if reduced[0] and reduced[1]:
                yield blocks[:i] + [reduced] + blocks[i + 1:]

    for i, j in itertools.combinations(range(len(blocks)), 2):
        (p1, m1), (p2, m2) = blocks[i], blocks[j]
        for p2x, m2x in ((p2, m2), (m2, p2)):
            plus, minus = p1 | p2x, m1 | m2x
            if plus & minus or len(plus) > SPLIT_FANOUT or len(minus) > SPLIT_FANOUT:
                continue
            rest = [b for k, b in enumerate(blocks) if k not in (i, j)]
            yield rest + [(plus, minus)]

    for i, (plus, minus) in enumerate(blocks):
        members = plus | minus
        for user in sorted(u for u in members if degree[u] == heaviest):
            for other in ids:
                if other in members or degree[other] >= heaviest - 1:
                    continue
                if user in plus:
                    swapped = ((plus - {user}) | {other}, minus)
                else:
                    swapped = (plus, (minus - {user}) | {other})
                yield blocks[:i] + [swapped] + blocks[i + 1:]


def _local_search(
    blocks: List[Block], ids: Sequence[str], n_split: int, capacity: int, rng: random.Random
) -> List[Block]:
    target = _all_edges(ids)
    current = list(blocks)
    current_key = _objective_key(current, ids)
    for _ in range(MAX_SEARCH_ROUNDS):
        candidates = list(_moves(current, ids))
        rng.shuffle(candidates)
        for candidate in candidates:
            if sum(_is_multi(b) for b in candidate) > n_split or len(candidate) > capacity:
                continue
            key = _objective_key(candidate, ids)
            if key < current_key and _covered(candidate) >= target:
                current, current_key = candidate, key
                break
        else:
            break
    return current


# ---------------------------------------------------------------------------
# Labelling
# ---------------------------------------------------------------------------


def _label(
    blocks: Sequence[Block], split: Sequence[int], unsplit: Sequence[int], grid: GridConfig
) -> Tuple[ChannelAssignment, List[Block]]:
    """
    Give each block a conjugate pair.

    Multi-user blocks take split pairs, lowest |k| first; single-link blocks
    take unsplit pairs first, then the remaining split pairs.

    Returns:
        The assignment and the blocks that did not fit
    """
    multi = sorted((b for b in blocks if _is_multi(b)), key=_block_sort_key)
    single = sorted((b for b in blocks if not _is_multi(b)), key=_block_sort_key)

    free_split = list(split)
    free_unsplit = list(unsplit)
    pairs: Dict[int, Block] = {}
    leftover: List[Block] = []

    for block in multi:
        if free_split:
            pairs[free_split.pop(0)] = block
        else:
            leftover.append(block)
    for block in single:
        if free_unsplit:
            pairs[free_unsplit.pop(0)] = block
        elif free_split:
            pairs[free_split.pop(0)] = block
        else:
            leftover.append(block)

    assignment = ChannelAssignment.from_pairs(
        {k: (sorted(plus), sorted(minus)) for k, (plus, minus) in pairs.items()}, grid
    )
    return assignment, leftover


def exact_assignment(
    users: Sequence[Union[User, str]],
    available: Optional[Iterable[ConjugatePair]] = None,
    excluded: Optional[Iterable[Union[LogicalChannel, int]]] = None,
    grid: GridConfig = DEFAULT_GRID,
) -> ChannelAssignment:
    """
    Optimal assignment by branch-and-bound.

    Only practical for a handful of users; raises InfeasibleAssignmentError
    when no full mesh fits the available pairs.
    """
    ids = _user_ids(users)
    split, unsplit = _split_available(grid, available, excluded)
    blocks = _exact_blocks(ids, len(split), len(unsplit))
    if blocks is None:
        missing = [Link(a, b) for a, b in sorted(_all_edges(ids))]
        raise InfeasibleAssignmentError(
            f"No full mesh of {len(ids)} users fits {len(split)} split and "
            f"{len(unsplit)} unsplit pairs",
            uncovered=missing,
            partial=ChannelAssignment((), grid),
        )
    assignment, leftover = _label(blocks, split, unsplit, grid)
    if leftover:
        raise AssertionError("exact search exceeded pair capacity")
    return assignment


def solve_assignment(
    users: Sequence[Union[User, str]],
    available: Optional[Iterable[ConjugatePair]] = None,
    excluded: Optional[Iterable[Union[LogicalChannel, int]]] = None,
    grid: GridConfig = DEFAULT_GRID,
    seed: int = 0,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
) -> ChannelAssignment:
    """
    Find a full-mesh channel assignment using as few channels as possible.

    Args:
        users: Network users, active or not; every one is planned for
        available: Conjugate pairs that may be used (default: whole grid)
        excluded: Logical channels withheld from users, e.g. a reference channel
        grid: Grid extent and split rule
        seed: Seed of the local search
        exact_limit: Largest network solved by exact search

    Returns:
        A verified ChannelAssignment

    Raises:
        InfeasibleAssignmentError: With the uncovered links and the best
            partial assignment
    """
    ids = _user_ids(users)
    split, unsplit = _split_available(grid, available, excluded)
    LOGGER.info(
        "Planning %d users on %d split and %d unsplit pairs", len(ids), len(split), len(unsplit)
    )
    if len(ids) < 2:
        return ChannelAssignment((), grid)

    if len(ids) <= exact_limit:
        exact = _exact_blocks(ids, len(split), len(unsplit))
        if exact is not None:
            assignment, _ = _label(exact, split, unsplit, grid)
            LOGGER.info("Exact plan: objective %s", assignment.objective())
            return assignment
        LOGGER.info("Exact search found no full mesh, building best partial plan")

    blocks = _group_blocks(ids)
    if not split:
        blocks = [(frozenset([a]), frozenset([b])) for a, b in sorted(_all_edges(ids))]
    blocks = _greedy_patch(blocks, ids)
    blocks = _local_search(
        blocks, ids, len(split), len(split) + len(unsplit), random.Random(seed)
    )
    assignment, leftover = _label(blocks, split, unsplit, grid)

    report = verify_full_mesh(assignment, ids)
    if not report.passed:
        LOGGER.warning("Plan infeasible: %s", report.summary())
        raise InfeasibleAssignmentError(
            f"Cannot cover {len(report.missing)} of {report.expected} links with the "
            f"available pairs ({len(leftover)} bicliques left without a pair)",
            uncovered=report.missing,
            partial=assignment,
        )
    LOGGER.info("Constructed plan: objective %s", assignment.objective())
    return assignment
