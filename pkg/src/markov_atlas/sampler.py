"""Random walk over a fiber using a fixed move set.

The walk is lazy Metropolis with a symmetric proposal: at each step pick
a (move, sign) pair uniformly and apply it iff the result stays
non-negative, otherwise stay put.  The uniform distribution on the
reachable set is stationary for this chain.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .graphs import Graph
from .lattice import Move, TableVector, as_move

RNG_ALGORITHM = "mt19937"


@dataclass(frozen=True)
class WalkConfig:
    steps: int
    burn_in: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.burn_in < 0:
            raise ValueError("burn-in must be >= 0")


@dataclass
class WalkResult:
    state: TableVector
    config: WalkConfig
    accepted: int
    proposed: int

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.proposed if self.proposed else 0.0

    def metadata(self) -> dict:
        return {
            "rng": RNG_ALGORITHM,
            "seed": self.config.seed,
            "steps": self.config.steps,
            "burn_in": self.config.burn_in,
            "proposed": self.proposed,
            "accepted": self.accepted,
            "acceptance_rate": self.acceptance_rate,
        }


def _checked_moves(g: Graph, moves: Sequence[Move]) -> List[TableVector]:
    vecs = []
    for mv in moves:
        vec = mv.vector if isinstance(mv, Move) else mv
        as_move(vec, g)  # raises NotKernelMove on bad input
        vecs.append(vec)
    return vecs


def walk_states(g: Graph, moves: Sequence[Move], z0: TableVector,
                cfg: WalkConfig) -> Iterator[TableVector]:
    """Yield the state after every step (burn-in steps included).

    The trajectory is a deterministic function of (moves order, z0, cfg).
    """
    if not z0.is_nonnegative():
        raise ValueError("initial table must be non-negative")
    vecs = _checked_moves(g, moves)
    rng = random.Random(cfg.seed)
    state = z0
    total = cfg.burn_in + cfg.steps
    for _ in range(total):
        if vecs:
            vec = vecs[rng.randrange(len(vecs))]
            if rng.randrange(2):
                vec = -vec
            candidate = state + vec
            if candidate.is_nonnegative():
                state = candidate
        yield state


def random_walk(g: Graph, moves: Sequence[Move], z0: TableVector,
                cfg: WalkConfig) -> WalkResult:
    """Run the walk and return the final state with acceptance metadata."""
    if not z0.is_nonnegative():
        raise ValueError("initial table must be non-negative")
    vecs = _checked_moves(g, moves)
    rng = random.Random(cfg.seed)
    state = z0
    accepted = 0
    proposed = 0
    total = cfg.burn_in + cfg.steps
    for _ in range(total):
        if not vecs:
            break
        proposed += 1
        vec = vecs[rng.randrange(len(vecs))]
        if rng.randrange(2):
            vec = -vec
        candidate = state + vec
        if candidate.is_nonnegative():
            state = candidate
            accepted += 1
    return WalkResult(state, cfg, accepted, proposed)


def visit_counts(g: Graph, moves: Sequence[Move], z0: TableVector,
                 cfg: WalkConfig) -> Dict[tuple, int]:
    """Histogram of post-burn-in states, keyed by TableVector.key()."""
    counts: Dict[tuple, int] = {}
    for i, state in enumerate(walk_states(g, moves, z0, cfg)):
        if i >= cfg.burn_in:
            counts[state.key()] = counts.get(state.key(), 0) + 1
    return counts
