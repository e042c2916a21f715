"""Maze-game episode simulator with scripted and random agents.

Both game versions put the player in a small grid maze holding a key and
a single-use explosive.  In version 1 the only way to win is to blast
the rock blocking the door chamber and open the door with the key.
Version 2 adds a coin chamber behind a second rock, so the single-use
explosive forces a choice between winning by door or by coin.

An episode is recorded as a raw move log and reduced to an event
sequence over e1..e10 (version 1) or e1..e12 (version 2):

    e1  collect key          e7   failed explosive use (bump rock empty-handed)
    e2  collect explosive    e8   failed key use (bump door without key)
    e3  key never collected  e9   win by opening door
    e4  explosive never collected   e10  episode lost (step cap)
    e5  blast rock           e11  collect coin (version 2)
    e6  open door            e12  win by coin (version 2)

e3/e4 and the outcome marker are appended at episode end, outcome last.
corrupt() mutates a seeded fraction of recorded episodes (one swap,
delete, or insert each) for robustness experiments.
"""

from __future__ import annotations

import hashlib
import math
import random
from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidPolicy
from .sequences import EventSequence
from .graphs import LabelTable

V1_EVENTS = LabelTable(tuple(f"e{i}" for i in range(1, 11)))
V2_EVENTS = LabelTable(tuple(f"e{i}" for i in range(1, 13)))

# Map legend: '#' wall, '.' floor, 'R' rock, 'K' key, 'E' explosive,
# 'D' door, 'C' coin, 'S' start.
V1_GRID = (
    "######",
    "#.#.K#",
    "#DR.S#",
    "#.#.E#",
    "######",
)

V2_GRID = (
    "#########",
    "#.#.K.#.#",
    "#DR.S.RC#",
    "#.#.E.#.#",
    "#########",
)

# Fixed scan order keeps breadth-first paths deterministic.
DIRECTIONS = ((0, -1), (0, 1), (-1, 0), (1, 0))
_DIRECTION_NAMES = {(0, -1): "north", (0, 1): "south", (-1, 0): "west", (1, 0): "east"}

_EVENT_CODES = {
    ("collect", "key"): "e1",
    ("collect", "explosive"): "e2",
    ("end", "key_missing"): "e3",
    ("end", "explosive_missing"): "e4",
    ("use_explosive", "rock"): "e5",
    ("use_key", "door"): "e6",
    ("fail_use", "explosive"): "e7",
    ("fail_use", "key"): "e8",
    ("end", "win_door"): "e9",
    ("end", "lose"): "e10",
    ("collect", "coin"): "e11",
    ("end", "win_coin"): "e12",
}

_V1_ROUTES = {
    "door-1": ("key", "explosive", "rock-door", "door"),
    "door-2": ("explosive", "key", "rock-door", "door"),
    "door-3": ("explosive", "rock-door", "key", "door"),
}

_V2_ROUTES = {
    **_V1_ROUTES,
    "coin-1": ("explosive", "rock-coin", "coin"),
    "coin-2": ("key", "explosive", "rock-coin", "coin"),
    "coin-3": ("explosive", "key", "rock-coin", "coin"),
    "coin-4": ("explosive", "rock-coin", "key", "coin"),
}


@dataclass(frozen=True)
class GameConfig:
    """A maze layout plus run parameters for one game version."""

    version: int
    width: int
    height: int
    walls: frozenset
    rocks: frozenset
    key: tuple
    explosive: tuple
    door: tuple
    coin: tuple | None
    start: tuple
    step_cap: int
    seed: int

    def __post_init__(self):
        if self.version not in (1, 2):
            raise ValueError(f"unknown game version {self.version!r}")
        if self.version == 1 and (len(self.rocks) != 1 or self.coin is not None):
            raise ValueError("version 1 needs exactly one rock and no coin")
        if self.version == 2 and (len(self.rocks) != 2 or self.coin is None):
            raise ValueError("version 2 needs two rocks and a coin")
        if self.step_cap < 1:
            raise ValueError("step cap must be at least 1")
        markers = [self.key, self.explosive, self.door, self.start]
        if self.coin is not None:
            markers.append(self.coin)
        occupied = list(self.walls) + list(self.rocks) + markers
        if len(set(occupied)) != len(occupied):
            raise ValueError("overlapping grid features")
        for x, y in occupied:
            if not (0 <= x < self.width and 0 <= y < self.height):
                raise ValueError(f"feature at {(x, y)} is outside the grid")

    @classmethod
    def from_grid(cls, version, rows, step_cap, seed):
        """Parse an ASCII map (see the legend above the presets)."""
        walls, rocks = set(), set()
        features = {}
        for y, row in enumerate(rows):
            for x, cell in enumerate(row):
                if cell == "#":
                    walls.add((x, y))
                elif cell == "R":
                    rocks.add((x, y))
                elif cell in "KEDCS":
                    if cell in features:
                        raise ValueError(f"duplicate {cell!r} marker in grid")
                    features[cell] = (x, y)
                elif cell != ".":
                    raise ValueError(f"unknown grid cell {cell!r}")
        missing = {"K", "E", "D", "S"} - set(features)
        if missing:
            raise ValueError(f"grid lacks markers {sorted(missing)}")
        return cls(
            version=version,
            width=max(len(row) for row in rows),
            height=len(rows),
            walls=frozenset(walls),
            rocks=frozenset(rocks),
            key=features["K"],
            explosive=features["E"],
            door=features["D"],
            coin=features.get("C"),
            start=features["S"],
            step_cap=step_cap,
            seed=seed,
        )


# Default step caps leave every scripted route ample room (all finish in
# under 16 steps) while keeping random play losing roughly 3 times in 4.
def v1_config(seed=0, step_cap=40):
    return GameConfig.from_grid(1, V1_GRID, step_cap, seed)


def v2_config(seed=0, step_cap=60):
    return GameConfig.from_grid(2, V2_GRID, step_cap, seed)


@dataclass(frozen=True)
class Episode:
    """One recorded playthrough: its event sequence plus bookkeeping."""

    events: EventSequence
    label: int
    win_route: str
    seed: int
    policy: str

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError(f"episode label must be 0 or 1, got {self.label!r}")
        if self.win_route not in ("door", "coin", "none"):
            raise ValueError(f"unknown win route {self.win_route!r}")
        if (self.label == 1) != (self.win_route != "none"):
            raise ValueError("win route and label disagree")


def _derive_seed(seed, tag) -> int:
    """Independent per-episode RNG stream, stable under parallel generation."""
    digest = hashlib.sha256(f"{seed}:{tag}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


class _Game:
    """Mutable game state; records the raw move log."""

    def __init__(self, config: GameConfig):
        self.config = config
        self.pos = config.start
        self.rocks = set(config.rocks)
        self.has_key = False
        self.has_explosive = False
        self.key_present = True
        self.explosive_present = True
        self.coin_present = config.coin is not None
        self.outcome = None
        self.steps = 0
        self.moves: list[tuple[str, str]] = []

    def step(self, direction) -> None:
        """Attempt one move; bumps resolve to item use or failure."""
        self.steps += 1
        config = self.config
        target = (self.pos[0] + direction[0], self.pos[1] + direction[1])
        if (
            not (0 <= target[0] < config.width and 0 <= target[1] < config.height)
            or target in config.walls
        ):
            self.moves.append(("blocked", "wall"))
            return
        if target in self.rocks:
            if self.has_explosive:
                self.moves.append(("use_explosive", "rock"))
                self.rocks.discard(target)
                self.has_explosive = False
            else:
                self.moves.append(("fail_use", "explosive"))
            return
        if target == config.door:
            if self.has_key:
                self.moves.append(("use_key", "door"))
                self.outcome = "door"
            else:
                self.moves.append(("fail_use", "key"))
            return
        self.pos = target
        self.moves.append(("move", _DIRECTION_NAMES[direction]))
        if self.key_present and target == config.key:
            self.key_present = False
            self.has_key = True
            self.moves.append(("collect", "key"))
        elif self.explosive_present and target == config.explosive:
            self.explosive_present = False
            self.has_explosive = True
            self.moves.append(("collect", "explosive"))
        elif self.coin_present and target == config.coin:
            self.coin_present = False
            self.moves.append(("collect", "coin"))
            self.outcome = "coin"

    def finish(self) -> None:
        """Append end-of-episode markers; the outcome marker goes last."""
        if self.key_present:
            self.moves.append(("end", "key_missing"))
        if self.explosive_present:
            self.moves.append(("end", "explosive_missing"))
        if self.outcome == "door":
            self.moves.append(("end", "win_door"))
        elif self.outcome == "coin":
            self.moves.append(("end", "win_coin"))
        else:
            self.moves.append(("end", "lose"))


def extract_events(moves, version) -> EventSequence:
    """Reduce a raw move log to its event sequence; non-events are dropped."""
    if version == 1:
        universe = V1_EVENTS
    elif version == 2:
        universe = V2_EVENTS
    else:
        raise ValueError(f"unknown game version {version!r}")
    labels = []
    for move in moves:
        code = _EVENT_CODES.get(tuple(move))
        if code is not None:
            labels.append(code)
    return EventSequence(universe, tuple(labels))


def _rock_near(config, target):
    """The rock guarding `target`: nearest by Manhattan distance."""
    return min(
        config.rocks,
        key=lambda r: (abs(r[0] - target[0]) + abs(r[1] - target[1]), r),
    )


def _waypoints(config, route_name):
    spots = {
        "key": config.key,
        "explosive": config.explosive,
        "door": config.door,
        "rock-door": _rock_near(config, config.door),
    }
    if config.coin is not None:
        spots["coin"] = config.coin
        spots["rock-coin"] = _rock_near(config, config.coin)
    routes = _V2_ROUTES if config.version == 2 else _V1_ROUTES
    return tuple(spots[name] for name in routes[route_name])


def _bfs_step(game, target):
    """First step of a shortest path to `target`.

    Rock cells count as passable (the walker blasts through them);
    the door is passable only as the target itself.
    """
    config = game.config
    start = game.pos
    blocked = set(config.walls)
    if target != config.door:
        blocked.add(config.door)
    prev = {start: None}
    queue = deque([start])
    while queue:
        cell = queue.popleft()
        if cell == target:
            while prev[cell] != start and prev[cell] is not None:
                cell = prev[cell]
            return (cell[0] - start[0], cell[1] - start[1])
        for dx, dy in DIRECTIONS:
            nxt = (cell[0] + dx, cell[1] + dy)
            if (
                0 <= nxt[0] < config.width
                and 0 <= nxt[1] < config.height
                and nxt not in blocked
                and nxt not in prev
            ):
                prev[nxt] = cell
                queue.append(nxt)
    raise ValueError(f"waypoint {target} unreachable from {start}")


def _run_scripted(game, waypoints) -> None:
    for target in waypoints:
        while (
            game.outcome is None
            and game.pos != target
            and game.steps < game.config.step_cap
        ):
            game.step(_bfs_step(game, target))
        if game.outcome is not None:
            break


def _run_random(game, rng) -> None:
    while game.outcome is None and game.steps < game.config.step_cap:
        game.step(DIRECTIONS[rng.randrange(4)])


def _route_plan(config, policy):
    """Resolve a policy name to a route rotation; None means random play."""
    if policy == "random":
        return None
    routes = _V2_ROUTES if config.version == 2 else _V1_ROUTES
    if policy == "scripted-mixed":
        return tuple(sorted(routes, key=lambda name: (name.split("-")[0] == "coin", name)))
    prefix = "scripted-"
    if policy.startswith(prefix) and policy[len(prefix):] in routes:
        return (policy[len(prefix):],)
    if policy.startswith(prefix) and policy[len(prefix):] in _V2_ROUTES:
        raise InvalidPolicy(f"route {policy[len(prefix):]!r} needs game version 2")
    raise InvalidPolicy(f"unknown policy {policy!r}")


def simulate(config: GameConfig, n_episodes: int, policy: str) -> list[Episode]:
    """Play `n_episodes` under `policy` and return their event records.

    Deterministic given (config, policy): episode i draws from an RNG
    stream derived from (config.seed, i), so episodes are independent of
    n_episodes and of generation order.
    """
    if n_episodes < 1:
        raise ValueError("need at least one episode")
    plan = _route_plan(config, policy)
    episodes = []
    for index in range(n_episodes):
        rng = random.Random(_derive_seed(config.seed, index))
        game = _Game(config)
        if plan is None:
            policy_id = "random"
            _run_random(game, rng)
        else:
            route = plan[index % len(plan)]
            policy_id = f"scripted-{route}"
            _run_scripted(game, _waypoints(config, route))
        game.finish()
        episodes.append(
            Episode(
                events=extract_events(game.moves, config.version),
                label=1 if game.outcome else 0,
                win_route=game.outcome or "none",
                seed=config.seed,
                policy=policy_id,
            )
        )
    return episodes


def _apply_op(events, op, rng, table):
    """One mutation attempt; None when the op cannot apply at this length."""
    n = len(events)
    if op == "swap":
        if n < 2:
            return None
        i, j = rng.sample(range(n), 2)
        out = list(events)
        out[i], out[j] = out[j], out[i]
        return tuple(out)
    if op == "delete":
        if n < 1:
            return None
        i = rng.randrange(n)
        return events[:i] + events[i + 1:]
    i = rng.randrange(n + 1)
    label = rng.choice(table.labels)
    return events[:i] + (label,) + events[i:]


def _mutate(s: EventSequence, rng, ops) -> EventSequence:
    # retry identity results (e.g. swapping equal events) a bounded number
    # of times so a "mutated" episode almost surely differs from the input
    for _ in range(256):
        out = _apply_op(s.events, rng.choice(ops), rng, s.universe)
        if out is not None and out != s.events:
            return EventSequence(s.universe, out)
    return s


def corrupt_sequences(
    sequences: Sequence[EventSequence],
    fraction,
    seed: int,
    ops: Iterable[str] = ("swap", "delete", "insert"),
) -> list[EventSequence]:
    """Mutate ceil(fraction * n) of the sequences, one op each, seeded."""
    if isinstance(fraction, float):
        frac = Fraction(str(fraction))
    else:
        frac = Fraction(fraction)
    if not 0 <= frac <= 1:
        raise ValueError(f"corruption fraction {fraction!r} outside [0, 1]")
    opset = tuple(sorted(set(ops)))
    bad = [op for op in opset if op not in ("swap", "delete", "insert")]
    if bad or not opset:
        raise ValueError(f"corruption ops must be among swap/delete/insert, got {list(ops)!r}")
    out = list(sequences)
    k = math.ceil(frac * len(out))
    if k == 0:
        return out
    selector = random.Random(_derive_seed(seed, "select"))
    for index in sorted(selector.sample(range(len(out)), k)):
        rng = random.Random(_derive_seed(seed, f"mutate:{index}"))
        out[index] = _mutate(out[index], rng, opset)
    return out


def corrupt(
    episodes: Sequence[Episode],
    fraction,
    seed: int,
    ops: Iterable[str] = ("swap", "delete", "insert"),
) -> list[Episode]:
    """corrupt_sequences over episode events; labels and bookkeeping kept."""
    mutated = corrupt_sequences([ep.events for ep in episodes], fraction, seed, ops)
    return [
        ep if seq is ep.events else replace(ep, events=seq)
        for ep, seq in zip(episodes, mutated)
    ]
