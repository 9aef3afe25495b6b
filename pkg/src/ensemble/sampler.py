"""
Equitable graph sampler.

A graph is assembled from one random c_aa-regular graph per block and one
random (c_ab, c_ba)-bi-regular graph per unordered block pair. Each component
is drawn with the pairing (configuration) model: stubs are matched uniformly
at random and the matching is rejected if it is not simple. After
SAMPLER_MAX_ATTEMPTS rejections the last matching is repaired with
degree-preserving double-edge swaps, one violation at a time.
"""
import logging
from collections import Counter

import numpy as np

from src.config import config
from src.ensemble.models import BlockModel, Graph
from src.ensemble.validation import validate_model, verify_equitable


logger = logging.getLogger(__name__)


class SamplerError(Exception):
    """Raised when a component graph cannot be made simple within the retry/repair budget"""

    def __init__(self, message: str, component: str = "", attempts: int = 0, violations: int = 0):
        super().__init__(message)
        self.component = component
        self.attempts = attempts
        self.violations = violations


def _edge_key(u: int, v: int, bipartite: bool) -> tuple[int, int]:
    if bipartite:
        return (u, v)
    return (u, v) if u <= v else (v, u)


def _is_simple(pairs: np.ndarray, n_right: int, bipartite: bool) -> bool:
    u, v = pairs[:, 0], pairs[:, 1]
    if not bipartite:
        if np.any(u == v):
            return False
        u, v = np.minimum(u, v), np.maximum(u, v)
    keys = u * n_right + v
    return np.unique(keys).size == keys.size


def _repair(pairs: np.ndarray, rng: np.random.Generator, bipartite: bool, max_swaps: int) -> np.ndarray:
    """
    Remove self-loops and repeated edges by double-edge swaps.

    A bad edge (u, v) and a random edge (x, y) are rewired to (u, y), (x, v)
    when both new edges are absent and not loops. Degrees are preserved, and
    for bipartite components the two sides stay separated because the first
    coordinate always lives on the left side.
    """
    edges = [tuple(p) for p in pairs.tolist()]
    counts = Counter(_edge_key(u, v, bipartite) for u, v in edges)
    seen: set[tuple[int, int]] = set()
    bad: list[int] = []
    for i, (u, v) in enumerate(edges):
        key = _edge_key(u, v, bipartite)
        if (not bipartite and u == v) or key in seen:
            bad.append(i)
        seen.add(key)

    def still_bad(i: int) -> bool:
        u, v = edges[i]
        return (not bipartite and u == v) or counts[_edge_key(u, v, bipartite)] > 1

    swaps = 0
    while bad:
        i = bad[-1]
        if not still_bad(i):
            bad.pop()
            continue
        if swaps >= max_swaps:
            remaining = sum(1 for j in bad if still_bad(j))
            raise SamplerError(
                f"Edge-swap repair exhausted {max_swaps} swaps with {remaining} violation(s) left",
                attempts=swaps,
                violations=remaining,
            )
        swaps += 1
        j = int(rng.integers(len(edges)))
        if j == i:
            continue
        u, v = edges[i]
        x, y = edges[j]
        if not bipartite and rng.random() < 0.5:
            x, y = y, x
        if not bipartite and (u == y or x == v):
            continue
        new_i, new_j = _edge_key(u, y, bipartite), _edge_key(x, v, bipartite)
        if new_i == new_j or counts[new_i] or counts[new_j]:
            continue
        counts[_edge_key(u, v, bipartite)] -= 1
        counts[_edge_key(*edges[j], bipartite)] -= 1
        counts[new_i] += 1
        counts[new_j] += 1
        edges[i] = (u, y)
        edges[j] = (x, v)
        bad.pop()

    logger.debug(f"Repair finished after {swaps} swap attempt(s)")
    return np.array(edges, dtype=np.int64).reshape(-1, 2)


def _sample_component(
    left: np.ndarray,
    right: np.ndarray | None,
    n_right: int,
    rng: np.random.Generator,
    name: str,
    max_attempts: int,
    swap_factor: int,
) -> np.ndarray:
    """
    Draw one component by stub matching.

    Args:
        left: Stub owners (regular case: all stubs; bipartite case: left side)
        right: Right-side stub owners, or None for a regular component
        n_right: Size of the index space of the second coordinate
        rng: Component generator
        name: Component name for diagnostics
        max_attempts: Rejection attempts before switching to repair
        swap_factor: Repair budget per edge

    Returns:
        Array of local (u, v) pairs
    """
    bipartite = right is not None
    if left.size == 0:
        return np.empty((0, 2), dtype=np.int64)

    def draw() -> np.ndarray:
        if bipartite:
            return np.column_stack([left, rng.permutation(right)])
        return rng.permutation(left).reshape(-1, 2)

    pairs = draw()
    for attempt in range(1, max_attempts + 1):
        if _is_simple(pairs, n_right, bipartite):
            logger.debug(f"Component {name}: simple matching after {attempt} attempt(s)")
            return pairs
        if attempt < max_attempts:
            pairs = draw()

    logger.debug(f"Component {name}: rejection budget spent, repairing by edge swaps")
    try:
        return _repair(pairs, rng, bipartite, max_swaps=swap_factor * max(len(pairs), 1))
    except SamplerError as e:
        raise SamplerError(
            f"Component {name} could not be made simple: {e}",
            component=name,
            attempts=max_attempts,
            violations=e.violations,
        ) from e


def sample(
    model: BlockModel,
    seed: int,
    shuffle: bool = False,
    max_attempts: int | None = None,
    swap_factor: int | None = None,
) -> Graph:
    """
    Sample an equitable graph.

    The output is a pure function of (model, seed): every component draws
    from its own child of ``numpy.random.SeedSequence(seed)``.

    Args:
        model: Validated block model
        seed: Non-negative integer seed
        shuffle: Randomly permute vertex ids (labels follow the vertices)
        max_attempts: Rejection attempts per component (default from config)
        swap_factor: Repair swaps per component edge (default from config)

    Returns:
        Graph with ground-truth labels

    Raises:
        ValueError: If the model is infeasible
        SamplerError: If a component cannot be made simple
    """
    violations = validate_model(model)
    if violations:
        raise ValueError(f"Infeasible block model: {'; '.join(violations)}")

    max_attempts = config.SAMPLER_MAX_ATTEMPTS if max_attempts is None else max_attempts
    swap_factor = config.SAMPLER_SWAP_FACTOR if swap_factor is None else swap_factor

    m = model.m
    c = model.connectivity.entries
    sizes = model.sizes
    offsets = model.offsets
    # One child per block, one per unordered pair, one for the shuffle
    children = np.random.SeedSequence(seed).spawn(m + m * (m - 1) // 2 + 1)
    child = iter(children)

    parts: list[np.ndarray] = []
    for a in range(m):
        rng = np.random.default_rng(next(child))
        stubs = np.repeat(np.arange(sizes[a], dtype=np.int64), c[a, a])
        pairs = _sample_component(stubs, None, sizes[a], rng, f"block {a + 1}", max_attempts, swap_factor)
        parts.append(pairs + offsets[a])

    for a in range(m):
        for b in range(a + 1, m):
            rng = np.random.default_rng(next(child))
            left = np.repeat(np.arange(sizes[a], dtype=np.int64), c[a, b])
            right = np.repeat(np.arange(sizes[b], dtype=np.int64), c[b, a])
            pairs = _sample_component(left, right, sizes[b], rng, f"blocks {a + 1}-{b + 1}", max_attempts, swap_factor)
            parts.append(pairs + np.array([offsets[a], offsets[b]]))

    edges = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    labels = model.labels()

    if shuffle:
        perm = np.random.default_rng(next(child)).permutation(model.n)
        edges = perm[edges]
        shuffled = np.empty_like(labels)
        shuffled[perm] = labels
        labels = shuffled

    graph = Graph(n=model.n, edges=edges, labels=labels)
    if not verify_equitable(graph, model) or not graph.is_simple():
        raise SamplerError(f"Sampled graph violates the equitable constraints for seed {seed}")

    logger.debug(f"Sampled graph n={graph.n} edges={graph.num_edges} seed={seed}")
    return graph
