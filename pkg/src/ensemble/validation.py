"""
Ensemble feasibility checks and equitable-structure verification
"""
import logging

import numpy as np

from src.ensemble.models import BlockModel, Graph


logger = logging.getLogger(__name__)


class DimensionMismatchError(ValueError):
    """Raised when a graph's labels do not fit the block model it is checked against"""
    pass


def validate_model(model: BlockModel) -> list[str]:
    """
    Collect every violated feasibility condition of a block model.

    An empty list means the ensemble is non-empty: the sizes and the
    connectivity matrix admit at least one equitable graph.

    Args:
        model: Block sizes plus connectivity matrix

    Returns:
        List of human-readable violation descriptions, prefixed by kind
    """
    violations: list[str] = []
    c = model.connectivity.entries
    m = model.connectivity.m
    sizes = list(model.sizes)

    if len(sizes) != m:
        violations.append(f"shape: {len(sizes)} block sizes for a {m}x{m} connectivity matrix")
        return violations

    for a, size in enumerate(sizes):
        if size <= 0:
            violations.append(f"sizes: block {a + 1} has non-positive size {size}")

    negatives = np.argwhere(c < 0)
    for a, b in negatives:
        violations.append(f"negative: c[{a + 1},{b + 1}] = {c[a, b]} is negative")
    if violations:
        return violations

    for a in range(m):
        for b in range(a + 1, m):
            left, right = sizes[a] * c[a, b], sizes[b] * c[b, a]
            if left != right:
                violations.append(
                    f"balance: N_{a + 1}*c[{a + 1},{b + 1}] = {sizes[a]}*{c[a, b]} = {left} "
                    f"!= N_{b + 1}*c[{b + 1},{a + 1}] = {sizes[b]}*{c[b, a]} = {right}"
                )

    for a in range(m):
        if c[a, a] > sizes[a] - 1:
            violations.append(
                f"intra_degree: c[{a + 1},{a + 1}] = {c[a, a]} exceeds N_{a + 1} - 1 = {sizes[a] - 1}"
            )
        if (sizes[a] * c[a, a]) % 2:
            violations.append(
                f"parity: N_{a + 1}*c[{a + 1},{a + 1}] = {sizes[a]}*{c[a, a]} is odd"
            )

    for a in range(m):
        for b in range(m):
            if a != b and c[a, b] > sizes[b]:
                violations.append(
                    f"inter_degree: c[{a + 1},{b + 1}] = {c[a, b]} exceeds N_{b + 1} = {sizes[b]}"
                )

    if violations:
        logger.debug(f"Model {model.sizes} has {len(violations)} violation(s)")
    return violations


def verify_equitable(graph: Graph, model: BlockModel) -> bool:
    """
    Check that every vertex's block-degree vector equals its block's connectivity row.

    Args:
        graph: Labelled graph
        model: Block model the labels refer to

    Returns:
        bool: True iff the graph is equitable with respect to its labels

    Raises:
        DimensionMismatchError: If labels are missing or disagree with the model sizes
    """
    if graph.labels is None:
        raise DimensionMismatchError("Graph carries no block labels")
    if graph.labels.size != graph.n or graph.n != model.n:
        raise DimensionMismatchError(
            f"Graph has n={graph.n} with {graph.labels.size} labels, model expects n={model.n}"
        )
    if graph.n and (graph.labels.min() < 0 or graph.labels.max() >= model.m):
        raise DimensionMismatchError(
            f"Labels span [{graph.labels.min()}, {graph.labels.max()}], model has m={model.m} blocks"
        )
    counts = np.bincount(graph.labels, minlength=model.m)
    if counts.tolist() != list(model.sizes):
        raise DimensionMismatchError(
            f"Label counts {counts.tolist()} disagree with model sizes {list(model.sizes)}"
        )

    block_degrees = graph.block_degrees(model.m)
    expected = model.connectivity.entries[graph.labels]
    return bool(np.array_equal(block_degrees, expected))
