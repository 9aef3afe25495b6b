"""
Data models for equitable graph ensembles
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph


@dataclass(frozen=True, eq=False)
class ConnectivityMatrix:
    """Per-vertex block degrees: entry (a, b) is the number of neighbors a vertex of block a has in block b"""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.int64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"Connectivity matrix must be square, got shape {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConnectivityMatrix):
            return NotImplemented
        return bool(np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.entries.shape, self.entries.tobytes()))

    @classmethod
    def from_rows(cls, rows) -> "ConnectivityMatrix":
        return cls(np.array(rows, dtype=np.int64))

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def row_sums(self) -> np.ndarray:
        return self.entries.sum(axis=1)

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))

    def to_rows(self) -> list[list[int]]:
        return self.entries.tolist()


@dataclass(frozen=True)
class BlockModel:
    """Full ensemble parameters: block sizes plus connectivity matrix"""

    sizes: tuple[int, ...]
    connectivity: ConnectivityMatrix

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if not isinstance(self.connectivity, ConnectivityMatrix):
            object.__setattr__(self, "connectivity", ConnectivityMatrix(np.asarray(self.connectivity)))

    @property
    def m(self) -> int:
        return self.connectivity.m

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def offsets(self) -> np.ndarray:
        """First vertex id of each block (blocks are laid out contiguously)"""
        return np.concatenate([[0], np.cumsum(self.sizes)[:-1]]).astype(np.int64)

    @property
    def has_equal_sizes(self) -> bool:
        return len(set(self.sizes)) <= 1

    @property
    def is_regular(self) -> bool:
        """All vertices share the same total degree"""
        return len(set(self.connectivity.row_sums.tolist())) <= 1

    @property
    def degree(self) -> int:
        """Largest total degree over blocks"""
        return int(self.connectivity.row_sums.max()) if self.m else 0

    @property
    def expected_edges(self) -> int:
        return int(np.dot(self.sizes, self.connectivity.row_sums)) // 2

    def labels(self) -> np.ndarray:
        """Ground-truth labels for the contiguous layout (block a -> label a-1)"""
        return np.repeat(np.arange(self.m, dtype=np.int64), self.sizes)

    def with_size(self, n: int) -> "BlockModel":
        """Same connectivity on m equal blocks totalling n vertices"""
        if n % self.m:
            raise ValueError(f"n={n} is not divisible by m={self.m}")
        return BlockModel(sizes=(n // self.m,) * self.m, connectivity=self.connectivity)


def modular_model(n: int, c_in: int, c_out: int) -> BlockModel:
    """
    Two equal blocks with connectivity [[c_in, c_out], [c_out, c_in]].

    Covers both the assortative (c_in > c_out) and the disassortative
    (c_in < c_out) two-community ensembles.
    """
    if n % 2:
        raise ValueError(f"Two equal blocks need an even vertex count, got n={n}")
    return BlockModel(
        sizes=(n // 2, n // 2),
        connectivity=ConnectivityMatrix.from_rows([[c_in, c_out], [c_out, c_in]]),
    )


@dataclass(eq=False)
class Partition:
    """Per-vertex block assignment (0-based labels)"""

    assignment: np.ndarray

    def __post_init__(self):
        self.assignment = np.asarray(self.assignment, dtype=np.int64)

    def __len__(self) -> int:
        return int(self.assignment.size)

    @property
    def num_labels(self) -> int:
        return int(np.unique(self.assignment).size)

    def swapped(self) -> "Partition":
        """Exchange labels 0 and 1"""
        return Partition(1 - self.assignment)


@dataclass(eq=False)
class Graph:
    """
    Simple undirected graph on vertices 0..n-1.

    Edges are stored once per pair as (u, v) with u < v, sorted
    lexicographically. Labels are optional ground-truth block assignments.
    """

    n: int
    edges: np.ndarray
    labels: np.ndarray | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        edges = np.sort(edges, axis=1)
        if edges.size:
            edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
        self.edges = edges
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=np.int64)

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edges}

    def is_simple(self) -> bool:
        if np.any(self.edges[:, 0] == self.edges[:, 1]):
            return False
        keys = self.edges[:, 0] * self.n + self.edges[:, 1]
        return np.unique(keys).size == keys.size

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n)

    def adjacency_sparse(self) -> sparse.csr_matrix:
        if "csr" not in self._cache:
            rows = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
            cols = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
            data = np.ones(rows.size, dtype=np.float64)
            self._cache["csr"] = sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
        return self._cache["csr"]

    def adjacency(self) -> np.ndarray:
        return self.adjacency_sparse().toarray()

    def block_degrees(self, m: int) -> np.ndarray:
        """n x m matrix whose row i counts the neighbors of i in each block"""
        if self.labels is None:
            raise ValueError("Graph has no labels")
        counts = np.zeros((self.n, m), dtype=np.int64)
        u, v = self.edges[:, 0], self.edges[:, 1]
        np.add.at(counts, (u, self.labels[v]), 1)
        np.add.at(counts, (v, self.labels[u]), 1)
        return counts

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        n_components, _ = csgraph.connected_components(self.adjacency_sparse(), directed=False)
        return n_components == 1

    def with_labels(self, labels) -> "Graph":
        return Graph(n=self.n, edges=self.edges.copy(), labels=np.asarray(labels))

    def without_edge(self, u: int, v: int) -> "Graph":
        u, v = min(u, v), max(u, v)
        keep = ~((self.edges[:, 0] == u) & (self.edges[:, 1] == v))
        return Graph(n=self.n, edges=self.edges[keep], labels=self.labels)
