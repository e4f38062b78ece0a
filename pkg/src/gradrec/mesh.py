"""1D partitions of an interval and the mesh families used in studies.

Meshes are immutable after construction; every function here is pure, so
meshes can be shared freely between concurrent tasks.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class Mesh:
    """A partition alpha = x_0 < x_1 < ... < x_n = beta of an interval.

    ``nodes`` holds the n+1 node coordinates.  At least one interior node is
    required (n >= 2).
    """

    nodes: np.ndarray

    def __post_init__(self):
        nodes = np.ascontiguousarray(self.nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 3:
            raise InputError("too-coarse", "a mesh needs at least 3 nodes (n >= 2)")
        if not np.all(np.isfinite(nodes)):
            raise InputError("invalid-interval", "mesh nodes must be finite")
        if not np.all(np.diff(nodes) > 0):
            raise InputError("invalid-interval", "mesh nodes must be strictly increasing")
        nodes.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)

    @property
    def n(self) -> int:
        """Number of elements."""
        return self.nodes.size - 1

    @property
    def alpha(self) -> float:
        return float(self.nodes[0])

    @property
    def beta(self) -> float:
        return float(self.nodes[-1])

    def spacings(self) -> np.ndarray:
        """Element lengths h_i = x_{i+1} - x_i."""
        return np.diff(self.nodes)


def _check_interval(alpha: float, beta: float, n: int):
    if not beta > alpha:
        raise InputError("invalid-interval", f"need beta > alpha, got [{alpha}, {beta}]")
    if n < 2:
        raise InputError("too-coarse", f"need at least 2 elements, got n={n}")


def _mapped_nodes(alpha: float, beta: float, n: int, t: np.ndarray) -> np.ndarray:
    x = alpha + (beta - alpha) * t
    # pin the endpoints: alpha + (beta-alpha) need not round back to beta
    x[0] = alpha
    x[-1] = beta
    return x


def uniform(alpha: float, beta: float, n: int) -> Mesh:
    """Equispaced mesh with n elements on [alpha, beta]."""
    _check_interval(alpha, beta, n)
    t = np.arange(n + 1) / n
    return Mesh(_mapped_nodes(alpha, beta, n, t))


def graded(alpha: float, beta: float, n: int, delta: float) -> Mesh:
    """Smoothly graded mesh whose spacing jumps shrink quadratically.

    Nodes are placed at the image of the equispaced parameters under
    t + delta*sin(pi*t)/pi, a strictly increasing smooth map, so adjacent
    element lengths differ by O(h^2).  delta = 0 reproduces ``uniform``
    bit-for-bit.
    """
    _check_interval(alpha, beta, n)
    if not 0 <= delta < 1 / np.pi:
        raise InputError("invalid-delta", f"need 0 <= delta < 1/pi, got {delta}")
    t = np.arange(n + 1) / n
    g = t + delta * np.sin(np.pi * t) / np.pi
    return Mesh(_mapped_nodes(alpha, beta, n, g))


def perturbed(alpha: float, beta: float, n: int, rho: float, seed: int) -> Mesh:
    """Uniform mesh with interior nodes jittered by rho*h, reproducibly.

    Each interior node moves by rho*h*eta with eta drawn uniformly from
    [-1, 1] by a generator seeded with ``seed``; the endpoints stay put.
    rho < 0.5 keeps the nodes strictly increasing unconditionally.  Spacing
    jumps on these meshes are O(h), not O(h^2).
    """
    _check_interval(alpha, beta, n)
    if not 0 <= rho < 0.5:
        raise InputError("invalid-rho", f"need 0 <= rho < 0.5, got {rho}")
    x = np.array(uniform(alpha, beta, n).nodes)
    h = (beta - alpha) / n
    eta = np.random.default_rng(seed).uniform(-1.0, 1.0, n - 1)
    x[1:-1] += rho * h * eta
    return Mesh(x)


def mesh_size(m: Mesh) -> float:
    """Largest element length."""
    return float(np.max(m.spacings()))
