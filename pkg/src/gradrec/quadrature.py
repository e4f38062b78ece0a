"""Composite Gauss-Legendre quadrature over mesh elements."""

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .mesh import Mesh

# Reference-interval nodes and weights, 17 significant digits.
_GAUSS_TABLE = {
    1: (
        [0.0],
        [2.0000000000000000],
    ),
    2: (
        [-0.57735026918962576, 0.57735026918962576],
        [1.0000000000000000, 1.0000000000000000],
    ),
    3: (
        [-0.77459666924148338, 0.0, 0.77459666924148338],
        [0.55555555555555556, 0.88888888888888889, 0.55555555555555556],
    ),
    4: (
        [-0.86113631159405258, -0.33998104358485626, 0.33998104358485626, 0.86113631159405258],
        [0.34785484513745386, 0.65214515486254614, 0.65214515486254614, 0.34785484513745386],
    ),
    5: (
        [-0.90617984593866399, -0.53846931010568309, 0.0, 0.53846931010568309,
         0.90617984593866399],
        [0.23692688505618909, 0.47862867049936647, 0.56888888888888889, 0.47862867049936647,
         0.23692688505618909],
    ),
    6: (
        [-0.93246951420315203, -0.66120938646626451, -0.23861918608319691, 0.23861918608319691,
         0.66120938646626451, 0.93246951420315203],
        [0.17132449237917035, 0.36076157304813861, 0.46791393457269105, 0.46791393457269105,
         0.36076157304813861, 0.17132449237917035],
    ),
    7: (
        [-0.94910791234275852, -0.74153118559939444, -0.40584515137739717, 0.0,
         0.40584515137739717, 0.74153118559939444, 0.94910791234275852],
        [0.12948496616886969, 0.27970539148927667, 0.38183005050511894, 0.41795918367346939,
         0.38183005050511894, 0.27970539148927667, 0.12948496616886969],
    ),
    8: (
        [-0.96028985649753623, -0.79666647741362674, -0.52553240991632899, -0.18343464249564980,
         0.18343464249564980, 0.52553240991632899, 0.79666647741362674, 0.96028985649753623],
        [0.10122853629037626, 0.22238103445337447, 0.31370664587788729, 0.36268378337836198,
         0.36268378337836198, 0.31370664587788729, 0.22238103445337447, 0.10122853629037626],
    ),
    9: (
        [-0.96816023950762609, -0.83603110732663579, -0.61337143270059040, -0.32425342340380893,
         0.0, 0.32425342340380893, 0.61337143270059040, 0.83603110732663579,
         0.96816023950762609],
        [0.081274388361574412, 0.18064816069485740, 0.26061069640293546, 0.31234707704000284,
         0.33023935500125976, 0.31234707704000284, 0.26061069640293546, 0.18064816069485740,
         0.081274388361574412],
    ),
    10: (
        [-0.97390652851717172, -0.86506336668898451, -0.67940956829902441, -0.43339539412924719,
         -0.14887433898163121, 0.14887433898163121, 0.43339539412924719, 0.67940956829902441,
         0.86506336668898451, 0.97390652851717172],
        [0.066671344308688138, 0.14945134915058059, 0.21908636251598204, 0.26926671930999636,
         0.29552422471475287, 0.29552422471475287, 0.26926671930999636, 0.21908636251598204,
         0.14945134915058059, 0.066671344308688138],
    ),
}


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre points/weights on [-1, 1]; exact for degree <= 2*order - 1."""

    points: np.ndarray
    weights: np.ndarray
    order: int


def gauss_rule(p: int) -> QuadratureRule:
    """The p-point Gauss-Legendre rule, 1 <= p <= 10."""
    if p not in _GAUSS_TABLE:
        raise InputError("unsupported-order", f"no {p}-point rule (supported: 1..10)")
    pts, wts = _GAUSS_TABLE[p]
    return QuadratureRule(np.array(pts), np.array(wts), p)


def _element_sum(f, nodes: np.ndarray, rule: QuadratureRule) -> float:
    mid = 0.5 * (nodes[:-1] + nodes[1:])
    half = 0.5 * (nodes[1:] - nodes[:-1])
    pts = mid[:, None] + half[:, None] * rule.points[None, :]
    vals = np.broadcast_to(np.asarray(f(pts), dtype=float), pts.shape)
    return float(np.sum(half[:, None] * rule.weights[None, :] * vals))


def integrate(f, m: Mesh, rule: QuadratureRule) -> float:
    """Composite quadrature of f over the whole domain.

    ``f`` must accept an ndarray of evaluation points.
    """
    return _element_sum(f, m.nodes, rule)


def integrate_interior(f, m: Mesh, rule: QuadratureRule) -> float:
    """Composite quadrature of f over (x_1, x_{n-1}), skipping the two boundary elements."""
    if m.n < 3:
        raise InputError("too-coarse", f"interior integration needs n >= 3, got n={m.n}")
    return _element_sum(f, m.nodes[1:-1], rule)
