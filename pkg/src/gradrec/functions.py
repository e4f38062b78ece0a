"""Test-problem functions with exact derivative access.

A FunctionSpec is one of four kinds:

* ``polynomial``  -- coefficients in ascending powers, c0 + c1*x + ...
* ``sinusoid``    -- A*sin(k*pi*x)
* ``exponential`` -- exp(s*x)
* ``sampled``     -- a fixed (x, u) table; no exact derivative

Only the sampled kind lacks a derivative; operations needing u' reject it
with a ``no-exact-derivative`` error.
"""

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import InputError

KINDS = ("polynomial", "sinusoid", "exponential", "sampled")


class FunctionSpec:
    """A symbolic (or tabulated) function u together with u' when available."""

    def __init__(self, kind: str, **params):
        if kind not in KINDS:
            raise InputError("parse-error", f"unknown function kind {kind!r}")
        self.kind = kind
        self.params = params

    @classmethod
    def polynomial(cls, coefficients) -> "FunctionSpec":
        coeffs = tuple(float(c) for c in coefficients)
        if not coeffs:
            raise InputError("parse-error", "polynomial needs at least one coefficient")
        return cls("polynomial", coefficients=coeffs)

    @classmethod
    def sinusoid(cls, amplitude: float, wavenumber: float) -> "FunctionSpec":
        return cls("sinusoid", amplitude=float(amplitude), wavenumber=float(wavenumber))

    @classmethod
    def exponential(cls, scale: float) -> "FunctionSpec":
        return cls("exponential", scale=float(scale))

    @classmethod
    def sampled(cls, x, u) -> "FunctionSpec":
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=float)
        if x.shape != u.shape or x.ndim != 1 or x.size == 0:
            raise InputError("parse-error", "sampled data needs matching 1D x and u columns")
        return cls("sampled", x=x, u=u)

    @property
    def has_exact_derivative(self) -> bool:
        return self.kind != "sampled"

    def derivative_coefficients(self) -> tuple:
        """Ascending coefficients of u' for the polynomial kind (exact)."""
        if self.kind != "polynomial":
            raise InputError("no-exact-derivative", "coefficient form only exists for polynomials")
        c = self.params["coefficients"]
        return tuple(i * c[i] for i in range(1, len(c))) or (0.0,)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "polynomial":
            return npoly.polyval(x, self.params["coefficients"])
        if self.kind == "sinusoid":
            return self.params["amplitude"] * np.sin(self.params["wavenumber"] * np.pi * x)
        if self.kind == "exponential":
            return np.exp(self.params["scale"] * x)
        return np.interp(x, self.params["x"], self.params["u"])

    def derivative(self, x):
        """Evaluate u' exactly; rejects the sampled kind."""
        x = np.asarray(x, dtype=float)
        if self.kind == "polynomial":
            return npoly.polyval(x, self.derivative_coefficients())
        if self.kind == "sinusoid":
            a, k = self.params["amplitude"], self.params["wavenumber"]
            return a * k * np.pi * np.cos(k * np.pi * x)
        if self.kind == "exponential":
            s = self.params["scale"]
            return s * np.exp(s * x)
        raise InputError("no-exact-derivative", "sampled functions have no exact derivative")

    def label(self) -> str:
        """Short human-readable form, used in plot legends."""
        if self.kind == "polynomial":
            return "poly(" + ",".join(repr(c) for c in self.params["coefficients"]) + ")"
        if self.kind == "sinusoid":
            return f"{self.params['amplitude']:g}*sin({self.params['wavenumber']:g}*pi*x)"
        if self.kind == "exponential":
            return f"exp({self.params['scale']:g}*x)"
        return f"sampled[{self.params['x'].size}]"
