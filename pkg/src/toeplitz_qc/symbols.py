"""Declarative circle functions (symbols) and their serialized form.

A symbol is a small expression tree. Every node can report a bandwidth
estimate, whether it is real valued, and realize itself on a grid::

    >>> spec = Product((Char(2), ExpI(BuiltinH(1000, 4.0))))
    >>> f = spec.realize(CircleGrid(4096))

Serialized trees are JSON objects keyed by ``type``; numbers are written as
decimal strings so a round trip is bit exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .circle import FourierSeries, GridFunction, coefficients, evaluate
from .errors import ResolutionError, ValidationError
from .transforms import hilbert

__all__ = [
    "SymbolSpec",
    "Char",
    "Trig",
    "Exp",
    "ExpI",
    "Product",
    "Conjugate",
    "HilbertOf",
    "BuiltinH",
    "Indicator",
    "h_series",
    "g_series",
    "realize",
    "parse_spec",
    "spec_from_dict",
    "dumps_spec",
    "with_terms",
    "EXP_BANDWIDTH_FACTOR",
]

# bandwidth multiplier applied by Exp / ExpI nodes
EXP_BANDWIDTH_FACTOR = 8


def _num(x):
    """Exact decimal text of a float."""
    return repr(float(x))


def _parse_num(x, what="number"):
    try:
        return float(x)
    except (TypeError, ValueError):
        raise ValidationError(f"cannot parse {what} {x!r}", module="symbol_algebra",
                              contract="SymbolSpec") from None


def h_series(M, scale=1.0):
    """Coefficients of ``scale * (-sum_{k=2}^M cos(k x) / (k ln k))``."""
    M = int(M)
    coeffs = np.zeros(2 * M + 1, dtype=complex)
    if M >= 2:
        k = np.arange(2, M + 1)
        c = -scale / (2 * k * np.log(k))
        coeffs[M + k] = c
        coeffs[M - k] = c
    return FourierSeries(coeffs, real=True)


def g_series(M, scale=1.0):
    """Coefficients of ``scale * sum_{k=2}^M sin(k x) / (k ln k)``."""
    M = int(M)
    coeffs = np.zeros(2 * M + 1, dtype=complex)
    if M >= 2:
        k = np.arange(2, M + 1)
        c = scale / (2j * k * np.log(k))
        coeffs[M + k] = c
        coeffs[M - k] = -c
    return FourierSeries(coeffs, real=True)


class SymbolSpec:
    """Base class of symbol expression nodes."""

    def bandwidth(self, exp_factor=EXP_BANDWIDTH_FACTOR):
        """Degree estimate; ``None`` for nodes that are not band limited."""
        raise NotImplementedError

    def is_real(self):
        raise NotImplementedError

    def _values(self, grid):
        raise NotImplementedError

    def to_dict(self):
        raise NotImplementedError

    def realize(self, grid, exp_factor=EXP_BANDWIDTH_FACTOR):
        return realize(self, grid, exp_factor)

    def __mul__(self, other):
        left = self.factors if isinstance(self, Product) else (self,)
        right = other.factors if isinstance(other, Product) else (other,)
        return Product(left + right)


def _check_real_child(node, child):
    if not child.is_real():
        raise ValidationError(f"{type(node).__name__} needs a real-valued argument",
                              module="symbol_algebra", contract="SymbolSpec")


@dataclass(frozen=True)
class Char(SymbolSpec):
    n: int

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))

    def bandwidth(self, exp_factor=EXP_BANDWIDTH_FACTOR):
        return abs(self.n)

    def is_real(self):
        return self.n == 0

    def _values(self, grid):
        return np.exp(1j * self.n * grid.points)

    def to_dict(self):
        return {"type": "char", "n": self.n}


@dataclass(frozen=True)
class Trig(SymbolSpec):
    """Trigonometric polynomial given by ``(index, coefficient)`` pairs."""

    coeffs: tuple

    def __post_init__(self):
        table = {}
        for n, c in (self.coeffs.items() if isinstance(self.coeffs, dict) else self.coeffs):
            table[int(n)] = table.get(int(n), 0) + complex(c)
        object.__setattr__(self, "coeffs", tuple(sorted(table.items())))

    @classmethod
    def from_series(cls, s):
        return cls(tuple(s.as_dict().items()))

    def series(self):
        return FourierSeries.from_dict(dict(self.coeffs), degree=self.bandwidth())

    def bandwidth(self, exp_factor=EXP_BANDWIDTH_FACTOR):
        return max((abs(n) for n, _ in self.coeffs), default=0)

    def is_real(self):
        return self.series().is_real_valued(1e-14)

    def _values(self, grid):
        return evaluate(self.series(), grid).values

    def to_dict(self):
        return {"type": "trig",
                "coeffs": [[n, _num(c.real), _num(c.imag)] for n, c in self.coeffs]}


@dataclass(frozen=True)
class Exp(SymbolSpec):
    of: SymbolSpec

    def __post_init__(self):
        _check_real_child(self, self.of)

    def bandwidth(self, exp_factor=EXP_BANDWIDTH_FACTOR):
        b = self.of.bandwidth(exp_factor)
        return None if b is None else exp_factor * b

    def is_real(self):
        return True

    def _values(self, grid):
        return np.exp(_raw(self.of, grid).real)

    def to_dict(self):
        return {"type": "exp", "of": self.of.to_dict()}


@dataclass(frozen=True)
class ExpI(SymbolSpec):
    """``exp(i * of)`` for a real-valued ``of``."""

    of: SymbolSpec

    def __post_init__(self):
        _check_real_child(self, self.of)

    def bandwidth(self, exp_factor=EXP_BANDWIDTH_FACTOR):
        b = self.of.bandwidth(exp_factor)
        return None if b is None else exp_factor * b

    def is_real(self):
        return False

    def _values(self, grid):
        return np.exp(1j * _raw(self.of, grid).real)

    def to_dict(self):
        return {"type": "expi", "of": self.of.to_dict()}


@dataclass(frozen=True)
class Product(SymbolSpec):
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValidationError("empty product", module="symbol_algebra", contract="SymbolSpec")

    def bandwidth(self, exp_factor=EXP_BANDWIDTH_FACTOR):
        bands = [f.bandwidth(exp_factor) for f in self.factors]
        return None if any(b is None for b in bands) else sum(bands)

    def is_real(self):
        return all(f.is_real() for f in self.factors)

    def _values(self, grid):
        out = np.ones(grid.size, dtype=complex)
        for f in self.factors:
            out = out * _raw(f, grid)
        return out

    def to_dict(self):
        return {"type": "product", "factors": [f.to_dict() for f in self.factors]}


@dataclass(frozen=True)
class Conjugate(SymbolSpec):
    of: SymbolSpec

    def bandwidth(self, exp_factor=EXP_BANDWIDTH_FACTOR):
        return self.of.bandwidth(exp_factor)

    def is_real(self):
        return self.of.is_real()

    def _values(self, grid):
        return np.conj(_raw(self.of, grid))

    def to_dict(self):
        return {"type": "conjugate", "of": self.of.to_dict()}


@dataclass(frozen=True)
class HilbertOf(SymbolSpec):
    of: SymbolSpec

    def __post_init__(self):
        _check_real_child(self, self.of)

    def bandwidth(self, exp_factor=EXP_BANDWIDTH_FACTOR):
        return self.of.bandwidth(exp_factor)

    def is_real(self):
        return True

    def _values(self, grid):
        child = GridFunction(grid, _raw(self.of, grid), real=True)
        return evaluate(hilbert(coefficients(child, grid.max_degree)), grid).values

    def to_dict(self):
        return {"type": "hilbert", "of": self.of.to_dict()}


@dataclass(frozen=True)
class BuiltinH(SymbolSpec):
    """``scale * H_M`` with ``H_M = -sum_{k=2}^M cos(k x) / (k ln k)``."""

    terms: int
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "terms", int(self.terms))
        object.__setattr__(self, "scale", float(self.scale))
        if self.terms < 2:
            raise ValidationError("BuiltinH needs terms >= 2", module="symbol_algebra",
                                  contract="SymbolSpec")

    def series(self):
        return h_series(self.terms, self.scale)

    def bandwidth(self, exp_factor=EXP_BANDWIDTH_FACTOR):
        return self.terms

    def is_real(self):
        return True

    def _values(self, grid):
        return evaluate(self.series(), grid).values

    def to_dict(self):
        return {"type": "h", "terms": self.terms, "scale": _num(self.scale)}


@dataclass(frozen=True)
class Indicator(SymbolSpec):
    """Indicator of a finite union of arcs ``(start, length)``."""

    arcs: tuple

    def __post_init__(self):
        arcs = tuple((float(a) % (2 * math.pi), float(b)) for a, b in self.arcs)
        for _, length in arcs:
            if not 0 < length <= 2 * math.pi:
                raise ValidationError("arc length must lie in (0, 2pi]", module="symbol_algebra",
                                      contract="SymbolSpec")
        object.__setattr__(self, "arcs", arcs)

    def bandwidth(self, exp_factor=EXP_BANDWIDTH_FACTOR):
        return None

    def is_real(self):
        return True

    def _values(self, grid):
        theta = grid.points
        inside = np.zeros(grid.size, dtype=bool)
        for start, length in self.arcs:
            # half-open arcs, with a small guard against rounding at grid points
            inside |= (theta - start + 1e-12) % (2 * math.pi) < length
        return inside.astype(complex)

    def to_dict(self):
        return {"type": "indicator", "arcs": [[_num(a), _num(b)] for a, b in self.arcs]}


def _raw(spec, grid):
    return spec._values(grid)


def realize(spec, grid, exp_factor=EXP_BANDWIDTH_FACTOR):
    """Sample a symbol on ``grid``; band-limited trees must fit the grid.

    ``exp_factor`` is the bandwidth multiplier charged for each ``Exp`` /
    ``ExpI`` node when checking the fit.
    """
    band = spec.bandwidth(exp_factor)
    if band is not None and band > grid.max_degree:
        raise ResolutionError(
            f"symbol bandwidth {band} exceeds the alias-free band {grid.max_degree} "
            f"of a {grid.size}-point grid", module="symbol_algebra", contract="realize")
    real = spec.is_real()
    return GridFunction(grid, _raw(spec, grid), real=real)


def with_terms(spec, M):
    """Copy of ``spec`` with every :class:`BuiltinH` truncated at ``M`` terms."""
    if isinstance(spec, BuiltinH):
        return replace(spec, terms=M)
    if isinstance(spec, (Exp, ExpI, Conjugate, HilbertOf)):
        return type(spec)(with_terms(spec.of, M))
    if isinstance(spec, Product):
        return Product(tuple(with_terms(f, M) for f in spec.factors))
    return spec


def has_builtin_h(spec):
    if isinstance(spec, BuiltinH):
        return True
    if isinstance(spec, Product):
        return any(has_builtin_h(f) for f in spec.factors)
    child = getattr(spec, "of", None)
    return child is not None and has_builtin_h(child)


_NODES = {"char", "trig", "exp", "expi", "product", "conjugate", "hilbert", "h", "indicator"}


def spec_from_dict(d):
    if not isinstance(d, dict) or "type" not in d:
        raise ValidationError(f"symbol node must be an object with a 'type' field: {d!r}",
                              module="symbol_algebra", contract="SymbolSpec")
    kind = d["type"]
    try:
        if kind == "char":
            return Char(int(d["n"]))
        if kind == "trig":
            return Trig(tuple((int(n), complex(_parse_num(re), _parse_num(im)))
                              for n, re, im in d["coeffs"]))
        if kind == "exp":
            return Exp(spec_from_dict(d["of"]))
        if kind == "expi":
            return ExpI(spec_from_dict(d["of"]))
        if kind == "product":
            return Product(tuple(spec_from_dict(f) for f in d["factors"]))
        if kind == "conjugate":
            return Conjugate(spec_from_dict(d["of"]))
        if kind == "hilbert":
            return HilbertOf(spec_from_dict(d["of"]))
        if kind == "h":
            return BuiltinH(int(d["terms"]), _parse_num(d.get("scale", "1"), "scale"))
        if kind == "indicator":
            return Indicator(tuple((_parse_num(a), _parse_num(b)) for a, b in d["arcs"]))
    except KeyError as exc:
        raise ValidationError(f"node {kind!r} is missing field {exc}", module="symbol_algebra",
                              contract="SymbolSpec") from None
    raise ValidationError(f"unknown node type {kind!r}; expected one of {sorted(_NODES)}",
                          module="symbol_algebra", contract="SymbolSpec")


_WRAPPERS = {"exp": Exp, "expi": ExpI, "conj": Conjugate, "hilbert": HilbertOf}


def parse_spec(text):
    """Parse a JSON tree or the inline mini-syntax.

    Inline atoms are ``char:n``, ``trig:[[n,re,im],...]`` and ``h:M[:beta]``;
    ``exp:``, ``expi:``, ``conj:`` and ``hilbert:`` wrap the atom that follows,
    and `` * `` separates the factors of a product, e.g.
    ``char:2 * expi:h:1000:4``.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            return spec_from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"bad JSON symbol: {exc}", module="symbol_algebra") from None
    if " * " in text:
        return Product(tuple(parse_spec(part) for part in text.split(" * ")))
    head, _, rest = text.partition(":")
    if head in _WRAPPERS:
        return _WRAPPERS[head](parse_spec(rest))
    if head == "char":
        try:
            return Char(int(rest))
        except ValueError:
            raise ValidationError(f"bad character index {rest!r}", module="symbol_algebra") from None
    if head == "trig":
        try:
            rows = json.loads(rest)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"bad trig table: {exc}", module="symbol_algebra") from None
        return spec_from_dict({"type": "trig", "coeffs": rows})
    if head == "h":
        parts = rest.split(":")
        try:
            M = int(parts[0])
        except ValueError:
            raise ValidationError(f"bad term count {parts[0]!r}", module="symbol_algebra") from None
        beta = _parse_num(parts[1], "scale") if len(parts) > 1 else 1.0
        return BuiltinH(M, beta)
    raise ValidationError(f"unrecognized symbol syntax {text!r}", module="symbol_algebra",
                          contract="SymbolSpec")


def dumps_spec(spec):
    return json.dumps(spec.to_dict(), sort_keys=True)
