"""Iterated (mixed) norms on finite multi-index arrays.

The mixed norm with exponent vector ``p = (p_1, ..., p_d)`` reduces axis 1
first with exponent ``p_1``, then axis 2 with ``p_2``, and so on::

    ||x||_p = || ... || ||x||_{p_1, axis 1} ||_{p_2, axis 2} ... ||_{p_d, axis d}

All norms in this module use counting measure (plain sums, no averaging).
Normalized grid norms for periodic functions live in
:mod:`anisowidth.trig_approx`.

Conventions
-----------
* Exponents are stored through their reciprocals, ``recip = 1/p`` with
  ``recip = 0`` meaning ``p = inf``.  Integer and ``Fraction`` inputs keep
  exact rational reciprocals; float inputs degrade that entry to float.
* A :class:`Tensor` stores a flat ``float64`` buffer in which axis 1 is the
  fastest-varying index.  For a nested list input this means the innermost
  list runs along axis 1.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "EPS_TOL",
    "ValidationError",
    "PropertyViolation",
    "DeskScaleError",
    "ExponentVector",
    "Tensor",
    "as_exponents",
    "mixed_norm",
    "dual_exponents",
    "norming_functional",
    "norm_duality_lower",
    "InterpolationReport",
    "holder_interpolation_check",
    "tensor_to_json",
    "tensor_from_json",
    "tensor_to_bytes",
    "tensor_from_bytes",
]

# Relative slack for all norm-inequality assertions.
EPS_TOL = 1e-10

Number = Union[int, float, Fraction]


class ValidationError(ValueError):
    """Malformed input: bad shapes, exponents out of range, NaN data."""


class PropertyViolation(AssertionError):
    """A mathematical invariant failed at runtime."""


class DeskScaleError(ValueError):
    """Requested problem size exceeds the desk-scale guard."""


def _recip_of(value) -> Union[Fraction, float]:
    """Reciprocal of an exponent value, exact for int/Fraction inputs."""
    if isinstance(value, np.integer):
        value = int(value)
    elif isinstance(value, np.floating):
        value = float(value)
    if value == math.inf:
        return Fraction(0)
    if isinstance(value, str):
        if value.lower() in ("inf", "infinity"):
            return Fraction(0)
        raise ValidationError(f"bad exponent string {value!r}")
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        if value <= 0:
            raise ValidationError(f"exponent must be positive, got {value}")
        return Fraction(1, 1) / Fraction(value)
    if isinstance(value, float):
        if not value > 0:
            raise ValidationError(f"exponent must be positive, got {value}")
        if value.is_integer():
            return Fraction(1, int(value))
        return 1.0 / value
    raise ValidationError(f"unsupported exponent type {type(value).__name__}")


@dataclass(frozen=True)
class ExponentVector:
    """Vector of norm exponents in ``[1, inf]``, stored as reciprocals.

    ``recip[j] == 0`` encodes ``p_j = inf``.  Entries are ``Fraction`` when
    the exponent was given exactly, ``float`` otherwise.
    """

    recip: tuple

    def __post_init__(self):
        if not self.recip:
            raise ValidationError("exponent vector must have at least one axis")
        for r in self.recip:
            if not (0 <= r <= 1):
                raise ValidationError(
                    f"reciprocal exponent {r} outside [0, 1] (i.e. p outside [1, inf])"
                )

    @classmethod
    def from_p(cls, values) -> "ExponentVector":
        if isinstance(values, ExponentVector):
            return values
        return cls(tuple(_recip_of(v) for v in values))

    @property
    def d(self) -> int:
        return len(self.recip)

    @property
    def p(self) -> tuple:
        out = []
        for r in self.recip:
            if r == 0:
                out.append(math.inf)
            elif isinstance(r, Fraction):
                out.append(Fraction(1, 1) / r)
            else:
                out.append(1.0 / r)
        return tuple(out)

    def dual(self) -> "ExponentVector":
        return ExponentVector(tuple(1 - r for r in self.recip))


def as_exponents(p) -> ExponentVector:
    """Coerce an ExponentVector or a sequence of exponent values."""
    return ExponentVector.from_p(p)


def dual_exponents(p) -> ExponentVector:
    """Entrywise conjugate exponents, 1/p + 1/p' = 1."""
    return as_exponents(p).dual()


class Tensor:
    """Immutable d-way array with a flat axis-1-fastest float64 layout."""

    __slots__ = ("shape", "_flat")

    def __init__(self, shape: Sequence[int], data):
        shape = tuple(int(s) for s in shape)
        if not shape or any(s < 1 for s in shape):
            raise ValidationError(f"bad tensor shape {shape}")
        flat = np.asarray(data, dtype=np.float64).reshape(-1)
        size = math.prod(shape)
        if flat.size != size:
            raise ValidationError(
                f"data has {flat.size} entries, shape {shape} needs {size}"
            )
        flat = flat.copy()
        flat.flags.writeable = False
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "_flat", flat)

    def __setattr__(self, name, value):
        raise AttributeError("Tensor is immutable")

    @classmethod
    def from_array(cls, arr) -> "Tensor":
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim == 0:
            arr = arr.reshape(1)
        return cls(arr.shape, np.ravel(arr, order="F"))

    @property
    def data(self) -> np.ndarray:
        """Flat read-only buffer, axis 1 fastest."""
        return self._flat

    @property
    def array(self) -> np.ndarray:
        """Read-only d-way view, index order (axis 1, ..., axis d)."""
        return self._flat.reshape(self.shape, order="F")

    @property
    def d(self) -> int:
        return len(self.shape)

    @property
    def size(self) -> int:
        return self._flat.size

    def __repr__(self):
        return f"Tensor(shape={self.shape}, data={self._flat.tolist()!r})"

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._flat, other._flat)

    def __hash__(self):
        return hash((self.shape, self._flat.tobytes()))


def _reduce_axis0(a: np.ndarray, recip) -> np.ndarray:
    """Collapse axis 0 of a nonnegative array with exponent 1/recip."""
    if recip == 0:
        return a.max(axis=0)
    if recip == 1:
        return a.sum(axis=0)
    if 2 * recip == 1:
        return np.sqrt((a * a).sum(axis=0))
    pf = float(Fraction(1, 1) / recip) if isinstance(recip, Fraction) else 1.0 / recip
    m = a.max(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = np.where(m > 0, a / np.where(m > 0, m, 1.0), 0.0)
    return m * (scaled**pf).sum(axis=0) ** (1.0 / pf)


def mixed_norm(x: Tensor, p) -> float:
    """Iterated norm of ``x``, reducing axis 1 first, counting measure.

    Parameters
    ----------
    x : Tensor
    p : ExponentVector or sequence of exponents in [1, inf]

    Returns
    -------
    float
        ``||x||_p >= 0``; exact sums/maxima are used for p in {1, 2, inf},
        a max-factored power sum otherwise.
    """
    p = as_exponents(p)
    if p.d != x.d:
        raise ValidationError(f"exponent vector has {p.d} axes, tensor has {x.d}")
    a = np.abs(x.array)
    if np.isnan(a).any():
        raise ValidationError("NaN in tensor data")
    for recip in p.recip:
        a = _reduce_axis0(a, recip)
    return float(a)


def norming_functional(x: Tensor, p) -> Tensor:
    """A tensor ``y`` with ``<x, y> = ||x||_p`` and ``||y||_{p'} = 1``.

    For ``x = 0`` returns the zero tensor.  Infinite exponents pick the
    first maximizing index along their axis, so the result is deterministic.
    """
    p = as_exponents(p)
    if p.d != x.d:
        raise ValidationError(f"exponent vector has {p.d} axes, tensor has {x.d}")
    a = np.abs(x.array)
    if np.isnan(a).any():
        raise ValidationError("NaN in tensor data")
    partials = [a]
    for recip in p.recip:
        partials.append(_reduce_axis0(partials[-1], recip))
    y = np.sign(x.array).astype(np.float64)
    for k, recip in enumerate(p.recip):
        prev, cur = partials[k], partials[k + 1]
        if recip == 0:
            w = np.zeros_like(prev)
            idx = np.expand_dims(np.argmax(prev, axis=0), axis=0)
            np.put_along_axis(w, idx, 1.0, axis=0)
        else:
            pf = float(Fraction(1, 1) / recip) if isinstance(recip, Fraction) else 1.0 / recip
            cur_safe = np.where(cur > 0, cur, 1.0)
            w = np.where(cur > 0, prev / cur_safe, 0.0) ** (pf - 1.0)
        y = y * w
    return Tensor.from_array(y)


def norm_duality_lower(x: Tensor, p, trials: int = 64, seed: int = 0) -> float:
    """Lower bound on ``||x||_p`` via pairings with unit dual-norm tensors.

    Maximizes ``<x, y> / ||y||_{p'}`` over random Gaussian candidates plus
    the norming functional of ``x`` itself, so the bound is within rounding
    of the true norm while certifying ``<= ||x||_p`` by duality.
    """
    p = as_exponents(p)
    if trials < 0:
        raise ValidationError("trials must be nonnegative")
    pd = p.dual()
    rng = np.random.default_rng(seed)
    candidates = [norming_functional(x, p).array]
    for _ in range(trials):
        candidates.append(rng.standard_normal(x.shape))
    xs = x.array
    best = 0.0
    for yarr in candidates:
        ny = mixed_norm(Tensor.from_array(yarr), pd)
        if ny == 0:
            continue
        best = max(best, abs(float((xs * yarr).sum())) / ny)
    return best


@dataclass(frozen=True)
class InterpolationReport:
    """Outcome of one interpolation inequality check."""

    lhs: float
    rhs: float
    holds: bool
    p_tilde: ExponentVector


def holder_interpolation_check(x: Tensor, q, weight) -> InterpolationReport:
    """Check ``||x||_{p~'} <= ||x||_{q'}^(1-w) * ||x||_2^w`` for one tensor.

    Here ``1/p~_j = (1-w)/q_j + w/2`` entrywise, primes are conjugate
    exponents, and ``w`` ranges over [0, 1].  Requires ``q_j >= 2``.
    Returns both sides and whether the inequality holds up to relative
    slack ``EPS_TOL``.
    """
    q = as_exponents(q)
    if not (0 <= weight <= 1):
        raise ValidationError(f"interpolation weight {weight} outside [0, 1]")
    for r in q.recip:
        if r > Fraction(1, 2):
            raise ValidationError("interpolation requires q_j >= 2 on every axis")
    half = Fraction(1, 2)
    p_tilde = ExponentVector(tuple((1 - weight) * r + weight * half for r in q.recip))
    two = ExponentVector((half,) * q.d)
    lhs = mixed_norm(x, p_tilde.dual())
    rhs = mixed_norm(x, q.dual()) ** (1.0 - float(weight)) * mixed_norm(x, two) ** float(
        weight
    )
    holds = lhs <= rhs * (1.0 + EPS_TOL) + 1e-300
    return InterpolationReport(lhs=lhs, rhs=rhs, holds=holds, p_tilde=p_tilde)


# ---------------------------------------------------------------------------
# serialization

_MAGIC = b"AWT1"


def tensor_to_json(x: Tensor) -> str:
    return json.dumps(
        {"shape": list(x.shape), "data": x.data.tolist()}, sort_keys=True
    )


def tensor_from_json(text: str) -> Tensor:
    try:
        obj = json.loads(text)
        return Tensor(obj["shape"], obj["data"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"bad tensor JSON: {exc}") from exc


def tensor_to_bytes(x: Tensor) -> bytes:
    head = _MAGIC + struct.pack("<I", x.d) + struct.pack(f"<{x.d}I", *x.shape)
    return head + x.data.astype("<f8").tobytes()


def tensor_from_bytes(blob: bytes) -> Tensor:
    if len(blob) < 8 or blob[:4] != _MAGIC:
        raise ValidationError("bad tensor blob header")
    (d,) = struct.unpack_from("<I", blob, 4)
    need = 8 + 4 * d
    if len(blob) < need:
        raise ValidationError("truncated tensor blob shape header")
    shape = struct.unpack_from(f"<{d}I", blob, 8)
    size = math.prod(shape)
    payload = blob[need:]
    if len(payload) != 8 * size:
        raise ValidationError("tensor blob payload size mismatch")
    return Tensor(shape, np.frombuffer(payload, dtype="<f8"))
