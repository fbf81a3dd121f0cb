"""Check the Bohnenblust-Hille inequality on explicit real multilinear forms.

For an m-linear form ``U`` on ``R^N`` the left side is the
``l_{2m/(m+1)}`` norm of the coefficient tensor ``U(e_i1, ..., e_im)``; the
right side is ``sup |U|`` over the unit polydisk ``[-1, 1]^N`` in each slot.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from .errors import DomainError, SizeError
from .special import compensated_sum

#: largest number of sign vertices the exact supremum may enumerate
MAX_VERTEX_LOG2 = 24
# rows of the expanded vertex table held in memory at once
_CHUNK_ROWS = 1 << 16


class Distribution(enum.Enum):
    UNIFORM_SIGNS = "signs"
    UNIFORM_INTERVAL = "interval"


@dataclass(frozen=True, eq=False)
class MultilinearForm:
    """Dense coefficient tensor of shape ``(N,) * m``; entry ``[i1, ..., im]``
    is ``U(e_i1, ..., e_im)``."""

    m: int
    N: int
    coefficients: np.ndarray

    def __post_init__(self):
        if not (isinstance(self.m, (int, np.integer)) and self.m >= 1):
            raise DomainError(f"arity m must be a positive integer, got {self.m!r}")
        if not (isinstance(self.N, (int, np.integer)) and self.N >= 1):
            raise DomainError(f"dimension N must be a positive integer, got {self.N!r}")
        c = np.asarray(self.coefficients, dtype=float)
        if c.size != self.N ** self.m:
            raise DomainError(f"expected {self.N ** self.m} coefficients, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise DomainError("coefficients must be finite")
        c = c.reshape((self.N,) * self.m)
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def from_flat(cls, m: int, N: int, flat) -> MultilinearForm:
        return cls(m, N, np.asarray(flat, dtype=float))

    @classmethod
    def from_mapping(cls, obj: Mapping[str, Any]) -> MultilinearForm:
        """Build from ``{"m": int, "N": int, "coefficients": [...]}`` with
        strict validation."""
        if not isinstance(obj, Mapping):
            raise DomainError("form must be a JSON object")
        for key in ("m", "N", "coefficients"):
            if key not in obj:
                raise DomainError(f"missing field {key!r}")
        m, N, coeffs = obj["m"], obj["N"], obj["coefficients"]
        for key, v in (("m", m), ("N", N)):
            if isinstance(v, bool) or not isinstance(v, int):
                raise DomainError(f"field {key!r} must be an integer, got {v!r}")
        if not isinstance(coeffs, list):
            raise DomainError("field 'coefficients' must be a flat array")
        for i, v in enumerate(coeffs):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise DomainError(f"coefficients[{i}] is not a number: {v!r}")
        if m < 1 or N < 1:
            raise DomainError("m and N must be positive")
        if len(coeffs) != N ** m:
            raise DomainError(f"coefficients has length {len(coeffs)}, expected N**m = {N ** m}")
        return cls.from_flat(m, N, coeffs)

    @classmethod
    def from_json(cls, text: str) -> MultilinearForm:
        return cls.from_mapping(json.loads(text))

    def to_mapping(self) -> dict:
        return {"m": int(self.m), "N": int(self.N), "coefficients": self.coefficients.ravel().tolist()}

    @property
    def vertex_log2(self) -> int:
        return (self.m - 1) * self.N

    def scaled(self, t: float) -> MultilinearForm:
        return MultilinearForm(self.m, self.N, self.coefficients * t)

    def permuted(self, order) -> MultilinearForm:
        return MultilinearForm(self.m, self.N, np.transpose(self.coefficients, order))


@dataclass(frozen=True)
class VerificationReport:
    lhs: float
    sup: float
    ratio: float
    constant: float
    satisfied: bool
    certified: bool

    def to_mapping(self) -> dict:
        return {
            "lhs": self.lhs,
            "sup": self.sup,
            "ratio": self.ratio,
            "constant": self.constant,
            "satisfied": self.satisfied,
            "certified": self.certified,
        }


def mixed_exponent(m: int) -> float:
    return 2.0 * m / (m + 1)


def lhs_mixed_norm(form: MultilinearForm) -> float:
    q = mixed_exponent(form.m)
    powers = np.abs(form.coefficients.ravel()) ** q
    return compensated_sum(powers.tolist()) ** (1.0 / q)


def sign_vectors(N: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows ``start:stop`` of the ``2**N`` vectors in ``{-1, 1}**N``, ordered
    with the first coordinate varying slowest (row ``i`` has ``-1`` wherever
    the binary digits of ``i`` are set)."""
    stop = 1 << N if stop is None else stop
    bits = (np.arange(start, stop)[:, None] >> np.arange(N - 1, -1, -1)) & 1
    return 1.0 - 2.0 * bits


def sup_norm_real_exact(form: MultilinearForm) -> float:
    """Exact ``sup |U|`` over the real unit polydisk.

    ``|U|`` is convex in each slot separately, so the supremum is reached on
    sign vertices.  Slots ``1..m-1`` are enumerated; for fixed arguments there
    the last slot sees a linear functional whose max over ``[-1, 1]**N`` is
    the l1 norm of its coefficients.  The first slot's sign vectors are
    restricted to a leading ``+1`` since ``U(-z, ...) = -U(z, ...)``.
    """
    if form.vertex_log2 > MAX_VERTEX_LOG2:
        raise SizeError(f"2**{form.vertex_log2} sign vertices exceed the cap 2**{MAX_VERTEX_LOG2}")
    c = form.coefficients
    if form.m == 1:
        return float(np.abs(c).sum())
    N = form.N
    signs = sign_vectors(N) if form.m > 2 else None
    inner = 1 << ((form.m - 2) * N)
    step = max(1, _CHUNK_ROWS // inner)
    best = 0.0
    for start in range(0, 1 << (N - 1), step):
        block = sign_vectors(N, start, min(start + step, 1 << (N - 1)))
        # x has shape (rows, N, ..., N) with one free slot fewer per contraction
        x = np.tensordot(block, c, axes=([1], [0]))
        for _ in range(form.m - 2):
            x = np.tensordot(x, signs, axes=([1], [1]))
            x = np.moveaxis(x, -1, 1).reshape((-1,) + x.shape[1:-1])
        best = max(best, float(np.abs(x).sum(axis=-1).max()))
    return best


def check_inequality(form: MultilinearForm, constant: float) -> VerificationReport:
    """Compare ``lhs / sup`` with ``constant``; an all-zero form reports ratio 0."""
    if not constant > 0:
        raise DomainError(f"constant must be positive, got {constant!r}")
    lhs = lhs_mixed_norm(form)
    sup = sup_norm_real_exact(form)
    ratio = lhs / sup if sup > 0 else 0.0
    return VerificationReport(lhs, sup, ratio, float(constant), ratio <= constant + 1e-9, True)


def littlewood_witness() -> MultilinearForm:
    """The bilinear form ``x1 y1 + x1 y2 + x2 y1 - x2 y2``, extremal for ``C_{R,2}``."""
    return MultilinearForm(2, 2, np.array([[1.0, 1.0], [1.0, -1.0]]))


def random_form(m: int, N: int, seed: int, distribution=Distribution.UNIFORM_INTERVAL) -> MultilinearForm:
    """Random form drawn with numpy's PCG64 generator seeded by ``seed``."""
    if (m - 1) * N > MAX_VERTEX_LOG2:
        raise SizeError(f"2**{(m - 1) * N} sign vertices exceed the cap 2**{MAX_VERTEX_LOG2}")
    rng = np.random.Generator(np.random.PCG64(seed))
    shape = (N,) * m
    if Distribution(distribution) is Distribution.UNIFORM_SIGNS:
        coeffs = rng.choice(np.array([-1.0, 1.0]), size=shape)
    else:
        coeffs = rng.uniform(-1.0, 1.0, size=shape)
    return MultilinearForm(m, N, coeffs)
