"""Prefix representations of subsets of the naturals and sumset kernels.

A :class:`GroundSet` is ``X ∩ [0, N]`` stored as little-endian packed 64-bit
words (element ``x`` is bit ``x % 64`` of word ``x // 64``).  Because every
element is nonnegative, ``(A + B) ∩ [0, N]`` only depends on ``A ∩ [0, N]``
and ``B ∩ [0, N]``, so all kernels here are exact at any horizon.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .numeric import FixedPointReal, IrrationalNumber, floor_mul_many, sign_vs_rational

__all__ = [
    "FiniteSet",
    "GroundSet",
    "PeriodicSet",
    "WORD_BITS",
    "add_sets",
    "counting",
    "floor_scale",
    "iterated_sumset",
    "materialize",
    "read_binary",
    "read_text",
    "sumset",
    "write_binary",
    "write_text",
]

WORD_BITS = 64
_WORD = np.dtype("<u8")
_ALL_ONES = np.uint64(0xFFFF_FFFF_FFFF_FFFF)

# below this many elements on the smaller side, shift-or beats an FFT pass
SHIFT_OR_LIMIT = 2048


def _nwords(horizon: int) -> int:
    return horizon // WORD_BITS + 1


def _tail_mask(horizon: int) -> np.uint64:
    used = horizon % WORD_BITS + 1
    if used == WORD_BITS:
        return _ALL_ONES
    return np.uint64((1 << used) - 1)


class GroundSet:
    """``X ∩ [0, horizon]`` as packed bits with a cached counting function.

    ``count_prefix[x] = |X ∩ [1, x]|``; element 0 is stored but never counted.
    Instances are treated as immutable.
    """

    __slots__ = ("horizon", "words", "_mask", "_prefix")

    def __init__(self, horizon: int, words: np.ndarray):
        if horizon < 0:
            raise ValueError("horizon must be nonnegative")
        words = np.array(words, dtype=_WORD)
        if words.shape != (_nwords(horizon),):
            raise ValueError(f"expected {_nwords(horizon)} words for horizon {horizon}")
        words[-1] &= _tail_mask(horizon)
        words.flags.writeable = False
        self.horizon = horizon
        self.words = words
        self._mask = None
        self._prefix = None

    @classmethod
    def from_mask(cls, mask) -> GroundSet:
        mask = np.asarray(mask, dtype=bool)
        horizon = len(mask) - 1
        packed = np.packbits(mask, bitorder="little")
        buf = np.zeros(_nwords(horizon) * 8, dtype=np.uint8)
        buf[: len(packed)] = packed
        return cls(horizon, buf.view(_WORD))

    @classmethod
    def from_elements(cls, elements: Iterable[int], horizon: int) -> GroundSet:
        """Build from elements; anything above ``horizon`` is dropped."""
        arr = np.fromiter((int(e) for e in elements), dtype=np.int64)
        if arr.size and arr.min() < 0:
            raise ValueError("elements must be nonnegative")
        mask = np.zeros(horizon + 1, dtype=bool)
        mask[arr[arr <= horizon]] = True
        return cls.from_mask(mask)

    @classmethod
    def empty(cls, horizon: int) -> GroundSet:
        return cls(horizon, np.zeros(_nwords(horizon), dtype=_WORD))

    @classmethod
    def interval(cls, horizon: int) -> GroundSet:
        """The full prefix ``[0, horizon]``."""
        return cls(horizon, np.full(_nwords(horizon), _ALL_ONES, dtype=_WORD))

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            bits = np.unpackbits(self.words.view(np.uint8), bitorder="little")
            m = bits[: self.horizon + 1].astype(bool)
            m.flags.writeable = False
            self._mask = m
        return self._mask

    @property
    def count_prefix(self) -> np.ndarray:
        if self._prefix is None:
            c = np.cumsum(self.mask, dtype=np.int64)
            if self.mask[0]:
                c -= 1
            c.flags.writeable = False
            self._prefix = c
        return self._prefix

    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def counting(self, x) -> int:
        return counting(self, x)

    def restrict(self, horizon: int) -> GroundSet:
        if horizon > self.horizon:
            raise ValueError(f"cannot extend horizon {self.horizon} to {horizon}")
        return GroundSet.from_mask(self.mask[: horizon + 1])

    def issubset(self, other: GroundSet) -> bool:
        _same_horizon(self, other)
        return not np.any(self.words & ~other.words)

    def __contains__(self, x) -> bool:
        x = int(x)
        if x < 0 or x > self.horizon:
            return False
        return bool((int(self.words[x // WORD_BITS]) >> (x % WORD_BITS)) & 1)

    def __len__(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def __iter__(self) -> Iterator[int]:
        return (int(x) for x in self.elements())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroundSet):
            return NotImplemented
        return self.horizon == other.horizon and np.array_equal(self.words, other.words)

    __hash__ = None

    def __repr__(self) -> str:
        els = self.elements()
        shown = ", ".join(str(int(e)) for e in els[:8])
        if len(els) > 8:
            shown += ", ..."
        return f"GroundSet(horizon={self.horizon}, {{{shown}}})"


@dataclass(frozen=True)
class FiniteSet:
    """A small explicit set; ``k`` is its size and ``b`` its maximum."""

    elements: tuple

    def __post_init__(self):
        els = tuple(sorted({int(e) for e in self.elements}))
        if len(els) != len(self.elements):
            raise ValueError("elements must be distinct")
        if els and els[0] < 0:
            raise ValueError("elements must be nonnegative")
        object.__setattr__(self, "elements", els)

    @classmethod
    def parse(cls, text: str) -> FiniteSet:
        """Parse a comma-separated list such as ``"0,1,5"``."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            raise ValueError("empty set")
        return cls(tuple(int(p) for p in parts))

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def b(self) -> int:
        if not self.elements:
            raise ValueError("empty set has no maximum")
        return self.elements[-1]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class PeriodicSet:
    """The union of progressions ``modulus*N + r`` over ``r`` in ``residues``."""

    modulus: int
    residues: tuple

    def __post_init__(self):
        if self.modulus <= 0:
            raise ValueError("modulus must be positive")
        res = tuple(sorted({int(r) for r in self.residues}))
        if any(not 0 <= r < self.modulus for r in res):
            raise ValueError(f"residues must lie in [0, {self.modulus})")
        object.__setattr__(self, "residues", res)

    def materialize(self, horizon: int) -> GroundSet:
        return materialize(self, horizon)


def counting(X: GroundSet, x) -> int:
    """``X(x) = |X ∩ [1, x]|``, zero for ``x < 1``."""
    x = math.floor(x)
    if x > X.horizon:
        raise ValueError(f"x={x} beyond horizon {X.horizon}")
    if x < 1:
        return 0
    return int(X.count_prefix[x])


def materialize(P: PeriodicSet, horizon: int) -> GroundSet:
    mask = np.zeros(horizon + 1, dtype=bool)
    for r in P.residues:
        mask[r :: P.modulus] = True
    return GroundSet.from_mask(mask)


def _shift_up(words: np.ndarray, s: int) -> np.ndarray:
    """Packed words of ``{x + s}``, truncated to the same word count."""
    n = len(words)
    q, r = divmod(s, WORD_BITS)
    out = np.zeros(n, dtype=_WORD)
    if q >= n:
        return out
    if r == 0:
        out[q:] = words[: n - q]
    else:
        out[q:] = words[: n - q] << np.uint64(r)
        out[q + 1 :] |= words[: n - q - 1] >> np.uint64(WORD_BITS - r)
    return out


def _shift_or(X: GroundSet, shifts: Iterable[int]) -> GroundSet:
    acc = np.zeros_like(X.words)
    for s in shifts:
        if s <= X.horizon:
            acc |= _shift_up(X.words, int(s))
    return GroundSet(X.horizon, acc)


def _fft_sumset(X: GroundSet, Y: GroundSet):
    """Sumset via float FFT convolution; ``None`` when rounding is not safe."""
    N = X.horizon
    size = 1 << (2 * N + 1).bit_length()
    fx = np.fft.rfft(X.mask.astype(np.float64), size)
    fy = np.fft.rfft(Y.mask.astype(np.float64), size)
    conv = np.fft.irfft(fx * fy, size)[: N + 1]
    # a priori bound on the convolution error for 0/1 inputs
    bound = 8 * np.finfo(np.float64).eps * math.log2(size) * math.sqrt(len(X) * len(Y)) * math.sqrt(size)
    if bound >= 0.25:
        return None
    if np.abs(conv - np.rint(conv)).max() >= 0.25:
        return None
    return GroundSet.from_mask(conv > 0.5)


def _same_horizon(X: GroundSet, Y: GroundSet) -> None:
    if X.horizon != Y.horizon:
        raise ValueError(f"horizon mismatch: {X.horizon} vs {Y.horizon}")


def add_sets(X: GroundSet, Y: GroundSet) -> GroundSet:
    """``(X + Y) ∩ [0, N]`` for two sets on a common horizon ``N``."""
    _same_horizon(X, Y)
    small, big = (X, Y) if len(X) <= len(Y) else (Y, X)
    if len(small) <= SHIFT_OR_LIMIT:
        return _shift_or(big, small.elements())
    out = _fft_sumset(X, Y)
    if out is None:
        out = _shift_or(big, small.elements())
    return out


def sumset(A: GroundSet, B: FiniteSet) -> GroundSet:
    """``(A + B) ∩ [0, N]`` as the union of ``A`` shifted by each ``b``."""
    return _shift_or(A, B.elements)


def iterated_sumset(A: GroundSet, j: int) -> GroundSet:
    """``(jA) ∩ [0, N]`` by ``j - 1`` successive foldings with ``A``."""
    if j < 1:
        raise ValueError("j must be at least 1")
    out = A
    for _ in range(j - 1):
        out = add_sets(out, A)
    return out


def floor_scale(X: GroundSet, theta, horizon: int) -> GroundSet:
    """``{floor(theta*a) : a in X}`` truncated at ``horizon``; needs ``theta >= 1``."""
    if isinstance(theta, (IrrationalNumber, FixedPointReal)):
        if sign_vs_rational(theta, 1, 1) < 0:
            raise ValueError("floor scaling needs theta >= 1")
    elif theta < 1:
        raise ValueError("floor scaling needs theta >= 1")
    els = X.elements()
    if els.size == 0:
        return GroundSet.empty(horizon)
    return GroundSet.from_elements(floor_mul_many(theta, els), horizon)


# -- serialization -------------------------------------------------------


def dumps_text(X: GroundSet) -> str:
    lines = [f"horizon={X.horizon}"]
    lines.extend(str(int(e)) for e in X.elements())
    return "\n".join(lines) + "\n"


def loads_text(text: str) -> GroundSet:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("horizon="):
        raise ValueError("missing 'horizon=N' header")
    horizon = int(lines[0].split("=", 1)[1])
    els = [int(line) for line in lines[1:] if line.strip()]
    if any(e > horizon for e in els):
        raise ValueError("element beyond declared horizon")
    return GroundSet.from_elements(els, horizon)


def dumps_binary(X: GroundSet) -> bytes:
    return struct.pack("<Q", X.horizon) + X.words.astype(_WORD).tobytes()


def loads_binary(data: bytes) -> GroundSet:
    (horizon,) = struct.unpack_from("<Q", data)
    words = np.frombuffer(data, dtype=_WORD, offset=8)
    return GroundSet(horizon, words)


def write_text(X: GroundSet, path) -> None:
    Path(path).write_text(dumps_text(X))


def read_text(path) -> GroundSet:
    return loads_text(Path(path).read_text())


def write_binary(X: GroundSet, path) -> None:
    Path(path).write_bytes(dumps_binary(X))


def read_binary(path) -> GroundSet:
    return loads_binary(Path(path).read_bytes())
