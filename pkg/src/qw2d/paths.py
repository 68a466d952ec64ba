"""Path sums: the four-direction sum Xi_n(l, r, d, u) and binary-indexed +-1 paths.

A 1D path of length n is encoded by an integer k in [0, 2**n): bit j-1 of k
is 1 iff step j goes up (+1). Its operator weight is the ordered product
``F(v_n) ... F(v_2) F(v_1)`` with ``F(-1) = p1`` and ``F(+1) = q1``; the
earliest step sits rightmost.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .coins import Coin, build_walk_operators
from .linalg import identity, tensor_product
from .position import Distribution, as_qubit

MAX_PATH_LENGTH = 30
PAIR_GUARD_BITS = 24
XI_RECURSIVE_MAX = 12
XI_BRUTEFORCE_MAX = 10


class GuardError(ValueError):
    """An enumeration would exceed its size guard."""


def check_pair_guard(n: int, n2: int) -> None:
    if n < 0 or n2 < 0:
        raise ValueError(f"path lengths must be non-negative, got ({n}, {n2})")
    if n + n2 > PAIR_GUARD_BITS:
        raise GuardError(
            f"path-pair enumeration 2^{n + n2} exceeds guard 2^{PAIR_GUARD_BITS}"
        )


@dataclass(frozen=True)
class Path1D:
    length: int
    index: int

    def __post_init__(self):
        if not 0 <= self.length <= MAX_PATH_LENGTH:
            raise ValueError(f"path length must be in [0, {MAX_PATH_LENGTH}], got {self.length}")
        if not 0 <= self.index < (1 << self.length):
            raise ValueError(f"index {self.index} out of range [0, 2^{self.length})")

    @cached_property
    def increments(self) -> tuple[int, ...]:
        return tuple(1 if (self.index >> j) & 1 else -1 for j in range(self.length))

    @cached_property
    def positions(self) -> tuple[int, ...]:
        return (0, *itertools.accumulate(self.increments))

    def w(self, m: int) -> int:
        return self.positions[m]

    def v(self, j: int) -> int:
        """Increment of step j (1-based)."""
        return self.increments[j - 1]


def path_from_index(n: int, k: int) -> Path1D:
    return Path1D(n, k)


def index_from_increments(increments) -> int:
    return sum(1 << j for j, v in enumerate(increments) if v == 1)


@dataclass(frozen=True)
class PathPair:
    first: Path1D
    second: Path1D

    @property
    def n(self) -> int:
        return self.first.length

    @property
    def n2(self) -> int:
        return self.second.length

    def w(self, m: int, m2: int) -> tuple[int, int]:
        return self.first.w(m), self.second.w(m2)


def path_pair(n: int, k: int, n2: int, k2: int) -> PathPair:
    return PathPair(Path1D(n, k), Path1D(n2, k2))


def weight_1d(coin: Coin, path: Path1D) -> np.ndarray:
    out = identity(2)
    p1, q1 = coin.p1, coin.q1
    for v in path.increments:
        out = (q1 if v == 1 else p1) @ out
    return out


def weight_2d(coin: Coin, pair: PathPair) -> np.ndarray:
    return tensor_product(weight_1d(coin, pair.first), weight_1d(coin, pair.second))


# Vectorised forms over all k at once. Row k of each array describes path k.


def all_increments(n: int) -> np.ndarray:
    """``(2**n, n)`` array of +-1 increments."""
    if not 0 <= n <= MAX_PATH_LENGTH:
        raise ValueError(f"path length must be in [0, {MAX_PATH_LENGTH}], got {n}")
    k = np.arange(1 << n, dtype=np.int64)[:, None]
    bits = (k >> np.arange(n, dtype=np.int64)) & 1
    return (2 * bits - 1).astype(np.int64)


def all_positions(n: int) -> np.ndarray:
    """``(2**n, n + 1)`` array of positions w(0..n)."""
    inc = all_increments(n)
    out = np.zeros((inc.shape[0], n + 1), dtype=np.int64)
    np.cumsum(inc, axis=1, out=out[:, 1:])
    return out


def all_weights_1d(coin: Coin, n: int) -> np.ndarray:
    """``(2**n, 2, 2)`` array of path weights.

    Built by extending with the newest step on the left, so the top bit of k
    (the last step) multiplies last.
    """
    p1, q1 = coin.p1, coin.q1
    w = identity(2)[None]
    for _ in range(n):
        w = np.concatenate([p1 @ w, q1 @ w])
    return w


def pair_sum(scalars: np.ndarray, w1: np.ndarray, w2: np.ndarray) -> np.ndarray:
    """Sum over (k, k') of ``scalars[..., k, k'] * (w1[k] (x) w2[k'])``.

    Leading axes of ``scalars`` are kept; the result is ``(..., 4, 4)``.
    """
    s = np.asarray(scalars, dtype=np.complex128)
    # Contract k' first; the remaining k-sum is then over 2x2 (x) 2x2 blocks.
    inner = np.einsum("...ab,bkl->...akl", s, w2)
    out = np.einsum("aij,...akl->...ikjl", w1, inner)
    return out.reshape(out.shape[:-4] + (4, 4))


# Xi tables -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class XiTable:
    n: int
    entries: dict  # (l, r, d, u) -> (4, 4) array

    def total(self) -> np.ndarray:
        return sum(self.entries.values(), np.zeros((4, 4), dtype=np.complex128))

    def rows(self):
        """Dump rows ``{l, r, d, u, re: [16], im: [16]}`` in sorted key order."""
        for key in sorted(self.entries):
            m = self.entries[key].reshape(16)
            l, r, d, u = key
            yield {
                "l": l, "r": r, "d": d, "u": u,
                "re": [float(z) for z in m.real],
                "im": [float(z) for z in m.imag],
            }


def compositions4(n: int):
    """All (l, r, d, u) of non-negative integers summing to n, sorted."""
    for l in range(n + 1):
        for r in range(n + 1 - l):
            for d in range(n + 1 - l - r):
                yield (l, r, d, n - l - r - d)


def xi_recursive(coin: Coin, n: int) -> XiTable:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > XI_RECURSIVE_MAX:
        raise GuardError(
            f"xi_recursive guard: n={n} > {XI_RECURSIVE_MAX}; table too large "
            "(disable the brute-force oracle and use position evolution instead)"
        )
    ops = build_walk_operators(coin).as_tuple()
    table = {(0, 0, 0, 0): identity(4)}
    zero = np.zeros((4, 4), dtype=np.complex128)
    for t in range(1, n + 1):
        new = {}
        for key in compositions4(t):
            acc = zero
            for axis, op in enumerate(ops):
                if key[axis] == 0:
                    continue
                prev = list(key)
                prev[axis] -= 1
                acc = acc + op @ table[tuple(prev)]
            new[key] = acc
        table = new
    return XiTable(n, table)


_BRUTE_CHUNK = 8


def xi_bruteforce(coin: Coin, n: int) -> XiTable:
    """Accumulate the ordered product of every one of the 4**n step sequences."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > XI_BRUTEFORCE_MAX:
        raise GuardError(f"xi_bruteforce guard: n={n} > {XI_BRUTEFORCE_MAX} (4^n sequences)")
    ops = np.stack(build_walk_operators(coin).as_tuple())
    keys = list(compositions4(n))
    slot = {key: i for i, key in enumerate(keys)}
    acc = np.zeros((len(keys), 4, 4), dtype=np.complex128)

    inner = min(n, _BRUTE_CHUNK)
    outer = n - inner
    # Each row of `seqs` is one sequence of inner steps; column j is the
    # direction of step j (0=L, 1=R, 2=D, 3=U).
    seqs = np.array(list(itertools.product(range(4), repeat=inner)), dtype=np.int64)
    seqs = seqs.reshape(4**inner, inner)
    inner_counts = np.stack([(seqs == a).sum(axis=1) for a in range(4)], axis=1)
    inner_prod = np.broadcast_to(identity(4), (seqs.shape[0], 4, 4)).copy()
    for j in range(inner):
        inner_prod = ops[seqs[:, j]] @ inner_prod

    for prefix in itertools.product(range(4), repeat=outer):
        # the outer steps come after the inner ones in time
        left = identity(4)
        for a in prefix:
            left = ops[a] @ left
        counts = inner_counts + np.bincount(np.array(prefix, dtype=np.int64), minlength=4)
        idx = np.array([slot[tuple(c)] for c in counts.tolist()])
        np.add.at(acc, idx, left @ inner_prod)
    return XiTable(n, {key: acc[i] for i, key in enumerate(keys)})


def xi_amplitudes(table: XiTable, phi) -> dict:
    """Psi_n(x, y): coherent sum of Xi(l, r, d, u) phi over buckets landing on (x, y)."""
    vec = as_qubit(phi).as_array()
    amps: dict = {}
    for (l, r, d, u), m in table.entries.items():
        site = (r - l, u - d)
        amps[site] = amps.get(site, 0) + m @ vec
    return amps


def prob_from_xi(table: XiTable, phi) -> Distribution:
    """Position law from the Xi table.

    Several (l, r, d, u) buckets share an endpoint, so their amplitudes are
    added before taking the squared norm.
    """
    probs = {}
    for site, amp in sorted(xi_amplitudes(table, phi).items()):
        p = float(np.sum(np.abs(amp) ** 2))
        if p > 0:
            probs[site] = p
    return Distribution(table.n, probs)
