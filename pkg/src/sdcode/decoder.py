"""Hard-decision iterative decoder.

Each iteration forms, for every set word b, the ring product
w(x) = sum_i r_i(x) b_i(x^-1); because every pair of codewords is
orthogonal under this product, w depends only on the error pattern.
Shifting w by each support exponent of each block of b realigns the
error positions, so tallying coefficient hits per (cycle, position)
concentrates counts on the error coordinates. The largest tally is
flipped and the loop repeats until the word passes the syndrome test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .codes import BlockWord, CodeModel, block_inner
from .ring import RingElement
from .search import DecodingSet

SUCCESS = "success"
FAILURE_STALL = "failure_stall"
FAILURE_CYCLE = "failure_cycle"
FAILURE_ITERATION_CAP = "failure_iteration_cap"


@dataclass(frozen=True)
class PhiTable:
    """Per-(cycle, position) tallies and their maximum."""

    counts: tuple[tuple[int, ...], ...]
    max_value: int
    argmax_positions: tuple[tuple[int, int], ...]

    @classmethod
    def from_counts(cls, counts: list[list[int]]) -> "PhiTable":
        mx = max(max(row) for row in counts)
        argmax = tuple(
            (s, j)
            for s, row in enumerate(counts)
            for j, v in enumerate(row)
            if v == mx
        )
        return cls(tuple(tuple(row) for row in counts), mx, argmax)


@dataclass
class DecodeOutcome:
    status: str
    codeword: Optional[BlockWord]
    iterations: int
    flips: list[tuple[int, int]] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.status == SUCCESS


def compute_w(r: BlockWord, b: BlockWord) -> RingElement:
    """Inner product of the received word with a set word."""
    return block_inner(r, b)


def phi_accumulate(r: BlockWord, dset: DecodingSet) -> PhiTable:
    """Tally shifted coefficients of every w over the whole decoding set.

    For each set word b and each support exponent i of block s of b, the
    shifted polynomial x^i * w contributes its coefficient pattern to
    cycle s: position j receives the coefficient of w at (j - i) mod m.
    """
    if r.m != dset.m or r.t1 != dset.t1:
        raise ValueError("shape mismatch between word and decoding set")
    m, t1 = dset.m, dset.t1
    counts = [[0] * m for _ in range(t1)]
    for word, supports in zip(dset.words, dset.supports):
        w = compute_w(r, word)
        wl = w.coeff_list()
        for s in range(t1):
            row = counts[s]
            for i in supports[s]:
                shifted = wl[-i:] + wl[:-i] if i else wl
                for j in range(m):
                    row[j] += shifted[j]
    return PhiTable.from_counts(counts)


def decode(
    r: BlockWord,
    code: CodeModel,
    dset: DecodingSet,
    max_iters: Optional[int] = None,
    flip_rule: str = "single",
) -> DecodeOutcome:
    """Iteratively flip the highest-tally position until r is a codeword.

    flip_rule 'single' flips only the lexicographically smallest
    (cycle, position) attaining the maximum; 'all_tied' flips every
    position attaining it in the same iteration.
    """
    if r.m != code.m or r.t1 != code.t1:
        raise ValueError("shape mismatch between word and code")
    if flip_rule not in ("single", "all_tied"):
        raise ValueError(f"unknown flip rule {flip_rule!r}")
    if max_iters is None:
        max_iters = code.n
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")

    visited = {r.to_int()}
    flips: list[tuple[int, int]] = []
    iterations = 0
    while True:
        if code.is_member(r):
            return DecodeOutcome(SUCCESS, r, iterations, flips)
        phi = phi_accumulate(r, dset)
        if phi.max_value == 0:
            return DecodeOutcome(FAILURE_STALL, None, iterations, flips)
        targets = phi.argmax_positions if flip_rule == "all_tied" else phi.argmax_positions[:1]
        blocks = list(r.blocks)
        for s, j in targets:
            blocks[s] = blocks[s] + RingElement.monomial(r.m, j)
            flips.append((s, j))
        r = BlockWord(blocks)
        iterations += 1
        key = r.to_int()
        if key in visited:
            return DecodeOutcome(FAILURE_CYCLE, None, iterations, flips)
        visited.add(key)
        if iterations >= max_iters and not code.is_member(r):
            return DecodeOutcome(FAILURE_ITERATION_CAP, None, iterations, flips)
